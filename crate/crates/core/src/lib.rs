//! Index-coded NOMA: GF(2) index-code search, two-group scheme design,
//! closed-form rate and power analysis, and a baseband link simulator.

pub mod analysis;
pub mod design;
pub mod error;
pub mod galois;
pub mod index_coding;
pub mod linksim;
pub mod report;
pub mod reproduce;
pub mod scenario;

pub use analysis::{AnalysisReport, Operating, PowerReport, QosPowers, QosTotals, RateReport};
pub use design::{
    build_schedule, design_select_far_code, design_two_stage, ChannelProfile, CodeLengths, FarCodeChoice,
    Group, IcNomaScheme, SchemeCase, Selection, Transmission, TransmissionSchedule, UserGrouping,
};
pub use error::{Error, Result};
pub use galois::{BitMatrix, BitVector};
pub use index_coding::{IndexCodingProblem, LinearIndexCode, Receiver, SearchLimits};
pub use linksim::{SimConfig, SimResult};
pub use scenario::Scenario;
