//! TOML scenario files.
//!
//! ```toml
//! version = 1
//! name = "two-cluster"
//! messages = 3
//! power = 10.0
//! alpha = 0.25
//! preferred_far_code = [[1, 2]]   # optional, rows as 1-based index lists
//!
//! [sim]                            # optional
//! packet_bits = 64
//! noise_variance = 0.0
//! trials = 1000
//! seed = 1
//!
//! [[users]]
//! gain = 1.0
//! known = [2, [1, 3]]              # x2 and the coded packet x1+x3
//! wants = [1]
//! ```
//!
//! Message indices are 1-based in files and 0-based in memory.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::design::ChannelProfile;
use crate::error::{Error, Result};
use crate::galois::{BitMatrix, BitVector};
use crate::index_coding::{IndexCodingProblem, LinearIndexCode, Receiver};
use crate::linksim::SimConfig;

pub const SCHEMA_VERSION: u32 = 1;

/// Scenarios shipped with the crate, by name.
pub const BUNDLED: &[(&str, &str)] = &[
    ("example1", include_str!("../scenarios/example1.toml")),
    ("example2", include_str!("../scenarios/example2.toml")),
    ("example3", include_str!("../scenarios/example3.toml")),
    ("table8_case1", include_str!("../scenarios/table8_case1.toml")),
    ("table8_case2", include_str!("../scenarios/table8_case2.toml")),
    ("table8_case3", include_str!("../scenarios/table8_case3.toml")),
];

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    messages: usize,
    power: f64,
    alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    preferred_far_code: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sim: Option<SimConfig>,
    users: Vec<UserEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UserEntry {
    gain: f64,
    #[serde(default)]
    known: Vec<KnownEntry>,
    #[serde(default, alias = "demands")]
    wants: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum KnownEntry {
    Message(usize),
    Coded(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    name: String,
    problem: IndexCodingProblem,
    channel: ChannelProfile,
    preferred_far_code: Option<LinearIndexCode>,
    sim: Option<SimConfig>,
}

fn bad(field: String, msg: impl std::fmt::Display) -> Error {
    Error::Scenario(format!("{field}: {msg}"))
}

fn index(field: impl Fn() -> String, n: usize, i: usize) -> Result<usize> {
    if i == 0 || i > n {
        Err(bad(field(), format!("message index {i} out of range 1..={n}")))
    } else {
        Ok(i - 1)
    }
}

fn coded_row(field: impl Fn() -> String, n: usize, indices: &[usize]) -> Result<BitVector> {
    if indices.is_empty() {
        return Err(bad(field(), "coded entry lists no messages"));
    }
    let zero_based = indices
        .iter()
        .map(|&i| index(&field, n, i))
        .collect::<Result<Vec<_>>>()?;
    let row = BitVector::from_indices(n, &zero_based).map_err(|e| bad(field(), e))?;
    if row.is_zero() {
        return Err(bad(field(), "coded entry cancels to zero"));
    }
    Ok(row)
}

fn one_based(v: &BitVector) -> Vec<usize> {
    v.support().map(|i| i + 1).collect()
}

impl Scenario {
    pub fn new(
        name: impl Into<String>,
        problem: IndexCodingProblem,
        channel: ChannelProfile,
        preferred_far_code: Option<LinearIndexCode>,
        sim: Option<SimConfig>,
    ) -> Result<Self> {
        if channel.gains().len() != problem.receiver_count() {
            return Err(bad(
                "users".into(),
                format!(
                    "{} gains for {} receivers",
                    channel.gains().len(),
                    problem.receiver_count()
                ),
            ));
        }
        if let Some(c) = &preferred_far_code {
            if c.width() != problem.n() {
                return Err(bad(
                    "preferred_far_code".into(),
                    format!("width {} does not match {} messages", c.width(), problem.n()),
                ));
            }
        }
        if let Some(cfg) = &sim {
            cfg.validate().map_err(|e| bad("sim".into(), e))?;
        }
        Ok(Self {
            name: name.into(),
            problem,
            channel,
            preferred_far_code,
            sim,
        })
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: ScenarioFile = toml::from_str(text).map_err(|e| Error::Scenario(format!("parse error: {e}")))?;
        Self::from_file(file)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Scenario(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn bundled(name: &str) -> Result<Self> {
        let (_, text) = BUNDLED
            .iter()
            .find(|(k, _)| *k == name)
            .ok_or_else(|| Error::Scenario(format!("no bundled scenario named {name:?}")))?;
        Self::from_toml_str(text)
    }

    pub fn bundled_names() -> impl Iterator<Item = &'static str> {
        BUNDLED.iter().map(|(k, _)| *k)
    }

    fn from_file(f: ScenarioFile) -> Result<Self> {
        if f.version != SCHEMA_VERSION {
            return Err(bad(
                "version".into(),
                format!("unsupported schema version {} (expected {SCHEMA_VERSION})", f.version),
            ));
        }
        let n = f.messages;
        if n == 0 || n > crate::galois::MAX_WIDTH {
            return Err(bad(
                "messages".into(),
                format!("must lie in 1..={}, got {n}", crate::galois::MAX_WIDTH),
            ));
        }
        if f.users.is_empty() {
            return Err(bad("users".into(), "at least one user is required"));
        }
        let mut receivers = Vec::with_capacity(f.users.len());
        let mut gains = Vec::with_capacity(f.users.len());
        for (u, user) in f.users.iter().enumerate() {
            if !(user.gain > 0.0 && user.gain.is_finite()) {
                return Err(bad(format!("users[{u}].gain"), format!("must be positive, got {}", user.gain)));
            }
            gains.push(user.gain);
            let mut rows = Vec::with_capacity(user.known.len());
            for (k, entry) in user.known.iter().enumerate() {
                let field = || format!("users[{u}].known[{k}]");
                rows.push(match entry {
                    KnownEntry::Message(i) => {
                        BitVector::unit(n, index(field, n, *i)?).map_err(|e| bad(field(), e))?
                    }
                    KnownEntry::Coded(list) => coded_row(field, n, list)?,
                });
            }
            let wants = user
                .wants
                .iter()
                .map(|&w| index(|| format!("users[{u}].wants"), n, w))
                .collect::<Result<Vec<_>>>()?;
            let side = BitMatrix::from_rows(n, rows).map_err(|e| bad(format!("users[{u}].known"), e))?;
            receivers.push(Receiver::new(side, wants).map_err(|e| bad(format!("users[{u}]"), e))?);
        }
        let problem = IndexCodingProblem::new(n, receivers).map_err(|e| bad("users".into(), e))?;

        let channel = ChannelProfile::new(gains, f.power, f.alpha).map_err(|e| {
            let field = if !(f.alpha > 0.0 && f.alpha < 0.5) { "alpha" } else { "power" };
            bad(field.into(), e)
        })?;

        let preferred_far_code = match &f.preferred_far_code {
            None => None,
            Some(rows) => {
                let vecs = rows
                    .iter()
                    .enumerate()
                    .map(|(r, list)| coded_row(|| format!("preferred_far_code[{r}]"), n, list))
                    .collect::<Result<Vec<_>>>()?;
                let m = BitMatrix::from_rows(n, vecs).map_err(|e| bad("preferred_far_code".into(), e))?;
                Some(LinearIndexCode::new(m).map_err(|e| bad("preferred_far_code".into(), e))?)
            }
        };

        let name = f.name.unwrap_or_else(|| "unnamed".to_string());
        Self::new(name, problem, channel, preferred_far_code, f.sim)
    }

    fn to_file(&self) -> ScenarioFile {
        let users = self
            .problem
            .receivers()
            .iter()
            .zip(self.channel.gains())
            .map(|(r, &gain)| UserEntry {
                gain,
                known: r
                    .side_info()
                    .rows()
                    .iter()
                    .map(|row| match row.weight() {
                        1 => KnownEntry::Message(row.support().next().map_or(0, |i| i + 1)),
                        _ => KnownEntry::Coded(one_based(row)),
                    })
                    .collect(),
                wants: r.wants().iter().map(|w| w + 1).collect(),
            })
            .collect();
        ScenarioFile {
            version: SCHEMA_VERSION,
            name: Some(self.name.clone()),
            messages: self.problem.n(),
            power: self.channel.power(),
            alpha: self.channel.alpha(),
            preferred_far_code: self
                .preferred_far_code
                .as_ref()
                .map(|c| c.rows().iter().map(one_based).collect()),
            sim: self.sim,
            users,
        }
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(&self.to_file()).map_err(|e| Error::Scenario(format!("serialize error: {e}")))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn problem(&self) -> &IndexCodingProblem {
        &self.problem
    }

    pub fn channel(&self) -> &ChannelProfile {
        &self.channel
    }

    pub fn preferred_far_code(&self) -> Option<&LinearIndexCode> {
        self.preferred_far_code.as_ref()
    }

    pub fn sim(&self) -> Option<&SimConfig> {
        self.sim.as_ref()
    }
}
