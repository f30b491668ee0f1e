//! Index-coded NOMA scheme design.
//!
//! Users are split into a far group (weak channels) and a near group (strong
//! channels). The far group gets its own optimal index code, sent on the
//! high-power layer. Near users decode that layer during SIC anyway, so its rows
//! become coded side information for them, and the near group's code is designed
//! for the reduced problem. The two codes are then paired row by row into
//! superposed transmissions, with the surplus rows of the longer code sent alone.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::galois::{BitMatrix, BitVector};
use crate::index_coding::{
    enumerate_optimal_codes, first_optimal_code, min_code_length, IndexCodingProblem,
    LinearIndexCode, SearchLimits,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    Far,
    Near,
}

/// Partition of users `0..N` into far and near groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UserGrouping {
    far: Vec<usize>,
    near: Vec<usize>,
}

impl UserGrouping {
    /// Builds a grouping from explicit index sets, which must partition `0..users`.
    pub fn from_parts(users: usize, far: Vec<usize>, near: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; users];
        for &u in far.iter().chain(near.iter()) {
            match seen.get_mut(u) {
                Some(s) if !*s => *s = true,
                Some(_) => return Err(Error::invalid(format!("user {u} appears twice"))),
                None => return Err(Error::IndexOutOfRange { index: u, n: users }),
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::invalid(format!("user {missing} is in neither group")));
        }
        let (mut far, mut near) = (far, near);
        far.sort_unstable();
        near.sort_unstable();
        Ok(Self { far, near })
    }

    pub fn far(&self) -> &[usize] {
        &self.far
    }

    pub fn near(&self) -> &[usize] {
        &self.near
    }

    pub fn far_count(&self) -> usize {
        self.far.len()
    }

    pub fn near_count(&self) -> usize {
        self.near.len()
    }

    pub fn user_count(&self) -> usize {
        self.far.len() + self.near.len()
    }

    pub fn group_of(&self, user: usize) -> Group {
        if self.far.binary_search(&user).is_ok() {
            Group::Far
        } else {
            Group::Near
        }
    }

    /// Both groups are populated, so a two-layer scheme is possible.
    pub fn is_split(&self) -> bool {
        !self.far.is_empty() && !self.near.is_empty()
    }
}

/// Splits users by channel gain: a user is far when its gain is strictly closer
/// to the minimum gain than to the maximum; ties go to the near group.
pub fn group_users(gains: &[f64]) -> Result<UserGrouping> {
    if gains.is_empty() {
        return Err(Error::invalid("at least one channel gain is required"));
    }
    if let Some(g) = gains.iter().find(|g| !(g.is_finite() && **g > 0.0)) {
        return Err(Error::invalid(format!("channel gains must be positive and finite, got {g}")));
    }
    let g_max = gains.iter().copied().fold(f64::MIN, f64::max);
    let g_min = gains.iter().copied().fold(f64::MAX, f64::min);
    let (far, near): (Vec<usize>, Vec<usize>) =
        (0..gains.len()).partition(|&i| (g_max - gains[i]).abs() > (g_min - gains[i]).abs());
    Ok(UserGrouping { far, near })
}

/// Channel state for analysis and simulation: per-user gains, total power and
/// near-layer power fraction, plus the group-mean gains used by the closed-form
/// analysis.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelProfile {
    gains: Vec<f64>,
    power: f64,
    alpha: f64,
    grouping: UserGrouping,
    far_gain: f64,
    near_gain: f64,
}

impl ChannelProfile {
    pub fn new(gains: Vec<f64>, power: f64, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 0.5) {
            return Err(Error::invalid(format!("alpha must lie in (0, 0.5), got {alpha}")));
        }
        if !(power.is_finite() && power > 0.0) {
            return Err(Error::invalid(format!("power must be positive, got {power}")));
        }
        let grouping = group_users(&gains)?;
        let mean = |idx: &[usize]| idx.iter().map(|&i| gains[i]).sum::<f64>() / idx.len() as f64;
        let (far_gain, near_gain) = if grouping.is_split() {
            (mean(grouping.far()), mean(grouping.near()))
        } else {
            let all: Vec<usize> = (0..gains.len()).collect();
            let g = mean(&all);
            (g, g)
        };
        Ok(Self {
            gains,
            power,
            alpha,
            grouping,
            far_gain,
            near_gain,
        })
    }

    pub fn gains(&self) -> &[f64] {
        &self.gains
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn grouping(&self) -> &UserGrouping {
        &self.grouping
    }

    /// Mean gain of the far group (of all users when the groups are not split).
    pub fn far_gain(&self) -> f64 {
        self.far_gain
    }

    pub fn near_gain(&self) -> f64 {
        self.near_gain
    }

    /// Same channel with a different near-layer power fraction.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.gains.clone(), self.power, alpha)
    }
}

/// Far and near code lengths of a scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CodeLengths {
    pub far: usize,
    pub near: usize,
}

impl CodeLengths {
    pub fn new(far: usize, near: usize) -> Self {
        Self { far, near }
    }

    /// Superposed transmissions.
    pub fn superposed(&self) -> usize {
        self.far.min(self.near)
    }

    /// All transmissions.
    pub fn total(&self) -> usize {
        self.far.max(self.near)
    }

    pub fn case(&self) -> SchemeCase {
        use std::cmp::Ordering::*;
        match self.far.cmp(&self.near) {
            Equal => SchemeCase::Balanced,
            Greater => SchemeCase::FarHeavy,
            Less => SchemeCase::NearHeavy,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeCase {
    /// `l_f = l_n`: superposed transmissions only.
    Balanced,
    /// `l_f > l_n`: surplus far rows sent alone at full power.
    FarHeavy,
    /// `l_f < l_n`: surplus near rows sent alone at full power.
    NearHeavy,
    /// Plain index coding to everybody, no superposition.
    Conventional,
}

impl SchemeCase {
    pub fn label(&self) -> &'static str {
        match self {
            SchemeCase::Balanced => "I",
            SchemeCase::FarHeavy => "II",
            SchemeCase::NearHeavy => "III",
            SchemeCase::Conventional => "conventional",
        }
    }
}

/// A designed scheme. For [`SchemeCase::Conventional`] the far code holds the
/// conventional index code for the whole problem and the near code is empty.
#[derive(Clone, Debug, PartialEq)]
pub struct IcNomaScheme {
    grouping: UserGrouping,
    far_code: LinearIndexCode,
    near_code: LinearIndexCode,
    case: SchemeCase,
}

impl IcNomaScheme {
    pub fn grouping(&self) -> &UserGrouping {
        &self.grouping
    }

    pub fn far_code(&self) -> &LinearIndexCode {
        &self.far_code
    }

    pub fn near_code(&self) -> &LinearIndexCode {
        &self.near_code
    }

    pub fn case(&self) -> SchemeCase {
        self.case
    }

    pub fn lengths(&self) -> CodeLengths {
        CodeLengths::new(self.far_code.len(), self.near_code.len())
    }

    pub fn transmissions(&self) -> usize {
        self.lengths().total()
    }

    pub fn is_conventional(&self) -> bool {
        self.case == SchemeCase::Conventional
    }
}

/// How the two-stage design picks among equally short far-user codes.
#[derive(Clone, Copy, Debug, Default)]
pub enum FarCodeChoice<'a> {
    /// First code in canonical lexicographic order.
    #[default]
    FirstCanonical,
    /// A specific code; it must be valid and of optimal length for the far users.
    Preferred(&'a LinearIndexCode),
}

fn check_grouping(p: &IndexCodingProblem, grouping: &UserGrouping) -> Result<()> {
    if grouping.user_count() != p.receiver_count() {
        return Err(Error::invalid(format!(
            "grouping covers {} users but the problem has {} receivers",
            grouping.user_count(),
            p.receiver_count()
        )));
    }
    Ok(())
}

fn shortest_code(p: &IndexCodingProblem, limits: &SearchLimits) -> Result<LinearIndexCode> {
    let l = min_code_length(p, p.n(), limits)?;
    first_optimal_code(p, l, limits)
}

/// The near users' problem once `far_code` is part of their side information.
pub fn near_problem(
    p: &IndexCodingProblem,
    grouping: &UserGrouping,
    far_code: &LinearIndexCode,
) -> Result<IndexCodingProblem> {
    p.subproblem(grouping.near())?.reduce(far_code.matrix())
}

/// Conventional index coding over the whole problem, sent as full-power packets.
pub fn conventional_scheme(
    p: &IndexCodingProblem,
    grouping: &UserGrouping,
    limits: &SearchLimits,
) -> Result<IcNomaScheme> {
    check_grouping(p, grouping)?;
    Ok(IcNomaScheme {
        grouping: grouping.clone(),
        far_code: shortest_code(p, limits)?,
        near_code: LinearIndexCode::empty(p.n())?,
        case: SchemeCase::Conventional,
    })
}

/// Two-stage design: an optimal code for the far users, then an optimal code for
/// the near users with the far rows added to their side information.
///
/// Falls back to [`conventional_scheme`] when either group is empty.
pub fn design_two_stage(
    p: &IndexCodingProblem,
    grouping: &UserGrouping,
    choice: FarCodeChoice<'_>,
    limits: &SearchLimits,
) -> Result<IcNomaScheme> {
    check_grouping(p, grouping)?;
    if !grouping.is_split() {
        return conventional_scheme(p, grouping, limits);
    }
    let far = p.subproblem(grouping.far())?;
    let far_code = match choice {
        FarCodeChoice::FirstCanonical => shortest_code(&far, limits)?,
        FarCodeChoice::Preferred(code) => {
            let l_f = min_code_length(&far, p.n(), limits)?;
            if code.len() != l_f || !far.is_valid_code(code)? {
                return Err(Error::invalid(format!(
                    "preferred far code {code} is not an optimal code for the far users (optimal length {l_f})"
                )));
            }
            code.clone()
        }
    };
    let near_code = shortest_code(&near_problem(p, grouping, &far_code)?, limits)?;
    let case = CodeLengths::new(far_code.len(), near_code.len()).case();
    Ok(IcNomaScheme {
        grouping: grouping.clone(),
        far_code,
        near_code,
        case,
    })
}

/// Length of the near users' optimal code once `far_code` is their extra side
/// information.
pub fn near_length_for(
    p: &IndexCodingProblem,
    grouping: &UserGrouping,
    far_code: &LinearIndexCode,
    limits: &SearchLimits,
) -> Result<usize> {
    check_grouping(p, grouping)?;
    min_code_length(&near_problem(p, grouping, far_code)?, p.n(), limits)
}

/// One optimal far-user code and the near-code length it leads to.
#[derive(Clone, Debug, PartialEq)]
pub struct FarCandidate {
    pub far_code: LinearIndexCode,
    pub near_length: usize,
}

/// Result of [`design_select_far_code`].
#[derive(Clone, Debug, PartialEq)]
pub struct Selection {
    pub scheme: IcNomaScheme,
    /// Every optimal far code in canonical order with its near-code length.
    pub candidates: Vec<FarCandidate>,
    /// Optimal conventional code length for the whole problem.
    pub conventional_length: usize,
}

/// Far-code selection: tries every optimal far-user code and keeps the one whose
/// near-user code is shortest (first in canonical order on ties).
///
/// If the winner cannot beat conventional index coding on power, i.e. the far
/// code is as long as the conventional code and at least one superposed
/// transmission would remain, the conventional scheme is returned instead.
pub fn design_select_far_code(
    p: &IndexCodingProblem,
    grouping: &UserGrouping,
    limits: &SearchLimits,
) -> Result<Selection> {
    check_grouping(p, grouping)?;
    let conventional_length = min_code_length(p, p.n(), limits)?;
    if !grouping.is_split() {
        return Ok(Selection {
            scheme: conventional_scheme(p, grouping, limits)?,
            candidates: Vec::new(),
            conventional_length,
        });
    }
    let far = p.subproblem(grouping.far())?;
    let l_f = min_code_length(&far, p.n(), limits)?;
    let candidates = enumerate_optimal_codes(&far, l_f, limits)?
        .into_par_iter()
        .map(|far_code| {
            let near_length = near_length_for(p, grouping, &far_code, limits)?;
            Ok(FarCandidate {
                far_code,
                near_length,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let best = candidates
        .iter()
        .enumerate()
        .min_by_key(|(i, c)| (c.near_length, *i))
        .map(|(_, c)| c.clone())
        .ok_or_else(|| Error::invalid("far subproblem has no optimal code"))?;

    let l_n = best.near_length;
    // Never true for a complete candidate list: when l_f == l_ic an optimal
    // conventional code is itself a far candidate and leaves l_n = 0.
    let scheme = if l_f == conventional_length && l_n >= 1 && l_f >= l_n {
        conventional_scheme(p, grouping, limits)?
    } else {
        let near = near_problem(p, grouping, &best.far_code)?;
        let near_code = first_optimal_code(&near, l_n, limits)?;
        IcNomaScheme {
            grouping: grouping.clone(),
            case: CodeLengths::new(l_f, l_n).case(),
            far_code: best.far_code,
            near_code,
        }
    };
    Ok(Selection {
        scheme,
        candidates,
        conventional_length,
    })
}

/// One channel use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transmission {
    /// Near packet on the low-power layer (fraction alpha), far packet on the
    /// high-power layer (fraction 1 - alpha).
    Superposed { near: BitVector, far: BitVector },
    /// A single packet at full power.
    Solo { row: BitVector, audience: Group },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransmissionSchedule {
    width: usize,
    entries: Vec<Transmission>,
}

/// Pairs row `k` of the near code with row `k` of the far code; the rest of the
/// longer code goes out alone. Conventional schemes yield only full-power far
/// packets, which every user decodes.
pub fn build_schedule(s: &IcNomaScheme) -> TransmissionSchedule {
    let far = s.far_code.rows();
    let near = s.near_code.rows();
    let paired = if s.is_conventional() { 0 } else { far.len().min(near.len()) };
    let mut entries: Vec<Transmission> = (0..paired)
        .map(|k| Transmission::Superposed {
            near: near[k],
            far: far[k],
        })
        .collect();
    entries.extend(far[paired..].iter().map(|&row| Transmission::Solo {
        row,
        audience: Group::Far,
    }));
    entries.extend(near[paired..].iter().map(|&row| Transmission::Solo {
        row,
        audience: Group::Near,
    }));
    TransmissionSchedule {
        width: s.far_code.width(),
        entries,
    }
}

impl TransmissionSchedule {
    pub fn entries(&self) -> &[Transmission] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn superposed_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e, Transmission::Superposed { .. }))
            .count()
    }

    /// Packets a user of `group` recovers: far users take the high-power layer
    /// and far-audience solo packets; near users take everything via SIC.
    pub fn visible_rows(&self, group: Group) -> BitMatrix {
        let mut rows = Vec::new();
        for e in &self.entries {
            match (*e, group) {
                (Transmission::Superposed { far, .. }, Group::Far) => rows.push(far),
                (Transmission::Superposed { near, far }, Group::Near) => {
                    rows.push(far);
                    rows.push(near);
                }
                (Transmission::Solo { row, audience }, g) if audience == Group::Far || g == Group::Near => {
                    rows.push(row)
                }
                _ => {}
            }
        }
        BitMatrix::from_rows(self.width, rows).expect("schedule rows share the schedule width")
    }

    /// Span-criterion decodability of every user's wants under this schedule.
    pub fn decodable_users(&self, p: &IndexCodingProblem, grouping: &UserGrouping) -> Result<Vec<bool>> {
        if p.n() != self.width {
            return Err(Error::DimensionMismatch {
                expected: p.n(),
                found: self.width,
            });
        }
        check_grouping(p, grouping)?;
        let far_rows = self.visible_rows(Group::Far);
        let near_rows = self.visible_rows(Group::Near);
        p.receivers()
            .iter()
            .enumerate()
            .map(|(i, r)| match grouping.group_of(i) {
                Group::Far => r.decodes_with(&far_rows),
                Group::Near => r.decodes_with(&near_rows),
            })
            .collect()
    }
}
