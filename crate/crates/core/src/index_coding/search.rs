//! Exhaustive search for minimum-length linear index codes.
//!
//! Candidate codes are the reduced row echelon matrices of rank `l` over
//! GF(2)^n, so every row space is visited exactly once. A matrix is described by
//! its pivot columns plus the free entries right of each pivot that are not
//! themselves pivot columns. Pivot sets are independent work items and are
//! spread over the rayon pool; results are merged back into lexicographic order
//! on the canonical matrix, so output never depends on scheduling.

use rayon::prelude::*;

use super::{IndexCodingProblem, LinearIndexCode};
use crate::error::{Error, Result};
use crate::galois::{XorBasis, MAX_WIDTH};

/// Bounds on the exhaustive search. The defaults keep each rank level below
/// roughly 10^8 candidate row spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_messages: usize,
    pub max_length: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_messages: 10,
            max_length: 5,
        }
    }
}

impl SearchLimits {
    /// Limits that admit every code length for `n` messages.
    pub fn exhaustive(n: usize) -> Self {
        let n = n.min(MAX_WIDTH);
        Self {
            max_messages: n,
            max_length: n,
        }
    }

    fn exhausted(&self, n: usize, reason: impl Into<String>) -> Error {
        Error::SearchExhausted {
            reason: reason.into(),
            n,
            max_messages: self.max_messages,
            max_length: self.max_length,
        }
    }

    fn admit(&self, n: usize) -> Result<()> {
        if n > self.max_messages {
            return Err(self.exhausted(n, "message count exceeds the search limit"));
        }
        Ok(())
    }
}

struct ReceiverView {
    side: XorBasis,
    /// Wanted unit vectors projected modulo the side information; all non-zero.
    wants: Vec<u64>,
}

/// Decodability test specialised for one problem.
struct Checker {
    views: Vec<ReceiverView>,
}

impl Checker {
    fn new(p: &IndexCodingProblem) -> Self {
        let n = p.n();
        let views = p
            .receivers()
            .iter()
            .filter(|r| !r.wants().is_empty())
            .map(|r| {
                let side = r.side_info().basis();
                let wants = r
                    .wants()
                    .iter()
                    .map(|&w| side.reduce(1u64 << (n - 1 - w)))
                    .collect();
                ReceiverView { side, wants }
            })
            .collect();
        Self { views }
    }

    /// No code shorter than the number of independent wants a single receiver
    /// still lacks can be valid.
    fn lower_bound(&self) -> usize {
        self.views
            .iter()
            .map(|v| XorBasis::from_words(v.wants.iter().copied()).rank())
            .max()
            .unwrap_or(0)
    }

    fn accepts(&self, rows: &[u64], scratch: &mut XorBasis) -> bool {
        self.views.iter().all(|v| {
            scratch.clear();
            for &r in rows {
                scratch.insert(v.side.reduce(r));
            }
            v.wants.iter().all(|&w| scratch.contains(w))
        })
    }
}

/// Column `c` (0-based from the left) as a bit in an `n`-wide word.
#[inline]
fn col_bit(n: usize, c: usize) -> u64 {
    1u64 << (n - 1 - c)
}

/// All `l`-subsets of `0..n`, lexicographically.
fn pivot_sets(n: usize, l: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        let remaining = l - cur.len();
        for c in start..=(n - remaining) {
            cur.push(c);
            rec(c + 1, n, l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if l <= n {
        rec(0, n, l, &mut Vec::with_capacity(l), &mut out);
    }
    out
}

/// Visits every rref matrix with the given pivot columns. Stops early when the
/// visitor returns `false`.
fn for_each_with_pivots(n: usize, pivots: &[usize], mut visit: impl FnMut(&[u64]) -> bool) {
    let base: Vec<u64> = pivots.iter().map(|&c| col_bit(n, c)).collect();
    let mut free: Vec<(usize, u64)> = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        for c in (p + 1)..n {
            if !pivots.contains(&c) {
                free.push((r, col_bit(n, c)));
            }
        }
    }
    let mut rows = base.clone();
    let combos: u64 = 1u64 << free.len();
    for mask in 0..combos {
        rows.copy_from_slice(&base);
        let mut m = mask;
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            let (r, bit) = free[j];
            rows[r] |= bit;
            m &= m - 1;
        }
        if !visit(&rows) {
            return;
        }
    }
}

fn exists_valid(checker: &Checker, n: usize, l: usize) -> bool {
    pivot_sets(n, l).par_iter().any(|pivots| {
        let mut scratch = XorBasis::new();
        let mut found = false;
        for_each_with_pivots(n, pivots, |rows| {
            found = checker.accepts(rows, &mut scratch);
            !found
        });
        found
    })
}

fn all_valid(checker: &Checker, n: usize, l: usize) -> Vec<Vec<u64>> {
    let mut codes: Vec<Vec<u64>> = pivot_sets(n, l)
        .par_iter()
        .flat_map_iter(|pivots| {
            let mut scratch = XorBasis::new();
            let mut local = Vec::new();
            for_each_with_pivots(n, pivots, |rows| {
                if checker.accepts(rows, &mut scratch) {
                    local.push(rows.to_vec());
                }
                true
            });
            local
        })
        .collect();
    codes.sort_unstable();
    codes
}

fn first_valid(checker: &Checker, n: usize, l: usize) -> Option<Vec<u64>> {
    pivot_sets(n, l)
        .par_iter()
        .filter_map(|pivots| {
            let mut scratch = XorBasis::new();
            let mut best: Option<Vec<u64>> = None;
            for_each_with_pivots(n, pivots, |rows| {
                if checker.accepts(rows, &mut scratch)
                    && best.as_deref().is_none_or(|b| rows < b)
                {
                    best = Some(rows.to_vec());
                }
                true
            });
            best
        })
        .min()
}

/// Length of the shortest valid linear code, searching lengths up to
/// `min(cap, limits.max_length)`.
///
/// Returns 0 when no receiver wants anything. Fails with
/// [`Error::SearchExhausted`] instead of guessing when the answer lies beyond the
/// limits.
pub fn min_code_length(p: &IndexCodingProblem, cap: usize, limits: &SearchLimits) -> Result<usize> {
    if !p.has_demands() {
        return Ok(0);
    }
    let n = p.n();
    limits.admit(n)?;
    let checker = Checker::new(p);
    let lower = checker.lower_bound();
    // sending every wanted message uncoded is always valid
    let upper = p.wanted_messages().len();
    let top = cap.min(limits.max_length).min(upper);
    for l in lower..=top {
        if l == upper || exists_valid(&checker, n, l) {
            return Ok(l);
        }
    }
    Err(limits.exhausted(
        n,
        format!("no valid code of length <= {top} (cap {cap})"),
    ))
}

/// Every valid code of length `l_opt`, one per row space, in lexicographic order
/// of the canonical matrix. `l_opt` is expected to be the minimum code length.
pub fn enumerate_optimal_codes(
    p: &IndexCodingProblem,
    l_opt: usize,
    limits: &SearchLimits,
) -> Result<Vec<LinearIndexCode>> {
    let n = p.n();
    if l_opt == 0 {
        return Ok(if p.has_demands() {
            Vec::new()
        } else {
            vec![LinearIndexCode::empty(n)?]
        });
    }
    limits.admit(n)?;
    if l_opt > limits.max_length {
        return Err(limits.exhausted(n, format!("code length {l_opt} exceeds the search limit")));
    }
    let checker = Checker::new(p);
    Ok(all_valid(&checker, n, l_opt)
        .iter()
        .map(|rows| LinearIndexCode::from_canonical_words(n, rows))
        .collect())
}

/// The lexicographically first valid code of length `l`, i.e. the head of
/// [`enumerate_optimal_codes`] without materialising the whole list.
pub fn first_optimal_code(
    p: &IndexCodingProblem,
    l: usize,
    limits: &SearchLimits,
) -> Result<LinearIndexCode> {
    let n = p.n();
    if l == 0 {
        return if p.has_demands() {
            Err(Error::invalid("problem has demands; an empty code cannot be valid"))
        } else {
            LinearIndexCode::empty(n)
        };
    }
    limits.admit(n)?;
    if l > limits.max_length {
        return Err(limits.exhausted(n, format!("code length {l} exceeds the search limit")));
    }
    let checker = Checker::new(p);
    first_valid(&checker, n, l)
        .map(|rows| LinearIndexCode::from_canonical_words(n, &rows))
        .ok_or_else(|| Error::invalid(format!("no valid code of length {l}")))
}
