//! Test-only oracles that share no code with the library's GF(2) layer.
//!
//! Vectors are plain integers with bit `i` standing for message `i` (0-based).
//! A subspace of GF(2)^n (n <= 7) is stored as a 128-bit set of its members.

#![allow(dead_code)]

use std::collections::HashSet;

use icnoma_core::{BitMatrix, BitVector, IndexCodingProblem, LinearIndexCode, Receiver};
use rand::Rng;

pub const ORACLE_MAX_N: usize = 7;

pub type Span = u128;

/// Subspace spanned by the zero vector alone.
pub const ZERO_SPAN: Span = 1;

fn translate(span: Span, v: u32) -> Span {
    let mut out = 0;
    let mut rest = span;
    while rest != 0 {
        let x = rest.trailing_zeros();
        rest &= rest - 1;
        out |= 1u128 << (x ^ v);
    }
    out
}

pub fn extend(span: Span, v: u32) -> Span {
    if span >> v & 1 == 1 {
        span
    } else {
        span | translate(span, v)
    }
}

pub fn span_of(vectors: &[u32]) -> Span {
    vectors.iter().fold(ZERO_SPAN, |s, &v| extend(s, v))
}

pub fn dim(span: Span) -> usize {
    span.count_ones().trailing_zeros() as usize
}

pub fn vector_of(row: &BitVector) -> u32 {
    row.support().fold(0, |acc, i| acc | 1 << i)
}

pub fn vectors_of(m: &BitMatrix) -> Vec<u32> {
    m.rows().iter().map(vector_of).collect()
}

pub fn code_span(c: &LinearIndexCode) -> Span {
    span_of(&vectors_of(c.matrix()))
}

/// A problem in oracle form.
#[derive(Clone, Debug)]
pub struct Instance {
    pub n: usize,
    pub users: Vec<User>,
}

#[derive(Clone, Debug)]
pub struct User {
    pub known: Vec<u32>,
    pub wants: Vec<usize>,
    pub gain: f64,
}

impl Instance {
    pub fn from_problem(p: &IndexCodingProblem, gains: &[f64]) -> Self {
        Self {
            n: p.n(),
            users: p
                .receivers()
                .iter()
                .zip(gains)
                .map(|(r, &gain)| User {
                    known: vectors_of(r.side_info()),
                    wants: r.wants().iter().copied().collect(),
                    gain,
                })
                .collect(),
        }
    }

    pub fn to_problem(&self) -> IndexCodingProblem {
        let receivers = self
            .users
            .iter()
            .map(|u| {
                let rows = u
                    .known
                    .iter()
                    .map(|&v| {
                        let idx: Vec<usize> = (0..self.n).filter(|i| v >> i & 1 == 1).collect();
                        BitVector::from_indices(self.n, &idx).unwrap()
                    })
                    .collect();
                Receiver::new(BitMatrix::from_rows(self.n, rows).unwrap(), u.wants.iter().copied()).unwrap()
            })
            .collect();
        IndexCodingProblem::new(self.n, receivers).unwrap()
    }

    pub fn gains(&self) -> Vec<f64> {
        self.users.iter().map(|u| u.gain).collect()
    }

    /// Whether `user` recovers every want from `received` plus its side information.
    pub fn user_decodes(&self, user: usize, received: Span) -> bool {
        let u = &self.users[user];
        let total = u.known.iter().fold(received, |s, &v| extend(s, v));
        u.wants.iter().all(|&w| total >> (1u32 << w) & 1 == 1)
    }

    pub fn all_decode(&self, received: Span) -> bool {
        (0..self.users.len()).all(|i| self.user_decodes(i, received))
    }

    pub fn subset(&self, users: &[usize]) -> Self {
        Self {
            n: self.n,
            users: users.iter().map(|&i| self.users[i].clone()).collect(),
        }
    }
}

/// Every subspace of GF(2)^n, grouped by dimension.
pub struct SubspaceOracle {
    pub n: usize,
    pub by_dim: Vec<Vec<Span>>,
}

impl SubspaceOracle {
    pub fn new(n: usize) -> Self {
        assert!(n <= ORACLE_MAX_N);
        let mut seen: HashSet<Span> = HashSet::new();
        let mut frontier = vec![ZERO_SPAN];
        seen.insert(ZERO_SPAN);
        let mut by_dim = vec![Vec::new(); n + 1];
        by_dim[0].push(ZERO_SPAN);
        while let Some(s) = frontier.pop() {
            for v in 1..(1u32 << n) {
                if s >> v & 1 == 0 {
                    let t = s | translate(s, v);
                    if seen.insert(t) {
                        by_dim[dim(t)].push(t);
                        frontier.push(t);
                    }
                }
            }
        }
        for d in &mut by_dim {
            d.sort_unstable();
        }
        Self { n, by_dim }
    }

    pub fn count(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    /// Dimension of the smallest subspace that lets every user decode.
    pub fn min_length(&self, inst: &Instance) -> usize {
        assert_eq!(inst.n, self.n);
        (0..=self.n)
            .find(|&d| self.by_dim[d].iter().any(|&c| inst.all_decode(c)))
            .expect("the full space always works")
    }

    pub fn optimal_codes(&self, inst: &Instance) -> Vec<Span> {
        let l = self.min_length(inst);
        self.by_dim[l].iter().copied().filter(|&c| inst.all_decode(c)).collect()
    }

    /// Shortest near-user code once `far` is part of every near user's side information.
    pub fn near_length(&self, inst: &Instance, near: &[usize], far: Span) -> usize {
        let sub = inst.subset(near);
        (0..=self.n)
            .find(|&d| self.by_dim[d].iter().any(|&c| sub.all_decode(sum(c, far))))
            .expect("the full space always works")
    }
}

/// Sum of two subspaces.
pub fn sum(a: Span, b: Span) -> Span {
    let mut out = a;
    let mut rest = b;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        out = extend(out, v);
    }
    out
}

/// Random instance with `n` in `n_range`, up to `max_users` users, uncoded side
/// information plus an occasional coded row, and gains drawn from two clusters.
pub fn random_instance<R: Rng>(rng: &mut R, n_range: std::ops::RangeInclusive<usize>, max_users: usize) -> Instance {
    let n = rng.random_range(n_range);
    let users = rng.random_range(1..=max_users);
    let users = (0..users)
        .map(|_| {
            let mut known: Vec<u32> = (0..n).filter(|_| rng.random_bool(0.4)).map(|i| 1 << i).collect();
            if rng.random_bool(0.2) {
                let v = rng.random_range(1..(1u32 << n));
                if v.count_ones() > 1 {
                    known.push(v);
                }
            }
            let held = span_of(&known);
            let wants = (0..n)
                .filter(|&i| held >> (1u32 << i) & 1 == 0 && rng.random_bool(0.4))
                .collect();
            let gain = if rng.random_bool(0.5) {
                rng.random_range(0.05..0.3)
            } else {
                rng.random_range(0.8..1.2)
            };
            User { known, wants, gain }
        })
        .collect();
    Instance { n, users }
}
