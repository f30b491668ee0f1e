//! Index coding problems with (possibly coded) side information over GF(2).
//!
//! Messages are indexed from 0 internally; user-facing renderings use `x1..xn`.
//! A receiver decodes message `w` from a linear code `L` exactly when the unit
//! vector `e_w` lies in the row space of `L` stacked on its side-information
//! generator.

mod search;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::galois::{BitMatrix, BitVector};

pub use search::{enumerate_optimal_codes, first_optimal_code, min_code_length, SearchLimits};

/// One receiver: a side-information generator (one row per known combination) and
/// a want set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Receiver {
    side_info: BitMatrix,
    wants: BTreeSet<usize>,
}

impl Receiver {
    /// Builds a receiver, dropping every want that the side information already
    /// resolves.
    pub fn new(side_info: BitMatrix, wants: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = side_info.cols();
        let basis = side_info.basis();
        let mut kept = BTreeSet::new();
        for w in wants {
            let e = BitVector::unit(n, w)?;
            if !basis.contains(e.word()) {
                kept.insert(w);
            }
        }
        Ok(Self {
            side_info,
            wants: kept,
        })
    }

    /// Receiver whose side information is a plain set of messages.
    pub fn uncoded(n: usize, known: &[usize], wants: &[usize]) -> Result<Self> {
        let rows = known
            .iter()
            .map(|&k| BitVector::unit(n, k))
            .collect::<Result<Vec<_>>>()?;
        Self::new(BitMatrix::from_rows(n, rows)?, wants.iter().copied())
    }

    pub fn side_info(&self) -> &BitMatrix {
        &self.side_info
    }

    pub fn wants(&self) -> &BTreeSet<usize> {
        &self.wants
    }

    pub fn width(&self) -> usize {
        self.side_info.cols()
    }

    /// Wants resolved by the side information together with `extra` rows.
    pub fn directly_satisfied_wants(&self, extra: &BitMatrix) -> Result<BTreeSet<usize>> {
        let known = self.side_info.stack(extra)?.basis();
        let mut satisfied = BTreeSet::new();
        for &w in &self.wants {
            if known.contains(BitVector::unit(self.width(), w)?.word()) {
                satisfied.insert(w);
            }
        }
        Ok(satisfied)
    }

    /// Whether every want is resolvable from side information plus `received`.
    pub fn decodes_with(&self, received: &BitMatrix) -> Result<bool> {
        Ok(self.directly_satisfied_wants(received)?.len() == self.wants.len())
    }

    /// Receiver after learning `extra`: side information grows, satisfied wants go.
    pub fn absorb(&self, extra: &BitMatrix) -> Result<Self> {
        let side_info = self.side_info.stack(extra)?;
        Self::new(side_info, self.wants.iter().copied())
    }
}

/// An index coding problem on `n` messages with `N >= 1` receivers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexCodingProblem {
    n: usize,
    receivers: Vec<Receiver>,
}

impl IndexCodingProblem {
    pub fn new(n: usize, receivers: Vec<Receiver>) -> Result<Self> {
        if receivers.is_empty() {
            return Err(Error::invalid("an index coding problem needs at least one receiver"));
        }
        if let Some(r) = receivers.iter().find(|r| r.width() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.width(),
            });
        }
        Ok(Self { n, receivers })
    }

    /// Problem where every receiver's side information is a set of messages.
    /// `users` holds `(known, wants)` pairs of 0-based message indices.
    pub fn uncoded(n: usize, users: &[(&[usize], &[usize])]) -> Result<Self> {
        let receivers = users
            .iter()
            .map(|(k, w)| Receiver::uncoded(n, k, w))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, receivers)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn receivers(&self) -> &[Receiver] {
        &self.receivers
    }

    pub fn receiver_count(&self) -> usize {
        self.receivers.len()
    }

    /// Union of all want sets.
    pub fn wanted_messages(&self) -> BTreeSet<usize> {
        self.receivers
            .iter()
            .flat_map(|r| r.wants.iter().copied())
            .collect()
    }

    pub fn has_demands(&self) -> bool {
        self.receivers.iter().any(|r| !r.wants.is_empty())
    }

    /// The problem restricted to the listed receivers, in the given order.
    pub fn subproblem(&self, users: &[usize]) -> Result<Self> {
        let receivers = users
            .iter()
            .map(|&u| {
                self.receivers.get(u).cloned().ok_or(Error::IndexOutOfRange {
                    index: u,
                    n: self.receivers.len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.n, receivers)
    }

    /// Linear decodability of `code` at every receiver.
    pub fn is_valid_code(&self, code: &LinearIndexCode) -> Result<bool> {
        if code.width() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: code.width(),
            });
        }
        for r in &self.receivers {
            if !r.decodes_with(code.matrix())? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every receiver gains the rows of `extra` as coded side information; wants it
    /// resolves are removed. Receivers left with no wants stay in place.
    pub fn reduce(&self, extra: &BitMatrix) -> Result<Self> {
        let receivers = self
            .receivers
            .iter()
            .map(|r| r.absorb(extra))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.n, receivers)
    }
}

/// A linear index code: one row of `L` per transmitted packet, rows independent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearIndexCode {
    matrix: BitMatrix,
}

impl LinearIndexCode {
    pub fn new(matrix: BitMatrix) -> Result<Self> {
        if matrix.rank() != matrix.row_count() {
            return Err(Error::DependentRows);
        }
        Ok(Self { matrix })
    }

    /// Code from rows written as lists of 0-based message indices XOR-ed together.
    pub fn from_index_rows(n: usize, rows: &[&[usize]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| BitVector::from_indices(n, r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(BitMatrix::from_rows(n, rows)?)
    }

    pub(crate) fn from_canonical_words(n: usize, words: &[u64]) -> Self {
        Self {
            matrix: BitMatrix::from_words(n, words),
        }
    }

    pub fn empty(n: usize) -> Result<Self> {
        Ok(Self {
            matrix: BitMatrix::empty(n)?,
        })
    }

    /// Sends every message in `messages` uncoded.
    pub fn uncoded(n: usize, messages: impl IntoIterator<Item = usize>) -> Result<Self> {
        let rows = messages
            .into_iter()
            .map(|m| BitVector::unit(n, m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(BitMatrix::from_rows(n, rows)?)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn rows(&self) -> &[BitVector] {
        self.matrix.rows()
    }

    /// Number of transmitted packets.
    pub fn len(&self) -> usize {
        self.matrix.row_count()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.is_empty()
    }

    pub fn width(&self) -> usize {
        self.matrix.cols()
    }

    /// The same code in reduced row echelon form.
    pub fn canonical(&self) -> LinearIndexCode {
        Self {
            matrix: self.matrix.rref(),
        }
    }

    pub fn same_row_space(&self, other: &LinearIndexCode) -> bool {
        self.matrix.same_row_space(&other.matrix)
    }
}

impl fmt::Display for LinearIndexCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.matrix.xor_set())
    }
}

impl fmt::Debug for LinearIndexCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearIndexCode{}", self.matrix.xor_set())
    }
}
