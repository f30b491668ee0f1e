//! Dense linear algebra over GF(2).
//!
//! A [`BitVector`] packs up to 64 coordinates into one machine word. Coordinate
//! `i` (message `x_{i+1}`) lives at bit `len - 1 - i`, so comparing the raw words
//! of two equal-length vectors is the same as comparing their coordinate strings
//! lexicographically, and the leading (leftmost) coordinate of a row is its
//! highest set bit. Row reduction pivots on the leftmost coordinate.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Widest vector representable in a single word.
pub const MAX_WIDTH: usize = 64;

#[inline]
fn top_bit(word: u64) -> u64 {
    debug_assert!(word != 0);
    1u64 << (63 - word.leading_zeros())
}

#[inline]
fn width_mask(len: usize) -> u64 {
    if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

fn check_width(len: usize) -> Result<()> {
    if (1..=MAX_WIDTH).contains(&len) {
        Ok(())
    } else {
        Err(Error::UnsupportedWidth(len))
    }
}

/// A vector in GF(2)^n, `1 <= n <= 64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    word: u64,
}

impl BitVector {
    pub fn zeros(len: usize) -> Result<Self> {
        check_width(len)?;
        Ok(Self { len, word: 0 })
    }

    /// The unit vector `e_index` (0-based).
    pub fn unit(len: usize, index: usize) -> Result<Self> {
        let mut v = Self::zeros(len)?;
        v.set(index, true)?;
        Ok(v)
    }

    /// XOR of the unit vectors at the given 0-based indices. Repeated indices cancel.
    pub fn from_indices(len: usize, indices: &[usize]) -> Result<Self> {
        let mut v = Self::zeros(len)?;
        for &i in indices {
            v.flip(i)?;
        }
        Ok(v)
    }

    /// Builds a vector from a slice of coordinates; any non-zero entry counts as 1.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut v = Self::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true)?;
            }
        }
        Ok(v)
    }

    /// Wraps a raw word in the crate's bit layout (coordinate 0 at bit `len - 1`).
    pub fn from_word(len: usize, word: u64) -> Result<Self> {
        check_width(len)?;
        if word & !width_mask(len) != 0 {
            return Err(Error::invalid(format!(
                "word {word:#x} has bits beyond width {len}"
            )));
        }
        Ok(Self { len, word })
    }

    pub(crate) fn from_word_unchecked(len: usize, word: u64) -> Self {
        debug_assert!(check_width(len).is_ok() && word & !width_mask(len) == 0);
        Self { len, word }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; a vector has at least one coordinate.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn word(&self) -> u64 {
        self.word
    }

    #[inline]
    fn mask(&self, index: usize) -> Result<u64> {
        if index < self.len {
            Ok(1u64 << (self.len - 1 - index))
        } else {
            Err(Error::IndexOutOfRange {
                index,
                n: self.len,
            })
        }
    }

    pub fn get(&self, index: usize) -> bool {
        self.mask(index).map(|m| self.word & m != 0).unwrap_or(false)
    }

    pub fn set(&mut self, index: usize, value: bool) -> Result<()> {
        let m = self.mask(index)?;
        if value {
            self.word |= m;
        } else {
            self.word &= !m;
        }
        Ok(())
    }

    pub fn flip(&mut self, index: usize) -> Result<()> {
        let m = self.mask(index)?;
        self.word ^= m;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.word == 0
    }

    pub fn weight(&self) -> u32 {
        self.word.count_ones()
    }

    /// 0-based indices of the non-zero coordinates, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn xor(&self, other: &BitVector) -> Result<BitVector> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(Self {
            len: self.len,
            word: self.word ^ other.word,
        })
    }

    /// Renders the vector as an XOR of messages, e.g. `x1+x7`; the zero vector is `0`.
    pub fn xor_expr(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.support()
            .map(|i| format!("x{}", i + 1))
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shorter vectors first; equal lengths compare lexicographically by coordinate.
impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// Row-reduced basis kept in fully reduced form: each pivot bit appears in
/// exactly one stored row.
///
/// [`XorBasis::reduce`] is then the linear projection whose kernel is the span,
/// which is what the code search uses to quotient out side information.
#[derive(Clone, Debug, Default)]
pub(crate) struct XorBasis {
    rows: Vec<u64>,
}

impl XorBasis {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn from_words(words: impl IntoIterator<Item = u64>) -> Self {
        let mut b = Self::new();
        for w in words {
            b.insert(w);
        }
        b
    }

    pub(crate) fn clear(&mut self) {
        self.rows.clear();
    }

    #[inline]
    pub(crate) fn reduce(&self, mut word: u64) -> u64 {
        for &r in &self.rows {
            if word & top_bit(r) != 0 {
                word ^= r;
            }
        }
        word
    }

    /// Returns true when the row enlarged the span.
    pub(crate) fn insert(&mut self, word: u64) -> bool {
        let v = self.reduce(word);
        if v == 0 {
            return false;
        }
        let pivot = top_bit(v);
        for r in self.rows.iter_mut() {
            if *r & pivot != 0 {
                *r ^= v;
            }
        }
        self.rows.push(v);
        true
    }

    #[inline]
    pub(crate) fn contains(&self, word: u64) -> bool {
        self.reduce(word) == 0
    }

    #[inline]
    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rows sorted leftmost pivot first: the reduced row echelon form.
    pub(crate) fn into_rref(mut self) -> Vec<u64> {
        self.rows.sort_unstable_by(|a, b| b.cmp(a));
        self.rows
    }
}

/// Dense matrix over GF(2). A matrix with zero rows is valid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    /// An empty (0-row) matrix of the given width.
    pub fn empty(cols: usize) -> Result<Self> {
        check_width(cols)?;
        Ok(Self {
            cols,
            rows: Vec::new(),
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let rows = (0..n)
            .map(|i| BitVector::unit(n, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { cols: n, rows })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        let z = BitVector::zeros(cols)?;
        Ok(Self {
            cols,
            rows: vec![z; rows],
        })
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        check_width(cols)?;
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Parses a dense 0/1 table; all rows must share one width.
    pub fn from_table(cols: usize, table: &[&[u8]]) -> Result<Self> {
        let rows = table
            .iter()
            .map(|r| BitVector::from_bits(r))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(cols, rows)
    }

    pub(crate) fn from_words(cols: usize, words: &[u64]) -> Self {
        Self {
            cols,
            rows: words
                .iter()
                .map(|&w| BitVector::from_word_unchecked(cols, w))
                .collect(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Vertical concatenation `[self; other]`.
    pub fn stack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend_from_slice(&other.rows);
        Ok(Self {
            cols: self.cols,
            rows,
        })
    }

    pub(crate) fn words(&self) -> impl Iterator<Item = u64> + '_ {
        self.rows.iter().map(|r| r.word())
    }

    pub(crate) fn basis(&self) -> XorBasis {
        XorBasis::from_words(self.words())
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        self.basis().rank()
    }

    /// Reduced row echelon form with zero rows removed. Two matrices span the same
    /// row space exactly when their `rref` outputs are equal.
    pub fn rref(&self) -> BitMatrix {
        BitMatrix::from_words(self.cols, &self.basis().into_rref())
    }

    /// Whether `v` is a GF(2) combination of the rows.
    pub fn in_row_space(&self, v: &BitVector) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self.basis().contains(v.word()))
    }

    pub fn same_row_space(&self, other: &BitMatrix) -> bool {
        self.cols == other.cols && self.rref() == other.rref()
    }

    /// Rows rendered as XOR expressions, e.g. `{x1+x7, x3+x6}`.
    pub fn xor_set(&self) -> String {
        let parts: Vec<String> = self.rows.iter().map(|r| r.xor_expr()).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{})", self.rows.len(), self.cols)?;
        f.debug_list().entries(self.rows.iter()).finish()
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}
