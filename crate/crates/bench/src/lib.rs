//! Shared fixtures for the criterion benchmarks under `benches/`.

use icnoma_core::{BitMatrix, BitVector, Scenario};

pub fn scenario(name: &str) -> Scenario {
    Scenario::bundled(name).expect("bundled scenario parses")
}

/// Deterministic dense `rows x cols` matrix built from a multiplicative hash of
/// the row index.
pub fn dense_matrix(rows: usize, cols: usize) -> BitMatrix {
    let mask = if cols == 64 { u64::MAX } else { (1u64 << cols) - 1 };
    let rows = (0..rows as u64)
        .map(|i| {
            let word = (i + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17) & mask;
            BitVector::from_word(cols, word).expect("word fits width")
        })
        .collect();
    BitMatrix::from_rows(cols, rows).expect("rows share width")
}
