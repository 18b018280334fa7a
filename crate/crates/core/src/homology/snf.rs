//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntegerMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: impl Into<BigInt>) {
        self.entries[r * self.cols + c] = value.into();
    }

    fn at(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[target] -= factor * row[source]
    fn row_sub(&mut self, target: usize, source: usize, factor: &BigInt, from: usize) {
        for c in from..self.cols {
            let delta = factor * self.get(source, c);
            *self.at(target, c) -= delta;
        }
    }

    fn col_sub(&mut self, target: usize, source: usize, factor: &BigInt, from: usize) {
        for r in from..self.rows {
            let delta = factor * self.get(r, source);
            *self.at(r, target) -= delta;
        }
    }

    fn row_add(&mut self, target: usize, source: usize, from: usize) {
        for c in from..self.cols {
            let v = self.get(source, c).clone();
            *self.at(target, c) += v;
        }
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ...`, all positive. Their number is the rank.
///
/// Pivots on the smallest nonzero absolute value in the remaining block.
pub fn smith_normal_form(matrix: &IntegerMatrix) -> Vec<BigInt> {
    let mut a = matrix.clone();
    let mut factors = Vec::new();
    let (rows, cols) = (a.rows, a.cols);
    for t in 0..rows.min(cols) {
        loop {
            let Some((pr, pc)) = smallest_nonzero(&a, t) else {
                return factors;
            };
            a.swap_rows(t, pr);
            a.swap_cols(t, pc);
            let pivot = a.get(t, t).clone();

            let mut clean = true;
            for r in t + 1..rows {
                if a.get(r, t).is_zero() {
                    continue;
                }
                let q = a.get(r, t).div_floor(&pivot);
                a.row_sub(r, t, &q, t);
                clean &= a.get(r, t).is_zero();
            }
            for c in t + 1..cols {
                if a.get(t, c).is_zero() {
                    continue;
                }
                let q = a.get(t, c).div_floor(&pivot);
                a.col_sub(c, t, &q, t);
                clean &= a.get(t, c).is_zero();
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the block; otherwise fold in an offending row.
            let offending = (t + 1..rows)
                .find(|&r| (t + 1..cols).any(|c| !a.get(r, c).is_multiple_of(&pivot)));
            match offending {
                Some(r) => a.row_add(t, r, t),
                None => {
                    factors.push(pivot.abs());
                    break;
                }
            }
        }
    }
    factors
}

fn smallest_nonzero(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for r in t..a.rows {
        for c in t..a.cols {
            let v = a.get(r, c);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                best = Some((r, c, abs));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}
