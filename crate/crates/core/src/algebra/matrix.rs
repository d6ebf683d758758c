//! Exact integer matrices and their Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of machine integers.
    ///
    /// # Panics
    /// If the rows have different lengths.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.as_ref().len(), cols, "ragged matrix");
            for (j, &v) in row.as_ref().iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: impl Into<BigInt>) {
        self.entries[row * self.cols + col] = value.into();
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Matrix product, or `None` on a dimension mismatch.
    pub fn mul(&self, rhs: &IntegerMatrix) -> Option<IntegerMatrix> {
        if self.cols != rhs.rows {
            return None;
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Some(out)
    }

    /// Nonzero Smith invariants `d_1 | d_2 | ...`, all positive.
    pub fn smith_normal_form(&self) -> SmithForm {
        smith_normal_form(self)
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        write!(f, "{}x{} {:?}", self.rows, self.cols, rows)
    }
}

/// Diagonal of the Smith normal form, without the trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariants greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

trait SnfScalar: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + fmt::Debug {}

impl<T> SnfScalar for T where
    T: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + fmt::Debug
{
}

/// Computes the Smith invariants of `m`.
///
/// Elimination runs in `i64` with checked arithmetic and restarts in
/// arbitrary precision if an intermediate value overflows.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let small: Option<Vec<i64>> = m.entries.iter().map(ToPrimitive::to_i64).collect();
    if let Some(data) = small {
        if let Some(diag) = diagonalize(m.rows, m.cols, data) {
            return SmithForm {
                diagonal: diag.into_iter().map(BigInt::from).collect(),
            };
        }
    }
    let diag = diagonalize(m.rows, m.cols, m.entries.clone())
        .expect("arbitrary precision elimination cannot overflow");
    SmithForm { diagonal: diag }
}

/// Diagonalizes by unimodular row and column operations with minimal-absolute
/// pivots, then normalizes the diagonal to the divisibility chain. `None` on
/// overflow.
fn diagonalize<T: SnfScalar>(rows: usize, cols: usize, mut a: Vec<T>) -> Option<Vec<T>> {
    let at = |r: usize, c: usize| r * cols + c;
    let mut diag: Vec<T> = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        'scan: for r in t..rows {
            for c in t..cols {
                let v = &a[at(r, c)];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(br, bc)| v.abs() < a[at(br, bc)].abs()) {
                    best = Some((r, c));
                    if v.abs().is_one() {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        if pr != t {
            for c in 0..cols {
                a.swap(at(pr, c), at(t, c));
            }
        }
        if pc != t {
            for r in 0..rows {
                a.swap(at(r, pc), at(r, t));
            }
        }

        loop {
            let mut dirty = false;
            let p = a[at(t, t)].clone();
            for r in t + 1..rows {
                if a[at(r, t)].is_zero() {
                    continue;
                }
                let q = a[at(r, t)].div_floor(&p);
                for c in t..cols {
                    let sub = q.checked_mul(&a[at(t, c)])?;
                    a[at(r, c)] = a[at(r, c)].checked_sub(&sub)?;
                }
                if !a[at(r, t)].is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                if a[at(t, c)].is_zero() {
                    continue;
                }
                let q = a[at(t, c)].div_floor(&p);
                for r in t..rows {
                    let sub = q.checked_mul(&a[at(r, t)])?;
                    a[at(r, c)] = a[at(r, c)].checked_sub(&sub)?;
                }
                if !a[at(t, c)].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // a remainder smaller than the pivot survived: move it to the pivot
            let mut best = (t, t);
            for r in t..rows {
                let v = &a[at(r, t)];
                if !v.is_zero() && v.abs() < a[at(best.0, best.1)].abs() {
                    best = (r, t);
                }
            }
            for c in t..cols {
                let v = &a[at(t, c)];
                if !v.is_zero() && v.abs() < a[at(best.0, best.1)].abs() {
                    best = (t, c);
                }
            }
            if best.0 != t {
                for c in 0..cols {
                    a.swap(at(best.0, c), at(t, c));
                }
            }
            if best.1 != t {
                for r in 0..rows {
                    a.swap(at(r, best.1), at(r, t));
                }
            }
        }
        diag.push(a[at(t, t)].abs());
        t += 1;
    }

    // Enforce d_i | d_{i+1}: diag(a, b) ~ diag(gcd, lcm).
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            if g != diag[i] {
                let l = (diag[i].clone() / g.clone()).checked_mul(&diag[j])?;
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    Some(diag)
}
