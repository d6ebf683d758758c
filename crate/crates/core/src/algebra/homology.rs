use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::algebra::matrix::IntegerMatrix;
use crate::complex::{order_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::poset::FiniteSpace;

/// Integral homology: Betti number and torsion coefficients per dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologySummary {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologySummary {
    pub fn betti(&self, dim: usize) -> usize {
        self.betti.get(dim).copied().unwrap_or(0)
    }

    pub fn torsion(&self, dim: usize) -> &[BigInt] {
        self.torsion.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion.iter().any(|t| !t.is_empty())
    }

    /// True for the homology of a point.
    pub fn is_acyclic(&self) -> bool {
        self.betti(0) == 1 && self.betti.iter().skip(1).all(|&b| b == 0) && !self.has_torsion()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// One-line form such as `Z, 0, Z` or `Z, Z^2 + Z/2`.
    pub fn compact(&self) -> String {
        (0..self.betti.len())
            .map(|n| group_name(self.betti(n), self.torsion(n)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn group_name(betti: usize, torsion: &[BigInt]) -> String {
    let mut parts = Vec::new();
    match betti {
        0 => {}
        1 => parts.push("Z".to_string()),
        b => parts.push(format!("Z^{b}")),
    }
    parts.extend(torsion.iter().map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in 0..self.betti.len() {
            write!(f, "H_{n} = Z^{}", self.betti(n))?;
            for d in self.torsion(n) {
                write!(f, " + Z/{d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Boundary matrices `∂_1, ..., ∂_dim`. Rows of `∂_n` are the `(n-1)`-simplices
/// and columns the `n`-simplices, both in lexicographic order; removing the
/// vertex in position `i` contributes the sign `(-1)^i`.
pub fn boundary_matrices(k: &SimplicialComplex) -> Result<Vec<IntegerMatrix>> {
    let dim = k.dimension().ok_or(Error::EmptyComplex)?;
    let by_dim: Vec<Vec<Vec<usize>>> = (0..=dim).map(|d| k.simplices_of_dim(d)).collect();
    let mut out = Vec::with_capacity(dim);
    for n in 1..=dim {
        let rows: HashMap<&Vec<usize>, usize> = by_dim[n - 1]
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let mut m = IntegerMatrix::zeros(by_dim[n - 1].len(), by_dim[n].len());
        for (col, s) in by_dim[n].iter().enumerate() {
            for skip in 0..s.len() {
                let mut face = s.clone();
                face.remove(skip);
                m.set(rows[&face], col, if skip % 2 == 0 { 1 } else { -1 });
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Integral homology from the Smith normal forms of the boundary matrices.
pub fn homology(k: &SimplicialComplex) -> Result<HomologySummary> {
    let counts = k.f_vector();
    if counts.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let forms: Vec<_> = boundary_matrices(k)?
        .iter()
        .map(IntegerMatrix::smith_normal_form)
        .collect();
    // rank of ∂_n for n = 0..=dim+1, with ∂_0 and ∂_{dim+1} zero
    let rank = |n: usize| -> usize {
        if n == 0 || n > forms.len() {
            0
        } else {
            forms[n - 1].rank()
        }
    };
    let mut betti = Vec::with_capacity(counts.len());
    let mut torsion = Vec::with_capacity(counts.len());
    for (n, &c) in counts.iter().enumerate() {
        betti.push(c - rank(n) - rank(n + 1));
        torsion.push(if n < forms.len() {
            forms[n].torsion()
        } else {
            Vec::new()
        });
    }
    Ok(HomologySummary { betti, torsion })
}

/// Homology of a finite space, i.e. of its order complex.
pub fn homology_space(x: &FiniteSpace) -> Result<HomologySummary> {
    homology(&order_complex(x)?)
}

/// Alternating count of simplices.
pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    k.f_vector()
        .iter()
        .enumerate()
        .map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// Euler characteristic of a finite space (alternating count of chains).
pub fn euler_characteristic_space(x: &FiniteSpace) -> Result<i64> {
    Ok(euler_characteristic(&order_complex(x)?))
}
