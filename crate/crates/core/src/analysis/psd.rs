//! Exact positive semidefiniteness of rational symmetric matrices.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::Check;
use crate::error::{Error, Result};
use crate::linalg::{solve_rational, Rat, RatMatrix};

#[derive(Clone, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<Vec<Rat>>,
}

impl SymMatrix {
    pub fn new(entries: Vec<Vec<Rat>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries in a {n}x{n} matrix",
                    row.len()
                )));
            }
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::DimensionMismatch(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
            }
        }
        Ok(SymMatrix { n, entries })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            entries: vec![vec![Rat::zero(); n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i][i] = Rat::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: Rat) {
        self.entries[i][j] = value.clone();
        self.entries[j][i] = value;
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    /// `vᵀ M v`.
    pub fn quadratic_form(&self, v: &[Rat]) -> Rat {
        assert_eq!(v.len(), self.n);
        let mut acc = Rat::zero();
        for i in 0..self.n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if !v[j].is_zero() && !self.entries[i][j].is_zero() {
                    acc += &v[i] * &self.entries[i][j] * &v[j];
                }
            }
        }
        acc
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymMatrix{:?}", RatMatrix::from_rows(&self.entries))
    }
}

/// A vector `v` with `vᵀ M v < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsdWitness {
    pub vector: Vec<Rat>,
    pub value: Rat,
}

/// Symmetric elimination with positive diagonal pivots. A negative remaining
/// diagonal entry, or an off-diagonal entry in an all-zero remaining
/// diagonal, yields a witness lifted back to the original coordinates.
pub fn is_psd(m: &SymMatrix) -> Check<PsdWitness> {
    let n = m.n;
    let mut s = m.entries.clone();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut pivots: Vec<usize> = Vec::new();
    loop {
        if let Some(&j) = remaining.iter().find(|&&j| s[j][j].is_negative()) {
            return Check::Fail(lift(m, &pivots, &unit(n, j, None)));
        }
        if let Some(pos) = remaining.iter().position(|&j| s[j][j].is_positive()) {
            let j = remaining.remove(pos);
            for &a in &remaining {
                if s[a][j].is_zero() {
                    continue;
                }
                let f = &s[a][j] / &s[j][j];
                for &b in &remaining {
                    let v = &s[a][b] - &f * &s[j][b];
                    s[a][b] = v;
                }
            }
            pivots.push(j);
            continue;
        }
        for &j in &remaining {
            if let Some(&k) = remaining.iter().find(|&&k| k != j && !s[j][k].is_zero()) {
                let sign = if s[j][k].is_positive() { -Rat::one() } else { Rat::one() };
                return Check::Fail(lift(m, &pivots, &unit(n, j, Some((k, sign)))));
            }
        }
        return Check::Pass;
    }
}

fn unit(n: usize, j: usize, other: Option<(usize, Rat)>) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[j] = Rat::one();
    if let Some((k, c)) = other {
        v[k] = c;
    }
    v
}

/// Given `y` supported off the pivots, sets the pivot coordinates to
/// `-M_PP⁻¹ M_P· y` so that `vᵀ M v` equals the Schur-complement form of `y`.
fn lift(m: &SymMatrix, pivots: &[usize], y: &[Rat]) -> PsdWitness {
    let mut v = y.to_vec();
    if !pivots.is_empty() {
        let k = pivots.len();
        let mut a = RatMatrix::zeros(k, k);
        let mut rhs = vec![Rat::zero(); k];
        for (r, &p) in pivots.iter().enumerate() {
            for (c, &q) in pivots.iter().enumerate() {
                a[(r, c)] = m.entries[p][q].clone();
            }
            rhs[r] = -(0..m.n).fold(Rat::zero(), |acc, j| acc + &m.entries[p][j] * &y[j]);
        }
        let x = solve_rational(&a, &rhs).expect("pivot block is positive definite");
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = x[r].clone();
        }
    }
    let value = m.quadratic_form(&v);
    debug_assert!(value.is_negative());
    PsdWitness { vector: v, value }
}
