//! Brute-force ground truth: scan the integer box around `nP`, keep the
//! points lying in some closed triangulation cell, and sum the weight.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::Polytope;
use crate::linalg::{denominator_lcm, Rat};
use crate::series::{hstar, hstar_poly, series_expand, HStarResult};
use crate::weight::{Weight, WeightPoly};

/// Largest integer box the scan will enumerate.
pub const SCAN_LIMIT: u128 = 10_000_000;

/// Rational linear functional scaled to integer coefficients.
fn integral(f: &[Rat]) -> Result<Vec<i128>> {
    let l = denominator_lcm(f);
    f.iter()
        .map(|c| {
            (c * Rat::from_integer(l.clone()))
                .to_integer()
                .to_i128()
                .ok_or(Error::Overflow("oracle functional"))
        })
        .collect()
}

fn dot(c: &[i128], x: &[i128]) -> Result<i128> {
    c.iter().zip(x).try_fold(0i128, |acc, (a, b)| {
        a.checked_mul(*b)
            .and_then(|v| acc.checked_add(v))
            .ok_or(Error::Overflow("oracle dot product"))
    })
}

/// `{x : α x + β ≥ 0}` intersected with `[lo, hi]`.
fn restrict(alpha: i128, beta: i128, lo: i128, hi: i128) -> (i128, i128) {
    match alpha.signum() {
        1 => (lo.max(Integer::div_ceil(&-beta, &alpha)), hi),
        -1 => (lo, hi.min(Integer::div_floor(&beta, &-alpha))),
        _ if beta >= 0 => (lo, hi),
        _ => (1, 0),
    }
}

/// All points of `nP ∩ Z^d`, in lexicographic order.
pub fn lattice_points(p: &Polytope, n: usize) -> Result<Vec<Vec<BigInt>>> {
    if p.is_empty() {
        return Ok(Vec::new());
    }
    let d = p.ambient_dim();
    if d == 0 {
        return Ok(vec![Vec::new()]);
    }
    let nr = Rat::from_integer(n.into());
    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    for k in 0..d {
        let vals = p.vertices().iter().map(|v| &v[k] * &nr);
        let min = vals.clone().min().expect("nonempty");
        let max = vals.max().expect("nonempty");
        lo.push(min.ceil().to_integer().to_i128().ok_or(Error::Overflow("oracle box"))?);
        hi.push(max.floor().to_integer().to_i128().ok_or(Error::Overflow("oracle box"))?);
    }
    let mut size: u128 = 1;
    for k in 0..d {
        if hi[k] < lo[k] {
            return Ok(Vec::new());
        }
        size = size.saturating_mul((hi[k] - lo[k] + 1) as u128);
    }
    if size > SCAN_LIMIT {
        return Err(Error::ScanTooLarge(size));
    }

    let membership = p.membership();
    let equations = membership
        .span_equations()
        .iter()
        .map(|e| integral(e))
        .collect::<Result<Vec<_>>>()?;
    let cells = membership
        .functionals()
        .iter()
        .map(|c| c.iter().map(|f| integral(f)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;

    // Scan the first d-1 coordinates; solve the constraints for the last.
    let last = d - 1;
    let n_i = n as i128;
    let mut out = Vec::new();
    let mut x: Vec<i128> = lo.clone();
    x.push(n_i);
    loop {
        // Value of a constraint with the last coordinate set to zero.
        let partial = |c: &[i128], x: &mut Vec<i128>| -> Result<i128> {
            let saved = x[last];
            x[last] = 0;
            let v = dot(c, x);
            x[last] = saved;
            v
        };
        let mut range = (lo[last], hi[last]);
        let mut fixed: Option<i128> = None;
        let mut feasible = true;
        for e in &equations {
            let beta = partial(e, &mut x)?;
            let alpha = e[last];
            if alpha == 0 {
                feasible &= beta == 0;
            } else if beta % alpha != 0 {
                feasible = false;
            } else {
                let v = -beta / alpha;
                feasible &= fixed.is_none_or(|f| f == v);
                fixed = Some(v);
            }
        }
        if let Some(v) = fixed {
            range = (range.0.max(v), range.1.min(v));
        }
        if feasible {
            let mut column: BTreeSet<i128> = BTreeSet::new();
            for cell in &cells {
                let mut r = range;
                for f in cell {
                    r = restrict(f[last], partial(f, &mut x)?, r.0, r.1);
                }
                column.extend(r.0..=r.1);
            }
            for v in column {
                let mut pt: Vec<BigInt> = x[..last].iter().map(|&c| BigInt::from(c)).collect();
                pt.push(BigInt::from(v));
                out.push(pt);
            }
        }

        let mut k = last;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            x[k] += 1;
            if x[k] <= hi[k] {
                break;
            }
            x[k] = lo[k];
        }
    }
}

/// Weight terms with integer-scaled factors, evaluated exactly.
struct ScaledWeight {
    terms: Vec<(Rat, Vec<Vec<i128>>)>,
}

impl ScaledWeight {
    fn new(w: &WeightPoly) -> Result<Self> {
        let terms = w
            .terms
            .iter()
            .map(|t| {
                let mut mult = t.scalar.clone();
                let mut factors = Vec::with_capacity(t.factors.len());
                for f in &t.factors {
                    let l = denominator_lcm(f.coeffs());
                    mult /= Rat::from_integer(l);
                    factors.push(integral(f.coeffs())?);
                }
                Ok((mult, factors))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ScaledWeight { terms })
    }

    /// `Σ_x w(x, n)` accumulated per term as integers.
    fn sum(&self, points: &[Vec<BigInt>], n: usize) -> Result<Rat> {
        let mut sums = vec![BigInt::zero(); self.terms.len()];
        let mut x: Vec<i128> = Vec::new();
        for pt in points {
            x.clear();
            for c in pt {
                x.push(c.to_i128().ok_or(Error::Overflow("oracle point"))?);
            }
            x.push(n as i128);
            for ((_, factors), s) in self.terms.iter().zip(&mut sums) {
                let mut prod = BigInt::from(1);
                for f in factors {
                    prod *= dot(f, &x)?;
                }
                *s += prod;
            }
        }
        Ok(self
            .terms
            .iter()
            .zip(sums)
            .map(|((mult, _), s)| mult * Rat::from_integer(s))
            .sum())
    }
}

/// `Σ_{x ∈ nP ∩ Z^d} w(x, n)`.
pub fn weighted_sum(p: &Polytope, w: &WeightPoly, n: usize) -> Result<Rat> {
    let points = lattice_points(p, n)?;
    ScaledWeight::new(w)?.sum(&points, n)
}

/// Per-dilation comparison of a computed series with the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    pub oracle: Vec<Rat>,
    pub series: Vec<Rat>,
}

impl SeriesReport {
    pub fn first_mismatch(&self) -> Option<usize> {
        self.oracle.iter().zip(&self.series).position(|(a, b)| a != b)
    }

    pub fn is_pass(&self) -> bool {
        self.first_mismatch().is_none()
    }
}

/// Compares the expansion of `r` with the oracle sums for `n = 0..=n_max`.
pub fn compare_series(p: &Polytope, w: &WeightPoly, r: &HStarResult, n_max: usize) -> Result<SeriesReport> {
    let scaled = ScaledWeight::new(w)?;
    let oracle = (0..=n_max)
        .map(|n| scaled.sum(&lattice_points(p, n)?, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(SeriesReport {
        oracle,
        series: series_expand(r, n_max),
    })
}

pub fn verify_series(p: &Polytope, w: &Weight, n_max: usize) -> Result<SeriesReport> {
    let r = hstar(p, w)?;
    compare_series(p, &w.clone().into(), &r, n_max)
}

/// [`verify_series`] for a weight of mixed degree.
pub fn verify_poly_series(p: &Polytope, w: &WeightPoly, n_max: usize) -> Result<SeriesReport> {
    let r = hstar_poly(p, w)?;
    compare_series(p, w, &r, n_max)
}
