//! Assembly of weighted h*-polynomials from half-open cells.
//!
//! For a half-open simplex with cone generators `w_1..w_k` (last coordinate
//! `g`) and a term `ℓ_1⋯ℓ_m`, the numerator over `(1 - t^g)^{k+m}` is
//!
//! ```text
//! Σ_x t^{height(x)} Σ_{φ: [m] → [k]} Π_i ℓ_i(w_{φ(i)}) Π_j A_{|φ⁻¹(j)|}^{λ_j(x)}(t^g)
//! ```
//!
//! summed over the lattice points `x` of the half-open parallelepiped.

use std::collections::{BTreeMap, HashMap};
use std::ops::{AddAssign, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::eulerian::{binomial, eulerian_lambda_table, EulerianTable};
use crate::geometry::{half_open_decomposition, triangulate, HalfOpenSimplex, Polytope};
use crate::linalg::{denominator_lcm, Rat};
use crate::parallelepiped::{cone_generators, enumerate_points, enumerate_scaled, ScaledPoints};
use crate::poly::Poly;
use crate::weight::{homogenize_weight, LinForm, Weight, WeightPoly, WeightTerm};

/// `numerator / (1 - t^period)^exponent`, with the data it was computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HStarResult {
    pub numerator: Poly,
    pub period: usize,
    pub exponent: usize,
    /// Intrinsic dimension `r` of the polytope (`-1` when empty).
    pub dim: i64,
    /// Degree `m` of the weight.
    pub degree: usize,
    pub ambient_dim: usize,
}

impl HStarResult {
    /// Rewrites the same rational function over `(1 - t^period)^exponent`.
    /// Fails if the new numerator would not be a polynomial.
    pub fn rebase(&self, period: usize, exponent: usize) -> Result<HStarResult> {
        let lifted = &self.numerator * &Poly::one_minus_power(period, exponent);
        let numerator = lifted.exact_div(&Poly::one_minus_power(self.period, self.exponent))?;
        Ok(HStarResult {
            numerator,
            period,
            exponent,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &Rat) -> HStarResult {
        HStarResult {
            numerator: self.numerator.scale(c),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> HStarResult {
        self.scale(&-Rat::one())
    }

    /// Taylor coefficients of the series up to `t^n`.
    pub fn expand(&self, n: usize) -> Vec<Rat> {
        series_expand(self, n)
    }
}

/// Taylor coefficients `0..=n` of `numerator / (1 - t^q)^b`.
pub fn series_expand(r: &HStarResult, n: usize) -> Vec<Rat> {
    let q = r.period;
    let b = r.exponent;
    // 1/(1 - t^q)^b = Σ_k C(k+b-1, b-1) t^{qk}
    let mut inverse = vec![Rat::zero(); n + 1];
    for k in 0..=n / q {
        inverse[k * q] = if b == 0 {
            if k == 0 {
                Rat::one()
            } else {
                Rat::zero()
            }
        } else {
            Rat::from_integer(binomial(k + b - 1, b - 1))
        };
    }
    (0..=n)
        .map(|i| {
            (0..=i).fold(Rat::zero(), |acc, j| {
                let c = r.numerator.coeff(j);
                if c.is_zero() || inverse[i - j].is_zero() {
                    acc
                } else {
                    acc + c * &inverse[i - j]
                }
            })
        })
        .collect()
}

/// Rebases every part to `(1 - t^a)^b` and sums the numerators.
pub fn ratfun_combine(parts: &[HStarResult], a: usize, b: usize) -> Result<HStarResult> {
    let mut numerator = Poly::zero();
    for p in parts {
        if a == 0 || a % p.period != 0 {
            return Err(Error::IndivisiblePeriod {
                period: p.period,
                target: a,
            });
        }
        if p.exponent > b {
            return Err(Error::ExponentTooLarge {
                exponent: p.exponent,
                target: b,
            });
        }
        let lifted = &p.numerator
            * &Poly::geometric(p.period, a).pow(p.exponent)
            * Poly::one_minus_power(a, b - p.exponent);
        numerator = numerator + lifted;
    }
    Ok(HStarResult {
        numerator,
        period: a,
        exponent: b,
        dim: parts.iter().map(|p| p.dim).max().unwrap_or(-1),
        degree: parts.iter().map(|p| p.degree).max().unwrap_or(0),
        ambient_dim: parts.first().map_or(0, |p| p.ambient_dim),
    })
}

/// `ℓ_i(w_j)` for every factor `i` and generator `j`.
fn factor_values(factors: &[LinForm], generators: &[Vec<BigInt>]) -> Vec<Vec<Rat>> {
    factors
        .iter()
        .map(|f| generators.iter().map(|w| f.eval_int(w)).collect())
        .collect()
}

fn check_dims(h: &HalfOpenSimplex, term: &WeightTerm) -> Result<()> {
    match term.factors.iter().find(|f| f.ambient_dim() != h.ambient_dim()) {
        Some(f) => Err(Error::DimensionMismatch(format!(
            "linear form on R^{} applied to a simplex in R^{}",
            f.ambient_dim() + 1,
            h.ambient_dim()
        ))),
        None => Ok(()),
    }
}

/// `Σ_φ Π_i ℓ_i(w_{φ(i)})` grouped by the count vector `(|φ⁻¹(1)|, …, |φ⁻¹(k)|)`.
fn assignment_coefficients(values: &[Vec<Rat>], k: usize) -> HashMap<Vec<usize>, Rat> {
    fn walk(
        values: &[Vec<Rat>],
        i: usize,
        counts: &mut Vec<usize>,
        acc: Rat,
        out: &mut HashMap<Vec<usize>, Rat>,
    ) {
        if acc.is_zero() {
            return;
        }
        if i == values.len() {
            *out.entry(counts.clone()).or_insert_with(Rat::zero) += acc;
            return;
        }
        for j in 0..counts.len() {
            counts[j] += 1;
            walk(values, i + 1, counts, &acc * &values[i][j], out);
            counts[j] -= 1;
        }
    }
    let mut out = HashMap::new();
    walk(values, 0, &mut vec![0; k], Rat::one(), &mut out);
    out.retain(|_, v| !v.is_zero());
    out
}

/// Integer type for per-height sums; `i128` is used only when a bound
/// computed beforehand rules out overflow.
trait Acc: Clone + Zero + One + AddAssign + Mul<Output = Self> + From<i64> + Into<BigInt> {}

impl<T> Acc for T where T: Clone + Zero + One + AddAssign + Mul<Output = T> + From<i64> + Into<BigInt> {}

/// `Σ_x Π_j a_j(x)^{c_j}` per height, for every exponent vector `c`.
fn moments<T: Acc>(scaled: &ScaledPoints, keys: &[&Vec<usize>], m: usize) -> Vec<Vec<BigInt>> {
    let len = scaled.max_height() + 1;
    let mut sums: Vec<Vec<T>> = vec![vec![T::zero(); len]; keys.len()];
    let mut powers: Vec<Vec<T>> = vec![vec![T::one(); m + 1]; scaled.k];
    for (a, height) in scaled.iter() {
        for (p, &x) in powers.iter_mut().zip(a) {
            let x = T::from(x);
            for e in 1..=m {
                p[e] = p[e - 1].clone() * x.clone();
            }
        }
        for (c, sum) in keys.iter().zip(sums.iter_mut()) {
            let mut v = T::one();
            for (j, &cj) in c.iter().enumerate() {
                if cj > 0 {
                    v = v * powers[j][cj].clone();
                }
            }
            sum[height] += v;
        }
    }
    sums.into_iter()
        .map(|s| s.into_iter().map(Into::into).collect())
        .collect()
}

/// Numerator of the series of one weight term over a half-open simplex,
/// relative to `(1 - t^g)^{r+m+1}`.
///
/// `Π_j A_{n_j}^{λ_j}(u)` is a polynomial in `u` and the `λ_j` with integer
/// coefficients, so the sum over parallelepiped points only needs the
/// moments `Σ_x Π_j λ_j(x)^{c_j}` per height.
pub fn hstar_term_halfopen(h: &HalfOpenSimplex, term: &WeightTerm, g: usize) -> Result<Poly> {
    check_dims(h, term)?;
    let cone = cone_generators(h, g)?;
    if term.scalar.is_zero() {
        return Ok(Poly::zero());
    }
    let k = cone.generators.len();
    let m = term.degree();
    let values = factor_values(&term.factors, &cone.generators);
    let assignments = assignment_coefficients(&values, k);
    let tables: Vec<Vec<Vec<BigInt>>> = (0..=m).map(eulerian_lambda_table).collect();

    // G[c] = polynomial in u = t^g multiplying λ^c.
    let mut g_poly: BTreeMap<Vec<usize>, Vec<Rat>> = BTreeMap::new();
    for (counts, coef) in &assignments {
        let mut partial: Vec<(Vec<usize>, usize, BigInt)> = vec![(Vec::with_capacity(k), 0, BigInt::one())];
        for &n in counts {
            let table = &tables[n];
            let mut next = Vec::with_capacity(partial.len() * (n + 1) * (n + 1));
            for (c, e, v) in &partial {
                for (kk, row) in table.iter().enumerate() {
                    for (cc, entry) in row.iter().enumerate() {
                        if entry.is_zero() {
                            continue;
                        }
                        let mut c2 = c.clone();
                        c2.push(cc);
                        next.push((c2, e + kk, v * entry));
                    }
                }
            }
            partial = next;
        }
        for (c, e, v) in partial {
            let slot = g_poly.entry(c).or_default();
            if slot.len() <= e {
                slot.resize(e + 1, Rat::zero());
            }
            slot[e] += coef * Rat::from_integer(v);
        }
    }

    let scaled = enumerate_scaled(&cone)?;
    let keys: Vec<&Vec<usize>> = g_poly.keys().collect();
    let bound = BigInt::from(scaled.len()) * BigInt::from(scaled.scale).pow(m as u32);
    let moments = if bound.bits() < 126 {
        moments::<i128>(&scaled, &keys, m)
    } else {
        moments::<BigInt>(&scaled, &keys, m)
    };

    let scale = Rat::from_integer(scaled.scale.into());
    let mut total = Poly::zero();
    for ((c, coeffs), mom) in g_poly.iter().zip(moments) {
        let deg: usize = c.iter().sum();
        let denom = (0..deg).fold(Rat::one(), |acc, _| acc * &scale);
        let mpoly = mom.into_iter().map(|v| Rat::from_integer(v) / &denom).collect();
        total = total + Poly::new(coeffs.clone()).stretch(g) * Poly::new(mpoly);
    }
    Ok(total.scale(&term.scalar))
}

/// The same numerator evaluated literally: every parallelepiped point and
/// every assignment of factors to generators, with memoized Eulerian lookups.
pub fn hstar_term_direct(h: &HalfOpenSimplex, term: &WeightTerm, g: usize) -> Result<Poly> {
    check_dims(h, term)?;
    let cone = cone_generators(h, g)?;
    let k = cone.generators.len();
    let m = term.degree();
    let values = factor_values(&term.factors, &cone.generators);
    let mut table = EulerianTable::new();
    let mut total = Poly::zero();
    for x in enumerate_points(&cone)? {
        let mut inner = Poly::zero();
        let mut phi = vec![0usize; m];
        loop {
            let mut counts = vec![0usize; k];
            let mut coef = Rat::one();
            for (i, &j) in phi.iter().enumerate() {
                counts[j] += 1;
                coef *= &values[i][j];
            }
            if !coef.is_zero() {
                let mut prod = Poly::constant(coef);
                for (j, &n) in counts.iter().enumerate() {
                    prod = prod * table.get(n, &x.lambdas[j])?.stretch(g);
                }
                inner = inner + prod;
            }
            let mut i = 0;
            while i < m {
                phi[i] += 1;
                if phi[i] < k {
                    break;
                }
                phi[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
        }
        total = total + inner.shift(x.height);
    }
    Ok(total.scale(&term.scalar))
}

/// Numerator of `ℓ²` over one half-open simplex via the closed per-point
/// contribution; `W_j = ℓ(w_j)`, `u = t^g`:
///
/// `(Σ(1-λ_j)W_j)² u² + (ΣW_j² + 2·ΣW_j·Σλ_jW_j - 2(Σλ_jW_j)²) u + (Σλ_jW_j)²`.
pub fn ell_squared_halfopen(h: &HalfOpenSimplex, form: &LinForm, g: usize) -> Result<Poly> {
    if form.ambient_dim() != h.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "linear form on R^{} applied to a simplex in R^{}",
            form.ambient_dim() + 1,
            h.ambient_dim()
        )));
    }
    let cone = cone_generators(h, g)?;
    let w: Vec<Rat> = cone.generators.iter().map(|x| form.eval_int(x)).collect();
    let sum: Rat = w.iter().sum();
    let sum_sq: Rat = w.iter().map(|x| x * x).sum();
    let scaled = enumerate_scaled(&cone)?;

    // With W_j = wi_j / l and λ_j = a_j / det, Σλ_jW_j = P / (l·det) for
    // the integer P = Σ a_j wi_j.
    let l = denominator_lcm(&w);
    let wi: Vec<BigInt> = w.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let max_p = BigInt::from(scaled.scale) * wi.iter().map(|x| x.abs()).sum::<BigInt>();
    let bound = BigInt::from(scaled.len()) * &max_p * &max_p;
    let (count, s1, s2) = match (bound.bits() < 126).then(|| wi.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>()) {
        Some(Some(small)) => power_sums::<i128>(&scaled, &small),
        _ => power_sums::<BigInt>(&scaled, &wi),
    };

    let unit = Rat::from_integer(l * BigInt::from(scaled.scale));
    let unit_sq = &unit * &unit;
    let two = Rat::from_integer(2.into());
    let mut coeffs = vec![Rat::zero(); scaled.max_height() + 2 * g + 1];
    for h in 0..count.len() {
        if count[h] == 0 {
            continue;
        }
        let n = Rat::from_integer(count[h].into());
        let p1 = Rat::from_integer(s1[h].clone()) / &unit;
        let p2 = Rat::from_integer(s2[h].clone()) / &unit_sq;
        coeffs[h + g] += &n * &sum_sq + &two * &sum * &p1 - &two * &p2;
        coeffs[h + 2 * g] += &n * &sum * &sum - &two * &sum * &p1 + &p2;
        coeffs[h] += p2;
    }
    Ok(Poly::new(coeffs))
}

/// Per height: the number of points and the sums of `P` and `P²` where
/// `P = Σ a_j c_j`.
fn power_sums<T: Acc>(scaled: &ScaledPoints, c: &[impl Clone + Into<T>]) -> (Vec<usize>, Vec<BigInt>, Vec<BigInt>) {
    let len = scaled.max_height() + 1;
    let c: Vec<T> = c.iter().cloned().map(Into::into).collect();
    let mut count = vec![0usize; len];
    let mut s1 = vec![T::zero(); len];
    let mut s2 = vec![T::zero(); len];
    for (a, height) in scaled.iter() {
        let mut p = T::zero();
        for (&x, cj) in a.iter().zip(&c) {
            p += T::from(x) * cj.clone();
        }
        count[height] += 1;
        s1[height] += p.clone();
        s2[height] += p.clone() * p;
    }
    let big = |v: Vec<T>| v.into_iter().map(Into::into).collect();
    (count, big(s1), big(s2))
}

/// Series of a homogeneous weight over one half-open simplex, with period `g`.
pub fn hstar_simplex(h: &HalfOpenSimplex, w: &Weight, g: usize) -> Result<HStarResult> {
    if w.ambient_dim() != h.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "weight on R^{} for a simplex in R^{}",
            w.ambient_dim() + 1,
            h.ambient_dim()
        )));
    }
    let mut numerator = Poly::zero();
    for term in w.terms() {
        numerator = numerator + hstar_term_halfopen(h, term, g)?;
    }
    if w.terms().is_empty() {
        cone_generators(h, g)?;
    }
    Ok(HStarResult {
        numerator,
        period: g,
        exponent: h.dim() + w.degree() + 1,
        dim: h.dim() as i64,
        degree: w.degree(),
        ambient_dim: h.ambient_dim(),
    })
}

fn empty_result(p: &Polytope, m: usize) -> HStarResult {
    HStarResult {
        numerator: Poly::zero(),
        period: 1,
        exponent: m,
        dim: -1,
        degree: m,
        ambient_dim: p.ambient_dim(),
    }
}

fn check_weight_dim(p: &Polytope, d: usize) -> Result<()> {
    if p.ambient_dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "weight on R^{} for a polytope in R^{}",
            d + 1,
            p.ambient_dim()
        )));
    }
    Ok(())
}

/// Numerator of the weighted Ehrhart series over `(1 - t^q)^{r+m+1}`, where
/// `q` is the denominator of `P`.
pub fn hstar(p: &Polytope, w: &Weight) -> Result<HStarResult> {
    check_weight_dim(p, w.ambient_dim())?;
    if p.is_empty() {
        return Ok(empty_result(p, w.degree()));
    }
    let q = p.denominator();
    let cells = half_open_decomposition(p, &triangulate(p)?)?;
    let mut numerator = Poly::zero();
    for cell in &cells {
        for term in w.terms() {
            numerator = numerator + hstar_term_halfopen(cell, term, q)?;
        }
    }
    let r = p.dim();
    Ok(HStarResult {
        numerator,
        period: q,
        exponent: (r + 1) as usize + w.degree(),
        dim: r,
        degree: w.degree(),
        ambient_dim: p.ambient_dim(),
    })
}

/// [`hstar`] for `w = ℓ²` through the closed per-point formula.
pub fn hstar_ell_squared(p: &Polytope, form: &LinForm) -> Result<HStarResult> {
    check_weight_dim(p, form.ambient_dim())?;
    if p.is_empty() {
        return Ok(empty_result(p, 2));
    }
    let q = p.denominator();
    let cells = half_open_decomposition(p, &triangulate(p)?)?;
    let mut numerator = Poly::zero();
    for cell in &cells {
        numerator = numerator + ell_squared_halfopen(cell, form, q)?;
    }
    let r = p.dim();
    Ok(HStarResult {
        numerator,
        period: q,
        exponent: (r + 3) as usize,
        dim: r,
        degree: 2,
        ambient_dim: p.ambient_dim(),
    })
}

/// Series of a mixed-degree weight: each homogeneous part is computed
/// separately and all parts are rebased to `(1 - t^q)^{r+m_max+1}`.
pub fn hstar_poly(p: &Polytope, w: &WeightPoly) -> Result<HStarResult> {
    check_weight_dim(p, w.ambient_dim)?;
    let parts = homogenize_weight(w)
        .into_iter()
        .map(|(_, part)| hstar(p, &part))
        .collect::<Result<Vec<_>>>()?;
    let m_max = w.max_degree();
    if p.is_empty() {
        return Ok(empty_result(p, m_max));
    }
    let b = (p.dim() + 1) as usize + m_max;
    let mut combined = ratfun_combine(&parts, p.denominator(), b)?;
    combined.dim = p.dim();
    combined.degree = m_max;
    combined.ambient_dim = p.ambient_dim();
    Ok(combined)
}
