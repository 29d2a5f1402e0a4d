//! Comparison of h*-polynomials of nested polytopes after bringing both to a
//! common period `g`.

use super::ray::{check_nonneg_coeffs, nonneg_on_ray, RayWitness};
use super::Check;
use crate::error::{Error, Result};
use crate::geometry::{HalfOpenSimplex, Polytope};
use crate::poly::Poly;
use crate::series::{hstar, hstar_simplex, HStarResult};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonotoneMode {
    /// `R - L` has nonnegative coefficients.
    Coeffwise,
    /// `R - L ≥ 0` on `[0, ∞)`.
    Ray,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonotoneFailure {
    Coefficient(usize),
    Ray(RayWitness),
}

/// The two rebased numerators and the verdict on `rhs - lhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub lhs: Poly,
    pub rhs: Poly,
    pub verdict: Check<MonotoneFailure>,
}

impl MonotonicityReport {
    fn new(lhs: Poly, rhs: Poly, mode: MonotoneMode) -> Self {
        let diff = &rhs - &lhs;
        let verdict = match mode {
            MonotoneMode::Coeffwise => check_nonneg_coeffs(&diff).map(MonotoneFailure::Coefficient),
            MonotoneMode::Ray => nonneg_on_ray(&diff).map(MonotoneFailure::Ray),
        };
        MonotonicityReport { lhs, rhs, verdict }
    }

    pub fn difference(&self) -> Poly {
        &self.rhs - &self.lhs
    }
}

/// `(1 + t^δ + … + t^{g-δ})^{exponent} · numerator` for a result of period `δ`.
fn lift_to(r: &HStarResult, g: usize) -> Poly {
    &r.numerator * &Poly::geometric(r.period, g).pow(r.exponent)
}

fn check_period(period: usize, g: usize) -> Result<()> {
    if g == 0 || g % period != 0 {
        return Err(Error::IndivisiblePeriod { period, target: g });
    }
    Ok(())
}

/// Compares `L = (1+t^{δ(P)}+…+t^{g-δ(P)})^{dim P+m+1} h*_P` with the analogous
/// `R` for `Q ⊇ P`.
pub fn check_monotonicity(
    p: &Polytope,
    q: &Polytope,
    w: &Weight,
    g: usize,
    mode: MonotoneMode,
) -> Result<MonotonicityReport> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "P lives in R^{} and Q in R^{}",
            p.ambient_dim(),
            q.ambient_dim()
        )));
    }
    let membership = q.membership();
    if let Some(index) = p.vertices().iter().position(|v| !membership.contains(v)) {
        return Err(Error::NotContained { index });
    }
    check_period(p.denominator(), g)?;
    check_period(q.denominator(), g)?;
    if mode == MonotoneMode::Ray && p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(format!(
            "ray comparison needs equal dimensions, got {} and {}",
            p.dim(),
            q.dim()
        )));
    }
    let hp = hstar(p, w)?;
    let hq = hstar(q, w)?;
    Ok(MonotonicityReport::new(lift_to(&hp, g), lift_to(&hq, g), mode))
}

/// Compares a half-open simplex `F` with an iterated pyramid `Δ` over it:
/// `(1+t^{δ(F)}+…)^{r+m+1} h*_F` against `(1+t^{δ(Δ)}+…)^{s+r+m+1} h*_Δ`.
pub fn check_pyramid(
    f: &HalfOpenSimplex,
    delta: &HalfOpenSimplex,
    w: &Weight,
    g: usize,
) -> Result<MonotonicityReport> {
    check_period(f.denominator(), g)?;
    check_period(delta.denominator(), g)?;
    let hf = hstar_simplex(f, w, f.denominator())?;
    let hd = hstar_simplex(delta, w, delta.denominator())?;
    Ok(MonotonicityReport::new(
        lift_to(&hf, g),
        lift_to(&hd, g),
        MonotoneMode::Coeffwise,
    ))
}
