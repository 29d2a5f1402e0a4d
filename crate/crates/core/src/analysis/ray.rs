//! Coefficientwise and pointwise nonnegativity of polynomials on `[0, ∞)`.

use num_traits::{One, Signed, Zero};

use super::Check;
use crate::linalg::Rat;
use crate::poly::Poly;

/// Smallest exponent with a negative coefficient, if any.
pub fn check_nonneg_coeffs(p: &Poly) -> Check<usize> {
    match p.coeffs().iter().position(Signed::is_negative) {
        Some(k) => Check::Fail(k),
        None => Check::Pass,
    }
}

/// A point of `(0, ∞)` or `0` where the polynomial is negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayWitness {
    pub t: Rat,
    pub value: Rat,
    /// Open interval isolating a root of odd multiplicity in `(0, ∞)`, when
    /// the failure comes from a sign change.
    pub root_interval: Option<(Rat, Rat)>,
}

/// Square-free decomposition `p = c · a_1 a_2² a_3³ ⋯` (Yun); returns the
/// monic factors `a_1, a_2, …`.
pub fn square_free_factors(p: &Poly) -> Vec<Poly> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = p.monic();
    let df = f.derivative();
    let b = f.gcd(&df);
    let mut c = f.exact_div(&b).expect("gcd divides");
    let mut d = df.exact_div(&b).expect("gcd divides") - c.derivative();
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d);
        c = c.exact_div(&a).expect("gcd divides");
        d = d.exact_div(&a).expect("gcd divides") - c.derivative();
        out.push(a);
    }
    out
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let r = chain[n - 2].div_rem(&chain[n - 1]).1;
        chain.push(-r);
    }
}

fn sign_changes(values: impl Iterator<Item = Rat>) -> usize {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for v in values {
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            changes += 1;
        }
        last = Some(pos);
    }
    changes
}

fn changes_at(chain: &[Poly], t: &Rat) -> usize {
    sign_changes(chain.iter().map(|p| p.eval(t)))
}

fn changes_at_infinity(chain: &[Poly]) -> usize {
    sign_changes(chain.iter().map(Poly::leading))
}

/// Distinct roots of a square-free polynomial in `(lo, hi)`, assuming it
/// does not vanish at either endpoint.
fn count_between(chain: &[Poly], lo: &Rat, hi: &Rat) -> usize {
    changes_at(chain, lo) - changes_at(chain, hi)
}

/// `1 + max |a_i / a_n|`: every root has smaller absolute value.
fn cauchy_bound(p: &Poly) -> Rat {
    let lead = p.leading().abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rat::zero);
    Rat::one() + max
}

/// Splits `(lo, hi)` into open intervals each holding one root of the
/// square-free `sf`, with `sf` nonzero at every endpoint.
fn isolate(sf: &Poly, chain: &[Poly], lo: Rat, hi: Rat, out: &mut Vec<(Rat, Rat)>) {
    match count_between(chain, &lo, &hi) {
        0 => {}
        1 => out.push((lo, hi)),
        _ => {
            let width = &hi - &lo;
            let mid = (1..)
                .map(|j: i64| &lo + &width * Rat::new(j.into(), (j + 1).into()))
                .find(|m| !sf.eval(m).is_zero())
                .expect("finitely many roots");
            isolate(sf, chain, lo, mid.clone(), out);
            isolate(sf, chain, mid, hi, out);
        }
    }
}

/// Decides `p(t) ≥ 0` for all `t ≥ 0` exactly. Roots of even multiplicity
/// are discarded through the square-free decomposition; the product of the
/// odd-multiplicity factors is then checked for roots in `(0, ∞)` with a
/// Sturm sequence.
pub fn nonneg_on_ray(p: &Poly) -> Check<RayWitness> {
    if check_nonneg_coeffs(p).is_pass() {
        return Check::Pass;
    }
    let at_zero = p.coeff(0);
    if at_zero.is_negative() {
        return Check::Fail(RayWitness {
            t: Rat::zero(),
            value: at_zero,
            root_interval: None,
        });
    }
    let (_, cofactor) = p.split_zero_root();
    if p.leading().is_negative() {
        let t = cauchy_bound(&cofactor);
        return Check::Fail(RayWitness {
            value: p.eval(&t),
            t,
            root_interval: None,
        });
    }
    if cofactor.coeff(0).is_negative() {
        // p ~ c·t^k near 0 with c < 0; go below the smallest positive root.
        let reversed = Poly::new(cofactor.coeffs().iter().rev().cloned().collect());
        let t = (Rat::from_integer(2.into()) * cauchy_bound(&reversed)).recip();
        return Check::Fail(RayWitness {
            value: p.eval(&t),
            t,
            root_interval: None,
        });
    }
    let factors = square_free_factors(&cofactor);
    let odd = factors
        .iter()
        .step_by(2)
        .fold(Poly::one(), |acc, f| acc * f);
    let odd = odd.split_zero_root().1;
    if odd.degree().unwrap_or(0) == 0 {
        return Check::Pass;
    }
    let odd_chain = sturm_chain(&odd);
    let odd_roots = changes_at(&odd_chain, &Rat::zero()) - changes_at_infinity(&odd_chain);
    if odd_roots == 0 {
        return Check::Pass;
    }

    // A sign change exists. Isolate all distinct roots of p in (0, ∞); the
    // interval endpoints then separate consecutive roots and p is negative
    // at one of them.
    let sf = factors.iter().fold(Poly::one(), |acc, f| acc * f).split_zero_root().1;
    let sf_chain = sturm_chain(&sf);
    let mut intervals = Vec::new();
    isolate(&sf, &sf_chain, Rat::zero(), cauchy_bound(&sf), &mut intervals);
    let root_interval = intervals
        .iter()
        .find(|(lo, hi)| count_between(&odd_chain, lo, hi) == 1)
        .cloned();
    let witness = intervals
        .iter()
        .flat_map(|(lo, hi)| [lo.clone(), hi.clone()])
        .map(|t| (p.eval(&t), t))
        .find(|(v, _)| v.is_negative())
        .expect("a sign change leaves a negative value between roots");
    Check::Fail(RayWitness {
        t: witness.1,
        value: witness.0,
        root_interval,
    })
}
