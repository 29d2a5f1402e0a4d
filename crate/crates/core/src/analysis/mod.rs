//! Decision procedures: coefficient and ray nonnegativity, weight classes,
//! monotonicity, triangle sign conditions and the rank-two tensor layer.

mod monotone;
mod psd;
mod ray;
mod tensor;
mod triangle;

use std::collections::HashMap;

use num_traits::Signed;

pub use monotone::{check_monotonicity, check_pyramid, MonotoneFailure, MonotoneMode, MonotonicityReport};
pub use psd::{is_psd, PsdWitness, SymMatrix};
pub use ray::{check_nonneg_coeffs, nonneg_on_ray, square_free_factors, RayWitness};
pub use tensor::{h2_tensor, TensorHPoly};
pub use triangle::triangle_conditions;

use crate::geometry::Polytope;
use crate::weight::{Certificate, LinForm, Weight, WeightTerm};

/// Outcome of a decision procedure: pass, or fail with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check<W> {
    Pass,
    Fail(W),
}

impl<W> Check<W> {
    pub fn is_pass(&self) -> bool {
        matches!(self, Check::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Check::Pass => None,
            Check::Fail(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Check<V> {
        match self {
            Check::Pass => Check::Pass,
            Check::Fail(w) => Check::Fail(f(w)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightClass {
    /// Sum with nonnegative scalars of products of forms nonnegative on the cone.
    Rp,
    /// As `Rp`, but sign-changing factors may appear as identical squares.
    Sp,
    Uncertified,
}

/// Whether `ℓ` is nonnegative on the cone over `P`, i.e. at every `(u, 1)`.
pub fn nonneg_on_cone(p: &Polytope, form: &LinForm) -> bool {
    p.vertices().iter().all(|u| !form.eval_affine(u).is_negative())
}

fn term_class(p: &Polytope, term: &WeightTerm) -> WeightClass {
    if term.scalar.is_negative() {
        return WeightClass::Uncertified;
    }
    let mut unpaired: HashMap<&LinForm, usize> = HashMap::new();
    for f in &term.factors {
        if !nonneg_on_cone(p, f) {
            *unpaired.entry(f).or_default() += 1;
        }
    }
    if unpaired.is_empty() {
        WeightClass::Rp
    } else if unpaired.values().all(|c| c % 2 == 0) {
        WeightClass::Sp
    } else {
        WeightClass::Uncertified
    }
}

/// Certifies membership by inspecting the product structure: factors that are
/// not nonnegative on `C(P)` must occur with even multiplicity.
pub fn classify_weight(p: &Polytope, w: &Weight) -> WeightClass {
    let mut class = WeightClass::Rp;
    for term in w.terms() {
        match term_class(p, term) {
            WeightClass::Uncertified => return WeightClass::Uncertified,
            WeightClass::Sp => class = WeightClass::Sp,
            WeightClass::Rp => {}
        }
    }
    class
}

/// Checks a certificate attached to a term.
pub fn verify_certificate(p: &Polytope, term: &WeightTerm) -> bool {
    let nonneg_scalar = !term.scalar.is_negative();
    match &term.certificate {
        Certificate::None => false,
        Certificate::Rp => nonneg_scalar && term.factors.iter().all(|f| nonneg_on_cone(p, f)),
        Certificate::Sp { pairs } => {
            let mut used = vec![false; term.factors.len()];
            for &(a, b) in pairs {
                if a == b
                    || a >= used.len()
                    || b >= used.len()
                    || used[a]
                    || used[b]
                    || term.factors[a] != term.factors[b]
                {
                    return false;
                }
                used[a] = true;
                used[b] = true;
            }
            nonneg_scalar
                && term
                    .factors
                    .iter()
                    .zip(&used)
                    .all(|(f, &u)| u || nonneg_on_cone(p, f))
        }
    }
}
