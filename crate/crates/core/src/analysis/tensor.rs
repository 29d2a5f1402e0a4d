//! Matrix-valued h*-coefficients of the second discrete moment tensor.

use num_traits::Zero;

use super::psd::SymMatrix;
use crate::error::{Error, Result};
use crate::geometry::{half_open_decomposition, triangulate, Polytope};
use crate::linalg::Rat;
use crate::poly::Poly;
use crate::series::hstar_term_halfopen;
use crate::weight::{LinForm, WeightTerm};

/// Coefficients `h_0, …, h_{d+2}` such that `Σ_i (vᵀ h_i v) t^i` is the
/// h*-polynomial of `P` for the weight `(vᵀx)²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorHPoly {
    pub coeffs: Vec<SymMatrix>,
}

impl TensorHPoly {
    /// `Σ_i (vᵀ h_i v) t^i`.
    pub fn evaluate(&self, v: &[Rat]) -> Poly {
        Poly::new(self.coeffs.iter().map(|h| h.quadratic_form(v)).collect())
    }
}

/// Entry `(a, b)` of `h_i` is `[t^i] h*_{P, x_a x_b}`, for a full-dimensional
/// lattice polytope `P`.
pub fn h2_tensor(p: &Polytope) -> Result<TensorHPoly> {
    let q = p.denominator();
    if q != 1 {
        return Err(Error::NotLattice(q));
    }
    let d = p.ambient_dim();
    if p.dim() != d as i64 {
        return Err(Error::NotFullDimensional);
    }
    let cells = half_open_decomposition(p, &triangulate(p)?)?;
    let mut coeffs = vec![SymMatrix::zeros(d); d + 3];
    for a in 0..d {
        for b in a..d {
            let term = WeightTerm::new(
                Rat::from_integer(1.into()),
                vec![LinForm::coordinate(d, a), LinForm::coordinate(d, b)],
            );
            let mut h = Poly::zero();
            for cell in &cells {
                h = h + hstar_term_halfopen(cell, &term, 1)?;
            }
            for (i, c) in h.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    coeffs[i].set(a, b, c.clone());
                }
            }
        }
    }
    Ok(TensorHPoly { coeffs })
}
