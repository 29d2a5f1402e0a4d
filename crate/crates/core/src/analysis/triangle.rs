//! Sign conditions under which a half-open lattice triangle can carry a
//! negative h*-coefficient for a squared linear weight.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::geometry::HalfOpenSimplex;
use crate::linalg::Rat;
use crate::weight::LinForm;

/// `(i, ii)` where (i) says the triangle is neither closed nor open, and
/// (ii) says `ker ℓ` crosses the relative interiors of two sides that are
/// both open or both closed. The side opposite vertex `k` is open iff `k` is
/// strict.
pub fn triangle_conditions(h: &HalfOpenSimplex, form: &LinForm) -> Result<(bool, bool)> {
    if h.ambient_dim() != 2 || h.vertices().len() != 3 {
        return Err(Error::NotTriangle);
    }
    if form.ambient_dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "linear form on R^{} for a triangle in the plane",
            form.ambient_dim() + 1
        )));
    }
    let cond_i = !h.is_closed() && !h.is_open();
    let values: Vec<Rat> = h.vertices().iter().map(|u| form.eval_affine(u)).collect();
    let crossed: Vec<usize> = (0..3)
        .filter(|&k| {
            let (a, b) = ((k + 1) % 3, (k + 2) % 3);
            (values[a].is_positive() && values[b].is_negative())
                || (values[a].is_negative() && values[b].is_positive())
        })
        .collect();
    let cond_ii = crossed.len() == 2
        && h.strict().contains(&crossed[0]) == h.strict().contains(&crossed[1]);
    Ok((cond_i, cond_ii))
}
