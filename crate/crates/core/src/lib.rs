//! Exact weighted Ehrhart series of rational polytopes.
//!
//! A weight is a sum of products of linear forms on the homogenized space;
//! the library computes the numerator of the weighted Ehrhart series over
//! `(1 - t^q)^{r+m+1}` through half-open triangulations and fundamental
//! parallelepipeds, with an independent brute-force oracle for checking.

pub mod analysis;
pub mod error;
pub mod eulerian;
pub mod geometry;
pub mod linalg;
pub mod oracle;
pub mod parallelepiped;
pub mod poly;
pub mod series;
pub mod weight;

pub use error::{Error, Result};
pub use eulerian::{eulerian_poly, EulerianTable};
pub use geometry::{
    half_open_decomposition, linear_form_from_vertex_values, pyramid, triangulate, HalfOpenSimplex,
    Polytope, Triangulation,
};
pub use linalg::{Rat, IntMatrix, RatMatrix};
pub use parallelepiped::{cone_generators, enumerate_points, ConeGenerators, ParallelepipedPoint};
pub use poly::Poly;
pub use series::{
    hstar, hstar_ell_squared, hstar_poly, hstar_simplex, hstar_term_direct, hstar_term_halfopen,
    ratfun_combine, series_expand, HStarResult,
};
pub use weight::{homogenize_weight, Certificate, LinForm, Weight, WeightPoly, WeightTerm};
