//! Weights: sums of scalar multiples of products of linear forms on the
//! homogenized space `R^{d+1}` (coordinates `x_1..x_d` plus the height `n`).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rat;

/// Linear form `c_1 x_1 + … + c_d x_d + c_{d+1} n` on `R^{d+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinForm {
    coeffs: Vec<Rat>,
}

impl LinForm {
    /// Coefficients on the homogenized coordinates; the last entry is the
    /// height coefficient.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a linear form needs at least the height coordinate");
        LinForm { coeffs }
    }

    /// Lifts a form in `x_1..x_d` to `R^{d+1}` with zero height coefficient.
    pub fn linear(coeffs: &[Rat]) -> Self {
        let mut c = coeffs.to_vec();
        c.push(Rat::zero());
        LinForm { coeffs: c }
    }

    /// Homogenizes the affine function `a·x + b` to `a·x + b·n`.
    pub fn affine(linear: &[Rat], constant: Rat) -> Self {
        let mut c = linear.to_vec();
        c.push(constant);
        LinForm { coeffs: c }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn zero(d: usize) -> Self {
        LinForm { coeffs: vec![Rat::zero(); d + 1] }
    }

    /// The coordinate form `x_{k+1}` (0-based `k < d`), or the height for `k = d`.
    pub fn coordinate(d: usize, k: usize) -> Self {
        assert!(k <= d);
        let mut f = Self::zero(d);
        f.coeffs[k] = Rat::one();
        f
    }

    pub fn ambient_dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// The `x` part, dropping the height coefficient.
    pub fn linear_part(&self) -> &[Rat] {
        &self.coeffs[..self.coeffs.len() - 1]
    }

    pub fn height_coeff(&self) -> &Rat {
        self.coeffs.last().expect("nonempty")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Value at a homogenized point `(x, n)`.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.coeffs.len(), "dimension mismatch");
        self.coeffs
            .iter()
            .zip(point)
            .fold(Rat::zero(), |acc, (c, x)| acc + c * x)
    }

    pub fn eval_int(&self, point: &[BigInt]) -> Rat {
        assert_eq!(point.len(), self.coeffs.len(), "dimension mismatch");
        self.coeffs
            .iter()
            .zip(point)
            .fold(Rat::zero(), |acc, (c, x)| acc + c * x)
    }

    /// Value at `(u, 1)` for a point `u ∈ Q^d`.
    pub fn eval_affine(&self, u: &[Rat]) -> Rat {
        assert_eq!(u.len() + 1, self.coeffs.len(), "dimension mismatch");
        self.linear_part()
            .iter()
            .zip(u)
            .fold(self.height_coeff().clone(), |acc, (c, x)| acc + c * x)
    }

    pub fn scale(&self, s: &Rat) -> LinForm {
        LinForm {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &LinForm) -> LinForm {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        LinForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Debug for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinForm(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Claimed membership of a term in one of the certified weight classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum Certificate {
    #[default]
    None,
    /// Every factor is nonnegative on the cone over the polytope.
    Rp,
    /// Listed index pairs are identical factors (a square); every factor not
    /// covered by a pair is nonnegative on the cone.
    Sp { pairs: Vec<(usize, usize)> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightTerm {
    pub scalar: Rat,
    pub factors: Vec<LinForm>,
    pub certificate: Certificate,
}

impl WeightTerm {
    pub fn new(scalar: Rat, factors: Vec<LinForm>) -> Self {
        WeightTerm {
            scalar,
            factors,
            certificate: Certificate::None,
        }
    }

    pub fn with_certificate(mut self, certificate: Certificate) -> Self {
        self.certificate = certificate;
        self
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.factors
            .iter()
            .fold(self.scalar.clone(), |acc, f| acc * f.eval(point))
    }
}

/// Homogeneous weight of degree `m`: every term is a product of exactly `m`
/// linear forms on `R^{d+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    ambient_dim: usize,
    degree: usize,
    terms: Vec<WeightTerm>,
}

impl Weight {
    pub fn new(ambient_dim: usize, terms: Vec<WeightTerm>) -> Result<Self> {
        let degree = terms.first().map_or(0, WeightTerm::degree);
        for t in &terms {
            if t.degree() != degree {
                return Err(Error::MixedDegrees(degree, t.degree()));
            }
            if let Some(f) = t.factors.iter().find(|f| f.ambient_dim() != ambient_dim) {
                return Err(Error::DimensionMismatch(format!(
                    "linear form on R^{} in a weight on R^{}",
                    f.ambient_dim() + 1,
                    ambient_dim + 1
                )));
            }
        }
        Ok(Weight {
            ambient_dim,
            degree,
            terms,
        })
    }

    /// The zero weight of a given degree.
    pub fn zero(ambient_dim: usize, degree: usize) -> Self {
        Weight {
            ambient_dim,
            degree,
            terms: Vec::new(),
        }
    }

    /// The constant weight `c` (classical Ehrhart theory for `c = 1`).
    pub fn constant(ambient_dim: usize, c: Rat) -> Self {
        Weight {
            ambient_dim,
            degree: 0,
            terms: vec![WeightTerm::new(c, Vec::new())],
        }
    }

    pub fn product(factors: Vec<LinForm>) -> Result<Self> {
        let d = factors.first().map(LinForm::ambient_dim).ok_or_else(|| {
            Error::DimensionMismatch("a product weight needs at least one factor".into())
        })?;
        Self::new(d, vec![WeightTerm::new(Rat::one(), factors)])
    }

    /// `ℓ²`, with an SP certificate pairing the two copies.
    pub fn square(form: &LinForm) -> Self {
        let term = WeightTerm::new(Rat::one(), vec![form.clone(), form.clone()])
            .with_certificate(Certificate::Sp { pairs: vec![(0, 1)] });
        Weight {
            ambient_dim: form.ambient_dim(),
            degree: 2,
            terms: vec![term],
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[WeightTerm] {
        &self.terms
    }

    pub fn scale(&self, c: &Rat) -> Weight {
        Weight {
            terms: self
                .terms
                .iter()
                .map(|t| WeightTerm {
                    scalar: &t.scalar * c,
                    ..t.clone()
                })
                .collect(),
            ..self.clone()
        }
    }

    /// Sum of two weights of the same degree.
    pub fn plus(&self, other: &Weight) -> Result<Weight> {
        if self.degree != other.degree && !self.terms.is_empty() && !other.terms.is_empty() {
            return Err(Error::MixedDegrees(self.degree, other.degree));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Weight::new(self.ambient_dim, terms).map(|mut w| {
            w.degree = self.degree.max(other.degree);
            w
        })
    }

    /// Value at a homogenized point `(x, n)`.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.terms.iter().map(|t| t.eval(point)).sum()
    }
}

/// Polynomial weight of possibly mixed degree, kept as a sum of products of
/// linear forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightPoly {
    pub ambient_dim: usize,
    pub terms: Vec<WeightTerm>,
}

impl WeightPoly {
    pub fn new(ambient_dim: usize, terms: Vec<WeightTerm>) -> Self {
        WeightPoly { ambient_dim, terms }
    }

    /// Builds a weight from monomials `(coefficient, exponents)` where
    /// `exponents` has length `d` or `d + 1` (the last entry then being the
    /// exponent of the height variable).
    pub fn from_monomials(ambient_dim: usize, monomials: &[(Rat, Vec<usize>)]) -> Self {
        let terms = monomials
            .iter()
            .map(|(c, exps)| {
                assert!(exps.len() == ambient_dim || exps.len() == ambient_dim + 1);
                let factors = exps
                    .iter()
                    .enumerate()
                    .flat_map(|(k, &e)| std::iter::repeat(LinForm::coordinate(ambient_dim, k)).take(e))
                    .collect();
                WeightTerm::new(c.clone(), factors)
            })
            .collect();
        WeightPoly { ambient_dim, terms }
    }

    pub fn max_degree(&self) -> usize {
        self.terms.iter().map(WeightTerm::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.terms.iter().map(|t| t.eval(point)).sum()
    }
}

impl From<Weight> for WeightPoly {
    fn from(w: Weight) -> Self {
        WeightPoly {
            ambient_dim: w.ambient_dim,
            terms: w.terms,
        }
    }
}

/// Splits a polynomial weight into its homogeneous parts, highest degree
/// first. Each part is a [`Weight`] whose terms keep their product structure.
pub fn homogenize_weight(p: &WeightPoly) -> Vec<(usize, Weight)> {
    let mut degrees: Vec<usize> = p.terms.iter().map(WeightTerm::degree).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    degrees.dedup();
    degrees
        .into_iter()
        .map(|m| {
            let terms = p
                .terms
                .iter()
                .filter(|t| t.degree() == m)
                .cloned()
                .collect();
            let mut w = Weight::new(p.ambient_dim, terms).expect("terms share a degree");
            w.degree = m;
            (m, w)
        })
        .collect()
}
