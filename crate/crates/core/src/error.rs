use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {index} has {found} coordinates, expected {expected}")]
    RaggedVertices {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("vertex {index} is a convex combination of the other vertices")]
    RedundantVertex { index: usize },
    #[error("operation requires a nonempty polytope")]
    EmptyPolytope,
    #[error("no generic anchor point found after {attempts} attempts")]
    DegenerateAnchor { attempts: usize },
    #[error("apex {index} lies in the affine hull of the polytope built so far")]
    AffinelyDependentApex { index: usize },
    #[error("linear system is inconsistent or rank deficient")]
    InconsistentSystem,
    #[error("lambda = {0} is outside [0, 1]")]
    LambdaOutOfRange(String),
    #[error("height {g} does not clear the denominators of the simplex (denominator {denominator})")]
    DenominatorNotCleared { g: usize, denominator: usize },
    #[error("polynomial division leaves a nonzero remainder")]
    InexactDivision,
    #[error("period {period} does not divide target period {target}")]
    IndivisiblePeriod { period: usize, target: usize },
    #[error("exponent {exponent} exceeds target exponent {target}")]
    ExponentTooLarge { exponent: usize, target: usize },
    #[error("polytope P is not contained in Q (vertex {index} of P lies outside)")]
    NotContained { index: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("weight terms have mixed degrees {0} and {1}")]
    MixedDegrees(usize, usize),
    #[error("polytope is not a lattice polytope (denominator {0})")]
    NotLattice(usize),
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("expected a triangle in the plane")]
    NotTriangle,
    #[error("vertices are not affinely independent")]
    NotSimplex,
    #[error("bounding-box scan of {0} candidate points exceeds the limit")]
    ScanTooLarge(u128),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
