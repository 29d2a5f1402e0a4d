//! Rational polytopes, placing triangulations and half-open decompositions.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{denominator_lcm, solve_rational, Rat, RatMatrix};
use crate::weight::LinForm;

const ANCHOR_BASES: [u32; 8] = [3, 5, 7, 11, 13, 17, 19, 23];

/// Convex hull of a finite, irredundant list of rational points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    ambient_dim: usize,
    vertices: Vec<Vec<Rat>>,
}

impl Polytope {
    /// Validates equal lengths and irredundancy; redundant input is an error.
    pub fn new(ambient_dim: usize, vertices: Vec<Vec<Rat>>) -> Result<Self> {
        check_lengths(ambient_dim, &vertices)?;
        if affine_rank(&vertices) < vertices.len() {
            for i in 0..vertices.len() {
                let others: Vec<Vec<Rat>> = vertices
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, v)| v.clone())
                    .collect();
                if HullMembership::new(&others).contains(&vertices[i]) {
                    return Err(Error::RedundantVertex { index: i });
                }
            }
        }
        Ok(Polytope {
            ambient_dim,
            vertices,
        })
    }

    pub fn from_i64(vertices: &[Vec<i64>]) -> Result<Self> {
        let d = vertices.first().map_or(0, Vec::len);
        Self::new(
            d,
            vertices
                .iter()
                .map(|v| v.iter().map(|&x| Rat::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Polytope {
            ambient_dim,
            vertices: Vec::new(),
        }
    }

    /// Convex hull of arbitrary points: duplicates and non-extreme points are dropped.
    pub fn convex_hull(ambient_dim: usize, points: &[Vec<Rat>]) -> Result<Self> {
        check_lengths(ambient_dim, points)?;
        let mut kept: Vec<Vec<Rat>> = Vec::new();
        for p in points {
            if !kept.contains(p) {
                kept.push(p.clone());
            }
        }
        let mut i = 0;
        while i < kept.len() {
            let others: Vec<Vec<Rat>> = kept
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.clone())
                .collect();
            if affine_rank(&kept) < kept.len() && HullMembership::new(&others).contains(&kept[i]) {
                kept.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(Polytope {
            ambient_dim,
            vertices: kept,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Intrinsic dimension; `-1` for the empty polytope.
    pub fn dim(&self) -> i64 {
        affine_rank(&self.vertices) as i64 - 1
    }

    /// Smallest positive `q` with `q·P` integral (1 for the empty polytope).
    pub fn denominator(&self) -> usize {
        denominator_of(&self.vertices)
    }

    /// Vertices `(u, 1)` of the homogenization.
    pub fn homogenized_vertices(&self) -> Vec<Vec<Rat>> {
        self.vertices.iter().map(|v| homogenize(v)).collect()
    }

    pub fn is_simplex(&self) -> bool {
        !self.vertices.is_empty() && affine_rank(&self.vertices) == self.vertices.len()
    }

    /// `k·P` for a nonnegative rational `k`.
    pub fn dilate(&self, k: &Rat) -> Polytope {
        if k.is_zero() && !self.is_empty() {
            return Polytope {
                ambient_dim: self.ambient_dim,
                vertices: vec![vec![Rat::zero(); self.ambient_dim]],
            };
        }
        Polytope {
            ambient_dim: self.ambient_dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|x| x * k).collect())
                .collect(),
        }
    }

    /// Whether `point` lies in `P`.
    pub fn contains(&self, point: &[Rat]) -> bool {
        HullMembership::new(&self.vertices).contains(point)
    }

    pub fn membership(&self) -> HullMembership {
        HullMembership::new(&self.vertices)
    }

    /// `P × {h}` in one more dimension.
    pub fn embed_at_height(&self, h: &Rat) -> Polytope {
        Polytope {
            ambient_dim: self.ambient_dim + 1,
            vertices: self
                .vertices
                .iter()
                .map(|v| {
                    let mut w = v.clone();
                    w.push(h.clone());
                    w
                })
                .collect(),
        }
    }
}

fn check_lengths(ambient_dim: usize, points: &[Vec<Rat>]) -> Result<()> {
    match points.iter().position(|v| v.len() != ambient_dim) {
        Some(index) => Err(Error::RaggedVertices {
            index,
            expected: ambient_dim,
            found: points[index].len(),
        }),
        None => Ok(()),
    }
}

pub(crate) fn denominator_of(points: &[Vec<Rat>]) -> usize {
    denominator_lcm(points.iter().flatten())
        .to_usize()
        .expect("denominator fits in usize")
}

pub(crate) fn homogenize(v: &[Rat]) -> Vec<Rat> {
    let mut h = v.to_vec();
    h.push(Rat::one());
    h
}

fn rank_of(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    RatMatrix::from_rows(rows).rank()
}

/// Dimension of the affine hull plus one (0 for no points).
pub fn affine_rank(points: &[Vec<Rat>]) -> usize {
    let h: Vec<Vec<Rat>> = points.iter().map(|p| homogenize(p)).collect();
    rank_of(&h)
}

/// Coordinates of `x` in terms of `rows` (`x = Σ β_i rows_i`), if `x` is in their span.
fn coordinates_in(rows: &[Vec<Rat>], x: &[Rat]) -> Option<Vec<Rat>> {
    let a = RatMatrix::from_rows(rows).transpose();
    solve_rational(&a, x)
}

/// Placing triangulation of the homogenized points, processed in the given
/// order. Cells are lists of indices into `points`.
fn placing(points: &[Vec<Rat>]) -> Vec<Vec<usize>> {
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for (idx, p) in points.iter().enumerate() {
        if cells.is_empty() {
            cells.push(vec![idx]);
            basis.push(p.clone());
            continue;
        }
        let mut extended = basis.clone();
        extended.push(p.clone());
        if rank_of(&extended) > basis.len() {
            basis = extended;
            for c in &mut cells {
                c.push(idx);
            }
            continue;
        }
        let mut facet_count: HashMap<Vec<usize>, usize> = HashMap::new();
        for c in &cells {
            for i in 0..c.len() {
                *facet_count.entry(without(c, i)).or_default() += 1;
            }
        }
        let mut fresh = Vec::new();
        for c in &cells {
            let rows: Vec<Vec<Rat>> = c.iter().map(|&k| points[k].clone()).collect();
            let beta = coordinates_in(&rows, p).expect("point lies in the current span");
            for (i, b) in beta.iter().enumerate() {
                if b.is_negative() {
                    let f = without(c, i);
                    if facet_count[&f] == 1 {
                        let mut cell = f;
                        cell.push(idx);
                        fresh.push(cell);
                    }
                }
            }
        }
        cells.extend(fresh);
    }
    cells
}

fn without(cell: &[usize], i: usize) -> Vec<usize> {
    let mut f: Vec<usize> = cell.to_vec();
    f.remove(i);
    f.sort_unstable();
    f
}

/// Cells of a triangulation, as sorted index lists into the vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub cells: Vec<Vec<usize>>,
}

/// Placing triangulation over the lexicographically sorted vertices.
pub fn triangulate(p: &Polytope) -> Result<Triangulation> {
    if p.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    Ok(Triangulation {
        cells: placing_sorted(&p.vertices),
    })
}

fn placing_sorted(points: &[Vec<Rat>]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]));
    let h: Vec<Vec<Rat>> = order.iter().map(|&i| homogenize(&points[i])).collect();
    let mut cells: Vec<Vec<usize>> = placing(&h)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|k| order[k]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    cells.sort();
    cells
}

/// Simplex with some facets removed. `strict` holds the indices `i` whose
/// opposite facet is missing, i.e. the barycentric coordinate `c_i` must be
/// positive rather than nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfOpenSimplex {
    vertices: Vec<Vec<Rat>>,
    strict: BTreeSet<usize>,
}

impl HalfOpenSimplex {
    pub fn new(vertices: Vec<Vec<Rat>>, strict: BTreeSet<usize>) -> Result<Self> {
        let d = vertices.first().map(Vec::len).ok_or(Error::EmptyPolytope)?;
        check_lengths(d, &vertices)?;
        if affine_rank(&vertices) != vertices.len() {
            return Err(Error::NotSimplex);
        }
        if let Some(&i) = strict.iter().find(|&&i| i >= vertices.len()) {
            return Err(Error::DimensionMismatch(format!(
                "strict index {i} for a simplex with {} vertices",
                vertices.len()
            )));
        }
        Ok(HalfOpenSimplex { vertices, strict })
    }

    pub fn closed(vertices: Vec<Vec<Rat>>) -> Result<Self> {
        Self::new(vertices, BTreeSet::new())
    }

    pub fn from_i64(vertices: &[Vec<i64>], strict: &[usize]) -> Result<Self> {
        Self::new(
            vertices
                .iter()
                .map(|v| v.iter().map(|&x| Rat::from_integer(x.into())).collect())
                .collect(),
            strict.iter().copied().collect(),
        )
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn strict(&self) -> &BTreeSet<usize> {
        &self.strict
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn denominator(&self) -> usize {
        denominator_of(&self.vertices)
    }

    pub fn is_closed(&self) -> bool {
        self.strict.is_empty()
    }

    pub fn is_open(&self) -> bool {
        self.strict.len() == self.vertices.len()
    }

    /// The closure as a polytope.
    pub fn closure(&self) -> Polytope {
        Polytope {
            ambient_dim: self.ambient_dim(),
            vertices: self.vertices.clone(),
        }
    }

    /// Barycentric coordinates of `point`, or `None` off the affine hull.
    pub fn barycentric(&self, point: &[Rat]) -> Option<Vec<Rat>> {
        let rows: Vec<Vec<Rat>> = self.vertices.iter().map(|v| homogenize(v)).collect();
        coordinates_in(&rows, &homogenize(point))
    }

    pub fn contains(&self, point: &[Rat]) -> bool {
        self.barycentric(point).is_some_and(|b| {
            b.iter().enumerate().all(|(i, c)| {
                if self.strict.contains(&i) {
                    c.is_positive()
                } else {
                    !c.is_negative()
                }
            })
        })
    }

    /// Iterated pyramid with closed apex facets; apexes are appended after
    /// the existing vertices and strictness of the base is kept.
    pub fn pyramid(&self, apexes: &[Vec<Rat>]) -> Result<HalfOpenSimplex> {
        let mut vertices = self.vertices.clone();
        for (index, a) in apexes.iter().enumerate() {
            if a.len() != self.ambient_dim() {
                return Err(Error::RaggedVertices {
                    index,
                    expected: self.ambient_dim(),
                    found: a.len(),
                });
            }
            vertices.push(a.clone());
            if affine_rank(&vertices) != vertices.len() {
                return Err(Error::AffinelyDependentApex { index });
            }
        }
        Ok(HalfOpenSimplex {
            vertices,
            strict: self.strict.clone(),
        })
    }
}

/// `conv(P ∪ apexes)`, requiring each apex to leave the affine hull so far.
pub fn pyramid(p: &Polytope, apexes: &[Vec<Rat>]) -> Result<Polytope> {
    let mut vertices = p.vertices.clone();
    for (index, a) in apexes.iter().enumerate() {
        if a.len() != p.ambient_dim {
            return Err(Error::RaggedVertices {
                index,
                expected: p.ambient_dim,
                found: a.len(),
            });
        }
        let before = affine_rank(&vertices);
        vertices.push(a.clone());
        if affine_rank(&vertices) != before + 1 {
            return Err(Error::AffinelyDependentApex { index });
        }
    }
    Ok(Polytope {
        ambient_dim: p.ambient_dim,
        vertices,
    })
}

/// Half-open version of each cell, relative to a deterministic generic
/// anchor in the relative interior of `P`. Facet `i` of a cell is removed iff
/// the anchor lies strictly beyond it (barycentric coordinate `c_i < 0`).
pub fn half_open_decomposition(p: &Polytope, t: &Triangulation) -> Result<Vec<HalfOpenSimplex>> {
    if p.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let cells: Vec<Vec<Vec<Rat>>> = t
        .cells
        .iter()
        .map(|c| c.iter().map(|&i| homogenize(&p.vertices[i])).collect())
        .collect();
    'bases: for base in ANCHOR_BASES {
        let anchor = anchor_point(&p.vertices, base);
        let mut out = Vec::with_capacity(cells.len());
        for (cell, idx) in cells.iter().zip(&t.cells) {
            let beta = coordinates_in(cell, &anchor).ok_or(Error::InconsistentSystem)?;
            if beta.iter().any(Zero::is_zero) {
                continue 'bases;
            }
            let strict = beta
                .iter()
                .enumerate()
                .filter(|(_, b)| b.is_negative())
                .map(|(i, _)| i)
                .collect();
            out.push(HalfOpenSimplex {
                vertices: idx.iter().map(|&i| p.vertices[i].clone()).collect(),
                strict,
            });
        }
        return Ok(out);
    }
    Err(Error::DegenerateAnchor {
        attempts: ANCHOR_BASES.len(),
    })
}

/// Homogenized `Σ b^i v_i / Σ b^i`.
fn anchor_point(vertices: &[Vec<Rat>], base: u32) -> Vec<Rat> {
    let d = vertices[0].len();
    let mut sum = vec![Rat::zero(); d + 1];
    let mut weight = BigInt::one();
    for v in vertices {
        let w = Rat::from_integer(weight.clone());
        for (s, x) in sum.iter_mut().zip(v) {
            *s += &w * x;
        }
        sum[d] += &w;
        weight *= base;
    }
    let total = sum[d].clone();
    sum.iter().map(|s| s / &total).collect()
}

/// Affine function on a simplex taking prescribed values at its vertices,
/// returned homogenized: `c·(u_i, 1) = values[i]`.
pub fn linear_form_from_vertex_values(s: &Polytope, values: &[Rat]) -> Result<LinForm> {
    if !s.is_simplex() {
        return Err(Error::NotSimplex);
    }
    if values.len() != s.vertices.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} values for {} vertices",
            values.len(),
            s.vertices.len()
        )));
    }
    let a = RatMatrix::from_rows(&s.homogenized_vertices());
    solve_rational(&a, values)
        .map(LinForm::new)
        .ok_or(Error::InconsistentSystem)
}

/// Point-in-hull test for a fixed point set, precomputed as one set of
/// barycentric functionals per cell of a placing triangulation plus the
/// equations of the affine hull.
#[derive(Debug, Clone)]
pub struct HullMembership {
    span_equations: Vec<Vec<Rat>>,
    cells: Vec<Vec<Vec<Rat>>>,
}

impl HullMembership {
    pub fn new(points: &[Vec<Rat>]) -> Self {
        if points.is_empty() {
            return HullMembership {
                span_equations: Vec::new(),
                cells: Vec::new(),
            };
        }
        let h: Vec<Vec<Rat>> = points.iter().map(|p| homogenize(p)).collect();
        let span_equations = RatMatrix::from_rows(&h).nullspace();
        let cells = placing_sorted(points)
            .into_iter()
            .map(|c| {
                let rows: Vec<Vec<Rat>> = c.iter().map(|&i| h[i].clone()).collect();
                cell_functionals(&rows)
            })
            .collect();
        HullMembership {
            span_equations,
            cells,
        }
    }

    /// Barycentric functionals per cell: row `i` maps a homogenized point to
    /// its `i`-th coordinate.
    pub fn functionals(&self) -> &[Vec<Vec<Rat>>] {
        &self.cells
    }

    pub fn span_equations(&self) -> &[Vec<Rat>] {
        &self.span_equations
    }

    pub fn contains(&self, point: &[Rat]) -> bool {
        self.contains_homogenized(&homogenize(point))
    }

    /// Membership of `x` in the cone over the hull, for `x = (y, n)`.
    pub fn contains_homogenized(&self, x: &[Rat]) -> bool {
        if self.cells.is_empty() {
            return false;
        }
        let dot = |f: &[Rat]| f.iter().zip(x).fold(Rat::zero(), |acc, (a, b)| acc + a * b);
        self.span_equations.iter().all(|e| dot(e).is_zero())
            && self
                .cells
                .iter()
                .any(|c| c.iter().all(|f| !dot(f).is_negative()))
    }
}

/// For linearly independent rows `C`, functionals `f_i` with `f_i(x) = β_i`
/// whenever `x = Σ β_i C_i`.
fn cell_functionals(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let c = RatMatrix::from_rows(rows);
    let (_, pivots) = c.rref();
    let k = rows.len();
    let mut square = RatMatrix::zeros(k, k);
    for r in 0..k {
        for (j, &p) in pivots.iter().enumerate() {
            square[(r, j)] = c[(r, p)].clone();
        }
    }
    let inv = square.inverse().expect("cell rows are independent");
    (0..k)
        .map(|i| {
            let mut f = vec![Rat::zero(); c.cols()];
            for (j, &p) in pivots.iter().enumerate() {
                f[p] = inv[(j, i)].clone();
            }
            f
        })
        .collect()
}
