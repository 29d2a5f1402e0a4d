//! Lattice points of half-open fundamental parallelepipeds.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::HalfOpenSimplex;
use crate::linalg::{saturation_basis, smith_normal_form, solve_rational, IntMatrix, Rat};

/// Integer generators `w_j = (g·u_j, g)` of the cone over a half-open simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeGenerators {
    pub generators: Vec<Vec<BigInt>>,
    pub g: usize,
    pub strict: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelepipedPoint {
    pub point: Vec<BigInt>,
    pub lambdas: Vec<Rat>,
    pub height: usize,
}

/// Parallelepiped points in scaled form: point `i` has
/// `λ_j = coords[i·k + j] / scale`.
#[derive(Debug, Clone)]
pub(crate) struct ScaledPoints {
    pub scale: i64,
    pub k: usize,
    pub coords: Vec<i64>,
    pub heights: Vec<usize>,
}

impl ScaledPoints {
    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i64], usize)> {
        self.coords.chunks(self.k.max(1)).zip(self.heights.iter().copied())
    }

    pub fn max_height(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }
}

/// Parallelepipeds with more points than this are rejected.
pub const MAX_POINTS: i64 = 1 << 40;

pub fn cone_generators(h: &HalfOpenSimplex, g: usize) -> Result<ConeGenerators> {
    let denominator = h.denominator();
    if g == 0 || g % denominator != 0 {
        return Err(Error::DenominatorNotCleared { g, denominator });
    }
    let gr = Rat::from_integer(g.into());
    let generators = h
        .vertices()
        .iter()
        .map(|u| {
            let mut w: Vec<BigInt> = u.iter().map(|x| (x * &gr).to_integer()).collect();
            w.push(g.into());
            w
        })
        .collect();
    Ok(ConeGenerators {
        generators,
        g,
        strict: h.strict().clone(),
    })
}

/// The integer points `Σ λ_j w_j` with `λ_j ∈ [0, 1)` (or `(0, 1]` for strict
/// `j`), sorted by height and then lexicographically.
pub fn enumerate_points(cone: &ConeGenerators) -> Result<Vec<ParallelepipedPoint>> {
    let scaled = enumerate_scaled(cone)?;
    let scale_int = BigInt::from(scaled.scale);
    let scale = Rat::from_integer(scale_int.clone());
    let mut out: Vec<ParallelepipedPoint> = scaled
        .iter()
        .map(|(a, height)| {
            let a: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
            let point = combine(&cone.generators, &a, &scale_int);
            let lambdas = a.into_iter().map(|x| Rat::from_integer(x) / &scale).collect();
            ParallelepipedPoint {
                point,
                lambdas,
                height,
            }
        })
        .collect();
    out.sort_by(|p, q| (p.height, &p.point).cmp(&(q.height, &q.point)));
    Ok(out)
}

fn combine(generators: &[Vec<BigInt>], a: &[BigInt], scale: &BigInt) -> Vec<BigInt> {
    let n = generators[0].len();
    (0..n)
        .map(|c| {
            let s: BigInt = generators.iter().zip(a).map(|(w, ai)| &w[c] * ai).sum();
            let (q, r) = s.div_rem(scale);
            debug_assert!(r.is_zero(), "parallelepiped point is integral");
            q
        })
        .collect()
}

/// Number of parallelepiped points: the index of the generated lattice in
/// the saturation of its span.
pub fn parallelepiped_size(cone: &ConeGenerators) -> BigInt {
    coordinate_matrix(&cone.generators).0.det().abs()
}

/// Generators written in a saturation basis `B`: returns `(M, B)` with
/// `w_i = Σ_k M[i][k] b_k`.
fn coordinate_matrix(generators: &[Vec<BigInt>]) -> (IntMatrix, Vec<Vec<BigInt>>) {
    let basis = saturation_basis(generators);
    assert_eq!(basis.len(), generators.len(), "cone generators are linearly independent");
    let bt = IntMatrix::from_rows(&basis).to_rational().transpose();
    let rows: Vec<Vec<BigInt>> = generators
        .iter()
        .map(|w| {
            let rhs: Vec<Rat> = w.iter().cloned().map(Rat::from_integer).collect();
            solve_rational(&bt, &rhs)
                .expect("generator lies in its own span")
                .into_iter()
                .map(|x| {
                    debug_assert!(x.is_integer());
                    x.to_integer()
                })
                .collect()
        })
        .collect();
    (IntMatrix::from_rows(&rows), basis)
}

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow("parallelepiped coordinates"))
}

/// Enumerates `Z^k / (row lattice of M)` through the Smith form `UMV = D`:
/// `y` runs over the box `Π [0, d_i)` and `λ·det = y·V⁻¹·adj(M) mod det`.
/// The box is walked as an odometer, so each step adds one integer row.
pub(crate) fn enumerate_scaled(cone: &ConeGenerators) -> Result<ScaledPoints> {
    let k = cone.generators.len();
    let (m, _basis) = coordinate_matrix(&cone.generators);
    let det_big = m.det().abs();
    let det = small(&det_big)?;
    if det > MAX_POINTS {
        return Err(Error::Overflow("parallelepiped has too many points"));
    }
    let det_rat = Rat::from_integer(det_big.clone());
    let adj = m
        .to_rational()
        .inverse()
        .expect("nonsingular")
        .to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(|x| (x * &det_rat).to_integer()).collect())
        .collect::<Vec<Vec<BigInt>>>();
    let (d, _u, v) = smith_normal_form(&m);
    let v_inv = v.to_rational().inverse().expect("unimodular");
    let moduli: Vec<i64> = (0..k).map(|i| small(&d[(i, i)])).collect::<Result<_>>()?;

    // step[i] = (row i of V⁻¹·adj) mod det; wrap[i] undoes d_i - 1 steps.
    let mut step = vec![vec![0i64; k]; k];
    let mut wrap = vec![vec![0i64; k]; k];
    for i in 0..k {
        for c in 0..k {
            let x: BigInt = (0..k)
                .map(|r| v_inv[(i, r)].to_integer() * &adj[r][c])
                .sum::<BigInt>()
                .mod_floor(&det_big);
            step[i][c] = small(&x)?;
            let back = (BigInt::from(moduli[i] - 1) * &x).mod_floor(&det_big);
            wrap[i][c] = small(&(-back).mod_floor(&det_big))?;
        }
    }

    let count = usize::try_from(det).map_err(|_| Error::Overflow("parallelepiped size"))?;
    let mut coords = Vec::with_capacity(count * k);
    let mut heights = Vec::with_capacity(count);
    let g = cone.g as i128;
    let mut raw = vec![0i64; k];
    let mut y = vec![0i64; k];
    loop {
        let mut sum: i128 = 0;
        for (c, &x) in raw.iter().enumerate() {
            let x = if x == 0 && cone.strict.contains(&c) { det } else { x };
            coords.push(x);
            sum += x as i128;
        }
        let height = (g * sum).div_euclid(det as i128);
        heights.push(usize::try_from(height).map_err(|_| Error::Overflow("parallelepiped height"))?);

        let mut i = 0;
        loop {
            if i == k {
                return Ok(ScaledPoints {
                    scale: det,
                    k,
                    coords,
                    heights,
                });
            }
            y[i] += 1;
            let row = if y[i] < moduli[i] { &step[i] } else { &wrap[i] };
            for (r, s) in raw.iter_mut().zip(row) {
                *r += s;
                if *r >= det {
                    *r -= det;
                }
            }
            if y[i] < moduli[i] {
                break;
            }
            y[i] = 0;
            i += 1;
        }
    }
}
