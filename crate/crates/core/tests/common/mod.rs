//! Seeded instance generators shared by the integration suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wehrhart::linalg::{int, rat};
use wehrhart::oracle::lattice_points;
use wehrhart::{HalfOpenSimplex, LinForm, Polytope, Rat, Weight, WeightTerm};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational in `[lo, hi]` with denominator dividing some value `≤ max_den`.
pub fn rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64, max_den: i64) -> Rat {
    let den = rng.gen_range(1..=max_den);
    rat(rng.gen_range(lo * den..=hi * den), den)
}

pub fn point(rng: &mut ChaCha8Rng, d: usize, lo: i64, hi: i64, max_den: i64) -> Vec<Rat> {
    (0..d).map(|_| rational(rng, lo, hi, max_den)).collect()
}

pub fn lattice_point(rng: &mut ChaCha8Rng, d: usize, lo: i64, hi: i64) -> Vec<Rat> {
    (0..d).map(|_| int(rng.gen_range(lo..=hi))).collect()
}

/// Hull of `1..=d+2` random rational points in `[-3, 3]^d`, `d ≤ 3`.
pub fn rational_polytope(rng: &mut ChaCha8Rng) -> Polytope {
    let d = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=d + 2);
    let pts: Vec<Vec<Rat>> = (0..k).map(|_| point(rng, d, -3, 3, 3)).collect();
    Polytope::convex_hull(d, &pts).expect("well-formed points")
}

/// Full-dimensional hull of at most 10 points of `[-5, 5]^2 ∩ Z^2`.
pub fn lattice_polygon(rng: &mut ChaCha8Rng) -> Polytope {
    loop {
        let k = rng.gen_range(3..=10);
        let pts: Vec<Vec<Rat>> = (0..k).map(|_| lattice_point(rng, 2, -5, 5)).collect();
        let p = Polytope::convex_hull(2, &pts).expect("well-formed points");
        if p.dim() == 2 {
            return p;
        }
    }
}

/// Form on `R^{d+1}` with small integer coefficients, not identically zero.
pub fn form(rng: &mut ChaCha8Rng, d: usize) -> LinForm {
    loop {
        let coeffs: Vec<Rat> = (0..=d).map(|_| int(rng.gen_range(-3..=3))).collect();
        let f = LinForm::new(coeffs);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Linear form on `R^d` without height coefficient, not identically zero.
pub fn linear_form(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> LinForm {
    loop {
        let coeffs: Vec<Rat> = (0..d).map(|_| int(rng.gen_range(-bound..=bound))).collect();
        let f = LinForm::linear(&coeffs);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Adds a multiple of the height so that the form is nonnegative at every
/// vertex of `P` lifted to height one, then a random extra shift.
pub fn nonneg_shift(rng: &mut ChaCha8Rng, f: &LinForm, p: &Polytope) -> LinForm {
    let worst = p
        .vertices()
        .iter()
        .map(|u| -f.eval_affine(u))
        .fold(Rat::zero(), |a, b| if b > a { b } else { a });
    let extra = int(rng.gen_range(0..=1));
    let mut coeffs = f.coeffs().to_vec();
    let d = coeffs.len() - 1;
    coeffs[d] = &coeffs[d] + worst + extra;
    LinForm::new(coeffs)
}

/// Product of `1..=max_factors` random forms.
pub fn product_weight(rng: &mut ChaCha8Rng, d: usize, max_factors: usize) -> Weight {
    let k = rng.gen_range(1..=max_factors);
    Weight::product((0..k).map(|_| form(rng, d)).collect()).expect("nonempty product")
}

/// Sum of up to two terms, each a nonnegative scalar times a product of
/// forms nonnegative on `C(P)`.
pub fn rp_weight(rng: &mut ChaCha8Rng, p: &Polytope, degree: usize) -> Weight {
    let d = p.ambient_dim();
    let terms = (0..rng.gen_range(1..=2))
        .map(|_| {
            let factors = (0..degree)
                .map(|_| {
                    let f = form(rng, d);
                    nonneg_shift(rng, &f, p)
                })
                .collect();
            WeightTerm::new(int(rng.gen_range(1..=3)), factors)
        })
        .collect();
    Weight::new(d, terms).expect("homogeneous")
}

/// Squares of random forms, optionally times a form nonnegative on `C(P)`.
pub fn sp_weight(rng: &mut ChaCha8Rng, p: &Polytope) -> Weight {
    let d = p.ambient_dim();
    let a = form(rng, d);
    match rng.gen_range(0..3) {
        0 => Weight::square(&a),
        1 => {
            let b = form(rng, d);
            Weight::product(vec![a.clone(), a, b.clone(), b]).expect("nonempty")
        }
        _ => {
            let f = form(rng, d);
            let c = nonneg_shift(rng, &f, p);
            Weight::product(vec![a.clone(), a, c]).expect("nonempty")
        }
    }
}

/// Points of `Q ∩ (1/δ)Z^d`.
pub fn grid_points(q: &Polytope, delta: usize) -> Vec<Vec<Rat>> {
    let den = BigInt::from(delta);
    lattice_points(q, delta)
        .expect("small box")
        .into_iter()
        .map(|x| x.into_iter().map(|c| Rat::new(c, den.clone())).collect())
        .collect()
}

/// `(P, Q, δ)` with `Q` spanned by points of `(1/δ)Z^d` and `P` the hull of
/// a random subset of `Q ∩ (1/δ)Z^d`. With `same_dim`, `dim P = dim Q`.
pub fn nested_pair(rng: &mut ChaCha8Rng, same_dim: bool) -> (Polytope, Polytope, usize) {
    loop {
        let d = rng.gen_range(1..=3);
        let delta = rng.gen_range(1..=3usize);
        let k = rng.gen_range(d + 1..=d + 2);
        let pts: Vec<Vec<Rat>> = (0..k)
            .map(|_| {
                (0..d)
                    .map(|_| rat(rng.gen_range(-2 * delta as i64..=2 * delta as i64), delta as i64))
                    .collect()
            })
            .collect();
        let q = Polytope::convex_hull(d, &pts).expect("well-formed points");
        if q.denominator() != delta || (same_dim && q.dim() < 1) {
            continue;
        }
        let mut grid = grid_points(&q, delta);
        grid.shuffle(rng);
        let take = rng.gen_range(1..=grid.len().min(d + 2));
        let p = Polytope::convex_hull(d, &grid[..take]).expect("well-formed points");
        if same_dim && p.dim() != q.dim() {
            continue;
        }
        return (p, q, delta);
    }
}

/// Random subset of `0..n`.
pub fn strict_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

/// Half-open lattice triangle with vertices in `[-4, 4]^2`.
pub fn lattice_triangle(rng: &mut ChaCha8Rng) -> HalfOpenSimplex {
    loop {
        let verts: Vec<Vec<i64>> = (0..3)
            .map(|_| vec![rng.gen_range(-4..=4), rng.gen_range(-4..=4)])
            .collect();
        let strict = strict_subset(rng, 3);
        if let Ok(h) = HalfOpenSimplex::from_i64(&verts, &strict) {
            if h.dim() == 2 {
                return h;
            }
        }
    }
}

/// `(F, Δ)`: a half-open rational simplex `F` of dimension `r ≤ 2` in `R^d`
/// and an iterated pyramid `Δ` over it with `s ≥ 1` closed apexes.
pub fn pyramid_pair(rng: &mut ChaCha8Rng) -> (HalfOpenSimplex, HalfOpenSimplex) {
    loop {
        let d = rng.gen_range(1..=3);
        let r = rng.gen_range(0..d.min(3));
        let verts: Vec<Vec<Rat>> = (0..=r).map(|_| point(rng, d, -2, 2, 2)).collect();
        let strict = strict_subset(rng, r + 1).into_iter().collect();
        let Ok(f) = HalfOpenSimplex::new(verts, strict) else {
            continue;
        };
        if f.dim() != r {
            continue;
        }
        let s = rng.gen_range(1..=d - r);
        let apexes: Vec<Vec<Rat>> = (0..s).map(|_| point(rng, d, -2, 2, 2)).collect();
        if let Ok(delta) = f.pyramid(&apexes) {
            return (f, delta);
        }
    }
}

/// Least common multiple of two positive integers.
pub fn lcm(a: usize, b: usize) -> usize {
    num_integer::lcm(a, b)
}

/// Whether some vertex value of `ℓ` is negative and another positive.
pub fn changes_sign(f: &LinForm, p: &Polytope) -> bool {
    let vals: Vec<Rat> = p.vertices().iter().map(|u| f.eval_affine(u)).collect();
    vals.iter().any(Signed::is_negative) && vals.iter().any(Signed::is_positive)
}

pub fn one() -> Rat {
    Rat::one()
}

/// `conv(0, e_1, …, e_18, (1^9, (-1)^9, 3))` in `R^19`.
pub fn base_simplex() -> Polytope {
    let mut verts = vec![vec![0i64; 19]];
    for i in 0..18 {
        let mut e = vec![0i64; 19];
        e[i] = 1;
        verts.push(e);
    }
    let mut last = vec![1i64; 9];
    last.extend(vec![-1i64; 9]);
    last.push(3);
    verts.push(last);
    Polytope::from_i64(&verts).expect("simplex")
}

/// The pyramid in `R^20` over the base simplex placed at height one, with
/// apex at the origin, and the linear form taking `1` on the first ten base
/// vertices and `-1` on the other ten.
pub fn twenty_simplex() -> (Polytope, LinForm) {
    let base = base_simplex();
    let values: Vec<Rat> = (0..20).map(|i| if i < 10 { int(1) } else { int(-1) }).collect();
    let affine = wehrhart::linear_form_from_vertex_values(&base, &values).expect("simplex");
    let apex = vec![int(0); 20];
    let lifted = wehrhart::pyramid(&base.embed_at_height(&int(1)), &[apex]).expect("apex off the base");
    (lifted, LinForm::linear(affine.coeffs()))
}
