//! Acceptance gate: one line per criterion, nonzero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;

use wehrhart::analysis::{
    check_monotonicity, check_nonneg_coeffs, check_pyramid, classify_weight, h2_tensor, is_psd,
    nonneg_on_ray, triangle_conditions, Check, MonotoneFailure, MonotoneMode, WeightClass,
};
use wehrhart::eulerian_poly;
use wehrhart::linalg::{int, rat};
use wehrhart::oracle::{verify_poly_series, verify_series};
use wehrhart::{
    hstar, hstar_ell_squared, hstar_poly, hstar_simplex, ratfun_combine, LinForm, Poly, Polytope, Rat,
    Weight, WeightPoly,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

fn segment_weights() -> Outcome {
    let seg = ok(Polytope::from_i64(&[vec![0], vec![1]]))?;
    let r = ok(hstar(&seg, &Weight::square(&LinForm::coordinate(1, 0))))?;
    ensure(
        r.numerator == Poly::from_i64(&[0, 1, 1]) && (r.period, r.exponent) == (1, 4),
        || format!("x^2 gave {} over (1-t^{})^{}", r.numerator, r.period, r.exponent),
    )?;
    let r = ok(hstar(&seg, &Weight::constant(1, int(1))))?;
    ensure(r.numerator == Poly::one() && r.exponent == 2, || format!("1 gave {}", r.numerator))?;
    let mixed = WeightPoly::from_monomials(1, &[(int(1), vec![2]), (int(1), vec![0])]);
    let r = ok(hstar_poly(&seg, &mixed))?;
    ensure(
        r.numerator == Poly::from_i64(&[1, -1, 2]) && r.exponent == 4,
        || format!("x^2 + 1 gave {}", r.numerator),
    )?;
    Ok(format!("x^2 + 1 -> ({}) / (1-t)^4", r.numerator))
}

fn nested_lattice_pair() -> Outcome {
    let p = ok(Polytope::from_i64(&[vec![3, -2], vec![2, -2]]))?;
    let q = ok(Polytope::from_i64(&[vec![3, -2], vec![2, -2], vec![2, -1]]))?;
    let l = LinForm::from_i64(&[2, 3, 0]);
    let hq = ok(hstar_ell_squared(&q, &l))?.numerator;
    let hp = ok(hstar_ell_squared(&p, &l))?.numerator;
    ensure(hq == Poly::from_i64(&[0, 5, 1]), || format!("h*_Q = {hq}"))?;
    ensure(hp == Poly::from_i64(&[0, 4, 4]), || format!("h*_P = {hp}"))?;
    let report = ok(check_monotonicity(&p, &q, &Weight::square(&l), 1, MonotoneMode::Coeffwise))?;
    ensure(
        matches!(report.verdict, Check::Fail(MonotoneFailure::Coefficient(_))),
        || "monotonicity unexpectedly held".into(),
    )?;
    let (a, b) = (hq.eval(&int(1)), hp.eval(&int(1)));
    ensure(a == int(6) && b == int(8), || format!("values at 1: {a}, {b}"))?;
    Ok(format!("R - L = {}, h*_Q(1) = {a} < {b} = h*_P(1)", report.difference()))
}

fn squared_quartic() -> Outcome {
    let tri = ok(Polytope::from_i64(&[vec![0, 0], vec![1, 0], vec![0, 1]]))?;
    let a = LinForm::from_i64(&[2, -1, 0]);
    let b = LinForm::from_i64(&[-1, 2, 0]);
    let w = ok(Weight::product(vec![a.clone(), a, b.clone(), b]))?;
    let r = ok(hstar(&tri, &w))?;
    ensure(
        r.numerator == Poly::from_i64(&[0, 8, 81, -6, 1]) && (r.period, r.exponent) == (1, 7),
        || format!("got {}", r.numerator),
    )?;
    let report = ok(verify_series(&tri, &w, 8))?;
    ensure(report.is_pass(), || format!("oracle mismatch at n = {:?}", report.first_mismatch()))?;
    Ok(format!("({}) / (1-t)^7, series agrees to n = 8", r.numerator))
}

fn dart_dissection() -> Outcome {
    let t1 = ok(Polytope::from_i64(&[vec![1, 0], vec![-3, -1], vec![2, 0]]))?;
    let t2 = ok(Polytope::from_i64(&[vec![1, 0], vec![2, 0], vec![-3, 1]]))?;
    let seg = ok(Polytope::from_i64(&[vec![1, 0], vec![2, 0]]))?;
    let l = LinForm::from_i64(&[1, 0, 0]);
    let parts = vec![
        ok(hstar_ell_squared(&t1, &l))?,
        ok(hstar_ell_squared(&t2, &l))?,
        ok(hstar_ell_squared(&seg, &l))?.neg(),
    ];
    let r = ok(ratfun_combine(&parts, 1, 5))?;
    ensure(r.numerator == Poly::from_i64(&[0, 23, -4, 9]), || format!("got {}", r.numerator))?;
    ensure(nonneg_on_ray(&r.numerator).is_pass(), || "ray check failed".into())?;
    ensure(check_nonneg_coeffs(&r.numerator) == Check::Fail(2), || "coefficient check did not fail at 2".into())?;
    Ok(format!("({}) / (1-t)^5, ray PASS, coefficients FAIL at t^2", r.numerator))
}

fn thin_triangle() -> Outcome {
    let p = ok(Polytope::new(
        2,
        vec![vec![int(1), int(1)], vec![int(1), rat(5, 6)], vec![rat(7, 6), int(1)]],
    ))?;
    let l = LinForm::from_i64(&[-60, 66, 0]);
    let r = ok(hstar_ell_squared(&p, &l))?;
    let descending = [
        2304, 1764, 1296, 900, 576, 324, -108, 756, 1476, 2052, 2484, 2772, 900, 576, 324, 144, 36,
    ];
    let mut ascending = vec![0i64];
    ascending.extend(descending.iter().rev());
    ensure(r.numerator == Poly::from_i64(&ascending), || format!("got {}", r.numerator))?;
    ensure((r.period, r.exponent) == (6, 5), || format!("denominator (1-t^{})^{}", r.period, r.exponent))?;
    Ok(format!("[t^11] = {}, over (1-t^6)^5", r.numerator.coeff(11)))
}

fn twenty_simplex() -> Outcome {
    let (delta, l) = common::twenty_simplex();
    let r = ok(hstar_ell_squared(&delta, &l))?;
    let c11 = r.numerator.coeff(11);
    ensure(c11 == rat(-40, 9), || format!("[t^11] = {c11}"))?;
    let tensor = ok(h2_tensor(&delta))?;
    let v = l.linear_part().to_vec();
    let q = tensor.coeffs[11].quadratic_form(&v);
    ensure(q == rat(-40, 9), || format!("v^T h_11 v = {q}"))?;
    match is_psd(&tensor.coeffs[11]) {
        Check::Fail(w) if w.value.is_negative() && tensor.coeffs[11].quadratic_form(&w.vector) == w.value => {
            Ok(format!("[t^11] = {c11}, h_11 witness value {}", w.value))
        }
        other => Err(format!("is_psd returned {other:?}")),
    }
}

/// Runs `instances` seeded cases; each returns whether it counted.
fn suite(
    label: &str,
    base_seed: u64,
    instances: usize,
    mut case: impl FnMut(&mut rand_chacha::ChaCha8Rng) -> Result<bool, String>,
) -> Result<String, String> {
    let mut counted = 0;
    let mut seed = base_seed;
    while counted < instances {
        let mut rng = common::rng(seed);
        let counts = case(&mut rng).map_err(|e| format!("{label}: seed {seed}: {e}"))?;
        counted += counts as usize;
        seed += 1;
        if seed - base_seed > 100 * instances as u64 {
            return Err(format!("{label}: too few usable instances"));
        }
    }
    Ok(format!("{label} {counted} ok (seeds {base_seed}..{})", seed - 1))
}

fn oracle_equivalence() -> Outcome {
    suite("oracle", 7000, 50, |rng| {
        let p = common::rational_polytope(rng);
        let w = common::product_weight(rng, p.ambient_dim(), 3);
        let report = ok(verify_series(&p, &w, 10))?;
        ensure(report.is_pass(), || {
            format!("mismatch at n = {:?} for {:?} with {:?}", report.first_mismatch(), p.vertices(), w)
        })?;
        Ok(true)
    })
}

fn theorem_suites() -> Outcome {
    let mut lines = Vec::new();
    lines.push(suite("coefficients/R_P", 8100, 50, |rng| {
        let p = common::rational_polytope(rng);
        let degree = rng.gen_range(1..=3);
        let w = common::rp_weight(rng, &p, degree);
        ensure(classify_weight(&p, &w) == WeightClass::Rp, || "weight not certified".into())?;
        let h = ok(hstar(&p, &w))?.numerator;
        ensure(check_nonneg_coeffs(&h).is_pass(), || format!("h* = {h} for {:?}", p.vertices()))?;
        Ok(true)
    })?);
    lines.push(suite("ray/squares", 8200, 50, |rng| {
        let p = common::rational_polytope(rng);
        let w = common::sp_weight(rng, &p);
        ensure(classify_weight(&p, &w) != WeightClass::Uncertified, || "weight not certified".into())?;
        let h = ok(hstar(&p, &w))?.numerator;
        ensure(nonneg_on_ray(&h).is_pass(), || format!("h* = {h} for {:?}", p.vertices()))?;
        Ok(true)
    })?);
    lines.push(suite("monotone/coeffwise", 8300, 50, |rng| {
        let (p, q, delta) = common::nested_pair(rng, false);
        let degree = rng.gen_range(1..=2);
        let w = common::rp_weight(rng, &q, degree);
        let g = delta * rng.gen_range(1..=2);
        let report = ok(check_monotonicity(&p, &q, &w, g, MonotoneMode::Coeffwise))?;
        ensure(report.verdict.is_pass(), || {
            format!("R - L = {} for P {:?} in Q {:?}", report.difference(), p.vertices(), q.vertices())
        })?;
        Ok(true)
    })?);
    lines.push(suite("monotone/ray", 8400, 50, |rng| {
        let (p, q, delta) = common::nested_pair(rng, true);
        let w = common::sp_weight(rng, &q);
        let report = ok(check_monotonicity(&p, &q, &w, delta, MonotoneMode::Ray))?;
        ensure(report.verdict.is_pass(), || {
            format!("R - L = {} for P {:?} in Q {:?}", report.difference(), p.vertices(), q.vertices())
        })?;
        Ok(true)
    })?);
    lines.push(suite("polygons", 8500, 50, |rng| {
        let p = common::lattice_polygon(rng);
        let l = common::linear_form(rng, 2, 4);
        let h = ok(hstar_ell_squared(&p, &l))?.numerator;
        ensure(check_nonneg_coeffs(&h).is_pass(), || format!("h* = {h} for {:?}", p.vertices()))?;
        Ok(true)
    })?);
    lines.push(suite("pyramids", 8600, 50, |rng| {
        let (f, delta) = common::pyramid_pair(rng);
        let degree = rng.gen_range(1..=2);
        let w = common::rp_weight(rng, &delta.closure(), degree);
        let g = delta.denominator() * rng.gen_range(1..=2);
        let report = ok(check_pyramid(&f, &delta, &w, g))?;
        ensure(report.verdict.is_pass(), || format!("difference {}", report.difference()))?;
        Ok(true)
    })?);
    lines.push(suite("safe triangles", 8700, 50, |rng| {
        let h = common::lattice_triangle(rng);
        let l = common::linear_form(rng, 2, 3);
        let (i, ii) = ok(triangle_conditions(&h, &l))?;
        if i && ii {
            return Ok(false);
        }
        let r = ok(hstar_simplex(&h, &Weight::square(&l), 1))?;
        ensure(check_nonneg_coeffs(&r.numerator).is_pass(), || format!("h* = {} on {:?}", r.numerator, h))?;
        Ok(true)
    })?);
    Ok(lines.join("; "))
}

/// Descent generating polynomial of all permutations of `1..=d`.
fn descent_polynomial(d: usize) -> Poly {
    let mut counts = vec![0i64; d.max(1)];
    let mut perm: Vec<usize> = (0..d).collect();
    loop {
        counts[perm.windows(2).filter(|w| w[0] > w[1]).count()] += 1;
        // Next permutation in lexicographic order.
        let Some(i) = (1..d).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..d).rev().find(|&j| perm[j] > perm[i - 1]).expect("successor exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    Poly::from_i64(&counts)
}

fn eulerian_suite() -> Outcome {
    let grid: Vec<Rat> = (0..=12).map(|k| rat(k, 12)).collect();
    for lambda in &grid {
        let one = Rat::from_integer(1.into());
        let a1 = ok(eulerian_poly(1, lambda))?;
        ensure(a1 == Poly::new(vec![lambda.clone(), &one - lambda]), || format!("A_1 at {lambda}: {a1}"))?;
        let a2 = ok(eulerian_poly(2, lambda))?;
        let l2 = lambda * lambda;
        let expected = Poly::new(vec![
            l2.clone(),
            -(&l2 * int(2)) + lambda * int(2) + &one,
            (lambda - &one) * (lambda - &one),
        ]);
        ensure(a2 == expected, || format!("A_2 at {lambda}: {a2}"))?;
    }
    for d in 1..=6 {
        let a = ok(eulerian_poly(d, &int(1)))?;
        let e = descent_polynomial(d);
        ensure(a == e, || format!("A_{d}^1 = {a}, descents give {e}"))?;
    }
    for d in 0..=8 {
        for lambda in &grid {
            let a = ok(eulerian_poly(d, lambda))?;
            ensure(check_nonneg_coeffs(&a).is_pass(), || format!("A_{d} at {lambda} = {a}"))?;
            // (1-t)^{d+1} Σ (n+λ)^d t^n agrees with A through order 20.
            let series = Poly::new(
                (0..=20)
                    .map(|n| {
                        let base = Rat::from_integer(BigInt::from(n)) + lambda;
                        (0..d).fold(Rat::from_integer(1.into()), |acc, _| acc * &base)
                    })
                    .collect(),
            );
            let lhs = (&series * &Poly::one_minus_power(1, d + 1)).truncate(20);
            let rhs = a.truncate(20);
            ensure(lhs == rhs, || format!("series identity for d = {d}, λ = {lambda}"))?;
            ensure(a.coeff(d + 1).is_zero(), || format!("degree of A_{d} exceeds {d}"))?;
        }
    }
    Ok("closed forms, descents d ≤ 6, nonnegativity and series identity on a 13-point grid".into())
}

fn mixed_degree_oracle() -> Outcome {
    let seg = ok(Polytope::from_i64(&[vec![0], vec![1]]))?;
    let mixed = WeightPoly::from_monomials(1, &[(int(1), vec![2]), (int(1), vec![0])]);
    let report = ok(verify_poly_series(&seg, &mixed, 20))?;
    ensure(report.is_pass(), || "mixed weight series mismatch".into())?;
    Ok(String::new())
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Duration, fn() -> Outcome)> = vec![
        ("unit segment weights", Duration::from_secs(1), || {
            mixed_degree_oracle()?;
            segment_weights()
        }),
        ("nested lattice pair", Duration::from_secs(1), nested_lattice_pair),
        ("squared quartic on the standard triangle", Duration::from_secs(5), squared_quartic),
        ("non-convex quadrilateral", Duration::from_secs(5), dart_dissection),
        ("thin rational triangle", Duration::from_secs(10), thin_triangle),
        ("twenty-dimensional simplex", Duration::from_secs(60), twenty_simplex),
        ("oracle equivalence", Duration::from_secs(300), oracle_equivalence),
        ("property suites", Duration::from_secs(600), theorem_suites),
        ("eulerian polynomials", Duration::from_secs(10), eulerian_suite),
    ];
    let mut failures = 0;
    for (k, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > limit => Err(format!("over time limit {limit:?}")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({elapsed:.2?}) {detail}", k + 1),
            Err(reason) => {
                failures += 1;
                println!("criterion {}: FAIL {name} ({elapsed:.2?}) {reason}", k + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
