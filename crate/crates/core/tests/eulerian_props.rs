use num_bigint::BigInt;
use num_traits::Signed;

use wehrhart::analysis::check_nonneg_coeffs;
use wehrhart::eulerian::eulerian_lambda_table;
use wehrhart::linalg::{int, rat};
use wehrhart::{eulerian_poly, EulerianTable, Poly, Rat};

fn grid() -> Vec<Rat> {
    vec![int(0), rat(1, 4), rat(1, 3), rat(1, 2), rat(2, 3), int(1)]
}

fn power(x: &Rat, e: usize) -> Rat {
    (0..e).fold(int(1), |acc, _| acc * x)
}

/// `(1-t)^{d+1} Σ_{n ≤ 20} (n+λ)^d tⁿ`, truncated at degree 20.
fn from_series(d: usize, lambda: &Rat) -> Poly {
    let series = Poly::new((0..=20).map(|n| power(&(int(n) + lambda), d)).collect());
    (&series * &Poly::one_minus_power(1, d + 1)).truncate(20)
}

fn descents(d: usize) -> Poly {
    fn walk(prefix: &mut Vec<usize>, left: &mut Vec<usize>, counts: &mut Vec<i64>) {
        if left.is_empty() {
            counts[prefix.windows(2).filter(|w| w[0] > w[1]).count()] += 1;
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            prefix.push(x);
            walk(prefix, left, counts);
            prefix.pop();
            left.insert(i, x);
        }
    }
    let mut counts = vec![0i64; d.max(1)];
    walk(&mut Vec::new(), &mut (0..d).collect(), &mut counts);
    Poly::from_i64(&counts)
}

#[test]
fn closed_forms_in_low_degree() {
    for lambda in grid() {
        let one = int(1);
        assert_eq!(eulerian_poly(0, &lambda).unwrap(), Poly::one());
        assert_eq!(eulerian_poly(1, &lambda).unwrap(), Poly::new(vec![lambda.clone(), &one - &lambda]));
        let l2 = &lambda * &lambda;
        let a2 = Poly::new(vec![
            l2.clone(),
            -(&l2 * int(2)) + &lambda * int(2) + &one,
            (&lambda - &one) * (&lambda - &one),
        ]);
        assert_eq!(eulerian_poly(2, &lambda).unwrap(), a2);
    }
}

#[test]
fn classical_eulerian_numbers() {
    for d in 1..=6 {
        assert_eq!(eulerian_poly(d, &int(1)).unwrap(), descents(d), "d = {d}");
    }
    assert_eq!(eulerian_poly(4, &int(1)).unwrap(), Poly::from_i64(&[1, 11, 11, 1]));
}

#[test]
fn nonnegative_on_the_grid_and_defining_series() {
    for d in 0..=8 {
        for lambda in grid() {
            let a = eulerian_poly(d, &lambda).unwrap();
            assert!(check_nonneg_coeffs(&a).is_pass(), "d = {d}, λ = {lambda}");
            assert_eq!(a.truncate(20), from_series(d, &lambda), "d = {d}, λ = {lambda}");
            let factorial: BigInt = (1..=d).map(BigInt::from).product();
            assert_eq!(a.eval(&int(1)), Rat::from_integer(factorial));
        }
    }
}

#[test]
fn zero_and_one_differ_by_t() {
    for d in 1..=8 {
        let a0 = from_series(d, &int(0));
        let a1 = from_series(d, &int(1));
        assert_eq!(a0, a1.shift(1).truncate(20));
        assert_eq!(eulerian_poly(d, &int(0)).unwrap(), eulerian_poly(d, &int(1)).unwrap().shift(1));
    }
}

#[test]
fn colored_scaling_is_integral() {
    for d in 0..=7 {
        for r in 1..=6i64 {
            let scaled = eulerian_poly(d, &rat(1, r)).unwrap().scale(&power(&int(r), d));
            assert!(scaled.coeffs().iter().all(|c| c.is_integer()), "d = {d}, r = {r}");
            assert!(!scaled.coeffs().iter().any(|c| c.is_negative()));
        }
    }
}

#[test]
fn lambda_table_expands_the_polynomial() {
    for d in 0..=6 {
        let table = eulerian_lambda_table(d);
        for lambda in grid() {
            let from_table = Poly::new(
                table
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .map(|(c, x)| Rat::from_integer(x.clone()) * power(&lambda, c))
                            .sum()
                    })
                    .collect(),
            );
            assert_eq!(from_table, eulerian_poly(d, &lambda).unwrap());
        }
    }
}

#[test]
fn table_memoizes_and_rejects_out_of_range() {
    let mut table = EulerianTable::new();
    assert!(table.is_empty());
    let a = table.get(3, &rat(1, 2)).unwrap().clone();
    table.get(3, &rat(1, 2)).unwrap();
    assert_eq!(table.len(), 1);
    assert_eq!(a, eulerian_poly(3, &rat(1, 2)).unwrap());
    assert!(eulerian_poly(2, &rat(3, 2)).is_err());
    assert!(eulerian_poly(2, &rat(-1, 2)).is_err());
}
