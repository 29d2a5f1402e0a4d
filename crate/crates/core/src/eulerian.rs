//! Parametrized Eulerian polynomials `A_d^λ(t)`, defined by
//! `Σ_{n≥0} (n+λ)^d t^n = A_d^λ(t) / (1-t)^{d+1}` for `λ ∈ [0, 1]`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rat;
use crate::poly::Poly;

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn check_lambda(lambda: &Rat) -> Result<()> {
    if lambda.is_negative() || *lambda > Rat::one() {
        return Err(Error::LambdaOutOfRange(lambda.to_string()));
    }
    Ok(())
}

/// `A_d^λ(t)` via the alternating sum
/// `[t^k] = Σ_{j≤k} (-1)^j C(d+1, j) (k-j+λ)^d`, `k = 0..=d+1`.
pub fn eulerian_poly(d: usize, lambda: &Rat) -> Result<Poly> {
    check_lambda(lambda)?;
    let coeffs = (0..=d + 1)
        .map(|k| {
            (0..=k).fold(Rat::zero(), |acc, j| {
                let base = Rat::from_integer(BigInt::from(k - j)) + lambda;
                let term = Rat::from_integer(binomial(d + 1, j)) * pow_rat(&base, d);
                if j % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect();
    Ok(Poly::new(coeffs))
}

fn pow_rat(x: &Rat, e: usize) -> Rat {
    (0..e).fold(Rat::one(), |acc, _| acc * x)
}

/// Memoized `A_d^λ` lookups for a single computation.
#[derive(Debug, Default)]
pub struct EulerianTable {
    cache: HashMap<(usize, Rat), Poly>,
}

impl EulerianTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, d: usize, lambda: &Rat) -> Result<&Poly> {
        if !self.cache.contains_key(&(d, lambda.clone())) {
            let p = eulerian_poly(d, lambda)?;
            self.cache.insert((d, lambda.clone()), p);
        }
        Ok(&self.cache[&(d, lambda.clone())])
    }

    pub fn len(&self) -> usize {
        self.cache.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cache.is_empty()
    }
}

/// `A_d^λ(t)` as a polynomial in both `t` and `λ`: entry `[k][c]` is the
/// integer coefficient of `t^k λ^c`.
///
/// Expanding `(k-j+λ)^d` binomially shows every coefficient is an integer,
/// which lets the series engine sum λ-moments instead of evaluating
/// `A_d^λ` point by point.
pub fn eulerian_lambda_table(d: usize) -> Vec<Vec<BigInt>> {
    let table: Vec<Vec<BigInt>> = (0..=d)
        .map(|k| {
            (0..=d)
                .map(|c| {
                    let inner = (0..=k).fold(BigInt::zero(), |acc, j| {
                        let base = BigInt::from(k - j);
                        let term = binomial(d + 1, j) * num_traits::pow(base, d - c);
                        if j % 2 == 0 {
                            acc + term
                        } else {
                            acc - term
                        }
                    });
                    binomial(d, c) * inner
                })
                .collect()
        })
        .collect();
    table
}
