//! Laguerre kernel polynomials `K_n(x, y) = Σ_{i≤n} L^α_i(x) L^α_i(y) / ‖L^α_i‖²`
//! and their mixed partial derivatives, in exact arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::laguerre::{monic_derivative_values, monic_values, norm_sq_exact};
use crate::poly::QPoly;
use crate::rational::{common_denominator, Rational};

/// `K_n^{(j,k)}(x, y)` together with its arguments.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelEval {
    pub n: usize,
    pub j: usize,
    pub k: usize,
    pub x: Rational,
    pub y: Rational,
    pub value: Rational,
}

/// `‖L^α_i‖²` for i = 0..=n.
pub fn norms(alpha: u32, n: usize) -> Vec<Rational> {
    (0..=n).map(|i| norm_sq_exact(i, alpha)).collect()
}

/// `Σ_{i ≤ n} a_i b_i / h_i` over the common prefix of the slices.
pub fn kernel_sum(a: &[Rational], b: &[Rational], h: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .zip(h)
        .filter(|((u, v), _)| !u.is_zero() && !v.is_zero())
        .fold(Rational::zero(), |acc, ((u, v), w)| acc + u * v / w)
}

/// Termwise-differentiated kernel sum.
pub fn kernel_eval(n: usize, j: usize, k: usize, x: &Rational, y: &Rational, alpha: u32) -> KernelEval {
    let xv = monic_derivative_values(alpha, j, x, n);
    let yv = monic_derivative_values(alpha, k, y, n);
    let value = kernel_sum(&xv, &yv, &norms(alpha, n));
    KernelEval {
        n,
        j,
        k,
        x: x.clone(),
        y: y.clone(),
        value,
    }
}

/// Christoffel–Darboux closed form of `K_n(x, y)`, including the confluent
/// branch `x = y`.
pub fn cd_kernel(n: usize, x: &Rational, y: &Rational, alpha: u32) -> Rational {
    let h = norm_sq_exact(n, alpha);
    let px = monic_values(alpha, x, n + 1);
    if x != y {
        let py = monic_values(alpha, y, n + 1);
        (&px[n + 1] * &py[n] - &py[n + 1] * &px[n]) / (h * (x - y))
    } else {
        let dx = monic_derivative_values(alpha, 1, x, n + 1);
        (&dx[n + 1] * &px[n] - &px[n + 1] * &dx[n]) / h
    }
}

/// `K_n^{(0,k)}(·, y)` as a polynomial in the first variable.
pub fn kernel_poly(n: usize, k: usize, y: &Rational, alpha: u32) -> QPoly {
    let yv = monic_derivative_values(alpha, k, y, n);
    let h = norms(alpha, n);
    let weights: Vec<Rational> = yv.iter().zip(&h).map(|(v, w)| v / w).collect();
    laguerre_combination(&weights, alpha)
}

/// `Σ_i w_i L^α_i(x)` as a polynomial, generating the monic family by its
/// recurrence alongside the sum. The family has integer coefficients, so
/// the work is done over the integers with one common denominator.
pub fn laguerre_combination(weights: &[Rational], alpha: u32) -> QPoly {
    let den = common_denominator(weights);
    let scaled: Vec<BigInt> = weights
        .iter()
        .map(|w| w.numer() * (&den / w.denom()))
        .collect();
    let a = BigInt::from(alpha);
    let mut acc = vec![BigInt::zero(); weights.len()];
    let mut prev: Vec<BigInt> = Vec::new();
    let mut cur: Vec<BigInt> = vec![BigInt::one()];
    for (i, w) in scaled.iter().enumerate() {
        if !w.is_zero() {
            for (t, c) in cur.iter().enumerate() {
                acc[t] += w * c;
            }
        }
        let shift = BigInt::from(2 * i + 1) + &a;
        let b = BigInt::from(i) * (BigInt::from(i) + &a);
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (t, c) in cur.iter().enumerate() {
            next[t + 1] += c;
            next[t] -= &shift * c;
        }
        for (t, c) in prev.iter().enumerate() {
            next[t] -= &b * c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    QPoly::new(acc.into_iter().map(|c| Rational::new(c, den.clone())).collect())
}
