//! Inner product evaluation and the monomial Gram-matrix construction of S_n.


use crate::error::Result;
use crate::linalg::solve_spd;
use crate::poly::{Coeff, Poly};
use crate::rational::falling_factorial;
use crate::sobolev::spec::SobolevSpec;

/// `D^k(x^i)(c)` for i = 0..len.
fn monomial_derivatives<T: Coeff>(c: &T, k: usize, len: usize) -> Vec<T> {
    let mut out = vec![T::zero(); len];
    let mut pow = T::one();
    for (i, slot) in out.iter_mut().enumerate().skip(k) {
        *slot = T::from_int(&falling_factorial(i as u64, k as u64)) * pow.clone();
        pow = pow * c.clone();
    }
    out
}

/// `⟨p, q⟩_s`: moment expansion of the measure part plus the discrete sum.
pub fn sobolev_inner<T: Coeff>(p: &Poly<T>, q: &Poly<T>, spec: &SobolevSpec) -> Result<T> {
    let prod = p * q;
    let mut acc = T::zero();
    for (t, c) in prod.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = acc + c.clone() * spec.measure().moment::<T>(t)?;
    }
    for m in spec.masses() {
        let c = T::from_rational(&m.c);
        let pv = p.derivative(m.order).eval(&c);
        let qv = q.derivative(m.order).eval(&c);
        acc = acc + T::from_rational(&m.lambda) * pv * qv;
    }
    Ok(acc)
}

/// Gram matrix `G_{k,i} = ⟨x^k, x^i⟩_s` for `0 ≤ k, i < size`.
pub fn gram_matrix<T: Coeff>(size: usize, spec: &SobolevSpec) -> Result<Vec<Vec<T>>> {
    let moments = (0..(2 * size).max(1) - 1)
        .map(|t| spec.measure().moment::<T>(t))
        .collect::<Result<Vec<T>>>()?;
    let tables: Vec<(T, Vec<T>)> = spec
        .masses()
        .iter()
        .map(|m| {
            (
                T::from_rational(&m.lambda),
                monomial_derivatives(&T::from_rational(&m.c), m.order, size),
            )
        })
        .collect();
    let mut g = vec![vec![T::zero(); size]; size];
    for k in 0..size {
        for i in k..size {
            let mut v = moments[k + i].clone();
            for (lam, tab) in &tables {
                if !tab[k].is_zero() && !tab[i].is_zero() {
                    v = v + lam.clone() * tab[k].clone() * tab[i].clone();
                }
            }
            g[k][i] = v.clone();
            g[i][k] = v;
        }
    }
    Ok(g)
}

/// Monic S_n with `⟨x^k, S_n⟩_s = 0` for `k < n`, from `G a = -g`.
///
/// Elimination runs without pivoting and fails with
/// [`crate::Error::NotPositiveDefinite`] if a leading principal minor of the
/// Gram matrix is not positive.
pub fn sobolev_poly<T: Coeff>(n: usize, spec: &SobolevSpec) -> Result<Poly<T>> {
    if n == 0 {
        return Ok(Poly::one());
    }
    let full = gram_matrix::<T>(n + 1, spec)?;
    let g: Vec<Vec<T>> = full[..n].iter().map(|row| row[..n].to_vec()).collect();
    let rhs: Vec<T> = full[..n].iter().map(|row| -row[n].clone()).collect();
    let mut coeffs = solve_spd(g, rhs)?;
    coeffs.push(T::one());
    Ok(Poly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::rational::{int, Rational};
    use crate::sobolev::spec::MassTerm;

    fn derivative_mass() -> SobolevSpec {
        SobolevSpec::laguerre(0, vec![MassTerm::new(int(-1), 1, int(2))]).unwrap()
    }

    #[test]
    fn inner_examples() {
        let s = derivative_mass();
        let one = Poly::<Rational>::one();
        let x = Poly::<Rational>::x();
        assert_eq!(sobolev_inner(&one, &one, &s).unwrap(), int(1));
        assert_eq!(sobolev_inner(&x, &x, &s).unwrap(), int(4));
        let s2 = Poly::new(vec![int(-2), int(0), int(1)]);
        for k in 0..2 {
            let xk = Poly::monomial(k);
            assert!(sobolev_inner(&xk, &s2, &s).unwrap().is_zero());
        }
    }

    #[test]
    fn derivative_mass_s2() {
        let p: Poly<Rational> = sobolev_poly(2, &derivative_mass()).unwrap();
        assert_eq!(p, Poly::new(vec![int(-2), int(0), int(1)]));
        let f: Poly<f64> = sobolev_poly(2, &derivative_mass()).unwrap();
        assert!((f.coeff(0) + 2.0).abs() < 1e-12 && f.coeff(1).abs() < 1e-12);
    }

    #[test]
    fn insufficient_moments_named() {
        use crate::interval::ExtInterval;
        use crate::sobolev::spec::Measure;
        let m = Measure::Moments {
            values: vec![int(1), int(0), int(1)],
            hull: ExtInterval::closed(int(-1), int(1)),
        };
        let s = SobolevSpec::new(m, vec![]).unwrap();
        assert!(sobolev_poly::<Rational>(1, &s).is_ok());
        assert_eq!(
            sobolev_poly::<Rational>(2, &s),
            Err(crate::Error::InsufficientMoments { required: 3, available: 2 })
        );
    }
}
