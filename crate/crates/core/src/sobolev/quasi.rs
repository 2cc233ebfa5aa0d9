use num_traits::Zero;

use crate::error::{Error, Result};
use crate::interval::ExtReal;
use crate::poly::{Poly, QPoly};
use crate::rational::Rational;
use crate::sobolev::gram::sobolev_poly;
use crate::sobolev::spec::SobolevSpec;

/// `ρ(x) = Π_{c ≤ a} (x − c)^{d+1} · Π_{c ≥ b} (c − x)^{d+1}`. A point on the
/// lower end of the hull goes to the first product.
pub fn modifier_poly(spec: &SobolevSpec) -> QPoly {
    let hull = spec.measure().hull();
    let lo = hull.lo().cloned().unwrap_or(ExtReal::NegInf);
    let mut rho = QPoly::one();
    for (c, d) in spec.points() {
        let left = ExtReal::Finite(c.clone()) <= lo;
        let factor = if left {
            Poly::new(vec![-c.clone(), Rational::from_integer(1.into())])
        } else {
            Poly::new(vec![c.clone(), Rational::from_integer((-1).into())])
        };
        rho = &rho * &factor.pow(d + 1);
    }
    rho
}

/// `∫ p dμ` by moment expansion.
fn integrate(p: &QPoly, spec: &SobolevSpec) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (t, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc += c * spec.measure().moment::<Rational>(t)?;
        }
    }
    Ok(acc)
}

/// Checks `∫ S_n ρ x^t dμ = 0` for `t < n − d`. Requires `n > d`.
pub fn quasi_orthogonality_check(n: usize, spec: &SobolevSpec) -> Result<bool> {
    let d = spec.d();
    if n <= d {
        return Err(Error::Precondition(format!("quasi-orthogonality needs n > d, got n={n}, d={d}")));
    }
    let s: QPoly = sobolev_poly(n, spec)?;
    let weighted = &s * &modifier_poly(spec);
    for t in 0..(n - d) {
        let probe = &weighted * &QPoly::monomial(t);
        if !integrate(&probe, spec)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::sobolev::spec::MassTerm;

    #[test]
    fn derivative_mass_order_three() {
        let s = SobolevSpec::laguerre(0, vec![MassTerm::new(int(-1), 1, int(2))]).unwrap();
        assert_eq!(modifier_poly(&s), QPoly::new(vec![int(1), int(2), int(1)]));
        assert!(quasi_orthogonality_check(3, &s).unwrap());
        assert!(quasi_orthogonality_check(2, &s).is_err());
    }

    #[test]
    fn needs_n_above_d() {
        let s = SobolevSpec::laguerre(
            0,
            vec![
                MassTerm::new(int(-1), 0, int(10)),
                MassTerm::new(int(-3), 1, int(5)),
                MassTerm::new(int(-9), 1, int(5)),
                MassTerm::new(int(-10), 3, int(20)),
            ],
        )
        .unwrap();
        assert!(matches!(quasi_orthogonality_check(5, &s), Err(Error::Precondition(_))));
    }

    #[test]
    fn plain_orthogonality() {
        let s = SobolevSpec::laguerre(1, vec![]).unwrap();
        for n in 1..=10 {
            assert!(quasi_orthogonality_check(n, &s).unwrap());
        }
    }
}
