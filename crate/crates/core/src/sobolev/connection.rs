//! Construction of S_n through its Fourier expansion in the monic Laguerre
//! basis: the derivative values `S_n^{(k)}(c_j)` solve a d*×d* system, and
//! S_n is then `L_n` minus a combination of kernel derivatives.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::laguerre::monic_derivative_values;
use crate::linalg::solve;
use crate::poly::QPoly;
use crate::rational::Rational;
use crate::sobolev::kernel::{kernel_sum, laguerre_combination, norms};
use crate::sobolev::spec::SobolevSpec;

/// One discrete term together with the solved value `S_n^{(k)}(c)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionTerm {
    pub c: Rational,
    pub order: usize,
    pub lambda: Rational,
    pub value: Rational,
    /// `(L^α_i)^{(order)}(c)` for i < n.
    pub basis: Vec<Rational>,
}

/// `S_n = L_n − Σ λ s K_{n−1}^{(0,k)}(·, c)` in evaluable form.
#[derive(Clone, Debug)]
pub struct ConnectionForm {
    pub n: usize,
    pub alpha: u32,
    pub terms: Vec<ConnectionTerm>,
    norms: Vec<Rational>,
}

/// Solves for `S_n^{(k)}(c_j)` over all discrete terms, in the order of
/// [`SobolevSpec::masses`].
pub fn connection_form(n: usize, spec: &SobolevSpec) -> Result<ConnectionForm> {
    let alpha = spec.require_laguerre()?;
    let h = norms(alpha, n);
    let masses = spec.masses();
    let tables: Vec<Vec<Rational>> = masses
        .iter()
        .map(|m| monic_derivative_values(alpha, m.order, &m.c, n))
        .collect();
    let hk = &h[..n];
    let size = masses.len();
    let mut a = vec![vec![Rational::zero(); size]; size];
    let mut b = vec![Rational::zero(); size];
    for r in 0..size {
        let left = &tables[r];
        b[r] = left[n].clone();
        for (col, col_term) in masses.iter().enumerate() {
            let right = &tables[col];
            let k = kernel_sum(&left[..n], &right[..n], hk);
            a[r][col] = &col_term.lambda * k;
            if r == col {
                a[r][col] += Rational::one();
            }
        }
    }
    let values = solve(a, b)?;
    let terms = masses
        .iter()
        .zip(values)
        .zip(tables)
        .map(|((m, value), mut basis)| ConnectionTerm {
            c: m.c.clone(),
            order: m.order,
            lambda: m.lambda.clone(),
            value,
            basis: {
                basis.truncate(n);
                basis
            },
        })
        .collect();
    Ok(ConnectionForm {
        n,
        alpha,
        terms,
        norms: h,
    })
}

/// The map `(c_j, k) ↦ S_n^{(k)}(c_j)`.
pub fn connection_solve(n: usize, spec: &SobolevSpec) -> Result<Vec<((Rational, usize), Rational)>> {
    Ok(connection_form(n, spec)?
        .terms
        .into_iter()
        .map(|t| ((t.c, t.order), t.value))
        .collect())
}

impl ConnectionForm {
    /// `K_{n−1}^{(ν,k)}(x, c)` for the given term, from the values
    /// `(L^α_i)^{(ν)}(x)`, i < n.
    pub fn kernel_at(&self, term: &ConnectionTerm, x_values: &[Rational]) -> Rational {
        kernel_sum(&x_values[..self.n], &term.basis, &self.norms[..self.n])
    }

    /// `L_n^{(ν)}(x)` and the individual kernel contributions
    /// `λ s K_{n−1}^{(ν,k)}(x, c)` for each term.
    pub fn pieces(&self, nu: usize, x: &Rational) -> (Rational, Vec<Rational>) {
        let xv = monic_derivative_values(self.alpha, nu, x, self.n);
        let parts = self
            .terms
            .iter()
            .map(|t| &t.lambda * &t.value * self.kernel_at(t, &xv))
            .collect();
        (xv[self.n].clone(), parts)
    }

    /// `S_n^{(ν)}(x)`.
    pub fn eval_derivative(&self, nu: usize, x: &Rational) -> Rational {
        let (l, parts) = self.pieces(nu, x);
        parts.iter().fold(l, |acc, p| acc - p)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.eval_derivative(0, x)
    }

    /// Coefficients of S_n in the monic Laguerre basis `L_0..L_n`.
    pub fn laguerre_coefficients(&self) -> Vec<Rational> {
        let mut w = vec![Rational::zero(); self.n + 1];
        w[self.n] = Rational::one();
        for t in &self.terms {
            let f = &t.lambda * &t.value;
            if f.is_zero() {
                continue;
            }
            for i in 0..self.n {
                if !t.basis[i].is_zero() {
                    w[i] -= &f * &t.basis[i] / &self.norms[i];
                }
            }
        }
        w
    }

    pub fn to_poly(&self) -> QPoly {
        laguerre_combination(&self.laguerre_coefficients(), self.alpha)
    }
}

/// S_n assembled from the connection formula.
pub fn sobolev_poly_via_kernel(n: usize, spec: &SobolevSpec) -> Result<QPoly> {
    Ok(connection_form(n, spec)?.to_poly())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laguerre::monic_laguerre_exact;
    use crate::rational::int;
    use crate::sobolev::gram::sobolev_poly;
    use crate::sobolev::spec::MassTerm;

    #[test]
    fn derivative_mass_values() {
        let s = SobolevSpec::laguerre(0, vec![MassTerm::new(int(-1), 1, int(2))]).unwrap();
        let sol = connection_solve(2, &s).unwrap();
        assert_eq!(sol, vec![((int(-1), 1), int(-2))]);
        assert_eq!(sobolev_poly_via_kernel(2, &s).unwrap(), QPoly::new(vec![int(-2), int(0), int(1)]));
    }

    #[test]
    fn no_masses_gives_laguerre() {
        let s = SobolevSpec::laguerre(2, vec![]).unwrap();
        assert!(connection_solve(4, &s).unwrap().is_empty());
        assert_eq!(sobolev_poly_via_kernel(7, &s).unwrap(), monic_laguerre_exact(7, 2));
    }

    #[test]
    fn matches_gram_with_shared_point() {
        let s = SobolevSpec::laguerre(
            1,
            vec![
                MassTerm::new(int(-2), 0, int(3)),
                MassTerm::new(int(-2), 2, int(1)),
                MassTerm::new(int(-5), 1, int(2)),
            ],
        )
        .unwrap();
        for n in 0..9 {
            let form = connection_form(n, &s).unwrap();
            let p = form.to_poly();
            assert_eq!(p, sobolev_poly::<Rational>(n, &s).unwrap(), "n={n}");
            let x = int(-3);
            assert_eq!(form.eval(&x), p.eval(&x));
            assert_eq!(form.eval_derivative(2, &x), p.derivative(2).eval(&x));
        }
    }
}
