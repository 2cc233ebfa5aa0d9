//! Classical Laguerre polynomials for the weight `x^α e^{-x}` on `(0, ∞)`.
//!
//! `L^α_n` denotes the monic polynomial and `L^{(α)}_n = (-1)^n / n! · L^α_n`
//! the classical normalization. Exact computations require an integer
//! `α ≥ 0`, which keeps every moment and norm an integer.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Poly, QPoly, Value};
use crate::rational::{factorial, falling_factorial, format_rational, int, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum LaguerreParam {
    /// Exact mode: a nonnegative integer parameter.
    Integer(u32),
    /// Floating point mode: any real `α > -1`.
    Real(f64),
}

impl LaguerreParam {
    pub fn exact(alpha: i64) -> Result<Self> {
        if alpha <= -1 {
            return Err(Error::InvalidAlpha(alpha.to_string()));
        }
        if alpha < 0 {
            return Err(Error::ExactAlphaRequired(alpha.to_string()));
        }
        Ok(LaguerreParam::Integer(alpha as u32))
    }

    pub fn real(alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(Error::InvalidAlpha(alpha.to_string()));
        }
        Ok(LaguerreParam::Real(alpha))
    }

    /// Interpret a rational parameter in exact or floating mode.
    pub fn from_rational(alpha: &Rational, exact: bool) -> Result<Self> {
        if *alpha <= -Rational::one() {
            return Err(Error::InvalidAlpha(format_rational(alpha)));
        }
        if exact {
            if !alpha.is_integer() || alpha.is_negative() {
                return Err(Error::ExactAlphaRequired(format_rational(alpha)));
            }
            let v = alpha
                .to_integer()
                .to_u32()
                .ok_or_else(|| Error::ExactAlphaRequired(format_rational(alpha)))?;
            Ok(LaguerreParam::Integer(v))
        } else {
            LaguerreParam::real(crate::rational::to_f64(alpha))
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, LaguerreParam::Integer(_))
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            LaguerreParam::Integer(a) => *a as f64,
            LaguerreParam::Real(a) => *a,
        }
    }

    pub fn integer(&self) -> Result<u32> {
        match self {
            LaguerreParam::Integer(a) => Ok(*a),
            LaguerreParam::Real(a) => Err(Error::ExactAlphaRequired(a.to_string())),
        }
    }

    /// The parameter as a coefficient; exact domains need an integer α.
    pub fn value<T: Coeff>(&self) -> Result<T> {
        match self {
            LaguerreParam::Integer(a) => Ok(T::from_int(&BigInt::from(*a))),
            LaguerreParam::Real(a) if !T::EXACT => Ok(T::from_rational(
                &Rational::from_float(*a).ok_or_else(|| Error::InvalidAlpha(a.to_string()))?,
            )),
            LaguerreParam::Real(a) => Err(Error::ExactAlphaRequired(a.to_string())),
        }
    }
}

fn t_from(v: usize) -> BigInt {
    BigInt::from(v)
}

/// Monic `L^α_n` from the three-term recurrence
/// `x L_k = L_{k+1} + (2k+α+1) L_k + k(k+α) L_{k-1}`.
pub fn monic_laguerre<T: Coeff>(n: usize, alpha: &LaguerreParam) -> Result<Poly<T>> {
    let a: T = alpha.value()?;
    let mut prev = Poly::<T>::zero();
    let mut cur = Poly::<T>::one();
    for k in 0..n {
        let kk = T::from_int(&t_from(k));
        let shift = T::from_int(&t_from(2 * k + 1)) + a.clone();
        let next = &cur.mul_linear(&shift) - &prev.scale(&(kk.clone() * (kk + a.clone())));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Exact monic `L^α_n` for integer α.
pub fn monic_laguerre_exact(n: usize, alpha: u32) -> QPoly {
    monic_laguerre(n, &LaguerreParam::Integer(alpha)).expect("integer alpha")
}

/// `L^{(α)}_n = (-1)^n / n! · L^α_n`.
pub fn classical_laguerre<T: Coeff>(n: usize, alpha: &LaguerreParam) -> Result<Poly<T>> {
    let monic = monic_laguerre::<T>(n, alpha)?;
    let s = Rational::new(
        if n % 2 == 0 { BigInt::one() } else { -BigInt::one() },
        factorial(n as u64),
    );
    Ok(monic.scale(&T::from_rational(&s)))
}

/// Exact `‖L^α_n‖² = n! (n+α)!`.
pub fn norm_sq_exact(n: usize, alpha: u32) -> Rational {
    Rational::from_integer(factorial(n as u64) * factorial(n as u64 + alpha as u64))
}

/// `ln ‖L^α_n‖² = ln Γ(n+1) + ln Γ(n+α+1)`.
pub fn ln_norm_sq(n: usize, alpha: f64) -> f64 {
    ln_gamma(n as f64 + 1.0) + ln_gamma(n as f64 + alpha + 1.0)
}

/// `‖L^α_n‖²` in the parameter's mode.
pub fn laguerre_norm_sq(n: usize, alpha: &LaguerreParam) -> Result<Value> {
    match alpha {
        LaguerreParam::Integer(a) => Ok(Value::Exact(norm_sq_exact(n, *a))),
        LaguerreParam::Real(a) => {
            LaguerreParam::real(*a)?;
            Ok(Value::Float(ln_norm_sq(n, *a).exp()))
        }
    }
}

/// Exact moment `∫ x^{α+k} e^{-x} dx = (α+k)!`.
pub fn moment_exact(k: usize, alpha: u32) -> Rational {
    Rational::from_integer(factorial(k as u64 + alpha as u64))
}

/// `m_k = Γ(α+k+1)` in the parameter's mode.
pub fn laguerre_moment(k: usize, alpha: &LaguerreParam) -> Result<Value> {
    match alpha {
        LaguerreParam::Integer(a) => Ok(Value::Exact(moment_exact(k, *a))),
        LaguerreParam::Real(a) => {
            LaguerreParam::real(*a)?;
            Ok(Value::Float(ln_gamma(*a + k as f64 + 1.0).exp()))
        }
    }
}

/// Values `L^α_0(x), …, L^α_n(x)` of the monic family, exactly.
pub fn monic_values(alpha: u32, x: &Rational, n: usize) -> Vec<Rational> {
    let a = int(alpha as i64);
    let mut out = Vec::with_capacity(n + 1);
    out.push(Rational::one());
    if n == 0 {
        return out;
    }
    out.push(x - (&a + Rational::one()));
    for k in 1..n {
        let kr = int(k as i64);
        let shift = int(2 * k as i64 + 1) + &a;
        let next = (x - shift) * &out[k] - &kr * (&kr + &a) * &out[k - 1];
        out.push(next);
    }
    out
}

/// Values of the k-th derivatives `(L^α_i)^{(k)}(x)` for i = 0..=n, using
/// `(L^α_i)' = i L^{α+1}_{i-1}`.
pub fn monic_derivative_values(alpha: u32, k: usize, x: &Rational, n: usize) -> Vec<Rational> {
    if k == 0 {
        return monic_values(alpha, x, n);
    }
    let mut out = vec![Rational::zero(); n + 1];
    if n < k {
        return out;
    }
    let shifted = monic_values(alpha + k as u32, x, n - k);
    for i in k..=n {
        let f = Rational::from_integer(falling_factorial(i as u64, k as u64));
        out[i] = f * &shifted[i - k];
    }
    out
}

/// Exact value of the classical `L^{(α)}_n(x)`.
pub fn classical_value_exact(n: usize, alpha: u32, x: &Rational) -> Rational {
    let monic = monic_values(alpha, x, n).pop().expect("nonempty");
    let sign = if n % 2 == 0 { 1 } else { -1 };
    monic * Rational::new(BigInt::from(sign), factorial(n as u64))
}

/// Classical `L^{(α)}_n(z)` by the recurrence
/// `(k+1) L_{k+1} = (2k+α+1-z) L_k - (k+α) L_{k-1}`.
pub fn classical_value(n: usize, alpha: f64, z: Complex64) -> Complex64 {
    let mut prev = Complex64::zero();
    let mut cur = Complex64::one();
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + alpha + 1.0 - z) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn off_cut(z: Complex64) -> Result<()> {
    if z.im == 0.0 && z.re >= 0.0 {
        return Err(Error::OnCut(z.to_string()));
    }
    Ok(())
}

/// Leading term (C₀ ≡ 1) of Perron's outer asymptotics of `L^{(α)}_n(z)`
/// off the cut `[0, ∞)`. Square roots and powers use the principal branch
/// of `-z`.
pub fn perron_leading(n: usize, alpha: f64, z: Complex64) -> Result<Complex64> {
    off_cut(z)?;
    let nf = n as f64;
    let mz = -z;
    let sqrt_mz = mz.sqrt();
    let numer = (z / 2.0).exp()
        * nf.powf(alpha / 2.0 - 0.25)
        * (2.0 * nf.sqrt() * sqrt_mz).exp();
    let denom = 2.0 * std::f64::consts::PI.sqrt() * mz.powf(alpha / 2.0 + 0.25);
    Ok(numer / denom)
}
