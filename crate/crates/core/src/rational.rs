//! Exact rational helpers on top of `num_rational::BigRational`.
//!
//! `BigRational` already keeps values in lowest terms with a positive
//! denominator, so equality is canonical-form equality.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p/q"` or `"p"` (no decimal point, no exponent).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(s.to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// n (n-1) ... (n-k+1); zero when k > n.
pub fn falling_factorial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    ((n - k + 1)..=n).fold(BigInt::one(), |acc, v| acc * v)
}

/// log2 of a big unsigned integer; `-inf` for zero.
pub fn log2_biguint(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return v.to_f64().unwrap_or(0.0).log2();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().unwrap_or(1.0);
    top.log2() + shift as f64
}

pub fn log2_abs_int(v: &BigInt) -> f64 {
    log2_biguint(v.magnitude())
}

/// log2 |r|; `-inf` for zero.
pub fn log2_abs(r: &Rational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    log2_abs_int(r.numer()) - log2_abs_int(r.denom())
}

/// Conversion to `f64` that saturates instead of failing.
pub fn to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let l = log2_abs(r);
    let mag = if l.is_finite() { l.exp2() } else { 0.0 };
    if r.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Split a big integer into `(mantissa, exponent)` with `v ≈ mantissa · 2^exponent`
/// and `|mantissa| < 2^63`.
pub fn split_big(v: &BigInt) -> (f64, i64) {
    let bits = v.bits();
    if bits <= 62 {
        return (v.to_f64().unwrap_or(0.0), 0);
    }
    let shift = bits - 62;
    let top = v.magnitude() >> shift;
    let m = top.to_f64().unwrap_or(0.0);
    let m = if v.sign() == Sign::Minus { -m } else { m };
    (m, shift as i64)
}

/// Exact dyadic value of a finite `f64` as `(mantissa, exponent)` with
/// `x = mantissa · 2^exponent`.
pub fn dyadic(x: f64) -> (BigInt, i64) {
    if x == 0.0 {
        return (BigInt::zero(), 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mut m, mut e) = if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_bits - 1075)
    };
    while m & 1 == 0 {
        m >>= 1;
        e += 1;
    }
    (BigInt::from(sign) * BigInt::from(m), e)
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5");
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(falling_factorial(5, 2), BigInt::from(20));
        assert_eq!(falling_factorial(2, 3), BigInt::zero());
        assert_eq!(falling_factorial(4, 0), BigInt::one());
    }

    #[test]
    fn dyadic_is_exact() {
        for x in [1.0, -0.75, std::f64::consts::PI, 1e-300, 6.02e23] {
            let (m, e) = dyadic(x);
            let scale = Rational::from_integer(BigInt::one() << e.unsigned_abs());
            let back = Rational::from_integer(m);
            let back = if e >= 0 { back * scale } else { back / scale };
            assert_eq!(Some(back), Rational::from_float(x));
        }
    }

    #[test]
    fn log2_of_huge_values() {
        let big = Rational::from_integer(factorial(300));
        let expected: f64 = (1..=300).map(|k| (k as f64).log2()).sum();
        assert!((log2_abs(&big) - expected).abs() < 1e-9);
        assert!(to_f64(&big).is_infinite() || to_f64(&big) > 1e300);
    }
}
