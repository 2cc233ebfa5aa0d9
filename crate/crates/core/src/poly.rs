//! Dense univariate polynomials over an exact or floating coefficient domain.
//!
//! The domain is fixed by the type parameter: `Poly<Rational>` is exact and
//! `Poly<f64>` is floating point. Mixing the two is a type error; the
//! runtime-tagged [`DynPoly`] reports a [`Error::DomainMismatch`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{falling_factorial, format_rational, parse_rational, to_f64, Rational};

/// A coefficient field.
pub trait Coeff:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Whether arithmetic in this domain is exact.
    const EXACT: bool;

    fn from_rational(r: &Rational) -> Self;
    fn from_int(v: &BigInt) -> Self;
    fn to_f64(&self) -> f64;
    fn abs_val(&self) -> Self;
}

impl Coeff for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn from_int(v: &BigInt) -> Self {
        Rational::from_integer(v.clone())
    }
    fn to_f64(&self) -> f64 {
        to_f64(self)
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
}

impl Coeff for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        to_f64(r)
    }
    fn from_int(v: &BigInt) -> Self {
        to_f64(&Rational::from_integer(v.clone()))
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
}

/// Dense polynomial, coefficients in ascending degree.
///
/// The zero polynomial has an empty coefficient list; otherwise the leading
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type QPoly = Poly<Rational>;

impl<T: Coeff> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Poly::monomial(1)
    }

    pub fn monomial(k: usize) -> Self {
        let mut c = vec![T::zero(); k + 1];
        c[k] = T::one();
        Poly { coeffs: c }
    }

    /// Monic polynomial `∏ (x - r)`.
    pub fn from_roots(roots: &[T]) -> Self {
        roots.iter().fold(Poly::one(), |acc, r| {
            acc.mul_linear(r)
        })
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// k-th derivative; zero when k exceeds the degree.
    pub fn derivative(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        if k >= self.coeffs.len() {
            return Poly::zero();
        }
        let coeffs = (k..self.coeffs.len())
            .map(|i| {
                let f = T::from_int(&falling_factorial(i as u64, k as u64));
                f * self.coeffs[i].clone()
            })
            .collect();
        Poly::new(coeffs)
    }

    pub fn scale(&self, s: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// `self · (x - r)`.
    pub fn mul_linear(&self, r: &T) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] = out[i + 1].clone() + c.clone();
            out[i] = out[i].clone() - c.clone() * r.clone();
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = T::one() / l.clone();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = rem[i + dd].clone() / lead.clone();
            if !q.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].clone() - q.clone() * dc.clone();
                }
            }
            rem[i + dd] = T::zero();
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn to_f64(&self) -> Poly<f64> {
        Poly::new(self.coeffs.iter().map(Coeff::to_f64).collect())
    }
}

impl Poly<Rational> {
    /// Multiply by the common denominator and divide by the content, so the
    /// result has coprime integer coefficients and a positive leading term.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        if self.is_zero() {
            return Poly::zero();
        }
        let den = crate::rational::common_denominator(self.coeffs.iter());
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if ints.last().is_some_and(|l| l.is_negative()) {
            g = -g;
        }
        Poly::new(
            ints.into_iter()
                .map(|v| Rational::from_integer(v / &g))
                .collect(),
        )
    }

    /// Coefficients as exact strings, ascending degree.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

/// A scalar tagged with its coefficient domain.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => to_f64(r),
            Value::Float(v) => *v,
        }
    }
}

/// Binary operations accepted by [`DynPoly::arith`].
#[derive(Clone, Debug, PartialEq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Runtime-tagged polynomial, as read from or written to text.
#[derive(Clone, Debug, PartialEq)]
pub enum DynPoly {
    Exact(Poly<Rational>),
    Float(Poly<f64>),
}

impl DynPoly {
    pub fn eval(&self, x: &Value) -> Result<Value> {
        match (self, x) {
            (DynPoly::Exact(p), Value::Exact(v)) => Ok(Value::Exact(p.eval(v))),
            (DynPoly::Float(p), Value::Float(v)) => Ok(Value::Float(p.eval(v))),
            (DynPoly::Exact(_), Value::Float(_)) => Err(Error::DomainMismatch(
                "exact polynomial evaluated at a floating point argument",
            )),
            (DynPoly::Float(_), Value::Exact(_)) => Err(Error::DomainMismatch(
                "floating point polynomial evaluated at an exact argument",
            )),
        }
    }

    pub fn arith(&self, other: &DynPoly, op: PolyOp) -> Result<DynPoly> {
        fn go<T: Coeff>(a: &Poly<T>, b: &Poly<T>, op: PolyOp) -> Poly<T> {
            match op {
                PolyOp::Add => a + b,
                PolyOp::Sub => a - b,
                PolyOp::Mul => a * b,
            }
        }
        match (self, other) {
            (DynPoly::Exact(a), DynPoly::Exact(b)) => Ok(DynPoly::Exact(go(a, b, op))),
            (DynPoly::Float(a), DynPoly::Float(b)) => Ok(DynPoly::Float(go(a, b, op))),
            _ => Err(Error::DomainMismatch("mixed exact and floating point operands")),
        }
    }

    pub fn scale(&self, s: &Value) -> Result<DynPoly> {
        match (self, s) {
            (DynPoly::Exact(p), Value::Exact(v)) => Ok(DynPoly::Exact(p.scale(v))),
            (DynPoly::Float(p), Value::Float(v)) => Ok(DynPoly::Float(p.scale(v))),
            _ => Err(Error::DomainMismatch("scale factor from the other domain")),
        }
    }

    /// Coefficient strings, ascending degree. Exact coefficients use `p/q`
    /// form; floats use 17 significant digits.
    pub fn to_strings(&self) -> Vec<String> {
        match self {
            DynPoly::Exact(p) => p.to_strings(),
            DynPoly::Float(p) => p.coeffs().iter().map(|c| format_float(*c)).collect(),
        }
    }

    /// Inverse of [`DynPoly::to_strings`]. The list is exact when every entry
    /// parses as a rational.
    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<DynPoly> {
        let exact: Result<Vec<Rational>> = items.iter().map(|s| parse_rational(s.as_ref())).collect();
        if let Ok(c) = exact {
            return Ok(DynPoly::Exact(Poly::new(c)));
        }
        let floats: std::result::Result<Vec<f64>, _> =
            items.iter().map(|s| s.as_ref().trim().parse::<f64>()).collect();
        floats
            .map(|c| DynPoly::Float(Poly::new(c)))
            .map_err(|_| Error::Parse(items.iter().map(|s| s.as_ref()).collect::<Vec<_>>().join(",")))
    }
}

/// Fixed 17-significant-digit float formatting used in all text output.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}
