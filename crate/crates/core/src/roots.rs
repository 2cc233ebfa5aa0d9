//! Simultaneous complex root finding (Aberth–Ehrlich).
//!
//! Two evaluators drive the same iteration. [`Poly<f64>`] uses complex
//! Horner in double precision. [`ExactEvaluator`] evaluates an exact
//! rational polynomial *exactly* at the dyadic point represented by each
//! `f64` iterate, so catastrophic cancellation in the monomial basis never
//! reaches the Newton correction; only the final quotient is rounded.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{common_denominator, dyadic, log2_abs, log2_abs_int, split_big, Rational};

/// Iteration budget.
pub const MAX_ITERATIONS: usize = 500;
/// Accepted relative residual |p(ξ)| / Σ|a_k||ξ|^k at the end of the budget.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Outcome of evaluating the Newton correction at a point.
#[derive(Clone, Copy, Debug)]
pub enum Newton {
    /// p(z) == 0 exactly.
    Root,
    /// p(z) / p'(z).
    Step(Complex64),
}

/// What the Aberth iteration needs from a polynomial.
pub trait RootEvaluator {
    fn degree(&self) -> usize;
    /// log2 |a_k| for k = 0..=degree (`-inf` for zero coefficients).
    fn log2_coeffs(&self) -> Vec<f64>;
    fn newton(&self, z: Complex64) -> Newton;
    /// |p(z)| / Σ |a_k| |z|^k.
    fn relative_residual(&self, z: Complex64) -> f64;
}

fn horner_c(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::zero(), |acc, &c| acc * z + c)
}

impl RootEvaluator for Poly<f64> {
    fn degree(&self) -> usize {
        Poly::degree(self).unwrap_or(0)
    }

    fn log2_coeffs(&self) -> Vec<f64> {
        self.coeffs().iter().map(|c| c.abs().log2()).collect()
    }

    fn newton(&self, z: Complex64) -> Newton {
        let p = horner_c(self.coeffs(), z);
        if p.is_zero() {
            return Newton::Root;
        }
        let d = self.derivative(1);
        let dp = horner_c(d.coeffs(), z);
        Newton::Step(p / dp)
    }

    fn relative_residual(&self, z: Complex64) -> f64 {
        let p = horner_c(self.coeffs(), z);
        let abs: Vec<f64> = self.coeffs().iter().map(|c| c.abs()).collect();
        let scale = abs.iter().rev().fold(0.0, |acc, &c| acc * z.norm() + c);
        if scale == 0.0 {
            0.0
        } else {
            p.norm() / scale
        }
    }
}

/// Exact evaluation of a rational polynomial at dyadic complex points.
pub struct ExactEvaluator {
    /// Integer coefficients `a_k · D`.
    ints: Vec<BigInt>,
    /// Integer coefficients of the derivative, `k a_k · D`.
    dints: Vec<BigInt>,
    log2_den: f64,
    log2_coeffs: Vec<f64>,
}

/// A Gaussian integer.
#[derive(Clone)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl ExactEvaluator {
    pub fn new(p: &Poly<Rational>) -> Self {
        let den = common_denominator(p.coeffs().iter());
        let dr = Rational::from_integer(den.clone());
        let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &dr).to_integer()).collect();
        let dints = ints
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * BigInt::from(k))
            .collect();
        ExactEvaluator {
            log2_coeffs: p.coeffs().iter().map(log2_abs).collect(),
            log2_den: log2_abs_int(&den),
            ints,
            dints,
        }
    }

    /// Writes z = Z / 2^s with Gaussian integer Z and s ≥ 0.
    fn split_point(z: Complex64) -> (GInt, u64) {
        let (mr, er) = dyadic(z.re);
        let (mi, ei) = dyadic(z.im);
        let e = match (mr.is_zero(), mi.is_zero()) {
            (true, true) => 0,
            (true, false) => ei,
            (false, true) => er,
            (false, false) => er.min(ei),
        };
        let lift = |m: BigInt, ex: i64| -> BigInt {
            if m.is_zero() {
                m
            } else {
                m << ((ex - e) as u64)
            }
        };
        let (re, im) = (lift(mr, er), lift(mi, ei));
        if e >= 0 {
            (GInt { re: re << (e as u64), im: im << (e as u64) }, 0)
        } else {
            (GInt { re, im }, (-e) as u64)
        }
    }

    /// Returns `2^{s·deg} · Σ c_k (Z/2^s)^k` as a Gaussian integer.
    fn horner(coeffs: &[BigInt], z: &GInt, s: u64) -> GInt {
        let n = coeffs.len();
        let mut acc = GInt {
            re: coeffs[n - 1].clone(),
            im: BigInt::zero(),
        };
        for (j, c) in coeffs.iter().rev().skip(1).enumerate() {
            let re = &acc.re * &z.re - &acc.im * &z.im;
            let im = &acc.re * &z.im + &acc.im * &z.re;
            let shift = s * (j as u64 + 1);
            acc = GInt {
                re: re + (c << shift),
                im,
            };
        }
        acc
    }

    /// Sign of p at a finite real point, evaluated exactly.
    pub fn sign_at(&self, x: f64) -> i8 {
        let (z, s) = Self::split_point(Complex64::new(x, 0.0));
        match Self::horner(&self.ints, &z, s).re.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    fn to_complex_scaled(v: &GInt) -> (Complex64, i64) {
        let bits = v.re.bits().max(v.im.bits());
        if bits <= 62 {
            return (
                Complex64::new(v.re.to_f64().unwrap_or(0.0), v.im.to_f64().unwrap_or(0.0)),
                0,
            );
        }
        let shift = bits - 62;
        let re = (&v.re >> shift).to_f64().unwrap_or(0.0);
        let im = (&v.im >> shift).to_f64().unwrap_or(0.0);
        (Complex64::new(re, im), shift as i64)
    }
}

fn ldexp(v: Complex64, e: i64) -> Complex64 {
    let e = e.clamp(-2000, 2000) as i32;
    // Split the scaling so intermediate powers stay finite.
    let half = e / 2;
    v * 2f64.powi(half) * 2f64.powi(e - half)
}

impl RootEvaluator for ExactEvaluator {
    fn degree(&self) -> usize {
        self.ints.len().saturating_sub(1)
    }

    fn log2_coeffs(&self) -> Vec<f64> {
        self.log2_coeffs.clone()
    }

    fn newton(&self, z: Complex64) -> Newton {
        let (zz, s) = Self::split_point(z);
        let p = Self::horner(&self.ints, &zz, s);
        if p.re.is_zero() && p.im.is_zero() {
            return Newton::Root;
        }
        // P = 2^{s n} D p(z), Q = 2^{s (n-1)} D p'(z)
        let q = Self::horner(&self.dints, &zz, s);
        let (pc, pe) = Self::to_complex_scaled(&p);
        let (qc, qe) = Self::to_complex_scaled(&q);
        Newton::Step(ldexp(pc / qc, pe - qe - s as i64))
    }

    fn relative_residual(&self, z: Complex64) -> f64 {
        let (zz, s) = Self::split_point(z);
        let p = Self::horner(&self.ints, &zz, s);
        if p.re.is_zero() && p.im.is_zero() {
            return 0.0;
        }
        let n = self.degree() as f64;
        let (mr, er) = split_big(&p.re);
        let (mi, ei) = split_big(&p.im);
        let e = er.max(ei);
        let mag = Complex64::new(mr * 2f64.powi((er - e) as i32), mi * 2f64.powi((ei - e) as i32)).norm();
        let log_p = mag.log2() + e as f64 - (s as f64) * n - self.log2_den;
        let lz = z.norm().log2();
        let log_scale = log_sum_exp2(
            self.log2_coeffs
                .iter()
                .enumerate()
                .map(|(k, &l)| l + k as f64 * lz),
        );
        (log_p - log_scale).exp2()
    }
}

fn log_sum_exp2(values: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = values.filter(|x| x.is_finite()).collect();
    let m = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + v.iter().map(|x| (x - m).exp2()).sum::<f64>().log2()
}

/// Starting points on circles read off the upper convex hull of
/// `(k, log2 |a_k|)`: an edge from i to j contributes j − i points on the
/// circle of radius `2^{(l_i − l_j)/(j − i)}`.
fn initial_points(log_coeffs: &[f64]) -> Vec<Complex64> {
    let pts: Vec<(usize, f64)> = log_coeffs
        .iter()
        .enumerate()
        .filter(|(_, l)| l.is_finite())
        .map(|(k, &l)| (k, l))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::new();
    for (e, w) in hull.windows(2).enumerate() {
        let count = w[1].0 - w[0].0;
        let radius = ((w[0].1 - w[1].1) / count as f64).exp2();
        let offset = 2.0 * std::f64::consts::PI * e as f64 / hull.len() as f64 + 0.4;
        for k in 0..count {
            let th = 2.0 * std::f64::consts::PI * k as f64 / count as f64 + offset;
            out.push(Complex64::from_polar(radius, th));
        }
    }
    out
}

/// Aberth–Ehrlich iteration started from the Newton polygon circles.
pub fn aberth<E: RootEvaluator>(eval: &E) -> Result<Vec<Complex64>> {
    let n = eval.degree();
    let logs = eval.log2_coeffs();
    // Exact zero roots first: strip leading zero coefficients.
    let zeros = logs.iter().take_while(|l| !l.is_finite()).count();
    let rest = n - zeros;
    let mut roots = vec![Complex64::zero(); zeros];
    if rest == 0 {
        return Ok(roots);
    }
    let mut z = initial_points(&logs[zeros..]);
    let mut done = vec![false; rest];
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS && done.iter().any(|d| !d) {
        iterations += 1;
        for i in 0..rest {
            if done[i] {
                continue;
            }
            let step = match eval.newton(z[i]) {
                Newton::Root => {
                    done[i] = true;
                    continue;
                }
                Newton::Step(s) => s,
            };
            let sum: Complex64 = (0..rest)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.is_zero() {
                        Complex64::zero()
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let w = step / (Complex64::new(1.0, 0.0) - step * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() <= 4.0 * f64::EPSILON * z[i].norm() || w.norm() < 1e-300 {
                done[i] = true;
            }
        }
    }
    if done.iter().any(|d| !d) {
        let ok = z
            .iter()
            .all(|&r| eval.relative_residual(r) <= RESIDUAL_TOL);
        if !ok {
            roots.extend(z);
            return Err(Error::NoConvergence {
                iterations,
                best: roots,
            });
        }
    }
    roots.extend(z);
    Ok(roots)
}

/// A complex number `m · 2^e` with a separate exponent, for sums whose
/// terms overflow `f64`.
#[derive(Clone, Copy, Debug)]
struct Scaled {
    m: Complex64,
    e: i64,
}

impl Scaled {
    const ZERO: Scaled = Scaled {
        m: Complex64::new(0.0, 0.0),
        e: 0,
    };

    fn new(m: Complex64, e: i64) -> Self {
        let big = m.re.abs().max(m.im.abs());
        if big == 0.0 || !big.is_finite() {
            return Scaled { m, e: 0 };
        }
        let k = big.log2().floor() as i64;
        Scaled {
            m: ldexp(m, -k),
            e: e + k,
        }
    }

    fn from_rational(r: &Rational) -> Self {
        let (mn, en) = split_big(r.numer());
        let (md, ed) = split_big(r.denom());
        Scaled::new(Complex64::new(mn / md, 0.0), en - ed)
    }

    fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    fn mul(self, m: Complex64, e: i64) -> Self {
        Scaled::new(self.m * m, self.e + e)
    }

    fn add(self, o: Scaled) -> Self {
        if o.is_zero() {
            return self;
        }
        if self.is_zero() {
            return o;
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        Scaled::new(hi.m + ldexp(lo.m, lo.e - hi.e), hi.e)
    }

    fn log2_norm(&self) -> f64 {
        self.m.norm().log2() + self.e as f64
    }
}

/// A polynomial `Σ γ_i L^α_i` in the monic Laguerre basis, evaluated by the
/// three-term recurrence with exponent tracking. The monomial coefficients
/// of the same polynomial supply the starting radius and the residual scale.
pub struct LaguerreSeries {
    alpha: f64,
    coeffs: Vec<Scaled>,
    log2_coeffs: Vec<f64>,
}

impl LaguerreSeries {
    pub fn new(coeffs: &[Rational], alpha: u32, monomial: &Poly<Rational>) -> Self {
        LaguerreSeries {
            alpha: alpha as f64,
            coeffs: coeffs.iter().map(Scaled::from_rational).collect(),
            log2_coeffs: monomial.coeffs().iter().map(log2_abs).collect(),
        }
    }

    /// `p(z)` and `p'(z)`.
    fn eval(&self, z: Complex64) -> (Scaled, Scaled) {
        const LIMIT: f64 = 1e150;
        let (mut l0, mut l1) = (Complex64::zero(), Complex64::new(1.0, 0.0));
        let (mut d0, mut d1) = (Complex64::zero(), Complex64::zero());
        let mut e = 0i64;
        let mut p = Scaled::ZERO.add(self.coeffs[0].mul(l1, e));
        let mut dp = Scaled::ZERO;
        for k in 0..self.coeffs.len() - 1 {
            let kf = k as f64;
            let shift = z - (2.0 * kf + self.alpha + 1.0);
            let b = kf * (kf + self.alpha);
            let l2 = shift * l1 - b * l0;
            let d2 = l1 + shift * d1 - b * d0;
            (l0, l1, d0, d1) = (l1, l2, d1, d2);
            let big = l1.norm().max(d1.norm());
            if big > LIMIT {
                let k = big.log2().floor() as i64;
                l0 = ldexp(l0, -k);
                l1 = ldexp(l1, -k);
                d0 = ldexp(d0, -k);
                d1 = ldexp(d1, -k);
                e += k;
            }
            let g = self.coeffs[k + 1];
            if !g.is_zero() {
                p = p.add(g.mul(l1, e));
                dp = dp.add(g.mul(d1, e));
            }
        }
        (p, dp)
    }
}

impl RootEvaluator for LaguerreSeries {
    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn log2_coeffs(&self) -> Vec<f64> {
        self.log2_coeffs.clone()
    }

    fn newton(&self, z: Complex64) -> Newton {
        let (p, dp) = self.eval(z);
        if p.is_zero() {
            return Newton::Root;
        }
        Newton::Step(ldexp(p.m / dp.m, p.e - dp.e))
    }

    fn relative_residual(&self, z: Complex64) -> f64 {
        let (p, _) = self.eval(z);
        if p.is_zero() {
            return 0.0;
        }
        let lz = z.norm().log2();
        let scale = log_sum_exp2(self.log2_coeffs.iter().enumerate().map(|(k, &l)| l + k as f64 * lz));
        (p.log2_norm() - scale).exp2()
    }
}

/// All complex roots of a floating point polynomial.
pub fn all_roots_float(p: &Poly<f64>) -> Result<Vec<Complex64>> {
    match p.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::DegreeTooLow(1)),
        Some(_) => aberth(p),
    }
}

/// All complex roots of `Σ γ_i L^α_i`, given with its monomial form.
pub fn all_roots_laguerre_series(coeffs: &[Rational], alpha: u32, monomial: &Poly<Rational>) -> Result<Vec<Complex64>> {
    match monomial.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::DegreeTooLow(1)),
        Some(_) => aberth(&LaguerreSeries::new(coeffs, alpha, monomial)),
    }
}

/// All complex roots of an exact polynomial, iterating in `f64` with exact
/// evaluation at every iterate.
pub fn all_roots_exact(p: &Poly<Rational>) -> Result<Vec<Complex64>> {
    match p.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::DegreeTooLow(1)),
        Some(_) => aberth(&ExactEvaluator::new(p)),
    }
}

/// Sort roots by real part, then imaginary part.
pub fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn sqrt_two() {
        let p = Poly::new(vec![-2.0, 0.0, 1.0]);
        let mut r = all_roots_float(&p).unwrap();
        sort_roots(&mut r);
        assert!((r[0].re + 2f64.sqrt()).abs() < 1e-8 && r[0].im.abs() < 1e-8);
        assert!((r[1].re - 2f64.sqrt()).abs() < 1e-8 && r[1].im.abs() < 1e-8);
    }

    #[test]
    fn cube_has_triple_zero() {
        let p = Poly::new(vec![0.0, 0.0, 0.0, 1.0]);
        let r = all_roots_float(&p).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn exact_evaluator_agrees() {
        let p = Poly::new(vec![int(6), int(-5), int(1)]);
        let mut r = all_roots_exact(&p).unwrap();
        sort_roots(&mut r);
        assert!((r[0].re - 2.0).abs() < 1e-12);
        assert!((r[1].re - 3.0).abs() < 1e-12);
    }

    #[test]
    fn exact_newton_step_value() {
        // p = x^2 - 2 at z = 1 + i: p/p' = (2i - 2) / (2 + 2i) = i
        let p = Poly::new(vec![int(-2), int(0), int(1)]);
        let e = ExactEvaluator::new(&p);
        match e.newton(Complex64::new(1.0, 1.0)) {
            Newton::Step(s) => assert!((s - Complex64::new(0.0, 1.0)).norm() < 1e-15),
            Newton::Root => panic!(),
        }
    }

    #[test]
    fn constant_rejected() {
        assert!(all_roots_float(&Poly::new(vec![3.0])).is_err());
        assert!(all_roots_float(&Poly::<f64>::zero()).is_err());
    }
}
