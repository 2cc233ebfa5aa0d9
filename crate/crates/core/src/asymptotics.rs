//! Outer relative asymptotics of Laguerre–Sobolev polynomials: closed-form
//! limits and exact finite-n trajectories toward them.
//!
//! All finite-n quantities are computed in exact arithmetic and converted to
//! `f64` once, at the end. Polynomials are monic throughout.

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laguerre::{classical_value_exact, monic_values};
use crate::poly::{format_float, QPoly};
use crate::rational::{format_rational, to_f64, Rational};
use crate::sobolev::kernel::kernel_eval;
use crate::sobolev::{connection_form, SobolevSpec};

fn require_off_cut(x: Complex64) -> Result<()> {
    if x.im == 0.0 && x.re >= 0.0 {
        return Err(Error::OnCut(x.to_string()));
    }
    Ok(())
}

fn sqrt_abs(c: &Rational) -> f64 {
    to_f64(&c.abs()).sqrt()
}

fn negative_points(cs: &[Rational]) -> Result<Vec<f64>> {
    cs.iter()
        .map(|c| {
            if c.is_negative() {
                Ok(sqrt_abs(c))
            } else {
                Err(Error::Precondition(format!("mass point {} is not negative", format_rational(c))))
            }
        })
        .collect()
}

/// `Π (√(−x) − √|c_j|) / (√(−x) + √|c_j|)` with the principal root.
pub fn limit_product(x: Complex64, cs: &[Rational]) -> Result<Complex64> {
    require_off_cut(x)?;
    let s = (-x).sqrt();
    Ok(negative_points(cs)?
        .into_iter()
        .fold(Complex64::one(), |acc, t| acc * (s - t) / (s + t)))
}

/// Closed-form limits `P_j(x) = −2t_j/(√(−x) + t_j) · Π_{l≠j} (t_j + t_l)/(t_j − t_l)`
/// with `t_j = √|c_j|`.
pub fn pj_limit(x: Complex64, cs: &[Rational]) -> Result<Vec<Complex64>> {
    require_off_cut(x)?;
    for (i, a) in cs.iter().enumerate() {
        if cs[i + 1..].iter().any(|b| b.abs() == a.abs()) {
            return Err(Error::Precondition(format!("coincident |c| = {}", format_rational(&a.abs()))));
        }
    }
    let ts = negative_points(cs)?;
    let s = (-x).sqrt();
    Ok(ts
        .iter()
        .enumerate()
        .map(|(j, &tj)| {
            let prod: f64 = ts
                .iter()
                .enumerate()
                .filter(|(l, _)| *l != j)
                .map(|(_, &tl)| (tj + tl) / (tj - tl))
                .product();
            -2.0 * tj / (s + tj) * prod
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioRow {
    pub n: usize,
    pub ratio: Complex64,
    pub limit: Complex64,
    pub abs_error: f64,
}

/// A sampled trajectory of a ratio toward its limit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioReport {
    pub x: Complex64,
    pub rows: Vec<RatioRow>,
    /// Slope of `log(error)` against `log(n)`.
    pub fitted_exponent: Option<f64>,
}

impl RatioReport {
    pub const CSV_HEADER: &'static str = "n,ratio_re,ratio_im,limit_re,limit_im,abs_error";

    fn new(x: Complex64, rows: Vec<RatioRow>) -> Self {
        let fitted_exponent = fit_exponent(&rows);
        RatioReport {
            x,
            rows,
            fitted_exponent,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.n,
                format_float(r.ratio.re),
                format_float(r.ratio.im),
                format_float(r.limit.re),
                format_float(r.limit.im),
                format_float(r.abs_error)
            ));
        }
        out
    }

    pub fn errors(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.abs_error).collect()
    }

    pub fn errors_strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].abs_error < w[0].abs_error)
    }
}

/// Least-squares slope of `log e` on `log n` over rows with positive error.
pub fn fit_exponent(rows: &[RatioRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.abs_error > 0.0 && r.n > 0)
        .map(|r| ((r.n as f64).ln(), r.abs_error.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

fn require_shape(spec: &SobolevSpec, x: &Rational) -> Result<u32> {
    let alpha = spec.require_laguerre()?;
    if !spec.one_order_per_point() {
        return Err(Error::Precondition("each mass point must carry a single derivative order".into()));
    }
    if !x.is_negative() {
        return Err(Error::OnCut(format_rational(x)));
    }
    Ok(alpha)
}

fn mass_points(spec: &SobolevSpec) -> Vec<Rational> {
    spec.points().into_iter().map(|(c, _)| c).collect()
}

fn real(x: &Rational) -> Complex64 {
    Complex64::new(to_f64(x), 0.0)
}

fn row(n: usize, ratio: Complex64, limit: Complex64) -> RatioRow {
    RatioRow {
        n,
        ratio,
        limit,
        abs_error: (ratio - limit).norm(),
    }
}

/// `S_n^{(ν)}(x)` and `L_n^{(ν)}(x)` (monic), exactly.
fn derivative_pair(spec: &SobolevSpec, nu: usize, x: &Rational, n: usize) -> Result<(Rational, Rational)> {
    let form = connection_form(n, spec)?;
    let (l, parts) = form.pieces(nu, x);
    let s = parts.iter().fold(l.clone(), |acc, p| acc - p);
    Ok((s, l))
}

/// `S_n(x)/L^α_n(x)` for each n, against the limit product.
pub fn ratio_trajectory(spec: &SobolevSpec, x: &Rational, ns: &[usize]) -> Result<RatioReport> {
    derivative_ratio_trajectory(spec, 0, x, ns)
}

/// `S_n^{(ν)}(x)/(L^α_n)^{(ν)}(x)` for each n, against the limit product.
pub fn derivative_ratio_trajectory(spec: &SobolevSpec, nu: usize, x: &Rational, ns: &[usize]) -> Result<RatioReport> {
    require_shape(spec, x)?;
    let limit = limit_product(real(x), &mass_points(spec))?;
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let (s, l) = derivative_pair(spec, nu, x, n)?;
        if l.is_zero() {
            return Err(Error::DegreeTooLow(nu));
        }
        rows.push(row(n, real(&(s / l)), limit));
    }
    Ok(RatioReport::new(real(x), rows))
}

/// Exact `P_{n,j}(x)` together with the check of the linear system they
/// satisfy.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteP {
    pub n: usize,
    pub values: Vec<Rational>,
    /// `S_n(x)/L^α_n(x)`.
    pub ratio: Rational,
    /// `Σ_j a_{k,j} P_{n,j} + 1` for each k; all zero when consistent.
    pub residuals: Vec<Rational>,
}

impl FiniteP {
    pub fn residual_is_zero(&self) -> bool {
        self.residuals.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(to_f64).collect()
    }
}

/// `P_{n,j}(x) = −λ_j S_n^{(d_j)}(c_j) K_{n−1}^{(0,d_j)}(x, c_j) / L^α_n(x)`,
/// in the order of increasing `c_j`. Needs `n > max d_j` so that every
/// kernel factor is nonzero.
pub fn pj_finite_n(x: &Rational, spec: &SobolevSpec, n: usize) -> Result<FiniteP> {
    let alpha = require_shape(spec, x)?;
    if n <= spec.max_order() {
        return Err(Error::DegreeTooLow(spec.max_order() + 1));
    }
    let mut form = connection_form(n, spec)?;
    form.terms.sort_by(|a, b| a.c.cmp(&b.c));
    let (l, parts) = form.pieces(0, x);
    let values: Vec<Rational> = parts.iter().map(|p| -p / &l).collect();
    let ratio = values.iter().fold(Rational::one(), |acc, p| acc + p);

    // a_{k,j} = L_n(x) (δ_{kj}/λ_k + K^{(d_k,d_j)}(c_k,c_j)) / (L_n^{(d_k)}(c_k) K^{(0,d_j)}(x,c_j))
    let m = n - 1;
    let mut residuals = Vec::with_capacity(form.terms.len());
    for tk in &form.terms {
        let lk = crate::laguerre::monic_derivative_values(alpha, tk.order, &tk.c, n)[n].clone();
        let mut acc = Rational::one();
        for (j, tj) in form.terms.iter().enumerate() {
            let kx = kernel_eval(m, 0, tj.order, x, &tj.c, alpha).value;
            let kk = kernel_eval(m, tk.order, tj.order, &tk.c, &tj.c, alpha).value;
            let diag = if tk.c == tj.c { tk.lambda.recip() } else { Rational::zero() };
            let denom = &lk * &kx;
            if denom.is_zero() {
                return Err(Error::Singular("vanishing kernel in the finite-n system"));
            }
            acc += &l * (diag + kk) / denom * &values[j];
        }
        residuals.push(acc);
    }
    Ok(FiniteP {
        n,
        values,
        ratio,
        residuals,
    })
}

/// `P_{n,j}` against the closed-form limits for each n.
pub fn pj_trajectory(x: &Rational, spec: &SobolevSpec, ns: &[usize]) -> Result<Vec<RatioReport>> {
    let cs = mass_points(spec);
    let limits = pj_limit(real(x), &cs)?;
    let mut rows: Vec<Vec<RatioRow>> = vec![Vec::new(); cs.len()];
    for &n in ns {
        let p = pj_finite_n(x, spec, n)?;
        for (j, v) in p.values.iter().enumerate() {
            rows[j].push(row(n, real(v), limits[j]));
        }
    }
    Ok(rows.into_iter().map(|r| RatioReport::new(real(x), r)).collect())
}

/// Parameters of the three ratio families with shifted parameter and index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftParams {
    pub alpha: u32,
    pub beta: i64,
    pub k: i64,
    pub nu: usize,
}

/// The three ratio families
/// `S^{α+β}_{n+k}/(n^{k+β/2} L^α_n)`, `S^{α+β}_{n+k}/(n^{k+β/2} S^α_n)` and
/// `(S^α_n)^{(ν)}/(L^α_n)^{(ν)}`, with limits
/// `(−1)^k (√−x)^{−β} Π`, `(−1)^k (√−x)^{−β}` and `Π`.
pub fn corollary41_check(
    p: ShiftParams,
    spec: &SobolevSpec,
    x: &Rational,
    ns: &[usize],
) -> Result<[RatioReport; 3]> {
    let shifted_alpha = p.alpha as i64 + p.beta;
    if shifted_alpha < 0 {
        return Err(Error::InvalidAlpha(format!("alpha + beta = {shifted_alpha} must be a nonnegative integer")));
    }
    if ns.iter().any(|&n| (n as i64) + p.k < 0) {
        return Err(Error::Precondition("n + k must be nonnegative".into()));
    }
    let base = spec.with_alpha(p.alpha)?;
    let shifted = spec.with_alpha(shifted_alpha as u32)?;
    require_shape(&base, x)?;
    let xf = real(x);
    let prod = limit_product(xf, &mass_points(spec))?;
    let sign = if p.k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let scale = sign * (-xf).sqrt().powf(-(p.beta as f64));
    let (mut r1, mut r2) = (Vec::new(), Vec::new());
    for &n in ns {
        let m = (n as i64 + p.k) as usize;
        let s_shift = connection_form(m, &shifted)?.eval(x);
        let (s_base, l_base) = derivative_pair(&base, 0, x, n)?;
        let norm = (n as f64).powf(p.k as f64 + p.beta as f64 / 2.0);
        r1.push(row(n, real(&(&s_shift / &l_base)) / norm, scale * prod));
        r2.push(row(n, real(&(&s_shift / &s_base)) / norm, Complex64::from(scale)));
    }
    let r3 = derivative_ratio_trajectory(&base, p.nu, x, ns)?;
    Ok([RatioReport::new(xf, r1), RatioReport::new(xf, r2), r3])
}

/// `A_j = −2t_j Π_{l≠j} (t_j + t_l)/(t_j − t_l)`, so that
/// `Π (z − t_j)/(z + t_j) = 1 + Σ A_j/(z + t_j)`.
pub fn partial_fraction_coefficients(ts: &[Rational]) -> Result<Vec<Rational>> {
    for (i, t) in ts.iter().enumerate() {
        if !t.is_positive() {
            return Err(Error::Precondition(format!("t = {} is not positive", format_rational(t))));
        }
        if ts[i + 1..].contains(t) {
            return Err(Error::Precondition(format!("coincident t = {}", format_rational(t))));
        }
    }
    Ok(ts
        .iter()
        .enumerate()
        .map(|(j, tj)| {
            let two = Rational::from_integer(2.into());
            ts.iter()
                .enumerate()
                .filter(|(l, _)| *l != j)
                .fold(-two * tj, |acc, (_, tl)| acc * (tj + tl) / (tj - tl))
        })
        .collect())
}

/// Checks the decomposition by clearing denominators and comparing
/// coefficients: `Π (z − t_j) = Π (z + t_j) + Σ A_j Π_{l≠j} (z + t_l)`.
pub fn partial_fraction_check(ts: &[Rational]) -> Result<bool> {
    let a = partial_fraction_coefficients(ts)?;
    let lhs = ts.iter().fold(QPoly::one(), |acc, t| acc.mul_linear(t));
    let mut rhs = ts.iter().fold(QPoly::one(), |acc, t| acc.mul_linear(&-t));
    for (j, aj) in a.iter().enumerate() {
        let others = ts
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != j)
            .fold(QPoly::one(), |acc, (_, t)| acc.mul_linear(&-t));
        rhs = &rhs + &others.scale(aj);
    }
    Ok(lhs == rhs)
}

/// `K_{n−1}^{(i,j)}(x,y) n^{α−1/2} (√−x + √−y) / (L^{(α+i)}_n(x) L^{(α+j)}_n(y)) − (−1)^{i+j}`
/// with classical Laguerre polynomials in the denominator.
pub fn kernel_asymptotic_deviation(n: usize, i: usize, j: usize, x: &Rational, y: &Rational, alpha: u32) -> Result<f64> {
    if !x.is_negative() || !y.is_negative() {
        return Err(Error::OnCut(format!("({}, {})", format_rational(x), format_rational(y))));
    }
    if n == 0 {
        return Err(Error::DegreeTooLow(1));
    }
    let k = kernel_eval(n - 1, i, j, x, y, alpha).value;
    let lx = classical_value_exact(n, alpha + i as u32, x);
    let ly = classical_value_exact(n, alpha + j as u32, y);
    let core = to_f64(&(k / (lx * ly)));
    let nf = n as f64;
    let scale = nf.powf(alpha as f64 - 0.5) * (sqrt_abs(x) + sqrt_abs(y));
    let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(core * scale - sign)
}

/// `S_n(x) − L^α_n(x)(1 + Σ P_{n,j}(x))`, exactly.
pub fn finite_identity_defect(x: &Rational, spec: &SobolevSpec, n: usize, s: &QPoly) -> Result<Rational> {
    let alpha = require_shape(spec, x)?;
    let p = pj_finite_n(x, spec, n)?;
    let l = monic_values(alpha, x, n).pop().expect("nonempty");
    Ok(s.eval(x) - l * p.ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::sobolev::{sobolev_poly, MassTerm};

    fn single() -> SobolevSpec {
        SobolevSpec::laguerre(0, vec![MassTerm::new(int(-1), 0, int(1))]).unwrap()
    }

    #[test]
    fn limit_product_examples() {
        let x = Complex64::new(-4.0, 0.0);
        assert!((limit_product(x, &[int(-1)]).unwrap() - 1.0 / 3.0).norm() < 1e-15);
        assert_eq!(limit_product(x, &[]).unwrap(), Complex64::one());
        assert!(limit_product(Complex64::new(-1.0, 0.0), &[int(-1)]).unwrap().norm() < 1e-15);
        assert!(limit_product(Complex64::new(2.0, 0.0), &[int(-1)]).is_err());
    }

    #[test]
    fn pj_limit_examples() {
        let x = Complex64::new(-4.0, 0.0);
        let p = pj_limit(x, &[int(-1)]).unwrap();
        assert!((p[0] + 2.0 / 3.0).norm() < 1e-15);
        assert!(pj_limit(x, &[int(-2), int(-2)]).is_err());
        let cs = [int(-1), int(-3), ratio(-17, 2), int(-10)];
        let z = Complex64::new(-2.5, 0.75);
        let total: Complex64 = pj_limit(z, &cs).unwrap().iter().sum();
        assert!((Complex64::one() + total - limit_product(z, &cs).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn partial_fractions() {
        assert_eq!(partial_fraction_coefficients(&[int(1)]).unwrap(), vec![int(-2)]);
        assert!(partial_fraction_check(&[int(1)]).unwrap());
        assert!(partial_fraction_check(&[]).unwrap());
        assert!(partial_fraction_check(&[ratio(1, 3), int(2), ratio(7, 5), int(9)]).unwrap());
        assert!(partial_fraction_check(&[int(1), int(1)]).is_err());
    }

    #[test]
    fn no_masses_ratio_is_one() {
        let s = SobolevSpec::laguerre(1, vec![]).unwrap();
        let r = ratio_trajectory(&s, &int(-2), &[1, 5, 20]).unwrap();
        assert!(r.rows.iter().all(|row| row.ratio == Complex64::one() && row.abs_error == 0.0));
    }

    #[test]
    fn finite_p_system() {
        let s = SobolevSpec::laguerre(
            1,
            vec![MassTerm::new(int(-1), 0, int(1)), MassTerm::new(int(-4), 2, ratio(1, 2))],
        )
        .unwrap();
        let x = ratio(-5, 2);
        assert!(pj_finite_n(&x, &s, 2).is_err());
        for n in 3..=10 {
            let p = pj_finite_n(&x, &s, n).unwrap();
            assert!(p.residual_is_zero(), "n={n}");
            let sn: QPoly = sobolev_poly(n, &s).unwrap();
            assert!(finite_identity_defect(&x, &s, n, &sn).unwrap().is_zero());
        }
    }

    #[test]
    fn short_trajectory_improves() {
        let r = ratio_trajectory(&single(), &int(-4), &[4, 16, 64]).unwrap();
        assert!(r.errors_strictly_decreasing(), "{:?}", r.errors());
        assert!(r.to_csv().starts_with(RatioReport::CSV_HEADER));
    }
}
