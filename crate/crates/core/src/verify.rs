//! Finite-n checks of zero localization: sign changes inside the support
//! hull and attraction of zeros to the mass points.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ordering::is_sequentially_ordered;
use crate::poly::QPoly;
use crate::rational::{dyadic, format_rational, to_f64, Rational};
use crate::roots::{all_roots_exact, all_roots_laguerre_series, sort_roots, ExactEvaluator};
use crate::sobolev::{connection_form, construct, SobolevSpec};
use crate::sturm::sign_change_count;

/// Nearest root to one mass point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MassProximity {
    pub c: String,
    pub distance: f64,
    /// Roots within the attraction radius (zero when no radius was given).
    pub roots_within: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroReport {
    pub n: usize,
    pub d_star: usize,
    pub sign_changes_in_hull: usize,
    /// `n − d*`, possibly negative.
    pub bound: i64,
    pub pass: bool,
    /// Whether the inner product is sequentially ordered.
    pub hypothesis_holds: bool,
    pub roots: Vec<Complex64>,
    pub per_mass_nearest: Vec<MassProximity>,
    pub radius: Option<f64>,
    /// Roots with positive real part and `|Im| < 1e-6 (1 + |Re|)`.
    pub positive_real: usize,
    /// Largest distance from a root to `(0, ∞)`.
    pub max_distance_to_half_line: Option<f64>,
    /// Smallest pairwise distance between roots.
    pub min_separation: Option<f64>,
}

impl ZeroReport {
    pub const CSV_HEADER: &'static str = "n,d_star,sign_changes,bound,pass,hypothesis";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n, self.d_star, self.sign_changes_in_hull, self.bound, self.pass, self.hypothesis_holds
        )
    }
}

fn near_real_positive(z: &Complex64) -> bool {
    z.re > 0.0 && z.im.abs() < 1e-6 * (1.0 + z.re.abs())
}

fn distance_to_half_line(z: &Complex64) -> f64 {
    if z.re > 0.0 {
        z.im.abs()
    } else {
        z.norm()
    }
}

fn min_separation(roots: &[Complex64]) -> Option<f64> {
    let mut best: Option<f64> = None;
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            let d = (a - b).norm();
            best = Some(best.map_or(d, |v| v.min(d)));
        }
    }
    best
}

fn report(n: usize, spec: &SobolevSpec, changes: usize, hypothesis_holds: bool) -> ZeroReport {
    let bound = n as i64 - spec.d_star() as i64;
    ZeroReport {
        n,
        d_star: spec.d_star(),
        sign_changes_in_hull: changes,
        bound,
        pass: changes as i64 >= bound,
        hypothesis_holds,
        roots: Vec::new(),
        per_mass_nearest: Vec::new(),
        radius: None,
        positive_real: 0,
        max_distance_to_half_line: None,
        min_separation: None,
    }
}

/// Exact S_n and its complex zeros. Laguerre measures with integer α go
/// through the connection formula, whose Laguerre-basis form also drives a
/// stable evaluator for the root finder.
fn poly_and_roots(n: usize, spec: &SobolevSpec) -> Result<(QPoly, Vec<Complex64>)> {
    let (s, mut roots) = match spec.measure().laguerre_alpha() {
        Some(alpha) => {
            let form = connection_form(n, spec)?;
            let s = form.to_poly();
            let roots = if n == 0 {
                Vec::new()
            } else {
                all_roots_laguerre_series(&form.laguerre_coefficients(), alpha, &s)?
            };
            (s, roots)
        }
        None => {
            let s = construct(n, spec)?;
            let roots = if n == 0 { Vec::new() } else { all_roots_exact(&s)? };
            (s, roots)
        }
    };
    sort_roots(&mut roots);
    Ok((s, roots))
}

fn add_roots(report: &mut ZeroReport, spec: &SobolevSpec, roots: Vec<Complex64>, radius: Option<f64>) {
    report.per_mass_nearest = spec
        .points()
        .iter()
        .map(|(c, _)| {
            let cf = Complex64::new(to_f64(c), 0.0);
            let dists: Vec<f64> = roots.iter().map(|z| (z - cf).norm()).collect();
            MassProximity {
                c: format_rational(c),
                distance: dists.iter().copied().fold(f64::INFINITY, f64::min),
                roots_within: radius.map_or(0, |r| dists.iter().filter(|&&d| d < r).count()),
            }
        })
        .collect();
    report.radius = radius;
    report.positive_real = roots.iter().filter(|z| near_real_positive(z)).count();
    report.max_distance_to_half_line = roots.iter().map(distance_to_half_line).reduce(f64::max);
    report.min_separation = min_separation(&roots);
    report.roots = roots;
}

fn exact(x: f64) -> Rational {
    let (m, e) = dyadic(x);
    if e >= 0 {
        Rational::from_integer(m << (e as u64))
    } else {
        Rational::new(m, num_bigint::BigInt::from(1) << ((-e) as u64))
    }
}

/// Sign changes of `s` observed at exact points separating the near-real
/// approximate roots inside the hull interior. Every observed change
/// brackets a zero of odd multiplicity, so the count is a lower bound for
/// the Sturm count, and equal to it whenever the roots are separated.
pub fn witnessed_sign_changes(s: &QPoly, roots: &[Complex64], spec: &SobolevSpec) -> usize {
    let hull = spec.measure().hull();
    let (lo, hi) = match (hull.lo(), hull.hi()) {
        (Some(lo), Some(hi)) => (lo.clone(), hi.clone()),
        _ => return 0,
    };
    let inside = |x: f64| x.is_finite() && hull.interior_contains(&exact(x));
    let mut xs: Vec<f64> = roots
        .iter()
        .filter(|z| z.im.abs() < 1e-6 * (1.0 + z.re.abs()) && inside(z.re))
        .map(|z| z.re)
        .collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    if xs.is_empty() {
        return 0;
    }
    let mut probes: Vec<f64> = Vec::with_capacity(xs.len() + 1);
    let first = xs[0];
    let before = match lo.finite() {
        Some(a) => (to_f64(a) + first) / 2.0,
        None => first - 1.0 - first.abs(),
    };
    probes.push(before);
    for w in xs.windows(2) {
        probes.push((w[0] + w[1]) / 2.0);
    }
    let last = xs[xs.len() - 1];
    let after = match hi.finite() {
        Some(b) => (to_f64(b) + last) / 2.0,
        None => last + 1.0 + last.abs(),
    };
    probes.push(after);
    let eval = ExactEvaluator::new(s);
    let signs: Vec<i8> = probes
        .into_iter()
        .filter(|&x| x.is_finite() && hull.interior_contains(&exact(x)))
        .map(|x| eval.sign_at(x))
        .filter(|&v| v != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Exact S_n, its sign changes in the interior of the support hull and its
/// complex zeros, without requiring the ordering hypothesis.
pub fn zero_report(n: usize, spec: &SobolevSpec) -> Result<ZeroReport> {
    let ordered = is_sequentially_ordered(spec).is_ordered();
    let (s, roots) = poly_and_roots(n, spec)?;
    let changes = sign_change_count(&s, &spec.measure().hull())?;
    let mut r = report(n, spec, changes, ordered);
    add_roots(&mut r, spec, roots, None);
    Ok(r)
}

/// Sign-change bound `n − d*` for a sequentially ordered inner product.
pub fn theorem1_check(n: usize, spec: &SobolevSpec) -> Result<ZeroReport> {
    if let Some(v) = is_sequentially_ordered(spec).violation {
        return Err(Error::NotSequentiallyOrdered(v.k));
    }
    let s = construct(n, spec)?;
    let changes = sign_change_count(&s, &spec.measure().hull())?;
    Ok(report(n, spec, changes, true))
}

/// Zero geometry of S_n for a Laguerre inner product with one derivative
/// order per mass point. Sign changes are the ones witnessed by exact
/// evaluation between the computed roots, which keeps large n cheap.
pub fn attraction_check(n: usize, spec: &SobolevSpec, radius: f64) -> Result<ZeroReport> {
    spec.require_laguerre()?;
    if !spec.one_order_per_point() {
        return Err(Error::Precondition("each mass point must carry a single derivative order".into()));
    }
    if !(radius > 0.0) {
        return Err(Error::Precondition("radius must be positive".into()));
    }
    if let Some(v) = is_sequentially_ordered(spec).violation {
        return Err(Error::NotSequentiallyOrdered(v.k));
    }
    let (s, roots) = poly_and_roots(n, spec)?;
    let changes = witnessed_sign_changes(&s, &roots, spec);
    let mut r = report(n, spec, changes, true);
    add_roots(&mut r, spec, roots, Some(radius));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::sobolev::MassTerm;

    fn derivative_mass() -> SobolevSpec {
        SobolevSpec::laguerre(0, vec![MassTerm::new(int(-1), 1, int(2))]).unwrap()
    }

    #[test]
    fn derivative_mass_small() {
        let r = theorem1_check(2, &derivative_mass()).unwrap();
        assert_eq!((r.sign_changes_in_hull, r.bound, r.pass), (1, 1, true));
        let a = attraction_check(2, &derivative_mass(), 0.5).unwrap();
        assert_eq!(a.per_mass_nearest[0].roots_within, 1);
        assert!((a.per_mass_nearest[0].distance - (2f64.sqrt() - 1.0)).abs() < 1e-9);
        assert_eq!(a.positive_real, 1);
    }

    #[test]
    fn unordered_two_outside_hypothesis() {
        let s = SobolevSpec::laguerre(0, vec![MassTerm::new(int(-15), 1, int(1)), MassTerm::new(int(-9), 2, int(1))])
            .unwrap();
        assert_eq!(theorem1_check(5, &s), Err(Error::NotSequentiallyOrdered(2)));
        let r = zero_report(5, &s).unwrap();
        assert!(!r.hypothesis_holds);
        assert_eq!((r.sign_changes_in_hull, r.bound), (2, 3));
        assert_eq!(r.roots.len(), 5);
    }

    #[test]
    fn report_serializes() {
        let r = zero_report(2, &derivative_mass()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["roots"].as_array().unwrap().len(), 2);
        assert_eq!(r.csv_row(), "2,1,1,1,true,true");
    }
}
