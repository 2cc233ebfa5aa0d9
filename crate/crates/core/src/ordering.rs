//! Hull systems of mass points by derivative order, the sequential-order
//! predicate, minimal vanishing polynomials and the Rolle-type zero count.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::interval::{ExtInterval, ExtReal, Span};
use crate::linalg::{solve_general, Solution};
use crate::poly::QPoly;
use crate::rational::{falling_factorial, format_rational, Rational};
use crate::sobolev::SobolevSpec;
use crate::sturm::RootCounter;

/// `Δ_0, …, Δ_{d_N}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaSystem {
    pub intervals: Vec<ExtInterval>,
}

/// Δ_0 is the hull of the support together with the order-0 points; Δ_k for
/// k ≥ 1 is the hull of the points carrying an order-k term.
pub fn delta_system(spec: &SobolevSpec) -> DeltaSystem {
    let top = spec.max_order();
    let mut intervals = vec![ExtInterval::empty(); top + 1];
    intervals[0] = spec.measure().hull();
    for m in spec.masses() {
        let slot = &mut intervals[m.order];
        *slot = slot.hull(&ExtInterval::singleton(m.c.clone()));
    }
    DeltaSystem { intervals }
}

/// The first k with `I_k ∩ int(ch(I_0 ∪ … ∪ I_{k−1})) ≠ ∅`.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub k: usize,
    pub interval: ExtInterval,
    pub prior_hull: ExtInterval,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.interval.inside_interior_of(&self.prior_hull) {
            write!(f, "k={}: {} ⊂ int({})", self.k, self.interval, self.prior_hull)
        } else {
            write!(f, "k={}: {} ∩ int({}) ≠ ∅", self.k, self.interval, self.prior_hull)
        }
    }
}

pub fn first_violation(intervals: &[ExtInterval]) -> Option<Violation> {
    let mut prior = intervals.first()?.clone();
    for (k, iv) in intervals.iter().enumerate().skip(1) {
        if iv.meets_interior_of(&prior) {
            return Some(Violation {
                k,
                interval: iv.clone(),
                prior_hull: prior,
            });
        }
        prior = prior.hull(iv);
    }
    None
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderReport {
    pub deltas: DeltaSystem,
    pub violation: Option<Violation>,
    pub warnings: Vec<String>,
}

impl OrderReport {
    pub fn is_ordered(&self) -> bool {
        self.violation.is_none()
    }
}

fn is_endpoint(iv: &ExtInterval, c: &Rational) -> bool {
    let c = ExtReal::Finite(c.clone());
    iv.lo() == Some(&c) || iv.hi() == Some(&c)
}

pub fn is_sequentially_ordered(spec: &SobolevSpec) -> OrderReport {
    let deltas = delta_system(spec);
    let violation = first_violation(&deltas.intervals);
    let mut warnings = Vec::new();
    for (c, _) in spec.points() {
        let orders: Vec<usize> = spec.masses().iter().filter(|m| m.c == c).map(|m| m.order).collect();
        if orders.len() < 2 {
            continue;
        }
        let mut prior = ExtInterval::empty();
        for (k, iv) in deltas.intervals.iter().enumerate() {
            if k > 0 && orders.contains(&k) && is_endpoint(&prior, &c) {
                warnings.push(format!(
                    "point {} carries orders {:?} and lies on the boundary of {}",
                    format_rational(&c),
                    orders,
                    prior
                ));
                break;
            }
            prior = prior.hull(iv);
        }
    }
    OrderReport {
        deltas,
        violation,
        warnings,
    }
}

/// Vanishing conditions `U^{(ν_i)}(r_i) = 0`, sorted by `(ν, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishSpec {
    pairs: Vec<(Rational, usize)>,
}

impl VanishSpec {
    pub fn new(mut pairs: Vec<(Rational, usize)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::Precondition("at least one vanishing condition is required".into()));
        }
        pairs.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        if pairs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("vanishing conditions must be distinct".into()));
        }
        Ok(VanishSpec { pairs })
    }

    pub fn pairs(&self) -> &[(Rational, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `I_k = ch{r_i : ν_i = k}` for k up to the largest order.
    pub fn intervals(&self) -> Vec<ExtInterval> {
        let top = self.pairs.last().map_or(0, |p| p.1);
        (0..=top)
            .map(|k| ExtInterval::hull_of(self.pairs.iter().filter(|p| p.1 == k).map(|p| &p.0)))
            .collect()
    }

    pub fn is_ordered(&self) -> bool {
        first_violation(&self.intervals()).is_none()
    }
}

/// `min{i : ν_i ≥ i} − 1`, or M when no such i exists.
pub fn predicted_degree(v: &VanishSpec) -> usize {
    v.pairs
        .iter()
        .enumerate()
        .find(|(i, p)| p.1 > *i)
        .map_or(v.len(), |(i, _)| i)
}

fn deriv_monomial(t: usize, nu: usize, r: &Rational) -> Rational {
    if nu > t {
        return Rational::zero();
    }
    let f = Rational::from_integer(falling_factorial(t as u64, nu as u64));
    f * num_traits::pow(r.clone(), t - nu)
}

/// The unique monic polynomial of least degree meeting every condition.
pub fn minimal_vanishing_poly(v: &VanishSpec) -> QPoly {
    let m = v.len();
    for g in 0..=m {
        let a: Vec<Vec<Rational>> = v
            .pairs
            .iter()
            .map(|(r, nu)| (0..g).map(|t| deriv_monomial(t, *nu, r)).collect())
            .collect();
        let b: Vec<Rational> = v.pairs.iter().map(|(r, nu)| -deriv_monomial(g, *nu, r)).collect();
        match solve_general(a, b, g) {
            Solution::Inconsistent => continue,
            Solution::Many(_, nullity) => {
                panic!("monic solution of degree {g} is not unique (nullity {nullity})")
            }
            Solution::Unique(mut coeffs) => {
                coeffs.push(Rational::one());
                return QPoly::new(coeffs);
            }
        }
    }
    unreachable!("a monic solution of degree at most M always exists")
}

/// Both sides of the Rolle-type bound for one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RolleReport {
    /// `N_z(P; J) + N_c(P; I_0 ∖ J) + Σ N_c(P^{(i)}; I_i)`.
    pub lhs: usize,
    /// `N_z(P^{(m)}; J) + N_c(P^{(m)}; ch(∪ I_i) ∖ J) + m`.
    pub general_rhs: usize,
    pub degree: usize,
    pub pass: bool,
}

fn count_distinct(p: &QPoly, spans: &[Span]) -> Result<usize> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    let rc = RootCounter::new(p)?;
    Ok(spans.iter().map(|s| rc.distinct(s)).sum())
}

fn count_total(p: &QPoly, span: &Span) -> Result<usize> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    Ok(RootCounter::new(p)?.with_multiplicity(span))
}

/// Evaluates both bounds for `P`, intervals `I_0..I_m` and a closed
/// `J ⊂ int(I_0)`, after checking the hypotheses.
pub fn rolle_bound_check(p: &QPoly, intervals: &[ExtInterval], j: &ExtInterval) -> Result<RolleReport> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    let Some(i0) = intervals.first() else {
        return Err(Error::Precondition("at least one interval is required".into()));
    };
    let m = intervals.len() - 1;
    if let Some(v) = first_violation(intervals) {
        return Err(Error::Precondition(format!("intervals are not sequentially ordered: {v}")));
    }
    if !j.inside_interior_of(i0) {
        return Err(Error::Precondition(format!("J = {j} is not inside int({i0})")));
    }
    if deg < m {
        return Err(Error::Precondition(format!("deg P = {deg} is below m = {m}")));
    }
    let j_span = j.as_span();
    let mut lhs = count_total(p, &j_span)? + count_distinct(p, &Span::difference(i0, j))?;
    for (i, iv) in intervals.iter().enumerate().skip(1) {
        lhs += count_distinct(&p.derivative(i), &[iv.as_span()])?;
    }
    let pm = p.derivative(m);
    let whole = intervals.iter().fold(ExtInterval::empty(), |acc, iv| acc.hull(iv));
    let general_rhs = count_total(&pm, &j_span)? + count_distinct(&pm, &Span::difference(&whole, j))? + m;
    Ok(RolleReport {
        lhs,
        general_rhs,
        degree: deg,
        pass: lhs <= deg && lhs <= general_rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::sobolev::MassTerm;

    fn ordered_four() -> SobolevSpec {
        SobolevSpec::laguerre(
            0,
            vec![
                MassTerm::new(int(-1), 0, int(10)),
                MassTerm::new(int(-3), 1, int(5)),
                MassTerm::new(int(-9), 1, int(5)),
                MassTerm::new(int(-10), 3, int(20)),
            ],
        )
        .unwrap()
    }

    fn unordered_two() -> SobolevSpec {
        SobolevSpec::laguerre(0, vec![MassTerm::new(int(-15), 1, int(1)), MassTerm::new(int(-9), 2, int(1))])
            .unwrap()
    }

    #[test]
    fn deltas_of_examples() {
        let d = delta_system(&ordered_four()).intervals;
        assert_eq!(
            d,
            vec![
                ExtInterval::ray_up(int(-1)),
                ExtInterval::closed(int(-9), int(-3)),
                ExtInterval::empty(),
                ExtInterval::singleton(int(-10)),
            ]
        );
        let d = delta_system(&unordered_two()).intervals;
        assert_eq!(
            d,
            vec![ExtInterval::ray_up(int(0)), ExtInterval::singleton(int(-15)), ExtInterval::singleton(int(-9))]
        );
        let none = SobolevSpec::laguerre(0, vec![]).unwrap();
        assert_eq!(delta_system(&none).intervals, vec![ExtInterval::ray_up(int(0))]);
    }

    #[test]
    fn ordering_of_examples() {
        assert!(is_sequentially_ordered(&ordered_four()).is_ordered());
        let r = is_sequentially_ordered(&unordered_two());
        let v = r.violation.unwrap();
        assert_eq!(v.k, 2);
        assert_eq!(v.to_string(), "k=2: {-9} ⊂ int([-15, ∞))");
        let single = SobolevSpec::laguerre(0, vec![MassTerm::new(int(-4), 0, int(1))]).unwrap();
        assert!(is_sequentially_ordered(&single).is_ordered());
    }

    #[test]
    fn boundary_point_with_two_orders_warns() {
        let s = SobolevSpec::laguerre(0, vec![MassTerm::new(int(0), 0, int(1)), MassTerm::new(int(0), 1, int(1))])
            .unwrap();
        let r = is_sequentially_ordered(&s);
        assert!(r.is_ordered());
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn minimal_vanishing_examples() {
        let v = VanishSpec::new(vec![(int(-1), 0), (int(1), 0), (int(0), 1)]).unwrap();
        assert_eq!(minimal_vanishing_poly(&v), QPoly::new(vec![int(-1), int(0), int(1)]));
        assert_eq!(predicted_degree(&v), 3);
        assert!(!v.is_ordered());
        let v = VanishSpec::new(vec![(int(7), 0)]).unwrap();
        assert_eq!(minimal_vanishing_poly(&v), QPoly::new(vec![int(-7), int(1)]));
        assert_eq!(predicted_degree(&v), 1);
        let v = VanishSpec::new(vec![(int(7), 3)]).unwrap();
        assert_eq!(minimal_vanishing_poly(&v), QPoly::one());
        assert_eq!(predicted_degree(&v), 0);
    }

    #[test]
    fn rolle_examples() {
        let p = QPoly::new(vec![int(-1), int(0), int(1)]);
        let r = rolle_bound_check(&p, &[ExtInterval::closed(int(-2), int(2))], &ExtInterval::empty()).unwrap();
        assert_eq!((r.lhs, r.degree, r.pass), (2, 2, true));
        let r = rolle_bound_check(
            &p,
            &[ExtInterval::closed(int(-1), int(1)), ExtInterval::singleton(int(5))],
            &ExtInterval::empty(),
        )
        .unwrap();
        assert_eq!((r.lhs, r.degree, r.pass), (2, 2, true));
    }

    #[test]
    fn rolle_preconditions() {
        let p = QPoly::new(vec![int(-1), int(0), int(1)]);
        let bad = [ExtInterval::closed(int(-2), int(2)), ExtInterval::singleton(int(0))];
        assert!(matches!(rolle_bound_check(&p, &bad, &ExtInterval::empty()), Err(Error::Precondition(_))));
        let j = ExtInterval::closed(int(-2), int(0));
        assert!(rolle_bound_check(&p, &[ExtInterval::closed(int(-2), int(2))], &j).is_err());
        let many = vec![ExtInterval::singleton(int(0)); 1]
            .into_iter()
            .chain((1..4).map(|k| ExtInterval::singleton(int(10 * k))))
            .collect::<Vec<_>>();
        assert!(rolle_bound_check(&p, &many, &ExtInterval::empty()).is_err());
    }
}
