//! Real intervals with possibly infinite endpoints.

use std::fmt;

use crate::rational::{format_rational, Rational};

/// An extended real number.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtReal {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtReal {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtReal::Finite(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => write!(f, "-∞"),
            ExtReal::PosInf => write!(f, "∞"),
            ExtReal::Finite(r) => write!(f, "{}", format_rational(r)),
        }
    }
}

/// A closed convex subset of the real line: empty, a singleton, a bounded
/// interval or a ray/the whole line. Finite endpoints belong to the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtInterval {
    bounds: Option<(ExtReal, ExtReal)>,
}

impl ExtInterval {
    pub fn empty() -> Self {
        ExtInterval { bounds: None }
    }

    /// `[lo, hi]`; empty when `lo > hi`.
    pub fn new(lo: ExtReal, hi: ExtReal) -> Self {
        if lo > hi || lo == ExtReal::PosInf || hi == ExtReal::NegInf {
            return ExtInterval::empty();
        }
        ExtInterval { bounds: Some((lo, hi)) }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        ExtInterval::new(ExtReal::Finite(lo), ExtReal::Finite(hi))
    }

    pub fn singleton(r: Rational) -> Self {
        ExtInterval::closed(r.clone(), r)
    }

    /// `[a, ∞)`.
    pub fn ray_up(a: Rational) -> Self {
        ExtInterval::new(ExtReal::Finite(a), ExtReal::PosInf)
    }

    /// `(-∞, b]`.
    pub fn ray_down(b: Rational) -> Self {
        ExtInterval::new(ExtReal::NegInf, ExtReal::Finite(b))
    }

    pub fn real_line() -> Self {
        ExtInterval::new(ExtReal::NegInf, ExtReal::PosInf)
    }

    /// Convex hull of a finite set of points.
    pub fn hull_of<'a>(points: impl IntoIterator<Item = &'a Rational>) -> Self {
        points.into_iter().fold(ExtInterval::empty(), |acc, p| {
            acc.hull(&ExtInterval::singleton(p.clone()))
        })
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_none()
    }

    pub fn is_singleton(&self) -> bool {
        matches!(&self.bounds, Some((a, b)) if a == b)
    }

    pub fn lo(&self) -> Option<&ExtReal> {
        self.bounds.as_ref().map(|b| &b.0)
    }

    pub fn hi(&self) -> Option<&ExtReal> {
        self.bounds.as_ref().map(|b| &b.1)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let x = ExtReal::Finite(x.clone());
        matches!(&self.bounds, Some((a, b)) if *a <= x && x <= *b)
    }

    pub fn interior_contains(&self, x: &Rational) -> bool {
        let x = ExtReal::Finite(x.clone());
        matches!(&self.bounds, Some((a, b)) if *a < x && x < *b)
    }

    /// Convex hull of the union.
    pub fn hull(&self, other: &ExtInterval) -> ExtInterval {
        match (&self.bounds, &other.bounds) {
            (None, _) => other.clone(),
            (_, None) => self.clone(),
            (Some((a, b)), Some((c, d))) => {
                ExtInterval::new(a.clone().min(c.clone()), b.clone().max(d.clone()))
            }
        }
    }

    /// Interior as an open span; empty for singletons and the empty set.
    pub fn interior(&self) -> Span {
        match &self.bounds {
            Some((a, b)) if a < b => Span::new(a.clone(), false, b.clone(), false),
            _ => Span::empty(),
        }
    }

    /// The set itself as a span (finite endpoints closed).
    pub fn as_span(&self) -> Span {
        match &self.bounds {
            Some((a, b)) => Span::new(a.clone(), true, b.clone(), true),
            None => Span::empty(),
        }
    }

    /// Whether `self ∩ int(other) ≠ ∅`.
    pub fn meets_interior_of(&self, other: &ExtInterval) -> bool {
        let inner = other.interior();
        match (&self.bounds, inner.bounds()) {
            (Some((a, b)), Some((c, _, d, _))) => a < d && c < b,
            _ => false,
        }
    }

    /// Whether `self ⊂ int(other)`.
    pub fn inside_interior_of(&self, other: &ExtInterval) -> bool {
        let inner = other.interior();
        match (&self.bounds, inner.bounds()) {
            (None, _) => true,
            (Some((a, b)), Some((c, _, d, _))) => c < a && b < d,
            _ => false,
        }
    }
}

impl fmt::Display for ExtInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.bounds {
            None => write!(f, "∅"),
            Some((a, b)) if a == b => write!(f, "{{{a}}}"),
            Some((a, b)) => {
                let l = if matches!(a, ExtReal::NegInf) { "(" } else { "[" };
                let r = if matches!(b, ExtReal::PosInf) { ")" } else { "]" };
                write!(f, "{l}{a}, {b}{r}")
            }
        }
    }
}

/// An interval with independent open/closed endpoints. Infinite endpoints are
/// always treated as open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    bounds: Option<(ExtReal, bool, ExtReal, bool)>,
}

impl Span {
    pub fn empty() -> Self {
        Span { bounds: None }
    }

    pub fn new(lo: ExtReal, lo_closed: bool, hi: ExtReal, hi_closed: bool) -> Self {
        let lo_closed = lo_closed && matches!(lo, ExtReal::Finite(_));
        let hi_closed = hi_closed && matches!(hi, ExtReal::Finite(_));
        let empty = lo > hi || (lo == hi && !(lo_closed && hi_closed));
        if empty {
            return Span::empty();
        }
        Span { bounds: Some((lo, lo_closed, hi, hi_closed)) }
    }

    pub fn bounds(&self) -> Option<(&ExtReal, bool, &ExtReal, bool)> {
        self.bounds.as_ref().map(|(a, ac, b, bc)| (a, *ac, b, *bc))
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_none()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let x = ExtReal::Finite(x.clone());
        match &self.bounds {
            None => false,
            Some((a, ac, b, bc)) => {
                let left = if *ac { *a <= x } else { *a < x };
                let right = if *bc { x <= *b } else { x < *b };
                left && right
            }
        }
    }

    /// `I ∖ J` for a closed interval `I` and a closed interval `J`
    /// (possibly empty) contained in `I`. Yields at most two pieces.
    pub fn difference(outer: &ExtInterval, hole: &ExtInterval) -> Vec<Span> {
        let (Some(lo), Some(hi)) = (outer.lo(), outer.hi()) else {
            return Vec::new();
        };
        let (Some(p), Some(q)) = (hole.lo(), hole.hi()) else {
            return vec![outer.as_span()];
        };
        let mut out = Vec::new();
        let left = Span::new(lo.clone(), true, p.clone(), false);
        if !left.is_empty() {
            out.push(left);
        }
        let right = Span::new(q.clone(), false, hi.clone(), true);
        if !right.is_empty() {
            out.push(right);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn interiors() {
        assert!(ExtInterval::singleton(int(3)).interior().is_empty());
        assert!(ExtInterval::empty().interior().is_empty());
        let ray = ExtInterval::ray_up(int(0));
        assert!(ray.interior_contains(&int(5)));
        assert!(!ray.interior_contains(&int(0)));
        assert!(ray.contains(&int(0)));
    }

    #[test]
    fn hull_and_meets() {
        let a = ExtInterval::ray_up(int(-15));
        let s = ExtInterval::singleton(int(-9));
        assert!(s.meets_interior_of(&a));
        assert!(s.inside_interior_of(&a));
        let b = ExtInterval::singleton(int(-15));
        assert!(!b.meets_interior_of(&a));
        let h = ExtInterval::hull_of([int(-3), int(-9)].iter());
        assert_eq!(h, ExtInterval::closed(int(-9), int(-3)));
        assert_eq!(format!("{}", a), "[-15, ∞)");
        assert_eq!(format!("{}", s), "{-9}");
    }

    #[test]
    fn difference_pieces() {
        let outer = ExtInterval::closed(int(0), int(10));
        let hole = ExtInterval::closed(int(2), int(3));
        let parts = Span::difference(&outer, &hole);
        assert_eq!(parts.len(), 2);
        assert!(parts[0].contains(&int(0)));
        assert!(!parts[0].contains(&int(2)));
        assert!(parts[1].contains(&int(10)));
        assert!(!parts[1].contains(&int(3)));
    }
}
