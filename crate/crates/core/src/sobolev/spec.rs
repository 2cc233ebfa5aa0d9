use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{ExtInterval, ExtReal};
use crate::laguerre::{moment_exact, LaguerreParam};
use crate::poly::Coeff;
use crate::rational::{format_rational, Rational};

/// The measure part of a discrete Sobolev inner product.
#[derive(Clone, Debug, PartialEq)]
pub enum Measure {
    /// `x^α e^{-x} dx` on `(0, ∞)`.
    Laguerre(LaguerreParam),
    /// An explicit moment sequence `m_0..m_K` with a declared support hull.
    Moments { values: Vec<Rational>, hull: ExtInterval },
}

impl Measure {
    /// Convex hull of the support.
    pub fn hull(&self) -> ExtInterval {
        match self {
            Measure::Laguerre(_) => ExtInterval::ray_up(Rational::zero()),
            Measure::Moments { hull, .. } => hull.clone(),
        }
    }

    pub fn moment<T: Coeff>(&self, k: usize) -> Result<T> {
        match self {
            Measure::Laguerre(LaguerreParam::Integer(a)) => Ok(T::from_rational(&moment_exact(k, *a))),
            Measure::Laguerre(p @ LaguerreParam::Real(a)) => {
                if T::EXACT {
                    return Err(Error::ExactAlphaRequired(a.to_string()));
                }
                let v = crate::laguerre::laguerre_moment(k, p)?.to_f64();
                Ok(T::from_rational(
                    &Rational::from_float(v).ok_or_else(|| Error::InvalidMeasure(format!("moment {k} overflows")))?,
                ))
            }
            Measure::Moments { values, .. } => values
                .get(k)
                .map(T::from_rational)
                .ok_or(Error::InsufficientMoments {
                    required: k,
                    available: values.len().saturating_sub(1),
                }),
        }
    }

    /// Exact integer Laguerre parameter, if this is an exact Laguerre measure.
    pub fn laguerre_alpha(&self) -> Option<u32> {
        match self {
            Measure::Laguerre(LaguerreParam::Integer(a)) => Some(*a),
            _ => None,
        }
    }
}

/// One term `λ f^{(k)}(c) g^{(k)}(c)` of the discrete part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassTerm {
    pub c: Rational,
    pub order: usize,
    pub lambda: Rational,
}

impl MassTerm {
    pub fn new(c: Rational, order: usize, lambda: Rational) -> Self {
        MassTerm { c, order, lambda }
    }
}

/// A validated discrete Sobolev inner product.
#[derive(Clone, Debug, PartialEq)]
pub struct SobolevSpec {
    measure: Measure,
    masses: Vec<MassTerm>,
}

impl SobolevSpec {
    /// Validates the terms: negative weights are rejected, zero weights are
    /// dropped, duplicate `(c, order)` pairs and points inside the open hull
    /// of the support are rejected.
    pub fn new(measure: Measure, masses: Vec<MassTerm>) -> Result<Self> {
        let hull = measure.hull();
        if hull.is_empty() || hull.is_singleton() {
            return Err(Error::InvalidMeasure("support hull must be a nondegenerate interval".into()));
        }
        if let Measure::Moments { values, .. } = &measure {
            if values.is_empty() {
                return Err(Error::InvalidMeasure("no moments supplied".into()));
            }
        }
        let mut kept: Vec<MassTerm> = Vec::new();
        for m in masses {
            if m.lambda.is_negative() {
                return Err(Error::InvalidMass("lambda must be nonnegative".into()));
            }
            if m.lambda.is_zero() {
                continue;
            }
            if hull.interior_contains(&m.c) {
                return Err(Error::InvalidMass(format!(
                    "mass point {} lies inside the support hull {}",
                    format_rational(&m.c),
                    hull
                )));
            }
            if kept.iter().any(|k| k.c == m.c && k.order == m.order) {
                return Err(Error::InvalidMass(format!(
                    "duplicate term at c={} order={}",
                    format_rational(&m.c),
                    m.order
                )));
            }
            kept.push(m);
        }
        Ok(SobolevSpec { measure, masses: kept })
    }

    /// Laguerre measure with exact integer α.
    pub fn laguerre(alpha: u32, masses: Vec<MassTerm>) -> Result<Self> {
        SobolevSpec::new(Measure::Laguerre(LaguerreParam::Integer(alpha)), masses)
    }

    pub fn measure(&self) -> &Measure {
        &self.measure
    }

    pub fn masses(&self) -> &[MassTerm] {
        &self.masses
    }

    /// Same masses with a different Laguerre parameter.
    pub fn with_alpha(&self, alpha: u32) -> Result<Self> {
        SobolevSpec::laguerre(alpha, self.masses.clone())
    }

    /// d*: number of terms with positive weight.
    pub fn d_star(&self) -> usize {
        self.masses.len()
    }

    /// Distinct mass points in increasing order with their maximal order d_j.
    pub fn points(&self) -> Vec<(Rational, usize)> {
        let mut pts: Vec<(Rational, usize)> = Vec::new();
        for m in &self.masses {
            match pts.iter_mut().find(|(c, _)| *c == m.c) {
                Some((_, d)) => *d = (*d).max(m.order),
                None => pts.push((m.c.clone(), m.order)),
            }
        }
        pts.sort_by(|a, b| a.0.cmp(&b.0));
        pts
    }

    /// d = Σ (d_j + 1).
    pub fn d(&self) -> usize {
        self.points().iter().map(|(_, d)| d + 1).sum()
    }

    /// Largest derivative order d_N; zero when there are no masses.
    pub fn max_order(&self) -> usize {
        self.masses.iter().map(|m| m.order).max().unwrap_or(0)
    }

    /// Whether each point carries a single derivative order.
    pub fn one_order_per_point(&self) -> bool {
        self.points().len() == self.masses.len()
    }

    /// Number of moments available (`None` for the Laguerre family).
    pub fn moment_count(&self) -> Option<usize> {
        match &self.measure {
            Measure::Moments { values, .. } => Some(values.len()),
            Measure::Laguerre(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        match &self.measure {
            Measure::Laguerre(p) => p.is_exact(),
            Measure::Moments { .. } => true,
        }
    }

    /// Lower end of the support hull, when finite.
    pub fn hull_lo(&self) -> Option<Rational> {
        match self.measure.hull().lo() {
            Some(ExtReal::Finite(r)) => Some(r.clone()),
            _ => None,
        }
    }

    /// Exact Laguerre parameter or a precondition error.
    pub fn require_laguerre(&self) -> Result<u32> {
        self.measure.laguerre_alpha().ok_or_else(|| {
            Error::Precondition("operation requires a Laguerre measure with integer alpha".into())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn validation() {
        let bad = SobolevSpec::laguerre(0, vec![MassTerm::new(int(-1), 0, int(-1))]);
        assert_eq!(bad, Err(Error::InvalidMass("lambda must be nonnegative".into())));
        let inside = SobolevSpec::laguerre(0, vec![MassTerm::new(int(2), 0, int(1))]);
        assert!(inside.is_err());
        let boundary = SobolevSpec::laguerre(0, vec![MassTerm::new(int(0), 1, int(1))]);
        assert!(boundary.is_ok());
        let dropped = SobolevSpec::laguerre(0, vec![MassTerm::new(int(-1), 0, int(0))]).unwrap();
        assert_eq!(dropped.d_star(), 0);
        let dup = SobolevSpec::laguerre(
            0,
            vec![MassTerm::new(int(-1), 0, int(1)), MassTerm::new(int(-1), 0, int(2))],
        );
        assert!(dup.is_err());
    }

    #[test]
    fn derived_counts() {
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
        assert_eq!(s.d_star(), 4);
        assert_eq!(s.d(), 1 + 2 + 2 + 4);
        assert_eq!(s.max_order(), 3);
        assert!(s.one_order_per_point());
    }

    #[test]
    fn moments_are_bounded() {
        let m = Measure::Moments { values: vec![int(1), int(0), int(1)], hull: ExtInterval::closed(int(-1), int(1)) };
        assert_eq!(m.moment::<Rational>(2).unwrap(), int(1));
        assert_eq!(
            m.moment::<Rational>(3),
            Err(Error::InsufficientMoments { required: 3, available: 2 })
        );
    }
}
