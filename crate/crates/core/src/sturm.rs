//! Real-root counting for exact polynomials: Yun squarefree decomposition
//! plus Sturm sequences on each squarefree factor.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{ExtInterval, ExtReal, Span};
use crate::poly::QPoly;
use crate::roots::{all_roots_exact, ExactEvaluator};
use crate::rational::{common_denominator, Rational};

/// `p = c · ∏ factor_i^multiplicity_i` with monic, squarefree, pairwise
/// coprime factors.
#[derive(Clone, Debug)]
pub struct Squarefree {
    pub factors: Vec<(QPoly, usize)>,
}

impl Squarefree {
    pub fn squarefree_part(&self) -> QPoly {
        self.factors
            .iter()
            .fold(QPoly::one(), |acc, (f, _)| &acc * f)
    }
}

/// Yun's algorithm over ℚ.
pub fn squarefree(p: &QPoly) -> Result<Squarefree> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = p.monic();
    if f.degree() == Some(0) {
        return Ok(Squarefree { factors: Vec::new() });
    }
    let df = f.derivative(1);
    let g = f.gcd(&df);
    let (mut a, _) = f.div_rem(&g)?;
    let (mut b, _) = df.div_rem(&g)?;
    let mut factors = Vec::new();
    let mut mult = 1;
    loop {
        let c = &b - &a.derivative(1);
        if c.is_zero() {
            if a.degree().unwrap_or(0) > 0 {
                factors.push((a.monic(), mult));
            }
            break;
        }
        let d = a.gcd(&c);
        if d.degree().unwrap_or(0) > 0 {
            factors.push((d.clone(), mult));
        }
        a = a.div_rem(&d)?.0;
        b = c.div_rem(&d)?.0;
        mult += 1;
        if a.degree().unwrap_or(0) == 0 {
            break;
        }
    }
    Ok(Squarefree { factors })
}

/// Sturm sequence of a squarefree polynomial, kept as integer primitive
/// polynomials. Members differ from the classical chain by positive factors.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Vec<BigInt>>,
}

impl SturmChain {
    pub fn new(p: &QPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let base = integer_primitive(p);
        let mut chain = vec![base.clone()];
        let d = int_derivative(&base);
        if !d.is_empty() {
            chain.push(primitive_part(d));
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let r = sturm_remainder(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(primitive_part(r.into_iter().map(|c| -c).collect()));
        }
        Ok(SturmChain { chain })
    }

    /// True when the base polynomial has no repeated roots.
    fn is_squarefree(&self) -> bool {
        self.chain.last().is_some_and(|p| p.len() == 1)
    }

    fn sign_at(p: &[BigInt], x: &ExtReal) -> i32 {
        let lead_sign = match p.last() {
            Some(l) if l.is_positive() => 1,
            Some(_) => -1,
            None => 0,
        };
        match x {
            ExtReal::PosInf => lead_sign,
            ExtReal::NegInf => {
                if p.len() % 2 == 1 {
                    lead_sign
                } else {
                    -lead_sign
                }
            }
            ExtReal::Finite(v) => match int_eval_scaled(p, v).sign() {
                Sign::Plus => 1,
                Sign::Minus => -1,
                Sign::NoSign => 0,
            },
        }
    }

    /// Sign variations (zeros dropped).
    pub fn variations(&self, x: &ExtReal) -> usize {
        let signs: Vec<i32> = self
            .chain
            .iter()
            .map(|p| Self::sign_at(p, x))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    fn root_at(&self, x: &Rational) -> bool {
        int_eval_scaled(&self.chain[0], x).is_zero()
    }

    /// Number of distinct roots of the (squarefree) base polynomial in `span`.
    pub fn count(&self, span: &Span) -> usize {
        let Some((lo, lo_closed, hi, hi_closed)) = span.bounds() else {
            return 0;
        };
        if lo == hi {
            return match lo {
                ExtReal::Finite(v) if lo_closed && hi_closed && self.root_at(v) => 1,
                _ => 0,
            };
        }
        // V(lo) - V(hi) counts roots in (lo, hi].
        let mut n = self.variations(lo) as i64 - self.variations(hi) as i64;
        if let ExtReal::Finite(v) = lo {
            if lo_closed && self.root_at(v) {
                n += 1;
            }
        }
        if let ExtReal::Finite(v) = hi {
            if !hi_closed && self.root_at(v) {
                n -= 1;
            }
        }
        n.max(0) as usize
    }
}

fn integer_primitive(p: &QPoly) -> Vec<BigInt> {
    let den = common_denominator(p.coeffs());
    primitive_part(p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect())
}

/// Divides out the positive content.
fn primitive_part(mut p: Vec<BigInt>) -> Vec<BigInt> {
    let g = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut p {
            *c /= &g;
        }
    }
    p
}

fn int_derivative(p: &[BigInt]) -> Vec<BigInt> {
    p.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect()
}

/// Positive multiple of `a mod b`, with content removed along the way.
fn sturm_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lb = b.last().expect("nonzero divisor");
    let (scale, flip) = (lb.abs(), lb.is_negative());
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let lr = r.pop().expect("nonempty");
        let lr = if flip { -lr } else { lr };
        let shift = r.len() + 1 - b.len();
        for c in r.iter_mut() {
            *c *= &scale;
        }
        for (k, bc) in b[..b.len() - 1].iter().enumerate() {
            r[shift + k] -= &lr * bc;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        r = primitive_part(r);
    }
    r
}

/// `p(a/b) · b^deg` for `b > 0`, which has the sign of `p(a/b)`.
fn int_eval_scaled(p: &[BigInt], x: &Rational) -> BigInt {
    let (a, b) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut pow = BigInt::one();
    for (i, c) in p.iter().rev().enumerate() {
        if i == 0 {
            acc = c.clone();
        } else {
            pow *= b;
            acc = acc * a + c * &pow;
        }
    }
    acc
}

/// Root-multiplicity data of a polynomial, ready for counting on many spans.
#[derive(Clone, Debug)]
pub struct RootCounter {
    parts: Vec<(SturmChain, usize)>,
}

impl RootCounter {
    pub fn new(p: &QPoly) -> Result<Self> {
        let direct = SturmChain::new(p)?;
        if direct.is_squarefree() {
            return Ok(RootCounter { parts: vec![(direct, 1)] });
        }
        let sf = squarefree(p)?;
        let parts = sf
            .factors
            .iter()
            .map(|(f, m)| Ok((SturmChain::new(f)?, *m)))
            .collect::<Result<Vec<_>>>()?;
        Ok(RootCounter { parts })
    }

    /// Distinct roots in `span` (N_c).
    pub fn distinct(&self, span: &Span) -> usize {
        self.parts.iter().map(|(c, _)| c.count(span)).sum()
    }

    /// Roots counted with multiplicity in `span` (N_z).
    pub fn with_multiplicity(&self, span: &Span) -> usize {
        self.parts.iter().map(|(c, m)| m * c.count(span)).sum()
    }

    /// Roots of odd multiplicity in `span`, i.e. sign changes.
    pub fn odd_multiplicity(&self, span: &Span) -> usize {
        self.parts
            .iter()
            .filter(|(_, m)| m % 2 == 1)
            .map(|(c, _)| c.count(span))
            .sum()
    }
}

/// Distinct real roots of `p` in `interval`, closed by default; `open`
/// excludes roots at finite endpoints.
pub fn sturm_count(p: &QPoly, interval: &ExtInterval, open: bool) -> Result<usize> {
    let span = if open { interval.interior() } else { interval.as_span() };
    Ok(RootCounter::new(p)?.distinct(&span))
}

/// Number of sign changes of `p` on the open interior of `interval`.
pub fn sign_change_count(p: &QPoly, interval: &ExtInterval) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let span = interval.interior();
    if let Some(n) = bracketed_sign_changes(p, &span) {
        return Ok(n);
    }
    Ok(RootCounter::new(p)?.odd_multiplicity(&span))
}

/// Sign changes pinned between a lower bound witnessed by exact signs at
/// points between approximate roots and the Descartes bound. `None` when
/// the two disagree.
fn bracketed_sign_changes(p: &QPoly, span: &Span) -> Option<usize> {
    let Some((lo, _, hi, _)) = span.bounds() else {
        return Some(0);
    };
    let base = integer_primitive(p);
    let upper = descartes_bound(&base, lo, hi)?;
    if upper <= 1 {
        // Descartes counts are exact in parity.
        return Some(upper);
    }
    let roots = all_roots_exact(p).ok()?;
    let inside = |x: f64| -> bool {
        let Some(v) = Rational::from_float(x) else {
            return false;
        };
        let v = ExtReal::Finite(v);
        *lo < v && v < *hi
    };
    let mut xs: Vec<f64> = roots.iter().map(|z| z.re).filter(|x| x.is_finite()).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mut probes = Vec::with_capacity(xs.len() + 1);
    if let (Some(first), Some(last)) = (xs.first(), xs.last()) {
        probes.push(first - 1.0 - first.abs());
        probes.extend(xs.windows(2).map(|w| 0.5 * (w[0] + w[1])));
        probes.push(last + 1.0 + last.abs());
    }
    let eval = ExactEvaluator::new(p);
    let mut signs = vec![end_sign(&base, lo, true)];
    signs.extend(probes.into_iter().filter(|&x| inside(x)).map(|x| eval.sign_at(x)));
    signs.push(end_sign(&base, hi, false));
    signs.retain(|&s| s != 0);
    let lower = signs.windows(2).filter(|w| w[0] != w[1]).count();
    (lower == upper).then_some(lower)
}

/// Descartes bound on the roots in the open interval `(lo, hi)`, counted
/// with multiplicity. `None` for the whole line with a root at 0.
fn descartes_bound(p: &[BigInt], lo: &ExtReal, hi: &ExtReal) -> Option<usize> {
    let reflect = |q: &[BigInt]| -> Vec<BigInt> {
        q.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect()
    };
    let bound = match (lo, hi) {
        (ExtReal::Finite(a), ExtReal::PosInf) => variations(&taylor_shift(p, a)),
        (ExtReal::NegInf, ExtReal::Finite(b)) => variations(&reflect(&taylor_shift(p, b))),
        (ExtReal::NegInf, ExtReal::PosInf) => {
            if p.first().is_none_or(|c| c.is_zero()) {
                return None;
            }
            variations(p) + variations(&reflect(p))
        }
        (ExtReal::Finite(a), ExtReal::Finite(b)) => {
            // x ↦ a + (b - a) x maps (0, 1) onto (a, b), and x ↦ 1/(1 + x)
            // maps (0, ∞) onto (0, 1).
            let scaled = compose_linear(p, a, &(b - a));
            let mut rev = scaled;
            rev.reverse();
            variations(&taylor_shift(&rev, &Rational::one()))
        }
        _ => return Some(0),
    };
    Some(bound)
}

/// Sign of `p` just inside the interval at endpoint `e`, approached from
/// the right when `from_right`.
fn end_sign(p: &[BigInt], e: &ExtReal, from_right: bool) -> i8 {
    let sign = |c: &BigInt| if c.is_positive() { 1 } else { -1 };
    let lead = p.last().map_or(0, sign);
    match e {
        ExtReal::PosInf => lead,
        ExtReal::NegInf => {
            if p.len() % 2 == 1 {
                lead
            } else {
                -lead
            }
        }
        ExtReal::Finite(a) => {
            let q = taylor_shift(p, a);
            match q.iter().position(|c| !c.is_zero()) {
                Some(k) if !from_right && k % 2 == 1 => -sign(&q[k]),
                Some(k) => sign(&q[k]),
                None => 0,
            }
        }
    }
}

fn variations(p: &[BigInt]) -> usize {
    let signs: Vec<Sign> = p.iter().map(|c| c.sign()).filter(|s| *s != Sign::NoSign).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Positive multiple of `p(x + a)`.
fn taylor_shift(p: &[BigInt], a: &Rational) -> Vec<BigInt> {
    compose_linear(p, a, &Rational::one())
}

/// Positive multiple of `p(a + s x)` for `s > 0`, as integers.
fn compose_linear(p: &[BigInt], a: &Rational, s: &Rational) -> Vec<BigInt> {
    // With a = u/w and s = t/w, w^deg · p((u + t x)/w) is integral.
    let w = a.denom().lcm(s.denom());
    let u = a.numer() * (&w / a.denom());
    let t = s.numer() * (&w / s.denom());
    let mut acc: Vec<BigInt> = Vec::with_capacity(p.len());
    let mut pow = BigInt::one();
    for (i, c) in p.iter().rev().enumerate() {
        if i > 0 {
            pow *= &w;
            // acc · (u + t x)
            let mut next = vec![BigInt::zero(); acc.len() + 1];
            for (k, v) in acc.iter().enumerate() {
                next[k] += v * &u;
                next[k + 1] += v * &t;
            }
            acc = next;
        }
        if acc.is_empty() {
            acc.push(c.clone());
        } else {
            acc[0] += c * &pow;
        }
    }
    acc
}

/// Real roots of `p` in the closed `interval`, counted with multiplicity.
pub fn zeros_total_count(p: &QPoly, interval: &ExtInterval) -> Result<usize> {
    Ok(RootCounter::new(p)?.with_multiplicity(&interval.as_span()))
}
