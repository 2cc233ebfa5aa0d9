#![allow(dead_code)]

use dsop_core::ordering::is_sequentially_ordered;
use dsop_core::rational::{int, ratio};
use dsop_core::{MassTerm, QPoly, Rational, SobolevSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(num: i64, den: i64) -> Rational {
    ratio(num, den)
}

pub fn qpoly(coeffs: &[(i64, i64)]) -> QPoly {
    QPoly::new(coeffs.iter().map(|&(n, d)| ratio(n, d)).collect())
}

pub fn derivative_mass() -> SobolevSpec {
    SobolevSpec::laguerre(0, vec![MassTerm::new(int(-1), 1, int(2))]).unwrap()
}

pub fn ordered_four() -> SobolevSpec {
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

pub fn unordered_two() -> SobolevSpec {
    SobolevSpec::laguerre(0, vec![MassTerm::new(int(-15), 1, int(1)), MassTerm::new(int(-9), 2, int(1))]).unwrap()
}

pub fn ordered_four_s5() -> QPoly {
    let d = 16894750106161i64;
    qpoly(&[
        (-22386262325875230, d),
        (-36972053870326650, d),
        (-7830454972601355, d),
        (1836311881214045, d),
        (380961336355365, d),
        (1, 1),
    ])
}

pub fn unordered_two_s5() -> QPoly {
    let d = 21682477i64;
    qpoly(&[
        (42523040550, d),
        (-98030649090, d),
        (40953207555, d),
        (-5053767275, d),
        (55079160, d),
        (1, 1),
    ])
}

/// `p/q` with `q ≤ 4`, uniformly over the grid inside `[lo, hi]`.
pub fn grid_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    let den = rng.random_range(1..=4i64);
    let num = rng.random_range(lo * den..=hi * den);
    ratio(num, den)
}

/// λ in `(0, 10]` with a small denominator.
pub fn weight(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.random_range(1..=5i64);
    ratio(rng.random_range(1..=10 * den), den)
}

/// Laguerre inner product with up to `max_points` mass points in `[-10, -1]`,
/// each carrying one derivative order up to `max_order`.
pub fn random_laguerre_spec(rng: &mut ChaCha8Rng, max_alpha: u32, max_points: usize, max_order: usize) -> SobolevSpec {
    loop {
        let alpha = rng.random_range(0..=max_alpha);
        let count = rng.random_range(1..=max_points);
        let mut masses: Vec<MassTerm> = Vec::new();
        for _ in 0..count {
            let c = grid_rational(rng, -10, -1);
            if masses.iter().any(|m| m.c == c) {
                continue;
            }
            masses.push(MassTerm::new(c, rng.random_range(0..=max_order), weight(rng)));
        }
        if let Ok(s) = SobolevSpec::laguerre(alpha, masses) {
            return s;
        }
    }
}

/// Rejection-sampled sequentially ordered variant of [`random_laguerre_spec`].
pub fn random_ordered_spec(rng: &mut ChaCha8Rng, max_alpha: u32, max_points: usize, max_order: usize) -> SobolevSpec {
    loop {
        let s = random_laguerre_spec(rng, max_alpha, max_points, max_order);
        if is_sequentially_ordered(&s).is_ordered() {
            return s;
        }
    }
}
