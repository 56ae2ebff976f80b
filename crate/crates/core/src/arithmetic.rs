//! Euler's totient, the totient bound on denominators of rational angles,
//! and continued-fraction detectors for rational numbers and rational
//! multiples of π.

use std::f64::consts::PI;

/// A detected angle `θ ≈ pπ/q` with `gcd(p, q) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalAngle {
    pub p: u64,
    pub q: u64,
    pub theta: f64,
}

impl RationalAngle {
    /// `θ − pπ/q`.
    pub fn residual(&self) -> f64 {
        self.theta - self.p as f64 * PI / self.q as f64
    }
}

/// Declared bound `d` for the degree of the entry field over its purely
/// transcendental part. Rational angles `pπ/q` of the surface satisfy
/// `φ(q) ≤ 2d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeBound(u64);

impl DegreeBound {
    pub fn new(d: u64) -> Option<Self> {
        (d >= 1).then_some(DegreeBound(d))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// A reduced fraction `num/den` with `den ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub num: i64,
    pub den: u64,
}

impl Fraction {
    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Euler's φ by trial-division factorization. `φ(1) = 1`.
///
/// # Panics
/// If `q == 0`.
pub fn euler_phi(q: u64) -> u64 {
    assert!(q >= 1, "φ is defined for positive integers");
    let mut n = q;
    let mut result = q;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Degree of `ℚ(e^{2πi/q})` over `ℚ`, which is `φ(q)`.
pub fn cyclotomic_degree(q: u64) -> u64 {
    euler_phi(q)
}

/// `φ(q) ≤ 2d`.
pub fn totient_bound_check(q: u64, d: DegreeBound) -> bool {
    euler_phi(q) <= 2 * d.get()
}

/// Every `q` with `φ(q) ≤ 2d`, ascending.
///
/// The search stops at `8d²`: `φ(q) ≥ √(q/2)` for all `q ≥ 1`, so
/// `φ(q) ≤ 2d` forces `q ≤ 8d²`.
pub fn admissible_q(d: DegreeBound) -> Vec<u64> {
    let limit = 8 * d.get() * d.get();
    (1..=limit).filter(|&q| totient_bound_check(q, d)).collect()
}

/// Exact binary expansion of a finite non-negative float as `n / 2^e`,
/// truncated to at most 100 fractional bits.
fn dyadic(x: f64) -> (u128, u32) {
    debug_assert!(x.is_finite() && x >= 0.0);
    if x == 0.0 {
        return (0, 0);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let mant = if exp == 0 {
        (bits & ((1 << 52) - 1)) << 1
    } else {
        (bits & ((1 << 52) - 1)) | (1 << 52)
    };
    // x = mant · 2^(exp − 1075)
    let shift = exp - 1075;
    if shift >= 0 {
        ((mant as u128) << shift, 0)
    } else {
        let e = (-shift) as u32;
        if e <= 100 {
            (mant as u128, e)
        } else {
            let drop = e - 100;
            let n = if drop >= 64 { 0 } else { (mant >> drop) as u128 };
            (n, 100)
        }
    }
}

/// The fraction closest to `x ≥ 0` among those with denominator at most
/// `max_den`, from continued-fraction convergents and the last
/// semiconvergent. Ties go to the smaller denominator.
///
/// Works on the exact binary value of `x`. Returns `None` for negative or
/// non-finite input, for `x ≥ 2^53`, or for `max_den > 2^40`.
pub fn best_rational(x: f64, max_den: u64) -> Option<Fraction> {
    const MAX_SUPPORTED_DEN: u64 = 1 << 40;
    assert!(max_den >= 1);
    if !x.is_finite() || !(0.0..9.007_199_254_740_992e15).contains(&x) || max_den > MAX_SUPPORTED_DEN {
        return None;
    }
    let (num, exp) = dyadic(x);
    let whole: u128 = 1u128 << exp;
    let max_den = max_den as u128;

    // convergents p0/q0 (previous) and p1/q1 (current)
    let (mut p0, mut q0, mut p1, mut q1): (u128, u128, u128, u128) = (0, 1, 1, 0);
    let (mut n, mut den) = (num, whole);
    while den != 0 {
        let a = n / den;
        let q2 = match a.checked_mul(q1).and_then(|v| v.checked_add(q0)) {
            Some(q2) if q2 <= max_den => q2,
            _ => break,
        };
        (p0, q0, p1, q1) = (p1, q1, p0 + a * p1, q2);
        (n, den) = (den, n - a * den);
    }

    let (p, q) = if den == 0 {
        (p1, q1)
    } else {
        let k = (max_den - q0) / q1;
        let (ps, qs) = (p0 + k * p1, q0 + k * q1);
        // |p/q − num/whole| = |p·whole − num·q| / (q·whole); both products
        // stay below 2^127 for the accepted input range.
        let err = |p: u128, q: u128| {
            let diff = (p as i128 * whole as i128 - num as i128 * q as i128).unsigned_abs();
            diff as f64 / (q as f64 * whole as f64)
        };
        let (e1, es) = (err(p1, q1), err(ps, qs));
        if k == 0 || e1 < es || (e1 == es && q1 <= qs) {
            (p1, q1)
        } else {
            (ps, qs)
        }
    };
    let g = gcd(p as u64, q as u64).max(1);
    Some(Fraction {
        num: (p as u64 / g) as i64,
        den: q as u64 / g,
    })
}

/// Recognises `x ∈ [0, 1]` as `p/q` with `q ≤ max_den` when the best such
/// approximation lies within `eps`.
pub fn rationality_detect(x: f64, max_den: u64, eps: f64) -> Option<Fraction> {
    if !(0.0..=1.0).contains(&x) {
        return None;
    }
    let f = best_rational(x, max_den)?;
    ((x - f.value()).abs() < eps).then_some(f)
}

/// Recognises `θ ∈ (0, π)` as `pπ/q` with `q ≤ qmax` and `|θ − pπ/q| < eps`.
pub fn detect_rational_pi(theta: f64, qmax: u64, eps: f64) -> Option<RationalAngle> {
    if !(theta > 0.0 && theta <= PI) {
        return None;
    }
    let f = best_rational(theta / PI, qmax)?;
    if f.num <= 0 {
        return None;
    }
    let hit = RationalAngle {
        p: f.num as u64,
        q: f.den,
        theta,
    };
    (hit.residual().abs() < eps).then_some(hit)
}
