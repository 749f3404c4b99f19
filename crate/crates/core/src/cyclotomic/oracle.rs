//! Trace via complex embeddings, in fixed-point arithmetic.
//!
//! `tr(a) = Σ_ω a(ω)` over the primitive n-th roots of unity `ω`. This is a
//! completely different route from the exact multiplication-matrix trace and
//! is meant for tests only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::CyclotomicElement;

/// Extra digits carried beyond the requested precision.
const GUARD_DIGITS: u32 = 10;

/// Fixed-point reals with `digits` decimal places.
struct FixedPoint {
    scale: BigInt,
    digits: u32,
    pi: BigInt,
}

impl FixedPoint {
    fn new(digits: u32) -> Self {
        let scale = BigInt::from(10).pow(digits);
        // Machin: π = 16·atan(1/5) − 4·atan(1/239)
        let pi = arctan_inverse(5, &scale) * 16 - arctan_inverse(239, &scale) * 4;
        FixedPoint { scale, digits, pi }
    }

    /// cos(2π·m/n)
    fn cos_turn(&self, m: i64, n: i64) -> BigInt {
        let mut m = m.rem_euclid(n);
        if 2 * m > n {
            m -= n;
        }
        let theta = (&self.pi * 2 * m) / n;
        let theta_sq = &theta * &theta / &self.scale;
        let mut sum = self.scale.clone();
        let mut term = self.scale.clone();
        let mut k: i64 = 1;
        loop {
            let next: BigInt = &term * &theta_sq / &self.scale;
            term = -next / ((2 * k - 1) * (2 * k));
            if term.is_zero() {
                break;
            }
            sum += &term;
            k += 1;
        }
        sum
    }

    fn to_f64(&self, x: &BigInt) -> f64 {
        // Keep 17 significant fractional digits before handing over to f64.
        let keep = self.digits.min(17);
        let shrink = BigInt::from(10).pow(self.digits - keep);
        let reduced = x / shrink;
        reduced.to_f64().unwrap_or(f64::NAN) / 10f64.powi(keep as i32)
    }
}

fn arctan_inverse(x: i64, scale: &BigInt) -> BigInt {
    let x_sq = BigInt::from(x * x);
    let mut power = scale / x;
    let mut sum = power.clone();
    let mut k: i64 = 1;
    loop {
        power = &power / &x_sq;
        let term = &power / (2 * k + 1);
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// Sum of `a(ω)` over primitive n-th roots of unity, evaluated with
/// `precision` decimal digits (clamped to `1..=200`) and returned as `f64`.
pub fn embedding_trace_oracle(a: &CyclotomicElement, precision: u32) -> f64 {
    let fp = FixedPoint::new(precision.clamp(1, 200) + GUARD_DIGITS);
    let n = a.conductor() as i64;
    let mut total = BigInt::zero();
    for k in (1..=n).filter(|k| k.gcd(&n) == 1) {
        for (i, c) in a.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // Imaginary parts cancel between ω and its conjugate.
            total += c * fp.cos_turn(k * i as i64, n);
        }
    }
    fp.to_f64(&total)
}
