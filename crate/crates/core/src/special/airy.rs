//! Airy function Ai and its zeros.
//!
//! Ai is summed from its Maclaurin series for −8 ≤ x ≤ 2, from the
//! Hankel-type asymptotic expansion for x < −8, and for x > 2 from
//! `Ai(x) = √(x/3) K_{1/3}(ζ)/π` with K written through Kummer's U. Zeros are bracketed around
//! the asymptotic zero estimate and then bisected on Ai itself.

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::kummer::kummer_u;

/// Largest zero index served by [`airy_negative_zeros`].
pub const MAX_AIRY_ZEROS: usize = 20;

const SERIES_LIMIT: f64 = 8.0;

#[allow(clippy::excessive_precision)]
const AI_0: f64 = 0.355_028_053_887_817_239_26;
#[allow(clippy::excessive_precision)]
const NEG_AI_PRIME_0: f64 = 0.258_819_403_792_806_798_41;

fn ai_series<T: Real>(x: T) -> T {
    let x3 = x * x * x;
    let mut f_term = T::one();
    let mut g_term = x;
    let mut f = f_term;
    let mut g = g_term;
    for k in 1..200 {
        let k3 = T::int(3 * k);
        f_term = f_term * x3 / ((k3 - T::one()) * k3);
        g_term = g_term * x3 / (k3 * (k3 + T::one()));
        f = f + f_term;
        g = g + g_term;
        if f_term.abs() <= T::epsilon() * f.abs() * T::lit(1e-3)
            && g_term.abs() <= T::epsilon() * g.abs().max(T::min_positive_value()) * T::lit(1e-3)
        {
            break;
        }
    }
    T::lit(AI_0) * f - T::lit(NEG_AI_PRIME_0) * g
}

/// Ai(−y) for large positive y.
fn ai_asymptotic_negative<T: Real>(y: T) -> T {
    let zeta = T::lit(2.0 / 3.0) * y * y.sqrt();
    let mut p = T::zero();
    let mut q = T::zero();
    let mut u = T::one();
    let mut last = T::infinity();
    for k in 0..60 {
        if k > 0 {
            let kf = T::int(k);
            let six_k = T::lit(6.0) * kf;
            u = u * (six_k - T::lit(5.0)) * (six_k - T::lit(3.0)) * (six_k - T::one())
                / ((T::lit(2.0) * kf - T::one()) * T::lit(216.0) * kf);
        }
        let term = u / zeta.powi(k as i32);
        if term.abs() > last {
            break; // asymptotic series has started to diverge
        }
        last = term.abs();
        let sign = if (k / 2) % 2 == 0 { T::one() } else { -T::one() };
        if k % 2 == 0 {
            p = p + sign * term;
        } else {
            q = q + sign * term;
        }
        if term.abs() < T::epsilon() * T::lit(1e-2) {
            break;
        }
    }
    let phase = zeta + T::FRAC_PI_4();
    (phase.sin() * p - phase.cos() * q) / (T::PI().sqrt() * y.powf(T::lit(0.25)))
}

/// Ai(x) for x > 0 large enough that the series cancels badly.
///
/// `K_ν(ζ) = √π (2ζ)^ν e^{−ζ} U(ν + 1/2, 2ν + 1, 2ζ)` with ν = 1/3.
fn ai_decaying<T: Real>(x: T) -> Result<T> {
    let zeta = T::lit(2.0 / 3.0) * x * x.sqrt();
    let two_zeta = T::lit(2.0) * zeta;
    let u = kummer_u(T::lit(5.0 / 6.0), T::lit(5.0 / 3.0), two_zeta)?;
    Ok((x / T::lit(3.0)).sqrt() / T::PI().sqrt() * two_zeta.cbrt() * (-zeta).exp() * u)
}

pub fn airy_ai<T: Real>(x: T) -> Result<T> {
    if !x.is_finite() {
        return Err(Error::domain(format!("airy_ai needs a finite argument, got {x}")));
    }
    if x > T::lit(2.0) {
        ai_decaying(x)
    } else if x >= -T::lit(SERIES_LIMIT) {
        Ok(ai_series(x))
    } else {
        Ok(ai_asymptotic_negative(-x))
    }
}

/// Asymptotic estimate of |a_k|.
fn zero_estimate(k: usize) -> f64 {
    let t = 3.0 * std::f64::consts::PI * (4.0 * k as f64 - 1.0) / 8.0;
    let t2 = t.powi(-2);
    t.powf(2.0 / 3.0) * (1.0 + 5.0 / 48.0 * t2 - 5.0 / 36.0 * t2 * t2)
}

/// The first `k` zeros of Ai as positive magnitudes |a_1| < |a_2| < ….
pub fn airy_negative_zeros<T: Real>(k: usize) -> Result<Vec<T>> {
    if k == 0 || k > MAX_AIRY_ZEROS {
        return Err(Error::domain(format!(
            "airy_negative_zeros supports 1 ≤ k ≤ {MAX_AIRY_ZEROS}, got {k}"
        )));
    }
    (1..=k)
        .map(|idx| {
            let guess = T::lit(zero_estimate(idx));
            let width = T::lit(0.2);
            let mut lo = guess - width;
            let mut hi = guess + width;
            let f = |y: T| ai_signed(-y);
            let mut f_lo = f(lo);
            if f_lo * f(hi) > T::zero() {
                return Err(Error::Numeric(format!("failed to bracket Airy zero {idx}")));
            }
            for _ in 0..200 {
                let mid = T::lit(0.5) * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let f_mid = f(mid);
                if f_mid == T::zero() {
                    return Ok(mid);
                }
                if (f_mid > T::zero()) == (f_lo > T::zero()) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            Ok(T::lit(0.5) * (lo + hi))
        })
        .collect()
}

fn ai_signed<T: Real>(x: T) -> T {
    if x >= -T::lit(SERIES_LIMIT) {
        ai_series(x)
    } else {
        ai_asymptotic_negative(-x)
    }
}
