//! Kummer's confluent hypergeometric function of the second kind.

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::gamma::ln_gamma;
use super::quadrature::{integrate_with, QuadratureOptions};

/// U(a, b, z) for a > 0, z > 0 from the Laplace-type integral
///
/// U(a, b, z) = 1/Γ(a) ∫₀^∞ e^{−zt} t^{a−1} (1+t)^{b−a−1} dt.
///
/// The integral is evaluated after substituting s = z·t, which pulls out the
/// z^{−a} asymptote and keeps the integrand of order one for any z.
pub fn kummer_u<T: Real>(a: T, b: T, z: T) -> Result<T> {
    if !(a > T::zero()) || !(z > T::zero()) {
        return Err(Error::domain(format!(
            "kummer_u requires a > 0 and z > 0, got a = {a}, z = {z}"
        )));
    }
    let exponent = b - a - T::one();
    let am1 = a - T::one();
    let integrand = |s: T| {
        if s == T::zero() {
            return if am1 == T::zero() { T::one() } else { T::zero() };
        }
        (am1 * s.ln() - s + exponent * (s / z).ln_1p()).exp()
    };
    let opts = QuadratureOptions {
        abs_tol: T::zero(),
        rel_tol: T::lit(1e-13).max(T::epsilon() * T::lit(64.0)),
        max_subdivisions: 4000,
    };
    let low = integrate_with(integrand, T::zero(), T::one(), opts)?;
    let high = integrate_with(integrand, T::one(), T::infinity(), opts)?;
    let scaled = low.value + high.value;
    Ok(scaled * (-a * z.ln() - ln_gamma(a)?).exp())
}
