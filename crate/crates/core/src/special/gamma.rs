//! Γ via the Lanczos approximation (g = 7, nine coefficients).

use crate::error::{Error, Result};
use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;

#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum<T: Real>(xm1: T) -> T {
    LANCZOS_COEF[1..]
        .iter()
        .enumerate()
        .fold(T::lit(LANCZOS_COEF[0]), |acc, (i, &c)| {
            acc + T::lit(c) / (xm1 + T::int(i as i64 + 1))
        })
}

/// Γ(x) for x > 0.
pub fn gamma_fn<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain(format!("Γ(x) requires finite x > 0, got {x}")));
    }
    if x < T::lit(0.5) {
        // Reflection keeps the Lanczos sum in its accurate range.
        let pi = T::PI();
        return Ok(pi / ((pi * x).sin() * gamma_fn(T::one() - x)?));
    }
    let xm1 = x - T::one();
    let w = xm1 + T::lit(LANCZOS_G + 0.5);
    let sqrt_two_pi = (T::lit(2.0) * T::PI()).sqrt();
    // w^(x−1/2) split in two factors so it survives up to x ≈ 170.
    let half_pow = w.powf(T::lit(0.5) * (xm1 + T::lit(0.5)));
    Ok(sqrt_two_pi * half_pow * ((-w).exp() * half_pow) * lanczos_sum(xm1))
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain(format!("ln Γ(x) requires finite x > 0, got {x}")));
    }
    if x < T::lit(0.5) {
        let pi = T::PI();
        return Ok(pi.ln() - (pi * x).sin().ln() - ln_gamma(T::one() - x)?);
    }
    let xm1 = x - T::one();
    let w = xm1 + T::lit(LANCZOS_G + 0.5);
    Ok(T::lit(0.5) * (T::lit(2.0) * T::PI()).ln() + (xm1 + T::lit(0.5)) * w.ln() - w
        + lanczos_sum(xm1).ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::integrate_adaptive;
    use approx::assert_relative_eq;

    #[test]
    fn identities() {
        assert_relative_eq!(gamma_fn(1.0f64).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(
            gamma_fn(0.5f64).unwrap(),
            std::f64::consts::PI.sqrt(),
            max_relative = 1e-13
        );
        assert_relative_eq!(gamma_fn(0.5f64).unwrap(), 1.772_453_850_9, epsilon = 1e-10);
    }

    #[test]
    fn reference_values() {
        // mpmath, 25 digits
        assert_relative_eq!(gamma_fn(0.1f64).unwrap(), 9.513_507_698_668_731, max_relative = 1e-12);
        assert_relative_eq!(gamma_fn(19.5f64).unwrap(), 27_724_322_986_333_718.18, max_relative = 1e-12);
        assert_relative_eq!(ln_gamma(50.5f64).unwrap(), 146.519_255_490_720_627, max_relative = 1e-13);
    }

    #[test]
    fn matches_integral_definition() {
        let x = 1.732_050_8_f64;
        let oracle = integrate_adaptive(|t: f64| t.powf(x - 1.0) * (-t).exp(), 0.0, f64::INFINITY, 1e-14)
            .unwrap()
            .value;
        assert_relative_eq!(gamma_fn(x).unwrap(), oracle, max_relative = 1e-10);
        assert_relative_eq!(gamma_fn(x).unwrap(), 0.915_102_295_354_645_2, max_relative = 1e-12);
    }

    #[test]
    fn recurrence_on_grid() {
        for i in 0..=99 {
            let x = 0.1 + 0.1 * i as f64;
            let lhs = gamma_fn(x + 1.0).unwrap();
            let rhs = x * gamma_fn(x).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
        }
    }

    #[test]
    fn ln_gamma_consistent() {
        for i in 1..=40 {
            let x = 0.5 * i as f64;
            assert_relative_eq!(ln_gamma(x).unwrap(), gamma_fn(x).unwrap().ln(), epsilon = 1e-12);
        }
    }

    #[test]
    fn rejects_non_positive() {
        assert!(gamma_fn(0.0f64).is_err());
        assert!(gamma_fn(-1.5f64).is_err());
        assert!(ln_gamma(0.0f64).is_err());
    }

    #[test]
    fn single_precision() {
        assert!((gamma_fn(5.0f32).unwrap() - 24.0).abs() < 1e-4);
    }
}
