//! Effective (Foldy–Wouthuysen) picture of the linear confinement
//! `βμr + νr` with `ν` tuned to preserve the n₀ = −κ₀ level.
//!
//! Particle sector: the upper block picks up, at first order,
//!
//! ```text
//! μ [ λ² r / (2κ₀²) − (σ·L + 1)/(2m² r) − {p², r}/(4m²) ]
//! ```
//!
//! whose Schrödinger–Pauli expectation value is
//! `ΔE = (μλ/4m) [ (3n² − κ(κ+1))/κ₀² − (n² + κ(κ−1))/n² ]`.
//!
//! Antiparticle sector: βμr and νr add with the same sign, so the leading
//! confining slope is 2μ and the Coulomb term is repulsive.

use num_rational::Ratio;

use crate::coulomb::{expectation_anticomm_p2_r, expectation_inv_r, expectation_r};
use crate::error::{Error, Result};
use crate::quantum_numbers::{check_state, enumerate_kappa, sigma_dot_l_plus_one_eigenvalue, Component};
use crate::scalar::Real;
use crate::special::{airy_ai, airy_negative_zeros, integrate_with, QuadratureOptions};

/// First-order shift and its three operator contributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveShift<T> {
    pub total: T,
    /// `μλ²⟨r⟩/(2κ₀²)`
    pub term_linear: T,
    /// `−μ⟨(σ·L+1)/r⟩/(2m²)`
    pub term_spin_orbit: T,
    /// `−μ⟨{p², r}⟩/(4m²)`
    pub term_kinetic: T,
    /// Exact value of the square bracket.
    pub bracket: Ratio<i64>,
}

impl<T: Real> EffectiveShift<T> {
    pub fn term_sum(&self) -> T {
        self.term_linear + self.term_spin_orbit + self.term_kinetic
    }
}

fn check_shift_inputs<T: Real>(n: u32, kappa: i32, kappa0: i32, lambda: T, mass: T) -> Result<()> {
    if kappa == 0 || kappa0 == 0 {
        return Err(Error::domain("κ = 0 is not a Dirac angular quantum number"));
    }
    if n < 1 || kappa.unsigned_abs() > n {
        return Err(Error::domain(format!("need |κ| ≤ n, got n = {n}, κ = {kappa}")));
    }
    if !(lambda > T::zero()) || !(mass > T::zero()) {
        return Err(Error::domain(format!(
            "need λ > 0 and m > 0, got λ = {lambda}, m = {mass}"
        )));
    }
    Ok(())
}

/// `(3n² − κ(κ+1))/κ₀² − (n² + κ(κ−1))/n²`, exactly.
pub fn shift_bracket(n: u32, kappa: i32, kappa0: i32) -> Result<Ratio<i64>> {
    if kappa == 0 || kappa0 == 0 || n < 1 {
        return Err(Error::domain("need n ≥ 1 and κ, κ₀ ≠ 0"));
    }
    let (n, k, k0) = (n as i64, kappa as i64, kappa0 as i64);
    Ok(Ratio::new(3 * n * n - k * (k + 1), k0 * k0) - Ratio::new(n * n + k * (k - 1), n * n))
}

/// Closed-form first-order shift of |nκ⟩ with its term decomposition.
pub fn first_order_shift<T: Real>(
    n: u32,
    kappa: i32,
    kappa0: i32,
    lambda: T,
    mu: T,
    mass: T,
) -> Result<EffectiveShift<T>> {
    check_shift_inputs(n, kappa, kappa0, lambda, mass)?;
    let bracket = shift_bracket(n, kappa, kappa0)?;
    let bracket_value = T::int(*bracket.numer()) / T::int(*bracket.denom());
    let total = mu * lambda / (T::lit(4.0) * mass) * bracket_value;

    // Closed-form Schrödinger–Coulomb moments; valid as formulas for |κ| ≤ n.
    let (ni, k, k0) = (n as i64, kappa as i64, kappa0 as i64);
    let nf = T::int(ni);
    let two = T::lit(2.0);
    let mean_r = T::int(3 * ni * ni - k * (k + 1)) / (two * lambda * mass);
    let mean_inv_r = lambda * mass / (nf * nf);
    let binding = -lambda * lambda * mass / (two * nf * nf);
    let anticomm = T::lit(4.0) * mass * (binding * mean_r + lambda);
    let so = T::int(sigma_dot_l_plus_one_eigenvalue(kappa, Component::Upper) as i64);

    Ok(EffectiveShift {
        total,
        term_linear: mu * lambda * lambda * mean_r / (two * T::int(k0 * k0)),
        term_spin_orbit: -mu * so * mean_inv_r / (two * mass * mass),
        term_kinetic: -mu * anticomm / (T::lit(4.0) * mass * mass),
        bracket,
    })
}

/// The same shift assembled from the public expectation-value routines.
pub fn shift_from_expectations<T: Real>(
    n: u32,
    kappa: i32,
    kappa0: i32,
    lambda: T,
    mu: T,
    mass: T,
) -> Result<T> {
    check_shift_inputs(n, kappa, kappa0, lambda, mass)?;
    let two = T::lit(2.0);
    let k0 = T::int(kappa0 as i64);
    let so = T::int(sigma_dot_l_plus_one_eigenvalue(kappa, Component::Upper) as i64);
    let linear = mu * lambda * lambda * expectation_r(n, kappa, lambda, mass)? / (two * k0 * k0);
    let spin_orbit = -mu * so * expectation_inv_r(n, lambda, mass)? / (two * mass * mass);
    let kinetic =
        -mu * expectation_anticomm_p2_r(n, kappa, lambda, mass)? / (T::lit(4.0) * mass * mass);
    Ok(linear + spin_orbit + kinetic)
}

/// `(n − κ)(n + κ)(3n² + κ(κ−1))`: the shift numerator of |nκ⟩ when κ₀ = κ.
pub fn cancellation_numerator(n: u32, kappa: i32) -> i128 {
    let (n, k) = (n as i128, kappa as i128);
    (n - k) * (n + k) * (3 * n * n + k * (k - 1))
}

/// Shift of the reference level n₀ with κ₀ = −n₀ from the factored form.
/// Vanishes identically.
pub fn reference_cancellation<T: Real>(n0: u32, lambda: T, mu: T, mass: T) -> Result<T> {
    if n0 < 1 {
        return Err(Error::domain("n₀ must be at least 1"));
    }
    let kappa0 = -(n0 as i32);
    let numer = cancellation_numerator(n0, kappa0);
    let denom = (kappa0 as i128).pow(2) * (n0 as i128).pow(2);
    Ok(mu * lambda / (T::lit(4.0) * mass) * T::lit(numer as f64) / T::lit(denom as f64))
}

/// κ ∈ [−n, n]\{0} whose own-reference numerator vanishes, with a flag
/// telling whether the state exists (only κ = −n does).
pub fn cancellation_roots(n: u32) -> Vec<(i32, bool)> {
    let n_i = n as i32;
    (-n_i..=n_i)
        .filter(|&k| k != 0 && cancellation_numerator(n, k) == 0)
        .map(|k| (k, check_state(n, k).is_ok() && k < 0))
        .collect()
}

/// Integer solution of `3n² − κ(κ+1) = N²(n² + κ(κ−1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PreservationSolution {
    pub n: u32,
    pub kappa: i32,
    pub big_n: u32,
    /// κ is negative and a valid label for n.
    pub physical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessReport {
    pub n_max: u32,
    pub big_n_max: u32,
    /// Sorted by (n, κ, N).
    pub solutions: Vec<PreservationSolution>,
    /// For every N ≥ 2 in range, `(N²−3)n²` and `κ((N²−1) − (N²+1)κ)` had
    /// strictly opposite signs.
    pub sign_opposition_holds: bool,
}

impl UniquenessReport {
    pub fn physical_solutions(&self) -> impl Iterator<Item = &PreservationSolution> {
        self.solutions.iter().filter(|s| s.physical)
    }

    /// Only N = 1, κ = ±n solutions, and only κ = −n physical.
    pub fn confirms_uniqueness(&self) -> bool {
        self.sign_opposition_holds
            && self.solutions.iter().all(|s| {
                s.big_n == 1 && s.kappa.unsigned_abs() == s.n && s.physical == (s.kappa < 0)
            })
            && self.solutions.len() == 2 * self.n_max as usize
    }
}

/// Both sides of `(N²−3)n² = κ((N²−1) − (N²+1)κ)`, overflow-checked.
pub fn sign_sides(n: u32, kappa: i32, big_n: u32) -> Result<(i64, i64)> {
    let overflow = || Error::Numeric("integer overflow in preservation scan".into());
    let (n, k, nn) = (n as i64, kappa as i64, big_n as i64);
    let nn2 = nn.checked_mul(nn).ok_or_else(overflow)?;
    let lhs = (nn2 - 3).checked_mul(n.checked_mul(n).ok_or_else(overflow)?).ok_or_else(overflow)?;
    let inner = (nn2 - 1)
        .checked_sub((nn2 + 1).checked_mul(k).ok_or_else(overflow)?)
        .ok_or_else(overflow)?;
    let rhs = k.checked_mul(inner).ok_or_else(overflow)?;
    Ok((lhs, rhs))
}

/// The shift of |nκ⟩ vanishes when `(3n² − κ(κ+1))/(n² + κ(κ−1)) = κ₀²/n²`.
/// Searches that ratio for integer square roots N by exhaustive integer
/// arithmetic over n ≤ n_max, κ ∈ [−n, n]\{0}, 1 ≤ N ≤ N_max.
pub fn preservation_scan(n_max: u32, big_n_max: u32) -> Result<UniquenessReport> {
    if n_max < 1 || big_n_max < 2 {
        return Err(Error::domain("need n_max ≥ 1 and N_max ≥ 2"));
    }
    let overflow = || Error::Numeric("integer overflow in preservation scan".into());
    let mut solutions = Vec::new();
    let mut opposition = true;
    for n in 1..=n_max {
        let n_i = n as i64;
        for kappa in (-(n as i32)..=n as i32).filter(|&k| k != 0) {
            let k = kappa as i64;
            let left = 3 * n_i * n_i - k * (k + 1);
            let right_base = n_i * n_i + k * (k - 1);
            for big_n in 1..=big_n_max {
                let nn = big_n as i64;
                let right = nn
                    .checked_mul(nn)
                    .and_then(|v| v.checked_mul(right_base))
                    .ok_or_else(overflow)?;
                if left == right {
                    solutions.push(PreservationSolution {
                        n,
                        kappa,
                        big_n,
                        physical: kappa < 0 && check_state(n, kappa).is_ok(),
                    });
                }
                if big_n >= 2 {
                    let (lhs, rhs) = sign_sides(n, kappa, big_n)?;
                    opposition &= lhs > 0 && rhs < 0;
                }
            }
        }
    }
    solutions.sort();
    Ok(UniquenessReport {
        n_max,
        big_n_max,
        solutions,
        sign_opposition_holds: opposition,
    })
}

/// Radial operator pieces seen by an antiparticle in the upper-block picture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntiparticlePotential<T> {
    /// Coefficient of +1/r (repulsive Coulomb).
    pub coulomb_repulsion: T,
    /// 2μ.
    pub leading_slope: T,
    /// `2μ − μλ²/(2κ₀²)`.
    pub linear_slope: T,
    /// Coefficient of {p², r}: `−μ/(4m²)`.
    pub kinetic_coefficient: T,
    pub mass: T,
}

impl<T: Real> AntiparticlePotential<T> {
    /// `λ/r + (2μ − μλ²/(2κ₀²)) r`, without the momentum-dependent piece.
    pub fn radial(&self, r: T) -> T {
        self.coulomb_repulsion / r + self.linear_slope * r
    }

    /// Whether a discrete spectrum is expected (needs a confining slope).
    pub fn is_confining(&self) -> bool {
        self.linear_slope > T::zero()
    }
}

pub fn antiparticle_effective<T: Real>(
    mu: T,
    lambda: T,
    kappa0: i32,
    mass: T,
) -> Result<AntiparticlePotential<T>> {
    if kappa0 == 0 {
        return Err(Error::domain("κ₀ = 0 is not a Dirac angular quantum number"));
    }
    if !(mass > T::zero()) || !(lambda >= T::zero()) || !mu.is_finite() {
        return Err(Error::domain("need m > 0, λ ≥ 0 and finite μ"));
    }
    let two = T::lit(2.0);
    let k0 = T::int(kappa0 as i64);
    Ok(AntiparticlePotential {
        coulomb_repulsion: lambda,
        leading_slope: two * mu,
        linear_slope: two * mu - mu * lambda * lambda / (two * k0 * k0),
        kinetic_coefficient: -mu / (T::lit(4.0) * mass * mass),
        mass,
    })
}

/// s-wave levels of `m + p²/2m + 2μr`: `E_k = m + |a_k| ((2μ)²/(2m))^{1/3}`.
pub fn antiparticle_spectrum_airy<T: Real>(mu: T, mass: T, count: usize) -> Result<Vec<T>> {
    if !(mu > T::zero()) {
        return Err(Error::domain(format!(
            "antiparticle levels need a confining slope μ > 0, got {mu}"
        )));
    }
    if !(mass > T::zero()) {
        return Err(Error::domain("mass must be positive"));
    }
    let slope = T::lit(2.0) * mu;
    let scale = (slope * slope / (T::lit(2.0) * mass)).cbrt();
    Ok(airy_negative_zeros::<T>(count)?
        .into_iter()
        .map(|a| mass + a.abs() * scale)
        .collect())
}

/// First-order shift `λ⟨1/r⟩` of the k-th s-wave level of `p²/2m + 2μr`
/// when the repulsive `+λ/r` is switched on.
///
/// The unperturbed state is `u(r) = Ai(r/ℓ₀ − |a_k|)` with
/// `ℓ₀ = (4mμ)^{−1/3}`; both integrals are done by adaptive quadrature.
pub fn antiparticle_coulomb_shift<T: Real>(mu: T, lambda: T, mass: T, k: usize) -> Result<T> {
    if !(mu > T::zero()) || !(mass > T::zero()) {
        return Err(Error::domain("need μ > 0 and m > 0"));
    }
    if k == 0 {
        return Err(Error::domain("levels are numbered from 1"));
    }
    let a = airy_negative_zeros::<T>(k)?[k - 1];
    let length = (T::lit(4.0) * mass * mu).cbrt().recip();
    let upper = a + T::lit(14.0);
    let opts = QuadratureOptions {
        abs_tol: T::zero(),
        rel_tol: T::lit(1e-12).max(T::epsilon() * T::lit(16.0)),
        ..Default::default()
    };
    let ai2 = |x: T| airy_ai(x - a).map(|v| v * v).unwrap_or(T::nan());
    let norm = integrate_with(ai2, T::zero(), upper, opts)?.value;
    let inv = integrate_with(
        |x: T| if x > T::zero() { ai2(x) / x } else { T::zero() },
        T::zero(),
        upper,
        opts,
    )?
    .value;
    Ok(lambda * inv / (norm * length))
}

/// All κ for n ≤ n_max, in (n, κ) order. Convenience for tables.
pub fn shift_table<T: Real>(
    n_max: u32,
    kappa0: i32,
    lambda: T,
    mu: T,
    mass: T,
) -> Result<Vec<(u32, i32, EffectiveShift<T>)>> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        for kappa in enumerate_kappa(n)? {
            rows.push((n, kappa, first_order_shift(n, kappa, kappa0, lambda, mu, mass)?));
        }
    }
    Ok(rows)
}
