//! Closed-form hydrogenic reference values in natural units (ħ = c = 1).
//!
//! The nonrelativistic expectation values are taken in Schrödinger–Pauli
//! states `R_{nℓ}(r) χ_{κM}` of `p²/2m − λ/r`; they depend on κ only through
//! `κ(κ+1) = ℓ(ℓ+1)` and never on M.

use crate::error::{Error, Result};
use crate::quantum_numbers::{check_state, decompose_kappa, AngularState};
use crate::scalar::Real;

/// Physical parameters of `α·p + βm − λ/r + βμr + νr`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSet<T> {
    pub mass: T,
    /// Dimensionless Coulomb coupling.
    pub lambda: T,
    /// Scalar (β-coupled) linear confinement, energy².
    pub mu: T,
    /// Time-like linear confinement, energy².
    pub nu: T,
}

impl<T: Real> CouplingSet<T> {
    pub fn new(mass: T, lambda: T, mu: T, nu: T) -> Result<Self> {
        if !(mass > T::zero()) || !mass.is_finite() {
            return Err(Error::domain(format!("mass must be positive, got {mass}")));
        }
        if !(lambda >= T::zero()) || !lambda.is_finite() {
            return Err(Error::domain(format!("λ must be non-negative, got {lambda}")));
        }
        if !mu.is_finite() || !nu.is_finite() {
            return Err(Error::domain("μ and ν must be finite"));
        }
        Ok(Self {
            mass,
            lambda,
            mu,
            nu,
        })
    }

    /// Pure Coulomb couplings (μ = ν = 0).
    pub fn coulomb(mass: T, lambda: T) -> Result<Self> {
        Self::new(mass, lambda, T::zero(), T::zero())
    }

    /// Whether `b = √(1 − λ²/κ²)` is real for this κ.
    pub fn supports_kappa(&self, kappa: i32) -> bool {
        self.lambda < T::int(kappa.unsigned_abs() as i64)
    }
}

/// A bound hydrogenic level |n κ M⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HydrogenicState {
    n: u32,
    angular: AngularState,
}

impl HydrogenicState {
    pub fn new(n: u32, kappa: i32) -> Result<Self> {
        check_state(n, kappa)?;
        Ok(Self {
            n,
            angular: AngularState::new(kappa)?,
        })
    }

    pub fn with_angular(n: u32, angular: AngularState) -> Result<Self> {
        check_state(n, angular.kappa())?;
        Ok(Self { n, angular })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kappa(&self) -> i32 {
        self.angular.kappa()
    }

    pub fn ell(&self) -> u32 {
        self.angular.ell()
    }

    pub fn angular(&self) -> AngularState {
        self.angular
    }

    /// Radial nodes of the large component, n − ℓ − 1.
    pub fn radial_nodes(&self) -> usize {
        (self.n - self.ell() - 1) as usize
    }
}

fn check_lambda<T: Real>(lambda: T) -> Result<()> {
    if lambda > T::zero() && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "λ must be positive for a bound Coulomb state, got {lambda}"
        )))
    }
}

/// Exact Dirac–Coulomb energy (Sommerfeld formula).
///
/// For `n = −κ` this is `m √(1 − λ²/κ²)`.
pub fn dirac_coulomb_energy<T: Real>(n: u32, kappa: i32, lambda: T, mass: T) -> Result<T> {
    check_state(n, kappa)?;
    let abs_kappa = T::int(kappa.unsigned_abs() as i64);
    if !(lambda >= T::zero()) || lambda >= abs_kappa {
        return Err(Error::domain(format!(
            "Sommerfeld energy needs 0 ≤ λ < |κ| = {abs_kappa}, got λ = {lambda}"
        )));
    }
    let radial = n as i64 - kappa.unsigned_abs() as i64;
    if radial == 0 {
        let ratio = lambda / abs_kappa;
        return Ok(mass * (T::one() - ratio * ratio).sqrt());
    }
    let s = (abs_kappa * abs_kappa - lambda * lambda).sqrt();
    let denom = T::int(radial) + s;
    Ok(mass * denom / (denom * denom + lambda * lambda).sqrt())
}

/// Leading-order energy `m − λ²m/(2n²)` of the Schrödinger–Coulomb level.
pub fn schrodinger_energy<T: Real>(n: u32, lambda: T, mass: T) -> T {
    debug_assert!(n >= 1);
    let n = T::int(n as i64);
    mass - lambda * lambda * mass / (T::lit(2.0) * n * n)
}

/// ⟨r⟩ = (3n² − κ(κ+1)) / (2λm).
pub fn expectation_r<T: Real>(n: u32, kappa: i32, lambda: T, mass: T) -> Result<T> {
    check_state(n, kappa)?;
    check_lambda(lambda)?;
    let n = n as i64;
    let k = kappa as i64;
    Ok(T::int(3 * n * n - k * (k + 1)) / (T::lit(2.0) * lambda * mass))
}

/// ⟨1/r⟩ = λm / n².
pub fn expectation_inv_r<T: Real>(n: u32, lambda: T, mass: T) -> Result<T> {
    if n < 1 {
        return Err(Error::domain("principal quantum number must be at least 1"));
    }
    check_lambda(lambda)?;
    let n = T::int(n as i64);
    Ok(lambda * mass / (n * n))
}

/// ⟨{p², r}⟩ on a Schrödinger–Coulomb eigenstate.
///
/// With `p² = 2m(H₀ + λ/r)` and `H₀ψ = E_b ψ`, the anticommutator
/// evaluates to `4m(E_b⟨r⟩ + λ)` where `E_b = −λ²m/(2n²)`.
pub fn expectation_anticomm_p2_r<T: Real>(n: u32, kappa: i32, lambda: T, mass: T) -> Result<T> {
    let r = expectation_r(n, kappa, lambda, mass)?;
    let binding = schrodinger_energy(n, lambda, mass) - mass;
    Ok(T::lit(4.0) * mass * (binding * r + lambda))
}

/// Generalized Laguerre polynomial `L_k^{(α)}(x)` by upward recurrence.
pub fn laguerre<T: Real>(k: u32, alpha: T, x: T) -> T {
    let mut prev = T::one();
    if k == 0 {
        return prev;
    }
    let mut cur = T::one() + alpha - x;
    for j in 1..k {
        let jf = T::int(j as i64);
        let next = ((T::lit(2.0) * jf + T::one() + alpha - x) * cur - (jf + alpha) * prev)
            / (jf + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// Normalized hydrogenic radial function `R_{nℓ}(r)` with Bohr radius 1/(λm).
///
/// `∫ R² r² dr = 1`; positive at the origin.
pub fn radial_wavefunction<T: Real>(n: u32, ell: u32, lambda: T, mass: T, r: T) -> Result<T> {
    if n < 1 || ell >= n {
        return Err(Error::domain(format!("ℓ = {ell} is not below n = {n}")));
    }
    check_lambda(lambda)?;
    if !(r >= T::zero()) {
        return Err(Error::domain(format!("radius must be non-negative, got {r}")));
    }
    let nf = T::int(n as i64);
    let scale = T::lit(2.0) * lambda * mass / nf;
    let rho = scale * r;
    // ln[(n−ℓ−1)!/(n+ℓ)!] = −Σ_{k=n−ℓ}^{n+ℓ} ln k
    let log_ratio = ((n - ell)..=(n + ell)).fold(T::zero(), |acc, k| acc - T::int(k as i64).ln());
    let log_norm = T::lit(0.5)
        * (T::lit(3.0) * scale.ln() + log_ratio - (T::lit(2.0) * nf).ln());
    let poly = laguerre(n - ell - 1, T::int(2 * ell as i64 + 1), rho);
    let power = if ell == 0 {
        T::one()
    } else {
        rho.powi(ell as i32)
    };
    Ok(log_norm.exp() * power * (-rho / T::lit(2.0)).exp() * poly)
}

/// Same as [`radial_wavefunction`] with ℓ taken from κ.
pub fn radial_wavefunction_kappa<T: Real>(
    n: u32,
    kappa: i32,
    lambda: T,
    mass: T,
    r: T,
) -> Result<T> {
    let (ell, _) = decompose_kappa(kappa)?;
    radial_wavefunction(n, ell, lambda, mass, r)
}
