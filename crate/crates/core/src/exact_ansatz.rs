//! Closed-form eigenstate of `α·p + βm − λ/r + βμr + νr` for n₀ = −κ₀.
//!
//! With `s = √(κ₀² − λ²)` the spinor
//!
//! ```text
//! f = N r^{s−1} e^{−ar} e^{−α²r²/2},   g = −γ f
//! ```
//!
//! solves the radial equations exactly when `a = mλ/|κ₀|`, `α² = μλ/|κ₀|`,
//! `γ = (|κ₀| − s)/λ` and `ν = −μ b` with `b = √(1 − λ²/κ₀²)`. The energy is
//! then the unperturbed `E = m b`, whatever μ.
//!
//! The Gaussian only decays for μ > 0; μ = 0 is the Dirac–Coulomb state.

use crate::coulomb::CouplingSet;
use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::scalar::Real;
use crate::special::{integrate_with, kummer_u, ln_gamma, QuadratureOptions};

fn check_coupling<T: Real>(lambda: T, kappa0: i32) -> Result<T> {
    let k = T::int(kappa0.unsigned_abs() as i64);
    if kappa0 == 0 || !(lambda.abs() < k) {
        return Err(Error::domain(format!(
            "need |λ| < |κ₀|, got λ = {lambda}, κ₀ = {kappa0}"
        )));
    }
    Ok(k)
}

/// The ν that keeps the n₀ = −κ₀ level at its Coulomb energy: `−μ√(1 − λ²/κ₀²)`.
pub fn nu_fine_tuned<T: Real>(mu: T, lambda: T, kappa0: i32) -> Result<T> {
    let k = check_coupling(lambda, kappa0)?;
    let x = lambda / k;
    Ok(-mu * (T::one() - x * x).sqrt())
}

/// Small-λ form of [`nu_fine_tuned`]: `−μ + μλ²/(2κ₀²)`, off by O(μλ⁴).
pub fn nu_expanded<T: Real>(mu: T, lambda: T, kappa0: i32) -> Result<T> {
    let k = check_coupling(lambda, kappa0)?;
    Ok(-mu + mu * lambda * lambda / (T::lit(2.0) * k * k))
}

/// Parameters of the closed-form state. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnsatzParams<T> {
    /// `mass`, `lambda`, `mu` as given; `nu` fine-tuned.
    pub couplings: CouplingSet<T>,
    pub kappa0: i32,
    /// `√(1 − λ²/κ₀²)`, equal to E/m.
    pub b: T,
    /// Power of the origin behaviour `r^{s−1}`, `s = |κ₀| b`.
    pub s: T,
    pub a: T,
    /// Gaussian width α².
    pub alpha2: T,
    /// Lower/upper ratio, `g = −γ f`.
    pub gamma: T,
    pub nu: T,
    pub energy: T,
    pub norm: T,
}

/// Builds the closed-form state for κ₀ < 0, 0 < λ < |κ₀| and μ ≥ 0.
pub fn build_ansatz<T: Real>(lambda: T, mu: T, kappa0: i32, mass: T) -> Result<AnsatzParams<T>> {
    if kappa0 >= 0 {
        return Err(Error::domain(format!(
            "the preserved state has n₀ = −κ₀, so κ₀ must be negative (got {kappa0})"
        )));
    }
    let k = check_coupling(lambda, kappa0)?;
    if !(lambda > T::zero()) {
        return Err(Error::domain(format!(
            "the ansatz needs λ > 0 (a = mλ/|κ₀| would not decay), got {lambda}"
        )));
    }
    if !(mu >= T::zero()) || !mu.is_finite() {
        return Err(Error::domain(format!(
            "α² = μλ/|κ₀| must be non-negative for e^(−α²r²/2) to be normalizable; got μ = {mu}"
        )));
    }
    let nu = nu_fine_tuned(mu, lambda, kappa0)?;
    let couplings = CouplingSet::new(mass, lambda, mu, nu)?;
    let x = lambda / k;
    let b = (T::one() - x * x).sqrt();
    let s = (k * k - lambda * lambda).sqrt();
    let a = mass * lambda / k;
    let alpha2 = mu * lambda / k;
    let gamma = (k - s) / lambda;
    let mut params = AnsatzParams {
        couplings,
        kappa0,
        b,
        s,
        a,
        alpha2,
        gamma,
        nu,
        energy: mass * b,
        norm: T::one(),
    };
    params.norm = closed_form_norm(&params)?;
    Ok(params)
}

/// `N = [2^{−2s} a s (1+γ²) α^{−2−2s} Γ(2s) U(1+s, 3/2, a²/α²)]^{−1/2}`,
/// or `[(1+γ²) Γ(2s+1) / (2a)^{2s+1}]^{−1/2}` at μ = 0. Evaluated in logs.
fn closed_form_norm<T: Real>(p: &AnsatzParams<T>) -> Result<T> {
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let log_spin = (T::one() + p.gamma * p.gamma).ln();
    let log_integral = if p.alpha2 == T::zero() {
        log_spin + ln_gamma(two * p.s + T::one())? - (two * p.s + T::one()) * (two * p.a).ln()
    } else {
        let u = kummer_u(T::one() + p.s, T::lit(1.5), p.a * p.a / p.alpha2)?;
        if !(u > T::zero()) {
            return Err(Error::Numeric(format!("U evaluated to {u}")));
        }
        -two * p.s * two.ln() + p.a.ln() + p.s.ln() + log_spin - (T::one() + p.s) * p.alpha2.ln()
            + ln_gamma(two * p.s)?
            + u.ln()
    };
    Ok((-half * log_integral).exp())
}

impl<T: Real> AnsatzParams<T> {
    /// The six expressions for γ that must coincide:
    /// `a/(m+E)`, `(|κ₀|−s)/λ`, `α²/(μ−ν)`, `(m−E)/a`, `λ/(|κ₀|+s)`, `(μ+ν)/α²`.
    ///
    /// The two involving α² are NaN at μ = 0.
    pub fn gamma_expressions(&self) -> [T; 6] {
        let c = &self.couplings;
        let k = T::int(self.kappa0.unsigned_abs() as i64);
        [
            self.a / (c.mass + self.energy),
            (k - self.s) / c.lambda,
            self.alpha2 / (c.mu - self.nu),
            (c.mass - self.energy) / self.a,
            c.lambda / (k + self.s),
            (c.mu + self.nu) / self.alpha2,
        ]
    }

    /// Largest relative deviation of the finite γ expressions from `gamma`.
    pub fn gamma_mismatch(&self) -> T {
        self.gamma_expressions()
            .iter()
            .filter(|g| g.is_finite())
            .map(|&g| ((g - self.gamma) / self.gamma).abs())
            .fold(T::zero(), T::max)
    }

    pub fn is_coulomb_limit(&self) -> bool {
        self.couplings.mu == T::zero()
    }

    /// Same state shape with ν replaced; the result no longer solves the
    /// equations unless `nu` equals the fine-tuned value.
    pub fn with_nu(&self, nu: T) -> Self {
        let mut p = *self;
        p.nu = nu;
        p.couplings.nu = nu;
        p
    }

    /// Multiplies ν by `1 + fraction`.
    pub fn detuned(&self, fraction: T) -> Self {
        self.with_nu(self.nu * (T::one() + fraction))
    }

    /// Log grid from `1e−6/(λm)` out to where `r f` has fallen 1e−12 below its peak.
    pub fn default_grid(&self, count: usize) -> Result<RadialGrid<T>> {
        let lm = self.couplings.lambda * self.couplings.mass;
        let r_min = T::lit(1e-6) / lm;
        RadialGrid::logarithmic(r_min, self.decay_radius(T::lit(1e-12)), count)
    }

    fn log_rf(&self, r: T) -> T {
        self.s * r.ln() - self.a * r - self.alpha2 * r * r / T::lit(2.0)
    }

    /// Radius beyond the peak of `r f` where it has dropped by `ratio`.
    pub fn decay_radius(&self, ratio: T) -> T {
        // peak: s/r = a + α² r
        let peak = if self.alpha2 > T::zero() {
            let (a, q) = (self.a, self.alpha2);
            T::lit(2.0) * self.s / (a + (a * a + T::lit(4.0) * q * self.s).sqrt())
        } else {
            self.s / self.a
        };
        let target = self.log_rf(peak) + ratio.ln();
        let mut hi = peak * T::lit(2.0);
        while self.log_rf(hi) > target {
            hi = hi * T::lit(2.0);
        }
        let mut lo = peak;
        for _ in 0..200 {
            let mid = (lo + hi) / T::lit(2.0);
            if self.log_rf(mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }
}

/// `(f(r), g(r))` of the normalized closed-form state.
pub fn evaluate_spinor<T: Real>(params: &AnsatzParams<T>, r: T) -> Result<(T, T)> {
    if !(r > T::zero()) {
        return Err(Error::domain(format!(
            "r^(s−1) is singular at the origin; need r > 0, got {r}"
        )));
    }
    let f = params.norm * (params.log_rf(r) - r.ln()).exp();
    Ok((f, -params.gamma * f))
}

/// Max over the grid of the relative defect of the two radial equations.
///
/// With V₀ = −λ/r, V₁ = μr, V₂ = νr (ν taken from `params.nu`):
///
/// ```text
///  f′ + (κ+1)f/r − (E + m − V₀ + V₁ − V₂) g
/// −g′ + (κ−1)g/r − (E − m − V₀ − V₁ − V₂) f
/// ```
///
/// each divided by the sum of the magnitudes of its terms. Derivatives are
/// analytic.
pub fn radial_residual<T: Real>(params: &AnsatzParams<T>, grid: &RadialGrid<T>) -> Result<T> {
    let c = &params.couplings;
    let kappa = T::int(params.kappa0 as i64);
    let e = params.energy;
    let mut worst = T::zero();
    for &r in grid.nodes() {
        let (f, g) = evaluate_spinor(params, r)?;
        let log_deriv = (params.s - T::one()) / r - params.a - params.alpha2 * r;
        let df = f * log_deriv;
        let dg = -params.gamma * df;
        let (v0, v1, v2) = (-c.lambda / r, c.mu * r, params.nu * r);

        let t1 = [df, (kappa + T::one()) * f / r, -(e + c.mass) * g, v0 * g, -v1 * g, v2 * g];
        let t2 = [-dg, (kappa - T::one()) * g / r, -(e - c.mass) * f, v0 * f, v1 * f, v2 * f];
        for terms in [t1, t2] {
            let sum = terms.iter().fold(T::zero(), |acc, &t| acc + t);
            let scale = terms.iter().fold(T::zero(), |acc, &t| acc + t.abs());
            if scale > T::zero() {
                worst = worst.max(sum.abs() / scale);
            }
        }
    }
    Ok(worst)
}

/// `∫(f² + g²) r² dr` of the normalized state by adaptive quadrature; 1 up
/// to quadrature error when the closed-form N is right.
pub fn norm_by_quadrature<T: Real>(params: &AnsatzParams<T>) -> Result<T> {
    let density = |r: T| {
        if r == T::zero() {
            return T::zero();
        }
        match evaluate_spinor(params, r) {
            Ok((f, g)) => (f * f + g * g) * r * r,
            Err(_) => T::nan(),
        }
    };
    let opts = QuadratureOptions {
        abs_tol: T::zero(),
        rel_tol: T::lit(1e-12).max(T::epsilon() * T::lit(64.0)),
        ..Default::default()
    };
    // split past the peak so the infinite tail is handled separately
    let split = params.decay_radius(T::lit(1e-3));
    Ok(integrate_with(density, T::zero(), split, opts)?.value
        + integrate_with(density, split, T::infinity(), opts)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coulomb::dirac_coulomb_energy;
    use approx::assert_relative_eq;

    const LAMBDAS: [f64; 3] = [0.1, 0.3, 0.5];
    const KAPPAS: [i32; 3] = [-1, -2, -3];
    const MUS: [f64; 2] = [1e-6, 1e-4];

    fn quadrature_norm(p: &AnsatzParams<f64>) -> f64 {
        norm_by_quadrature(p).unwrap()
    }

    #[test]
    fn nu_examples() {
        assert_relative_eq!(nu_fine_tuned(1e-4, 0.5, -1).unwrap(), -8.660_254_038e-5, max_relative = 1e-9);
        assert_eq!(nu_fine_tuned(0.3, 0.0, -2).unwrap(), -0.3);
        assert_relative_eq!(nu_fine_tuned(0.01, 0.3, -3).unwrap(), -0.009_949_874_4, max_relative = 1e-8);
        assert!(nu_fine_tuned(0.01, 1.0, -1).is_err());
        assert!(nu_fine_tuned(0.01, 0.5, 0).is_err());
    }

    #[test]
    fn nu_expansion_is_quartic() {
        let (mu, k) = (1e-4, -1);
        assert_relative_eq!(nu_expanded(mu, 0.5, k).unwrap(), -8.75e-5, max_relative = 1e-12);
        assert_eq!(nu_expanded(mu, 0.0, k).unwrap(), -mu);
        let gap = |l: f64| (nu_expanded(mu, l, k).unwrap() - nu_fine_tuned(mu, l, k).unwrap()).abs();
        assert_relative_eq!(gap(0.5), 8.97e-7, max_relative = 1e-2);
        let ratio = gap(0.1) / gap(0.05);
        assert!((ratio - 16.0).abs() < 0.1, "ratio {ratio}");
    }

    #[test]
    fn reference_example() {
        let p = build_ansatz(0.5, 1e-4, -1, 1.0).unwrap();
        assert_relative_eq!(p.b, 0.866_025_403_784_438_6, max_relative = 1e-15);
        assert_relative_eq!(p.a, 0.5);
        assert_relative_eq!(p.alpha2, 5e-5, max_relative = 1e-15);
        assert_relative_eq!(p.gamma, 0.267_949_192_431_122_7, max_relative = 1e-14);
        assert_relative_eq!(p.energy, 0.866_025_403_784_438_6, max_relative = 1e-15);
    }

    #[test]
    fn preconditions() {
        assert!(build_ansatz(0.5, -1e-4, -1, 1.0).unwrap_err().is_domain());
        assert!(build_ansatz(1.0, 1e-4, -1, 1.0).is_err());
        assert!(build_ansatz(0.5, 1e-4, 1, 1.0).is_err());
        assert!(build_ansatz(0.0, 1e-4, -1, 1.0).is_err());
        assert!(evaluate_spinor(&build_ansatz(0.5, 1e-4, -1, 1.0).unwrap(), 0.0).is_err());
    }

    #[test]
    fn six_gamma_expressions_agree_on_sweep() {
        for &l in &LAMBDAS {
            for &k in &KAPPAS {
                for &mu in &MUS {
                    let p = build_ansatz(l, mu, k, 1.0).unwrap();
                    assert!(p.gamma_mismatch() <= 1e-12, "λ={l} κ₀={k} μ={mu}: {}", p.gamma_mismatch());
                    assert!(p.gamma_expressions().iter().all(|g| g.is_finite()));
                }
            }
        }
    }

    #[test]
    fn energy_is_sommerfeld() {
        for &l in &LAMBDAS {
            for &k in &KAPPAS {
                let p = build_ansatz(l, 1e-4, k, 1.3).unwrap();
                let e = dirac_coulomb_energy((-k) as u32, k, l, 1.3).unwrap();
                assert!((p.energy - e).abs() <= 4.0 * f64::EPSILON, "λ={l} κ₀={k}");
            }
        }
    }

    #[test]
    fn closed_form_norm_matches_quadrature() {
        for &l in &LAMBDAS {
            for &k in &KAPPAS {
                for &mu in &[0.0, 1e-6, 1e-4, 0.05] {
                    let p = build_ansatz(l, mu, k, 1.0).unwrap();
                    let q = quadrature_norm(&p);
                    assert!((q - 1.0).abs() <= 1e-8, "λ={l} κ₀={k} μ={mu}: {q}");
                }
            }
        }
    }

    #[test]
    fn coulomb_limit_is_continuous() {
        let p0 = build_ansatz(0.3, 0.0, -2, 1.0).unwrap();
        let p1 = build_ansatz(0.3, 1e-10, -2, 1.0).unwrap();
        assert!(p0.is_coulomb_limit() && !p1.is_coulomb_limit());
        assert_relative_eq!(p0.norm, p1.norm, max_relative = 1e-6);
    }

    #[test]
    fn lower_to_upper_ratio_is_constant() {
        let p = build_ansatz(0.3, 1e-4, -2, 1.0).unwrap();
        for &r in &[1e-3, 0.5, 7.0, 40.0] {
            let (f, g) = evaluate_spinor(&p, r).unwrap();
            assert_relative_eq!(g / f, -p.gamma, max_relative = 1e-15);
        }
    }

    #[test]
    fn residual_vanishes_on_sweep() {
        for &l in &LAMBDAS {
            for &k in &KAPPAS {
                for &mu in &[0.0, 1e-6, 1e-4] {
                    let p = build_ansatz(l, mu, k, 1.0).unwrap();
                    let grid = p.default_grid(4000).unwrap();
                    let res = radial_residual(&p, &grid).unwrap();
                    assert!(res <= 1e-10, "λ={l} κ₀={k} μ={mu}: {res}");
                }
            }
        }
    }

    #[test]
    fn detuning_nu_breaks_the_solution() {
        let p = build_ansatz(0.5, 1e-4, -1, 1.0).unwrap();
        let grid = p.default_grid(4000).unwrap();
        let exact: f64 = radial_residual(&p, &grid).unwrap();
        let off = radial_residual(&p.detuned(0.01), &grid).unwrap();
        assert!(off / exact.max(f64::EPSILON * 1e-2) >= 1e6, "exact {exact}, detuned {off}");
        assert!(off > 1e-9);
    }

    #[test]
    fn single_precision_instantiation() {
        let p = build_ansatz(0.5f32, 1e-2, -1, 1.0).unwrap();
        assert!(p.gamma_mismatch() < 1e-5);
        let grid = p.default_grid(500).unwrap();
        assert!(radial_residual(&p, &grid).unwrap() < 1e-5);
    }
}
