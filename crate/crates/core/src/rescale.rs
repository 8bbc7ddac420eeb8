//! Exact preservation by rescaling: if `(f₀, g₀)` solves the Coulomb problem
//! then `e^{h}(f₀, g₀)` solves it with `βV₁ + V₂` added, provided
//!
//! ```text
//! h′ = ±√(V₁² − V₂²)      and      g₀/f₀ = h′/(V₁ − V₂)   (constant ratio)
//! ```
//!
//! The ratio condition can only hold for the nodeless `n = −κ` states, and
//! it ties V₂ to V₁ through `V₂ = −[(1−γ²)/(1+γ²)] V₁ = −(E/m) V₁`.

use std::fmt;
use std::str::FromStr;

use crate::coulomb::dirac_coulomb_energy;
use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::radial::{radial_fn, PotentialSpec, RadialFn};
use crate::scalar::Real;

/// Sign of `h′`. Only `Decaying` gives bound states for confining V₁.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    #[default]
    Decaying,
    Growing,
}

impl Branch {
    pub fn sign<T: Real>(self) -> T {
        match self {
            Branch::Decaying => -T::one(),
            Branch::Growing => T::one(),
        }
    }
}

impl FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "-" | "minus" | "decaying" => Ok(Branch::Decaying),
            "+" | "plus" | "growing" => Ok(Branch::Growing),
            _ => Err(Error::domain(format!("unknown branch {s:?}; use '-' or '+'"))),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Decaying => "-",
            Branch::Growing => "+",
        })
    }
}

/// `h` sampled on a grid, anchored at `h(r_min) = 0`.
#[derive(Clone)]
pub struct RescaleProfile<T> {
    pub h: Vec<T>,
    pub branch: Branch,
    pub v1: RadialFn<T>,
    pub v2: RadialFn<T>,
}

impl<T: Real> fmt::Debug for RescaleProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RescaleProfile")
            .field("branch", &self.branch)
            .field("len", &self.h.len())
            .finish_non_exhaustive()
    }
}

impl<T: Real> RescaleProfile<T> {
    /// `h′(r) = branch·√(V₁² − V₂²)` evaluated directly.
    pub fn slope(&self, r: T) -> Result<T> {
        Ok(self.branch.sign::<T>() * root_difference((self.v1)(r), (self.v2)(r), r)?)
    }
}

/// `√(V₁² − V₂²)` as `√|V₁−V₂|·√|V₁+V₂|`, which does not overflow as early.
fn root_difference<T: Real>(v1: T, v2: T, r: T) -> Result<T> {
    let (d, s) = (v1 - v2, v1 + v2);
    if !(d.is_finite() && s.is_finite()) {
        return Err(Error::domain(format!(
            "potential overflows at r = {r}; reduce r_max"
        )));
    }
    let prod = d * s;
    // rounding can push V₂ = ±V₁ slightly negative
    let slack = T::lit(8.0) * T::epsilon() * (v1 * v1 + v2 * v2);
    if prod < -slack {
        return Err(Error::ConditionViolation { radius: r.as_f64() });
    }
    if prod <= T::zero() {
        return Ok(T::zero());
    }
    Ok(d.abs().sqrt() * s.abs().sqrt())
}

/// Cumulative fourth-order quadrature of `branch·√(V₁² − V₂²)`.
pub fn h_profile<T: Real>(
    v1: RadialFn<T>,
    v2: RadialFn<T>,
    grid: &RadialGrid<T>,
    branch: Branch,
) -> Result<RescaleProfile<T>> {
    let sign = branch.sign::<T>();
    let integrand = grid
        .nodes()
        .iter()
        .map(|&r| root_difference(v1(r), v2(r), r).map(|w| sign * w))
        .collect::<Result<Vec<T>>>()?;
    let h = grid.cumulative(&integrand);
    Ok(RescaleProfile { h, branch, v1, v2 })
}

/// Outcome of the ratio test `g₀/f₀ = h′/(V₁−V₂)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport<T> {
    /// `max |g₀/f₀ − h′/(V₁−V₂)|` over the unmasked nodes.
    pub max_deviation: T,
    /// `(max − min)/max|·|` of `g₀/f₀` over the unmasked nodes.
    pub constancy_defect: T,
    /// `true` where the node was used; nodes of f₀, negligible amplitude and
    /// points where V₁ = V₂ are skipped.
    pub used: Vec<bool>,
}

impl<T: Real> RatioReport<T> {
    pub fn holds(&self, tol: T) -> bool {
        self.max_deviation <= tol && self.constancy_defect <= tol
    }

    pub fn masked_count(&self) -> usize {
        self.used.iter().filter(|&&u| !u).count()
    }
}

pub fn check_ratio_condition<T: Real>(
    f0: &[T],
    g0: &[T],
    v1: &RadialFn<T>,
    v2: &RadialFn<T>,
    grid: &RadialGrid<T>,
    branch: Branch,
) -> Result<RatioReport<T>> {
    if f0.len() != grid.len() || g0.len() != grid.len() {
        return Err(Error::domain("sampled spinor does not match the grid"));
    }
    let peak = f0.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
    let floor = peak * T::lit(1e-6);
    let sign = branch.sign::<T>();
    let tiny = T::min_positive_value() / T::epsilon();
    let mut used = vec![false; f0.len()];
    let (mut dev, mut lo, mut hi, mut size) = (T::zero(), T::infinity(), T::neg_infinity(), T::zero());
    for (i, &r) in grid.nodes().iter().enumerate() {
        if !(f0[i].abs() > floor) {
            continue;
        }
        let (a, b) = (v1(r), v2(r));
        let ratio = g0[i] / f0[i];
        // where V₁ = V₂, or both have underflowed into the subnormal range,
        // only the constancy is testable
        if a != b && a.abs().max(b.abs()) > tiny {
            root_difference(a, b, r)?;
            let q = ((a + b) / (a - b)).abs().sqrt();
            let expected = if a > b { sign * q } else { -sign * q };
            dev = dev.max((ratio - expected).abs());
        }
        used[i] = true;
        lo = lo.min(ratio);
        hi = hi.max(ratio);
        size = size.max(ratio.abs());
    }
    if !used.iter().any(|&u| u) {
        return Err(Error::domain("f₀ vanishes on the whole grid"));
    }
    let constancy_defect = if size > T::zero() { (hi - lo) / size } else { T::zero() };
    Ok(RatioReport {
        max_deviation: dev,
        constancy_defect,
        used,
    })
}

/// `V₂ = −[(1−γ²)/(1+γ²)] V₁`.
pub fn fine_tune_v2<T: Real>(v1: RadialFn<T>, gamma: T) -> RadialFn<T> {
    let c = ratio_factor(gamma);
    radial_fn(move |r| -c * v1(r))
}

fn ratio_factor<T: Real>(gamma: T) -> T {
    let g2 = gamma * gamma;
    (T::one() - g2) / (T::one() + g2)
}

/// `(1−γ²)/(1+γ²)`, which equals E/m for the preserved state.
pub fn gamma_energy_relation<T: Real>(gamma: T) -> Result<T> {
    if !(gamma >= T::zero()) || !gamma.is_finite() {
        return Err(Error::domain(format!("γ must be finite and ≥ 0, got {gamma}")));
    }
    Ok(ratio_factor(gamma))
}

/// `e^h (f₀, g₀)`, renormalized to `∫(f²+g²) r² dr = 1`.
///
/// Fails when `h` is still rising at `r_max` or the density has not decayed
/// there: the rescaled state would not be normalizable.
pub fn build_rescaled_state<T: Real>(
    f0: &[T],
    g0: &[T],
    profile: &RescaleProfile<T>,
    grid: &RadialGrid<T>,
) -> Result<(Vec<T>, Vec<T>)> {
    let n = grid.len();
    if f0.len() != n || g0.len() != n || profile.h.len() != n {
        return Err(Error::domain("profile and spinor must be sampled on the grid"));
    }
    let r_max = grid.r_max();
    if profile.slope(r_max)? > T::zero() {
        return Err(Error::NonNormalizable(format!(
            "e^h is growing at r_max = {r_max}; use the decaying branch"
        )));
    }
    // Shift h by its maximum so e^h ≤ 1 and nothing overflows.
    let top = profile.h.iter().fold(T::neg_infinity(), |m, &v| m.max(v));
    let w: Vec<T> = profile.h.iter().map(|&h| (h - top).exp()).collect();
    let mut f: Vec<T> = f0.iter().zip(&w).map(|(a, b)| *a * *b).collect();
    let mut g: Vec<T> = g0.iter().zip(&w).map(|(a, b)| *a * *b).collect();
    let density: Vec<T> = grid
        .nodes()
        .iter()
        .zip(f.iter().zip(&g))
        .map(|(&r, (&a, &b))| (a * a + b * b) * r * r)
        .collect();
    let peak = density.iter().fold(T::zero(), |m, &v| m.max(v));
    if !(density[n - 1] <= T::lit(1e-12) * peak) {
        return Err(Error::NonNormalizable(format!(
            "density at r_max = {r_max} is not negligible"
        )));
    }
    let norm = grid.integrate(&density).sqrt();
    if !(norm > T::zero()) || !norm.is_finite() {
        return Err(Error::NonNormalizable("zero or infinite norm".into()));
    }
    for v in f.iter_mut().chain(g.iter_mut()) {
        *v = *v / norm;
    }
    Ok((f, g))
}

/// Unnormalized nodeless Dirac–Coulomb state for `κ₀ < 0`:
/// `f₀ = r^{s−1} e^{−ar}`, `g₀ = −γ f₀`. Returns `(f₀, g₀, f₀′/f₀)`.
pub fn nodeless_coulomb_spinor<T: Real>(lambda: T, kappa0: i32, mass: T, r: T) -> Result<(T, T, T)> {
    let (s, a, gamma) = nodeless_constants(lambda, kappa0, mass)?;
    let f = ((s - T::one()) * r.ln() - a * r).exp();
    Ok((f, -gamma * f, (s - T::one()) / r - a))
}

fn nodeless_constants<T: Real>(lambda: T, kappa0: i32, mass: T) -> Result<(T, T, T)> {
    if kappa0 >= 0 {
        return Err(Error::domain(format!("κ₀ must be negative, got {kappa0}")));
    }
    let k = T::int(-(kappa0 as i64));
    if !(lambda > T::zero() && lambda < k) {
        return Err(Error::domain(format!("need 0 < λ < |κ₀|, got λ = {lambda}")));
    }
    let s = (k * k - lambda * lambda).sqrt();
    Ok((s, mass * lambda / k, lambda / (k + s)))
}

/// The power-law bag family `V₁ = A (r/r₀)^M`, `V₂ = −(E/m) V₁`, applied to
/// the nodeless `n = −κ₀` Coulomb state.
#[derive(Clone)]
pub struct BagModelCase<T> {
    pub potential: PotentialSpec<T>,
    pub profile: RescaleProfile<T>,
    pub grid: RadialGrid<T>,
    pub f: Vec<T>,
    pub g: Vec<T>,
    /// The preserved level, `m√(1 − λ²/κ₀²)`.
    pub energy: T,
    /// Max relative defect of the perturbed radial equations, with
    /// derivatives of `e^h f₀` taken analytically.
    pub residual: T,
    pub ratio: RatioReport<T>,
    /// `max |e^{h} − 1|` over `r < 0.97 r₀`: how far the interior is from
    /// the unperturbed state.
    pub interior_change: T,
}

impl<T: Real> fmt::Debug for BagModelCase<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BagModelCase")
            .field("energy", &self.energy)
            .field("residual", &self.residual)
            .field("interior_change", &self.interior_change)
            .field("points", &self.grid.len())
            .finish_non_exhaustive()
    }
}

pub fn bag_potential<T: Real>(a_coef: T, r0: T, power: u32) -> RadialFn<T> {
    let p = T::int(power as i64);
    // exp(M ln(r/r₀)) stays finite far longer than (r/r₀)^M
    radial_fn(move |r: T| a_coef * (p * (r / r0).ln()).exp())
}

/// Builds and verifies the rescaled state for the bag family.
///
/// The grid is logarithmic from `1e−6/(λm)` to where either the Coulomb
/// tail or `e^h` has fallen far below the peak, with steps fine enough that
/// `(M+1)·Δln r ≤ 0.02` so the cumulative quadrature resolves the wall.
pub fn bag_model_case<T: Real>(
    a_coef: T,
    r0: T,
    power: u32,
    lambda: T,
    kappa0: i32,
    mass: T,
) -> Result<BagModelCase<T>> {
    if !(a_coef > T::zero()) {
        return Err(Error::domain(format!(
            "A must be positive for a decaying e^h (got {a_coef})"
        )));
    }
    if !(r0 > T::zero()) || !(mass > T::zero()) {
        return Err(Error::domain("need r₀ > 0 and m > 0"));
    }
    let (s, a, gamma) = nodeless_constants(lambda, kappa0, mass)?;
    let energy = dirac_coulomb_energy((-kappa0) as u32, kappa0, lambda, mass)?;
    let k = T::int(-(kappa0 as i64));
    let p1 = T::int(power as i64 + 1);

    let r_min = T::lit(1e-6) / (lambda * mass);
    // r^s e^{−ar} down by e^{−40} past its peak s/a
    let mut r_coulomb = s / a;
    let peak = s * r_coulomb.ln() - a * r_coulomb;
    while s * r_coulomb.ln() - a * r_coulomb > peak - T::lit(40.0) {
        r_coulomb = r_coulomb * T::lit(1.05);
    }
    // |h| ≈ (λ/|κ₀|) A r₀ (r/r₀)^{M+1}/(M+1) reaching 40
    let r_wall = r0 * (T::lit(40.0) * p1 * k / (lambda * a_coef * r0)).powf(p1.recip());
    let r_max = r_coulomb.min(r_wall.max(r0));
    if !(r_max > r_min) {
        return Err(Error::domain("r₀ lies inside the innermost grid radius"));
    }
    if !(T::int(power as i64) * (r_max / r0).ln() < T::lit(600.0)) {
        return Err(Error::domain("(r/r₀)^M overflows on the grid; reduce r_max"));
    }
    let span = (r_max / r_min).ln();
    let count = ((span * p1 / T::lit(0.02)).as_f64().ceil() as usize).max(20_000);
    let grid = RadialGrid::logarithmic(r_min, r_max, count)?;

    let v1 = bag_potential(a_coef, r0, power);
    let v2 = fine_tune_v2(v1.clone(), gamma);
    let profile = h_profile(v1.clone(), v2.clone(), &grid, Branch::Decaying)?;
    let potential = PotentialSpec::coulomb(lambda)
        .with_v1(v1.clone())
        .with_v2(v2.clone());

    let mut f0 = Vec::with_capacity(count);
    let mut g0 = Vec::with_capacity(count);
    let mut residual = T::zero();
    let kap = T::int(kappa0 as i64);
    let mut interior_change = T::zero();
    for (i, &r) in grid.nodes().iter().enumerate() {
        let (fr, gr, dlog) = nodeless_coulomb_spinor(lambda, kappa0, mass, r)?;
        f0.push(fr);
        g0.push(gr);
        // the common factor e^h drops out of both equations
        let hp = profile.slope(r)?;
        let (vt, vs) = (-lambda / r + v2(r), v1(r));
        let df = (hp + dlog) * fr;
        let dg = (hp + dlog) * gr;
        let t1 = [df, (kap + T::one()) * fr / r, -(energy + mass) * gr, vt * gr, -vs * gr];
        let t2 = [-dg, (kap - T::one()) * gr / r, -(energy - mass) * fr, vt * fr, vs * fr];
        for terms in [t1, t2] {
            let sum = terms.iter().fold(T::zero(), |acc, &t| acc + t);
            let scale = terms.iter().fold(T::zero(), |acc, &t| acc + t.abs());
            if scale > T::zero() {
                residual = residual.max(sum.abs() / scale);
            }
        }
        if r < T::lit(0.97) * r0 {
            interior_change = interior_change.max((profile.h[i].exp() - T::one()).abs());
        }
    }
    let ratio = check_ratio_condition(&f0, &g0, &v1, &v2, &grid, Branch::Decaying)?;
    let (f, g) = build_rescaled_state(&f0, &g0, &profile, &grid)?;
    Ok(BagModelCase {
        potential,
        profile,
        grid,
        f,
        g,
        energy,
        residual,
        ratio,
        interior_change,
    })
}
