//! Bound states of the radial Dirac equations
//!
//! ```text
//!  f′ + (κ+1) f/r = (E + m − V₀ + V₁ − V₂) g
//! −g′ + (κ−1) g/r = (E − m − V₀ − V₁ − V₂) f
//! ```
//!
//! for arbitrary `V₀ + βV₁ + V₂`, and of the radial Schrödinger equation,
//! by outward/inward shooting matched at the outer turning point.

mod potential;
mod shoot;

pub use potential::{radial_fn, PotentialSpec, RadialFn};

use crate::coulomb::dirac_coulomb_energy;
use crate::error::{Error, Result};
use crate::exact_ansatz::{nu_expanded, nu_fine_tuned};
use crate::fw_effective::first_order_shift;
use crate::grid::{RadialGrid, Spacing};
use crate::quantum_numbers::{check_state, decompose_kappa};
use crate::scalar::Real;

use shoot::{propagate, DiracSystem, LinearSystem, SchrodingerSystem, Shooter};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Outward,
    Inward,
}

/// Unnormalized `(f, g)` on every grid node.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub radii: Vec<T>,
    pub f: Vec<T>,
    pub g: Vec<T>,
}

/// Integrates the Dirac equations across the whole grid at fixed E.
///
/// Outward starts from the regular power `r^{s−1}`; inward from the local
/// evanescent solution at `r_max`.
pub fn integrate_radial<T: Real>(
    potential: &PotentialSpec<T>,
    kappa: i32,
    energy: T,
    mass: T,
    grid: &RadialGrid<T>,
    direction: Direction,
) -> Result<Trajectory<T>> {
    decompose_kappa(kappa)?;
    let sys = DiracSystem {
        pot: potential,
        kappa,
        mass,
    };
    let last = grid.len() - 1;
    let mut ys = match direction {
        Direction::Outward => propagate(&sys, grid, energy, 0, last, sys.origin_start(grid.r_min(), energy)?)?,
        Direction::Inward => propagate(&sys, grid, energy, last, 0, sys.decay_start(grid.r_max(), energy)?)?,
    };
    if direction == Direction::Inward {
        ys.reverse();
    }
    Ok(Trajectory {
        radii: grid.nodes().to_vec(),
        f: ys.iter().map(|y| y[0]).collect(),
        g: ys.iter().map(|y| y[1]).collect(),
    })
}

/// Matching defect at E (zero at eigenvalues) with the match point fixed by
/// `e_ref`.
pub fn matching_defect<T: Real>(
    potential: &PotentialSpec<T>,
    kappa: i32,
    energy: T,
    mass: T,
    grid: &RadialGrid<T>,
    e_ref: T,
) -> Result<T> {
    decompose_kappa(kappa)?;
    let sys = DiracSystem {
        pot: potential,
        kappa,
        mass,
    };
    Shooter::new(&sys, grid, e_ref).defect(energy)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundState<T> {
    pub energy: T,
    pub kappa: i32,
    pub radii: Vec<T>,
    /// Normalized so that `∫ (f² + g²) r² dr = 1`, with f > 0 near the origin.
    pub f: Vec<T>,
    pub g: Vec<T>,
    pub nodes_f: usize,
    pub converged: bool,
    /// Max relative defect of the two radial equations on the grid.
    pub residual: T,
    pub match_radius: T,
}

/// Sign changes, ignoring samples below `rel` of the largest magnitude.
pub fn count_nodes<T: Real>(values: &[T], rel: T) -> usize {
    let peak = values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let floor = peak * rel;
    let mut last: Option<bool> = None;
    let mut nodes = 0;
    for &v in values {
        if v.abs() <= floor {
            continue;
        }
        let positive = v > T::zero();
        if let Some(p) = last {
            if p != positive {
                nodes += 1;
            }
        }
        last = Some(positive);
    }
    nodes
}

fn node_floor<T: Real>() -> T {
    T::lit(1e-9).max(T::epsilon() * T::lit(1e3))
}

fn energy_tol<T: Real>(mass: T) -> T {
    mass * T::lit(1e-12).max(T::epsilon() * T::lit(4.0))
}

/// Whether `y` changes across the stencil at i by more than roundoff, so a
/// finite-difference derivative there means something.
fn resolvable<T: Real>(y: &[T], i: usize) -> bool {
    let (lo, hi) = (i.saturating_sub(2), (i + 2).min(y.len() - 1));
    (y[hi] - y[lo]).abs() > T::lit(1e-6) * y[i].abs()
}

/// Five-point first derivative with respect to r on any grid.
fn derivative<T: Real>(grid: &RadialGrid<T>, y: &[T], i: usize) -> T {
    let h = grid.step();
    let n = y.len();
    let d = if i >= 2 && i + 2 < n {
        (-y[i + 2] + T::lit(8.0) * (y[i + 1] - y[i - 1]) + y[i - 2]) / (T::lit(12.0) * h)
    } else if i + 2 < n {
        (-T::lit(3.0) * y[i] + T::lit(4.0) * y[i + 1] - y[i + 2]) / (T::lit(2.0) * h)
    } else {
        (T::lit(3.0) * y[i] - T::lit(4.0) * y[i - 1] + y[i - 2]) / (T::lit(2.0) * h)
    };
    d / grid.jacobian(i)
}

/// Max relative defect of the Dirac radial equations for sampled `(f, g)`.
///
/// Derivatives are five-point finite differences in the grid variable; each
/// equation's defect is divided by the sum of its term magnitudes, and only
/// nodes where `√(f²+g²)` exceeds 1e−8 of its peak (and at least two nodes
/// from either end) are considered.
pub fn dirac_residual<T: Real>(
    potential: &PotentialSpec<T>,
    kappa: i32,
    mass: T,
    energy: T,
    grid: &RadialGrid<T>,
    f: &[T],
    g: &[T],
) -> Result<T> {
    if f.len() != grid.len() || g.len() != grid.len() {
        return Err(Error::domain("sampled spinor does not match the grid"));
    }
    let k = T::int(kappa as i64);
    let amp: Vec<T> = f.iter().zip(g).map(|(a, b)| (*a * *a + *b * *b).sqrt()).collect();
    let peak = amp.iter().fold(T::zero(), |m, &v| m.max(v));
    let floor = peak * T::lit(1e-8);
    let mut worst = T::zero();
    for i in 2..grid.len().saturating_sub(2) {
        if amp[i] <= floor {
            continue;
        }
        let r = grid.nodes()[i];
        let (vt, vs) = (potential.time_like(r), potential.scalar(r));
        let (df, dg) = (derivative(grid, f, i), derivative(grid, g, i));
        let t1 = [df, (k + T::one()) * f[i] / r, -(energy + mass) * g[i], vt * g[i], -vs * g[i]];
        let t2 = [-dg, (k - T::one()) * g[i] / r, -(energy - mass) * f[i], vt * f[i], vs * f[i]];
        for terms in [t1, t2] {
            let sum = terms.iter().fold(T::zero(), |a, &t| a + t);
            let scale = terms.iter().fold(T::zero(), |a, &t| a + t.abs());
            if scale > T::zero() {
                worst = worst.max(sum.abs() / scale);
            }
        }
    }
    Ok(worst)
}

fn assemble_dirac<T: Real>(
    potential: &PotentialSpec<T>,
    kappa: i32,
    mass: T,
    grid: &RadialGrid<T>,
    shooter: &Shooter<'_, T, DiracSystem<'_, T>>,
    energy: T,
) -> Result<BoundState<T>> {
    let y = shooter.glued(energy)?;
    let mut f: Vec<T> = y.iter().map(|v| v[0]).collect();
    let mut g: Vec<T> = y.iter().map(|v| v[1]).collect();
    let density: Vec<T> = grid
        .nodes()
        .iter()
        .zip(f.iter().zip(&g))
        .map(|(&r, (&a, &b))| (a * a + b * b) * r * r)
        .collect();
    let norm = grid.integrate(&density).sqrt();
    if !(norm > T::zero()) || !norm.is_finite() {
        return Err(Error::NonNormalizable("zero or infinite norm".into()));
    }
    let lead = if f[0] != T::zero() { f[0] } else { g[0] };
    let scale = if lead < T::zero() { -T::one() / norm } else { T::one() / norm };
    for v in f.iter_mut().chain(g.iter_mut()) {
        *v = *v * scale;
    }
    let residual = dirac_residual(potential, kappa, mass, energy, grid, &f, &g)?;
    Ok(BoundState {
        energy,
        kappa,
        radii: grid.nodes().to_vec(),
        nodes_f: count_nodes(&f, node_floor()),
        f,
        g,
        converged: true,
        residual,
        match_radius: grid.nodes()[shooter.match_idx],
    })
}

/// Bound state in an energy bracket that contains one sign change of the
/// matching defect, identified by the node count of f.
pub fn find_bound_state<T: Real>(
    potential: &PotentialSpec<T>,
    kappa: i32,
    mass: T,
    grid: &RadialGrid<T>,
    bracket: (T, T),
    target_nodes: usize,
) -> Result<BoundState<T>> {
    decompose_kappa(kappa)?;
    potential.check_finite(grid.nodes())?;
    let sys = DiracSystem {
        pot: potential,
        kappa,
        mass,
    };
    let shooter = Shooter::new(&sys, grid, (bracket.0 + bracket.1) * T::lit(0.5));
    let energy = shooter.solve(bracket.0, bracket.1, energy_tol(mass))?;
    let state = assemble_dirac(potential, kappa, mass, grid, &shooter, energy)?;
    if state.nodes_f != target_nodes {
        return Err(Error::WrongState {
            found: state.nodes_f,
            expected: target_nodes,
            energy: energy.as_f64(),
        });
    }
    Ok(state)
}

/// Sign changes of `defect` on `samples` equally spaced energies, ordered by
/// distance from `center`.
fn sign_changes<T: Real>(
    defect: impl Fn(T) -> Result<T>,
    lo: T,
    hi: T,
    samples: usize,
    center: T,
) -> Result<Vec<(T, T)>> {
    let samples = samples.max(2);
    let step = (hi - lo) / T::int(samples as i64 - 1);
    let energies: Vec<T> = (0..samples).map(|i| lo + step * T::int(i as i64)).collect();
    let values = energies.iter().map(|&e| defect(e)).collect::<Result<Vec<T>>>()?;
    let mut out: Vec<(T, T)> = energies
        .windows(2)
        .zip(values.windows(2))
        .filter(|(_, d)| (d[0] > T::zero()) != (d[1] > T::zero()))
        .map(|(e, _)| (e[0], e[1]))
        .collect();
    out.sort_by(|a, b| {
        let da = ((a.0 + a.1) * T::lit(0.5) - center).abs();
        let db = ((b.0 + b.1) * T::lit(0.5) - center).abs();
        da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}

/// Searches `guess ± half_width` for the state with `target_nodes` nodes in f.
pub fn find_state_near<T: Real>(
    potential: &PotentialSpec<T>,
    kappa: i32,
    mass: T,
    grid: &RadialGrid<T>,
    guess: T,
    half_width: T,
    target_nodes: usize,
) -> Result<BoundState<T>> {
    decompose_kappa(kappa)?;
    potential.check_finite(grid.nodes())?;
    let sys = DiracSystem {
        pot: potential,
        kappa,
        mass,
    };
    let shooter = Shooter::new(&sys, grid, guess);
    let (lo, hi) = (guess - half_width, guess + half_width);
    let brackets = sign_changes(|e| shooter.defect(e), lo, hi, 25, guess)?;
    let mut nearest: Option<(usize, T)> = None;
    for (a, b) in brackets {
        let e = shooter.solve(a, b, energy_tol(mass))?;
        let state = assemble_dirac(potential, kappa, mass, grid, &shooter, e)?;
        if state.nodes_f == target_nodes {
            return Ok(state);
        }
        nearest.get_or_insert((state.nodes_f, e));
    }
    match nearest {
        Some((found, e)) => Err(Error::WrongState {
            found,
            expected: target_nodes,
            energy: e.as_f64(),
        }),
        None => Err(Error::Bracket {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        }),
    }
}

/// Every bound state with a defect sign change on `[lo, hi]`, by energy.
pub fn scan_bound_states<T: Real>(
    potential: &PotentialSpec<T>,
    kappa: i32,
    mass: T,
    grid: &RadialGrid<T>,
    window: (T, T),
    samples: usize,
) -> Result<Vec<BoundState<T>>> {
    decompose_kappa(kappa)?;
    let sys = DiracSystem {
        pot: potential,
        kappa,
        mass,
    };
    let shooter = Shooter::new(&sys, grid, (window.0 + window.1) * T::lit(0.5));
    let mut brackets = sign_changes(|e| shooter.defect(e), window.0, window.1, samples, window.0)?;
    brackets.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    brackets
        .into_iter()
        .map(|(a, b)| {
            let e = shooter.solve(a, b, energy_tol(mass))?;
            assemble_dirac(potential, kappa, mass, grid, &shooter, e)
        })
        .collect()
}

fn suggest<T: Real, S: LinearSystem<T>>(
    sys: &S,
    mass: T,
    energy: T,
    count: usize,
    spacing: Spacing,
    r_min: Option<T>,
) -> Result<RadialGrid<T>> {
    let factor = T::lit(1.002);
    let limit = T::lit(1e9) / mass;
    let mut r = T::lit(1e-4) / mass;
    let mut last_allowed: Option<T> = None;
    let mut decay = T::zero();
    loop {
        let next = r * factor;
        let k2 = sys.k2(r, energy);
        if !(k2 > T::zero()) {
            last_allowed = Some(r);
            decay = T::zero();
        } else if last_allowed.is_some() {
            decay = decay + k2.sqrt() * (next - r);
            if decay > T::lit(36.0) {
                break;
            }
        }
        r = next;
        if r > limit {
            return Err(Error::domain(format!(
                "cannot place r_max: no classically allowed region or no decay for E = {energy}"
            )));
        }
    }
    let turning = last_allowed.expect("set before the loop breaks");
    let r_min = r_min.unwrap_or(turning * T::lit(5e-7));
    RadialGrid::new(r_min, r, count, spacing)
}

/// Grid adapted to a Dirac level near `energy`: `r_max` lies where the
/// evanescent tail beyond the outer turning point has decayed by ~e⁻³⁶, and
/// `r_min` (default) is 5e−7 of the turning radius.
pub fn suggest_dirac_grid<T: Real>(
    potential: &PotentialSpec<T>,
    kappa: i32,
    mass: T,
    energy: T,
    count: usize,
    spacing: Spacing,
    r_min: Option<T>,
) -> Result<RadialGrid<T>> {
    decompose_kappa(kappa)?;
    let sys = DiracSystem {
        pot: potential,
        kappa,
        mass,
    };
    suggest(&sys, mass, energy, count, spacing, r_min)
}

/// Single-component solution of the radial Schrödinger equation; `u = rR`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchrodingerState<T> {
    /// Total energy including the rest mass.
    pub energy: T,
    pub ell: u32,
    pub radii: Vec<T>,
    /// Normalized so that `∫ u² dr = 1`, positive near the origin.
    pub u: Vec<T>,
    pub nodes: usize,
    pub converged: bool,
    pub residual: T,
}

impl<T: Real> SchrodingerState<T> {
    /// `∫ u² w(r) dr` on the solution grid.
    pub fn expectation(&self, grid: &RadialGrid<T>, w: impl Fn(T) -> T) -> T {
        let s: Vec<T> = self.radii.iter().zip(&self.u).map(|(&r, &u)| u * u * w(r)).collect();
        grid.integrate(&s)
    }
}

fn assemble_schrodinger<T: Real>(
    ell: u32,
    mass: T,
    grid: &RadialGrid<T>,
    shooter: &Shooter<'_, T, SchrodingerSystem<'_, T>>,
    energy: T,
) -> Result<SchrodingerState<T>> {
    let y = shooter.glued(energy)?;
    let mut u: Vec<T> = y.iter().map(|p| p[0]).collect();
    let mut du: Vec<T> = y.iter().map(|p| p[1]).collect();
    let sq: Vec<T> = u.iter().map(|&x| x * x).collect();
    let norm = grid.integrate(&sq).sqrt();
    if !(norm > T::zero()) || !norm.is_finite() {
        return Err(Error::NonNormalizable("zero or infinite norm".into()));
    }
    let sign = u.iter().find(|x| **x != T::zero()).copied().unwrap_or(T::one());
    let scale = if sign < T::zero() { -T::one() / norm } else { T::one() / norm };
    for x in u.iter_mut().chain(du.iter_mut()) {
        *x = *x * scale;
    }
    // first-order form: u′ = p, p′ = W u; where p is flat to roundoff
    // (near the origin) its difference quotient is noise and is skipped
    let sys = shooter.sys;
    let peak = u.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    let mut residual = T::zero();
    for i in 2..grid.len() - 2 {
        let amp = u[i].abs().max(du[i].abs() / (T::one() + mass));
        if amp <= peak * T::lit(1e-8) {
            continue;
        }
        let r = grid.nodes()[i];
        let a = sys.matrix(r, energy);
        let t1 = [derivative(grid, &u, i), -du[i]];
        let t2 = [derivative(grid, &du, i), -a[1][0] * u[i]];
        for (t, y) in [(t1, &u), (t2, &du)] {
            if !resolvable(y, i) {
                continue;
            }
            let scale = t[0].abs() + t[1].abs();
            if scale > T::zero() {
                residual = residual.max((t[0] + t[1]).abs() / scale);
            }
        }
    }
    Ok(SchrodingerState {
        energy,
        ell,
        radii: grid.nodes().to_vec(),
        nodes: count_nodes(&u, node_floor()),
        u,
        converged: true,
        residual,
    })
}

/// `−u″/2m + [v + ℓ(ℓ+1)/(2mr²)] u = (E − m) u`, same bracketing contract
/// as [`find_bound_state`]. Energies include the rest mass.
pub fn solve_schrodinger_radial<T: Real>(
    v: &RadialFn<T>,
    ell: u32,
    mass: T,
    grid: &RadialGrid<T>,
    bracket: (T, T),
    target_nodes: usize,
) -> Result<SchrodingerState<T>> {
    let sys = SchrodingerSystem { v, ell, mass };
    let shooter = Shooter::new(&sys, grid, (bracket.0 + bracket.1) * T::lit(0.5));
    let energy = shooter.solve(bracket.0, bracket.1, energy_tol(mass))?;
    let state = assemble_schrodinger(ell, mass, grid, &shooter, energy)?;
    if state.nodes != target_nodes {
        return Err(Error::WrongState {
            found: state.nodes,
            expected: target_nodes,
            energy: energy.as_f64(),
        });
    }
    Ok(state)
}

/// Schrödinger analogue of [`find_state_near`].
pub fn schrodinger_state_near<T: Real>(
    v: &RadialFn<T>,
    ell: u32,
    mass: T,
    grid: &RadialGrid<T>,
    guess: T,
    half_width: T,
    target_nodes: usize,
) -> Result<SchrodingerState<T>> {
    let sys = SchrodingerSystem { v, ell, mass };
    let shooter = Shooter::new(&sys, grid, guess);
    let (lo, hi) = (guess - half_width, guess + half_width);
    let brackets = sign_changes(|e| shooter.defect(e), lo, hi, 25, guess)?;
    let mut nearest = None;
    for (a, b) in brackets {
        let e = shooter.solve(a, b, energy_tol(mass))?;
        let state = assemble_schrodinger(ell, mass, grid, &shooter, e)?;
        if state.nodes == target_nodes {
            return Ok(state);
        }
        nearest.get_or_insert((state.nodes, e));
    }
    match nearest {
        Some((found, e)) => Err(Error::WrongState {
            found,
            expected: target_nodes,
            energy: e.as_f64(),
        }),
        None => Err(Error::Bracket {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        }),
    }
}

pub fn suggest_schrodinger_grid<T: Real>(
    v: &RadialFn<T>,
    ell: u32,
    mass: T,
    energy: T,
    count: usize,
    spacing: Spacing,
    r_min: Option<T>,
) -> Result<RadialGrid<T>> {
    let sys = SchrodingerSystem { v, ell, mass };
    suggest(&sys, mass, energy, count, spacing, r_min)
}

/// How ν follows μ in a shift study.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuRule {
    /// `ν = −μ√(1 − λ²/κ₀²)`, exact preservation of the reference level.
    FineTuned,
    /// `ν = −μ + μλ²/(2κ₀²)`, the form the first-order shift is derived for.
    Expanded,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftStudyRow<T> {
    pub mu: T,
    pub nu: T,
    pub energy: T,
    pub delta: T,
    /// `delta / μ`
    pub slope: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftStudy<T> {
    pub n: u32,
    pub kappa: i32,
    pub kappa0: i32,
    pub lambda: T,
    /// Numerical μ = 0 energy on the same grid.
    pub reference_energy: T,
    pub rows: Vec<ShiftStudyRow<T>>,
    /// Richardson limit of `delta/μ` as μ → 0.
    pub extrapolated_slope: T,
    /// First-order closed form divided by μ.
    pub predicted_slope: T,
}

impl<T: Real> ShiftStudy<T> {
    /// `|extrapolated − predicted| / |predicted|`; absolute when predicted is 0.
    pub fn relative_error(&self) -> T {
        let diff = (self.extrapolated_slope - self.predicted_slope).abs();
        if self.predicted_slope == T::zero() {
            diff
        } else {
            diff / self.predicted_slope.abs()
        }
    }
}

/// Repeated Richardson elimination of the O(μ), O(μ²), … terms of a
/// sequence sampled at geometrically decreasing μ (ratio `q`).
pub fn richardson_limit<T: Real>(values: &[T], q: T) -> T {
    let mut table = values.to_vec();
    let mut power = q;
    while table.len() > 1 {
        table = table
            .windows(2)
            .map(|w| (power * w[1] - w[0]) / (power - T::one()))
            .collect();
        power = power * q;
    }
    table[0]
}

/// Level |nκ⟩ of `−λ/r + μr + νr` for each μ, compared with the pure
/// Coulomb level on the same grid.
pub fn shift_convergence_study<T: Real>(
    n: u32,
    kappa: i32,
    kappa0: i32,
    lambda: T,
    mass: T,
    mu_sequence: &[T],
    nu_rule: NuRule,
    points: usize,
) -> Result<ShiftStudy<T>> {
    check_state(n, kappa)?;
    if mu_sequence.len() < 2 {
        return Err(Error::domain("need at least two μ values"));
    }
    if mu_sequence.iter().any(|&mu| !(mu > T::zero())) {
        return Err(Error::domain("μ must be positive (normalizable Gaussian)"));
    }
    let q = mu_sequence[0] / mu_sequence[1];
    for w in mu_sequence.windows(2) {
        if ((w[0] / w[1]) - q).abs() > T::lit(1e-9) * q || !(q > T::one()) {
            return Err(Error::domain("μ sequence must decrease geometrically"));
        }
    }
    let (ell, _) = decompose_kappa(kappa)?;
    let target = (n - ell - 1) as usize;
    let e0 = dirac_coulomb_energy(n, kappa, lambda, mass)?;
    let nf = T::int(n as i64);
    let half_width = lambda * lambda * mass / (T::lit(4.0) * (nf + T::one()).powi(3));

    let coulomb = PotentialSpec::coulomb(lambda);
    let grid = suggest_dirac_grid(&coulomb, kappa, mass, e0, points, Spacing::Logarithmic, None)?;
    let reference = find_state_near(&coulomb, kappa, mass, &grid, e0, half_width, target)?.energy;

    let slope_1 = first_order_shift(n, kappa, kappa0, lambda, T::one(), mass)?.total;
    let mut rows = Vec::with_capacity(mu_sequence.len());
    for &mu in mu_sequence {
        let nu = match nu_rule {
            NuRule::FineTuned => nu_fine_tuned(mu, lambda, kappa0)?,
            NuRule::Expanded => nu_expanded(mu, lambda, kappa0)?,
        };
        let pot = PotentialSpec::coulomb_linear(lambda, mu, nu);
        let guess = reference + slope_1 * mu;
        let state = find_state_near(&pot, kappa, mass, &grid, guess, half_width, target)?;
        let delta = state.energy - reference;
        rows.push(ShiftStudyRow {
            mu,
            nu,
            energy: state.energy,
            delta,
            slope: delta / mu,
        });
    }
    let slopes: Vec<T> = rows.iter().map(|r| r.slope).collect();
    Ok(ShiftStudy {
        n,
        kappa,
        kappa0,
        lambda,
        reference_energy: reference,
        extrapolated_slope: richardson_limit(&slopes, q),
        predicted_slope: slope_1,
        rows,
    })
}
