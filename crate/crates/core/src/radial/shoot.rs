//! Shooting machinery shared by the Dirac and Schrödinger solvers.
//!
//! Both problems are written as a 2×2 linear system `y′ = A(r; E) y` and
//! integrated with classical RK4 in the grid's uniform variable (r or ln r).

use crate::error::{Error, Result};
use crate::grid::{RadialGrid, Spacing};
use crate::scalar::Real;

use super::potential::{PotentialSpec, RadialFn};

pub(crate) trait LinearSystem<T: Real> {
    /// `A(r)` in `dy/dr = A y`.
    fn matrix(&self, r: T, e: T) -> [[T; 2]; 2];
    /// Regular solution at small r, up to scale.
    fn origin_start(&self, r: T, e: T) -> Result<[T; 2]>;
    /// Solution decaying outward at large r, up to scale.
    fn decay_start(&self, r: T, e: T) -> Result<[T; 2]>;
    /// Local decay rate squared; negative in the classically allowed region.
    fn k2(&self, r: T, e: T) -> T;
}

pub(crate) struct DiracSystem<'a, T> {
    pub pot: &'a PotentialSpec<T>,
    pub kappa: i32,
    pub mass: T,
}

impl<T: Real> LinearSystem<T> for DiracSystem<'_, T> {
    fn matrix(&self, r: T, e: T) -> [[T; 2]; 2] {
        let k = T::int(self.kappa as i64);
        let vt = self.pot.time_like(r);
        let vs = self.pot.scalar(r);
        [
            [-(k + T::one()) / r, e + self.mass - vt + vs],
            [-(e - self.mass - vt - vs), (k - T::one()) / r],
        ]
    }

    fn origin_start(&self, r: T, _e: T) -> Result<[T; 2]> {
        // r·A → [[−(κ+1), c_s − c_t], [c_t + c_s, κ − 1]] with eigenvalue s − 1.
        let k = T::int(self.kappa as i64);
        let (ct, cs) = (self.pot.origin_time_like, self.pot.origin_scalar);
        let s2 = k * k - ct * ct + cs * cs;
        if !(s2 > T::zero()) {
            return Err(Error::domain(format!(
                "no regular solution at the origin: κ² − c_t² + c_s² = {s2} ≤ 0"
            )));
        }
        let s = s2.sqrt();
        let row1 = [cs - ct, k + s];
        let row2 = [k - s, -(ct + cs)];
        let norm = |v: [T; 2]| v[0].abs() + v[1].abs();
        let mut v = if norm(row1) >= norm(row2) { row1 } else { row2 };
        let lead = if v[0] != T::zero() { v[0] } else { v[1] };
        if lead < T::zero() {
            v = [-v[0], -v[1]];
        }
        let scale = r.powf(s - T::one()) / norm(v);
        Ok([v[0] * scale, v[1] * scale])
    }

    fn decay_start(&self, r: T, e: T) -> Result<[T; 2]> {
        let k2 = self.k2(r, e) - T::int((self.kappa as i64) * (self.kappa as i64 + 1)) / (r * r);
        if !(k2 > T::zero()) {
            return Err(Error::NonNormalizable(format!(
                "no evanescent tail at r_max = {r} for E = {e}"
            )));
        }
        let vt = self.pot.time_like(r);
        let vs = self.pot.scalar(r);
        let denom = e + self.mass - vt + vs;
        if denom == T::zero() {
            return Err(Error::Numeric("degenerate inward start".into()));
        }
        Ok([T::one(), -k2.sqrt() / denom])
    }

    fn k2(&self, r: T, e: T) -> T {
        let vt = self.pot.time_like(r);
        let vs = self.pot.scalar(r);
        let k = T::int(self.kappa as i64);
        (self.mass + vs).powi(2) - (e - vt).powi(2) + k * (k + T::one()) / (r * r)
    }
}

/// `−u″/2m + [v + ℓ(ℓ+1)/(2mr²)] u = (E − m) u` as `(u, u′)`.
pub(crate) struct SchrodingerSystem<'a, T> {
    pub v: &'a RadialFn<T>,
    pub ell: u32,
    pub mass: T,
}

impl<T: Real> LinearSystem<T> for SchrodingerSystem<'_, T> {
    fn matrix(&self, r: T, e: T) -> [[T; 2]; 2] {
        let two_m = T::lit(2.0) * self.mass;
        let l = T::int(self.ell as i64);
        let w = two_m * ((self.v)(r) - (e - self.mass)) + l * (l + T::one()) / (r * r);
        [[T::zero(), T::one()], [w, T::zero()]]
    }

    fn origin_start(&self, r: T, _e: T) -> Result<[T; 2]> {
        let l1 = T::int(self.ell as i64 + 1);
        let p = r.powi(self.ell as i32);
        Ok([p * r, l1 * p])
    }

    fn decay_start(&self, r: T, e: T) -> Result<[T; 2]> {
        let k2 = self.k2(r, e);
        if !(k2 > T::zero()) {
            return Err(Error::NonNormalizable(format!(
                "no evanescent tail at r_max = {r} for E = {e}"
            )));
        }
        Ok([T::one(), -k2.sqrt()])
    }

    fn k2(&self, r: T, e: T) -> T {
        self.matrix(r, e)[1][0]
    }
}

fn rhs<T: Real, S: LinearSystem<T>>(sys: &S, spacing: Spacing, r: T, e: T, y: [T; 2]) -> [T; 2] {
    let a = sys.matrix(r, e);
    let j = match spacing {
        Spacing::Linear => T::one(),
        Spacing::Logarithmic => r,
    };
    [
        j * (a[0][0] * y[0] + a[0][1] * y[1]),
        j * (a[1][0] * y[0] + a[1][1] * y[1]),
    ]
}

fn axpy<T: Real>(y: [T; 2], h: T, k: [T; 2]) -> [T; 2] {
    [y[0] + h * k[0], y[1] + h * k[1]]
}

/// Integrates from node `from` to node `to` (either direction), returning
/// the solution at every node of `from..=to` in traversal order. The
/// trajectory is rescaled as a whole whenever it grows too large.
pub(crate) fn propagate<T: Real, S: LinearSystem<T>>(
    sys: &S,
    grid: &RadialGrid<T>,
    e: T,
    from: usize,
    to: usize,
    y0: [T; 2],
) -> Result<Vec<[T; 2]>> {
    let nodes = grid.nodes();
    let spacing = grid.spacing();
    let step = grid.step();
    let ceiling = T::max_value().sqrt().sqrt();
    let count = from.abs_diff(to) + 1;
    let mut out = Vec::with_capacity(count);
    out.push(y0);
    let mut y = y0;
    let mut i = from;
    let (du, forward) = if to >= from { (step, true) } else { (-step, false) };
    let half = T::lit(0.5);
    while i != to {
        let j = if forward { i + 1 } else { i - 1 };
        let (r0, r1) = (nodes[i], nodes[j]);
        let rm = match spacing {
            Spacing::Linear => half * (r0 + r1),
            Spacing::Logarithmic => (r0 * r1).sqrt(),
        };
        let k1 = rhs(sys, spacing, r0, e, y);
        let k2 = rhs(sys, spacing, rm, e, axpy(y, half * du, k1));
        let k3 = rhs(sys, spacing, rm, e, axpy(y, half * du, k2));
        let k4 = rhs(sys, spacing, r1, e, axpy(y, du, k3));
        let sixth = du / T::lit(6.0);
        for c in 0..2 {
            y[c] = y[c] + sixth * (k1[c] + T::lit(2.0) * (k2[c] + k3[c]) + k4[c]);
        }
        if !(y[0].is_finite() && y[1].is_finite()) {
            return Err(Error::Numeric(format!(
                "radial integration produced a non-finite value at r = {r1}"
            )));
        }
        let size = y[0].abs().max(y[1].abs());
        if size > ceiling {
            let s = T::one() / size;
            for v in out.iter_mut() {
                v[0] = v[0] * s;
                v[1] = v[1] * s;
            }
            y = [y[0] * s, y[1] * s];
        }
        out.push(y);
        i = j;
    }
    Ok(out)
}

/// Outermost classically allowed node at energy `e`, kept away from the
/// grid ends; the middle of the grid when nothing is allowed.
pub(crate) fn match_index<T: Real, S: LinearSystem<T>>(sys: &S, grid: &RadialGrid<T>, e: T) -> usize {
    let n = grid.len();
    let lo = (n / 20).max(2);
    let hi = n - 1 - (n / 20).max(2);
    let turning = grid.nodes().iter().rposition(|&r| !(sys.k2(r, e) > T::zero()));
    match turning {
        Some(i) => i.clamp(lo, hi),
        None => n / 2,
    }
}

pub(crate) struct Shooter<'a, T, S> {
    pub sys: &'a S,
    pub grid: &'a RadialGrid<T>,
    pub match_idx: usize,
}

impl<'a, T: Real, S: LinearSystem<T>> Shooter<'a, T, S> {
    pub fn new(sys: &'a S, grid: &'a RadialGrid<T>, e_ref: T) -> Self {
        let match_idx = match_index(sys, grid, e_ref);
        Self {
            sys,
            grid,
            match_idx,
        }
    }

    fn outward(&self, e: T) -> Result<Vec<[T; 2]>> {
        let y0 = self.sys.origin_start(self.grid.r_min(), e)?;
        propagate(self.sys, self.grid, e, 0, self.match_idx, y0)
    }

    fn inward(&self, e: T) -> Result<Vec<[T; 2]>> {
        let last = self.grid.len() - 1;
        let y0 = self.sys.decay_start(self.grid.r_max(), e)?;
        propagate(self.sys, self.grid, e, last, self.match_idx, y0)
    }

    /// `sin` of the angle between the outward and inward solution vectors at
    /// the match point; zero exactly at an eigenvalue.
    pub fn defect(&self, e: T) -> Result<T> {
        let out = *self.outward(e)?.last().expect("non-empty");
        let inn = *self.inward(e)?.last().expect("non-empty");
        let norm = |v: [T; 2]| (v[0] * v[0] + v[1] * v[1]).sqrt();
        Ok((out[0] * inn[1] - out[1] * inn[0]) / (norm(out) * norm(inn)))
    }

    /// Outward and inward pieces joined at the match point, outward scaled
    /// by the least-squares factor onto the inward vector.
    pub fn glued(&self, e: T) -> Result<Vec<[T; 2]>> {
        let out = self.outward(e)?;
        let mut inn = self.inward(e)?;
        inn.reverse();
        let (o, i) = (out[out.len() - 1], inn[0]);
        let c = (o[0] * i[0] + o[1] * i[1]) / (o[0] * o[0] + o[1] * o[1]);
        let mut y: Vec<[T; 2]> = out[..out.len() - 1]
            .iter()
            .map(|v| [v[0] * c, v[1] * c])
            .collect();
        y.extend(inn);
        if y.iter().any(|v| !(v[0].is_finite() && v[1].is_finite())) {
            return Err(Error::Numeric("glued solution is not finite".into()));
        }
        Ok(y)
    }

    /// Bisection on the defect down to `tol`, then one secant step.
    pub fn solve(&self, lo: T, hi: T, tol: T) -> Result<T> {
        let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let mut da = self.defect(a)?;
        let mut db = self.defect(b)?;
        if da == T::zero() {
            return Ok(a);
        }
        if db == T::zero() {
            return Ok(b);
        }
        if (da > T::zero()) == (db > T::zero()) {
            return Err(Error::Bracket {
                lo: a.as_f64(),
                hi: b.as_f64(),
            });
        }
        let mut iterations = 0;
        while b - a > tol {
            let mid = (a + b) * T::lit(0.5);
            if mid <= a || mid >= b || iterations > 200 {
                break;
            }
            let dm = self.defect(mid)?;
            if dm == T::zero() {
                return Ok(mid);
            }
            if (dm > T::zero()) == (da > T::zero()) {
                a = mid;
                da = dm;
            } else {
                b = mid;
                db = dm;
            }
            iterations += 1;
        }
        let secant = b - db * (b - a) / (db - da);
        Ok(if secant > a && secant < b {
            secant
        } else {
            (a + b) * T::lit(0.5)
        })
    }
}
