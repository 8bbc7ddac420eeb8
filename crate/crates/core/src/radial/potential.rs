use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A radial function `r ↦ V(r)`.
pub type RadialFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

pub fn radial_fn<T, F>(f: F) -> RadialFn<T>
where
    F: Fn(T) -> T + Send + Sync + 'static,
{
    Arc::new(f)
}

/// `V₀(r) + β V₁(r) + V₂(r)`: V₀ and V₂ are time-like, V₁ is scalar.
///
/// `origin_time_like` and `origin_scalar` are the limits of `r(V₀+V₂)` and
/// `r V₁` as r → 0; they fix the leading power of the regular solution.
#[derive(Clone)]
pub struct PotentialSpec<T> {
    pub v0: RadialFn<T>,
    pub v1: RadialFn<T>,
    pub v2: RadialFn<T>,
    pub origin_time_like: T,
    pub origin_scalar: T,
}

impl<T: Real> fmt::Debug for PotentialSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PotentialSpec")
            .field("origin_time_like", &self.origin_time_like)
            .field("origin_scalar", &self.origin_scalar)
            .finish_non_exhaustive()
    }
}

fn zero<T: Real>() -> RadialFn<T> {
    radial_fn(|_| T::zero())
}

impl<T: Real> PotentialSpec<T> {
    /// Potentials regular at the origin (no 1/r pieces).
    pub fn regular(v0: RadialFn<T>, v1: RadialFn<T>, v2: RadialFn<T>) -> Self {
        Self {
            v0,
            v1,
            v2,
            origin_time_like: T::zero(),
            origin_scalar: T::zero(),
        }
    }

    /// `V₀ = −λ/r`, nothing else.
    pub fn coulomb(lambda: T) -> Self {
        Self {
            v0: radial_fn(move |r: T| -lambda / r),
            v1: zero(),
            v2: zero(),
            origin_time_like: -lambda,
            origin_scalar: T::zero(),
        }
    }

    /// `V₀ = −λ/r`, `V₁ = μr`, `V₂ = νr`.
    pub fn coulomb_linear(lambda: T, mu: T, nu: T) -> Self {
        Self::coulomb(lambda)
            .with_v1(radial_fn(move |r: T| mu * r))
            .with_v2(radial_fn(move |r: T| nu * r))
    }

    /// Replaces V₁; it must stay bounded at the origin.
    pub fn with_v1(mut self, v1: RadialFn<T>) -> Self {
        self.v1 = v1;
        self
    }

    /// Replaces V₂; it must stay bounded at the origin.
    pub fn with_v2(mut self, v2: RadialFn<T>) -> Self {
        self.v2 = v2;
        self
    }

    pub fn time_like(&self, r: T) -> T {
        (self.v0)(r) + (self.v2)(r)
    }

    pub fn scalar(&self, r: T) -> T {
        (self.v1)(r)
    }

    /// Checks every component is finite on the grid nodes.
    pub fn check_finite(&self, nodes: &[T]) -> Result<()> {
        for &r in nodes {
            let vals = [(self.v0)(r), (self.v1)(r), (self.v2)(r)];
            if vals.iter().any(|v| !v.is_finite()) {
                return Err(Error::domain(format!("potential is not finite at r = {r}")));
            }
        }
        Ok(())
    }
}
