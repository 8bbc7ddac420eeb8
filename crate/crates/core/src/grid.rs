//! Radial sampling grids.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spacing {
    Linear,
    Logarithmic,
}

impl std::str::FromStr for Spacing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" | "lin" => Ok(Spacing::Linear),
            "log" | "logarithmic" => Ok(Spacing::Logarithmic),
            other => Err(Error::domain(format!("unknown grid spacing '{other}'"))),
        }
    }
}

/// Strictly increasing nodes on `[r_min, r_max]`, both ends included.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid<T> {
    r_min: T,
    r_max: T,
    spacing: Spacing,
    nodes: Vec<T>,
}

impl<T: Real> RadialGrid<T> {
    pub fn new(r_min: T, r_max: T, count: usize, spacing: Spacing) -> Result<Self> {
        if !(r_min > T::zero()) || !(r_max > r_min) || !r_max.is_finite() {
            return Err(Error::domain(format!(
                "grid needs 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        if count < 2 {
            return Err(Error::domain("grid needs at least two nodes"));
        }
        let last = T::int(count as i64 - 1);
        let mut nodes: Vec<T> = match spacing {
            Spacing::Linear => {
                let h = (r_max - r_min) / last;
                (0..count).map(|i| r_min + h * T::int(i as i64)).collect()
            }
            Spacing::Logarithmic => {
                let dx = (r_max / r_min).ln() / last;
                (0..count).map(|i| r_min * (dx * T::int(i as i64)).exp()).collect()
            }
        };
        nodes[0] = r_min;
        nodes[count - 1] = r_max;
        if nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::domain(
                "grid nodes are not strictly increasing at this precision",
            ));
        }
        Ok(Self {
            r_min,
            r_max,
            spacing,
            nodes,
        })
    }

    pub fn linear(r_min: T, r_max: T, count: usize) -> Result<Self> {
        Self::new(r_min, r_max, count, Spacing::Linear)
    }

    pub fn logarithmic(r_min: T, r_max: T, count: usize) -> Result<Self> {
        Self::new(r_min, r_max, count, Spacing::Logarithmic)
    }

    pub fn r_min(&self) -> T {
        self.r_min
    }

    pub fn r_max(&self) -> T {
        self.r_max
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    /// Uniform step in the integration variable: `h` in r, or `dx` in ln r.
    pub fn step(&self) -> T {
        let last = T::int(self.nodes.len() as i64 - 1);
        match self.spacing {
            Spacing::Linear => (self.r_max - self.r_min) / last,
            Spacing::Logarithmic => (self.r_max / self.r_min).ln() / last,
        }
    }

    /// Jacobian `dr/du` at node i, where u is the uniformly spaced variable.
    pub fn jacobian(&self, i: usize) -> T {
        match self.spacing {
            Spacing::Linear => T::one(),
            Spacing::Logarithmic => self.nodes[i],
        }
    }

    /// Trapezoid rule for `∫ F(r) dr` from samples `F(r_i)`.
    pub fn integrate(&self, samples: &[T]) -> T {
        debug_assert_eq!(samples.len(), self.nodes.len());
        let n = samples.len();
        let half = T::lit(0.5);
        let mut acc = T::zero();
        for (i, &v) in samples.iter().enumerate() {
            let w = if i == 0 || i + 1 == n { half } else { T::one() };
            acc = acc + w * v * self.jacobian(i);
        }
        acc * self.step()
    }

    /// Running integral `∫_{r_min}^{r_i} F dr` at every node.
    ///
    /// Trapezoid with the endpoint correction `−h²/12 (F′_i − F′_{i−1})`
    /// (derivatives by finite differences), which is fourth order for
    /// smooth integrands.
    pub fn cumulative(&self, samples: &[T]) -> Vec<T> {
        let n = samples.len();
        debug_assert_eq!(n, self.nodes.len());
        let h = self.step();
        let g: Vec<T> = (0..n).map(|i| samples[i] * self.jacobian(i)).collect();
        let deriv = |i: usize| -> T {
            if n < 3 {
                return (g[n - 1] - g[0]) / (h * T::int(n as i64 - 1));
            }
            if i == 0 {
                (-T::lit(3.0) * g[0] + T::lit(4.0) * g[1] - g[2]) / (T::lit(2.0) * h)
            } else if i == n - 1 {
                (T::lit(3.0) * g[n - 1] - T::lit(4.0) * g[n - 2] + g[n - 3]) / (T::lit(2.0) * h)
            } else {
                (g[i + 1] - g[i - 1]) / (T::lit(2.0) * h)
            }
        };
        let mut out = Vec::with_capacity(n);
        out.push(T::zero());
        let mut acc = T::zero();
        let mut d_prev = deriv(0);
        for i in 1..n {
            let d_cur = deriv(i);
            acc = acc + h * T::lit(0.5) * (g[i] + g[i - 1]) - h * h / T::lit(12.0) * (d_cur - d_prev);
            out.push(acc);
            d_prev = d_cur;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn endpoints_and_monotonicity() {
        let g = RadialGrid::logarithmic(1e-6, 50.0, 1000).unwrap();
        assert_eq!(g.nodes()[0], 1e-6);
        assert_eq!(*g.nodes().last().unwrap(), 50.0);
        assert!(g.nodes().windows(2).all(|w| w[1] > w[0]));
        assert!(RadialGrid::linear(0.0, 1.0, 10).is_err());
        assert!(RadialGrid::linear(2.0, 1.0, 10).is_err());
        assert!(RadialGrid::linear(1.0, 2.0, 1).is_err());
    }

    #[test]
    fn trapezoid_on_both_spacings() {
        for spacing in [Spacing::Linear, Spacing::Logarithmic] {
            let g = RadialGrid::new(1e-4, 40.0, 20001, spacing).unwrap();
            let s: Vec<f64> = g.nodes().iter().map(|&r: &f64| r * r * (-r).exp()).collect();
            assert_relative_eq!(g.integrate(&s), 2.0, max_relative = 1e-6);
        }
    }

    #[test]
    fn cumulative_is_fourth_order() {
        let err = |count: usize| {
            let g = RadialGrid::linear(0.5, 3.0, count).unwrap();
            let s: Vec<f64> = g.nodes().iter().map(|&r: &f64| r.cos()).collect();
            let c = g.cumulative(&s);
            (c[count - 1] - (3.0f64.sin() - 0.5f64.sin())).abs()
        };
        let ratio = err(101) / err(201);
        assert!(ratio > 12.0, "ratio {ratio}");
    }

    #[test]
    fn spacing_parses() {
        assert_eq!("log".parse::<Spacing>().unwrap(), Spacing::Logarithmic);
        assert_eq!("linear".parse::<Spacing>().unwrap(), Spacing::Linear);
        assert!("cubic".parse::<Spacing>().is_err());
    }
}
