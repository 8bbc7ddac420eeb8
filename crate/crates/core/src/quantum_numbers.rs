//! Dirac angular quantum numbers.
//!
//! Half-integer quantities (j and the magnetic projection M) are stored
//! doubled so that all arithmetic here stays in the integers.
//!
//! Sign convention: the spin-angular function of the upper component obeys
//! `(σ·L + 1) χ_κ = −κ χ_κ`, so `σ·L` has eigenvalue `−κ − 1` on it. The lower
//! component carries `χ_{−κ}` and therefore eigenvalue `+κ` for `σ·L + 1`.

use crate::error::{Error, Result};

/// Which half of the bispinor a spin-angular function belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    /// Carries `χ_κ`.
    Upper,
    /// Carries `χ_{−κ}`.
    Lower,
}

/// Angular part of a Dirac state: κ plus the doubled magnetic projection 2M.
///
/// ℓ and 2j are derived from κ. M never enters any matrix element computed
/// in this crate and is kept only so a state can be labelled completely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AngularState {
    kappa: i32,
    magnetic_twice: i32,
}

impl AngularState {
    /// State with the given κ and the maximal projection M = j.
    pub fn new(kappa: i32) -> Result<Self> {
        let (_, j_twice) = decompose_kappa(kappa)?;
        Ok(Self {
            kappa,
            magnetic_twice: j_twice as i32,
        })
    }

    pub fn with_projection(kappa: i32, magnetic_twice: i32) -> Result<Self> {
        let (_, j_twice) = decompose_kappa(kappa)?;
        if magnetic_twice.unsigned_abs() > j_twice || (magnetic_twice - j_twice as i32) % 2 != 0 {
            return Err(Error::domain(format!(
                "2M = {magnetic_twice} is not a valid projection for 2j = {j_twice}"
            )));
        }
        Ok(Self {
            kappa,
            magnetic_twice,
        })
    }

    pub fn kappa(&self) -> i32 {
        self.kappa
    }

    pub fn ell(&self) -> u32 {
        decompose_kappa(self.kappa).map(|(l, _)| l).unwrap_or(0)
    }

    pub fn j_twice(&self) -> u32 {
        2 * self.kappa.unsigned_abs() - 1
    }

    pub fn magnetic_twice(&self) -> i32 {
        self.magnetic_twice
    }
}

/// κ for orbital ℓ and total angular momentum j (passed as 2j).
///
/// Returns `−(ℓ+1)` for j = ℓ + 1/2 and `+ℓ` for j = ℓ − 1/2.
pub fn kappa_from_lj(ell: u32, j_twice: u32) -> Result<i32> {
    let two_l = 2 * ell as i64;
    let jt = j_twice as i64;
    if jt == two_l + 1 {
        Ok(-(ell as i32 + 1))
    } else if jt == two_l - 1 && ell > 0 {
        Ok(ell as i32)
    } else {
        Err(Error::domain(format!(
            "j = {j_twice}/2 is not ℓ ± 1/2 for ℓ = {ell}"
        )))
    }
}

/// Splits κ into (ℓ, 2j) with ℓ = |κ + 1/2| − 1/2 and j = |κ| − 1/2.
pub fn decompose_kappa(kappa: i32) -> Result<(u32, u32)> {
    if kappa == 0 {
        return Err(Error::domain("κ = 0 is not a Dirac angular quantum number"));
    }
    let ell = if kappa < 0 {
        kappa.unsigned_abs() - 1
    } else {
        kappa as u32
    };
    Ok((ell, 2 * kappa.unsigned_abs() - 1))
}

/// Eigenvalue of `σ·L + 1` on the spin-angular function of one component.
pub fn sigma_dot_l_plus_one_eigenvalue(kappa: i32, component: Component) -> i32 {
    debug_assert!(kappa != 0);
    match component {
        Component::Upper => -kappa,
        Component::Lower => kappa,
    }
}

/// All κ allowed for principal quantum number n: {−n, …, n−1} without 0.
pub fn enumerate_kappa(n: u32) -> Result<Vec<i32>> {
    if n < 1 {
        return Err(Error::domain("principal quantum number must be at least 1"));
    }
    let n = n as i32;
    Ok((-n..n).filter(|&k| k != 0).collect())
}

/// Checks that (n, κ) labels an existing bound state, i.e. κ ∈ {−n, …, n−1}\{0}.
pub(crate) fn check_state(n: u32, kappa: i32) -> Result<()> {
    if n < 1 {
        return Err(Error::domain("principal quantum number must be at least 1"));
    }
    if kappa == 0 {
        return Err(Error::domain("κ = 0 is not a Dirac angular quantum number"));
    }
    let n_i = n as i64;
    let k = kappa as i64;
    if k < -n_i || k >= n_i {
        return Err(Error::domain(format!(
            "κ = {kappa} is outside {{−n, …, n−1}} for n = {n}"
        )));
    }
    Ok(())
}
