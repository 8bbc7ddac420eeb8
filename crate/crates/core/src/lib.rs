//! Dirac bound states in a Coulomb field with added linear (and power-law)
//! scalar and time-like potentials tuned so that one Coulomb level survives
//! unchanged.
//!
//! Everything numerical is generic over [`Real`] (f32 or f64); the aliases
//! at the bottom fix the scalar to f64. Units are natural, ħ = c = 1.

pub mod coulomb;
pub mod error;
pub mod exact_ansatz;
pub mod fw_effective;
pub mod grid;
pub mod quantum_numbers;
pub mod radial;
pub mod rescale;
pub mod scalar;
pub mod special;

pub use coulomb::{dirac_coulomb_energy, schrodinger_energy, CouplingSet, HydrogenicState};
pub use error::{Error, Result};
pub use exact_ansatz::{build_ansatz, evaluate_spinor, norm_by_quadrature, nu_expanded, nu_fine_tuned, radial_residual};
pub use fw_effective::{first_order_shift, preservation_scan, UniquenessReport};
pub use grid::{RadialGrid, Spacing};
pub use quantum_numbers::{decompose_kappa, kappa_from_lj, AngularState};
pub use radial::{radial_fn, PotentialSpec, RadialFn};
pub use rescale::{bag_model_case, Branch};
pub use scalar::Real;

pub type Couplings = CouplingSet<f64>;
pub type Ansatz = exact_ansatz::AnsatzParams<f64>;
pub type Shift = fw_effective::EffectiveShift<f64>;
pub type AntiparticlePotential = fw_effective::AntiparticlePotential<f64>;
pub type Grid = RadialGrid<f64>;
pub type Potential = PotentialSpec<f64>;
pub type BoundState = radial::BoundState<f64>;
pub type SchrodingerState = radial::SchrodingerState<f64>;
pub type ShiftStudy = radial::ShiftStudy<f64>;
pub type RescaleProfile = rescale::RescaleProfile<f64>;
pub type RatioReport = rescale::RatioReport<f64>;
pub type BagModelCase = rescale::BagModelCase<f64>;
