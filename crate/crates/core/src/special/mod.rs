//! Special functions and quadrature with no dependencies beyond `num-traits`.

mod airy;
mod gamma;
mod kummer;
mod quadrature;

pub use airy::{airy_ai, airy_negative_zeros, MAX_AIRY_ZEROS};
pub use gamma::{gamma_fn, ln_gamma};
pub use kummer::kummer_u;
pub use quadrature::{
    gauss_legendre_3, integrate_adaptive, integrate_with, QuadratureOptions, QuadratureResult,
};
