//! Finite-n and limiting correlation kernels of random normal matrix
//! ensembles, together with numerical checks of the identities they satisfy:
//! Ward's equation, the mass-one equation and its series form, the 1/8
//! formula, kernel positivity and boundary universality.
//!
//! The crate is organised in four layers:
//!
//! * [`special`]: complex error function, plasma functions `F` and `H`,
//!   Hermite polynomials, the Mittag-Leffler function `M_λ`, incomplete gamma.
//! * [`finite_n`]: exact kernels of radially symmetric ensembles, rescaling
//!   frames, cocycles, bulk approximations and exponential sections.
//! * [`limits`]: limiting kernels and the verification machinery built on a
//!   polar quadrature that is centred at the Cauchy singularity.
//! * [`sampler`]: seeded Monte Carlo sampling of eigenvalue moduli.
//!
//! Grid fills and Monte Carlo trials run on rayon when the `parallel`
//! feature is enabled (the default) and sequentially otherwise; see [`exec`].

pub mod error;
pub mod exec;
pub mod finite_n;
pub mod grid;
pub mod limits;
pub mod quadrature;
pub mod sampler;
pub mod special;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex scalar used for every coordinate (`ζ`, `η`, `z`, `w`).
pub type Cpx = Complex64;

/// `1/√(2π)`.
pub const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
/// `1/√π`.
pub const INV_SQRT_PI: f64 = 0.564_189_583_547_756_3;
