//! Bound states in the continuum (BIC) of the bottomless exponential barrier
//! `V(x) = -V0 [exp(2|x|/a) - 1]`.
//!
//! The crate is organized as:
//!
//! - [`specfun`]: from-scratch special functions (Bessel J of arbitrary real
//!   order, Y, Hankel, complex Gamma, complex-order J, generalized
//!   hypergeometric 2F3);
//! - [`model`]: the potential, the order/argument map, and the closed-form
//!   wavefunctions;
//! - [`spectrum`]: the BIC quantization conditions, root search over the
//!   continuum, and the closed-form L2 norm;
//! - [`scattering`]: reflection/transmission coefficients by Hankel-basis
//!   matching at the origin;
//! - [`oracle`]: independent verification by direct Numerov integration,
//!   basis projection, quadrature norms, probability currents, and the
//!   power-barrier tail scanner;
//! - [`cli`]: the `bic1d` command-line front end.

pub mod cli;
mod dd;
pub mod error;
pub mod model;
pub mod oracle;
pub mod scattering;
pub mod specfun;
pub mod spectrum;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
