//! Independent numerical verification of the closed-form results: direct
//! Numerov integration of the Schrödinger equation, projection onto the
//! {J_{+κa}, J_{−κa}} basis, quadrature norms, probability currents, and
//! the −|x|^ν prediction scanner.
//!
//! Independence contract: nothing here calls the spectrum module's
//! quantization condition; only raw integration and specfun point values
//! are used, so a shared bug cannot validate itself.

mod current;
mod numerov;
mod power;
mod projection;
mod quadrature;
mod scatter_check;

pub use current::probability_current;
pub use numerov::{integrate_parity_ode, integrate_power_barrier};
pub use power::{power_barrier_scan, EnvelopeFit};
pub use projection::{bic_scan_by_projection, project_onto_basis, ProjectionReport};
pub use quadrature::{bessel_tail_quadrature, bic_norm_by_quadrature, quadrature_norm};
pub use scatter_check::rt_by_ode;
