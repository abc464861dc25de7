//! Special-function evaluation kernel.
//!
//! Everything the model needs is built here from scratch: Bessel J of
//! arbitrary real order and its derivative, Y and the Hankel pair at
//! non-integer order, the Gamma function on the real line and in the complex
//! plane, Bessel J of complex order, and the generalized hypergeometric 2F3.
//!
//! Every evaluation reports the regime actually used and an absolute-error
//! estimate alongside the value.

mod bessel;
mod complex_order;
mod gamma;
mod hyper;

pub use bessel::{bessel_j, bessel_j_prime, bessel_y, bessel_y_prime, hankel, hankel_prime};
pub use complex_order::{bessel_j_complex_order, hankel_complex_order, hankel_complex_order_prime};
pub use gamma::{gamma, gamma_complex};
pub use hyper::hyp2f3;

use num_complex::Complex64;

/// Which evaluation branch produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Ascending power series.
    Series,
    /// Steed-style continued fractions (CF1 + CF2, Wronskian-normalized).
    ContinuedFraction,
    /// Hankel-type large-argument expansion.
    Asymptotic,
    /// A reflection formula on top of one of the other branches.
    Reflection,
}

/// A real special-function value with an absolute-error estimate.
#[derive(Clone, Copy, Debug)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err: f64,
    pub regime: Regime,
}

/// A complex special-function value with an absolute-error estimate.
#[derive(Clone, Copy, Debug)]
pub struct EvalResultC {
    pub value: Complex64,
    pub abs_err: f64,
    pub regime: Regime,
}

/// Hankel function kind: `H1` is `J + iY`, `H2` is `J - iY`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HankelKind {
    H1,
    H2,
}

/// `sin(pi * x)` with argument reduction done on `x` itself, so the result
/// stays accurate for large `x` and near integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - x.round();
    let s = (std::f64::consts::PI * r).sin();
    // x.round() even -> same sign, odd -> flipped
    if (x.round() as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// `cos(pi * x)` with the same reduction as [`sin_pi`].
pub(crate) fn cos_pi(x: f64) -> f64 {
    let r = x - x.round();
    let c = (std::f64::consts::PI * r).cos();
    if (x.round() as i64) % 2 == 0 {
        c
    } else {
        -c
    }
}
