//! Numerov integration of y'' + f(x) y = 0 on a uniform grid.
//!
//! The step is chosen once per run as min(base_step, λ_min/40), where
//! λ_min is the local de Broglie wavelength at the far end of the range;
//! for these exponentially growing potentials that is where oscillations
//! are fastest, so a uniform grid at that resolution is adequate
//! everywhere.

use crate::model::{ModelParams, Parity, TableSource, WavefunctionTable};
use crate::{Error, Result};
use num_complex::Complex64;

const MAX_POINTS: usize = 10_000_000;
const POINTS_PER_WAVELENGTH: f64 = 40.0;

/// Uniform step for integrating up to `x_max` with curvature function `f`.
fn choose_step(f_at_xmax: f64, x_max: f64, base_step: f64) -> Result<(f64, usize)> {
    let mut h = base_step;
    if f_at_xmax > 0.0 {
        let lambda = 2.0 * std::f64::consts::PI / f_at_xmax.sqrt();
        h = h.min(lambda / POINTS_PER_WAVELENGTH);
    }
    let n = (x_max / h).ceil() as usize;
    if n + 1 > MAX_POINTS {
        return Err(Error::StepUnderflow(n + 1));
    }
    // snap so the grid lands exactly on x_max
    Ok((x_max / n as f64, n))
}

/// First step by RK4 substeps on (y, y'), avoiding the need for derivatives
/// of f in a Taylor start.
fn rk4_first_step(f: &impl Fn(f64) -> f64, h: f64, y0: f64, dy0: f64) -> f64 {
    const SUBSTEPS: usize = 16;
    let hs = h / SUBSTEPS as f64;
    let (mut x, mut y, mut v) = (0.0_f64, y0, dy0);
    for _ in 0..SUBSTEPS {
        let acc = |x: f64, y: f64| -f(x) * y;
        let (k1y, k1v) = (v, acc(x, y));
        let (k2y, k2v) = (v + 0.5 * hs * k1v, acc(x + 0.5 * hs, y + 0.5 * hs * k1y));
        let (k3y, k3v) = (v + 0.5 * hs * k2v, acc(x + 0.5 * hs, y + 0.5 * hs * k2y));
        let (k4y, k4v) = (v + hs * k3v, acc(x + hs, y + hs * k3y));
        y += hs / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        v += hs / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        x += hs;
    }
    y
}

/// Numerov recurrence for y'' + f y = 0 from x = 0 with y(0), y'(0), on a
/// uniform grid of n+1 points with step h. Returns y values.
pub(crate) fn numerov_forward(
    f: &impl Fn(f64) -> f64,
    h: f64,
    n: usize,
    y0: f64,
    dy0: f64,
) -> Vec<f64> {
    let mut y = Vec::with_capacity(n + 1);
    y.push(y0);
    if n == 0 {
        return y;
    }
    y.push(rk4_first_step(f, h, y0, dy0));
    let w = |x: f64| 1.0 + h * h * f(x) / 12.0;
    for i in 1..n {
        let x = i as f64 * h;
        let num = (2.0 - 10.0 * h * h * f(x) / 12.0) * y[i] - w(x - h) * y[i - 1];
        y.push(num / w(x + h));
    }
    y
}

/// Direct Numerov integration of the model equation
/// ψ'' + [q² e^{2x/a} − κ²] ψ = 0 on [0, x_max], extended to the full line
/// by parity. Initial data: ψ(0)=1, ψ'(0)=0 (Even); ψ(0)=0, ψ'(0)=1 (Odd).
pub fn integrate_parity_ode(
    p: &ModelParams,
    energy: f64,
    parity: Parity,
    x_max: f64,
    base_step: f64,
) -> Result<WavefunctionTable> {
    if !(x_max > 0.0) || x_max > 8.0 * p.a {
        return Err(Error::Domain(format!(
            "integrate_parity_ode: x_max {x_max} outside (0, 8a]"
        )));
    }
    if !(base_step > 0.0) {
        return Err(Error::Domain(format!(
            "integrate_parity_ode: base_step {base_step} must be > 0"
        )));
    }
    let kappa_sq = (p.v0 - energy) / p.h2m;
    let q_sq = p.q * p.q;
    let f = move |x: f64| q_sq * (2.0 * x / p.a).exp() - kappa_sq;
    let (h, n) = choose_step(f(x_max), x_max, base_step)?;
    let (y0, dy0) = match parity {
        Parity::Even => (1.0, 0.0),
        Parity::Odd => (0.0, 1.0),
    };
    let right = numerov_forward(&f, h, n, y0, dy0);
    let sign = match parity {
        Parity::Even => 1.0,
        Parity::Odd => -1.0,
    };
    let mut xs = Vec::with_capacity(2 * n + 1);
    let mut values = Vec::with_capacity(2 * n + 1);
    for i in (1..=n).rev() {
        xs.push(-(i as f64) * h);
        values.push(Complex64::new(sign * right[i], 0.0));
    }
    for (i, &v) in right.iter().enumerate() {
        xs.push(i as f64 * h);
        values.push(Complex64::new(v, 0.0));
    }
    WavefunctionTable::new(xs, values, energy, Some(parity), TableSource::OdeIntegration)
}

/// Numerov integration of ψ'' + (|x|^ν + E) ψ = 0 (h2m = 1) from x = 0
/// with even initial data; right half line only. Returns (xs, values, h).
pub fn integrate_power_barrier(
    nu_exponent: f64,
    energy: f64,
    x_max: f64,
    base_step: f64,
) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    if !(x_max > 0.0 && base_step > 0.0) {
        return Err(Error::Domain(
            "integrate_power_barrier: x_max and base_step must be > 0".into(),
        ));
    }
    let f = move |x: f64| x.abs().powf(nu_exponent) + energy;
    let (h, n) = choose_step(f(x_max), x_max, base_step)?;
    let values = numerov_forward(&f, h, n, 1.0, 0.0);
    let xs = (0..=n).map(|i| i as f64 * h).collect();
    Ok((xs, values, h))
}
