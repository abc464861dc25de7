//! Reflection and transmission probabilities by matching Hankel-function
//! travelling waves across x = 0.
//!
//! On each side of the origin the general solution is a combination of
//! H1_nu(z) and H2_nu(z) with z = qa e^{|x|/a}; the order nu is kappa*a
//! below the barrier top and i|kappa|a above it. Each basis function is
//! classified as incoming or outgoing by the sign of its probability
//! current, computed from the function itself rather than a hard-coded
//! convention; unit flux is sent in from x = -inf and no wave comes in
//! from x = +inf. Continuity of psi and psi' at x = 0 then fixes the
//! reflected and transmitted amplitudes.

use crate::model::{order_of_energy, ModelParams, OrderValue};
use crate::specfun::{
    hankel, hankel_complex_order, hankel_complex_order_prime, hankel_prime, HankelKind,
};
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// One energy sample of the scattering scan.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ScatterPoint {
    pub energy: f64,
    pub r_prob: f64,
    pub t_prob: f64,
}

/// Nudge distance applied to near-integer orders; the physics stays finite
/// there but the Y reflection formula degenerates.
const ORDER_NUDGE: f64 = 1e-6;

/// A basis function evaluated at the matching point: value, z-derivative,
/// and the probability current it carries per unit coefficient on the
/// right half line (the left half line flips the sign).
#[derive(Clone, Copy)]
struct BasisWave {
    value: Complex64,
    deriv: Complex64,
    current: f64,
}

fn basis_at_matching(p: &ModelParams, kind: HankelKind, order: OrderValue) -> Result<BasisWave> {
    let s = p.qa();
    let (value, deriv) = match order {
        OrderValue::RealOrder { magnitude } => (
            hankel(kind, magnitude, s)?.value,
            hankel_prime(kind, magnitude, s)?.value,
        ),
        OrderValue::ImaginaryOrder { magnitude } => {
            let nu = Complex64::new(0.0, magnitude);
            (
                hankel_complex_order(kind, nu, s)?.value,
                hankel_complex_order_prime(kind, nu, s)?.value,
            )
        }
    };
    // j(x) = Im(psi* dpsi/dx); on the right half line dz/dx = z/a, and the
    // current of a solution of the real ODE is x-independent, so the
    // matching point itself is a valid reference point.
    let current = (value.conj() * deriv).im * s / p.a;
    Ok(BasisWave {
        value,
        deriv,
        current,
    })
}

fn nudged_order(p: &ModelParams, energy: f64) -> Vec<OrderValue> {
    match order_of_energy(p, energy) {
        OrderValue::RealOrder { magnitude } => {
            if (magnitude - magnitude.round()).abs() < ORDER_NUDGE {
                // average the two sides of the integer order
                let n = magnitude.round();
                let mut out = Vec::new();
                if n - ORDER_NUDGE > 0.0 {
                    out.push(OrderValue::RealOrder {
                        magnitude: n - ORDER_NUDGE,
                    });
                }
                out.push(OrderValue::RealOrder {
                    magnitude: n + ORDER_NUDGE,
                });
                out
            } else {
                vec![OrderValue::RealOrder { magnitude }]
            }
        }
        other => vec![other],
    }
}

fn rt_at_order(p: &ModelParams, order: OrderValue) -> Result<(f64, f64)> {
    let h1 = basis_at_matching(p, HankelKind::H1, order)?;
    let h2 = basis_at_matching(p, HankelKind::H2, order)?;

    // On the incidence side dz/dx has the opposite sign to the far side, so
    // a basis wave's current flips sign there. Incoming on the incidence
    // side means current toward the barrier.
    let (incoming, out_near, out_far) = {
        // near side = side the flux comes from; currents there are -current
        // for FromLeft (z decreases toward the barrier as x grows) and the
        // matching below is mirror-symmetric for FromRight.
        if h1.current.abs() < 1e-300 || h2.current.abs() < 1e-300 {
            return Err(Error::IllConditioned { det: 0.0 });
        }
        // The basis with positive near-side current (toward the barrier) is
        // the incident wave; the other one is outgoing on the near side and,
        // by the sign flip of dz/dx, also outgoing on the far side.
        if -h1.current > 0.0 {
            (h1, h2, h2)
        } else {
            (h2, h1, h1)
        }
    };
    // psi_near = incoming + r * out_near ; psi_far = t * out_far
    // continuity of psi and of psi' (d/dx flips sign of dz/dx on the near side):
    //   incoming.value + r out_near.value = t out_far.value
    //   -(incoming.deriv + r out_near.deriv) = t out_far.deriv
    let a11 = out_near.value;
    let a12 = -out_far.value;
    let a21 = out_near.deriv;
    let a22 = out_far.deriv;
    let b1 = -incoming.value;
    let b2 = -incoming.deriv;
    let det = a11 * a22 - a12 * a21;
    let scale = (a11.norm() * a22.norm()).max(a12.norm() * a21.norm());
    if det.norm() < 1e-13 * scale.max(1e-300) {
        return Err(Error::IllConditioned { det: det.norm() });
    }
    let r_amp = (b1 * a22 - a12 * b2) / det;
    let t_amp = (a11 * b2 - b1 * a21) / det;

    // flux ratios; the near-side incoming current is -incoming.current etc.
    let j_in = incoming.current.abs();
    let r_prob = r_amp.norm_sqr() * out_near.current.abs() / j_in;
    let t_prob = t_amp.norm_sqr() * out_far.current.abs() / j_in;
    Ok((r_prob, t_prob))
}

/// Reflection and transmission probabilities at one energy. The potential
/// is even, so incidence from the left and from the right give the same
/// probabilities; only the left-incidence convention is exposed.
pub fn rt_coefficients(p: &ModelParams, energy: f64) -> Result<ScatterPoint> {
    if !(energy > 0.0) {
        return Err(Error::Domain(format!("rt: energy {energy} must be > 0")));
    }
    let orders = nudged_order(p, energy);
    let mut r_sum = 0.0;
    let mut t_sum = 0.0;
    for order in &orders {
        let (r, t) = rt_at_order(p, *order)?;
        r_sum += r;
        t_sum += t;
    }
    let n = orders.len() as f64;
    Ok(ScatterPoint {
        energy,
        r_prob: r_sum / n,
        t_prob: t_sum / n,
    })
}

/// Uniform energy scan; failed points are skipped and reported.
pub fn rt_scan(
    p: &ModelParams,
    e_min: f64,
    e_max: f64,
    steps: usize,
) -> Result<(Vec<ScatterPoint>, Vec<(f64, Error)>)> {
    if !(e_min > 0.0 && e_max > e_min) || steps < 2 {
        return Err(Error::Domain(format!(
            "rt_scan: bad range [{e_min}, {e_max}] / steps {steps}"
        )));
    }
    let h = (e_max - e_min) / (steps - 1) as f64;
    let energies: Vec<f64> = (0..steps).map(|i| e_min + i as f64 * h).collect();
    let results: Vec<(f64, Result<ScatterPoint>)> = energies
        .par_iter()
        .map(|&e| (e, rt_coefficients(p, e)))
        .collect();
    let mut points = Vec::new();
    let mut failures = Vec::new();
    for (e, r) in results {
        match r {
            Ok(pt) => points.push(pt),
            Err(err) => failures.push((e, err)),
        }
    }
    Ok((points, failures))
}

/// Sweep the length scale `a` at fixed energy.
pub fn rt_a_sweep(
    v0: f64,
    h2m: f64,
    energy: f64,
    a_values: &[f64],
) -> Result<Vec<(f64, ScatterPoint)>> {
    a_values
        .iter()
        .map(|&a| {
            let p = crate::model::make_params(v0, a, h2m)?;
            Ok((a, rt_coefficients(&p, energy)?))
        })
        .collect()
}

/// Energies where kappa*a is an integer (the curious collapse energies of
/// the parity construction), inside (0, v0).
pub fn integer_kappa_energies(p: &ModelParams) -> Vec<f64> {
    let qa = p.qa();
    (1..)
        .map(|n| n as f64)
        .take_while(|n| *n < qa)
        .map(|n| p.v0 - n * n * p.h2m / (p.a * p.a))
        .filter(|e| *e > 0.0)
        .collect()
}
