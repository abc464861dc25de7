//! Bessel J of complex order on the positive real axis, and the Hankel
//! combinations built from it. Needed for scattering above the barrier top,
//! where the order kappa*a turns imaginary.

use super::gamma::gamma_complex;
use super::{bessel_j, EvalResultC, HankelKind, Regime};
use crate::dd::Cdd;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const MAX_IM: f64 = 20.0;
const MAX_Z: f64 = 1e4;
const SERIES_LIMIT: f64 = 45.0;
const TERM_CAP: usize = 500;

fn check(nu: Complex64, z: f64) -> Result<()> {
    if z <= 0.0 || z > MAX_Z {
        return Err(Error::Domain(format!(
            "complex-order bessel: z = {z} outside (0, {MAX_Z}]"
        )));
    }
    if nu.im.abs() > MAX_IM {
        return Err(Error::Domain(format!(
            "complex-order bessel: |Im nu| = {} exceeds {MAX_IM}",
            nu.im.abs()
        )));
    }
    if nu.re.abs() > super::bessel::MAX_ORDER {
        return Err(Error::Domain(format!(
            "complex-order bessel: |Re nu| = {} too large",
            nu.re.abs()
        )));
    }
    Ok(())
}

fn j_series_complex(nu: Complex64, z: f64) -> Result<EvalResultC> {
    // prefactor (z/2)^nu / Gamma(nu + 1)
    let half = Complex64::new(z / 2.0, 0.0);
    let g = gamma_complex(nu + 1.0)?;
    let pref = half.powc(nu) / g.value;
    if !pref.is_finite() {
        return Err(Error::Overflow(format!(
            "complex-order series prefactor overflows for nu={nu}, z={z}"
        )));
    }
    let z2 = -z * z / 4.0;
    let mut term = Cdd::from_f64(pref.re, pref.im);
    let mut sum = Cdd::default();
    let mut max_term = pref.norm();
    for k in 0..TERM_CAP {
        sum = sum.add(term);
        term = term
            .mul_f64(z2)
            .div_f64(k as f64 + 1.0)
            .div_c64(nu.re + k as f64 + 1.0, nu.im);
        let t = term.norm();
        max_term = max_term.max(t);
        if t < max_term * 1e-32 + 1e-310 {
            let value = Complex64::new(sum.re.value(), sum.im.value());
            return Ok(EvalResultC {
                value,
                abs_err: max_term * 1e-29 + value.norm() * 1e-13 + 1e-300,
                regime: Regime::Series,
            });
        }
    }
    Err(Error::NonConvergence {
        terms: TERM_CAP,
        abs_err: term.norm() + max_term * 1e-29,
    })
}

fn j_asymptotic_complex(nu: Complex64, z: f64) -> Result<EvalResultC> {
    // Hankel expansion with complex order; P/Q coefficients are even in nu
    let nu2_4 = 4.0 * nu * nu;
    let mut p = Complex64::new(0.0, 0.0);
    let mut q = Complex64::new(0.0, 0.0);
    let mut c = Complex64::new(1.0, 0.0);
    let mut prev = f64::INFINITY;
    let mut trunc = 0.0;
    for k in 0..60usize {
        let mag = c.norm();
        if mag > prev {
            trunc = prev;
            break;
        }
        prev = mag;
        trunc = mag;
        match k % 4 {
            0 => p += c,
            1 => q += c,
            2 => p -= c,
            _ => q -= c,
        }
        let km = 2.0 * k as f64 + 1.0;
        c *= (nu2_4 - km * km) / (8.0 * (k as f64 + 1.0) * z);
        if c.norm() < 1e-18 {
            trunc = c.norm();
            break;
        }
    }
    let chi = Complex64::new(z, 0.0) - (nu / 2.0 + 0.25) * PI;
    let amp = (2.0 / (PI * z)).sqrt();
    let value = amp * (chi.cos() * p - chi.sin() * q);
    let scale = chi.cos().norm().max(chi.sin().norm());
    Ok(EvalResultC {
        value,
        abs_err: amp * trunc * scale + value.norm() * 1e-13,
        regime: Regime::Asymptotic,
    })
}

/// Bessel J of complex order `nu` at positive real `z`.
pub fn bessel_j_complex_order(nu: Complex64, z: f64) -> Result<EvalResultC> {
    check(nu, z)?;
    if nu.im == 0.0 {
        let r = bessel_j(nu.re, z)?;
        return Ok(EvalResultC {
            value: Complex64::new(r.value, 0.0),
            abs_err: r.abs_err,
            regime: r.regime,
        });
    }
    let nu_norm = nu.norm();
    if z <= SERIES_LIMIT {
        return j_series_complex(nu, z);
    }
    if z >= SERIES_LIMIT.max(1.5 * nu_norm * nu_norm) {
        return j_asymptotic_complex(nu, z);
    }
    Err(Error::NonConvergence {
        terms: 0,
        abs_err: f64::INFINITY,
    })
}

/// Hankel function of complex (non-integer) order via the J_{+/-nu}
/// combination: H1 = (J_{-nu} - e^{-i pi nu} J_nu) / (i sin(pi nu)).
pub fn hankel_complex_order(kind: HankelKind, nu: Complex64, z: f64) -> Result<EvalResultC> {
    let jp = bessel_j_complex_order(nu, z)?;
    let jm = bessel_j_complex_order(-nu, z)?;
    hankel_from_pair(kind, nu, jp, jm)
}

/// d/dz of the complex-order Hankel function, via the J recurrence.
pub fn hankel_complex_order_prime(kind: HankelKind, nu: Complex64, z: f64) -> Result<EvalResultC> {
    let jp = j_prime_complex(nu, z)?;
    let jm = j_prime_complex(-nu, z)?;
    hankel_from_pair(kind, nu, jp, jm)
}

fn j_prime_complex(nu: Complex64, z: f64) -> Result<EvalResultC> {
    let lo = bessel_j_complex_order(nu - 1.0, z)?;
    let hi = bessel_j_complex_order(nu + 1.0, z)?;
    Ok(EvalResultC {
        value: 0.5 * (lo.value - hi.value),
        abs_err: 0.5 * (lo.abs_err + hi.abs_err),
        regime: lo.regime,
    })
}

fn hankel_from_pair(
    kind: HankelKind,
    nu: Complex64,
    jp: EvalResultC,
    jm: EvalResultC,
) -> Result<EvalResultC> {
    let i = Complex64::new(0.0, 1.0);
    let s = (PI * nu).sin();
    if s.norm() < 1e-12 {
        return Err(Error::NearIntegerOrder {
            nu: nu.re,
            band: 1e-12,
        });
    }
    let value = match kind {
        HankelKind::H1 => (jm.value - (-i * PI * nu).exp() * jp.value) / (i * s),
        HankelKind::H2 => ((i * PI * nu).exp() * jp.value - jm.value) / (i * s),
    };
    let amp = ((PI * nu.im).exp()).max((-PI * nu.im).exp());
    Ok(EvalResultC {
        value,
        abs_err: (jp.abs_err * amp + jm.abs_err) / s.norm(),
        regime: jp.regime,
    })
}
