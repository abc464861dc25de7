//! Bessel functions of the first and second kind for arbitrary real order,
//! with three evaluation regimes:
//!
//! - ascending power series for `z <= max(10, |nu|)`, accumulated in
//!   double-double to absorb cancellation;
//! - Steed continued fractions (CF1 + CF2 with Wronskian normalization) in
//!   the transition zone;
//! - the Hankel large-argument expansion for `z >= max(30, 1.5 nu^2)`.
//!
//! Negative orders go through the reflection formulas on top of whichever
//! regime covers `|nu|`.

use super::gamma::recip_gamma;
use super::{cos_pi, sin_pi, EvalResult, EvalResultC, HankelKind, Regime};
use crate::dd::Dd;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

pub(crate) const MAX_ORDER: f64 = 52.0;
const INTEGER_GUARD: f64 = 1e-8;

/// low word of pi beyond the f64 mantissa
const PI_LO: f64 = 1.2246467991473532e-16;

fn series_limit(nu: f64) -> f64 {
    10f64.max(nu.abs())
}

fn asymptotic_limit(nu: f64) -> f64 {
    30f64.max(1.5 * nu * nu)
}

fn check_args(nu: f64, z: f64) -> Result<()> {
    if z <= 0.0 {
        return Err(Error::Domain(format!("bessel: argument z = {z} must be > 0")));
    }
    if !z.is_finite() || !nu.is_finite() {
        return Err(Error::Domain("bessel: non-finite argument".into()));
    }
    if nu.abs() > MAX_ORDER {
        return Err(Error::Domain(format!(
            "bessel: |order| = {} exceeds the supported range {MAX_ORDER}",
            nu.abs()
        )));
    }
    Ok(())
}

/// Ascending series for J_nu(z), any real nu that is not a negative integer.
/// Returns (value, abs_err).
fn j_series(nu: f64, z: f64) -> Result<(f64, f64)> {
    // prefactor (z/2)^nu / Gamma(nu+1); recip_gamma is finite off poles
    let half = z / 2.0;
    let pref = half.powf(nu) * recip_gamma(nu + 1.0);
    if !pref.is_finite() {
        return Err(Error::Overflow(format!(
            "bessel series prefactor overflows for nu={nu}, z={z}"
        )));
    }
    let z2 = Dd::from(z).mul_f64(z).div_f64(4.0).neg(); // -z^2/4
    let mut term = Dd::from(pref);
    let mut sum = Dd::from(0.0);
    let mut max_term = pref.abs();
    let mut converged = false;
    for k in 0..400usize {
        sum = sum.add(term);
        let denom = Dd::from(nu).add_f64(k as f64 + 1.0).mul_f64(k as f64 + 1.0);
        term = term.mul(z2).div(denom);
        let t = term.abs_value();
        max_term = max_term.max(t);
        if t < max_term * 1e-32 + 1e-310 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            terms: 400,
            abs_err: term.abs_value(),
        });
    }
    let value = sum.value();
    // double-double residual cancellation + prefactor rounding
    let abs_err = max_term * 1e-29 + value.abs() * 5e-14 + 1e-300;
    Ok((value, abs_err))
}

/// Hankel asymptotic modulus/phase pieces: returns (P, Q, truncation_err).
fn pq_asymptotic(nu2_4: f64, z: f64) -> (f64, f64, f64) {
    // c_0 = 1, c_{k+1} = c_k * (4 nu^2 - (2k+1)^2) / (8 (k+1) z)
    let mut p = 0.0;
    let mut q = 0.0;
    let mut c = 1.0_f64;
    let mut prev = f64::INFINITY;
    let mut trunc = 0.0;
    for k in 0..60usize {
        let mag = c.abs();
        if mag > prev {
            // divergent tail reached; drop this and stop
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
        if c.abs() < 1e-18 {
            trunc = c.abs();
            break;
        }
    }
    (p, q, trunc)
}

/// chi = z - (nu/2 + 1/4) pi, reduced mod 2pi in double-double.
fn phase_chi(nu: f64, z: f64) -> f64 {
    let factor = 0.5 * nu + 0.25;
    let chi = Dd::from(z)
        .add(Dd::from(PI).mul_f64(factor).neg())
        .add(Dd::from(PI_LO).mul_f64(factor).neg());
    // reduce modulo 2pi
    let two_pi = Dd { hi: 2.0 * PI, lo: 2.0 * PI_LO };
    let n = (chi.value() / (2.0 * PI)).round();
    chi.add(two_pi.mul_f64(n).neg()).value()
}

/// Asymptotic J and Y for any real nu (the P/Q coefficients are even in nu).
fn jy_asymptotic(nu: f64, z: f64) -> (f64, f64, f64) {
    let (p, q, trunc) = pq_asymptotic(4.0 * nu * nu, z);
    let chi = phase_chi(nu, z);
    let amp = (2.0 / (PI * z)).sqrt();
    let j = amp * (chi.cos() * p - chi.sin() * q);
    let y = amp * (chi.sin() * p + chi.cos() * q);
    let err = amp * trunc + (1.0 + z * 1e-16) * 1e-16;
    (j, y, err)
}

/// Steed's method (CF1 + complex CF2), following the classical recipe.
/// Requires nu >= 0 and z in the oscillatory zone; returns (J, J', Y, Y').
fn steed_jy(nu: f64, x: f64) -> Result<(f64, f64, f64, f64)> {
    const MAXIT: usize = 10000;
    const FPMIN: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    debug_assert!(nu >= 0.0 && x > 2.0);

    let nl = ((nu - x + 1.5).floor().max(0.0)) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1 for J'/J at order nu
    let mut isign: i32 = 1;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut c = h;
    let mut d = 0.0;
    let mut ok = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            ok = true;
            break;
        }
    }
    if !ok {
        return Err(Error::NonConvergence {
            terms: MAXIT,
            abs_err: f64::NAN,
        });
    }

    let mut rjl = isign as f64 * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    // CF2 (complex) at order xmu
    let a0 = 0.25 - xmu2;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fct = a0 * xi / (p * p + q * q);
    let mut cr = br + q * fct;
    let mut ci = bi + p * fct;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    let mut a1 = a0;
    ok = false;
    for i in 2..=MAXIT {
        a1 += 2.0 * (i as f64 - 1.0);
        bi += 2.0;
        dr = a1 * dr + br;
        di = a1 * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fct = a1 / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di = -di / den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        let temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            ok = true;
            break;
        }
    }
    if !ok {
        return Err(Error::NonConvergence {
            terms: MAXIT,
            abs_err: f64::NAN,
        });
    }

    let gam = (p - f) / q;
    let mut rjmu = (w / ((p - f) * gam + q)).sqrt();
    if rjl < 0.0 {
        rjmu = -rjmu.abs();
    } else {
        rjmu = rjmu.abs();
    }
    let rymu = rjmu * gam;
    let rymup = rymu * (p + q / gam);
    let mut ry1 = xmu * xi * rymu - rymup;

    // scale the CF1 trial values by the Wronskian-normalized J at xmu
    let fact3 = rjmu / rjl;
    let rj = rjl1 * fact3;
    let rjp = rjp1 * fact3;

    // Y upward recurrence from xmu to nu
    let mut rymu_cur = rymu;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu_cur;
        rymu_cur = ry1;
        ry1 = rytemp;
    }
    let ry = rymu_cur;
    let ryp = nu * xi * rymu_cur - ry1;
    Ok((rj, rjp, ry, ryp))
}

/// J and Y together at non-negative order, routed by regime.
/// Returns (J, Y, abs_err, regime). Y is only meaningful when requested at
/// non-integer order; the series branch computes it by reflection.
fn jy_nonneg(nu: f64, z: f64, need_y: bool) -> Result<(f64, Option<f64>, f64, Regime)> {
    debug_assert!(nu >= 0.0);
    if z <= series_limit(nu) {
        let (j, je) = j_series(nu, z)?;
        let y = if need_y {
            // Y_nu = (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi); non-integer nu only
            let (jm, jme) = j_series(-nu, z)?;
            let s = sin_pi(nu);
            let y = (j * cos_pi(nu) - jm) / s;
            let _ = jme;
            Some(y)
        } else {
            None
        };
        Ok((j, y, je, Regime::Series))
    } else if z >= asymptotic_limit(nu) {
        let (j, y, err) = jy_asymptotic(nu, z);
        Ok((j, if need_y { Some(y) } else { None }, err, Regime::Asymptotic))
    } else {
        let (j, _jp, y, _yp) = steed_jy(nu, z)?;
        Ok((j, if need_y { Some(y) } else { None }, j.abs() * 1e-13 + 1e-15, Regime::ContinuedFraction))
    }
}

/// Bessel function of the first kind, arbitrary real order.
pub fn bessel_j(nu: f64, z: f64) -> Result<EvalResult> {
    check_args(nu, z)?;
    if nu >= 0.0 {
        let (j, _, abs_err, regime) = jy_nonneg(nu, z, false)?;
        return Ok(EvalResult { value: j, abs_err, regime });
    }
    let m = -nu;
    // negative integer order: J_{-n} = (-1)^n J_n
    if (nu - nu.round()).abs() < 1e-12 {
        let n = m.round();
        let (j, _, abs_err, regime) = jy_nonneg(n, z, false)?;
        let sign = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(EvalResult {
            value: sign * j,
            abs_err,
            regime,
        });
    }
    if z <= series_limit(m) {
        // the ascending series handles negative non-integer order directly
        let (j, abs_err) = j_series(nu, z)?;
        return Ok(EvalResult {
            value: j,
            abs_err,
            regime: Regime::Series,
        });
    }
    // reflection J_{-m} = J_m cos(m pi) - Y_m sin(m pi)
    let (j, y, abs_err, _) = jy_nonneg(m, z, true)?;
    let y = y.expect("need_y");
    let value = j * cos_pi(m) - y * sin_pi(m);
    Ok(EvalResult {
        value,
        abs_err: abs_err + value.abs() * 1e-14 + 1e-15,
        regime: Regime::Reflection,
    })
}

/// Derivative of J: (J_{nu-1} - J_{nu+1}) / 2 with error propagation.
pub fn bessel_j_prime(nu: f64, z: f64) -> Result<EvalResult> {
    let lo = bessel_j(nu - 1.0, z)?;
    let hi = bessel_j(nu + 1.0, z)?;
    Ok(EvalResult {
        value: 0.5 * (lo.value - hi.value),
        abs_err: 0.5 * (lo.abs_err + hi.abs_err),
        regime: lo.regime,
    })
}

fn check_noninteger(nu: f64) -> Result<()> {
    if (nu - nu.round()).abs() <= INTEGER_GUARD {
        return Err(Error::NearIntegerOrder {
            nu,
            band: INTEGER_GUARD,
        });
    }
    Ok(())
}

/// Bessel function of the second kind, arbitrary real order.
///
/// In the small-argument regime Y comes from the reflection formula, which
/// divides by sin(nu pi); orders within 1e-8 of an integer are rejected
/// there — nudge the order instead.  The continued-fraction and asymptotic
/// regimes handle integer orders directly.
pub fn bessel_y(nu: f64, z: f64) -> Result<EvalResult> {
    check_args(nu, z)?;
    if nu < 0.0 {
        // Y_{-m} = Y_m cos(m pi) + J_m sin(m pi)
        let m = -nu;
        let ym = bessel_y(m, z)?;
        let jm = bessel_j(m, z)?;
        let value = ym.value * cos_pi(m) + jm.value * sin_pi(m);
        return Ok(EvalResult {
            value,
            abs_err: ym.abs_err + jm.abs_err,
            regime: Regime::Reflection,
        });
    }
    if z <= series_limit(nu) {
        check_noninteger(nu)?;
        let (j, je) = j_series(nu, z)?;
        let (jm, jme) = j_series(-nu, z)?;
        let s = sin_pi(nu);
        let value = (j * cos_pi(nu) - jm) / s;
        Ok(EvalResult {
            value,
            abs_err: (je + jme + (j.abs() + jm.abs()) * 1e-16) / s.abs(),
            regime: Regime::Series,
        })
    } else if z >= asymptotic_limit(nu) {
        let (_, y, err) = jy_asymptotic(nu, z);
        Ok(EvalResult {
            value: y,
            abs_err: err,
            regime: Regime::Asymptotic,
        })
    } else {
        let (_, _, y, _) = steed_jy(nu, z)?;
        Ok(EvalResult {
            value: y,
            abs_err: y.abs() * 1e-13 + 1e-15,
            regime: Regime::ContinuedFraction,
        })
    }
}

/// Derivative of Y via (Y_{nu-1} - Y_{nu+1}) / 2.
pub fn bessel_y_prime(nu: f64, z: f64) -> Result<EvalResult> {
    let lo = bessel_y(nu - 1.0, z)?;
    let hi = bessel_y(nu + 1.0, z)?;
    Ok(EvalResult {
        value: 0.5 * (lo.value - hi.value),
        abs_err: 0.5 * (lo.abs_err + hi.abs_err),
        regime: lo.regime,
    })
}

/// Hankel function H1 = J + iY, H2 = J - iY at non-integer real order.
pub fn hankel(kind: HankelKind, nu: f64, z: f64) -> Result<EvalResultC> {
    let j = bessel_j(nu, z)?;
    let y = bessel_y(nu, z)?;
    let im = match kind {
        HankelKind::H1 => y.value,
        HankelKind::H2 => -y.value,
    };
    Ok(EvalResultC {
        value: Complex64::new(j.value, im),
        abs_err: j.abs_err + y.abs_err,
        regime: j.regime,
    })
}

/// d/dz of the Hankel function.
pub fn hankel_prime(kind: HankelKind, nu: f64, z: f64) -> Result<EvalResultC> {
    let j = bessel_j_prime(nu, z)?;
    let y = bessel_y_prime(nu, z)?;
    let im = match kind {
        HankelKind::H1 => y.value,
        HankelKind::H2 => -y.value,
    };
    Ok(EvalResultC {
        value: Complex64::new(j.value, im),
        abs_err: j.abs_err + y.abs_err,
        regime: j.regime,
    })
}
