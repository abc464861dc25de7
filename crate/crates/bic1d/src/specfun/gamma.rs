//! Gamma function, real and complex, via a Lanczos approximation with
//! reflection for the left half plane.

use super::{sin_pi, EvalResult, EvalResultC, Regime};
use crate::{Error, Result};
use num_complex::Complex64;

const SQRT_2PI: f64 = 2.5066282746310002;

/// Lanczos g = 607/128, 15 terms (Godfrey's coefficients).
const G: f64 = 4.7421875;
const LANCZOS: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    3.3994649984811888699e-5,
    4.6523628927048575665e-5,
    -9.8374475304879564677e-5,
    1.5808870322491248884e-4,
    -2.1026444172410488319e-4,
    2.1743961811521264320e-4,
    -1.6431810653676389022e-4,
    8.4418223983852743293e-5,
    -2.6190838401581408670e-5,
    3.6899182659531622704e-6,
];

/// Largest real argument before Gamma overflows f64.
const OVERFLOW_LIMIT: f64 = 171.62;

fn lanczos_sum(x: f64) -> f64 {
    // x = w - 1 convention
    let mut a = LANCZOS[0];
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + k as f64);
    }
    a
}

fn lanczos_sum_c(x: Complex64) -> Complex64 {
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + k as f64);
    }
    a
}

fn gamma_positive(w: f64) -> f64 {
    // requires w >= 0.5
    let x = w - 1.0;
    let t = x + G + 0.5;
    SQRT_2PI * t.powf(x + 0.5) * (-t).exp() * lanczos_sum(x)
}

/// Gamma of a real argument.
///
/// Relative accuracy is ~1e-14 away from poles; callers at a non-positive
/// integer get a pole error.
pub fn gamma(w: f64) -> Result<EvalResult> {
    if !w.is_finite() {
        return Err(Error::Domain(format!("gamma: non-finite argument {w}")));
    }
    if w <= 0.0 && w == w.round() {
        return Err(Error::GammaPole(w));
    }
    if w > OVERFLOW_LIMIT {
        return Err(Error::Overflow(format!("gamma({w}) exceeds f64 range")));
    }
    if w >= 0.5 {
        let value = gamma_positive(w);
        Ok(EvalResult {
            value,
            abs_err: value.abs() * 1e-14,
            regime: Regime::Series,
        })
    } else {
        // reflection: Gamma(w) = pi / (sin(pi w) Gamma(1 - w))
        let s = sin_pi(w);
        let g1 = gamma_positive(1.0 - w);
        let value = std::f64::consts::PI / (s * g1);
        // error amplified near poles by 1/|sin|
        let abs_err = value.abs() * (1e-14 + 1e-16 / s.abs().max(1e-300));
        Ok(EvalResult {
            value,
            abs_err,
            regime: Regime::Reflection,
        })
    }
}

/// Gamma of a complex argument.
pub fn gamma_complex(w: Complex64) -> Result<EvalResultC> {
    if w.im == 0.0 {
        let r = gamma(w.re)?;
        return Ok(EvalResultC {
            value: Complex64::new(r.value, 0.0),
            abs_err: r.abs_err,
            regime: r.regime,
        });
    }
    if w.re >= 0.5 {
        let x = w - 1.0;
        let t = x + (G + 0.5);
        let value = SQRT_2PI * t.powc(x + 0.5) * (-t).exp() * lanczos_sum_c(x);
        Ok(EvalResultC {
            value,
            abs_err: value.norm() * 1e-13,
            regime: Regime::Series,
        })
    } else {
        // sin(pi w) with the real part reduced, so large |Re w| stays exact
        let rr = w.re - w.re.round();
        let arg = Complex64::new(rr * std::f64::consts::PI, w.im * std::f64::consts::PI);
        let mut s = arg.sin();
        if (w.re.round() as i64) % 2 != 0 {
            s = -s;
        }
        let g1 = gamma_complex(Complex64::new(1.0, 0.0) - w)?;
        let value = std::f64::consts::PI / (s * g1.value);
        Ok(EvalResultC {
            value,
            abs_err: value.norm() * 1e-12,
            regime: Regime::Reflection,
        })
    }
}

/// `1/Gamma(w)`, finite everywhere on the real line (zero at the poles).
pub(crate) fn recip_gamma(w: f64) -> f64 {
    if w <= 0.0 && w == w.round() {
        return 0.0;
    }
    match gamma(w) {
        Ok(r) => 1.0 / r.value,
        Err(_) => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn factorials() {
        assert!(rel(gamma(5.0).unwrap().value, 24.0) < 1e-14);
        assert!(rel(gamma(1.0).unwrap().value, 1.0) < 1e-14);
        assert!(rel(gamma(10.0).unwrap().value, 362880.0) < 1e-14);
    }

    #[test]
    fn known_values() {
        // frozen with a 40-digit arbitrary-precision oracle
        assert!(rel(gamma(0.5).unwrap().value, 1.772453850905516).abs() < 1e-13);
        assert!(rel(gamma(-0.5).unwrap().value, -3.544907701811032).abs() < 1e-13);
        assert!(rel(gamma(-5.5).unwrap().value, 0.010912654781909863).abs() < 1e-13);
        assert!(rel(gamma(-7.7).unwrap().value, 1.8207416684152618e-4).abs() < 1e-13);
        assert!(rel(gamma(10.3).unwrap().value, 716430.6890623764).abs() < 1e-13);
    }

    #[test]
    fn recursion_identity_grid() {
        // Gamma(w+1) = w Gamma(w) across [-30, 30] off poles
        let mut w = -29.75;
        while w < 30.0 {
            let lhs = gamma(w + 1.0).unwrap().value;
            let rhs = w * gamma(w).unwrap().value;
            assert!(rel(lhs, rhs) < 1e-12, "w={w}: {lhs} vs {rhs}");
            w += 0.5;
        }
    }

    #[test]
    fn poles_error() {
        assert!(matches!(gamma(0.0), Err(Error::GammaPole(_))));
        assert!(matches!(gamma(-3.0), Err(Error::GammaPole(_))));
        assert!(matches!(gamma(200.0), Err(Error::Overflow(_))));
    }

    #[test]
    fn complex_values() {
        let g = gamma_complex(Complex64::new(2.5, 1.0)).unwrap();
        let want = Complex64::new(0.7747621045510837, 0.7076312043795926);
        assert!((g.value - want).norm() < 1e-12);

        let g = gamma_complex(Complex64::new(1e-3, 2.0)).unwrap();
        let want = Complex64::new(0.010047876338383930, -0.075988123731765978);
        assert!((g.value - want).norm() < 1e-12);

        // reflection branch, far up the critical line
        let g = gamma_complex(Complex64::new(0.5, 14.134725)).unwrap();
        let want = Complex64::new(-1.4455538437606964e-10, -5.5227887687740656e-10);
        assert!((g.value - want).norm() / want.norm() < 1e-10);
        assert_eq!(g.regime, Regime::Series);
    }

    #[test]
    fn complex_conjugation() {
        let a = gamma_complex(Complex64::new(-2.3, 1.7)).unwrap().value;
        let b = gamma_complex(Complex64::new(-2.3, -1.7)).unwrap().value;
        assert!((a - b.conj()).norm() < a.norm() * 1e-11);
    }
}
