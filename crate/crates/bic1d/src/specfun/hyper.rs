//! Generalized hypergeometric 2F3 by direct ascending series with
//! compensated accumulation.

use super::{EvalResult, Regime};
use crate::dd::Dd;
use crate::{Error, Result};

const TERM_CAP: usize = 500;
const MAX_W: f64 = 1e4;

/// 2F3({a1, a2}; {b1, b2, b3}; w).
///
/// The series is terminated once the term magnitude stays below
/// 1e-16 x the running-max partial sum for three consecutive terms;
/// `abs_err` carries the cancellation estimate.
pub fn hyp2f3(a1: f64, a2: f64, b1: f64, b2: f64, b3: f64, w: f64) -> Result<EvalResult> {
    for &b in &[b1, b2, b3] {
        if b <= 0.0 && b == b.round() {
            return Err(Error::GammaPole(b));
        }
    }
    if w.abs() > MAX_W {
        return Err(Error::Domain(format!("hyp2f3: |w| = {} exceeds {MAX_W}", w.abs())));
    }
    if w == 0.0 {
        return Ok(EvalResult {
            value: 1.0,
            abs_err: 0.0,
            regime: Regime::Series,
        });
    }
    let mut term = Dd::from(1.0);
    let mut sum = Dd::from(0.0);
    let mut run_max = 0.0_f64;
    let mut small_streak = 0;
    for k in 0..TERM_CAP {
        sum = sum.add(term);
        run_max = run_max.max(sum.abs_value());
        let kf = k as f64;
        let num = Dd::from(a1 + kf).mul_f64(a2 + kf).mul_f64(w);
        let den = Dd::from(b1 + kf)
            .mul_f64(b2 + kf)
            .mul_f64(b3 + kf)
            .mul_f64(kf + 1.0);
        term = term.mul(num).div(den);
        if term.abs_value() < 1e-16 * run_max {
            small_streak += 1;
            if small_streak >= 3 {
                let value = sum.value();
                return Ok(EvalResult {
                    value,
                    abs_err: run_max * f64::EPSILON + term.abs_value(),
                    regime: Regime::Series,
                });
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::NonConvergence {
        terms: TERM_CAP,
        abs_err: term.abs_value() + run_max * f64::EPSILON,
    })
}
