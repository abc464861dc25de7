//! Quadrature norms with oscillation-averaged tail estimates.
//!
//! The asymptotic envelope of every solution here is |ψ|² ∝ e^{−|x|/a}
//! (from J²_ν(z) ~ 2/(πz) on average and z = qa e^{|x|/a}), which makes a
//! sharp tail model possible: ∫_X^∞ ψ² dx ≈ ⟨ψ² z⟩ · a / z(X), with the
//! bracket averaged over the last few oscillations of the table.

use super::numerov::integrate_parity_ode;
use crate::model::{bessel_argument, ModelParams, Parity, WavefunctionTable};
use crate::specfun::bessel_j;
use crate::{Error, Result};

/// Composite Simpson on a uniform grid (odd point count preferred; a
/// trailing interval is handled by the 3/8 rule).
fn simpson_uniform(h: f64, ys: &[f64]) -> f64 {
    let n = ys.len();
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return 0.5 * h * (ys[0] + ys[1]);
    }
    let mut total = 0.0;
    let pairs = (n - 1) / 2;
    for k in 0..pairs {
        let i = 2 * k;
        total += h / 3.0 * (ys[i] + 4.0 * ys[i + 1] + ys[i + 2]);
    }
    if (n - 1) % 2 == 1 {
        // one interval left over: trapezoid with endpoint-correction via the
        // last Simpson pair would double count; plain trapezoid is adequate
        // at these step sizes
        total += 0.5 * h * (ys[n - 2] + ys[n - 1]);
    }
    total
}

const TAIL_FRACTION_LIMIT: f64 = 0.10;

/// Cramer's-rule solve of a symmetric 3x3 system; None when singular.
fn solve3(m: &[[f64; 3]; 3], b: &[f64; 3]) -> Option<[f64; 3]> {
    let det = |a: &[[f64; 3]; 3]| {
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    };
    let d = det(m);
    let scale = m.iter().flatten().fold(0.0_f64, |s, v| s.max(v.abs()));
    if d.abs() < 1e-12 * scale.powi(3).max(1e-300) {
        return None;
    }
    let mut out = [0.0; 3];
    for k in 0..3 {
        let mut mk = *m;
        for row in 0..3 {
            mk[row][k] = b[row];
        }
        out[k] = det(&mk) / d;
    }
    Some(out)
}

/// Full-line norm ∫ |ψ|² dx of a uniformly gridded table, with the
/// envelope-model tail added on both ends.
pub fn quadrature_norm(p: &ModelParams, table: &WavefunctionTable) -> Result<f64> {
    let n = table.xs.len();
    if n < 16 {
        return Err(Error::Domain("quadrature_norm: table too short".into()));
    }
    let x_last = *table.xs.last().expect("non-empty");
    if x_last < 5.0 * p.a {
        return Err(Error::Domain(
            "quadrature_norm: table must extend to at least 5a".into(),
        ));
    }
    let h = table.xs[1] - table.xs[0];
    if table
        .xs
        .windows(2)
        .any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h)
    {
        return Err(Error::Domain("quadrature_norm: grid not uniform".into()));
    }
    let density: Vec<f64> = table.values.iter().map(|v| v.norm_sqr()).collect();
    let bulk = simpson_uniform(h, &density);
    // Tail model: asymptotically ψ² z = m (1 + cos-like oscillation) with m
    // x-independent, so fit d(x) = m + A cos 2z + B sin 2z over the last few
    // oscillations; the fitted mean m has only O(1/z²) bias, and
    // ∫_X^∞ ψ² dx ≈ m a / z(X).
    let z_last = bessel_argument(p, x_last);
    let window = 3.0 * 2.0 * std::f64::consts::PI * p.a / z_last;
    let x_from = x_last - window.max(8.0 * h);
    let mut ata = [[0.0_f64; 3]; 3];
    let mut atb = [0.0_f64; 3];
    for (&x, &d) in table.xs.iter().zip(&density).filter(|(&x, _)| x >= x_from) {
        let z = bessel_argument(p, x);
        let row = [1.0, (2.0 * z).cos(), (2.0 * z).sin()];
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
            atb[i] += row[i] * d * z;
        }
    }
    let mean = solve3(&ata, &atb)
        .ok_or_else(|| Error::IllConditioned { det: 0.0 })?[0]
        .max(0.0);
    let tail = 2.0 * mean * p.a / z_last;
    let total = bulk + tail;
    if total == 0.0 {
        return Ok(0.0);
    }
    let fraction = tail / total;
    if fraction > TAIL_FRACTION_LIMIT {
        return Err(Error::TailUnreliable(fraction));
    }
    Ok(total)
}

/// Adaptive Simpson of ∫_s^∞ J²_r(t)/t dt: exact adaptive quadrature out to
/// a large cutoff, then the mean-value tail ∫_T^∞ 1/(π t²) dt = 1/(π T).
pub fn bessel_tail_quadrature(r: f64, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::Domain("bessel_tail_quadrature: s must be > 0".into()));
    }
    fn g(r: f64, t: f64) -> f64 {
        let j = bessel_j(r, t).expect("integrand in range").value;
        j * j / t
    }
    fn adaptive(r: f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = g(r, lm);
        let frm = g(r, rm);
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        // width cap: the J² oscillation has period pi, and a panel spanning
        // several periods can alias to a spuriously small Simpson defect
        if depth == 0 || (b - a <= 0.5 && (left + right - whole).abs() < 15.0 * tol) {
            left + right + (left + right - whole) / 15.0
        } else {
            adaptive(r, a, m, fa, flm, fm, tol / 2.0, depth - 1)
                + adaptive(r, m, b, fm, frm, fb, tol / 2.0, depth - 1)
        }
    }
    const T_END: f64 = 4000.0;
    let mut total = 0.0;
    let mut a = s;
    // octave panels keep the adaptive recursion shallow on the oscillatory part
    while a < T_END {
        let b = (2.0 * a).min(T_END);
        let m = 0.5 * (a + b);
        total += adaptive(r, a, b, g(r, a), g(r, m), g(r, b), 1e-12, 44);
        a = b;
    }
    // J_r^2 averages to 1/(pi t) for t >> r
    total += 1.0 / (std::f64::consts::PI * T_END);
    Ok(total)
}

const NORM_X_MAX_FACTOR: f64 = 7.0;

/// Full-line norm of a BIC state by direct ODE integration and quadrature,
/// rescaled to the J_{κa}(z) amplitude convention by anchoring at x = 0.1a.
pub fn bic_norm_by_quadrature(p: &ModelParams, energy: f64, parity: Parity) -> Result<f64> {
    let u = match crate::model::order_of_energy(p, energy) {
        crate::model::OrderValue::RealOrder { magnitude } => magnitude,
        crate::model::OrderValue::ImaginaryOrder { .. } => {
            return Err(Error::Domain("bic_norm_by_quadrature: E >= v0".into()))
        }
    };
    let table = integrate_parity_ode(p, energy, parity, NORM_X_MAX_FACTOR * p.a, 1e-3 * p.a)?;
    // anchor at the grid point nearest x = 0.1a
    let target = 0.1 * p.a;
    let idx = table
        .xs
        .iter()
        .enumerate()
        .min_by(|a, b| {
            (a.1 - target)
                .abs()
                .partial_cmp(&(b.1 - target).abs())
                .expect("finite grid")
        })
        .map(|(i, _)| i)
        .expect("non-empty table");
    let anchor = table.xs[idx];
    let psi_anchor = table.values[idx].re;
    if psi_anchor.abs() < 1e-12 {
        return Err(Error::IllConditioned { det: psi_anchor });
    }
    let scale = bessel_j(u, bessel_argument(p, anchor))?.value / psi_anchor;
    Ok(scale * scale * quadrature_norm(p, &table)?)
}
