//! Acceptance gate: one test per criterion, each printing a single
//! `criterion N ... PASS/FAIL` line (visible with `--nocapture`).

use std::time::Instant;

use num_complex::Complex64;

use bic1d::model::{
    bessel_argument, bic_wavefunction, make_params, ModelParams, Parity, TableSource,
    WavefunctionTable,
};
use bic1d::oracle::{
    bessel_tail_quadrature, bic_scan_by_projection, integrate_parity_ode, power_barrier_scan,
    probability_current, project_onto_basis,
};
use bic1d::scattering::{rt_coefficients, rt_scan};
use bic1d::specfun::{bessel_j, bessel_j_prime};
use bic1d::spectrum::{find_bic_spectrum, norm_sq_closed_form, normalize, NormParams};

/// Reference eigenvalues for v0 = 50, a = 1, h2m = 1.
const REF_ENERGIES: [f64; 5] = [18.6108, 37.2630, 44.8253, 48.9214, 49.9988];
const REF_PARITIES: [Parity; 5] = [
    Parity::Even,
    Parity::Odd,
    Parity::Even,
    Parity::Odd,
    Parity::Even,
];
/// kappa*a roots of the quantization conditions, frozen from a 40-digit solve.
const U_ROOTS: [f64; 5] = [
    5.602602117318085,
    3.5688932680295019,
    2.2747866567104722,
    1.0385743997983332,
    0.035116509389646967,
];

fn p50() -> ModelParams {
    make_params(50.0, 1.0, 1.0).unwrap()
}

fn verdict(n: usize, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {n} ({name}): {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

#[test]
fn criterion_1_eigenvalue_regression() {
    let t0 = Instant::now();
    let states = find_bic_spectrum(&p50(), 1e-3).unwrap();
    let elapsed = t0.elapsed();

    let mut max_de = 0.0_f64;
    let mut ok = states.len() == 5;
    if ok {
        for (i, st) in states.iter().enumerate() {
            max_de = max_de.max((st.energy - REF_ENERGIES[i]).abs());
            ok &= st.parity == REF_PARITIES[i];
        }
        ok &= max_de < 5e-3;
    }
    ok &= elapsed.as_secs_f64() <= 10.0;
    verdict(
        1,
        "eigenvalue regression",
        ok,
        &format!(
            "{} states, max |dE| = {max_de:.2e}, {:.2}s (limit 10s)",
            states.len(),
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_2_projection_concordance() {
    let p = p50();
    let t0 = Instant::now();
    // coarse grid over the well plus a denser run-up to the shallow top state
    let mut grid: Vec<f64> = (0..150)
        .map(|i| 0.5 + i as f64 * (49.5 - 0.5) / 149.0)
        .collect();
    grid.extend((1..=60).map(|i| 49.5 + i as f64 * (49.99975 - 49.5) / 60.0));
    let found = bic_scan_by_projection(&p, &grid).unwrap();
    let elapsed = t0.elapsed();

    let exact: Vec<f64> = U_ROOTS.iter().map(|u| 50.0 - u * u).collect();
    let mut max_de = 0.0_f64;
    let mut max_res = 0.0_f64;
    let mut ok = true;
    for (i, &e) in exact.iter().enumerate() {
        let hit = found
            .iter()
            .filter(|(_, par, _)| *par == REF_PARITIES[i])
            .min_by(|a, b| (a.0 - e).abs().total_cmp(&(b.0 - e).abs()));
        match hit {
            Some(&(ef, _, res)) => {
                max_de = max_de.max((ef - e).abs());
                max_res = max_res.max(res);
            }
            None => ok = false,
        }
    }
    ok &= max_de < 1e-4 && max_res <= 1e-4;

    // the 4 midpoints must reject for both parities
    let mut min_mid = f64::INFINITY;
    for w in exact.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        for parity in [Parity::Even, Parity::Odd] {
            let table = integrate_parity_ode(&p, mid, parity, 3.0, 1e-3).unwrap();
            let rep = project_onto_basis(&p, &table, 1.5, 2.5).unwrap();
            min_mid = min_mid.min(rep.residual);
        }
    }
    ok &= min_mid >= 1e-2;
    ok &= elapsed.as_secs_f64() <= 60.0;
    verdict(
        2,
        "projection concordance",
        ok,
        &format!(
            "max |dE| = {max_de:.2e}, max eigen-residual = {max_res:.2e}, \
             min midpoint residual = {min_mid:.2e}, {:.2}s (limit 60s)",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_3_norm_consistency() {
    let p = p50();
    let s = p.qa();
    let mut max_rel = 0.0_f64;
    for st in find_bic_spectrum(&p, 1e-3).unwrap() {
        let st = normalize(&p, &st).unwrap();
        let closed = st.norm_sq.unwrap();
        // the substitution t = qa e^{x/a} maps the half-line integral of
        // psi^2 onto int_s^inf J^2/t dt, evaluated here by adaptive Simpson
        let quad = 2.0 * p.a * bessel_tail_quadrature(st.kappa_a, s).unwrap();
        max_rel = max_rel.max(((closed - quad) / closed).abs());
    }
    let ok = max_rel < 1e-6;
    verdict(
        3,
        "norm consistency",
        ok,
        &format!("5 states, max relative difference = {max_rel:.2e}"),
    );
}

#[test]
fn criterion_4_scattering_conservation_no_zeros() {
    let p = p50();
    let (points, failures) = rt_scan(&p, 0.5, 49.5, 200).unwrap();
    let mut ok = failures.is_empty() && points.len() == 200;
    let mut max_violation = 0.0_f64;
    let mut min_r = f64::INFINITY;
    let mut min_t = f64::INFINITY;
    for pt in &points {
        max_violation = max_violation.max((pt.r_prob + pt.t_prob - 1.0).abs());
        min_r = min_r.min(pt.r_prob);
        min_t = min_t.min(pt.t_prob);
    }
    ok &= max_violation < 1e-8 && min_r > 1e-6 && min_t > 1e-6;

    // integer-kappa*a energies: finite, and smooth against neighbours
    let mut max_jump = 0.0_f64;
    for n in 1..=7 {
        let e = 50.0 - (n * n) as f64;
        let mid = rt_coefficients(&p, e).unwrap();
        let lo = rt_coefficients(&p, e - 0.01).unwrap();
        let hi = rt_coefficients(&p, e + 0.01).unwrap();
        ok &= mid.t_prob.is_finite() && mid.r_prob.is_finite();
        max_jump = max_jump.max((mid.t_prob - 0.5 * (lo.t_prob + hi.t_prob)).abs());
    }
    ok &= max_jump < 1e-3;
    verdict(
        4,
        "scattering conservation and no-zeros",
        ok,
        &format!(
            "max |R+T-1| = {max_violation:.2e}, min R = {min_r:.2e}, min T = {min_t:.2e}, \
             max integer-kappa interpolation gap = {max_jump:.2e}"
        ),
    );
}

#[test]
fn criterion_5_special_function_identities() {
    // Wronskian J_nu J'_{-nu} - J'_nu J_{-nu} = -2 sin(nu pi)/(pi z)
    let mut max_w = 0.0_f64;
    for i in 0..20 {
        let nu = 0.15 + 0.24 * i as f64;
        for j in 0..20 {
            let z = 0.5 + 3.0 * j as f64;
            let w = bessel_j(nu, z).unwrap().value * bessel_j_prime(-nu, z).unwrap().value
                - bessel_j_prime(nu, z).unwrap().value * bessel_j(-nu, z).unwrap().value;
            let exact = -2.0 * (nu * std::f64::consts::PI).sin() / (std::f64::consts::PI * z);
            max_w = max_w.max((w - exact).abs());
        }
    }
    let mut ok = max_w < 1e-9;

    // half-integer closed forms
    let mut max_h = 0.0_f64;
    for &z in &[0.4, 1.3, 6.0, 20.0, 75.0] {
        let pre = (2.0 / (std::f64::consts::PI * z)).sqrt();
        max_h = max_h.max((bessel_j(0.5, z).unwrap().value - pre * z.sin()).abs());
        max_h = max_h.max((bessel_j(-0.5, z).unwrap().value - pre * z.cos()).abs());
    }
    ok &= max_h < 1e-12;

    // recurrence closure across all regimes
    let mut max_r = 0.0_f64;
    for &nu in &[0.4, 1.5, 3.3, 6.1] {
        for &z in &[0.8, 5.0, 9.9, 10.1, 15.0, 29.9, 30.1, 50.0, 120.0] {
            let lo = bessel_j(nu - 1.0, z).unwrap().value;
            let hi = bessel_j(nu + 1.0, z).unwrap().value;
            let mid = bessel_j(nu, z).unwrap().value;
            max_r = max_r.max((lo + hi - 2.0 * nu / z * mid).abs());
        }
    }
    ok &= max_r < 1e-9;
    verdict(
        5,
        "special-function identities",
        ok,
        &format!(
            "Wronskian max err = {max_w:.2e}, half-integer max err = {max_h:.2e}, \
             recurrence max err = {max_r:.2e}"
        ),
    );
}

#[test]
fn criterion_6_closed_form_ode_equivalence() {
    let p = p50();
    let mut max_rel = 0.0_f64;
    for (i, &u) in U_ROOTS.iter().enumerate() {
        let e = 50.0 - u * u;
        let parity = REF_PARITIES[i];
        let table = integrate_parity_ode(&p, e, parity, 3.0, 2e-4).unwrap();
        // anchor scale at the grid point nearest x = 0.1a
        let anchor = table
            .xs
            .iter()
            .position(|&x| (x - 0.1).abs() <= table.xs[1] - table.xs[0])
            .unwrap();
        let scale = bic_wavefunction(&p, e, parity, 1.0, table.xs[anchor]).unwrap()
            / table.values[anchor].re;
        let sup = table
            .values
            .iter()
            .map(|v| (scale * v.re).abs())
            .fold(0.0_f64, f64::max);
        for (x, v) in table.xs.iter().zip(&table.values) {
            let closed = bic_wavefunction(&p, e, parity, 1.0, *x).unwrap();
            max_rel = max_rel.max((scale * v.re - closed).abs() / sup);
        }
    }
    let ok = max_rel <= 1e-6;
    verdict(
        6,
        "closed-form/ODE equivalence",
        ok,
        &format!("5 states over |x| <= 3, max sup-relative deviation = {max_rel:.2e}"),
    );
}

#[test]
fn criterion_7_integer_kappa_collapse() {
    let p = p50();
    // even parity-pair combination with the order nudged off the integer by
    // 1e-12 (inside the library guard band, hence assembled from raw Bessels)
    let sup = |e: f64| -> f64 {
        let u = (p.v0 - e).sqrt() + 1e-12;
        let s = p.qa();
        let mut m = 0.0_f64;
        let mut x = 0.0;
        while x <= 3.0 {
            let z = bessel_argument(&p, x);
            let v = bessel_j_prime(-u, s).unwrap().value * bessel_j(u, z).unwrap().value
                - bessel_j_prime(u, s).unwrap().value * bessel_j(-u, z).unwrap().value;
            m = m.max(v.abs());
            x += 0.25;
        }
        m
    };
    let generic = sup(28.0);
    let mut worst = 0.0_f64;
    for &e in &[49.0, 46.0, 41.0] {
        worst = worst.max(sup(e) / generic);
    }
    let ok = worst <= 1e-8;
    verdict(
        7,
        "integer-kappa collapse",
        ok,
        &format!("max sup-norm ratio vs E = 28: {worst:.2e} (limit 1e-8)"),
    );
}

#[test]
fn criterion_8_qes_flux() {
    // psi = exp[(i sinh x)/2] / sqrt(cosh x): exact current 1/2 everywhere
    let h = 1e-4;
    let n = (10.0 / h) as usize;
    let mut xs = Vec::with_capacity(n + 1);
    let mut values = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let x = -5.0 + i as f64 * h;
        let phase = Complex64::new(0.0, 0.5 * x.sinh());
        xs.push(x);
        values.push(phase.exp() / x.cosh().sqrt());
    }
    let table = WavefunctionTable::new(xs, values, 0.0, None, TableSource::ClosedForm).unwrap();
    let j = probability_current(&table);
    let mean = j.iter().sum::<f64>() / j.len() as f64;
    let var = j.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / j.len() as f64;
    let ok = (mean - 0.5).abs() < 1e-6 && var < 1e-10;
    verdict(
        8,
        "QES flux",
        ok,
        &format!("mean current = {mean:.12} (target 0.5), variance = {var:.2e}"),
    );
}

#[test]
fn criterion_9_prediction_scanner() {
    let fit = power_barrier_scan(4.0, 1.0, 12.0).unwrap();
    let ok = (fit.fitted_envelope_power - 1.0).abs() <= 0.05;
    // the phase exponent is reported only: the fitted growth |x|^3 matches
    // the WKB phase integral of sqrt(|x|^4), exponent (nu + 2)/2
    verdict(
        9,
        "prediction scanner",
        ok,
        &format!(
            "nu = 4: envelope power = {:.4} (target 1.00 +/- 0.05); \
             phase power = {:.4} (reported only, WKB predicts 3)",
            fit.fitted_envelope_power, fit.fitted_phase_power
        ),
    );
}

#[test]
fn norm_closed_form_smoke() {
    // guard against accidental regressions of the closed-form norm used above
    let np = NormParams {
        r: U_ROOTS[0],
        s: 50f64.sqrt(),
    };
    let n = norm_sq_closed_form(&np, 1.0).unwrap();
    assert!((n - 2.0 * 0.055948250723575040).abs() < 1e-12);
}
