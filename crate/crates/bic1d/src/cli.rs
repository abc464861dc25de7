//! Command line front end: spectra, wavefunction tables, scattering scans,
//! oracle verification, and raw special-function evaluation, emitted as
//! plot-ready CSV or schema-versioned JSON.
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 numerical failure,
//! 4 closed-form wavefunction requested at a non-eigenvalue.

use crate::model::{make_params, ModelParams, Parity};
use crate::specfun::{
    bessel_j, bessel_j_complex_order, bessel_j_prime, bessel_y, bessel_y_prime, gamma,
    gamma_complex, hankel, hyp2f3, HankelKind,
};
use crate::{oracle, scattering, spectrum, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

pub const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Parser)]
#[command(name = "bic1d", version, about = "Bound states in the continuum of the bottomless exponential barrier")]
struct Cli {
    /// Barrier strength V0 (overrides config file; default 50)
    #[arg(long, global = true)]
    v0: Option<f64>,
    /// Length scale a (overrides config file; default 1)
    #[arg(long, global = true)]
    a: Option<f64>,
    /// hbar^2/2m (overrides config file; default 1)
    #[arg(long, global = true)]
    h2m: Option<f64>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path (stdout when absent)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON config file with {"v0": .., "a": .., "h2m": ..}
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    ClosedForm,
    Ode,
}

#[derive(Subcommand)]
enum Command {
    /// Discrete eigenvalues embedded in the continuum
    Spectrum(SpectrumArgs),
    /// Sample one state on a uniform x grid
    Wavefunction(WavefunctionArgs),
    /// Reflection/transmission scan over energy, or an a-sweep at fixed E
    Scatter(ScatterArgs),
    /// Asymptotic power-law fits for the -|x|^nu barriers
    PowerScan(PowerScanArgs),
    /// Cross-check every closed-form result against the ODE oracle
    Verify,
    /// Evaluate one special function at given arguments
    SpecfunEval(SpecfunArgs),
}

#[derive(Args)]
struct SpectrumArgs {
    /// Also run the projection oracle and report its residuals
    #[arg(long)]
    verify: bool,
    /// Root-scan resolution in u = kappa*a
    #[arg(long, default_value_t = 1e-3)]
    scan_resolution: f64,
}

#[derive(Args)]
struct WavefunctionArgs {
    #[arg(long)]
    energy: f64,
    #[arg(long, value_enum)]
    parity: ParityArg,
    #[arg(long, default_value_t = 4.0)]
    x_max: f64,
    #[arg(long, default_value_t = 801)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = SourceArg::ClosedForm)]
    source: SourceArg,
}

#[derive(Args)]
struct ScatterArgs {
    #[arg(long, default_value_t = 0.5)]
    e_min: f64,
    #[arg(long, default_value_t = 49.5)]
    e_max: f64,
    #[arg(long, default_value_t = 200)]
    steps: usize,
    /// Fixed energy for an a-sweep (requires --a-sweep)
    #[arg(long)]
    energy: Option<f64>,
    /// Comma-separated list of a values to sweep at fixed energy
    #[arg(long, value_delimiter = ',')]
    a_sweep: Option<Vec<f64>>,
}

#[derive(Args)]
struct PowerScanArgs {
    /// Comma-separated barrier exponents in (2, 8]
    #[arg(long, value_delimiter = ',', default_value = "2.5,3.0,4.0,5.0")]
    nu: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    energy: f64,
    #[arg(long, default_value_t = 12.0)]
    x_max: f64,
}

#[derive(Args)]
struct SpecfunArgs {
    /// One of: bessel-j, bessel-j-prime, bessel-y, bessel-y-prime, hankel1,
    /// hankel2, bessel-j-complex-order, gamma, gamma-complex, hyp2f3
    #[arg(long)]
    function: String,
    /// Positional numeric arguments of the chosen function
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    args: Vec<f64>,
}

#[derive(Serialize, Deserialize, Default)]
struct ConfigFile {
    v0: Option<f64>,
    a: Option<f64>,
    h2m: Option<f64>,
}

#[derive(Serialize, Clone, Copy)]
struct ConfigEcho {
    v0: f64,
    a: f64,
    h2m: f64,
}

#[derive(Serialize)]
struct Payload {
    columns: Vec<String>,
    rows: Vec<Vec<serde_json::Value>>,
}

#[derive(Serialize)]
struct ResultDocument {
    schema_version: String,
    command: String,
    config: ConfigEcho,
    produced_at: String,
    provenance: String,
    payload: Payload,
}

fn num(v: f64) -> serde_json::Value {
    serde_json::Number::from_f64(v)
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}

fn text(s: impl Into<String>) -> serde_json::Value {
    serde_json::Value::String(s.into())
}

fn csv_cell(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Null => String::new(),
        serde_json::Value::Number(n) => match n.as_f64() {
            Some(x) if x.fract() == 0.0 && x.abs() < 1e15 && n.is_i64() => n.to_string(),
            Some(x) => format!("{x:.16e}"),
            None => n.to_string(),
        },
        serde_json::Value::String(s) => {
            if s.contains(',') || s.contains('"') || s.contains('\n') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.clone()
            }
        }
        other => other.to_string(),
    }
}

fn render(doc: &ResultDocument, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("serializable document");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = doc.payload.columns.join(",");
            s.push('\n');
            for row in &doc.payload.rows {
                let line: Vec<String> = row.iter().map(csv_cell).collect();
                s.push_str(&line.join(","));
                s.push('\n');
            }
            s
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NotAnEigenvalue { .. } => 4,
        Error::InvalidConfig(_) | Error::NonPositiveParameter(_) => 2,
        _ => 3,
    }
}

fn resolve_params(cli: &Cli) -> Result<ModelParams, (i32, String)> {
    let file: ConfigFile = match &cli.config {
        Some(path) => {
            let raw = std::fs::read_to_string(path)
                .map_err(|e| (2, format!("config {}: {e}", path.display())))?;
            serde_json::from_str(&raw).map_err(|e| (2, format!("config parse: {e}")))?
        }
        None => ConfigFile::default(),
    };
    let v0 = cli.v0.or(file.v0).unwrap_or(50.0);
    let a = cli.a.or(file.a).unwrap_or(1.0);
    let h2m = cli.h2m.or(file.h2m).unwrap_or(1.0);
    make_params(v0, a, h2m).map_err(|e| (2, e.to_string()))
}

fn init_threads() -> Result<(), (i32, String)> {
    if let Ok(raw) = std::env::var("BIC1D_THREADS") {
        let n: usize = raw
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or((2, format!("BIC1D_THREADS must be a positive integer, got {raw:?}")))?;
        // ignore the error if a global pool already exists (tests, repeat calls)
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Energy grid for projection scans: coarse over the bulk of (0, v0) plus a
/// fine band near the barrier top where the last eigenvalue hides.
fn projection_grid(p: &ModelParams) -> Vec<f64> {
    let mut grid = Vec::new();
    let lo = 0.01 * p.v0;
    let hi = 0.99 * p.v0;
    for i in 0..150 {
        grid.push(lo + (hi - lo) * i as f64 / 149.0);
    }
    let top = 0.999995 * p.v0;
    for i in 1..=60 {
        grid.push(hi + (top - hi) * i as f64 / 60.0);
    }
    grid
}

fn document(command: &str, cfg: ConfigEcho, provenance: &str, payload: Payload) -> ResultDocument {
    ResultDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        command: command.to_string(),
        config: cfg,
        produced_at: chrono::Utc::now().to_rfc3339(),
        provenance: provenance.to_string(),
        payload,
    }
}

fn cmd_spectrum(p: &ModelParams, cfg: ConfigEcho, args: &SpectrumArgs) -> crate::Result<ResultDocument> {
    let states = spectrum::find_bic_spectrum(p, args.scan_resolution)?;
    let states: Vec<_> = states
        .iter()
        .map(|s| spectrum::normalize(p, s))
        .collect::<crate::Result<_>>()?;
    let oracle_hits: Vec<Option<(f64, f64)>> = if args.verify {
        let grid = projection_grid(p);
        let candidates = oracle::bic_scan_by_projection(p, &grid)?;
        states
            .iter()
            .map(|s: &spectrum::BicState| {
                candidates
                    .iter()
                    .filter(|(_, par, _)| *par == s.parity)
                    .map(|(e, _, res)| (*e, *res))
                    .min_by(|a, b| {
                        (a.0 - s.energy)
                            .abs()
                            .partial_cmp(&(b.0 - s.energy).abs())
                            .expect("finite energies")
                    })
                    .filter(|(e, _)| (e - s.energy).abs() < 1e-2 * p.v0.max(1.0))
            })
            .collect()
    } else {
        vec![None; states.len()]
    };
    let rows = states
        .iter()
        .zip(&oracle_hits)
        .map(|(s, hit)| {
            vec![
                serde_json::Value::from(s.index as u64),
                text(s.parity.to_string()),
                num(s.energy),
                num(s.kappa_a),
                num(s.residual),
                s.norm_sq.map(num).unwrap_or(serde_json::Value::Null),
                hit.map(|(_, res)| num(res)).unwrap_or(serde_json::Value::Null),
            ]
        })
        .collect();
    Ok(document(
        "spectrum",
        cfg,
        if args.verify { "Both" } else { "ClosedForm" },
        Payload {
            columns: ["index", "parity", "energy", "kappa_a", "residual", "norm_sq", "oracle_residual"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            rows,
        },
    ))
}

fn cmd_wavefunction(
    p: &ModelParams,
    cfg: ConfigEcho,
    args: &WavefunctionArgs,
) -> crate::Result<ResultDocument> {
    if args.samples < 2 || !(args.x_max > 0.0) {
        return Err(Error::InvalidConfig(
            "wavefunction: need samples >= 2 and x_max > 0".into(),
        ));
    }
    let parity: Parity = args.parity.into();
    let xs: Vec<f64> = (0..args.samples)
        .map(|i| -args.x_max + 2.0 * args.x_max * i as f64 / (args.samples - 1) as f64)
        .collect();
    let (provenance, psis) = match args.source {
        SourceArg::ClosedForm => {
            let psis: Vec<f64> = xs
                .iter()
                .map(|&x| crate::model::bic_wavefunction(p, args.energy, parity, 1.0, x))
                .collect::<crate::Result<_>>()?;
            ("ClosedForm", psis)
        }
        SourceArg::Ode => {
            let table =
                oracle::integrate_parity_ode(p, args.energy, parity, args.x_max, 1e-3 * p.a)?;
            let sampled = xs
                .iter()
                .map(|&x| {
                    let i = table
                        .xs
                        .partition_point(|&g| g < x)
                        .min(table.xs.len() - 1);
                    let i = if i > 0 && (table.xs[i] - x) > (x - table.xs[i - 1]) {
                        i - 1
                    } else {
                        i
                    };
                    table.values[i].re
                })
                .collect();
            ("Oracle", sampled)
        }
    };
    let rows = xs
        .iter()
        .zip(&psis)
        .map(|(&x, &psi)| vec![num(x), num(psi), num(psi * psi)])
        .collect();
    Ok(document(
        "wavefunction",
        cfg,
        provenance,
        Payload {
            columns: ["x", "psi", "psi_squared"].iter().map(|s| s.to_string()).collect(),
            rows,
        },
    ))
}

fn cmd_scatter(p: &ModelParams, cfg: ConfigEcho, args: &ScatterArgs) -> crate::Result<(ResultDocument, i32)> {
    let mut rows = Vec::new();
    let mut ok = 0usize;
    let mut total = 0usize;
    let sweep = match (&args.a_sweep, args.energy) {
        (Some(a_values), Some(energy)) => Some((a_values.clone(), energy)),
        (Some(_), None) | (None, Some(_)) => {
            return Err(Error::InvalidConfig(
                "scatter: --a-sweep and --energy must be given together".into(),
            ))
        }
        (None, None) => None,
    };
    let (columns, provenance): (Vec<String>, &str) = if let Some((a_values, energy)) = sweep {
        for &a in &a_values {
            total += 1;
            match make_params(p.v0, a, p.h2m).and_then(|pa| scattering::rt_coefficients(&pa, energy)) {
                Ok(pt) => {
                    ok += 1;
                    rows.push(vec![
                        num(a),
                        num(pt.r_prob),
                        num(pt.t_prob),
                        num(pt.r_prob + pt.t_prob),
                        text("ok"),
                    ]);
                }
                Err(e) => rows.push(vec![
                    num(a),
                    serde_json::Value::Null,
                    serde_json::Value::Null,
                    serde_json::Value::Null,
                    text(e.to_string()),
                ]),
            }
        }
        (
            ["a", "r_prob", "t_prob", "r_plus_t", "status"].iter().map(|s| s.to_string()).collect(),
            "ClosedForm",
        )
    } else {
        if !(args.e_min > 0.0 && args.e_max > args.e_min) || args.steps < 2 {
            return Err(Error::InvalidConfig(
                "scatter: need 0 < e_min < e_max and steps >= 2".into(),
            ));
        }
        let h = (args.e_max - args.e_min) / (args.steps - 1) as f64;
        for i in 0..args.steps {
            let e = args.e_min + i as f64 * h;
            total += 1;
            match scattering::rt_coefficients(p, e) {
                Ok(pt) => {
                    ok += 1;
                    rows.push(vec![
                        num(e),
                        num(pt.r_prob),
                        num(pt.t_prob),
                        num(pt.r_prob + pt.t_prob),
                        text("ok"),
                    ]);
                }
                Err(err) => rows.push(vec![
                    num(e),
                    serde_json::Value::Null,
                    serde_json::Value::Null,
                    serde_json::Value::Null,
                    text(err.to_string()),
                ]),
            }
        }
        (
            ["energy", "r_prob", "t_prob", "r_plus_t", "status"].iter().map(|s| s.to_string()).collect(),
            "ClosedForm",
        )
    };
    let code = if (ok as f64) >= 0.9 * total as f64 { 0 } else { 3 };
    Ok((
        document("scatter", cfg, provenance, Payload { columns, rows }),
        code,
    ))
}

fn cmd_power_scan(cfg: ConfigEcho, args: &PowerScanArgs) -> crate::Result<ResultDocument> {
    use rayon::prelude::*;
    let fits: Vec<(f64, crate::Result<oracle::EnvelopeFit>)> = args
        .nu
        .par_iter()
        .map(|&nu| (nu, oracle::power_barrier_scan(nu, args.energy, args.x_max)))
        .collect();
    let rows = fits
        .iter()
        .map(|(nu, fit)| match fit {
            Ok(f) => vec![
                num(*nu),
                num(f.fitted_envelope_power),
                num(f.fitted_phase_power),
                num(f.fit_residual),
                text("ok"),
            ],
            Err(e) => vec![
                num(*nu),
                serde_json::Value::Null,
                serde_json::Value::Null,
                serde_json::Value::Null,
                text(e.to_string()),
            ],
        })
        .collect();
    Ok(document(
        "power-scan",
        cfg,
        "Oracle",
        Payload {
            columns: ["nu", "envelope_power", "phase_power", "fit_residual", "status"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            rows,
        },
    ))
}

fn cmd_verify(p: &ModelParams, cfg: ConfigEcho) -> crate::Result<(ResultDocument, i32)> {
    let mut rows: Vec<Vec<serde_json::Value>> = Vec::new();
    let mut all_ok = true;
    let push = |name: &str, ok: bool, detail: String, rows: &mut Vec<Vec<serde_json::Value>>| {
        rows.push(vec![
            text(name),
            text(if ok { "pass" } else { "fail" }),
            text(detail),
        ]);
    };

    let states: Vec<_> = spectrum::find_bic_spectrum(p, 1e-3)?
        .iter()
        .map(|s| spectrum::normalize(p, s))
        .collect::<crate::Result<_>>()?;

    // 1: projection oracle re-finds the spectrum
    let candidates = oracle::bic_scan_by_projection(p, &projection_grid(p))?;
    let mut worst_de = 0.0_f64;
    let matched = states.iter().all(|s: &spectrum::BicState| {
        candidates
            .iter()
            .filter(|(_, par, _)| *par == s.parity)
            .map(|(e, _, _)| (e - s.energy).abs())
            .min_by(f64::total_cmp)
            .map(|de| {
                worst_de = worst_de.max(de);
                de < 1e-4
            })
            .unwrap_or(false)
    });
    let ok = matched && candidates.len() == states.len();
    all_ok &= ok;
    push(
        "projection_scan_concordance",
        ok,
        format!("{} candidates, worst dE {worst_de:.2e}", candidates.len()),
        &mut rows,
    );

    // 2: closed-form norms vs adaptive quadrature
    let mut worst_rel = 0.0_f64;
    for s in &states {
        let closed = s.norm_sq.expect("normalized above");
        let quad = 2.0 * p.a * oracle::bessel_tail_quadrature(s.kappa_a, p.qa())?;
        worst_rel = worst_rel.max(((closed - quad) / quad).abs());
    }
    let ok = worst_rel < 1e-6;
    all_ok &= ok;
    push(
        "norm_closed_form_vs_quadrature",
        ok,
        format!("worst relative {worst_rel:.2e}"),
        &mut rows,
    );

    // 3: scattering conservation and ODE transport agreement
    let mut worst_cons = 0.0_f64;
    for &e in &[0.02 * p.v0, 0.2 * p.v0, 0.5 * p.v0, 0.888 * p.v0, 1.2 * p.v0] {
        let pt = scattering::rt_coefficients(p, e)?;
        worst_cons = worst_cons.max((pt.r_prob + pt.t_prob - 1.0).abs());
    }
    let e_probe = 0.2 * p.v0;
    let ode = oracle::rt_by_ode(p, e_probe)?;
    let alg = scattering::rt_coefficients(p, e_probe)?;
    let dr = (ode.r_prob - alg.r_prob).abs();
    let ok = worst_cons < 1e-8 && dr < 1e-4;
    all_ok &= ok;
    push(
        "scattering_conservation_and_ode",
        ok,
        format!("worst |R+T-1| {worst_cons:.2e}, ODE dR {dr:.2e}"),
        &mut rows,
    );

    // 4: QES constant-flux state
    let h = 1e-4;
    let n = (10.0 / h) as i64;
    let xs: Vec<f64> = (0..=n).map(|i| -5.0 + i as f64 * h).collect();
    let values: Vec<Complex64> = xs
        .iter()
        .map(|&x| (Complex64::i() * x.sinh() / 2.0).exp() / x.cosh().sqrt())
        .collect();
    let table = crate::model::WavefunctionTable::new(
        xs,
        values,
        0.0,
        None,
        crate::model::TableSource::ClosedForm,
    )?;
    let j = oracle::probability_current(&table);
    let interior = &j[1..j.len() - 1];
    let mean = interior.iter().sum::<f64>() / interior.len() as f64;
    let var = interior.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / interior.len() as f64;
    let ok = (mean - 0.5).abs() < 1e-6 && var < 1e-10;
    all_ok &= ok;
    push(
        "qes_constant_flux",
        ok,
        format!("mean {mean:.10}, variance {var:.2e}"),
        &mut rows,
    );

    // 5: Wronskian spot check across regimes:
    // J_nu J'_{-nu} - J'_nu J_{-nu} = -2 sin(nu pi)/(pi z)
    let mut worst_w = 0.0_f64;
    for &nu in &[0.3, 1.7, 3.4, 5.6, 7.2] {
        for &z in &[2.0, 5.0, 12.0, 31.0, 80.0] {
            let w = bessel_j(nu, z)?.value * bessel_j_prime(-nu, z)?.value
                - bessel_j_prime(nu, z)?.value * bessel_j(-nu, z)?.value;
            let exact = -2.0 * (std::f64::consts::PI * nu).sin() / (std::f64::consts::PI * z);
            worst_w = worst_w.max((w - exact).abs());
        }
    }
    let ok = worst_w < 1e-9;
    all_ok &= ok;
    push("bessel_wronskian", ok, format!("worst {worst_w:.2e}"), &mut rows);

    let code = if all_ok { 0 } else { 3 };
    Ok((
        document(
            "verify",
            cfg,
            "Both",
            Payload {
                columns: ["check", "status", "detail"].iter().map(|s| s.to_string()).collect(),
                rows,
            },
        ),
        code,
    ))
}

fn cmd_specfun_eval(cfg: ConfigEcho, args: &SpecfunArgs) -> Result<ResultDocument, (i32, String)> {
    let need = |n: usize| -> Result<(), (i32, String)> {
        if args.args.len() != n {
            Err((2, format!("{} expects {n} arguments, got {}", args.function, args.args.len())))
        } else {
            Ok(())
        }
    };
    let a = &args.args;
    let run = || -> crate::Result<(Complex64, f64, String)> {
        Ok(match args.function.as_str() {
            "bessel-j" => {
                let r = bessel_j(a[0], a[1])?;
                (r.value.into(), r.abs_err, format!("{:?}", r.regime))
            }
            "bessel-j-prime" => {
                let r = bessel_j_prime(a[0], a[1])?;
                (r.value.into(), r.abs_err, format!("{:?}", r.regime))
            }
            "bessel-y" => {
                let r = bessel_y(a[0], a[1])?;
                (r.value.into(), r.abs_err, format!("{:?}", r.regime))
            }
            "bessel-y-prime" => {
                let r = bessel_y_prime(a[0], a[1])?;
                (r.value.into(), r.abs_err, format!("{:?}", r.regime))
            }
            "hankel1" => {
                let r = hankel(HankelKind::H1, a[0], a[1])?;
                (r.value, r.abs_err, format!("{:?}", r.regime))
            }
            "hankel2" => {
                let r = hankel(HankelKind::H2, a[0], a[1])?;
                (r.value, r.abs_err, format!("{:?}", r.regime))
            }
            "bessel-j-complex-order" => {
                let r = bessel_j_complex_order(Complex64::new(a[0], a[1]), a[2])?;
                (r.value, r.abs_err, format!("{:?}", r.regime))
            }
            "gamma" => {
                let r = gamma(a[0])?;
                (r.value.into(), r.abs_err, format!("{:?}", r.regime))
            }
            "gamma-complex" => {
                let r = gamma_complex(Complex64::new(a[0], a[1]))?;
                (r.value, r.abs_err, format!("{:?}", r.regime))
            }
            "hyp2f3" => {
                let r = hyp2f3(a[0], a[1], a[2], a[3], a[4], a[5])?;
                (r.value.into(), r.abs_err, format!("{:?}", r.regime))
            }
            other => return Err(Error::Domain(format!("unknown function {other:?}"))),
        })
    };
    match args.function.as_str() {
        "bessel-j" | "bessel-j-prime" | "bessel-y" | "bessel-y-prime" | "hankel1" | "hankel2" => {
            need(2)?
        }
        "gamma" => need(1)?,
        "gamma-complex" => need(2)?,
        "bessel-j-complex-order" => need(3)?,
        "hyp2f3" => need(6)?,
        other => return Err((2, format!("unknown function {other:?}"))),
    }
    let (value, abs_err, regime) = run().map_err(|e| (exit_code_for(&e), e.to_string()))?;
    let arg_list = a
        .iter()
        .map(|x| format!("{x}"))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(document(
        "specfun-eval",
        cfg,
        "ClosedForm",
        Payload {
            columns: ["function", "args", "value_re", "value_im", "abs_err", "regime"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            rows: vec![vec![
                text(args.function.clone()),
                text(arg_list),
                num(value.re),
                num(value.im),
                num(abs_err),
                text(regime),
            ]],
        },
    ))
}

fn emit(doc: &ResultDocument, cli: &Cli) -> Result<(), (i32, String)> {
    let rendered = render(doc, cli.format);
    match &cli.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| (3, format!("write {}: {e}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

/// Entry point; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match run_with(&cli) {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

fn run_with(cli: &Cli) -> Result<i32, (i32, String)> {
    init_threads()?;
    let p = resolve_params(cli)?;
    let cfg = ConfigEcho {
        v0: p.v0,
        a: p.a,
        h2m: p.h2m,
    };
    let wrap = |e: Error| (exit_code_for(&e), e.to_string());
    let (doc, code) = match &cli.command {
        Command::Spectrum(args) => (cmd_spectrum(&p, cfg, args).map_err(wrap)?, 0),
        Command::Wavefunction(args) => (cmd_wavefunction(&p, cfg, args).map_err(wrap)?, 0),
        Command::Scatter(args) => {
            let (doc, code) = cmd_scatter(&p, cfg, args).map_err(wrap)?;
            (doc, code)
        }
        Command::PowerScan(args) => (cmd_power_scan(cfg, args).map_err(wrap)?, 0),
        Command::Verify => {
            let (doc, code) = cmd_verify(&p, cfg).map_err(wrap)?;
            (doc, code)
        }
        Command::SpecfunEval(args) => (cmd_specfun_eval(cfg, args)?, 0),
    };
    emit(&doc, cli)?;
    Ok(code)
}
