use crate::config::{DynamicsConfig, NoiseConfig, RunConfig};
use crate::output::{loglog_exponent, RunDir};
use holoq_core::berry::{curvature_map, gate_angle, slope_through_origin, ControlPath};
use holoq_core::dynamics::{
    default_dt, discrete_z_gate, ideal_hold_time, landau_zener_passage, simulate_holonomic_gate, unprotected_time,
    GateOptions, Schedule,
};
use holoq_core::noise::{
    dynamic_phase_variance_analytic, effective_unprotected_time, monte_carlo_infidelity, static_offset_error_on,
    MonteCarloOptions, NoiseSample, NoiseSpec,
};
use holoq_core::{CircuitParams, Error};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::f64::consts::PI;

/// Why a command stopped; decides the exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad or inconsistent configuration (exit 2).
    Config(String),
    /// Degeneracy or integration failure; partial results are on disk (exit 3).
    Physics(String),
    /// Could not write results (exit 1).
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { .. } | Error::BasisTooSmall { .. } | Error::InvalidSpectrum { .. } => {
                Failure::Config(e.to_string())
            }
            _ => Failure::Physics(e.to_string()),
        }
    }
}

/// What a successful command hands back for the metadata sidecar.
pub struct Outcome {
    pub results: Map<String, Value>,
    pub seed: Option<u64>,
    /// Rows that could not be computed; non-zero turns the exit code into 3.
    pub failed_rows: usize,
}

impl Outcome {
    fn new(results: Map<String, Value>) -> Self {
        Self { results, seed: None, failed_rows: 0 }
    }
}

fn section<'a, T>(s: &'a Option<T>, name: &str) -> Result<&'a T, Failure> {
    s.as_ref().ok_or_else(|| Failure::Config(format!("missing [{name}] table")))
}

fn params(cfg: &RunConfig) -> Result<CircuitParams, Failure> {
    cfg.circuit.params().map_err(Failure::Config)
}

fn positive_list(name: &str, xs: &[f64]) -> Result<(), Failure> {
    if xs.is_empty() || xs.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        return Err(Failure::Config(format!("{name}: need a non-empty list of positive values")));
    }
    Ok(())
}

fn status(r: &Result<(), Error>) -> String {
    match r {
        Ok(()) => "ok".into(),
        Err(e) => format!("failed: {e}"),
    }
}

fn to_map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

#[derive(Serialize)]
struct CurvatureRow {
    phi: f64,
    q: f64,
    omega_even: f64,
    omega_odd: f64,
    omega_diff: f64,
    valid: bool,
}

pub fn curvature(cfg: &RunConfig, out: &mut RunDir) -> Result<Outcome, Failure> {
    let c = section(&cfg.curvature_map, "curvature_map")?;
    let p = params(cfg)?;
    let spec = c.grid(&p).map_err(Failure::Config)?;
    let basis = cfg.basis.statics().map_err(Failure::Config)?;
    let g = curvature_map(&p, &spec, basis)?;
    let mut rows = Vec::with_capacity(spec.n_phi * spec.n_q);
    for j in 0..spec.n_q {
        for i in 0..spec.n_phi {
            let k = g.index(i, j);
            let c = g.center(i, j);
            rows.push(CurvatureRow {
                phi: c.phi,
                q: c.q,
                omega_even: g.even[k],
                omega_odd: g.odd[k],
                omega_diff: g.diff[k],
                valid: g.valid[k],
            });
        }
    }
    out.write_rows("curvature", &rows).map_err(Failure::Io)?;
    let (pi, pj) = g.peak();
    let peak = g.center(pi, pj);
    let flux = g.integrate_diff((spec.phi_min, spec.phi_max), (spec.q_min, spec.q_max));
    Ok(Outcome::new(to_map(json!({
        "grid": spec,
        "peak": { "phi": peak.phi, "q": peak.q, "omega_diff": g.diff[g.index(pi, pj)] },
        "integrated_omega_diff": flux,
        "invalid_cells": g.invalid_count(),
    }))))
}

#[derive(Serialize)]
struct GateRow {
    eta: f64,
    delta: f64,
    theta: f64,
    theta_predicted: f64,
    min_gap: f64,
    status: String,
}

pub fn gate(cfg: &RunConfig, out: &mut RunDir) -> Result<Outcome, Failure> {
    let c = section(&cfg.gate_angle, "gate_angle")?;
    let (e_sigma, e_c) = cfg.circuit.family().map_err(Failure::Config)?;
    if c.eta.is_empty() || c.eta.iter().any(|e| !(e.is_finite() && *e >= 0.0)) {
        return Err(Failure::Config("[gate_angle] eta: need a non-empty list of non-negative values".into()));
    }
    let basis = cfg.basis.statics().map_err(Failure::Config)?;
    let margin = c.margin_q;
    let path = ControlPath::rectangle(0.0, PI, margin, -margin)
        .and_then(|p| p.with_steps(c.dphi, c.dq))
        .map_err(|e| Failure::Config(format!("[gate_angle]: {e}")))?;

    let results: Vec<(f64, Result<holoq_core::berry::BerryResult, Error>)> = c
        .eta
        .par_iter()
        .map(|&eta| {
            let r = CircuitParams::from_ratios(e_sigma, e_c, eta).and_then(|p| gate_angle(&p, &path, basis));
            (eta, r)
        })
        .collect();

    let fit_pts: Vec<(f64, f64)> = results
        .iter()
        .filter(|(eta, r)| *eta > 0.0 && *eta <= c.fit_eta_max && r.is_ok())
        .map(|(eta, r)| (*eta, r.as_ref().unwrap().gate_angle))
        .collect();
    let fit = (c.fit && fit_pts.len() >= 2).then(|| {
        let (xs, ys): (Vec<f64>, Vec<f64>) = fit_pts.into_iter().unzip();
        slope_through_origin(&xs, &ys)
    });
    let a = fit.as_ref().map_or(c.a_reference, |f| f.a);

    let mut failed = 0;
    let rows: Vec<GateRow> = results
        .into_iter()
        .map(|(eta, r)| {
            let predicted = PI - a * eta;
            match r {
                Ok(b) => GateRow {
                    eta,
                    delta: eta * e_c,
                    theta: b.gate_angle,
                    theta_predicted: predicted,
                    min_gap: b.min_gap_on_path,
                    status: "ok".into(),
                },
                Err(e) => {
                    failed += 1;
                    GateRow {
                        eta,
                        delta: eta * e_c,
                        theta: f64::NAN,
                        theta_predicted: predicted,
                        min_gap: f64::NAN,
                        status: status(&Err(e)),
                    }
                }
            }
        })
        .collect();
    out.write_rows("gate_angle", &rows).map_err(Failure::Io)?;
    let mut results = to_map(json!({ "a_used_for_prediction": a }));
    results.insert(
        "fit".into(),
        match &fit {
            Some(f) => json!({ "a": f.a, "uncertainty": f.uncertainty, "eta": f.etas, "residuals": f.residuals }),
            None => Value::Null,
        },
    );
    Ok(Outcome { failed_rows: failed, ..Outcome::new(results) })
}

#[derive(Serialize)]
struct HolonomicRow {
    tau_gate: f64,
    dt: f64,
    leakage_even: f64,
    leakage_odd: f64,
    realized_theta: f64,
    wilson_theta: f64,
    angle_error: f64,
    echo_residual: f64,
    norm_drift: f64,
    lz_estimate: f64,
    non_adiabatic: bool,
    status: String,
}

#[derive(Serialize)]
struct DiscreteRow {
    hold_time: f64,
    ramp_time: f64,
    phase_even: f64,
    phase_odd: f64,
    relative_phase: f64,
    leakage: f64,
    leakage_even: f64,
    leakage_odd: f64,
    status: String,
}

#[derive(Serialize)]
struct LzRow {
    tau: f64,
    p_measured: f64,
    p_lz: f64,
    ratio: f64,
    p_even: f64,
    p_odd: f64,
    status: String,
}

pub fn dynamics(cfg: &RunConfig, out: &mut RunDir) -> Result<Outcome, Failure> {
    let d = section(&cfg.dynamics, "dynamics")?;
    let p = params(cfg)?;
    let basis = cfg.basis.dynamics().map_err(Failure::Config)?;
    let nan = f64::NAN;
    match d {
        DynamicsConfig::Holonomic { tau_ns, dt_ns, margin_q, vertical_fraction } => {
            positive_list("[dynamics] tau_ns", tau_ns)?;
            let options = GateOptions { margin_q: *margin_q, vertical_fraction: *vertical_fraction };
            Schedule::holonomic(*margin_q, tau_ns[0], *vertical_fraction)?;
            let rows: Vec<HolonomicRow> = tau_ns
                .par_iter()
                .map(|&tau| {
                    let dt = dt_ns.unwrap_or_else(|| default_dt(&p, tau));
                    match simulate_holonomic_gate(&p, tau, basis, dt, options) {
                        Ok(r) => HolonomicRow {
                            tau_gate: tau,
                            dt,
                            leakage_even: r.leakage_even,
                            leakage_odd: r.leakage_odd,
                            realized_theta: r.realized_angle,
                            wilson_theta: r.wilson_theta,
                            angle_error: r.angle_error,
                            echo_residual: r.echo_residual(),
                            norm_drift: r.norm_drift,
                            lz_estimate: r.lz_estimate,
                            non_adiabatic: r.non_adiabatic,
                            status: if r.non_adiabatic { "ok: non-adiabatic".into() } else { "ok".into() },
                        },
                        Err(e) => HolonomicRow {
                            tau_gate: tau,
                            dt,
                            leakage_even: nan,
                            leakage_odd: nan,
                            realized_theta: nan,
                            wilson_theta: nan,
                            angle_error: nan,
                            echo_residual: nan,
                            norm_drift: nan,
                            lz_estimate: nan,
                            non_adiabatic: true,
                            status: status(&Err(e)),
                        },
                    }
                })
                .collect();
            let failed = rows.iter().filter(|r| r.status.starts_with("failed")).count();
            out.write_rows("holonomic", &rows).map_err(Failure::Io)?;
            let flagged: Vec<f64> = rows.iter().filter(|r| r.non_adiabatic).map(|r| r.tau_gate).collect();
            Ok(Outcome {
                failed_rows: failed,
                ..Outcome::new(to_map(json!({ "mode": "holonomic", "non_adiabatic_tau": flagged })))
            })
        }
        DynamicsConfig::DiscreteZ { hold_ns, ramp_ns, q, dt_ns } => {
            let holds = hold_ns.clone().unwrap_or_else(|| vec![ideal_hold_time(&p)]);
            positive_list("[dynamics] hold_ns", &holds)?;
            let rows: Vec<DiscreteRow> = holds
                .par_iter()
                .map(|&hold| match discrete_z_gate(&p, hold, *ramp_ns, *q, basis, *dt_ns) {
                    Ok(r) => DiscreteRow {
                        hold_time: hold,
                        ramp_time: *ramp_ns,
                        phase_even: r.phase_even,
                        phase_odd: r.phase_odd,
                        relative_phase: r.relative_phase,
                        leakage: r.leakage_even.max(r.leakage_odd),
                        leakage_even: r.leakage_even,
                        leakage_odd: r.leakage_odd,
                        status: "ok".into(),
                    },
                    Err(e) => DiscreteRow {
                        hold_time: hold,
                        ramp_time: *ramp_ns,
                        phase_even: nan,
                        phase_odd: nan,
                        relative_phase: nan,
                        leakage: nan,
                        leakage_even: nan,
                        leakage_odd: nan,
                        status: status(&Err(e)),
                    },
                })
                .collect();
            let failed = rows.iter().filter(|r| r.status.starts_with("failed")).count();
            out.write_rows("discrete_z", &rows).map_err(Failure::Io)?;
            Ok(Outcome {
                failed_rows: failed,
                ..Outcome::new(to_map(json!({ "mode": "discrete_z", "ideal_hold_time": ideal_hold_time(&p) })))
            })
        }
        DynamicsConfig::LzSweep { tau_ns, dt_ns } => {
            positive_list("[dynamics] tau_ns", tau_ns)?;
            let rows: Vec<LzRow> = tau_ns
                .par_iter()
                .map(|&tau| {
                    let dt = dt_ns.unwrap_or_else(|| default_dt(&p, 0.5 * tau));
                    match landau_zener_passage(&p, tau, basis, dt) {
                        Ok(pt) => LzRow {
                            tau,
                            p_measured: pt.p_measured(),
                            p_lz: pt.p_lz,
                            ratio: pt.p_measured() / pt.p_lz,
                            p_even: pt.p_even,
                            p_odd: pt.p_odd,
                            status: "ok".into(),
                        },
                        Err(e) => LzRow {
                            tau,
                            p_measured: nan,
                            p_lz: nan,
                            ratio: nan,
                            p_even: nan,
                            p_odd: nan,
                            status: status(&Err(e)),
                        },
                    }
                })
                .collect();
            let failed = rows.iter().filter(|r| r.status.starts_with("failed")).count();
            out.write_rows("lz_sweep", &rows).map_err(Failure::Io)?;
            // Agreement is only meaningful where the estimate is neither
            // negligible nor of order one.
            let window: Vec<f64> = rows
                .iter()
                .filter(|r| r.p_lz >= 1e-5 && r.p_lz <= 1e-2 && r.ratio.is_finite())
                .map(|r| r.ratio)
                .collect();
            let range = (!window.is_empty()).then(|| {
                [window.iter().cloned().fold(f64::INFINITY, f64::min), window.iter().cloned().fold(0.0, f64::max)]
            });
            Ok(Outcome {
                failed_rows: failed,
                ..Outcome::new(to_map(json!({ "mode": "lz_sweep", "ratio_range_in_window": range })))
            })
        }
    }
}

#[derive(Serialize)]
struct OffsetRow {
    eps_q: f64,
    delta_theta: f64,
    relative_error: f64,
}

#[derive(Serialize)]
struct DephasingRow {
    sqrt_a: f64,
    a: f64,
    f_min: f64,
    f_max: f64,
    tau_u: f64,
    slope: f64,
    gamma_sq: f64,
    gamma_sq_closed: f64,
    infidelity: f64,
    infidelity_closed: f64,
}

fn gate_noise(amp: f64, tau: f64, dt: f64, f_min: Option<f64>, f_max: Option<f64>) -> Result<NoiseSpec, Failure> {
    if !(tau > 0.0 && dt > 0.0) {
        return Err(Failure::Config("[noise]: tau_gate_ns and dt_ns must be positive".into()));
    }
    let d = NoiseSpec::for_gate(amp, tau, dt)?;
    Ok(NoiseSpec::new(amp, f_min.unwrap_or(d.f_min), f_max.unwrap_or(d.f_max))?)
}

pub fn noise(cfg: &RunConfig, out: &mut RunDir, seed_override: Option<u64>) -> Result<Outcome, Failure> {
    let n = section(&cfg.noise, "noise")?;
    let p = params(cfg)?;
    match n {
        NoiseConfig::StaticOffset { eps_q, shift } => {
            if eps_q.is_empty() {
                return Err(Failure::Config("[noise] eps_q: empty".into()));
            }
            let basis = cfg.basis.statics().map_err(Failure::Config)?;
            let reps = static_offset_error_on(&p, eps_q, *shift, basis)?;
            let rows: Vec<OffsetRow> = eps_q
                .iter()
                .zip(&reps)
                .map(|(&e, r)| OffsetRow {
                    eps_q: e,
                    delta_theta: r.delta_theta.unwrap_or(f64::NAN),
                    relative_error: r.relative_error.unwrap_or(f64::NAN),
                })
                .collect();
            out.write_rows("static_offset", &rows).map_err(Failure::Io)?;
            let mags: Vec<f64> = eps_q.iter().map(|e| e.abs()).collect();
            let dth: Vec<f64> = rows.iter().map(|r| r.delta_theta).collect();
            Ok(Outcome::new(to_map(json!({
                "mode": "static_offset",
                "shift": shift,
                "exponent_delta_theta_vs_eps": loglog_exponent(&mags, &dth),
            }))))
        }
        NoiseConfig::AnalyticDephasing { tau_gate_ns, sqrt_a, f_min_ghz, f_max_ghz, dt_ns, tau_u_ns } => {
            let basis = cfg.basis.dynamics().map_err(Failure::Config)?;
            let tau = *tau_gate_ns;
            let dt = dt_ns.unwrap_or_else(|| default_dt(&p, tau));
            let options = GateOptions::default();
            let schedule = Schedule::holonomic(options.margin_q, tau, options.vertical_fraction)?;
            let tau_u = tau_u_ns.unwrap_or_else(|| unprotected_time(&p, &schedule));
            if tau_u <= 0.0 {
                return Err(Failure::Config(
                    "[noise]: the gate never leaves the protected regime (E2eff >= E_C throughout); set tau_u_ns"
                        .into(),
                ));
            }
            if sqrt_a.is_empty() {
                return Err(Failure::Config("[noise] sqrt_a: empty".into()));
            }
            let mut rows = Vec::new();
            for &amp in sqrt_a {
                let spec = gate_noise(amp, tau, dt, *f_min_ghz, *f_max_ghz)?;
                let e = dynamic_phase_variance_analytic(&p, tau_u, &spec, basis)?;
                rows.push(DephasingRow {
                    sqrt_a: amp,
                    a: spec.a(),
                    f_min: spec.f_min,
                    f_max: spec.f_max,
                    tau_u: e.tau_u,
                    slope: e.slope,
                    gamma_sq: e.gamma_sq,
                    gamma_sq_closed: e.gamma_sq_closed,
                    infidelity: e.infidelity,
                    infidelity_closed: e.infidelity_closed,
                });
            }
            out.write_rows("analytic_dephasing", &rows).map_err(Failure::Io)?;
            let amps: Vec<f64> = rows.iter().map(|r| r.sqrt_a).collect();
            let inf: Vec<f64> = rows.iter().map(|r| r.infidelity).collect();
            Ok(Outcome::new(to_map(json!({
                "mode": "analytic_dephasing",
                "tau_u": tau_u,
                "tau_effective": effective_unprotected_time(&p, &schedule, basis),
                "exponent_infidelity_vs_sqrt_a": loglog_exponent(&amps, &inf),
            }))))
        }
        NoiseConfig::MonteCarlo { tau_gate_ns, sqrt_a, n_samples, seed, dt_ns, f_min_ghz, f_max_ghz } => {
            let basis = cfg.basis.dynamics().map_err(Failure::Config)?;
            let tau = *tau_gate_ns;
            let dt = dt_ns.unwrap_or_else(|| default_dt(&p, tau));
            let spec = gate_noise(*sqrt_a, tau, dt, *f_min_ghz, *f_max_ghz)?;
            let seed = seed_override.unwrap_or(*seed);
            let options = MonteCarloOptions { n_samples: *n_samples, seed, dt, gate: GateOptions::default() };
            let report = monte_carlo_infidelity(&p, tau, &spec, &options, basis)?;
            out.write_rows::<NoiseSample>("monte_carlo", &report.samples).map_err(Failure::Io)?;

            let schedule = Schedule::holonomic(options.gate.margin_q, tau, options.gate.vertical_fraction)?;
            // Undefined when the loop never leaves the protected regime.
            let analytic = dynamic_phase_variance_analytic(&p, unprotected_time(&p, &schedule), &spec, basis).ok();
            let s = &report.summary;
            let ratio = |x: Option<f64>, y: Option<f64>| x.zip(y).map(|(x, y)| x / y);
            let results = to_map(json!({
                "mode": "monte_carlo",
                "noise": spec,
                "samples": s.samples,
                "infidelity_mean": s.infidelity,
                "infidelity_ci95": s.infidelity_ci,
                "gamma_sq_mean": s.gamma_sq_mean,
                "gamma_mean": report.gamma_mean,
                "analytic": analytic,
                "infidelity_ratio_mc_over_analytic": ratio(s.infidelity, analytic.map(|a| a.infidelity)),
                "gamma_sq_ratio_mc_over_analytic": ratio(s.gamma_sq_mean, analytic.map(|a| a.gamma_sq)),
            }));
            Ok(Outcome { seed: Some(seed), ..Outcome::new(results) })
        }
    }
}
