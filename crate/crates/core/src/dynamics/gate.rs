use super::evolve::{evolve, EvolutionResult};
use super::schedule::Schedule;
use super::{adiabaticity_check, landau_zener_probability};
use crate::berry::{angle_distance, gate_angle, standard_loop, wrap_angle};
use crate::circuit::{effective_josephson, ground_energy, ChargeBasis, CircuitParams, Parity};
use crate::error::Result;
use crate::quad::GaussLegendre;
use serde::{Deserialize, Serialize};

/// Shape of the simulated gate loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateOptions {
    pub margin_q: f64,
    /// Fraction of the gate time spent on the two charge ramps together.
    pub vertical_fraction: f64,
}

impl Default for GateOptions {
    fn default() -> Self {
        Self { margin_q: 0.5, vertical_fraction: 0.1 }
    }
}

/// Leakage, or Landau-Zener estimate, above which a run counts as non-adiabatic.
pub const NON_ADIABATIC_LEAKAGE: f64 = 1e-2;

#[derive(Debug, Clone, Serialize)]
pub struct GateReport {
    pub tau_gate: f64,
    pub dt: f64,
    /// Wilson-loop Θ of the same loop in the same basis.
    pub wilson_theta: f64,
    /// `wrap(γ_odd - γ_even)` with `γ = arg⟨g₀|ψ(τ)⟩ + ∫E dt`.
    pub realized_angle: f64,
    /// `wrap(realized - wilson)`.
    pub angle_error: f64,
    pub geometric_phase_even: f64,
    pub geometric_phase_odd: f64,
    pub leakage_even: f64,
    pub leakage_odd: f64,
    /// `∫(E_odd - E_even) dt` over the whole loop.
    pub relative_dynamic: f64,
    /// The same integral over the horizontal legs with `Q > 0` and `Q < 0`.
    pub relative_dynamic_upper: f64,
    pub relative_dynamic_lower: f64,
    /// Time spent with `E₂eff < E_C`.
    pub tau_unprotected: f64,
    pub adiabaticity_ratio: f64,
    pub lz_estimate: f64,
    pub non_adiabatic: bool,
    pub norm_drift: f64,
}

impl GateReport {
    /// Residual of the charge echo: the two horizontal legs should contribute
    /// opposite relative dynamic phases.
    pub fn echo_residual(&self) -> f64 {
        (self.relative_dynamic_upper + self.relative_dynamic_lower).abs()
    }

    pub fn max_leakage(&self) -> f64 {
        self.leakage_even.max(self.leakage_odd)
    }
}

/// Time a schedule spends with `E₂eff(Φ(t)) < E_C`, by midpoint sampling.
pub fn unprotected_time(params: &CircuitParams, schedule: &Schedule) -> f64 {
    let n = 200_000;
    let h = schedule.duration() / n as f64;
    (0..n).filter(|&k| effective_josephson(params, schedule.at((k as f64 + 0.5) * h).phi) < params.e_c).count() as f64
        * h
}

/// `∫(E_odd - E_even) dt` over the horizontal legs of `schedule`, split by
/// the sign of the leg's `Q`. Legs are straight and uniform in time, so this
/// is a plain quadrature over the static spectrum.
pub fn leg_relative_dynamic(params: &CircuitParams, schedule: &Schedule, basis: ChargeBasis) -> (f64, f64) {
    let gl = GaussLegendre::new(32);
    let (even, odd) = (basis.charges(Parity::Even), basis.charges(Parity::Odd));
    let (mut upper, mut lower) = (0.0, 0.0);
    for (t0, t1, q) in schedule.horizontal_legs() {
        let v = gl.integrate_panels(t0, t1, 16, |t| {
            let p = schedule.at(t);
            ground_energy(params, p, &odd) - ground_energy(params, p, &even)
        });
        if q > 0.0 {
            upper += v;
        } else if q < 0.0 {
            lower += v;
        }
    }
    (upper, lower)
}

fn report_from(
    params: &CircuitParams,
    schedule: &Schedule,
    basis: ChargeBasis,
    tau: f64,
    dt: f64,
    run: &EvolutionResult,
    wilson_theta: f64,
) -> GateReport {
    let ge = run.even.geometric_phase();
    let go = run.odd.geometric_phase();
    let realized = wrap_angle(go - ge);
    let lz = landau_zener_probability(params, tau);
    let leak = run.even.leakage.max(run.odd.leakage);
    let (upper, lower) = leg_relative_dynamic(params, schedule, basis);
    GateReport {
        tau_gate: tau,
        dt,
        wilson_theta,
        realized_angle: realized,
        angle_error: wrap_angle(realized - wilson_theta),
        geometric_phase_even: ge,
        geometric_phase_odd: go,
        leakage_even: run.even.leakage,
        leakage_odd: run.odd.leakage,
        relative_dynamic: run.odd.energy_integral - run.even.energy_integral,
        relative_dynamic_upper: upper,
        relative_dynamic_lower: lower,
        tau_unprotected: unprotected_time(params, schedule),
        adiabaticity_ratio: adiabaticity_check(params, tau),
        lz_estimate: lz,
        non_adiabatic: leak > NON_ADIABATIC_LEAKAGE || lz > NON_ADIABATIC_LEAKAGE,
        norm_drift: run.norm_drift(),
    }
}

/// Run both parities around the gate loop in time `tau` and compare the
/// realised relative phase with the Wilson-loop Θ.
pub fn simulate_holonomic_gate(
    params: &CircuitParams,
    tau: f64,
    basis: ChargeBasis,
    dt: f64,
    options: GateOptions,
) -> Result<GateReport> {
    let schedule = Schedule::holonomic(options.margin_q, tau, options.vertical_fraction)?;
    let run = evolve(params, &schedule, basis, dt)?;
    let wilson = gate_angle(params, &standard_loop(options.margin_q)?, basis)?.gate_angle;
    Ok(report_from(params, &schedule, basis, tau, dt, &run, wilson))
}

/// `|realized - Θ|` on the circle.
pub fn angle_deviation(report: &GateReport) -> f64 {
    angle_distance(report.realized_angle, report.wilson_theta)
}
