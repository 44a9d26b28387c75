use super::evolve::{overlap, propagate};
use super::schedule::Schedule;
use crate::berry::wrap_angle;
use crate::circuit::{lowest_state, ChargeBasis, CircuitParams, ControlPoint, Parity};
use crate::error::{invalid, Result};
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DiscreteZReport {
    pub hold_time: f64,
    pub ramp_time: f64,
    /// `arg⟨g₀|ψ(T)⟩` per sector, with `g₀` the protected ground state.
    pub phase_even: f64,
    pub phase_odd: f64,
    /// `wrap(phase_odd - phase_even)`; ideally `-π/2`.
    pub relative_phase: f64,
    pub leakage_even: f64,
    pub leakage_odd: f64,
}

/// Ideal hold `T = π/(2E_C)`: `e^{-iE_C n² T}` is 1 on even and `-i` on odd
/// charge states.
pub fn ideal_hold_time(params: &CircuitParams) -> f64 {
    PI / (2.0 * params.e_c)
}

/// Flux step `Φ: 0 → π/2`, hold, and back, at fixed charge offset `q`.
///
/// `ramp_time = 0` is the sudden limit: the protected ground state is held
/// under `H(π/2, q)` and projected back onto itself.
pub fn discrete_z_gate(
    params: &CircuitParams,
    hold_time: f64,
    ramp_time: f64,
    q: f64,
    basis: ChargeBasis,
    dt: f64,
) -> Result<DiscreteZReport> {
    if !(hold_time > 0.0) || !(ramp_time >= 0.0) {
        return Err(invalid("hold_time", "hold must be positive and ramp non-negative"));
    }
    let rest = ControlPoint::new(0.0, q);
    let top = ControlPoint::new(FRAC_PI_2, q);
    let schedule = if ramp_time == 0.0 {
        Schedule::constant(top, hold_time)?
    } else {
        Schedule::new(vec![
            (0.0, rest),
            (ramp_time, top),
            (ramp_time + hold_time, top),
            (2.0 * ramp_time + hold_time, rest),
        ])?
    };
    let mut phases = [0.0; 2];
    let mut leaks = [0.0; 2];
    for (i, parity) in Parity::BOTH.into_iter().enumerate() {
        let charges = basis.charges(parity);
        let g0 = lowest_state(params, rest, &charges)?.state;
        let mut psi = g0.clone();
        propagate(params, &schedule, &charges, dt, &mut psi, None, false)?;
        let ov = overlap(&g0, &psi);
        phases[i] = ov.arg();
        leaks[i] = (1.0 - ov.norm_sqr()).clamp(0.0, 1.0);
    }
    Ok(DiscreteZReport {
        hold_time,
        ramp_time,
        phase_even: phases[0],
        phase_odd: phases[1],
        relative_phase: wrap_angle(phases[1] - phases[0]),
        leakage_even: leaks[0],
        leakage_odd: leaks[1],
    })
}
