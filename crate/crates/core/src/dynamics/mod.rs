//! Time-domain evolution through control schedules.
//!
//! Dynamics run in a smaller charge basis than the statics: the relevant
//! states are confined to a few charges around zero, and every step costs two
//! full eigen-decompositions. [`DEFAULT_DYNAMICS_N_MAX`] is converged to
//! rounding for the reference device (see the truncation tests).

mod discrete;
mod evolve;
mod gate;
mod lz;
mod propagate;
mod schedule;

pub use discrete::{discrete_z_gate, ideal_hold_time, DiscreteZReport};
pub use evolve::{
    evolve, evolve_sector, evolve_state, sector_ground, ChargeOffset, EvolutionResult, SectorEvolution, NORM_TOLERANCE,
};
pub use gate::{
    angle_deviation, leg_relative_dynamic, simulate_holonomic_gate, unprotected_time, GateOptions, GateReport,
    NON_ADIABATIC_LEAKAGE,
};
pub use lz::{landau_zener_passage, LzPoint};
pub use propagate::STEP_GUARD;
pub use schedule::Schedule;

pub(crate) use evolve::evolve_with;

use crate::circuit::{ChargeBasis, CircuitParams};

pub const DEFAULT_DYNAMICS_N_MAX: usize = 16;

pub fn dynamics_basis() -> ChargeBasis {
    ChargeBasis { n_max: DEFAULT_DYNAMICS_N_MAX }
}

/// `1/(τ E_C)`; must be ≪ 1 for adiabatic operation.
pub fn adiabaticity_check(params: &CircuitParams, tau_gate: f64) -> f64 {
    1.0 / (tau_gate * params.e_c)
}

/// `P = exp(-τ E_C² / (E₂ + E₂'))`.
pub fn landau_zener_probability(params: &CircuitParams, tau_gate: f64) -> f64 {
    (-tau_gate * params.e_c * params.e_c / params.e_sigma()).exp()
}

/// `min(τ/10⁴, 0.5/E_Σ)`: the exponential integrator is exact for frozen `H`,
/// so the step only has to resolve how quickly the hopping phase turns.
pub fn default_dt(params: &CircuitParams, duration: f64) -> f64 {
    (duration / 1e4).min(0.5 / params.e_sigma())
}
