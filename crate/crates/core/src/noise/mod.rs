//! Charge-noise error models.
//!
//! Two distinct channels are kept apart: a slow drift of the charge offset,
//! modelled as a static shift of the loop (`static_offset_error`), and fast
//! 1/f noise added to the scheduled `Q(t)` (`NoiseSpec`, Monte Carlo).

mod dephasing;
mod monte_carlo;
mod offset;
mod synth;

pub use dephasing::{
    dephasing_filter_integral, dynamic_phase_variance_analytic, effective_unprotected_time, DephasingEstimate,
};
pub use monte_carlo::{monte_carlo_infidelity, MonteCarloOptions, MonteCarloReport, NoiseSample};
pub use offset::{dispersion_slope, static_flux_error, static_offset_error, static_offset_error_on, OffsetShift};
pub use synth::{synthesize_one_over_f, NoiseTrajectory, MAX_RECORD};

use crate::error::{invalid, Result};
use serde::{Deserialize, Serialize};

/// 1/f charge noise: one-sided spectral density `S(f) = A/f` (equivalently
/// `A/ω` per unit angular frequency) between `f_min` and `f_max` (GHz), so
/// that each decade carries variance `A ln 10`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    /// `√A`, in units of `2e`.
    pub amplitude_sqrt_a: f64,
    pub f_min: f64,
    pub f_max: f64,
}

impl NoiseSpec {
    pub fn new(amplitude_sqrt_a: f64, f_min: f64, f_max: f64) -> Result<Self> {
        let s = Self { amplitude_sqrt_a, f_min, f_max };
        s.validate()?;
        Ok(s)
    }

    /// Cutoffs `1/(10 τ)` and the Nyquist frequency of `dt`.
    pub fn for_gate(amplitude_sqrt_a: f64, tau_gate: f64, dt: f64) -> Result<Self> {
        Self::new(amplitude_sqrt_a, 0.1 / tau_gate, 0.5 / dt)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.amplitude_sqrt_a >= 0.0 && self.amplitude_sqrt_a.is_finite()) {
            return Err(invalid("amplitude_sqrt_a", "must be finite and non-negative"));
        }
        if !(self.f_min > 0.0 && self.f_min < self.f_max && self.f_max.is_finite()) {
            return Err(invalid("f_min/f_max", "need 0 < f_min < f_max"));
        }
        Ok(())
    }

    pub fn a(&self) -> f64 {
        self.amplitude_sqrt_a * self.amplitude_sqrt_a
    }

    /// Total variance `A ln(f_max/f_min)`.
    pub fn variance(&self) -> f64 {
        self.a() * (self.f_max / self.f_min).ln()
    }
}

/// Summary of one error estimate. Fields that a given model does not produce
/// are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorReport {
    pub delta_theta: Option<f64>,
    /// Error of the non-discrete part, `ΔΘ / (π - Θ)`.
    pub relative_error: Option<f64>,
    pub gamma_sq_mean: Option<f64>,
    /// `1 - F` with `F = |⟨ideal|real⟩|` (amplitude, not squared).
    pub infidelity: Option<f64>,
    /// 95% interval on the mean infidelity.
    pub infidelity_ci: Option<(f64, f64)>,
    pub samples: usize,
}
