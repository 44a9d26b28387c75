use super::offset::dispersion_slope;
use super::NoiseSpec;
use crate::circuit::{ChargeBasis, CircuitParams, ControlPoint};
use crate::dynamics::Schedule;
use crate::error::{invalid, Result};
use crate::quad::GaussLegendre;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DephasingEstimate {
    pub tau_u: f64,
    /// `ΔE₁₀` per unit charge offset at `(π/2, 1/2)`.
    pub slope: f64,
    /// `A ΔE² ∫dω/ω (sin(ωτ/2)/(ω/2))²` between the noise cutoffs.
    pub gamma_sq: f64,
    /// `A (ΔE τ_u)²`.
    pub gamma_sq_closed: f64,
    /// `γ̄²/2` from the integral.
    pub infidelity: f64,
    pub infidelity_closed: f64,
}

/// `∫ dω/ω (sin(ωτ/2)/(ω/2))²` over `[ω_min, ω_max]` (units of time²).
/// Log-spaced panels cover the low-frequency plateau;
/// the oscillating `1/ω³` tail is integrated period by period.
pub fn dephasing_filter_integral(tau: f64, omega_min: f64, omega_max: f64) -> f64 {
    let gl = GaussLegendre::new(16);
    let filter = |w: f64| {
        let s = (0.5 * w * tau).sin() / (0.5 * w);
        s * s
    };
    let w_c = omega_max.min(20.0 * PI / tau).max(omega_min);
    let (x0, x1) = (omega_min.ln(), w_c.ln());
    let panels = ((x1 - x0) * 8.0).ceil().max(1.0) as usize;
    let mut total = gl.integrate_panels(x0, x1, panels, |x| filter(x.exp()));
    if omega_max > w_c {
        let period = 2.0 * PI / tau;
        let n = ((omega_max - w_c) / period).ceil().min(1e5) as usize;
        let end = (w_c + n as f64 * period).min(omega_max);
        total += gl.integrate_panels(w_c, end, n.max(1), |w| filter(w) / w);
    }
    total
}

/// Mean-square dynamic phase picked up during an unprotected window `tau_u`
/// with dispersion `ΔE₁₀ ε`, for 1/f noise. An order estimate only: the
/// window is modelled as a single square pulse.
pub fn dynamic_phase_variance_analytic(
    params: &CircuitParams,
    tau_u: f64,
    noise: &NoiseSpec,
    basis: ChargeBasis,
) -> Result<DephasingEstimate> {
    noise.validate()?;
    if !(tau_u > 0.0 && tau_u.is_finite()) {
        return Err(invalid("tau_u", "must be positive"));
    }
    let slope = dispersion_slope(params, ControlPoint::new(FRAC_PI_2, 0.5), basis);
    let w = 2.0 * PI;
    let gamma_sq = noise.a() * slope * slope * dephasing_filter_integral(tau_u, w * noise.f_min, w * noise.f_max);
    let gamma_sq_closed = noise.a() * (slope * tau_u).powi(2);
    Ok(DephasingEstimate {
        tau_u,
        slope,
        gamma_sq,
        gamma_sq_closed,
        infidelity: 0.5 * gamma_sq,
        infidelity_closed: 0.5 * gamma_sq_closed,
    })
}

/// Width of the square window that carries the same integrated dispersion as
/// the horizontal legs of `schedule`: `∫|ΔE₁₀(t)| dt / ΔE₁₀(π/2, 1/2)`.
///
/// Away from `Φ = π/2` the slope falls off only algebraically until the
/// protected regime is reached, so this is longer than the time spent with
/// `E₂eff < E_C`.
pub fn effective_unprotected_time(params: &CircuitParams, schedule: &Schedule, basis: ChargeBasis) -> f64 {
    let gl = GaussLegendre::new(16);
    let peak = dispersion_slope(params, ControlPoint::new(FRAC_PI_2, 0.5), basis).abs();
    schedule
        .horizontal_legs()
        .into_iter()
        .map(|(t0, t1, _)| gl.integrate_panels(t0, t1, 64, |t| dispersion_slope(params, schedule.at(t), basis).abs()))
        .sum::<f64>()
        / peak
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_against_brute_force() {
        let (tau, w0, w1) = (0.4, 0.05, 300.0);
        let n = 2_000_000;
        let h = (w1 - w0) / n as f64;
        let brute: f64 = (0..n)
            .map(|k| {
                let w = w0 + (k as f64 + 0.5) * h;
                let s = (0.5 * w * tau).sin() / (0.5 * w);
                s * s / w * h
            })
            .sum();
        let v = dephasing_filter_integral(tau, w0, w1);
        assert!((v / brute - 1.0).abs() < 1e-6, "{v} vs {brute}");
    }

    #[test]
    fn low_frequency_plateau_is_logarithmic() {
        // Far below 1/τ the filter is τ², so each e-fold adds τ².
        let tau = 0.5;
        let a = dephasing_filter_integral(tau, 1e-4, 1e3);
        let b = dephasing_filter_integral(tau, 1e-4 / std::f64::consts::E, 1e3);
        assert!(((b - a) / (tau * tau) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn zero_amplitude_and_tau_scaling() {
        let p = CircuitParams::from_ratios(2.0 * PI * 40.0, 0.1, 0.1).unwrap();
        let b = ChargeBasis::new(40).unwrap();
        let quiet = NoiseSpec::new(0.0, 0.01, 100.0).unwrap();
        assert_eq!(dynamic_phase_variance_analytic(&p, 0.4, &quiet, b).unwrap().gamma_sq, 0.0);
        let n = NoiseSpec::new(5e-4, 0.01, 100.0).unwrap();
        let g1 = dynamic_phase_variance_analytic(&p, 0.4, &n, b).unwrap().gamma_sq_closed;
        let g2 = dynamic_phase_variance_analytic(&p, 0.8, &n, b).unwrap().gamma_sq_closed;
        assert!((g2 / g1 - 4.0).abs() < 1e-12);
    }
}
