//! Gauge-invariant Berry phases and curvature over the `{Φ, Q}` plane.
//!
//! Phases come from discrete Wilson loops, `θ = -arg ∏ₖ ⟨ψₖ|ψₖ₊₁⟩`, which do
//! not care about the phase each eigensolve happens to return. The gate angle
//! is `Θ = θ_odd - θ_even` wrapped to `(-π, π]`; with `E₂ > E₂'` the standard
//! (clockwise) loop gives `Θ ≈ π - 𝒜η > 0`.

mod analytic;
mod curvature;
mod fit;
mod path;

pub use analytic::{
    analytic_curvature_peak, analytic_curvature_total, peak_integral, peak_integral_infinite, predicted_gate_angle,
    two_level_curvature, two_level_curvature_total,
};
pub use curvature::{curvature_map, plaquette_phase, CurvatureGrid, GridSpec};
pub use fit::{fit_a, slope_through_origin, FitA};
pub use path::{standard_loop, ControlPath, DEFAULT_DPHI, DEFAULT_DQ};

use crate::circuit::{lowest_state, ChargeBasis, CircuitParams, ControlPoint, Parity};
use crate::error::{invalid, Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Wrap to `(-π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Ground states of one parity sector at every point, plus the smallest
/// in-sector gap met.
pub fn path_ground_states(
    params: &CircuitParams,
    points: &[ControlPoint],
    parity: Parity,
    basis: ChargeBasis,
) -> Result<(Vec<Vec<Complex64>>, f64)> {
    let charges = basis.charges(parity);
    let solved: Vec<_> = points.par_iter().map(|&p| lowest_state(params, p, &charges)).collect::<Result<_>>()?;
    let min_gap = solved.iter().map(|g| g.gap).fold(f64::INFINITY, f64::min);
    Ok((solved.into_iter().map(|g| g.state).collect(), min_gap))
}

/// `-arg ∏ₖ ⟨ψₖ|ψₖ₊₁⟩` around a cyclic list (the successor of the last state
/// is the first). `points` only labels errors.
pub fn loop_phase(states: &[Vec<Complex64>], points: &[ControlPoint]) -> Result<f64> {
    let n = states.len();
    let mut prod = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let ov = inner(&states[k], &states[(k + 1) % n]);
        let mag = ov.norm();
        if mag < 0.5 {
            let p = points.get(k).copied().unwrap_or(ControlPoint::new(f64::NAN, f64::NAN));
            return Err(Error::CoarseDiscretization { phi: p.phi, q: p.q, overlap: mag });
        }
        // Keep the running product on the unit circle.
        prod = prod * ov / mag;
    }
    Ok(-prod.arg())
}

/// Berry phase of the parity-sector ground state around a closed path.
pub fn wilson_loop_phase(
    params: &CircuitParams,
    path: &ControlPath,
    parity: Parity,
    basis: ChargeBasis,
) -> Result<f64> {
    Ok(sector_phase(params, path, parity, basis)?.0)
}

fn sector_phase(params: &CircuitParams, path: &ControlPath, parity: Parity, basis: ChargeBasis) -> Result<(f64, f64)> {
    if !path.closed {
        return Err(invalid("path", "Wilson loop needs a closed path"));
    }
    let pts = path.sample_cyclic();
    let (states, gap) = path_ground_states(params, &pts, parity, basis)?;
    Ok((loop_phase(&states, &pts)?, gap))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BerryResult {
    pub theta_even: f64,
    pub theta_odd: f64,
    /// `θ_odd - θ_even` wrapped to `(-π, π]`.
    pub gate_angle: f64,
    pub min_gap_on_path: f64,
}

pub fn gate_angle(params: &CircuitParams, path: &ControlPath, basis: ChargeBasis) -> Result<BerryResult> {
    let (theta_even, g_even) = sector_phase(params, path, Parity::Even, basis)?;
    let (theta_odd, g_odd) = sector_phase(params, path, Parity::Odd, basis)?;
    Ok(BerryResult {
        theta_even,
        theta_odd,
        gate_angle: wrap_angle(theta_odd - theta_even),
        min_gap_on_path: g_even.min(g_odd),
    })
}
