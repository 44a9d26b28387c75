use super::evolve::run_sector;
use super::landau_zener_probability;
use super::schedule::Schedule;
use crate::circuit::{ChargeBasis, CircuitParams, ControlPoint, Parity};
use crate::error::Result;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LzPoint {
    pub tau: f64,
    pub p_even: f64,
    pub p_odd: f64,
    pub p_lz: f64,
}

impl LzPoint {
    pub fn p_measured(&self) -> f64 {
        0.5 * (self.p_even + self.p_odd)
    }
}

/// Excitation after a single passage `Φ: 0 → π` along the degeneracy line
/// `Q = 1/2`, taking `τ/2` — the half of a gate of duration `τ` in which the
/// state crosses the unprotected window once.
///
/// A full loop contains two such passages per parity whose amplitudes
/// interfere, so its leakage oscillates around this value as `τ` varies.
pub fn landau_zener_passage(params: &CircuitParams, tau: f64, basis: ChargeBasis, dt: f64) -> Result<LzPoint> {
    let schedule = Schedule::new(vec![(0.0, ControlPoint::new(0.0, 0.5)), (0.5 * tau, ControlPoint::new(PI, 0.5))])?;
    let even = run_sector(params, &schedule, Parity::Even, basis, dt, None, false)?;
    let odd = run_sector(params, &schedule, Parity::Odd, basis, dt, None, false)?;
    Ok(LzPoint { tau, p_even: even.leakage, p_odd: odd.leakage, p_lz: landau_zener_probability(params, tau) })
}
