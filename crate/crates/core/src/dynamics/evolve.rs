use super::propagate::{check_guard, Stepper, C1, C2};
use super::schedule::Schedule;
use crate::berry::wrap_angle;
use crate::circuit::{ground_energy, lowest_state, ChargeBasis, CircuitParams, ControlPoint, Parity};
use crate::error::{invalid, Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// Largest tolerated deviation of `‖ψ‖` from one.
pub const NORM_TOLERANCE: f64 = 1e-8;

/// Additive offset on the scheduled charge, `Q(t) → Q(t) + δQ(t)`.
pub type ChargeOffset<'a> = &'a (dyn Fn(f64) -> f64 + Sync);

#[derive(Debug, Clone, Default)]
pub(crate) struct Bookkeeping {
    pub energy_integral: f64,
    pub norm_drift: f64,
    pub steps: usize,
}

/// Integrate `i dψ/dt = H(t) ψ` in place. With `track_energy` the ground
/// energy is integrated alongside (2-point Gauss per step).
pub(crate) fn propagate(
    params: &CircuitParams,
    schedule: &Schedule,
    charges: &[i64],
    dt: f64,
    psi: &mut [Complex64],
    offset: Option<ChargeOffset>,
    track_energy: bool,
) -> Result<Bookkeeping> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(invalid("dt", "time step must be positive"));
    }
    let total = schedule.duration();
    let steps = (total / dt * (1.0 - 1e-12)).ceil().max(1.0) as usize;
    let h = total / steps as f64;
    let control = |t: f64| {
        let mut p = schedule.at(t);
        if let Some(f) = offset {
            p.q += f(t);
        }
        p
    };
    let mut stepper = Stepper::new(params, charges);
    let mut book = Bookkeeping { steps, ..Default::default() };
    for k in 0..steps {
        let t0 = k as f64 * h;
        let g1 = control(t0 + C1 * h);
        let g2 = control(t0 + C2 * h);
        check_guard(h * stepper.change_norm(g1, g2) / (C2 - C1), h)?;
        stepper.step(g1, g2, h, psi)?;

        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        book.norm_drift = book.norm_drift.max((norm - 1.0).abs());
        if !norm.is_finite() {
            return Err(Error::NonFinite { context: "state vector" });
        }
        if book.norm_drift > NORM_TOLERANCE {
            return Err(Error::IntegrationFailure {
                drift: book.norm_drift,
                limit: NORM_TOLERANCE,
                suggested: 0.5 * h,
            });
        }
        if track_energy {
            book.energy_integral += 0.5 * h * (ground_energy(params, g1, charges) + ground_energy(params, g2, charges));
        }
    }
    Ok(book)
}

pub(crate) fn overlap(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// One parity sector evolved from its ground state at the schedule start.
#[derive(Debug, Clone, Serialize)]
pub struct SectorEvolution {
    pub parity: Parity,
    pub charges: Vec<i64>,
    pub initial_ground: Vec<Complex64>,
    pub final_ground: Vec<Complex64>,
    pub final_state: Vec<Complex64>,
    /// `1 - |⟨ground(T)|ψ(T)⟩|²`.
    pub leakage: f64,
    /// `⟨ground(T)|ψ(T)⟩`.
    pub final_overlap: Complex64,
    /// `∫ E_ground dt` along the schedule.
    pub energy_integral: f64,
    pub norm_drift: f64,
    pub steps: usize,
}

impl SectorEvolution {
    /// `-∫E dt`.
    pub fn dynamic_phase(&self) -> f64 {
        -self.energy_integral
    }

    /// `arg⟨ground(T)|ψ(T)⟩` (wrapped).
    pub fn total_phase(&self) -> f64 {
        self.final_overlap.arg()
    }

    /// Total phase with the dynamic phase removed. For a closed schedule the
    /// reference state is the same at both ends and this is the Berry phase
    /// picked up by the state.
    pub fn geometric_phase(&self) -> f64 {
        wrap_angle(self.total_phase() + self.energy_integral)
    }
}

/// Both parities run through the same schedule.
#[derive(Debug, Clone, Serialize)]
pub struct EvolutionResult {
    pub even: SectorEvolution,
    pub odd: SectorEvolution,
}

impl EvolutionResult {
    pub fn sector(&self, parity: Parity) -> &SectorEvolution {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn norm_drift(&self) -> f64 {
        self.even.norm_drift.max(self.odd.norm_drift)
    }
}

/// Evolve the ground state of one parity sector through `schedule`.
pub fn evolve_sector(
    params: &CircuitParams,
    schedule: &Schedule,
    parity: Parity,
    basis: ChargeBasis,
    dt: f64,
) -> Result<SectorEvolution> {
    run_sector(params, schedule, parity, basis, dt, None, true)
}

pub(crate) fn run_sector(
    params: &CircuitParams,
    schedule: &Schedule,
    parity: Parity,
    basis: ChargeBasis,
    dt: f64,
    offset: Option<ChargeOffset>,
    track_energy: bool,
) -> Result<SectorEvolution> {
    let charges = basis.charges(parity);
    let g0 = lowest_state(params, schedule.start(), &charges)?.state;
    let g1 = if schedule.end() == schedule.start() {
        g0.clone()
    } else {
        lowest_state(params, schedule.end(), &charges)?.state
    };
    let mut psi = g0.clone();
    let book = propagate(params, schedule, &charges, dt, &mut psi, offset, track_energy)?;
    let ov = overlap(&g1, &psi);
    Ok(SectorEvolution {
        parity,
        charges,
        initial_ground: g0,
        final_ground: g1,
        leakage: (1.0 - ov.norm_sqr()).clamp(0.0, 1.0),
        final_overlap: ov,
        final_state: psi,
        energy_integral: book.energy_integral,
        norm_drift: book.norm_drift,
        steps: book.steps,
    })
}

/// Evolve both parity sectors (concurrently) through `schedule`.
pub fn evolve(params: &CircuitParams, schedule: &Schedule, basis: ChargeBasis, dt: f64) -> Result<EvolutionResult> {
    evolve_with(params, schedule, basis, dt, None, true)
}

pub(crate) fn evolve_with(
    params: &CircuitParams,
    schedule: &Schedule,
    basis: ChargeBasis,
    dt: f64,
    offset: Option<ChargeOffset>,
    track_energy: bool,
) -> Result<EvolutionResult> {
    let (even, odd) = rayon::join(
        || run_sector(params, schedule, Parity::Even, basis, dt, offset, track_energy),
        || run_sector(params, schedule, Parity::Odd, basis, dt, offset, track_energy),
    );
    Ok(EvolutionResult { even: even?, odd: odd? })
}

/// Evolve an arbitrary initial vector of one sector (no bookkeeping beyond
/// the norm guard).
pub fn evolve_state(
    params: &CircuitParams,
    schedule: &Schedule,
    charges: &[i64],
    dt: f64,
    initial: &[Complex64],
) -> Result<Vec<Complex64>> {
    if initial.len() != charges.len() {
        return Err(invalid("initial", "state length must match the sector size"));
    }
    let mut psi = initial.to_vec();
    propagate(params, schedule, charges, dt, &mut psi, None, false)?;
    Ok(psi)
}

/// Ground state of a sector at a point (convenience for callers preparing
/// initial states).
pub fn sector_ground(params: &CircuitParams, point: ControlPoint, charges: &[i64]) -> Result<Vec<Complex64>> {
    Ok(lowest_state(params, point, charges)?.state)
}
