use super::synth::synthesize_with;
use super::{ErrorReport, NoiseSpec};
use crate::berry::wrap_angle;
use crate::circuit::{ChargeBasis, CircuitParams};
use crate::dynamics::{evolve_with, GateOptions, Schedule};
use crate::error::{invalid, Result};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloOptions {
    pub n_samples: usize,
    pub seed: u64,
    pub dt: f64,
    pub gate: GateOptions,
}

/// One noisy gate, compared with the noiseless run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseSample {
    pub index: usize,
    /// Extra relative phase `arg⟨ideal_odd|real_odd⟩ - arg⟨ideal_even|real_even⟩`.
    pub gamma: f64,
    /// `1 - |⟨ideal|real⟩|` for the equal superposition of the two parities.
    pub infidelity: f64,
    pub overlap_even: f64,
    pub overlap_odd: f64,
    /// RMS of the charge-offset trajectory over the gate.
    pub rms_offset: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloReport {
    pub seed: u64,
    pub noise: NoiseSpec,
    pub summary: ErrorReport,
    pub gamma_mean: f64,
    pub samples: Vec<NoiseSample>,
}

/// Independent stream per sample: the master seed fixes the key, the sample
/// index selects the stream, so results do not depend on scheduling.
fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Run the holonomic gate `n_samples` times with 1/f noise added to `Q(t)`
/// and compare every run with the noiseless one.
pub fn monte_carlo_infidelity(
    params: &CircuitParams,
    tau_gate: f64,
    noise: &NoiseSpec,
    options: &MonteCarloOptions,
    basis: ChargeBasis,
) -> Result<MonteCarloReport> {
    noise.validate()?;
    if options.n_samples == 0 {
        return Err(invalid("n_samples", "need at least one sample"));
    }
    let schedule = Schedule::holonomic(options.gate.margin_q, tau_gate, options.gate.vertical_fraction)?;
    let dt = options.dt;
    let ideal = evolve_with(params, &schedule, basis, dt, None, false)?;

    let samples = (0..options.n_samples)
        .into_par_iter()
        .map(|index| {
            let mut rng = sample_rng(options.seed, index);
            let traj = synthesize_with(noise, tau_gate, dt, &mut rng)?;
            let offset = |t: f64| traj.at(t);
            let real = evolve_with(params, &schedule, basis, dt, Some(&offset), false)?;
            let oe = dot(&ideal.even.final_state, &real.even.final_state);
            let oo = dot(&ideal.odd.final_state, &real.odd.final_state);
            let rms = (traj.values.iter().map(|v| v * v).sum::<f64>() / traj.values.len() as f64).sqrt();
            Ok(NoiseSample {
                index,
                gamma: wrap_angle(oo.arg() - oe.arg()),
                infidelity: (1.0 - (0.5 * (oe + oo)).norm()).clamp(0.0, 1.0),
                overlap_even: oe.norm(),
                overlap_odd: oo.norm(),
                rms_offset: rms,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let n = samples.len() as f64;
    let mean = |f: fn(&NoiseSample) -> f64| samples.iter().map(f).sum::<f64>() / n;
    let inf = mean(|s| s.infidelity);
    let gamma_sq = mean(|s| s.gamma * s.gamma);
    let ci = (samples.len() >= 100).then(|| {
        let var = samples.iter().map(|s| (s.infidelity - inf).powi(2)).sum::<f64>() / (n - 1.0);
        let half = 1.96 * (var / n).sqrt();
        ((inf - half).max(0.0), (inf + half).min(1.0))
    });
    Ok(MonteCarloReport {
        seed: options.seed,
        noise: *noise,
        summary: ErrorReport {
            delta_theta: None,
            relative_error: None,
            gamma_sq_mean: Some(gamma_sq),
            infidelity: Some(inf),
            infidelity_ci: ci,
            samples: samples.len(),
        },
        gamma_mean: mean(|s| s.gamma),
        samples,
    })
}
