use super::NoiseSpec;
use crate::error::{invalid, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::FftPlanner;
use serde::Serialize;
use std::f64::consts::PI;

/// Longest record the synthesiser will build.
pub const MAX_RECORD: usize = 1 << 24;

/// Frequency resolution relative to `f_min`: the coarse low end of the 1/f
/// comb otherwise overstates the band variance.
const RECORD_OVERSAMPLE: f64 = 8.0;

/// Uniformly sampled charge-offset trajectory starting at `t = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoiseTrajectory {
    pub dt: f64,
    pub values: Vec<f64>,
}

impl NoiseTrajectory {
    pub fn duration(&self) -> f64 {
        self.dt * (self.values.len() - 1) as f64
    }

    /// Linear interpolation, clamped at the ends.
    pub fn at(&self, t: f64) -> f64 {
        let x = (t / self.dt).max(0.0);
        let k = x.floor() as usize;
        if k + 1 >= self.values.len() {
            return *self.values.last().unwrap();
        }
        let s = x - k as f64;
        self.values[k] * (1.0 - s) + self.values[k + 1] * s
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { dt: self.dt, values: self.values.iter().map(|v| v * factor).collect() }
    }
}

/// Random-phase spectral synthesis of `S(f) = A/f`.
///
/// The record is lengthened to `8/f_min` so the lower cutoff is resolved; each bin `f_k` in `[f_min, f_max]` gets amplitude
/// `√(2 A Δf / f_k)` and a uniform phase. Only the first `duration/dt + 1`
/// samples are returned.
pub fn synthesize_one_over_f(noise: &NoiseSpec, duration: f64, dt: f64, seed: u64) -> Result<NoiseTrajectory> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    synthesize_with(noise, duration, dt, &mut rng)
}

pub(crate) fn synthesize_with(
    noise: &NoiseSpec,
    duration: f64,
    dt: f64,
    rng: &mut ChaCha8Rng,
) -> Result<NoiseTrajectory> {
    noise.validate()?;
    if !(dt > 0.0 && duration > 0.0) {
        return Err(invalid("duration/dt", "must be positive"));
    }
    let wanted = (duration / dt * (1.0 - 1e-12)).ceil() as usize + 1;
    if wanted < 16 {
        return Err(invalid("duration/dt", "need at least 16 samples"));
    }
    if noise.f_max > 0.5 / dt * (1.0 + 1e-12) {
        return Err(invalid("f_max", format!("above the Nyquist frequency {} GHz of dt", 0.5 / dt)));
    }
    let n = wanted.max((RECORD_OVERSAMPLE / (noise.f_min * dt)).ceil() as usize);
    if n > MAX_RECORD {
        return Err(invalid("f_min", "too low to represent with this dt"));
    }
    let df = 1.0 / (n as f64 * dt);
    let k_min = (noise.f_min / df * (1.0 - 1e-12)).ceil().max(1.0) as usize;
    let k_max = ((noise.f_max / df * (1.0 + 1e-12)).floor() as usize).min(n / 2);
    if k_min > k_max {
        return Err(invalid("f_min/f_max", "band contains no frequency of the record"));
    }

    let a = noise.a();
    let mut spec = vec![Complex64::new(0.0, 0.0); n];
    for (k, slot) in spec.iter_mut().enumerate().take(k_max + 1).skip(k_min) {
        let phase: f64 = rng.gen::<f64>() * 2.0 * PI;
        let amp = (2.0 * a * df / (k as f64 * df)).sqrt();
        *slot = Complex64::from_polar(amp, phase);
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut spec);
    Ok(NoiseTrajectory { dt, values: spec.iter().take(wanted).map(|z| z.re).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_amplitude_is_silent() {
        let spec = NoiseSpec::new(0.0, 0.01, 10.0).unwrap();
        let x = synthesize_one_over_f(&spec, 10.0, 0.05, 1).unwrap();
        assert_eq!(x.values.len(), 201);
        assert!(x.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn unrepresentable_cutoffs() {
        let spec = NoiseSpec::new(1e-3, 0.01, 100.0).unwrap();
        assert!(synthesize_one_over_f(&spec, 10.0, 0.05, 1).is_err());
        let spec = NoiseSpec::new(1e-3, 1e-9, 1.0).unwrap();
        assert!(synthesize_one_over_f(&spec, 10.0, 0.05, 1).is_err());
        let spec = NoiseSpec::new(1e-3, 0.01, 1.0).unwrap();
        assert!(synthesize_one_over_f(&spec, 0.5, 0.05, 1).is_err());
    }

    #[test]
    fn variance_matches_band_integral() {
        let spec = NoiseSpec::new(1.0, 0.01, 1.0).unwrap();
        let mut total = 0.0;
        let runs = 200;
        for s in 0..runs {
            let x = synthesize_one_over_f(&spec, 100.0, 0.25, s).unwrap();
            total += x.values.iter().map(|v| v * v).sum::<f64>() / x.values.len() as f64;
        }
        let v = total / runs as f64;
        assert!((v / spec.variance() - 1.0).abs() < 0.05, "{v} vs {}", spec.variance());
    }

    #[test]
    fn interpolation() {
        let x = NoiseTrajectory { dt: 0.5, values: vec![0.0, 1.0, 3.0] };
        assert_eq!(x.at(0.25), 0.5);
        assert_eq!(x.at(0.75), 2.0);
        assert_eq!(x.at(5.0), 3.0);
        assert_eq!(x.duration(), 1.0);
    }
}
