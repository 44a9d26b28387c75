use super::inner;
use crate::circuit::{lowest_state, ChargeBasis, CircuitParams, ControlPoint, Parity};
use crate::error::{invalid, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

/// Rectangular grid of `n_phi × n_q` plaquettes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub phi_min: f64,
    pub phi_max: f64,
    pub q_min: f64,
    pub q_max: f64,
    pub n_phi: usize,
    pub n_q: usize,
}

impl GridSpec {
    pub fn new(phi: (f64, f64), q: (f64, f64), n_phi: usize, n_q: usize) -> Result<Self> {
        let g = Self { phi_min: phi.0, phi_max: phi.1, q_min: q.0, q_max: q.1, n_phi, n_q };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_phi == 0 || self.n_q == 0 {
            return Err(invalid("grid", "needs at least one plaquette per axis"));
        }
        let ok = |a: f64, b: f64| a.is_finite() && b.is_finite() && b > a;
        if !ok(self.phi_min, self.phi_max) || !ok(self.q_min, self.q_max) {
            return Err(invalid("grid", "axis bounds must be finite and increasing"));
        }
        Ok(())
    }

    /// 200 × 200 over `Φ ∈ [0, π]`, `Q ∈ [-1, 1]`.
    pub fn overview() -> Self {
        Self { phi_min: 0.0, phi_max: PI, q_min: -1.0, q_max: 1.0, n_phi: 200, n_q: 200 }
    }

    /// 400 × 80 over `Φ ∈ π/2 ± 2e_C`, `Q ∈ [-1/2, 1/2]`.
    pub fn zoom(params: &CircuitParams) -> Self {
        let w = 2.0 * params.e_c_dimless();
        Self { phi_min: FRAC_PI_2 - w, phi_max: FRAC_PI_2 + w, q_min: -0.5, q_max: 0.5, n_phi: 400, n_q: 80 }
    }

    /// The interior of the standard loop at its own sampling: one plaquette
    /// per loop step, so plaquette sums telescope onto the loop.
    pub fn loop_interior(margin_q: f64) -> Self {
        Self {
            phi_min: 0.0,
            phi_max: PI,
            q_min: -margin_q,
            q_max: margin_q,
            n_phi: 1000,
            n_q: (2.0 * margin_q / super::DEFAULT_DQ).round() as usize,
        }
    }

    pub fn phi_axis(&self) -> Vec<f64> {
        axis(self.phi_min, self.phi_max, self.n_phi)
    }

    pub fn q_axis(&self) -> Vec<f64> {
        axis(self.q_min, self.q_max, self.n_q)
    }
}

fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|k| if k == n { hi } else { lo + (hi - lo) * k as f64 / n as f64 }).collect()
}

/// Plaquette curvature per sector plus the odd-minus-even difference.
/// Cell `(i, j)` spans `phi_axis[i..=i+1] × q_axis[j..=j+1]` and is stored at
/// `j * n_phi + i`. Invalid cells hold NaN.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureGrid {
    pub spec: GridSpec,
    pub phi_axis: Vec<f64>,
    pub q_axis: Vec<f64>,
    pub even: Vec<f64>,
    pub odd: Vec<f64>,
    pub diff: Vec<f64>,
    pub valid: Vec<bool>,
}

impl CurvatureGrid {
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.spec.n_phi + i
    }

    pub fn center(&self, i: usize, j: usize) -> ControlPoint {
        ControlPoint::new(0.5 * (self.phi_axis[i] + self.phi_axis[i + 1]), 0.5 * (self.q_axis[j] + self.q_axis[j + 1]))
    }

    pub fn area(&self, i: usize, j: usize) -> f64 {
        (self.phi_axis[i + 1] - self.phi_axis[i]) * (self.q_axis[j + 1] - self.q_axis[j])
    }

    /// `Σ Ω_diff · area` over valid cells whose centres lie inside the box.
    pub fn integrate_diff(&self, phi: (f64, f64), q: (f64, f64)) -> f64 {
        let mut sum = 0.0;
        for j in 0..self.spec.n_q {
            for i in 0..self.spec.n_phi {
                let c = self.center(i, j);
                let k = self.index(i, j);
                if self.valid[k] && c.phi > phi.0 && c.phi < phi.1 && c.q > q.0 && c.q < q.1 {
                    sum += self.diff[k] * self.area(i, j);
                }
            }
        }
        sum
    }

    /// Cell with the largest difference curvature.
    pub fn peak(&self) -> (usize, usize) {
        let mut best = (0, 0, f64::NEG_INFINITY);
        for j in 0..self.spec.n_q {
            for i in 0..self.spec.n_phi {
                let v = self.diff[self.index(i, j)];
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        (best.0, best.1)
    }

    pub fn invalid_count(&self) -> usize {
        self.valid.iter().filter(|v| !**v).count()
    }
}

/// `-arg` of the overlap product around a plaquette given clockwise in the
/// `(Φ, Q)` plane (top-left, top-right, bottom-right, bottom-left) — the same
/// sense as the standard loop. `None` when a link overlap drops below 0.5.
pub fn plaquette_phase(corners: [&[Complex64]; 4]) -> Option<f64> {
    let mut prod = Complex64::new(1.0, 0.0);
    for k in 0..4 {
        let ov = inner(corners[k], corners[(k + 1) % 4]);
        if ov.norm() < 0.5 {
            return None;
        }
        prod *= ov;
    }
    Some(-prod.arg())
}

fn row_states(params: &CircuitParams, phis: &[f64], q: f64, charges: &[i64]) -> Vec<Option<Vec<Complex64>>> {
    phis.par_iter().map(|&phi| lowest_state(params, ControlPoint::new(phi, q), charges).ok().map(|g| g.state)).collect()
}

/// Berry curvature of both parity sectors on a plaquette grid.
///
/// The sign follows the clockwise orientation of [`plaquette_phase`], so the
/// odd-sector peak at `(π/2, 0)` is positive and `Σ Ω_diff · area` over the
/// loop interior reproduces the Wilson-loop gate angle.
pub fn curvature_map(params: &CircuitParams, spec: &GridSpec, basis: ChargeBasis) -> Result<CurvatureGrid> {
    spec.validate()?;
    let phis = spec.phi_axis();
    let qs = spec.q_axis();
    let (np, nq) = (spec.n_phi, spec.n_q);
    let charges = [basis.charges(Parity::Even), basis.charges(Parity::Odd)];
    let mut layers = [vec![f64::NAN; np * nq], vec![f64::NAN; np * nq]];

    for (s, ch) in charges.iter().enumerate() {
        let mut below = row_states(params, &phis, qs[0], ch);
        for j in 0..nq {
            let above = row_states(params, &phis, qs[j + 1], ch);
            for i in 0..np {
                let corners = [&above[i], &above[i + 1], &below[i + 1], &below[i]];
                if corners.iter().all(|c| c.is_some()) {
                    let c = corners.map(|c| c.as_deref().unwrap());
                    if let Some(ph) = plaquette_phase(c) {
                        let area = (phis[i + 1] - phis[i]) * (qs[j + 1] - qs[j]);
                        layers[s][j * np + i] = ph / area;
                    }
                }
            }
            below = above;
        }
    }
    let [even, odd] = layers;
    let diff: Vec<f64> = odd.iter().zip(&even).map(|(o, e)| o - e).collect();
    let valid = diff.iter().map(|d| d.is_finite()).collect();
    Ok(CurvatureGrid { spec: *spec, phi_axis: phis, q_axis: qs, even, odd, diff, valid })
}
