use super::{gate_angle, ControlPath};
use crate::circuit::{ChargeBasis, CircuitParams};
use crate::error::{invalid, Result};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Serialize)]
pub struct FitA {
    pub a: f64,
    /// Standard error of the slope; `None` for a single point.
    pub uncertainty: Option<f64>,
    pub etas: Vec<f64>,
    pub thetas: Vec<f64>,
    /// `(π - |Θ|) - 𝒜η` per point.
    pub residuals: Vec<f64>,
}

/// Least-squares slope of `π - |Θ|` against `η` through the origin.
///
/// `e_sigma` and `e_c_dimless` fix the device family; each `η` sets
/// `E₂ - E₂' = η e_C E_Σ`.
pub fn fit_a(e_sigma: f64, e_c_dimless: f64, etas: &[f64], path: &ControlPath, basis: ChargeBasis) -> Result<FitA> {
    if etas.is_empty() || etas.iter().any(|&e| !(e > 0.0)) {
        return Err(invalid("eta_values", "need at least one positive eta"));
    }
    let mut thetas = Vec::with_capacity(etas.len());
    for &eta in etas {
        let p = CircuitParams::from_ratios(e_sigma, e_c_dimless, eta)?;
        thetas.push(gate_angle(&p, path, basis)?.gate_angle);
    }
    Ok(slope_through_origin(etas, &thetas))
}

/// The same fit for angles already computed.
pub fn slope_through_origin(etas: &[f64], thetas: &[f64]) -> FitA {
    let ys: Vec<f64> = thetas.iter().map(|t| PI - t.abs()).collect();
    let sxx: f64 = etas.iter().map(|x| x * x).sum();
    let sxy: f64 = etas.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let a = sxy / sxx;
    let residuals: Vec<f64> = etas.iter().zip(&ys).map(|(x, y)| y - a * x).collect();
    let n = etas.len();
    let uncertainty = (n > 1).then(|| {
        let s2 = residuals.iter().map(|r| r * r).sum::<f64>() / (n - 1) as f64;
        (s2 / sxx).sqrt()
    });
    FitA { a, uncertainty, etas: etas.to_vec(), thetas: thetas.to_vec(), residuals }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line_recovered() {
        let etas = [0.02, 0.05, 0.1];
        let thetas: Vec<f64> = etas.iter().map(|e| PI - 3.0 * e).collect();
        let f = slope_through_origin(&etas, &thetas);
        assert!((f.a - 3.0).abs() < 1e-12);
        assert!(f.uncertainty.unwrap() < 1e-10);
    }

    #[test]
    fn single_point_has_no_uncertainty() {
        let f = slope_through_origin(&[0.1], &[PI - 0.3]);
        assert!((f.a - 3.0).abs() < 1e-12);
        assert!(f.uncertainty.is_none());
    }
}
