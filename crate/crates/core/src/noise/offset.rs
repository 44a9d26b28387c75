use super::ErrorReport;
use crate::berry::{gate_angle, wrap_angle, ControlPath};
use crate::circuit::{ground_energy, ChargeBasis, CircuitParams, ControlPoint, Parity};
use crate::error::{invalid, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// How a static charge offset `ε` moves the horizontal legs of the loop.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OffsetShift {
    /// Only the upper leg moves: `Q = 1/2 + ε`.
    #[default]
    TopOnly,
    /// Both legs move outward: `Q = ±(1/2 + ε)`.
    SymmetricOutward,
    /// The whole loop moves: `Q = ±1/2 + ε`.
    Rigid,
}

impl OffsetShift {
    fn legs(self, margin: f64, eps: f64) -> (f64, f64) {
        match self {
            OffsetShift::TopOnly => (margin + eps, -margin),
            OffsetShift::SymmetricOutward => (margin + eps, -margin - eps),
            OffsetShift::Rigid => (margin + eps, -margin + eps),
        }
    }
}

fn loop_theta(params: &CircuitParams, q_top: f64, q_bottom: f64, phi: (f64, f64), basis: ChargeBasis) -> Result<f64> {
    let path = ControlPath::rectangle(phi.0, phi.1, q_top, q_bottom)?;
    Ok(gate_angle(params, &path, basis)?.gate_angle)
}

fn report(theta: f64, nominal: f64) -> ErrorReport {
    let d = wrap_angle(theta - nominal);
    ErrorReport {
        delta_theta: Some(d),
        relative_error: Some(d / (PI - nominal)),
        gamma_sq_mean: None,
        infidelity: None,
        infidelity_ci: None,
        samples: 1,
    }
}

/// `ΔΘ` of the standard loop when its upper leg is displaced to
/// `Q = 1/2 + eps_q`.
pub fn static_offset_error(params: &CircuitParams, eps_q: f64, basis: ChargeBasis) -> Result<ErrorReport> {
    Ok(static_offset_error_on(params, &[eps_q], OffsetShift::TopOnly, basis)?.remove(0))
}

/// `ΔΘ` for a list of offsets, sharing one nominal loop evaluation.
pub fn static_offset_error_on(
    params: &CircuitParams,
    eps_q: &[f64],
    shift: OffsetShift,
    basis: ChargeBasis,
) -> Result<Vec<ErrorReport>> {
    if let Some(e) = eps_q.iter().find(|e| !(e.abs() < 0.1)) {
        return Err(invalid("eps_q", format!("{e} is outside the perturbative range |ε| < 0.1")));
    }
    let nominal = loop_theta(params, 0.5, -0.5, (0.0, PI), basis)?;
    eps_q
        .iter()
        .map(|&eps| {
            if eps == 0.0 {
                return Ok(report(nominal, nominal));
            }
            let (top, bottom) = shift.legs(0.5, eps);
            Ok(report(loop_theta(params, top, bottom, (0.0, PI), basis)?, nominal))
        })
        .collect()
}

/// Change of Θ when the vertical legs sit at `Φ = dphi_left` and
/// `Φ = π + dphi_right` instead of `0` and `π`. Equal shifts move the loop
/// by a whole period of the curvature and change nothing.
pub fn static_flux_error(params: &CircuitParams, dphi_left: f64, dphi_right: f64, basis: ChargeBasis) -> Result<f64> {
    let nominal = loop_theta(params, 0.5, -0.5, (0.0, PI), basis)?;
    Ok(wrap_angle(loop_theta(params, 0.5, -0.5, (dphi_left, PI + dphi_right), basis)? - nominal))
}

/// `d(E_even - E_odd)/dQ` by central differences of the sector ground
/// energies.
pub fn dispersion_slope(params: &CircuitParams, point: ControlPoint, basis: ChargeBasis) -> f64 {
    let h = 1e-4;
    let split = |q: f64| {
        let p = ControlPoint::new(point.phi, q);
        ground_energy(params, p, &basis.charges(Parity::Even)) - ground_energy(params, p, &basis.charges(Parity::Odd))
    };
    (split(point.q + h) - split(point.q - h)) / (2.0 * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn reference() -> CircuitParams {
        CircuitParams::from_ratios(2.0 * PI * 40.0, 0.1, 0.1).unwrap()
    }

    #[test]
    fn slope_at_unprotected_point() {
        let p = reference();
        let b = ChargeBasis::default();
        let up = dispersion_slope(&p, ControlPoint::new(FRAC_PI_2, 0.5), b);
        let down = dispersion_slope(&p, ControlPoint::new(FRAC_PI_2, -0.5), b);
        let expect = p.e_sigma() * p.e_c_dimless();
        assert!((up / expect - 1.0).abs() < 0.05, "{up} vs {expect}");
        assert!((down / expect + 1.0).abs() < 0.05);
    }

    #[test]
    fn slope_is_exponentially_small_when_protected() {
        let p = CircuitParams::from_ratios(2.0 * PI * 40.0, 0.02, 0.0).unwrap();
        let s = dispersion_slope(&p, ControlPoint::new(0.0, 0.5), ChargeBasis::default());
        assert!(s.abs() < 1e-6 * p.e_c, "{s}");
    }

    #[test]
    fn shift_geometry() {
        assert_eq!(OffsetShift::TopOnly.legs(0.5, 0.01), (0.51, -0.5));
        assert_eq!(OffsetShift::SymmetricOutward.legs(0.5, 0.01), (0.51, -0.51));
        assert_eq!(OffsetShift::Rigid.legs(0.5, 0.01), (0.51, -0.49));
    }

    #[test]
    fn out_of_range_offset() {
        assert!(static_offset_error(&reference(), 0.2, ChargeBasis::new(20).unwrap()).is_err());
    }
}
