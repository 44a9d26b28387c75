//! Closed-form curvature near the unprotected point `Φ = π/2`.
//!
//! Two families are provided:
//!
//! * `analytic_curvature_*` evaluate the common peak estimate
//!   `Ω = (e_C/2) δ / (δ² + α² + (e_C Q)²)^{3/2}`, which takes the
//!   longitudinal field to be `QE_C`.
//! * `two_level_curvature*` are the exact curvature of the two-charge-state
//!   model [`effective_two_level`](crate::circuit::effective_two_level), whose
//!   longitudinal field is `2QE_C`:
//!   `Ω = e_C δ / (δ² + α² + (2e_C Q)²)^{3/2}`.
//!
//! Both integrate to π over the plane; the second is twice as tall and half as
//! wide in `Q`, and is the one that tracks the full numerics.

use crate::circuit::CircuitParams;
use crate::quad::GaussLegendre;
use std::f64::consts::{FRAC_PI_2, PI};

fn kernel(prefactor: f64, delta: f64, alpha: f64, x: f64) -> f64 {
    let r2 = delta * delta + alpha * alpha + x * x;
    if r2 == 0.0 {
        return 0.0;
    }
    prefactor * delta / (r2 * r2.sqrt())
}

/// Peak estimate with longitudinal field `QE_C`, at `Φ = π/2 + alpha`.
pub fn analytic_curvature_peak(params: &CircuitParams, alpha: f64, q: f64) -> f64 {
    let ec = params.e_c_dimless();
    kernel(0.5 * ec, params.delta(), alpha, ec * q)
}

/// Exact two-level curvature at `Φ = π/2 + alpha`.
pub fn two_level_curvature(params: &CircuitParams, alpha: f64, q: f64) -> f64 {
    let ec = params.e_c_dimless();
    kernel(ec, params.delta(), alpha, 2.0 * ec * q)
}

/// Reduce `(Φ, Q)` to `α = Φ - π/2` with `Φ ∈ [0, π)` and `Q ∈ (-1, 1]`.
fn reduce(phi: f64, q: f64) -> (f64, f64) {
    let alpha = phi.rem_euclid(PI) - FRAC_PI_2;
    let mut q = q.rem_euclid(2.0);
    if q > 1.0 {
        q -= 2.0;
    }
    (alpha, q)
}

fn total(peak: impl Fn(f64, f64) -> f64, phi: f64, q: f64) -> f64 {
    let (alpha, q) = reduce(phi, q);
    // Odd peak at Q = 0 minus the even peak at the nearest odd integer.
    let partner = if q >= 0.0 { q - 1.0 } else { q + 1.0 };
    peak(alpha, q) - peak(alpha, partner)
}

/// Odd-minus-even curvature built from the `QE_C` peak estimate.
pub fn analytic_curvature_total(params: &CircuitParams, phi: f64, q: f64) -> f64 {
    total(|a, x| analytic_curvature_peak(params, a, x), phi, q)
}

/// Odd-minus-even curvature built from the exact two-level peak.
pub fn two_level_curvature_total(params: &CircuitParams, phi: f64, q: f64) -> f64 {
    total(|a, x| two_level_curvature(params, a, x), phi, q)
}

/// `Θ ≈ π - 𝒜η`.
pub fn predicted_gate_angle(params: &CircuitParams, a: f64) -> f64 {
    PI - a * params.eta()
}

/// Integral of the `QE_C` peak estimate over `|α| ≤ alpha_max`, `|Q| ≤ q_max`.
pub fn peak_integral(params: &CircuitParams, alpha_max: f64, q_max: f64) -> f64 {
    let g = GaussLegendre::new(64);
    let panels = 16;
    g.integrate_panels(-alpha_max, alpha_max, panels, |a| {
        g.integrate_panels(-q_max, q_max, panels, |q| analytic_curvature_peak(params, a, q))
    })
}

/// Integral of the `QE_C` peak estimate over the whole plane.
///
/// With `α = δ tan u` and `e_C Q = δ tan v` the integrand becomes
/// `½ sec²u sec²v / (sec²u + tan²v)^{3/2}` on the square `(-π/2, π/2)²`,
/// integrable but with a `1/r` corner singularity, handled by graded panels.
pub fn peak_integral_infinite(params: &CircuitParams) -> f64 {
    let delta = params.delta();
    let ec = params.e_c_dimless();
    let g = GaussLegendre::new(24);
    // Geometric grading towards ±π/2.
    let mut edges = vec![0.0];
    let mut gap = FRAC_PI_2;
    while gap > 1e-9 {
        gap *= 0.35;
        edges.push(FRAC_PI_2 - gap);
    }
    edges.push(FRAC_PI_2);
    let half =
        |f: &dyn Fn(f64) -> f64| -> f64 { edges.windows(2).map(|w| g.integrate(w[0], w[1], |x| f(x) + f(-x))).sum() };
    let jac = delta * delta / ec;
    half(&|u: f64| {
        let (su, cu) = (u.tan(), u.cos());
        half(&|v: f64| {
            let (sv, cv) = (v.tan(), v.cos());
            let alpha = delta * su;
            let q = delta * sv / ec;
            analytic_curvature_peak(params, alpha, q) * jac / (cu * cu * cv * cv)
        })
    })
}
