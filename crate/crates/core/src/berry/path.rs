use crate::circuit::ControlPoint;
use crate::error::{invalid, require_finite, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Default flux step along horizontal segments (1000 points per π).
pub const DEFAULT_DPHI: f64 = 0.001 * PI;
/// Default charge step along vertical segments.
pub const DEFAULT_DQ: f64 = 0.01;

/// Piecewise-linear path in `{Φ, Q}`. A closed path returns to its first
/// vertex; the closing vertex is implicit in `vertices`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlPath {
    pub vertices: Vec<ControlPoint>,
    pub closed: bool,
    pub dphi: f64,
    pub dq: f64,
}

impl ControlPath {
    pub fn new(vertices: Vec<ControlPoint>, closed: bool, dphi: f64, dq: f64) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(invalid("vertices", "a path needs at least two vertices"));
        }
        for v in &vertices {
            require_finite(v.phi, "vertex phi")?;
            require_finite(v.q, "vertex q")?;
        }
        if !(dphi > 0.0 && dq > 0.0 && dphi.is_finite() && dq.is_finite()) {
            return Err(invalid("dphi/dq", "step sizes must be positive and finite"));
        }
        Ok(Self { vertices, closed, dphi, dq })
    }

    /// Clockwise rectangle in the `(Φ, Q)` plane:
    /// `(Φ_l, Q_t) → (Φ_r, Q_t) → (Φ_r, Q_b) → (Φ_l, Q_b) → back`.
    pub fn rectangle(phi_left: f64, phi_right: f64, q_top: f64, q_bottom: f64) -> Result<Self> {
        Self::new(
            vec![
                ControlPoint::new(phi_left, q_top),
                ControlPoint::new(phi_right, q_top),
                ControlPoint::new(phi_right, q_bottom),
                ControlPoint::new(phi_left, q_bottom),
            ],
            true,
            DEFAULT_DPHI,
            DEFAULT_DQ,
        )
    }

    pub fn with_steps(mut self, dphi: f64, dq: f64) -> Result<Self> {
        if !(dphi > 0.0 && dq > 0.0) {
            return Err(invalid("dphi/dq", "step sizes must be positive"));
        }
        self.dphi = dphi;
        self.dq = dq;
        Ok(self)
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Self { vertices: v, ..self.clone() }
    }

    fn segments(&self) -> Vec<(ControlPoint, ControlPoint)> {
        let n = self.vertices.len();
        let last = if self.closed { n } else { n - 1 };
        (0..last).map(|i| (self.vertices[i], self.vertices[(i + 1) % n])).collect()
    }

    fn steps(&self, a: ControlPoint, b: ControlPoint) -> usize {
        // The shrink factor keeps exact multiples (π / 0.001π) from rounding up.
        let shrink = 1.0 - 1e-9;
        let sp = ((b.phi - a.phi).abs() / self.dphi * shrink).ceil();
        let sq = ((b.q - a.q).abs() / self.dq * shrink).ceil();
        (sp.max(sq) as usize).max(1)
    }

    /// Sampled points including both ends; for closed paths the final point
    /// equals the first.
    pub fn sample(&self) -> Vec<ControlPoint> {
        let mut pts = self.sample_cyclic();
        pts.push(if self.closed { self.vertices[0] } else { *self.vertices.last().unwrap() });
        pts
    }

    /// Sampled points without the closing duplicate: for a closed path the
    /// successor of the last point is the first one.
    pub fn sample_cyclic(&self) -> Vec<ControlPoint> {
        let mut pts = Vec::new();
        for (a, b) in self.segments() {
            let m = self.steps(a, b);
            for j in 0..m {
                pts.push(a.lerp(b, j as f64 / m as f64));
            }
        }
        pts
    }

    /// Sample counts per segment, in traversal order.
    pub fn segment_steps(&self) -> Vec<usize> {
        self.segments().into_iter().map(|(a, b)| self.steps(a, b)).collect()
    }
}

/// The gate loop `(0, +m) → (π, +m) → (π, -m) → (0, -m) → close`.
pub fn standard_loop(margin_q: f64) -> Result<ControlPath> {
    if !(margin_q > 0.0 && margin_q <= 0.5) {
        return Err(invalid("margin_q", format!("must lie in (0, 1/2], got {margin_q}")));
    }
    ControlPath::rectangle(0.0, PI, margin_q, -margin_q)
}
