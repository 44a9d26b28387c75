use crate::berry::ControlPath;
use crate::circuit::ControlPoint;
use crate::error::{invalid, require_finite, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Control point as a piecewise-linear function of time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    waypoints: Vec<(f64, ControlPoint)>,
}

/// Number of linear pieces used to approximate one smooth vertical ramp.
const RAMP_PIECES: usize = 40;

impl Schedule {
    /// Times must start at 0 and increase strictly.
    pub fn new(waypoints: Vec<(f64, ControlPoint)>) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(invalid("waypoints", "a schedule needs at least two waypoints"));
        }
        if waypoints[0].0 != 0.0 {
            return Err(invalid("waypoints", "first waypoint must be at t = 0"));
        }
        for (t, p) in &waypoints {
            require_finite(*t, "waypoint time")?;
            require_finite(p.phi, "waypoint phi")?;
            require_finite(p.q, "waypoint q")?;
        }
        if waypoints.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(invalid("waypoints", "times must increase strictly"));
        }
        Ok(Self { waypoints })
    }

    pub fn waypoints(&self) -> &[(f64, ControlPoint)] {
        &self.waypoints
    }

    pub fn duration(&self) -> f64 {
        self.waypoints.last().unwrap().0
    }

    pub fn start(&self) -> ControlPoint {
        self.waypoints[0].1
    }

    pub fn end(&self) -> ControlPoint {
        self.waypoints.last().unwrap().1
    }

    /// Control point at time `t`, clamped to the schedule ends.
    pub fn at(&self, t: f64) -> ControlPoint {
        let w = &self.waypoints;
        if t <= 0.0 {
            return w[0].1;
        }
        if t >= self.duration() {
            return self.end();
        }
        let k = w.partition_point(|(tk, _)| *tk <= t) - 1;
        let (t0, p0) = w[k];
        let (t1, p1) = w[k + 1];
        p0.lerp(p1, (t - t0) / (t1 - t0))
    }

    pub fn constant(point: ControlPoint, duration: f64) -> Result<Self> {
        if !(duration > 0.0) {
            return Err(invalid("duration", "must be positive"));
        }
        Self::new(vec![(0.0, point), (duration, point)])
    }

    /// Traverse a sampled path spending equal time on every sampling step.
    pub fn constant_speed(path: &ControlPath, duration: f64) -> Result<Self> {
        if !(duration > 0.0) {
            return Err(invalid("duration", "must be positive"));
        }
        let pts = path.sample();
        let n = (pts.len() - 1) as f64;
        Self::new(pts.into_iter().enumerate().map(|(k, p)| (duration * k as f64 / n, p)).collect())
    }

    /// The gate loop `(0, +m) → (π, +m) → (π, -m) → (0, -m) → (0, +m)` in time
    /// `tau`. Horizontal legs are linear in Φ and take `(1 - f)τ/2` each; the
    /// two charge ramps take `fτ/2` each and follow the smoothstep
    /// `Q = ±m(1 - 2s²(3 - 2s))`, whose vanishing end velocities avoid the
    /// power-law excitation a kinked ramp would cause.
    pub fn holonomic(margin_q: f64, tau: f64, vertical_fraction: f64) -> Result<Self> {
        if !(margin_q > 0.0 && margin_q <= 0.5) {
            return Err(invalid("margin_q", "must lie in (0, 1/2]"));
        }
        if !(tau > 0.0) {
            return Err(invalid("tau", "gate time must be positive"));
        }
        if !(vertical_fraction > 0.0 && vertical_fraction < 1.0) {
            return Err(invalid("vertical_fraction", "must lie in (0, 1)"));
        }
        let th = 0.5 * (1.0 - vertical_fraction) * tau;
        let tv = 0.5 * vertical_fraction * tau;
        let m = margin_q;
        let mut w = vec![(0.0, ControlPoint::new(0.0, m)), (th, ControlPoint::new(PI, m))];
        let ramp = |w: &mut Vec<(f64, ControlPoint)>, t0: f64, phi: f64, from: f64, to: f64| {
            for k in 1..=RAMP_PIECES {
                let s = k as f64 / RAMP_PIECES as f64;
                let u = s * s * (3.0 - 2.0 * s);
                w.push((t0 + s * tv, ControlPoint::new(phi, from + (to - from) * u)));
            }
        };
        ramp(&mut w, th, PI, m, -m);
        w.push((2.0 * th + tv, ControlPoint::new(0.0, -m)));
        ramp(&mut w, 2.0 * th + tv, 0.0, -m, m);
        // Pin the final time exactly.
        w.last_mut().unwrap().0 = tau;
        Self::new(w)
    }

    /// Maximal stretches `(t0, t1, q)` over which `Q` is constant while `Φ`
    /// moves.
    pub fn horizontal_legs(&self) -> Vec<(f64, f64, f64)> {
        let mut legs: Vec<(f64, f64, f64)> = Vec::new();
        for w in self.waypoints.windows(2) {
            let ((t0, a), (t1, b)) = (w[0], w[1]);
            if a.q != b.q || a.phi == b.phi {
                continue;
            }
            match legs.last_mut() {
                Some(leg) if leg.1 == t0 && leg.2 == a.q => leg.1 = t1,
                _ => legs.push((t0, t1, a.q)),
            }
        }
        legs
    }

    /// Same control points visited backwards in time.
    pub fn reversed(&self) -> Self {
        let total = self.duration();
        let w = self.waypoints.iter().rev().map(|(t, p)| (total - t, *p)).collect();
        Self { waypoints: w }
    }

    /// This schedule followed by `other` (which should start where this ends).
    pub fn then(&self, other: &Schedule) -> Result<Self> {
        let t0 = self.duration();
        let mut w = self.waypoints.clone();
        w.extend(other.waypoints.iter().skip(1).map(|(t, p)| (t0 + t, *p)));
        Self::new(w)
    }
}
