use holoq_core::berry::{
    analytic_curvature_total, curvature_map, fit_a, gate_angle, standard_loop, two_level_curvature_total, wrap_angle,
    ControlPath, GridSpec, DEFAULT_DPHI, DEFAULT_DQ,
};
use holoq_core::{ChargeBasis, CircuitParams, Error};
use std::f64::consts::{FRAC_PI_2, PI};

fn device(eta: f64) -> CircuitParams {
    CircuitParams::from_ratios(2.0 * PI * 40.0, 0.1, eta).unwrap()
}

#[test]
fn loop_sampling_refinement_is_converged() {
    let p = device(0.1);
    let b = ChargeBasis::default();
    let coarse = gate_angle(&p, &standard_loop(0.5).unwrap(), b).unwrap().gate_angle;
    let fine_path = standard_loop(0.5).unwrap().with_steps(0.5 * DEFAULT_DPHI, 0.5 * DEFAULT_DQ).unwrap();
    let fine = gate_angle(&p, &fine_path, b).unwrap().gate_angle;
    assert!(wrap_angle(fine - coarse).abs() < 1e-4, "{coarse} vs {fine}");
}

#[test]
fn moving_vertical_legs_inside_protected_region() {
    let p = device(0.1);
    let b = ChargeBasis::default();
    let nominal = gate_angle(&p, &standard_loop(0.5).unwrap(), b).unwrap();
    let squeezed = ControlPath::rectangle(0.05 * PI, 0.95 * PI, 0.5, -0.5).unwrap();
    let moved = gate_angle(&p, &squeezed, b).unwrap();
    assert!(wrap_angle(moved.gate_angle - nominal.gate_angle).abs() < 1e-4);
    assert!(nominal.min_gap_on_path > 0.0);
}

#[test]
fn large_asymmetry_closes_the_gate() {
    let r = gate_angle(&device(2.0), &standard_loop(0.5).unwrap(), ChargeBasis::default()).unwrap();
    assert!(r.gate_angle.abs() < 0.35, "{}", r.gate_angle);
}

#[test]
fn single_point_fit() {
    let f = fit_a(2.0 * PI * 40.0, 0.1, &[0.1], &standard_loop(0.5).unwrap(), ChargeBasis::default()).unwrap();
    assert!(f.uncertainty.is_none());
    assert!((f.a - (PI - f.thetas[0]) / 0.1).abs() < 1e-12);
    assert!((f.a - 2.97).abs() < 0.05);
}

#[test]
fn fit_residuals_grow_with_eta() {
    // Deviation of (π - Θ)/η from the small-η slope.
    let path = standard_loop(0.5).unwrap();
    let b = ChargeBasis::default();
    let small = fit_a(2.0 * PI * 40.0, 0.1, &[0.02, 0.04], &path, b).unwrap().a;
    let wide = fit_a(2.0 * PI * 40.0, 0.1, &[0.1, 0.3, 0.6], &path, b).unwrap();
    let dev: Vec<f64> = wide.etas.iter().zip(&wide.thetas).map(|(e, t)| ((PI - t) / e - small).abs()).collect();
    assert!(dev[0] < dev[1] && dev[1] < dev[2], "{dev:?}");
}

#[test]
fn coarse_sampling_is_reported() {
    // A single step across Φ = π/2 flips the odd ground state from |-1⟩ to |+1⟩.
    let p = CircuitParams::from_ratios(2.0 * PI * 40.0, 0.1, 0.02).unwrap();
    let path = ControlPath::rectangle(FRAC_PI_2, PI, 0.5, -0.5).unwrap().with_steps(0.01 * PI, 1.0).unwrap();
    let err = gate_angle(&p, &path, ChargeBasis::new(40).unwrap()).unwrap_err();
    assert!(matches!(err, Error::CoarseDiscretization { .. }), "{err}");
}

#[test]
fn curvature_symmetries() {
    let p = device(0.5);
    let b = ChargeBasis::default();
    let w = 0.3;
    let spec = GridSpec::new((FRAC_PI_2 - w, FRAC_PI_2 + w), (0.4, 0.6), 30, 20).unwrap();
    let g = curvature_map(&p, &spec, b).unwrap();
    let shifted =
        curvature_map(&p, &GridSpec::new((FRAC_PI_2 - w + PI, FRAC_PI_2 + w + PI), (0.4, 0.6), 30, 20).unwrap(), b)
            .unwrap();
    let scale = g.diff.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for i in 0..30 {
        for j in 0..20 {
            let k = g.index(i, j);
            assert!((g.diff[k] - shifted.diff[k]).abs() <= 1e-6 * scale);
            assert!((g.diff[k] - g.odd[k] + g.even[k]).abs() < 1e-12 * scale);
            // Odd about the degeneracy line Q = 1/2.
            assert!((g.diff[k] + g.diff[g.index(i, 19 - j)]).abs() <= 1e-9 * scale);
        }
    }
}

#[test]
fn overview_peak_sits_at_the_unprotected_point() {
    let p = device(0.5);
    let g = curvature_map(&p, &GridSpec::overview(), ChargeBasis::default()).unwrap();
    assert_eq!(g.invalid_count(), 0);
    let (i, j) = g.peak();
    let c = g.center(i, j);
    assert!((c.phi - FRAC_PI_2).abs() <= PI / 200.0 && c.q.abs() <= 0.01, "{c:?}");
    assert!(g.diff[g.index(i, j)] > 0.0);
}

#[test]
fn corrected_curvature_tracks_numerics() {
    let p = CircuitParams::from_ratios(2.0 * PI * 40.0, 0.1, 0.5).unwrap();
    let g = curvature_map(&p, &GridSpec::zoom(&p), ChargeBasis::default()).unwrap();
    for j in 0..g.q_axis.len() - 1 {
        let i = g.phi_axis.len() / 2;
        let c = g.center(i, j);
        if c.q.abs() > 0.3 {
            continue;
        }
        let numeric = g.diff[g.index(i, j)];
        let model = two_level_curvature_total(&p, c.phi, c.q);
        assert!((model / numeric - 1.0).abs() < 0.15, "{c:?}: {model} vs {numeric}");
        assert!(analytic_curvature_total(&p, c.phi, c.q).is_finite());
    }
}

#[test]
fn default_loop_geometry() {
    let path = standard_loop(0.5).unwrap();
    assert_eq!(path.segment_steps(), vec![1000, 100, 1000, 100]);
    assert!(path.closed);
    assert_eq!(path.dphi, DEFAULT_DPHI);
    assert!(path.sample().iter().all(|pt| pt.q.abs() <= 0.5));
}
