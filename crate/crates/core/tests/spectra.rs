use holoq_core::berry::{loop_phase, standard_loop};
use holoq_core::circuit::{
    effective_josephson, effective_two_level, ground_energy, ground_state, lowest_state, spinor_angles,
};
use holoq_core::{ChargeBasis, CircuitParams, ControlPoint, Error, Parity};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

fn reference() -> CircuitParams {
    CircuitParams::from_ratios(2.0 * PI * 40.0, 0.1, 0.1).unwrap()
}

#[test]
fn diagonal_limit_energies() {
    let p = CircuitParams::new(1.0, 1.0, 0.3).unwrap();
    let r = ground_state(&p, ControlPoint::new(FRAC_PI_2, 0.1), Parity::Odd, ChargeBasis::new(10).unwrap()).unwrap();
    assert!((r.energies[0] - 0.3 * 0.81).abs() < 1e-14);
    assert!((r.energies[1] - 0.3 * 1.21).abs() < 1e-14);
    let k = r.charges.iter().position(|&n| n == 1).unwrap();
    assert!((r.ground()[k].norm() - 1.0).abs() < 1e-14);
}

#[test]
fn half_integer_charge_is_degenerate_across_flux() {
    let p = reference();
    let b = ChargeBasis::default();
    for k in 0..=64 {
        let phi = PI * k as f64 / 64.0;
        for q in [0.5, -0.5] {
            let pt = ControlPoint::new(phi, q);
            let d = ground_energy(&p, pt, &b.charges(Parity::Even)) - ground_energy(&p, pt, &b.charges(Parity::Odd));
            assert!(d.abs() < 1e-10 * p.e_c, "phi {phi} q {q}: {d:e}");
        }
    }
}

#[test]
fn protected_envelope_is_confined() {
    let p = CircuitParams::from_ratios(2.0 * PI * 40.0, 0.02, 0.0).unwrap();
    let r = ground_state(&p, ControlPoint::new(0.0, 0.0), Parity::Even, ChargeBasis::default()).unwrap();
    let width = 4.0 * (effective_josephson(&p, 0.0) / p.e_c).powf(0.25);
    let spread: f64 =
        r.charges.iter().zip(r.ground()).filter(|(&n, _)| (n as f64).abs() <= 2.0).map(|(_, z)| z.norm_sqr()).sum();
    let tail: f64 =
        r.charges.iter().zip(r.ground()).filter(|(&n, _)| (n as f64).abs() > width).map(|(_, z)| z.norm_sqr()).sum();
    assert!(spread < 0.9, "state should spread over many charges");
    assert!(tail < 1e-5, "tail weight {tail:e}");
}

#[test]
fn crossing_is_flagged() {
    let p = CircuitParams::new(1.0, 1.0, 0.2).unwrap();
    let pt = ControlPoint::new(FRAC_PI_2, 0.0);
    let b = ChargeBasis::new(20).unwrap();
    assert!(ground_state(&p, pt, Parity::Odd, b).unwrap().near_degenerate);
    assert!(!ground_state(&p, pt, Parity::Even, b).unwrap().near_degenerate);
    assert!(matches!(lowest_state(&p, pt, &b.charges(Parity::Odd)), Err(Error::NearDegenerate { .. })));
}

#[test]
fn truncation_is_converged_on_the_loop() {
    let p = reference();
    let (b, big) = (ChargeBasis::default(), ChargeBasis::new(200).unwrap());
    for pt in standard_loop(0.5).unwrap().sample_cyclic().into_iter().step_by(7) {
        for parity in Parity::BOTH {
            let e = ground_energy(&p, pt, &b.charges(parity));
            let e2 = ground_energy(&p, pt, &big.charges(parity));
            assert!((e - e2).abs() <= 1e-12 * e.abs(), "{pt:?}");
        }
    }
}

#[test]
fn two_level_tracks_full_splitting_near_the_peak() {
    // Energies themselves pass through zero here, so compare the in-sector
    // splitting, which is what the two-level model describes.
    let p = CircuitParams::from_ratios(1.0, 0.1, 0.1).unwrap();
    let b = ChargeBasis::new(30).unwrap();
    for ia in -9..=9 {
        let alpha = 0.005 * ia as f64;
        for iq in -10..=10 {
            let q = 0.05 * iq as f64;
            for parity in Parity::BOTH {
                // The even pair {0, 2} is the relevant one for Q ≥ 0.
                if parity == Parity::Even && q < 0.0 {
                    continue;
                }
                let pt = ControlPoint::new(FRAC_PI_2 + alpha, q);
                let full = ground_state(&p, pt, parity, b).unwrap().gap;
                let [lo, hi] = effective_two_level(&p, pt, parity).eigenvalues();
                assert!(((hi - lo) / full - 1.0).abs() < 0.05, "{parity:?} {pt:?}");
            }
        }
    }
}

#[test]
fn two_level_gap_at_degeneracy() {
    let p = reference();
    let tl = effective_two_level(&p, ControlPoint::new(FRAC_PI_2, 0.5), Parity::Odd);
    let [lo, hi] = tl.eigenvalues();
    // |+1⟩ and |-1⟩ sit at E_C/4 and 9E_C/4, a splitting of 2E_C.
    let expect = (effective_josephson(&p, FRAC_PI_2).powi(2) + 4.0 * p.e_c * p.e_c).sqrt();
    assert!((hi - lo - expect).abs() < 1e-12 * expect);
    let full = ground_state(&p, ControlPoint::new(FRAC_PI_2, 0.5), Parity::Odd, ChargeBasis::default()).unwrap().gap;
    assert!((full / expect - 1.0).abs() < 0.02, "{full} vs {expect}");
}

#[test]
fn bloch_image_of_loop_is_just_under_a_hemisphere() {
    // Berry phase of a spin-½ is half the solid angle it sweeps.
    let p = CircuitParams::from_ratios(2.0 * PI * 40.0, 0.1, 0.05).unwrap();
    let pts = standard_loop(0.5).unwrap().sample_cyclic();
    let spinors: Vec<Vec<Complex64>> = pts
        .iter()
        .map(|&pt| {
            let (xi, theta) = spinor_angles(&p, pt).unwrap();
            vec![
                Complex64::from_polar((0.5 * theta).cos(), -0.5 * xi),
                Complex64::from_polar((0.5 * theta).sin(), 0.5 * xi),
            ]
        })
        .collect();
    let solid = 2.0 * loop_phase(&spinors, &pts).unwrap().abs();
    assert!(solid < 2.0 * PI && solid > 0.8 * 2.0 * PI, "solid angle {solid}");
    assert_eq!(spinor_angles(&p, ControlPoint::new(0.0, 0.3)).unwrap().0, 0.0);
}
