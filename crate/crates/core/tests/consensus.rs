mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use rings_core::consensus::*;
use rings_core::poly::{chebyshev_z, IntPoly};
use rings_core::topology::RingTopology;

use common::inside_parabola;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const SAMPLES: usize = DEFAULT_CURVE_SAMPLES;

#[test]
fn parabola_grid_agrees_with_closed_form() {
    let gamma = 1.5;
    let fv = FrequencyVariable::absolute_velocity(gamma).unwrap();
    let mut disagreements = 0;
    for i in 0..100 {
        for k in 0..100 {
            let p = c(-4.0 + 4.5 * i as f64 / 99.0, -5.0 + 10.0 * k as f64 / 99.0);
            let verdict = in_omega(&fv, p, DEFAULT_EPS).unwrap();
            if verdict.inside != inside_parabola(gamma, p) {
                disagreements += 1;
                let gap = p.im * p.im + gamma * gamma * p.re;
                assert!(gap.abs() < 1e-6 || verdict.on_boundary(DEFAULT_EPS), "{p}");
            }
        }
    }
    assert!(disagreements <= 100);
}

#[test]
fn example_points() {
    let fv = FrequencyVariable::first_order();
    assert!(in_omega(&fv, c(-1.0, 0.0), DEFAULT_EPS).unwrap().inside);
    let fv = FrequencyVariable::absolute_velocity(2.0).unwrap();
    assert!(in_omega(&fv, c(-1.0, 1.0), DEFAULT_EPS).unwrap().inside);
    assert!(!in_omega(&fv, c(0.0, 0.0), DEFAULT_EPS).unwrap().inside);
}

#[test]
fn boundary_examples() {
    let pts = omega_boundary(&FrequencyVariable::absolute_velocity(1.0).unwrap(), &[1.0]);
    assert!((pts[0] - c(-1.0, 1.0)).norm() < 1e-15);
    let pts = omega_boundary(&FrequencyVariable::relative_velocity(1.0).unwrap(), &[1.0]);
    assert!((pts[0] - c(-0.5, 0.5)).norm() < 1e-15);
    for fv in [
        FrequencyVariable::absolute_velocity(0.7).unwrap(),
        FrequencyVariable::relative_velocity(0.7).unwrap(),
        FrequencyVariable::lagging(0.7).unwrap(),
    ] {
        assert_eq!(omega_boundary(&fv, &[0.0])[0], c(0.0, 0.0));
    }
}

#[test]
fn boundary_points_are_not_inside() {
    let omegas: Vec<f64> = (1..40).map(|k| 0.1 * k as f64).collect();
    for fv in [
        FrequencyVariable::absolute_velocity(1.3).unwrap(),
        FrequencyVariable::relative_velocity(1.3).unwrap(),
        FrequencyVariable::lagging(1.3).unwrap(),
    ] {
        for p in omega_boundary(&fv, &omegas) {
            // Some root sits on the imaginary axis, so the point is never inside.
            let v = in_omega(&fv, p, DEFAULT_EPS).unwrap();
            assert!(!v.inside && v.max_root_real_part > -1e-9, "{p}: {}", v.max_root_real_part);
        }
    }
}

#[test]
fn lagging_boundary_curve() {
    // y² = -x (1 + γx)² / (γ (2 + γx))
    let gamma = 0.8;
    let fv = FrequencyVariable::lagging(gamma).unwrap();
    let omegas: Vec<f64> = (1..30).map(|k| 0.2 * k as f64).collect();
    for p in omega_boundary(&fv, &omegas) {
        let rhs = -p.re * (1.0 + gamma * p.re).powi(2) / (gamma * (2.0 + gamma * p.re));
        assert!((p.im * p.im - rhs).abs() < 1e-12, "{p}");
    }
}

#[test]
fn pursuit_spectrum_examples() {
    let tol = Tolerances::default();
    let ring = RingTopology::pursuit(4).unwrap();
    assert!(criterion_ring(&FrequencyVariable::first_order(), &ring, 1.0, tol).unwrap());
    let slow = FrequencyVariable::absolute_velocity(1.0).unwrap();
    let fast = FrequencyVariable::absolute_velocity(2.0).unwrap();
    // N = 3 still reaches consensus: -1.5 ± 0.866j satisfies y² < -γ²x.
    assert!(criterion_ring(&slow, &RingTopology::pursuit(3).unwrap(), 1.0, tol).unwrap());
    for n in 4..=64 {
        let ring = RingTopology::pursuit(n).unwrap();
        assert!(!criterion_ring(&slow, &ring, 1.0, tol).unwrap(), "N = {n}");
    }
    for n in 3..=64 {
        let ring = RingTopology::pursuit(n).unwrap();
        assert!(criterion_ring(&fast, &ring, 1.0, tol).unwrap(), "N = {n}");
    }
}

#[test]
fn curve_examples() {
    let tol = Tolerances::default();
    let fv = FrequencyVariable::absolute_velocity(1.0).unwrap();
    assert!(criterion_curve(&fv, &IntPoly::linear(1), 0.4, SAMPLES, tol).unwrap());
    assert!(!criterion_curve(&fv, &IntPoly::linear(1), 0.6, SAMPLES, tol).unwrap());
    let z2 = chebyshev_z(2).unwrap();
    assert!(criterion_curve(&fv, &z2, 1.0, SAMPLES, tol).unwrap());
    assert!(!criterion_curve(&fv, &z2, 1.3, SAMPLES, tol).unwrap());
}

#[test]
fn violated_curve_shows_up_in_some_finite_ring() {
    let tol = Tolerances::default();
    let gamma = 1.0;
    let r = 0.55;
    let fv = FrequencyVariable::absolute_velocity(gamma).unwrap();
    assert!(!criterion_curve(&fv, &IntPoly::linear(1), r, SAMPLES, tol).unwrap());
    let failing = (1..=200).find(|&m| !criterion_ring(&fv, &RingTopology::pursuit(m).unwrap(), r, tol).unwrap());
    assert!(failing.is_some());
}

#[test]
fn relative_velocity_crosses_the_circle_at_the_stated_abscissa() {
    // The reflected circle meets ∂Ω at x = -2r / (1 + 2rγ²).
    for (r, gamma) in [(0.3, 1.0), (1.0, 0.5), (0.1, 2.0)] {
        let fv = FrequencyVariable::relative_velocity(gamma).unwrap();
        let x0: f64 = -2.0 * r / (1.0 + 2.0 * r * gamma * gamma);
        let theta = (1.0 + x0 / r).acos();
        let p = to_omega_plane(Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, theta), r);
        assert!((p.re - x0).abs() < 1e-12);
        let v = in_omega(&fv, p, DEFAULT_EPS).unwrap();
        assert!(v.max_root_real_part.abs() < 1e-9, "{}", v.max_root_real_part);
    }
}

#[test]
fn size_thresholds_for_relative_velocity() {
    let tol = Tolerances::default();
    let fv = FrequencyVariable::relative_velocity(3.4).unwrap();
    let sweep = pursuit_size_sweep(&fv, 0.15, 40, tol).unwrap();
    assert!(sweep.is_monotone());
    assert_eq!(sweep.max_consensus(), Some(6));
    let fv = FrequencyVariable::relative_velocity(4.0).unwrap();
    assert_eq!(max_consensus_n(&fv, 0.15, 40, tol).unwrap(), Some(7));
    assert_eq!(max_consensus_n(&FrequencyVariable::first_order(), 0.15, 40, tol).unwrap(), Some(40));
}

#[test]
fn lagging_agents_on_the_circle() {
    let tol = Tolerances::default();
    let fv = FrequencyVariable::lagging(1.0).unwrap();
    assert!(criterion_curve(&fv, &IntPoly::linear(1), 0.15, SAMPLES, tol).unwrap());
    assert!(!criterion_curve(&fv, &IntPoly::linear(1), 0.35, SAMPLES, tol).unwrap());
}

#[test]
fn critical_gain_needs_a_sign_change() {
    let fv = FrequencyVariable::relative_velocity(1.0).unwrap();
    let err = critical_gain(&fv, &IntPoly::linear(1), (0.1, 1.0), SAMPLES, Tolerances::default());
    assert!(matches!(err, Err(rings_core::Error::Bracket { .. })));
}

#[test]
fn serde_round_trip() {
    let fv = FrequencyVariable::relative_velocity(2.0).unwrap();
    let text = serde_json::to_string(&fv).unwrap();
    assert_eq!(text, r#"{"a":[0.0,0.0,1.0],"b":[1.0,2.0]}"#);
    assert_eq!(serde_json::from_str::<FrequencyVariable>(&text).unwrap(), fv);
    assert!(serde_json::from_str::<FrequencyVariable>(r#"{"a":[0.0,2.0],"b":[1.0]}"#).is_err());
}

proptest! {
    #[test]
    fn verdict_is_conjugation_invariant(re in -5.0f64..1.0, im in -5.0f64..5.0, gamma in 0.2f64..3.0, which in 0usize..3) {
        let fv = match which {
            0 => FrequencyVariable::absolute_velocity(gamma).unwrap(),
            1 => FrequencyVariable::relative_velocity(gamma).unwrap(),
            _ => FrequencyVariable::lagging(gamma).unwrap(),
        };
        let a = in_omega(&fv, c(re, im), DEFAULT_EPS).unwrap();
        let b = in_omega(&fv, c(re, -im), DEFAULT_EPS).unwrap();
        prop_assert_eq!(a.inside, b.inside);
        prop_assert!((a.max_root_real_part - b.max_root_real_part).abs() < 1e-9);
    }

    #[test]
    fn right_half_plane_is_never_inside(re in 0.0f64..3.0, im in -3.0f64..3.0, gamma in 0.2f64..3.0) {
        let fv = FrequencyVariable::absolute_velocity(gamma).unwrap();
        prop_assert!(!in_omega(&fv, c(re, im), DEFAULT_EPS).unwrap().inside);
    }
}
