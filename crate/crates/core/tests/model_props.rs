use proptest::prelude::*;
use quadspec::{
    compute_delta, compute_tau, energy_from_zeta_sq, is_bound_state_admissible, zeta_sq_from_energy, Error,
    GateReason, QuantumNumbers, SystemParams,
};

fn positive() -> impl Strategy<Value = f64> {
    (-3.0f64..3.0).prop_map(|e| 10f64.powf(e))
}

fn signed() -> impl Strategy<Value = f64> {
    (positive(), any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v })
}

fn nonzero_l() -> impl Strategy<Value = i32> {
    (1i32..=20, any::<bool>()).prop_map(|(l, neg)| if neg { -l } else { l })
}

proptest! {
    #[test]
    fn delta_is_odd_in_l(m in positive(), q in positive(), lm in signed(), k in -5.0f64..5.0, l in -20i32..=20) {
        let p = SystemParams::new(m, q, lm, k).unwrap();
        let plus = compute_delta(&p, &QuantumNumbers::diagnostic(0, l));
        let minus = compute_delta(&p, &QuantumNumbers::diagnostic(0, -l));
        prop_assert_eq!(plus, -minus);
    }

    #[test]
    fn tau_closes_the_termination_condition(m in positive(), q in positive(), lm in signed(), n in 0u32..30, l in nonzero_l()) {
        // Pick the sign of l that passes the gate.
        let l = if lm * l as f64 > 0.0 { -l } else { l };
        let p = SystemParams::new(m, q, lm, 0.0).unwrap();
        let qn = QuantumNumbers::new(n, l).unwrap();
        let tau = compute_tau(&p, &qn).unwrap();
        let delta = compute_delta(&p, &qn);
        let shell = n as f64 + qn.abs_l() as f64 + 0.5;
        let residual = qn.abs_l() as f64 + 0.5 - delta.abs() / (2.0 * tau) + n as f64;
        prop_assert!(residual.abs() <= 1e-14 * shell, "residual {residual}");
    }

    #[test]
    fn zeta_sq_round_trip(m in positive(), q in positive(), lm in signed(), k in -3.0f64..3.0, e in signed()) {
        let p = SystemParams::new(m, q, lm, k).unwrap();
        let back = energy_from_zeta_sq(&p, zeta_sq_from_energy(&p, e));
        // Relative to the terms that enter the sum.
        let scale = e.abs().max(p.continuum_threshold().abs());
        prop_assert!((back - e).abs() <= 1e-14 * scale, "{e} -> {back}");
    }

    #[test]
    fn gate_is_invariant_under_joint_sign_flip(q in positive(), lm in signed(), l in -20i32..=20) {
        let p = SystemParams::new(1.0, q, lm, 0.0).unwrap();
        let flipped = SystemParams::new(1.0, q, -lm, 0.0).unwrap();
        prop_assert_eq!(is_bound_state_admissible(&p, l), is_bound_state_admissible(&flipped, -l));
    }
}

#[test]
fn gate_reasons() {
    let p = SystemParams::new(1.0, 1.0, 2.0, 0.0).unwrap();
    assert_eq!(is_bound_state_admissible(&p, 0).reason, Some(GateReason::ZeroAngularMomentum));
    assert_eq!(is_bound_state_admissible(&p, 1).reason, Some(GateReason::RepulsiveSign));
    assert!(is_bound_state_admissible(&p, -1).admissible);
    assert!(QuantumNumbers::new(0, 0).is_err());
    let err = compute_tau(&p, &QuantumNumbers::new(0, 3).unwrap()).unwrap_err();
    assert_eq!(err, Error::GateViolation { l: 3, reason: GateReason::RepulsiveSign });
}

#[test]
fn parameter_validation_names_the_field() {
    for (args, field) in [
        ((0.0, 1.0, 1.0, 0.0), "mass"),
        ((1.0, -1.0, 1.0, 0.0), "quadrupole"),
        ((1.0, 1.0, 0.0, 0.0), "lambda_m"),
        ((1.0, 1.0, 1.0, f64::NAN), "k_axial"),
    ] {
        match SystemParams::new(args.0, args.1, args.2, args.3) {
            Err(Error::InvalidParams { field: f, .. }) => assert_eq!(f, field),
            other => panic!("{field}: {other:?}"),
        }
    }
}

#[test]
fn single_precision_chain() {
    let p = SystemParams::<f32>::new(1.0, 1.0, 2.0, 0.0).unwrap();
    let tau = compute_tau(&p, &QuantumNumbers::new(0, -1).unwrap()).unwrap();
    assert!((tau - 2.0 / 3.0).abs() < 1e-6);
}
