use quadspec::oracle::{
    build_effective_operator, count_nodes, numerical_spectrum, verify_eigenvalue, verify_state, PotentialKind,
    RadialGrid, VerifyMode, RATIO_RANGE,
};
use quadspec::{compute_tau, coulomb_wavefunction, log_spaced, QuantumNumbers, SystemParams};

fn coulomb_params() -> SystemParams<f64> {
    SystemParams::new(1.0, 1.0, 2.0, 0.0).unwrap()
}

#[test]
fn second_order_convergence() {
    let p = coulomb_params();
    for (n, abs_l) in [(0, 1), (2, 1), (1, 3), (4, 2)] {
        let r = verify_state(&p, &QuantumNumbers::new(n, -abs_l).unwrap(), VerifyMode::Coulomb, None).unwrap();
        assert!(r.convergence_ratio >= RATIO_RANGE.0 && r.convergence_ratio <= RATIO_RANGE.1, "{r:?}");
        assert!(r.passed);
    }
}

#[test]
fn doubling_the_box_at_fixed_spacing_changes_nothing() {
    let p = coulomb_params();
    for (n, l) in [(0, -1), (1, -2)] {
        let small = RadialGrid::new(80.0, 16_000).unwrap();
        let large = RadialGrid::new(160.0, 32_000).unwrap();
        let a = build_effective_operator(&p, l, PotentialKind::Coulomb, None, &small).unwrap().eigenvalue(n).unwrap();
        let b = build_effective_operator(&p, l, PotentialKind::Coulomb, None, &large).unwrap().eigenvalue(n).unwrap();
        assert!((a - b).abs() < 1e-9 * a.abs(), "({n},{l}) {a} {b}");
    }
}

#[test]
fn eigenvector_nodes_match_the_kummer_polynomial() {
    let p = coulomb_params();
    let grid = RadialGrid::new(300.0, 30_000).unwrap();
    let s = numerical_spectrum(&p, -1, PotentialKind::Coulomb, None, &grid, 4, true).unwrap();
    for (n, v) in s.eigenvectors.as_ref().unwrap().iter().enumerate() {
        let qn = QuantumNumbers::new(n as u32, -1).unwrap();
        let tau = compute_tau(&p, &qn).unwrap();
        let rho = log_spaced(1e-3 / tau, 40.0 / tau, 4000);
        let analytic = coulomb_wavefunction(&p, &qn, &rho).unwrap();
        let expected = quadspec::coulomb::count_sign_changes(&analytic);
        assert_eq!(expected, n);
        assert_eq!(count_nodes(v, 1e-8), n);
    }
}

#[test]
fn zero_delta_binds_nothing() {
    let p = coulomb_params();
    for (rho_max, points) in [(50.0, 1_000), (200.0, 5_000), (1_000.0, 20_000)] {
        let grid = RadialGrid::new(rho_max, points).unwrap();
        let op = build_effective_operator(&p, 0, PotentialKind::Coulomb, None, &grid).unwrap();
        assert_eq!(op.count_below(0.0), 0);
        let s = numerical_spectrum(&p, 0, PotentialKind::Coulomb, None, &grid, 3, false).unwrap();
        assert!(s.bound().is_empty());
    }
}

#[test]
fn verification_rejects_missing_frequency_and_ground_state() {
    let p = coulomb_params();
    let qn = QuantumNumbers::new(1, 1).unwrap();
    assert!(verify_state(&p, &qn, VerifyMode::Oscillator, None).is_err());
    let g = QuantumNumbers::new(0, 1).unwrap();
    assert!(verify_state(&p, &g, VerifyMode::Oscillator, Some(1.0)).is_err());
    assert!(verify_state(&p, &QuantumNumbers::new(0, 1).unwrap(), VerifyMode::Coulomb, None).is_err());
}

#[test]
fn free_oscillator_second_order() {
    // λ_m tiny so δ ≈ 0 at l = 1: the textbook 2D oscillator.
    let p = SystemParams::new(1.0, 1.0, 1e-300, 0.0).unwrap();
    let r = verify_eigenvalue(&p, 0, 1, PotentialKind::Oscillator, Some(1.0), 30.0, 20_000, Some(0), 4.0).unwrap();
    assert!(r.passed, "{r:?}");
}
