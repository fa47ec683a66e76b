use landau_cylinder::spectral::{
    apply_hamiltonian, energy_expectation, mode_grid, pi_commutator_check, required_interval, spectrum_on_grid,
};
use landau_cylinder::*;
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn levels_are_degenerate_for_any_gauge_offset(q in 0.0..1.0f64, rho in -2.0..2.0f64, b in 0.5..2.0f64) {
        let cfg = Config::natural(b, 1.0, q, rho).unwrap();
        let grid = default_grid(&cfg, (-2, 2), 1601).unwrap();
        let s = spectrum_on_grid(&cfg, (-2, 2), 3, &grid).unwrap();
        prop_assert_eq!(s.levels.len(), 3);
        for l in &s.levels {
            prop_assert_eq!(l.degeneracy, 5);
            prop_assert!((l.energy - l.analytic).abs() / l.analytic < 1e-3);
        }
    }

    #[test]
    fn ground_states_are_annihilated(q in 0.0..1.0f64, rho in -1.0..1.0f64, n in -3i64..=3) {
        let cfg = Config::natural(1.3, 1.0, q, rho).unwrap();
        let g = mode_grid(&cfg, n, 2001).unwrap();
        let omega = analytic_ground_state(&cfg, n, &g).unwrap();
        prop_assert!(annihilation_residual(&cfg, n, &omega) < 1e-3);
        prop_assert!((omega.norm() - 1.0).abs() < 1e-6);
    }
}

#[test]
fn landau_energy_scales_with_units() {
    let cfg = Config::new(2.0, 1.5, 0.0, 0.0, 0.7, 1.3, 0.9).unwrap();
    let g = mode_grid(&cfg, 0, 2001).unwrap();
    let vals = eigensolve(&mode_hamiltonian(&cfg, 0, &g).unwrap(), 3).unwrap().values;
    let quantum = 0.7 * 1.3 * 2.0 / 0.9;
    for (n, v) in vals.iter().enumerate() {
        assert!((v / (quantum * (n as f64 + 0.5)) - 1.0).abs() < 1e-3, "{v}");
    }
}

#[test]
fn grid_requirements() {
    let cfg = Config::natural(1.0, 1.0, 0.0, 0.0).unwrap();
    let (lo, hi) = required_interval(&cfg, 2);
    assert!((lo + 14.0).abs() < 1e-12 && (hi - 10.0).abs() < 1e-12);
    let g = default_grid(&cfg, (-3, 3), 2001).unwrap();
    assert!(g.covers(-15.0, 15.0));
    assert!(matches!(spectrum_on_grid(&cfg, (-5, 5), 2, &g), Err(Error::GridTooNarrow { .. })));
    assert!(matches!(spectrum_on_grid(&cfg, (2, 1), 2, &g), Err(Error::InvalidInput(_))));
}

#[test]
fn numeric_and_analytic_ground_states_agree() {
    let cfg = Config::natural(1.0, 1.0, 0.4, 0.25).unwrap();
    for n in -2..=2 {
        let g = mode_grid(&cfg, n, 2001).unwrap();
        let a = analytic_ground_state(&cfg, n, &g).unwrap();
        let b = numeric_ground_state(&cfg, n, &g).unwrap();
        assert!(inner_product(&a, &b).unwrap().norm() > 1.0 - 1e-6);
    }
}

#[test]
fn operator_identities() {
    let cfg = Config::natural(1.0, 1.0, 0.2, 0.0).unwrap();
    let g = default_grid(&cfg, (-2, 2), 2001).unwrap();
    let states: Vec<State> = (-2..=2).map(|n| analytic_ground_state(&cfg, n, &g).unwrap()).collect();
    assert!(pi_commutator_check(&cfg, &states) < 1e-3);
    let v = velocity_check(&cfg, &states);
    assert!(v.pass, "{v:?}");
    assert!(v.max_velocity_norm > 0.1);
    for (n, s) in (-2..=2).zip(&states) {
        let e = energy_expectation(&cfg, s).unwrap();
        assert!((e - 0.5).abs() < 1e-4, "mode {n}: {e}");
    }
    let h = apply_hamiltonian(&cfg, &states[0]);
    assert_eq!(h.mode_indices().collect::<Vec<_>>(), vec![-2]);
}

#[test]
fn single_precision_spectrum() {
    let cfg = ConfigF32::natural(1.0, 1.0, 0.0, 0.0).unwrap();
    let g = spectral::mode_grid(&cfg, 0, 801).unwrap();
    let vals = eigensolve(&mode_hamiltonian(&cfg, 0, &g).unwrap(), 2).unwrap().values;
    assert!((vals[0] - 0.5).abs() < 1e-3 && (vals[1] - 1.5).abs() < 2e-3, "{vals:?}");
}

#[test]
fn evaluate_sums_modes() {
    let cfg = Config::natural(1.0, 1.0, 0.0, 0.0).unwrap();
    let g = default_grid(&cfg, (0, 1), 801).unwrap();
    let psi = analytic_ground_state(&cfg, 0, &g)
        .unwrap()
        .axpy(Complex64::new(0.0, 1.0), &analytic_ground_state(&cfg, 1, &g).unwrap())
        .unwrap();
    let (theta, y) = (0.4, -0.5);
    let gauss = |c: f64| std::f64::consts::PI.powf(-0.25) * (-(y - c).powi(2) / 2.0).exp();
    let expected = (gauss(0.0) + Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, theta) * gauss(-1.0))
        / std::f64::consts::TAU.sqrt();
    assert!((psi.evaluate(theta, y).unwrap() - expected).norm() < 1e-4);
    assert!(matches!(psi.evaluate(0.0, 100.0), Err(Error::OutOfGrid { .. })));
}
