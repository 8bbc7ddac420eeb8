//! The f64 surface as a downstream user sees it.

use confdirac::{
    build_ansatz, dirac_coulomb_energy, evaluate_spinor, first_order_shift, norm_by_quadrature, nu_expanded,
    nu_fine_tuned, preservation_scan, radial_residual, Ansatz, Error, Shift,
};

#[test]
fn preserved_level_keeps_the_coulomb_energy() {
    let (lambda, mu, mass) = (0.4, 2e-3, 1.5);
    let p: Ansatz = build_ansatz(lambda, mu, -1, mass).unwrap();
    let coulomb = dirac_coulomb_energy(1, -1, lambda, mass).unwrap();
    assert!((p.energy - coulomb).abs() <= 4.0 * f64::EPSILON * mass);
    assert!(p.gamma_mismatch() < 1e-12);

    let grid = p.default_grid(4000).unwrap();
    assert!(radial_residual(&p, &grid).unwrap() < 1e-10);
    assert!((norm_by_quadrature(&p).unwrap() - 1.0).abs() < 1e-8);

    let (f, g) = evaluate_spinor(&p, 1.0).unwrap();
    assert!((g + p.gamma * f).abs() < 1e-15);
}

#[test]
fn tuning_and_its_expansion_agree_at_small_coupling() {
    let (mu, lambda) = (1e-3f64, 0.01f64);
    let exact = nu_fine_tuned(mu, lambda, -2).unwrap();
    let approx = nu_expanded(mu, lambda, -2).unwrap();
    assert!((exact - approx).abs() < mu * lambda.powi(4));
}

#[test]
fn only_the_reference_shift_vanishes() {
    let s: Shift = first_order_shift(2, -2, -2, 0.2, 1e-3, 1.0).unwrap();
    assert_eq!(s.total, 0.0);
    let s: Shift = first_order_shift(2, -1, -2, 0.2, 1e-3, 1.0).unwrap();
    assert!(s.total.abs() > 1e-6);
    assert!((s.total - s.term_sum()).abs() < 1e-15);

    let report = preservation_scan(20, 6).unwrap();
    assert!(report.sign_opposition_holds);
    assert!(report.physical_solutions().all(|s| s.kappa == -(s.n as i32) && s.big_n == 1));
}

#[test]
fn domain_errors_are_reported_as_such() {
    for e in [
        build_ansatz(0.5, -1e-4, -1, 1.0).unwrap_err(),
        build_ansatz(1.2, 1e-4, -1, 1.0).unwrap_err(),
        build_ansatz(0.5, 1e-4, 1, 1.0).unwrap_err(),
        dirac_coulomb_energy(1, 1, 0.5, 1.0).unwrap_err(),
    ] {
        assert!(e.is_domain(), "{e}");
        let _: &Error = &e;
    }
}
