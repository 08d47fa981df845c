mod common;

use common::deg;
use proptest::prelude::*;
use xygp::geom_phase::{circular_distance, gp_analytic, CycleSpec, Path};
use xygp::interferometer::{
    cbar_generator, controlled_cycle, measure_geometric_phase, path_unitary, phase_from_density,
    run_interferometry, z_flip,
};
use xygp::qmat::{expm_i, ComplexMatrix, DensityMatrix, StateVector, C64};
use xygp::xy_model::{build_h_tilde, ground_state, XyParams};

fn spec(path: Path, l: f64, g: f64, m: usize, t: f64) -> CycleSpec {
    CycleSpec::new(path, XyParams::new(l, g), m, t).unwrap()
}

#[test]
fn p1_readings() {
    let c = run_interferometry(&spec(Path::C, 0.0, 0.5, 5, 3.0)).unwrap();
    let cb = run_interferometry(&spec(Path::Cbar, 0.0, 0.5, 5, 3.0)).unwrap();
    assert!((deg(c.beta_t) - 171.887).abs() <= 2.0);
    assert!((deg(cb.beta_t) + 171.887).abs() <= 2.0);
    assert!((deg(c.beta_t) - 170.6).abs() <= 3.5);
    assert!((deg(cb.beta_t) + 173.0).abs() <= 3.5);
}

#[test]
fn p2_readings() {
    let p = XyParams::new(0.878, 0.5);
    let exact = gp_analytic(&p).unwrap();
    let fine = measure_geometric_phase(p, 64, 40.0, None).unwrap();
    assert!(deg(circular_distance(fine.beta_g, exact)) <= 0.5, "{}", deg(fine.beta_g));
    let coarse = measure_geometric_phase(p, 5, 10.7, None).unwrap();
    assert!(deg(circular_distance(coarse.beta_g, exact)) <= 3.0, "{}", deg(coarse.beta_g));
}

#[test]
fn zero_time_limit() {
    let u = controlled_cycle(&spec(Path::C, 0.878, 0.5, 1, 1e-12)).unwrap();
    assert!(u.max_abs_diff(&ComplexMatrix::identity(8)) < 1e-10);
    for path in [Path::C, Path::Cbar] {
        let r = run_interferometry(&spec(path, 1.3, 0.4, 3, 1e-12)).unwrap();
        assert!(r.beta_t.abs() < 1e-9);
        assert!((r.ancilla_coherence.norm() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn bell_state_returns_with_dynamical_phase() {
    let bell = StateVector::from_real(&[0.0, 1.0, 1.0, 0.0]).unwrap();
    let u = path_unitary(&spec(Path::C, 0.0, 0.5, 5, 3.0)).unwrap();
    let out = bell.evolve(&u).unwrap();
    let amp = bell.inner(&out);
    assert!((amp.norm() - 1.0).abs() < 1e-12);
    assert!((amp.arg() - 3.0).abs() < 1e-12);
}

#[test]
fn phase_from_pure_density() {
    let p = XyParams::new(0.878, 0.5);
    let (_, psi) = ground_state(&p).unwrap();
    let alpha = 0.73;
    // Ψ_g is an eigenvector of H, so the expected phase is α − E t.
    let u = expm_i(&build_h_tilde(&p), 0.4).unwrap().scale(C64::from_polar(1.0, alpha));
    let e = ground_state(&p).unwrap().0;
    let got = phase_from_density(&DensityMatrix::pure(&psi), &u).unwrap();
    assert!(circular_distance(got, alpha - e * 0.4) < 1e-12);
}

#[test]
fn pseudopure_identity_part_is_large() {
    let p = XyParams::new(0.878, 0.5);
    let (_, psi) = ground_state(&p).unwrap();
    let u = path_unitary(&spec(Path::C, 0.878, 0.5, 8, 5.0)).unwrap();
    let rho = DensityMatrix::pseudopure(&psi, 1e-5).unwrap();
    let full = (&u * rho.matrix()).trace();
    let mixed = u.trace() * ((1.0 - 1e-5) / 4.0);
    assert!(mixed.norm() > 100.0 * (full - mixed).norm());
    let from_dev = phase_from_density(&rho, &u).unwrap();
    let pure = phase_from_density(&DensityMatrix::pure(&psi), &u).unwrap();
    assert!(circular_distance(from_dev, pure) < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn bell_regime_cancels(l in -0.9..0.9f64, g in -0.9..0.9f64, m in 1usize..40, t in 0.1..30.0f64) {
        let p = XyParams::new(l, g);
        prop_assume!(p.r() < 0.99);
        let c = run_interferometry(&CycleSpec::new(Path::C, p, m, t).unwrap()).unwrap();
        let cb = run_interferometry(&CycleSpec::new(Path::Cbar, p, m, t).unwrap()).unwrap();
        prop_assert!(circular_distance(c.beta_t + cb.beta_t, 0.0) <= 1e-9);
    }

    #[test]
    fn cbar_generator_identity(l in -2.0..2.0f64, g in -2.0..2.0f64, phi in 0.0..6.3f64) {
        let p = XyParams::new(l, g).with_phi(phi);
        let neg = build_h_tilde(&p).scale_real(-1.0);
        for k in [1, 2] {
            let f = z_flip(k).unwrap();
            let conj = &(&f.adjoint() * &build_h_tilde(&XyParams::new(-l, g).with_phi(phi))) * &f;
            prop_assert!(conj.max_abs_diff(&neg) <= 1e-12);
            prop_assert!(cbar_generator(&p, k).unwrap().max_abs_diff(&neg) <= 1e-12);
        }
    }

    #[test]
    fn ancilla_structure_and_coherence(l in -2.0..2.0f64, g in -2.0..2.0f64, m in 1usize..12, t in 0.1..12.0f64, bar in any::<bool>()) {
        let p = XyParams::new(l, g);
        prop_assume!(p.check_nondegenerate().is_ok());
        let path = if bar { Path::Cbar } else { Path::C };
        let s = CycleSpec::new(path, p, m, t).unwrap();
        let (_, psi) = ground_state(&p).unwrap();
        let plus = StateVector::from_real(&[1.0, 1.0]).unwrap();
        let full = plus.kron(&psi).evolve(&controlled_cycle(&s).unwrap()).unwrap();
        let want = psi.evolve(&path_unitary(&s).unwrap()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..4 {
            prop_assert!((full.amplitudes()[4 + i] - want.amplitudes()[i] * h).norm() <= 1e-12);
            prop_assert!((full.amplitudes()[i] - psi.amplitudes()[i] * h).norm() <= 1e-12);
        }
        let r = run_interferometry(&s).unwrap();
        prop_assert!((r.ancilla_coherence.norm() - r.system_return_fidelity).abs() <= 1e-9);
    }
}

#[test]
fn gp_recovery_outside_sphere() {
    for &(l, g) in &[(0.95, 0.5), (1.2, 0.3), (1.4142, 0.5), (-1.3, 0.8), (0.4, 1.5), (2.5, 1.0)] {
        let p = XyParams::new(l, g);
        assert!(p.r() > 1.05);
        let reading = measure_geometric_phase(p, 64, 40.0, None).unwrap();
        let err = deg(circular_distance(reading.beta_g, gp_analytic(&p).unwrap()));
        assert!(err <= 0.5, "({l}, {g}): {err}");
    }
}
