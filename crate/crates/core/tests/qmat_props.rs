mod common;

use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use std::f64::consts::FRAC_PI_2;
use xygp::qmat::{
    eig_hermitian, expm_i, fidelity_unitary, kron, ComplexMatrix, DensityMatrix, Pauli,
    StateVector, C64,
};
use xygp::xy_model::{build_h, XyParams};

/// `Σ_{k<30} (−iHt)^k / k!`.
fn taylor_expm_i(h: &ComplexMatrix, t: f64) -> ComplexMatrix {
    let n = h.rows();
    let step = h.scale(C64::new(0.0, -t));
    let mut term = ComplexMatrix::identity(n);
    let mut sum = term.clone();
    for k in 1..30 {
        term = (&term * &step).scale_real(1.0 / k as f64);
        sum = &sum + &term;
    }
    sum
}

#[test]
fn kron_examples() {
    let i2 = Pauli::I.matrix();
    assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
    let zz = kron(&Pauli::Z.matrix(), &Pauli::Z.matrix());
    assert_eq!(zz, ComplexMatrix::from_real_diag(&[1.0, -1.0, -1.0, 1.0]));
    let xx = kron(&Pauli::X.matrix(), &Pauli::X.matrix());
    let out = StateVector::basis(4, 0).evolve(&xx).unwrap();
    assert_abs_diff_eq!(out.overlap(&StateVector::basis(4, 3)), 1.0, epsilon = 1e-15);
}

#[test]
fn eigen_examples() {
    let e = eig_hermitian(&Pauli::Z.matrix()).unwrap();
    assert_eq!(e.values, vec![-1.0, 1.0]);
    let e = eig_hermitian(&build_h(&XyParams::new(0.5, 0.5))).unwrap();
    let s = 0.5f64.sqrt();
    for (got, want) in e.values.iter().zip([-1.0, -s, s, 1.0]) {
        assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
    }
}

#[test]
fn non_hermitian_rejected() {
    let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
    assert!(eig_hermitian(&m).is_err());
    assert!(expm_i(&m, 1.0).is_err());
}

#[test]
fn expm_examples() {
    let h = build_h(&XyParams::new(0.5, 0.5));
    assert!(expm_i(&h, 0.0).unwrap().max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    let u = expm_i(&Pauli::Z.matrix(), FRAC_PI_2).unwrap();
    let want = ComplexMatrix::from_diag(&[C64::new(0.0, -1.0), C64::new(0.0, 1.0)]);
    assert!(u.max_abs_diff(&want) < 1e-15);
    let u = expm_i(&h, 1.3).unwrap();
    assert!(u.max_abs_diff(&taylor_expm_i(&h, 1.3)) <= 1e-9);
}

#[test]
fn fidelity_examples() {
    let u = expm_i(&build_h(&XyParams::new(0.3, 0.9)), 0.7).unwrap();
    assert_abs_diff_eq!(fidelity_unitary(&u, &u).unwrap(), 1.0, epsilon = 1e-14);
    let shifted = u.scale(C64::from_polar(1.0, 0.83));
    assert_abs_diff_eq!(fidelity_unitary(&u, &shifted).unwrap(), 1.0, epsilon = 1e-14);
    assert_eq!(fidelity_unitary(&Pauli::I.matrix(), &Pauli::X.matrix()).unwrap(), 0.0);
    assert!(fidelity_unitary(&Pauli::I.matrix(), &ComplexMatrix::identity(4)).is_err());
}

#[test]
fn density_matrix_invariants() {
    let psi = StateVector::from_real(&[1.0, 2.0, 0.0, -1.0]).unwrap();
    assert_abs_diff_eq!(psi.norm(), 1.0, epsilon = 1e-12);
    let rho = DensityMatrix::pseudopure(&psi, 1e-5).unwrap();
    assert_abs_diff_eq!(rho.matrix().trace().re, 1.0, epsilon = 1e-12);
    assert!(rho.deviation().max_abs_diff(&psi.projector()) < 1e-9);
    let bad = ComplexMatrix::from_real_diag(&[1.5, -0.5]);
    assert!(DensityMatrix::new(bad, 1.0).is_err());
    assert!(DensityMatrix::new(ComplexMatrix::identity(2), 1.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn two_by_two_matches_characteristic_roots(h in common::hermitian(2, 5.0)) {
        let (a, d, b) = (h[(0, 0)].re, h[(1, 1)].re, h[(0, 1)]);
        let mean = (a + d) / 2.0;
        let rad = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
        let e = eig_hermitian(&h).unwrap();
        prop_assert!((e.values[0] - (mean - rad)).abs() <= 1e-10);
        prop_assert!((e.values[1] - (mean + rad)).abs() <= 1e-10);
    }

    #[test]
    fn eigenbasis_orthonormal_and_reconstructs(h in common::hermitian(8, 3.0)) {
        let e = eig_hermitian(&h).unwrap();
        let gram = &e.vectors.adjoint() * &e.vectors;
        prop_assert!(gram.max_abs_diff(&ComplexMatrix::identity(8)) <= 1e-10);
        prop_assert!(e.reconstruct().max_abs_diff(&h) <= 1e-10);
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn exponential_group_property(h in common::hermitian(4, 2.0), s in -10.0..10.0f64, t in -10.0..10.0f64) {
        let lhs = &expm_i(&h, s).unwrap() * &expm_i(&h, t).unwrap();
        let rhs = expm_i(&h, s + t).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-9);
        prop_assert!(rhs.is_unitary(1e-10));
    }

    #[test]
    fn exponential_matches_series(h in common::hermitian(4, 1.0), t in -1.5..1.5f64) {
        let u = expm_i(&h, t).unwrap();
        prop_assert!(u.max_abs_diff(&taylor_expm_i(&h, t)) <= 1e-9);
    }

    #[test]
    fn evolution_preserves_norm(h in common::hermitian(4, 2.0), t in -5.0..5.0f64, k in 0usize..4) {
        let psi = StateVector::basis(4, k).evolve(&expm_i(&h, t).unwrap()).unwrap();
        prop_assert!((psi.norm() - 1.0).abs() <= 1e-12);
    }
}
