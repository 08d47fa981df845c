//! Ancilla interferometry around the cyclic paths C and C̄.
//!
//! Register order is ancilla ⊗ spin 1 ⊗ spin 2, ancilla most significant.

use std::f64::consts::PI;

use crate::error::{validation, Error, Result};
use crate::geom_phase::{gp_analytic, resolve_geometric_phase, wrap_pi, CycleSpec, Path, PhaseReading};
use crate::qmat::{
    expm_i, kron, on_site, ComplexMatrix, DensityMatrix, StateVector, C64,
};
use crate::xy_model::{build_h_tilde, ground_state, XyParams};

/// Spin flipped by `R_{kz}(π)` when building the C̄ generator.
pub const DEFAULT_FLIP_SPIN: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InterferometryResult {
    pub spec: CycleSpec,
    /// `arg(ancilla_coherence)`, in `(−π, π]`.
    pub beta_t: f64,
    /// `2⟨|0⟩⟨1|_a⟩`, equal to `⟨Ψ_g|U_path|Ψ_g⟩`.
    pub ancilla_coherence: C64,
    /// `|⟨Ψ_g|U_path Ψ_g⟩|`.
    pub system_return_fidelity: f64,
}

impl InterferometryResult {
    pub fn path(&self) -> Path {
        self.spec.path
    }
}

/// `R_{kz}(π) = e^{−iπ/2 Z_k}` on the two system spins, `k ∈ {1, 2}`.
pub fn z_flip(spin: usize) -> Result<ComplexMatrix> {
    if !(1..=2).contains(&spin) {
        return Err(validation(format!("system spin must be 1 or 2, got {spin}")));
    }
    let rz = ComplexMatrix::from_diag(&[C64::new(0.0, -1.0), C64::new(0.0, 1.0)]);
    Ok(on_site(&rz, spin - 1, 2))
}

/// `R_{kz}(π)† H̃(−λ, γ, φ) R_{kz}(π)`, equal to `−H̃(λ, γ, φ)`.
pub fn cbar_generator(p: &XyParams, spin: usize) -> Result<ComplexMatrix> {
    let r = z_flip(spin)?;
    let flipped = build_h_tilde(&XyParams {
        lambda: -p.lambda,
        ..*p
    });
    Ok(&(&r.adjoint() * &flipped) * &r)
}

fn generator(path: Path, p: &XyParams) -> Result<ComplexMatrix> {
    match path {
        Path::C => Ok(build_h_tilde(p)),
        Path::Cbar => cbar_generator(p, DEFAULT_FLIP_SPIN),
    }
}

/// Angles visited by the path: `mπ/M` for C, `π + mπ/M` for C̄.
fn path_angles(spec: &CycleSpec) -> Vec<f64> {
    let offset = match spec.path {
        Path::C => 0.0,
        Path::Cbar => PI,
    };
    spec.angles().map(|phi| offset + phi).collect()
}

/// `Π_m e^{−i G(φ_m) τ}` over `m = 0..=M`, later steps to the left.
pub fn path_unitary(spec: &CycleSpec) -> Result<ComplexMatrix> {
    spec.validate()?;
    spec.params.check_nondegenerate()?;
    let tau = spec.step_time();
    let mut u = ComplexMatrix::identity(4);
    for phi in path_angles(spec) {
        let g = generator(spec.path, &spec.params.with_phi(phi))?;
        u = &expm_i(&g, tau)? * &u;
    }
    Ok(u)
}

/// `|0⟩⟨0| ⊗ 1 + |1⟩⟨1| ⊗ u`.
pub fn controlled(u: &ComplexMatrix) -> ComplexMatrix {
    let n = u.rows();
    let mut out = ComplexMatrix::identity(2 * n);
    for i in 0..n {
        for j in 0..n {
            out[(n + i, n + j)] = u[(i, j)];
        }
    }
    out
}

/// Stepwise controlled evolution `Π_m e^{−i (1−Z_a)/2 ⊗ G(φ_m) τ}` on the
/// three-qubit register.
pub fn controlled_cycle(spec: &CycleSpec) -> Result<ComplexMatrix> {
    spec.validate()?;
    spec.params.check_nondegenerate()?;
    let tau = spec.step_time();
    let one = ComplexMatrix::from_real_diag(&[0.0, 1.0]);
    let mut u = ComplexMatrix::identity(8);
    for phi in path_angles(spec) {
        let g = generator(spec.path, &spec.params.with_phi(phi))?;
        u = &expm_i(&kron(&one, &g), tau)? * &u;
    }
    Ok(u)
}

/// Ancilla in `|+⟩`, system in the `φ = 0` ground state, controlled cycle,
/// then quadrature readout of the ancilla.
pub fn run_interferometry(spec: &CycleSpec) -> Result<InterferometryResult> {
    let (_, psi) = ground_state(&spec.params.with_phi(0.0))?;
    let plus = StateVector::from_real(&[1.0, 1.0])?;
    let full = plus.kron(&psi).evolve(&controlled_cycle(spec)?)?;

    let lower = on_site(&ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]])?, 0, 3);
    let coherence = full.expectation(&lower)? * 2.0;

    let amps = full.amplitudes();
    let sys_final = StateVector::from_amplitudes(amps[4..].to_vec())?;
    Ok(InterferometryResult {
        spec: *spec,
        beta_t: wrap_pi(coherence.arg()),
        ancilla_coherence: coherence,
        system_return_fidelity: psi.overlap(&sys_final),
    })
}

/// Combines a C and a C̄ reading into the geometric phase.
///
/// `previous` is the β_g of the preceding sweep point, when there is one.
pub fn combine_phases(
    rc: &InterferometryResult,
    rcbar: &InterferometryResult,
    previous: Option<f64>,
) -> Result<PhaseReading> {
    if rc.path() != Path::C || rcbar.path() != Path::Cbar {
        return Err(validation("combine_phases expects a C reading and a Cbar reading"));
    }
    let (a, b) = (&rc.spec, &rcbar.spec);
    if a.params.lambda != b.params.lambda
        || a.params.gamma != b.params.gamma
        || a.segments != b.segments
        || a.cycle_time != b.cycle_time
    {
        return Err(validation("C and Cbar readings come from different cycle specs"));
    }
    let analytic = gp_analytic(&a.params)?;
    let (beta_g, analytic_assisted) =
        resolve_geometric_phase(rc.beta_t, rcbar.beta_t, previous, analytic);
    Ok(PhaseReading {
        beta_c: rc.beta_t,
        beta_cbar: rcbar.beta_t,
        beta_g,
        beta_g_analytic: analytic,
        analytic_assisted,
    })
}

/// `arg Tr[U ρ_Δ]` over the deviation part of `rho`.
pub fn phase_from_density(rho: &DensityMatrix, u_path: &ComplexMatrix) -> Result<f64> {
    if rho.dim() != u_path.rows() || !u_path.is_square() {
        return Err(Error::DimensionMismatch {
            expected: format!("{0}x{0} propagator", rho.dim()),
            got: format!("{}x{}", u_path.rows(), u_path.cols()),
        });
    }
    let tr = (u_path * &rho.deviation()).trace();
    if tr.norm() < 1e-12 {
        return Err(Error::UndefinedPhase(tr.norm()));
    }
    Ok(tr.arg())
}

/// Both paths at once, with the resolution rule applied.
pub fn measure_geometric_phase(
    params: XyParams,
    segments: usize,
    cycle_time: f64,
    previous: Option<f64>,
) -> Result<PhaseReading> {
    let c = CycleSpec::new(Path::C, params, segments, cycle_time)?;
    let rc = run_interferometry(&c)?;
    let rcbar = run_interferometry(&c.with_path(Path::Cbar))?;
    combine_phases(&rc, &rcbar, previous)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom_phase::circular_distance;
    use crate::qmat::Pauli;

    fn spec(path: Path, l: f64, g: f64, m: usize, t: f64) -> CycleSpec {
        CycleSpec::new(path, XyParams::new(l, g), m, t).unwrap()
    }

    #[test]
    fn cbar_generator_identity_both_spins() {
        for &(l, g, phi) in &[(0.3, 0.5, 0.2), (1.4, -0.7, 2.9), (-0.8, 1.1, 5.0)] {
            let p = XyParams::new(l, g).with_phi(phi);
            let neg = build_h_tilde(&p).scale_real(-1.0);
            for k in [1, 2] {
                assert!(cbar_generator(&p, k).unwrap().max_abs_diff(&neg) < 1e-12);
            }
        }
        assert!(z_flip(0).is_err());
    }

    #[test]
    fn controlled_cycle_block_structure() {
        let s = spec(Path::C, 0.878, 0.5, 5, 10.7);
        let u = controlled_cycle(&s).unwrap();
        let want = controlled(&path_unitary(&s).unwrap());
        assert!(u.max_abs_diff(&want) < 1e-10);
        assert!(u.block(0, 0, 4).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-10);
        assert!(u.block(0, 4, 4).max_abs() < 1e-10);
        assert!(u.is_unitary(1e-10));
    }

    #[test]
    fn zero_time_limit() {
        let s = spec(Path::C, 0.878, 0.5, 1, 1e-12);
        let u = controlled_cycle(&s).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(8)) < 1e-10);
        let r = run_interferometry(&s).unwrap();
        assert!(r.beta_t.abs() < 1e-9);
        assert!((r.ancilla_coherence.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bell_state_returns_with_dynamical_phase() {
        let s = spec(Path::C, 0.0, 0.5, 5, 3.0);
        let (_, psi) = ground_state(&s.params).unwrap();
        let out = psi.evolve(&path_unitary(&s).unwrap()).unwrap();
        let z = psi.inner(&out);
        assert!((z.norm() - 1.0).abs() < 1e-12);
        assert!((z.arg() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn coherence_magnitude_equals_return_fidelity() {
        for (l, m, t) in [(0.878, 5, 10.7), (1.2, 3, 2.0), (0.4, 7, 5.0)] {
            for path in [Path::C, Path::Cbar] {
                let r = run_interferometry(&spec(path, l, 0.5, m, t)).unwrap();
                assert!((r.ancilla_coherence.norm() - r.system_return_fidelity).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn combine_rejects_mismatched_inputs() {
        let rc = run_interferometry(&spec(Path::C, 0.0, 0.5, 5, 3.0)).unwrap();
        let rb = run_interferometry(&spec(Path::Cbar, 0.0, 0.5, 5, 4.0)).unwrap();
        assert!(combine_phases(&rc, &rb, None).is_err());
        assert!(combine_phases(&rc, &rc, None).is_err());
    }

    #[test]
    fn phase_from_pure_density() {
        let p = XyParams::new(0.878, 0.5);
        let (_, psi) = ground_state(&p).unwrap();
        let alpha = 0.7;
        let u = ComplexMatrix::identity(4).scale(C64::from_polar(1.0, alpha));
        let got = phase_from_density(&DensityMatrix::pure(&psi), &u).unwrap();
        assert!((got - alpha).abs() < 1e-12);
    }

    #[test]
    fn pseudopure_identity_part_matters_for_full_trace() {
        let s = spec(Path::C, 0.878, 0.5, 5, 10.7);
        let u = path_unitary(&s).unwrap();
        let (_, psi) = ground_state(&s.params).unwrap();
        let eps = 1e-5;
        let rho = DensityMatrix::pseudopure(&psi, eps).unwrap();
        let from_dev = phase_from_density(&rho, &u).unwrap();
        let pure = psi.inner(&psi.evolve(&u).unwrap()).arg();
        assert!(circular_distance(from_dev, pure) < 1e-9);
        let full = (&u * rho.matrix()).trace();
        let mixed_part = u.trace() * ((1.0 - eps) / 4.0);
        assert!(mixed_part.norm() > 1e3 * (full - mixed_part).norm());
    }

    #[test]
    fn phase_from_density_errors() {
        let psi = StateVector::basis(4, 0);
        let rho = DensityMatrix::pure(&psi);
        assert!(phase_from_density(&rho, &ComplexMatrix::identity(8)).is_err());
        let flip = kron(&Pauli::X.matrix(), &Pauli::I.matrix());
        assert!(matches!(
            phase_from_density(&rho, &flip),
            Err(Error::UndefinedPhase(_))
        ));
    }
}
