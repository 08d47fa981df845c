use num_complex::Complex64 as C64;

use super::eigen::{canonical_phase, eig_hermitian};
use super::matrix::{kron, ComplexMatrix};
use crate::error::{validation, Error, Result};

/// Normalization tolerance for every constructed or evolved state.
pub const NORM_TOL: f64 = 1e-12;

/// Normalized complex state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    /// Normalizes the given amplitudes; fails on a zero vector.
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(validation("cannot normalize a zero or non-finite vector"));
        }
        Ok(Self {
            amps: amps.into_iter().map(|z| z / norm).collect(),
        })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::from_amplitudes(amps.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub(crate) fn from_normalized_unchecked(amps: Vec<C64>) -> Self {
        Self { amps }
    }

    /// Computational basis ket `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|`.
    pub fn overlap(&self, other: &Self) -> f64 {
        self.inner(other).norm()
    }

    /// `U|ψ⟩`, renormalized to absorb rounding drift.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::from_amplitudes(u.apply(&self.amps)?)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self { amps }
    }

    pub fn scale_phase(&self, phase: C64) -> Self {
        Self {
            amps: self.amps.iter().map(|z| z * phase).collect(),
        }
    }

    /// Same ray with the first non-negligible amplitude real positive.
    pub fn with_canonical_phase(&self) -> Self {
        self.scale_phase(canonical_phase(self.amps.iter().copied()))
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> ComplexMatrix {
        let col = ComplexMatrix::new(self.dim(), 1, self.amps.clone()).expect("column shape");
        &col * &col.adjoint()
    }

    /// `⟨ψ|O|ψ⟩`.
    pub fn expectation(&self, op: &ComplexMatrix) -> Result<C64> {
        let applied = op.apply(&self.amps)?;
        Ok(self
            .amps
            .iter()
            .zip(&applied)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// Density matrix with an NMR-style polarization `ε`:
/// `ρ = (1 − ε)/d · 1 + ε ρ_Δ`, where `ρ_Δ` is the deviation part.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    polarization: f64,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, polarization: f64) -> Result<Self> {
        matrix.require_square("density matrix")?;
        if !(polarization > 0.0 && polarization <= 1.0) {
            return Err(validation(format!(
                "polarization must lie in (0, 1], got {polarization}"
            )));
        }
        let tr = matrix.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > 1e-12 {
            return Err(validation(format!("density matrix trace {tr} != 1")));
        }
        let eig = eig_hermitian(&matrix)?;
        if let Some(&min) = eig.values.first() {
            if min < -1e-12 {
                return Err(validation(format!(
                    "density matrix has negative eigenvalue {min:e}"
                )));
            }
        }
        Ok(Self {
            matrix,
            polarization,
        })
    }

    pub fn pure(state: &StateVector) -> Self {
        Self {
            matrix: state.projector(),
            polarization: 1.0,
        }
    }

    /// `(1 − ε)/d · 1 + ε |ψ⟩⟨ψ|`.
    pub fn pseudopure(state: &StateVector, polarization: f64) -> Result<Self> {
        let d = state.dim();
        let mixed = ComplexMatrix::identity(d).scale_real((1.0 - polarization) / d as f64);
        let m = &mixed + &state.projector().scale_real(polarization);
        Self::new(m, polarization)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn polarization(&self) -> f64 {
        self.polarization
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `ρ_Δ = [ρ − (1 − ε)/d · 1] / ε`, the part NMR signals see.
    pub fn deviation(&self) -> ComplexMatrix {
        let d = self.dim();
        let eps = self.polarization;
        let mixed = ComplexMatrix::identity(d).scale_real((1.0 - eps) / d as f64);
        (&self.matrix - &mixed).scale_real(1.0 / eps)
    }

    /// `ρ_a ⊗ ρ` for a pure ancilla preparation.
    pub fn with_ancilla(&self, ancilla: &StateVector) -> Result<Self> {
        if ancilla.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: "qubit ancilla".into(),
                got: format!("dimension {}", ancilla.dim()),
            });
        }
        Ok(Self {
            matrix: kron(&ancilla.projector(), &self.matrix),
            polarization: self.polarization,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_normalizes() {
        let s = StateVector::from_real(&[3.0, 4.0]).unwrap();
        assert!((s.norm() - 1.0).abs() < NORM_TOL);
        assert!(StateVector::from_real(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn pseudopure_deviation_recovers_pure_part() {
        let psi = StateVector::from_real(&[0.0, 1.0, 1.0, 0.0]).unwrap();
        let rho = DensityMatrix::pseudopure(&psi, 1e-5).unwrap();
        assert!(rho.deviation().max_abs_diff(&psi.projector()) < 1e-9);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_trace_and_negative_spectrum() {
        let m = ComplexMatrix::from_real_diag(&[0.7, 0.7]);
        assert!(DensityMatrix::new(m, 1.0).is_err());
        let m = ComplexMatrix::from_real_diag(&[1.5, -0.5]);
        assert!(DensityMatrix::new(m, 1.0).is_err());
    }

    #[test]
    fn canonical_phase_makes_leading_amplitude_positive() {
        let s = StateVector::from_amplitudes(vec![C64::new(0.0, 0.0), C64::new(0.0, -2.0)])
            .unwrap()
            .with_canonical_phase();
        assert_eq!(s.amplitudes()[1], C64::new(1.0, 0.0));
    }
}
