//! Two-site XY Hamiltonian in a transverse field, its φ-rotated family and
//! the closed-form spectral data used everywhere else.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::qmat::{expm_i, pauli_string, ComplexMatrix, Pauli, StateVector, C64};

/// Distance from the level crossing `r = 1` below which the ground state
/// is treated as degenerate.
pub const DEGENERACY_GUARD: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XyParams {
    pub lambda: f64,
    pub gamma: f64,
    pub phi: f64,
}

impl XyParams {
    pub fn new(lambda: f64, gamma: f64) -> Self {
        Self {
            lambda,
            gamma,
            phi: 0.0,
        }
    }

    pub fn with_phi(self, phi: f64) -> Self {
        Self { phi, ..self }
    }

    pub fn r(&self) -> f64 {
        self.lambda.hypot(self.gamma)
    }

    /// `atan2(γ, λ)`, in `(−π, π]`.
    pub fn theta(&self) -> f64 {
        self.gamma.atan2(self.lambda)
    }

    /// True when the ground state is the `r > 1` product-like branch.
    pub fn outer(&self) -> bool {
        self.r() > 1.0
    }

    pub fn check_nondegenerate(&self) -> Result<()> {
        let r = self.r();
        if (r - 1.0).abs() <= DEGENERACY_GUARD || !r.is_finite() {
            return Err(Error::Degenerate {
                r,
                guard: DEGENERACY_GUARD,
            });
        }
        Ok(())
    }
}

/// `H = −[(1+γ)/2 XX + (1−γ)/2 YY] − (λ/2)(Z₁ + Z₂)`, basis `|00⟩,|01⟩,|10⟩,|11⟩`.
pub fn build_h(p: &XyParams) -> ComplexMatrix {
    let (l, g) = (p.lambda, p.gamma);
    ComplexMatrix::from_real_rows(&[
        &[-l, 0.0, 0.0, -g],
        &[0.0, 0.0, -1.0, 0.0],
        &[0.0, -1.0, 0.0, 0.0],
        &[-g, 0.0, 0.0, l],
    ])
    .expect("4x4 literal")
}

/// `U_z(φ) = e^{−iφ/2 Z₁} e^{−iφ/2 Z₂}`.
pub fn uz(phi: f64) -> ComplexMatrix {
    let e = |k: f64| C64::from_polar(1.0, k * phi);
    ComplexMatrix::from_diag(&[e(-1.0), e(0.0), e(0.0), e(1.0)])
}

/// `H̃ = U_z(φ)† H U_z(φ)`, written out entrywise.
pub fn build_h_tilde(p: &XyParams) -> ComplexMatrix {
    let mut h = build_h(p);
    let corner = C64::from_polar(p.gamma, 2.0 * p.phi);
    h[(0, 3)] = -corner;
    h[(3, 0)] = -corner.conj();
    h
}

/// Ground energy and state of `H̃(λ, γ, φ)`.
pub fn ground_state(p: &XyParams) -> Result<(f64, StateVector)> {
    p.check_nondegenerate()?;
    let zero = C64::new(0.0, 0.0);
    if p.outer() {
        let half = p.theta() / 2.0;
        let amps = vec![
            C64::new(half.cos(), 0.0),
            zero,
            zero,
            C64::from_polar(half.sin(), -2.0 * p.phi),
        ];
        Ok((-p.r(), StateVector::from_amplitudes(amps)?))
    } else {
        let amps = vec![zero, C64::new(1.0, 0.0), C64::new(1.0, 0.0), zero];
        Ok((-1.0, StateVector::from_amplitudes(amps)?))
    }
}

/// `(v_d, h_d)` with `v_d H v_d† = h_d = diag(−r, −1, 1, r)`.
///
/// `v_d = e^{i(θ−π/2)/4 X₁Y₂} e^{i(θ+π/2)/4 Y₁X₂}`: the first factor rotates
/// the `|01⟩,|10⟩` block, the second the `|00⟩,|11⟩` block. Its adjoint
/// is the diagonalizer written `V_d` in the figure captions; the adjoint
/// convention is kept here so `v_d` maps the lab frame into the eigenframe.
pub fn vd_hd_factorization(p: &XyParams) -> (ComplexMatrix, ComplexMatrix) {
    let r = p.r();
    let h_d = ComplexMatrix::from_real_diag(&[-r, -1.0, 1.0, r]);
    (vd_from_theta(p.theta()), h_d)
}

/// The `v_d` factor alone; it depends on `(λ, γ)` only through `θ`.
pub fn vd_from_theta(theta: f64) -> ComplexMatrix {
    let xy = pauli_string(&[Pauli::X, Pauli::Y]);
    let yx = pauli_string(&[Pauli::Y, Pauli::X]);
    let a = expm_i(&xy, -(theta - FRAC_PI_2) / 4.0).expect("Pauli string is Hermitian");
    let b = expm_i(&yx, -(theta + FRAC_PI_2) / 4.0).expect("Pauli string is Hermitian");
    &a * &b
}
