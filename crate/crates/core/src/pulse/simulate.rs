use std::f64::consts::PI;

use super::sequence::{Axis, Element, PulseSequence, SpinSystem};
use crate::error::{Error, Result};
use crate::qmat::{fidelity_unitary, on_site, ComplexMatrix, Pauli, C64};

/// `e^{−i angle/2 σ_axis}` as a 2×2 matrix.
pub fn rf_rotation(axis: Axis, angle: f64) -> ComplexMatrix {
    let (sign, pauli) = match axis {
        Axis::X => (1.0, Pauli::X),
        Axis::MinusX => (-1.0, Pauli::X),
        Axis::Y => (1.0, Pauli::Y),
        Axis::MinusY => (-1.0, Pauli::Y),
    };
    let half = sign * angle / 2.0;
    &ComplexMatrix::identity(2).scale_real(half.cos())
        + &pauli.matrix().scale(C64::new(0.0, -half.sin()))
}

/// `e^{−i angle/2 σ_z}`.
pub fn z_rotation(angle: f64) -> ComplexMatrix {
    ComplexMatrix::from_diag(&[
        C64::from_polar(1.0, -angle / 2.0),
        C64::from_polar(1.0, angle / 2.0),
    ])
}

/// Diagonal of `H_NMR = −Σ ω_i/2 Z_i + Σ_{i<j} πJ_ij/2 Z_i Z_j` (rad/s) on the first `n` spins.
pub fn nmr_energies(sys: &SpinSystem, n: usize) -> Vec<f64> {
    let dim = 1usize << n;
    let z = |state: usize, spin: usize| -> f64 {
        if (state >> (n - 1 - spin)) & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    };
    (0..dim)
        .map(|b| {
            let mut e = 0.0;
            for i in 0..n {
                e -= PI * sys.offset_hz(i) * z(b, i);
            }
            for (i, j, hz) in sys.pairs() {
                if i < n && j < n {
                    e += PI * hz / 2.0 * z(b, i) * z(b, j);
                }
            }
            e
        })
        .collect()
}

/// Propagator of `seq` on the first `n_spins` spins of `sys`.
pub fn simulate_sequence(seq: &PulseSequence, sys: &SpinSystem, n_spins: usize) -> Result<ComplexMatrix> {
    if n_spins == 0 || n_spins > sys.n_spins() {
        return Err(Error::DimensionMismatch {
            expected: format!("1..={} spins", sys.n_spins()),
            got: n_spins.to_string(),
        });
    }
    if let Some(spin) = seq.max_spin() {
        if spin >= n_spins {
            return Err(Error::UnknownSpin {
                label: spin.to_string(),
                n_spins,
            });
        }
    }
    let energies = nmr_energies(sys, n_spins);
    let dim = 1usize << n_spins;
    let mut u = ComplexMatrix::identity(dim);
    for e in seq.elements() {
        match *e {
            Element::RfPulse { spin, axis, angle } => {
                u = &on_site(&rf_rotation(axis, angle), spin, n_spins) * &u;
            }
            Element::ZRotation { spin, angle } => {
                u = &on_site(&z_rotation(angle), spin, n_spins) * &u;
            }
            Element::Delay { seconds } => {
                // Diagonal propagator: scale rows in place.
                for (row, &en) in energies.iter().enumerate() {
                    let phase = C64::from_polar(1.0, -en * seconds);
                    for col in 0..dim {
                        u[(row, col)] *= phase;
                    }
                }
            }
        }
    }
    Ok(u)
}

/// `fidelity_unitary(simulate_sequence(seq), target)` on a register sized by `target`.
pub fn verify(seq: &PulseSequence, target: &ComplexMatrix, sys: &SpinSystem) -> Result<f64> {
    let dim = target.rows();
    if !target.is_square() || !dim.is_power_of_two() || dim < 2 {
        return Err(Error::DimensionMismatch {
            expected: "square 2^n target".into(),
            got: format!("{}x{}", target.rows(), target.cols()),
        });
    }
    let n = dim.trailing_zeros() as usize;
    let u = simulate_sequence(seq, sys, n)?;
    fidelity_unitary(&u, target)
}
