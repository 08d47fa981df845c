//! Dense complex linear algebra for registers of up to three qubits.

mod eigen;
mod matrix;
mod state;

pub use eigen::{eig_hermitian, expm_i, expm_i_from_eigen, HermitianEigen, JACOBI_TOL};
pub use matrix::{
    fidelity_unitary, kron, on_site, pauli_string, ComplexMatrix, Pauli, HERMITIAN_TOL,
    UNITARY_TOL,
};
pub use state::{DensityMatrix, StateVector, NORM_TOL};

pub use num_complex::Complex64 as C64;
