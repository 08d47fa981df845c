//! Cyclic Jacobi eigensolver for small Hermitian matrices and the
//! eigenbasis matrix exponential built on it.

use num_complex::Complex64 as C64;

use super::matrix::{ComplexMatrix, HERMITIAN_TOL};
use super::state::StateVector;
use crate::error::{validation, Result};

/// Off-diagonal Frobenius norm (relative to `max(1, ‖h‖_max)`) at which
/// the sweeps stop.
pub const JACOBI_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 64;

/// Eigenvalues in ascending order with matching orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, k: usize) -> StateVector {
        let n = self.dim();
        let amps: Vec<C64> = (0..n).map(|i| self.vectors[(i, k)]).collect();
        StateVector::from_normalized_unchecked(amps)
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let lambda = ComplexMatrix::from_real_diag(&self.values);
        &(&self.vectors * &lambda) * &self.vectors.adjoint()
    }
}

fn check_hermitian(h: &ComplexMatrix) -> Result<usize> {
    let n = h.require_square("Hermitian matrix")?;
    let defect = h.hermiticity_defect();
    if defect > HERMITIAN_TOL * h.max_abs().max(1.0) {
        return Err(validation(format!(
            "matrix is not Hermitian (max |M - M†| = {defect:e})"
        )));
    }
    Ok(n)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Each eigenvector column is returned with its first non-negligible
/// amplitude real and positive. Within a degenerate eigenspace the basis is
/// whatever the rotations produced.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = check_hermitian(h)?;
    // Symmetrize so the rotations act on an exactly Hermitian matrix.
    let mut a = (h + &h.adjoint()).scale_real(0.5);
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_TOL * a.max_abs().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));

    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let phase = canonical_phase((0..n).map(|i| v[(i, src)]));
        for i in 0..n {
            vectors[(i, col)] = v[(i, src)] * phase;
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Unit factor that makes the first amplitude above 1e-12 real positive.
pub(crate) fn canonical_phase(amps: impl Iterator<Item = C64>) -> C64 {
    for z in amps {
        let m = z.norm();
        if m > 1e-12 {
            return z.conj() / m;
        }
    }
    C64::new(1.0, 0.0)
}

/// Zeroes `a[p][q]` with the unitary `G = diag(1, e^{-iα}) · [[c, s], [-s, c]]`
/// acting on rows/columns `p, q`, where `a[p][q] = |a[p][q]| e^{iα}`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let n = a.rows();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let e = (apq / mag).conj(); // e^{-iα}

    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = -e * s;
    let g_qq = e * c;

    // A <- A G and V <- V G (column operations).
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
    // A <- G† A (row operations).
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}

/// `e^{-i h t}` for Hermitian `h`, via `V e^{-iΛt} V†`.
pub fn expm_i(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let eig = eig_hermitian(h)?;
    Ok(expm_i_from_eigen(&eig, t))
}

/// Exponential reusing an existing decomposition.
pub fn expm_i_from_eigen(eig: &HermitianEigen, t: f64) -> ComplexMatrix {
    let phases: Vec<C64> = eig
        .values
        .iter()
        .map(|&l| C64::from_polar(1.0, -l * t))
        .collect();
    let d = ComplexMatrix::from_diag(&phases);
    &(&eig.vectors * &d) * &eig.vectors.adjoint()
}
