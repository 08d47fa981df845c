//! Sensitivity of the interferometric geometric phase to an imperfect input state.
//!
//! The measured input density matrices are not available, so the study draws
//! an ensemble instead: each sample mixes the ground state with a Haar-random
//! direction from its orthogonal complement at a fixed amplitude, so that
//! every sample has exactly the requested fidelity.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{validation, Result};
use crate::geom_phase::{gp_analytic, resolve_geometric_phase, wrap_pi, CycleSpec, Path};
use crate::interferometer::{path_unitary, phase_from_density};
use crate::qmat::{ComplexMatrix, DensityMatrix, StateVector, C64};
use crate::xy_model::{ground_state, XyParams};

pub const MIN_SAMPLES: usize = 30;
/// Polarization of the pseudopure input.
pub const PSEUDOPURE_POLARIZATION: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorModelConfig {
    pub params: XyParams,
    pub segments: usize,
    pub cycle_time: f64,
    /// Target `|⟨Ψ_g|ψ'⟩|` of every sample, the same overlap measure used for
    /// the preparation fidelity.
    pub fidelity: f64,
    pub samples: usize,
    pub seed: u64,
}

impl ErrorModelConfig {
    fn validate(&self) -> Result<()> {
        if self.samples < MIN_SAMPLES {
            return Err(validation(format!(
                "need at least {MIN_SAMPLES} samples, got {}",
                self.samples
            )));
        }
        if !(self.fidelity > 0.0 && self.fidelity <= 1.0) {
            return Err(validation(format!(
                "fidelity must lie in (0, 1], got {}",
                self.fidelity
            )));
        }
        self.params.check_nondegenerate()?;
        CycleSpec::new(Path::C, self.params, self.segments, self.cycle_time)?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErrorStats {
    pub config: ErrorModelConfig,
    /// Ideal `β_g` from the pure ground state, radians.
    pub ideal_beta_g: f64,
    /// Signed `Δβ_g` per sample, radians, in draw order.
    pub deltas: Vec<f64>,
    pub median_abs: f64,
    pub max_abs: f64,
}

impl ErrorStats {
    pub fn render(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "initial-state error model (random-ensemble substitute for measured states)"
        );
        let _ = writeln!(
            out,
            "lambda={} gamma={} segments={} cycle_time={} fidelity={} samples={} seed={}",
            c.params.lambda, c.params.gamma, c.segments, c.cycle_time, c.fidelity, c.samples, c.seed
        );
        let _ = writeln!(out, "ideal beta_g: {:.4} deg", self.ideal_beta_g.to_degrees());
        let _ = writeln!(out, "median |dbeta_g|: {:.4} deg", self.median_abs.to_degrees());
        let _ = writeln!(out, "max |dbeta_g|: {:.4} deg", self.max_abs.to_degrees());
        out
    }
}

/// Unit vector orthogonal to `psi`, uniformly distributed on that sphere.
fn orthogonal_direction(psi: &StateVector, rng: &mut ChaCha8Rng) -> Result<StateVector> {
    loop {
        let raw: Vec<C64> = (0..psi.dim())
            .map(|_| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
            .collect();
        let proj = psi.amplitudes().iter().zip(&raw).map(|(a, b)| a.conj() * b).sum::<C64>();
        let perp: Vec<C64> = raw
            .iter()
            .zip(psi.amplitudes())
            .map(|(b, a)| b - a * proj)
            .collect();
        let norm = perp.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return StateVector::from_amplitudes(perp);
        }
    }
}

/// `F Ψ_g + √(1−F²) χ`.
fn perturbed(psi: &StateVector, chi: &StateVector, fidelity: f64) -> Result<StateVector> {
    let (a, b) = (fidelity, (1.0 - fidelity * fidelity).max(0.0).sqrt());
    StateVector::from_amplitudes(
        psi.amplitudes()
            .iter()
            .zip(chi.amplitudes())
            .map(|(p, c)| p * a + c * b)
            .collect(),
    )
}

fn path_phases(rho: &DensityMatrix, uc: &ComplexMatrix, ucbar: &ComplexMatrix) -> Result<(f64, f64)> {
    Ok((phase_from_density(rho, uc)?, phase_from_density(rho, ucbar)?))
}

/// Halved path-phase shift, folded into `(−π/2, π/2]` since `β_g` is read mod π.
fn combined_shift(dc: f64, dcbar: f64) -> f64 {
    let x = (wrap_pi(dc) + wrap_pi(dcbar)) / 2.0;
    if x > FRAC_PI_2 {
        x - std::f64::consts::PI
    } else if x <= -FRAC_PI_2 {
        x + std::f64::consts::PI
    } else {
        x
    }
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// Draws the ensemble and compares each sample's `β_g` with the ideal one.
pub fn run_error_model(cfg: &ErrorModelConfig) -> Result<ErrorStats> {
    cfg.validate()?;
    let (_, psi) = ground_state(&cfg.params.with_phi(0.0))?;
    let c = CycleSpec::new(Path::C, cfg.params, cfg.segments, cfg.cycle_time)?;
    let uc = path_unitary(&c)?;
    let ucbar = path_unitary(&c.with_path(Path::Cbar))?;

    let ideal_rho = DensityMatrix::pseudopure(&psi, PSEUDOPURE_POLARIZATION)?;
    let (ic, icbar) = path_phases(&ideal_rho, &uc, &ucbar)?;
    let (ideal_beta_g, _) = resolve_geometric_phase(ic, icbar, None, gp_analytic(&cfg.params)?);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut deltas = Vec::with_capacity(cfg.samples);
    for _ in 0..cfg.samples {
        let chi = orthogonal_direction(&psi, &mut rng)?;
        let state = perturbed(&psi, &chi, cfg.fidelity)?;
        let rho = DensityMatrix::pseudopure(&state, PSEUDOPURE_POLARIZATION)?;
        let (pc, pcbar) = path_phases(&rho, &uc, &ucbar)?;
        deltas.push(combined_shift(pc - ic, pcbar - icbar));
    }

    let mut abs: Vec<f64> = deltas.iter().map(|d| d.abs()).collect();
    abs.sort_by(f64::total_cmp);
    Ok(ErrorStats {
        config: *cfg,
        ideal_beta_g,
        median_abs: median(&abs),
        max_abs: *abs.last().expect("samples >= MIN_SAMPLES"),
        deltas,
    })
}
