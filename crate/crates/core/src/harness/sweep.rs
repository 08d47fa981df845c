//! Geometric phase along a line of constant γ, by three independent routes.

use std::io::Write;

use rayon::prelude::*;

use super::format::g6;
use crate::error::{validation, Error, Result};
use crate::geom_phase::{gp_analytic, gp_discrete, resolve_geometric_phase, wrap_pi, CycleSpec, Path};
use crate::interferometer::run_interferometry;
use crate::xy_model::XyParams;

/// Segment count of the discrete Pancharatnam reference column.
pub const DISCRETE_SEGMENTS: usize = 4096;
pub const DEFAULT_SEGMENTS: usize = 64;
pub const DEFAULT_CYCLE_TIME: f64 = 40.0;

pub const SWEEP_HEADER: &str = "lambda,gamma,r,theta_deg,beta_g_analytic_deg,beta_g_discrete_deg,beta_C_deg,beta_Cbar_deg,beta_g_interf_deg";

#[derive(Clone, Debug, PartialEq)]
pub enum LambdaSpec {
    List(Vec<f64>),
    Grid { min: f64, max: f64, steps: usize },
}

impl LambdaSpec {
    /// Values in ascending order.
    pub fn values(&self) -> Result<Vec<f64>> {
        let mut v = match self {
            LambdaSpec::List(list) => {
                if list.is_empty() {
                    return Err(validation("lambda list is empty"));
                }
                list.clone()
            }
            &LambdaSpec::Grid { min, max, steps } => {
                if steps == 0 {
                    return Err(validation("lambda grid needs at least one step"));
                }
                if !(min <= max) {
                    return Err(validation(format!("lambda-min {min} exceeds lambda-max {max}")));
                }
                if steps == 1 {
                    vec![min]
                } else {
                    (0..steps)
                        .map(|k| min + (max - min) * k as f64 / (steps - 1) as f64)
                        .collect()
                }
            }
        };
        if let Some(bad) = v.iter().find(|x| !x.is_finite()) {
            return Err(validation(format!("lambda value {bad} is not finite")));
        }
        v.sort_by(f64::total_cmp);
        Ok(v)
    }
}

/// Parses `"0,0.327,0.5312"`.
pub fn parse_lambda_list(text: &str) -> Result<Vec<f64>> {
    let list = text
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| validation(format!("invalid lambda value {tok:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if list.is_empty() {
        return Err(validation("lambda list is empty"));
    }
    Ok(list)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub gamma: f64,
    pub lambdas: LambdaSpec,
    pub segments: usize,
    pub cycle_time: f64,
    /// Preparation adiabaticity. The interferometric column starts from the
    /// exact ground state, so this only travels with the configuration.
    pub kappa: f64,
    pub seed: u64,
}

impl SweepConfig {
    pub fn new(gamma: f64, lambdas: LambdaSpec) -> Self {
        Self {
            gamma,
            lambdas,
            segments: DEFAULT_SEGMENTS,
            cycle_time: DEFAULT_CYCLE_TIME,
            kappa: crate::adiabatic::DEFAULT_KAPPA,
            seed: 0,
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.gamma.is_finite() {
            return Err(validation(format!("gamma must be finite, got {}", self.gamma)));
        }
        if !(self.kappa > 0.0 && self.kappa < 1.0) {
            return Err(validation(format!("kappa must lie in (0, 1), got {}", self.kappa)));
        }
        CycleSpec::new(Path::C, XyParams::new(0.0, self.gamma), self.segments, self.cycle_time)?;
        Ok(())
    }
}

/// One λ point; angles in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub lambda: f64,
    pub gamma: f64,
    pub r: f64,
    pub theta: f64,
    pub gp_analytic: f64,
    pub gp_discrete: f64,
    pub beta_c: f64,
    pub beta_cbar: f64,
    pub beta_g_interf: f64,
    pub analytic_assisted: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    /// λ values within the degeneracy guard of `r = 1`.
    pub skipped: Vec<f64>,
}

struct PointReading {
    params: XyParams,
    analytic: f64,
    discrete: f64,
    beta_c: f64,
    beta_cbar: f64,
}

fn measure_point(params: XyParams, cfg: &SweepConfig) -> Result<PointReading> {
    let analytic = gp_analytic(&params)?;
    let discrete = gp_discrete(&params, DISCRETE_SEGMENTS)?;
    let c = CycleSpec::new(Path::C, params, cfg.segments, cfg.cycle_time)?;
    let rc = run_interferometry(&c)?;
    let rcbar = run_interferometry(&c.with_path(Path::Cbar))?;
    Ok(PointReading {
        params,
        analytic,
        discrete,
        beta_c: rc.beta_t,
        beta_cbar: rcbar.beta_t,
    })
}

/// Runs every λ point in parallel, then resolves the mod-π branch of each
/// interferometric phase in ascending λ, continuing from the previous point.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    cfg.validate()?;
    let lambdas = cfg.lambdas.values()?;
    let mut skipped = Vec::new();
    let mut points = Vec::new();
    for &lambda in &lambdas {
        let p = XyParams::new(lambda, cfg.gamma);
        match p.check_nondegenerate() {
            Ok(()) => points.push(p),
            Err(Error::Degenerate { r, .. }) => {
                log::warn!("skipping lambda={lambda}, gamma={}: r={r} is at the level crossing", cfg.gamma);
                skipped.push(lambda);
            }
            Err(e) => return Err(e),
        }
    }

    let readings = points
        .par_iter()
        .map(|&p| measure_point(p, cfg))
        .collect::<Result<Vec<_>>>()?;

    let mut previous = None;
    let rows = readings
        .into_iter()
        .map(|pt| {
            let (beta_g, assisted) =
                resolve_geometric_phase(pt.beta_c, pt.beta_cbar, previous, pt.analytic);
            previous = Some(beta_g);
            SweepRow {
                lambda: pt.params.lambda,
                gamma: pt.params.gamma,
                r: pt.params.r(),
                theta: pt.params.theta(),
                gp_analytic: pt.analytic,
                gp_discrete: pt.discrete,
                beta_c: wrap_pi(pt.beta_c),
                beta_cbar: wrap_pi(pt.beta_cbar),
                beta_g_interf: beta_g,
                analytic_assisted: assisted,
            }
        })
        .collect();
    Ok(SweepOutput { rows, skipped })
}

/// Writes the sweep table, angles in degrees.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(SWEEP_HEADER.split(','))?;
    for r in rows {
        w.write_record([
            g6(r.lambda),
            g6(r.gamma),
            g6(r.r),
            g6(r.theta.to_degrees()),
            g6(r.gp_analytic.to_degrees()),
            g6(r.gp_discrete.to_degrees()),
            g6(r.beta_c.to_degrees()),
            g6(r.beta_cbar.to_degrees()),
            g6(r.beta_g_interf.to_degrees()),
        ])?;
    }
    w.flush().map_err(Error::Io)?;
    Ok(())
}
