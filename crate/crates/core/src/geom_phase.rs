//! Geometric phases of the XY ground state: closed form, discrete
//! Pancharatnam product, and the dynamical phases of paths C and C̄.

use std::f64::consts::{PI, TAU};

use crate::error::{validation, Result};
use crate::qmat::{eig_hermitian, StateVector, C64};
use crate::xy_model::{build_h_tilde, XyParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Path {
    /// φ: 0 → π under H̃.
    C,
    /// φ: π → 2π under −H̃.
    Cbar,
}

impl Path {
    pub fn label(self) -> &'static str {
        match self {
            Path::C => "C",
            Path::Cbar => "Cbar",
        }
    }
}

impl std::str::FromStr for Path {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C" | "c" => Ok(Path::C),
            "Cbar" | "cbar" | "CBAR" => Ok(Path::Cbar),
            other => Err(validation(format!("unknown path {other:?}, expected C or Cbar"))),
        }
    }
}

/// One cyclic sweep of φ over a half-period in `segments` piecewise-constant steps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CycleSpec {
    pub path: Path,
    pub params: XyParams,
    pub segments: usize,
    pub cycle_time: f64,
}

impl CycleSpec {
    pub fn new(path: Path, params: XyParams, segments: usize, cycle_time: f64) -> Result<Self> {
        let spec = Self {
            path,
            params,
            segments,
            cycle_time,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.segments < 1 {
            return Err(validation("cycle needs at least one segment"));
        }
        if !(self.cycle_time > 0.0 && self.cycle_time.is_finite()) {
            return Err(validation(format!(
                "cycle time must be positive, got {}",
                self.cycle_time
            )));
        }
        Ok(())
    }

    /// Duration of each of the `M + 1` steps, `τ = T/(M+1)`.
    pub fn step_time(&self) -> f64 {
        self.cycle_time / (self.segments as f64 + 1.0)
    }

    /// `φ_m = mπ/M` for `m = 0..=M`.
    pub fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        let m = self.segments as f64;
        (0..=self.segments).map(move |k| k as f64 * PI / m)
    }

    pub fn with_path(self, path: Path) -> Self {
        Self { path, ..self }
    }
}

/// Phases read out from a C / C̄ pair, all in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseReading {
    /// In `(−π, π]`.
    pub beta_c: f64,
    /// In `(−π, π]`.
    pub beta_cbar: f64,
    /// In `[0, 2π)`.
    pub beta_g: f64,
    pub beta_g_analytic: f64,
    /// The mod-π branch was chosen against the closed form rather than sweep history.
    pub analytic_assisted: bool,
}

/// Wraps into `(−π, π]`.
pub fn wrap_pi(x: f64) -> f64 {
    let y = x.rem_euclid(TAU);
    if y > PI {
        y - TAU
    } else {
        y
    }
}

/// Wraps into `[0, 2π)`.
pub fn wrap_two_pi(x: f64) -> f64 {
    let y = x.rem_euclid(TAU) + 0.0;
    if y >= TAU {
        0.0
    } else {
        y
    }
}

/// Shortest angular separation, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    wrap_pi(a - b).abs()
}

/// `0` for `r < 1`, `π(1 − cos θ)` for `r > 1`.
pub fn gp_analytic(p: &XyParams) -> Result<f64> {
    p.check_nondegenerate()?;
    if !p.outer() {
        return Ok(0.0);
    }
    Ok(wrap_two_pi(PI * (1.0 - p.theta().cos())))
}

/// Pancharatnam phase of the numerically diagonalized ground state over
/// `φ_m = mπ/M`, `m = 0..M`, closed by `ψ(φ_M) = ψ(φ_0)`.
pub fn gp_discrete(p: &XyParams, segments: usize) -> Result<f64> {
    p.check_nondegenerate()?;
    if segments < 8 {
        return Err(validation(format!(
            "discrete phase needs at least 8 segments, got {segments}"
        )));
    }
    let states = (0..segments)
        .map(|m| {
            let phi = m as f64 * PI / segments as f64;
            let eig = eig_hermitian(&build_h_tilde(&p.with_phi(phi)))?;
            Ok(eig.vector(0))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pancharatnam_phase(&states))
}

/// `−arg Π ⟨ψ_m|ψ_{m+1}⟩` around the closed loop `ψ_0 … ψ_{n−1} ψ_0`, in `[0, 2π)`.
pub fn pancharatnam_phase(states: &[StateVector]) -> f64 {
    let n = states.len();
    let mut prod = C64::new(1.0, 0.0);
    for m in 0..n {
        let z = states[m].inner(&states[(m + 1) % n]);
        // Rescale to keep the running product near unit modulus.
        prod *= z / z.norm().max(f64::MIN_POSITIVE);
    }
    wrap_two_pi(-prod.arg())
}

/// `−∫E dt` along the tracked level: `+max(r,1)·T` for C, `−max(r,1)·T` for C̄.
pub fn dynamical_phase(spec: &CycleSpec) -> Result<f64> {
    spec.validate()?;
    spec.params.check_nondegenerate()?;
    let level = spec.params.r().max(1.0);
    Ok(match spec.path {
        Path::C => level * spec.cycle_time,
        Path::Cbar => -level * spec.cycle_time,
    })
}

/// Halves `β_C + β_C̄` and picks the branch in `{x, x + π}` closest to
/// `previous` or, with no sweep history, to `analytic`.
///
/// Returns the chosen value in `[0, 2π)` and whether the analytic hint was used.
pub fn resolve_geometric_phase(
    beta_c: f64,
    beta_cbar: f64,
    previous: Option<f64>,
    analytic: f64,
) -> (f64, bool) {
    let x = wrap_two_pi((wrap_pi(beta_c) + wrap_pi(beta_cbar)) / 2.0);
    let alt = wrap_two_pi(x + PI);
    let (reference, assisted) = match previous {
        Some(prev) => (prev, false),
        None => (analytic, true),
    };
    if circular_distance(alt, reference) < circular_distance(x, reference) {
        (alt, assisted)
    } else {
        (x, assisted)
    }
}
