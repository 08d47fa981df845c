//! Constant-adiabaticity schedules and Trotterized adiabatic state
//! preparation from `h0 = X₁ + X₂` towards the XY Hamiltonian.

use crate::error::{validation, Error, Result};
use crate::qmat::{
    eig_hermitian, expm_i_from_eigen, pauli_string, ComplexMatrix, HermitianEigen, Pauli,
    StateVector, C64,
};
use crate::xy_model::{build_h, ground_state, XyParams};

/// Speed limit used when the ground state decouples from the first excited level.
pub const CHI_MAX: f64 = 1e6;
/// Instantaneous gaps at or below this abort the schedule.
pub const GAP_TOL: f64 = 1e-6;
/// Eigenvalues within this of the first excited level count as one level.
pub const CLUSTER_TOL: f64 = 1e-9;
pub const DEFAULT_GRID_POINTS: usize = 2048;
pub const DEFAULT_STEPS: usize = 32;
pub const DEFAULT_KAPPA: f64 = 0.25;

/// `X₁ + X₂`, whose ground state `|−−⟩` is the starting point of the sweep.
pub fn initial_hamiltonian() -> ComplexMatrix {
    &pauli_string(&[Pauli::X, Pauli::I]) + &pauli_string(&[Pauli::I, Pauli::X])
}

/// `|−−⟩`.
pub fn initial_state() -> StateVector {
    let h = C64::new(0.5, 0.0);
    StateVector::from_amplitudes(vec![h, -h, -h, h]).expect("nonzero")
}

fn interpolate(h0: &ComplexMatrix, h1: &ComplexMatrix, s: f64) -> ComplexMatrix {
    &h0.scale_real(1.0 - s) + &h1.scale_real(s)
}

/// Local speed limit `χ(s) = gap² / |⟨g|(h1 − h0)|1e⟩|` of `(1−s)h0 + s·h1`.
///
/// When the first excited level is degenerate (as it is at `s = 0`, where the
/// singlet and a triplet state share energy 0) the matrix element is taken
/// as the norm of the projection onto the whole level, so the value does not
/// depend on which basis the eigensolver returned for it.
pub fn chi(s: f64, h0: &ComplexMatrix, h1: &ComplexMatrix) -> Result<f64> {
    let eig = eig_hermitian(&interpolate(h0, h1, s))?;
    if eig.dim() < 2 {
        return Err(validation("adiabatic sweep needs at least two levels"));
    }
    let gap = eig.values[1] - eig.values[0];
    if gap <= GAP_TOL {
        return Err(Error::GapClosure { s, gap });
    }
    let dh = h1 - h0;
    let ground = eig.vector(0);
    let d_ground = StateVector::from_normalized_unchecked(dh.apply(ground.amplitudes())?);
    let mut element_sq = 0.0;
    for k in 1..eig.dim() {
        if eig.values[k] - eig.values[1] > CLUSTER_TOL {
            break;
        }
        element_sq += eig.vector(k).inner(&d_ground).norm_sqr();
    }
    let element = element_sq.sqrt();
    if element * CHI_MAX <= gap * gap {
        return Ok(CHI_MAX);
    }
    Ok(gap * gap / element)
}

/// Sampled `s(t)` obeying `ds/dt = κ·χ(s)`.
#[derive(Clone, Debug)]
pub struct AdiabaticSchedule {
    pub kappa: f64,
    /// `(t, s)` pairs on a uniform `s` grid.
    pub samples: Vec<(f64, f64)>,
    pub total_time: f64,
}

impl AdiabaticSchedule {
    /// `s(t)` by linear interpolation, clamped to `[0, 1]` outside `[0, T_P]`.
    pub fn s_at(&self, t: f64) -> f64 {
        let first = self.samples[0];
        let last = self.samples[self.samples.len() - 1];
        if t <= first.0 {
            return first.1;
        }
        if t >= last.0 {
            return last.1;
        }
        let idx = self.samples.partition_point(|&(ti, _)| ti <= t);
        let (t0, s0) = self.samples[idx - 1];
        let (t1, s1) = self.samples[idx];
        s0 + (s1 - s0) * (t - t0) / (t1 - t0)
    }
}

/// Integrates `dt/ds = 1/(κχ(s))` with RK4 on a uniform `s` grid, `χ`
/// linearly interpolated between grid values. `T_P` is the composite
/// Simpson integral over the same grid and the RK4 times are rescaled to end
/// exactly at it.
pub fn solve_schedule(
    kappa: f64,
    h0: &ComplexMatrix,
    h1: &ComplexMatrix,
    grid_points: usize,
) -> Result<AdiabaticSchedule> {
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(validation(format!("kappa must lie in (0, 1), got {kappa}")));
    }
    if grid_points < 64 {
        return Err(validation(format!(
            "schedule grid needs at least 64 points, got {grid_points}"
        )));
    }
    let n = grid_points - 1;
    let ds = 1.0 / n as f64;
    let s_grid: Vec<f64> = (0..=n).map(|i| i as f64 * ds).collect();
    let chis = s_grid
        .iter()
        .map(|&s| chi(s, h0, h1))
        .collect::<Result<Vec<_>>>()?;
    let rate = |i: usize, frac: f64| {
        let c = if frac == 0.0 {
            chis[i]
        } else {
            chis[i] + (chis[i + 1] - chis[i]) * frac
        };
        1.0 / (kappa * c)
    };

    let mut t = vec![0.0; n + 1];
    for i in 0..n {
        let k1 = rate(i, 0.0);
        let k2 = rate(i, 0.5);
        let k4 = rate(i + 1, 0.0);
        // dt/ds has no t dependence, so k3 == k2.
        t[i + 1] = t[i] + ds * (k1 + 4.0 * k2 + k4) / 6.0;
    }

    let f: Vec<f64> = chis.iter().map(|c| 1.0 / (kappa * c)).collect();
    let total_time = simpson(&f, ds);
    let scale = total_time / t[n];
    let samples = t
        .iter()
        .zip(&s_grid)
        .map(|(&ti, &si)| (ti * scale, si))
        .collect();
    Ok(AdiabaticSchedule {
        kappa,
        samples,
        total_time,
    })
}

/// Composite Simpson on uniformly spaced samples; an odd interval count
/// finishes with the 3/8 rule on the last three intervals.
fn simpson(f: &[f64], h: f64) -> f64 {
    let n = f.len() - 1;
    let simpson_13 = |a: usize, b: usize| {
        let mut acc = f[a] + f[b];
        for i in (a + 1)..b {
            acc += if (i - a) % 2 == 1 { 4.0 } else { 2.0 } * f[i];
        }
        acc * h / 3.0
    };
    match n {
        0 => 0.0,
        1 => (f[0] + f[1]) * h / 2.0,
        _ if n % 2 == 0 => simpson_13(0, n),
        3 => 3.0 * h / 8.0 * (f[0] + 3.0 * f[1] + 3.0 * f[2] + f[3]),
        _ => {
            let m = n - 3;
            simpson_13(0, m) + 3.0 * h / 8.0 * (f[m] + 3.0 * f[m + 1] + 3.0 * f[m + 2] + f[m + 3])
        }
    }
}

/// Discretization of the sweep into piecewise-constant steps of length `δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrotterPlan {
    pub delta: f64,
    /// `s_m` for `m = 0..=M_P`.
    pub s_values: Vec<f64>,
}

impl TrotterPlan {
    pub fn new(s_values: Vec<f64>, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(validation(format!("step duration must be positive, got {delta}")));
        }
        if s_values.is_empty() {
            return Err(validation("Trotter plan needs at least one step"));
        }
        if let Some(bad) = s_values.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(validation(format!("s value {bad} outside [0, 1]")));
        }
        Ok(Self { delta, s_values })
    }

    /// `δ = T_P/(M_P+1)` and `s_m = s((m/M_P)·T_P)`.
    pub fn from_schedule(schedule: &AdiabaticSchedule, steps: usize) -> Result<Self> {
        if steps < 1 {
            return Err(validation("sampling a schedule needs at least one step"));
        }
        let tp = schedule.total_time;
        let s_values = (0..=steps)
            .map(|m| schedule.s_at(m as f64 / steps as f64 * tp))
            .collect();
        Self::new(s_values, tp / (steps as f64 + 1.0))
    }

    /// `M_P`.
    pub fn steps(&self) -> usize {
        self.s_values.len() - 1
    }
}

/// Eigendecompositions of the two halves of the splitting, reused across steps.
pub(crate) struct Splitting {
    h0: HermitianEigen,
    h1: HermitianEigen,
}

impl Splitting {
    pub(crate) fn new(h0: &ComplexMatrix, h1: &ComplexMatrix) -> Result<Self> {
        Ok(Self {
            h0: eig_hermitian(h0)?,
            h1: eig_hermitian(h1)?,
        })
    }

    pub(crate) fn step(&self, s: f64, delta: f64) -> ComplexMatrix {
        let outer = expm_i_from_eigen(&self.h0, (1.0 - s) * delta / 2.0);
        let inner = expm_i_from_eigen(&self.h1, s * delta);
        &(&outer * &inner) * &outer
    }
}

/// `e^{−i(1−s)h0 δ/2} e^{−i s h1 δ} e^{−i(1−s)h0 δ/2}`.
pub fn trotter_step(
    s: f64,
    delta: f64,
    h0: &ComplexMatrix,
    h1: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    if !(delta > 0.0) {
        return Err(validation(format!("step duration must be positive, got {delta}")));
    }
    Ok(Splitting::new(h0, h1)?.step(s, delta))
}

#[derive(Clone, Debug)]
pub struct AspOutcome {
    pub final_state: StateVector,
    /// `|⟨g(s_m)|ψ_m⟩|` after each step.
    pub fidelity_trace: Vec<f64>,
    /// Overlap of the final state with the target ground state.
    pub final_fidelity: f64,
}

/// Applies the plan's Trotter steps to `|−−⟩`.
///
/// A plan sampled from `schedule` must span its total time; hand-built
/// single-step plans (sudden quenches) are accepted as they are.
pub fn run_asp(p: &XyParams, schedule: &AdiabaticSchedule, plan: &TrotterPlan) -> Result<AspOutcome> {
    let (_, target) = ground_state(&p.with_phi(0.0))?;
    if plan.steps() >= 1 {
        let span = plan.delta * (plan.steps() as f64 + 1.0);
        if (span - schedule.total_time).abs() > 1e-9 * schedule.total_time.max(1.0) {
            return Err(validation(format!(
                "plan spans {span} but the schedule lasts {}",
                schedule.total_time
            )));
        }
    }
    let h0 = initial_hamiltonian();
    let h1 = build_h(&p.with_phi(0.0));
    let split = Splitting::new(&h0, &h1)?;
    let mut psi = initial_state();
    let mut fidelity_trace = Vec::with_capacity(plan.s_values.len());
    for &s in &plan.s_values {
        psi = psi.evolve(&split.step(s, plan.delta))?;
        let inst = eig_hermitian(&interpolate(&h0, &h1, s))?;
        fidelity_trace.push(inst.vector(0).overlap(&psi));
    }
    let final_fidelity = target.overlap(&psi);
    Ok(AspOutcome {
        final_state: psi,
        fidelity_trace,
        final_fidelity,
    })
}

/// Default preparation: `κ = 0.25`, 2048-point grid, `M_P = 32`.
pub fn prepare_default(p: &XyParams) -> Result<(AdiabaticSchedule, TrotterPlan, AspOutcome)> {
    let h1 = build_h(&p.with_phi(0.0));
    let schedule = solve_schedule(DEFAULT_KAPPA, &initial_hamiltonian(), &h1, DEFAULT_GRID_POINTS)?;
    let plan = TrotterPlan::from_schedule(&schedule, DEFAULT_STEPS)?;
    let outcome = run_asp(p, &schedule, &plan)?;
    Ok((schedule, plan, outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::expm_i;

    fn target(l: f64, g: f64) -> ComplexMatrix {
        build_h(&XyParams::new(l, g))
    }

    #[test]
    fn initial_state_is_ground_of_h0() {
        let e = eig_hermitian(&initial_hamiltonian()).unwrap();
        assert!((e.values[0] + 2.0).abs() < 1e-14);
        assert!((e.vector(0).overlap(&initial_state()) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn chi_positive_at_start() {
        let c = chi(0.0, &initial_hamiltonian(), &target(0.992, 0.5)).unwrap();
        assert!(c.is_finite() && c > 0.0 && c < CHI_MAX);
    }

    #[test]
    fn chi_capped_when_levels_decouple() {
        // h1 − h0 is diagonal in the shared eigenbasis, so ⟨g|∂H|1e⟩ = 0.
        let h0 = Pauli::Z.matrix();
        let h1 = h0.scale_real(2.0);
        assert_eq!(chi(0.5, &h0, &h1).unwrap(), CHI_MAX);
    }

    #[test]
    fn chi_reports_gap_closure() {
        let z = pauli_string(&[Pauli::Z, Pauli::I]);
        assert!(matches!(
            chi(0.5, &z, &z.scale_real(-1.0)),
            Err(Error::GapClosure { .. })
        ));
    }

    #[test]
    fn simpson_exact_for_cubics() {
        for n in [6usize, 7, 9, 64, 65] {
            let h = 1.0 / n as f64;
            let f: Vec<f64> = (0..=n).map(|i| (i as f64 * h).powi(3)).collect();
            assert!((simpson(&f, h) - 0.25).abs() < 1e-14, "n={n}");
        }
    }

    #[test]
    fn schedule_shape() {
        let s = solve_schedule(0.25, &initial_hamiltonian(), &target(0.992, 0.5), 256).unwrap();
        assert_eq!(s.samples.first().unwrap(), &(0.0, 0.0));
        assert_eq!(s.samples.last().unwrap().1, 1.0);
        assert!((s.samples.last().unwrap().0 - s.total_time).abs() < 1e-9 * s.total_time);
        assert!(s.samples.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 >= w[0].1));
    }

    #[test]
    fn schedule_rejects_bad_inputs() {
        let h0 = initial_hamiltonian();
        let h1 = target(0.5, 0.5);
        assert!(solve_schedule(0.0, &h0, &h1, 128).is_err());
        assert!(solve_schedule(1.0, &h0, &h1, 128).is_err());
        assert!(solve_schedule(0.25, &h0, &h1, 32).is_err());
    }

    #[test]
    fn plan_from_schedule_endpoints() {
        let s = solve_schedule(0.25, &initial_hamiltonian(), &target(0.0, 0.5), 128).unwrap();
        let plan = TrotterPlan::from_schedule(&s, 8).unwrap();
        assert_eq!(plan.steps(), 8);
        assert_eq!(plan.s_values[0], 0.0);
        assert_eq!(plan.s_values[8], 1.0);
        assert!((plan.delta * 9.0 - s.total_time).abs() < 1e-12);
        assert!(TrotterPlan::new(vec![0.5], 0.0).is_err());
        assert!(TrotterPlan::new(vec![1.5], 1.0).is_err());
    }

    #[test]
    fn trotter_endpoints_collapse() {
        let h0 = initial_hamiltonian();
        let h1 = target(0.992, 0.5);
        let d = 0.3;
        let u0 = trotter_step(0.0, d, &h0, &h1).unwrap();
        assert!(u0.max_abs_diff(&expm_i(&h0, d).unwrap()) < 1e-14);
        let u1 = trotter_step(1.0, d, &h0, &h1).unwrap();
        assert!(u1.max_abs_diff(&expm_i(&h1, d).unwrap()) < 1e-14);
        assert!(trotter_step(0.5, 0.0, &h0, &h1).is_err());
    }

    #[test]
    fn run_asp_rejects_mismatched_plan() {
        let p = XyParams::new(0.0, 0.5);
        let s = solve_schedule(0.25, &initial_hamiltonian(), &build_h(&p), 128).unwrap();
        let plan = TrotterPlan::new(vec![0.0, 0.5, 1.0], 1.0).unwrap();
        assert!(run_asp(&p, &s, &plan).is_err());
    }
}
