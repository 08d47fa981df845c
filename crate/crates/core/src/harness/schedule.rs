//! Tabulated adiabatic schedules.

use std::io::Write;

use super::format::g6;
use crate::adiabatic::{initial_hamiltonian, solve_schedule, AdiabaticSchedule, DEFAULT_GRID_POINTS};
use crate::error::{Error, Result};
use crate::xy_model::{build_h, XyParams};

pub const SCHEDULE_HEADER: &str = "t,s";

/// Constant-κ schedule from `|−−⟩` towards the ground state of `H(λ, γ)`.
pub fn schedule_for(params: &XyParams, kappa: f64) -> Result<AdiabaticSchedule> {
    params.check_nondegenerate()?;
    solve_schedule(kappa, &initial_hamiltonian(), &build_h(params), DEFAULT_GRID_POINTS)
}

pub fn write_schedule_csv<W: Write>(schedule: &AdiabaticSchedule, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(SCHEDULE_HEADER.split(','))?;
    for &(t, s) in &schedule.samples {
        w.write_record([g6(t), g6(s)])?;
    }
    w.flush().map_err(Error::Io)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_csv_endpoints() {
        let sched = schedule_for(&XyParams::new(0.992, 0.5), 0.25).unwrap();
        let mut buf = Vec::new();
        write_schedule_csv(&sched, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,s");
        assert_eq!(lines[1], "0,0");
        assert!(lines.last().unwrap().ends_with(",1"));
        assert_eq!(lines.len(), sched.samples.len() + 1);
    }

    #[test]
    fn degenerate_target_rejected() {
        assert!(schedule_for(&XyParams::new(0.6, 0.8), 0.25).is_err());
    }
}
