//! Table checks, parameter sweeps and the error study behind the `xygp` binary.

mod errors;
mod format;
mod schedule;
mod sweep;
mod table1;

pub use errors::{run_error_model, ErrorModelConfig, ErrorStats, MIN_SAMPLES, PSEUDOPURE_POLARIZATION};
pub use format::{format_sig, g6};
pub use schedule::{schedule_for, write_schedule_csv, SCHEDULE_HEADER};
pub use sweep::{
    parse_lambda_list, run_sweep, write_sweep_csv, LambdaSpec, SweepConfig, SweepOutput, SweepRow,
    DEFAULT_CYCLE_TIME, DEFAULT_SEGMENTS, DISCRETE_SEGMENTS, SWEEP_HEADER,
};
pub use table1::{
    load_table1, parse_table1, run_table1, Table1Check, Table1Report, Table1Row,
    ANALYTIC_TOL_DEG, ARITHMETIC_TOL_DEG, EMBEDDED_FIXTURE, EXPERIMENT_TOL_DEG, TABLE1_GAMMA,
};
