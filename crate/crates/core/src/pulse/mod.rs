//! Idealized NMR pulse sequences: data model, propagator simulation and
//! compilation of the experiment's gates.

mod compile;
mod sequence;
mod simulate;

pub use compile::{
    compile_experiment, compile_gate, compile_zz, gate_target, zz_target, GateSpec,
    VERIFY_THRESHOLD,
};
pub use sequence::{Axis, Element, PulseSequence, SpinSystem, DURATION_TOL};
pub use simulate::{nmr_energies, rf_rotation, simulate_sequence, verify, z_rotation};
