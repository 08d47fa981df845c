pub mod adiabatic;
pub mod error;
pub mod geom_phase;
pub mod harness;
pub mod interferometer;
pub mod pulse;
pub mod qmat;
pub mod xy_model;

pub use error::{Error, Result};
