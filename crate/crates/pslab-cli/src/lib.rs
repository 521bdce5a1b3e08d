//! Experiment orchestration and benchmark definitions behind the `pslab`
//! command-line binary. Kept as a library so integration tests can drive
//! the same sweeps the binary exposes.

pub mod bounds;
pub mod experiments;
