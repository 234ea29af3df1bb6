//! File formats, configuration, algorithm selection and benchmarking for
//! the odd path solvers in `oddpath-core`.

pub mod bench;
pub mod cli;
pub mod config;
pub mod format;
pub mod solve;
