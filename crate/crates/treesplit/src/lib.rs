//! Experiment runner, statistics and file formats on top of
//! `treesplit-core`.
//!
//! The `treesplit` binary exposes the experiments in [`experiments`] as
//! subcommands; each produces a [`report::Report`] rendered as CSV or JSON.

pub mod experiments;
pub mod io;
pub mod report;
pub mod stats;

pub use experiments::{run, Algorithm, Command, ExperimentConfig, ExperimentError, GraphKind};
pub use report::{Cell, Report};
pub use stats::{Estimate, ScalingFit};
