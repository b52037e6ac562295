//! Batch pipelines over `schwinger-core`: random-state clouds, the ground-state
//! bound table, invariant sweeps, Harper reports and phase-space dumps.
//!
//! Every pipeline is a [`job::Job`]; running one writes its output files plus a
//! [`manifest::RunManifest`] from which the run can be repeated exactly.

pub mod cloud;
pub mod config;
pub mod harper_report;
pub mod io;
pub mod job;
pub mod manifest;
pub mod table;
pub mod verify;
pub mod weyl_report;

/// Version of every CSV header and JSON key layout emitted by this crate.
pub const SCHEMA_VERSION: u32 = 1;

pub const ARTIFACT_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));
