//! Command-line runner for the Dirac-operator checks.

pub mod catalog;
pub mod config;
pub mod ingest;
pub mod report;
pub mod runner;
pub mod suites;
