//! Command-line front end and batch verification for the `kannappan-core`
//! solvers: text formats, a catalog of small semigroups, a seeded instance
//! sweep, a grid completeness probe and deterministic JSON reports.

pub mod catalog;
pub mod formats;
pub mod instances;
pub mod report;
pub mod search;
pub mod verify;
