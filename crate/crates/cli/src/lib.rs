//! Command-line front end and acceptance runner for `qtetra-core`.

pub mod acceptance;
pub mod commands;
pub mod report;
