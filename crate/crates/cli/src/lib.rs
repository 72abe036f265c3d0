//! Command-line front end and benchmark harness for `pfd`.

pub mod bench;
pub mod commands;
