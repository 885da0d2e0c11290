//! Command-line front end for the `orthotime` library: analyze single
//! states, sweep the constant-crossing-time family, run Haar Monte Carlo,
//! and compare the closed forms against the numeric oracle.
//!
//! All commands are deterministic given their flags and seed; file formats
//! (state JSON, sweep CSV, Haar summary JSON) are owned by this crate.

pub mod analyze;
pub mod error;
pub mod haar;
pub mod streams;
pub mod sweep;
pub mod verify;

pub use error::{CliError, Result};
