//! Library surface of the command-line tool: the report envelope and its
//! fixed-precision JSON formatting, SVG plotting, and the randomized
//! inequality suites. The binary in `main.rs` wires these to the command
//! line.

pub mod plot;
pub mod report;
pub mod suites;
