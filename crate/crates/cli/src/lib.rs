//! Support library for the `obsdisc` command-line tool: the on-disk task
//! format and the machine-readable report types, kept separate from the
//! binary so they can be reused and tested directly.

pub mod report;
pub mod specfile;
