//! Library surface of the command line tool: term and script parsing,
//! JSON shaping, and law suite aggregation. The binary is a thin
//! dispatcher over these.

pub mod out;
pub mod parse;
pub mod script;
pub mod suites;
