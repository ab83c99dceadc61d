//! Command-line front end for `newform-core`: the multisegment grammar, text diagrams,
//! and one verb per library entry point.

pub mod cli;
pub mod draw;
pub mod grammar;
pub mod report;

pub use cli::{run, Cli, Verb};
pub use draw::draw;
pub use grammar::{parse_int_list, parse_lambda, parse_multisegment, ParseError};
