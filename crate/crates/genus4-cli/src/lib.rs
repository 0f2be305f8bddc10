//! Command-line front end for `genus4-core`: curve text grammar, command
//! implementations, output formatting and the fixture corpus.

pub mod commands;
pub mod corpus;
pub mod grammar;
pub mod report;
