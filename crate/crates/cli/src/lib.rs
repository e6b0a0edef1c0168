//! Command-line front end for `cyclozeta`: input formats, the shipped
//! catalog file, seeded verification suites and JSON reports.

pub mod catalog_data;
pub mod commands;
pub mod output;
pub mod parse;
pub mod suite;
