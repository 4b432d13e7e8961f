//! Command-line front end for `gcspec`.

pub mod cli;
pub mod tables;

pub use cli::run;
