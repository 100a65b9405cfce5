//! Command-line front end for `cheqlab-core`: JSON frame and map documents,
//! Graphviz export, multi-threaded search drivers and a verification suite.

pub mod cli;
pub mod config;
pub mod document;
pub mod dot;
mod error;
pub mod parallel;
pub mod render;
pub mod verify;

pub use error::CliError;
