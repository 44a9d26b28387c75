//! Configuration, commands and output for the `holoq` binary.

pub mod commands;
pub mod config;
pub mod output;
