//! Std companion to `taskrel-core`: the `.ct` language, JSON output and the
//! `taskrel` command line.

pub mod cli;
pub mod dsl;
pub mod json;
pub mod runner;
