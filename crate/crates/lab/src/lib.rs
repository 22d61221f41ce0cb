//! File formats, renderers and the `polygrowth` command-line front end for
//! the [`polygrowth`] core crate.
//!
//! * rule files (TOML) in [`rulefile`], run-length encoded states in [`rle`];
//! * run configurations in [`config`] and manifests in [`manifest`];
//! * CSV tables in [`report`] and SVG figures in [`svg`];
//! * subcommands in [`cmd`], wired to clap in [`cli`].

pub mod cli;
pub mod cmd;
pub mod config;
pub mod error;
pub mod manifest;
pub mod report;
pub mod rle;
pub mod rulefile;
pub mod svg;

pub use error::{LabError, Result};
