//! File format, fixture corpus, JSON reports and the command-line driver
//! around [`dimerlab_core`].

pub mod format;
pub mod fixtures;
pub mod report;
pub mod cli;

pub use dimerlab_core as core;
