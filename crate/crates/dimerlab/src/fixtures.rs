//! The fixture corpus shipped with the crate.

use std::path::PathBuf;

use dimerlab_core::quiver::{DimerModel, EmbeddedQuiver};

use crate::format::{parse, parse_dimer, Parsed};

pub const NAMES: &[&str] = &[
    "c3.dimer",
    "dimex1.quiver",
    "dimex2.dimer",
    "dimex2_mirror.dimer",
    "dimex3.dimer",
    "dimex4.dimer",
    "octahedron.dimer",
    "toric.dimer",
    "torus2loop.quiver",
    "tetra.quiver",
    "pentagon.quiver",
];

pub fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn text(name: &str) -> String {
    std::fs::read_to_string(dir().join(name)).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

pub fn load(name: &str) -> Parsed {
    parse(&text(name)).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

/// A fixture that must be a dimer (stem without extension).
pub fn dimer(stem: &str) -> DimerModel {
    parse_dimer(&text(&format!("{stem}.dimer"))).unwrap_or_else(|e| panic!("fixture {stem}: {e}"))
}

/// A fixture read as an embedded quiver; dimer files are converted.
pub fn quiver(name: &str) -> EmbeddedQuiver {
    load(name).quiver()
}
