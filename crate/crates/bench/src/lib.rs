//! Shared loading for the criterion benches in `benches/`.

use std::path::PathBuf;

use dpflex::{parse_pg, PlaneGraph};

pub fn fixture_text(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.pg"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn fixture(name: &str) -> PlaneGraph {
    parse_pg(&fixture_text(name)).unwrap()
}
