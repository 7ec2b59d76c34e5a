//! Weighted flexible DP-coloring of plane graphs with no 4-cycles and no
//! intersecting triangles.
//!
//! The crate is organised bottom up:
//!
//! * [`plane`]: rotation systems, faces, vertex and face classes.
//! * [`cover`]: DP-covers, the exact coloring oracle, weighted requests.
//! * [`reducible`]: forbidding sets, FIX/FORB verification, the nine configurations.
//! * [`flex`]: resolutions, the exact recursive distribution, sampling, requests.
//! * [`discharge`]: charges, rules R1 to R4 and the face case audit.

pub mod cover;
pub mod discharge;
pub mod error;
pub mod flex;
pub mod graph;
pub mod plane;
pub mod reducible;

pub use cover::{Coloring, Cover, CoverFamily, FamilyKind, WeightedRequest};
pub use error::{Error, Result};
pub use graph::{ClassReport, SimpleGraph};
pub use reducible::{find_reducible, verify_match, RcKind, ReducibleMatch, VerifyOptions};
pub use plane::{parse_pg, write_pg, Face, FaceClass, FaceTag, PlaneGraph, VertexClass, VertexTag};

/// Exact rationals used for probabilities and weights.
pub type Rational = num_rational::BigRational;
