//! Exact distance oracle for directed planar graphs built from additively
//! weighted Voronoi diagrams on the boundaries of pieces.

pub mod error;
pub mod harness;
pub mod locate;
pub mod mssp;
pub mod oracle;
pub mod planar;
pub mod trees;
pub mod trifind;
pub mod vdbuild;
pub mod voronoi;
pub mod weight;

pub use error::{Error, Result};
pub use weight::Weight;
