//! Reduced plabic graphs as rotation systems: bridge construction, trips,
//! left-target face labels, the reducedness test and the face quiver.

mod bridge;
pub(crate) mod graph;
mod labels;
mod trips;

pub use bridge::bridge_graph_from_permutation;
pub use graph::{Color, GraphJson, PlabicGraph, VertexJson, VertexKind};
pub use labels::{face_labels, FaceLabeling};
pub use trips::{trips, Trip};
pub(crate) mod quiver;
mod reduced;
pub use quiver::{labeled_raw_arrows, quiver_from_collection, quiver_from_graph};
pub use reduced::{reduced_defect, validate_reduced, ReducedDefect};
