//! The L∞ Voronoi diagram of a point set with axes rotated by a fixed θ.
//!
//! Vertices are centers of empty squares with three or four pinned sides and
//! are identified by their contact types; edges by the contact type shared by
//! all squares along them. The star of every vertex follows from its contact
//! type alone (see [`incident_half_edges`]), which is what both builders and
//! the kinetic update rely on.

pub mod build;
pub mod graph;
pub mod local;
pub mod region;
pub mod svg;
pub mod walk;

pub use build::{build_diagram_reference, build_diagram_traced};
pub use graph::{vertex_square, EdgeGrowth, EdgeKey, EdgeRecord, VertexRecord, VoronoiGraph};
pub use local::{incident_half_edges, EdgeKind, Family, Growth, HalfEdge};
pub use quadrot_geom::classify_vertex;
pub use region::{classify_edge, edge_union_region, EdgeType, Region};

use quadrot_geom::GeomError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
pub enum VdError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("general position violated at {0}: {1}")]
    GeneralPosition(String, String),
    #[error("diagram structure broken: {0}")]
    Structure(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramStats {
    /// Finite vertices, sites included.
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Faces from Euler's formula with infinity counted as a vertex.
    pub face_count: usize,
    pub neutral_face_count: usize,
    pub degree_histogram: BTreeMap<usize, usize>,
}

pub fn diagram_stats(g: &VoronoiGraph) -> DiagramStats {
    let finite = g.finite_vertices().count();
    let with_inf = g.vertices.len();
    let mut hist = BTreeMap::new();
    let deg = g.degrees();
    for v in g.finite_vertices() {
        *hist.entry(deg.get(&v.key).copied().unwrap_or(0)).or_insert(0) += 1;
    }
    DiagramStats {
        vertex_count: finite,
        edge_count: g.edges.len(),
        face_count: (g.edges.len() + 2).saturating_sub(with_inf),
        neutral_face_count: g.neutral_faces().len(),
        degree_histogram: hist,
    }
}
