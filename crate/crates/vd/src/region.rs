//! Edge typing at regular orientations and the region swept by an edge.

use crate::graph::{vertex_square, EdgeRecord, VoronoiGraph};
use crate::local::{EdgeKind, Family};
use crate::VdError;
use quadrot_geom::{FourSquareType, FrameSquare, PointSet, Side, VertexType};
use serde::{Deserialize, Serialize};

/// The five bounded and two unbounded edge types of a regular diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeType {
    Sliding32To32,
    Sliding32To33,
    Growing32To33,
    Sliding33To33,
    SiteTo32,
    UnboundedFrom32,
    UnboundedFromSite,
}

/// Type of `e` given the types of its endpoints (`None` for infinity).
pub fn classify_edge(e: &EdgeRecord, tu: Option<VertexType>, tv: Option<VertexType>) -> Result<EdgeType, VdError> {
    use VertexType::*;
    let site = Four(FourSquareType::Trivial41);
    let bad = || {
        VdError::Structure(format!(
            "edge {} has endpoints {:?} and {:?}, impossible at a regular orientation",
            e.kappa_e, tu, tv
        ))
    };
    let (a, b) = match (tu, tv) {
        (None, Some(t)) | (Some(t), None) => {
            return match t {
                Regular32 => Ok(EdgeType::UnboundedFrom32),
                t if t == site => Ok(EdgeType::UnboundedFromSite),
                _ => Err(bad()),
            }
        }
        (Some(a), Some(b)) => (a.min(b), b.max(a)),
        _ => return Err(bad()),
    };
    match (a, b, e.kind) {
        (Regular32, Regular32, EdgeKind::Sliding) => Ok(EdgeType::Sliding32To32),
        (Regular32, Regular33, EdgeKind::Sliding) => Ok(EdgeType::Sliding32To33),
        (Regular32, Regular33, EdgeKind::Growing) => Ok(EdgeType::Growing32To33),
        (Regular33, Regular33, EdgeKind::Sliding) => Ok(EdgeType::Sliding33To33),
        (Regular32, x, EdgeKind::Growing) if x == site => Ok(EdgeType::SiteTo32),
        _ => Err(bad()),
    }
}

impl VoronoiGraph {
    pub fn edge_type(&self, e: &EdgeRecord) -> Result<EdgeType, VdError> {
        let t = |k| self.vertices.get(k).and_then(|v: &crate::VertexRecord| v.vtype);
        classify_edge(e, t(&e.u), t(&e.v))
    }
}

/// A region in the frame of the diagram's orientation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Region {
    Rectangle { umin: f64, umax: f64, vmin: f64, vmax: f64 },
    Square(FrameSquare),
    /// Closed quadrant with corner `apex`, extending towards `+u` when
    /// `right` and towards `+v` when `up`.
    Quadrant { apex: (f64, f64), right: bool, up: bool },
}

impl Region {
    /// True if the closed square lies inside the closed region, up to `eps`.
    pub fn contains_square(&self, s: &FrameSquare, eps: f64) -> bool {
        let (u0, u1, v0, v1) = (s.cu - s.r, s.cu + s.r, s.cv - s.r, s.cv + s.r);
        match *self {
            Region::Rectangle { umin, umax, vmin, vmax } => {
                u0 >= umin - eps && u1 <= umax + eps && v0 >= vmin - eps && v1 <= vmax + eps
            }
            Region::Square(q) => {
                u0 >= q.cu - q.r - eps && u1 <= q.cu + q.r + eps && v0 >= q.cv - q.r - eps && v1 <= q.cv + q.r + eps
            }
            Region::Quadrant { apex, right, up } => {
                let ok_u = if right { u0 >= apex.0 - eps } else { u1 <= apex.0 + eps };
                let ok_v = if up { v0 >= apex.1 - eps } else { v1 <= apex.1 + eps };
                ok_u && ok_v
            }
        }
    }

    /// True if no frame point lies more than `eps` inside the open region.
    pub fn is_empty(&self, frame: &[(f64, f64)], eps: f64) -> bool {
        frame.iter().all(|&(u, v)| match *self {
            Region::Rectangle { umin, umax, vmin, vmax } => {
                u <= umin + eps || u >= umax - eps || v <= vmin + eps || v >= vmax - eps
            }
            Region::Square(q) => q.slacks(u, v).iter().any(|&x| x <= eps),
            Region::Quadrant { apex, right, up } => {
                let iu = if right { u - apex.0 } else { apex.0 - u };
                let iv = if up { v - apex.1 } else { apex.1 - v };
                iu <= eps || iv <= eps
            }
        })
    }
}

/// The union of all squares of edge `e` at the graph's orientation.
pub fn edge_union_region(points: &PointSet, g: &VoronoiGraph, e: &EdgeRecord) -> Result<Region, VdError> {
    let theta = g.orientation;
    if !e.bounded {
        let fs = vertex_square(points, &e.v, theta)?;
        let Some(Family::Corner { horizontal, vertical }) = Family::of(&e.kappa_e) else {
            return Err(VdError::Structure(format!("unbounded edge {} is not growing", e.kappa_e)));
        };
        let apex = (fs.line(vertical), fs.line(horizontal));
        return Ok(Region::Quadrant { apex, right: vertical == Side::Left, up: horizontal == Side::Bottom });
    }
    let a = vertex_square(points, &e.u, theta)?;
    let b = vertex_square(points, &e.v, theta)?;
    Ok(match e.kind {
        EdgeKind::Sliding => Region::Rectangle {
            umin: (a.cu - a.r).min(b.cu - b.r),
            umax: (a.cu + a.r).max(b.cu + b.r),
            vmin: (a.cv - a.r).min(b.cv - b.r),
            vmax: (a.cv + a.r).max(b.cv + b.r),
        },
        EdgeKind::Growing => Region::Square(if a.r >= b.r { a } else { b }),
    })
}
