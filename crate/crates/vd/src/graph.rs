//! Plane-graph representation of the diagram at one orientation.

use crate::local::{EdgeKind, Growth};
use crate::VdError;
use quadrot_geom::{ContactType, FrameSquare, PointSet, Side, SquareFamily, VertexType};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A vertex of the diagram. The vertex at infinity has the empty key.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub key: ContactType,
    /// World coordinates of the square center; `None` for infinity.
    pub embedding: Option<(f64, f64)>,
    pub radius: f64,
    pub vtype: Option<VertexType>,
}

impl VertexRecord {
    pub fn infinity() -> Self {
        VertexRecord { key: ContactType::empty(), embedding: None, radius: f64::INFINITY, vtype: None }
    }

    pub fn is_infinite(&self) -> bool {
        self.key.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeGrowth {
    TowardU,
    TowardV,
    None,
}

/// An edge `(u, v; κ_e)` with `u <= v`, so unbounded edges have `u = ∅`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: ContactType,
    pub v: ContactType,
    pub kappa_e: ContactType,
    pub kind: EdgeKind,
    pub growth: EdgeGrowth,
    pub bounded: bool,
}

pub type EdgeKey = (ContactType, ContactType, ContactType);

impl EdgeRecord {
    /// Edge between `a` and `b` where `growth_at_a` is the growth seen from `a`.
    pub fn new(a: ContactType, b: ContactType, kappa_e: ContactType, kind: EdgeKind, growth_at_a: Growth) -> Self {
        let toward_a = match growth_at_a {
            Growth::TowardVertex => Some(true),
            Growth::Outward => Some(false),
            Growth::None => None,
        };
        let swap = b < a;
        let (u, v) = if swap { (b, a) } else { (a, b) };
        let growth = match toward_a {
            None => EdgeGrowth::None,
            Some(t) if t != swap => EdgeGrowth::TowardU,
            Some(_) => EdgeGrowth::TowardV,
        };
        let bounded = !u.is_empty();
        EdgeRecord { u, v, kappa_e, kind, growth, bounded }
    }

    pub fn key(&self) -> EdgeKey {
        (self.u.clone(), self.v.clone(), self.kappa_e.clone())
    }

    pub fn other(&self, k: &ContactType) -> &ContactType {
        if *k == self.u {
            &self.v
        } else {
            &self.u
        }
    }
}

/// `VG(θ)`: vertices keyed by contact type, edges keyed by their edge
/// contact type (unique per edge).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VoronoiGraph {
    pub orientation: f64,
    pub vertices: BTreeMap<ContactType, VertexRecord>,
    pub edges: BTreeMap<ContactType, EdgeRecord>,
}

impl VoronoiGraph {
    pub fn new(orientation: f64) -> Self {
        VoronoiGraph { orientation, vertices: BTreeMap::new(), edges: BTreeMap::new() }
    }

    pub fn finite_vertices(&self) -> impl Iterator<Item = &VertexRecord> {
        self.vertices.values().filter(|v| !v.is_infinite())
    }

    pub fn vertex_keys(&self) -> BTreeSet<ContactType> {
        self.vertices.keys().cloned().collect()
    }

    pub fn edge_keys(&self) -> BTreeSet<EdgeKey> {
        self.edges.values().map(|e| e.key()).collect()
    }

    pub fn degrees(&self) -> BTreeMap<ContactType, usize> {
        let mut d: BTreeMap<ContactType, usize> = BTreeMap::new();
        for e in self.edges.values() {
            *d.entry(e.u.clone()).or_default() += 1;
            *d.entry(e.v.clone()).or_default() += 1;
        }
        d
    }

    pub fn incident_edges<'a>(&'a self, k: &'a ContactType) -> impl Iterator<Item = &'a EdgeRecord> + 'a {
        self.edges.values().filter(move |e| e.u == *k || e.v == *k)
    }

    pub fn unbounded_edges(&self) -> impl Iterator<Item = &EdgeRecord> {
        self.edges.values().filter(|e| !e.bounded)
    }

    /// Staples `(side, p, q)` of the neutral faces: every edge whose contact
    /// type has three pairs bounds the face of the stapled pair it contains.
    pub fn neutral_faces(&self) -> BTreeSet<(Side, u32, u32)> {
        self.edges
            .values()
            .filter(|e| e.kappa_e.len() == 3)
            .filter_map(|e| e.kappa_e.staple())
            .collect()
    }

    /// Insert `∞` if some edge needs it and it is missing.
    pub(crate) fn ensure_infinity(&mut self) {
        if self.edges.values().any(|e| !e.bounded) {
            self.vertices.entry(ContactType::empty()).or_insert_with(VertexRecord::infinity);
        } else {
            self.vertices.remove(&ContactType::empty());
        }
    }
}

/// The square of a vertex contact type at θ, in the θ frame. A single-point
/// type gives the trivial square at that point.
pub fn vertex_square(points: &PointSet, kappa: &ContactType, theta: f64) -> Result<FrameSquare, VdError> {
    let pts = kappa.points();
    if pts.len() == 1 {
        let (u, v) = points.frame(pts[0], theta);
        return Ok(FrameSquare { cu: u, cv: v, r: 0.0 });
    }
    let (fam, _) = SquareFamily::build(points, kappa)?;
    Ok(fam.at(theta))
}

pub(crate) fn make_vertex(points: &PointSet, kappa: &ContactType, theta: f64) -> Result<VertexRecord, VdError> {
    let fs = vertex_square(points, kappa, theta)?;
    let sq = fs.to_square(theta);
    Ok(VertexRecord {
        key: kappa.clone(),
        embedding: Some(sq.center),
        radius: fs.r,
        vtype: Some(quadrot_geom::classify_vertex(kappa)?),
    })
}
