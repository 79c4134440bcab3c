//! The output of a quarter-turn sweep and what can be derived from it alone.

use crate::KineticError;
use quadrot_geom::{ContactType, FourSquareType, PointSet, Square, QUARTER};
use quadrot_vd::EdgeKey;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::{self, Write};

/// One nontrivial 4-square. `phi` is in `[0, π/2)` and the sides in
/// `contact_type` are labelled in the frame of `phi`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourSquareRecord {
    pub square: Square,
    pub contact_type: ContactType,
    pub four_type: FourSquareType,
    pub phi: f64,
    /// Vertex types valid just before `phi` that end at this square.
    pub vanishing: Vec<ContactType>,
    /// Vertex types valid just after `phi` that start at this square.
    pub appearing: Vec<ContactType>,
}

/// All changes at one degenerate orientation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub phi: f64,
    pub squares: Vec<FourSquareRecord>,
    pub removed_vertices: Vec<ContactType>,
    pub added_vertices: Vec<ContactType>,
    pub removed_edges: Vec<EdgeKey>,
    pub added_edges: Vec<EdgeKey>,
}

impl TraceEvent {
    pub fn change_count(&self) -> usize {
        self.removed_vertices.len() + self.added_vertices.len() + self.removed_edges.len() + self.added_edges.len()
    }

    /// Relabel an event found past π/2 into the canonical frame.
    pub(crate) fn shifted_back(mut self) -> Self {
        self.phi -= QUARTER;
        let sk = |k: &mut ContactType| *k = k.shifted(-1);
        for s in &mut self.squares {
            s.phi -= QUARTER;
            sk(&mut s.contact_type);
            s.vanishing.iter_mut().for_each(sk);
            s.appearing.iter_mut().for_each(sk);
            s.vanishing.sort();
            s.appearing.sort();
            s.square.orientation = quadrot_geom::Orientation::new(s.phi);
        }
        for v in [&mut self.removed_vertices, &mut self.added_vertices] {
            v.iter_mut().for_each(sk);
            v.sort();
        }
        for e in [&mut self.removed_edges, &mut self.added_edges] {
            e.iter_mut().for_each(|k| *k = shift_edge_key(k, -1));
            e.sort();
        }
        self
    }
}

/// Relabel an edge key by `by` quarter turns.
pub fn shift_edge_key(k: &EdgeKey, by: i32) -> EdgeKey {
    let (a, b) = (k.0.shifted(by), k.1.shifted(by));
    let (u, v) = if b < a { (b, a) } else { (a, b) };
    (u, v, k.2.shifted(by))
}

/// A full quarter turn over `[0, π/2)` in canonical labels. The initial
/// sets describe the diagram just after orientation 0; `theta0` is where the
/// sweep actually started.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationTrace {
    pub theta0: f64,
    pub initial_vertices: Vec<ContactType>,
    pub initial_edges: Vec<EdgeKey>,
    pub events: Vec<TraceEvent>,
}

impl RotationTrace {
    pub fn squares(&self) -> impl Iterator<Item = &FourSquareRecord> {
        self.events.iter().flat_map(|e| e.squares.iter())
    }

    /// `s₄`, the number of nontrivial 4-squares.
    pub fn s4(&self) -> usize {
        self.events.iter().map(|e| e.squares.len()).sum()
    }

    pub fn type_counts(&self) -> BTreeMap<FourSquareType, usize> {
        let mut m = BTreeMap::new();
        for s in self.squares() {
            *m.entry(s.four_type).or_insert(0) += 1;
        }
        m
    }

    pub fn total_changes(&self) -> usize {
        self.events.iter().map(|e| e.change_count()).sum()
    }
}

/// The graph on 4-squares whose edges are valid intervals of 3-pair
/// contact types, running from the square that creates the type to the one
/// that ends it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SquareGraph {
    pub nodes: Vec<FourSquareRecord>,
    /// `(from, to, κ)` with `from` the creating square.
    pub edges: Vec<(usize, usize, ContactType)>,
}

impl SquareGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.nodes.len()];
        for &(a, b, _) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b, _) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        (0..parent.len()).filter(|&i| find(&mut parent, i) == i).count()
    }
}

/// Follow every 3-pair contact type through the trace, cyclically.
pub fn build_square_adjacency_graph(trace: &RotationTrace) -> Result<SquareGraph, KineticError> {
    let mut nodes = Vec::new();
    // per contact type: (node, created?) in sweep order
    let mut life: BTreeMap<ContactType, Vec<(usize, bool)>> = BTreeMap::new();
    for ev in &trace.events {
        for s in &ev.squares {
            let id = nodes.len();
            nodes.push(s.clone());
            for k in &s.vanishing {
                life.entry(k.clone()).or_default().push((id, false));
            }
            for k in &s.appearing {
                life.entry(k.clone()).or_default().push((id, true));
            }
        }
    }
    let alive0: std::collections::BTreeSet<&ContactType> = trace.initial_vertices.iter().collect();
    let err = |k: &ContactType, why: &str| KineticError::Structure {
        phi: trace.theta0,
        detail: format!("valid interval of {k} {why}"),
    };
    let mut edges = Vec::new();
    // intervals still open at π/2, keyed by their label there, and intervals
    // closed before they were opened, keyed by their label at 0
    let mut open_at_end: BTreeMap<ContactType, usize> = BTreeMap::new();
    let mut closed_first: BTreeMap<ContactType, usize> = BTreeMap::new();
    for (k, seq) in life {
        let mut alive = alive0.contains(&k);
        let mut open: Option<usize> = None;
        for &(node, created) in &seq {
            if created == alive {
                return Err(err(&k, if created { "created twice" } else { "destroyed twice" }));
            }
            alive = created;
            if created {
                open = Some(node);
            } else {
                match open.take() {
                    Some(a) => edges.push((a, node, k.clone())),
                    None => {
                        closed_first.insert(k.clone(), node);
                    }
                }
            }
        }
        if let Some(a) = open {
            open_at_end.insert(k, a);
        }
    }
    // the frame at π/2 is the frame at 0 turned by a quarter
    for (k, a) in open_at_end {
        match closed_first.remove(&k.shifted(-1)) {
            Some(b) => edges.push((a, b, k)),
            None => return Err(err(&k, "is never closed")),
        }
    }
    if let Some(k) = closed_first.keys().next() {
        return Err(err(k, "is never opened"));
    }
    Ok(SquareGraph { nodes, edges })
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn contacts_json(points: &PointSet, k: &ContactType) -> String {
    let items: Vec<String> = k
        .pairs()
        .iter()
        .map(|p| format!(r#"{{"id":{},"side":"{}"}}"#, points.get(p.point).id, p.side.letter()))
        .collect();
    format!("[{}]", items.join(","))
}

fn key_json(points: &PointSet, k: &ContactType) -> String {
    let s: String = k
        .pairs()
        .iter()
        .map(|p| format!("{}{}", points.get(p.point).id, p.side.letter()))
        .collect::<Vec<_>>()
        .join(" ");
    format!("\"{s}\"")
}

/// One line per 4-square and one per delta, floats with 17 significant
/// digits so that they read back bit-exactly.
pub fn write_jsonl<W: Write>(trace: &RotationTrace, points: &PointSet, mut w: W) -> io::Result<()> {
    for ev in &trace.events {
        for s in &ev.squares {
            writeln!(
                w,
                r#"{{"record":"square","phi":{},"type":"{}","center":[{},{}],"radius":{},"contacts":{}}}"#,
                num(s.phi),
                s.four_type.name(),
                num(s.square.center.0),
                num(s.square.center.1),
                num(s.square.radius),
                contacts_json(points, &s.contact_type)
            )?;
        }
        let list = |v: &[ContactType]| v.iter().map(|k| key_json(points, k)).collect::<Vec<_>>().join(",");
        writeln!(
            w,
            r#"{{"record":"delta","phi":{},"removed_vertices":[{}],"added_vertices":[{}]}}"#,
            num(ev.phi),
            list(&ev.removed_vertices),
            list(&ev.added_vertices)
        )?;
    }
    Ok(())
}
