//! MES classes: lifetimes of vertices and edges over the quarter turn, and
//! their split by the combinatorial changes of the rotating bounding box.

use crate::AppError;
use quadrot_geom::{canonical, ContactType, PointSet, QUARTER};
use quadrot_kinetic::{shift_edge_key, RotationTrace};
use quadrot_vd::EdgeKey;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassKey {
    Vertex(ContactType),
    Edge(EdgeKey),
}

/// A vertex or edge together with one interval of orientations where it
/// exists. `start` lies in `[0, π/2)`; `end` may pass `π/2`, even by more
/// than a quarter turn. Orientations are raw, not reduced, and the labels
/// are those of the frame at `start` throughout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MesClass {
    pub key: ClassKey,
    pub start: f64,
    pub end: f64,
}

impl MesClass {
    /// Raw orientations in `[start, end]` equal to `theta` modulo π/2.
    pub fn lifts(&self, theta: f64) -> Vec<f64> {
        let t = canonical(theta);
        (0..)
            .map(|k| t + k as f64 * QUARTER)
            .take_while(|&x| x <= self.end)
            .filter(|&x| x >= self.start)
            .collect()
    }
}

/// `(key, start, end)` for every lifetime, cyclically.
///
/// A key alive at π/2 continues as the key alive at 0 that carries the same
/// label one quarter turn back; that one may itself survive the whole
/// quarter, so a lifetime can span several quarter turns. Keys whose
/// continuations close up without ever opening live forever and get the
/// whole domain.
fn lifetimes<K: Ord + Clone + std::fmt::Debug>(
    initial: &[K],
    events: &[(f64, &[K], &[K])],
    shift_back: impl Fn(&K) -> K,
) -> Result<Vec<(K, f64, f64)>, AppError> {
    // open segments with the orientation they appeared at; None means at 0
    let mut alive: BTreeMap<K, Option<f64>> = initial.iter().map(|k| (k.clone(), None)).collect();
    // segments alive at 0, with where they end (None: still alive at π/2)
    let mut from_zero: BTreeMap<K, Option<f64>> = BTreeMap::new();
    let mut out = Vec::new();
    for &(phi, removed, added) in events {
        for k in removed {
            match alive.remove(k) {
                Some(Some(s)) => out.push((k.clone(), s, phi)),
                Some(None) => {
                    from_zero.insert(k.clone(), Some(phi));
                }
                None => return Err(AppError::Trace(format!("{k:?} removed at {phi} while absent"))),
            }
        }
        for k in added {
            if alive.insert(k.clone(), Some(phi)).is_some() {
                return Err(AppError::Trace(format!("{k:?} added at {phi} while present")));
            }
        }
    }
    let mut open_late = Vec::new();
    for (k, s) in alive {
        match s {
            None => {
                from_zero.insert(k, None);
            }
            Some(s) => open_late.push((k, s)),
        }
    }
    let mut used: BTreeSet<K> = BTreeSet::new();
    for (k, s) in open_late {
        let mut cur = k.clone();
        let mut offset = 0.0;
        loop {
            offset += QUARTER;
            let next = shift_back(&cur);
            if !used.insert(next.clone()) {
                return Err(AppError::Trace(format!("{next:?} continues two lifetimes")));
            }
            match from_zero.get(&next) {
                Some(Some(e)) => {
                    out.push((k.clone(), s, e + offset));
                    break;
                }
                Some(None) => cur = next,
                None => return Err(AppError::Trace(format!("{k:?} opened at {s} is never closed"))),
            }
        }
    }
    for (k, e) in from_zero {
        if used.contains(&k) {
            continue;
        }
        match e {
            None => out.push((k, 0.0, QUARTER)),
            Some(_) => return Err(AppError::Trace(format!("{k:?} closed but never opened"))),
        }
    }
    Ok(out)
}

/// Vertex classes for every vertex with three or more pinned sides, and
/// edge classes for every edge, from the lifetimes recorded in the trace.
pub fn mes_classes(trace: &RotationTrace) -> Result<Vec<MesClass>, AppError> {
    let ev: Vec<_> =
        trace.events.iter().map(|e| (e.phi, e.removed_vertices.as_slice(), e.added_vertices.as_slice())).collect();
    let mut out: Vec<MesClass> = lifetimes(&trace.initial_vertices, &ev, |k| k.shifted(-1))?
        .into_iter()
        .filter(|(k, _, _)| k.points().len() >= 2)
        .map(|(k, start, end)| MesClass { key: ClassKey::Vertex(k), start, end })
        .collect();
    let ev: Vec<_> =
        trace.events.iter().map(|e| (e.phi, e.removed_edges.as_slice(), e.added_edges.as_slice())).collect();
    out.extend(
        lifetimes(&trace.initial_edges, &ev, |k| shift_edge_key(k, -1))?
            .into_iter()
            .map(|(k, start, end)| MesClass { key: ClassKey::Edge(k), start, end }),
    );
    out.sort_by(|a, b| a.start.total_cmp(&b.start).then_with(|| a.key.cmp(&b.key)));
    Ok(out)
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex hull, counter-clockwise, without collinear points.
fn convex_hull(points: &PointSet) -> Vec<(f64, f64)> {
    let mut p: Vec<(f64, f64)> = points.iter().map(|q| (q.x, q.y)).collect();
    p.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    if p.len() < 3 {
        return p;
    }
    let mut h: Vec<(f64, f64)> = Vec::with_capacity(2 * p.len());
    for pass in 0..2 {
        let base = h.len();
        for &q in &p {
            while h.len() >= base + 2 && cross(h[h.len() - 2], h[h.len() - 1], q) <= 0.0 {
                h.pop();
            }
            h.push(q);
        }
        h.pop();
        if pass == 0 {
            p.reverse();
        }
    }
    h
}

/// Orientations in `[0, π/2)` where a side of the rotating bounding box
/// changes its contact point: one per convex hull edge, at the edge's
/// outward normal reduced modulo π/2. Sorted, with repeats for parallel
/// or perpendicular hull edges.
pub fn bounding_box_events(points: &PointSet) -> Result<Vec<f64>, AppError> {
    if points.len() < 2 {
        return Err(AppError::Degenerate("bounding box events need at least two points".into()));
    }
    let h = convex_hull(points);
    let edges = if h.len() == 2 { 1 } else { h.len() };
    let mut out: Vec<f64> = (0..edges)
        .map(|i| {
            let (a, b) = (h[i], h[(i + 1) % h.len()]);
            canonical((-(b.0 - a.0)).atan2(b.1 - a.1))
        })
        .collect();
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// An edge class clipped to one interval between consecutive box events.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxedMesClass {
    /// Index into the class list it was made from.
    pub base: usize,
    /// The box interval `(θ_{i-1}, θ_i)`, counted cyclically.
    pub box_index: usize,
    pub start: f64,
    pub end: f64,
}

/// Split every edge class at the box events it spans; empty clips dropped.
pub fn boxed_mes_classes(classes: &[MesClass], box_events: &[f64]) -> Vec<BoxedMesClass> {
    let mut out = Vec::new();
    let uniq: Vec<f64> = {
        let mut u = box_events.to_vec();
        u.dedup();
        u
    };
    for (idx, c) in classes.iter().enumerate() {
        if !matches!(c.key, ClassKey::Edge(_)) {
            continue;
        }
        if uniq.is_empty() {
            out.push(BoxedMesClass { base: idx, box_index: 0, start: c.start, end: c.end });
            continue;
        }
        let h = uniq.len();
        // boundaries b_k = uniq[k mod h] + ⌊k/h⌋·π/2 for k over the span
        let bound = |k: i64| uniq[k.rem_euclid(h as i64) as usize] + k.div_euclid(h as i64) as f64 * QUARTER;
        let mut k = -(h as i64);
        while bound(k) < c.start {
            k += 1;
        }
        // interval k spans (b_{k-1}, b_k)
        let mut lo = c.start;
        loop {
            let hi = bound(k).min(c.end);
            if hi > lo {
                out.push(BoxedMesClass { base: idx, box_index: k.rem_euclid(h as i64) as usize, start: lo, end: hi });
            }
            if bound(k) >= c.end {
                break;
            }
            lo = bound(k);
            k += 1;
        }
    }
    out
}

/// Extreme points `(min u, max u, min v, max v)` at `theta`.
pub fn box_contacts(points: &PointSet, theta: f64) -> [u32; 4] {
    let f = points.frame_all(theta);
    let arg = |key: &dyn Fn(usize) -> f64| {
        (0..f.len()).min_by(|&a, &b| key(a).total_cmp(&key(b))).expect("nonempty") as u32
    };
    [arg(&|i| f[i].0), arg(&|i| -f[i].0), arg(&|i| f[i].1), arg(&|i| -f[i].1)]
}
