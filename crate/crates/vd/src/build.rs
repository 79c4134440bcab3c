//! Diagram builders: a definition-driven reference and a tracing builder.

use crate::graph::{make_vertex, vertex_square, EdgeRecord, VoronoiGraph};
use crate::local::{incident_half_edges, HalfEdge};
use crate::walk::trace_half_edge;
use crate::VdError;
use quadrot_geom::{ContactPair, ContactType, PointSet, Side, SquareFamily, Tolerance};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

fn site_type(p: u32) -> ContactType {
    ContactType::new(Side::ALL.map(|s| ContactPair::new(p, s))).expect("four pairs")
}

/// Every three-pair contact type on three distinct sides, as a callback.
fn for_each_candidate(n: u32, mut f: impl FnMut(ContactType) -> Result<(), VdError>) -> Result<(), VdError> {
    // one corner point plus one point on a side opposite a corner side
    for p in 0..n {
        for a in Side::ALL {
            let b = a.shift(1);
            for c in [a.opposite(), b.opposite()] {
                for q in 0..n {
                    if q != p {
                        f(ContactType::of(&[(p, a), (p, b), (q, c)]))?;
                    }
                }
            }
        }
    }
    // three distinct points on three distinct sides
    for missing in Side::ALL {
        let s: Vec<Side> = Side::ALL.into_iter().filter(|&x| x != missing).collect();
        for p in 0..n {
            for q in 0..n {
                if q == p {
                    continue;
                }
                for r in 0..n {
                    if r != p && r != q {
                        f(ContactType::of(&[(p, s[0]), (q, s[1]), (r, s[2])]))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn gp_error(k: &ContactType, why: impl std::fmt::Display) -> VdError {
    VdError::GeneralPosition(k.to_string(), why.to_string())
}

/// `VD(θ)` straight from the definition: every empty square with three or
/// four pinned sides is found by solving all candidate contact types, and
/// edges are obtained by pairing up the local stars of the vertices.
///
/// Cubic in `n`; meant as the oracle and for small inputs. Works at regular
/// and at degenerate orientations.
pub fn build_diagram_reference(points: &PointSet, theta: f64, tol: &Tolerance) -> Result<VoronoiGraph, VdError> {
    let n = points.len() as u32;
    let frame = points.frame_all(theta);
    let eps = tol.len;
    let mut keys: BTreeSet<ContactType> = (0..n).map(site_type).collect();
    for_each_candidate(n, |k| {
        let (fam, _) = SquareFamily::build(points, &k)?;
        let fs = fam.at(theta);
        if fs.r <= eps {
            return Ok(());
        }
        for p in k.pairs() {
            let (u, v) = frame[p.point as usize];
            let sl = fs.slacks(u, v);
            if sl.iter().any(|&x| x < -eps) || sl[p.side.index()].abs() > eps {
                return Ok(());
            }
        }
        if fs.witness_inside(&frame, eps).is_some() {
            return Ok(());
        }
        let got = fs.contacts(&frame, eps).map_err(|e| gp_error(&k, e))?;
        if !k.is_subset(&got) {
            return Ok(());
        }
        quadrot_geom::classify_vertex(&got).map_err(|e| gp_error(&got, e))?;
        keys.insert(got);
        Ok(())
    })?;

    let mut g = VoronoiGraph::new(theta);
    let mut stars: BTreeMap<ContactType, Vec<(ContactType, HalfEdge)>> = BTreeMap::new();
    for k in keys {
        g.vertices.insert(k.clone(), make_vertex(points, &k, theta)?);
        for he in incident_half_edges(&k) {
            stars.entry(he.kappa_e.clone()).or_default().push((k.clone(), he));
        }
    }
    for (ke, ends) in stars {
        let e = match ends.as_slice() {
            [(a, ha), (b, _)] => EdgeRecord::new(a.clone(), b.clone(), ke.clone(), ha.kind, ha.growth),
            [(a, ha)] => EdgeRecord::new(a.clone(), ContactType::empty(), ke.clone(), ha.kind, ha.growth),
            _ => {
                return Err(VdError::Structure(format!(
                    "edge type {ke} claimed by {} vertices",
                    ends.len()
                )))
            }
        };
        g.edges.insert(ke, e);
    }
    g.ensure_infinity();
    Ok(g)
}

/// `VD(θ)` by walking edges outwards from the sites.
///
/// Every vertex has an incident edge along which squares shrink, so all
/// vertices are reachable from the sites. Each edge is traced once in
/// `O(n)`, giving `O(n · |E|)` overall. Intended for regular θ.
pub fn build_diagram_traced(points: &PointSet, theta: f64, tol: &Tolerance) -> Result<VoronoiGraph, VdError> {
    let frame = points.frame_all(theta);
    let eps = tol.len;
    let mut g = VoronoiGraph::new(theta);
    let mut todo: VecDeque<ContactType> = VecDeque::new();
    for p in 0..points.len() as u32 {
        let k = site_type(p);
        g.vertices.insert(k.clone(), make_vertex(points, &k, theta)?);
        todo.push_back(k);
    }
    while let Some(k) = todo.pop_front() {
        let start = vertex_square(points, &k, theta)?;
        for he in incident_half_edges(&k) {
            if g.edges.contains_key(&he.kappa_e) {
                continue;
            }
            let step = trace_half_edge(&frame, &start, &k, &he, eps).map_err(|e| gp_error(&k, e))?;
            let other = match step {
                None => ContactType::empty(),
                Some(s) => {
                    if !incident_half_edges(&s.kappa).iter().any(|h| h.kappa_e == he.kappa_e) {
                        return Err(VdError::Structure(format!(
                            "tracing {} from {k} reached {} which has no such edge",
                            he.kappa_e, s.kappa
                        )));
                    }
                    if !g.vertices.contains_key(&s.kappa) {
                        let rec = make_vertex(points, &s.kappa, theta)
                            .map_err(|e| gp_error(&s.kappa, e))?;
                        g.vertices.insert(s.kappa.clone(), rec);
                        todo.push_back(s.kappa.clone());
                    }
                    s.kappa
                }
            };
            g.edges.insert(
                he.kappa_e.clone(),
                EdgeRecord::new(k.clone(), other, he.kappa_e.clone(), he.kind, he.growth),
            );
        }
    }
    g.ensure_infinity();
    Ok(g)
}
