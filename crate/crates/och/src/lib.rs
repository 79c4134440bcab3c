//! Orthogonal convex hull of a point set with rotated axes.
//!
//! A point is on the staircase of a quadrant direction when the open
//! quadrant with apex at the point, pointing that way, holds no other point.
//! Consecutive staircase points are what the unbounded Voronoi edges hang
//! off, and the orientations at which two of them become axis-aligned are
//! the outer align events of the rotation.

use quadrot_geom::{alignment_orientation, ContactPair, ContactType, PointSet, Side, Tolerance};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quadrant {
    NorthEast,
    NorthWest,
    SouthWest,
    SouthEast,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] =
        [Quadrant::NorthEast, Quadrant::NorthWest, Quadrant::SouthWest, Quadrant::SouthEast];

    /// Signs of the `u` and `v` directions the quadrant opens towards.
    pub fn signs(self) -> (f64, f64) {
        match self {
            Quadrant::NorthEast => (1.0, 1.0),
            Quadrant::NorthWest => (-1.0, 1.0),
            Quadrant::SouthWest => (-1.0, -1.0),
            Quadrant::SouthEast => (1.0, -1.0),
        }
    }

    /// The sides playing the roles of left and bottom once the quadrant is
    /// reflected onto the north-east one.
    fn near_sides(self) -> (Side, Side) {
        let (su, sv) = self.signs();
        (
            if su > 0.0 { Side::Left } else { Side::Right },
            if sv > 0.0 { Side::Bottom } else { Side::Top },
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrthoHull {
    pub orientation: f64,
    /// Staircase point indices per [`Quadrant::ALL`] entry, ordered along
    /// the staircase (increasing reflected `u`).
    pub staircases: [Vec<u32>; 4],
}

impl OrthoHull {
    pub fn staircase(&self, q: Quadrant) -> &[u32] {
        &self.staircases[q as usize]
    }

    /// All points on the hull boundary, ascending and without repeats.
    pub fn hull_vertices(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.staircases.iter().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn reflected(frame: &[(f64, f64)], q: Quadrant) -> Vec<(f64, f64)> {
    let (su, sv) = q.signs();
    frame.iter().map(|&(u, v)| (su * u, sv * v)).collect()
}

/// Whether the open north-east quadrant of point `i` holds some point deeper
/// than `eps`, in already reflected coordinates.
fn quadrant_occupied(refl: &[(f64, f64)], i: usize, eps: f64) -> bool {
    let (u0, v0) = refl[i];
    refl.iter().any(|&(u, v)| u - u0 > eps && v - v0 > eps)
}

/// `OH(θ)` as four staircases. Points sitting exactly on the boundary of a
/// neighbour's quadrant (an alignment at θ) stay on the staircase.
pub fn build_och(points: &PointSet, theta: f64, tol: &Tolerance) -> OrthoHull {
    let frame = points.frame_all(theta);
    let stairs = Quadrant::ALL.map(|q| {
        let refl = reflected(&frame, q);
        // sweep by decreasing u; best_v is the highest v among points lying
        // strictly further right, so the quadrant test becomes one comparison
        let mut order: Vec<usize> = (0..refl.len()).collect();
        order.sort_by(|&a, &b| refl[b].0.total_cmp(&refl[a].0));
        let mut best_v = f64::NEG_INFINITY;
        let mut j = 0;
        let mut out = Vec::new();
        for &i in &order {
            while j < order.len() && refl[order[j]].0 - refl[i].0 > tol.len {
                best_v = best_v.max(refl[order[j]].1);
                j += 1;
            }
            if best_v - refl[i].1 <= tol.len {
                out.push(i);
            }
        }
        out.sort_by(|&a, &b| refl[a].0.total_cmp(&refl[b].0).then(refl[b].1.total_cmp(&refl[a].1)));
        out.into_iter().map(|i| i as u32).collect::<Vec<u32>>()
    });
    OrthoHull { orientation: theta, staircases: stairs }
}

/// Unbounded edges of `VD(θ)` read off the staircases, as pairs
/// `(κ_e, contact type of the finite endpoint)`.
///
/// Every staircase point carries the edge of squares growing from it as a
/// corner; every consecutive pair carries the edge of squares holding one
/// point on each of the two near sides, ending where the square has shrunk
/// until one of them reaches a corner.
pub fn unbounded_edges_from_och(points: &PointSet, h: &OrthoHull) -> Vec<(ContactType, ContactType)> {
    let frame = points.frame_all(h.orientation);
    let eps = Tolerance::for_points(points).len;
    let mut out = Vec::new();
    for q in Quadrant::ALL {
        let (near_u, near_v) = q.near_sides();
        let refl = reflected(&frame, q);
        let st = h.staircase(q);
        // at an alignment two consecutive points share a near side, which
        // blocks one corner ray and adds the staple to the pair's edge
        let mut blocked = Vec::new();
        for w in st.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (ua, va) = refl[a as usize];
            let (ub, vb) = refl[b as usize];
            let mut ke = ContactType::of(&[(a, near_u), (b, near_v)]);
            let corner = if ub - ua >= va - vb { (b, near_u.opposite()) } else { (a, near_v.opposite()) };
            let mut kv = ContactType::of(&[(a, near_u), (b, near_v), corner]);
            let extra = if (va - vb).abs() <= eps {
                blocked.push(a);
                Some(ContactPair::new(a, near_v))
            } else if (ub - ua).abs() <= eps {
                blocked.push(b);
                Some(ContactPair::new(b, near_u))
            } else {
                None
            };
            if let Some(x) = extra {
                ke = ke.with(x).expect("three pairs");
                kv = kv.with(x).expect("four pairs");
            }
            out.push((ke, kv));
        }
        for &s in st {
            if blocked.contains(&s) {
                continue;
            }
            let ke = ContactType::of(&[(s, near_u), (s, near_v)]);
            let site = ContactType::of(&[(s, Side::Top), (s, Side::Right), (s, Side::Bottom), (s, Side::Left)]);
            out.push((ke, site));
        }
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OuterAlignEvent {
    pub p: u32,
    pub q: u32,
    pub phi: f64,
    /// A quadrant direction in which both points are on the staircase at φ.
    pub quadrant: Quadrant,
}

/// Points that lie on some staircase for some orientation: those seeing an
/// empty wedge of angle at least π/2.
pub fn hull_candidates(points: &PointSet) -> Vec<u32> {
    let pts = points.points();
    let n = pts.len();
    if n <= 2 {
        return (0..n as u32).collect();
    }
    let mut out = Vec::new();
    let mut ang = Vec::with_capacity(n);
    for i in 0..n {
        ang.clear();
        ang.extend((0..n).filter(|&j| j != i).map(|j| (pts[j].y - pts[i].y).atan2(pts[j].x - pts[i].x)));
        ang.sort_by(|a, b| a.total_cmp(b));
        let wrap = ang[0] + 2.0 * PI - ang[ang.len() - 1];
        let gap = ang.windows(2).map(|w| w[1] - w[0]).fold(wrap, f64::max);
        if gap >= PI / 2.0 - 1e-12 {
            out.push(i as u32);
        }
    }
    out
}

/// All orientations in `[0, π/2)` at which the orthogonal hull changes,
/// sorted by φ.
///
/// Only points that ever reach the hull can take part, so pairs are drawn
/// from [`hull_candidates`] and each is tested at its alignment orientation:
/// the pair is an event when both points have the same empty quadrant there.
pub fn enumerate_outer_align_events(points: &PointSet, tol: &Tolerance) -> Vec<OuterAlignEvent> {
    let cand = hull_candidates(points);
    let mut out = Vec::new();
    for (ia, &p) in cand.iter().enumerate() {
        for &q in &cand[ia + 1..] {
            let phi = alignment_orientation(points.get(p), points.get(q)).expect("distinct points").value();
            let frame = points.frame_all(phi);
            for quad in Quadrant::ALL {
                let refl = reflected(&frame, quad);
                if !quadrant_occupied(&refl, p as usize, tol.len) && !quadrant_occupied(&refl, q as usize, tol.len) {
                    out.push(OuterAlignEvent { p, q, phi, quadrant: quad });
                    break;
                }
            }
        }
    }
    out.sort_by(|a, b| a.phi.total_cmp(&b.phi).then((a.p, a.q).cmp(&(b.p, b.q))));
    out
}

/// Group events whose orientations are within `eps` of the previous one.
pub fn group_events(events: &[OuterAlignEvent], eps: f64) -> Vec<Vec<OuterAlignEvent>> {
    let mut out: Vec<Vec<OuterAlignEvent>> = Vec::new();
    for e in events {
        match out.last_mut() {
            Some(g) if e.phi - g.last().unwrap().phi <= eps => g.push(*e),
            _ => out.push(vec![*e]),
        }
    }
    out
}
