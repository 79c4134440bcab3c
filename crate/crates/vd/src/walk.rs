//! Following an edge from one endpoint to the other at a fixed orientation.

use crate::local::HalfEdge;
use quadrot_geom::{ContactPair, ContactType, FrameSquare, GeomError, Side};

/// Where a half-edge ends: the contact type of the far vertex and the family
/// parameter (a length) at which it is reached.
#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub kappa: ContactType,
    pub t: f64,
}

/// Trace `he` from the vertex `kappa_v` whose square is `start`. `frame` holds
/// all points in the current frame. Returns `None` for an unbounded edge.
///
/// Along the family every side slack is linear in the parameter, so the
/// first contact change is found exactly by one pass over the points.
pub fn trace_half_edge(
    frame: &[(f64, f64)],
    start: &FrameSquare,
    kappa_v: &ContactType,
    he: &HalfEdge,
    eps: f64,
) -> Result<Option<Step>, GeomError> {
    let sgn = he.sign as f64;
    let rates: [f64; 4] = Side::ALL.map(|s| sgn * he.family.rate(s));
    let edge_pts = he.kappa_e.points();
    let vertex_pts = kappa_v.points();

    // (t, point, side) candidates; ties are merged afterwards
    let mut hits: Vec<(f64, u32, Side)> = Vec::new();
    let mut best = f64::INFINITY;
    let mut push = |t: f64, i: u32, s: Side, hits: &mut Vec<(f64, u32, Side)>| {
        if t <= best + eps {
            best = best.min(t);
            hits.push((t, i, s));
        }
    };

    for (i, &(u, v)) in frame.iter().enumerate() {
        let i = i as u32;
        let sl = start.slacks(u, v);
        if edge_pts.contains(&i) {
            // a contact point sliding along its side until it reaches a corner
            let mask = he.kappa_e.sides_of(i);
            for s in Side::ALL {
                if mask & (1 << s.index()) == 0 && rates[s.index()] < 0.0 {
                    push((sl[s.index()] / -rates[s.index()]).max(0.0), i, s, &mut hits);
                }
            }
            continue;
        }
        if vertex_pts.contains(&i) {
            continue;
        }
        // the closed square contains the point for t in [lo, hi]
        let (mut lo, mut hi) = (0.0f64, f64::INFINITY);
        let mut feasible = true;
        for s in Side::ALL {
            let (s0, k) = (sl[s.index()], rates[s.index()]);
            if k > 0.0 {
                lo = lo.max(-s0 / k);
            } else if k < 0.0 {
                hi = hi.min(s0 / -k);
            } else if s0 < -eps {
                feasible = false;
            }
        }
        if feasible && lo <= hi + eps && lo.is_finite() {
            for s in Side::ALL {
                let at = sl[s.index()] + rates[s.index()] * lo;
                if at.abs() <= eps {
                    push(lo, i, s, &mut hits);
                }
            }
        }
    }
    if !best.is_finite() {
        return Ok(None);
    }
    let mut pairs: Vec<ContactPair> = he.kappa_e.pairs().to_vec();
    pairs.extend(hits.iter().filter(|h| h.0 <= best + eps).map(|h| ContactPair::new(h.1, h.2)));
    let kappa = ContactType::new(pairs)?;
    Ok(Some(Step { kappa, t: best }))
}

/// The square reached after moving `t` along `he` from `start`.
pub fn advance(start: &FrameSquare, he: &HalfEdge, t: f64) -> FrameSquare {
    let sgn = he.sign as f64;
    let (du, dv) = he.family.center_velocity();
    FrameSquare {
        cu: start.cu + sgn * du * t,
        cv: start.cv + sgn * dv * t,
        r: start.r + sgn * he.family.radius_rate() * t,
    }
}
