//! The local star of a vertex, derived from its contact type alone.
//!
//! Every edge is a one-parameter family of squares keeping two sides pinned:
//! either two opposite sides (the square slides) or two adjacent sides (the
//! square grows from a fixed corner). Moving along the family changes the
//! slack of each side at a fixed rate, and the signs of those rates decide
//! which contact pairs survive a small step away from the vertex.

use quadrot_geom::{ContactType, Side};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    Sliding,
    Growing,
}

/// Where the squares of a growing edge get larger, seen from one endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Growth {
    /// Squares grow while moving towards this vertex.
    TowardVertex,
    /// Squares grow while moving away from this vertex.
    Outward,
    None,
}

/// The square family carried by an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Top and bottom pinned; the center moves along `u`.
    SlideU,
    /// Left and right pinned; the center moves along `v`.
    SlideV,
    /// Two adjacent sides pinned; the corner they meet at stays fixed.
    Corner { horizontal: Side, vertical: Side },
}

impl Family {
    /// The family of an edge contact type: exactly two pinned sides.
    pub fn of(kappa_e: &ContactType) -> Option<Family> {
        if kappa_e.len() < 2 || kappa_e.pinned_sides() != 2 {
            return None;
        }
        let pinned: Vec<Side> = Side::ALL.into_iter().filter(|s| kappa_e.is_pinned(*s)).collect();
        let (a, b) = (pinned[0], pinned[1]);
        Some(if a.opposite() == b {
            if a.is_horizontal() {
                Family::SlideU
            } else {
                Family::SlideV
            }
        } else {
            let (h, v) = if a.is_horizontal() { (a, b) } else { (b, a) };
            Family::Corner { horizontal: h, vertical: v }
        })
    }

    /// Rate of change of the slack of `side` per unit of the family parameter
    /// (translation for slides, radius for corners).
    pub fn rate(self, side: Side) -> f64 {
        match self {
            Family::SlideU => match side {
                Side::Right => 1.0,
                Side::Left => -1.0,
                _ => 0.0,
            },
            Family::SlideV => match side {
                Side::Top => 1.0,
                Side::Bottom => -1.0,
                _ => 0.0,
            },
            Family::Corner { horizontal, vertical } => {
                if side == horizontal || side == vertical {
                    0.0
                } else {
                    2.0
                }
            }
        }
    }

    /// Velocity of the square center per unit parameter, in frame coordinates.
    pub fn center_velocity(self) -> (f64, f64) {
        match self {
            Family::SlideU => (1.0, 0.0),
            Family::SlideV => (0.0, 1.0),
            Family::Corner { horizontal, vertical } => (
                if vertical == Side::Left { 1.0 } else { -1.0 },
                if horizontal == Side::Bottom { 1.0 } else { -1.0 },
            ),
        }
    }

    pub fn radius_rate(self) -> f64 {
        match self {
            Family::Corner { .. } => 1.0,
            _ => 0.0,
        }
    }

    pub fn kind(self) -> EdgeKind {
        match self {
            Family::Corner { .. } => EdgeKind::Growing,
            _ => EdgeKind::Sliding,
        }
    }
}

/// One edge leaving a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfEdge {
    pub kappa_e: ContactType,
    pub kind: EdgeKind,
    pub growth: Growth,
    pub family: Family,
    /// +1 when leaving the vertex increases the family parameter.
    pub sign: i8,
}

/// Contact type a small step along `family` (in direction `sign`) leaves
/// behind, or `None` if some contact point would enter the interior.
pub fn step_contacts(kappa_v: &ContactType, family: Family, sign: f64) -> Option<ContactType> {
    let mut kept = Vec::new();
    for p in kappa_v.points() {
        let sides: Vec<Side> =
            Side::ALL.into_iter().filter(|s| kappa_v.sides_of(p) & (1 << s.index()) != 0).collect();
        let rates: Vec<f64> = sides.iter().map(|s| sign * family.rate(*s)).collect();
        if rates.iter().any(|&r| r < 0.0) {
            continue;
        }
        if rates.iter().all(|&r| r > 0.0) {
            return None;
        }
        for (s, r) in sides.iter().zip(&rates) {
            if *r == 0.0 {
                kept.push(quadrot_geom::ContactPair::new(p, *s));
            }
        }
    }
    Some(ContactType::new(kept).expect("subset of a valid type"))
}

/// The full star of a vertex with contact type `kappa_v`.
pub fn incident_half_edges(kappa_v: &ContactType) -> Vec<HalfEdge> {
    let mut out = Vec::new();
    for size in 2..kappa_v.len() {
        for kappa_e in kappa_v.subsets(size) {
            let Some(family) = Family::of(&kappa_e) else { continue };
            for sign in [1i8, -1] {
                if step_contacts(kappa_v, family, sign as f64).as_ref() == Some(&kappa_e) {
                    let growth = match family.kind() {
                        EdgeKind::Sliding => Growth::None,
                        EdgeKind::Growing if sign > 0 => Growth::Outward,
                        EdgeKind::Growing => Growth::TowardVertex,
                    };
                    out.push(HalfEdge {
                        kappa_e: kappa_e.clone(),
                        kind: family.kind(),
                        growth,
                        family,
                        sign,
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Side::*;

    fn ct(p: &[(u32, Side)]) -> ContactType {
        ContactType::of(p)
    }

    fn star(k: &ContactType) -> Vec<(ContactType, EdgeKind, Growth)> {
        let mut v: Vec<_> =
            incident_half_edges(k).into_iter().map(|h| (h.kappa_e, h.kind, h.growth)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    fn sorted(mut v: Vec<(ContactType, EdgeKind, Growth)>) -> Vec<(ContactType, EdgeKind, Growth)> {
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    use EdgeKind::*;
    use Growth::*;

    #[test]
    fn star_of_three_two() {
        let (p, q) = (0, 1);
        let k = ct(&[(p, Bottom), (p, Left), (q, Top)]);
        assert_eq!(
            star(&k),
            sorted(vec![
                (ct(&[(p, Bottom), (q, Top)]), Sliding, None),
                (ct(&[(p, Bottom), (p, Left)]), Growing, TowardVertex),
                (ct(&[(p, Left), (q, Top)]), Growing, Outward),
            ])
        );
    }

    #[test]
    fn star_of_three_three() {
        let (p, q, r) = (0, 1, 2);
        let k = ct(&[(p, Left), (q, Bottom), (r, Top)]);
        assert_eq!(
            star(&k),
            sorted(vec![
                (ct(&[(q, Bottom), (r, Top)]), Sliding, None),
                (ct(&[(p, Left), (r, Top)]), Growing, TowardVertex),
                (ct(&[(p, Left), (q, Bottom)]), Growing, TowardVertex),
            ])
        );
    }

    #[test]
    fn star_of_site() {
        let k = ct(&[(0, Top), (0, Right), (0, Bottom), (0, Left)]);
        let s = star(&k);
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|e| e.1 == Growing && e.2 == Outward));
    }

    #[test]
    fn star_of_stapled_four_two() {
        let (p, q) = (0, 1);
        let k = ct(&[(p, Bottom), (p, Left), (q, Right), (q, Bottom)]);
        assert_eq!(
            star(&k),
            sorted(vec![
                (ct(&[(p, Left), (q, Right)]), Sliding, None),
                (ct(&[(p, Bottom), (p, Left)]), Growing, TowardVertex),
                (ct(&[(q, Right), (q, Bottom)]), Growing, TowardVertex),
                (ct(&[(p, Bottom), (p, Left), (q, Bottom)]), Growing, Outward),
                (ct(&[(p, Bottom), (q, Right), (q, Bottom)]), Growing, Outward),
            ])
        );
    }

    #[test]
    fn star_sizes_by_type() {
        let cases: Vec<(ContactType, usize)> = vec![
            (ct(&[(0, Left), (0, Bottom), (1, Top), (1, Right)]), 4),
            (ct(&[(0, Left), (0, Bottom), (1, Top), (2, Right)]), 4),
            (ct(&[(0, Left), (1, Bottom), (2, Right), (3, Top)]), 4),
            (ct(&[(0, Bottom), (0, Left), (1, Top), (2, Top)]), 3),
            (ct(&[(0, Bottom), (0, Left), (1, Bottom), (2, Top)]), 3),
            (ct(&[(0, Bottom), (0, Left), (1, Bottom), (2, Right)]), 3),
            (ct(&[(0, Bottom), (1, Bottom), (2, Left), (3, Top)]), 3),
            (ct(&[(0, Bottom), (1, Bottom), (2, Left), (3, Right)]), 3),
        ];
        for (k, n) in cases {
            assert_eq!(incident_half_edges(&k).len(), n, "{k}");
        }
    }

    #[test]
    fn stapled_four_three_b_star() {
        let (p, q, r) = (0, 1, 2);
        let k = ct(&[(p, Bottom), (p, Left), (q, Bottom), (r, Top)]);
        assert_eq!(
            star(&k),
            sorted(vec![
                (ct(&[(q, Bottom), (r, Top)]), Sliding, None),
                (ct(&[(p, Bottom), (q, Bottom), (r, Top)]), Sliding, None),
                (ct(&[(p, Left), (p, Bottom), (q, Bottom)]), Growing, TowardVertex),
            ])
        );
    }
}
