//! Combinatorial classification of 4-squares and diagram vertices.

use crate::{ContactType, GeomError, Side};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The ten kinds of squares with four contact pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FourSquareType {
    Trivial41,
    NonStapled42,
    Stapled42,
    NonStapled43,
    Stapled43a,
    Stapled43b,
    Stapled43c,
    NonStapled44,
    Stapled44a,
    Stapled44b,
}

impl FourSquareType {
    pub const ALL: [FourSquareType; 10] = [
        FourSquareType::Trivial41,
        FourSquareType::NonStapled42,
        FourSquareType::Stapled42,
        FourSquareType::NonStapled43,
        FourSquareType::Stapled43a,
        FourSquareType::Stapled43b,
        FourSquareType::Stapled43c,
        FourSquareType::NonStapled44,
        FourSquareType::Stapled44a,
        FourSquareType::Stapled44b,
    ];

    pub fn is_stapled(self) -> bool {
        use FourSquareType::*;
        matches!(self, Stapled42 | Stapled43a | Stapled43b | Stapled43c | Stapled44a | Stapled44b)
    }

    /// Number of distinct contact points, the `k` of an `(4,k)` square.
    pub fn points(self) -> usize {
        use FourSquareType::*;
        match self {
            Trivial41 => 1,
            NonStapled42 | Stapled42 => 2,
            NonStapled43 | Stapled43a | Stapled43b | Stapled43c => 3,
            NonStapled44 | Stapled44a | Stapled44b => 4,
        }
    }

    pub fn name(self) -> &'static str {
        use FourSquareType::*;
        match self {
            Trivial41 => "trivial(4,1)",
            NonStapled42 => "nonstapled(4,2)",
            Stapled42 => "stapled(4,2)",
            NonStapled43 => "nonstapled(4,3)",
            Stapled43a => "stapled(4,3)a",
            Stapled43b => "stapled(4,3)b",
            Stapled43c => "stapled(4,3)c",
            NonStapled44 => "nonstapled(4,4)",
            Stapled44a => "stapled(4,4)a",
            Stapled44b => "stapled(4,4)b",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == s)
    }
}

impl fmt::Display for FourSquareType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The twelve vertex types of the diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexType {
    Regular32,
    Regular33,
    Four(FourSquareType),
}

impl VertexType {
    pub fn is_regular(self) -> bool {
        matches!(self, VertexType::Regular32 | VertexType::Regular33)
    }

    pub fn name(self) -> &'static str {
        match self {
            VertexType::Regular32 => "(3,2)",
            VertexType::Regular33 => "(3,3)",
            VertexType::Four(t) => t.name(),
        }
    }
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn malformed(k: &ContactType, why: &'static str) -> GeomError {
    GeomError::MalformedContactType(k.to_string(), why)
}

/// Shape checks shared by both classifiers: a point sits on one side or on
/// two adjacent sides (a corner), no side carries three pairs and at most
/// one side carries two.
fn check_shape(k: &ContactType) -> Result<(), GeomError> {
    let mut per_side = [0u8; 4];
    for p in k.pairs() {
        per_side[p.side.index()] += 1;
    }
    if per_side.iter().any(|&c| c > 2) {
        return Err(malformed(k, "three pairs on one side"));
    }
    if per_side.iter().filter(|&&c| c == 2).count() > 1 {
        return Err(malformed(k, "two stapled sides"));
    }
    for p in k.points() {
        let m = k.sides_of(p);
        match m.count_ones() {
            1 => {}
            2 => {
                // adjacent sides differ by one index step
                let is_corner = Side::ALL.iter().any(|s| {
                    m == (1 << s.index()) | (1 << s.shift(1).index())
                });
                if !is_corner {
                    return Err(malformed(k, "point on two opposite sides"));
                }
            }
            _ => return Err(malformed(k, "point on three or more sides")),
        }
    }
    Ok(())
}

/// Type of a square with exactly four contact pairs.
pub fn classify_four_square(k: &ContactType) -> Result<FourSquareType, GeomError> {
    use FourSquareType::*;
    if k.len() != 4 {
        return Err(malformed(k, "need four pairs"));
    }
    let pts = k.points();
    if pts.len() == 1 {
        return Ok(Trivial41);
    }
    check_shape(k)?;
    let staple = k.staple();
    match (pts.len(), staple) {
        (2, None) => {
            if k.pinned_sides() == 4 {
                Ok(NonStapled42)
            } else {
                Err(malformed(k, "two corner points without a staple"))
            }
        }
        (2, Some(_)) => Ok(Stapled42),
        (3, None) => {
            if k.pinned_sides() == 4 {
                Ok(NonStapled43)
            } else {
                Err(malformed(k, "three points on fewer than four sides"))
            }
        }
        (3, Some((side, a, b))) => {
            let corner = *pts.iter().find(|&&p| k.sides_of(p).count_ones() == 2).unwrap();
            if a != corner && b != corner {
                return Ok(Stapled43a);
            }
            let single = *pts.iter().find(|&&p| p != a && p != b).unwrap();
            let single_side = k.pairs().iter().find(|p| p.point == single).unwrap().side;
            if single_side == side.opposite() {
                Ok(Stapled43b)
            } else {
                Ok(Stapled43c)
            }
        }
        (4, None) => {
            if k.pinned_sides() == 4 {
                Ok(NonStapled44)
            } else {
                Err(malformed(k, "four points on fewer than four sides"))
            }
        }
        (4, Some((side, _, _))) => {
            let others: Vec<Side> =
                k.pairs().iter().filter(|p| p.side != side).map(|p| p.side).collect();
            if others.len() != 2 || others[0] == others[1] {
                return Err(malformed(k, "bad stapled (4,4) layout"));
            }
            if others.iter().all(|s| s.is_adjacent(side)) {
                Ok(Stapled44b)
            } else {
                Ok(Stapled44a)
            }
        }
        _ => Err(malformed(k, "unclassifiable")),
    }
}

/// Type of a diagram vertex: `(3,2)`/`(3,3)` when regular, otherwise the
/// type of its 4-square.
pub fn classify_vertex(k: &ContactType) -> Result<VertexType, GeomError> {
    match k.len() {
        3 => {
            check_shape(k)?;
            if k.staple().is_some() || k.pinned_sides() != 3 {
                return Err(malformed(k, "regular vertex needs three pinned sides"));
            }
            match k.points().len() {
                2 => Ok(VertexType::Regular32),
                3 => Ok(VertexType::Regular33),
                _ => Err(malformed(k, "unclassifiable")),
            }
        }
        4 => classify_four_square(k).map(VertexType::Four),
        _ => Err(malformed(k, "vertex needs three or four pairs")),
    }
}
