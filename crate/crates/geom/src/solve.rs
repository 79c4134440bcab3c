//! Closed-form square solvers driven by contact constraints.

use crate::{
    canonical, ContactPair, ContactType, FrameSquare, GeomError, Orientation, Point, PointSet,
    Side, Sinusoid, Square, QUARTER,
};
use arrayvec::ArrayVec;

/// Center and radius of a square pinned by contact pairs, as functions of θ.
///
/// Three pinned sides always include an opposite pair, which fixes the radius
/// and one center coordinate; the third side fixes the other coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SquareFamily {
    pub cu: Sinusoid,
    pub cv: Sinusoid,
    pub r: Sinusoid,
}

impl SquareFamily {
    /// Family of a contact type with at least three pinned sides.
    ///
    /// When a side holds two pairs, or all four sides are pinned, some pairs
    /// are not needed to pin the square; they are returned as the second
    /// component. Each such pair gives a consistency condition
    /// (its [`SquareFamily::slack`] must vanish).
    pub fn build(
        points: &PointSet,
        kappa: &ContactType,
    ) -> Result<(SquareFamily, ArrayVec<ContactPair, 4>), GeomError> {
        let mut rep: [Option<ContactPair>; 4] = [None; 4];
        for p in kappa.pairs() {
            rep[p.side.index()].get_or_insert(*p);
        }
        let line = |s: Side| -> Option<Sinusoid> {
            rep[s.index()].map(|p| {
                if s.is_horizontal() {
                    points.v_of(p.point)
                } else {
                    points.u_of(p.point)
                }
            })
        };
        let (t, r_, b, l) = (line(Side::Top), line(Side::Right), line(Side::Bottom), line(Side::Left));
        let fam = match (t, r_, b, l) {
            (Some(t), _, Some(b), Some(l)) => {
                let r = (t - b) * 0.5;
                SquareFamily { r, cv: (t + b) * 0.5, cu: l + r }
            }
            (Some(t), Some(rr), Some(b), None) => {
                let r = (t - b) * 0.5;
                SquareFamily { r, cv: (t + b) * 0.5, cu: rr - r }
            }
            (t, Some(rr), b, Some(l)) if t.is_some() || b.is_some() => {
                let r = (rr - l) * 0.5;
                let cv = match (t, b) {
                    (_, Some(b)) => b + r,
                    (Some(t), None) => t - r,
                    _ => unreachable!(),
                };
                SquareFamily { r, cu: (rr + l) * 0.5, cv }
            }
            _ => {
                return Err(GeomError::MalformedContactType(
                    kappa.to_string(),
                    "fewer than three pinned sides",
                ))
            }
        };
        // With T, B, L all pinned the right side was not used.
        let used: [bool; 4] = match (t, r_, b, l) {
            (Some(_), _, Some(_), Some(_)) => [true, false, true, true],
            _ => [true; 4],
        };
        let free = kappa
            .pairs()
            .iter()
            .filter(|p| !(used[p.side.index()] && rep[p.side.index()] == Some(**p)))
            .copied()
            .collect();
        Ok((fam, free))
    }

    pub fn at(&self, theta: f64) -> FrameSquare {
        let (s, c) = theta.sin_cos();
        let ev = |f: Sinusoid| f.a * s + f.b * c;
        FrameSquare { cu: ev(self.cu), cv: ev(self.cv), r: ev(self.r) }
    }

    /// Signed slack of point `i` against `side`, positive towards the inside.
    pub fn slack(&self, points: &PointSet, i: u32, side: Side) -> Sinusoid {
        match side {
            Side::Top => self.cv + self.r - points.v_of(i),
            Side::Right => self.cu + self.r - points.u_of(i),
            Side::Bottom => points.v_of(i) - self.cv + self.r,
            Side::Left => points.u_of(i) - self.cu + self.r,
        }
    }

    /// The single consistency condition of a four-pair contact type: the
    /// square pinned by three sides also satisfies the fourth pair exactly at
    /// the roots of this sinusoid.
    pub fn consistency(points: &PointSet, kappa: &ContactType) -> Result<Sinusoid, GeomError> {
        let (fam, free) = Self::build(points, kappa)?;
        match free.as_slice() {
            [p] => Ok(fam.slack(points, p.point, p.side)),
            _ => Err(GeomError::MalformedContactType(
                kappa.to_string(),
                "expected exactly one redundant pair",
            )),
        }
    }
}

/// `S_κ(θ)` for a contact type with three pairs on three distinct sides.
///
/// Returns `Ok(None)` when the constraints are infeasible at θ: negative
/// radius, or a contact point outside the closed side it is assigned to.
pub fn solve_square_from_three(
    points: &PointSet,
    kappa: &ContactType,
    theta: f64,
    eps: f64,
) -> Result<Option<Square>, GeomError> {
    if kappa.len() != 3 || kappa.pinned_sides() != 3 {
        return Err(GeomError::MalformedContactType(
            kappa.to_string(),
            "need three pairs on three sides",
        ));
    }
    let (fam, _) = SquareFamily::build(points, kappa)?;
    let fs = fam.at(theta);
    if fs.r <= eps {
        return Ok(None);
    }
    for p in kappa.pairs() {
        let (u, v) = points.frame(p.point, theta);
        if fs.slacks(u, v).iter().any(|&s| s < -eps) {
            return Ok(None);
        }
    }
    Ok(Some(fs.to_square(theta)))
}

/// The orientation φ ∈ [0, π/2) at which `pq` is parallel to a frame axis.
pub fn alignment_orientation(p: &Point, q: &Point) -> Result<Orientation, GeomError> {
    let (dx, dy) = (q.x - p.x, q.y - p.y);
    if dx == 0.0 && dy == 0.0 {
        return Err(GeomError::CoincidentPoints(p.id, q.id));
    }
    Ok(Orientation::new(dy.atan2(dx)))
}

/// Outcome of [`solve_equal_extent`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EqualExtent {
    At(f64),
    Undefined,
    /// The two sides agree for every θ.
    Degenerate,
}

/// Solve `|ac|·|sin(θ+α)| = |bd|·|sin(θ+β+π/2)|` for θ in `[start, π/2)`,
/// α and β being the directions of `ac` and `bd`.
///
/// Both sides are absolute values of sinusoids, so the equation splits into
/// two sinusoid root problems solved in closed form.
pub fn solve_equal_extent(
    a: &Point,
    c: &Point,
    b: &Point,
    d: &Point,
    start: f64,
) -> Result<EqualExtent, GeomError> {
    let (f1, f2) = equal_extent_sides(a, c, b, d)?;
    let scale = f1.amplitude() + f2.amplitude();
    let minus = f1 - f2;
    let plus = f1 + f2;
    if minus.amplitude() <= 1e-12 * scale || plus.amplitude() <= 1e-12 * scale {
        return Ok(EqualExtent::Degenerate);
    }
    let start = canonical(start);
    let best = minus
        .roots_in(start, QUARTER)
        .into_iter()
        .chain(plus.roots_in(start, QUARTER))
        .fold(None, |m: Option<f64>, r| Some(m.map_or(r, |m| m.min(r))));
    Ok(best.map_or(EqualExtent::Undefined, EqualExtent::At))
}

/// The two sinusoids under the absolute values of [`solve_equal_extent`].
pub fn equal_extent_sides(
    a: &Point,
    c: &Point,
    b: &Point,
    d: &Point,
) -> Result<(Sinusoid, Sinusoid), GeomError> {
    let (ax, ay) = (c.x - a.x, c.y - a.y);
    let (bx, by) = (d.x - b.x, d.y - b.y);
    if ax == 0.0 && ay == 0.0 {
        return Err(GeomError::CoincidentPoints(a.id, c.id));
    }
    if bx == 0.0 && by == 0.0 {
        return Err(GeomError::CoincidentPoints(b.id, d.id));
    }
    // |ac|·sin(θ+α) = ax·sinθ + ay·cosθ and |bd|·cos(θ+β) = bx·cosθ − by·sinθ.
    Ok((Sinusoid::new(ax, ay), Sinusoid::new(-by, bx)))
}
