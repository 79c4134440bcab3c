//! Per-class functions of the orientation, as sinusoid expressions.

use crate::classes::{box_contacts, BoxedMesClass, ClassKey, MesClass};
use crate::expr::Expr;
use crate::AppError;
use quadrot_geom::{ContactType, PointSet, Side, Sinusoid, SquareFamily};
use quadrot_vd::{EdgeKey, Family};

/// `S_κ(θ)` as sinusoids; a single point gives the zero-radius square on it.
pub fn vertex_family(points: &PointSet, k: &ContactType) -> Result<SquareFamily, AppError> {
    let pts = k.points();
    if pts.len() == 1 {
        return Ok(SquareFamily { cu: points.u_of(pts[0]), cv: points.v_of(pts[0]), r: Sinusoid::ZERO });
    }
    Ok(SquareFamily::build(points, k)?.0)
}

fn side_line(f: &SquareFamily, s: Side) -> Sinusoid {
    match s {
        Side::Top => f.cv + f.r,
        Side::Right => f.cu + f.r,
        Side::Bottom => f.cv - f.r,
        Side::Left => f.cu - f.r,
    }
}

/// Bounds of a region in the rotating frame; `None` is unbounded.
#[derive(Clone, Debug)]
pub struct Bounds {
    pub umin: Option<Expr>,
    pub umax: Option<Expr>,
    pub vmin: Option<Expr>,
    pub vmax: Option<Expr>,
}

/// The union of the squares along edge `key`, valid while the edge exists.
/// `probe` is any orientation inside its lifetime.
pub fn edge_region(points: &PointSet, key: &EdgeKey, probe: f64) -> Result<Bounds, AppError> {
    let (u, v, ke) = key;
    let fam = Family::of(ke).ok_or_else(|| AppError::Trace(format!("edge type {ke} pins {} sides", ke.pinned_sides())))?;
    let fv = vertex_family(points, v)?;
    let line = |f: &SquareFamily, s| Some(Expr::Atom(side_line(f, s)));
    if u.is_empty() {
        let Family::Corner { horizontal, vertical } = fam else {
            return Err(AppError::Trace(format!("unbounded edge {ke} does not grow")));
        };
        let (hl, vl) = (line(&fv, horizontal), line(&fv, vertical));
        let (umin, umax) = if vertical == Side::Left { (vl, None) } else { (None, vl) };
        let (vmin, vmax) = if horizontal == Side::Bottom { (hl, None) } else { (None, hl) };
        return Ok(Bounds { umin, umax, vmin, vmax });
    }
    let fu = vertex_family(points, u)?;
    Ok(match fam {
        Family::SlideU | Family::SlideV => {
            let both = |s: Side, max: bool| {
                let pair = vec![Expr::Atom(side_line(&fu, s)), Expr::Atom(side_line(&fv, s))];
                Some(if max { Expr::Max(pair) } else { Expr::Min(pair) })
            };
            Bounds {
                umin: both(Side::Left, false),
                umax: both(Side::Right, true),
                vmin: both(Side::Bottom, false),
                vmax: both(Side::Top, true),
            }
        }
        Family::Corner { .. } => {
            let big = if fu.r.eval(probe) >= fv.r.eval(probe) { fu } else { fv };
            Bounds {
                umin: line(&big, Side::Left),
                umax: line(&big, Side::Right),
                vmin: line(&big, Side::Bottom),
                vmax: line(&big, Side::Top),
            }
        }
    })
}

/// Box sides `[umin, umax, vmin, vmax]` over an interval with fixed contacts.
pub fn box_sides(points: &PointSet, probe: f64) -> [Sinusoid; 4] {
    let c = box_contacts(points, probe);
    [points.u_of(c[0]), points.u_of(c[1]), points.v_of(c[2]), points.v_of(c[3])]
}

fn clip(region: Option<Expr>, b: Sinusoid, max: bool) -> Expr {
    match region {
        None => Expr::Atom(b),
        Some(e) if max => Expr::Max(vec![e, Expr::Atom(b)]),
        Some(e) => Expr::Min(vec![e, Expr::Atom(b)]),
    }
}

/// The region of a boxed class intersected with the box, as clipped bounds.
pub struct BoxedRegion {
    pub umin: Expr,
    pub umax: Expr,
    pub vmin: Expr,
    pub vmax: Expr,
}

pub fn boxed_region(points: &PointSet, classes: &[MesClass], b: &BoxedMesClass) -> Result<BoxedRegion, AppError> {
    let ClassKey::Edge(key) = &classes[b.base].key else {
        return Err(AppError::Trace("boxed class over a vertex".into()));
    };
    let mid = (b.start + b.end) / 2.0;
    let r = edge_region(points, key, mid)?;
    let bx = box_sides(points, mid);
    Ok(BoxedRegion {
        umin: clip(r.umin, bx[0], true),
        umax: clip(r.umax, bx[1], false),
        vmin: clip(r.vmin, bx[2], true),
        vmax: clip(r.vmax, bx[3], false),
    })
}

/// Radius of the largest square inside a boxed region.
pub fn in_box_radius(r: &BoxedRegion) -> Expr {
    Expr::scale(
        0.5,
        Expr::Min(vec![Expr::sub(r.umax.clone(), r.umin.clone()), Expr::sub(r.vmax.clone(), r.vmin.clone())]),
    )
}
