//! Minimum-width and minimum-area square annuli.
//!
//! At orientation θ the outer square is a smallest enclosing square; its
//! possible centers form the segment ℓ(θ). The inner square is the largest
//! empty square centered on ℓ(θ), found per boxed class as the largest
//! square inside the class region with its center on ℓ(θ).

use crate::classes::{bounding_box_events, boxed_mes_classes, ClassKey, MesClass};
use crate::curves::{box_sides, edge_region, Bounds};
use crate::expr::{joint_cells, Expr};
use crate::AppError;
use quadrot_geom::{canonical, PointSet, Sinusoid, QUARTER};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Objective {
    Width,
    Area,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnulusResult {
    pub phi: f64,
    pub center: (f64, f64),
    pub outer: f64,
    pub inner: f64,
    pub width: f64,
    /// `(2·outer)² − (2·inner)²`.
    pub area: f64,
    /// The class whose region holds the inner square; `None` when the
    /// result came from the per-orientation fallback.
    pub class: Option<ClassKey>,
}

impl AnnulusResult {
    fn new(points: &PointSet, phi: f64, center: (f64, f64), inner: f64, class: Option<ClassKey>) -> Self {
        let outer = enclosing_radius(points, phi);
        let inner = inner.max(0.0);
        AnnulusResult {
            phi: canonical(phi),
            center,
            outer,
            inner,
            width: outer - inner,
            area: 4.0 * (outer * outer - inner * inner),
            class,
        }
    }

    pub fn value(&self, o: Objective) -> f64 {
        match o {
            Objective::Width => self.width,
            Objective::Area => self.area,
        }
    }

    /// Every point in the closed outer square and none inside the inner one.
    pub fn is_feasible(&self, points: &PointSet, eps: f64) -> bool {
        let (s, c) = self.phi.sin_cos();
        points.iter().all(|p| {
            let (dx, dy) = (p.x - self.center.0, p.y - self.center.1);
            let d = (dx * c + dy * s).abs().max((-dx * s + dy * c).abs());
            d <= self.outer + eps && d >= self.inner - eps
        })
    }
}

fn enclosing_radius(points: &PointSet, theta: f64) -> f64 {
    let f = points.frame_all(theta);
    let ext = |g: fn(&(f64, f64)) -> f64| {
        let (lo, hi) = f.iter().map(g).fold((f64::INFINITY, f64::NEG_INFINITY), |a, x| (a.0.min(x), a.1.max(x)));
        hi - lo
    };
    ext(|p| p.0).max(ext(|p| p.1)) / 2.0
}

/// Inner radius and the free center coordinate, for the case where the
/// center's `fixed` coordinate is pinned and the other ranges over
/// `[lo, hi]`. `a` bounds the region along the fixed axis, `b` along the
/// free one.
fn inner_on_segment(
    fixed: Sinusoid,
    lo: Sinusoid,
    hi: Sinusoid,
    a: (Option<Expr>, Option<Expr>),
    b: (Option<Expr>, Option<Expr>),
) -> (Expr, Expr) {
    let (lo, hi, fixed) = (Expr::Atom(lo), Expr::Atom(hi), Expr::Atom(fixed));
    let free = match (&b.0, &b.1) {
        (Some(b0), Some(b1)) => Expr::Min(vec![Expr::Max(vec![Expr::half_sum(b0.clone(), b1.clone()), lo.clone()]), hi]),
        (None, Some(_)) => lo,
        (Some(_), None) => hi,
        (None, None) => Expr::half_sum(lo, hi),
    };
    let mut terms = Vec::new();
    if let Some(a0) = a.0 {
        terms.push(Expr::sub(fixed.clone(), a0));
    }
    if let Some(a1) = a.1 {
        terms.push(Expr::sub(a1, fixed.clone()));
    }
    if let Some(b0) = b.0 {
        terms.push(Expr::sub(free.clone(), b0));
    }
    if let Some(b1) = b.1 {
        terms.push(Expr::sub(b1, free.clone()));
    }
    let rho = Expr::Max(vec![Expr::Min(terms), Expr::Atom(Sinusoid::ZERO)]);
    (rho, free)
}

/// One stretch of a boxed class where the long side of the box is fixed.
struct Piece {
    lo: f64,
    hi: f64,
    outer: Sinusoid,
    rho: Expr,
    /// Center `(u, v)` as expressions.
    center: (Expr, Expr),
}

fn class_pieces(points: &PointSet, key: &quadrot_vd::EdgeKey, start: f64, end: f64) -> Result<Vec<Piece>, AppError> {
    let mid = (start + end) / 2.0;
    let Bounds { umin, umax, vmin, vmax } = edge_region(points, key, mid)?;
    let [u0, u1, v0, v1] = box_sides(points, mid);
    let (w, h) = (u1 - u0, v1 - v0);
    let mut cuts = vec![start];
    cuts.extend((w - h).roots_in(start, end).into_iter().filter(|&t| t > start && t < end));
    cuts.push(end);
    let mut out = Vec::new();
    for c in cuts.windows(2) {
        let m = (c[0] + c[1]) / 2.0;
        let p = if w.eval(m) >= h.eval(m) {
            let r = w * 0.5;
            let cu = (u0 + u1) * 0.5;
            let (rho, cv) = inner_on_segment(cu, v1 - r, v0 + r, (umin.clone(), umax.clone()), (vmin.clone(), vmax.clone()));
            Piece { lo: c[0], hi: c[1], outer: r, rho, center: (Expr::Atom(cu), cv) }
        } else {
            let r = h * 0.5;
            let cv = (v0 + v1) * 0.5;
            let (rho, cu) = inner_on_segment(cv, u1 - r, u0 + r, (vmin.clone(), vmax.clone()), (umin.clone(), umax.clone()));
            Piece { lo: c[0], hi: c[1], outer: r, rho, center: (cu, Expr::Atom(cv)) }
        };
        out.push(p);
    }
    Ok(out)
}

/// `(θ, value)` minimizing the objective on one piece.
fn piece_min(p: &Piece, o: Objective, scale: f64) -> (f64, f64) {
    let f = |t: f64| {
        let (r, q) = (p.outer.eval(t), p.rho.eval(t));
        match o {
            Objective::Width => r - q,
            Objective::Area => 4.0 * (r * r - q * q),
        }
    };
    let mut best = (p.lo, f(p.lo));
    for (a, b) in joint_cells(&[&p.rho], p.lo, p.hi, scale) {
        let q = p.rho.active((a + b) / 2.0);
        let r = p.outer;
        let crit = match o {
            Objective::Width => (r - q).deriv().roots_in(a, b),
            Objective::Area => {
                // r² − q² = const + P·cos 2θ + Q·sin 2θ
                let pp = ((r.b * r.b - r.a * r.a) - (q.b * q.b - q.a * q.a)) / 2.0;
                let qq = r.a * r.b - q.a * q.b;
                Sinusoid::new(-2.0 * pp, 2.0 * qq).roots_in(2.0 * a, 2.0 * b).into_iter().map(|x| x / 2.0).collect()
            }
        };
        for t in crit.into_iter().chain([a, b]) {
            let v = f(t);
            if v < best.1 {
                best = (t, v);
            }
        }
    }
    best
}

fn world(u: f64, v: f64, t: f64) -> (f64, f64) {
    let (s, c) = t.sin_cos();
    (u * c - v * s, u * s + v * c)
}

/// Optimum over all boxed classes.
pub fn min_annulus(points: &PointSet, classes: &[MesClass], objective: Objective) -> Result<AnnulusResult, AppError> {
    if points.len() < 2 {
        return Err(AppError::Degenerate("an annulus needs at least two points".into()));
    }
    let scale = points.scale();
    let mut best: Option<(f64, f64, usize, Piece)> = None;
    for b in boxed_mes_classes(classes, &bounding_box_events(points)?) {
        let ClassKey::Edge(key) = &classes[b.base].key else { continue };
        for p in class_pieces(points, key, b.start, b.end)? {
            let (t, v) = piece_min(&p, objective, scale);
            if best.as_ref().map_or(true, |x| v < x.1) {
                best = Some((t, v, b.base, p));
            }
        }
    }
    let (t, _, base, p) = best.ok_or_else(|| AppError::Degenerate("no edge classes".into()))?;
    let center = world(p.center.0.eval(t), p.center.1.eval(t), t);
    Ok(AnnulusResult::new(points, t, center, p.rho.eval(t), Some(classes[base].key.clone())))
}

/// The best annulus at one orientation by direct search along ℓ(θ).
pub fn annulus_at(points: &PointSet, theta: f64) -> AnnulusResult {
    let f = points.frame_all(theta);
    let (mut u0, mut u1, mut v0, mut v1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(u, v) in &f {
        (u0, u1, v0, v1) = (u0.min(u), u1.max(u), v0.min(v), v1.max(v));
    }
    let r = (u1 - u0).max(v1 - v0) / 2.0;
    let wide = u1 - u0 >= v1 - v0;
    // (fixed coordinate, free range) of the center
    let (fixed, lo, hi) = if wide { ((u0 + u1) / 2.0, v1 - r, v0 + r) } else { ((v0 + v1) / 2.0, u1 - r, u0 + r) };
    let (lo, hi) = (lo.min(hi), hi.max(lo));
    let split = |&(u, v): &(f64, f64)| if wide { (u, v) } else { (v, u) };
    let g: Vec<(f64, f64)> = f.iter().map(split).map(|(a, b)| ((a - fixed).abs(), b)).collect();
    let dist = |c: f64| g.iter().map(|&(a, b)| a.max((b - c).abs())).fold(f64::INFINITY, f64::min);
    // the nearest-point distance along the segment is piecewise linear with
    // breaks where a point's two regimes or two points' slopes meet
    let mut cand = vec![lo, hi];
    for &(a, b) in &g {
        cand.extend([b - a, b + a]);
    }
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            cand.push((g[i].1 + g[j].1) / 2.0);
            cand.extend([g[i].1 + g[j].0, g[i].1 - g[j].0, g[j].1 + g[i].0, g[j].1 - g[i].0]);
        }
    }
    let (c, rho) = cand
        .into_iter()
        .map(|c| c.clamp(lo, hi))
        .map(|c| (c, dist(c)))
        .fold((lo, f64::NEG_INFINITY), |a, x| if x.1 > a.1 { x } else { a });
    let (cu, cv) = if wide { (fixed, c) } else { (c, fixed) };
    AnnulusResult::new(points, theta, world(cu, cv, theta), rho, None)
}

/// Best annulus among the bounding-box event orientations, by direct
/// evaluation. Used when no trace exists for the input.
pub fn min_annulus_at_box_events(points: &PointSet, objective: Objective) -> Result<AnnulusResult, AppError> {
    let mut ev = bounding_box_events(points)?;
    ev.push(0.0);
    ev.into_iter()
        .map(|t| annulus_at(points, t.min(QUARTER)))
        .min_by(|a, b| a.value(objective).total_cmp(&b.value(objective)))
        .ok_or_else(|| AppError::Degenerate("no orientations".into()))
}
