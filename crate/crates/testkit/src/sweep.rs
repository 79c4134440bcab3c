//! Dense orientation sweeps: exact answers at each grid orientation, then
//! the best over the grid.

use crate::TestkitError;
use quadrot_geom::{PointSet, Tolerance, QUARTER};
use quadrot_vd::{build_diagram_reference, edge_union_region, Region, VoronoiGraph};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SquareVariant {
    /// Empty squares with at least three sides pinned by points.
    Pinned,
    /// Empty squares inside the bounding box of the same orientation.
    InBox,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AnnulusObjective {
    Width,
    Area,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepAnswer {
    pub theta: f64,
    pub value: f64,
}

/// Diagram at `theta`, nudged off the orientation if it happens to be
/// degenerate.
fn diagram_near(points: &PointSet, theta: f64, tol: &Tolerance) -> Result<VoronoiGraph, TestkitError> {
    let mut last = None;
    for k in 0..4 {
        match build_diagram_reference(points, theta + k as f64 * 1e-9, tol) {
            Ok(g) => return Ok(g),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap().into())
}

fn bounding_box(frame: &[(f64, f64)]) -> (f64, f64, f64, f64) {
    frame.iter().fold((f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY), |b, &(u, v)| {
        (b.0.min(u), b.1.max(u), b.2.min(v), b.3.max(v))
    })
}

/// The largest radius of the given variant at one orientation.
pub fn largest_square_at(points: &PointSet, theta: f64, variant: SquareVariant) -> Result<f64, TestkitError> {
    let tol = Tolerance::for_points(points);
    let g = diagram_near(points, theta, &tol)?;
    match variant {
        SquareVariant::Pinned => Ok(g.finite_vertices().map(|v| v.radius).fold(0.0, f64::max)),
        SquareVariant::InBox => {
            let (bu0, bu1, bv0, bv1) = bounding_box(&points.frame_all(g.orientation));
            let mut best: f64 = 0.0;
            for e in g.edges.values() {
                let (u0, u1, v0, v1) = match edge_union_region(points, &g, e)? {
                    Region::Rectangle { umin, umax, vmin, vmax } => (umin, umax, vmin, vmax),
                    Region::Square(s) => (s.cu - s.r, s.cu + s.r, s.cv - s.r, s.cv + s.r),
                    Region::Quadrant { apex, right, up } => {
                        let inf = f64::INFINITY;
                        let (a, b) = if right { (apex.0, inf) } else { (-inf, apex.0) };
                        let (c, d) = if up { (apex.1, inf) } else { (-inf, apex.1) };
                        (a, b, c, d)
                    }
                };
                let w = u1.min(bu1) - u0.max(bu0);
                let h = v1.min(bv1) - v0.max(bv0);
                best = best.max(w.min(h) / 2.0);
            }
            Ok(best)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnulusSample {
    pub theta: f64,
    /// Radius of the smallest enclosing square.
    pub outer: f64,
    /// Radius of the largest empty concentric square.
    pub inner: f64,
    /// World center shared by both squares.
    pub center: (f64, f64),
}

impl AnnulusSample {
    pub fn width(&self) -> f64 {
        self.outer - self.inner
    }

    pub fn area(&self) -> f64 {
        4.0 * (self.outer * self.outer - self.inner * self.inner)
    }

    pub fn objective(&self, o: AnnulusObjective) -> f64 {
        match o {
            AnnulusObjective::Width => self.width(),
            AnnulusObjective::Area => self.area(),
        }
    }
}

/// Best square annulus at one orientation. The enclosing square's centers
/// form a segment; along it, `c ↦ min_p d∞(c, p)` is maximized exactly by
/// checking every breakpoint of the lower envelope.
pub fn annulus_at(points: &PointSet, theta: f64) -> AnnulusSample {
    let frame = points.frame_all(theta);
    let (u0, u1, v0, v1) = bounding_box(&frame);
    let (w, h) = (u1 - u0, v1 - v0);
    let outer = w.max(h) / 2.0;
    // put the free direction of the center segment on the second coordinate
    let swap = h > w;
    let pts: Vec<(f64, f64)> = frame.iter().map(|&(u, v)| if swap { (v, u) } else { (u, v) }).collect();
    let (a0, a1, b0, b1) = if swap { (v0, v1, u0, u1) } else { (u0, u1, v0, v1) };
    let fixed = (a0 + a1) / 2.0;
    let (lo, hi) = (b1 - outer, b0 + outer);
    // a single point when both extents are equal, up to rounding
    let (lo, hi) = if lo > hi { ((lo + hi) / 2.0, (lo + hi) / 2.0) } else { (lo, hi) };
    let a: Vec<f64> = pts.iter().map(|p| (p.0 - fixed).abs()).collect();
    let f = |c: f64| pts.iter().zip(&a).map(|(p, &ap)| ap.max((p.1 - c).abs())).fold(f64::INFINITY, f64::min);
    let mut cands = vec![lo, hi];
    for (i, p) in pts.iter().enumerate() {
        for (j, q) in pts.iter().enumerate() {
            if j > i {
                cands.push((p.1 + q.1) / 2.0);
            }
            cands.push(p.1 + a[j]);
            cands.push(p.1 - a[j]);
        }
    }
    let (mut best_c, mut inner) = (lo, f(lo));
    for c in cands {
        let c = c.clamp(lo, hi);
        let val = f(c);
        if val > inner {
            (best_c, inner) = (c, val);
        }
    }
    let (cu, cv) = if swap { (best_c, fixed) } else { (fixed, best_c) };
    let (s, co) = theta.sin_cos();
    AnnulusSample { theta, outer, inner, center: (cu * co - cv * s, cu * s + cv * co) }
}

fn grid(step: f64) -> Vec<f64> {
    let m = (QUARTER / step).ceil() as usize;
    (0..m).map(|i| i as f64 * step).filter(|&t| t < QUARTER).collect()
}

/// Evaluate `f` over `thetas` on all cores.
fn par_map<T: Send, F: Fn(f64) -> T + Sync>(thetas: &[f64], f: F) -> Vec<T> {
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(16);
    let chunk = thetas.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        let hs: Vec<_> = thetas.chunks(chunk).map(|c| s.spawn(|| c.iter().map(|&t| f(t)).collect::<Vec<T>>())).collect();
        hs.into_iter().flat_map(|h| h.join().expect("sweep worker panicked")).collect()
    })
}

/// Indices of the `k` best grid values that are local optima (cyclically).
fn best_local(vals: &[f64], k: usize) -> Vec<usize> {
    let m = vals.len();
    let mut idx: Vec<usize> =
        (0..m).filter(|&i| vals[i] >= vals[(i + m - 1) % m] && vals[i] >= vals[(i + 1) % m]).collect();
    idx.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]));
    idx.truncate(k);
    idx
}

/// Golden-section maximization of `f` on `[a, b]`.
fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut x1, mut x2) = (b - g * (b - a), a + g * (b - a));
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > 1e-13 {
        if f1 < f2 {
            a = x1;
            (x1, f1) = (x2, f2);
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            (x2, f2) = (x1, f1);
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximum over the grid `0, step, 2·step, …` of the exact per-orientation
/// answer. A lower bound on the true optimum.
pub fn dense_sweep_largest_square(points: &PointSet, step: f64, variant: SquareVariant) -> Result<SweepAnswer, TestkitError> {
    if !(step > 0.0) {
        return Err(TestkitError::InvalidParameter(format!("grid step must be positive, got {step}")));
    }
    let ts = grid(step);
    let vals = par_map(&ts, |t| largest_square_at(points, t, variant)).into_iter().collect::<Result<Vec<_>, _>>()?;
    let i = (0..vals.len()).max_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap();
    Ok(SweepAnswer { theta: ts[i], value: vals[i] })
}

/// The grid sweep followed by golden-section polishing around the best
/// few grid maxima. The per-orientation answer is continuous and piecewise
/// sinusoidal, so this closes the gap a finite grid leaves at kinks.
pub fn refined_sweep_largest_square(points: &PointSet, step: f64, variant: SquareVariant) -> Result<SweepAnswer, TestkitError> {
    if !(step > 0.0) {
        return Err(TestkitError::InvalidParameter(format!("grid step must be positive, got {step}")));
    }
    let ts = grid(step);
    let vals = par_map(&ts, |t| largest_square_at(points, t, variant)).into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut best = SweepAnswer { theta: 0.0, value: f64::NEG_INFINITY };
    for i in best_local(&vals, 6) {
        if vals[i] > best.value {
            best = SweepAnswer { theta: ts[i], value: vals[i] };
        }
        let mut err = None;
        let (t, v) = golden_max(
            |t| match largest_square_at(points, t, variant) {
                Ok(v) => v,
                Err(e) => {
                    err = Some(e);
                    f64::NEG_INFINITY
                }
            },
            ts[i] - step,
            ts[i] + step,
        );
        if let Some(e) = err {
            return Err(e);
        }
        if v > best.value {
            best = SweepAnswer { theta: quadrot_geom::canonical(t), value: v };
        }
    }
    Ok(best)
}

/// Minimum of the objective over the grid.
pub fn dense_sweep_annulus(points: &PointSet, step: f64, objective: AnnulusObjective) -> Result<AnnulusSample, TestkitError> {
    if !(step > 0.0) {
        return Err(TestkitError::InvalidParameter(format!("grid step must be positive, got {step}")));
    }
    let samples = par_map(&grid(step), |t| annulus_at(points, t));
    Ok(samples.into_iter().min_by(|a, b| a.objective(objective).total_cmp(&b.objective(objective))).unwrap())
}

/// Grid minimum polished by golden-section search around the best few
/// grid minima.
pub fn refined_sweep_annulus(points: &PointSet, step: f64, objective: AnnulusObjective) -> Result<AnnulusSample, TestkitError> {
    if !(step > 0.0) {
        return Err(TestkitError::InvalidParameter(format!("grid step must be positive, got {step}")));
    }
    let ts = grid(step);
    let samples = par_map(&ts, |t| annulus_at(points, t));
    let neg: Vec<f64> = samples.iter().map(|s| -s.objective(objective)).collect();
    let mut best = *samples.iter().min_by(|a, b| a.objective(objective).total_cmp(&b.objective(objective))).unwrap();
    for i in best_local(&neg, 6) {
        let (t, _) = golden_max(|t| -annulus_at(points, t).objective(objective), ts[i] - step, ts[i] + step);
        let s = annulus_at(points, quadrot_geom::canonical(t));
        if s.objective(objective) < best.objective(objective) {
            best = s;
        }
    }
    Ok(best)
}
