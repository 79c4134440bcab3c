//! Point-set generators.

use crate::TestkitError;
use quadrot_geom::{validate_general_position, Point, PointSet, Tolerance, Violation};
use std::collections::BTreeSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Points on the unit circle where the lines `y = (1 + iδ)x`, `δ = 2ε/n`,
/// cross it, for `i = 1..n/2`. Point-symmetric, so parallel pairs align
/// together; [`perturb`] it before running anything that needs general
/// position.
pub fn gen_quadratic_family(n: usize, eps: f64) -> Result<PointSet, TestkitError> {
    if n < 4 || n % 2 != 0 {
        return Err(TestkitError::InvalidParameter(format!("n must be even and at least 4, got {n}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(TestkitError::InvalidParameter(format!("eps must lie in (0, 1), got {eps}")));
    }
    let delta = 2.0 * eps / n as f64;
    let mut xy = Vec::with_capacity(n);
    for i in 1..=n / 2 {
        let m = 1.0 + i as f64 * delta;
        let x = 1.0 / (1.0 + m * m).sqrt();
        xy.push((x, m * x));
        xy.push((-x, -m * x));
    }
    Ok(PointSet::from_xy(&xy)?)
}

/// `n` points at `x = iL` alternating between a flat arc above the x-axis
/// (odd `i`) and its mirror image (even `i`). The arc spans the chord from
/// 0 to `(n+1)L` with sagitta `ε/2`, so every point has `|y| ≤ ε/2`.
pub fn gen_linear_family(n: usize, eps: f64, big_l: f64) -> Result<PointSet, TestkitError> {
    if n == 0 {
        return Err(TestkitError::InvalidParameter("n must be positive".into()));
    }
    if !(eps > 0.0 && eps < 1.0) || !(big_l > 1.0) || !big_l.is_finite() {
        return Err(TestkitError::InvalidParameter(format!("need 0 < eps < 1 < L, got eps={eps}, L={big_l}")));
    }
    let c = (n + 1) as f64 * big_l;
    let h = eps / 2.0;
    let r = c * c / (8.0 * h) + h / 2.0;
    let xy: Vec<(f64, f64)> = (1..=n)
        .map(|i| {
            let x = i as f64 * big_l;
            let d = x - c / 2.0;
            // height of the arc above the chord, in a cancellation-free form
            let y = h - d * d / (r + (r * r - d * d).sqrt());
            (x, if i % 2 == 1 { y } else { -y })
        })
        .collect();
    Ok(PointSet::from_xy(&xy)?)
}

/// Uniform points in the unit box, each moved by up to `jitter` in both
/// coordinates. Points named by a validator violation are redrawn until the
/// validator accepts.
pub fn gen_random_general(n: usize, seed: u64, jitter: f64) -> Result<PointSet, TestkitError> {
    const ATTEMPTS: usize = 16;
    if n == 0 {
        return Err(TestkitError::InvalidParameter("n must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let draw = |rng: &mut ChaCha8Rng| {
        let (x, y): (f64, f64) = (rng.gen(), rng.gen());
        (x + jitter * rng.gen_range(-1.0..=1.0), y + jitter * rng.gen_range(-1.0..=1.0))
    };
    let mut xy: Vec<(f64, f64)> = (0..n).map(|_| draw(&mut rng)).collect();
    for _ in 0..ATTEMPTS {
        let bad: BTreeSet<usize> = match PointSet::from_xy(&xy) {
            Ok(ps) => validate_general_position(&ps, &Tolerance::for_points(&ps))
                .iter()
                .flat_map(violation_points)
                .collect(),
            // duplicates: redraw everything
            Err(_) => (0..n).collect(),
        };
        if bad.is_empty() {
            return Ok(PointSet::from_xy(&xy)?);
        }
        for i in bad {
            xy[i] = draw(&mut rng);
        }
    }
    Err(TestkitError::RetriesExhausted(ATTEMPTS))
}

fn violation_points(v: &Violation) -> Vec<usize> {
    match v {
        Violation::CollinearTriple(t) => t.iter().map(|&i| i as usize).collect(),
        Violation::EqualOrthogonalDiagonals(q) => q.iter().map(|&i| i as usize).collect(),
        Violation::SimultaneousAlignment { first, second, .. } => first.iter().chain(second).map(|&i| i as usize).collect(),
    }
}

/// Move every point by up to `rel · scale` in each coordinate. Ids are kept.
pub fn perturb(points: &PointSet, rel: f64, seed: u64) -> Result<PointSet, TestkitError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = rel * points.scale();
    let pts = points
        .iter()
        .map(|p| Point::new(p.id, p.x + s * rng.gen_range(-1.0..=1.0), p.y + s * rng.gen_range(-1.0..=1.0)))
        .collect();
    Ok(PointSet::new(pts)?)
}

/// The `k × k` integer grid, a maximally degenerate input.
pub fn lattice(k: usize) -> Result<PointSet, TestkitError> {
    let xy: Vec<(f64, f64)> = (0..k * k).map(|i| ((i % k) as f64, (i / k) as f64)).collect();
    Ok(PointSet::from_xy(&xy)?)
}
