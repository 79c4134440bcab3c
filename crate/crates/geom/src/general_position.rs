//! Best-effort detection of inputs that break general position.

use crate::{canonical, cyclic_gap, FrameSquare, PointSet, Tolerance};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// A configuration the algorithms cannot handle. Indices refer to the point set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Violation {
    CollinearTriple([u32; 3]),
    /// Diagonals `ac` and `bd` orthogonal and of equal length: the square
    /// with those corners exists for every orientation.
    EqualOrthogonalDiagonals([u32; 4]),
    /// Two disjoint pairs that both carry an empty stapled square and align
    /// at the same orientation (parallel or orthogonal segments).
    SimultaneousAlignment { first: [u32; 2], second: [u32; 2], orientation: f64 },
}

/// Pairwise checks above this size are skipped.
const QUADRATIC_LIMIT: usize = 400;

/// Report collinear triples, equal orthogonal diagonals and simultaneous
/// alignments of empty-square witnesses. An empty report means no violation
/// was found, not that none exists.
pub fn validate_general_position(points: &PointSet, tol: &Tolerance) -> Vec<Violation> {
    let mut out = collinear_triples(points, tol);
    if points.len() <= QUADRATIC_LIMIT {
        out.extend(orthogonal_diagonals(points, tol));
        out.extend(simultaneous_alignments(points, tol));
    }
    out
}

fn collinear_triples(points: &PointSet, tol: &Tolerance) -> Vec<Violation> {
    let n = points.len();
    let mut out = Vec::new();
    let pts = points.points();
    for i in 0..n {
        let mut dirs: Vec<(f64, usize)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| {
                let a = (pts[j].y - pts[i].y).atan2(pts[j].x - pts[i].x);
                (a.rem_euclid(std::f64::consts::PI), j)
            })
            .collect();
        dirs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let m = dirs.len();
        for k in 0..m {
            let (j1, j2) = (dirs[k].1, dirs[(k + 1) % m].1);
            if j1 == j2 || (i > j1 || i > j2) {
                continue;
            }
            let (ax, ay) = (pts[j1].x - pts[i].x, pts[j1].y - pts[i].y);
            let (bx, by) = (pts[j2].x - pts[i].x, pts[j2].y - pts[i].y);
            let cross = (ax * by - ay * bx).abs();
            if cross <= tol.len * ax.hypot(ay).max(bx.hypot(by)) {
                let mut t = [i as u32, j1 as u32, j2 as u32];
                t.sort();
                out.push(Violation::CollinearTriple(t));
            }
        }
    }
    out.sort_by_key(|v| match v {
        Violation::CollinearTriple(t) => *t,
        _ => [0; 3],
    });
    out.dedup();
    out
}

fn orthogonal_diagonals(points: &PointSet, tol: &Tolerance) -> Vec<Violation> {
    let pts = points.points();
    let n = pts.len();
    let cell = tol.len.max(f64::MIN_POSITIVE) * 4.0;
    let key = |x: f64, y: f64| ((x / cell).round() as i64, (y / cell).round() as i64);
    let mut by_vec: HashMap<(i64, i64), Vec<(u32, u32)>> = HashMap::new();
    for a in 0..n {
        for c in 0..n {
            if a != c {
                let k = key(pts[c].x - pts[a].x, pts[c].y - pts[a].y);
                by_vec.entry(k).or_default().push((a as u32, c as u32));
            }
        }
    }
    let mut out = Vec::new();
    for a in 0..n {
        for c in (a + 1)..n {
            let (dx, dy) = (pts[c].x - pts[a].x, pts[c].y - pts[a].y);
            // d - b equal to ac turned by a quarter turn
            let (kx, ky) = key(-dy, dx);
            for ox in -1..=1 {
                for oy in -1..=1 {
                    let Some(list) = by_vec.get(&(kx + ox, ky + oy)) else { continue };
                    for &(b, d) in list {
                        let (b, d) = (b as usize, d as usize);
                        if [b, d].iter().all(|&x| x != a && x != c) {
                            let ex = pts[d].x - pts[b].x + dy;
                            let ey = pts[d].y - pts[b].y - dx;
                            if ex.hypot(ey) <= tol.len * 2.0 {
                                let (b, d) = (b.min(d), b.max(d));
                                out.push(Violation::EqualOrthogonalDiagonals([
                                    a as u32, c as u32, b as u32, d as u32,
                                ]));
                            }
                        }
                    }
                }
            }
        }
    }
    // each quadruple shows up once per diagonal
    for v in out.iter_mut() {
        if let Violation::EqualOrthogonalDiagonals(q) = v {
            if (q[2], q[3]) < (q[0], q[1]) {
                *q = [q[2], q[3], q[0], q[1]];
            }
        }
    }
    out.sort_by_key(|v| match v {
        Violation::EqualOrthogonalDiagonals(q) => *q,
        _ => [0; 4],
    });
    out.dedup();
    out
}

fn simultaneous_alignments(points: &PointSet, tol: &Tolerance) -> Vec<Violation> {
    let pts = points.points();
    let n = pts.len();
    let mut al: Vec<(f64, u32, u32)> = Vec::with_capacity(n * n / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let phi = canonical((pts[j].y - pts[i].y).atan2(pts[j].x - pts[i].x));
            al.push((phi, i as u32, j as u32));
        }
    }
    al.sort_by(|a, b| a.0.total_cmp(&b.0));
    let close = 10.0 * tol.angle;
    let mut out = Vec::new();
    let m = al.len();
    for k in 0..m {
        let mut l = k + 1;
        loop {
            let idx = l % m;
            if idx == k || l >= k + m {
                break;
            }
            let gap = cyclic_gap(al[k].0, al[idx].0);
            if gap > close {
                break;
            }
            let (a, b) = ((al[k].1, al[k].2), (al[idx].1, al[idx].2));
            let disjoint = a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1;
            if disjoint
                && has_empty_staple(points, a.0, a.1, al[k].0, tol)
                && has_empty_staple(points, b.0, b.1, al[k].0, tol)
            {
                out.push(Violation::SimultaneousAlignment {
                    first: [a.0, a.1],
                    second: [b.0, b.1],
                    orientation: al[k].0,
                });
            }
            l += 1;
        }
    }
    out
}

/// Whether one of the two squares having segment `pq` as a side is empty at φ.
fn has_empty_staple(points: &PointSet, p: u32, q: u32, phi: f64, tol: &Tolerance) -> bool {
    let f = points.frame_all(phi);
    let (pu, pv) = f[p as usize];
    let (qu, qv) = f[q as usize];
    let (du, dv) = (qu - pu, qv - pv);
    let r = du.abs().max(dv.abs()) * 0.5;
    let (mu, mv) = ((pu + qu) * 0.5, (pv + qv) * 0.5);
    let centers = if du.abs() >= dv.abs() {
        [(mu, mv + r), (mu, mv - r)]
    } else {
        [(mu + r, mv), (mu - r, mv)]
    };
    centers.iter().any(|&(cu, cv)| FrameSquare { cu, cv, r }.is_empty(&f, tol.len))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collinear_example() {
        let ps = PointSet::from_xy(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (0.0, 5.0)]).unwrap();
        let v = validate_general_position(&ps, &Tolerance::for_points(&ps));
        assert!(v.contains(&Violation::CollinearTriple([0, 1, 2])));
    }

    #[test]
    fn orthogonal_diagonal_example() {
        let ps = PointSet::from_xy(&[(0.0, 1.0), (1.0, 0.0), (0.0, -1.0), (-1.0, 0.0)]).unwrap();
        let v = validate_general_position(&ps, &Tolerance::for_points(&ps));
        assert!(v.iter().any(|x| matches!(x, Violation::EqualOrthogonalDiagonals(_))));
    }

    #[test]
    fn generic_points_pass() {
        let ps = PointSet::from_xy(&[
            (0.113, 0.721),
            (0.934, 0.052),
            (0.402, 0.388),
            (0.671, 0.912),
            (0.257, 0.149),
        ])
        .unwrap();
        assert!(validate_general_position(&ps, &Tolerance::for_points(&ps)).is_empty());
    }
}
