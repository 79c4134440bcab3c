//! Input points and the rotated L∞ distance.

use crate::{GeomError, Sinusoid};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub id: i64,
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(id: i64, x: f64, y: f64) -> Self {
        Point { id, x, y }
    }
}

/// Coordinates of `p` in the frame whose axes are rotated by θ.
pub fn rotate_to_frame(p: &Point, theta: f64) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    (p.x * c + p.y * s, -p.x * s + p.y * c)
}

/// Inverse of [`rotate_to_frame`].
pub fn frame_to_world(u: f64, v: f64, theta: f64) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    (u * c - v * s, u * s + v * c)
}

/// `d_θ(p, q)`: the L∞ distance measured in the θ-rotated frame.
pub fn dist_linf_rotated(p: &Point, q: &Point, theta: f64) -> f64 {
    let (pu, pv) = rotate_to_frame(p, theta);
    let (qu, qv) = rotate_to_frame(q, theta);
    (pu - qu).abs().max((pv - qv).abs())
}

/// An indexed point set. Contact pairs refer to points by their index here;
/// `id` is only the external label.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self, GeomError> {
        let mut ids = HashSet::new();
        for p in &points {
            if !p.x.is_finite() || !p.y.is_finite() {
                return Err(GeomError::NonFinite(p.id));
            }
            if !ids.insert(p.id) {
                return Err(GeomError::DuplicateId(p.id));
            }
        }
        let mut sorted: Vec<&Point> = points.iter().collect();
        sorted.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        for w in sorted.windows(2) {
            if w[0].x == w[1].x && w[0].y == w[1].y {
                return Err(GeomError::CoincidentPoints(w[0].id, w[1].id));
            }
        }
        Ok(PointSet { points })
    }

    /// Points with ids `0..n` in order.
    pub fn from_xy(coords: &[(f64, f64)]) -> Result<Self, GeomError> {
        Self::new(
            coords.iter().enumerate().map(|(i, &(x, y))| Point::new(i as i64, x, y)).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, i: u32) -> &Point {
        &self.points[i as usize]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.points.iter()
    }

    /// Largest absolute coordinate, used to scale length tolerances.
    pub fn scale(&self) -> f64 {
        let m = self.points.iter().fold(0.0f64, |m, p| m.max(p.x.abs()).max(p.y.abs()));
        if m > 0.0 {
            m
        } else {
            1.0
        }
    }

    pub fn frame(&self, i: u32, theta: f64) -> (f64, f64) {
        rotate_to_frame(self.get(i), theta)
    }

    /// `u` of point `i` as a function of θ.
    pub fn u_of(&self, i: u32) -> Sinusoid {
        let p = self.get(i);
        Sinusoid::new(p.y, p.x)
    }

    /// `v` of point `i` as a function of θ.
    pub fn v_of(&self, i: u32) -> Sinusoid {
        let p = self.get(i);
        Sinusoid::new(-p.x, p.y)
    }

    /// All points in the frame of θ.
    pub fn frame_all(&self, theta: f64) -> Vec<(f64, f64)> {
        let (s, c) = theta.sin_cos();
        self.points.iter().map(|p| (p.x * c + p.y * s, -p.x * s + p.y * c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    #[test]
    fn frame_identity_and_diagonal() {
        let p = Point::new(0, 1.0, 1.0);
        assert_eq!(rotate_to_frame(&p, 0.0), (1.0, 1.0));
        let (u, v) = rotate_to_frame(&p, FRAC_PI_4);
        assert!((u - SQRT_2).abs() < 1e-15 && v.abs() < 1e-15);
    }

    #[test]
    fn distance_examples() {
        let o = Point::new(0, 0.0, 0.0);
        assert_eq!(dist_linf_rotated(&o, &Point::new(1, 3.0, 4.0), 0.0), 4.0);
        let d = dist_linf_rotated(&o, &Point::new(1, 1.0, 1.0), FRAC_PI_4);
        assert!((d - SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn sinusoid_coordinates_match_rotation() {
        let ps = PointSet::from_xy(&[(3.0, -2.0)]).unwrap();
        for &t in &[0.0, 0.3, 1.2] {
            let (u, v) = ps.frame(0, t);
            assert!((ps.u_of(0).eval(t) - u).abs() < 1e-14);
            assert!((ps.v_of(0).eval(t) - v).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            PointSet::from_xy(&[(0.0, 0.0), (0.0, 0.0)]),
            Err(GeomError::CoincidentPoints(..))
        ));
        assert!(matches!(PointSet::from_xy(&[(f64::NAN, 0.0)]), Err(GeomError::NonFinite(0))));
        assert!(matches!(
            PointSet::new(vec![Point::new(4, 0.0, 0.0), Point::new(4, 1.0, 0.0)]),
            Err(GeomError::DuplicateId(4))
        ));
    }
}
