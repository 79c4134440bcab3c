//! Squares, emptiness and contact types.

use crate::point::frame_to_world;
use crate::{ContactPair, ContactType, GeomError, Orientation, PointSet, Side};
use serde::{Deserialize, Serialize};

/// A square described in the rotated frame it is aligned with.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameSquare {
    pub cu: f64,
    pub cv: f64,
    pub r: f64,
}

impl FrameSquare {
    /// Coordinate of the line carrying `side`.
    pub fn line(&self, side: Side) -> f64 {
        match side {
            Side::Top => self.cv + self.r,
            Side::Right => self.cu + self.r,
            Side::Bottom => self.cv - self.r,
            Side::Left => self.cu - self.r,
        }
    }

    /// Signed distance from `(u, v)` to each side line, positive towards the
    /// inside. Indexed by [`Side::index`].
    pub fn slacks(&self, u: f64, v: f64) -> [f64; 4] {
        [
            self.cv + self.r - v,
            self.cu + self.r - u,
            v - (self.cv - self.r),
            u - (self.cu - self.r),
        ]
    }

    /// Contact pairs of the given frame points, or an error if the square has
    /// more than four.
    pub fn contacts(&self, frame_pts: &[(f64, f64)], eps: f64) -> Result<ContactType, GeomError> {
        let mut pairs = Vec::new();
        for (i, &(u, v)) in frame_pts.iter().enumerate() {
            let s = self.slacks(u, v);
            if s.iter().any(|&x| x < -eps) {
                continue;
            }
            for side in Side::ALL {
                if s[side.index()].abs() <= eps {
                    pairs.push(ContactPair::new(i as u32, side));
                }
            }
        }
        ContactType::new(pairs)
    }

    /// True if no point lies deeper than `eps` inside the square.
    pub fn is_empty(&self, frame_pts: &[(f64, f64)], eps: f64) -> bool {
        frame_pts.iter().all(|&(u, v)| self.slacks(u, v).iter().any(|&x| x <= eps))
    }

    /// Index of some point deeper than `eps` inside, if any.
    pub fn witness_inside(&self, frame_pts: &[(f64, f64)], eps: f64) -> Option<u32> {
        frame_pts
            .iter()
            .position(|&(u, v)| self.slacks(u, v).iter().all(|&x| x > eps))
            .map(|i| i as u32)
    }

    pub fn to_square(&self, theta: f64) -> Square {
        let (x, y) = frame_to_world(self.cu, self.cv, theta);
        Square { center: (x, y), radius: self.r, orientation: Orientation::new(theta) }
    }
}

/// A square in the plane: center, radius (half the side) and orientation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Square {
    pub center: (f64, f64),
    pub radius: f64,
    pub orientation: Orientation,
}

impl Square {
    pub fn new(center: (f64, f64), radius: f64, orientation: Orientation) -> Self {
        Square { center, radius, orientation }
    }

    /// The square expressed in the frame of its own orientation.
    pub fn frame(&self) -> FrameSquare {
        let t = self.orientation.value();
        let (s, c) = t.sin_cos();
        let (x, y) = self.center;
        FrameSquare { cu: x * c + y * s, cv: -x * s + y * c, r: self.radius }
    }

    /// Corners in world coordinates, counter-clockwise from bottom-left.
    pub fn corners(&self) -> [(f64, f64); 4] {
        let f = self.frame();
        let t = self.orientation.value();
        [
            frame_to_world(f.cu - f.r, f.cv - f.r, t),
            frame_to_world(f.cu + f.r, f.cv - f.r, t),
            frame_to_world(f.cu + f.r, f.cv + f.r, t),
            frame_to_world(f.cu - f.r, f.cv + f.r, t),
        ]
    }
}

/// True iff no point of `points` lies more than `eps` inside `s`.
pub fn is_empty(s: &Square, points: &PointSet, eps: f64) -> bool {
    s.frame().is_empty(&points.frame_all(s.orientation.value()), eps)
}

/// All contact pairs of `s`, a corner point giving two of them.
pub fn contact_type_of(s: &Square, points: &PointSet, eps: f64) -> Result<ContactType, GeomError> {
    s.frame().contacts(&points.frame_all(s.orientation.value()), eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Side::*;

    fn unit_at(cx: f64, cy: f64) -> Square {
        Square::new((cx, cy), 1.0, Orientation::new(0.0))
    }

    #[test]
    fn emptiness_examples() {
        let far = PointSet::from_xy(&[(5.0, 5.0)]).unwrap();
        assert!(is_empty(&unit_at(0.0, 0.0), &far, 1e-9));
        let inside = PointSet::from_xy(&[(1.0, 1.0)]).unwrap();
        assert!(!is_empty(&unit_at(1.0, 1.0), &inside, 1e-9));
        let boundary = PointSet::from_xy(&[(1.0, 0.0)]).unwrap();
        assert!(is_empty(&unit_at(1.0, 1.0), &boundary, 1e-9));
    }

    #[test]
    fn contact_examples() {
        let s = unit_at(1.0, 1.0);
        let corner = PointSet::from_xy(&[(0.0, 0.0)]).unwrap();
        assert_eq!(
            contact_type_of(&s, &corner, 1e-9).unwrap(),
            ContactType::of(&[(0, Bottom), (0, Left)])
        );
        let two = PointSet::from_xy(&[(1.0, 0.0), (1.0, 2.0)]).unwrap();
        assert_eq!(
            contact_type_of(&s, &two, 1e-9).unwrap(),
            ContactType::of(&[(0, Bottom), (1, Top)])
        );
        let none = PointSet::from_xy(&[(5.0, 5.0)]).unwrap();
        assert!(contact_type_of(&s, &none, 1e-9).unwrap().is_empty());
    }

    #[test]
    fn frame_round_trip() {
        let s = Square::new((0.3, -1.2), 0.7, Orientation::new(0.4));
        let back = s.frame().to_square(0.4);
        assert!((back.center.0 - 0.3).abs() < 1e-15 && (back.center.1 + 1.2).abs() < 1e-15);
    }
}
