//! Numeric kernel for squares whose axes are rotated by an angle θ.
//!
//! Everything here works in the rotated frame `(u, v)`: the sides of a
//! square in orientation θ are parallel to the `u` and `v` axes. Positions
//! of the input points in that frame are sinusoids in θ, which is what makes
//! every solver below closed-form.

pub mod angle;
pub mod classify;
pub mod contact;
mod error;
pub mod general_position;
pub mod point;
pub mod solve;
pub mod square;

pub use angle::{canonical, cyclic_gap, Orientation, Sinusoid, QUARTER};
pub use classify::{classify_four_square, classify_vertex, FourSquareType, VertexType};
pub use contact::{ContactPair, ContactType, Side};
pub use error::GeomError;
pub use general_position::{validate_general_position, Violation};
pub use point::{dist_linf_rotated, rotate_to_frame, Point, PointSet};
pub use solve::{
    alignment_orientation, solve_equal_extent, solve_square_from_three, EqualExtent,
    SquareFamily,
};
pub use square::{contact_type_of, is_empty, FrameSquare, Square};

/// Default tolerance for treating two orientations as equal (radians).
pub const EPS_ANGLE: f64 = 1e-9;

/// Default length tolerance, relative to the coordinate scale of the input.
pub const EPS_LEN_REL: f64 = 1e-9;

/// The pair of tolerances used by every incidence and grouping test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub angle: f64,
    pub len: f64,
}

impl Tolerance {
    /// Default tolerances scaled to the given point set.
    pub fn for_points(points: &PointSet) -> Self {
        Tolerance { angle: EPS_ANGLE, len: EPS_LEN_REL * points.scale() }
    }

    pub fn with_angle(mut self, angle: f64) -> Self {
        self.angle = angle;
        self
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { angle: EPS_ANGLE, len: EPS_LEN_REL }
    }
}
