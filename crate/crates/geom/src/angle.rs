//! Orientations in the cyclic space [0, π/2) and sinusoids `a·sin θ + b·cos θ`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

/// Length of the orientation space.
pub const QUARTER: f64 = std::f64::consts::FRAC_PI_2;

/// Reduce an angle into [0, π/2).
pub fn canonical(theta: f64) -> f64 {
    let t = theta.rem_euclid(QUARTER);
    // rem_euclid can round up to exactly QUARTER for tiny negative inputs.
    if t >= QUARTER {
        0.0
    } else {
        t
    }
}

/// Distance between two orientations on the circle of length π/2.
pub fn cyclic_gap(a: f64, b: f64) -> f64 {
    let d = canonical(a - b);
    d.min(QUARTER - d)
}

/// An orientation of the axes, always stored in [0, π/2).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Orientation(f64);

impl Orientation {
    pub fn new(theta: f64) -> Self {
        Orientation(canonical(theta))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// True when the cyclic distance to `other` is at most `eps`.
    pub fn approx_eq(self, other: Orientation, eps: f64) -> bool {
        cyclic_gap(self.0, other.0) <= eps
    }
}

impl From<Orientation> for f64 {
    fn from(o: Orientation) -> f64 {
        o.0
    }
}

/// The function `θ ↦ a·sin θ + b·cos θ`.
///
/// Rotated coordinates of a fixed point are of this form, and so is any
/// linear combination of them, which covers centers, radii and side slacks
/// of squares pinned by contact pairs.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Sinusoid {
    pub a: f64,
    pub b: f64,
}

impl Sinusoid {
    pub const ZERO: Sinusoid = Sinusoid { a: 0.0, b: 0.0 };

    pub fn new(a: f64, b: f64) -> Self {
        Sinusoid { a, b }
    }

    pub fn eval(self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        self.a * s + self.b * c
    }

    pub fn deriv(self) -> Sinusoid {
        Sinusoid { a: -self.b, b: self.a }
    }

    pub fn amplitude(self) -> f64 {
        self.a.hypot(self.b)
    }

    /// One root; the full root set is this value plus multiples of π.
    pub fn base_root(self) -> Option<f64> {
        if self.amplitude() == 0.0 {
            return None;
        }
        Some((-self.b).atan2(self.a))
    }

    /// Smallest root strictly greater than `start`.
    pub fn first_root_after(self, start: f64) -> Option<f64> {
        let r0 = self.base_root()?;
        let k = ((start - r0) / PI).floor();
        let mut r = r0 + k * PI;
        while r <= start {
            r += PI;
        }
        Some(self.polish(r))
    }

    /// All roots in the half-open window `[lo, hi)`.
    pub fn roots_in(self, lo: f64, hi: f64) -> Vec<f64> {
        let mut out = Vec::new();
        let Some(r0) = self.base_root() else { return out };
        let k = ((lo - r0) / PI).ceil();
        let mut r = r0 + k * PI;
        if r - PI >= lo {
            r -= PI;
        }
        while r < hi {
            if r >= lo {
                out.push(self.polish(r));
            }
            r += PI;
        }
        out
    }

    /// One Newton step; the closed-form root is already accurate, this only
    /// trims the last bits of rounding from `atan2`.
    fn polish(self, r: f64) -> f64 {
        let d = self.deriv().eval(r);
        if d.abs() > 0.0 {
            let step = self.eval(r) / d;
            if step.abs() < 1e-6 {
                return r - step;
            }
        }
        r
    }
}

impl Add for Sinusoid {
    type Output = Sinusoid;
    fn add(self, o: Sinusoid) -> Sinusoid {
        Sinusoid { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for Sinusoid {
    type Output = Sinusoid;
    fn sub(self, o: Sinusoid) -> Sinusoid {
        Sinusoid { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Neg for Sinusoid {
    type Output = Sinusoid;
    fn neg(self) -> Sinusoid {
        Sinusoid { a: -self.a, b: -self.b }
    }
}

impl Mul<f64> for Sinusoid {
    type Output = Sinusoid;
    fn mul(self, k: f64) -> Sinusoid {
        Sinusoid { a: self.a * k, b: self.b * k }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_wraps() {
        assert_eq!(canonical(0.0), 0.0);
        assert!((canonical(QUARTER + 0.25) - 0.25).abs() < 1e-15);
        assert!((canonical(-0.25) - (QUARTER - 0.25)).abs() < 1e-15);
        assert!(canonical(-1e-300) < QUARTER);
    }

    #[test]
    fn gap_is_cyclic() {
        assert!((cyclic_gap(0.01, QUARTER - 0.01) - 0.02).abs() < 1e-15);
        assert!((cyclic_gap(0.3, 0.5) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn roots_of_sin_minus_cos() {
        let s = Sinusoid::new(1.0, -1.0);
        let r = s.first_root_after(0.0).unwrap();
        assert!((r - PI / 4.0).abs() < 1e-15);
        let r2 = s.first_root_after(r).unwrap();
        assert!((r2 - 5.0 * PI / 4.0).abs() < 1e-14);
        assert_eq!(s.roots_in(0.0, QUARTER).len(), 1);
        assert!(Sinusoid::ZERO.first_root_after(0.0).is_none());
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let s = Sinusoid::new(0.7, -2.3);
        let h = 1e-6;
        let fd = (s.eval(0.4 + h) - s.eval(0.4 - h)) / (2.0 * h);
        assert!((fd - s.deriv().eval(0.4)).abs() < 1e-8);
    }
}
