//! Largest empty squares over all orientations.

use crate::classes::{boxed_mes_classes, bounding_box_events, ClassKey, MesClass};
use crate::curves::{boxed_region, in_box_radius, vertex_family};
use crate::expr::{expr_max, sinusoid_max};
use crate::AppError;
use quadrot_geom::{FrameSquare, PointSet, Square};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// Three or four sides pinned by points.
    Pinned,
    /// Inside the bounding box of the same orientation.
    InBox,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LesResult {
    pub square: Square,
    /// Index of the class attaining the optimum.
    pub class: usize,
    pub key: ClassKey,
}

impl LesResult {
    pub fn radius(&self) -> f64 {
        self.square.radius
    }

    pub fn phi(&self) -> f64 {
        self.square.orientation.value()
    }
}

/// Maximum radius of `S_κ(θ)` over every vertex class, with the closed
/// intervals included. `None` when there are no vertex classes.
pub fn largest_empty_square_pinned(points: &PointSet, classes: &[MesClass]) -> Result<Option<LesResult>, AppError> {
    let mut best: Option<(f64, f64, usize)> = None;
    for (i, c) in classes.iter().enumerate() {
        let ClassKey::Vertex(k) = &c.key else { continue };
        let f = vertex_family(points, k)?;
        let (t, r) = sinusoid_max(f.r, c.start, c.end);
        if best.map_or(true, |b| r > b.1) {
            best = Some((t, r, i));
        }
    }
    let Some((t, _, i)) = best else { return Ok(None) };
    let ClassKey::Vertex(k) = &classes[i].key else { unreachable!() };
    let sq = vertex_family(points, k)?.at(t);
    Ok(Some(LesResult { square: sq.to_square(t), class: i, key: classes[i].key.clone() }))
}

/// Maximum over boxed classes of the largest square inside the class region
/// and the bounding box.
pub fn largest_empty_square_in_box(points: &PointSet, classes: &[MesClass]) -> Result<Option<LesResult>, AppError> {
    let boxed = boxed_mes_classes(classes, &bounding_box_events(points)?);
    let scale = points.scale();
    let mut best: Option<(f64, f64, usize)> = None;
    for (j, b) in boxed.iter().enumerate() {
        let e = in_box_radius(&boxed_region(points, classes, b)?);
        let (t, r) = expr_max(&e, b.start, b.end, scale);
        if best.map_or(true, |x| r > x.1) {
            best = Some((t, r, j));
        }
    }
    let Some((t, r, j)) = best else { return Ok(None) };
    let reg = boxed_region(points, classes, &boxed[j])?;
    let (u0, u1, v0, v1) = (reg.umin.eval(t), reg.umax.eval(t), reg.vmin.eval(t), reg.vmax.eval(t));
    let fs = FrameSquare { cu: (u0 + u1) / 2.0, cv: (v0 + v1) / 2.0, r };
    let base = boxed[j].base;
    Ok(Some(LesResult { square: fs.to_square(t), class: base, key: classes[base].key.clone() }))
}

/// Radius of the largest empty square with orientation `beta` centered at
/// `c`: the distance to the nearest point in the rotated L∞ metric.
pub fn largest_centered_at(points: &PointSet, c: (f64, f64), beta: f64) -> f64 {
    let (s, co) = beta.sin_cos();
    points
        .iter()
        .map(|p| {
            let (dx, dy) = (p.x - c.0, p.y - c.1);
            (dx * co + dy * s).abs().max((-dx * s + dy * co).abs())
        })
        .fold(f64::INFINITY, f64::min)
}
