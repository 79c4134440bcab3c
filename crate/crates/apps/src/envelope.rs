//! Upper envelope of the class radius curves over `[0, π/2)`.

use crate::classes::{bounding_box_events, boxed_mes_classes, ClassKey, MesClass};
use crate::curves::{boxed_region, in_box_radius, vertex_family};
use crate::expr::pieces;
use crate::les::Variant;
use crate::AppError;
use quadrot_geom::{canonical, PointSet, Sinusoid, QUARTER};
use serde::{Deserialize, Serialize};

/// One sinusoidal piece `a·sin θ + b·cos θ` on `[lo, hi]`, owned by a class.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvPiece {
    pub lo: f64,
    pub hi: f64,
    pub a: f64,
    pub b: f64,
    pub class: usize,
}

impl EnvPiece {
    pub fn sinusoid(&self) -> Sinusoid {
        Sinusoid::new(self.a, self.b)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.sinusoid().eval(t)
    }

    /// Amplitude and phase `(A, α)` with the piece equal to `A·sin(θ + α)`.
    pub fn amplitude_phase(&self) -> (f64, f64) {
        (self.a.hypot(self.b), self.b.atan2(self.a))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RadiusEnvelope {
    /// Sorted and disjoint apart from shared endpoints.
    pub pieces: Vec<EnvPiece>,
}

/// `θ ↦ s(θ + π/2)`.
fn quarter_ahead(s: Sinusoid) -> Sinusoid {
    Sinusoid::new(-s.b, s.a)
}

/// Class radius curves reduced into `[0, π/2]`, one entry per sinusoidal
/// piece.
pub fn class_curves(points: &PointSet, classes: &[MesClass], variant: Variant) -> Result<Vec<EnvPiece>, AppError> {
    let mut raw: Vec<(f64, f64, Sinusoid, usize)> = Vec::new();
    match variant {
        Variant::Pinned => {
            for (i, c) in classes.iter().enumerate() {
                if let ClassKey::Vertex(k) = &c.key {
                    raw.push((c.start, c.end, vertex_family(points, k)?.r, i));
                }
            }
        }
        Variant::InBox => {
            let scale = points.scale();
            for b in boxed_mes_classes(classes, &bounding_box_events(points)?) {
                let e = in_box_radius(&boxed_region(points, classes, &b)?);
                raw.extend(pieces(&e, b.start, b.end, scale).into_iter().map(|(lo, hi, s)| (lo, hi, s, b.base)));
            }
        }
    }
    let mut out = Vec::new();
    for (lo, hi, s, class) in raw {
        // cut at multiples of π/2 and move each part back into [0, π/2]
        let mut k = (lo / QUARTER).floor();
        while k * QUARTER < hi {
            let (a, b) = (lo.max(k * QUARTER), hi.min((k + 1.0) * QUARTER));
            if b > a {
                let s = (0..k as i32).fold(s, |s, _| quarter_ahead(s));
                out.push(EnvPiece { lo: a - k * QUARTER, hi: b - k * QUARTER, a: s.a, b: s.b, class });
            }
            k += 1.0;
        }
    }
    Ok(out)
}

fn covering(env: &[EnvPiece], idx: &mut usize, x: f64, y: f64) -> Option<EnvPiece> {
    while *idx < env.len() && env[*idx].hi <= x {
        *idx += 1;
    }
    env.get(*idx).filter(|p| p.lo <= x && p.hi >= y).copied()
}

fn push_merged(out: &mut Vec<EnvPiece>, p: EnvPiece) {
    match out.last_mut() {
        Some(l) if l.hi == p.lo && l.class == p.class && l.a == p.a && l.b == p.b => l.hi = p.hi,
        _ => out.push(p),
    }
}

fn merge(a: &[EnvPiece], b: &[EnvPiece]) -> Vec<EnvPiece> {
    let mut cuts: Vec<f64> = a.iter().chain(b).flat_map(|p| [p.lo, p.hi]).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let (mut ia, mut ib) = (0, 0);
    let mut out = Vec::new();
    for w in cuts.windows(2) {
        let (x, y) = (w[0], w[1]);
        let pa = covering(a, &mut ia, x, y);
        let pb = covering(b, &mut ib, x, y);
        match (pa, pb) {
            (None, None) => {}
            (Some(p), None) | (None, Some(p)) => push_merged(&mut out, EnvPiece { lo: x, hi: y, ..p }),
            (Some(p), Some(q)) => {
                let mut sub = vec![x];
                sub.extend((p.sinusoid() - q.sinusoid()).roots_in(x, y).into_iter().filter(|&t| t > x && t < y));
                sub.push(y);
                for s in sub.windows(2) {
                    let m = (s[0] + s[1]) / 2.0;
                    let (vp, vq) = (p.eval(m), q.eval(m));
                    let win = if vp > vq || (vp == vq && p.class <= q.class) { p } else { q };
                    push_merged(&mut out, EnvPiece { lo: s[0], hi: s[1], ..win });
                }
            }
        }
    }
    out
}

impl RadiusEnvelope {
    /// Upper envelope of arbitrary pieces by divide and conquer.
    pub fn from_pieces(mut ps: Vec<EnvPiece>) -> Self {
        fn go(ps: &[EnvPiece]) -> Vec<EnvPiece> {
            match ps.len() {
                0 => Vec::new(),
                1 => ps.to_vec(),
                n => merge(&go(&ps[..n / 2]), &go(&ps[n / 2..])),
            }
        }
        ps.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        RadiusEnvelope { pieces: go(&ps) }
    }

    /// `ρ(θ)`; at a breakpoint the larger one-sided limit. `None` where no
    /// class exists.
    pub fn query(&self, theta: f64) -> Option<f64> {
        let t = canonical(theta);
        let i = self.pieces.partition_point(|p| p.hi < t);
        let mut best: Option<f64> = None;
        // near π/2 the first piece also holds the limit from the right
        let wrap = if QUARTER - t < 1e-15 { Some(0) } else { None };
        for j in [Some(i), Some(i + 1), wrap].into_iter().flatten() {
            if let Some(p) = self.pieces.get(j) {
                let tt = if Some(j) == wrap && j != i { 0.0 } else { t };
                if p.lo <= tt && tt <= p.hi {
                    best = Some(best.map_or(p.eval(tt), |b: f64| b.max(p.eval(tt))));
                }
            }
        }
        best
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        self.pieces.iter().map(|p| p.lo).collect()
    }
}

pub fn radius_envelope(points: &PointSet, classes: &[MesClass], variant: Variant) -> Result<RadiusEnvelope, AppError> {
    Ok(RadiusEnvelope::from_pieces(class_curves(points, classes, variant)?))
}
