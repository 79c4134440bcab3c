//! Every nontrivial 4-square by direct enumeration of contact types.
//!
//! Deliberately shares no solver with the sweep: orientations come from
//! the width-equals-height condition or from segment directions, squares
//! are rebuilt from their pinned sides, and emptiness is a plain scan.

use crate::TestkitError;
use quadrot_geom::{classify_four_square, ContactPair, ContactType, FourSquareType, PointSet, Side, Tolerance};
use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use Side::*;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleSquare {
    pub contact_type: ContactType,
    pub four_type: FourSquareType,
    pub phi: f64,
    pub center: (f64, f64),
    pub radius: f64,
}

fn to_frame(x: f64, y: f64, t: f64) -> (f64, f64) {
    let (s, c) = t.sin_cos();
    (x * c + y * s, -x * s + y * c)
}

fn to_world(u: f64, v: f64, t: f64) -> (f64, f64) {
    let (s, c) = t.sin_cos();
    (u * c - v * s, u * s + v * c)
}

/// Square at `t` from the pinned sides of `k`, or `None` if the pins
/// disagree by more than `eps` or leave it undetermined.
fn square_from_pins(frame: &[(f64, f64)], k: &ContactType, eps: f64) -> Option<(f64, f64, f64)> {
    let mut lines: [Vec<f64>; 4] = Default::default();
    for p in k.pairs() {
        let (u, v) = frame[p.point as usize];
        lines[p.side.index()].push(if p.side.is_horizontal() { v } else { u });
    }
    let avg = |s: Side| -> Option<f64> {
        let l = &lines[s.index()];
        if l.is_empty() {
            return None;
        }
        let m = l.iter().sum::<f64>() / l.len() as f64;
        l.iter().all(|x| (x - m).abs() <= eps).then_some(m)
    };
    let (t, r, b, l) = (avg(Top), avg(Right), avg(Bottom), avg(Left));
    let (cu, cv, rad) = match (t, r, b, l) {
        (Some(t), Some(r), Some(b), Some(l)) => {
            if ((r - l) - (t - b)).abs() > 4.0 * eps {
                return None;
            }
            ((r + l) / 2.0, (t + b) / 2.0, (r - l + t - b) / 4.0)
        }
        (Some(t), Some(r), Some(b), None) => (r - (t - b) / 2.0, (t + b) / 2.0, (t - b) / 2.0),
        (Some(t), None, Some(b), Some(l)) => (l + (t - b) / 2.0, (t + b) / 2.0, (t - b) / 2.0),
        (Some(t), Some(r), None, Some(l)) => ((r + l) / 2.0, t - (r - l) / 2.0, (r - l) / 2.0),
        (None, Some(r), Some(b), Some(l)) => ((r + l) / 2.0, b + (r - l) / 2.0, (r - l) / 2.0),
        _ => return None,
    };
    Some((cu, cv, rad))
}

/// The exact contact set of a square, or `None` if some point is inside.
fn contacts(frame: &[(f64, f64)], sq: (f64, f64, f64), eps: f64) -> Option<Vec<ContactPair>> {
    let (cu, cv, r) = sq;
    let mut out = Vec::new();
    for (i, &(u, v)) in frame.iter().enumerate() {
        let sl = [cv + r - v, cu + r - u, v - cv + r, u - cu + r];
        if sl.iter().all(|&x| x > eps) {
            return None;
        }
        if sl.iter().any(|&x| x < -eps) {
            continue;
        }
        for s in Side::ALL {
            if sl[s.index()].abs() <= eps {
                out.push(ContactPair::new(i as u32, s));
            }
        }
    }
    Some(out)
}

struct Found(BTreeMap<ContactType, OracleSquare>);

impl Found {
    fn try_add(&mut self, points: &PointSet, k: ContactType, phi: f64, eps: f64) -> Result<(), TestkitError> {
        if self.0.contains_key(&k) {
            return Ok(());
        }
        let frame: Vec<(f64, f64)> = points.iter().map(|p| to_frame(p.x, p.y, phi)).collect();
        let Some(sq) = square_from_pins(&frame, &k, eps) else { return Ok(()) };
        if sq.2 <= eps {
            return Ok(());
        }
        let Some(got) = contacts(&frame, sq, eps) else { return Ok(()) };
        if got.len() > 4 {
            return Err(TestkitError::GeneralPosition(format!("square {k} at {phi} has {} contacts", got.len())));
        }
        let got = ContactType::new(got)?;
        if got != k {
            return Ok(());
        }
        let four_type = classify_four_square(&k)?;
        let center = to_world(sq.0, sq.1, phi);
        self.0.insert(k.clone(), OracleSquare { contact_type: k, four_type, phi, center, radius: sq.2 });
        Ok(())
    }
}

/// All nontrivial 4-squares with orientation in `[0, π/2)`, sorted by
/// contact type. `O(n⁵)`; meant for `n` up to about 14.
pub fn brute_force_four_squares(points: &PointSet, tol: &Tolerance) -> Result<Vec<OracleSquare>, TestkitError> {
    let n = points.len() as u32;
    let pts = points.points();
    let eps = tol.len;
    let mut found = Found(BTreeMap::new());

    // one pair per side: width equals height, A·cos θ + B·sin θ = 0
    for t in 0..n {
        for b in 0..n {
            if b == t {
                continue;
            }
            for r in 0..n {
                for l in 0..n {
                    if l == r {
                        continue;
                    }
                    let (pt, pb, pr, pl) = (&pts[t as usize], &pts[b as usize], &pts[r as usize], &pts[l as usize]);
                    let a = (pr.x - pl.x) - (pt.y - pb.y);
                    let bb = (pr.y - pl.y) + (pt.x - pb.x);
                    if a.abs() + bb.abs() <= 1e-14 * points.scale() {
                        return Err(TestkitError::GeneralPosition(format!(
                            "points {t},{r},{b},{l} span a square at every orientation"
                        )));
                    }
                    let phi = (-a).atan2(bb).rem_euclid(PI);
                    if phi >= FRAC_PI_2 {
                        continue;
                    }
                    let k = ContactType::of(&[(t, Top), (r, Right), (b, Bottom), (l, Left)]);
                    found.try_add(points, k, phi, eps)?;
                }
            }
        }
    }

    // two pairs on one side: the orientation is that of the segment
    for p in 0..n {
        for q in p + 1..n {
            let (a, b) = (&pts[p as usize], &pts[q as usize]);
            let dir = (b.y - a.y).atan2(b.x - a.x);
            let phi = dir.rem_euclid(FRAC_PI_2);
            let phi = if phi >= FRAC_PI_2 { 0.0 } else { phi };
            let (du, dv) = to_frame(b.x - a.x, b.y - a.y, phi);
            let staple_sides = if du.abs() > dv.abs() { [Top, Bottom] } else { [Left, Right] };
            for s in staple_sides {
                let others: Vec<Side> = Side::ALL.into_iter().filter(|&x| x != s).collect();
                let cands: Vec<ContactPair> =
                    (0..n).flat_map(|x| others.iter().map(move |&o| ContactPair::new(x, o))).collect();
                for (i, c1) in cands.iter().enumerate() {
                    for c2 in &cands[i + 1..] {
                        if c1.side == c2.side {
                            continue;
                        }
                        let Ok(k) = ContactType::new([ContactPair::new(p, s), ContactPair::new(q, s), *c1, *c2]) else {
                            continue;
                        };
                        if k.len() == 4 {
                            found.try_add(points, k, phi, eps)?;
                        }
                    }
                }
            }
        }
    }
    Ok(found.0.into_values().collect())
}
