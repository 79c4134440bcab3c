//! Closed-form event times and the local effect of a 4-square.

use crate::KineticError;
use quadrot_geom::{alignment_orientation, ContactType, PointSet, SquareFamily, QUARTER};
use quadrot_vd::EdgeRecord;

/// The first orientation in `(theta, theta + π/2)` at which the two end
/// squares of the bounded edge `e` coincide.
///
/// Both end squares satisfy three of the four pairs of `κ_u ∪ κ_v`; the
/// squares coincide exactly when the remaining pair is also satisfied, a
/// sinusoid root. Edges ending at a site never collapse.
pub fn potential_edge_event(points: &PointSet, e: &EdgeRecord, theta: f64) -> Result<Option<f64>, KineticError> {
    if !e.bounded || e.u.points().len() == 1 || e.v.points().len() == 1 {
        return Ok(None);
    }
    let k = e.u.union(&e.v)?;
    let g = SquareFamily::consistency(points, &k)?;
    if g.amplitude() <= 1e-13 * points.scale() {
        return Err(KineticError::GeneralPosition {
            phi: theta,
            detail: format!("{k} is a square at every orientation"),
        });
    }
    Ok(g.first_root_after(theta).filter(|&r| r < theta + QUARTER))
}

/// The representative of `base + k·π/2` closest to `near`.
pub(crate) fn unwrap_near(base: f64, near: f64) -> f64 {
    base + ((near - base) / QUARTER).round() * QUARTER
}

/// Orientation near `near` at which the four-pair type `k` is realized:
/// the alignment of its staple, or the root of its consistency sinusoid.
pub fn square_orientation(points: &PointSet, k: &ContactType, near: f64) -> Result<f64, KineticError> {
    if let Some((_, p, q)) = k.staple() {
        let base = alignment_orientation(points.get(p), points.get(q))?.value();
        return Ok(unwrap_near(base, near));
    }
    let g = SquareFamily::consistency(points, k)?;
    g.roots_in(near - 0.5, near + 0.5)
        .into_iter()
        .min_by(|a, b| (a - near).abs().total_cmp(&(b - near).abs()))
        .ok_or_else(|| KineticError::Structure { phi: near, detail: format!("{k} is never realized") })
}

/// Vertex types valid just before and just after the 4-square `k` at `phi`.
///
/// Each candidate drops one pair `(s, a)` and keeps three pinned sides.
/// Near φ the candidate can only fail through `s`: if `s` keeps another
/// contact it must stay off the corner (slack of `a` positive), otherwise it
/// must leave the square (slack negative). The sign on either side of φ is
/// the sign of the slack derivative.
pub fn transition_sets(
    points: &PointSet,
    k: &ContactType,
    phi: f64,
) -> Result<(Vec<ContactType>, Vec<ContactType>), KineticError> {
    if k.len() != 4 || k.points().len() < 2 {
        return Err(KineticError::Structure { phi, detail: format!("{k} is not a nontrivial 4-square") });
    }
    let (mut before, mut after) = (Vec::new(), Vec::new());
    for pair in k.pairs() {
        let kk = k.without(pair);
        if kk.pinned_sides() != 3 {
            continue;
        }
        let (fam, _) = SquareFamily::build(points, &kk)?;
        let f = fam.slack(points, pair.point, pair.side);
        let d = f.deriv().eval(phi);
        if d.abs() <= 1e-12 * f.amplitude().max(points.scale()) {
            return Err(KineticError::GeneralPosition {
                phi,
                detail: format!("{pair} touches {kk} tangentially"),
            });
        }
        let stays = kk.points().contains(&pair.point);
        if (d < 0.0) == stays {
            before.push(kk.clone());
        }
        if (d > 0.0) == stays {
            after.push(kk);
        }
    }
    before.sort();
    after.sort();
    Ok((before, after))
}
