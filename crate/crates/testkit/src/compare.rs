//! Diffing a kinetic trace against the brute-force square set.

use crate::brute::OracleSquare;
use quadrot_geom::{cyclic_gap, ContactType};
use quadrot_kinetic::RotationTrace;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub matched: usize,
    /// Found by brute force only.
    pub missing: Vec<ContactType>,
    /// Reported by the trace only.
    pub extra: Vec<ContactType>,
    pub max_phi_err: f64,
    /// Center and radius errors divided by `scale`.
    pub max_center_err: f64,
    pub max_radius_err: f64,
}

impl OracleReport {
    pub fn is_equivalent(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} matched, {} missing, {} extra, max |dphi| {:.2e}, max center {:.2e}, max radius {:.2e}",
            self.matched,
            self.missing.len(),
            self.extra.len(),
            self.max_phi_err,
            self.max_center_err,
            self.max_radius_err
        )?;
        for k in &self.missing {
            write!(f, "\n  missing {k}")?;
        }
        for k in &self.extra {
            write!(f, "\n  extra {k}")?;
        }
        Ok(())
    }
}

/// Match records by contact type; `scale` normalizes coordinate errors.
pub fn compare_traces(trace: &RotationTrace, brute: &[OracleSquare], scale: f64) -> OracleReport {
    let mut mine: BTreeMap<&ContactType, _> = trace.squares().map(|r| (&r.contact_type, r)).collect();
    let mut rep = OracleReport::default();
    for b in brute {
        let Some(r) = mine.remove(&b.contact_type) else {
            rep.missing.push(b.contact_type.clone());
            continue;
        };
        rep.matched += 1;
        rep.max_phi_err = rep.max_phi_err.max(cyclic_gap(r.phi, b.phi));
        let c = r.square.center;
        rep.max_center_err = rep.max_center_err.max((c.0 - b.center.0).hypot(c.1 - b.center.1) / scale);
        rep.max_radius_err = rep.max_radius_err.max((r.square.radius - b.radius).abs() / scale);
    }
    rep.extra = mine.into_keys().cloned().collect();
    rep
}
