//! Per contact pair, the regular vertices on the boundary of its face.
//!
//! Along a face the squares of consecutive vertices put their side `a` on
//! one common line, and those side segments are never properly nested, so
//! sorting by position along the line sorts both segment ends at once. That
//! order only changes at events, which is why lists are re-sorted lazily
//! after an update and never in between.

use quadrot_geom::{ContactPair, ContactType};
use std::collections::HashMap;

#[derive(Clone, Debug, Default)]
struct FaceList {
    items: Vec<ContactType>,
    sorted: bool,
}

#[derive(Clone, Debug, Default)]
pub struct FaceLists {
    lists: HashMap<ContactPair, FaceList>,
}

impl FaceLists {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add a regular vertex to the lists of its three pairs.
    pub fn insert(&mut self, k: &ContactType) {
        for p in k.pairs() {
            let l = self.lists.entry(*p).or_default();
            l.items.push(k.clone());
            l.sorted = false;
        }
    }

    pub fn remove(&mut self, k: &ContactType) {
        for p in k.pairs() {
            if let Some(l) = self.lists.get_mut(p) {
                l.items.retain(|x| x != k);
                if l.items.is_empty() {
                    self.lists.remove(p);
                }
            }
        }
    }

    pub fn list(&self, pair: &ContactPair) -> &[ContactType] {
        self.lists.get(pair).map_or(&[], |l| &l.items)
    }

    /// Total number of entries; three per regular vertex.
    pub fn total_len(&self) -> usize {
        self.lists.values().map(|l| l.items.len()).sum()
    }

    /// Sort the list of `pair` by `key` (position along the side, radius)
    /// unless it is already sorted.
    pub fn ensure_sorted(&mut self, pair: &ContactPair, key: impl Fn(&ContactType) -> (f64, f64)) {
        if let Some(l) = self.lists.get_mut(pair) {
            if !l.sorted {
                l.items.sort_by_cached_key(|k| {
                    let (a, b) = key(k);
                    (OrdF(a), OrdF(b), k.clone())
                });
                l.sorted = true;
            }
        }
    }

    /// Force every list to be re-sorted on next use.
    pub fn invalidate(&mut self) {
        for l in self.lists.values_mut() {
            l.sorted = false;
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
struct OrdF(f64);
impl Eq for OrdF {}
impl PartialOrd for OrdF {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for OrdF {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&o.0)
    }
}

/// Indices of segments `[lo, hi]` containing `x` up to `eps`, for segments
/// sorted so that both ends are non-decreasing. `seg` is evaluated lazily:
/// a binary search for the first segment reaching `x`, then a walk.
pub fn covering_segments(len: usize, x: f64, eps: f64, seg: impl Fn(usize) -> (f64, f64)) -> Vec<usize> {
    let (mut lo, mut hi) = (0usize, len);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if seg(mid).1 < x - eps {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let mut out = Vec::new();
    for i in lo..len {
        let (a, b) = seg(i);
        if a > x + eps {
            break;
        }
        if b >= x - eps {
            out.push(i);
        }
    }
    out
}
