//! Priority queue of events keyed by orientation, with removal of the event
//! attached to a given edge.

use quadrot_geom::ContactType;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq)]
pub enum Event {
    /// Collapse of the bounded edge with this edge contact type.
    Edge(ContactType),
    /// `p` and `q` become axis-aligned.
    Align { p: u32, q: u32, outer: bool },
}

#[derive(Clone, Copy, Debug)]
struct Key(f64, u64);

impl PartialEq for Key {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Key {}
impl PartialOrd for Key {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Key {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.total_cmp(&o.0).then(self.1.cmp(&o.1))
    }
}

#[derive(Clone, Debug, Default)]
pub struct EventQueue {
    events: BTreeMap<Key, Event>,
    by_edge: HashMap<ContactType, Key>,
    seq: u64,
}

impl EventQueue {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    fn insert(&mut self, phi: f64, ev: Event) -> Key {
        let k = Key(phi, self.seq);
        self.seq += 1;
        self.events.insert(k, ev);
        k
    }

    /// Schedule the collapse of edge `kappa_e`, replacing any earlier entry.
    pub fn push_edge(&mut self, kappa_e: ContactType, phi: f64) {
        self.remove_edge(&kappa_e);
        let k = self.insert(phi, Event::Edge(kappa_e.clone()));
        self.by_edge.insert(kappa_e, k);
    }

    pub fn remove_edge(&mut self, kappa_e: &ContactType) -> Option<f64> {
        let k = self.by_edge.remove(kappa_e)?;
        self.events.remove(&k);
        Some(k.0)
    }

    pub fn edge_event(&self, kappa_e: &ContactType) -> Option<f64> {
        self.by_edge.get(kappa_e).map(|k| k.0)
    }

    pub fn push_align(&mut self, p: u32, q: u32, phi: f64, outer: bool) {
        self.insert(phi, Event::Align { p: p.min(q), q: p.max(q), outer });
    }

    pub fn min_phi(&self) -> Option<f64> {
        self.events.keys().next().map(|k| k.0)
    }

    /// Remove and return every event with `φ <= limit`, in order.
    pub fn pop_through(&mut self, limit: f64) -> Vec<(f64, Event)> {
        let mut out = Vec::new();
        while let Some(entry) = self.events.first_entry() {
            if entry.key().0 > limit {
                break;
            }
            let (k, ev) = entry.remove_entry();
            if let Event::Edge(ke) = &ev {
                self.by_edge.remove(ke);
            }
            out.push((k.0, ev));
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &Event)> {
        self.events.iter().map(|(k, e)| (k.0, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadrot_geom::Side;

    #[test]
    fn ordering_and_removal() {
        let mut q = EventQueue::new();
        let a = ContactType::of(&[(0, Side::Top), (1, Side::Bottom)]);
        let b = ContactType::of(&[(0, Side::Left), (1, Side::Right)]);
        q.push_edge(a.clone(), 0.5);
        q.push_edge(b.clone(), 0.2);
        q.push_align(3, 1, 0.3, true);
        assert_eq!(q.min_phi(), Some(0.2));
        q.push_edge(b.clone(), 0.7);
        assert_eq!(q.len(), 3);
        assert_eq!(q.remove_edge(&a), Some(0.5));
        let got = q.pop_through(1.0);
        assert_eq!(got[0], (0.3, Event::Align { p: 1, q: 3, outer: true }));
        assert_eq!(got[1], (0.7, Event::Edge(b.clone())));
        assert!(q.is_empty() && q.edge_event(&b).is_none());
    }
}
