//! The sweep itself: initial diagram, event processing and the update.

use crate::events::{potential_edge_event, square_orientation, transition_sets, unwrap_near};
use crate::faces::{covering_segments, FaceLists};
use crate::queue::{Event, EventQueue};
use crate::trace::{shift_edge_key, FourSquareRecord, RotationTrace, TraceEvent};
use crate::KineticError;
use quadrot_geom::{
    alignment_orientation, classify_four_square, classify_vertex, cyclic_gap, ContactPair, ContactType, FrameSquare,
    PointSet, Side, SquareFamily, Tolerance, QUARTER,
};
use quadrot_och::enumerate_outer_align_events;
use quadrot_vd::walk::trace_half_edge;
use quadrot_vd::{
    build_diagram_reference, build_diagram_traced, incident_half_edges, vertex_square, EdgeKey, EdgeRecord, Growth,
    HalfEdge, VdError, VertexRecord, VoronoiGraph,
};
use std::collections::{BTreeMap, BTreeSet, HashMap};

#[derive(Clone, Debug, Default)]
pub struct KineticConfig {
    /// Defaults to [`Tolerance::for_points`].
    pub tol: Option<Tolerance>,
    /// Rebuild the reference diagram and audit the queue after every k-th
    /// event.
    pub paranoid_every: Option<usize>,
    /// Start orientation; chosen automatically when `None`.
    pub theta0: Option<f64>,
    /// Compare every face-list query with a linear scan.
    pub check_hits: bool,
}

impl KineticConfig {
    pub fn paranoid() -> Self {
        KineticConfig { paranoid_every: Some(1), check_hits: true, ..Default::default() }
    }
}

/// A 4-square found at the current event, in the sweep's own (unwrapped)
/// orientation and labels.
#[derive(Clone, Debug)]
pub struct FoundSquare {
    pub kappa: ContactType,
    pub phi: f64,
    pub square: FrameSquare,
}

pub struct KineticState {
    pub points: PointSet,
    pub tol: Tolerance,
    pub theta0: f64,
    pub theta_end: f64,
    /// A regular orientation; `graph` is the diagram here. Angles run
    /// unwrapped over `[theta0, theta0 + π/2)` and labels follow that frame.
    pub theta_now: f64,
    pub graph: VoronoiGraph,
    pub queue: EventQueue,
    pub faces: FaceLists,
    families: HashMap<ContactType, SquareFamily>,
    check_hits: bool,
    pub events_processed: usize,
}

fn structure(phi: f64, detail: impl Into<String>) -> KineticError {
    KineticError::Structure { phi, detail: detail.into() }
}

fn gp(phi: f64, detail: impl Into<String>) -> KineticError {
    KineticError::GeneralPosition { phi, detail: detail.into() }
}

/// 0 first, then a fixed low-discrepancy sequence of shifts.
fn start_candidates() -> impl Iterator<Item = f64> {
    std::iter::once(0.0).chain((1..=64).map(|k| (k as f64 * 0.618_033_988_749_894_9).fract() * QUARTER))
}

fn build_at(points: &PointSet, theta: f64, tol: &Tolerance) -> Result<VoronoiGraph, VdError> {
    if points.len() <= 30 {
        build_diagram_reference(points, theta, tol)
    } else {
        build_diagram_traced(points, theta, tol)
    }
}

/// The diagram at `theta` if no event lies within `window` of it.
fn regular_start(
    points: &PointSet,
    theta: f64,
    tol: &Tolerance,
    outer: &[f64],
    window: f64,
) -> Result<Option<VoronoiGraph>, KineticError> {
    if outer.iter().any(|&phi| cyclic_gap(phi, theta) < window) {
        return Ok(None);
    }
    let g = match build_at(points, theta, tol) {
        Ok(g) => g,
        Err(VdError::Geom(e)) => return Err(e.into()),
        Err(_) => return Ok(None),
    };
    for e in g.edges.values() {
        if !e.bounded || e.u.points().len() == 1 || e.v.points().len() == 1 {
            continue;
        }
        let k = e.u.union(&e.v)?;
        let f = SquareFamily::consistency(points, &k)?;
        if !f.roots_in(theta - window, theta + window).is_empty() {
            return Ok(None);
        }
    }
    Ok(Some(g))
}

pub fn init_state(points: &PointSet, config: &KineticConfig) -> Result<KineticState, KineticError> {
    let tol = config.tol.unwrap_or_else(|| Tolerance::for_points(points));
    let outer = enumerate_outer_align_events(points, &tol);
    let outer_phis: Vec<f64> = outer.iter().map(|e| e.phi).collect();
    let window = (1000.0 * tol.angle).max(1e-7);
    let (theta0, graph) = match config.theta0 {
        Some(t) => (t, build_at(points, t, &tol)?),
        None => {
            let mut found = None;
            for t in start_candidates() {
                if let Some(g) = regular_start(points, t, &tol, &outer_phis, window)? {
                    found = Some((t, g));
                    break;
                }
            }
            found.ok_or_else(|| gp(0.0, "no regular start orientation found"))?
        }
    };
    let mut st = KineticState {
        points: points.clone(),
        tol,
        theta0,
        theta_end: theta0 + QUARTER,
        theta_now: theta0,
        graph,
        queue: EventQueue::new(),
        faces: FaceLists::new(),
        families: HashMap::new(),
        check_hits: config.check_hits,
        events_processed: 0,
    };
    let regular: Vec<ContactType> =
        st.graph.finite_vertices().filter(|v| v.key.len() == 3).map(|v| v.key.clone()).collect();
    for k in regular {
        st.add_regular(&k)?;
    }
    let kes: Vec<ContactType> = st.graph.edges.keys().cloned().collect();
    for ke in kes {
        st.schedule(&ke, theta0)?;
    }
    for e in outer {
        let phi = if e.phi < theta0 { e.phi + QUARTER } else { e.phi };
        st.queue.push_align(e.p, e.q, phi, true);
    }
    Ok(st)
}

impl KineticState {
    fn margin(&self) -> f64 {
        10.0 * self.tol.angle
    }

    fn add_regular(&mut self, k: &ContactType) -> Result<(), KineticError> {
        let (fam, _) = SquareFamily::build(&self.points, k)?;
        self.families.insert(k.clone(), fam);
        self.faces.insert(k);
        Ok(())
    }

    fn remove_regular(&mut self, k: &ContactType) {
        self.families.remove(k);
        self.faces.remove(k);
    }

    fn schedule(&mut self, ke: &ContactType, after: f64) -> Result<(), KineticError> {
        let Some(e) = self.graph.edges.get(ke) else { return Ok(()) };
        if let Some(phi) = potential_edge_event(&self.points, e, after)? {
            if phi < self.theta_end {
                self.queue.push_edge(ke.clone(), phi);
            }
        }
        Ok(())
    }

    /// The current diagram with vertex positions evaluated at `theta_now`.
    pub fn snapshot(&self) -> Result<VoronoiGraph, KineticError> {
        let mut g = self.graph.clone();
        g.orientation = self.theta_now;
        for v in g.vertices.values_mut() {
            if !v.is_infinite() {
                *v = vertex_record(&self.points, &v.key, self.theta_now)?;
            }
        }
        Ok(g)
    }

    /// Vertices `v` of the face list of `pair` whose square at `phi` holds
    /// point `x` on its closed side `pair.side`.
    pub fn square_hit_by_point(&mut self, pair: ContactPair, x: u32, phi: f64) -> Result<Vec<ContactType>, KineticError> {
        let horiz = pair.side.is_horizontal();
        let theta = self.theta_now;
        let fams = &self.families;
        let pos = |s: FrameSquare| if horiz { s.cu } else { s.cv };
        self.faces.ensure_sorted(&pair, |k| {
            let s = fams[k].at(theta);
            (pos(s), s.r)
        });
        let list = self.faces.list(&pair);
        let (xu, xv) = self.points.frame(x, phi);
        let xc = if horiz { xu } else { xv };
        let eps = self.tol.len;
        let seg = |i: usize| {
            let s = fams[&list[i]].at(phi);
            (pos(s) - s.r, pos(s) + s.r)
        };
        let hits: Vec<ContactType> =
            covering_segments(list.len(), xc, eps, seg).into_iter().map(|i| list[i].clone()).collect();
        if self.check_hits {
            let scan: Vec<ContactType> = (0..list.len())
                .filter(|&i| {
                    let (a, b) = seg(i);
                    a <= xc + eps && xc - eps <= b
                })
                .map(|i| list[i].clone())
                .collect();
            if scan != hits {
                return Err(structure(phi, format!("face list of {pair} answers {hits:?}, scan gives {scan:?}")));
            }
        }
        Ok(hits)
    }

    /// Stapled 4-squares with staple `pq` at the alignment near `near`.
    fn align_squares(&mut self, p: u32, q: u32, near: f64) -> Result<Vec<ContactType>, KineticError> {
        let phi = unwrap_near(alignment_orientation(self.points.get(p), self.points.get(q))?.value(), near);
        let (up, vp) = self.points.frame(p, phi);
        let (uq, vq) = self.points.frame(q, phi);
        let horizontal = (vp - vq).abs() < (up - uq).abs();
        let sides = if horizontal { [Side::Bottom, Side::Top] } else { [Side::Left, Side::Right] };
        let mut out = Vec::new();
        for a in sides {
            for (x, y) in [(p, q), (q, p)] {
                for v in self.square_hit_by_point(ContactPair::new(x, a), y, phi)? {
                    if let Ok(k) = v.with(ContactPair::new(y, a)) {
                        if k.len() == 4 {
                            out.push(k);
                        }
                    }
                }
            }
        }
        // the squares with pq as a whole side, and the squares grown from
        // them keeping one staple point at a corner; the latter may have no
        // vertex before φ at all
        let (lo, hi) = match horizontal {
            true if up < uq => (p, q),
            false if vp < vq => (p, q),
            _ => (q, p),
        };
        use Side::*;
        let sides42 = if horizontal {
            [
                [(lo, Bottom), (lo, Left), (hi, Bottom), (hi, Right)],
                [(lo, Top), (lo, Left), (hi, Top), (hi, Right)],
            ]
        } else {
            [
                [(lo, Left), (lo, Bottom), (hi, Left), (hi, Top)],
                [(lo, Right), (lo, Bottom), (hi, Right), (hi, Top)],
            ]
        };
        let frame = self.points.frame_all(phi);
        let eps = self.tol.len;
        for pairs in sides42 {
            let k = ContactType::of(&pairs);
            let fs = vertex_square(&self.points, &k, phi)?;
            if fs.witness_inside(&frame, eps).is_some() {
                continue;
            }
            let got = fs.contacts(&frame, eps).map_err(|e| gp(phi, format!("{k}: {e}")))?;
            if got != k {
                continue;
            }
            out.push(k.clone());
            for he in incident_half_edges(&k) {
                if he.kappa_e.len() != 3 || he.growth != Growth::Outward {
                    continue;
                }
                let step =
                    trace_half_edge(&frame, &fs, &k, &he, eps).map_err(|e| gp(phi, format!("probe from {k}: {e}")))?;
                if let Some(s) = step {
                    if s.kappa.len() == 4 {
                        out.push(s.kappa);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Pop every event at the next degenerate orientation and find all
    /// 4-squares there. `None` once the quarter turn is done.
    pub fn collect_events_at(&mut self) -> Result<Option<(f64, Vec<(f64, Event)>, Vec<FoundSquare>)>, KineticError> {
        let phi0 = match self.queue.min_phi() {
            Some(p) if p < self.theta_end => p,
            _ => return Ok(None),
        };
        let popped = self.queue.pop_through(phi0 + self.tol.angle);
        let mut cands: BTreeSet<ContactType> = BTreeSet::new();
        let mut aligns: BTreeSet<(u32, u32)> = BTreeSet::new();
        for (_, ev) in &popped {
            match ev {
                Event::Edge(ke) => {
                    let e = self
                        .graph
                        .edges
                        .get(ke)
                        .ok_or_else(|| structure(phi0, format!("event for missing edge {ke}")))?;
                    let k = e.u.union(&e.v)?;
                    if let Some((_, a, b)) = k.staple() {
                        aligns.insert((a.min(b), a.max(b)));
                    }
                    cands.insert(k);
                }
                Event::Align { p, q, .. } => {
                    aligns.insert((*p, *q));
                }
            }
        }
        for &(p, q) in &aligns {
            let found = self.align_squares(p, q, phi0)?;
            if found.is_empty() {
                return Err(gp(phi0, format!("alignment of {p} and {q} has no empty square on it")));
            }
            cands.extend(found);
        }
        let eps = self.tol.len;
        let mut out = Vec::new();
        for k in cands {
            let phi = square_orientation(&self.points, &k, phi0)?;
            if (phi - phi0).abs() > self.margin() {
                return Err(gp(phi0, format!("{k} is realized at {phi}, apart from its event")));
            }
            let frame = self.points.frame_all(phi);
            let fs = vertex_square(&self.points, &k, phi)?;
            if let Some(w) = fs.witness_inside(&frame, eps) {
                return Err(gp(phi, format!("square {k} holds point {w}")));
            }
            let got = fs.contacts(&frame, eps).map_err(|e| gp(phi, format!("{k}: {e}")))?;
            if got != k || fs.r <= eps {
                return Err(gp(phi, format!("square {k} has contacts {got}")));
            }
            out.push(FoundSquare { kappa: k, phi, square: fs });
        }
        Ok(Some((phi0, popped, out)))
    }

    /// Replace `V−(φ)` by `V+(φ)` and re-link the edges around them.
    pub fn apply_update(&mut self, phi: f64, squares: &[FoundSquare]) -> Result<TraceEvent, KineticError> {
        let mut records = Vec::new();
        let (mut vminus, mut vplus) = (BTreeSet::new(), BTreeSet::new());
        for s in squares {
            let (before, after) = transition_sets(&self.points, &s.kappa, s.phi)?;
            vminus.extend(before.iter().cloned());
            vplus.extend(after.iter().cloned());
            records.push(FourSquareRecord {
                square: s.square.to_square(s.phi),
                contact_type: s.kappa.clone(),
                four_type: classify_four_square(&s.kappa)?,
                phi: s.phi,
                vanishing: before,
                appearing: after,
            });
        }
        let mut removed_edges: Vec<EdgeKey> = Vec::new();
        let mut nbrs: BTreeSet<ContactType> = BTreeSet::new();
        let drop_edge = |st: &mut Self, ke: &ContactType, removed: &mut Vec<EdgeKey>| {
            if let Some(e) = st.graph.edges.remove(ke) {
                st.queue.remove_edge(ke);
                removed.push(e.key());
                Some(e)
            } else {
                None
            }
        };
        for k in &vminus {
            if !self.graph.vertices.contains_key(k) {
                return Err(structure(phi, format!("vanishing vertex {k} is not in the diagram")));
            }
        }
        for k in &vminus {
            // the star of a vertex names all its edges
            let inc: Vec<ContactType> = incident_half_edges(k)
                .into_iter()
                .map(|h| h.kappa_e)
                .filter(|ke| self.graph.edges.get(ke).is_some_and(|e| e.u == *k || e.v == *k))
                .collect();
            for ke in inc {
                if let Some(e) = drop_edge(self, &ke, &mut removed_edges) {
                    let o = e.other(k).clone();
                    if !vminus.contains(&o) {
                        nbrs.insert(o);
                    }
                }
            }
            self.graph.vertices.remove(k);
            self.remove_regular(k);
        }
        let after = phi + self.margin();
        for k in &vplus {
            if self.graph.vertices.contains_key(k) {
                return Err(structure(phi, format!("appearing vertex {k} already exists")));
            }
            self.graph.vertices.insert(k.clone(), vertex_record(&self.points, k, after)?);
            self.add_regular(k)?;
        }
        // an unbounded edge whose type a new vertex claims now ends there
        for k in &vplus {
            for he in incident_half_edges(k) {
                if let Some(e) = self.graph.edges.get(&he.kappa_e) {
                    if e.bounded {
                        return Err(structure(phi, format!("{k} claims bounded edge {}", he.kappa_e)));
                    }
                    let e = drop_edge(self, &he.kappa_e.clone(), &mut removed_edges).expect("present");
                    nbrs.insert(e.v.clone());
                }
            }
        }
        nbrs.remove(&ContactType::empty());
        let mut free: BTreeMap<ContactType, Vec<(ContactType, HalfEdge)>> = BTreeMap::new();
        for k in vplus.iter().chain(nbrs.iter()) {
            if !self.graph.vertices.contains_key(k) {
                continue;
            }
            for he in incident_half_edges(k) {
                if !self.graph.edges.contains_key(&he.kappa_e) {
                    free.entry(he.kappa_e.clone()).or_default().push((k.clone(), he));
                }
            }
        }
        let mut added_edges = Vec::new();
        for (ke, ends) in free {
            let e = match ends.as_slice() {
                [(a, h), (b, _)] => EdgeRecord::new(a.clone(), b.clone(), ke.clone(), h.kind, h.growth),
                [(a, h)] => EdgeRecord::new(a.clone(), ContactType::empty(), ke.clone(), h.kind, h.growth),
                _ => return Err(structure(phi, format!("edge {ke} claimed by {} vertices", ends.len()))),
            };
            added_edges.push(e.key());
            self.graph.edges.insert(ke.clone(), e);
            self.schedule(&ke, after)?;
        }
        if self.graph.edges.values().any(|e| !e.bounded) {
            self.graph.vertices.entry(ContactType::empty()).or_insert_with(VertexRecord::infinity);
        }
        // edges that were removed and re-added unchanged are not changes
        let added_set: BTreeSet<EdgeKey> = added_edges.iter().cloned().collect();
        let removed_set: BTreeSet<EdgeKey> = removed_edges.iter().cloned().collect();
        removed_edges.retain(|k| !added_set.contains(k));
        added_edges.retain(|k| !removed_set.contains(k));
        removed_edges.sort();
        added_edges.sort();

        self.events_processed += 1;
        let next = self.queue.min_phi().unwrap_or(self.theta_end).min(self.theta_end);
        self.theta_now = 0.5 * (phi + next);
        self.graph.orientation = self.theta_now;
        Ok(TraceEvent {
            phi,
            squares: records,
            removed_vertices: vminus.into_iter().collect(),
            added_vertices: vplus.into_iter().collect(),
            removed_edges,
            added_edges,
        })
    }

    /// Process the next degenerate orientation; `None` when done.
    pub fn step(&mut self) -> Result<Option<TraceEvent>, KineticError> {
        let Some((phi, _, squares)) = self.collect_events_at()? else { return Ok(None) };
        self.apply_update(phi, &squares).map(Some)
    }

    /// Compare with the reference diagram at `theta_now` and audit the queue.
    pub fn check_against_reference(&self) -> Result<(), KineticError> {
        let phi = self.theta_now;
        let r = build_diagram_reference(&self.points, phi, &self.tol)?;
        let (a, b) = (self.graph.vertex_keys(), r.vertex_keys());
        if a != b {
            let extra: Vec<_> = a.difference(&b).map(|k| k.to_string()).collect();
            let missing: Vec<_> = b.difference(&a).map(|k| k.to_string()).collect();
            return Err(structure(phi, format!("vertices differ: extra {extra:?}, missing {missing:?}")));
        }
        let (a, b) = (self.graph.edge_keys(), r.edge_keys());
        if a != b {
            let extra: Vec<_> = a.difference(&b).map(|k| format!("{}-{} {}", k.0, k.1, k.2)).collect();
            let missing: Vec<_> = b.difference(&a).map(|k| format!("{}-{} {}", k.0, k.1, k.2)).collect();
            return Err(structure(phi, format!("edges differ: extra {extra:?}, missing {missing:?}")));
        }
        self.audit_queue()
    }

    /// Every bounded edge has exactly its potential event queued.
    pub fn audit_queue(&self) -> Result<(), KineticError> {
        for e in self.graph.edges.values() {
            let want = potential_edge_event(&self.points, e, self.theta_now)?.filter(|&p| p < self.theta_end);
            let have = self.queue.edge_event(&e.kappa_e);
            let ok = match (want, have) {
                (None, None) => true,
                (Some(a), Some(b)) => (a - b).abs() <= 1e-9,
                _ => false,
            };
            if !ok {
                return Err(structure(
                    self.theta_now,
                    format!("edge {} should be queued at {want:?}, found {have:?}", e.kappa_e),
                ));
            }
        }
        Ok(())
    }
}

fn vertex_record(points: &PointSet, k: &ContactType, theta: f64) -> Result<VertexRecord, KineticError> {
    let fs = vertex_square(points, k, theta)?;
    Ok(VertexRecord {
        key: k.clone(),
        embedding: Some(fs.to_square(theta).center),
        radius: fs.r,
        vtype: Some(classify_vertex(k)?),
    })
}

fn canonical_event(ev: TraceEvent) -> TraceEvent {
    if ev.phi >= QUARTER {
        ev.shifted_back()
    } else {
        ev
    }
}

pub fn run_rotation(points: &PointSet) -> Result<RotationTrace, KineticError> {
    run_rotation_with(points, &KineticConfig::default())
}

/// The full quarter turn. Labels in the trace are canonical: an event past
/// π/2 is reported at `φ − π/2` with sides shifted back by one.
pub fn run_rotation_with(points: &PointSet, config: &KineticConfig) -> Result<RotationTrace, KineticError> {
    let mut st = init_state(points, config)?;
    let start: BTreeSet<ContactType> = st.graph.vertex_keys();
    // the trace is reported over [0, π/2), so it starts from the diagram
    // just after 0, which the sweep passes at π/2
    let mut at_zero: Option<(BTreeSet<ContactType>, BTreeSet<EdgeKey>)> = None;
    let snap = |st: &KineticState| {
        (
            st.graph.vertex_keys().iter().map(|k| k.shifted(-1)).collect(),
            st.graph.edge_keys().iter().map(|k| shift_edge_key(k, -1)).collect(),
        )
    };
    let mut events = Vec::new();
    loop {
        if at_zero.is_none() && st.queue.min_phi().map_or(true, |p| p >= QUARTER) {
            at_zero = Some(snap(&st));
        }
        let Some(ev) = st.step()? else { break };
        events.push(canonical_event(ev));
        if let Some(k) = config.paranoid_every {
            if k > 0 && st.events_processed % k == 0 {
                st.check_against_reference()?;
            }
        }
    }
    let end: BTreeSet<ContactType> = st.graph.vertex_keys().iter().map(|k| k.shifted(-1)).collect();
    if end != start {
        return Err(structure(st.theta_end, "diagram after a quarter turn differs from the start"));
    }
    let (v0, e0) = at_zero.unwrap_or_else(|| snap(&st));
    events.sort_by(|a, b| a.phi.total_cmp(&b.phi));
    let (initial_vertices, initial_edges) = (v0.into_iter().collect(), e0.into_iter().collect());
    Ok(RotationTrace { theta0: st.theta0, initial_vertices, initial_edges, events })
}
