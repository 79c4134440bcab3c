use quadrot_geom::{ContactType, FourSquareType, PointSet, Side, QUARTER};
use quadrot_kinetic::*;
use quadrot_vd::vertex_square;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::FRAC_PI_4;
use Side::*;

fn random_points(seed: u64, n: usize) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen::<f64>(), rng.gen::<f64>())).collect();
    PointSet::from_xy(&c).unwrap()
}

#[test]
fn diagonal_square_splits_two_and_two() {
    // p top-right, q bottom-left of the square at π/4
    let ps = PointSet::from_xy(&[(0.0, 0.0), (0.0, -2.0)]).unwrap();
    let k = ContactType::of(&[(0, Top), (0, Right), (1, Bottom), (1, Left)]);
    let (before, after) = transition_sets(&ps, &k, FRAC_PI_4).unwrap();
    let mut want = vec![
        ContactType::of(&[(0, Top), (0, Right), (1, Bottom)]),
        ContactType::of(&[(0, Top), (1, Left), (1, Bottom)]),
    ];
    want.sort();
    assert_eq!(before, want);
    assert_eq!(after.len(), 2);
    assert!(after.iter().all(|k| !want.contains(k)));
}

#[test]
fn stapled_splits() {
    let ps = PointSet::from_xy(&[(0.0, 0.0), (2.0, 0.0)]).unwrap();
    let k = ContactType::of(&[(0, Bottom), (0, Left), (1, Bottom), (1, Right)]);
    let (b, a) = transition_sets(&ps, &k, 0.0).unwrap();
    assert_eq!((b.len(), a.len()), (1, 1));
    let site = ContactType::of(&[(0, Top), (0, Right), (0, Bottom), (0, Left)]);
    assert!(transition_sets(&ps, &site, 0.0).is_err());
}

#[test]
fn split_table_holds_on_random_runs() {
    let mut seen_zero_two = false;
    for seed in 0..15 {
        let t = run_rotation(&random_points(seed, 9)).unwrap();
        for s in t.squares() {
            let (b, a) = (s.vanishing.len(), s.appearing.len());
            match s.four_type {
                FourSquareType::Stapled43b | FourSquareType::Stapled43c => {
                    assert!(matches!((b, a), (0, 2) | (2, 0)), "{} {b}/{a}", s.contact_type);
                    seen_zero_two |= b == 0;
                }
                t if t.is_stapled() => assert_eq!((b, a), (1, 1)),
                _ => assert_eq!((b, a), (2, 2)),
            }
        }
    }
    assert!(seen_zero_two);
}

/// Orientation where the two end squares of an edge meet, by scanning the
/// center distance and bisecting on the sign of the consistency slack.
fn scan_collapse(ps: &PointSet, u: &ContactType, v: &ContactType, from: f64) -> Option<f64> {
    let dist = |t: f64| {
        let a = vertex_square(ps, u, t).unwrap();
        let b = vertex_square(ps, v, t).unwrap();
        (a.cu - b.cu).abs().max((a.cv - b.cv).abs()).max((a.r - b.r).abs())
    };
    let step = 1e-5;
    let mut t = from + step;
    let mut best: Option<(f64, f64)> = None;
    while t < from + QUARTER {
        let d = dist(t);
        if d < 2e-5 && best.map_or(true, |b| d < b.1) {
            best = Some((t, d));
        }
        if best.is_some() && d > 1e-3 {
            break;
        }
        t += step;
    }
    let (t0, _) = best?;
    // golden-section on the distance around the best sample
    let (mut a, mut b) = (t0 - step, t0 + step);
    for _ in 0..200 {
        let m1 = a + (b - a) * 0.382;
        let m2 = a + (b - a) * 0.618;
        if dist(m1) < dist(m2) {
            b = m2;
        } else {
            a = m1;
        }
    }
    Some(0.5 * (a + b))
}

#[test]
fn edge_events_match_dense_scan() {
    let mut checked = 0;
    for seed in 0..4 {
        let ps = random_points(seed + 40, 7);
        let st = init_state(&ps, &KineticConfig::default()).unwrap();
        for e in st.graph.edges.values().filter(|e| e.bounded) {
            let got = potential_edge_event(&ps, e, st.theta0).unwrap();
            if e.u.points().len() == 1 || e.v.points().len() == 1 {
                assert_eq!(got, None);
                continue;
            }
            let scan = scan_collapse(&ps, &e.u, &e.v, st.theta0);
            match (got, scan) {
                (Some(a), Some(b)) => assert!((a - b).abs() < 1e-8, "{a} vs {b}"),
                (None, None) => {}
                (a, b) => panic!("edge {}: solver {a:?}, scan {b:?}", e.kappa_e),
            }
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn initial_queue() {
    let one = PointSet::from_xy(&[(0.3, 0.4)]).unwrap();
    let st = init_state(&one, &KineticConfig::default()).unwrap();
    assert!(st.queue.iter().all(|(_, e)| !matches!(e, Event::Edge(_))));

    let ps = random_points(7, 8);
    let st = init_state(&ps, &KineticConfig::default()).unwrap();
    let collapsible = st
        .graph
        .edges
        .values()
        .filter(|e| potential_edge_event(&ps, e, st.theta0).unwrap().is_some_and(|p| p < st.theta_end))
        .count();
    let outer = quadrot_och::enumerate_outer_align_events(&ps, &st.tol).len();
    assert_eq!(st.queue.len(), collapsible + outer);
    st.audit_queue().unwrap();
}

#[test]
fn face_list_order_is_stable_between_events() {
    let ps = random_points(3, 10);
    let mut st = init_state(&ps, &KineticConfig { check_hits: true, ..Default::default() }).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    while st.step().unwrap().is_some() {
        let next = st.queue.min_phi().unwrap_or(st.theta_end).min(st.theta_end);
        let lo = 2.0 * st.theta_now - next;
        let probe = lo + (next - lo) * rng.gen_range(0.05..0.95);
        for k in st.graph.finite_vertices().filter(|v| v.key.len() == 3).map(|v| v.key.clone()).collect::<Vec<_>>() {
            for p in k.pairs() {
                let list = st.faces.list(p).to_vec();
                let key = |t: f64| {
                    let mut l = list.clone();
                    l.sort_by(|a, b| {
                        let (x, y) = (vertex_square(&ps, a, t).unwrap(), vertex_square(&ps, b, t).unwrap());
                        let (px, py) = if p.side.is_horizontal() { (x.cu, y.cu) } else { (x.cv, y.cv) };
                        px.total_cmp(&py).then(x.r.total_cmp(&y.r)).then(a.cmp(b))
                    });
                    l
                };
                assert_eq!(key(st.theta_now), key(probe));
            }
        }
    }
}

#[test]
fn hit_queries_match_scan_on_full_runs() {
    let cfg = KineticConfig { check_hits: true, ..Default::default() };
    for seed in 0..10 {
        run_rotation_with(&random_points(seed + 100, 11), &cfg).unwrap();
    }
}

#[test]
fn jsonl_has_one_line_per_square_and_delta() {
    let ps = random_points(5, 6);
    let t = run_rotation(&ps).unwrap();
    let mut buf = Vec::new();
    write_jsonl(&t, &ps, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().count(), t.s4() + t.events.len());
    let first = t.squares().next().unwrap();
    let line = text.lines().next().unwrap();
    let phi: f64 = line.split("\"phi\":").nth(1).unwrap().split(',').next().unwrap().parse().unwrap();
    assert_eq!(phi.to_bits(), first.phi.to_bits());
}
