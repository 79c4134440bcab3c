use proptest::prelude::*;
use quadrot_apps::*;
use quadrot_geom::{canonical, contact_type_of, PointSet, Square, Orientation, SquareFamily, QUARTER};
use quadrot_kinetic::{run_rotation, RotationTrace};
use quadrot_testkit::{gen_random_general, largest_square_at, refined_sweep_annulus, refined_sweep_largest_square, AnnulusObjective, SquareVariant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup(n: usize, seed: u64) -> (PointSet, RotationTrace, Vec<MesClass>) {
    let ps = gen_random_general(n, seed, 0.0).unwrap();
    let t = run_rotation(&ps).unwrap();
    let c = mes_classes(&t).unwrap();
    (ps, t, c)
}

#[test]
fn vertex_classes_are_valid_inside_their_intervals() {
    for seed in 0..6 {
        let (ps, t, classes) = setup(4 + seed as usize, seed);
        let eps = 1e-9 * ps.scale();
        let phis: Vec<f64> = t.squares().map(|s| s.phi).collect();
        for c in &classes {
            let ClassKey::Vertex(k) = &c.key else { continue };
            assert!(c.end > c.start);
            for end in [c.start, c.end] {
                assert!(phis.iter().any(|&p| (canonical(end) - p).abs() < 1e-12 || (canonical(end) - p).abs() > QUARTER - 1e-12));
            }
            let (f, _) = SquareFamily::build(&ps, k).unwrap();
            for j in 1..20 {
                let th = c.start + (c.end - c.start) * j as f64 / 20.0;
                let sq = f.at(th).to_square(th);
                // labels are those of the raw frame at th
                let got = contact_type_of(&Square { orientation: Orientation::new(th), ..sq }, &ps, eps).unwrap();
                let want = k.shifted(-((th / QUARTER).floor() as i32));
                assert_eq!(got, want, "class {k} at {th}");
            }
        }
    }
}

#[test]
fn class_count_is_linear_in_s4() {
    for seed in 0..5 {
        let (_, t, classes) = setup(6 + 2 * seed as usize, 40 + seed);
        assert!(classes.len() <= 12 * t.s4() + 12, "{} classes for s4 {}", classes.len(), t.s4());
    }
}

#[test]
fn two_points_classes() {
    let ps = PointSet::from_xy(&[(0.0, 0.0), (2.0, 0.0)]).unwrap();
    let t = run_rotation(&ps).unwrap();
    let classes = mes_classes(&t).unwrap();
    let vert: Vec<_> = classes.iter().filter(|c| matches!(c.key, ClassKey::Vertex(_))).collect();
    // the diagonal square ends two lifetimes and starts two, each stapled
    // one ends one and starts one: (4 + 2 + 2) / 2 lifetimes
    assert_eq!(vert.len(), 4);
    for c in &vert {
        assert!(c.end - c.start > 0.0);
    }
}

#[test]
fn box_events_of_square_and_pair() {
    let sq = PointSet::from_xy(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap();
    assert_eq!(bounding_box_events(&sq).unwrap(), vec![0.0; 4]);
    let pair = PointSet::from_xy(&[(0.0, 0.0), (3.0, 1.0)]).unwrap();
    let ev = bounding_box_events(&pair).unwrap();
    assert_eq!(ev.len(), 1);
    assert!((ev[0] - canonical(1f64.atan2(3.0))).abs() < 1e-15);
}

#[test]
fn box_contacts_constant_between_events() {
    let ps = gen_random_general(20, 7, 0.0).unwrap();
    let mut ev = bounding_box_events(&ps).unwrap();
    ev.dedup();
    let mut cuts = ev.clone();
    cuts.push(ev[0] + QUARTER);
    for w in cuts.windows(2) {
        let c0 = quadrot_apps::classes::box_contacts(&ps, w[0] + 1e-9);
        for k in 1..50 {
            let th = w[0] + (w[1] - w[0]) * k as f64 / 50.0;
            assert_eq!(quadrot_apps::classes::box_contacts(&ps, th), c0);
        }
    }
}

#[test]
fn boxed_count_matches_double_loop() {
    let (ps, _, classes) = setup(10, 3);
    let ev = bounding_box_events(&ps).unwrap();
    let boxed = boxed_mes_classes(&classes, &ev);
    let mut u = ev.clone();
    u.dedup();
    let mut count = 0;
    for c in classes.iter().filter(|c| matches!(c.key, ClassKey::Edge(_))) {
        for k in -1..3 {
            for i in 0..u.len() {
                let hi = u[i] + k as f64 * QUARTER;
                let lo = if i == 0 { u[u.len() - 1] + (k - 1) as f64 * QUARTER } else { u[i - 1] + k as f64 * QUARTER };
                if hi.min(c.end) > lo.max(c.start) {
                    count += 1;
                }
            }
        }
    }
    assert_eq!(boxed.len(), count);
    let single = boxed_mes_classes(&classes, &[]);
    assert_eq!(single.len(), classes.iter().filter(|c| matches!(c.key, ClassKey::Edge(_))).count());
}

#[test]
fn pinned_optimum_matches_sweep() {
    for seed in 0..3 {
        let (ps, _, classes) = setup(6, 60 + seed);
        let got = largest_empty_square_pinned(&ps, &classes).unwrap().unwrap();
        let want = refined_sweep_largest_square(&ps, 2e-3, SquareVariant::Pinned).unwrap();
        assert!((got.radius() - want.value).abs() <= 1e-6 * want.value, "{} vs {}", got.radius(), want.value);
        assert!(got.radius() >= largest_square_at(&ps, 0.0, SquareVariant::Pinned).unwrap() - 1e-12);
        // the witness is empty
        let eps = 1e-9 * ps.scale();
        assert!(quadrot_geom::is_empty(&got.square, &ps, eps));
    }
}

#[test]
fn in_box_optimum_matches_sweep() {
    for seed in 0..3 {
        let (ps, _, classes) = setup(6, 70 + seed);
        let got = largest_empty_square_in_box(&ps, &classes).unwrap().unwrap();
        let want = refined_sweep_largest_square(&ps, 2e-3, SquareVariant::InBox).unwrap();
        assert!((got.radius() - want.value).abs() <= 1e-6 * want.value, "{} vs {}", got.radius(), want.value);
        let eps = 1e-9 * ps.scale();
        assert!(quadrot_geom::is_empty(&got.square, &ps, eps));
        let outer = annulus_at(&ps, got.phi()).outer;
        assert!(got.radius() <= outer + 1e-12);
    }
}

#[test]
fn envelope_matches_direct_class_maximum() {
    let (ps, _, classes) = setup(8, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for v in [Variant::Pinned, Variant::InBox] {
        let curves = class_curves(&ps, &classes, v).unwrap();
        let env = radius_envelope(&ps, &classes, v).unwrap();
        for _ in 0..300 {
            let th: f64 = rng.gen_range(0.0..QUARTER);
            let direct = curves.iter().filter(|p| p.lo <= th && th <= p.hi).map(|p| p.eval(th)).fold(f64::NEG_INFINITY, f64::max);
            assert!((env.query(th).unwrap() - direct).abs() <= 1e-9, "{v:?} at {th}");
        }
        for k in 0..25 {
            let th = 0.013 + k as f64 * 0.061;
            let want = largest_square_at(&ps, th, match v {
                Variant::Pinned => SquareVariant::Pinned,
                Variant::InBox => SquareVariant::InBox,
            })
            .unwrap();
            assert!((env.query(th).unwrap() - want).abs() <= 1e-9, "{v:?} at {th}: {} vs {want}", env.query(th).unwrap());
        }
    }
}

#[test]
fn envelope_at_a_breakpoint_takes_the_larger_limit() {
    let (ps, _, classes) = setup(7, 8);
    let env = radius_envelope(&ps, &classes, Variant::Pinned).unwrap();
    for w in env.pieces.windows(2) {
        if w[0].hi == w[1].lo {
            let t = w[1].lo;
            let want = w[0].eval(t).max(w[1].eval(t));
            assert!((env.query(t).unwrap() - want).abs() < 1e-15);
        }
    }
}

#[test]
fn centered_radius_examples() {
    let one = PointSet::from_xy(&[(0.0, 0.0)]).unwrap();
    assert_eq!(largest_centered_at(&one, (3.0, 4.0), 0.0), 4.0);
    let ps = gen_random_general(12, 2, 0.0).unwrap();
    let p = ps.get(3);
    assert_eq!(largest_centered_at(&ps, (p.x, p.y), 0.4), 0.0);
    let q = quadrot_geom::Point::new(-1, 0.3, 0.6);
    let want = ps.iter().map(|p| quadrot_geom::dist_linf_rotated(p, &q, 0.7)).fold(f64::INFINITY, f64::min);
    assert!((largest_centered_at(&ps, (0.3, 0.6), 0.7) - want).abs() < 1e-15);
}

#[test]
fn unit_square_annulus_has_zero_width() {
    let ps = PointSet::from_xy(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]).unwrap();
    let a = min_annulus_at_box_events(&ps, Objective::Width).unwrap();
    assert_eq!(a.width, 0.0);
    assert!(a.is_feasible(&ps, 0.0));
}

#[test]
fn annulus_matches_sweep_and_is_feasible() {
    for seed in 0..3 {
        let (ps, _, classes) = setup(6, 80 + seed);
        for (o, so) in [(Objective::Width, AnnulusObjective::Width), (Objective::Area, AnnulusObjective::Area)] {
            let got = min_annulus(&ps, &classes, o).unwrap();
            assert!(got.is_feasible(&ps, 1e-9 * ps.scale()), "{got:?}");
            let want = refined_sweep_annulus(&ps, 2e-3, so).unwrap().objective(so);
            assert!((got.value(o) - want).abs() <= 1e-6 * want.max(1e-3), "{o:?}: {} vs {want}", got.value(o));
            assert!(got.value(o) <= annulus_at(&ps, 0.0).value(o) + 1e-12);
            assert!((got.width - (got.outer - got.inner)).abs() == 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn envelope_dominates_every_class_curve(seed in 0u64..1000, n in 3usize..8) {
        let (ps, _, classes) = setup(n, seed);
        let curves = class_curves(&ps, &classes, Variant::Pinned).unwrap();
        let env = radius_envelope(&ps, &classes, Variant::Pinned).unwrap();
        for c in &curves {
            for k in 0..=8 {
                let th = c.lo + (c.hi - c.lo) * k as f64 / 8.0;
                prop_assert!(env.query(th).unwrap() >= c.eval(th) - 1e-12);
            }
        }
    }
}
