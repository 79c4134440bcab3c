use quadrot_geom::{FourSquareType, PointSet, QUARTER};
use quadrot_kinetic::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::FRAC_PI_4;

fn random_points(seed: u64, n: usize) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen::<f64>(), rng.gen::<f64>())).collect();
    PointSet::from_xy(&c).unwrap()
}

#[test]
fn two_points() {
    let ps = PointSet::from_xy(&[(0.0, 0.0), (2.0, 0.0)]).unwrap();
    let t = run_rotation_with(&ps, &KineticConfig::paranoid()).unwrap();
    let counts = t.type_counts();
    assert_eq!(counts.get(&FourSquareType::NonStapled42), Some(&1));
    assert_eq!(counts.get(&FourSquareType::Stapled42), Some(&2));
    assert_eq!(t.s4(), 3);
    let d = t.squares().find(|s| s.four_type == FourSquareType::NonStapled42).unwrap();
    assert!((d.phi - FRAC_PI_4).abs() < 1e-12);
    assert!((d.square.center.0 - 1.0).abs() < 1e-12 && d.square.center.1.abs() < 1e-12);
    assert!((d.square.radius - 0.5f64.sqrt()).abs() < 1e-12);
    let g = build_square_adjacency_graph(&t).unwrap();
    assert_eq!(g.component_count(), 1);
    for (node, deg) in g.nodes.iter().zip(g.degrees()) {
        assert_eq!(deg, if node.four_type.is_stapled() { 2 } else { 4 });
    }
}

#[test]
fn random_small_sets_match_reference_after_every_event() {
    for seed in 0..25 {
        let n = 3 + (seed as usize % 8);
        let ps = random_points(seed, n);
        let t = run_rotation_with(&ps, &KineticConfig::paranoid())
            .unwrap_or_else(|e| panic!("seed {seed} n {n}: {e}"));
        assert!(t.s4() > 0);
        let g = build_square_adjacency_graph(&t).unwrap();
        for (node, deg) in g.nodes.iter().zip(g.degrees()) {
            assert_eq!(deg, if node.four_type.is_stapled() { 2 } else { 4 }, "seed {seed}");
        }
        for ev in &t.events {
            assert!((0.0..QUARTER).contains(&ev.phi));
        }
    }
}
