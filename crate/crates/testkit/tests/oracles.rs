use quadrot_geom::{FourSquareType, PointSet, Tolerance};
use quadrot_kinetic::{run_rotation, run_rotation_with, KineticConfig};
use quadrot_testkit::*;
use std::f64::consts::FRAC_PI_4;

fn brute(ps: &PointSet) -> Vec<OracleSquare> {
    brute_force_four_squares(ps, &Tolerance::for_points(ps)).unwrap()
}

#[test]
fn two_points_give_three_squares() {
    let ps = PointSet::from_xy(&[(0.0, 0.0), (2.0, 0.0)]).unwrap();
    let b = brute(&ps);
    assert_eq!(b.len(), 3);
    let diag: Vec<_> = b.iter().filter(|s| s.four_type == FourSquareType::NonStapled42).collect();
    assert_eq!(diag.len(), 1);
    assert!((diag[0].phi - FRAC_PI_4).abs() < 1e-12);
    assert!((diag[0].radius - 0.5f64.sqrt()).abs() < 1e-12);
    assert_eq!(b.iter().filter(|s| s.four_type == FourSquareType::Stapled42).count(), 2);
}

#[test]
fn kinetic_matches_brute_force_on_random_sets() {
    for seed in 0..12 {
        let n = 4 + (seed as usize % 7);
        let ps = gen_random_general(n, seed, 0.0).unwrap();
        let t = run_rotation(&ps).unwrap();
        let rep = compare_traces(&t, &brute(&ps), ps.scale());
        assert!(rep.is_equivalent(), "seed {seed}: {rep}");
        assert!(rep.max_phi_err < 1e-8 && rep.max_center_err < 1e-8 && rep.max_radius_err < 1e-8, "{rep}");
    }
}

#[test]
fn dropped_record_is_reported() {
    let ps = gen_random_general(6, 3, 0.0).unwrap();
    let mut t = run_rotation(&ps).unwrap();
    let ev = t.events.iter_mut().find(|e| !e.squares.is_empty()).unwrap();
    let gone = ev.squares.remove(0).contact_type;
    let rep = compare_traces(&t, &brute(&ps), 1.0);
    assert_eq!(rep.missing, vec![gone]);
    assert!(rep.extra.is_empty());
}

#[test]
fn identical_inputs_give_empty_diff() {
    let ps = gen_random_general(5, 9, 0.0).unwrap();
    let t = run_rotation(&ps).unwrap();
    let rep = compare_traces(&t, &brute(&ps), 1.0);
    assert!(rep.is_equivalent());
    assert_eq!(rep.matched, t.s4());
}

#[test]
fn quadratic_family_is_on_the_unit_circle() {
    let ps = gen_quadratic_family(4, 0.1).unwrap();
    assert_eq!(ps.len(), 4);
    for p in ps.iter() {
        assert!((p.x.hypot(p.y) - 1.0).abs() < 1e-12);
    }
    assert!(gen_quadratic_family(5, 0.1).is_err());
    assert!(gen_quadratic_family(6, 0.0).is_err());
}

#[test]
fn perturbed_quadratic_family_is_in_general_position() {
    let ps = perturb(&gen_quadratic_family(12, 0.1).unwrap(), 1e-6, 1).unwrap();
    assert!(quadrot_geom::validate_general_position(&ps, &Tolerance::for_points(&ps)).is_empty());
}

#[test]
fn linear_family_alternates_in_a_thin_band() {
    let eps = 0.01;
    let ps = gen_linear_family(6, eps, 10.0).unwrap();
    for (i, p) in ps.iter().enumerate() {
        assert!(p.y.abs() <= eps / 2.0);
        assert_eq!(p.y > 0.0, i % 2 == 0);
        assert!((p.x - 10.0 * (i + 1) as f64).abs() < 1e-12);
    }
}

#[test]
fn linear_family_has_only_local_squares() {
    let ps = gen_linear_family(10, 0.01, 10.0).unwrap();
    let b = brute(&ps);
    assert!(b.iter().all(|s| s.four_type != FourSquareType::NonStapled44));
    for s in &b {
        let pts = s.contact_type.points();
        let span = pts.iter().max().unwrap() - pts.iter().min().unwrap();
        assert!(span < 3, "{} spans {span}", s.contact_type);
    }
}

#[test]
fn random_sets_are_deterministic_and_valid() {
    assert_eq!(gen_random_general(10, 5, 1e-9).unwrap(), gen_random_general(10, 5, 1e-9).unwrap());
    for seed in 0..100 {
        gen_random_general(10, seed, 0.0).unwrap();
    }
}

#[test]
fn lattice_fails_validation() {
    let ps = lattice(3).unwrap();
    assert!(!quadrot_geom::validate_general_position(&ps, &Tolerance::for_points(&ps)).is_empty());
    assert!(brute_force_four_squares(&ps, &Tolerance::for_points(&ps)).is_err() || run_rotation(&ps).is_err());
}

#[test]
fn lower_bound_counts_on_random_sets() {
    for seed in 0..10 {
        let n = 3 + seed as usize;
        let ps = gen_random_general(n, 100 + seed, 0.0).unwrap();
        let b = brute(&ps);
        let s42 = b.iter().filter(|s| s.four_type.points() == 2).count();
        let s43 = b.iter().filter(|s| s.four_type.points() == 3).count();
        assert!(2 * s42 >= n && s43 >= 1, "n={n}: s42={s42} s43={s43}");
    }
}

#[test]
fn grid_halving_never_lowers_the_sweep() {
    let ps = gen_random_general(5, 2, 0.0).unwrap();
    for v in [SquareVariant::Pinned, SquareVariant::InBox] {
        let a = dense_sweep_largest_square(&ps, 0.02, v).unwrap().value;
        let b = dense_sweep_largest_square(&ps, 0.01, v).unwrap().value;
        assert!(b >= a, "{v:?}: {b} < {a}");
    }
}

#[test]
fn in_box_answer_fits_the_box() {
    let ps = gen_random_general(6, 4, 0.0).unwrap();
    let a = refined_sweep_largest_square(&ps, 0.01, SquareVariant::InBox).unwrap();
    let s = annulus_at(&ps, a.theta);
    assert!(a.value <= s.outer + 1e-12);
    assert!(a.value > 0.0);
}

#[test]
fn unit_square_corners_have_zero_width_annulus() {
    let ps = PointSet::from_xy(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap();
    let s = annulus_at(&ps, 0.0);
    assert_eq!(s.width(), 0.0);
    assert_eq!(s.center, (0.5, 0.5));
    assert_eq!(dense_sweep_annulus(&ps, 0.01, AnnulusObjective::Width).unwrap().width(), 0.0);
}

#[test]
fn annulus_samples_are_feasible() {
    let ps = gen_random_general(8, 11, 0.0).unwrap();
    for k in 0..40 {
        let s = annulus_at(&ps, k as f64 * 0.037);
        let (sn, c) = s.theta.sin_cos();
        for p in ps.iter() {
            let (dx, dy) = (p.x - s.center.0, p.y - s.center.1);
            let d = (dx * c + dy * sn).abs().max((-dx * sn + dy * c).abs());
            assert!(d <= s.outer + 1e-12 && d >= s.inner - 1e-12);
        }
    }
}

#[test]
fn paranoid_run_agrees_with_brute_force() {
    let ps = gen_random_general(7, 21, 0.0).unwrap();
    let t = run_rotation_with(&ps, &KineticConfig::paranoid()).unwrap();
    assert!(compare_traces(&t, &brute(&ps), 1.0).is_equivalent());
}

#[test]
fn five_point_box_at_zero_fits_radius_one() {
    let ps = PointSet::from_xy(&[(0.0, 0.0), (4.0, 0.0), (2.0, 2.0), (0.0, 4.0), (4.0, 4.0)]).unwrap();
    let r = largest_square_at(&ps, 0.0, SquareVariant::InBox).unwrap();
    assert!((r - 1.0).abs() < 1e-7, "{r}");
}
