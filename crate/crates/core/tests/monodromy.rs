use clk_core::cassonlin::{bad_set, AtomData};
use clk_core::knotspec::TwoBridgeParams;
use clk_core::tracker::{
    continue_roots, local_system_report, permutation_images, Loop, MonodromyReport,
};
use clk_core::Complex64;

fn atom(p: u64, q: u64) -> AtomData {
    AtomData::of(TwoBridgeParams::new(p, q).unwrap()).unwrap()
}

fn around(a: &AtomData, center: f64, radius: f64, steps: usize) -> MonodromyReport {
    let lp = Loop::new(Complex64::new(center, 0.0), radius, steps).unwrap();
    continue_roots(&a.cp, &lp).unwrap()
}

#[test]
fn figure_eight_swap_around_one() {
    let a = atom(5, 3);
    let r = around(&a, 1.0, 0.1, 64);
    assert_eq!(r.permutation, vec![vec![0, 1], vec![1, 0]]);
    assert_eq!(r.eigenvalues, vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
    assert!(r.max_residual < 1e-10);
    assert!(r.min_separation > 1e-6);
}

#[test]
fn figure_eight_transposition_around_sqrt5() {
    let r = around(&atom(5, 3), 5f64.sqrt(), 0.1, 64);
    assert!(!r.is_identity());
}

#[test]
fn figure_eight_identity_away_from_bad_set() {
    let a = atom(5, 3);
    assert!(around(&a, 3.0, 0.1, 64).is_identity());
    assert!(around(&a, 3.0, 0.1, 640).is_identity());
}

#[test]
fn step_doubling_and_reversal() {
    let a = atom(5, 3);
    for center in [1.0, -1.0, 5f64.sqrt(), -(5f64.sqrt()), 3.0] {
        let base = around(&a, center, 0.1, 32);
        assert_eq!(base.permutation, around(&a, center, 0.1, 64).permutation);
        let lp = Loop::new(Complex64::new(center, 0.0), 0.1, 32).unwrap().reversed();
        let back = continue_roots(&a.cp, &lp).unwrap();
        let (f, b) = (permutation_images(&base.permutation), permutation_images(&back.permutation));
        for i in 0..f.len() {
            assert_eq!(b[f[i]], i);
        }
    }
}

#[test]
fn large_loop_is_product_of_small_loops() {
    let a = atom(5, 3);
    // Encloses 1, 2 and √5; τ = 2 is not a branch point of the slice.
    let big = around(&a, 1.6, 0.8, 256);
    let one = permutation_images(&around(&a, 1.0, 0.1, 64).permutation);
    let five = permutation_images(&around(&a, 5f64.sqrt(), 0.1, 64).permutation);
    let composed: Vec<usize> = (0..one.len()).map(|i| five[one[i]]).collect();
    assert_eq!(permutation_images(&big.permutation), composed);
}

#[test]
fn figure_eight_local_system() {
    let a = atom(5, 3);
    let s = local_system_report(&a.cp, &a.delta, &[]).unwrap();
    assert_eq!(s.rank, 2);
    assert!(s.requested.is_empty());
    assert_eq!(s.automatic.len(), 4);
    for r in &s.automatic {
        assert!(!r.is_identity(), "{:?}", r.lp.center);
        assert_eq!(r.eigenvalues, vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
    }
}

#[test]
fn trefoil_local_system_is_trivial() {
    let a = atom(3, 1);
    let s = local_system_report(&a.cp, &a.delta, &[]).unwrap();
    assert_eq!(s.rank, 1);
    assert!(s.automatic.iter().all(MonodromyReport::is_identity));
}

#[test]
fn loops_through_bad_points_are_rejected() {
    let a = atom(5, 3);
    let lp = Loop::new(Complex64::new(0.5, 0.0), 0.5, 32).unwrap();
    assert!(local_system_report(&a.cp, &a.delta, &[lp]).is_err());
    let bad = bad_set(&a.cp, &a.delta).unwrap();
    assert!(lp.check_clear_of(&bad.distinct_roots()).is_err());
}

#[test]
fn five_two_monodromy_is_a_permutation() {
    let a = atom(7, 3);
    let s = local_system_report(&a.cp, &a.delta, &[]).unwrap();
    assert_eq!(s.rank, 3);
    for r in &s.automatic {
        let mut seen = permutation_images(&r.permutation);
        seen.sort();
        assert_eq!(seen, vec![0, 1, 2]);
    }
}
