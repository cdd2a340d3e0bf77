mod common;

use std::collections::BTreeSet;

use cantor_curves::enumerate::{
    brute_force_disjoint, enumerate_budget, enumerate_disjoint, enumerate_disjoint_unoriented, enumerate_unoriented,
    ComplexityBudget,
};
use cantor_curves::intersect::intersection_number;
use cantor_curves::sample::random_loop;
use cantor_curves::{make_model, Curve, CurveKind};
use common::{curve, rng};

fn set(v: Vec<Curve>) -> BTreeSet<String> {
    v.iter().map(|c| c.to_string()).collect()
}

#[test]
fn matches_brute_force_without_obstacles() {
    for (depth, cap) in [(1, 5), (2, 4)] {
        let m = make_model(depth).unwrap();
        for budget in [
            ComplexityBudget::loops(depth, cap),
            ComplexityBudget::rays(depth, cap),
            ComplexityBudget::mixed(depth, cap),
        ] {
            let fast = enumerate_budget(m, budget).unwrap();
            let slow = brute_force_disjoint(m, &[], budget).unwrap();
            assert_eq!(set(fast), set(slow), "{budget:?}");
        }
    }
}

#[test]
fn matches_brute_force_with_obstacles() {
    let mut r = rng(31);
    for depth in [1, 2] {
        let m = make_model(depth).unwrap();
        let budget = ComplexityBudget::mixed(depth, 4);
        for _ in 0..12 {
            let a = random_loop(m, 6, &mut r);
            let b = random_loop(m, 6, &mut r);
            for obstacles in [vec![a.word()], vec![a.word(), b.word()]] {
                let fast = enumerate_disjoint(m, &obstacles, budget).unwrap();
                let slow = brute_force_disjoint(m, &obstacles, budget).unwrap();
                assert_eq!(set(fast), set(slow), "{a} / {b}");
            }
        }
    }
}

#[test]
fn every_result_is_admitted_and_disjoint() {
    let m = make_model(2).unwrap();
    let budget = ComplexityBudget::mixed(2, 6);
    let obstacle = curve("L N g0 g2 g1 g0", 2);
    for c in enumerate_disjoint(m, &[obstacle.word()], budget).unwrap() {
        assert!(budget.admits(&c), "{c}");
        assert!(c.is_canonical());
        assert_eq!(intersection_number(&obstacle, &c).unwrap(), 0, "{c}");
    }
}

#[test]
fn unoriented_lists_each_loop_once() {
    let m = make_model(1).unwrap();
    let budget = ComplexityBudget::loops(1, 4);
    let all = enumerate_budget(m, budget).unwrap();
    let un = enumerate_unoriented(m, budget).unwrap();
    assert!(all.iter().all(|c| c.kind() == CurveKind::Loop));
    assert!(un.len() < all.len());
    let expect: BTreeSet<Curve> = all.iter().map(Curve::unoriented).collect();
    assert_eq!(un, expect.into_iter().collect::<Vec<_>>());
}

#[test]
fn depth_one_loops_with_two_crossings() {
    let m = make_model(1).unwrap();
    let un = set(enumerate_unoriented(m, ComplexityBudget::loops(1, 2)).unwrap());
    // `g0 g2` encloses both blocks, so it is peripheral.
    assert!(un.contains("L N g0 g1"));
    assert!(un.contains("L N g1 g2"));
    assert!(!un.contains("L N g0 g2"));
}

#[test]
fn empty_kinds_give_nothing() {
    let m = make_model(2).unwrap();
    let budget = ComplexityBudget {
        depth: 2,
        max_crossings: 6,
        loops: false,
        short_rays: false,
    };
    assert!(enumerate_budget(m, budget).unwrap().is_empty());
}

#[test]
fn depth_mismatch_is_rejected() {
    let m = make_model(2).unwrap();
    assert!(enumerate_budget(m, ComplexityBudget::loops(1, 2)).is_err());
    let o = curve("L N g0 g1", 1);
    assert!(enumerate_disjoint_unoriented(m, &[o.word()], ComplexityBudget::loops(2, 2)).is_err());
}
