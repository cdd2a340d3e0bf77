mod common;

use cantor_curves::graph::ray_triple;
use cantor_curves::intersect::{are_disjoint, intersection_number, intersections_along, splice, SplicePoint};
use cantor_curves::oracle::{geometric_intersections, realize_polyline};
use cantor_curves::sample::{random_simple, SampleKind};
use cantor_curves::word::embed_word;
use cantor_curves::{make_model, Curve, CurveKind, Error};
use common::{curve, rng};
use rand::Rng;

#[test]
fn curve_is_disjoint_from_itself() {
    for text in ["L N g0 g1", "R S g1 @b0", "L S g2 g0"] {
        let c = curve(text, 1);
        assert_eq!(intersection_number(&c, &c).unwrap(), 0);
        assert!(are_disjoint(&c, &c).unwrap());
    }
}

#[test]
fn loops_around_different_blocks() {
    let a = curve("L N g0 g1", 1);
    let b = curve("L N g1 g2", 1);
    assert_eq!(intersection_number(&a, &b).unwrap(), 0);
    assert!(intersections_along(b.word(), a.word()).unwrap().is_empty());
}

#[test]
fn ray_triple_meets_as_a_path_of_length_two() {
    let [alpha, gamma, beta] = ray_triple();
    assert_eq!(intersection_number(&alpha, &gamma).unwrap(), 0);
    assert_eq!(intersection_number(&gamma, &beta).unwrap(), 0);
    let i = intersection_number(&alpha, &beta).unwrap();
    assert!(i >= 1);
    assert_eq!(i, geometric_intersections(alpha.word(), beta.word()));
    assert!(!are_disjoint(&alpha, &beta).unwrap());
}

#[test]
fn model_mismatch_is_an_error() {
    let a = curve("L N g0 g1", 1);
    let b = curve("L N g0 g1", 2);
    assert!(matches!(
        intersection_number(&a, &b),
        Err(Error::DepthMismatch { left: 1, right: 2 })
    ));
}

fn random_pairs(depth: u32, count: usize, seed: u64) -> Vec<(Curve, Curve)> {
    let m = make_model(depth).unwrap();
    let mut r = rng(seed);
    let kinds = [SampleKind::Loop, SampleKind::ShortRay];
    let mut out = Vec::new();
    while out.len() < count {
        let ka = kinds[r.gen_range(0..2)];
        let kb = kinds[r.gen_range(0..2)];
        let a = random_simple(m, r.gen_range(1..10), ka, &mut r);
        let b = random_simple(m, r.gen_range(1..10), kb, &mut r);
        if let (Some(a), Some(b)) = (a, b) {
            out.push((a, b));
        }
    }
    out
}

#[test]
fn agrees_with_geodesic_oracle() {
    for depth in 1..=3 {
        for (a, b) in random_pairs(depth, 150, depth as u64) {
            assert_eq!(
                intersection_number(&a, &b).unwrap(),
                geometric_intersections(a.word(), b.word()),
                "{a} / {b}"
            );
        }
    }
}

#[test]
fn symmetric_and_invariant_under_refinement() {
    for (a, b) in random_pairs(2, 150, 11) {
        let i = intersection_number(&a, &b).unwrap();
        assert_eq!(intersection_number(&b, &a).unwrap(), i);
        let up = |c: &Curve| Curve::canonical(embed_word(c.word(), 2).unwrap()).unwrap();
        assert_eq!(intersection_number(&up(&a), &up(&b)).unwrap(), i, "{a} / {b}");
    }
}

#[test]
fn records_match_count_for_loops() {
    for (a, b) in random_pairs(2, 200, 12) {
        if a.kind() != CurveKind::Loop || b.kind() != CurveKind::Loop {
            continue;
        }
        let recs = intersections_along(b.word(), a.word()).unwrap();
        assert_eq!(recs.len(), intersection_number(&a, &b).unwrap());
        // Sorted by position along b.
        assert!(recs.windows(2).all(|w| w[0].on_b < w[1].on_b));
    }
}

#[test]
fn splices_are_simple_loops() {
    let mut checked = 0;
    for (a, b) in random_pairs(2, 200, 13) {
        if a.kind() != CurveKind::Loop || b.kind() != CurveKind::Loop {
            continue;
        }
        for r in intersections_along(b.word(), a.word()).unwrap() {
            let p = SplicePoint::from_record(r);
            match splice(b.word(), a.word(), &p) {
                Ok(c) => {
                    assert_eq!(c.kind(), CurveKind::Loop);
                    assert!(c.len() <= p.prefix_of_a + p.prefix_of_b + 1);
                    if c.is_canonical() {
                        assert!(realize_polyline(&c).is_embedded(0), "{c}");
                    }
                    checked += 1;
                }
                Err(Error::NonEssential) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
    assert!(checked > 50);
}

#[test]
fn first_splice_of_a_path_is_disjoint_from_its_source() {
    for (a, b) in random_pairs(2, 200, 14) {
        if a.kind() != CurveKind::Loop || b.kind() != CurveKind::Loop {
            continue;
        }
        let recs = intersections_along(b.word(), a.word()).unwrap();
        if let Some(r) = recs.first() {
            let c = splice(b.word(), a.word(), &SplicePoint::from_record(*r)).unwrap();
            assert_eq!(intersection_number(&a, &c).unwrap(), 0, "{a} / {b} -> {c}");
        }
    }
}
