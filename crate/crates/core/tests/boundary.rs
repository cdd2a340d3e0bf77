mod common;

use cantor_curves::boundary::{
    alpha_forcing_test, alpha_negative_control, bounded_path_check, cover_convergence_check, filling_certificate,
    growth_experiment, k_begins_like, k_begins_like_ray, loop_around, non_filling_family, spiral_clique,
    two_filling_search, verify_clique, FillingKind, FillingOutcome,
};
use cantor_curves::enumerate::ComplexityBudget;
use cantor_curves::generator::{block_spiral, AlphaFamily, LongRayGenerator};
use cantor_curves::intersect::intersection_number;
use cantor_curves::{Curve, CurveKind, Hemisphere, Terminal};
use common::{curve, word};

#[test]
fn k_beginning() {
    let x = word("L N g0 g1 g2", 1);
    assert!(k_begins_like(&x, &x, 3).unwrap());
    assert!(k_begins_like(&x, &word("R N g0 g1 @b0", 1), 2).unwrap());
    assert!(!k_begins_like(&x, &word("R N g0 g2 @b1", 1), 2).unwrap());
    assert!(!k_begins_like(&x, &word("L S g0 g1", 1), 1).unwrap());
    assert!(k_begins_like(&x, &word("L N g0 g1", 1), 3).is_err());
    // Depths are aligned before comparing.
    assert!(k_begins_like(&x, &word("L N g0 g2 g4", 2), 3).unwrap());
}

#[test]
fn alpha_family_is_nested() {
    let fam = AlphaFamily::committed();
    let lengths: Vec<usize> = (1..=4).map(|k| fam.long(k).unwrap()).collect();
    assert_eq!(lengths, [8, 28, 88, 268]);
    for k in 1..4 {
        let (a, b) = (fam.stage(k).unwrap(), fam.stage(k + 1).unwrap());
        assert_eq!(b.model.depth(), a.model.depth() + 1);
        assert!(k_begins_like(a, b, a.len()).unwrap());
        assert!(k_begins_like_ray(a, &fam, a.len()).unwrap());
        assert_eq!(&AlphaFamily::extend(a).unwrap(), b);
    }
    let regenerated = AlphaFamily::generate(fam.stage(1).unwrap().clone(), 4).unwrap();
    assert_eq!(regenerated, fam);
    assert!(fam.stage(0).is_err());
    assert!(fam.stage(5).is_err());
    let swapped = vec![fam.stage(2).unwrap().clone(), fam.stage(1).unwrap().clone()];
    assert!(AlphaFamily::from_stages(swapped).is_err());
}

#[test]
fn cover_convergence() {
    let fam = AlphaFamily::committed();
    let seq: Vec<Curve> = (1..=4)
        .map(|k| Curve::canonical(fam.stage(k).unwrap().clone()).unwrap())
        .collect();
    let rep = cover_convergence_check(&seq, &fam, 8).unwrap();
    assert!(rep.converges);
    assert!(rep.first_index.iter().all(|i| *i == Some(0)));

    let l = block_spiral(1, 0, 1, Hemisphere::North).unwrap();
    let flip = vec![
        curve("L N g0 g1", 1),
        curve("L S g0 g1", 1),
        curve("L N g0 g1", 1),
        curve("L S g0 g1", 1),
    ];
    let rep = cover_convergence_check(&flip, &l, 2).unwrap();
    assert!(!rep.converges);
    assert_eq!(rep.first_index[0], None);
}

#[test]
fn cliques() {
    let fam = AlphaFamily::committed();
    let rep = verify_clique(&[&fam], 24, &[3, 4]).unwrap();
    assert!(rep.is_clique);

    let s = block_spiral(2, 0, 1, Hemisphere::North).unwrap();
    let rep = verify_clique(&[&s, &s], 24, &[2, 3]).unwrap();
    assert!(rep.is_clique);

    let spirals = spiral_clique().unwrap();
    let members: Vec<&dyn LongRayGenerator> = spirals.iter().map(|s| s as &dyn LongRayGenerator).collect();
    let rep = verify_clique(&members, 24, &[2, 3, 4, 5, 6]).unwrap();
    assert!(rep.is_clique, "{:?}", rep.pairwise);
    assert_eq!(rep.members.len(), 4);

    // Spirals around overlapping block ranges meet.
    let (a, b) = (
        block_spiral(2, 0, 2, Hemisphere::North).unwrap(),
        block_spiral(2, 1, 3, Hemisphere::North).unwrap(),
    );
    assert!(!verify_clique(&[&a, &b], 24, &[2]).unwrap().is_clique);
    assert!(verify_clique(&[], 24, &[2]).is_err());
    assert!(verify_clique(&[&fam], 24, &[1]).is_err());
}

#[test]
fn filling_certificates() {
    let l = block_spiral(1, 0, 1, Hemisphere::North).unwrap();
    match filling_certificate(&l, ComplexityBudget::mixed(1, 2), FillingKind::RayFillingAtBudget, 32).unwrap() {
        FillingOutcome::Negative { witness, .. } => {
            assert_eq!(witness.kind(), CurveKind::ShortRay);
            assert_eq!(witness.terminal(), Terminal::ShortRay(1));
        }
        other => panic!("expected a witness, got {other:?}"),
    }

    let fam = AlphaFamily::committed();
    match filling_certificate(
        &fam,
        ComplexityBudget::loops(2, 6),
        FillingKind::LoopFillingAtBudget,
        64,
    )
    .unwrap()
    {
        FillingOutcome::Certificate { checked_count, .. } => assert_eq!(checked_count, 385),
        other => panic!("expected a certificate, got {other:?}"),
    }

    let none = ComplexityBudget::rays(2, 6);
    match filling_certificate(&fam, none, FillingKind::LoopFillingAtBudget, 64).unwrap() {
        FillingOutcome::Certificate { checked_count, .. } => assert_eq!(checked_count, 0),
        other => panic!("expected an empty certificate, got {other:?}"),
    }
}

#[test]
fn loop_around_a_short_ray() {
    for text in ["R N @b0", "R S g1 @b0", "R N g2 g0 @b1"] {
        let r = curve(text, 2);
        let c = loop_around(r.word()).unwrap();
        assert_eq!(c.kind(), CurveKind::Loop);
        assert_eq!(intersection_number(&r, &c).unwrap(), 0, "{r} / {c}");
    }
    assert!(loop_around(&word("L N g0 g1", 1)).is_err());
}

#[test]
fn forcing_passes_and_control_fails() {
    let fam = AlphaFamily::committed();
    let rep = alpha_forcing_test(&fam, 1, ComplexityBudget::mixed(3, 8)).unwrap();
    assert!(rep.passed);
    assert!(!rep.vacuous);
    assert_eq!((rep.long_k, rep.long_next, rep.depth), (8, 28, 3));
    for k in [2, 3] {
        let rep = alpha_forcing_test(&fam, k, ComplexityBudget::mixed(k as u32 + 2, 8)).unwrap();
        assert!(rep.passed);
    }
    let neg = alpha_negative_control(&fam, 1, ComplexityBudget::mixed(3, 8)).unwrap();
    assert!(!neg.passed);
    assert!(!neg.violations.is_empty());
    assert!(alpha_forcing_test(&fam, 0, ComplexityBudget::mixed(3, 8)).is_err());
    assert!(alpha_forcing_test(&fam, 4, ComplexityBudget::mixed(3, 8)).is_err());
}

#[test]
fn growth_toward_a_disjoint_spiral_is_flat() {
    let l = block_spiral(1, 0, 1, Hemisphere::North).unwrap();
    let rep = growth_experiment(&curve("L N g1 g2", 1), &l, 8, 4).unwrap();
    assert_eq!(rep.rows.len(), 1);
    assert_eq!(rep.max_lower, 0);
    assert_eq!(rep.first_at_three, None);
}

#[test]
fn bounded_paths_for_non_filling_spirals() {
    let fam = non_filling_family(&[1, 2]).unwrap();
    assert!(fam.len() >= 10);
    for (l, r) in fam.iter().take(6) {
        let rep = bounded_path_check(l, r, 6, 6).unwrap();
        assert!(rep.within_two, "{} {r}: {:?}", l.name(), rep.distances);
    }
}

#[test]
fn two_filling_search_runs() {
    let s = two_filling_search(1, 3, 24, ComplexityBudget::mixed(1, 3)).unwrap();
    assert!(s.generators > 0);
    for c in &s.chains {
        assert!(s.ray_filling_at_budget.contains(&c.end));
    }
}
