mod common;

use cantor_curves::generator::AlphaFamily;
use cantor_curves::graph::ray_triple;
use cantor_curves::make_model;
use cantor_curves::render::{gap_span, placed_events, render_svg, Layout, RenderSpec};
use common::word;

#[test]
fn empty_scaffold() {
    let spec = RenderSpec::new(make_model(1).unwrap(), vec![]);
    let svg = render_svg(&spec);
    assert!(svg.starts_with("<svg"));
    assert!(svg.ends_with("</svg>\n"));
    assert!(!svg.contains("<path"));
    assert!(placed_events(&spec).is_empty());
    // Both rims, the two ∞ markers and two blocks per disk.
    assert_eq!(svg.matches("<circle").count(), 2 + 2 + 4);
}

#[test]
fn output_is_deterministic() {
    let m = make_model(2).unwrap();
    let curves: Vec<_> = ray_triple().iter().map(|c| c.word().clone()).collect();
    for layout in [Layout::DiskPair, Layout::Flat] {
        let mut spec = RenderSpec::new(m, curves.clone());
        spec.layout = layout;
        spec.highlight_intersections = true;
        spec.labels = vec!["a".into(), "g".into(), "b".into()];
        let one = render_svg(&spec);
        let two = render_svg(&spec.clone());
        assert_eq!(one, two);
        assert_eq!(
            one.matches("<path").count(),
            curves.iter().map(|w| w.len() + 1).sum::<usize>()
        );
    }
}

#[test]
fn highlights_mark_crossings() {
    let m = make_model(1).unwrap();
    let curves = vec![word("L N g0 g1", 1), word("L N g1 g2", 1), word("L S g0 g2 g1", 1)];
    let mut spec = RenderSpec::new(m, curves);
    let plain = render_svg(&spec);
    spec.highlight_intersections = true;
    let marked = render_svg(&spec);
    assert!(marked.matches("stroke=\"#000000\"").count() > plain.matches("stroke=\"#000000\"").count());
}

#[test]
fn events_land_inside_their_gaps() {
    let fam = AlphaFamily::committed();
    let w = fam.stage(2).unwrap().clone();
    let m = w.model;
    let spec = RenderSpec::new(
        m,
        vec![
            w.clone(),
            fam.stage(1)
                .map(|s| cantor_curves::word::embed_word(s, 1).unwrap())
                .unwrap(),
        ],
    );
    let events = placed_events(&spec);
    assert_eq!(events.len(), 28 + 8);
    for e in events {
        let (lo, hi) = gap_span(m, e.gap);
        assert!(lo < e.turn && e.turn < hi, "{e:?} outside ({lo}, {hi})");
    }
}

#[test]
fn labels_are_escaped() {
    let mut spec = RenderSpec::new(make_model(1).unwrap(), vec![word("L N g0 g1", 1)]);
    spec.labels = vec!["a<b & c".into()];
    assert!(render_svg(&spec).contains("a&lt;b &amp; c"));
}
