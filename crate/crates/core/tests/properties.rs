use cantor_curves::format::{format_word, parse_word_line};
use cantor_curves::intersect::word_intersection_number;
use cantor_curves::word::{tighten_word, CrossingWord};
use cantor_curves::{make_model, Hemisphere, Terminal};
use proptest::prelude::*;

fn any_word() -> impl Strategy<Value = CrossingWord> {
    (1u32..=3).prop_flat_map(|depth| {
        let m = make_model(depth).unwrap();
        let gaps = m.gap_count();
        let blocks = m.block_count();
        (
            any::<bool>(),
            prop::collection::vec(0..gaps, 1..14),
            prop_oneof![Just(None), (0..blocks).prop_map(Some)],
        )
            .prop_map(move |(north, gaps, ray)| {
                let start = if north { Hemisphere::North } else { Hemisphere::South };
                let terminal = ray.map_or(Terminal::Loop, Terminal::ShortRay);
                CrossingWord::new(m, start, gaps, terminal)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn tighten_is_idempotent(w in any_word()) {
        let t = tighten_word(&w);
        prop_assert_eq!(tighten_word(&t), t.clone());
        prop_assert!(!t.has_bigon());
        prop_assert!(t.len() <= w.len());
        prop_assert_eq!(t.len() % 2, w.len() % 2);
    }

    #[test]
    fn inserted_bigon_tightens_away(w in any_word(), at in any::<prop::sample::Index>(), g in 0u32..3) {
        let t = tighten_word(&w);
        let mut fat = t.clone();
        let i = at.index(t.len() + 1);
        fat.gaps.splice(i..i, [g, g]);
        prop_assert_eq!(tighten_word(&fat), t);
    }

    #[test]
    fn text_round_trip(w in any_word()) {
        let line = format_word(&w);
        prop_assert_eq!(parse_word_line(&line, w.model, 1).unwrap(), w);
    }

    #[test]
    fn intersection_is_symmetric(a in any_word(), b in any_word()) {
        let a = tighten_word(&a);
        let b = CrossingWord { model: a.model, ..tighten_word(&b) };
        if b.gaps.iter().all(|&g| g < a.model.gap_count()) {
            prop_assert_eq!(word_intersection_number(&a, &b).ok(), word_intersection_number(&b, &a).ok());
        }
    }
}
