//! Seeded random simple curves.

use rand::Rng;

use crate::equator::EquatorModel;
use crate::order::is_simple_word;
use crate::word::{CrossingWord, Curve, Hemisphere, Terminal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleKind {
    Loop,
    ShortRay,
    Truncated,
}

/// Grows a random tight word one crossing at a time, keeping every prefix
/// simple, then closes it with the requested terminal. Returns `None` when
/// the attempt budget runs out.
pub fn random_simple<R: Rng>(model: EquatorModel, len: usize, kind: SampleKind, rng: &mut R) -> Option<Curve> {
    for _ in 0..64 {
        if let Some(c) = attempt(model, len, kind, rng) {
            return Some(c);
        }
    }
    None
}

fn attempt<R: Rng>(model: EquatorModel, len: usize, kind: SampleKind, rng: &mut R) -> Option<Curve> {
    let start = if rng.gen_bool(0.5) {
        Hemisphere::North
    } else {
        Hemisphere::South
    };
    let gap_count = model.gap_count();
    let mut w = CrossingWord::new(model, start, Vec::with_capacity(len), Terminal::Truncated);
    while w.gaps.len() < len {
        let mut grown = false;
        for _ in 0..4 * gap_count {
            let g = rng.gen_range(0..gap_count);
            if w.gaps.last() == Some(&g) {
                continue;
            }
            w.gaps.push(g);
            if is_simple_word(&w) {
                grown = true;
                break;
            }
            w.gaps.pop();
        }
        if !grown {
            return None;
        }
    }
    match kind {
        SampleKind::Truncated => Some(Curve::trusted(w)),
        SampleKind::Loop => {
            if w.gaps.is_empty() {
                return None;
            }
            w.terminal = Terminal::Loop;
            (is_simple_word(&w) && !w.is_peripheral()).then(|| Curve::trusted(w))
        }
        SampleKind::ShortRay => {
            let blocks = model.block_count();
            let first = rng.gen_range(0..blocks);
            for k in 0..blocks {
                w.terminal = Terminal::ShortRay((first + k) % blocks);
                if is_simple_word(&w) {
                    return Some(Curve::trusted(w));
                }
            }
            None
        }
    }
}

/// Random simple loop with crossing count drawn from `1..=max_len`.
pub fn random_loop<R: Rng>(model: EquatorModel, max_len: usize, rng: &mut R) -> Curve {
    loop {
        let len = rng.gen_range(1..=max_len);
        if let Some(c) = random_simple(model, len, SampleKind::Loop, rng) {
            return c;
        }
    }
}
