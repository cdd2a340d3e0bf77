//! Fixed inputs for the benchmarks.

use cantor_curves::format::parse_word_line;
use cantor_curves::sample::random_loop;
use cantor_curves::{make_model, Curve};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn curve(text: &str, depth: u32) -> Curve {
    let m = make_model(depth).expect("depth in range");
    Curve::canonical(parse_word_line(text, m, 1).expect("valid line")).expect("simple curve")
}

/// Seeded loop pairs at one depth with at most `max_len` crossings each.
pub fn loop_pairs(depth: u32, max_len: usize, count: usize, seed: u64) -> Vec<(Curve, Curve)> {
    let m = make_model(depth).expect("depth in range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (random_loop(m, max_len, &mut rng), random_loop(m, max_len, &mut rng)))
        .collect()
}
