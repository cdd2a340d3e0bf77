#![allow(dead_code)]

use cantor_curves::format::parse_word_line;
use cantor_curves::{make_model, CrossingWord, Curve};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn word(text: &str, depth: u32) -> CrossingWord {
    parse_word_line(text, make_model(depth).unwrap(), 1).unwrap()
}

pub fn curve(text: &str, depth: u32) -> Curve {
    Curve::canonical(word(text, depth)).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
