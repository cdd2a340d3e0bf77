//! Combinatorial curves on the sphere punctured at `∞` and a depth-n Cantor
//! approximation along the equator.

pub mod boundary;
pub mod enumerate;
pub mod equator;
pub mod error;
pub mod format;
pub mod generator;
pub mod graph;
pub mod intersect;
pub mod oracle;
pub mod order;
pub mod render;
pub mod sample;
pub mod unicorn;
pub mod word;

pub use equator::{make_model, refine, EquatorModel, GapId, RefinementMap};
pub use error::{Error, Result};
pub use word::{CrossingWord, Curve, CurveKind, Hemisphere, Terminal};
