//! Crossing words: a start hemisphere, the gaps crossed in order, and a terminal.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::equator::{EquatorModel, RefinementMap};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Hemisphere {
    North,
    South,
}

impl Hemisphere {
    pub fn other(self) -> Self {
        match self {
            Hemisphere::North => Hemisphere::South,
            Hemisphere::South => Hemisphere::North,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Hemisphere::North => 'N',
            Hemisphere::South => 'S',
        }
    }

    pub fn index(self) -> usize {
        match self {
            Hemisphere::North => 0,
            Hemisphere::South => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Terminal {
    Loop,
    ShortRay(u32),
    Truncated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurveKind {
    Loop,
    ShortRay,
    LongRayTruncation,
}

/// Signed crossing: the gap and the hemisphere the curve moves into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedCrossing {
    pub gap: u32,
    pub from: Hemisphere,
    pub to: Hemisphere,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "WordRepr", try_from = "WordRepr")]
pub struct CrossingWord {
    pub model: EquatorModel,
    pub start: Hemisphere,
    pub gaps: Vec<u32>,
    pub terminal: Terminal,
}

/// Serialized form of words and curves: the depth and the text line.
#[derive(Serialize, Deserialize)]
struct WordRepr {
    depth: u32,
    word: String,
}

impl From<CrossingWord> for WordRepr {
    fn from(w: CrossingWord) -> Self {
        WordRepr {
            depth: w.model.depth(),
            word: crate::format::format_word(&w),
        }
    }
}

impl TryFrom<WordRepr> for CrossingWord {
    type Error = Error;

    fn try_from(r: WordRepr) -> Result<Self> {
        crate::format::parse_word_line(&r.word, crate::equator::make_model(r.depth)?, 1)
    }
}

impl From<Curve> for WordRepr {
    fn from(c: Curve) -> Self {
        c.word.into()
    }
}

impl TryFrom<WordRepr> for Curve {
    type Error = Error;

    fn try_from(r: WordRepr) -> Result<Self> {
        tighten(&validate(CrossingWord::try_from(r)?)?)
    }
}

impl CrossingWord {
    pub fn new(model: EquatorModel, start: Hemisphere, gaps: Vec<u32>, terminal: Terminal) -> Self {
        CrossingWord {
            model,
            start,
            gaps,
            terminal,
        }
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    /// Hemisphere occupied after `k` crossings.
    pub fn hemisphere_after(&self, k: usize) -> Hemisphere {
        if k.is_multiple_of(2) {
            self.start
        } else {
            self.start.other()
        }
    }

    pub fn end_hemisphere(&self) -> Hemisphere {
        self.hemisphere_after(self.gaps.len())
    }

    pub fn kind(&self) -> CurveKind {
        match self.terminal {
            Terminal::Loop => CurveKind::Loop,
            Terminal::ShortRay(_) => CurveKind::ShortRay,
            Terminal::Truncated => CurveKind::LongRayTruncation,
        }
    }

    /// Same path traversed backwards. Only meaningful for loops.
    pub fn reversed(&self) -> CrossingWord {
        let mut gaps = self.gaps.clone();
        gaps.reverse();
        CrossingWord {
            model: self.model,
            start: self.end_hemisphere(),
            gaps,
            terminal: self.terminal,
        }
    }

    /// Number of distinct gaps crossed.
    pub fn distinct_gaps(&self) -> usize {
        let mut g = self.gaps.clone();
        g.sort_unstable();
        g.dedup();
        g.len()
    }

    pub fn signed(&self) -> Vec<SignedCrossing> {
        (0..self.gaps.len())
            .map(|i| SignedCrossing {
                gap: self.gaps[i],
                from: self.hemisphere_after(i),
                to: self.hemisphere_after(i + 1),
            })
            .collect()
    }

    /// First `n` crossings as a truncated long-ray prefix.
    pub fn truncated(&self, n: usize) -> CrossingWord {
        CrossingWord {
            model: self.model,
            start: self.start,
            gaps: self.gaps[..n.min(self.gaps.len())].to_vec(),
            terminal: Terminal::Truncated,
        }
    }

    fn check_ranges(&self) -> Result<()> {
        for &g in &self.gaps {
            self.model.gap(g)?;
        }
        if let Terminal::ShortRay(b) = self.terminal {
            if b >= self.model.block_count() {
                return Err(Error::NoSuchBlock {
                    block: b,
                    depth: self.model.depth(),
                });
            }
        }
        Ok(())
    }

    /// True when two consecutive crossings use the same gap.
    pub fn has_bigon(&self) -> bool {
        self.gaps.windows(2).any(|w| w[0] == w[1])
    }

    /// A loop bounds a block-free disk iff every interior gap is crossed an even
    /// number of times (then all blocks lie on one side).
    pub fn is_peripheral(&self) -> bool {
        if self.terminal != Terminal::Loop {
            return false;
        }
        let m = self.model.block_count();
        let mut parity = vec![false; m as usize + 1];
        for &g in &self.gaps {
            parity[g as usize] ^= true;
        }
        (1..m as usize).all(|g| !parity[g])
    }
}

impl fmt::Display for CrossingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::format_word(self))
    }
}

/// A validated word. `canonical` is set only once the word is bigon-free and simple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "WordRepr", try_from = "WordRepr")]
pub struct Curve {
    word: CrossingWord,
    kind: CurveKind,
    canonical: bool,
}

impl Curve {
    pub fn word(&self) -> &CrossingWord {
        &self.word
    }

    pub fn into_word(self) -> CrossingWord {
        self.word
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn model(&self) -> EquatorModel {
        self.word.model
    }

    pub fn depth(&self) -> u32 {
        self.word.model.depth()
    }

    pub fn gaps(&self) -> &[u32] {
        &self.word.gaps
    }

    pub fn len(&self) -> usize {
        self.word.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.gaps.is_empty()
    }

    pub fn start(&self) -> Hemisphere {
        self.word.start
    }

    pub fn terminal(&self) -> Terminal {
        self.word.terminal
    }

    /// Reverse orientation. Loops only; rays keep their ∞ anchor first.
    pub fn reversed(&self) -> Curve {
        if self.kind != CurveKind::Loop {
            return self.clone();
        }
        Curve {
            word: self.word.reversed(),
            kind: self.kind,
            canonical: self.canonical,
        }
    }

    /// Orientation-free representative used for graph vertices.
    pub fn unoriented(&self) -> Curve {
        let r = self.reversed();
        if r.word < self.word {
            r
        } else {
            self.clone()
        }
    }

    /// Builds a canonical curve: validate, tighten, and require simplicity.
    pub fn canonical(word: CrossingWord) -> Result<Curve> {
        let c = tighten(&validate(word)?)?;
        if c.canonical {
            Ok(c)
        } else {
            Err(Error::NotSimple)
        }
    }

    /// Wraps a word already known to be tight and simple. Used by enumerators
    /// that construct words in canonical form.
    pub(crate) fn trusted(word: CrossingWord) -> Curve {
        let kind = word.kind();
        Curve {
            word,
            kind,
            canonical: true,
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

pub fn validate(word: CrossingWord) -> Result<Curve> {
    word.check_ranges()?;
    if word.terminal == Terminal::Loop && word.gaps.is_empty() {
        return Err(Error::NonEssential);
    }
    let kind = word.kind();
    Ok(Curve {
        word,
        kind,
        canonical: false,
    })
}

/// Deletes bigons until none remain. A bigon is two consecutive crossings of
/// the same gap: the chord between them cuts off a puncture-free half-disk.
/// Removal is a stack reduction, so the result does not depend on the order.
pub fn tighten(curve: &Curve) -> Result<Curve> {
    let word = tighten_word(&curve.word);
    if word.terminal == Terminal::Loop && word.gaps.is_empty() {
        return Err(Error::NonEssential);
    }
    let canonical = crate::order::is_simple_word(&word);
    Ok(Curve {
        kind: curve.kind,
        word,
        canonical,
    })
}

pub fn tighten_word(word: &CrossingWord) -> CrossingWord {
    let mut out: Vec<u32> = Vec::with_capacity(word.gaps.len());
    for &g in &word.gaps {
        if out.last() == Some(&g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    CrossingWord {
        model: word.model,
        start: word.start,
        gaps: out,
        terminal: word.terminal,
    }
}

/// Simplicity check on a validated curve.
pub fn is_simple(word: &CrossingWord) -> bool {
    crate::order::is_simple_word(word)
}

/// First `k` signed crossings from the ∞ anchor.
pub fn k_prefix(word: &CrossingWord, k: usize) -> Result<Vec<SignedCrossing>> {
    if word.gaps.len() < k {
        return Err(Error::TooShort {
            needed: k,
            available: word.gaps.len(),
        });
    }
    Ok(word.signed().into_iter().take(k).collect())
}

/// Pushes a word through a refinement map. A short ray ending at `b_k` ends at
/// the left child `b_{2k}`.
pub fn refine_word(word: &CrossingWord, map: &RefinementMap) -> Result<CrossingWord> {
    if word.model.depth() != map.from_depth {
        return Err(Error::DepthMismatch {
            left: word.model.depth(),
            right: map.from_depth,
        });
    }
    let model = crate::equator::make_model_with_max(map.to_depth, u32::MAX)?;
    Ok(CrossingWord {
        model,
        start: word.start,
        gaps: word.gaps.iter().map(|&g| map.image(g)).collect(),
        terminal: match word.terminal {
            Terminal::ShortRay(b) => Terminal::ShortRay(2 * b),
            t => t,
        },
    })
}

pub fn refine_curve(curve: &Curve, map: &RefinementMap) -> Result<Curve> {
    let word = refine_word(&curve.word, map)?;
    Ok(Curve {
        word,
        kind: curve.kind,
        canonical: curve.canonical,
    })
}

/// Embeds a word `levels` depths deeper.
pub fn embed_word(word: &CrossingWord, levels: u32) -> Result<CrossingWord> {
    let mut w = word.clone();
    for _ in 0..levels {
        let map = crate::equator::refine_with_max(w.model, u32::MAX)?;
        w = refine_word(&w, &map)?;
    }
    Ok(w)
}

/// Brings two words to the deeper of their depths.
pub fn common_depth(a: &CrossingWord, b: &CrossingWord) -> Result<(CrossingWord, CrossingWord)> {
    let (da, db) = (a.model.depth(), b.model.depth());
    let d = da.max(db);
    Ok((embed_word(a, d - da)?, embed_word(b, d - db)?))
}
