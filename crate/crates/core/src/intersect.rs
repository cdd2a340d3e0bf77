//! Minimal-position intersections between two curves and the splice move.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::{Chord, ChordDiagram};
use crate::word::{tighten, validate, CrossingWord, Curve, Hemisphere, Terminal};

/// One transverse intersection. Positions are `(chord index, order along that chord)`;
/// chord `j` runs from boundary point `j` to `j + 1`, so `j` crossings precede it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntersectionRecord {
    pub on_a: (usize, usize),
    pub on_b: (usize, usize),
    pub hemisphere: Hemisphere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplicePoint {
    pub record: IntersectionRecord,
    pub prefix_of_b: usize,
    pub prefix_of_a: usize,
}

impl SplicePoint {
    pub fn from_record(record: IntersectionRecord) -> Self {
        SplicePoint {
            record,
            prefix_of_b: record.on_b.0,
            prefix_of_a: record.on_a.0,
        }
    }
}

fn same_model(a: &CrossingWord, b: &CrossingWord) -> Result<()> {
    if a.model != b.model {
        return Err(Error::DepthMismatch {
            left: a.model.depth(),
            right: b.model.depth(),
        });
    }
    Ok(())
}

pub fn intersection_number(a: &Curve, b: &Curve) -> Result<usize> {
    word_intersection_number(a.word(), b.word())
}

pub fn word_intersection_number(a: &CrossingWord, b: &CrossingWord) -> Result<usize> {
    same_model(a, b)?;
    let d = ChordDiagram::build(&[a, b]);
    Ok(d.crossing_pairs(0, 1).len())
}

pub fn are_disjoint(a: &Curve, b: &Curve) -> Result<bool> {
    Ok(intersection_number(a, b)? == 0)
}

/// Rank of each crossing chord along `along`, travelling from its start point.
fn ranks_along(along: &Chord, crossing: &[(usize, Chord)], circle: u64) -> Vec<(usize, usize)> {
    let p = along.from;
    let q = along.to;
    let span = (q + circle - p) % circle;
    let mut keyed: Vec<(u64, u64, usize)> = crossing
        .iter()
        .map(|&(id, c)| {
            let d_from = (c.from + circle - p) % circle;
            let (w, w2) = if d_from < span { (c.from, c.to) } else { (c.to, c.from) };
            ((w + circle - p) % circle, (p + circle - w2) % circle, id)
        })
        .collect();
    keyed.sort_unstable();
    keyed.iter().enumerate().map(|(r, k)| (k.2, r)).collect()
}

/// Intersections of `a` and `b` in minimal position, sorted along `b` from ∞.
/// `b` may be a truncated long-ray prefix.
pub fn intersections_along(b: &CrossingWord, a: &CrossingWord) -> Result<Vec<IntersectionRecord>> {
    same_model(a, b)?;
    let d = ChordDiagram::build(&[a, b]);
    let pairs = d.crossing_pairs(0, 1);
    let circle = d.circle();
    let mut sub_b = std::collections::HashMap::new();
    let mut sub_a = std::collections::HashMap::new();
    let mut by_b: std::collections::BTreeMap<usize, Vec<(usize, Chord)>> = Default::default();
    let mut by_a: std::collections::BTreeMap<usize, Vec<(usize, Chord)>> = Default::default();
    for &(ia, ib) in &pairs {
        by_b.entry(ib).or_default().push((ia, d.chords[0][ia]));
        by_a.entry(ia).or_default().push((ib, d.chords[1][ib]));
    }
    for (ib, list) in &by_b {
        for (ia, r) in ranks_along(&d.chords[1][*ib], list, circle) {
            sub_b.insert((ia, *ib), r);
        }
    }
    for (ia, list) in &by_a {
        for (ib, r) in ranks_along(&d.chords[0][*ia], list, circle) {
            sub_a.insert((*ia, ib), r);
        }
    }
    let mut out: Vec<IntersectionRecord> = pairs
        .iter()
        .map(|&(ia, ib)| IntersectionRecord {
            on_a: (ia, sub_a[&(ia, ib)]),
            on_b: (ib, sub_b[&(ia, ib)]),
            hemisphere: d.chords[0][ia].hemisphere,
        })
        .collect();
    out.sort_by_key(|r| (r.on_b, r.on_a));
    Ok(out)
}

/// Follows `b` to the splice point, then `a` backwards to ∞, and tightens.
/// The result may fail to be simple; callers that need simplicity check
/// [`Curve::is_canonical`].
pub fn splice(b: &CrossingWord, a: &CrossingWord, point: &SplicePoint) -> Result<Curve> {
    same_model(a, b)?;
    let (pb, pa) = (point.prefix_of_b, point.prefix_of_a);
    let b_chords = b.gaps.len() + usize::from(b.terminal != Terminal::Truncated);
    let a_chords = a.gaps.len() + usize::from(a.terminal != Terminal::Truncated);
    if pb >= b_chords || pa >= a_chords {
        return Err(Error::InvalidSplice(format!(
            "prefixes ({pb}, {pa}) exceed chord counts ({b_chords}, {a_chords})"
        )));
    }
    if b.hemisphere_after(pb) != a.hemisphere_after(pa) {
        return Err(Error::InvalidSplice("prefixes end in different hemispheres".into()));
    }
    let mut gaps: Vec<u32> = b.gaps[..pb].to_vec();
    gaps.extend(a.gaps[..pa].iter().rev());
    if gaps.is_empty() {
        return Err(Error::NonEssential);
    }
    let word = CrossingWord::new(b.model, b.start, gaps, Terminal::Loop);
    tighten(&validate(word)?)
}
