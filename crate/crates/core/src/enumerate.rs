//! Enumeration of canonical curves within a complexity budget, optionally
//! restricted to curves disjoint from a set of obstacles.
//!
//! The obstacle chords cut each hemisphere into faces. A disjoint curve is a
//! walk that starts at an `∞` wedge, repeatedly crosses a gap sub-segment
//! (moving to the face on the other side), and stops at an `∞` wedge (loop)
//! or a block wedge (short ray). Every candidate word is re-checked against
//! the obstacles with the chord diagram, so the output matches
//! [`crate::intersect::word_intersection_number`] exactly.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::equator::EquatorModel;
use crate::error::{Error, Result};
use crate::intersect::word_intersection_number;
use crate::order::{is_simple_word, ChordDiagram};
use crate::word::{CrossingWord, Curve, CurveKind, Hemisphere, Terminal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexityBudget {
    pub depth: u32,
    pub max_crossings: usize,
    pub loops: bool,
    pub short_rays: bool,
}

impl ComplexityBudget {
    pub fn loops(depth: u32, max_crossings: usize) -> Self {
        ComplexityBudget {
            depth,
            max_crossings,
            loops: true,
            short_rays: false,
        }
    }

    pub fn rays(depth: u32, max_crossings: usize) -> Self {
        ComplexityBudget {
            depth,
            max_crossings,
            loops: false,
            short_rays: true,
        }
    }

    pub fn mixed(depth: u32, max_crossings: usize) -> Self {
        ComplexityBudget {
            depth,
            max_crossings,
            loops: true,
            short_rays: true,
        }
    }

    pub fn admits(&self, c: &Curve) -> bool {
        c.depth() == self.depth
            && c.len() <= self.max_crossings
            && match c.kind() {
                CurveKind::Loop => self.loops,
                CurveKind::ShortRay => self.short_rays,
                CurveKind::LongRayTruncation => false,
            }
    }
}

/// Walk-tree nodes visited before enumeration gives up.
pub const NODE_CAP: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Piece {
    /// Sub-segment `j` of a gap, between its `j-1`-th and `j`-th obstacle events.
    Segment(u32, usize),
    InfinityWedge,
    BlockWedge(u32),
}

#[derive(Debug, Clone, Copy)]
enum Item {
    Piece(usize),
    End(usize),
}

/// Faces of one hemisphere: which face each piece lies in.
struct Faces {
    face_of: Vec<usize>,
    count: usize,
}

struct Layout {
    pieces: Vec<Piece>,
    faces: [Faces; 2],
}

fn anchor_order(circle: u64, anchor: u64, ends: &mut [(usize, u64)]) {
    // Chords sharing an anchor fan out without crossing: the one whose far
    // end is nearest in the positive direction sits closest to that side.
    ends.sort_by_key(|&(_, far)| std::cmp::Reverse((far + circle - anchor) % circle));
}

fn layout(model: EquatorModel, obstacles: &[&CrossingWord]) -> Layout {
    let gap_count = model.gap_count() as usize;
    let mut pieces = Vec::new();
    let mut segments = vec![Vec::new(); gap_count];
    let mut events_on_gap = vec![0usize; gap_count];
    let diagram = if obstacles.is_empty() {
        None
    } else {
        Some(ChordDiagram::build(obstacles))
    };
    if let Some(d) = &diagram {
        for (g, order) in d.gap_order.iter().enumerate() {
            events_on_gap[g] = order.len();
        }
    }
    for (g, segs) in segments.iter_mut().enumerate() {
        for j in 0..=events_on_gap[g] {
            segs.push(pieces.len());
            pieces.push(Piece::Segment(g as u32, j));
        }
    }
    let faces =
        [Hemisphere::North, Hemisphere::South].map(|h| hemisphere_faces(model, &diagram, h, &mut pieces, &segments));
    Layout { pieces, faces }
}

/// Builds the cyclic boundary sequence of hemisphere `h` and groups pieces
/// by the side of every obstacle chord they lie on.
fn hemisphere_faces(
    model: EquatorModel,
    diagram: &Option<ChordDiagram>,
    h: Hemisphere,
    pieces: &mut Vec<Piece>,
    segments: &[Vec<usize>],
) -> Faces {
    let scale = diagram.as_ref().map_or(1, |d| d.scale);
    // Chords of this hemisphere as boundary coordinates.
    let mut chords: Vec<(u64, u64)> = Vec::new();
    if let Some(d) = diagram {
        for cs in &d.chords {
            for c in cs {
                if c.hemisphere == h && c.from != c.to {
                    chords.push((c.from, c.to));
                }
            }
        }
    }
    // Endpoints grouped by coordinate.
    let mut at: HashMap<u64, Vec<(usize, u64)>> = HashMap::new();
    for (k, &(p, q)) in chords.iter().enumerate() {
        at.entry(p).or_default().push((k, q));
        at.entry(q).or_default().push((k, p));
    }
    let mut items: Vec<Item> = Vec::new();
    let circle = model.circle_len();
    for pos in 0..circle {
        let base = pos as u64 * scale;
        if pos % 2 == 0 {
            // Anchor: ∞ at 0, blocks at even positions.
            let kind = if pos == 0 {
                Piece::InfinityWedge
            } else {
                Piece::BlockWedge(pos / 2 - 1)
            };
            let mut ends = at.get(&base).cloned().unwrap_or_default();
            anchor_order(circle as u64 * scale, base, &mut ends);
            let start_piece = pieces.len();
            pieces.push(kind);
            items.push(Item::Piece(start_piece));
            for (k, _) in ends {
                items.push(Item::End(k));
                let id = pieces.len();
                pieces.push(kind);
                items.push(Item::Piece(id));
            }
        } else {
            let g = (pos - 1) / 2;
            let segs = &segments[g as usize];
            items.push(Item::Piece(segs[0]));
            for (j, &seg) in segs.iter().enumerate().skip(1) {
                // Events on this gap sit at base + j.
                for &(k, _) in at.get(&(base + j as u64)).map(|v| v.as_slice()).unwrap_or(&[]) {
                    items.push(Item::End(k));
                }
                items.push(Item::Piece(seg));
            }
        }
    }
    // Side signature of each piece: parity of chord endpoints passed so far.
    let words = chords.len().div_ceil(64).max(1);
    let mut sig = vec![0u64; words];
    let mut by_sig: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut face_of = vec![usize::MAX; pieces.len()];
    for it in &items {
        match *it {
            Item::End(k) => sig[k / 64] ^= 1 << (k % 64),
            Item::Piece(p) => {
                let next = by_sig.len();
                let f = *by_sig.entry(sig.clone()).or_insert(next);
                face_of[p] = f;
            }
        }
    }
    Faces {
        face_of,
        count: by_sig.len(),
    }
}

struct Walker<'a> {
    model: EquatorModel,
    budget: ComplexityBudget,
    layout: &'a Layout,
    /// Per hemisphere and face: reachable `(gap, face on the other side)`.
    moves: [Vec<Vec<(u32, usize)>>; 2],
    infinity: [Vec<bool>; 2],
    blocks: [Vec<Vec<u32>>; 2],
    found: BTreeSet<CrossingWord>,
    nodes: usize,
}

impl Walker<'_> {
    fn walk(&mut self, h: Hemisphere, face: usize, gaps: &mut Vec<u32>, start: Hemisphere) -> Result<()> {
        self.nodes += 1;
        if self.nodes > NODE_CAP {
            return Err(Error::Resource(format!("enumeration exceeded {NODE_CAP} walk nodes")));
        }
        let hi = h.index();
        if !gaps.is_empty() && self.budget.loops && self.infinity[hi][face] {
            self.found
                .insert(CrossingWord::new(self.model, start, gaps.clone(), Terminal::Loop));
        }
        if self.budget.short_rays {
            for &b in &self.blocks[hi][face] {
                self.found.insert(CrossingWord::new(
                    self.model,
                    start,
                    gaps.clone(),
                    Terminal::ShortRay(b),
                ));
            }
        }
        if gaps.len() == self.budget.max_crossings {
            return Ok(());
        }
        let moves = self.moves[hi][face].clone();
        for (g, next) in moves {
            if gaps.last() == Some(&g) {
                continue;
            }
            gaps.push(g);
            let prefix = CrossingWord::new(self.model, start, gaps.clone(), Terminal::Truncated);
            if is_simple_word(&prefix) {
                self.walk(h.other(), next, gaps, start)?;
            }
            gaps.pop();
        }
        Ok(())
    }
}

/// Every canonical curve within `budget` (at `model`) whose intersection
/// number with each obstacle is zero. Loops are returned in both
/// orientations; peripheral loops are excluded.
pub fn enumerate_disjoint(
    model: EquatorModel,
    obstacles: &[&CrossingWord],
    budget: ComplexityBudget,
) -> Result<Vec<Curve>> {
    if budget.depth != model.depth() {
        return Err(Error::DepthMismatch {
            left: budget.depth,
            right: model.depth(),
        });
    }
    for o in obstacles {
        if o.model != model {
            return Err(Error::DepthMismatch {
                left: o.model.depth(),
                right: model.depth(),
            });
        }
    }
    if !budget.loops && !budget.short_rays {
        return Ok(vec![]);
    }
    let lay = layout(model, obstacles);
    let mut moves: [Vec<Vec<(u32, usize)>>; 2] = Default::default();
    let mut infinity: [Vec<bool>; 2] = Default::default();
    let mut blocks: [Vec<Vec<u32>>; 2] = Default::default();
    for h in [Hemisphere::North, Hemisphere::South] {
        let (hi, oi) = (h.index(), h.other().index());
        let faces = &lay.faces[hi];
        let mut mv: Vec<BTreeSet<(u32, usize)>> = vec![BTreeSet::new(); faces.count];
        infinity[hi] = vec![false; faces.count];
        blocks[hi] = vec![Vec::new(); faces.count];
        for (p, piece) in lay.pieces.iter().enumerate() {
            let f = match faces.face_of.get(p) {
                Some(&f) if f != usize::MAX => f,
                _ => continue,
            };
            match *piece {
                Piece::Segment(g, _) => {
                    mv[f].insert((g, lay.faces[oi].face_of[p]));
                }
                Piece::InfinityWedge => infinity[hi][f] = true,
                Piece::BlockWedge(b) => {
                    if !blocks[hi][f].contains(&b) {
                        blocks[hi][f].push(b);
                    }
                }
            }
        }
        moves[hi] = mv.into_iter().map(|s| s.into_iter().collect()).collect();
    }
    let mut walker = Walker {
        model,
        budget,
        layout: &lay,
        moves,
        infinity,
        blocks,
        found: BTreeSet::new(),
        nodes: 0,
    };
    for h in [Hemisphere::North, Hemisphere::South] {
        let hi = h.index();
        let starts: BTreeSet<usize> = lay
            .pieces
            .iter()
            .enumerate()
            .filter(|(_, p)| matches!(p, Piece::InfinityWedge))
            .filter_map(|(i, _)| walker.layout.faces[hi].face_of.get(i).copied())
            .filter(|&f| f != usize::MAX)
            .collect();
        for f in starts {
            walker.walk(h, f, &mut Vec::new(), h)?;
        }
    }
    let found = std::mem::take(&mut walker.found);
    Ok(found
        .into_iter()
        .filter(|w| !w.is_peripheral() && is_simple_word(w))
        .filter(|w| obstacles.iter().all(|o| word_intersection_number(o, w) == Ok(0)))
        .map(Curve::trusted)
        .collect())
}

/// Every canonical curve within `budget`.
pub fn enumerate_budget(model: EquatorModel, budget: ComplexityBudget) -> Result<Vec<Curve>> {
    enumerate_disjoint(model, &[], budget)
}

/// Same set as [`enumerate_budget`] up to orientation: one representative per
/// unoriented curve.
pub fn enumerate_unoriented(model: EquatorModel, budget: ComplexityBudget) -> Result<Vec<Curve>> {
    let set: BTreeSet<Curve> = enumerate_budget(model, budget)?.iter().map(Curve::unoriented).collect();
    Ok(set.into_iter().collect())
}

/// Unoriented curves within `budget` disjoint from every obstacle.
pub fn enumerate_disjoint_unoriented(
    model: EquatorModel,
    obstacles: &[&CrossingWord],
    budget: ComplexityBudget,
) -> Result<Vec<Curve>> {
    let set: BTreeSet<Curve> = enumerate_disjoint(model, obstacles, budget)?
        .iter()
        .map(Curve::unoriented)
        .collect();
    Ok(set.into_iter().collect())
}

/// Reference enumeration by exhaustive word generation and filtering. Only
/// for small budgets; used to cross-check [`enumerate_disjoint`].
pub fn brute_force_disjoint(
    model: EquatorModel,
    obstacles: &[&CrossingWord],
    budget: ComplexityBudget,
) -> Result<Vec<Curve>> {
    let mut out = BTreeSet::new();
    let gap_count = model.gap_count();
    let mut stack: Vec<CrossingWord> = [Hemisphere::North, Hemisphere::South]
        .into_iter()
        .map(|h| CrossingWord::new(model, h, vec![], Terminal::Truncated))
        .collect();
    while let Some(w) = stack.pop() {
        let mut terminals = Vec::new();
        if budget.loops && !w.gaps.is_empty() {
            terminals.push(Terminal::Loop);
        }
        if budget.short_rays {
            terminals.extend((0..model.block_count()).map(Terminal::ShortRay));
        }
        for t in terminals {
            let c = CrossingWord {
                terminal: t,
                ..w.clone()
            };
            if c.is_peripheral() || !is_simple_word(&c) {
                continue;
            }
            let ok = obstacles.iter().all(|o| word_intersection_number(o, &c) == Ok(0));
            if ok {
                out.insert(c);
            }
        }
        if w.gaps.len() < budget.max_crossings {
            for g in 0..gap_count {
                if w.gaps.last() != Some(&g) {
                    let mut n = w.clone();
                    n.gaps.push(g);
                    stack.push(n);
                }
            }
        }
    }
    Ok(out.into_iter().map(Curve::trusted).collect())
}
