//! Event order along each gap and the resulting chord diagram.
//!
//! Two events on one gap are ordered by walking both strands into a common
//! hemisphere until their itineraries split. At the split the strand heading
//! to the nearer boundary point (measured in the positive direction) sits
//! further along the gap; every shared step in between reverses the answer.
//! A side that ends on a shared anchor or on a truncation is inconclusive and
//! the other hemisphere decides.

use std::cmp::Ordering;

use crate::equator::EquatorModel;
use crate::word::{CrossingWord, Hemisphere, Terminal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Event(usize),
    Anchor(u32),
    Unknown,
}

fn step(w: &CrossingWord, i: usize, forward: bool) -> Step {
    if forward {
        if i + 1 < w.gaps.len() {
            Step::Event(i + 1)
        } else {
            match w.terminal {
                Terminal::Loop => Step::Anchor(0),
                Terminal::ShortRay(b) => Step::Anchor(w.model.block_pos(b)),
                Terminal::Truncated => Step::Unknown,
            }
        }
    } else if i == 0 {
        Step::Anchor(0)
    } else {
        Step::Event(i - 1)
    }
}

/// Compares event `i1` of `w1` with event `i2` of `w2` (same gap) using the
/// arcs that lie in hemisphere `h`. `None` means this side cannot decide;
/// otherwise the answer comes with the number of steps walked.
fn side_compare(
    m: EquatorModel,
    w1: &CrossingWord,
    i1: usize,
    w2: &CrossingWord,
    i2: usize,
    h: Hemisphere,
) -> Option<(Ordering, usize)> {
    let fwd1 = w1.hemisphere_after(i1 + 1) == h;
    let fwd2 = w2.hemisphere_after(i2 + 1) == h;
    let (mut c1, mut c2) = (i1, i2);
    let mut here = m.gap_pos(w1.gaps[i1]);
    let mut flip = false;
    let mut steps = 0;
    loop {
        steps += 1;
        let s1 = step(w1, c1, fwd1);
        let s2 = step(w2, c2, fwd2);
        let p1 = match s1 {
            Step::Event(j) => m.gap_pos(w1.gaps[j]),
            Step::Anchor(p) => p,
            Step::Unknown => return None,
        };
        let p2 = match s2 {
            Step::Event(j) => m.gap_pos(w2.gaps[j]),
            Step::Anchor(p) => p,
            Step::Unknown => return None,
        };
        if p1 == p2 {
            match (s1, s2) {
                (Step::Event(j1), Step::Event(j2)) => {
                    c1 = j1;
                    c2 = j2;
                    here = p1;
                    flip = !flip;
                    continue;
                }
                _ => return None,
            }
        }
        let ord = m.offset(here, p2).cmp(&m.offset(here, p1));
        return Some((if flip { ord.reverse() } else { ord }, steps));
    }
}

/// Combines both hemispheres. When they disagree the strands must cross
/// somewhere along their common band; the nearer divergence wins, which puts
/// the crossing in the middle of the band independently of orientation.
fn decide(north: Option<(Ordering, usize)>, south: Option<(Ordering, usize)>) -> Option<Ordering> {
    match (north, south) {
        (None, None) => None,
        (Some((o, _)), None) | (None, Some((o, _))) => Some(o),
        (Some((n, dn)), Some((s, ds))) => Some(if n == s || dn <= ds { n } else { s }),
    }
}

/// Order of two events of one curve.
pub fn self_compare(w: &CrossingWord, i: usize, j: usize) -> Ordering {
    if i == j {
        return Ordering::Equal;
    }
    let m = w.model;
    decide(
        side_compare(m, w, i, w, j, Hemisphere::North),
        side_compare(m, w, i, w, j, Hemisphere::South),
    )
    .unwrap_or_else(|| i.cmp(&j))
}

/// Order of an event of an earlier curve against an event of a later curve.
/// Identical strands (a curve against a copy or its reverse) are
/// interleaved by index parity, which keeps parallel copies from crossing.
pub fn cross_compare(wr: &CrossingWord, ir: usize, wo: &CrossingWord, io: usize) -> Ordering {
    let m = wr.model;
    decide(
        side_compare(m, wr, ir, wo, io, Hemisphere::North),
        side_compare(m, wr, ir, wo, io, Hemisphere::South),
    )
    .unwrap_or(if ir.is_multiple_of(2) {
        Ordering::Less
    } else {
        Ordering::Greater
    })
}

/// Stable merge sort that tolerates inconsistent comparators.
pub(crate) fn merge_sort_by<T: Copy, F: FnMut(&T, &T) -> Ordering>(v: &mut [T], cmp: &mut F) {
    let n = v.len();
    if n <= 1 {
        return;
    }
    let mid = n / 2;
    merge_sort_by(&mut v[..mid], cmp);
    merge_sort_by(&mut v[mid..], cmp);
    let left: Vec<T> = v[..mid].to_vec();
    let right: Vec<T> = v[mid..].to_vec();
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < left.len() && j < right.len() {
        if cmp(&right[j], &left[i]) == Ordering::Less {
            v[k] = right[j];
            j += 1;
        } else {
            v[k] = left[i];
            i += 1;
        }
        k += 1;
    }
    while i < left.len() {
        v[k] = left[i];
        i += 1;
        k += 1;
    }
    while j < right.len() {
        v[k] = right[j];
        j += 1;
        k += 1;
    }
}

/// A chord: one hemisphere arc of a curve between two boundary points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chord {
    pub hemisphere: Hemisphere,
    pub from: u64,
    pub to: u64,
}

impl Chord {
    fn span(&self) -> (u64, u64) {
        if self.from < self.to {
            (self.from, self.to)
        } else {
            (self.to, self.from)
        }
    }

    /// True when the endpoint pairs interleave. Shared endpoints (anchors)
    /// never count as a crossing.
    pub fn crosses(&self, other: &Chord) -> bool {
        if self.hemisphere != other.hemisphere {
            return false;
        }
        let (a, b) = self.span();
        let (c, d) = other.span();
        if a == c || a == d || b == c || b == d {
            return false;
        }
        let inside = |x: u64| a < x && x < b;
        inside(c) != inside(d)
    }
}

/// Event positions and chords for a set of curves drawn together.
#[derive(Debug, Clone)]
pub struct ChordDiagram {
    pub model: EquatorModel,
    /// Coordinate scale: a boundary position `p` occupies `[p*scale, (p+1)*scale)`.
    pub scale: u64,
    /// `coords[c][i]`: coordinate of event `i` of curve `c`.
    pub coords: Vec<Vec<u64>>,
    /// `chords[c][j]`: chord `j` of curve `c`, from boundary point `j` to `j+1`.
    pub chords: Vec<Vec<Chord>>,
    /// Per gap, the events in increasing position as `(curve, index)`.
    pub gap_order: Vec<Vec<(usize, usize)>>,
}

impl ChordDiagram {
    /// Lays out `words` together. All words must share one model.
    pub fn build(words: &[&CrossingWord]) -> ChordDiagram {
        let m = words[0].model;
        let gap_count = m.gap_count() as usize;
        let mut per_gap: Vec<Vec<Vec<(usize, usize)>>> = vec![vec![Vec::new(); words.len()]; gap_count];
        for (c, w) in words.iter().enumerate() {
            for (i, &g) in w.gaps.iter().enumerate() {
                per_gap[g as usize][c].push((c, i));
            }
        }
        let mut gap_order: Vec<Vec<(usize, usize)>> = Vec::with_capacity(gap_count);
        for lists in per_gap.iter_mut() {
            let mut acc: Vec<(usize, usize)> = Vec::new();
            for (c, list) in lists.iter_mut().enumerate() {
                let w = words[c];
                merge_sort_by(list, &mut |x: &(usize, usize), y: &(usize, usize)| {
                    self_compare(w, x.1, y.1)
                });
                if acc.is_empty() {
                    acc = list.clone();
                    continue;
                }
                let mut merged = Vec::with_capacity(acc.len() + list.len());
                let (mut i, mut j) = (0, 0);
                while i < acc.len() && j < list.len() {
                    let (rc, ri) = acc[i];
                    let (_, oi) = list[j];
                    let ord = if rc == c {
                        self_compare(w, ri, oi)
                    } else {
                        cross_compare(words[rc], ri, w, oi)
                    };
                    if ord == Ordering::Greater {
                        merged.push(list[j]);
                        j += 1;
                    } else {
                        merged.push(acc[i]);
                        i += 1;
                    }
                }
                merged.extend_from_slice(&acc[i..]);
                merged.extend_from_slice(&list[j..]);
                acc = merged;
            }
            gap_order.push(acc);
        }
        let total: usize = words.iter().map(|w| w.gaps.len()).sum();
        let scale = total as u64 + 2;
        let mut coords: Vec<Vec<u64>> = words.iter().map(|w| vec![0; w.gaps.len()]).collect();
        for (g, order) in gap_order.iter().enumerate() {
            let base = m.gap_pos(g as u32) as u64 * scale;
            for (r, &(c, i)) in order.iter().enumerate() {
                coords[c][i] = base + 1 + r as u64;
            }
        }
        let chords = words
            .iter()
            .enumerate()
            .map(|(c, w)| chords_of(w, &coords[c], scale))
            .collect();
        ChordDiagram {
            model: m,
            scale,
            coords,
            chords,
            gap_order,
        }
    }

    pub fn self_crossings(&self, c: usize) -> usize {
        let ch = &self.chords[c];
        let mut n = 0;
        for i in 0..ch.len() {
            for j in i + 1..ch.len() {
                if ch[i].crosses(&ch[j]) {
                    n += 1;
                }
            }
        }
        n
    }

    /// Pairs `(chord of c1, chord of c2)` that cross.
    pub fn crossing_pairs(&self, c1: usize, c2: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, x) in self.chords[c1].iter().enumerate() {
            for (j, y) in self.chords[c2].iter().enumerate() {
                if x.crosses(y) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Circle length in coordinate units.
    pub fn circle(&self) -> u64 {
        self.model.circle_len() as u64 * self.scale
    }
}

fn chords_of(w: &CrossingWord, coords: &[u64], scale: u64) -> Vec<Chord> {
    let n = w.gaps.len();
    let mut points: Vec<u64> = Vec::with_capacity(n + 2);
    points.push(0);
    points.extend_from_slice(coords);
    match w.terminal {
        Terminal::Loop => points.push(0),
        Terminal::ShortRay(b) => points.push(w.model.block_pos(b) as u64 * scale),
        Terminal::Truncated => {}
    }
    points
        .windows(2)
        .enumerate()
        .map(|(j, p)| Chord {
            hemisphere: w.hemisphere_after(j),
            from: p[0],
            to: p[1],
        })
        .collect()
}

pub fn is_simple_word(w: &CrossingWord) -> bool {
    if w.gaps.len() <= 1 {
        return true;
    }
    ChordDiagram::build(&[w]).self_crossings(0) == 0
}
