//! Finite and infinite unicorn paths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::LongRayGenerator;
use crate::intersect::{intersection_number, intersections_along, splice, IntersectionRecord, SplicePoint};
use crate::word::{embed_word, k_prefix, CrossingWord, Curve, Terminal};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnicornPath {
    pub terms: Vec<Curve>,
    /// `splices[i]` produced `terms[i]`; `None` for the two endpoints.
    pub splices: Vec<Option<SplicePoint>>,
    pub source: Curve,
    pub target: CrossingWord,
    /// False when an infinite path stopped before `max_terms` because the
    /// generator ran out or a splice point never stabilised.
    pub complete: bool,
}

impl UnicornPath {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Index pairs `(i, i+1)` whose terms intersect. Empty for a valid path.
    pub fn consecutive_violations(&self) -> Result<Vec<usize>> {
        let mut bad = Vec::new();
        for i in 0..self.terms.len().saturating_sub(1) {
            if intersection_number(&self.terms[i], &self.terms[i + 1])? != 0 {
                bad.push(i);
            }
        }
        Ok(bad)
    }

    pub fn same_terms(&self, other: &UnicornPath) -> bool {
        self.terms.len() == other.terms.len() && self.terms.iter().zip(&other.terms).all(|(x, y)| x.word() == y.word())
    }
}

fn require_loops(a: &Curve, b: &Curve) -> Result<()> {
    if a.model() != b.model() {
        return Err(Error::DepthMismatch {
            left: a.depth(),
            right: b.depth(),
        });
    }
    if a.terminal() != Terminal::Loop || b.terminal() != Terminal::Loop {
        return Err(Error::Invalid("unicorn paths join two loops".into()));
    }
    Ok(())
}

fn endpoints_only(a: &Curve, b: &Curve) -> UnicornPath {
    if a.word() == b.word() {
        UnicornPath {
            terms: vec![a.clone()],
            splices: vec![None],
            source: a.clone(),
            target: b.word().clone(),
            complete: true,
        }
    } else {
        UnicornPath {
            terms: vec![a.clone(), b.clone()],
            splices: vec![None, None],
            source: a.clone(),
            target: b.word().clone(),
            complete: true,
        }
    }
}

/// Every intersection point gives a candidate loop; keep the simple ones,
/// ordered by decreasing position along `a`.
pub fn unicorn_p1(a: &Curve, b: &Curve) -> Result<UnicornPath> {
    require_loops(a, b)?;
    let mut records = intersections_along(b.word(), a.word())?;
    if a.word() == b.word() || records.is_empty() {
        return Ok(endpoints_only(a, b));
    }
    records.sort_by_key(|r| std::cmp::Reverse(r.on_a));
    let mut path = UnicornPath {
        terms: vec![a.clone()],
        splices: vec![None],
        source: a.clone(),
        target: b.word().clone(),
        complete: true,
    };
    for r in records {
        let point = SplicePoint::from_record(r);
        match splice(b.word(), a.word(), &point) {
            Ok(c) if c.is_canonical() => {
                path.terms.push(c);
                path.splices.push(Some(point));
            }
            Ok(_) | Err(Error::NonEssential) => {}
            Err(e) => return Err(e),
        }
    }
    path.terms.push(b.clone());
    path.splices.push(None);
    Ok(path)
}

/// Next splice point: the first record along `b` lying on `a` strictly before `limit`.
fn next_point(records: &[IntersectionRecord], limit: Option<(usize, usize)>) -> Option<IntersectionRecord> {
    records.iter().find(|r| limit.is_none_or(|l| r.on_a < l)).copied()
}

/// Inductive construction: repeatedly splice at the first intersection along `b`.
pub fn unicorn_p2(a: &Curve, b: &Curve) -> Result<UnicornPath> {
    require_loops(a, b)?;
    let records = intersections_along(b.word(), a.word())?;
    if a.word() == b.word() || records.is_empty() {
        return Ok(endpoints_only(a, b));
    }
    let mut path = UnicornPath {
        terms: vec![a.clone()],
        splices: vec![None],
        source: a.clone(),
        target: b.word().clone(),
        complete: true,
    };
    let mut limit = None;
    while let Some(r) = next_point(&records, limit) {
        let point = SplicePoint::from_record(r);
        path.terms.push(splice(b.word(), a.word(), &point)?);
        path.splices.push(Some(point));
        limit = Some(r.on_a);
    }
    path.terms.push(b.clone());
    path.splices.push(None);
    Ok(path)
}

/// Longest prefix the infinite construction will request before giving up.
pub const MAX_PREFIX: usize = 1 << 13;

/// First `max_terms` terms of the unicorn path from `a` toward the long ray
/// produced by `gen`. A splice point is accepted once doubling the prefix
/// length leaves it unchanged.
pub fn unicorn_infinite(a: &Curve, gen: &dyn LongRayGenerator, max_terms: usize) -> Result<UnicornPath> {
    if max_terms == 0 {
        return Err(Error::Invalid("max_terms must be at least 1".into()));
    }
    if a.terminal() != Terminal::Loop {
        return Err(Error::Invalid("infinite unicorn paths start from a loop".into()));
    }
    let depth = a.depth().max(gen.max_depth());
    let aw = embed_word(a.word(), depth - a.depth())?;
    let source = Curve::canonical(aw.clone())?;
    let fetch = |n: usize| -> Result<CrossingWord> {
        let w = gen.prefix(n)?;
        embed_word(&w, depth - w.model.depth())
    };
    let mut n = (4 * a.len()).max(16);
    let mut terms = vec![source.clone()];
    let mut splices = vec![None];
    // The previous splice point, identified by its place along the ray. Its
    // rank along `a` shifts as the prefix grows, so it is looked up again in
    // every record list.
    let mut previous: Option<(usize, usize)> = None;
    let mut complete = true;
    let mut last_used = 0;
    let next_at = |len: usize, previous: Option<(usize, usize)>| -> Result<Option<Option<IntersectionRecord>>> {
        let records = intersections_along(&fetch(len)?, &aw)?;
        let limit = match previous {
            None => None,
            Some(on_b) => match records.iter().find(|r| r.on_b == on_b) {
                Some(r) => Some(r.on_a),
                None => return Ok(None),
            },
        };
        Ok(Some(next_point(&records, limit)))
    };
    let key = |r: &Option<IntersectionRecord>| r.map(|r| (r.on_b, r.on_a.0, r.hemisphere));
    'terms: while terms.len() < max_terms {
        loop {
            let n1 = n.min(gen.horizon());
            let n2 = (2 * n).min(gen.horizon());
            let p1 = next_at(n1, previous)?;
            last_used = n1;
            let accepted = if n1 == n2 {
                // Cannot double any more: the generator is exhausted.
                complete = false;
                match p1 {
                    Some(p) => p,
                    None => break 'terms,
                }
            } else {
                match (p1, next_at(n2, previous)?) {
                    (Some(x), Some(y)) if key(&x) == key(&y) => x,
                    _ => {
                        if 2 * n > MAX_PREFIX {
                            complete = false;
                            break 'terms;
                        }
                        n *= 2;
                        continue;
                    }
                }
            };
            match accepted {
                Some(r) => {
                    let point = SplicePoint::from_record(r);
                    terms.push(splice(&fetch(n1)?, &aw, &point)?);
                    splices.push(Some(point));
                    previous = Some(r.on_b);
                    continue 'terms;
                }
                None => break 'terms,
            }
        }
    }
    let target = fetch(last_used.max(1).min(gen.horizon()))?;
    Ok(UnicornPath {
        source,
        terms,
        splices,
        target,
        complete,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubpathClass {
    Subpath,
    AdjacentJump,
    Violation,
}

/// Recomputes the path between terms `i` and `j` and classifies it against
/// the subpath dichotomy.
pub fn check_subpath_property(path: &UnicornPath, i: usize, j: usize) -> Result<SubpathClass> {
    if i >= j || j >= path.terms.len() {
        return Err(Error::IndexOutOfRange(format!(
            "({i}, {j}) in a path of {}",
            path.terms.len()
        )));
    }
    // A spliced term runs out along the target and back along the source.
    // As the source of the recomputed path it must start on its source side.
    let source = if i == 0 {
        path.terms[0].clone()
    } else {
        path.terms[i].reversed()
    };
    let sub = unicorn_p2(&source, &path.terms[j])?;
    let expected = &path.terms[i..=j];
    let matches = sub.terms.len() == expected.len()
        && sub
            .terms
            .iter()
            .zip(expected)
            .all(|(x, y)| x.unoriented() == y.unoriented());
    if matches {
        return Ok(SubpathClass::Subpath);
    }
    if j == i + 2 && intersection_number(&path.terms[i], &path.terms[j])? == 0 {
        return Ok(SubpathClass::AdjacentJump);
    }
    Ok(SubpathClass::Violation)
}

/// For every `k` with `k * ceil(p/2) < len`, every term past index
/// `k * ceil(p/2)` must share its first `k` signed crossings with `target`.
/// Returns the violating `(term index, k)` pairs.
pub fn begin_bound_violations(a: &Curve, target: &CrossingWord, path: &UnicornPath) -> Vec<(usize, usize)> {
    let p = a.len();
    let half = p.div_ceil(2).max(1);
    let mut bad = Vec::new();
    let n = path.terms.len();
    let mut k = 1;
    while k * half < n {
        let want = match k_prefix(target, k) {
            Ok(w) => w,
            Err(_) => break,
        };
        for i in (k * half + 1)..n {
            let t = path.terms[i].word();
            let ok = match (k_prefix(t, k), common_prefix_depth(t, target)) {
                (Ok(have), true) => have == want,
                _ => false,
            };
            if !ok {
                bad.push((i, k));
            }
        }
        k += 1;
    }
    bad
}

fn common_prefix_depth(a: &CrossingWord, b: &CrossingWord) -> bool {
    a.model == b.model
}

pub fn begin_bound_check(a: &Curve, target: &CrossingWord, path: &UnicornPath) -> bool {
    begin_bound_violations(a, target, path).is_empty()
}

/// Indices of terms of `p` that meet every term of `q`. For disjoint
/// sources the Hausdorff bound says this is empty.
pub fn hausdorff_violations(p: &UnicornPath, q: &UnicornPath) -> Result<Vec<usize>> {
    let mut bad = Vec::new();
    for (i, x) in p.terms.iter().enumerate() {
        let mut near = false;
        for y in &q.terms {
            if intersection_number(x, y)? == 0 {
                near = true;
                break;
            }
        }
        if !near {
            bad.push(i);
        }
    }
    Ok(bad)
}

/// Whether the finite path from the source to term `j` consists of the
/// first `j + 1` terms of `path`, compared up to orientation.
pub fn restricts_to_prefix(path: &UnicornPath, j: usize) -> Result<bool> {
    if j >= path.terms.len() {
        return Err(Error::IndexOutOfRange(format!("{j} in a path of {}", path.terms.len())));
    }
    let sub = unicorn_p2(&path.terms[0], &path.terms[j])?;
    Ok(sub.terms.len() == j + 1
        && sub
            .terms
            .iter()
            .zip(&path.terms)
            .all(|(x, y)| x.unoriented() == y.unoriented()))
}
