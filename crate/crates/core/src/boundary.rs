//! Finite-scale experiments around long rays: k-beginning, cover
//! convergence, cliques, filling certificates, the α forcing test and growth
//! of infinite unicorn paths.

use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_disjoint, enumerate_unoriented, ComplexityBudget};
use crate::error::{Error, Result};
use crate::generator::{block_spiral, AlphaFamily, EventuallyPeriodic, LongRayGenerator};
use crate::graph::BudgetGraph;
use crate::intersect::{intersection_number, word_intersection_number};
use crate::unicorn::unicorn_infinite;
use crate::word::{common_depth, embed_word, k_prefix, CrossingWord, Curve, Hemisphere, Terminal};

/// True when `x` and `y` share their first `k` signed crossings once both
/// are expressed at the deeper of their depths.
pub fn k_begins_like(x: &CrossingWord, y: &CrossingWord, k: usize) -> Result<bool> {
    let (x, y) = common_depth(x, y)?;
    Ok(k_prefix(&x, k)? == k_prefix(&y, k)?)
}

/// [`k_begins_like`] against the first `k` crossings of a generator.
pub fn k_begins_like_ray(x: &CrossingWord, l: &dyn LongRayGenerator, k: usize) -> Result<bool> {
    if k > l.horizon() {
        return Err(Error::TooShort {
            needed: k,
            available: l.horizon(),
        });
    }
    k_begins_like(x, &l.prefix(k)?, k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverConvergence {
    /// `first_index[k-1]`: least `I` such that every term from `I` on
    /// k-begins like the ray; `None` when the last term does not.
    pub first_index: Vec<Option<usize>>,
    pub converges: bool,
}

/// Checks eventual k-beginning for every `k <= max_k`. Terms shorter than
/// `k` do not k-begin like anything.
pub fn cover_convergence_check(seq: &[Curve], l: &dyn LongRayGenerator, max_k: usize) -> Result<CoverConvergence> {
    if max_k > l.horizon() {
        return Err(Error::TooShort {
            needed: max_k,
            available: l.horizon(),
        });
    }
    let target = l.prefix(max_k)?;
    let mut first_index = Vec::with_capacity(max_k);
    for k in 1..=max_k {
        let mut idx = None;
        for (i, t) in seq.iter().enumerate().rev() {
            let ok = t.len() >= k && k_begins_like(t.word(), &target, k)?;
            if !ok {
                break;
            }
            idx = Some(i);
        }
        first_index.push(idx);
    }
    let converges = !seq.is_empty() && first_index.iter().all(Option::is_some);
    Ok(CoverConvergence { first_index, converges })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueReport {
    pub members: Vec<String>,
    pub prefix_len: usize,
    pub depth_schedule: Vec<u32>,
    /// `pairwise[d][i][j]`: prefixes `i` and `j` are disjoint at the `d`-th
    /// scheduled depth.
    pub pairwise: Vec<Vec<Vec<bool>>>,
    pub is_clique: bool,
}

/// Pairwise disjointness of the first `prefix_len` crossings of each member,
/// embedded at every scheduled depth.
pub fn verify_clique(
    members: &[&dyn LongRayGenerator],
    prefix_len: usize,
    depth_schedule: &[u32],
) -> Result<CliqueReport> {
    if members.is_empty() {
        return Err(Error::Invalid("a clique check needs at least one member".into()));
    }
    let prefixes: Vec<CrossingWord> = members.iter().map(|g| g.prefix(prefix_len)).collect::<Result<_>>()?;
    let mut pairwise = Vec::new();
    for &d in depth_schedule {
        let words: Vec<CrossingWord> = prefixes
            .iter()
            .map(|w| {
                let have = w.model.depth();
                if d < have {
                    return Err(Error::DepthMismatch { left: d, right: have });
                }
                embed_word(w, d - have)
            })
            .collect::<Result<_>>()?;
        let n = words.len();
        let mut grid = vec![vec![true; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let ok = word_intersection_number(&words[i], &words[j])? == 0;
                grid[i][j] = ok;
                grid[j][i] = ok;
            }
        }
        pairwise.push(grid);
    }
    let is_clique = pairwise.iter().flatten().flatten().all(|&b| b);
    Ok(CliqueReport {
        members: members.iter().map(|g| g.name()).collect(),
        prefix_len,
        depth_schedule: depth_schedule.to_vec(),
        pairwise,
        is_clique,
    })
}

/// Four single-block spirals at depth 2, one around each block. Every pair
/// is disjoint at every tested truncation.
pub fn spiral_clique() -> Result<Vec<EventuallyPeriodic>> {
    let starts = [
        Hemisphere::North,
        Hemisphere::North,
        Hemisphere::South,
        Hemisphere::South,
    ];
    (0..4).map(|b| block_spiral(2, b, b + 1, starts[b as usize])).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FillingKind {
    LoopFillingAtBudget,
    RayFillingAtBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FillingOutcome {
    /// Every budget curve of the requested kind meets the prefix.
    Certificate {
        ray: String,
        kind: FillingKind,
        budget: ComplexityBudget,
        prefix_len: usize,
        checked_count: usize,
    },
    /// A budget curve disjoint from the prefix.
    Negative {
        ray: String,
        kind: FillingKind,
        budget: ComplexityBudget,
        prefix_len: usize,
        witness: Curve,
    },
}

/// Tests every canonical loop (or short ray) within `budget` against the
/// first `prefix_len` crossings of `l`. Budget curves are embedded to the
/// prefix depth when that is deeper.
pub fn filling_certificate(
    l: &dyn LongRayGenerator,
    budget: ComplexityBudget,
    kind: FillingKind,
    prefix_len: usize,
) -> Result<FillingOutcome> {
    let budget = match kind {
        FillingKind::LoopFillingAtBudget => ComplexityBudget {
            loops: budget.loops,
            short_rays: false,
            ..budget
        },
        FillingKind::RayFillingAtBudget => ComplexityBudget {
            loops: false,
            short_rays: budget.short_rays,
            ..budget
        },
    };
    let prefix = l.prefix(prefix_len.min(l.horizon()))?;
    let depth = prefix.model.depth().max(budget.depth);
    let prefix = embed_word(&prefix, depth - prefix.model.depth())?;
    let model = crate::equator::make_model(budget.depth)?;
    let candidates = enumerate_unoriented(model, budget)?;
    for c in &candidates {
        let up = embed_word(c.word(), depth - budget.depth)?;
        if word_intersection_number(&prefix, &up)? == 0 {
            return Ok(FillingOutcome::Negative {
                ray: l.name(),
                kind,
                budget,
                prefix_len: prefix.len(),
                witness: c.clone(),
            });
        }
    }
    Ok(FillingOutcome::Certificate {
        ray: l.name(),
        kind,
        budget,
        prefix_len: prefix.len(),
        checked_count: candidates.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcingReport {
    pub k: usize,
    /// Crossings of stage `k` and `k + 1`.
    pub long_k: usize,
    pub long_next: usize,
    pub depth: u32,
    pub budget: ComplexityBudget,
    pub disjoint_count: usize,
    pub violations: Vec<Curve>,
    pub vacuous: bool,
    pub passed: bool,
}

/// Every budget curve disjoint from `obstacle` must begin with all of
/// `stage`'s signed crossings. The check runs at the deeper of the budget
/// depth and the obstacle depth.
pub fn forcing_check(
    k: usize,
    stage: &CrossingWord,
    obstacle: &CrossingWord,
    budget: ComplexityBudget,
) -> Result<ForcingReport> {
    let depth = budget.depth.max(obstacle.model.depth());
    let obstacle_up = embed_word(obstacle, depth - obstacle.model.depth())?;
    let stage_up = embed_word(stage, depth - stage.model.depth())?;
    let budget = ComplexityBudget { depth, ..budget };
    let long_k = stage.len();
    let want = k_prefix(&stage_up, long_k)?;
    let found = enumerate_disjoint(obstacle_up.model, &[&obstacle_up], budget)?;
    let violations: Vec<Curve> = found
        .iter()
        .filter(|c| k_prefix(c.word(), long_k).map_or(true, |p| p != want))
        .cloned()
        .collect();
    Ok(ForcingReport {
        k,
        long_k,
        long_next: obstacle.len(),
        depth,
        budget,
        disjoint_count: found.len(),
        vacuous: found.is_empty(),
        passed: violations.is_empty(),
        violations,
    })
}

/// Stage `k + 1` truncated after its last crossing: the obstacle of the
/// forcing test.
pub fn forcing_obstacle(family: &AlphaFamily, k: usize) -> Result<CrossingWord> {
    let next = family.stage(k + 1)?;
    Ok(next.truncated(next.len()))
}

/// Curves disjoint from `long(α_{k+1})` crossings of `α_{k+1}` must
/// `long(α_k)`-begin like `α_k`, where `long` counts equator crossings.
pub fn alpha_forcing_test(family: &AlphaFamily, k: usize, budget: ComplexityBudget) -> Result<ForcingReport> {
    if k == 0 {
        return Err(Error::Invalid("k counts from 1".into()));
    }
    forcing_check(k, family.stage(k)?, &forcing_obstacle(family, k)?, budget)
}

/// The forcing obstacle with the crossing that closes the turn around `∞`
/// moved to the next gap. The corridor around the start of the ray opens,
/// so the forcing test should fail: a negative control.
pub fn mutated_obstacle(family: &AlphaFamily, k: usize) -> Result<CrossingWord> {
    let mut t = forcing_obstacle(family, k)?;
    let i = 2 * family.long(k)? + 3;
    let count = t.model.gap_count();
    t.gaps[i] = (t.gaps[i] + 1) % count;
    Ok(t)
}

pub fn alpha_negative_control(family: &AlphaFamily, k: usize, budget: ComplexityBudget) -> Result<ForcingReport> {
    forcing_check(k, family.stage(k)?, &mutated_obstacle(family, k)?, budget)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub index: usize,
    pub crossings: usize,
    /// Lower bound on the budget-graph distance from the first term.
    pub lower: u32,
    /// Upper bound: the exact budget distance when resolved, otherwise the
    /// position along the path (consecutive terms are disjoint).
    pub upper: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub ray: String,
    pub source: Curve,
    pub depth: u32,
    pub budget: ComplexityBudget,
    pub rows: Vec<GrowthRow>,
    /// False when the path stopped early or a splice point was taken at
    /// the generator horizon without confirmation.
    pub complete: bool,
    /// `twice_gromov_lower[i][j]`: doubled lower bound on `(x_i·x_j)_a`.
    pub twice_gromov_lower: Vec<Vec<i64>>,
    /// Lower bounds never decrease from index 2 on.
    pub nondecreasing_after_burn_in: bool,
    /// First index whose lower bound reaches 3.
    pub first_at_three: Option<usize>,
    pub max_lower: u32,
}

/// Distance bounds from `a` along `P(a, l)`. The budget depth is raised to
/// the depth the path lives at.
pub fn growth_experiment(
    a: &Curve,
    l: &dyn LongRayGenerator,
    max_terms: usize,
    max_crossings: usize,
) -> Result<GrowthReport> {
    let path = unicorn_infinite(a, l, max_terms)?;
    let depth = path.terms[0].depth();
    let budget = ComplexityBudget::mixed(depth, max_crossings);
    let graph = BudgetGraph::new(budget);
    let source = &path.terms[0];
    let mut rows = Vec::new();
    for (i, x) in path.terms.iter().enumerate() {
        let d = graph.distance(source, x, 2)?;
        rows.push(GrowthRow {
            index: i,
            crossings: x.len(),
            lower: d.lower,
            upper: d.exact().unwrap_or(i as u32).min(i as u32),
        });
    }
    let n = rows.len();
    let mut twice_gromov_lower = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let gap = (i as i64 - j as i64).abs();
            let v = rows[i].lower as i64 + rows[j].lower as i64 - gap;
            twice_gromov_lower[i][j] = v.max(0);
        }
    }
    let nondecreasing_after_burn_in = rows.windows(2).skip(2).all(|w| w[1].lower >= w[0].lower);
    let first_at_three = rows.iter().position(|r| r.lower >= 3);
    let max_lower = rows.iter().map(|r| r.lower).max().unwrap_or(0);
    Ok(GrowthReport {
        ray: l.name(),
        source: source.clone(),
        depth,
        budget,
        rows,
        complete: path.complete,
        twice_gromov_lower,
        nondecreasing_after_burn_in,
        first_at_three,
        max_lower,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundednessReport {
    pub ray: String,
    pub avoided_ray: Curve,
    pub designated: Curve,
    pub terms: usize,
    /// `distances[i]`: resolved budget distance of term `i` from the
    /// designated loop, or `None` when it exceeded 2.
    pub distances: Vec<Option<u32>>,
    pub within_two: bool,
}

/// The tight loop around a short ray: out along the ray, around its block,
/// back along the other side. Both flanks and both return lengths are
/// tried; the shortest simple loop disjoint from the ray wins.
pub fn loop_around(ray: &CrossingWord) -> Result<Curve> {
    let b = match ray.terminal {
        Terminal::ShortRay(b) => b,
        _ => return Err(Error::Invalid("loop_around needs a short ray".into())),
    };
    let n = ray.gaps.len();
    let mut best: Option<Curve> = None;
    for flank in [b, b + 1] {
        for back in [n.saturating_sub(1), n] {
            let mut gaps = ray.gaps.clone();
            gaps.push(flank);
            gaps.extend(ray.gaps[..back].iter().rev());
            let w = CrossingWord::new(ray.model, ray.start, gaps, Terminal::Loop);
            if w.has_bigon() || w.is_peripheral() || !crate::order::is_simple_word(&w) {
                continue;
            }
            if word_intersection_number(ray, &w)? != 0 {
                continue;
            }
            let c = Curve::canonical(w)?;
            if best.as_ref().is_none_or(|x| c.len() < x.len()) {
                best = Some(c);
            }
        }
    }
    best.ok_or_else(|| Error::Invalid("no simple loop around the ray".into()))
}

/// Non-ray-filling check: given a short ray `r` disjoint from `l`, picks a
/// loop `a` that meets `l` but is disjoint from the loop around `r`, and
/// checks every term of `P(a, l)` is within budget distance 2 of `a`.
pub fn bounded_path_check(
    l: &dyn LongRayGenerator,
    r: &Curve,
    max_terms: usize,
    max_crossings: usize,
) -> Result<BoundednessReport> {
    let depth = l.max_depth().max(r.depth());
    let model = crate::equator::make_model(depth)?;
    let r_up = Curve::canonical(embed_word(r.word(), depth - r.depth())?)?;
    let c = loop_around(r_up.word())?;
    let probe = embed_word(
        &l.prefix(64.min(l.horizon()))?,
        depth - l.depth_for(64.min(l.horizon())),
    )?;
    let candidates = enumerate_unoriented(model, ComplexityBudget::loops(depth, 4))?;
    let designated = candidates
        .into_iter()
        .find(|a| {
            (intersection_number(a, &c) == Ok(0)) && word_intersection_number(&probe, a.word()).is_ok_and(|n| n > 0)
        })
        .ok_or_else(|| Error::Invalid("no designated loop meets the ray and misses the loop around r".into()))?;
    let path = unicorn_infinite(&designated, l, max_terms)?;
    let graph = BudgetGraph::new(ComplexityBudget::mixed(depth, max_crossings));
    let distances = path
        .terms
        .iter()
        .map(|x| graph.distance(&designated, x, 2).map(|d| d.exact()))
        .collect::<Result<Vec<_>>>()?;
    let within_two = distances.iter().all(Option::is_some);
    Ok(BoundednessReport {
        ray: l.name(),
        avoided_ray: r_up,
        designated,
        terms: path.len(),
        distances,
        within_two,
    })
}

/// Single-block and multi-block spirals that leave at least one block
/// outside, each paired with a short ray to an outside block.
pub fn non_filling_family(depths: &[u32]) -> Result<Vec<(EventuallyPeriodic, Curve)>> {
    let mut out = Vec::new();
    for &d in depths {
        let m = crate::equator::make_model(d)?;
        let last = m.last_gap();
        for lo in 0..last {
            for hi in lo + 1..=last {
                if lo == 0 && hi == last {
                    continue;
                }
                let outside = if lo > 0 { 0 } else { m.block_count() - 1 };
                for h in [Hemisphere::North, Hemisphere::South] {
                    let l = block_spiral(d, lo, hi, h)?;
                    let r = [Hemisphere::North, Hemisphere::South]
                        .into_iter()
                        .map(|s| CrossingWord::new(m, s, vec![], Terminal::ShortRay(outside)))
                        .find(|w| {
                            let p = l.prefix(4 * (hi - lo + 1) as usize).expect("periodic prefix");
                            word_intersection_number(&p, w) == Ok(0)
                        });
                    if let Some(w) = r {
                        out.push((l, Curve::canonical(w)?));
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFillingCandidate {
    pub short_ray: Curve,
    pub middle: String,
    pub end: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFillingSearch {
    pub depth: u32,
    pub prefix_len: usize,
    pub budget: ComplexityBudget,
    pub generators: usize,
    /// Generators with no budget short ray disjoint from their prefix.
    pub ray_filling_at_budget: Vec<String>,
    /// Chains short ray, middle, end with consecutive members disjoint at
    /// truncation and the end ray-filling at budget.
    pub chains: Vec<TwoFillingCandidate>,
}

/// Search harness for chains `l_0 - l_1 - l_2` among eventually periodic
/// rays with a short preamble and period at one depth. Reports candidates;
/// it decides nothing about the infinite rays.
pub fn two_filling_search(
    depth: u32,
    max_period: usize,
    prefix_len: usize,
    budget: ComplexityBudget,
) -> Result<TwoFillingSearch> {
    let m = crate::equator::make_model(depth)?;
    let mut gens = Vec::new();
    for len in 2..=max_period {
        let mut word = vec![0u32; len];
        loop {
            let tight = word.windows(2).all(|w| w[0] != w[1]) && word[0] != word[len - 1];
            let minimal = (1..len).all(|r| len % r != 0 || word[..r].repeat(len / r) != word);
            if tight && minimal {
                for h in [Hemisphere::North, Hemisphere::South] {
                    if let Ok(g) = EventuallyPeriodic::new(m, h, vec![], word.clone()) {
                        if g.is_simple_probe() {
                            gens.push(g);
                        }
                    }
                }
            }
            let mut i = len;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                word[i] += 1;
                if word[i] < m.gap_count() {
                    break;
                }
                word[i] = 0;
            }
            if word.iter().all(|&g| g == 0) {
                break;
            }
        }
    }
    let prefixes: Vec<CrossingWord> = gens.iter().map(|g| g.prefix(prefix_len)).collect::<Result<_>>()?;
    let rays = enumerate_unoriented(
        m,
        ComplexityBudget {
            loops: false,
            short_rays: true,
            ..budget
        },
    )?;
    let free_ray: Vec<Option<Curve>> = prefixes
        .iter()
        .map(|p| {
            rays.iter()
                .find(|r| word_intersection_number(p, r.word()) == Ok(0))
                .cloned()
        })
        .collect();
    let ray_filling: Vec<usize> = (0..gens.len()).filter(|&i| free_ray[i].is_none()).collect();
    let mut chains = Vec::new();
    for &e in &ray_filling {
        for (mid, r) in free_ray.iter().enumerate() {
            if let Some(r) = r {
                if word_intersection_number(&prefixes[mid], &prefixes[e])? == 0 {
                    chains.push(TwoFillingCandidate {
                        short_ray: r.clone(),
                        middle: gens[mid].name(),
                        end: gens[e].name(),
                    });
                }
            }
        }
    }
    Ok(TwoFillingSearch {
        depth,
        prefix_len,
        budget,
        generators: gens.len(),
        ray_filling_at_budget: ray_filling.iter().map(|&i| gens[i].name()).collect(),
        chains,
    })
}
