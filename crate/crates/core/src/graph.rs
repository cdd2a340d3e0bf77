//! Budget-restricted curve graphs: neighbours, distances, Gromov products and
//! four-point δ estimates.
//!
//! Vertices are unoriented canonical curves admitted by a [`ComplexityBudget`],
//! plus the endpoints of whatever query is being answered (endpoints may lie
//! outside the budget). Edges join disjoint curves. Every exact value here is
//! a statement about this finite graph, which only upper-bounds distances in
//! the full infinite-valence graph.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate_disjoint_unoriented, ComplexityBudget};
use crate::error::{Error, Result};
use crate::intersect::intersection_number;
use crate::unicorn::unicorn_p2;
use crate::word::{Curve, CurveKind};

/// Extra crossings granted above the longer endpoint when a distance query
/// sizes its own budget.
pub const DEFAULT_SLACK: usize = 4;

/// Default BFS radius (sum of both search depths) before giving up.
pub const DEFAULT_MAX_RADIUS: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistanceMethod {
    BfsExact,
    UnicornUpper,
    BudgetLower,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceBound {
    pub lower: u32,
    /// Best upper bound known; `None` when neither BFS nor a unicorn path
    /// supplied one.
    pub upper: Option<u32>,
    /// A shortest path in the budget graph when the BFS resolved.
    pub witness: Option<Vec<Curve>>,
    pub method: DistanceMethod,
    /// Length of the finite unicorn path minus one, for two loops.
    pub unicorn_upper: Option<u32>,
    /// True when one side of the search ran out of vertices: the endpoints
    /// lie in different components of the budget graph.
    pub disconnected: bool,
    pub budget: ComplexityBudget,
}

impl DistanceBound {
    pub fn exact(&self) -> Option<u32> {
        (self.method == DistanceMethod::BfsExact).then_some(self.lower)
    }
}

/// How a distance query picks its budget and how far it searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceOptions {
    /// The effective crossing cap is `max(budget, longer endpoint + slack)`.
    /// `None` keeps the budget as given.
    pub slack: Option<usize>,
    pub max_radius: u32,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            slack: Some(DEFAULT_SLACK),
            max_radius: DEFAULT_MAX_RADIUS,
        }
    }
}

impl DistanceOptions {
    pub fn fixed(max_radius: u32) -> Self {
        DistanceOptions {
            slack: None,
            max_radius,
        }
    }

    pub fn effective(&self, budget: ComplexityBudget, a: &Curve, b: &Curve) -> ComplexityBudget {
        match self.slack {
            None => budget,
            Some(s) => ComplexityBudget {
                max_crossings: budget.max_crossings.max(a.len().max(b.len()) + s),
                ..budget
            },
        }
    }
}

/// A budget graph with a shared neighbour cache. Reads run concurrently;
/// each frontier expansion inserts its results in one batch.
#[derive(Debug)]
pub struct BudgetGraph {
    pub budget: ComplexityBudget,
    cache: RwLock<HashMap<Curve, Arc<Vec<Curve>>>>,
}

fn check_depth(budget: &ComplexityBudget, c: &Curve) -> Result<()> {
    if c.depth() != budget.depth {
        return Err(Error::DepthMismatch {
            left: c.depth(),
            right: budget.depth,
        });
    }
    if c.kind() == CurveKind::LongRayTruncation {
        return Err(Error::Invalid("graph vertices are loops or short rays".into()));
    }
    Ok(())
}

impl BudgetGraph {
    pub fn new(budget: ComplexityBudget) -> Self {
        BudgetGraph {
            budget,
            cache: RwLock::new(HashMap::new()),
        }
    }

    fn compute(&self, v: &Curve) -> Result<Vec<Curve>> {
        let model = v.model();
        let me = v.unoriented();
        Ok(enumerate_disjoint_unoriented(model, &[v.word()], self.budget)?
            .into_iter()
            .filter(|c| *c != me)
            .collect())
    }

    /// Budget curves disjoint from `v`, one per unoriented class, `v` excluded.
    pub fn neighbors(&self, v: &Curve) -> Result<Arc<Vec<Curve>>> {
        check_depth(&self.budget, v)?;
        let key = v.unoriented();
        if let Some(n) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(n.clone());
        }
        let n = Arc::new(self.compute(&key)?);
        self.cache.write().expect("cache lock").insert(key, n.clone());
        Ok(n)
    }

    fn neighbors_batch(&self, vs: &[Curve]) -> Result<Vec<Arc<Vec<Curve>>>> {
        let missing: Vec<Curve> = {
            let cache = self.cache.read().expect("cache lock");
            vs.iter()
                .filter(|v| !cache.contains_key(*v))
                .cloned()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        };
        let fresh: Vec<(Curve, Vec<Curve>)> = missing
            .into_par_iter()
            .map(|v| self.compute(&v).map(|n| (v, n)))
            .collect::<Result<_>>()?;
        {
            let mut cache = self.cache.write().expect("cache lock");
            for (v, n) in fresh {
                cache.insert(v, Arc::new(n));
            }
        }
        let cache = self.cache.read().expect("cache lock");
        Ok(vs.iter().map(|v| cache[v].clone()).collect())
    }

    /// Budget curves disjoint from both `a` and `b`, found in one joint
    /// enumeration (much cheaper than intersecting two neighbour sets).
    pub fn common_neighbors(&self, a: &Curve, b: &Curve) -> Result<Vec<Curve>> {
        check_depth(&self.budget, a)?;
        check_depth(&self.budget, b)?;
        let (ua, ub) = (a.unoriented(), b.unoriented());
        Ok(
            enumerate_disjoint_unoriented(a.model(), &[a.word(), b.word()], self.budget)?
                .into_iter()
                .filter(|c| *c != ua && *c != ub)
                .collect(),
        )
    }

    /// Distance between `a` and `b` in this graph with both endpoints added
    /// as vertices. Searches at most `max_radius` edges in total.
    pub fn distance(&self, a: &Curve, b: &Curve, max_radius: u32) -> Result<DistanceBound> {
        check_depth(&self.budget, a)?;
        check_depth(&self.budget, b)?;
        let unicorn_upper = unicorn_bound(a, b)?;
        let (ua, ub) = (a.unoriented(), b.unoriented());
        let mut out = DistanceBound {
            lower: 0,
            upper: Some(0),
            witness: Some(vec![a.clone()]),
            method: DistanceMethod::BfsExact,
            unicorn_upper,
            disconnected: false,
            budget: self.budget,
        };
        if ua == ub {
            return Ok(out);
        }
        if intersection_number(a, b)? == 0 {
            out.lower = 1;
            out.upper = Some(1);
            out.witness = Some(vec![a.clone(), b.clone()]);
            return Ok(out);
        }
        if max_radius >= 2 {
            if let Some(c) = self.common_neighbors(a, b)?.into_iter().next() {
                out.lower = 2;
                out.upper = Some(2);
                out.witness = Some(vec![a.clone(), c, b.clone()]);
                return Ok(out);
            }
        }
        if max_radius < 3 {
            return Ok(self.unresolved(max_radius.max(1) + 1, unicorn_upper, false));
        }
        self.bidirectional(&ua, &ub, max_radius, unicorn_upper)
    }

    fn unresolved(&self, lower: u32, unicorn_upper: Option<u32>, disconnected: bool) -> DistanceBound {
        let upper = unicorn_upper.filter(|&u| u >= lower);
        DistanceBound {
            lower,
            upper,
            witness: None,
            method: if upper.is_some() {
                DistanceMethod::UnicornUpper
            } else {
                DistanceMethod::BudgetLower
            },
            unicorn_upper,
            disconnected,
            budget: self.budget,
        }
    }

    fn bidirectional(
        &self,
        a: &Curve,
        b: &Curve,
        max_radius: u32,
        unicorn_upper: Option<u32>,
    ) -> Result<DistanceBound> {
        // side 0 grows from a, side 1 from b; parent links rebuild the path.
        let mut dist: [HashMap<Curve, u32>; 2] = [HashMap::new(), HashMap::new()];
        let mut parent: [HashMap<Curve, Curve>; 2] = [HashMap::new(), HashMap::new()];
        let mut frontier: [Vec<Curve>; 2] = [vec![a.clone()], vec![b.clone()]];
        let mut radius = [0u32; 2];
        dist[0].insert(a.clone(), 0);
        dist[1].insert(b.clone(), 0);
        loop {
            if radius[0] + radius[1] >= max_radius {
                return Ok(self.unresolved(radius[0] + radius[1] + 1, unicorn_upper, false));
            }
            let s = usize::from(frontier[1].len() < frontier[0].len());
            let t = 1 - s;
            let lists = self.neighbors_batch(&frontier[s])?;
            let mut next = Vec::new();
            let mut best: Option<(u32, Curve)> = None;
            for (u, list) in frontier[s].iter().zip(&lists) {
                let du = dist[s][u];
                for v in list.iter() {
                    if dist[s].contains_key(v) {
                        continue;
                    }
                    dist[s].insert(v.clone(), du + 1);
                    parent[s].insert(v.clone(), u.clone());
                    next.push(v.clone());
                    if let Some(&dv) = dist[t].get(v) {
                        let total = du + 1 + dv;
                        if best.as_ref().is_none_or(|(d, _)| total < *d) {
                            best = Some((total, v.clone()));
                        }
                    }
                }
            }
            radius[s] += 1;
            if let Some((d, meet)) = best {
                let mut path = vec![meet.clone()];
                let mut cur = meet.clone();
                while let Some(p) = parent[0].get(&cur) {
                    path.push(p.clone());
                    cur = p.clone();
                }
                path.reverse();
                let mut cur = meet;
                while let Some(p) = parent[1].get(&cur) {
                    path.push(p.clone());
                    cur = p.clone();
                }
                return Ok(DistanceBound {
                    lower: d,
                    upper: Some(d),
                    witness: Some(path),
                    method: DistanceMethod::BfsExact,
                    unicorn_upper,
                    disconnected: false,
                    budget: self.budget,
                });
            }
            if next.is_empty() {
                return Ok(self.unresolved(radius[0] + radius[1] + 1, unicorn_upper, true));
            }
            frontier[s] = next;
        }
    }
}

fn unicorn_bound(a: &Curve, b: &Curve) -> Result<Option<u32>> {
    if a.kind() != CurveKind::Loop || b.kind() != CurveKind::Loop {
        return Ok(None);
    }
    Ok(Some(unicorn_p2(a, b)?.len() as u32 - 1))
}

/// Distance with the budget sized by `opts`. A fresh graph is built for the
/// effective budget; use [`BudgetGraph::distance`] to share a cache.
pub fn distance(a: &Curve, b: &Curve, budget: ComplexityBudget, opts: DistanceOptions) -> Result<DistanceBound> {
    let g = BudgetGraph::new(opts.effective(budget, a, b));
    g.distance(a, b, opts.max_radius)
}

/// `(x·y)_p` stored doubled so half-integers stay exact. When some distance
/// is only bounded, `[twice_lower, twice_upper]` brackets the true value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GromovProduct {
    pub base: Curve,
    pub x: Curve,
    pub y: Curve,
    pub twice_lower: i64,
    pub twice_upper: Option<i64>,
    pub distances: [DistanceBound; 3],
}

impl GromovProduct {
    pub fn is_exact(&self) -> bool {
        self.twice_upper == Some(self.twice_lower)
    }

    pub fn value(&self) -> Option<f64> {
        self.is_exact().then(|| self.twice_lower as f64 / 2.0)
    }
}

/// Combines `d(x,p)`, `d(y,p)` and `d(x,y)` into the product interval.
pub fn gromov_from_bounds(
    base: &Curve,
    x: &Curve,
    y: &Curve,
    xp: DistanceBound,
    yp: DistanceBound,
    xy: DistanceBound,
) -> GromovProduct {
    let lo = xp.lower as i64 + yp.lower as i64 - xy.upper.map_or(i64::MAX / 4, |u| u as i64);
    let hi = match (xp.upper, yp.upper) {
        (Some(a), Some(b)) => Some(a as i64 + b as i64 - xy.lower as i64),
        _ => None,
    };
    GromovProduct {
        base: base.clone(),
        x: x.clone(),
        y: y.clone(),
        twice_lower: lo.max(0),
        twice_upper: hi.map(|h| h.max(0)),
        distances: [xp, yp, xy],
    }
}

pub fn gromov_product(p: &Curve, x: &Curve, y: &Curve, graph: &BudgetGraph, max_radius: u32) -> Result<GromovProduct> {
    let xp = graph.distance(x, p, max_radius)?;
    let yp = graph.distance(y, p, max_radius)?;
    let xy = graph.distance(x, y, max_radius)?;
    Ok(gromov_from_bounds(p, x, y, xp, yp, xy))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaReport {
    /// Largest four-point defect, doubled.
    pub twice_delta: u32,
    pub sample_size: usize,
    pub quadruples: usize,
    /// The quadruple that attains the maximum, if any.
    pub worst: Option<[usize; 4]>,
    pub budget: ComplexityBudget,
}

impl DeltaReport {
    pub fn delta(&self) -> f64 {
        self.twice_delta as f64 / 2.0
    }
}

/// All pairwise exact distances of `sample`, or an error naming the first
/// unresolved pair.
pub fn distance_matrix(sample: &[Curve], graph: &BudgetGraph, max_radius: u32) -> Result<Vec<Vec<u32>>> {
    let n = sample.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let ds: Vec<u32> = pairs
        .par_iter()
        .map(|&(i, j)| {
            graph
                .distance(&sample[i], &sample[j], max_radius)?
                .exact()
                .ok_or_else(|| {
                    Error::Resource(format!(
                        "distance between sample {i} and {j} unresolved within radius {max_radius}"
                    ))
                })
        })
        .collect::<Result<_>>()?;
    let mut m = vec![vec![0; n]; n];
    for (&(i, j), d) in pairs.iter().zip(ds) {
        m[i][j] = d;
        m[j][i] = d;
    }
    Ok(m)
}

/// Maximal four-point defect over a distance matrix, doubled, with the
/// quadruple attaining it.
pub fn four_point_defect(d: &[Vec<u32>]) -> (u32, usize, Option<[usize; 4]>) {
    let n = d.len();
    let mut best = 0;
    let mut worst = None;
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    count += 1;
                    let mut s = [d[i][j] + d[k][l], d[i][k] + d[j][l], d[i][l] + d[j][k]];
                    s.sort_unstable();
                    let defect = s[2] - s[1];
                    if defect > best || worst.is_none() {
                        best = best.max(defect);
                        worst = Some([i, j, k, l]);
                    }
                }
            }
        }
    }
    (best, count, worst)
}

/// Empirical lower bound for δ on `sample`.
pub fn estimate_delta(sample: &[Curve], graph: &BudgetGraph, max_radius: u32) -> Result<DeltaReport> {
    let d = distance_matrix(sample, graph, max_radius)?;
    let (twice_delta, quadruples, worst) = four_point_defect(&d);
    Ok(DeltaReport {
        twice_delta,
        sample_size: sample.len(),
        quadruples,
        worst,
        budget: graph.budget,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QiRow {
    pub a: Curve,
    pub b: Curve,
    pub loop_graph: DistanceBound,
    pub ray_graph: DistanceBound,
    pub mixed_graph: DistanceBound,
    /// `mixed <= loop`, when both are exact.
    pub upper_holds: Option<bool>,
    /// `loop / 3 - 2 <= mixed`, when both are exact.
    pub lower_holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QiReport {
    pub rows: Vec<QiRow>,
    pub upper_violations: usize,
    /// Finite-budget counterexamples to the lower inequality; these are
    /// budget artifacts, not statements about the infinite graphs.
    pub lower_violations: usize,
    pub unresolved: usize,
    pub depth: u32,
    pub max_crossings: usize,
}

/// Compares distances between loop pairs in the loop graph, the short-ray
/// graph (endpoints added) and the mixed graph at one crossing cap.
pub fn quasi_isometry_experiment(
    pairs: &[(Curve, Curve)],
    depth: u32,
    max_crossings: usize,
    max_radius: u32,
) -> Result<QiReport> {
    let loops = BudgetGraph::new(ComplexityBudget::loops(depth, max_crossings));
    let rays = BudgetGraph::new(ComplexityBudget::rays(depth, max_crossings));
    let mixed = BudgetGraph::new(ComplexityBudget::mixed(depth, max_crossings));
    let mut rows = Vec::new();
    let (mut up, mut low, mut unresolved) = (0, 0, 0);
    for (a, b) in pairs {
        let dl = loops.distance(a, b, max_radius)?;
        let dr = rays.distance(a, b, max_radius)?;
        let dm = mixed.distance(a, b, max_radius)?;
        let (upper_holds, lower_holds) = match (dl.exact(), dm.exact()) {
            (Some(l), Some(m)) => (Some(m <= l), Some(3 * m + 6 >= l)),
            _ => {
                unresolved += 1;
                (None, None)
            }
        };
        up += usize::from(upper_holds == Some(false));
        low += usize::from(lower_holds == Some(false));
        rows.push(QiRow {
            a: a.clone(),
            b: b.clone(),
            loop_graph: dl,
            ray_graph: dr,
            mixed_graph: dm,
            upper_holds,
            lower_holds,
        });
    }
    Ok(QiReport {
        rows,
        upper_violations: up,
        lower_violations: low,
        unresolved,
        depth,
        max_crossings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnicornGeodesicRow {
    pub a: Curve,
    pub b: Curve,
    pub geodesic_length: u32,
    pub unicorn_length: usize,
    /// For each unicorn term, its budget distance to the nearest geodesic
    /// vertex (`None` when unresolved).
    pub term_to_geodesic: Vec<Option<u32>>,
    /// For each geodesic vertex, its distance to the nearest unicorn term.
    pub geodesic_to_terms: Vec<Option<u32>>,
    /// True when some resolved distance exceeds 6. Budget distances only
    /// upper-bound true ones, so this is a signal to inspect, not a
    /// disproof.
    pub exceeds_six: bool,
}

/// Compares the unicorn path of two loops with a BFS geodesic in the loop
/// budget graph.
pub fn unicorn_vs_geodesic(
    a: &Curve,
    b: &Curve,
    graph: &BudgetGraph,
    max_radius: u32,
) -> Result<Option<UnicornGeodesicRow>> {
    let d = graph.distance(a, b, max_radius)?;
    let geo = match (d.exact(), d.witness) {
        (Some(_), Some(w)) => w,
        _ => return Ok(None),
    };
    let path = unicorn_p2(a, b)?;
    let near = |x: &Curve, set: &[Curve]| -> Result<Option<u32>> {
        let mut best: Option<u32> = None;
        for y in set {
            if let Some(e) = graph.distance(x, y, max_radius)?.exact() {
                best = Some(best.map_or(e, |b: u32| b.min(e)));
            }
        }
        Ok(best)
    };
    let term_to_geodesic = path.terms.iter().map(|t| near(t, &geo)).collect::<Result<Vec<_>>>()?;
    let geodesic_to_terms = geo.iter().map(|g| near(g, &path.terms)).collect::<Result<Vec<_>>>()?;
    let exceeds_six = term_to_geodesic
        .iter()
        .chain(&geodesic_to_terms)
        .any(|x| x.is_some_and(|v| v > 6));
    Ok(Some(UnicornGeodesicRow {
        a: a.clone(),
        b: b.clone(),
        geodesic_length: geo.len() as u32 - 1,
        unicorn_length: path.len(),
        term_to_geodesic,
        geodesic_to_terms,
        exceeds_six,
    }))
}

/// Three short rays at depth 2, `(α, γ, β)`, with `α` and `β` meeting and
/// `γ` disjoint from both: a path of length two in the ray graph.
pub fn ray_triple() -> [Curve; 3] {
    let loaded = crate::format::load(include_str!("../data/ray_triple.curve")).expect("committed triple parses");
    let mut it = loaded.curves.into_iter();
    let mut next = || it.next().expect("three curves");
    [next(), next(), next()]
}
