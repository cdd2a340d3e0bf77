//! Acceptance run: every criterion at its stated scale and tolerance, one
//! line per criterion. Exits non-zero when any criterion fails.

mod common;

use std::time::Instant;

use cantor_curves::boundary::{
    alpha_forcing_test, alpha_negative_control, bounded_path_check, growth_experiment, non_filling_family,
};
use cantor_curves::enumerate::{enumerate_unoriented, ComplexityBudget};
use cantor_curves::generator::{block_spiral, AlphaFamily, LongRayGenerator};
use cantor_curves::graph::{distance, ray_triple, BudgetGraph, DistanceOptions};
use cantor_curves::intersect::intersection_number;
use cantor_curves::oracle::geometric_intersections;
use cantor_curves::sample::{random_loop, random_simple, SampleKind};
use cantor_curves::unicorn::{
    begin_bound_violations, check_subpath_property, hausdorff_violations, restricts_to_prefix, unicorn_infinite,
    unicorn_p1, unicorn_p2, SubpathClass, UnicornPath,
};
use cantor_curves::word::tighten_word;
use cantor_curves::{make_model, CrossingWord, Curve, Hemisphere, Terminal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn p1_p2_equivalence() -> Outcome {
    let mut r = rng(1);
    let (mut pairs, mut mismatches, mut longest) = (0, 0, 0);
    for depth in 1..=3 {
        let m = make_model(depth).map_err(err)?;
        for _ in 0..400 {
            let a = random_loop(m, 40, &mut r);
            let b = random_loop(m, 40, &mut r);
            longest = longest.max(a.len()).max(b.len());
            let p1 = unicorn_p1(&a, &b).map_err(err)?;
            let p2 = unicorn_p2(&a, &b).map_err(err)?;
            pairs += 1;
            if !p1.same_terms(&p2) {
                mismatches += 1;
            }
        }
    }
    check(
        mismatches == 0 && pairs >= 1000,
        format!("{pairs} loop pairs at depths 1-3 (longest {longest} crossings), {mismatches} mismatches"),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut r = rng(2);
    let kinds = [SampleKind::Loop, SampleKind::ShortRay];
    let mut per_depth = Vec::new();
    let mut mismatches = 0;
    for depth in 1..=3 {
        let m = make_model(depth).map_err(err)?;
        let mut n = 0;
        while n < 500 {
            let a = random_simple(m, r.gen_range(1..16), kinds[r.gen_range(0..2)], &mut r);
            let b = random_simple(m, r.gen_range(1..16), kinds[r.gen_range(0..2)], &mut r);
            let (Some(a), Some(b)) = (a, b) else { continue };
            n += 1;
            if intersection_number(&a, &b).map_err(err)? != geometric_intersections(a.word(), b.word()) {
                mismatches += 1;
            }
        }
        per_depth.push(n);
    }
    check(
        mismatches == 0,
        format!("{per_depth:?} pairs at depths 1-3, {mismatches} mismatches"),
    )
}

fn tighten_laws() -> Outcome {
    let mut r = rng(3);
    let mut failures = 0;
    let words = 2000;
    for _ in 0..words {
        let m = make_model(r.gen_range(1..=3)).map_err(err)?;
        let len = r.gen_range(1..24);
        let gaps: Vec<u32> = (0..len).map(|_| r.gen_range(0..m.gap_count())).collect();
        let start = if r.gen_bool(0.5) {
            Hemisphere::North
        } else {
            Hemisphere::South
        };
        let w = CrossingWord::new(m, start, gaps, Terminal::Loop);
        let t = tighten_word(&w);
        if tighten_word(&t) != t || t.has_bigon() {
            failures += 1;
        }
        let mut fat = t.clone();
        let at = r.gen_range(0..=t.len());
        let g = r.gen_range(0..m.gap_count());
        fat.gaps.splice(at..at, [g, g]);
        if tighten_word(&fat) != t {
            failures += 1;
        }
    }
    check(failures == 0, format!("{words} words, {failures} failures"))
}

/// Unicorn paths between random loops, shared by the dichotomy and begin
/// bound criteria.
fn path_corpus() -> Result<Vec<(Curve, Curve, UnicornPath)>, String> {
    let mut r = rng(4);
    let mut out = Vec::new();
    for depth in 1..=3 {
        let m = make_model(depth).map_err(err)?;
        for _ in 0..80 {
            let a = random_loop(m, 12, &mut r);
            let b = random_loop(m, 12, &mut r);
            let p = unicorn_p2(&a, &b).map_err(err)?;
            out.push((a, b, p));
        }
    }
    Ok(out)
}

fn dichotomy(corpus: &[(Curve, Curve, UnicornPath)]) -> Outcome {
    let (mut pairs, mut consecutive, mut violations, mut jumps) = (0, 0, 0, 0);
    for (_, _, p) in corpus {
        consecutive += p.consecutive_violations().map_err(err)?.len();
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                pairs += 1;
                match check_subpath_property(p, i, j).map_err(err)? {
                    SubpathClass::Violation => violations += 1,
                    SubpathClass::AdjacentJump => jumps += 1,
                    SubpathClass::Subpath => {}
                }
            }
        }
    }
    check(
        consecutive == 0 && violations == 0 && corpus.len() >= 200,
        format!(
            "{} paths, {pairs} (i,j) pairs, {jumps} adjacent jumps, {consecutive} consecutive and {violations} dichotomy violations",
            corpus.len()
        ),
    )
}

fn begin_bound(corpus: &[(Curve, Curve, UnicornPath)]) -> Outcome {
    let violations: usize = corpus
        .iter()
        .map(|(a, b, p)| begin_bound_violations(a, b.word(), p).len())
        .sum();
    let constrained = corpus.iter().filter(|(a, _, p)| a.len().div_ceil(2) < p.len()).count();
    check(
        violations == 0,
        format!(
            "{} paths ({constrained} long enough to constrain), {violations} violations",
            corpus.len()
        ),
    )
}

fn ray_triple_distance() -> Outcome {
    let [alpha, gamma, beta] = ray_triple();
    let budget = ComplexityBudget::mixed(2, 2);
    let opts = DistanceOptions::default();
    let d = distance(&alpha, &beta, budget, opts).map_err(err)?;
    let witness = d.witness.clone().unwrap_or_default();
    let valid = witness.len() == 3 && witness.windows(2).all(|w| intersection_number(&w[0], &w[1]) == Ok(0));
    let graph = BudgetGraph::new(opts.effective(budget, &alpha, &beta));
    let gamma_middle = graph
        .common_neighbors(&alpha, &beta)
        .map_err(err)?
        .contains(&gamma.unoriented());
    let triple = intersection_number(&alpha, &gamma).map_err(err)? == 0
        && intersection_number(&gamma, &beta).map_err(err)? == 0
        && intersection_number(&alpha, &beta).map_err(err)? > 0;
    let shown: Vec<String> = witness.iter().map(|c| c.to_string()).collect();
    check(
        d.exact() == Some(2) && valid && gamma_middle && triple,
        format!(
            "d = {:?}, BFS witness {shown:?}, ({alpha}, {gamma}, {beta}) is a path: {}",
            d.exact(),
            gamma_middle && triple
        ),
    )
}

fn generators() -> Vec<Box<dyn LongRayGenerator>> {
    let mut gens: Vec<Box<dyn LongRayGenerator>> = vec![Box::new(AlphaFamily::committed())];
    for (lo, hi) in [(0, 2), (1, 3), (2, 4), (0, 3)] {
        gens.push(Box::new(block_spiral(2, lo, hi, Hemisphere::North).expect("spiral")));
    }
    gens
}

fn hausdorff() -> Outcome {
    let m = make_model(2).map_err(err)?;
    let loops = enumerate_unoriented(m, ComplexityBudget::loops(2, 4)).map_err(err)?;
    let mut pairs = Vec::new();
    for (i, a) in loops.iter().enumerate() {
        for b in &loops[i + 1..] {
            if intersection_number(a, b).map_err(err)? == 0 {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    let gens = generators();
    let (mut runs, mut violations, mut excused) = (0, 0, 0);
    for (n, (a, b)) in pairs.iter().enumerate().take(60) {
        let l = &gens[n % gens.len()];
        for (x, y) in [(a, b), (b, a)] {
            let p = unicorn_infinite(x, l.as_ref(), 8).map_err(err)?;
            let q = unicorn_infinite(y, l.as_ref(), 16).map_err(err)?;
            runs += 1;
            let bad = hausdorff_violations(&p, &q).map_err(err)?.len();
            if p.complete && q.complete {
                violations += bad;
            } else {
                excused += bad;
            }
        }
    }
    check(
        violations == 0 && runs >= 100,
        format!("{} disjoint pairs, {runs} directed runs over {} generators, {violations} violations, {excused} flagged incomplete", runs / 2, gens.len()),
    )
}

fn restriction() -> Outcome {
    // Paths toward the non-filling spirals stay short, so most runs with
    // four or more terms come from the alpha ray.
    let mut loops = Vec::new();
    for (depth, cap) in [(2, 6), (3, 4)] {
        let m = make_model(depth).map_err(err)?;
        loops.extend(enumerate_unoriented(m, ComplexityBudget::loops(depth, cap)).map_err(err)?);
    }
    let gens = generators();
    let (mut runs, mut checks, mut failures) = (0, 0, 0);
    'outer: for a in &loops {
        for l in &gens {
            let p = unicorn_infinite(a, l.as_ref(), 8).map_err(err)?;
            if p.len() < 4 {
                continue;
            }
            runs += 1;
            for j in 3..p.len() {
                checks += 1;
                if !restricts_to_prefix(&p, j).map_err(err)? {
                    failures += 1;
                }
            }
            if runs >= 60 {
                break 'outer;
            }
        }
    }
    check(
        failures == 0 && runs >= 50,
        format!("{runs} generator runs with at least 4 terms, {checks} prefixes j >= 3, {failures} failures"),
    )
}

fn alpha_gate() -> Outcome {
    let fam = AlphaFamily::committed();
    let mut parts = Vec::new();
    let mut ok = true;
    for k in 1..=3 {
        let budget = ComplexityBudget::mixed(k as u32 + 2, 8);
        let rep = alpha_forcing_test(&fam, k, budget).map_err(err)?;
        ok &= rep.passed && rep.depth <= 6;
        parts.push(format!(
            "k={k} depth {} disjoint {} violations {}{}",
            rep.depth,
            rep.disjoint_count,
            rep.violations.len(),
            if rep.vacuous { " (vacuous)" } else { "" }
        ));
    }
    let neg = alpha_negative_control(&fam, 1, ComplexityBudget::mixed(3, 8)).map_err(err)?;
    ok &= !neg.violations.is_empty();
    parts.push(format!("negative control {} violations", neg.violations.len()));
    check(ok, parts.join("; "))
}

fn boundedness() -> Outcome {
    let family = non_filling_family(&[2, 3]).map_err(err)?;
    let mut failures = Vec::new();
    for (l, r) in &family {
        let rep = bounded_path_check(l, r, 8, 6).map_err(err)?;
        if !rep.within_two {
            failures.push(l.name());
        }
    }
    check(
        failures.is_empty() && family.len() >= 20,
        format!("{} non-ray-filling spirals, failures {failures:?}", family.len()),
    )
}

fn growth() -> Outcome {
    let a = Curve::canonical(
        cantor_curves::format::parse_word_line("L S g4 g3", make_model(2).map_err(err)?, 1).map_err(err)?,
    )
    .map_err(err)?;
    let rep = growth_experiment(&a, &AlphaFamily::committed(), 8, 8).map_err(err)?;
    let lower: Vec<u32> = rep.rows.iter().map(|r| r.lower).collect();
    check(
        rep.nondecreasing_after_burn_in && rep.first_at_three.is_some_and(|i| i < 8),
        format!(
            "lower bounds {lower:?} from {a}, complete {}, first at 3: {:?}",
            rep.complete, rep.first_at_three
        ),
    )
}

fn determinism() -> Outcome {
    let (x, y) = (tempfile::tempdir().map_err(err)?, tempfile::tempdir().map_err(err)?);
    let first = common::run_suite(x.path());
    let second = common::run_suite(y.path());
    let differing: Vec<&str> = first
        .iter()
        .zip(&second)
        .filter(|(a, b)| a.1 != b.1)
        .map(|(a, _)| a.0.as_str())
        .collect();
    let bytes: usize = first.iter().map(|(_, b)| b.len()).sum();
    check(
        differing.is_empty(),
        format!(
            "{} artifacts ({bytes} bytes) compared, differing {differing:?}",
            first.len()
        ),
    )
}

fn main() {
    let started = Instant::now();
    let corpus = path_corpus();
    let criteria: Vec<Criterion> = vec![
        ("C1 p1/p2 equivalence", Box::new(p1_p2_equivalence)),
        ("C2 oracle equivalence", Box::new(oracle_equivalence)),
        ("C3 tighten laws", Box::new(tighten_laws)),
        (
            "C4 consecutive disjointness and subpath dichotomy",
            Box::new(|| dichotomy(corpus.as_ref().map_err(Clone::clone)?)),
        ),
        (
            "C5 begin bound",
            Box::new(|| begin_bound(corpus.as_ref().map_err(Clone::clone)?)),
        ),
        ("C6 ray triple at distance two", Box::new(ray_triple_distance)),
        ("C7 Hausdorff property", Box::new(hausdorff)),
        ("C8 restriction to finite paths", Box::new(restriction)),
        ("C9 alpha forcing gate", Box::new(alpha_gate)),
        ("C10 non-filling boundedness", Box::new(boundedness)),
        ("C11 growth along alpha", Box::new(growth)),
        ("C12 CLI determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
