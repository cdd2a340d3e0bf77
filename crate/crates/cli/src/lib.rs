//! The `cantor` command line: argument parsing, file loading and report
//! output. [`run`] is the whole program minus process exit.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use cantor_curves::boundary::{
    alpha_forcing_test, alpha_negative_control, filling_certificate, growth_experiment, spiral_clique, verify_clique,
    FillingKind, FillingOutcome,
};
use cantor_curves::enumerate::ComplexityBudget;
use cantor_curves::equator::embed_gap;
use cantor_curves::format::{self, CorpusFile, Entry, PeriodicSpec};
use cantor_curves::generator::{block_spiral, AlphaFamily, EventuallyPeriodic, FixedPrefix, LongRayGenerator};
use cantor_curves::graph::{
    estimate_delta, gromov_product, quasi_isometry_experiment, BudgetGraph, DistanceBound, DistanceOptions,
    DEFAULT_MAX_RADIUS, DEFAULT_SLACK,
};
use cantor_curves::intersect::intersection_number;
use cantor_curves::render::{render_svg, Layout, RenderSpec};
use cantor_curves::sample::random_loop;
use cantor_curves::unicorn::{unicorn_infinite, unicorn_p1, unicorn_p2, UnicornPath};
use cantor_curves::word::{embed_word, is_simple, tighten, validate};
use cantor_curves::{make_model, Curve, CurveKind, Error, Hemisphere};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "cantor",
    version,
    about = "Curves on a sphere punctured along a Cantor equator"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Work at this depth; shallower inputs are refined up to it.
    #[arg(long, global = true)]
    pub depth: Option<u32>,
    /// Crossing cap of the complexity budget.
    #[arg(long, global = true, default_value_t = 8)]
    pub budget_crossings: usize,
    /// Terms to produce for infinite unicorn paths.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_terms: usize,
    /// Output format; curves default to text, reports to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for every sampled input.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Extra crossings allowed above the longer endpoint in distance queries.
    #[arg(long, global = true, default_value_t = DEFAULT_SLACK)]
    pub slack: usize,
    /// Keep the crossing cap fixed instead of adding slack.
    #[arg(long, global = true)]
    pub no_slack: bool,
    /// Largest BFS radius before a distance is reported as a bound.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_RADIUS)]
    pub max_radius: u32,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    /// Loops when both endpoints are loops, rays when both are rays, else mixed.
    Auto,
    Loops,
    Rays,
    Mixed,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    P1,
    P2,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FillKind {
    Loop,
    Ray,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayoutArg {
    DiskPair,
    Flat,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Remove bigons from every curve in a file.
    Tighten { file: PathBuf },
    /// Report whether each curve is simple.
    Simple { file: PathBuf },
    /// Minimal intersection number of the first curves of two files.
    Intersect { a: PathBuf, b: PathBuf },
    /// Finite unicorn path between two loops.
    Unicorn {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::P2)]
        method: Method,
    },
    /// First terms of the unicorn path from a loop toward a long ray.
    UnicornInf {
        a: PathBuf,
        /// `alpha`, `alpha:K`, `spiral:LO:HI[:N|S]`, or a curve file.
        #[arg(long)]
        ray: String,
    },
    /// Budget-graph distance between two curves.
    Distance {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphKind::Auto)]
        graph: GraphKind,
    },
    /// Gromov product (x·y)_p in the budget graph.
    Gromov {
        p: PathBuf,
        x: PathBuf,
        y: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphKind::Auto)]
        graph: GraphKind,
    },
    /// Four-point δ over the curves of a file or a seeded loop sample.
    Delta {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        sample: usize,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Loop graph versus ray graph distances on curve pairs.
    QiCheck {
        /// Pairs are consecutive curves: (1st, 2nd), (3rd, 4th), ...
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        sample: usize,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Pairwise disjointness of a set of long rays at several depths.
    CliqueCheck {
        /// Members; the built-in four-spiral family when omitted.
        #[arg(long)]
        ray: Vec<String>,
        #[arg(long, default_value_t = 24)]
        prefix_len: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4])]
        depths: Vec<u32>,
    },
    /// Budgeted filling certificate for a long ray.
    FillCert {
        #[arg(long)]
        ray: String,
        #[arg(long, value_enum, default_value_t = FillKind::Loop)]
        kind: FillKind,
        #[arg(long, default_value_t = 64)]
        prefix_len: usize,
    },
    /// Forcing test for stage k of the committed alpha family.
    AlphaTest {
        #[arg(short = 'k', long = "k")]
        k: usize,
        /// Run against a deliberately broken obstacle instead.
        #[arg(long)]
        negative_control: bool,
    },
    /// Distance growth along the unicorn path toward a long ray.
    Growth {
        a: PathBuf,
        #[arg(long, default_value = "alpha")]
        ray: String,
    },
    /// Draw curves as SVG.
    Render {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = LayoutArg::DiskPair)]
        layout: LayoutArg,
        #[arg(long)]
        highlight: bool,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 420)]
        height: u32,
    },
    /// Rewrite a file at a deeper level.
    Refine {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        levels: u32,
    },
}

/// Failures after argument parsing. Usage errors exit 2, the rest exit 1.
#[derive(Debug)]
pub enum CliError {
    Domain(String),
    Usage(String),
    /// The reader of stdout went away; stop without a message.
    Closed,
}

fn write_failed(e: std::io::Error) -> CliError {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        CliError::Closed
    } else {
        CliError::Domain(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `argv` (including the program name), runs the command, and
/// returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match dispatch(&cli, out, err) {
        Ok(()) | Err(CliError::Closed) => 0,
        Err(CliError::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}\n\nFor more information, try '--help'.");
            2
        }
    }
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    depth: Option<u32>,
    budget: Option<ComplexityBudget>,
    seed: Option<u64>,
    result: T,
}

struct Ctx<'a> {
    g: &'a Global,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn json(&self, default: Format) -> bool {
        self.g.format.unwrap_or(default) == Format::Json
    }

    fn report<T: Serialize>(
        &mut self,
        command: &str,
        depth: Option<u32>,
        budget: Option<ComplexityBudget>,
        seed: Option<u64>,
        result: T,
    ) -> CliResult<()> {
        let r = Report {
            tool: "cantor",
            version: VERSION,
            command,
            depth,
            budget,
            seed,
            result,
        };
        let text = serde_json::to_string_pretty(&r).map_err(|e| CliError::Domain(e.to_string()))?;
        self.line(&text)
    }

    fn line(&mut self, s: &str) -> CliResult<()> {
        writeln!(self.out, "{s}").map_err(write_failed)
    }

    fn warn(&mut self, s: &str) {
        let _ = writeln!(self.err, "warning: {s}");
    }

    fn opts(&self) -> DistanceOptions {
        DistanceOptions {
            slack: (!self.g.no_slack).then_some(self.g.slack),
            max_radius: self.g.max_radius,
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

/// Loaded curves, refined to `--depth` when it is deeper than the file.
fn load_curves(ctx: &mut Ctx, path: &Path) -> CliResult<Vec<Curve>> {
    let loaded = format::load(&read(path)?).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
    for w in &loaded.warnings {
        ctx.warn(&format!("{}: {w}", path.display()));
    }
    let have = loaded.model.depth();
    let want = ctx.g.depth.unwrap_or(have);
    if want < have {
        return Err(Error::DepthMismatch {
            left: have,
            right: want,
        }
        .into());
    }
    loaded
        .curves
        .into_iter()
        .map(|c| Ok(Curve::canonical(embed_word(c.word(), want - have)?)?))
        .collect()
}

fn first_curve(ctx: &mut Ctx, path: &Path) -> CliResult<Curve> {
    load_curves(ctx, path)?
        .into_iter()
        .next()
        .ok_or_else(|| CliError::Domain(format!("{}: no curves", path.display())))
}

fn same_depth(curves: &[&Curve]) -> CliResult<u32> {
    let d = curves[0].depth();
    for c in curves {
        if c.depth() != d {
            return Err(Error::DepthMismatch {
                left: d,
                right: c.depth(),
            }
            .into());
        }
    }
    Ok(d)
}

/// Resolves `--ray`.
fn ray_from_spec(ctx: &mut Ctx, spec: &str) -> CliResult<Box<dyn LongRayGenerator>> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts[0] {
        "alpha" => {
            let fam = AlphaFamily::committed();
            match parts.get(1) {
                None => Ok(Box::new(fam)),
                Some(k) => {
                    let k: usize = k
                        .parse()
                        .map_err(|_| CliError::Usage(format!("bad alpha stage in `{spec}`")))?;
                    Ok(Box::new(fam.truncated_to(k)?))
                }
            }
        }
        "spiral" => {
            if parts.len() < 3 || parts.len() > 4 {
                return Err(CliError::Usage(format!("expected spiral:LO:HI[:N|S], got `{spec}`")));
            }
            let num = |s: &str| {
                s.trim_start_matches('g')
                    .parse::<u32>()
                    .map_err(|_| CliError::Usage(format!("bad gap `{s}` in `{spec}`")))
            };
            let start = match parts.get(3) {
                None | Some(&"N") => Hemisphere::North,
                Some(&"S") => Hemisphere::South,
                Some(other) => return Err(CliError::Usage(format!("bad hemisphere `{other}`"))),
            };
            Ok(Box::new(block_spiral(
                ctx.g.depth.unwrap_or(2),
                num(parts[1])?,
                num(parts[2])?,
                start,
            )?))
        }
        _ => {
            let path = Path::new(spec);
            if !path.exists() {
                return Err(CliError::Usage(format!(
                    "`{spec}` is neither a built-in ray (alpha, alpha:K, spiral:LO:HI) nor a file"
                )));
            }
            let file = format::parse(&read(path)?).map_err(|e| CliError::Domain(format!("{spec}: {e}")))?;
            if let Some(p) = file.periodic().next() {
                return Ok(Box::new(EventuallyPeriodic::from_spec(file.model, p)?.labelled(spec)));
            }
            let w = file
                .words()
                .find(|w| !matches!(w.kind(), CurveKind::Loop))
                .ok_or_else(|| CliError::Domain(format!("{spec}: no ray entry")))?;
            Ok(Box::new(FixedPrefix {
                word: w.clone(),
                label: spec.to_string(),
            }))
        }
    }
}

fn graph_budget(kind: GraphKind, depth: u32, cap: usize, ends: &[&Curve]) -> ComplexityBudget {
    match kind {
        GraphKind::Loops => ComplexityBudget::loops(depth, cap),
        GraphKind::Rays => ComplexityBudget::rays(depth, cap),
        GraphKind::Mixed => ComplexityBudget::mixed(depth, cap),
        GraphKind::Auto => {
            if ends.iter().all(|c| c.kind() == CurveKind::Loop) {
                ComplexityBudget::loops(depth, cap)
            } else if ends.iter().all(|c| c.kind() == CurveKind::ShortRay) {
                ComplexityBudget::rays(depth, cap)
            } else {
                ComplexityBudget::mixed(depth, cap)
            }
        }
    }
}

fn sample_loops(ctx: &Ctx, n: usize, max_len: usize) -> CliResult<Vec<Curve>> {
    let model = make_model(ctx.g.depth.unwrap_or(1))?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.g.seed);
    let mut out: Vec<Curve> = Vec::new();
    let mut tries = 0;
    while out.len() < n {
        let c = random_loop(model, max_len, &mut rng).unoriented();
        if !out.contains(&c) {
            out.push(c);
        }
        tries += 1;
        if tries > 1000 * n.max(1) {
            return Err(CliError::Domain(format!("could not sample {n} distinct loops")));
        }
    }
    Ok(out)
}

fn write_path(ctx: &mut Ctx, title: &str, path: &UnicornPath) -> CliResult<()> {
    if ctx.json(Format::Text) {
        let d = path.source.depth();
        return ctx.report(title, Some(d), None, None, path);
    }
    ctx.line(&format!("#version {}", format::FORMAT_VERSION))?;
    ctx.line(&format!("#depth {}", path.source.depth()))?;
    ctx.line(&format!("# {title}: {} terms, complete {}", path.len(), path.complete))?;
    for (t, s) in path.terms.iter().zip(&path.splices) {
        if let Some(s) = s {
            ctx.line(&format!(
                "#splice a_prefix={} b_prefix={} hemisphere={}",
                s.prefix_of_a,
                s.prefix_of_b,
                s.record.hemisphere.letter()
            ))?;
        }
        ctx.line(&t.to_string())?;
    }
    Ok(())
}

fn distance_text(d: &DistanceBound) -> String {
    match (d.exact(), d.upper) {
        (Some(e), _) => format!("d = {e}"),
        (None, Some(u)) => format!("{} <= d <= {u}", d.lower),
        (None, None) if d.disconnected => "disconnected at this budget".to_string(),
        (None, None) => format!("d >= {}", d.lower),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let mut ctx = Ctx {
        g: &cli.global,
        out,
        err,
    };
    let cap = cli.global.budget_crossings;
    match &cli.command {
        Command::Tighten { file } => cmd_tighten(&mut ctx, file),
        Command::Simple { file } => cmd_simple(&mut ctx, file),
        Command::Intersect { a, b } => {
            let (a, b) = (first_curve(&mut ctx, a)?, first_curve(&mut ctx, b)?);
            let d = same_depth(&[&a, &b])?;
            let i = intersection_number(&a, &b)?;
            if ctx.json(Format::Text) {
                #[derive(Serialize)]
                struct R<'a> {
                    a: &'a Curve,
                    b: &'a Curve,
                    intersection_number: usize,
                }
                ctx.report(
                    "intersect",
                    Some(d),
                    None,
                    None,
                    R {
                        a: &a,
                        b: &b,
                        intersection_number: i,
                    },
                )
            } else {
                ctx.line(&i.to_string())
            }
        }
        Command::Unicorn { a, b, method } => {
            let (a, b) = (first_curve(&mut ctx, a)?, first_curve(&mut ctx, b)?);
            same_depth(&[&a, &b])?;
            let path = match method {
                Method::P1 => unicorn_p1(&a, &b)?,
                Method::P2 => unicorn_p2(&a, &b)?,
            };
            write_path(&mut ctx, "unicorn", &path)
        }
        Command::UnicornInf { a, ray } => {
            let a = first_curve(&mut ctx, a)?;
            let gen = ray_from_spec(&mut ctx, ray)?;
            let path = unicorn_infinite(&a, gen.as_ref(), cli.global.max_terms)?;
            if !path.complete {
                ctx.warn("path is incomplete: a splice point was taken at the generator horizon");
            }
            write_path(&mut ctx, "unicorn-inf", &path)
        }
        Command::Distance { a, b, graph } => {
            let (a, b) = (first_curve(&mut ctx, a)?, first_curve(&mut ctx, b)?);
            let depth = same_depth(&[&a, &b])?;
            let budget = ctx
                .opts()
                .effective(graph_budget(*graph, depth, cap, &[&a, &b]), &a, &b);
            let d = BudgetGraph::new(budget).distance(&a, &b, ctx.g.max_radius)?;
            if ctx.json(Format::Json) {
                ctx.report("distance", Some(depth), Some(budget), None, &d)
            } else {
                ctx.line(&distance_text(&d))?;
                for c in d.witness.iter().flatten() {
                    ctx.line(&c.to_string())?;
                }
                Ok(())
            }
        }
        Command::Gromov { p, x, y, graph } => {
            let (p, x, y) = (
                first_curve(&mut ctx, p)?,
                first_curve(&mut ctx, x)?,
                first_curve(&mut ctx, y)?,
            );
            let depth = same_depth(&[&p, &x, &y])?;
            let longest = [&p, &x, &y].into_iter().max_by_key(|c| c.len()).expect("three curves");
            let budget = ctx
                .opts()
                .effective(graph_budget(*graph, depth, cap, &[&p, &x, &y]), longest, longest);
            let gp = gromov_product(&p, &x, &y, &BudgetGraph::new(budget), ctx.g.max_radius)?;
            if ctx.json(Format::Json) {
                ctx.report("gromov", Some(depth), Some(budget), None, &gp)
            } else {
                match gp.value() {
                    Some(v) => ctx.line(&format!("(x.y)_p = {v}")),
                    None => ctx.line(&format!(
                        "{} <= (x.y)_p <= {}",
                        gp.twice_lower as f64 / 2.0,
                        gp.twice_upper.map_or("?".to_string(), |u| (u as f64 / 2.0).to_string())
                    )),
                }
            }
        }
        Command::Delta { file, sample, max_len } => {
            let (curves, seed) = match file {
                Some(f) => (load_curves(&mut ctx, f)?, None),
                None => (sample_loops(&ctx, *sample, *max_len)?, Some(ctx.g.seed)),
            };
            if curves.is_empty() {
                return Err(CliError::Domain("no curves to sample".into()));
            }
            let depth = same_depth(&curves.iter().collect::<Vec<_>>())?;
            let refs: Vec<&Curve> = curves.iter().collect();
            let budget = graph_budget(GraphKind::Auto, depth, cap, &refs);
            let rep = estimate_delta(&curves, &BudgetGraph::new(budget), ctx.g.max_radius)?;
            if ctx.json(Format::Json) {
                ctx.report("delta", Some(depth), Some(budget), seed, &rep)
            } else {
                ctx.line(&format!("delta >= {} over {} quadruples", rep.delta(), rep.quadruples))
            }
        }
        Command::QiCheck { file, sample, max_len } => {
            let (curves, seed) = match file {
                Some(f) => (load_curves(&mut ctx, f)?, None),
                None => (sample_loops(&ctx, 2 * *sample, *max_len)?, Some(ctx.g.seed)),
            };
            if curves.len() < 2 {
                return Err(CliError::Domain("qi-check needs at least one pair".into()));
            }
            let depth = same_depth(&curves.iter().collect::<Vec<_>>())?;
            let pairs: Vec<(Curve, Curve)> = curves.chunks_exact(2).map(|p| (p[0].clone(), p[1].clone())).collect();
            let rep = quasi_isometry_experiment(&pairs, depth, cap, ctx.g.max_radius)?;
            if ctx.json(Format::Json) {
                ctx.report(
                    "qi-check",
                    Some(depth),
                    Some(ComplexityBudget::mixed(depth, cap)),
                    seed,
                    &rep,
                )
            } else {
                ctx.line(&format!(
                    "pairs {} upper_violations {} lower_violations {} unresolved {}",
                    rep.rows.len(),
                    rep.upper_violations,
                    rep.lower_violations,
                    rep.unresolved
                ))
            }
        }
        Command::CliqueCheck {
            ray,
            prefix_len,
            depths,
        } => {
            let members: Vec<Box<dyn LongRayGenerator>> = if ray.is_empty() {
                spiral_clique()?
                    .into_iter()
                    .map(|g| Box::new(g) as Box<dyn LongRayGenerator>)
                    .collect()
            } else {
                ray.iter()
                    .map(|s| ray_from_spec(&mut ctx, s))
                    .collect::<CliResult<_>>()?
            };
            let refs: Vec<&dyn LongRayGenerator> = members.iter().map(|b| b.as_ref()).collect();
            let rep = verify_clique(&refs, *prefix_len, depths)?;
            if ctx.json(Format::Json) {
                ctx.report("clique-check", depths.iter().max().copied(), None, None, &rep)
            } else {
                ctx.line(&format!(
                    "clique {} ({} members, prefix {})",
                    rep.is_clique,
                    rep.members.len(),
                    rep.prefix_len
                ))
            }
        }
        Command::FillCert { ray, kind, prefix_len } => {
            let gen = ray_from_spec(&mut ctx, ray)?;
            let depth = ctx.g.depth.unwrap_or(2);
            let kind = match kind {
                FillKind::Loop => FillingKind::LoopFillingAtBudget,
                FillKind::Ray => FillingKind::RayFillingAtBudget,
            };
            let res = filling_certificate(gen.as_ref(), ComplexityBudget::mixed(depth, cap), kind, *prefix_len)?;
            let budget = match &res {
                FillingOutcome::Certificate { budget, .. } | FillingOutcome::Negative { budget, .. } => *budget,
            };
            if ctx.json(Format::Json) {
                ctx.report("fill-cert", Some(depth), Some(budget), None, &res)
            } else {
                match &res {
                    FillingOutcome::Certificate { checked_count, .. } => ctx.line(&format!(
                        "certificate: every one of {checked_count} budget curves meets the prefix"
                    )),
                    FillingOutcome::Negative { witness, .. } => {
                        ctx.line(&format!("negative: {witness} misses the prefix"))
                    }
                }
            }
        }
        Command::AlphaTest { k, negative_control } => {
            let fam = AlphaFamily::committed();
            let next = fam.stage(k + 1).map_err(|_| {
                CliError::Domain(format!(
                    "alpha-test needs stage {} (committed stages 1..={})",
                    k + 1,
                    fam.len()
                ))
            })?;
            let budget = ComplexityBudget::mixed(next.model.depth(), cap);
            let rep = if *negative_control {
                alpha_negative_control(&fam, *k, budget)?
            } else {
                alpha_forcing_test(&fam, *k, budget)?
            };
            if ctx.json(Format::Json) {
                ctx.report("alpha-test", Some(rep.depth), Some(rep.budget), None, &rep)
            } else {
                ctx.line(&format!(
                    "k {} passed {} disjoint {} violations {}{}",
                    rep.k,
                    rep.passed,
                    rep.disjoint_count,
                    rep.violations.len(),
                    if rep.vacuous { " (vacuous)" } else { "" }
                ))
            }
        }
        Command::Growth { a, ray } => {
            let a = first_curve(&mut ctx, a)?;
            let gen = ray_from_spec(&mut ctx, ray)?;
            let rep = growth_experiment(&a, gen.as_ref(), cli.global.max_terms, cap)?;
            if ctx.json(Format::Json) {
                ctx.report("growth", Some(rep.depth), Some(rep.budget), None, &rep)
            } else {
                let lows: Vec<String> = rep.rows.iter().map(|r| r.lower.to_string()).collect();
                ctx.line(&format!("lower bounds {} complete {}", lows.join(" "), rep.complete))
            }
        }
        Command::Render {
            files,
            output,
            layout,
            highlight,
            width,
            height,
        } => {
            let mut curves = Vec::new();
            for f in files {
                curves.extend(load_curves(&mut ctx, f)?);
            }
            let depth = curves
                .iter()
                .map(|c| c.depth())
                .max()
                .unwrap_or(ctx.g.depth.unwrap_or(1));
            let words = curves
                .iter()
                .map(|c| embed_word(c.word(), depth - c.depth()))
                .collect::<cantor_curves::Result<Vec<_>>>()?;
            let mut spec = RenderSpec::new(make_model(depth)?, words);
            spec.labels = spec.curves.iter().map(|w| w.to_string()).collect();
            spec.width = *width;
            spec.height = *height;
            spec.highlight_intersections = *highlight;
            spec.layout = match layout {
                LayoutArg::DiskPair => Layout::DiskPair,
                LayoutArg::Flat => Layout::Flat,
            };
            let svg = render_svg(&spec);
            match output {
                Some(p) => std::fs::write(p, svg).map_err(|e| CliError::Domain(format!("{}: {e}", p.display()))),
                None => ctx.out.write_all(svg.as_bytes()).map_err(write_failed),
            }
        }
        Command::Refine { file, levels } => cmd_refine(&mut ctx, file, *levels),
    }
}

fn parse_file(path: &Path) -> CliResult<CorpusFile> {
    format::parse(&read(path)?).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

fn cmd_tighten(ctx: &mut Ctx, path: &Path) -> CliResult<()> {
    let file = parse_file(path)?;
    #[derive(Serialize)]
    struct Row {
        input: String,
        output: String,
        bigons_removed: usize,
        simple: bool,
    }
    let mut rows = Vec::new();
    let mut outf = CorpusFile::new(file.model);
    for e in &file.entries {
        match e {
            Entry::Word(w) => {
                let c = tighten(&validate(w.clone())?)
                    .map_err(|e| CliError::Domain(format!("{}: `{w}`: {e}", path.display())))?;
                rows.push(Row {
                    input: w.to_string(),
                    output: c.to_string(),
                    bigons_removed: (w.len() - c.len()) / 2,
                    simple: c.is_canonical(),
                });
                outf.entries.push(Entry::Word(c.into_word()));
            }
            other => outf.entries.push(other.clone()),
        }
    }
    if ctx.json(Format::Text) {
        ctx.report("tighten", Some(file.model.depth()), None, None, &rows)
    } else {
        ctx.out
            .write_all(format::serialize(&outf).as_bytes())
            .map_err(write_failed)
    }
}

fn cmd_simple(ctx: &mut Ctx, path: &Path) -> CliResult<()> {
    let file = parse_file(path)?;
    #[derive(Serialize)]
    struct Row {
        curve: String,
        simple: bool,
    }
    let mut rows = Vec::new();
    for w in file.words() {
        let c =
            tighten(&validate(w.clone())?).map_err(|e| CliError::Domain(format!("{}: `{w}`: {e}", path.display())))?;
        rows.push(Row {
            curve: w.to_string(),
            simple: is_simple(c.word()),
        });
    }
    if ctx.json(Format::Text) {
        ctx.report("simple", Some(file.model.depth()), None, None, &rows)
    } else {
        for r in rows {
            ctx.line(&format!("{}\t{}", r.simple, r.curve))?;
        }
        Ok(())
    }
}

fn cmd_refine(ctx: &mut Ctx, path: &Path, levels: u32) -> CliResult<()> {
    let file = parse_file(path)?;
    let model = make_model(file.model.depth() + levels)?;
    let mut outf = CorpusFile::new(model);
    for e in &file.entries {
        outf.entries.push(match e {
            Entry::Word(w) => Entry::Word(embed_word(w, levels)?),
            Entry::Periodic(p) => Entry::Periodic(PeriodicSpec {
                start: p.start,
                preamble: p.preamble.iter().map(|&g| embed_gap(g, levels)).collect(),
                period: p.period.iter().map(|&g| embed_gap(g, levels)).collect(),
            }),
            Entry::Comment(c) => Entry::Comment(c.clone()),
        });
    }
    if ctx.json(Format::Text) {
        let words: Vec<String> = outf.words().map(|w| w.to_string()).collect();
        ctx.report("refine", Some(model.depth()), None, None, &words)
    } else {
        ctx.out
            .write_all(format::serialize(&outf).as_bytes())
            .map_err(write_failed)
    }
}
