#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn cantor(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cantor"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("cantor binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 stderr")
}

pub fn write_curves(dir: &Path, name: &str, depth: u32, lines: &[&str]) -> PathBuf {
    let mut text = format!("#version 1\n#depth {depth}\n");
    for l in lines {
        text.push_str(l);
        text.push('\n');
    }
    let p = dir.join(name);
    std::fs::write(&p, text).expect("write curve file");
    p
}

pub fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", stdout(o)))
}

/// Inputs shared by the command suite.
pub fn fixtures(dir: &Path) {
    write_curves(dir, "a.curve", 1, &["L N g0 g1"]);
    write_curves(dir, "b.curve", 1, &["L N g1 g2"]);
    write_curves(dir, "c.curve", 1, &["L S g0 g1"]);
    write_curves(dir, "deep.curve", 2, &["L N g1 g2"]);
    write_curves(dir, "loose.curve", 1, &["L N g0 g1 g1 g2 g2 g1", "L S g2 g0 g0 g1"]);
    write_curves(dir, "mixed.curve", 1, &["L N g0 g2 g1", "L N g0 g1", "R S g1 @b0"]);
    write_curves(dir, "alpha_src.curve", 2, &["L S g4 g3"]);
    write_curves(dir, "ray_a.curve", 2, &["R N @b1"]);
    write_curves(dir, "ray_b.curve", 2, &["R S g1 @b2"]);
    write_curves(
        dir,
        "pairs.curve",
        1,
        &["L N g0 g1", "L N g2 g0 g1 g2 g0", "L N g0 g1", "L N g1 g2"],
    );
}

/// Every subcommand with fixed arguments. Each entry names the artifact
/// file the run writes.
pub const SUITE: &[(&str, &[&str])] = &[
    ("tighten.txt", &["tighten", "loose.curve"]),
    ("simple.txt", &["simple", "mixed.curve"]),
    (
        "intersect.json",
        &["intersect", "a.curve", "c.curve", "--format", "json"],
    ),
    ("intersect_mismatch.txt", &["intersect", "a.curve", "deep.curve"]),
    ("unicorn.txt", &["unicorn", "a.curve", "c.curve"]),
    (
        "unicorn_p1.json",
        &["unicorn", "a.curve", "c.curve", "--method", "p1", "--format", "json"],
    ),
    (
        "unicorn_inf.txt",
        &["unicorn-inf", "alpha_src.curve", "--ray", "alpha", "--max-terms", "6"],
    ),
    (
        "distance.json",
        &[
            "distance",
            "ray_a.curve",
            "ray_b.curve",
            "--graph",
            "mixed",
            "--budget-crossings",
            "2",
        ],
    ),
    ("gromov.json", &["gromov", "a.curve", "b.curve", "c.curve"]),
    ("delta.json", &["delta", "--depth", "1", "--sample", "5", "--seed", "7"]),
    ("qi.json", &["qi-check", "pairs.curve", "--budget-crossings", "6"]),
    ("clique.json", &["clique-check", "--depths", "2,3"]),
    (
        "fill.json",
        &["fill-cert", "--ray", "alpha", "--depth", "2", "--budget-crossings", "4"],
    ),
    ("alpha1.json", &["alpha-test", "-k", "1", "--budget-crossings", "8"]),
    ("alpha1_neg.json", &["alpha-test", "-k", "1", "--negative-control"]),
    ("growth.json", &["growth", "alpha_src.curve", "--ray", "alpha"]),
    ("render.svg", &["render", "ray_a.curve", "ray_b.curve", "--highlight"]),
    ("render_flat.svg", &["render", "mixed.curve", "--layout", "flat"]),
    ("refine.txt", &["refine", "mixed.curve", "--levels", "2"]),
    ("usage.txt", &["distance", "a.curve"]),
];

/// Runs [`SUITE`] in a fresh directory and returns each artifact: stdout,
/// then stderr, then the exit code.
pub fn run_suite(dir: &Path) -> Vec<(String, Vec<u8>)> {
    fixtures(dir);
    let mut out = Vec::new();
    for (name, args) in SUITE {
        let o = cantor(dir, args);
        let mut bytes = o.stdout.clone();
        bytes.extend_from_slice(b"\n--- stderr\n");
        bytes.extend_from_slice(&o.stderr);
        bytes.extend_from_slice(format!("\n--- exit {}\n", o.status.code().unwrap_or(-1)).as_bytes());
        std::fs::write(dir.join(name), &bytes).expect("write artifact");
        out.push((name.to_string(), bytes));
    }
    out
}
