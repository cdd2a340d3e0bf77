mod common;

use common::{cantor, fixtures, json, run_suite, stderr, stdout, write_curves, SUITE};
use tempfile::tempdir;

#[test]
fn unicorn_on_a_disjoint_pair() {
    let dir = tempdir().unwrap();
    fixtures(dir.path());
    let o = cantor(dir.path(), &["unicorn", "--depth", "1", "a.curve", "b.curve"]);
    assert_eq!(o.status.code(), Some(0));
    let curves: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(String::from)
        .collect();
    assert_eq!(curves, ["L N g0 g1", "L N g1 g2"]);
}

#[test]
fn unicorn_marks_splices() {
    let dir = tempdir().unwrap();
    fixtures(dir.path());
    let o = cantor(dir.path(), &["unicorn", "a.curve", "c.curve"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("#splice").count(), 1, "{text}");
    assert!(text.starts_with("#version 1\n#depth 1\n"));
}

#[test]
fn depth_mismatch_exits_one() {
    let dir = tempdir().unwrap();
    fixtures(dir.path());
    let o = cantor(dir.path(), &["intersect", "a.curve", "deep.curve"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("depth mismatch"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempdir().unwrap();
    fixtures(dir.path());
    for args in [
        &["distance", "a.curve"][..],
        &["no-such-command"],
        &["unicorn-inf", "a.curve", "--ray", "comet"],
        &["tighten", "a.curve", "--format", "yaml"],
    ] {
        let o = cantor(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
    let o = cantor(dir.path(), &["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("unicorn-inf"));
}

#[test]
fn domain_errors_exit_one() {
    let dir = tempdir().unwrap();
    fixtures(dir.path());
    write_curves(dir.path(), "bad.curve", 1, &["L N g0 g9"]);
    write_curves(dir.path(), "knot.curve", 1, &["L N g0 g2 g1"]);
    for args in [
        &["tighten", "missing.curve"][..],
        &["tighten", "bad.curve"],
        &["unicorn", "knot.curve", "a.curve"],
        &["alpha-test", "-k", "9"],
    ] {
        let o = cantor(dir.path(), args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).starts_with("error:"));
    }
}

#[test]
fn alpha_test_reports_zero_violations() {
    let dir = tempdir().unwrap();
    let o = cantor(dir.path(), &["alpha-test", "-k", "1", "--budget-crossings", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["passed"], true);
    assert_eq!(v["result"]["violations"].as_array().unwrap().len(), 0);
    assert_eq!(v["budget"]["max_crossings"], 8);
}

#[test]
fn reports_carry_metadata() {
    let dir = tempdir().unwrap();
    fixtures(dir.path());
    for (name, args) in SUITE {
        if !name.ends_with(".json") {
            continue;
        }
        let o = cantor(dir.path(), args);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        let v = json(&o);
        for field in ["budget", "depth", "version"] {
            assert!(v.get(field).is_some(), "{name} lacks {field}");
        }
        assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
        assert_eq!(v["tool"], "cantor");
    }
}

#[test]
fn loose_input_is_tightened_with_a_warning() {
    let dir = tempdir().unwrap();
    fixtures(dir.path());
    let o = cantor(dir.path(), &["tighten", "loose.curve"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "#version 1\n#depth 1\nL N g0 g1\nL S g2 g1\n");
    let o = cantor(dir.path(), &["intersect", "loose.curve", "b.curve"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("tightened to `L N g0 g1`"), "{}", stderr(&o));
}

#[test]
fn simple_flags_each_curve() {
    let dir = tempdir().unwrap();
    fixtures(dir.path());
    let o = cantor(dir.path(), &["simple", "mixed.curve"]);
    let text = stdout(&o);
    let flags: Vec<&str> = text.lines().map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(flags, ["false", "true", "true"]);
}

#[test]
fn refine_doubles_gap_indices() {
    let dir = tempdir().unwrap();
    fixtures(dir.path());
    let o = cantor(dir.path(), &["refine", "a.curve"]);
    assert_eq!(stdout(&o), "#version 1\n#depth 2\nL N g0 g2\n");
    let back = dir.path().join("refined.curve");
    std::fs::write(&back, stdout(&o)).unwrap();
    let o = cantor(
        dir.path(),
        &["intersect", "refined.curve", "deep.curve", "--format", "text"],
    );
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn render_writes_identical_files() {
    let dir = tempdir().unwrap();
    fixtures(dir.path());
    for out in ["one.svg", "two.svg"] {
        let o = cantor(
            dir.path(),
            &["render", "ray_a.curve", "ray_b.curve", "--highlight", "-o", out],
        );
        assert_eq!(o.status.code(), Some(0));
    }
    let one = std::fs::read(dir.path().join("one.svg")).unwrap();
    let two = std::fs::read(dir.path().join("two.svg")).unwrap();
    assert!(one.starts_with(b"<svg"));
    assert_eq!(one, two);
}

#[test]
fn suite_is_deterministic() {
    let (x, y) = (tempdir().unwrap(), tempdir().unwrap());
    let first = run_suite(x.path());
    let second = run_suite(y.path());
    assert_eq!(first.len(), SUITE.len());
    for ((name, a), (_, b)) in first.iter().zip(&second) {
        assert!(a == b, "{name} differs between runs");
    }
}
