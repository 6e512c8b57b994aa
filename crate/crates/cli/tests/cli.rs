use std::path::PathBuf;
use std::process::{Command, Output};

use spiders::report::Report;

fn spiders(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spiders")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Report {
    String::from_utf8_lossy(&out.stdout).parse().expect("report parses")
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("spiders-cli-{}-{name}", std::process::id()))
}

fn data<'a>(r: &'a Report, key: &str) -> Vec<&'a str> {
    r.data.iter().filter(|(k, _)| k == key).map(|(_, v)| v.as_str()).collect()
}

#[test]
fn walsh_one_rows() {
    let out = spiders(&["gen", "walsh", "--n", "1"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(data(&r, "row 0"), ["+ +"]);
    assert_eq!(data(&r, "row 1"), ["+ -"]);
}

#[test]
fn generated_files_verify() {
    for (kind, flag, arg) in [("walsh", "--n", "3"), ("paley", "--q", "11")] {
        let path = temp(&format!("{kind}.had"));
        let p = path.to_str().unwrap();
        assert!(spiders(&["gen", kind, flag, arg, "-o", p]).status.success());
        let out = spiders(&["verify", "had", p]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
        assert!(report(&out).passed());
        std::fs::remove_file(path).unwrap();
    }
}

#[test]
fn gram_and_dims() {
    let r = report(&spiders(&["gram", "--N", "4"]));
    assert!(r.checks.iter().any(|c| c.actual == "10368" && c.pass));
    let r = report(&spiders(&["dims", "--N", "4", "--max-legs", "4"]));
    let c = r.checks.iter().find(|c| c.name == "rank (2,2)").unwrap();
    assert_eq!((c.actual.as_str(), c.pass), ("4", true));
}

#[test]
fn non_hadamard_fails_checks() {
    let path = temp("bad.had");
    std::fs::write(&path, "2\n+ +\n+ +\n").unwrap();
    let out = spiders(&["verify", "had", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    // either rejected at parse time or reported as failing
    assert!(matches!(out.status.code(), Some(1 | 2)));
}

#[test]
fn parse_errors_exit_two() {
    let path = temp("garbage.had");
    std::fs::write(&path, "bad\n").unwrap();
    let out = spiders(&["verify", "had", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    assert_eq!(spiders(&["gram"]).status.code(), Some(2));
    assert_eq!(spiders(&["verify", "had", "/nonexistent/file.had"]).status.code(), Some(2));
}

#[test]
fn theta_evaluates_and_normalizes_to_n() {
    let path = temp("theta.diagram");
    std::fs::write(&path, "lower 0\nupper 0\nvertex 0 black\nvertex 1 white\nedge (0, 0) (1, 1)\nedge (0, 1) (1, 0)\n")
        .unwrap();
    let p = path.to_str().unwrap();
    let had = temp("theta.had");
    assert!(spiders(&["gen", "walsh", "--n", "2", "-o", had.to_str().unwrap()]).status.success());
    let r = report(&spiders(&["eval", p, "--matrix", had.to_str().unwrap()]));
    assert_eq!(data(&r, "value"), ["4"]);
    let out = spiders(&["normalize", p, "--N", "4", "--trace"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(data(&r, "value"), ["4"]);
    assert!(!data(&r, "step").is_empty());
    std::fs::remove_file(path).unwrap();
    std::fs::remove_file(had).unwrap();
}

#[test]
fn reports_are_deterministic() {
    for args in [&["so4"][..], &["invariance", "--size", "4", "--count", "10"], &["qh", "transpose", "--n", "2"]] {
        let a = spiders(args);
        let b = spiders(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn graph_writes_dot() {
    let had = temp("graph.had");
    let dot = temp("graph.dot");
    assert!(spiders(&["gen", "walsh", "--n", "1", "-o", had.to_str().unwrap()]).status.success());
    let out = spiders(&["graph", had.to_str().unwrap(), "--looped", "-o", dot.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(std::fs::read_to_string(&dot).unwrap().contains("graph"));
    let r = report(&spiders(&["aut", had.to_str().unwrap()]));
    assert_eq!(data(&r, "order"), ["8"]);
    std::fs::remove_file(had).unwrap();
    std::fs::remove_file(dot).unwrap();
}
