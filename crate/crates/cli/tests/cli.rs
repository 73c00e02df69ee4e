use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures/v1")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn sggi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sggi")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("sggi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn verify_coxeter() {
    let o = sggi(&["verify", &fixture("coxeter_s4.sggi")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("valid, independent, |G| = 24"));
}

#[test]
fn family_output_verifies() {
    let o = sggi(&["family", "--n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("10 5\n"));
    assert!(text.contains("graph 10 5\n"));
    let path = tmp("family10.txt", &text);
    let v = sggi(&["verify", &path]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).starts_with("valid, independent, |G| = 1814400"));
}

#[test]
fn family_falls_back_to_search_witness() {
    let o = sggi(&["family", "--n", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let path = tmp("family9.txt", &stdout(&o));
    assert!(stdout(&sggi(&["verify", &path])).starts_with("valid, independent, |G| = 181440"));
    assert_eq!(sggi(&["family", "--n", "8"]).status.code(), Some(1));
}

#[test]
fn bounds_small() {
    let o = sggi(&["bounds", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("no SGGI"));
    let o = sggi(&["bounds", "--n", "9"]);
    assert_eq!(stdout(&o).lines().next(), Some("at most 4"));
}

#[test]
fn witness_round_trips() {
    let o = sggi(&["witness", "--table", "2", "--row", "4", "--rank", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let path = tmp("w4.txt", &stdout(&o));
    assert_eq!(sggi(&["verify", &path]).status.code(), Some(0));
    assert_eq!(sggi(&["witness", "--table", "2", "--row", "99", "--rank", "2"]).status.code(), Some(1));
}

#[test]
fn export_dot_lists_edges() {
    let o = sggi(&["export-dot", &fixture("klein.sggi")]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("graph G {"));
    assert_eq!(dot.matches(" -- ").count(), 6);
    for l in 0..3 {
        assert!(dot.contains(&format!("label=\"{l}\"")));
    }
}

#[test]
fn analyze_reports_classification() {
    let o = sggi(&["analyze", &fixture("coxeter_s4.sggi")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("classification: all-splits-perfect"));
    let o = sggi(&["--porcelain", "analyze", &fixture("klein.sggi")]);
    assert!(stdout(&o).contains("classification=no-fracture"));
}

#[test]
fn porcelain_is_key_value() {
    let o = sggi(&["--porcelain", "verify", &fixture("klein.sggi")]);
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.contains('=')));
    assert!(text.contains("independent=false"));
    assert!(text.contains("redundant=0"));
}

#[test]
fn search_outputs_are_stable() {
    let args = ["search", "--group", "file", "--file", &fixture("groups/pgl2_5.gens")];
    let a = sggi(&args);
    let b = sggi(&[&["--threads", "1"][..], &args].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("outcome: max_rank 4"));
}

#[test]
fn exit_codes() {
    assert_eq!(sggi(&["bogus"]).status.code(), Some(1));
    assert_eq!(sggi(&["verify", "--no-such-flag", "x"]).status.code(), Some(1));
    assert_eq!(sggi(&["verify", "/nonexistent/file.sggi"]).status.code(), Some(1));
    let bad = tmp("bad.sggi", "3 2\n(1 2)\n(1 2 3)\n");
    let o = sggi(&["verify", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("not an involution"));
    let bad = tmp("bad2.sggi", "4 3\n(1 2)\n(3 4)\n(2 3)\n");
    assert_eq!(sggi(&["verify", &bad]).status.code(), Some(2));
    // zero budget: nothing gets explored
    let o = sggi(&["search", "--group", "alt", "--degree", "8", "--budget", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("outcome: inconclusive"));
    let o = sggi(&["search", "--group", "alt", "--degree", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("outcome: no_sggi"));
    assert_eq!(sggi(&["--help"]).status.code(), Some(0));
}

#[test]
fn search_writes_witnesses() {
    let dir = std::env::temp_dir().join(format!("sggi-cli-out-{}", std::process::id()));
    let o = sggi(&["search", "--group", "alt", "--degree", "5", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(!files.is_empty());
    for f in files {
        let v = sggi(&["verify", f.to_str().unwrap()]);
        assert!(stdout(&v).starts_with("valid, independent, |G| = 60"));
    }
}
