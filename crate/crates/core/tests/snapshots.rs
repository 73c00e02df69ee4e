//! Fixture files and recorded classifications. Regenerate with `UPDATE_SNAPSHOTS=1`.

mod common;

use std::fmt::Write;
use std::path::PathBuf;

use sggi::constructions::{alt_family, table1_degrees, table1_graph, witness_corpus, witness_graph};
use sggi::fracture::{find_splits, hypothesis_profile};
use sggi::{from_graph, parse_graph, Sggi};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/v1")
}

fn updating() -> bool {
    std::env::var("UPDATE_SNAPSHOTS").is_ok_and(|v| v == "1")
}

fn compare(rel: &str, actual: &str) {
    let path = root().join(rel);
    if updating() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e} (run with UPDATE_SNAPSHOTS=1)", path.display()));
    assert!(expected == actual, "{rel} differs from the recorded snapshot");
}

/// Splits read straight off the orbits of each `G_i`.
fn naive_split_labels(s: &Sggi) -> Vec<usize> {
    let n = s.degree();
    (0..s.len())
        .filter(|&i| {
            let orbs = common::naive_orbits(n, &s.without(i));
            let which = |x: usize| orbs.iter().position(|o| o.contains(&x)).unwrap();
            let crossing = s.gens()[i].transpositions().into_iter().filter(|&(a, b)| which(a) != which(b)).count();
            orbs.len() == 2 && crossing == 1
        })
        .collect()
}

#[test]
fn table1_graph_files() {
    for n in table1_degrees(40) {
        let g = table1_graph(n).unwrap();
        let rel = format!("table1/alt{n}.graph");
        compare(&rel, &g.to_text());
        let back = parse_graph(&std::fs::read_to_string(root().join(&rel)).unwrap()).unwrap();
        assert_eq!(from_graph(&back).unwrap(), alt_family(n).unwrap());
    }
}

#[test]
fn witness_graph_file() {
    let mut out = String::new();
    for spec in witness_corpus(8) {
        writeln!(out, "# {}", spec.id()).unwrap();
        out += &witness_graph(&spec).unwrap().to_text();
    }
    compare("snapshots/witness_graphs.txt", &out);
}

#[test]
fn alt_family_classification() {
    let mut out = String::new();
    for n in table1_degrees(40) {
        let s = alt_family(n).unwrap();
        let p = hypothesis_profile(&s);
        let sa = find_splits(&s).unwrap();
        let labels: Vec<usize> = sa.splits.iter().map(|sp| sp.label).collect();
        assert_eq!(labels, naive_split_labels(&s), "n = {n}");
        let splits: Vec<String> = sa
            .splits
            .iter()
            .map(|sp| format!("{}{}", sp.label, if sp.is_perfect() { "p" } else { "" }))
            .collect();
        writeln!(
            out,
            "n={n} r={} class={} transitive={} even={} splits=[{}]",
            s.len(),
            p.class,
            p.transitive,
            p.even,
            splits.join(" ")
        )
        .unwrap();
    }
    compare("snapshots/alt_family.txt", &out);
}
