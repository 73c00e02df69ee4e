use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use sggi::constructions::{alt_family, bounds, search_witness, witness, FamilySpec, Table};
use sggi::fracture::{check_properties, find_splits, fracture_graph, hypothesis_profile, two_fracture};
use sggi::search::{search_target, Mode, Outcome, SearchOptions, Target};
use sggi::sggi::parse_gens;
use sggi::{intersection_property, parse_graph, to_graph, validate, Error, PermGroup, RepGraph, Sggi};

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser, Debug)]
#[command(name = "sggi", version, about = "String groups generated by involutions: check, analyze, build, search")]
struct Cli {
    /// key=value lines instead of the readable report
    #[arg(long, global = true)]
    porcelain: bool,
    /// worker threads for search
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the string condition, independence and group order of a file
    Verify {
        file: PathBuf,
        /// also test the intersection property
        #[arg(long)]
        intersection: bool,
    },
    /// Fracture graphs, splits and structural checks
    Analyze { file: PathBuf },
    /// The rank-extremal string for Alt(n)
    Family {
        #[arg(long)]
        n: usize,
    },
    /// A row of one of the witness tables
    Witness(WitnessArgs),
    /// Rank bounds for Alt(n)
    Bounds {
        #[arg(long)]
        n: usize,
    },
    /// Search for strings generating a group
    Search(SearchArgs),
    /// Graphviz output for a string or graph file
    ExportDot { file: PathBuf },
}

#[derive(Args, Debug)]
struct WitnessArgs {
    /// 2, 3 or 4
    #[arg(long)]
    table: Table,
    #[arg(long)]
    row: String,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupKind {
    Alt,
    Sym,
    File,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, value_enum)]
    group: GroupKind,
    #[arg(long)]
    degree: Option<usize>,
    /// generators file, for --group file
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, conflicts_with = "randomized")]
    exhaustive: bool,
    #[arg(long)]
    randomized: bool,
    /// wall-clock limit in seconds
    #[arg(long)]
    budget: Option<f64>,
    #[arg(long)]
    max_length: Option<usize>,
    #[arg(long)]
    no_prune: bool,
    /// randomized mode: number of beams
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    /// randomized mode: partial strings kept per level
    #[arg(long, default_value_t = 64)]
    beam_width: usize,
    /// randomized mode: stop at this rank
    #[arg(long)]
    target_rank: Option<usize>,
    /// write witnesses here as witness_K.sggi
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Exit status: 0 ok, 1 usage, 2 invalid input or failed check, 3 inconclusive search.
enum Fail {
    Usage(String),
    Invalid(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Parameter(_) => Fail::Usage(e.to_string()),
            _ => Fail::Invalid(e.to_string()),
        }
    }
}

struct Out {
    porcelain: bool,
    text: String,
}

impl Out {
    fn kv(&mut self, key: &str, human: &str, value: impl std::fmt::Display) {
        if self.porcelain {
            writeln!(self.text, "{key}={value}").unwrap();
        } else {
            writeln!(self.text, "{human}: {value}").unwrap();
        }
    }

    fn line(&mut self, s: impl std::fmt::Display) {
        if !self.porcelain {
            writeln!(self.text, "{s}").unwrap();
        }
    }

    fn raw(&mut self, s: &str) {
        self.text.push_str(s);
    }
}

/// A string, a graph, or a string followed by its graph.
struct Document {
    sggi: Option<Sggi>,
    graph: Option<RepGraph>,
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn parse_document(text: &str) -> Result<Document, Fail> {
    let is_graph_header = |l: &str| l.split('#').next().unwrap().trim_start().starts_with("graph");
    let lines: Vec<&str> = text.lines().collect();
    let split = lines.iter().position(|l| is_graph_header(l));
    let (head, tail) = match split {
        Some(i) => (lines[..i].join("\n"), Some(lines[i..].join("\n"))),
        None => (text.to_string(), None),
    };
    let has_head = head.lines().any(|l| !l.split('#').next().unwrap().trim().is_empty());
    let graph = tail.map(|t| parse_graph(&t)).transpose()?;
    let sggi = if has_head {
        let (n, gens) = parse_gens(&head)?;
        let rep = validate(n, &gens)?;
        if !rep.ok {
            return Err(Fail::Invalid(format!("not a string of involutions: {rep}")));
        }
        Some(Sggi::new(n, gens)?)
    } else {
        None
    };
    if sggi.is_none() && graph.is_none() {
        return Err(Fail::Invalid("empty input".into()));
    }
    Ok(Document { sggi, graph })
}

fn load_sggi(path: &Path) -> Result<Sggi, Fail> {
    let doc = parse_document(&read(path)?)?;
    match (doc.sggi, doc.graph) {
        (Some(s), _) => Ok(s),
        (None, Some(g)) => Ok(sggi::from_graph(&g)?),
        (None, None) => unreachable!(),
    }
}

fn print_string(out: &mut Out, s: &Sggi) {
    out.raw(&s.to_text());
    out.raw(&to_graph(s).to_text());
}

fn verify(out: &mut Out, file: &Path, intersection: bool) -> Result<(), Fail> {
    let doc = parse_document(&read(file)?)?;
    let s = match (&doc.sggi, &doc.graph) {
        (Some(s), Some(g)) => {
            if to_graph(s) != *g {
                return Err(Fail::Invalid("the graph does not match the generators".into()));
            }
            s.clone()
        }
        (Some(s), None) => s.clone(),
        (None, Some(g)) => sggi::from_graph(g)?,
        (None, None) => unreachable!(),
    };
    let order = s.group().order();
    let redundant = s.redundant_index();
    if out.porcelain {
        out.kv("valid", "", true);
        out.kv("degree", "", s.degree());
        out.kv("length", "", s.len());
        out.kv("independent", "", redundant.is_none());
        if let Some(k) = redundant {
            out.kv("redundant", "", k);
        }
        out.kv("order", "", &order);
        out.kv("transitive", "", s.is_transitive());
        out.kv("even", "", s.all_even());
    } else {
        match redundant {
            None => out.line(format!("valid, independent, |G| = {order}")),
            Some(k) => out.line(format!("valid, not independent (generator {k} is redundant), |G| = {order}")),
        }
        out.line(format!(
            "degree {}, length {}, {}, {}",
            s.degree(),
            s.len(),
            if s.is_transitive() { "transitive" } else { "intransitive" },
            if s.all_even() { "all generators even" } else { "some generator odd" }
        ));
    }
    if intersection {
        let ip = intersection_property(&s)?;
        match (&ip.failure, out.porcelain) {
            (None, _) => out.kv("intersection", "intersection property", "holds"),
            (Some((i, j)), true) => out.kv("intersection", "", format!("fails I={i:?} J={j:?}")),
            (Some((i, j)), false) => out.line(format!("intersection property: fails for I = {i:?}, J = {j:?}")),
        }
    }
    Ok(())
}

fn join(v: &[usize]) -> String {
    if v.is_empty() {
        return "-".into();
    }
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn join1(v: &[usize]) -> String {
    join(&v.iter().map(|x| x + 1).collect::<Vec<_>>())
}

fn analyze(out: &mut Out, file: &Path) -> Result<bool, Fail> {
    let s = load_sggi(file)?;
    let independent = s.is_independent();
    let prof = hypothesis_profile(&s);
    out.kv("classification", "classification", prof.class);
    out.kv("transitive", "transitive", prof.transitive);
    out.kv("even", "even", prof.even);
    out.kv("independent", "independent", independent);
    match fracture_graph(&s) {
        Ok(fg) => {
            let e: Vec<String> = fg.edges().iter().map(|&(u, v, l)| format!("{}-{}:{l}", u + 1, v + 1)).collect();
            out.kv("fracture", "fracture graph", e.join(" "));
        }
        Err(e) => out.kv("fracture", "fracture graph", format!("none ({e})")),
    }
    if let Ok(Some(tf)) = two_fracture(&s) {
        let e: Vec<String> = tf.edges().iter().map(|&(u, v, l)| format!("{}-{}:{l}", u + 1, v + 1)).collect();
        out.kv("two_fracture", "2-fracture graph", e.join(" "));
        out.kv("two_fracture_squares", "  alternating squares", tf.squares);
        out.kv("two_fracture_components", "  components", tf.components().len());
    }
    if let Ok(sa) = find_splits(&s) {
        out.kv("splits", "splits", sa.split_count);
        out.kv("perfect_splits", "perfect splits", sa.perfect_count);
        out.line("label  edge     |A|  |B|  perfect   J_A            J_B");
        for sp in &sa.splits {
            let perfect = match sp.perfect {
                Some(o) => format!("{o:?}"),
                None => "no".into(),
            };
            if out.porcelain {
                out.kv(
                    &format!("split.{}", sp.label),
                    "",
                    format!(
                        "edge={}-{} a={} b={} perfect={} ja={} jb={}",
                        sp.edge.0 + 1,
                        sp.edge.1 + 1,
                        sp.n_a(),
                        sp.n_b(),
                        perfect,
                        join(&sp.j_a),
                        join(&sp.j_b)
                    ),
                );
            } else {
                out.line(format!(
                    "{:<6} {:<8} {:<4} {:<4} {:<9} {:<14} {}",
                    sp.label,
                    format!("{}-{}", sp.edge.0 + 1, sp.edge.1 + 1),
                    sp.n_a(),
                    sp.n_b(),
                    perfect,
                    join(&sp.j_a),
                    join(&sp.j_b)
                ));
            }
            if let Some((h, g)) = sp.h_g() {
                out.kv(&format!("split.{}.hg", sp.label), "       h, g (informational)", format!("{h},{g}"));
            }
        }
        for (l, (x, y)) in sa.x_sets.iter().zip(&sa.y_sets).enumerate() {
            out.kv(&format!("fix.{l}"), &format!("fix profile {l}"), format!("X={} Y={}", join1(x), join1(y)));
        }
    }
    let mut all_hold = true;
    for c in check_properties(&s, independent) {
        let verdict = match (c.applicable, c.holds) {
            (false, _) => "n/a",
            (true, true) => "pass",
            (true, false) => "FAIL",
        };
        all_hold &= c.holds;
        if c.detail.is_empty() {
            out.kv(&format!("check.{}", c.name), &format!("check {}", c.name), verdict);
        } else {
            out.kv(&format!("check.{}", c.name), &format!("check {}", c.name), format!("{verdict} ({})", c.detail));
        }
    }
    Ok(all_hold)
}

fn family(out: &mut Out, n: usize) -> Result<(), Fail> {
    let s = match alt_family(n) {
        Ok(s) => s,
        Err(e) => match search_witness(n) {
            Some(s) => {
                out.raw(&format!("# found by search, no closed-form family for n = {n}\n"));
                s
            }
            None => return Err(e.into()),
        },
    };
    print_string(out, &s);
    Ok(())
}

fn bounds_cmd(out: &mut Out, n: usize) -> Result<(), Fail> {
    let b = bounds(n)?;
    if out.porcelain {
        out.kv("n", "", n);
        out.kv("theorem_bound", "", &b.theorem_bound);
        out.kv("construction_rank", "", b.construction_rank.map_or("-".into(), |r| r.to_string()));
        out.kv(
            "construction_source",
            "",
            b.construction_source.map_or("-".into(), |s| format!("{s:?}").to_lowercase()),
        );
        out.kv("maroti", "", &b.maroti);
        out.kv("log2_bound", "", b.log2_bound);
    } else {
        out.line(b.theorem_bound.to_string());
        out.line(format!("n = {n}"));
        match (b.construction_rank, b.construction_source) {
            (Some(r), Some(src)) => out.line(format!("construction rank: {r} ({})", format!("{src:?}").to_lowercase())),
            _ => out.line("construction rank: -"),
        }
        out.line(format!("primitive group order bound: {}", b.maroti));
        out.line(format!("floor(log2 |Alt(n)|): {}", b.log2_bound));
    }
    Ok(())
}

fn search(out: &mut Out, a: &SearchArgs, seed: u64) -> Result<bool, Fail> {
    let target = match a.group {
        GroupKind::Alt | GroupKind::Sym => {
            let n = a.degree.ok_or_else(|| Fail::Usage("--degree is required for alt and sym".into()))?;
            if a.file.is_some() {
                return Err(Fail::Usage("--file only goes with --group file".into()));
            }
            let g = match a.group {
                GroupKind::Alt => PermGroup::alternating(n.max(1)),
                _ => PermGroup::symmetric(n.max(1)),
            };
            Target::new(g)?
        }
        GroupKind::File => {
            let path = a.file.as_ref().ok_or_else(|| Fail::Usage("--group file needs --file".into()))?;
            let (n, gens) = parse_gens(&read(path)?)?;
            if a.degree.is_some_and(|d| d != n) {
                return Err(Fail::Usage(format!("--degree does not match the file (degree {n})")));
            }
            Target::new(PermGroup::new(n, gens)?)?
        }
    };
    let opts = SearchOptions {
        mode: if a.randomized { Mode::Randomized } else { Mode::Exhaustive },
        max_length: a.max_length,
        prune_conjugacy: !a.no_prune,
        seed,
        time_budget: a.budget.map(Duration::from_secs_f64),
        restarts: a.restarts,
        beam_width: a.beam_width,
        target_rank: a.target_rank,
    };
    let t0 = Instant::now();
    let res = search_target(&target, &opts)?;
    let st = &res.stats;
    eprintln!(
        "nodes={} leaves={} pruned: membership={} dependent={} conjugacy={} length={} time={:.2?}",
        st.nodes, st.leaves, st.pruned_membership, st.pruned_dependent, st.pruned_conjugacy, st.pruned_length,
        t0.elapsed()
    );
    out.kv("degree", "degree", target.degree());
    out.kv("order", "order", target.order());
    out.kv("mode", "mode", if a.randomized { "randomized" } else { "exhaustive" });
    out.kv("outcome", "outcome", &res.outcome);
    let ranks: Vec<usize> = res.ranks_found.iter().copied().collect();
    out.kv("ranks_found", "ranks found", join(&ranks));
    out.kv("witnesses", "witnesses (up to conjugacy)", res.witnesses.len());
    for (k, w) in res.witnesses.iter().enumerate() {
        let g = w.group();
        // every witness is re-certified before it is reported
        if !validate(w.degree(), w.gens()).is_ok_and(|r| r.ok) || !w.is_independent() || g.order() != *target.order() {
            return Err(Fail::Invalid(format!("witness {k} failed certification")));
        }
        match &a.out {
            Some(dir) => {
                fs::create_dir_all(dir).map_err(|e| Fail::Usage(e.to_string()))?;
                let p = dir.join(format!("witness_{k}.sggi"));
                fs::write(&p, w.to_text()).map_err(|e| Fail::Usage(e.to_string()))?;
                out.kv(&format!("witness.{k}"), &format!("witness {k}"), p.display());
            }
            None => {
                out.line(format!("witness {k}:"));
                if !out.porcelain {
                    out.raw(&w.to_text());
                }
            }
        }
    }
    let conclusive = match res.outcome {
        Outcome::NoSggi | Outcome::MaxRank(_) | Outcome::LowerBound(_) => true,
        Outcome::Inconclusive { .. } => false,
    };
    Ok(conclusive)
}

fn run(cli: &Cli, out: &mut Out) -> Result<u8, Fail> {
    match &cli.cmd {
        Cmd::Verify { file, intersection } => verify(out, file, *intersection).map(|_| 0),
        Cmd::Analyze { file } => analyze(out, file).map(|ok| if ok { 0 } else { 2 }),
        Cmd::Family { n } => family(out, *n).map(|_| 0),
        Cmd::Witness(w) => {
            let mut spec = FamilySpec::new(w.table, &w.row, w.rank);
            spec.i = w.i;
            spec.k = w.k;
            print_string(out, &witness(&spec)?);
            Ok(0)
        }
        Cmd::Bounds { n } => bounds_cmd(out, *n).map(|_| 0),
        Cmd::Search(a) => search(out, a, cli.seed).map(|c| if c { 0 } else { 3 }),
        Cmd::ExportDot { file } => {
            let doc = parse_document(&read(file)?)?;
            let g = match (doc.graph, doc.sggi) {
                (Some(g), _) => g,
                (None, Some(s)) => to_graph(&s),
                (None, None) => unreachable!(),
            };
            out.raw(&g.to_dot());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let mut out = Out { porcelain: cli.porcelain, text: String::new() };
    let code = match run(&cli, &mut out) {
        Ok(c) => c,
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            1
        }
        Err(Fail::Invalid(m)) => {
            print!("{}", out.text);
            out.text.clear();
            if cli.porcelain {
                println!("valid=false\nerror={m}");
            } else {
                println!("invalid: {m}");
            }
            2
        }
    };
    print!("{}", out.text);
    ExitCode::from(code)
}
