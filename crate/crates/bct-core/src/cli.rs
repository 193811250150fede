//! The `bct` command-line interface.
//!
//! Subcommands compose through pipes: `family` emits a JSON run report
//! carrying the group datum, and `classify` / `normaliser` / `export`
//! read one from a file (`--in`) or standard input. Inputs may also be
//! bare graph6 text or a bi-Cayley descriptor in JSON.
//!
//! Exit codes: 0 on success, 2 on validation or parse errors, 3 when a
//! documented size bound was exceeded. Default output is byte-stable
//! for identical inputs and tool version; `--timing` adds wall-clock
//! fields. `BCT_THREADS` caps the worker-thread count used by
//! `search`.

use std::io::Read as _;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::bicayley::{BiCayley, BiCayleyDescriptor};
use crate::classify::{classify, EdgeTransitivity};
use crate::families::{
    self, enumerate_triples, EnumerateOptions, EnumerationStats,
};
use crate::formats::{
    bicayley_labels, export_dot, graph_summary, normaliser_summary, two_arc_summary, Provenance,
    RunReport,
};
use crate::graphs::Graph;
use crate::group::FiniteGroup;
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "bct",
    version,
    about = "Bi-Cayley graphs: construction, automorphism groups, edge-transitivity",
    max_term_width = 100
)]
pub struct Cli {
    /// Add wall-clock timing to reports (otherwise output is byte-stable)
    #[arg(long, global = true)]
    pub timing: bool,

    /// Seed for randomised harness helpers; accepted for
    /// reproducibility plumbing, core computations are deterministic
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Construct a family member and emit it as a JSON run report
    ///
    /// Names: gamma-abelian (--m --n --lambda), gamma-dihedral (--n
    /// --lambda --k), g-p (--p), h-p (--p), c28-example,
    /// order-54-example, petersen, and the fixed corpus members
    /// (heawood, pappus, moebius-kantor, desargues, ...).
    Family {
        name: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        lambda: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
    },
    /// Full symmetry report for a datum (JSON) or bare graph (graph6)
    Classify {
        /// Input file; `-` or absent reads standard input
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
    },
    /// Normaliser of the translations: sigma/delta counts, order,
    /// action, and the 2-arc-transitivity condition triple
    Normaliser {
        /// Input file; `-` or absent reads standard input
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
    },
    /// Enumerate connected data over a family of host groups and
    /// stream classified hits as JSON lines
    Search {
        /// Host family to sweep
        host: HostKind,
        /// Largest host-group order
        #[arg(long, value_name = "ORDER")]
        max_n: usize,
        /// Largest valency |R| + |S|
        #[arg(long, default_value_t = 4)]
        max_valency: usize,
        /// Keep only hits whose full automorphism group acts this way
        #[arg(long, value_enum, default_value_t = Predicate::Any)]
        predicate: Predicate,
    },
    /// Re-emit the input graph or datum in another format
    Export {
        /// Input file; `-` or absent reads standard input
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: ExportFormat,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HostKind {
    /// Cyclic groups C_n
    Cyclic,
    /// Dihedral groups of order 2n
    Dihedral,
    /// All abelian groups up to isomorphism
    Abelian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Predicate {
    Any,
    EdgeTransitive,
    ArcTransitive,
    HalfArcTransitive,
    Semisymmetric,
    VertexTransitive,
    NotEdgeTransitive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    G6,
    Dot,
    Json,
}

/// Entry point: parses `std::env::args`, runs, and returns the process
/// exit code (errors are printed to standard error).
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // Clap exits 0 for --help/--version and 2 for usage errors.
        Err(e) => e.exit(),
    };
    configure_threads();
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Applies the `BCT_THREADS` worker cap if set to a positive integer.
fn configure_threads() {
    if let Ok(v) = std::env::var("BCT_THREADS") {
        if let Ok(k) = v.parse::<usize>() {
            if k >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global();
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Family {
            name,
            m,
            n,
            lambda,
            k,
            p,
        } => {
            let started = Instant::now();
            let (b, source) = build_family(
                name,
                &[("m", *m), ("n", *n), ("lambda", *lambda), ("k", *k), ("p", *p)],
            )?;
            let mut rr = RunReport::new(Provenance {
                source,
                descriptor: Some(b.descriptor()),
                graph6: b.graph().to_graph6(),
            });
            if cli.timing {
                rr.timing_ms = Some(started.elapsed().as_millis() as u64);
            }
            print!("{}", rr.to_json());
            Ok(())
        }
        Command::Classify { r#in } => {
            let started = Instant::now();
            let input = parse_input(&read_input(r#in)?, source_label(r#in))?;
            let mut rr = RunReport::new(input.provenance.clone());
            match &input.kind {
                InputKind::Datum(b) => {
                    rr.report = Some(classify(b)?);
                    rr.normaliser = Some(normaliser_summary(b)?);
                }
                InputKind::Graph(g) => {
                    rr.graph_report = Some(graph_summary(g));
                }
            }
            if cli.timing {
                rr.timing_ms = Some(started.elapsed().as_millis() as u64);
            }
            print!("{}", rr.to_json());
            Ok(())
        }
        Command::Normaliser { r#in } => {
            let started = Instant::now();
            let input = parse_input(&read_input(r#in)?, source_label(r#in))?;
            let InputKind::Datum(b) = &input.kind else {
                return Err(Error::InvalidParameter(
                    "the normaliser subcommand needs a bi-Cayley datum as input, \
                     got a bare graph"
                        .into(),
                ));
            };
            let mut rr = RunReport::new(input.provenance.clone());
            rr.normaliser = Some(normaliser_summary(b)?);
            rr.two_arc = match two_arc_summary(b) {
                Ok(t) => Some(t),
                Err(Error::NotApplicable(_)) | Err(Error::Disconnected(_)) => None,
                Err(e) => return Err(e),
            };
            if cli.timing {
                rr.timing_ms = Some(started.elapsed().as_millis() as u64);
            }
            print!("{}", rr.to_json());
            Ok(())
        }
        Command::Search {
            host,
            max_n,
            max_valency,
            predicate,
        } => run_search(*host, *max_n, *max_valency, *predicate),
        Command::Export { r#in, format } => {
            let input = parse_input(&read_input(r#in)?, source_label(r#in))?;
            match format {
                ExportFormat::G6 => println!("{}", input.graph().to_graph6()),
                ExportFormat::Dot => {
                    let text = match &input.kind {
                        InputKind::Datum(b) => {
                            export_dot(&b.graph(), Some(&bicayley_labels(b)))
                        }
                        InputKind::Graph(g) => export_dot(g, None),
                    };
                    print!("{text}");
                }
                ExportFormat::Json => print!("{}", RunReport::new(input.provenance).to_json()),
            }
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------
// Family construction
// ---------------------------------------------------------------------

/// Looks up a flag by name in the parsed optional values.
fn flag(flags: &[(&str, Option<usize>)], name: &str) -> Option<usize> {
    flags.iter().find(|(f, _)| *f == name).and_then(|(_, v)| *v)
}

/// Builds the named family member, enforcing that exactly the flags the
/// family needs were provided. Returns the datum and a canonical
/// source string for provenance.
pub fn build_family(
    name: &str,
    flags: &[(&str, Option<usize>)],
) -> Result<(BiCayley, String)> {
    let needed: &[&str] = match name {
        "gamma-abelian" => &["m", "n", "lambda"],
        "gamma-dihedral" => &["n", "lambda", "k"],
        "g-p" | "h-p" => &["p"],
        _ => &[],
    };
    for (f, v) in flags {
        if v.is_some() && !needed.contains(f) {
            return Err(Error::InvalidParameter(format!(
                "--{f} does not apply to family {name}"
            )));
        }
        if v.is_none() && needed.contains(f) {
            return Err(Error::InvalidParameter(format!(
                "family {name} requires --{f}"
            )));
        }
    }
    let get = |f: &str| flag(flags, f).expect("presence checked above");
    let (b, source) = match name {
        "gamma-abelian" => {
            let (m, n, lambda) = (get("m"), get("n"), get("lambda"));
            (
                families::gamma_abelian(m, n, lambda)?,
                format!("family gamma-abelian --m {m} --n {n} --lambda {lambda}"),
            )
        }
        "gamma-dihedral" => {
            let (n, lambda, k) = (get("n"), get("lambda"), get("k"));
            (
                families::gamma_dihedral(n, lambda, k)?,
                format!("family gamma-dihedral --n {n} --lambda {lambda} --k {k}"),
            )
        }
        "g-p" => {
            let p = get("p");
            (families::g_p(p)?, format!("family g-p --p {p}"))
        }
        "h-p" => {
            let p = get("p");
            (families::h_p(p)?, format!("family h-p --p {p}"))
        }
        "c28-example" => (families::example_c28()?, "family c28-example".into()),
        "order-54-example" => (families::example_54()?, "family order-54-example".into()),
        "petersen" => (families::petersen()?, "family petersen".into()),
        other => {
            if let Some((_, b)) = families::corpus().into_iter().find(|(n, _)| n == other) {
                (b, format!("family {other}"))
            } else {
                return Err(Error::InvalidParameter(format!(
                    "unknown family {other}; known names: gamma-abelian, gamma-dihedral, \
                     g-p, h-p, c28-example, order-54-example, petersen, and the corpus \
                     members (run with a wrong name to see this list): {}",
                    families::corpus()
                        .iter()
                        .map(|(n, _)| n.as_str())
                        .collect::<Vec<_>>()
                        .join(", ")
                )));
            }
        }
    };
    Ok((b, source))
}

// ---------------------------------------------------------------------
// Input plumbing
// ---------------------------------------------------------------------

pub struct Input {
    pub kind: InputKind,
    pub provenance: Provenance,
}

pub enum InputKind {
    Datum(BiCayley),
    Graph(Graph),
}

impl Input {
    fn graph(&self) -> Graph {
        match &self.kind {
            InputKind::Datum(b) => b.graph(),
            InputKind::Graph(g) => g.clone(),
        }
    }
}

fn source_label(path: &Option<PathBuf>) -> String {
    match path {
        Some(p) if p.as_os_str() != "-" => p.display().to_string(),
        _ => "stdin".to_string(),
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(std::fs::read_to_string(p)?),
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

/// Parses CLI input text: a JSON run report (as emitted by `family`),
/// a bare JSON bi-Cayley descriptor, or graph6 text (first non-empty
/// line). Empty input is a validation error.
pub fn parse_input(text: &str, source: String) -> Result<Input> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse(format!("no input on {source}")));
    }
    if trimmed.starts_with('{') {
        if let Ok(rr) = RunReport::from_json(trimmed) {
            return input_from_provenance(rr.provenance);
        }
        if let Ok(d) = serde_json::from_str::<BiCayleyDescriptor>(trimmed) {
            let b = BiCayley::from_descriptor(&d)?;
            let graph6 = b.graph().to_graph6();
            return Ok(Input {
                kind: InputKind::Datum(b),
                provenance: Provenance {
                    source,
                    descriptor: Some(d),
                    graph6,
                },
            });
        }
        return Err(Error::Parse(
            "JSON input is neither a run report nor a bi-Cayley descriptor".into(),
        ));
    }
    let line = trimmed
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .expect("trimmed input is non-empty");
    let g = Graph::from_graph6(line)?;
    Ok(Input {
        kind: InputKind::Graph(g),
        provenance: Provenance {
            source,
            descriptor: None,
            graph6: line.to_string(),
        },
    })
}

fn input_from_provenance(p: Provenance) -> Result<Input> {
    if let Some(d) = &p.descriptor {
        let b = BiCayley::from_descriptor(d)?;
        return Ok(Input {
            kind: InputKind::Datum(b),
            provenance: p,
        });
    }
    let g = Graph::from_graph6(&p.graph6)?;
    Ok(Input {
        kind: InputKind::Graph(g),
        provenance: p,
    })
}

// ---------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------

/// One search hit, emitted as a single JSON line.
#[derive(Debug, Serialize)]
pub struct SearchHit {
    pub host: String,
    pub order: usize,
    pub r: Vec<usize>,
    pub l: Vec<usize>,
    pub s: Vec<usize>,
    pub valency: usize,
    pub aut_order: String,
    pub aut_action: EdgeTransitivity,
    pub vertex_transitive: bool,
}

/// The host groups a search sweeps, with stable labels, ordered by
/// group order (then label).
pub fn search_hosts(kind: HostKind, max_order: usize) -> Result<Vec<(String, FiniteGroup)>> {
    let mut hosts = Vec::new();
    match kind {
        HostKind::Cyclic => {
            for n in 2..=max_order {
                hosts.push((format!("cyclic-{n}"), FiniteGroup::make_cyclic(n)?));
            }
        }
        HostKind::Dihedral => {
            for n in 3..=max_order / 2 {
                hosts.push((format!("dihedral-{n}"), FiniteGroup::make_dihedral(n)?));
            }
        }
        HostKind::Abelian => {
            for order in 2..=max_order {
                for factors in abelian_factorizations(order) {
                    let label = format!(
                        "abelian-{}",
                        factors
                            .iter()
                            .map(|d| d.to_string())
                            .collect::<Vec<_>>()
                            .join("x")
                    );
                    hosts.push((label, FiniteGroup::make_abelian(&factors)?));
                }
            }
        }
    }
    Ok(hosts)
}

/// All abelian groups of the given order up to isomorphism, each as a
/// descending list of prime-power cyclic factor orders (elementary
/// divisor form grouped by prime), deterministic order.
pub fn abelian_factorizations(order: usize) -> Vec<Vec<usize>> {
    assert!(order >= 1);
    // Factorise.
    let mut rest = order;
    let mut primes: Vec<(usize, u32)> = Vec::new();
    let mut d = 2;
    while d * d <= rest {
        if rest % d == 0 {
            let mut e = 0;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            primes.push((d, e));
        }
        d += 1;
    }
    if rest > 1 {
        primes.push((rest, 1));
    }
    // Per prime p^e: one factor multiset per partition of e.
    let mut result: Vec<Vec<usize>> = vec![Vec::new()];
    for (p, e) in primes {
        let parts = partitions(e);
        let mut next = Vec::new();
        for base in &result {
            for part in &parts {
                let mut factors = base.clone();
                for &x in part {
                    factors.push(p.pow(x));
                }
                next.push(factors);
            }
        }
        result = next;
    }
    for f in &mut result {
        f.sort_unstable_by(|a, b| b.cmp(a));
    }
    result.sort();
    result
}

/// Partitions of `e` as non-increasing sequences, lexicographically
/// descending (so `[e]` first).
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        let mut x = rest.min(max);
        while x >= 1 {
            cur.push(x);
            rec(rest - x, x, cur, out);
            cur.pop();
            x -= 1;
        }
    }
    let mut out = Vec::new();
    rec(e, e, &mut Vec::new(), &mut out);
    out
}

fn matches_predicate(predicate: Predicate, hit: &SearchHit) -> bool {
    use EdgeTransitivity::*;
    match predicate {
        Predicate::Any => true,
        Predicate::EdgeTransitive => hit.aut_action != NotEdgeTransitive,
        Predicate::ArcTransitive => hit.aut_action == ArcTransitive,
        Predicate::HalfArcTransitive => hit.aut_action == HalfArcTransitive,
        Predicate::Semisymmetric => hit.aut_action == Semisymmetric,
        Predicate::VertexTransitive => hit.vertex_transitive,
        Predicate::NotEdgeTransitive => hit.aut_action == NotEdgeTransitive,
    }
}

/// Classifies one enumerated datum into a search hit.
pub fn search_hit(label: &str, b: &BiCayley) -> SearchHit {
    let graph = b.graph();
    let aut = graph.automorphism_group();
    let analysis = crate::classify::analyze_action(&graph, &aut);
    SearchHit {
        host: label.to_string(),
        order: b.group().order(),
        r: b.r().to_vec(),
        l: b.l().to_vec(),
        s: b.s().to_vec(),
        valency: b.valency(),
        aut_order: aut.order().to_string(),
        aut_action: crate::classify::edge_transitivity_type(&graph, &aut),
        vertex_transitive: analysis.vertex_transitive,
    }
}

fn run_search(
    kind: HostKind,
    max_n: usize,
    max_valency: usize,
    predicate: Predicate,
) -> Result<()> {
    if max_n > 64 {
        return Err(Error::BoundExceeded(format!(
            "search hosts are limited to group order 64, got --max-n {max_n}"
        )));
    }
    let mut totals = EnumerationStats::default();
    let mut hit_count = 0u64;
    for (label, group) in search_hosts(kind, max_n)? {
        let group = Arc::new(group);
        let mut data: Vec<BiCayley> = Vec::new();
        let stats = enumerate_triples(
            &group,
            EnumerateOptions {
                max_valency,
                connected_only: true,
            },
            |b| {
                data.push(b.clone());
                Ok(())
            },
        )?;
        totals.examined += stats.examined;
        totals.visited += stats.visited;
        // Classification is the expensive part; do it in parallel and
        // emit in enumeration order so output stays deterministic.
        let lines: Vec<Option<String>> = data
            .par_iter()
            .map(|b| {
                let hit = search_hit(&label, b);
                if matches_predicate(predicate, &hit) {
                    Some(serde_json::to_string(&hit).expect("hit serialises"))
                } else {
                    None
                }
            })
            .collect();
        for line in lines.into_iter().flatten() {
            hit_count += 1;
            println!("{line}");
        }
    }
    eprintln!(
        "searched {} candidate triples ({} canonical), {} hit(s)",
        totals.examined, totals.visited, hit_count
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_flag_validation() {
        let none: &[(&str, Option<usize>)] = &[
            ("m", None),
            ("n", None),
            ("lambda", None),
            ("k", None),
            ("p", None),
        ];
        assert!(build_family("petersen", none).is_ok());
        assert!(build_family("c28-example", none).is_ok());
        assert!(build_family("order-54-example", none).is_ok());
        assert!(build_family("heawood", none).is_ok());
        assert!(build_family("no-such-family", none).is_err());

        // Missing and superfluous flags are rejected.
        assert!(build_family("gamma-dihedral", none).is_err());
        let extra = [("m", None), ("n", None), ("lambda", None), ("k", None), ("p", Some(3))];
        assert!(build_family("petersen", &extra).is_err());

        let good = [
            ("m", None),
            ("n", Some(21)),
            ("lambda", Some(2)),
            ("k", Some(3)),
            ("p", None),
        ];
        let (b, source) = build_family("gamma-dihedral", &good).unwrap();
        assert_eq!(b.vertex_count(), 84);
        assert_eq!(source, "family gamma-dihedral --n 21 --lambda 2 --k 3");
    }

    #[test]
    fn input_parsing_accepts_all_three_forms() {
        // Run report (as family emits).
        let (b, source) = build_family(
            "petersen",
            &[("m", None), ("n", None), ("lambda", None), ("k", None), ("p", None)],
        )
        .unwrap();
        let rr = RunReport::new(Provenance {
            source,
            descriptor: Some(b.descriptor()),
            graph6: b.graph().to_graph6(),
        });
        let input = parse_input(&rr.to_json(), "stdin".into()).unwrap();
        assert!(matches!(input.kind, InputKind::Datum(_)));
        assert_eq!(input.provenance.source, "family petersen");

        // Bare descriptor.
        let d_json = serde_json::to_string(&b.descriptor()).unwrap();
        let input = parse_input(&d_json, "file.json".into()).unwrap();
        assert!(matches!(input.kind, InputKind::Datum(_)));
        assert_eq!(input.graph().vertex_count(), 10);

        // graph6.
        let input = parse_input("Cl\n", "stdin".into()).unwrap();
        assert!(matches!(input.kind, InputKind::Graph(_)));
        assert_eq!(input.graph().vertex_count(), 4);

        // Empty and malformed inputs fail cleanly.
        assert!(matches!(
            parse_input("  \n ", "stdin".into()),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_input("{\"not\": \"a report\"}", "stdin".into()),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn abelian_group_lists() {
        assert_eq!(abelian_factorizations(1), vec![Vec::<usize>::new()]);
        assert_eq!(abelian_factorizations(6), vec![vec![3, 2]]);
        assert_eq!(abelian_factorizations(4), vec![vec![2, 2], vec![4]]);
        assert_eq!(
            abelian_factorizations(8),
            vec![vec![2, 2, 2], vec![4, 2], vec![8]]
        );
        assert_eq!(
            abelian_factorizations(12),
            vec![vec![3, 2, 2], vec![4, 3]]
        );
        // Counts for p^4: partitions of 4.
        assert_eq!(abelian_factorizations(16).len(), 5);

        // One entry per isomorphism type: C6 appears as its elementary
        // divisor form 3x2, not twice.
        let hosts = search_hosts(HostKind::Abelian, 8).unwrap();
        let labels: Vec<&str> = hosts.iter().map(|(l, _)| l.as_str()).collect();
        assert_eq!(
            labels,
            vec![
                "abelian-2",
                "abelian-3",
                "abelian-2x2",
                "abelian-4",
                "abelian-5",
                "abelian-3x2",
                "abelian-7",
                "abelian-2x2x2",
                "abelian-4x2",
                "abelian-8"
            ]
        );
        for (_, g) in &hosts {
            assert!(g.order() <= 8);
        }

        let dihedral = search_hosts(HostKind::Dihedral, 12).unwrap();
        assert_eq!(dihedral.len(), 4); // D_3 .. D_6
        assert_eq!(dihedral.last().unwrap().1.order(), 12);
    }

    #[test]
    fn search_hits_classify_on_the_fly() {
        let b = families::petersen().unwrap();
        let hit = search_hit("cyclic-5", &b);
        assert_eq!(hit.aut_order, "120");
        assert_eq!(hit.aut_action, EdgeTransitivity::ArcTransitive);
        assert!(hit.vertex_transitive);
        assert!(matches_predicate(Predicate::ArcTransitive, &hit));
        assert!(matches_predicate(Predicate::EdgeTransitive, &hit));
        assert!(!matches_predicate(Predicate::Semisymmetric, &hit));

        let line = serde_json::to_string(&hit).unwrap();
        assert!(line.contains("\"aut_action\":\"arc-transitive\""));
    }
}
