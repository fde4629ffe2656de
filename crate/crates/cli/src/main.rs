//! `biramsey`: verify, search and reproduce m-bipartite Ramsey numbers of
//! `(K_{2,2}, K_{3,3})`.
//!
//! Exit codes: 0 = claim verified / witness found, 1 = claim refuted /
//! search exhausted, 2 = usage or input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use biramsey_core::cnf::{encode_cnf_with, CnfOptions};
use biramsey_core::{
    brm_scan, enumerate_good_colorings, fixture, good_coloring_exists, verify_good_coloring,
    zarankiewicz_with, BipartiteHost, BrmVerdict, Error, GoodColoring, Rejection, RowSymmetry,
    SearchConfig, SearchStats, Verdict, WitnessFile, ZarankiewiczOptions,
};

#[derive(Parser)]
#[command(
    name = "biramsey",
    version,
    about = "Bipartite Ramsey numbers BR_m(K_{2,2}, K_{3,3})"
)]
struct Cli {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Drop timing fields so output is diffable.
    #[arg(long, global = true)]
    stable: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a witness file is a good coloring.
    Verify { file: PathBuf },
    /// Search for a good coloring of K_{m,n}.
    Search(SearchArgs),
    /// Compute z((m,n), K_{t,t}) exactly.
    Zarankiewicz {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        /// Write the extremal graph (as red_rows) to this file.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        no_scale_guard: bool,
    },
    /// Compute BR_m by scanning n upward.
    Brm {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        /// Start the scan here (every smaller n is taken to have a witness).
        #[arg(long, default_value_t = 1)]
        start: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Work with the built-in published colorings.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
    /// Write the good-coloring instance as DIMACS CNF.
    EncodeCnf {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Add clauses ordering the columns lexicographically.
        #[arg(long)]
        lex_columns: bool,
        #[arg(long)]
        no_scale_guard: bool,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    /// Dump a fixture in the witness JSON format.
    Emit {
        name: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// Write the witness here when one is found.
    #[arg(long)]
    find_witness: Option<PathBuf>,
    /// Count every column-normal good coloring instead of stopping at one.
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    no_lemma1: bool,
    #[arg(long)]
    no_edge_window: bool,
    #[arg(long, value_enum, default_value_t = SymmetryArg::RootRun)]
    row_symmetry: SymmetryArg,
    #[arg(long)]
    no_scale_guard: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SymmetryArg {
    None,
    RootRun,
    DoubleLex,
}

impl From<SymmetryArg> for RowSymmetry {
    fn from(s: SymmetryArg) -> Self {
        match s {
            SymmetryArg::None => RowSymmetry::None,
            SymmetryArg::RootRun => RowSymmetry::RootRun,
            SymmetryArg::DoubleLex => RowSymmetry::DoubleLex,
        }
    }
}

/// What a command produced: text for humans, the JSON envelope, exit code.
struct Report {
    lines: Vec<String>,
    json: Map<String, Value>,
    code: u8,
}

impl Report {
    fn new(command: &str, host: Value, verdict: &str, code: u8) -> Self {
        let mut json = Map::new();
        json.insert("command".into(), json!(command));
        json.insert("host".into(), host);
        json.insert("verdict".into(), json!(verdict));
        Report {
            lines: Vec::new(),
            json,
            code,
        }
    }

    fn line(mut self, s: impl Into<String>) -> Self {
        self.lines.push(s.into());
        self
    }

    fn with(mut self, key: &str, v: Value) -> Self {
        self.json.insert(key.into(), v);
        self
    }
}

fn host_json(m: usize, n: Option<usize>) -> Value {
    json!({ "m": m, "n": n })
}

fn witness_json(gc: &GoodColoring) -> Value {
    serde_json::to_value(WitnessFile::from_coloring(gc)).expect("witness serializes")
}

fn stats_json(stats: &SearchStats, stable: bool) -> Value {
    let mut v = serde_json::to_value(stats).expect("stats serialize");
    if stable {
        v.as_object_mut().expect("object").remove("elapsed_ms");
    }
    v
}

fn rejection_json(r: &Rejection) -> Value {
    match r {
        Rejection::RedK22 { rows, cols } => {
            json!({ "kind": "red_k22", "rows": rows, "cols": cols, "text": r.to_string() })
        }
        Rejection::BlueK33 { rows, cols } => {
            json!({ "kind": "blue_k33", "rows": rows, "cols": cols, "text": r.to_string() })
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn stats_line(stats: &SearchStats, stable: bool) -> String {
    let p = &stats.prunes;
    let mut s = format!(
        "nodes={} prunes: red_k22={} blue_k33={} lemma1={} edge_window={} symmetry={}",
        stats.nodes, p.red_k22, p.blue_k33, p.lemma1, p.edge_window, p.symmetry
    );
    if let Some(z) = stats.blue_bound {
        s.push_str(&format!(" z_blue={z}"));
    }
    if !stable {
        s.push_str(&format!(" elapsed_ms={}", stats.elapsed_ms));
    }
    s
}

fn run(cli: &Cli) -> Result<Report, String> {
    let stable = cli.stable;
    match &cli.command {
        Command::Verify { file } => {
            let text = fs::read_to_string(file)
                .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            let parsed =
                WitnessFile::parse(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let red = parsed.to_graph().map_err(|e| e.to_string())?;
            let host = host_json(red.m(), Some(red.n()));
            match verify_good_coloring(red) {
                Ok(gc) => Ok(Report::new("verify", host, "good", 0)
                    .line("good coloring: red K_{2,2}-free, blue K_{3,3}-free")
                    .with("witness", witness_json(&gc))),
                Err(Error::Rejected(r)) => Ok(Report::new("verify", host, "rejected", 1)
                    .line(format!("rejected: {r}"))
                    .with("stats", json!({ "certificate": rejection_json(&r) }))),
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Search(a) => {
            let host = BipartiteHost::new(a.m, a.n).map_err(|e| e.to_string())?;
            let cfg = SearchConfig {
                use_lemma1_prune: !a.no_lemma1,
                use_edge_window_prune: !a.no_edge_window,
                parallel_width: a.threads,
                find_all: a.all,
                row_symmetry: a.row_symmetry.into(),
                max_rows: if a.no_scale_guard {
                    None
                } else {
                    SearchConfig::default().max_rows
                },
                ..SearchConfig::default()
            };
            let hj = host_json(a.m, Some(a.n));
            if a.all {
                let (sols, stats) =
                    enumerate_good_colorings(host, &cfg).map_err(|e| e.to_string())?;
                let code = if sols.is_empty() { 1 } else { 0 };
                return Ok(Report::new("search", hj, "counted", code)
                    .line(format!(
                        "{} column-normal good colorings of {host}",
                        sols.len()
                    ))
                    .line(stats_line(&stats, stable))
                    .with("value", json!(sols.len()))
                    .with("stats", stats_json(&stats, stable)));
            }
            let out = good_coloring_exists(host, &cfg).map_err(|e| e.to_string())?;
            match &out.verdict {
                Verdict::Witness(gc) => {
                    let mut r = Report::new("search", hj, "witness", 0)
                        .line(format!("witness: good coloring of {host} found"));
                    for row in gc.red().row_strings() {
                        r = r.line(format!("  {row}"));
                    }
                    if let Some(path) = &a.find_witness {
                        write_file(path, &WitnessFile::from_coloring(gc).to_json())?;
                        r = r.line(format!("witness written to {}", path.display()));
                    }
                    Ok(r.line(stats_line(&out.stats, stable))
                        .with("witness", witness_json(gc))
                        .with("stats", stats_json(&out.stats, stable)))
                }
                Verdict::Exhausted => Ok(Report::new("search", hj, "exhausted", 1)
                    .line(format!("exhausted: no good coloring of {host}"))
                    .line(stats_line(&out.stats, stable))
                    .with("stats", stats_json(&out.stats, stable))),
            }
        }
        Command::Zarankiewicz {
            m,
            n,
            t,
            witness,
            threads,
            no_scale_guard,
        } => {
            let host = BipartiteHost::new(*m, *n).map_err(|e| e.to_string())?;
            let opts = ZarankiewiczOptions {
                scale_guard: !no_scale_guard,
                threads: *threads,
                ..ZarankiewiczOptions::default()
            };
            let r = zarankiewicz_with(host, *t, &opts).map_err(|e| e.to_string())?;
            let mut rep = Report::new("zarankiewicz", host_json(*m, Some(*n)), "value", 0)
                .line(format!("z(({m},{n}), K_{{{t},{t}}}) = {}", r.value));
            let extremal = json!({ "m": m, "n": n, "t": t, "rows": r.witness.row_strings() });
            if let Some(path) = witness {
                let text = serde_json::to_string_pretty(&extremal).expect("serializes") + "\n";
                write_file(path, &text)?;
                rep = rep.line(format!("extremal graph written to {}", path.display()));
            }
            Ok(rep
                .with("value", json!(r.value))
                .with("witness", extremal)
                .with("stats", json!({ "nodes": r.nodes })))
        }
        Command::Brm {
            m,
            n_max,
            start,
            threads,
        } => {
            let cfg = SearchConfig {
                parallel_width: *threads,
                ..SearchConfig::default()
            };
            let quiet = cli.json;
            let res = brm_scan(*m, *n_max, *start, &cfg, |step| {
                if !quiet {
                    let v = if step.outcome.is_exhausted() {
                        "exhausted"
                    } else {
                        "witness"
                    };
                    eprintln!(
                        "n={}: {v} ({})",
                        step.n,
                        stats_line(&step.outcome.stats, stable)
                    );
                }
            })
            .map_err(|e| e.to_string())?;
            let hj = host_json(*m, None);
            let steps: Vec<Value> = res
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "n": s.n,
                        "verdict": if s.outcome.is_exhausted() { "exhausted" } else { "witness" },
                        "stats": stats_json(&s.outcome.stats, stable),
                    })
                })
                .collect();
            Ok(match res.verdict {
                BrmVerdict::Value(v) => {
                    let mut r = Report::new("brm", hj, "value", 0)
                        .line(format!("BR_{m} = {v}"))
                        .with("value", json!(v))
                        .with("stats", json!({ "steps": steps }));
                    if let Some(w) = res.witness_below() {
                        r = r.with("witness", witness_json(w));
                    }
                    r
                }
                BrmVerdict::DoesNotExist => {
                    let cert = res.certificate.as_ref().expect("certificate present");
                    Report::new("brm", hj, "does_not_exist", 0)
                        .line(format!(
                            "BR_{m} does not exist (good coloring of K_{{{m},{n_max}}} verified; the pattern extends to every n)"
                        ))
                        .with("witness", witness_json(cert))
                }
                BrmVerdict::Unknown { n_max } => Report::new("brm", hj, "unknown", 1)
                    .line(format!(
                        "BR_{m} > {n_max}: every n up to {n_max} has a good coloring"
                    ))
                    .with("stats", json!({ "steps": steps })),
            })
        }
        Command::Fixtures {
            action: FixtureAction::Emit { name, output },
        } => {
            let f = fixture(name).map_err(|e| e.to_string())?;
            let gc = verify_good_coloring(f.graph()).map_err(|e| e.to_string())?;
            let text = WitnessFile::from_coloring(&gc).to_json();
            let mut r = Report::new("fixtures", host_json(f.m, Some(f.n)), "good", 0)
                .with("witness", witness_json(&gc));
            match output {
                Some(path) => {
                    write_file(path, &text)?;
                    r = r.line(format!("{name} written to {}", path.display()));
                }
                None => r = r.line(text.trim_end().to_string()),
            }
            Ok(r)
        }
        Command::EncodeCnf {
            m,
            n,
            output,
            lex_columns,
            no_scale_guard,
        } => {
            let host = BipartiteHost::new(*m, *n).map_err(|e| e.to_string())?;
            let opts = CnfOptions {
                lex_columns: *lex_columns,
                max_clauses: if *no_scale_guard {
                    None
                } else {
                    CnfOptions::default().max_clauses
                },
            };
            let inst = encode_cnf_with(host, &opts).map_err(|e| e.to_string())?;
            write_file(output, &inst.to_dimacs())?;
            Ok(
                Report::new("encode-cnf", host_json(*m, Some(*n)), "written", 0)
                    .line(format!(
                        "{}: {} variables, {} clauses ({} red, {} blue, {} column-order)",
                        output.display(),
                        inst.num_vars,
                        inst.clauses.len(),
                        inst.red_blockers,
                        inst.blue_blockers,
                        inst.lex_clauses
                    ))
                    .with(
                        "stats",
                        json!({
                            "variables": inst.num_vars,
                            "clauses": inst.clauses.len(),
                            "red_blockers": inst.red_blockers,
                            "blue_blockers": inst.blue_blockers,
                            "lex_clauses": inst.lex_clauses,
                        }),
                    ),
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", Value::Object(report.json));
            } else {
                for l in &report.lines {
                    println!("{l}");
                }
            }
            ExitCode::from(report.code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
