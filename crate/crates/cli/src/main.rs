//! `turan`: closed-form values, extremal constructions, containment checks
//! and brute-force runs, with a JSON report on stdout.
//!
//! Exit codes: 0 when every assertion of the command holds, 1 when one
//! fails (including an exhausted oracle budget), 2 on bad input.

mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use report::Report;
use turan_core::formulas::{self, ex_path, ex_star, ex_t3_partial};
use turan_core::io::{from_edge_list, from_graph6, to_edge_list, to_graph6_string};
use turan_core::oracle::{Budget, BUDGET_ENV};
use turan_core::suite::{run_suite, RangeInN, SuiteConfig};
use turan_core::{contains_tree, ex_bruteforce_parallel, extremal_graph, verify_witness, ConstructionOptions, SimpleGraph, Spider, TreeFamily};

#[derive(Parser)]
#[command(name = "turan", version, about = "Turán numbers of spiders with maximum degree n-4")]
struct Cli {
    /// Suppress progress messages on stderr (the JSON report is always printed).
    #[arg(short, long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form ex(p; F) with the branch that produced it.
    Formula {
        /// t3, tpp, tppp, path or star (for star, `n` is the leaf count).
        family: String,
        n: u64,
        p: u64,
        /// Allow T3 with 10 <= n < 15 on the residues where the value is known.
        #[arg(long)]
        partial: bool,
    },
    /// Build an extremal graph and write it out.
    Construct {
        /// t3, tpp or tppp.
        family: String,
        n: u64,
        p: u64,
        out: PathBuf,
        /// On a tie, prefer the connected construction.
        #[arg(long)]
        connected: bool,
        #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
        format: GraphFormat,
    },
    /// Does a graph (graph6 or edge list) contain a tree?
    Check {
        graph: PathBuf,
        /// Family spec: t3:15, tpp:15, tppp:15, path:7, star:9, file:<edge list>.
        tree: String,
        /// Fail (exit 1) unless the answer matches.
        #[arg(long, value_enum)]
        expect: Option<Expectation>,
    },
    /// Brute-force ex(p; T) for small p.
    Oracle {
        /// Family spec, as for `check`.
        tree: String,
        /// A single p or a range such as 4..8.
        #[arg(long)]
        p: String,
        #[command(flatten)]
        threads: Threads,
    },
    /// Run the invariant suite over a grid of (n, p).
    Verify {
        /// Range of n such as 15..20 (omit to run only the oracle sweep).
        #[arg(long)]
        n: Option<String>,
        /// Range of p, linear in n: n..4n, 2n-9, n+1..3n. With --oracle and
        /// no --n, an absolute range such as 4..8.
        #[arg(long, default_value = "n..4n")]
        p: String,
        /// Comma-separated subset of t3,tpp,tppp.
        #[arg(long, default_value = "t3,tpp,tppp")]
        families: String,
        /// Skip building constructions.
        #[arg(long)]
        no_constructions: bool,
        /// Cross-check the oracle against the path and star values.
        #[arg(long)]
        oracle: bool,
        /// p range for the oracle sweep when --n is also given.
        #[arg(long, default_value = "4..8")]
        oracle_p: String,
        #[command(flatten)]
        threads: Threads,
    },
    /// Formula values over a range of p.
    Table {
        family: String,
        n: u64,
        p_min: u64,
        p_max: u64,
        /// CSV instead of JSON.
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Args)]
struct Threads {
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Graph6,
    EdgeList,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expectation {
    Free,
    Contains,
}

/// Bad input, as opposed to a failed assertion.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl ToString) -> Result<T> {
    Err(UsageError(msg.to_string()).into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let log = |msg: &str| {
        if !cli.quiet {
            eprintln!("{msg}");
        }
    };
    let (name, inputs) = describe(&cli.command);
    let outcome = match &cli.command {
        Command::Table { csv: true, .. } => match table_csv(&cli.command) {
            Ok(text) => {
                let _ = write!(std::io::stdout(), "{text}");
                return ExitCode::SUCCESS;
            }
            Err(e) => Err(e),
        },
        cmd => run(cmd, &log),
    };
    let report = Report::new(name, inputs, started);
    let (report, code) = match outcome {
        Ok((outputs, passed)) => (report.with_outputs(outputs, passed), if passed { 0 } else { 1 }),
        Err(e) => {
            let code = if e.is::<UsageError>() { 2 } else { 1 };
            log(&format!("error: {e:#}"));
            (report.failed(format!("{e:#}")), code)
        }
    };
    // A closed pipe (e.g. `| head`) is not worth a panic.
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    ExitCode::from(code)
}

fn describe(cmd: &Command) -> (&'static str, Value) {
    match cmd {
        Command::Formula { family, n, p, partial } => ("formula", json!({ "family": family, "n": n, "p": p, "partial": partial })),
        Command::Construct { family, n, p, out, connected, format } => (
            "construct",
            json!({ "family": family, "n": n, "p": p, "out": out, "connected": connected,
                    "format": match format { GraphFormat::Graph6 => "graph6", GraphFormat::EdgeList => "edge-list" } }),
        ),
        Command::Check { graph, tree, expect } => (
            "check",
            json!({ "graph": graph, "tree": tree,
                    "expect": expect.map(|e| if e == Expectation::Free { "free" } else { "contains" }) }),
        ),
        Command::Oracle { tree, p, threads } => ("oracle", json!({ "tree": tree, "p": p, "threads": threads.threads })),
        Command::Verify { n, p, families, no_constructions, oracle, oracle_p, threads } => (
            "verify",
            json!({ "n": n, "p": p, "families": families, "constructions": !no_constructions,
                    "oracle": oracle, "oracle_p": oracle_p, "threads": threads.threads }),
        ),
        Command::Table { family, n, p_min, p_max, csv } => {
            ("table", json!({ "family": family, "n": n, "p_min": p_min, "p_max": p_max, "csv": csv }))
        }
    }
}

fn run(cmd: &Command, log: &dyn Fn(&str)) -> Result<(Value, bool)> {
    match cmd {
        Command::Formula { family, n, p, partial } => cmd_formula(family, *n, *p, *partial),
        Command::Construct { family, n, p, out, connected, format } => cmd_construct(family, *n, *p, out, *connected, *format, log),
        Command::Check { graph, tree, expect } => cmd_check(graph, tree, *expect),
        Command::Oracle { tree, p, threads } => cmd_oracle(tree, p, threads.threads, log),
        Command::Verify { n, p, families, no_constructions, oracle, oracle_p, threads } => {
            cmd_verify(n.as_deref(), p, families, !no_constructions, *oracle, oracle_p, threads.threads, log)
        }
        Command::Table { family, n, p_min, p_max, .. } => {
            let rows = table_rows(family, *n, *p_min, *p_max)?;
            Ok((json!({ "rows": rows, "count": rows.len() }), true))
        }
    }
}

fn spider(tag: &str) -> Result<Spider> {
    match Spider::from_tag(tag) {
        Some(s) => Ok(s),
        None => usage(format!("unknown family {tag:?}; expected t3, tpp or tppp")),
    }
}

fn formula_value(family: &str, n: u64, p: u64, partial: bool) -> Result<formulas::ExtremalValue> {
    let value = match family {
        "path" => ex_path(p, n),
        "star" => ex_star(p, n),
        "t3" if partial => ex_t3_partial(p, n),
        tag => formulas::ex_spider(spider(tag)?, p, n),
    };
    value.or_else(usage)
}

fn cmd_formula(family: &str, n: u64, p: u64, partial: bool) -> Result<(Value, bool)> {
    let v = formula_value(family, n, p, partial)?;
    let decomposition = formulas::decompose(p, n).ok();
    Ok((json!({ "value": v.value, "branch": v.branch, "decomposition": decomposition }), true))
}

fn write_graph(g: &SimpleGraph, out: &Path, format: GraphFormat) -> Result<()> {
    let text = match format {
        GraphFormat::Graph6 => to_graph6_string(g) + "\n",
        GraphFormat::EdgeList => to_edge_list(g),
    };
    std::fs::write(out, text).with_context(|| format!("writing {}", out.display()))
}

fn cmd_construct(family: &str, n: u64, p: u64, out: &Path, connected: bool, format: GraphFormat, log: &dyn Fn(&str)) -> Result<(Value, bool)> {
    let family = spider(family)?;
    let opts = ConstructionOptions { prefer_connected: connected };
    let (g, recipe) = extremal_graph(family, p, n, opts).or_else(usage)?;
    let value = formulas::ex_spider(family, p, n).or_else(usage)?;
    write_graph(&g, out, format)?;
    log(&format!("wrote {} ({} vertices, {} edges)", out.display(), g.order(), g.edge_count()));
    let free = contains_tree(&g, &family.tree(n as usize))?.is_none();
    let equals_formula = g.edge_count() == value.value;
    let degrees_match = g.degree_sequence() == recipe.expected_degrees;
    Ok((
        json!({
            "path": out,
            "vertices": g.order(),
            "edges": g.edge_count(),
            "formula": value.value,
            "branch": value.branch,
            "equals_formula": equals_formula,
            "degrees_match": degrees_match,
            "tree_free": free,
            "base": recipe.base,
            "prepended_cliques": recipe.prepended_cliques,
            "graph6": to_graph6_string(&g),
        }),
        equals_formula && degrees_match && free,
    ))
}

/// Reads graph6 (by extension, or by content when the extension says
/// nothing) or a whitespace-separated edge list.
fn read_graph(path: &Path) -> Result<SimpleGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("reading {}: {e}", path.display())))?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let as_graph6 = || from_graph6(text.trim().as_bytes());
    let parsed = match ext {
        "g6" | "graph6" => as_graph6().map_err(|e| e.to_string()),
        "txt" | "edges" | "el" | "edgelist" => from_edge_list(&text).map_err(|e| e.to_string()),
        _ => as_graph6().or_else(|_| from_edge_list(&text)).map_err(|e| e.to_string()),
    };
    parsed.or_else(|e| usage(format!("parsing {}: {e}", path.display())))
}

fn parse_tree(spec: &str) -> Result<TreeFamily> {
    let f = TreeFamily::parse_spec(spec).or_else(usage)?;
    f.realize().or_else(usage)?;
    Ok(f)
}

fn cmd_check(graph: &Path, tree: &str, expect: Option<Expectation>) -> Result<(Value, bool)> {
    let g = read_graph(graph)?;
    let f = parse_tree(tree)?;
    let witness = contains_tree(&g, &f)?;
    let sound = witness.as_ref().is_none_or(|w| verify_witness(&g, &f.realize().expect("validated"), w));
    let contains = witness.is_some();
    let met = match expect {
        Some(Expectation::Free) => !contains,
        Some(Expectation::Contains) => contains,
        None => true,
    };
    Ok((
        json!({
            "vertices": g.order(),
            "edges": g.edge_count(),
            "tree": f.to_string(),
            "contains": contains,
            "witness": witness.as_ref().map(|w| w.map()),
            "witness_verified": sound,
        }),
        sound && met,
    ))
}

fn parse_p_range(text: &str) -> Result<(usize, usize)> {
    let range: RangeInN = text.parse().or_else(|e: String| usage(e))?;
    if range.lo.a != 0 || range.hi.a != 0 || range.lo.b < 1 || range.hi.b < range.lo.b {
        return usage(format!("expected an absolute range such as 4..8, got {text:?}"));
    }
    Ok((range.lo.b as usize, range.hi.b as usize))
}

fn cmd_oracle(tree: &str, p: &str, threads: usize, log: &dyn Fn(&str)) -> Result<(Value, bool)> {
    let f = parse_tree(tree)?;
    let (lo, hi) = parse_p_range(p)?;
    let budget = Budget::from_env();
    if std::env::var_os(BUDGET_ENV).is_some() {
        log(&format!("node budget {} from {BUDGET_ENV}", budget.max_nodes));
    }
    let classical = |p: usize| match &f {
        TreeFamily::Path(n) => ex_path(p as u64, *n as u64).ok().map(|v| v.value),
        TreeFamily::Star(s) => ex_star(p as u64, *s as u64).ok().map(|v| v.value),
        _ => None,
    };
    let mut runs = Vec::new();
    let mut passed = true;
    for p in lo..=hi {
        let r = ex_bruteforce_parallel(p, &f, budget, threads).or_else(|e| match e {
            turan_core::OracleError::TooLarge { .. } => usage(e),
            other => Err(other.into()),
        })?;
        let free = contains_tree(&r.witness, &f)?.is_none();
        let formula = classical(p);
        let ok = r.exact && free && r.witness.edge_count() == r.value && formula.is_none_or(|v| v == r.value);
        log(&format!("p = {p}: {} ({} nodes)", r.value, r.nodes_explored));
        passed &= ok;
        runs.push(json!({
            "p": p,
            "value": r.value,
            "exact": r.exact,
            "formula": formula,
            "witness": to_graph6_string(&r.witness),
            "witness_free": free,
            "nodes_explored": r.nodes_explored,
            "elapsed_ms": r.elapsed.as_millis() as u64,
        }));
    }
    Ok((json!({ "tree": f.to_string(), "runs": runs, "budget_nodes": budget.max_nodes }), passed))
}

fn parse_int_range(text: &str) -> Result<(u64, u64)> {
    let parsed = match text.split_once("..") {
        Some((a, b)) => a.trim().parse().ok().zip(b.trim_start_matches('=').trim().parse().ok()),
        None => text.trim().parse().ok().map(|v| (v, v)),
    };
    match parsed {
        Some((a, b)) if a <= b => Ok((a, b)),
        _ => usage(format!("expected a range such as 15..20, got {text:?}")),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    n: Option<&str>,
    p: &str,
    families: &str,
    constructions: bool,
    oracle: bool,
    oracle_p: &str,
    threads: usize,
    log: &dyn Fn(&str),
) -> Result<(Value, bool)> {
    let mut cfg = SuiteConfig {
        constructions,
        threads,
        budget: Budget::from_env(),
        ..SuiteConfig::default()
    };
    match n {
        Some(n) => {
            (cfg.n_min, cfg.n_max) = parse_int_range(n)?;
            cfg.p = p.parse().or_else(|e: String| usage(e))?;
            cfg.families = families.split(',').map(|t| spider(t.trim())).collect::<Result<_>>()?;
            for &family in &cfg.families {
                if cfg.n_max < family.min_n() {
                    log(&format!("note: {} needs n ≥ {}; skipped", family.tag(), family.min_n()));
                }
            }
            if oracle {
                cfg.oracle = Some(parse_p_range(oracle_p)?);
            }
        }
        None if oracle => {
            cfg.families.clear();
            cfg.oracle = Some(parse_p_range(p)?);
        }
        None => return usage("verify needs --n, --oracle, or both"),
    }
    let report = run_suite(&cfg)?;
    log(&format!("{} points, {} failures", report.points, report.failures.len()));
    Ok((serde_json::to_value(&report)?, report.passed))
}

#[derive(serde::Serialize)]
struct TableRow {
    p: u64,
    k: u64,
    r: u64,
    value: u64,
    branch: &'static str,
}

fn table_rows(family: &str, n: u64, p_min: u64, p_max: u64) -> Result<Vec<TableRow>> {
    if p_min > p_max {
        return usage(format!("empty range {p_min}..{p_max}"));
    }
    (p_min..=p_max)
        .map(|p| {
            let v = formula_value(family, n, p, false)?;
            let d = formulas::decompose(p, n).or_else(usage)?;
            Ok(TableRow { p, k: d.k, r: d.r, value: v.value, branch: v.branch })
        })
        .collect()
}

fn table_csv(cmd: &Command) -> Result<String> {
    let Command::Table { family, n, p_min, p_max, .. } = cmd else {
        bail!("not a table command");
    };
    let mut out = String::from("p,k,r,value,branch\n");
    for row in table_rows(family, *n, *p_min, *p_max)? {
        out += &format!("{},{},{},{},{}\n", row.p, row.k, row.r, row.value, row.branch);
    }
    Ok(out)
}
