//! The invariant suite behind `turan verify`.
//!
//! Every `(family, n, p)` point on the requested grid is checked for:
//! recurrence in `p`, the lower/upper sandwich, `T'' = T'''`, `T3` dominating
//! the generic max form, and a construction with exactly the formula's edge
//! count, the predicted degree multiset, and no copy of the tree. Optionally
//! the oracle is run against the path and star formulas at small `p`.
//!
//! Points are evaluated in parallel but reported in grid order, so the
//! report does not depend on the thread count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{extremal_graph, ConstructionOptions};
use crate::containment::contains_tree;
use crate::error::OracleError;
use crate::formulas::{self, ex_value, generic_max_form, Spider};
use crate::graph::choose2;
use crate::oracle::{verify_formula, Budget, FormulaCheck};
use crate::trees::TreeFamily;

/// `a * n + b`, as written on the command line: `n`, `4n`, `2n-9`, `n+3`, `8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearInN {
    pub a: i64,
    pub b: i64,
}

impl LinearInN {
    pub fn eval(self, n: u64) -> i64 {
        self.a * n as i64 + self.b
    }
}

impl FromStr for LinearInN {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || format!("cannot read {s:?} as an expression like 2n-9");
        let Some(at) = s.find('n') else {
            return s.parse().map(|b| Self { a: 0, b }).map_err(|_| bad());
        };
        let a = match &s[..at] {
            "" => 1,
            "-" => -1,
            coeff => coeff.parse().map_err(|_| bad())?,
        };
        let b = match &s[at + 1..] {
            "" => 0,
            rest if rest.starts_with('+') => rest[1..].parse().map_err(|_| bad())?,
            rest if rest.starts_with('-') => rest.parse().map_err(|_| bad())?,
            _ => return Err(bad()),
        };
        Ok(Self { a, b })
    }
}

impl fmt::Display for LinearInN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (0, b) => write!(f, "{b}"),
            (a, b) => {
                match a {
                    1 => write!(f, "n")?,
                    -1 => write!(f, "-n")?,
                    a => write!(f, "{a}n")?,
                }
                match b {
                    0 => Ok(()),
                    b if b > 0 => write!(f, "+{b}"),
                    b => write!(f, "{b}"),
                }
            }
        }
    }
}

/// Inclusive range `lo..hi` of linear expressions in `n`; a single
/// expression denotes a one-point range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeInN {
    pub lo: LinearInN,
    pub hi: LinearInN,
}

impl RangeInN {
    pub fn values(self, n: u64) -> impl Iterator<Item = u64> {
        let lo = self.lo.eval(n).max(1);
        let hi = self.hi.eval(n);
        (lo..=hi).map(|p| p as u64)
    }
}

impl FromStr for RangeInN {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once("..") {
            Some((lo, hi)) => Ok(Self {
                lo: lo.parse()?,
                hi: hi.trim_start_matches('=').parse()?,
            }),
            None => {
                let point = s.parse()?;
                Ok(Self { lo: point, hi: point })
            }
        }
    }
}

impl fmt::Display for RangeInN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub n_min: u64,
    pub n_max: u64,
    pub p: RangeInN,
    pub families: Vec<Spider>,
    /// Build constructions and check edges, degrees and freeness.
    pub constructions: bool,
    /// Oracle sweep over this absolute `p` range (paths and `K_{1,2}`,
    /// `K_{1,3}`).
    pub oracle: Option<(usize, usize)>,
    pub budget: Budget,
    pub threads: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            n_min: 15,
            n_max: 20,
            p: "n..4n".parse().expect("valid range"),
            families: Spider::ALL.to_vec(),
            constructions: true,
            oracle: None,
            budget: Budget::default(),
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Recurrence,
    Sandwich,
    Identity,
    Dominance,
    ConstructionEdges,
    ConstructionDegrees,
    ConstructionFree,
    ConnectedConstruction,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: Check,
    pub family: String,
    pub p: u64,
    pub n: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckCount {
    pub check: Check,
    pub passed: u64,
    pub failed: u64,
}

/// One evaluated `(family, n, p)` point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointValue {
    pub family: Spider,
    pub n: u64,
    pub p: u64,
    pub value: u64,
    pub branch: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub points: u64,
    pub counts: Vec<CheckCount>,
    pub failures: Vec<Failure>,
    /// Formula values at every point, in grid order.
    pub values: Vec<PointValue>,
    pub oracle: Vec<FormulaCheck>,
}

#[derive(Default)]
struct PointOutcome {
    value: Option<PointValue>,
    results: Vec<(Check, Option<String>)>,
}

impl PointOutcome {
    fn record(&mut self, check: Check, ok: bool, detail: impl FnOnce() -> String) {
        self.results.push((check, (!ok).then(detail)));
    }
}

fn evaluate_point(family: Spider, n: u64, p: u64, constructions: bool) -> PointOutcome {
    let mut out = PointOutcome::default();
    let value = match formulas::ex_spider(family, p, n) {
        Ok(v) => v,
        Err(e) => {
            out.record(Check::Sandwich, false, || e.to_string());
            return out;
        }
    };
    out.value = Some(PointValue {
        family,
        n,
        p,
        value: value.value,
        branch: value.branch,
    });

    if p >= 2 * n - 6 {
        let prev = ex_value(family, p - (n - 1), n).map(|v| v.value);
        let ok = prev.as_ref().is_ok_and(|&prev| prev + choose2(n - 1) == value.value);
        out.record(Check::Recurrence, ok, || format!("ex({p}) = {}, ex({}) = {prev:?}", value.value, p - (n - 1)));
    }

    let lower = formulas::lower_bound(p, n);
    let upper = formulas::upper_bound(p, n);
    let ok = matches!((&lower, &upper), (Ok(lo), Ok(hi)) if *lo <= value.value && value.value <= *hi);
    out.record(Check::Sandwich, ok, || format!("{lower:?} <= {} <= {upper:?}", value.value));

    match family {
        Spider::TDoublePrime | Spider::TTriplePrime => {
            let tpp = formulas::ex_tpp(p, n).map(|v| v.value);
            let tppp = formulas::ex_tppp(p, n).map(|v| v.value);
            out.record(Check::Identity, tpp.is_ok() && tpp == tppp, || format!("T'' {tpp:?} vs T''' {tppp:?}"));
        }
        Spider::T3 => {
            let generic = generic_max_form(p, n).map(|v| v.value);
            out.record(Check::Dominance, generic.as_ref().is_ok_and(|&g| g <= value.value), || {
                format!("T3 {} below max form {generic:?}", value.value)
            });
        }
    }

    if constructions {
        check_construction(&mut out, family, n, p, value.value, ConstructionOptions::default(), false);
        let connected = ConstructionOptions { prefer_connected: true };
        let tie_base = extremal_graph(family, p, n, connected).map(|(_, r)| r.base);
        let default_base = extremal_graph(family, p, n, ConstructionOptions::default()).map(|(_, r)| r.base);
        if tie_base.is_ok() && tie_base != default_base {
            check_construction(&mut out, family, n, p, value.value, connected, true);
        }
    }
    out
}

fn check_construction(out: &mut PointOutcome, family: Spider, n: u64, p: u64, value: u64, opts: ConstructionOptions, tie: bool) {
    let (g, recipe) = match extremal_graph(family, p, n, opts) {
        Ok(built) => built,
        Err(e) => {
            out.record(Check::ConstructionEdges, false, || e.to_string());
            return;
        }
    };
    let edges_ok = g.order() as u64 == p && g.edge_count() == value && recipe.expected_edges == value;
    out.record(Check::ConstructionEdges, edges_ok, || {
        format!("{:?}: {} vertices, {} edges, formula {value}", recipe.base, g.order(), g.edge_count())
    });
    out.record(Check::ConstructionDegrees, g.degree_sequence() == recipe.expected_degrees, || {
        format!("{:?}: degree multiset differs from prediction", recipe.base)
    });
    let free = contains_tree(&g, &family.tree(n as usize)).map(|w| w.is_none());
    let check = if tie { Check::ConnectedConstruction } else { Check::ConstructionFree };
    out.record(check, free == Ok(true), || format!("{:?}: contains the tree ({free:?})", recipe.base));
}

/// Runs the suite. Only `(family, n)` pairs inside the family's domain are
/// visited; `p` values below `n` are skipped.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport, OracleError> {
    let mut grid = Vec::new();
    for &family in &cfg.families {
        for n in cfg.n_min.max(family.min_n())..=cfg.n_max {
            grid.extend(cfg.p.values(n).filter(|&p| p >= n).map(|p| (family, n, p)));
        }
    }
    let evaluate = |&(family, n, p): &(Spider, u64, u64)| evaluate_point(family, n, p, cfg.constructions);
    let outcomes: Vec<PointOutcome> = if cfg.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .expect("thread pool");
        pool.install(|| grid.par_iter().map(evaluate).collect())
    } else {
        grid.iter().map(evaluate).collect()
    };

    let mut counts: std::collections::BTreeMap<Check, (u64, u64)> = Default::default();
    let mut failures = Vec::new();
    let mut values = Vec::new();
    for (&(family, n, p), outcome) in grid.iter().zip(outcomes) {
        values.extend(outcome.value);
        for (check, problem) in outcome.results {
            let entry = counts.entry(check).or_default();
            match problem {
                None => entry.0 += 1,
                Some(detail) => {
                    entry.1 += 1;
                    failures.push(Failure {
                        check,
                        family: family.tree(n as usize).to_string(),
                        p,
                        n,
                        detail,
                    });
                }
            }
        }
    }

    let mut oracle = Vec::new();
    if let Some((lo, hi)) = cfg.oracle {
        let mut sweeps: Vec<(TreeFamily, Vec<usize>)> = Vec::new();
        for n in 4..=hi {
            sweeps.push((TreeFamily::Path(n), (lo.max(n)..=hi).collect()));
        }
        for s in [2, 3] {
            sweeps.push((TreeFamily::Star(s), (lo.max(s + 1)..=hi).collect()));
        }
        for (tree, ps) in sweeps {
            if ps.is_empty() {
                continue;
            }
            let formula = |p: usize| match &tree {
                TreeFamily::Path(n) => formulas::ex_path(p as u64, *n as u64).map_or(u64::MAX, |v| v.value),
                TreeFamily::Star(s) => formulas::ex_star(p as u64, *s as u64).map_or(u64::MAX, |v| v.value),
                _ => unreachable!("only paths and stars are swept"),
            };
            let check = verify_formula(ps, &tree, formula, cfg.budget, cfg.threads)?;
            let entry = counts.entry(Check::Oracle).or_default();
            for row in &check.rows {
                if check.mismatches.contains(&row.p) {
                    entry.1 += 1;
                    failures.push(Failure {
                        check: Check::Oracle,
                        family: check.tree.clone(),
                        p: row.p as u64,
                        n: tree.order() as u64,
                        detail: format!("oracle {} vs formula {}", row.oracle, row.formula),
                    });
                } else {
                    entry.0 += 1;
                }
            }
            oracle.push(check);
        }
    }

    Ok(SuiteReport {
        passed: failures.is_empty(),
        points: grid.len() as u64,
        counts: counts
            .into_iter()
            .map(|(check, (passed, failed))| CheckCount { check, passed, failed })
            .collect(),
        failures,
        values,
        oracle,
    })
}
