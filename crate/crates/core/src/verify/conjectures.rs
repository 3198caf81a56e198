use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::cache::{Cache, CacheRecord};
use super::corpus::{Corpus, CorpusEntry};
use super::report::{ClaimKind, Outcome, Report};
use super::VerifyOptions;
use crate::canon::canonical_graph6;
use crate::distinguishing::dprime;
use crate::error::{Error, Result};
use crate::graph::{Graph, Target};
use crate::orientations::{od_minus, od_plus};

/// 1: `OD'^- >= floor(D'/2)`. 2: `D' = 2` implies `OD'^- = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    One,
    Two,
    Both,
}

impl Which {
    pub fn as_str(self) -> &'static str {
        match self {
            Which::One => "conj1",
            Which::Two => "conj2",
            Which::Both => "conj1+conj2",
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "conj1" => Ok(Which::One),
            "2" | "conj2" => Ok(Which::Two),
            "both" => Ok(Which::Both),
            _ => Err(Error::InvalidArgument(format!("expected 1, 2 or both, got {s:?}"))),
        }
    }
}

/// Indices of one graph, read from `cache` when present and appended to it
/// otherwise.
pub fn indices(g: &Graph, opts: &VerifyOptions, cache: Option<&Cache>) -> Result<CacheRecord> {
    let key = canonical_graph6(g);
    if let Some(hit) = cache.and_then(|c| c.get(&key)) {
        if hit.od_plus.is_some() || !opts.with_od_plus {
            return Ok(hit);
        }
    }
    let record = compute(g, key, opts)?;
    if let Some(c) = cache {
        c.put(record.clone())?;
    }
    Ok(record)
}

fn compute(g: &Graph, key: String, opts: &VerifyOptions) -> Result<CacheRecord> {
    let d = dprime(Target::Graph(g))?.value;
    let lo = od_minus(g, &opts.limits)?.value;
    let hi = if opts.with_od_plus {
        Some(od_plus(g, &opts.limits)?.value)
    } else {
        None
    };
    Ok(CacheRecord::new(key, d, lo, hi))
}

/// Evaluates the conjectures on every eligible entry. Would-be
/// counterexamples are recomputed from scratch and reported with an optimal
/// orientation and its distinguishing colouring.
pub fn scan_conjectures(corpus: &Corpus, which: Which, opts: &VerifyOptions, cache: Option<&Cache>) -> Report {
    let start = Instant::now();
    let outcomes: Vec<(&CorpusEntry, Outcome)> = corpus
        .entries()
        .par_iter()
        .map(|e| (e, scan_one(&e.graph, which, opts, cache)))
        .collect();
    Report::collect(which.as_str(), ClaimKind::Conjecture, corpus, outcomes, start.elapsed())
}

fn scan_one(g: &Graph, which: Which, opts: &VerifyOptions, cache: Option<&Cache>) -> Outcome {
    if !g.is_connected() {
        return Outcome::Skipped("not connected".into());
    }
    if g.is_k2() {
        return Outcome::Skipped("K2".into());
    }
    if g.m() > opts.limits.edge_cap {
        return Outcome::Skipped(format!("{} edges exceed the edge cap of {}", g.m(), opts.limits.edge_cap));
    }
    let r = match indices(g, opts, cache) {
        Ok(r) => r,
        Err(e @ (Error::EdgeCapExceeded { .. } | Error::GroupTooLarge { .. })) => {
            return Outcome::Skipped(e.to_string())
        }
        Err(e) => {
            return Outcome::Violation {
                expected: json!("no error"),
                actual: json!({ "error": e.to_string() }),
            }
        }
    };
    if which == Which::Two && r.dprime != 2 {
        return Outcome::Skipped(format!("D' = {}, not 2", r.dprime));
    }
    let mut failed: Vec<Value> = Vec::new();
    if which != Which::Two && r.od_minus < r.dprime / 2 {
        failed.push(json!({ "conjecture": 1, "od_minus_at_least": r.dprime / 2 }));
    }
    if which != Which::One && r.dprime == 2 && r.od_minus != 1 {
        failed.push(json!({ "conjecture": 2, "od_minus": 1 }));
    }
    if failed.is_empty() {
        return Outcome::Passed;
    }
    let witness = match od_minus(g, &opts.limits) {
        Ok(w) => json!({
            "orientation": w.orientation,
            "colouring": w.colouring.to_json(Target::Orientation(&w.orientation)),
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    Outcome::Violation {
        expected: Value::Array(failed),
        actual: json!({ "dprime": r.dprime, "od_minus": r.od_minus, "witness": witness }),
    }
}

/// Recomputes up to `sample` cached records, spread evenly over the keys in
/// sorted order, and reports every disagreement.
pub fn audit_cache(cache: &Cache, sample: usize, opts: &VerifyOptions) -> Result<Report> {
    let start = Instant::now();
    let records = cache.records();
    let step = records.len().div_ceil(sample.max(1)).max(1);
    let chosen: Vec<CacheRecord> = records.into_iter().step_by(step).take(sample).collect();
    let graphs = chosen
        .iter()
        .map(|r| crate::format::parse_graph6(&r.g6))
        .collect::<Result<Vec<_>>>()?;
    let corpus = Corpus::from_graphs(format!("{} (audit sample)", cache.path().display()), &graphs)?;
    let outcomes: Vec<(&CorpusEntry, Outcome)> = corpus
        .entries()
        .par_iter()
        .zip(chosen.par_iter())
        .map(|(e, cached)| {
            let o = VerifyOptions {
                with_od_plus: cached.od_plus.is_some(),
                ..*opts
            };
            let outcome = match compute(&e.graph, cached.g6.clone(), &o) {
                Ok(fresh) if fresh.same_values(cached) => Outcome::Passed,
                Ok(fresh) => Outcome::Violation {
                    expected: json!({ "dprime": fresh.dprime, "od_minus": fresh.od_minus, "od_plus": fresh.od_plus }),
                    actual: json!({ "dprime": cached.dprime, "od_minus": cached.od_minus, "od_plus": cached.od_plus }),
                },
                Err(e) => Outcome::Skipped(e.to_string()),
            };
            (e, outcome)
        })
        .collect();
    Ok(Report::collect("cache-audit", ClaimKind::Audit, &corpus, outcomes, start.elapsed()))
}
