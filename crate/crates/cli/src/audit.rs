//! Audit suites: each runs a family of checkers at fixed desk-scale
//! parameters and reports per-check pass/fail plus an aggregate verdict.

use anyhow::{bail, Result};
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use ytiling::facts::{check_fact_f0, check_fact_f11_f1};
use ytiling::fractional::linearization_agreement;
use ytiling::hypergraph::{
    binomial, conjecture_bound, gen_clique_plus_isolated, gen_cover_construction, Pattern,
};
use ytiling::solver::{max_pattern_free_edges, max_tiling_exact, DEFAULT_NODE_BUDGET};
use ytiling::tiling::intersection_size;

pub struct SuiteResult {
    pub name: &'static str,
    pub pass: bool,
    pub payload: Value,
    pub csv_rows: Vec<String>,
}

fn row(rows: &mut Vec<String>, suite: &str, check: &str, computed: &str, expected: &str, pass: bool) {
    rows.push(format!("{suite},{check},{computed},{expected},{pass}"));
}

pub fn run_f0() -> Result<SuiteResult> {
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    let mut pass = true;
    for (a, b) in [(2usize, 2usize), (2, 3), (3, 3)] {
        let out = check_fact_f0(a, b, 1 << 26).map_err(|e| anyhow::anyhow!(e.to_string()))?;
        pass &= out.matches;
        row(
            &mut rows,
            "f0",
            &format!("a{a}b{b}"),
            &out.max_edges.to_string(),
            &out.expected.to_string(),
            out.matches,
        );
        checks.push(json!({
            "fact": "f0",
            "params": {"a": a, "b": b},
            "computed": out.max_edges,
            "expected": out.expected,
            "witnesses": [out.witness],
            "match": out.matches,
            "nodes": out.stats.nodes,
            "optimal": out.stats.optimal,
        }));
    }
    Ok(SuiteResult { name: "f0", pass, payload: json!({"checks": checks, "pass": pass}), csv_rows: rows })
}

pub fn run_f11f1() -> Result<SuiteResult> {
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    let mut pass = true;
    for (k, n, t) in [(2usize, 3usize, 1usize), (3, 2, 1), (2, 4, 3)] {
        let out = check_fact_f11_f1(k, n, t).map_err(|e| anyhow::anyhow!(e.to_string()))?;
        pass &= out.matches;
        row(
            &mut rows,
            "f11f1",
            &format!("k{k}n{n}t{t}"),
            &out.max_edges.to_string(),
            &out.expected.to_string(),
            out.matches,
        );
        checks.push(json!({
            "fact": "f11f1",
            "params": {"k": k, "n": n, "t": t},
            "computed": {
                "max_edges": out.max_edges,
                "extremal_count": out.extremal_count,
                "extremal_all_canonical": out.extremal_all_canonical,
                "minus_unique": out.minus_unique,
                "minus_count": out.minus_count,
            },
            "expected": out.expected,
            "witnesses": [],
            "match": out.matches,
        }));
    }
    Ok(SuiteResult {
        name: "f11f1",
        pass,
        payload: json!({"checks": checks, "pass": pass}),
        csv_rows: rows,
    })
}

pub fn run_frfu() -> Result<SuiteResult> {
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    let mut pass = true;
    for (n, expected) in [(5usize, 2usize), (6, 4), (7, 7)] {
        let out = max_pattern_free_edges(n, Pattern::y32(), DEFAULT_NODE_BUDGET);
        let witness_ok = (0..out.witness.edge_count()).all(|i| {
            (i + 1..out.witness.edge_count())
                .all(|j| intersection_size(out.witness.edge(i), out.witness.edge(j)) <= 1)
        });
        // ex(n, Y) <= C(n-1, k-1) for large n per the classical bound; at
        // desk scale it already holds and is reported as a comparison
        let frfu_cap = binomial(n - 1, 2).to_usize().unwrap_or(usize::MAX);
        let ok = out.max_edges == expected && out.stats.optimal && witness_ok;
        pass &= ok;
        row(&mut rows, "frfu", &format!("n{n}"), &out.max_edges.to_string(), &expected.to_string(), ok);
        checks.push(json!({
            "fact": "frfu",
            "params": {"n": n},
            "computed": out.max_edges,
            "expected": expected,
            "witnesses": [out.witness.edges()],
            "within_binomial_bound": out.max_edges <= frfu_cap,
            "binomial_bound": frfu_cap,
            "witness_pairwise_ok": witness_ok,
            "match": ok,
        }));
    }
    Ok(SuiteResult {
        name: "frfu",
        pass,
        payload: json!({"checks": checks, "pass": pass}),
        csv_rows: rows,
    })
}

pub fn run_constructions() -> Result<SuiteResult> {
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    let mut pass = true;
    for s in 1..=3usize {
        let clique = gen_clique_plus_isolated(4 * s + 3, s, 3, 2)?;
        let (t, stats) = max_tiling_exact(&clique, Pattern::y32(), DEFAULT_NODE_BUDGET);
        let ok = t.size() == s && stats.optimal;
        pass &= ok;
        row(&mut rows, "constructions", &format!("clique_s{s}"), &t.size().to_string(), &s.to_string(), ok);
        checks.push(json!({
            "construction": "clique",
            "s": s, "n": 4 * s + 3,
            "tiling_size": t.size(), "optimal": stats.optimal, "match": ok,
        }));

        let cover = gen_cover_construction(4 * s + 4, s, 3)?;
        let (t, stats) = max_tiling_exact(&cover, Pattern::y32(), DEFAULT_NODE_BUDGET);
        let ok = t.size() == s && stats.optimal;
        pass &= ok;
        row(&mut rows, "constructions", &format!("cover_s{s}"), &t.size().to_string(), &s.to_string(), ok);
        checks.push(json!({
            "construction": "cover",
            "s": s, "n": 4 * s + 4,
            "tiling_size": t.size(), "optimal": stats.optimal, "match": ok,
        }));
    }
    // the bound evaluator's two terms coincide with the generated edge counts
    for (n, s) in [(16usize, 3usize), (20, 4)] {
        let bound = conjecture_bound(n, s, 3, 2)?;
        let clique = gen_clique_plus_isolated(n, s, 3, 2)?;
        let cover = gen_cover_construction(n, s, 3)?;
        let ok = bound.clique_term == clique.edge_count().into()
            && bound.cover_term == cover.edge_count().into();
        pass &= ok;
        row(&mut rows, "constructions", &format!("bound_n{n}_s{s}"), &bound.value.to_string(), "generator edge counts", ok);
        checks.push(json!({
            "construction": "conjecture_bound",
            "n": n, "s": s,
            "value": bound.value.to_string(),
            "clique_term": bound.clique_term.to_string(),
            "cover_term": bound.cover_term.to_string(),
            "asymptotic_slack_omitted": bound.asymptotic_slack_omitted,
            "match": ok,
        }));
    }
    Ok(SuiteResult {
        name: "constructions",
        pass,
        payload: json!({"checks": checks, "pass": pass}),
        csv_rows: rows,
    })
}

pub fn run_linearization(seed: Option<u64>) -> Result<SuiteResult> {
    let Some(seed) = seed else {
        bail!("--seed is required for the linearization suite");
    };
    let samples = 100_000;
    let (agree, disagree) = linearization_agreement(samples, seed);
    let pass = disagree == 0 && agree == samples;
    let rows = vec![format!("linearization,samples,{agree},{samples},{pass}")];
    Ok(SuiteResult {
        name: "linearization",
        pass,
        payload: json!({
            "samples": samples,
            "agreements": agree,
            "disagreements": disagree,
            "pass": pass,
        }),
        csv_rows: rows,
    })
}

pub fn run_suites(names: &[String], seed: Option<u64>) -> Result<(Vec<SuiteResult>, bool)> {
    let mut results = Vec::new();
    for name in names {
        let r = match name.as_str() {
            "f0" => run_f0()?,
            "f11f1" => run_f11f1()?,
            "frfu" => run_frfu()?,
            "constructions" => run_constructions()?,
            "linearization" => run_linearization(seed)?,
            other => bail!("unknown suite {other:?}; expected f0, f11f1, frfu, constructions, linearization, or all"),
        };
        results.push(r);
    }
    let pass = results.iter().all(|r| r.pass);
    Ok((results, pass))
}
