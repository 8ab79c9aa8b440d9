//! `ytiling`: generate instances, run the tiling solvers and the fractional
//! LP, and execute the audit suites.

mod audit;
mod report;

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use ytiling::fractional::{lp_max_weight, verify_fractional, FractionalJson};
use ytiling::hypergraph::{
    blow_up, gen_clique_plus_isolated, gen_cover_construction, gen_kpartite_extremal, gen_random,
    Hypergraph, Pattern,
};
use ytiling::io;
use ytiling::solver::{
    max_mixed_tiling_exact, max_tiling_exact, SearchStats, SolveResult, DEFAULT_NODE_BUDGET,
};
use ytiling::tiling::{greedy_tiling, local_search_improve, verify_mixed_tiling, verify_tiling};

use report::{digest_of, emit, RunReport};

#[derive(Parser)]
#[command(name = "ytiling", version, about = "Y_{k,b}-tiling solvers, LP relaxation, and audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FileFormat {
    Hg,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMode {
    Exact,
    Greedy,
    Local,
    Mixed,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file from one of the named families.
    Gen {
        /// complete | clique | cover | kpartite | random | blowup
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Pattern overlap or blow-up factor, depending on the family.
        #[arg(long, default_value_t = 2)]
        b: usize,
        #[arg(long)]
        s: Option<usize>,
        /// Small part size for the k-partite family.
        #[arg(long)]
        t: Option<usize>,
        /// Remove the lexicographically first edge (k-partite family).
        #[arg(long, default_value_t = false)]
        minus: bool,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Base instance for the blowup family.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Output format; defaults to the extension of --out, then .hg.
        #[arg(long, value_enum)]
        format: Option<FileFormat>,
    },
    /// Solve a tiling problem on an instance file.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: SolveMode,
        /// Pattern as y:K,B.
        #[arg(long, default_value = "y:3,2")]
        pattern: String,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Swap radius for local search mode.
        #[arg(long, default_value_t = 1)]
        radius: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FileFormat>,
    },
    /// Maximize the fractional hom(Y)-tiling weight by exact LP.
    Lp {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run checker suites; exits nonzero if any assertion fails.
    Audit {
        /// f0 | f11f1 | frfu | constructions | linearization | all
        #[arg(long)]
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FileFormat>,
    },
}

fn parse_pattern(text: &str) -> Result<Pattern> {
    let rest = text
        .strip_prefix("y:")
        .or_else(|| text.strip_prefix("Y:"))
        .with_context(|| format!("pattern {text:?} must look like y:3,2"))?;
    let (k, b) = rest
        .split_once(',')
        .with_context(|| format!("pattern {text:?} must look like y:3,2"))?;
    let pattern = Pattern::new(k.trim().parse()?, b.trim().parse()?)
        .map_err(|e| anyhow::anyhow!(e.to_string()))?;
    Ok(pattern)
}

struct GenParams {
    family: String,
    n: Option<usize>,
    k: usize,
    b: usize,
    s: Option<usize>,
    t: Option<usize>,
    minus: bool,
    p: Option<f64>,
    seed: Option<u64>,
    input: Option<PathBuf>,
    out: PathBuf,
    format: Option<FileFormat>,
}

fn run_gen(params: GenParams) -> Result<RunReport> {
    let GenParams { family, n, k, b, s, t, minus, p, seed, input, out, format } = params;
    let family = family.as_str();
    let input = input.as_ref();
    let out = &out;
    let need_n = || n.context("--n is required for this family");
    let h: Hypergraph = match family {
        "complete" => Hypergraph::complete(need_n()?, k).map_err(|e| anyhow::anyhow!(e.to_string()))?,
        "clique" => {
            let s = s.context("--s is required for the clique family")?;
            gen_clique_plus_isolated(need_n()?, s, k, b).map_err(|e| anyhow::anyhow!(e.to_string()))?
        }
        "cover" => {
            let s = s.context("--s is required for the cover family")?;
            gen_cover_construction(need_n()?, s, k).map_err(|e| anyhow::anyhow!(e.to_string()))?
        }
        "kpartite" => {
            let t = t.context("--t is required for the kpartite family")?;
            gen_kpartite_extremal(k, need_n()?, t, minus).map_err(|e| anyhow::anyhow!(e.to_string()))?
        }
        "random" => {
            let p = p.context("--p is required for the random family")?;
            let seed = seed.context("--seed is required for the random family")?;
            gen_random(need_n()?, k, p, seed).map_err(|e| anyhow::anyhow!(e.to_string()))?
        }
        "blowup" => {
            let path = input.context("--input is required for the blowup family")?;
            let base = io::read_path(path)?;
            blow_up(&base, b).map_err(|e| anyhow::anyhow!(e.to_string()))?.graph
        }
        other => bail!("unknown family {other:?}"),
    };

    let format = format.unwrap_or_else(|| match out.extension().and_then(|e| e.to_str()) {
        Some("json") => FileFormat::Json,
        _ => FileFormat::Hg,
    });
    let text = match format {
        FileFormat::Hg => io::write_hg(&h),
        FileFormat::Json => io::write_json(&h),
        FileFormat::Csv => bail!("csv is not an instance format; use hg or json"),
    };
    std::fs::write(out, &text)?;

    Ok(RunReport {
        command: format!("gen --family {family}"),
        seed,
        instance: Some(digest_of(&h)),
        payload: json!({
            "path": out.display().to_string(),
            "family": family,
            "n": h.n(),
            "k": h.k(),
            "edges": h.edge_count(),
        }),
    })
}

fn run_solve(
    input: &PathBuf,
    mode: SolveMode,
    pattern: Pattern,
    budget: u64,
    radius: usize,
) -> Result<(RunReport, String)> {
    let h = io::read_path(input)?;
    let (result, verified) = match mode {
        SolveMode::Exact => {
            let (t, stats) = max_tiling_exact(&h, pattern, budget);
            let ok = verify_tiling(&h, pattern, &t).is_ok();
            (SolveResult::from_tiling(&t, stats), ok)
        }
        SolveMode::Greedy => {
            let t = greedy_tiling(&h, pattern);
            let ok = verify_tiling(&h, pattern, &t).is_ok();
            (SolveResult::from_tiling(&t, SearchStats { nodes: 0, optimal: false }), ok)
        }
        SolveMode::Local => {
            let t = local_search_improve(&h, pattern, &greedy_tiling(&h, pattern), radius);
            let ok = verify_tiling(&h, pattern, &t).is_ok();
            (SolveResult::from_tiling(&t, SearchStats { nodes: 0, optimal: false }), ok)
        }
        SolveMode::Mixed => {
            let (t, stats) = max_mixed_tiling_exact(&h, pattern, budget);
            let ok = verify_mixed_tiling(&h, pattern, &t).is_ok();
            (SolveResult::from_mixed(&t, h.k(), stats), ok)
        }
    };
    let mode_name = match mode {
        SolveMode::Exact => "exact",
        SolveMode::Greedy => "greedy",
        SolveMode::Local => "local",
        SolveMode::Mixed => "mixed",
    };
    let csv = format!(
        "mode,size,coverage,optimal,nodes,verified\n{mode_name},{},{},{},{},{verified}\n",
        result.size, result.coverage, result.optimal, result.nodes
    );
    let report = RunReport {
        command: format!("solve --mode {mode_name}"),
        seed: None,
        instance: Some(digest_of(&h)),
        payload: json!({
            "result": result,
            "verified": verified,
        }),
    };
    Ok((report, csv))
}

fn run_lp(input: &PathBuf, budget: u64) -> Result<RunReport> {
    let h = io::read_path(input)?;
    let (f, optimum, stats) = lp_max_weight(&h).map_err(|e| anyhow::anyhow!(e.to_string()))?;
    let verified = verify_fractional(&h, &f).is_ok();
    // lp >= 4 * exact tiling size whenever the exact solver certifies
    let (tiling, solve_stats) = max_tiling_exact(&h, Pattern::y32(), budget);
    let lp_vs_exact = if solve_stats.optimal {
        let four_x = num_rational::BigRational::from(num_bigint::BigInt::from(
            4 * tiling.size() as i64,
        ));
        Some(json!({
            "exact_size": tiling.size(),
            "lp_ge_4_exact": optimum >= four_x,
        }))
    } else {
        None
    };
    Ok(RunReport {
        command: "lp".into(),
        seed: None,
        instance: Some(digest_of(&h)),
        payload: json!({
            "optimum": optimum.to_string(),
            "h": FractionalJson::from(&f),
            "verified": verified,
            "lp_stats": {"variables": stats.variables, "constraints": stats.constraints, "pivots": stats.pivots},
            "exact_comparison": lp_vs_exact,
        }),
    })
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    };
    eprintln!("wall_ms: {}", started.elapsed().as_millis());
    std::process::exit(code);
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Gen { family, n, k, b, s, t, minus, p, seed, input, out, format } => {
            let report = run_gen(GenParams {
                family, n, k, b, s, t, minus, p, seed, input, out, format,
            })?;
            emit(&report, None, None)?;
            Ok(0)
        }
        Command::Solve { input, mode, pattern, budget, radius, out, format } => {
            let pattern = parse_pattern(&pattern)?;
            let (report, csv) = run_solve(&input, mode, pattern, budget, radius)?;
            let csv = matches!(format, Some(FileFormat::Csv)).then_some(csv);
            emit(&report, out.as_deref(), csv)?;
            Ok(0)
        }
        Command::Lp { input, budget, out } => {
            let report = run_lp(&input, budget)?;
            emit(&report, out.as_deref(), None)?;
            Ok(0)
        }
        Command::Audit { suite, seed, out, format } => {
            let names: Vec<String> = if suite == "all" {
                ["f0", "f11f1", "frfu", "constructions", "linearization"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect()
            } else {
                suite.split(',').map(|s| s.trim().to_string()).collect()
            };
            let (results, pass) = audit::run_suites(&names, seed)?;
            let csv = if matches!(format, Some(FileFormat::Csv)) {
                let mut table = String::from("suite,check,computed,expected,pass\n");
                for r in &results {
                    for row in &r.csv_rows {
                        table.push_str(row);
                        table.push('\n');
                    }
                }
                Some(table)
            } else {
                None
            };
            let payload = json!({
                "suites": results
                    .iter()
                    .map(|r| json!({"name": r.name, "pass": r.pass, "detail": r.payload}))
                    .collect::<Vec<_>>(),
                "pass": pass,
            });
            let report = RunReport {
                command: format!("audit --suite {suite}"),
                seed,
                instance: None,
                payload,
            };
            emit(&report, out.as_deref(), csv)?;
            Ok(if pass { 0 } else { 1 })
        }
    }
}
