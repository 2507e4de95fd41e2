use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use drgt::graph::{construct, load_graph, verify_graph, Family, GraphCheckOptions, VerifyOptions};
use drgt::search::{search_with_progress, SearchConfig, ToleranceMode, DEFAULT_CAP};
use drgt::spectrum::spectrum_numeric;
use drgt::tightness::{analyze, analyze_with, parametrize};
use drgt::{catalog, IntersectionArray, Scalar};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "drgt", version, about = "Tightness of distance-regular graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectrum, fundamental bound and tightness data of an intersection array.
    Analyze {
        /// `b_0,…,b_{d−1};c_1,…,c_d`
        #[arg(long, value_parser = parse_array)]
        array: IntersectionArray,
        /// Use floating-point eigenvalues only.
        #[arg(long)]
        numeric: bool,
    },
    /// Intersection array of a tight graph from a cosine sequence and ε.
    Parametrize {
        /// Comma separated `σ_0,…,σ_d` as integers or `p/q`.
        #[arg(long, value_parser = parse_scalar, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        sigma: Vec<Scalar>,
        #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
        epsilon: Scalar,
    },
    /// Combinatorial checks on a concrete graph.
    VerifyGraph(VerifyArgs),
    /// The known tight graphs.
    Catalog {
        /// Recompute every stored column; exit 1 on any mismatch.
        #[arg(long)]
        validate: bool,
        /// Also write the catalog as JSON to this file.
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
        #[arg(long)]
        constructible: bool,
    },
    /// Enumerate tight intersection arrays; one JSON object per line.
    Search {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        max_k: u64,
        #[arg(long)]
        antipodal: bool,
        #[arg(long)]
        feasible: bool,
        #[arg(long)]
        numeric: bool,
        /// Visit every `1 ≤ b_i, c_i ≤ k` without monotonicity pruning.
        #[arg(long)]
        no_prune: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = true, id = "source")]
struct Source {
    /// Built-in family such as `johnson:8,4`, `halved-cube:8`, `hamming:3,3`, `icosahedron`.
    #[arg(long, value_parser = parse_family)]
    construct: Option<Family>,
    /// Edge list: a header `n m` followed by one `u v` line per edge. Read
    /// when given alone; with `--construct` the built graph is written here.
    #[arg(long, value_name = "FILE")]
    edge_file: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    homogeneous: bool,
    #[arg(long)]
    formulas: bool,
    /// Check only this many evenly spaced edges.
    #[arg(long)]
    sample: Option<usize>,
    /// Verify graphs above the size guard.
    #[arg(long)]
    force: bool,
    /// Also compare all `p^h_ij` at a few base vertices.
    #[arg(long)]
    strict: bool,
}

fn parse_array(s: &str) -> Result<IntersectionArray, String> {
    s.parse().map_err(|e: drgt::Error| e.to_string())
}

fn parse_scalar(s: &str) -> Result<Scalar, String> {
    Scalar::parse(s).map_err(|e| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: drgt::Error| e.to_string())
}

fn emit(value: &impl Serialize) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Analyze { array, numeric } => {
            let report = if numeric { analyze_with(&array, spectrum_numeric(&array)?)? } else { analyze(&array)? };
            println!("{}", report.to_json());
            Ok(ExitCode::SUCCESS)
        }
        Command::Parametrize { sigma, epsilon } => {
            emit(&parametrize(&sigma, &epsilon)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyGraph(args) => {
            let g = match (args.source.construct, args.source.edge_file) {
                (Some(f), None) => construct(f)?,
                (Some(f), Some(path)) => {
                    let g = construct(f)?;
                    std::fs::write(&path, g.to_edge_list()).with_context(|| format!("writing {}", path.display()))?;
                    g
                }
                (None, Some(path)) => load_graph(&path).with_context(|| format!("reading {}", path.display()))?,
                (None, None) => unreachable!("clap requires a source"),
            };
            let opts = GraphCheckOptions {
                verify: VerifyOptions { strict: args.strict, force: args.force },
                homogeneous: args.homogeneous,
                formulas: args.formulas,
                sample: args.sample,
            };
            let report = verify_graph(&g, &opts)?;
            emit(&report)?;
            Ok(status(report.passed))
        }
        Command::Catalog { validate, json, constructible } => {
            if let Some(path) = json {
                std::fs::write(&path, catalog::to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            let entries = catalog::list(constructible);
            if validate {
                let results: Vec<_> = entries.iter().map(catalog::validate).collect();
                let ok = results.iter().all(catalog::Validation::passed);
                emit(&results)?;
                Ok(status(ok))
            } else {
                emit(&entries)?;
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Search { d, max_k, antipodal, feasible, numeric, no_prune, cap } => {
            let cfg = SearchConfig {
                d,
                max_k,
                require_antipodal: antipodal,
                require_feasible: feasible,
                mode: if numeric { ToleranceMode::Numeric } else { ToleranceMode::Exact },
                prune: !no_prune,
                cap,
            };
            let hits = search_with_progress(&cfg, &|n| eprintln!("{n} candidates"))?;
            for h in &hits {
                println!("{}", h.to_ndjson());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = std::env::var("DRGT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("DRGT_THREADS ignored: {e}");
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
