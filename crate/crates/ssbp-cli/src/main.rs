//! Command-line front end: generate graphs, solve instances, cross-check
//! solvers against each other, and run benchmark sweeps.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use ssbp::baselines::{dijkstra_csssbp, dijkstra_ssbp, oracle_csssbp, oracle_paths_ssbp};
use ssbp::gen::{Family, GenSpec, WeightDist};
use ssbp::textio;
use ssbp::{
    default_k, solve_csssbp, solve_ssbp, BottleneckResult, CsssbpInstance, SolveStats,
    SolverConfig, SsbpInstance,
};

#[derive(Parser)]
#[command(name = "ssbp", about = "Single-source bottleneck path toolkit", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph file from a family spec.
    Gen {
        /// Family, e.g. `uniform-random(100,400)`, `grid(4,4)`, `path(10)`,
        /// `complete(8)`, `layered-dag(5,20)`.
        #[arg(long)]
        family: String,
        /// Weight distribution: `lo:hi` (uniform reals) or `ranks`
        /// (a random permutation of 0..m).
        #[arg(long, default_value = "0:1")]
        weights: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance file and print `v d(v)` lines.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Recursive)]
        algo: Algo,
        /// Source node (files without an `h` section only).
        #[arg(long, default_value_t = 0)]
        source: u32,
        /// Sampling parameter override for the recursive solver.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Stats block after a `---` separator (recursive solver only).
        #[arg(long, value_enum, default_value_t = StatsMode::None)]
        stats: StatsMode,
    },
    /// Cross-check the recursive solver against the baselines.
    Check {
        /// Optional instance file to check first.
        input: Option<PathBuf>,
        /// Number of random instances to check in addition.
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Benchmark sweep over sizes, densities, and k values.
    Bench {
        /// Node counts, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1000")]
        sizes: Vec<usize>,
        /// Edge densities m/n, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "4")]
        densities: Vec<usize>,
        /// k values to sweep; the default k for each n when omitted.
        #[arg(long, value_delimiter = ',')]
        k_sweep: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1)]
        repeats: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Recursive,
    Dijkstra,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatsMode {
    None,
    Summary,
    PerCall,
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Gen {
            family,
            weights,
            seed,
            out,
        } => run(cmd_gen(&family, &weights, seed, out.as_deref())),
        Cmd::Solve {
            input,
            algo,
            source,
            k,
            seed,
            stats,
        } => run(cmd_solve(&input, algo, source, k, seed, stats)),
        Cmd::Check { input, seeds, seed } => match cmd_check(input.as_deref(), seeds, seed) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => fail(e),
        },
        Cmd::Bench {
            sizes,
            densities,
            k_sweep,
            repeats,
            seed,
        } => run(cmd_bench(&sizes, &densities, k_sweep.as_deref(), repeats, seed)),
    }
}

fn run(r: Result<(), String>) -> ExitCode {
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn fail(msg: String) -> ExitCode {
    eprintln!("error: {}", msg);
    ExitCode::from(2)
}

fn cmd_gen(family: &str, weights: &str, seed: u64, out: Option<&std::path::Path>) -> Result<(), String> {
    let spec = GenSpec {
        family: Family::parse(family).map_err(|e| e.to_string())?,
        weights: WeightDist::parse(weights).map_err(|e| e.to_string())?,
        seed,
    };
    let text = textio::serialize(&spec.generate(), None);
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {}", path.display(), e)),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn read_instance(path: &std::path::Path) -> Result<textio::TextInstance, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))?;
    textio::parse(&text).map_err(|e| format!("{}: {}", path.display(), e))
}

fn print_result(d: &BottleneckResult) {
    let mut out = String::new();
    for (v, cap) in d.d.iter().enumerate() {
        writeln!(out, "{} {}", v, cap).unwrap();
    }
    print!("{}", out);
}

fn cmd_solve(
    path: &std::path::Path,
    algo: Algo,
    source: u32,
    k: Option<usize>,
    seed: u64,
    stats: StatsMode,
) -> Result<(), String> {
    let parsed = read_instance(path)?;
    let cfg = SolverConfig {
        k,
        seed,
        ..Default::default()
    };
    let mut solve_stats: Option<SolveStats> = None;
    let result = match parsed.h {
        Some(h) => {
            let inst = CsssbpInstance::new(parsed.graph, h);
            match algo {
                Algo::Recursive => {
                    let (r, s) = solve_csssbp(&inst, &cfg).map_err(|e| e.to_string())?;
                    solve_stats = Some(s);
                    r
                }
                Algo::Dijkstra => dijkstra_csssbp(&inst),
                Algo::Oracle => oracle_csssbp(&inst),
            }
        }
        None => {
            let inst = SsbpInstance::new(parsed.graph, source).map_err(|e| e.to_string())?;
            match algo {
                Algo::Recursive => {
                    let (r, s) = solve_ssbp(&inst, &cfg).map_err(|e| e.to_string())?;
                    solve_stats = Some(s);
                    r
                }
                Algo::Dijkstra => dijkstra_ssbp(&inst),
                Algo::Oracle => {
                    let mut r = oracle_csssbp(&ssbp::ssbp_to_csssbp(&inst));
                    // The empty path gives the source infinite capacity; the
                    // reduction only sees the max edge weight.
                    r.d[source as usize] = ssbp::Capacity::PosInf;
                    r
                }
            }
        }
    };
    print_result(&result);
    if let (Some(s), StatsMode::Summary | StatsMode::PerCall) = (&solve_stats, stats) {
        println!("---");
        match stats {
            StatsMode::Summary => print!("{}", s.summary()),
            StatsMode::PerCall => print!("{}", s.per_call()),
            StatsMode::None => unreachable!(),
        }
    }
    Ok(())
}

/// Compare the recursive solver with the heap Dijkstra and, on graphs small
/// enough, the exhaustive path oracle. Returns Ok(false) on first divergence
/// and serializes the witness instance for reproduction.
fn cmd_check(input: Option<&std::path::Path>, seeds: u64, seed: u64) -> Result<bool, String> {
    // Fault hook so the FAIL path itself is testable end to end.
    let fault = std::env::var_os("SSBP_CHECK_FAULT").is_some();
    let mut checked = 0u64;

    if let Some(path) = input {
        let parsed = read_instance(path)?;
        let (graph, h) = (parsed.graph, parsed.h);
        let inst = match h {
            Some(h) => CsssbpInstance::new(graph, h),
            None => ssbp::ssbp_to_csssbp(&SsbpInstance::new(graph, 0).map_err(|e| e.to_string())?),
        };
        if !check_one(&inst, seed, fault, &format!("file {}", path.display()))? {
            return Ok(false);
        }
        checked += 1;
    }

    for i in 0..seeds {
        let s = seed.wrapping_add(i);
        // Alternate duplicate-heavy integer weights with uniform reals.
        let weights = if i % 2 == 0 {
            WeightDist::IntegerRanks
        } else {
            WeightDist::UniformReal { lo: 0.0, hi: 1.0 }
        };
        let n = 2 + (s % 9) as usize * 4; // 2..=34
        let graph = GenSpec {
            family: Family::UniformRandom { n, m: 3 * n },
            weights,
            seed: s,
        }
        .generate();
        let inst = ssbp::ssbp_to_csssbp(&SsbpInstance::new(graph, 0).map_err(|e| e.to_string())?);
        if !check_one(&inst, s, fault, &format!("random seed {}", s))? {
            return Ok(false);
        }
        checked += 1;
    }
    println!("PASS ({} instances)", checked);
    Ok(true)
}

fn check_one(inst: &CsssbpInstance, seed: u64, fault: bool, label: &str) -> Result<bool, String> {
    let cfg = SolverConfig {
        seed,
        depth_limit: Some(64),
        ..Default::default()
    };
    let (mut got, _) = solve_csssbp(inst, &cfg).map_err(|e| e.to_string())?;
    if fault && !got.d.is_empty() {
        got.d[0] = ssbp::Capacity::NegInf;
    }
    let want = dijkstra_csssbp(inst);
    if got.d != want.d {
        return Ok(report_divergence(inst, label, "recursive", "dijkstra", &got, &want));
    }
    // The reduction adds one node, and the path oracle is capped at 10.
    // Its capacity edges carry fresh tie-break ids, so compare numeric
    // values rather than full keys here.
    if inst.graph.n() < 10 {
        let (as_ssbp, _) = ssbp::csssbp_to_ssbp(inst);
        let oracle = oracle_paths_ssbp(&as_ssbp).map_err(|e| e.to_string())?;
        let truncated = BottleneckResult {
            d: oracle.d[..inst.graph.n()].to_vec(),
        };
        let same = got
            .d
            .iter()
            .zip(&truncated.d)
            .all(|(x, y)| x.value() == y.value());
        if !same {
            return Ok(report_divergence(inst, label, "recursive", "path oracle", &got, &truncated));
        }
    }
    Ok(true)
}

fn report_divergence(
    inst: &CsssbpInstance,
    label: &str,
    a: &str,
    b: &str,
    got: &BottleneckResult,
    want: &BottleneckResult,
) -> bool {
    let v = got
        .d
        .iter()
        .zip(&want.d)
        .position(|(x, y)| x != y)
        .unwrap_or(0);
    println!("FAIL ({}): {} and {} disagree at node {}", label, a, b, v);
    println!("  {}: {}   {}: {}", a, got.d[v], b, want.d[v]);
    println!("witness instance:");
    print!("{}", textio::serialize(&inst.graph, Some(&inst.h)));
    false
}

fn cmd_bench(
    sizes: &[usize],
    densities: &[usize],
    k_sweep: Option<&[usize]>,
    repeats: u64,
    seed: u64,
) -> Result<(), String> {
    println!(
        "{:>10} {:>10} {:>6} {:>6} {:>10} {:>10} {:>14} {:>14} {:>10}",
        "algo", "n", "m", "k", "repeat", "wall_ms", "index_evals", "sort_cmps", "max_depth"
    );
    for &n in sizes {
        for &d in densities {
            let m = n.saturating_mul(d);
            let ks: Vec<usize> = match k_sweep {
                Some(ks) => ks.to_vec(),
                None => vec![default_k(n)],
            };
            for rep in 0..repeats {
                let graph = GenSpec {
                    family: Family::UniformRandom { n, m },
                    weights: WeightDist::UniformReal { lo: 0.0, hi: 1.0 },
                    seed: seed.wrapping_add(rep),
                }
                .generate();
                let inst = SsbpInstance::new(graph, 0).map_err(|e| e.to_string())?;
                for &k in &ks {
                    let cfg = SolverConfig {
                        k: Some(k),
                        seed: seed.wrapping_add(rep),
                        ..Default::default()
                    };
                    let t = Instant::now();
                    let (_, stats) = solve_ssbp(&inst, &cfg).map_err(|e| e.to_string())?;
                    let ms = t.elapsed().as_secs_f64() * 1e3;
                    bench_row("recursive", n, m, k, rep, ms, Some(&stats));
                }
                let t = Instant::now();
                let _ = dijkstra_ssbp(&inst);
                let ms = t.elapsed().as_secs_f64() * 1e3;
                bench_row("dijkstra", n, m, 0, rep, ms, None);
            }
        }
    }
    Ok(())
}

fn bench_row(algo: &str, n: usize, m: usize, k: usize, rep: u64, ms: f64, stats: Option<&SolveStats>) {
    let (evals, cmps, depth) = match stats {
        Some(s) => (s.total_index_evals(), s.totals.sort_comparisons, s.max_depth),
        None => (0, 0, 0),
    };
    println!(
        "{:>10} {:>10} {:>6} {:>6} {:>10} {:>10.2} {:>14} {:>14} {:>10}",
        algo, n, m, k, rep, ms, evals, cmps, depth
    );
    println!(
        "algo={} n={} m={} k={} repeat={} wall_ms={:.3} index_evals={} sort_comparisons={} max_depth={}",
        algo, n, m, k, rep, ms, evals, cmps, depth
    );
}
