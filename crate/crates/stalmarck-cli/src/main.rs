//! Command-line front end: solve DIMACS files, generate k-SAT instances,
//! run the benchmark matrix, and export cactus-plot data.
//!
//! `solve` follows the SAT-competition conventions: verdict on an `s` line,
//! model on a `v` line, exit code 10 for satisfiable, 20 for unsatisfiable,
//! 0 for unknown. Diagnostics exit 1; a model that fails the built-in
//! self-check exits 3.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::{Parser, Subcommand};
use stalmarck::{
    emit_csv, evaluate, gen_ksat, instance_specs, normalize, parse_csv, parse_dimacs, run_matrix,
    solve, summarize, write_cactus_files, write_dimacs, GenSpec, SolverConfig, Verdict,
};

#[derive(Parser)]
#[command(name = "stalmarck", version, about = "Saturation-based SAT solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide satisfiability of a DIMACS CNF file
    Solve {
        /// Path to the CNF file
        path: PathBuf,
        /// Branch on the most frequent variable instead of the lowest index
        #[arg(long)]
        cdb: bool,
        /// Order triplets by deductive priority instead of creation order
        #[arg(long)]
        dpo: bool,
        /// Wall-clock budget in seconds (runs to completion if omitted)
        #[arg(long, value_parser = parse_seconds)]
        timeout: Option<Duration>,
    },
    /// Generate a random k-SAT instance in DIMACS format
    Gen {
        /// Number of variables
        #[arg(long)]
        n: u32,
        /// Number of clauses
        #[arg(long)]
        m: u32,
        /// Literals per clause (distinct variables)
        #[arg(long)]
        k: u32,
        /// Generator seed
        #[arg(long)]
        seed: u64,
        /// Output file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate instances and run the strategy matrix with a timeout
    Bench {
        /// Number of instances
        #[arg(long)]
        count: u32,
        /// Variables per instance
        #[arg(long)]
        n: u32,
        /// Clauses per instance
        #[arg(long)]
        m: u32,
        /// Literals per clause
        #[arg(long)]
        k: u32,
        /// Base seed; instance i uses seed + i
        #[arg(long)]
        seed: u64,
        /// Per-solve wall-clock budget in seconds
        #[arg(long, value_parser = parse_seconds)]
        timeout: Duration,
        /// Directory for records.csv and cactus files
        #[arg(long, default_value = "bench-out")]
        out_dir: PathBuf,
        /// Comma-separated subset of baseline,dpo,cdb,dpo_cdb (default all)
        #[arg(long, value_delimiter = ',')]
        configs: Option<Vec<String>>,
        /// Concurrent solves
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Rebuild cactus-plot data files from an existing benchmark CSV
    Cactus {
        /// CSV produced by `bench`
        csv_path: PathBuf,
        /// Directory for the .dat files
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

fn parse_seconds(s: &str) -> Result<Duration, String> {
    let secs: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if !secs.is_finite() || secs <= 0.0 {
        return Err("timeout must be a positive number of seconds".to_string());
    }
    Ok(Duration::from_secs_f64(secs))
}

fn config_from_label(label: &str) -> Option<SolverConfig> {
    let (use_dpo, use_cdb) = match label {
        "baseline" => (false, false),
        "dpo" => (true, false),
        "cdb" => (false, true),
        "dpo_cdb" => (true, true),
        _ => return None,
    };
    Some(SolverConfig {
        use_cdb,
        use_dpo,
        timeout: None,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let ok = matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            );
            let _ = err.print();
            return ExitCode::from(if ok { 0 } else { 1 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Solve {
            path,
            cdb,
            dpo,
            timeout,
        } => cmd_solve(&path, cdb, dpo, timeout),
        Command::Gen { n, m, k, seed, out } => cmd_gen(GenSpec { n, m, k, seed }, out.as_deref()),
        Command::Bench {
            count,
            n,
            m,
            k,
            seed,
            timeout,
            out_dir,
            configs,
            jobs,
        } => cmd_bench(count, n, m, k, seed, timeout, &out_dir, configs, jobs),
        Command::Cactus { csv_path, out_dir } => cmd_cactus(&csv_path, &out_dir),
    }
}

fn cmd_solve(
    path: &std::path::Path,
    cdb: bool,
    dpo: bool,
    timeout: Option<Duration>,
) -> anyhow::Result<u8> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = parse_dimacs(&text).with_context(|| format!("parsing {}", path.display()))?;
    for warning in &parsed.warnings {
        eprintln!("warning: {warning}");
    }
    let config = SolverConfig {
        use_cdb: cdb,
        use_dpo: dpo,
        timeout,
    };
    let formula = normalize(&parsed.formula);
    let outcome = solve(&formula, config);
    println!("c config {}", config.label());
    println!(
        "c branches {} merges {} passes {} time {:.6}s",
        outcome.stats.branches,
        outcome.stats.merges,
        outcome.stats.saturation_passes,
        outcome.stats.elapsed.as_secs_f64()
    );
    match outcome.verdict {
        Verdict::Sat(model) => {
            if evaluate(&parsed.formula, &model) != Ok(true) {
                eprintln!("error: model self-check failed; refusing to print it");
                return Ok(3);
            }
            println!("s SATISFIABLE");
            let mut line = String::from("v");
            for (var, value) in model.iter() {
                let lit = if value { var as i64 } else { -(var as i64) };
                line.push_str(&format!(" {lit}"));
            }
            line.push_str(" 0");
            println!("{line}");
            Ok(10)
        }
        Verdict::Unsat => {
            println!("s UNSATISFIABLE");
            Ok(20)
        }
        Verdict::Unknown(_) => {
            println!("s UNKNOWN");
            Ok(0)
        }
    }
}

fn cmd_gen(spec: GenSpec, out: Option<&std::path::Path>) -> anyhow::Result<u8> {
    let cnf = gen_ksat(&spec)?;
    let text = write_dimacs(&cnf);
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    count: u32,
    n: u32,
    m: u32,
    k: u32,
    seed: u64,
    timeout: Duration,
    out_dir: &std::path::Path,
    config_labels: Option<Vec<String>>,
    jobs: usize,
) -> anyhow::Result<u8> {
    let configs: Vec<SolverConfig> = match config_labels {
        None => ["baseline", "dpo", "cdb", "dpo_cdb"]
            .iter()
            .map(|l| config_from_label(l).unwrap())
            .collect(),
        Some(labels) => labels
            .iter()
            .map(|l| {
                config_from_label(l).ok_or_else(|| {
                    anyhow::anyhow!(
                        "unknown config {l:?} (expected baseline, dpo, cdb, or dpo_cdb)"
                    )
                })
            })
            .collect::<anyhow::Result<_>>()?,
    };
    anyhow::ensure!(count > 0, "count must be positive");
    let specs = instance_specs(count, n, m, k, seed);
    // Surface a bad shape before the long run starts.
    gen_ksat(&specs[0]).context("invalid instance shape")?;

    let records = run_matrix(&specs, &configs, timeout, jobs);
    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    let csv_path = out_dir.join("records.csv");
    fs::write(&csv_path, emit_csv(&records))
        .with_context(|| format!("writing {}", csv_path.display()))?;
    write_cactus_files(&records, out_dir).context("writing cactus files")?;

    println!("wrote {}", csv_path.display());
    println!(
        "{:<10} {:>6} {:>6} {:>12}",
        "config", "solved", "total", "avg_solved_s"
    );
    for s in summarize(&records) {
        let avg = s
            .avg_seconds_solved
            .map(|a| format!("{a:.3}"))
            .unwrap_or_else(|| "-".to_string());
        println!(
            "{:<10} {:>6} {:>6} {:>12}",
            s.config, s.solved, s.total, avg
        );
    }
    Ok(0)
}

fn cmd_cactus(csv_path: &std::path::Path, out_dir: &std::path::Path) -> anyhow::Result<u8> {
    let text =
        fs::read_to_string(csv_path).with_context(|| format!("reading {}", csv_path.display()))?;
    let records = parse_csv(&text).with_context(|| format!("parsing {}", csv_path.display()))?;
    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    let paths = write_cactus_files(&records, out_dir).context("writing cactus files")?;
    for path in paths {
        println!("wrote {}", path.display());
    }
    Ok(0)
}
