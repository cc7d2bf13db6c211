//! Benchmark harness: run the strategy matrix over generated instances and
//! emit CSV plus cactus-plot series.
//!
//! Output is deterministic apart from the measured seconds: records appear
//! in (instance, config) order regardless of how many worker threads solved
//! them, and instance identifiers derive from position and seed alone.

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use thiserror::Error;

use crate::cnf::evaluate;
use crate::gen::{gen_ksat, GenSpec};
use crate::normalize::normalize;
use crate::solver::{solve, SolverConfig, Verdict};

/// Verdict column of a benchmark record.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    Sat,
    Unsat,
    Unknown,
}

impl VerdictKind {
    pub fn is_solved(self) -> bool {
        self != VerdictKind::Unknown
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Sat => "sat",
            VerdictKind::Unsat => "unsat",
            VerdictKind::Unknown => "unknown",
        })
    }
}

impl FromStr for VerdictKind {
    type Err = String;

    fn from_str(s: &str) -> Result<VerdictKind, String> {
        match s {
            "sat" => Ok(VerdictKind::Sat),
            "unsat" => Ok(VerdictKind::Unsat),
            "unknown" => Ok(VerdictKind::Unknown),
            other => Err(format!("unrecognized verdict {other:?}")),
        }
    }
}

/// One (instance, config) measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub instance_id: String,
    pub config: String,
    pub verdict: VerdictKind,
    pub seconds: f64,
    pub branches: u64,
    pub merges: u64,
}

/// Specs for `count` instances of one shape, seeded `base_seed`,
/// `base_seed + 1`, … in order.
pub fn instance_specs(count: u32, n: u32, m: u32, k: u32, base_seed: u64) -> Vec<GenSpec> {
    (0..count)
        .map(|i| GenSpec {
            n,
            m,
            k,
            seed: base_seed.wrapping_add(i as u64),
        })
        .collect()
}

fn instance_id(index: usize, spec: &GenSpec) -> String {
    format!("{index:05}_s{}", spec.seed)
}

fn run_one(index: usize, spec: &GenSpec, config: SolverConfig, timeout: Duration) -> BenchRecord {
    let cnf = gen_ksat(spec).expect("benchmark specs are validated before the run");
    let formula = normalize(&cnf);
    let config = SolverConfig {
        timeout: Some(timeout),
        ..config
    };
    let outcome = solve(&formula, config);
    let verdict = match &outcome.verdict {
        Verdict::Sat(model) => {
            assert_eq!(
                evaluate(&cnf, model),
                Ok(true),
                "model self-check failed on {}",
                instance_id(index, spec)
            );
            VerdictKind::Sat
        }
        Verdict::Unsat => VerdictKind::Unsat,
        Verdict::Unknown(_) => VerdictKind::Unknown,
    };
    BenchRecord {
        instance_id: instance_id(index, spec),
        config: config.label().to_string(),
        verdict,
        seconds: outcome.stats.elapsed.as_secs_f64(),
        branches: outcome.stats.branches,
        merges: outcome.stats.merges,
    }
}

/// Solves every (instance, config) pair, `jobs` solves at a time.
///
/// Every spawned solve owns its own state; records come back in
/// (instance, config) order whatever the completion order. Each Sat model is
/// re-checked against its source formula before being recorded.
pub fn run_matrix(
    specs: &[GenSpec],
    configs: &[SolverConfig],
    timeout: Duration,
    jobs: usize,
) -> Vec<BenchRecord> {
    let tasks: Vec<(usize, &GenSpec, SolverConfig)> = specs
        .iter()
        .enumerate()
        .flat_map(|(i, s)| configs.iter().map(move |&c| (i, s, c)))
        .collect();
    let jobs = jobs.max(1).min(tasks.len().max(1));
    if jobs == 1 {
        return tasks
            .into_iter()
            .map(|(i, s, c)| run_one(i, s, c, timeout))
            .collect();
    }

    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, BenchRecord)>();
    thread::scope(|scope| {
        for _ in 0..jobs {
            let tx = tx.clone();
            let tasks = &tasks;
            let next = &next;
            scope.spawn(move || loop {
                let t = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(i, s, c)) = tasks.get(t) else {
                    break;
                };
                let record = run_one(i, s, c, timeout);
                if tx.send((t, record)).is_err() {
                    break;
                }
            });
        }
    });
    drop(tx);

    let mut slots: Vec<Option<BenchRecord>> = vec![None; tasks.len()];
    for (t, record) in rx {
        slots[t] = Some(record);
    }
    slots
        .into_iter()
        .map(|r| r.expect("every task sends exactly one record"))
        .collect()
}

/// Renders records as CSV, seconds at microsecond precision.
pub fn emit_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from("instance,config,verdict,seconds,branches,merges\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{:.6},{},{}\n",
            r.instance_id, r.config, r.verdict, r.seconds, r.branches, r.merges
        ));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CsvError {
    #[error("missing or malformed header line")]
    BadHeader,
    #[error("line {line}: expected 6 comma-separated fields")]
    FieldCount { line: usize },
    #[error("line {line}: cannot parse field {field:?}")]
    BadField { line: usize, field: String },
}

/// Parses CSV produced by [`emit_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<BenchRecord>, CsvError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "instance,config,verdict,seconds,branches,merges")) => {}
        _ => return Err(CsvError::BadHeader),
    }
    let mut records = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let [id, config, verdict, seconds, branches, merges] = fields[..] else {
            return Err(CsvError::FieldCount { line: line_no });
        };
        let bad = |field: &str| CsvError::BadField {
            line: line_no,
            field: field.to_string(),
        };
        records.push(BenchRecord {
            instance_id: id.to_string(),
            config: config.to_string(),
            verdict: verdict.parse().map_err(|_| bad(verdict))?,
            seconds: seconds.parse().map_err(|_| bad(seconds))?,
            branches: branches.parse().map_err(|_| bad(branches))?,
            merges: merges.parse().map_err(|_| bad(merges))?,
        });
    }
    Ok(records)
}

/// Per-config cactus series: solve times of solved instances sorted
/// ascending, paired with ranks `1..=count`. Configs appear in order of
/// first appearance in the records.
pub fn cactus_data(records: &[BenchRecord]) -> Vec<(String, Vec<(usize, f64)>)> {
    let mut order: Vec<String> = Vec::new();
    for r in records {
        if !order.contains(&r.config) {
            order.push(r.config.clone());
        }
    }
    order
        .into_iter()
        .map(|config| {
            let mut times: Vec<f64> = records
                .iter()
                .filter(|r| r.config == config && r.verdict.is_solved())
                .map(|r| r.seconds)
                .collect();
            times.sort_by(|a, b| a.partial_cmp(b).expect("solve times are never NaN"));
            let series = times
                .into_iter()
                .enumerate()
                .map(|(i, t)| (i + 1, t))
                .collect();
            (config, series)
        })
        .collect()
}

/// Writes one `cactus_<config>.dat` per config into `dir`, two columns
/// `rank seconds` per line, and returns the paths written.
pub fn write_cactus_files(records: &[BenchRecord], dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for (config, series) in cactus_data(records) {
        let mut body = String::new();
        for (rank, seconds) in series {
            body.push_str(&format!("{rank} {seconds:.6}\n"));
        }
        let path = dir.join(format!("cactus_{config}.dat"));
        fs::write(&path, body)?;
        paths.push(path);
    }
    Ok(paths)
}

/// Solved counts and mean solve time (solved instances only) per config.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigSummary {
    pub config: String,
    pub total: usize,
    pub solved: usize,
    pub avg_seconds_solved: Option<f64>,
}

pub fn summarize(records: &[BenchRecord]) -> Vec<ConfigSummary> {
    cactus_data(records)
        .into_iter()
        .map(|(config, series)| {
            let total = records.iter().filter(|r| r.config == config).count();
            let solved = series.len();
            let avg_seconds_solved = if solved > 0 {
                Some(series.iter().map(|&(_, t)| t).sum::<f64>() / solved as f64)
            } else {
                None
            };
            ConfigSummary {
                config,
                total,
                solved,
                avg_seconds_solved,
            }
        })
        .collect()
}
