use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use super::configure::SEED_PATH;
use super::{configure_run, execute, load_illumination, load_target, save_outputs, ControllerError};
use crate::algorithms::CancelFlag;
use crate::hierarchy::{build_schema, HierarchyError, OptionTree, OptionValue};
use crate::serialio::{write_results_row, BatchRecord};

/// Name of the results table written into the batch output directory.
pub const RESULTS_FILE: &str = "results.csv";

const ILLUMINATION_PATH: &str = "algorithm/run/illumination";

/// One scheduled generation.
#[derive(Debug, Clone, PartialEq)]
pub struct Job {
    pub id: String,
    pub target: PathBuf,
    /// Output file name inside the batch directory, `.hgi` appended if absent.
    pub output: String,
    /// Parameter overrides applied to a fresh default tree.
    pub overrides: Vec<(String, OptionValue)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchSummary {
    pub total: usize,
    pub succeeded: usize,
    pub failed: usize,
    /// One row per job, in manifest order.
    pub rows: Vec<BatchRecord>,
    pub results_path: PathBuf,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JobEntry {
    id: String,
    target: String,
    #[serde(default)]
    output: Option<String>,
    #[serde(default, with = "crate::serialio::ordered_pairs")]
    overrides: Vec<(String, OptionValue)>,
}

fn resolve(base: &Path, p: &str) -> PathBuf {
    let p = Path::new(p);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// Parses a JSON job list. Relative target and illumination paths are
/// resolved against `base_dir`.
pub fn parse_manifest(text: &str, base_dir: &Path, schema: &OptionTree) -> Result<Vec<Job>, ControllerError> {
    let entries: Vec<JobEntry> = serde_json::from_str(text).map_err(|e| ControllerError::MalformedManifest {
        line: e.line(),
        message: e.to_string(),
    })?;
    let mut ids = HashSet::new();
    let mut outputs = HashSet::new();
    let mut jobs = Vec::with_capacity(entries.len());
    for entry in entries {
        if !ids.insert(entry.id.clone()) {
            return Err(ControllerError::DuplicateId { id: entry.id });
        }
        let mut output = entry.output.unwrap_or_else(|| entry.id.clone());
        if !output.ends_with(".hgi") {
            output.push_str(".hgi");
        }
        if output.is_empty() || output.contains(['/', '\\']) || !outputs.insert(output.clone()) {
            return Err(ControllerError::ValidationFailed {
                paths: vec![format!("{}/output", entry.id)],
                message: format!("output name '{output}' is invalid or used twice"),
            });
        }
        let mut overrides = entry.overrides;
        for (path, value) in &mut overrides {
            match schema.node(path) {
                Ok(_) => {}
                Err(HierarchyError::UnknownPath { .. } | HierarchyError::NotAnOption { .. }) => {
                    return Err(ControllerError::UnknownKey { path: path.clone() })
                }
                Err(e) => return Err(e.into()),
            }
            if path == ILLUMINATION_PATH {
                if let OptionValue::Text(p) = value {
                    if !p.is_empty() {
                        *p = resolve(base_dir, p).display().to_string();
                    }
                }
            }
        }
        jobs.push(Job {
            id: entry.id,
            target: resolve(base_dir, &entry.target),
            output,
            overrides,
        });
    }
    Ok(jobs)
}

pub fn load_manifest(path: &Path) -> Result<Vec<Job>, ControllerError> {
    let text = std::fs::read_to_string(path)?;
    let base = path.parent().unwrap_or(Path::new(""));
    parse_manifest(&text, base, &build_schema())
}

/// Seed for a job that leaves the seed automatic: a hash of the batch seed
/// and the job id, kept within the schema's seed range.
pub fn derive_job_seed(base_seed: u64, job_id: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(base_seed.to_le_bytes());
    h.update(job_id.as_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes")) >> 1
}

struct Failure {
    tree: Option<OptionTree>,
    seed: u64,
    message: String,
}

fn run_job(job: &Job, out_dir: &Path, base_seed: u64, cancel: &CancelFlag) -> Result<BatchRecord, Failure> {
    let started = Instant::now();
    let mut tree = build_schema();
    let mut seed = 0;
    let fail = |tree: Option<&OptionTree>, seed: u64, e: &dyn std::fmt::Display| Failure {
        tree: tree.cloned(),
        seed,
        message: e.to_string(),
    };
    tree.apply(&job.overrides).map_err(|e| fail(None, seed, &e))?;
    if tree.get(SEED_PATH).ok().and_then(|v| v.as_int()) == Some(-1) {
        seed = derive_job_seed(base_seed, &job.id);
        tree.set(SEED_PATH, seed as i64).map_err(|e| fail(Some(&tree), seed, &e))?;
    }
    let cfg = configure_run(&tree).map_err(|e| fail(Some(&tree), seed, &e))?;
    seed = cfg.algorithm.seed;
    if cancel.is_cancelled() {
        return Err(fail(Some(&tree), seed, &"cancelled before start"));
    }
    let (w, h) = (cfg.width(), cfg.height());
    let target = load_target(&job.target, w, h).map_err(|e| fail(Some(&tree), seed, &e))?;
    let illumination = cfg
        .illumination
        .as_deref()
        .map(|p| load_illumination(p, w, h))
        .transpose()
        .map_err(|e| fail(Some(&tree), seed, &e))?;
    let exec = execute(&cfg, &target, illumination.as_ref(), &mut |_| {}, cancel)
        .map_err(|e| fail(Some(&tree), seed, &e))?;
    let paths = save_outputs(&exec, &out_dir.join(&job.output)).map_err(|e| fail(Some(&tree), seed, &e))?;
    let names: Vec<String> = paths
        .iter()
        .map(|p| p.file_name().unwrap_or_default().to_string_lossy().into_owned())
        .collect();
    log::info!("job {} finished: error {:.6e}", job.id, exec.report.final_error);
    Ok(BatchRecord {
        job_id: job.id.clone(),
        algorithm: cfg.algorithm.kind().as_str().to_string(),
        width: w,
        height: h,
        iterations: exec.report.iterations_executed,
        final_error: exec.report.final_error,
        efficiency: exec.report.efficiency,
        seed,
        runtime_ms: started.elapsed().as_secs_f64() * 1e3,
        output_file: names.join(";"),
    })
}

fn failure_record(job: &Job, f: Failure) -> BatchRecord {
    let get = |path: &str| f.tree.as_ref().and_then(|t| t.get(path).ok());
    let dim = |path: &str| get(path).and_then(|v| v.as_int()).unwrap_or(0).max(0) as usize;
    log::warn!("job {} failed: {}", job.id, f.message);
    BatchRecord {
        job_id: job.id.clone(),
        algorithm: get("algorithm/run/algorithm").map(|v| v.to_string()).unwrap_or_default(),
        width: dim("projector/slm/slm-resolution-x"),
        height: dim("projector/slm/slm-resolution-y"),
        iterations: 0,
        final_error: f64::NAN,
        efficiency: f64::NAN,
        seed: f.seed,
        runtime_ms: 0.0,
        output_file: format!("ERROR: {}", f.message.replace(['\n', '\r'], " ")),
    }
}

/// Runs `jobs` on up to `workers` threads (at least one). Each job writes its
/// `.hgi` output into `out_dir`; rows are appended to a fresh
/// [`RESULTS_FILE`] in manifest order as soon as all earlier jobs are done.
/// A failing job is recorded and does not stop the batch.
pub fn run_batch(
    jobs: &[Job],
    workers: usize,
    out_dir: &Path,
    base_seed: u64,
    cancel: &CancelFlag,
) -> Result<BatchSummary, ControllerError> {
    std::fs::create_dir_all(out_dir)?;
    let results_path = out_dir.join(RESULTS_FILE);
    if results_path.exists() {
        std::fs::remove_file(&results_path)?;
    }
    let workers = workers.clamp(1, jobs.len().max(1));
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, Result<BatchRecord, BatchRecord>)>();

    std::thread::scope(|scope| -> Result<BatchSummary, ControllerError> {
        for _ in 0..workers {
            let tx = tx.clone();
            let next = &next;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                let row = run_job(job, out_dir, base_seed, cancel).map_err(|f| failure_record(job, f));
                if tx.send((i, row)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut pending = BTreeMap::new();
        let mut rows = Vec::with_capacity(jobs.len());
        let mut failed = 0;
        for (i, row) in rx {
            pending.insert(i, row);
            while let Some(row) = pending.remove(&rows.len()) {
                let row = row.unwrap_or_else(|r| {
                    failed += 1;
                    r
                });
                write_results_row(&results_path, &row)?;
                rows.push(row);
            }
        }
        Ok(BatchSummary {
            total: jobs.len(),
            succeeded: jobs.len() - failed,
            failed,
            rows,
            results_path: results_path.clone(),
        })
    })
}
