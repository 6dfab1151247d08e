use std::path::{Path, PathBuf};

use super::{ControllerError, RunConfig};
use crate::algorithms::{self, AlgorithmKind, CancelFlag, Progress, RunReport};
use crate::image::ComplexField;
use crate::propagation::Propagator;
use crate::serialio::{save_field, Metadata};

/// Holograms of one run, each tagged with its generation metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Execution {
    pub outputs: Vec<(ComplexField, Metadata)>,
    pub report: RunReport,
}

impl Execution {
    pub fn holograms(&self) -> impl Iterator<Item = &ComplexField> {
        self.outputs.iter().map(|(f, _)| f)
    }

    /// Replay amplitude `sqrt(mean_i |P(illum * h_i)|^2)`, centred; a single
    /// hologram gives its plain replay amplitude.
    pub fn replay(&self, cfg: &RunConfig, illumination: Option<&ComplexField>) -> Result<ComplexField, ControllerError> {
        let (w, h) = (cfg.width(), cfg.height());
        let prop = Propagator::new(&cfg.algorithm.propagation, w, h).map_err(crate::algorithms::AlgorithmError::from)?;
        let mut intensity = vec![0.0; w * h];
        for holo in self.holograms() {
            let mut field = holo.clone();
            if let Some(ill) = illumination {
                for (z, a) in field.data_mut().iter_mut().zip(ill.data()) {
                    *z *= a.norm();
                }
            }
            let replay = prop.propagate(&field).map_err(crate::algorithms::AlgorithmError::from)?;
            for (acc, z) in intensity.iter_mut().zip(replay.data()) {
                *acc += z.norm_sqr();
            }
        }
        let n = self.outputs.len().max(1) as f64;
        let amp: Vec<f64> = intensity.iter().map(|v| (v / n).sqrt()).collect();
        Ok(ComplexField::from_amplitudes(w, h, &amp).map_err(crate::algorithms::AlgorithmError::from)?)
    }
}

/// Runs the configured algorithm on `target` and tags each output with
/// metadata. Runner errors are passed through unchanged.
pub fn execute(
    cfg: &RunConfig,
    target: &ComplexField,
    illumination: Option<&ComplexField>,
    progress: &mut dyn FnMut(&Progress),
    cancel: &CancelFlag,
) -> Result<Execution, ControllerError> {
    let expected = (cfg.width(), cfg.height());
    for field in std::iter::once(target).chain(illumination) {
        if field.dims() != expected {
            return Err(ControllerError::DimensionMismatch {
                expected,
                actual: field.dims(),
            });
        }
    }
    let timestamp = Metadata::now_timestamp();
    let out = algorithms::run(&cfg.algorithm, target, illumination, progress, cancel)?;
    let multi_frame = cfg.algorithm.kind() == AlgorithmKind::Ospr;
    let meta = |frame: Option<usize>| Metadata {
        version: cfg.version,
        parameters: cfg.parameters.clone(),
        seed: out.report.seed_used,
        app_version: Metadata::app_version(),
        timestamp: timestamp.clone(),
        algorithm: cfg.algorithm.kind().as_str().to_string(),
        error_final: out.report.final_error,
        iterations: out.report.iterations_executed,
        frame,
    };
    let outputs = out
        .holograms
        .into_iter()
        .enumerate()
        .map(|(i, h)| {
            let m = meta(multi_frame.then_some(i));
            (h, m)
        })
        .collect();
    Ok(Execution {
        outputs,
        report: out.report,
    })
}

/// Paths for `n` subframes of `out`: `<stem>.frame<i>.hgi` beside it.
pub fn frame_file_names(out: &Path, n: usize) -> Vec<PathBuf> {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    (0..n).map(|i| out.with_file_name(format!("{stem}.frame{i}.hgi"))).collect()
}

/// Saves every output. Single-hologram runs write `out`; multi-frame runs
/// write one sibling file per frame. Returns the written paths in order.
pub fn save_outputs(exec: &Execution, out: &Path) -> Result<Vec<PathBuf>, ControllerError> {
    let multi = exec.outputs.iter().any(|(_, m)| m.frame.is_some());
    let paths = if multi {
        frame_file_names(out, exec.outputs.len())
    } else {
        vec![out.to_path_buf()]
    };
    for ((field, meta), path) in exec.outputs.iter().zip(&paths) {
        save_field(path, field, meta)?;
    }
    Ok(paths)
}
