//! Turns a parameter tree into algorithm inputs, runs it with traceability
//! metadata attached, and schedules batches of such runs.

mod batch;
mod configure;
mod execute;
mod loader;

pub use batch::{derive_job_seed, load_manifest, parse_manifest, run_batch, BatchSummary, Job, RESULTS_FILE};
pub use configure::{configure_run, tree_from_metadata, RunConfig};
pub use execute::{execute, frame_file_names, save_outputs, Execution};
pub use loader::{load_grayscale, load_illumination, load_target, rec601_luma, resample_nearest};

use thiserror::Error;

use crate::algorithms::AlgorithmError;
use crate::serialio::SerialError;

#[derive(Debug, Error)]
pub enum ControllerError {
    #[error("invalid parameters at {}: {message}", paths.join(", "))]
    ValidationFailed { paths: Vec<String>, message: String },
    #[error("target is {actual:?} but the SLM is {expected:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        actual: (usize, usize),
    },
    #[error("cannot read image '{path}': {message}")]
    ImageLoad { path: String, message: String },
    #[error("malformed manifest at line {line}: {message}")]
    MalformedManifest { line: usize, message: String },
    #[error("duplicate job id '{id}'")]
    DuplicateId { id: String },
    #[error("unknown parameter key '{path}'")]
    UnknownKey { path: String },
    #[error(transparent)]
    Algorithm(#[from] AlgorithmError),
    #[error(transparent)]
    Serial(#[from] SerialError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl ControllerError {
    pub(crate) fn invalid(path: &str, message: impl Into<String>) -> Self {
        ControllerError::ValidationFailed {
            paths: vec![path.to_string()],
            message: message.into(),
        }
    }

    /// True for errors caused by the parameters or manifest rather than by
    /// the environment or the computation.
    pub fn is_validation(&self) -> bool {
        match self {
            ControllerError::ValidationFailed { .. }
            | ControllerError::MalformedManifest { .. }
            | ControllerError::DuplicateId { .. }
            | ControllerError::UnknownKey { .. } => true,
            ControllerError::Serial(e) => !matches!(
                e,
                SerialError::Io(_)
                    | SerialError::BadMagic
                    | SerialError::Malformed(_)
                    | SerialError::TruncatedPayload { .. }
                    | SerialError::ChecksumMismatch { .. }
            ),
            ControllerError::Algorithm(AlgorithmError::InvalidConfig(_)) => true,
            _ => false,
        }
    }
}

impl From<crate::hierarchy::HierarchyError> for ControllerError {
    fn from(e: crate::hierarchy::HierarchyError) -> Self {
        ControllerError::ValidationFailed {
            paths: vec![e.path().to_string()],
            message: e.to_string(),
        }
    }
}
