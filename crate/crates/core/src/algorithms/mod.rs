//! Hologram generation algorithms, SLM quantization and initialization.

mod config;
mod context;
mod dbs;
mod gs;
mod incremental;
mod init;
mod ospr;
pub mod rng;
mod sa;
mod slm;

pub use config::{
    AlgorithmConfig, AlgorithmKind, AlgorithmParams, CancelFlag, DbsParams, GsParams, InitMode,
    OsprParams, Progress, RunReport, SaParams, ScanOrder, Termination,
};
pub use dbs::run_dbs;
pub use gs::run_gs;
pub use init::initial_hologram;
pub use ospr::run_ospr;
pub use sa::{run_sa, run_sa_audited, AuditPoint};
pub use slm::{quantize, Quantiser, SlmScheme, SlmSpec};

use thiserror::Error;

use crate::image::{ComplexField, ImageError};
use crate::propagation::PropagationError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgorithmError {
    #[error("expected {expected:?} dimensions, got {actual:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        actual: (usize, usize),
    },
    #[error("configuration is for {got}, runner expects {expected}")]
    WrongAlgorithm {
        expected: AlgorithmKind,
        got: AlgorithmKind,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Propagation(#[from] PropagationError),
    #[error(transparent)]
    Image(#[from] ImageError),
}

/// Outputs of a single run: one hologram, or `N` subframes for OSPR.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub holograms: Vec<ComplexField>,
    pub report: RunReport,
}

/// Runs whichever algorithm `cfg` selects.
pub fn run(
    cfg: &AlgorithmConfig,
    target: &ComplexField,
    illumination: Option<&ComplexField>,
    progress: &mut dyn FnMut(&Progress),
    cancel: &CancelFlag,
) -> Result<RunOutput, AlgorithmError> {
    let (holograms, report) = match cfg.kind() {
        AlgorithmKind::Gs => {
            let (h, r) = run_gs(cfg, target, illumination, progress, cancel)?;
            (vec![h], r)
        }
        AlgorithmKind::Sa => {
            let (h, r) = run_sa(cfg, target, illumination, progress, cancel)?;
            (vec![h], r)
        }
        AlgorithmKind::Dbs => {
            let (h, r) = run_dbs(cfg, target, illumination, progress, cancel)?;
            (vec![h], r)
        }
        AlgorithmKind::Ospr => run_ospr(cfg, target, illumination, progress, cancel)?,
    };
    Ok(RunOutput { holograms, report })
}
