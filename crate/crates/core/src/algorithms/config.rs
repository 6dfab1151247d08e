use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use super::SlmSpec;
use crate::propagation::{MetricSpec, PropagationSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmKind {
    Gs,
    Sa,
    Dbs,
    Ospr,
}

impl AlgorithmKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmKind::Gs => "gs",
            AlgorithmKind::Sa => "sa",
            AlgorithmKind::Dbs => "dbs",
            AlgorithmKind::Ospr => "ospr",
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InitMode {
    RandomPhase,
    Backpropagate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScanOrder {
    Raster,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GsParams {
    pub iterations: usize,
    /// Replay-plane feedback gain; 0 is plain error reduction.
    pub feedback_gain: f64,
    pub quantize_each_iteration: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaParams {
    pub proposals: usize,
    /// `None` picks the start temperature from warm-up proposals.
    pub initial_temperature: Option<f64>,
    pub cooling_factor: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DbsParams {
    pub max_passes: usize,
    pub scan_order: ScanOrder,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OsprParams {
    pub subframes: usize,
}

/// Parameters of the selected algorithm only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlgorithmParams {
    Gs(GsParams),
    Sa(SaParams),
    Dbs(DbsParams),
    Ospr(OsprParams),
}

impl AlgorithmParams {
    pub fn kind(&self) -> AlgorithmKind {
        match self {
            AlgorithmParams::Gs(_) => AlgorithmKind::Gs,
            AlgorithmParams::Sa(_) => AlgorithmKind::Sa,
            AlgorithmParams::Dbs(_) => AlgorithmKind::Dbs,
            AlgorithmParams::Ospr(_) => AlgorithmKind::Ospr,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmConfig {
    pub params: AlgorithmParams,
    pub seed: u64,
    pub init_mode: InitMode,
    pub metric: MetricSpec,
    pub slm: SlmSpec,
    pub propagation: PropagationSpec,
}

impl AlgorithmConfig {
    pub fn kind(&self) -> AlgorithmKind {
        self.params.kind()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    Completed,
    Converged,
    Cancelled,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::Completed => "completed",
            Termination::Converged => "converged",
            Termination::Cancelled => "cancelled",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    /// `(iteration, error)` samples in execution order.
    pub error_trace: Vec<(usize, f64)>,
    pub final_error: f64,
    pub efficiency: f64,
    pub iterations_executed: usize,
    pub runtime_ms: f64,
    pub seed_used: u64,
    pub termination: Termination,
}

/// Snapshot passed to progress callbacks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Progress {
    pub iteration: usize,
    pub total: usize,
    pub error: f64,
}

/// Monotonic cancellation flag shared with the running agent.
#[derive(Debug, Clone, Default)]
pub struct CancelFlag(Arc<AtomicBool>);

impl CancelFlag {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::SeqCst);
    }

    #[inline]
    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}
