//! Unitary 2D DFT propagation, centering shifts, energy normalization,
//! randomization, error metrics and the incremental single-pixel updater.

mod fft;
mod ops;
mod propagate;
mod update;

pub use fft::{fft2, fftshift, fftshift_slice, ifftshift, ifftshift_slice, Direction, Fft2};
pub use ops::{
    efficiency, efficiency_raw, mse_error, mse_error_raw, normalize_energy, phase_of, randomize,
    MetricSpec, RandomMode,
};
pub use propagate::{backpropagate, propagate, PropagationKind, PropagationSpec, Propagator};
pub use update::{delta_replay_update, ReplayUpdater};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropagationError {
    #[error("field contains NaN or infinite values")]
    NonFinite,
    #[error("invalid propagation spec: {0}")]
    InvalidSpec(String),
    #[error("field has zero energy")]
    ZeroField,
    #[error("metric mask selects no pixels")]
    EmptyMask,
    #[error("target has zero energy inside the mask")]
    ZeroTarget,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("pixel (row {row}, col {col}) out of range")]
    IndexOutOfRange { row: usize, col: usize },
}
