//! Complex-field data model, masks, view rendering and region iteration.

mod cache;
mod field;
mod mask;
mod regions;
mod render;

pub use cache::GenericCache;
pub use field::ComplexField;
pub use mask::{rect_mask, Mask, Rect};
pub use regions::{region_chunks, StridedChunkRange};
pub use render::{
    render, ColorScheme, ImageCache, ImageScaleType, ImageViewType, RgbImage, TransformType,
    ViewKey, LOG_SCALE_GAIN,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImageError {
    #[error("image has no pixels")]
    EmptyImage,
    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("field contains NaN or infinite values")]
    NonFinite,
    #[error("chunk size must be at least 1")]
    ZeroChunk,
    #[error("rectangle {rect:?} exceeds {width}x{height} grid")]
    OutOfBounds {
        rect: Rect,
        width: usize,
        height: usize,
    },
    #[error("unknown {kind} '{value}' (allowed: {allowed})")]
    UnknownVariant {
        kind: &'static str,
        value: String,
        allowed: String,
    },
}
