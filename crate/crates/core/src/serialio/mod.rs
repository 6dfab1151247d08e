//! Persistence: parameter JSON, `.hgi` field containers with generation
//! metadata, PNG export and the batch results CSV.

mod hgi;
mod metadata;
mod params;
mod png;
mod results;

pub use hgi::{inspect_field, load_field, save_field, FieldInfo, HGI_MAGIC};
pub use metadata::Metadata;
pub(crate) use metadata::ordered_pairs;
pub use params::{deserialize_params, serialize_params};
pub use png::export_png;
pub use results::{write_results_row, BatchRecord, RESULTS_HEADER};

use thiserror::Error;

use crate::hierarchy::{HierarchyError, HierarchyVersion};

#[derive(Debug, Error)]
pub enum SerialError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    MalformedJson(String),
    #[error("unknown parameter key '{path}'")]
    UnknownKey { path: String },
    #[error("file version {file} is incompatible with schema version {schema}")]
    VersionMismatch {
        file: HierarchyVersion,
        schema: HierarchyVersion,
    },
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
    #[error("not a field file (bad magic bytes)")]
    BadMagic,
    #[error("malformed field file: {0}")]
    Malformed(String),
    #[error("payload truncated: expected {expected} bytes, found {actual}")]
    TruncatedPayload { expected: usize, actual: usize },
    #[error("payload checksum mismatch: stored {stored:08x}, computed {computed:08x}")]
    ChecksumMismatch { stored: u32, computed: u32 },
    #[error("cannot export an empty image")]
    EmptyImage,
    #[error("png encoding failed: {0}")]
    Png(String),
    #[error("csv error: {0}")]
    Csv(String),
}

impl SerialError {
    /// Offending parameter path, when the error concerns one.
    pub fn path(&self) -> Option<&str> {
        match self {
            SerialError::UnknownKey { path } => Some(path),
            SerialError::Hierarchy(e) => Some(e.path()),
            _ => None,
        }
    }
}
