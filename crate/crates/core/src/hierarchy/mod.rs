//! Typed parameter tree: pages hold folders, folders hold options, and
//! select / boolean options inject child options when active.

mod schema;
mod tree;
mod value;

pub use schema::{build_schema, SCHEMA_VERSION};
pub use tree::{Folder, OptionKind, OptionNode, OptionTree, Page, Possibility};
pub use value::{HierarchyVersion, OptionValue};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HierarchyError {
    #[error("unknown parameter path '{path}'")]
    UnknownPath { path: String },
    #[error("parameter '{path}' is hidden by an unselected possibility")]
    HiddenPath { path: String },
    #[error("'{path}' is a container, not an option")]
    NotAnOption { path: String },
    #[error("value for '{path}' outside [{min}, {max}]")]
    OutOfRange { path: String, min: String, max: String },
    #[error("value for '{path}' has the wrong type")]
    TypeMismatch { path: String },
    #[error("'{value}' is not a choice for '{path}' (allowed: {allowed})")]
    InvalidChoice {
        path: String,
        value: String,
        allowed: String,
    },
    #[error("parameter '{path}' is disabled")]
    Disabled { path: String },
}

impl HierarchyError {
    pub fn path(&self) -> &str {
        match self {
            HierarchyError::UnknownPath { path }
            | HierarchyError::HiddenPath { path }
            | HierarchyError::NotAnOption { path }
            | HierarchyError::OutOfRange { path, .. }
            | HierarchyError::TypeMismatch { path }
            | HierarchyError::InvalidChoice { path, .. }
            | HierarchyError::Disabled { path } => path,
        }
    }
}
