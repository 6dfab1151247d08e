use serde::{Deserialize, Serialize};

use super::metadata::ordered_pairs;
use super::SerialError;
use crate::hierarchy::{HierarchyError, HierarchyVersion, OptionTree, OptionValue};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamFile {
    version: HierarchyVersion,
    #[serde(with = "ordered_pairs")]
    values: Vec<(String, OptionValue)>,
}

/// Pretty JSON of the visible parameter values, keys in flatten order.
pub fn serialize_params(tree: &OptionTree) -> String {
    let file = ParamFile {
        version: tree.version,
        values: tree.flatten(),
    };
    serde_json::to_string_pretty(&file).expect("parameter values are always representable")
}

/// Builds a tree from schema defaults plus the values in `text`.
///
/// A differing major version is rejected; minor and patch differences are
/// logged and accepted.
pub fn deserialize_params(text: &str, schema: &OptionTree) -> Result<OptionTree, SerialError> {
    let file: ParamFile = serde_json::from_str(text).map_err(|e| SerialError::MalformedJson(e.to_string()))?;
    if file.version.major != schema.version.major {
        return Err(SerialError::VersionMismatch {
            file: file.version,
            schema: schema.version,
        });
    }
    if file.version != schema.version {
        log::warn!(
            "parameter file version {} differs from schema version {}",
            file.version,
            schema.version
        );
    }
    for (path, _) in &file.values {
        match schema.node(path) {
            Ok(_) => {}
            Err(HierarchyError::UnknownPath { .. } | HierarchyError::NotAnOption { .. }) => {
                return Err(SerialError::UnknownKey { path: path.clone() })
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(OptionTree::from_flat(schema, &file.values)?)
}
