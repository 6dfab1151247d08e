use serde::{Deserialize, Serialize};

use crate::hierarchy::{HierarchyVersion, OptionValue};

/// Generation record stored alongside every saved field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub version: HierarchyVersion,
    /// Flattened parameter tree, in flatten order.
    #[serde(with = "ordered_pairs")]
    pub parameters: Vec<(String, OptionValue)>,
    pub seed: u64,
    pub app_version: String,
    /// UTC, RFC 3339.
    pub timestamp: String,
    pub algorithm: String,
    pub error_final: f64,
    pub iterations: usize,
    /// Subframe index for multi-frame outputs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<usize>,
}

impl Metadata {
    /// Current UTC time in RFC 3339 form, second precision.
    pub fn now_timestamp() -> String {
        chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
    }

    pub fn app_version() -> String {
        env!("CARGO_PKG_VERSION").to_string()
    }
}

/// `(path, value)` pairs as a JSON object, preserving order.
pub(crate) mod ordered_pairs {
    use serde::de::{Deserializer, MapAccess, Visitor};
    use serde::ser::{SerializeMap, Serializer};
    use std::fmt;

    use crate::hierarchy::OptionValue;

    pub fn serialize<S: Serializer>(pairs: &[(String, OptionValue)], s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(pairs.len()))?;
        for (k, v) in pairs {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }

    struct PairVisitor;

    impl<'de> Visitor<'de> for PairVisitor {
        type Value = Vec<(String, OptionValue)>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("an object of parameter values")
        }

        fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
            let mut out = Vec::with_capacity(access.size_hint().unwrap_or(0));
            while let Some(entry) = access.next_entry()? {
                out.push(entry);
            }
            Ok(out)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(String, OptionValue)>, D::Error> {
        d.deserialize_map(PairVisitor)
    }
}
