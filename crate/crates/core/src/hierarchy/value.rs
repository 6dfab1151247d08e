use std::fmt;

use serde::{Deserialize, Serialize};

/// Value carried by an option. Typing comes from the option it is applied to:
/// select, text and path options all take [`OptionValue::Text`], and double
/// options accept integers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OptionValue {
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
    List(Vec<String>),
}

impl OptionValue {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            OptionValue::Bool(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            OptionValue::Int(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_float(&self) -> Option<f64> {
        match self {
            OptionValue::Float(v) => Some(*v),
            OptionValue::Int(v) => Some(*v as f64),
            _ => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            OptionValue::Text(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[String]> {
        match self {
            OptionValue::List(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for OptionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OptionValue::Bool(b) => write!(f, "{b}"),
            OptionValue::Int(v) => write!(f, "{v}"),
            OptionValue::Float(v) => write!(f, "{v:?}"),
            OptionValue::Text(s) => f.write_str(s),
            OptionValue::List(v) => f.write_str(&v.join(";")),
        }
    }
}

impl From<bool> for OptionValue {
    fn from(v: bool) -> Self {
        OptionValue::Bool(v)
    }
}

impl From<i64> for OptionValue {
    fn from(v: i64) -> Self {
        OptionValue::Int(v)
    }
}

impl From<f64> for OptionValue {
    fn from(v: f64) -> Self {
        OptionValue::Float(v)
    }
}

impl From<&str> for OptionValue {
    fn from(v: &str) -> Self {
        OptionValue::Text(v.to_string())
    }
}

impl From<String> for OptionValue {
    fn from(v: String) -> Self {
        OptionValue::Text(v)
    }
}

/// Semantic version of a parameter hierarchy. Ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HierarchyVersion {
    pub major: u32,
    pub minor: u32,
    pub patch: u32,
}

impl HierarchyVersion {
    pub const fn new(major: u32, minor: u32, patch: u32) -> Self {
        Self {
            major,
            minor,
            patch,
        }
    }
}

impl fmt::Display for HierarchyVersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{}", self.major, self.minor, self.patch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn version_order_is_lexicographic() {
        let v = |a, b, c| HierarchyVersion::new(a, b, c);
        assert!(v(1, 0, 0) < v(1, 0, 1));
        assert!(v(1, 9, 9) < v(2, 0, 0));
        assert!(v(0, 10, 0) > v(0, 9, 99));
    }

    #[test]
    fn json_shapes_map_to_variants() {
        let parse = |s: &str| serde_json::from_str::<OptionValue>(s).unwrap();
        assert_eq!(parse("true"), OptionValue::Bool(true));
        assert_eq!(parse("3"), OptionValue::Int(3));
        assert_eq!(parse("3.0"), OptionValue::Float(3.0));
        assert_eq!(parse("\"gs\""), OptionValue::Text("gs".into()));
        assert_eq!(parse("[\"a\",\"b\"]"), OptionValue::List(vec!["a".into(), "b".into()]));
        assert_eq!(serde_json::to_string(&OptionValue::Float(2.0)).unwrap(), "2.0");
    }
}
