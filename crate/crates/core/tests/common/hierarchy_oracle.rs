//! Flat model of the parameter tree for state-machine testing. Visibility is
//! recomputed from scratch on every query from explicit ancestor conditions,
//! independently of the tree's own path resolution.

use std::collections::HashMap;

use hologen_core::hierarchy::{HierarchyError, OptionKind, OptionNode, OptionTree, OptionValue};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub enum Kind {
    Int { min: i64, max: i64 },
    Float { min: f64, max: f64 },
    Text,
    List,
    Bool,
    Select(Vec<String>),
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub path: String,
    pub kind: Kind,
    pub default: OptionValue,
    /// Every `(controller path, required value)` on the way from the root.
    pub conditions: Vec<(String, OptionValue)>,
}

pub struct Oracle {
    pub entries: Vec<Entry>,
    pub values: HashMap<String, OptionValue>,
    /// Page, folder and possibility paths.
    pub containers: Vec<String>,
}

fn kind_of(node: &OptionNode) -> (Kind, OptionValue) {
    match &node.kind {
        OptionKind::Integer { min, max, default, .. } => (Kind::Int { min: *min, max: *max }, OptionValue::Int(*default)),
        OptionKind::Double { min, max, default, .. } => {
            (Kind::Float { min: *min, max: *max }, OptionValue::Float(*default))
        }
        OptionKind::Text { default, .. } => (Kind::Text, OptionValue::Text(default.clone())),
        OptionKind::Path { .. } => (Kind::Text, OptionValue::Text(String::new())),
        OptionKind::PathList { .. } => (Kind::List, OptionValue::List(vec![])),
        OptionKind::Boolean { default, .. } | OptionKind::BooleanWithChildren { default, .. } => {
            (Kind::Bool, OptionValue::Bool(*default))
        }
        OptionKind::Select {
            possibilities,
            default_index,
            ..
        } => (
            Kind::Select(possibilities.iter().map(|p| p.name.clone()).collect()),
            OptionValue::Text(possibilities[*default_index].name.clone()),
        ),
    }
}

impl Oracle {
    pub fn new(schema: &OptionTree) -> Self {
        let mut o = Oracle {
            entries: vec![],
            values: HashMap::new(),
            containers: vec![],
        };
        for page in &schema.pages {
            o.containers.push(page.name.clone());
            for folder in &page.folders {
                let prefix = format!("{}/{}", page.name, folder.name);
                o.containers.push(prefix.clone());
                o.add(&folder.options, &prefix, &[]);
            }
        }
        for e in &o.entries {
            o.values.insert(e.path.clone(), e.default.clone());
        }
        o
    }

    fn add(&mut self, nodes: &[OptionNode], prefix: &str, conds: &[(String, OptionValue)]) {
        for node in nodes {
            let path = format!("{prefix}/{}", node.name);
            let (kind, default) = kind_of(node);
            self.entries.push(Entry {
                path: path.clone(),
                kind,
                default,
                conditions: conds.to_vec(),
            });
            match &node.kind {
                OptionKind::BooleanWithChildren { children, .. } => {
                    let mut c = conds.to_vec();
                    c.push((path.clone(), OptionValue::Bool(true)));
                    self.add(children, &path, &c);
                }
                OptionKind::Select { possibilities, .. } => {
                    for p in possibilities {
                        let ppath = format!("{path}/{}", p.name);
                        self.containers.push(ppath.clone());
                        let mut c = conds.to_vec();
                        c.push((path.clone(), OptionValue::Text(p.name.clone())));
                        self.add(&p.children, &ppath, &c);
                    }
                }
                _ => {}
            }
        }
    }

    fn entry(&self, path: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.path == path)
    }

    pub fn visible(&self, e: &Entry) -> bool {
        e.conditions.iter().all(|(p, v)| &self.values[p] == v)
    }

    pub fn flatten(&self) -> Vec<(String, OptionValue)> {
        self.entries
            .iter()
            .filter(|e| self.visible(e))
            .map(|e| (e.path.clone(), self.values[&e.path].clone()))
            .collect()
    }

    /// Whether a set of `v` at `path` is legal; stores it if so.
    pub fn set(&mut self, path: &str, v: &OptionValue) -> bool {
        let Some(e) = self.entry(path) else { return false };
        if !self.visible(e) {
            return false;
        }
        let stored = match (&e.kind, v) {
            (Kind::Int { min, max }, OptionValue::Int(x)) if min <= x && x <= max => v.clone(),
            (Kind::Float { min, max }, OptionValue::Float(x)) if *min <= *x && *x <= *max => v.clone(),
            (Kind::Float { min, max }, OptionValue::Int(x)) if *min <= *x as f64 && *x as f64 <= *max => {
                OptionValue::Float(*x as f64)
            }
            (Kind::Text, OptionValue::Text(_)) | (Kind::List, OptionValue::List(_)) | (Kind::Bool, OptionValue::Bool(_)) => {
                v.clone()
            }
            (Kind::Select(choices), OptionValue::Text(s)) if choices.contains(s) => v.clone(),
            _ => return false,
        };
        self.values.insert(path.to_string(), stored);
        true
    }

    pub fn reset(&mut self, path: &str) -> bool {
        let known = path.is_empty() || self.entry(path).is_some() || self.containers.iter().any(|c| c == path);
        if !known {
            return false;
        }
        let prefix = format!("{path}/");
        for e in &self.entries {
            if path.is_empty() || e.path == path || e.path.starts_with(&prefix) {
                self.values.insert(e.path.clone(), e.default.clone());
            }
        }
        true
    }
}

fn random_value(rng: &mut ChaCha8Rng, kind: &Kind) -> OptionValue {
    let roll: f64 = rng.gen();
    match kind {
        Kind::Int { min, max } => match roll {
            r if r < 0.7 => OptionValue::Int(rng.gen_range(*min..=*max)),
            r if r < 0.8 => OptionValue::Int(min.saturating_sub(1)),
            r if r < 0.9 => OptionValue::Int(max.saturating_add(1)),
            _ => OptionValue::Float(0.5),
        },
        Kind::Float { min, max } => match roll {
            r if r < 0.7 => OptionValue::Float(rng.gen_range(*min..=*max)),
            r if r < 0.8 => OptionValue::Float(max + 1.0),
            r if r < 0.85 => OptionValue::Float(f64::NAN),
            r if r < 0.9 => OptionValue::Int(min.ceil() as i64),
            _ => OptionValue::Bool(true),
        },
        Kind::Text => match roll {
            r if r < 0.85 => OptionValue::Text(format!("t{}", rng.gen_range(0..100))),
            _ => OptionValue::Int(1),
        },
        Kind::List => OptionValue::List((0..rng.gen_range(0..3)).map(|i| format!("f{i}.png")).collect()),
        Kind::Bool => match roll {
            r if r < 0.9 => OptionValue::Bool(rng.gen()),
            _ => OptionValue::Text("true".into()),
        },
        Kind::Select(choices) => match roll {
            r if r < 0.85 => OptionValue::Text(choices.choose(rng).unwrap().clone()),
            _ => OptionValue::Text("no-such-choice".into()),
        },
    }
}

fn compare(tree: &OptionTree, oracle: &Oracle, step: usize) -> Result<(), String> {
    let flat = tree.flatten();
    let expected = oracle.flatten();
    if flat != expected {
        return Err(format!("step {step}: flatten differs\n tree:   {flat:?}\n oracle: {expected:?}"));
    }
    for e in &oracle.entries {
        match (oracle.visible(e), tree.get(&e.path)) {
            (true, Ok(v)) if v == oracle.values[&e.path] => {}
            (false, Err(HierarchyError::HiddenPath { .. })) => {}
            (vis, got) => return Err(format!("step {step}: get({}) = {got:?}, oracle visible={vis}", e.path)),
        }
    }
    Ok(())
}

/// Runs `ops` random set / select / reset operations on `schema`, checking
/// the tree against the oracle after each one.
pub fn run_state_machine(schema: &OptionTree, seed: u64, ops: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tree = schema.clone();
    let mut oracle = Oracle::new(schema);
    compare(&tree, &oracle, 0)?;
    let selects: Vec<Entry> = oracle
        .entries
        .iter()
        .filter(|e| matches!(e.kind, Kind::Select(_) | Kind::Bool))
        .cloned()
        .collect();
    for step in 1..=ops {
        let roll: f64 = rng.gen();
        let (desc, tree_ok, oracle_ok) = if roll < 0.35 {
            // flip a controller: select or boolean, possibly hidden
            let e = selects.choose(&mut rng).unwrap().clone();
            let v = random_value(&mut rng, &e.kind);
            let t = tree.set(&e.path, v.clone()).is_ok();
            (format!("set {} = {v:?}", e.path), t, oracle.set(&e.path, &v))
        } else if roll < 0.8 {
            let e = oracle.entries.choose(&mut rng).unwrap().clone();
            let v = random_value(&mut rng, &e.kind);
            let t = tree.set(&e.path, v.clone()).is_ok();
            (format!("set {} = {v:?}", e.path), t, oracle.set(&e.path, &v))
        } else if roll < 0.83 {
            let p = ["nope", "projector/nope", "algorithm/run/algorithm/zz/iterations"]
                .choose(&mut rng)
                .unwrap()
                .to_string();
            let t = tree.set(&p, 1i64).is_ok();
            (format!("set {p}"), t, oracle.set(&p, &OptionValue::Int(1)))
        } else {
            let mut candidates: Vec<String> = oracle.containers.clone();
            candidates.extend(oracle.entries.iter().map(|e| e.path.clone()));
            candidates.push(String::new());
            candidates.push("projector/missing".into());
            let p = candidates.choose(&mut rng).unwrap().clone();
            let t = tree.reset(&p).is_ok();
            (format!("reset '{p}'"), t, oracle.reset(&p))
        };
        if tree_ok != oracle_ok {
            return Err(format!("step {step}: {desc}: tree ok={tree_ok}, oracle ok={oracle_ok}"));
        }
        compare(&tree, &oracle, step)?;
    }
    Ok(())
}
