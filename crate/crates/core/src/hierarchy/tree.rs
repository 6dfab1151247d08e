use super::{HierarchyError, HierarchyVersion, OptionValue};

/// Leaf parameter with its name, tooltip and typed state.
#[derive(Debug, Clone, PartialEq)]
pub struct OptionNode {
    pub name: String,
    pub tooltip: String,
    pub enabled: bool,
    pub kind: OptionKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OptionKind {
    Integer {
        min: i64,
        max: i64,
        default: i64,
        value: i64,
    },
    Double {
        min: f64,
        max: f64,
        default: f64,
        value: f64,
    },
    Text {
        default: String,
        value: String,
    },
    Path {
        value: String,
    },
    PathList {
        values: Vec<String>,
    },
    Boolean {
        default: bool,
        value: bool,
    },
    /// Children are visible only while the value is true.
    BooleanWithChildren {
        default: bool,
        value: bool,
        children: Vec<OptionNode>,
    },
    /// Children of the selected possibility are injected under
    /// `<option>/<possibility>/`.
    Select {
        possibilities: Vec<Possibility>,
        default_index: usize,
        selected: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Possibility {
    pub name: String,
    pub tooltip: String,
    pub children: Vec<OptionNode>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Folder {
    pub name: String,
    pub tooltip: String,
    pub options: Vec<OptionNode>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Page {
    pub name: String,
    pub tooltip: String,
    pub folders: Vec<Folder>,
}

/// Root of a parameter hierarchy: pages, folders, options.
#[derive(Debug, Clone, PartialEq)]
pub struct OptionTree {
    pub version: HierarchyVersion,
    pub pages: Vec<Page>,
}

impl OptionNode {
    fn new(name: &str, tooltip: &str, kind: OptionKind) -> Self {
        Self {
            name: name.to_string(),
            tooltip: tooltip.to_string(),
            enabled: true,
            kind,
        }
    }

    pub fn integer(name: &str, tooltip: &str, min: i64, max: i64, default: i64) -> Self {
        assert!(min <= default && default <= max, "{name}: default outside bounds");
        Self::new(name, tooltip, OptionKind::Integer { min, max, default, value: default })
    }

    pub fn double(name: &str, tooltip: &str, min: f64, max: f64, default: f64) -> Self {
        assert!(min <= default && default <= max, "{name}: default outside bounds");
        Self::new(name, tooltip, OptionKind::Double { min, max, default, value: default })
    }

    pub fn text(name: &str, tooltip: &str, default: &str) -> Self {
        Self::new(
            name,
            tooltip,
            OptionKind::Text {
                default: default.to_string(),
                value: default.to_string(),
            },
        )
    }

    pub fn path(name: &str, tooltip: &str) -> Self {
        Self::new(name, tooltip, OptionKind::Path { value: String::new() })
    }

    pub fn path_list(name: &str, tooltip: &str) -> Self {
        Self::new(name, tooltip, OptionKind::PathList { values: Vec::new() })
    }

    pub fn boolean(name: &str, tooltip: &str, default: bool) -> Self {
        Self::new(name, tooltip, OptionKind::Boolean { default, value: default })
    }

    pub fn boolean_with_children(name: &str, tooltip: &str, default: bool, children: Vec<OptionNode>) -> Self {
        Self::new(
            name,
            tooltip,
            OptionKind::BooleanWithChildren {
                default,
                value: default,
                children,
            },
        )
    }

    pub fn select(name: &str, tooltip: &str, possibilities: Vec<Possibility>, default: &str) -> Self {
        let default_index = possibilities
            .iter()
            .position(|p| p.name == default)
            .unwrap_or_else(|| panic!("{name}: unknown default possibility {default}"));
        Self::new(
            name,
            tooltip,
            OptionKind::Select {
                possibilities,
                default_index,
                selected: default_index,
            },
        )
    }

    /// Current value.
    pub fn value(&self) -> OptionValue {
        match &self.kind {
            OptionKind::Integer { value, .. } => OptionValue::Int(*value),
            OptionKind::Double { value, .. } => OptionValue::Float(*value),
            OptionKind::Text { value, .. } | OptionKind::Path { value } => OptionValue::Text(value.clone()),
            OptionKind::PathList { values } => OptionValue::List(values.clone()),
            OptionKind::Boolean { value, .. } | OptionKind::BooleanWithChildren { value, .. } => {
                OptionValue::Bool(*value)
            }
            OptionKind::Select {
                possibilities,
                selected,
                ..
            } => OptionValue::Text(possibilities[*selected].name.clone()),
        }
    }

    pub fn default_value(&self) -> OptionValue {
        let mut fresh = self.clone();
        fresh.reset();
        fresh.value()
    }

    /// True for options whose value changes which children are visible.
    pub fn controls_visibility(&self) -> bool {
        matches!(
            self.kind,
            OptionKind::Select { .. } | OptionKind::BooleanWithChildren { .. }
        )
    }

    /// Restores this option and every descendant to its default.
    pub fn reset(&mut self) {
        self.enabled = true;
        match &mut self.kind {
            OptionKind::Integer { default, value, .. } => *value = *default,
            OptionKind::Double { default, value, .. } => *value = *default,
            OptionKind::Text { default, value } => *value = default.clone(),
            OptionKind::Path { value } => value.clear(),
            OptionKind::PathList { values } => values.clear(),
            OptionKind::Boolean { default, value } => *value = *default,
            OptionKind::BooleanWithChildren {
                default,
                value,
                children,
            } => {
                *value = *default;
                children.iter_mut().for_each(OptionNode::reset);
            }
            OptionKind::Select {
                possibilities,
                default_index,
                selected,
            } => {
                *selected = *default_index;
                possibilities.iter_mut().for_each(Possibility::reset);
            }
        }
    }

    /// Parses a textual value for this option (command-line `path=value`).
    pub fn parse_value(&self, text: &str) -> Option<OptionValue> {
        Some(match &self.kind {
            OptionKind::Integer { .. } => OptionValue::Int(text.trim().parse().ok()?),
            OptionKind::Double { .. } => OptionValue::Float(text.trim().parse().ok()?),
            OptionKind::Boolean { .. } | OptionKind::BooleanWithChildren { .. } => {
                OptionValue::Bool(match text.trim() {
                    "true" | "1" | "yes" | "on" => true,
                    "false" | "0" | "no" | "off" => false,
                    _ => return None,
                })
            }
            OptionKind::Text { .. } | OptionKind::Path { .. } | OptionKind::Select { .. } => {
                OptionValue::Text(text.to_string())
            }
            OptionKind::PathList { .. } => OptionValue::List(
                text.split(';')
                    .filter(|s| !s.is_empty())
                    .map(str::to_string)
                    .collect(),
            ),
        })
    }

    fn assign(&mut self, path: &str, v: &OptionValue) -> Result<(), HierarchyError> {
        let mismatch = || HierarchyError::TypeMismatch {
            path: path.to_string(),
        };
        match (&mut self.kind, v) {
            (OptionKind::Integer { min, max, value, .. }, OptionValue::Int(x)) => {
                if x < min || x > max {
                    return Err(HierarchyError::OutOfRange {
                        path: path.to_string(),
                        min: min.to_string(),
                        max: max.to_string(),
                    });
                }
                *value = *x;
            }
            (OptionKind::Double { min, max, value, .. }, OptionValue::Float(_) | OptionValue::Int(_)) => {
                let x = v.as_float().expect("numeric");
                if !(x >= *min && x <= *max) {
                    return Err(HierarchyError::OutOfRange {
                        path: path.to_string(),
                        min: format!("{min:?}"),
                        max: format!("{max:?}"),
                    });
                }
                *value = x;
            }
            (OptionKind::Text { value, .. } | OptionKind::Path { value }, OptionValue::Text(s)) => {
                *value = s.clone();
            }
            (OptionKind::PathList { values }, OptionValue::List(l)) => *values = l.clone(),
            (
                OptionKind::Boolean { value, .. } | OptionKind::BooleanWithChildren { value, .. },
                OptionValue::Bool(b),
            ) => *value = *b,
            (
                OptionKind::Select {
                    possibilities,
                    selected,
                    ..
                },
                OptionValue::Text(name),
            ) => {
                *selected = possibilities
                    .iter()
                    .position(|p| &p.name == name)
                    .ok_or_else(|| HierarchyError::InvalidChoice {
                        path: path.to_string(),
                        value: name.clone(),
                        allowed: possibilities
                            .iter()
                            .map(|p| p.name.as_str())
                            .collect::<Vec<_>>()
                            .join(", "),
                    })?;
            }
            _ => return Err(mismatch()),
        }
        Ok(())
    }
}

impl Possibility {
    pub fn new(name: &str, tooltip: &str, children: Vec<OptionNode>) -> Self {
        Self {
            name: name.to_string(),
            tooltip: tooltip.to_string(),
            children,
        }
    }

    pub fn reset(&mut self) {
        self.children.iter_mut().for_each(OptionNode::reset);
    }
}

impl Folder {
    pub fn new(name: &str, tooltip: &str, options: Vec<OptionNode>) -> Self {
        Self {
            name: name.to_string(),
            tooltip: tooltip.to_string(),
            options,
        }
    }
}

impl Page {
    pub fn new(name: &str, tooltip: &str, folders: Vec<Folder>) -> Self {
        Self {
            name: name.to_string(),
            tooltip: tooltip.to_string(),
            folders,
        }
    }
}

/// One hop of a resolved path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Page(usize),
    Folder(usize),
    Option(usize),
    Possibility(usize),
}

struct Located {
    steps: Vec<Step>,
    visible: bool,
}

fn children_of(node: &OptionNode) -> Option<&[OptionNode]> {
    match &node.kind {
        OptionKind::BooleanWithChildren { children, .. } => Some(children),
        _ => None,
    }
}

fn walk_options(opts: &[OptionNode], prefix: &str, visible_only: bool, out: &mut Vec<(String, OptionNode)>) {
    for o in opts {
        let path = format!("{prefix}{}", o.name);
        out.push((path.clone(), o.clone()));
        match &o.kind {
            OptionKind::BooleanWithChildren { value, children, .. } => {
                if *value || !visible_only {
                    walk_options(children, &format!("{path}/"), visible_only, out);
                }
            }
            OptionKind::Select {
                possibilities,
                selected,
                ..
            } => {
                for (i, p) in possibilities.iter().enumerate() {
                    if i == *selected || !visible_only {
                        walk_options(&p.children, &format!("{path}/{}/", p.name), visible_only, out);
                    }
                }
            }
            _ => {}
        }
    }
}

impl OptionTree {
    pub fn new(version: HierarchyVersion, pages: Vec<Page>) -> Self {
        Self { version, pages }
    }

    fn locate(&self, path: &str) -> Result<Located, HierarchyError> {
        let unknown = || HierarchyError::UnknownPath {
            path: path.to_string(),
        };
        let trimmed = path.trim_matches('/');
        if trimmed.is_empty() {
            return Ok(Located {
                steps: Vec::new(),
                visible: true,
            });
        }
        let mut segs = trimmed.split('/');
        let mut steps = Vec::new();

        let seg = segs.next().ok_or_else(unknown)?;
        let pi = self.pages.iter().position(|p| p.name == seg).ok_or_else(unknown)?;
        steps.push(Step::Page(pi));
        let Some(seg) = segs.next() else {
            return Ok(Located { steps, visible: true });
        };
        let folder_idx = self.pages[pi]
            .folders
            .iter()
            .position(|f| f.name == seg)
            .ok_or_else(unknown)?;
        steps.push(Step::Folder(folder_idx));
        let mut opts: &[OptionNode] = &self.pages[pi].folders[folder_idx].options;
        let mut visible = true;
        let mut current: Option<&OptionNode> = None;
        let mut in_possibility = false;
        for seg in segs {
            match current {
                // expecting an option in `opts`
                None => {
                    let oi = opts.iter().position(|o| o.name == seg).ok_or_else(unknown)?;
                    steps.push(Step::Option(oi));
                    current = Some(&opts[oi]);
                    in_possibility = false;
                }
                Some(node) => match &node.kind {
                    OptionKind::Select {
                        possibilities,
                        selected,
                        ..
                    } if !in_possibility => {
                        let pi = possibilities.iter().position(|p| p.name == seg).ok_or_else(unknown)?;
                        steps.push(Step::Possibility(pi));
                        visible &= pi == *selected;
                        opts = &possibilities[pi].children;
                        current = None;
                        in_possibility = true;
                        // the next segment names a child option
                        continue;
                    }
                    _ => {
                        let children = children_of(node).ok_or_else(unknown)?;
                        if let OptionKind::BooleanWithChildren { value, .. } = node.kind {
                            visible &= value;
                        }
                        let oi = children.iter().position(|o| o.name == seg).ok_or_else(unknown)?;
                        steps.push(Step::Option(oi));
                        current = Some(&children[oi]);
                    }
                },
            }
        }
        Ok(Located { steps, visible })
    }

    fn option_at(&self, steps: &[Step]) -> Option<&OptionNode> {
        let (Step::Page(p), Step::Folder(f)) = (*steps.first()?, *steps.get(1)?) else {
            return None;
        };
        let mut opts: &[OptionNode] = &self.pages[p].folders[f].options;
        let mut node: Option<&OptionNode> = None;
        for step in &steps[2..] {
            match *step {
                Step::Option(i) => {
                    let n = &opts[i];
                    node = Some(n);
                    if let OptionKind::BooleanWithChildren { children, .. } = &n.kind {
                        opts = children;
                    }
                }
                Step::Possibility(i) => {
                    let OptionKind::Select { possibilities, .. } = &node?.kind else {
                        return None;
                    };
                    opts = &possibilities[i].children;
                    node = None;
                }
                _ => return None,
            }
        }
        node
    }

    fn option_at_mut(&mut self, steps: &[Step]) -> Option<&mut OptionNode> {
        let (Step::Page(p), Step::Folder(f)) = (*steps.first()?, *steps.get(1)?) else {
            return None;
        };
        let rest = &steps[2..];
        let Step::Option(first) = *rest.first()? else {
            return None;
        };
        let mut node = &mut self.pages[p].folders[f].options[first];
        let mut i = 1;
        while i < rest.len() {
            node = match rest[i] {
                Step::Possibility(pi) => {
                    let Step::Option(ci) = *rest.get(i + 1)? else {
                        return None;
                    };
                    i += 1;
                    match &mut node.kind {
                        OptionKind::Select { possibilities, .. } => &mut possibilities[pi].children[ci],
                        _ => return None,
                    }
                }
                Step::Option(ci) => match &mut node.kind {
                    OptionKind::BooleanWithChildren { children, .. } => &mut children[ci],
                    _ => return None,
                },
                _ => return None,
            };
            i += 1;
        }
        Some(node)
    }

    /// The option at `path`, visible or not.
    pub fn node(&self, path: &str) -> Result<&OptionNode, HierarchyError> {
        let loc = self.locate(path)?;
        self.option_at(&loc.steps).ok_or_else(|| HierarchyError::NotAnOption {
            path: path.to_string(),
        })
    }

    pub fn exists(&self, path: &str) -> bool {
        self.locate(path).is_ok()
    }

    pub fn is_visible(&self, path: &str) -> Result<bool, HierarchyError> {
        Ok(self.locate(path)?.visible)
    }

    pub fn get(&self, path: &str) -> Result<OptionValue, HierarchyError> {
        let loc = self.locate(path)?;
        let node = self.option_at(&loc.steps).ok_or_else(|| HierarchyError::NotAnOption {
            path: path.to_string(),
        })?;
        if !loc.visible {
            return Err(HierarchyError::HiddenPath {
                path: path.to_string(),
            });
        }
        Ok(node.value())
    }

    /// Stores `value` at a visible option. Rejected values leave the tree unchanged.
    pub fn set(&mut self, path: &str, value: impl Into<OptionValue>) -> Result<(), HierarchyError> {
        let value = value.into();
        let loc = self.locate(path)?;
        if !loc.visible {
            return Err(HierarchyError::HiddenPath {
                path: path.to_string(),
            });
        }
        let node = self.option_at_mut(&loc.steps).ok_or_else(|| HierarchyError::NotAnOption {
            path: path.to_string(),
        })?;
        if !node.enabled {
            return Err(HierarchyError::Disabled {
                path: path.to_string(),
            });
        }
        node.assign(path, &value)
    }

    /// Parses `text` according to the option type at `path`, then sets it.
    pub fn set_str(&mut self, path: &str, text: &str) -> Result<(), HierarchyError> {
        let value = self.parse_value(path, text)?;
        self.set(path, value)
    }

    pub fn parse_value(&self, path: &str, text: &str) -> Result<OptionValue, HierarchyError> {
        self.node(path)?
            .parse_value(text)
            .ok_or_else(|| HierarchyError::TypeMismatch {
                path: path.to_string(),
            })
    }

    pub fn set_enabled(&mut self, path: &str, enabled: bool) -> Result<(), HierarchyError> {
        let loc = self.locate(path)?;
        let node = self.option_at_mut(&loc.steps).ok_or_else(|| HierarchyError::NotAnOption {
            path: path.to_string(),
        })?;
        node.enabled = enabled;
        Ok(())
    }

    /// Restores the node at `path` and all of its descendants to defaults.
    /// The empty path names the root.
    pub fn reset(&mut self, path: &str) -> Result<(), HierarchyError> {
        let loc = self.locate(path)?;
        let reset_opts = |opts: &mut Vec<OptionNode>| opts.iter_mut().for_each(OptionNode::reset);
        match loc.steps.as_slice() {
            [] => self
                .pages
                .iter_mut()
                .flat_map(|p| p.folders.iter_mut())
                .for_each(|f| reset_opts(&mut f.options)),
            [Step::Page(p)] => self.pages[*p]
                .folders
                .iter_mut()
                .for_each(|f| reset_opts(&mut f.options)),
            [Step::Page(p), Step::Folder(f)] => reset_opts(&mut self.pages[*p].folders[*f].options),
            [.., Step::Possibility(pi)] => {
                let parent = &loc.steps[..loc.steps.len() - 1];
                let node = self.option_at_mut(parent).expect("located");
                if let OptionKind::Select { possibilities, .. } = &mut node.kind {
                    possibilities[*pi].reset();
                }
            }
            _ => self.option_at_mut(&loc.steps).expect("located").reset(),
        }
        Ok(())
    }

    /// Every option with its path, depth-first in schema order. When
    /// `visible_only` is false, options under inactive possibilities and false
    /// booleans are included too.
    pub fn options(&self, visible_only: bool) -> Vec<(String, OptionNode)> {
        let mut out = Vec::new();
        for page in &self.pages {
            for folder in &page.folders {
                walk_options(
                    &folder.options,
                    &format!("{}/{}/", page.name, folder.name),
                    visible_only,
                    &mut out,
                );
            }
        }
        out
    }

    /// Visible options as `(path, value)`, depth-first in schema order.
    pub fn flatten(&self) -> Vec<(String, OptionValue)> {
        self.options(true)
            .into_iter()
            .map(|(p, o)| (p, o.value()))
            .collect()
    }

    /// Visible option paths whose name or tooltip contains `query`,
    /// case-insensitively.
    pub fn search(&self, query: &str) -> Vec<String> {
        let q = query.to_lowercase();
        self.options(true)
            .into_iter()
            .filter(|(_, o)| o.name.to_lowercase().contains(&q) || o.tooltip.to_lowercase().contains(&q))
            .map(|(p, _)| p)
            .collect()
    }

    /// Applies `(path, value)` pairs: options that control visibility first
    /// (repeating until nested ones become reachable), then the rest in order.
    pub fn apply(&mut self, pairs: &[(String, OptionValue)]) -> Result<(), HierarchyError> {
        let mut controllers = Vec::new();
        let mut plain = Vec::new();
        for (path, value) in pairs {
            if self.node(path)?.controls_visibility() {
                controllers.push((path, value));
            } else {
                plain.push((path, value));
            }
        }
        while !controllers.is_empty() {
            let before = controllers.len();
            let mut pending = Vec::new();
            for (path, value) in controllers {
                if self.is_visible(path)? {
                    self.set(path, value.clone())?;
                } else {
                    pending.push((path, value));
                }
            }
            if pending.len() == before {
                return Err(HierarchyError::HiddenPath {
                    path: pending[0].0.clone(),
                });
            }
            controllers = pending;
        }
        for (path, value) in plain {
            self.set(path, value.clone())?;
        }
        Ok(())
    }

    /// Builds a tree from `schema` defaults plus flattened pairs.
    pub fn from_flat(schema: &OptionTree, pairs: &[(String, OptionValue)]) -> Result<Self, HierarchyError> {
        let mut tree = schema.clone();
        tree.reset("")?;
        tree.apply(pairs)?;
        Ok(tree)
    }
}
