//! Plain-text instance files.
//!
//! ```text
//! # optional comments
//! dim 2
//! class 0
//! set a
//! 1 0 <= 4
//! -1 0 <= 0
//! set b
//! 1 1 = 1/2
//! set everything
//! ```
//!
//! `set <id>` with no constraint lines is the whole space. `class <label>`
//! lines split the sets into color classes; a file without them is a single
//! family. Values are integers or `p/q`. Serialisation is canonical, so
//! parse → serialise → parse is the identity.

use std::fmt::Write as _;

use crate::colorful::ColorClasses;
use crate::error::{Error, Result};
use crate::geometry::{ConvexSet, LinearConstraint, Relation};
use crate::scalar::{self, to_literal};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub id: String,
    pub set: ConvexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub dim: usize,
    /// `None` for a single uncoloured family.
    pub class_labels: Option<Vec<String>>,
    pub classes: Vec<Vec<Member>>,
}

impl Instance {
    pub fn monochromatic(dim: usize, family: &[ConvexSet]) -> Self {
        let members = family
            .iter()
            .enumerate()
            .map(|(j, s)| Member {
                id: format!("s{j}"),
                set: s.clone(),
            })
            .collect();
        Instance {
            dim,
            class_labels: None,
            classes: vec![members],
        }
    }

    pub fn colorful(classes: &ColorClasses) -> Self {
        let members = classes
            .classes()
            .iter()
            .enumerate()
            .map(|(i, class)| {
                class
                    .iter()
                    .enumerate()
                    .map(|(j, s)| Member {
                        id: format!("c{i}s{j}"),
                        set: s.clone(),
                    })
                    .collect()
            })
            .collect();
        Instance {
            dim: classes.dim(),
            class_labels: Some((0..classes.classes().len()).map(|i| i.to_string()).collect()),
            classes: members,
        }
    }

    pub fn is_colorful(&self) -> bool {
        self.class_labels.is_some()
    }

    /// All sets, in file order.
    pub fn family(&self) -> Vec<ConvexSet> {
        self.classes
            .iter()
            .flatten()
            .map(|m| m.set.clone())
            .collect()
    }

    pub fn to_color_classes(&self) -> Result<ColorClasses> {
        if !self.is_colorful() {
            return Err(Error::malformed("instance has no color classes"));
        }
        let classes = self
            .classes
            .iter()
            .map(|c| c.iter().map(|m| m.set.clone()).collect())
            .collect();
        ColorClasses::new(self.dim, classes)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "dim {}", self.dim).unwrap();
        for (i, class) in self.classes.iter().enumerate() {
            if let Some(labels) = &self.class_labels {
                writeln!(out, "class {}", labels[i]).unwrap();
            }
            for m in class {
                writeln!(out, "set {}", m.id).unwrap();
                for c in m.set.constraints() {
                    for a in &c.coefficients {
                        write!(out, "{} ", to_literal(a)).unwrap();
                    }
                    writeln!(out, "{} {}", c.relation, to_literal(&c.rhs)).unwrap();
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::default().run(text)
    }
}

#[derive(Default)]
struct Parser {
    dim: Option<usize>,
    labels: Vec<String>,
    classes: Vec<Vec<Member>>,
    current: Option<(String, Vec<LinearConstraint>)>,
}

impl Parser {
    fn flush(&mut self, line: usize) -> Result<()> {
        if let Some((id, constraints)) = self.current.take() {
            let dim = self.dim.expect("dim precedes sets");
            let set = ConvexSet::new(dim, constraints).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
            if self.classes.is_empty() {
                self.classes.push(Vec::new());
            }
            self.classes.last_mut().unwrap().push(Member { id, set });
        }
        Ok(())
    }

    fn run(mut self, text: &str) -> Result<Instance> {
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let err = |message: String| Error::Parse { line, message };
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();

            let Some(dim) = self.dim else {
                match tokens.as_slice() {
                    ["dim", d] => {
                        let d: usize = d.parse().map_err(|_| err(format!("bad dimension {d:?}")))?;
                        if d == 0 {
                            return Err(err("dimension must be positive".into()));
                        }
                        self.dim = Some(d);
                        continue;
                    }
                    _ => return Err(err("expected header `dim <d>`".into())),
                }
            };

            match tokens.as_slice() {
                ["dim", ..] => return Err(err("repeated `dim` header".into())),
                ["class", label] => {
                    self.flush(line)?;
                    if self.labels.is_empty() && !self.classes.is_empty() {
                        return Err(err("sets before the first `class` line".into()));
                    }
                    self.labels.push(label.to_string());
                    self.classes.push(Vec::new());
                }
                ["set", id] => {
                    self.flush(line)?;
                    self.current = Some((id.to_string(), Vec::new()));
                }
                ["class", ..] | ["set", ..] => {
                    return Err(err(format!("expected `{} <id>`", tokens[0])))
                }
                _ => {
                    let Some((_, constraints)) = self.current.as_mut() else {
                        return Err(err("constraint outside a `set` block".into()));
                    };
                    if tokens.len() != dim + 2 {
                        return Err(err(format!(
                            "constraint needs {} coefficients, a relation and a rhs",
                            dim
                        )));
                    }
                    let value = |t: &str| scalar::parse(t).map_err(|e| err(e.to_string()));
                    let coefficients = tokens[..dim]
                        .iter()
                        .map(|t| value(t))
                        .collect::<Result<Vec<_>>>()?;
                    let relation = match tokens[dim] {
                        "<=" => Relation::LessEq,
                        "=" => Relation::Eq,
                        other => return Err(err(format!("unknown relation {other:?}"))),
                    };
                    let rhs = value(tokens[dim + 1])?;
                    constraints.push(LinearConstraint::new(coefficients, relation, rhs));
                }
            }
        }
        let Some(dim) = self.dim else {
            return Err(Error::Parse {
                line: last_line.max(1),
                message: "missing `dim` header".into(),
            });
        };
        self.flush(last_line)?;
        let class_labels = (!self.labels.is_empty()).then_some(self.labels);
        if self.classes.is_empty() {
            self.classes.push(Vec::new());
        }
        Ok(Instance {
            dim,
            class_labels,
            classes: self.classes,
        })
    }
}
