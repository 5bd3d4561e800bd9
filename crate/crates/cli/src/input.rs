//! The JSON input document and its resolution into library objects.

use std::collections::BTreeMap;
use std::fmt;

use orbisect::group::FiniteGroup;
use orbisect::groupoid::{FiniteGroupoid, GSet};
use orbisect::Limits;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, GroupSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, ActionSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groupoids: BTreeMap<String, GroupoidSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tasks: Vec<Task>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    /// Multiplication table; `rows[a][b] = a·b`.
    Table {
        rows: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    /// Permutations of `0..degree`; the group they generate.
    Permutations { degree: usize, generators: Vec<Vec<usize>> },
    /// A named family: `cyclic`, `dihedral` (order `2n`), `symmetric`,
    /// `quaternion`, `trivial`.
    Catalog {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub group: String,
    pub points: Vec<String>,
    /// Images of generating elements, named by label (or index).
    pub generators: Vec<GeneratorImage>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorImage {
    pub element: String,
    pub permutation: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupoidSpec {
    /// Translation groupoid of a named action.
    Translation(String),
    /// One-object groupoid of a named group.
    Group(String),
    /// Only identity arrows, one object per label.
    Unit(Vec<String>),
    Explicit(ExplicitGroupoid),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitGroupoid {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    /// `[after, before, after∘before]` by arrow index, for every composable pair.
    pub compose: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    Sectors {
        groupoid: String,
    },
    Reduced {
        groupoid: String,
    },
    Morita {
        left: String,
        right: String,
    },
    Homology {
        groupoid: String,
        degree: usize,
    },
    Pi {
        groupoid: String,
        base: String,
        n: usize,
    },
    ExtendedPi {
        groupoid: String,
        base: String,
        group: Vec<String>,
        n: usize,
    },
    Stable {
        groupoid: String,
        n: usize,
    },
    Tomdieck {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        group: Option<String>,
        action: String,
        n: usize,
    },
    VerifyInvariance {
        left: String,
        right: String,
    },
    OrbitDiagram {
        groupoid: String,
        base: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputError {
    Parse(String),
    /// Location in the document and the library error.
    Invalid {
        path: String,
        error: orbisect::Error,
    },
    Dangling {
        path: String,
        name: String,
    },
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Parse(msg) => write!(f, "parse error: {msg}"),
            InputError::Invalid { path, error } => write!(f, "{path}: {error}"),
            InputError::Dangling { path, name } => write!(f, "{path}: unknown name '{name}'"),
        }
    }
}

impl InputError {
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            InputError::Invalid {
                error: orbisect::Error::OrderCapExceeded { .. } | orbisect::Error::SizeBudgetExceeded { .. },
                ..
            }
        )
    }
}

pub fn parse(text: &str) -> Result<InputDocument, InputError> {
    let doc: InputDocument = serde_json::from_str(text).map_err(|e| InputError::Parse(e.to_string()))?;
    if doc.schema != SCHEMA_VERSION {
        return Err(InputError::Parse(format!(
            "unsupported schema version {} (expected {SCHEMA_VERSION})",
            doc.schema
        )));
    }
    Ok(doc)
}

pub fn render(doc: &InputDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

/// Every named object, built and checked.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub actions: BTreeMap<String, GSet>,
    pub groupoids: BTreeMap<String, FiniteGroupoid>,
    /// Translation groupoids remember their action.
    pub translation_of: BTreeMap<String, String>,
    /// Acting group of each action, by name.
    pub group_of: BTreeMap<String, String>,
}

fn invalid(path: String) -> impl FnOnce(orbisect::Error) -> InputError {
    move |error| InputError::Invalid { path, error }
}

fn build_group(spec: &GroupSpec, limits: &Limits, path: &str) -> Result<FiniteGroup, InputError> {
    let cap = |order: usize| {
        if order > limits.order_cap {
            Err(InputError::Invalid {
                path: path.to_string(),
                error: orbisect::Error::OrderCapExceeded {
                    order,
                    cap: limits.order_cap,
                },
            })
        } else {
            Ok(())
        }
    };
    match spec {
        GroupSpec::Table { rows, labels } => {
            cap(rows.len())?;
            FiniteGroup::from_table(rows.clone(), labels.clone()).map_err(invalid(format!("{path}.table")))
        }
        GroupSpec::Permutations { degree, generators } => {
            FiniteGroup::from_permutations(*degree, generators, limits.order_cap)
                .map_err(invalid(format!("{path}.permutations")))
        }
        GroupSpec::Catalog { name, n } => {
            let need = |n: &Option<usize>| {
                n.filter(|&k| k >= 1).ok_or_else(|| InputError::Invalid {
                    path: format!("{path}.catalog.n"),
                    error: orbisect::Error::Invalid(format!("'{name}' needs a positive n")),
                })
            };
            let g = match name.as_str() {
                "trivial" => FiniteGroup::trivial(),
                "quaternion" => FiniteGroup::quaternion(),
                "cyclic" => {
                    let k = need(n)?;
                    cap(k)?;
                    FiniteGroup::cyclic(k)
                }
                "dihedral" => {
                    let k = need(n)?;
                    cap(2 * k)?;
                    FiniteGroup::dihedral(k)
                }
                "symmetric" => {
                    let k = need(n)?;
                    cap((1..=k).try_fold(1usize, |a, i| a.checked_mul(i)).unwrap_or(usize::MAX))?;
                    FiniteGroup::symmetric(k)
                }
                other => {
                    return Err(InputError::Invalid {
                        path: format!("{path}.catalog.name"),
                        error: orbisect::Error::Invalid(format!("unknown group family '{other}'")),
                    })
                }
            };
            Ok(g)
        }
    }
}

/// Finds an element by label, falling back to a numeric index.
pub fn element_by_name(g: &FiniteGroup, name: &str) -> Option<usize> {
    g.elements()
        .find(|&e| g.label(e) == name)
        .or_else(|| name.parse().ok().filter(|&i| i < g.order()))
}

/// Finds an object by label, falling back to a numeric index.
pub fn object_by_name(g: &FiniteGroupoid, name: &str) -> Option<usize> {
    g.object_by_label(name)
        .or_else(|| name.parse().ok().filter(|&i| i < g.num_objects()))
}

pub fn arrow_by_name(g: &FiniteGroupoid, name: &str) -> Option<usize> {
    g.arrow_by_label(name)
        .or_else(|| name.parse().ok().filter(|&i| i < g.num_arrows()))
}

pub fn resolve(doc: &InputDocument, limits: &Limits) -> Result<Resolved, InputError> {
    let mut groups = BTreeMap::new();
    for (name, spec) in &doc.groups {
        groups.insert(name.clone(), build_group(spec, limits, &format!("groups.{name}"))?);
    }
    let mut actions = BTreeMap::new();
    for (name, spec) in &doc.actions {
        let path = format!("actions.{name}");
        let g = groups.get(&spec.group).ok_or_else(|| InputError::Dangling {
            path: format!("{path}.group"),
            name: spec.group.clone(),
        })?;
        let mut images = Vec::new();
        for (i, gen) in spec.generators.iter().enumerate() {
            let e = element_by_name(g, &gen.element).ok_or_else(|| InputError::Dangling {
                path: format!("{path}.generators[{i}].element"),
                name: gen.element.clone(),
            })?;
            images.push((e, gen.permutation.clone()));
        }
        let set = GSet::from_generator_images(g.clone(), spec.points.len(), &images, Some(spec.points.clone()))
            .map_err(invalid(path))?;
        actions.insert(name.clone(), set);
    }
    let mut groupoids = BTreeMap::new();
    let mut translation_of = BTreeMap::new();
    for (name, spec) in &doc.groupoids {
        let path = format!("groupoids.{name}");
        let g = match spec {
            GroupoidSpec::Translation(a) => {
                let set = actions.get(a).ok_or_else(|| InputError::Dangling {
                    path: format!("{path}.translation"),
                    name: a.clone(),
                })?;
                translation_of.insert(name.clone(), a.clone());
                set.translation_groupoid()
            }
            GroupoidSpec::Group(gname) => {
                let g = groups.get(gname).ok_or_else(|| InputError::Dangling {
                    path: format!("{path}.group"),
                    name: gname.clone(),
                })?;
                FiniteGroupoid::from_group(g)
            }
            GroupoidSpec::Unit(labels) => FiniteGroupoid::unit_groupoid(labels.clone()),
            GroupoidSpec::Explicit(e) => {
                let source = e.arrows.iter().map(|a| a.source).collect();
                let target = e.arrows.iter().map(|a| a.target).collect();
                let composites: Vec<(usize, usize, usize)> = e.compose.iter().map(|c| (c[0], c[1], c[2])).collect();
                FiniteGroupoid::from_tables(e.objects.len(), source, target, &composites)
                    .and_then(|g| g.with_labels(e.objects.clone(), e.arrows.iter().map(|a| a.label.clone()).collect()))
                    .map_err(invalid(format!("{path}.explicit")))?
            }
        };
        groupoids.insert(name.clone(), g);
    }
    for (name, g) in &groups {
        groupoids
            .entry(name.clone())
            .or_insert_with(|| FiniteGroupoid::from_group(g));
    }
    let group_of = doc.actions.iter().map(|(k, a)| (k.clone(), a.group.clone())).collect();
    let resolved = Resolved {
        group_of,
        actions,
        groupoids,
        translation_of,
    };
    for (i, task) in doc.tasks.iter().enumerate() {
        resolved.check_task(task, &format!("tasks[{i}]"))?;
    }
    Ok(resolved)
}

impl Resolved {
    pub fn groupoid(&self, name: &str, path: &str) -> Result<&FiniteGroupoid, InputError> {
        self.groupoids.get(name).ok_or_else(|| InputError::Dangling {
            path: path.to_string(),
            name: name.to_string(),
        })
    }

    /// An action, named directly or through a translation groupoid.
    pub fn action(&self, name: &str, path: &str) -> Result<&GSet, InputError> {
        let key = self.translation_of.get(name).map_or(name, String::as_str);
        self.actions.get(key).ok_or_else(|| InputError::Dangling {
            path: path.to_string(),
            name: name.to_string(),
        })
    }

    /// The action of a tom Dieck task, checked against the named group.
    pub fn tom_dieck_action(&self, group: Option<&str>, action: &str, path: &str) -> Result<&GSet, InputError> {
        let set = self.action(action, &format!("{path}.action"))?;
        let key = self.translation_of.get(action).map_or(action, String::as_str);
        match group {
            Some(name) if self.group_of.get(key).map(String::as_str) != Some(name) => Err(InputError::Invalid {
                path: format!("{path}.group"),
                error: orbisect::Error::Invalid(format!("'{action}' is not an action of '{name}'")),
            }),
            _ => Ok(set),
        }
    }

    fn check_task(&self, task: &Task, path: &str) -> Result<(), InputError> {
        let gp = format!("{path}.groupoid");
        match task {
            Task::Sectors { groupoid }
            | Task::Reduced { groupoid }
            | Task::Homology { groupoid, .. }
            | Task::Stable { groupoid, .. } => self.groupoid(groupoid, &gp).map(|_| ()),
            Task::Pi { groupoid, base, .. }
            | Task::ExtendedPi { groupoid, base, .. }
            | Task::OrbitDiagram { groupoid, base } => {
                let g = self.groupoid(groupoid, &gp)?;
                object_by_name(g, base).map(|_| ()).ok_or_else(|| InputError::Dangling {
                    path: format!("{path}.base"),
                    name: base.clone(),
                })
            }
            Task::Morita { left, right } => {
                self.groupoid(left, &format!("{path}.left"))?;
                self.groupoid(right, &format!("{path}.right")).map(|_| ())
            }
            Task::VerifyInvariance { left, right } => {
                self.action(left, &format!("{path}.left"))?;
                self.action(right, &format!("{path}.right")).map(|_| ())
            }
            Task::Tomdieck { group, action, .. } => self.tom_dieck_action(group.as_deref(), action, path).map(|_| ()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"schema": 1, "groups": {"one": {"table": {"rows": [[0]]}}}}"#;

    #[test]
    fn minimal_document() {
        let doc = parse(MINIMAL).unwrap();
        let r = resolve(&doc, &Limits::default()).unwrap();
        assert_eq!(r.groupoids["one"].num_arrows(), 1);
    }

    #[test]
    fn non_latin_table_is_named() {
        let text = r#"{"schema": 1, "groups": {"bad": {"table": {"rows": [[0, 1], [0, 1]]}}}}"#;
        let err = resolve(&parse(text).unwrap(), &Limits::default()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("groups.bad.table"), "{msg}");
        assert!(msg.contains("latin square"), "{msg}");
    }

    #[test]
    fn dangling_action_is_named() {
        let text = r#"{"schema": 1, "groupoids": {"T": {"translation": "missing"}}}"#;
        let err = resolve(&parse(text).unwrap(), &Limits::default()).unwrap_err();
        assert_eq!(
            err,
            InputError::Dangling {
                path: "groupoids.T.translation".into(),
                name: "missing".into()
            }
        );
    }

    #[test]
    fn unknown_fields_and_versions_are_rejected() {
        assert!(parse(r#"{"schema": 1, "extra": 0}"#).is_err());
        assert!(parse(r#"{"schema": 2}"#).is_err());
        assert!(parse(r#"{"schema": 1, "tasks": [{"command": "stable", "groupoid": "G", "n": 0, "x": 1}]}"#).is_err());
    }

    #[test]
    fn round_trip() {
        let text = r#"{
            "schema": 1,
            "groups": {
                "S3": {"permutations": {"degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}},
                "Z2": {"table": {"rows": [[0, 1], [1, 0]], "labels": ["e", "t"]}},
                "D4": {"catalog": {"name": "dihedral", "n": 4}}
            },
            "actions": {"swap": {"group": "Z2", "points": ["+", "-"], "generators": [{"element": "t", "permutation": [1, 0]}]}},
            "groupoids": {
                "T": {"translation": "swap"},
                "G": {"group": "S3"},
                "U": {"unit": ["a", "b"]},
                "E": {"explicit": {"objects": ["x"], "arrows": [{"label": "1", "source": 0, "target": 0}], "compose": [[0, 0, 0]]}}
            },
            "tasks": [
                {"command": "stable", "groupoid": "G", "n": 0},
                {"command": "extended-pi", "groupoid": "G", "base": "*", "group": ["(0 1)"], "n": 1},
                {"command": "verify-invariance", "left": "swap", "right": "T"}
            ]
        }"#;
        let doc = parse(text).unwrap();
        assert_eq!(parse(&render(&doc)).unwrap(), doc);
        resolve(&doc, &Limits::default()).unwrap();
    }

    #[test]
    fn order_cap_applies_on_load() {
        let text = r#"{"schema": 1, "groups": {"big": {"catalog": {"name": "symmetric", "n": 5}}}}"#;
        let err = resolve(&parse(text).unwrap(), &Limits::default()).unwrap_err();
        assert!(err.is_cap());
    }
}
