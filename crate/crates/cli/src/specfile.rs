//! The on-disk observable-set format: a JSON document listing a family of
//! observables (explicit effect matrices or a Bloch-vector shorthand for
//! qubits) together with the task to run on them. Complex numbers are
//! `[re, im]` pairs; matrices are row-major nested arrays.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use obsdisc::povm::{from_bloch, BlochObservable, Povm};
use obsdisc::unambiguous::{Mode, TaskSpec};
use obsdisc::Operator;

/// Why a document could not be turned into a runnable task. `Structure`
/// means the document itself is malformed (wrong shapes, unknown names);
/// `Domain` wraps rejections from the underlying library.
#[derive(Debug)]
pub enum SpecError {
    Structure(String),
    Domain(obsdisc::Error),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Structure(msg) => write!(f, "malformed task file: {msg}"),
            SpecError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SpecError {}

impl From<obsdisc::Error> for SpecError {
    fn from(e: obsdisc::Error) -> Self {
        SpecError::Domain(e)
    }
}

/// Root of a task file.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SpecFile {
    pub dimension: usize,
    pub observables: Vec<ObservableEntry>,
    #[serde(default)]
    pub task: TaskSection,
}

/// One observable: exactly one of `effects` (explicit matrices) or `bloch`
/// (qubit shorthand for the two-outcome observable along a Bloch vector)
/// must be present.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ObservableEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prior: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effects: Option<Vec<Vec<Vec<[f64; 2]>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bloch: Option<[f64; 3]>,
}

/// What to do with the observables. Defaults: perfect discrimination with
/// two apparatus uses, all observables as targets.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TaskSection {
    #[serde(default = "default_mode")]
    pub mode: String,
    #[serde(default = "default_shots")]
    pub shots: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<String>>,
}

fn default_mode() -> String {
    "pd".to_string()
}

fn default_shots() -> usize {
    2
}

impl Default for TaskSection {
    fn default() -> Self {
        TaskSection {
            mode: default_mode(),
            shots: default_shots(),
            targets: None,
        }
    }
}

/// Parses a JSON document into a `SpecFile`.
pub fn parse_str(text: &str) -> Result<SpecFile, SpecError> {
    serde_json::from_str(text).map_err(|e| SpecError::Structure(e.to_string()))
}

/// Parses a mode string (`pd`, `ud`, `pi`, `ui`, case-insensitive).
pub fn parse_mode(text: &str) -> Result<Mode, SpecError> {
    match text.to_ascii_lowercase().as_str() {
        "pd" => Ok(Mode::Pd),
        "ud" => Ok(Mode::Ud),
        "pi" => Ok(Mode::Pi),
        "ui" => Ok(Mode::Ui),
        other => Err(SpecError::Structure(format!(
            "unknown mode {other:?}; expected pd, ud, pi, or ui"
        ))),
    }
}

fn build_operator(dim: usize, matrix: &[Vec<[f64; 2]>], context: &str) -> Result<Operator, SpecError> {
    if matrix.len() != dim {
        return Err(SpecError::Structure(format!(
            "{context}: matrix has {} rows, expected {dim}",
            matrix.len()
        )));
    }
    let mut rows = Vec::with_capacity(dim);
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != dim {
            return Err(SpecError::Structure(format!(
                "{context}: row {i} has {} entries, expected {dim}",
                row.len()
            )));
        }
        rows.push(
            row.iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect::<Vec<_>>(),
        );
    }
    Ok(Operator::from_rows(&rows)?)
}

/// Builds the named observables of a file, without touching the task
/// section. Validation of the resulting families is deliberately separate:
/// even an invalid observable (wrong normalization, negative effects) is
/// constructed here so it can be reported rather than rejected outright.
pub fn observables(file: &SpecFile) -> Result<Vec<(String, Povm)>, SpecError> {
    let dim = file.dimension;
    if dim == 0 {
        return Err(SpecError::Structure("dimension must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(file.observables.len());
    for entry in &file.observables {
        let povm = match (&entry.effects, &entry.bloch) {
            (Some(matrices), None) => {
                let effects = matrices
                    .iter()
                    .enumerate()
                    .map(|(j, m)| {
                        build_operator(dim, m, &format!("observable {:?}, effect {j}", entry.name))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Povm::new(effects)?
            }
            (None, Some(vector)) => {
                if dim != 2 {
                    return Err(SpecError::Structure(format!(
                        "observable {:?}: the bloch shorthand requires dimension 2, file has {dim}",
                        entry.name
                    )));
                }
                from_bloch(&BlochObservable::new(*vector, 0.5)?)?
            }
            _ => {
                return Err(SpecError::Structure(format!(
                    "observable {:?} must have exactly one of \"effects\" or \"bloch\"",
                    entry.name
                )));
            }
        };
        out.push((entry.name.clone(), povm));
    }
    Ok(out)
}

/// Assembles the full task: observables, priors (all given or none),
/// targets resolved from names, mode, and shot count.
pub fn to_task(file: &SpecFile) -> Result<(TaskSpec, Vec<String>), SpecError> {
    let built = observables(file)?;
    let names: Vec<String> = built.iter().map(|(n, _)| n.clone()).collect();
    let povms: Vec<Povm> = built.into_iter().map(|(_, p)| p).collect();

    let given: usize = file.observables.iter().filter(|o| o.prior.is_some()).count();
    let priors = if given == 0 {
        None
    } else if given == file.observables.len() {
        Some(file.observables.iter().map(|o| o.prior.unwrap()).collect())
    } else {
        return Err(SpecError::Structure(
            "priors must be given for every observable or for none".into(),
        ));
    };

    let targets = match &file.task.targets {
        None => None,
        Some(wanted) => {
            let mut indices = Vec::with_capacity(wanted.len());
            for name in wanted {
                match names.iter().position(|n| n == name) {
                    Some(i) => indices.push(i),
                    None => {
                        return Err(SpecError::Structure(format!(
                            "target {name:?} does not match any observable name"
                        )));
                    }
                }
            }
            Some(indices)
        }
    };

    let mode = parse_mode(&file.task.mode)?;
    let task = TaskSpec::new(povms, priors, targets, file.task.shots, mode)?;
    Ok((task, names))
}

/// Writes a task back to the on-disk structure (effects always explicit,
/// never the Bloch shorthand, so the result is lossless).
pub fn from_task(task: &TaskSpec, names: &[String]) -> SpecFile {
    let dim = task.observables()[0].dim();
    let observables = task
        .observables()
        .iter()
        .zip(names)
        .zip(task.priors())
        .map(|((povm, name), &prior)| {
            let effects = povm
                .effects()
                .iter()
                .map(|e| {
                    (0..dim)
                        .map(|i| (0..dim).map(|j| [e.get(i, j).re, e.get(i, j).im]).collect())
                        .collect()
                })
                .collect();
            ObservableEntry {
                name: name.clone(),
                prior: Some(prior),
                effects: Some(effects),
                bloch: None,
            }
        })
        .collect();
    SpecFile {
        dimension: dim,
        observables,
        task: TaskSection {
            mode: task.mode().as_str().to_ascii_lowercase(),
            shots: task.shots(),
            targets: Some(task.targets().iter().map(|&i| names[i].clone()).collect()),
        },
    }
}
