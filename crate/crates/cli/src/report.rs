//! Structured run reports: one serializable document per command, plus the
//! plain-text rendering used when `--json` is not given. Conclusion tables
//! are keyed by pattern name; `null` marks an inconclusive region.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Label used for inconclusive regions in plain-text tables.
pub const INCONCLUSIVE: &str = "(inconclusive)";

/// Report of a discrimination or identification run.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Report {
    pub task: TaskEcho,
    pub result: Outcome,
    /// Probe amplitudes as `[re, im]` pairs, basis-ordered.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<Vec<[f64; 2]>>,
    /// Pattern name → concluded observable name (`null` = inconclusive).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<BTreeMap<String, Option<String>>>,
    /// Every feasible conclusion table, when the search was asked to keep
    /// scanning past the first hit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all_tables: Option<Vec<BTreeMap<String, Option<String>>>>,
    pub diagnostics: Diagnostics,
}

/// Echo of what was actually run, after flag overrides.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TaskEcho {
    pub command: String,
    pub mode: String,
    pub shots: usize,
    pub observables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub priors: Option<Vec<f64>>,
}

/// The decision itself.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Outcome {
    pub feasible: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub success_probability: Option<f64>,
    /// Conditional conclusive probability per target, keyed by name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_target: Option<BTreeMap<String, f64>>,
}

/// Numerical context for judging how solid the decision is.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Diagnostics {
    /// Smallest constraint-operator eigenvalue: ≈ 0 for feasible instances,
    /// the infeasibility margin otherwise. Absent for identification runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_margin: Option<f64>,
    pub assignments_searched: u64,
    pub wall_time_ms: f64,
}

fn complex_str(pair: [f64; 2]) -> String {
    format!("{:+.6}{:+.6}i", pair[0], pair[1])
}

fn table_lines(out: &mut String, table: &BTreeMap<String, Option<String>>) {
    for (pattern, conclusion) in table {
        let label = conclusion.as_deref().unwrap_or(INCONCLUSIVE);
        let _ = writeln!(out, "  {pattern} -> {label}");
    }
}

/// Renders the main (stdout) part of the plain-text report.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let t = &report.task;
    let _ = write!(
        out,
        "task: {} ({}), shots = {}, observables = {}",
        t.command,
        t.mode,
        t.shots,
        t.observables.join(", ")
    );
    if let Some(targets) = &t.targets {
        let _ = write!(out, ", targets = {}", targets.join(", "));
    }
    out.push('\n');

    if let Some(p) = report.result.success_probability {
        let _ = writeln!(
            out,
            "result: {}, success probability = {:.9}",
            if report.result.feasible { "feasible" } else { "infeasible" },
            p
        );
    } else {
        let _ = writeln!(
            out,
            "result: {}",
            if report.result.feasible { "feasible" } else { "infeasible" }
        );
    }
    if let Some(per_target) = &report.result.per_target {
        for (name, p) in per_target {
            let _ = writeln!(out, "  conclusive probability for {name}: {p:.9}");
        }
    }
    if let Some(probe) = &report.probe {
        let amps: Vec<String> = probe.iter().map(|&a| complex_str(a)).collect();
        let _ = writeln!(out, "probe: [{}]", amps.join(", "));
    }
    if let Some(table) = &report.table {
        let _ = writeln!(out, "conclusions:");
        table_lines(&mut out, table);
    }
    if let Some(all) = &report.all_tables {
        let _ = writeln!(out, "all feasible conclusion tables: {}", all.len());
        for (i, table) in all.iter().enumerate() {
            let _ = writeln!(out, " table {}:", i + 1);
            table_lines(&mut out, table);
        }
    }
    out
}

/// Renders the diagnostics line (stderr in plain-text mode).
pub fn render_diagnostics(d: &Diagnostics) -> String {
    let mut out = format!(
        "searched {} assignment(s) in {:.2} ms",
        d.assignments_searched, d.wall_time_ms
    );
    if let Some(margin) = d.kernel_margin {
        let _ = write!(out, "; smallest constraint eigenvalue {margin:.3e}");
    }
    out
}

/// Per-observable validation outcome.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ObservableCheck {
    pub name: String,
    pub passed: bool,
    pub worst_violation: f64,
    pub detail: String,
}

/// Validation report for a whole file.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ValidationSummary {
    pub passed: bool,
    pub observables: Vec<ObservableCheck>,
}

/// One orbit of outcome sequences under outcome relabeling.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct OrbitRow {
    pub name: String,
    pub canonical: Vec<usize>,
    pub orbit_size: u64,
}

/// Full orbit listing for n apparatus uses with k outcomes.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct OrbitListing {
    pub uses: usize,
    pub outcomes: usize,
    pub patterns: Vec<OrbitRow>,
    pub total: usize,
}
