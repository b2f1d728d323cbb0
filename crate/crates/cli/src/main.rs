//! `obsdisc` — decide whether a finite family of quantum observables can be
//! told apart with a fixed number of uses of an unlabeled measurement
//! apparatus, and optimize the probe state that does it.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use obsdisc::discrimination::{
    check_perfect_discrimination, check_perfect_discrimination_with, orbit_effect,
    sequence_probability, simulate, verify_zero_eigenvalue_condition, SearchOptions,
};
use obsdisc::outcomes::{enumerate_patterns, expand_pattern};
use obsdisc::povm::{from_bloch, BlochObservable, Povm};
use obsdisc::unambiguous::{
    closed_form_identification, four_shot_discrimination, optimize, optimize_with, Mode, TaskSpec,
};
use obsdisc::{Operator, StateVector};

use obsdisc_cli::report::{
    self, Diagnostics, ObservableCheck, OrbitListing, OrbitRow, Outcome, Report, TaskEcho,
    ValidationSummary,
};
use obsdisc_cli::specfile::{self, SpecError, SpecFile};

/// Environment variable overriding the assignment-search cap.
const SEARCH_CAP_VAR: &str = "POVM_DISCRIM_SEARCH_CAP";

#[derive(Parser)]
#[command(
    name = "obsdisc",
    version,
    about = "Discrimination and identification of quantum observables with a fixed number of \
             uses of an unlabeled measurement apparatus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Number of apparatus uses (overrides the file's task section).
    #[arg(long, global = true)]
    shots: Option<usize>,

    /// Task mode: pd, ud, pi, or ui (overrides the file's task section).
    #[arg(long, global = true)]
    mode: Option<String>,

    /// Comma-separated observable names to identify (overrides the file).
    #[arg(long, global = true, value_delimiter = ',')]
    targets: Option<Vec<String>>,

    /// Emit a machine-readable JSON report on standard output.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the simulation used by the reference checks.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Zero threshold for kernel membership (default: scale-aware).
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Keep searching after the first feasible assignment and report all.
    #[arg(long = "all-assignments", global = true)]
    all_assignments: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check that every observable in the file is a well-formed POVM.
    Validate { file: PathBuf },
    /// List the relabeling orbits of outcome sequences for n uses of a
    /// k-outcome apparatus.
    Orbits { n: usize, k: usize },
    /// Decide perfect discrimination of the observables in the file.
    Discriminate { file: PathBuf },
    /// Optimize unambiguous discrimination or identification (ud/pi/ui).
    Identify { file: PathBuf },
    /// Run the bundled reference examples and check their known results.
    Paper,
}

/// Command failures, mapped onto documented exit codes: 2 for anything that
/// prevents reading a task out of the input, 1 for domain-level rejections.
#[derive(Debug)]
enum CliError {
    Parse(String),
    Validation(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(msg) | CliError::Validation(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Structure(_) => CliError::Parse(e.to_string()),
            SpecError::Domain(_) => CliError::Validation(e.to_string()),
        }
    }
}

impl From<obsdisc::Error> for CliError {
    fn from(e: obsdisc::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    match &cli.command {
        Command::Validate { file } => cmd_validate(cli, file),
        Command::Orbits { n, k } => cmd_orbits(cli, *n, *k),
        Command::Discriminate { file } => cmd_discriminate(cli, file),
        Command::Identify { file } => cmd_identify(cli, file),
        Command::Paper => Ok(cmd_paper(cli.seed)),
    }
}

fn load(path: &Path) -> Result<SpecFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    Ok(specfile::parse_str(&text)?)
}

fn apply_overrides(file: &mut SpecFile, cli: &Cli) {
    if let Some(shots) = cli.shots {
        file.task.shots = shots;
    }
    if let Some(mode) = &cli.mode {
        file.task.mode = mode.clone();
    }
    if let Some(targets) = &cli.targets {
        file.task.targets = Some(targets.clone());
    }
}

fn search_options(cli: &Cli) -> Result<SearchOptions, CliError> {
    let mut opts = SearchOptions::default();
    if let Ok(value) = std::env::var(SEARCH_CAP_VAR) {
        opts.search_cap = value.trim().parse().map_err(|_| {
            CliError::Parse(format!(
                "{SEARCH_CAP_VAR} must be a positive integer, got {value:?}"
            ))
        })?;
    }
    opts.zero_tol = cli.tol;
    opts.collect_all = cli.all_assignments;
    Ok(opts)
}

fn probe_amplitudes(probe: &StateVector) -> Vec<[f64; 2]> {
    probe.amplitudes().iter().map(|a| [a.re, a.im]).collect()
}

fn named_table(rows: Vec<(String, String)>) -> BTreeMap<String, Option<String>> {
    rows.into_iter().map(|(p, c)| (p, Some(c))).collect()
}

fn emit(cli: &Cli, report: &Report) {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
    } else {
        print!("{}", report::render_text(report));
        eprintln!("{}", report::render_diagnostics(&report.diagnostics));
    }
}

fn cmd_validate(cli: &Cli, path: &Path) -> Result<u8, CliError> {
    let file = load(path)?;
    let named = specfile::observables(&file)?;
    let checks: Vec<ObservableCheck> = named
        .iter()
        .map(|(name, povm)| match povm.validate() {
            Ok(r) => ObservableCheck {
                name: name.clone(),
                passed: r.passed,
                worst_violation: r.worst_violation,
                detail: r.detail,
            },
            Err(e) => ObservableCheck {
                name: name.clone(),
                passed: false,
                worst_violation: f64::INFINITY,
                detail: e.to_string(),
            },
        })
        .collect();
    let summary = ValidationSummary {
        passed: checks.iter().all(|c| c.passed),
        observables: checks,
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
    } else {
        for c in &summary.observables {
            if c.passed {
                println!("{}: ok (worst violation {:.3e})", c.name, c.worst_violation);
            } else {
                println!("{}: FAILED — {}", c.name, c.detail);
            }
        }
    }
    Ok(if summary.passed { 0 } else { 1 })
}

fn cmd_orbits(cli: &Cli, n: usize, k: usize) -> Result<u8, CliError> {
    let patterns = enumerate_patterns(n, k)?;
    let rows = patterns
        .iter()
        .map(|p| {
            let size = u64::try_from(p.orbit_size(k)).map_err(|_| {
                CliError::Validation(format!("orbit size of {} exceeds u64", p.name()))
            })?;
            Ok(OrbitRow {
                name: p.name(),
                canonical: p.canonical().to_vec(),
                orbit_size: size,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let listing = OrbitListing {
        uses: n,
        outcomes: k,
        total: rows.len(),
        patterns: rows,
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&listing).expect("listing serializes"));
    } else {
        for row in &listing.patterns {
            println!(
                "{}  canonical = {:?}, orbit size = {}",
                row.name, row.canonical, row.orbit_size
            );
        }
        println!(
            "total: {} pattern(s) for {} use(s) of a {}-outcome apparatus",
            listing.total, n, k
        );
    }
    Ok(0)
}

fn cmd_discriminate(cli: &Cli, path: &Path) -> Result<u8, CliError> {
    let mut file = load(path)?;
    apply_overrides(&mut file, cli);
    let named = specfile::observables(&file)?;
    let names: Vec<String> = named.iter().map(|(n, _)| n.clone()).collect();
    let povms: Vec<Povm> = named.into_iter().map(|(_, p)| p).collect();
    let opts = search_options(cli)?;

    let start = Instant::now();
    let result = check_perfect_discrimination_with(&povms, file.task.shots, &opts)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    let report = Report {
        task: TaskEcho {
            command: "discriminate".into(),
            mode: "pd".into(),
            shots: file.task.shots,
            observables: names.clone(),
            targets: None,
            priors: None,
        },
        result: Outcome {
            feasible: result.feasible,
            success_probability: None,
            per_target: None,
        },
        probe: result.probe.as_ref().map(probe_amplitudes),
        table: result
            .assignment
            .as_ref()
            .map(|a| named_table(a.conclusion_table(&names))),
        all_tables: cli.all_assignments.then(|| {
            result
                .all_feasible
                .iter()
                .map(|a| named_table(a.conclusion_table(&names)))
                .collect()
        }),
        diagnostics: Diagnostics {
            kernel_margin: Some(result.min_eigenvalue),
            assignments_searched: result.assignments_searched,
            wall_time_ms,
        },
    };
    emit(cli, &report);
    Ok(if result.feasible { 0 } else { 3 })
}

fn cmd_identify(cli: &Cli, path: &Path) -> Result<u8, CliError> {
    let mut file = load(path)?;
    apply_overrides(&mut file, cli);
    let (task, names) = specfile::to_task(&file)?;
    if task.mode() == Mode::Pd {
        return Err(CliError::Validation(
            "identify requires mode ud, pi, or ui; use the discriminate command for perfect \
             discrimination"
                .into(),
        ));
    }
    let opts = search_options(cli)?;

    let start = Instant::now();
    let result = optimize_with(&task, &opts)?;
    let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    let table = result.region_map.as_ref().map(|m| {
        m.patterns()
            .iter()
            .zip(m.conclusions())
            .map(|(p, c)| (p.name(), c.map(|x| names[x].clone())))
            .collect::<BTreeMap<_, _>>()
    });
    let report = Report {
        task: TaskEcho {
            command: "identify".into(),
            mode: task.mode().as_str().to_ascii_lowercase(),
            shots: task.shots(),
            observables: names.clone(),
            targets: Some(task.targets().iter().map(|&i| names[i].clone()).collect()),
            priors: Some(task.priors().to_vec()),
        },
        result: Outcome {
            feasible: result.feasible,
            success_probability: Some(result.success_probability),
            per_target: Some(
                result
                    .per_target_probability
                    .iter()
                    .map(|&(i, p)| (names[i].clone(), p))
                    .collect(),
            ),
        },
        probe: result.probe.as_ref().map(probe_amplitudes),
        table,
        all_tables: None,
        diagnostics: Diagnostics {
            kernel_margin: None,
            assignments_searched: result.maps_searched,
            wall_time_ms,
        },
    };
    emit(cli, &report);
    Ok(if result.success_probability > 0.0 { 0 } else { 3 })
}

// --- bundled reference checks -------------------------------------------

fn sharp(direction: [f64; 3]) -> Povm {
    from_bloch(&BlochObservable::new(direction, 1.0).expect("unit vector")).expect("qubit")
}

fn tilted(theta: f64) -> [f64; 3] {
    [theta.sin(), 0.0, theta.cos()]
}

fn basis_projector(dim: usize, index: usize) -> Operator {
    Operator::projector(StateVector::basis_state(dim, index).amplitudes())
}

fn core_err(e: obsdisc::Error) -> String {
    e.to_string()
}

/// Every sequence routed away from observable `xi` must have probability
/// ≤ tol under it on the given probe.
fn probe_respects_table(
    observables: &[Povm],
    probe: &StateVector,
    patterns: &[obsdisc::outcomes::OutcomePattern],
    mapping: &[usize],
    tol: f64,
) -> Result<(), String> {
    let k = observables[0].outcome_count();
    for (pi, p) in patterns.iter().enumerate() {
        for (xi, obs) in observables.iter().enumerate() {
            if xi == mapping[pi] {
                continue;
            }
            for seq in expand_pattern(p, k).map_err(core_err)? {
                let prob = sequence_probability(obs, probe, &seq).map_err(core_err)?;
                if prob > tol {
                    return Err(format!(
                        "pattern {} leaks probability {prob:.3e} under observable {xi}",
                        p.name()
                    ));
                }
            }
        }
    }
    Ok(())
}

fn item_two_sharp_orthogonal(_seed: u64) -> Result<String, String> {
    let observables = [sharp([0.0, 0.0, 1.0]), sharp([1.0, 0.0, 0.0])];
    let result = check_perfect_discrimination(&observables, 2).map_err(core_err)?;
    if !result.feasible {
        return Err("expected a feasible two-shot search".into());
    }
    let assignment = result.assignment.as_ref().expect("feasible");
    let table = assignment.conclusion_table(&["sigma_z", "sigma_x"]);
    if table
        != vec![
            ("xx".to_string(), "sigma_z".to_string()),
            ("xy".to_string(), "sigma_x".to_string()),
        ]
    {
        return Err(format!("unexpected conclusion table {table:?}"));
    }
    let s = 1.0 / 2.0f64.sqrt();
    let expected = StateVector::new(vec![
        num_complex::Complex64::new(s, 0.0),
        num_complex::Complex64::new(0.0, 0.0),
        num_complex::Complex64::new(0.0, 0.0),
        num_complex::Complex64::new(-s, 0.0),
    ])
    .map_err(core_err)?;
    let overlap = result.probe.as_ref().expect("probe").overlap_abs(&expected);
    if overlap < 1.0 - 1e-9 {
        return Err(format!("probe overlap {overlap} below 1 - 1e-9"));
    }
    Ok("feasible in two shots; probe and conclusion table recovered".into())
}

fn qutrit_family() -> Vec<Povm> {
    let p: Vec<Operator> = (0..3).map(|i| basis_projector(3, i)).collect();
    let zero = Operator::zeros(3);
    vec![
        Povm::new(vec![p[0].clone(), p[1].clone(), p[2].clone()]).expect("A"),
        Povm::new(vec![p[0].clone(), p[1].add(&p[2]).expect("sum"), zero.clone()]).expect("B"),
        Povm::new(vec![p[0].add(&p[2]).expect("sum"), p[1].clone(), zero.clone()]).expect("C"),
        Povm::new(vec![p[0].add(&p[1]).expect("sum"), p[2].clone(), zero.clone()]).expect("D"),
        Povm::new(vec![Operator::identity(3), zero.clone(), zero]).expect("E"),
    ]
}

fn item_five_qutrit_family(_seed: u64) -> Result<String, String> {
    let family = qutrit_family();
    let ordered: Vec<Povm> = [4usize, 3, 2, 1, 0].iter().map(|&i| family[i].clone()).collect();
    let names = ["E", "D", "C", "B", "A"];
    let result = check_perfect_discrimination(&ordered, 3).map_err(core_err)?;
    if !result.feasible {
        return Err("expected a feasible three-shot search".into());
    }
    let assignment = result.assignment.as_ref().expect("feasible");
    let table = assignment.conclusion_table(&names);
    let expected: Vec<(String, String)> = [
        ("xxx", "E"),
        ("xxy", "D"),
        ("xyx", "C"),
        ("xyy", "B"),
        ("xyz", "A"),
    ]
    .iter()
    .map(|&(p, o)| (p.to_string(), o.to_string()))
    .collect();
    if table != expected {
        return Err(format!("unexpected conclusion table {table:?}"));
    }
    let probe = StateVector::basis_state(3, 0)
        .tensor(&StateVector::basis_state(3, 1))
        .tensor(&StateVector::basis_state(3, 2));
    probe_respects_table(&ordered, &probe, assignment.patterns(), assignment.mapping(), 1e-12)?;
    Ok("table matches".into())
}

fn item_full_rank_qutrit_pair(_seed: u64) -> Result<String, String> {
    let p: Vec<Operator> = (0..3).map(|i| basis_projector(3, i)).collect();
    let t = 0.5;
    let a = Povm::new(vec![p[0].clone(), p[1].add(&p[2]).expect("sum")]).expect("A");
    let b1 = p[0].add(&p[1]).expect("sum").add(&p[2].scale(t)).expect("sum");
    let b = Povm::new(vec![b1, p[2].scale(1.0 - t)]).expect("B");
    let observables = [a, b];
    let opts = SearchOptions {
        collect_all: true,
        ..SearchOptions::default()
    };
    let result = check_perfect_discrimination_with(&observables, 2, &opts).map_err(core_err)?;
    if !result.feasible || result.all_feasible.len() != 1 {
        return Err(format!(
            "expected exactly one feasible assignment, found {}",
            result.all_feasible.len()
        ));
    }
    let assignment = &result.all_feasible[0];
    let probe = StateVector::basis_state(3, 0).tensor(&StateVector::basis_state(3, 1));
    probe_respects_table(&observables, &probe, assignment.patterns(), assignment.mapping(), 1e-12)?;
    Ok("feasible despite a full-rank effect; unique table and product probe verified".into())
}

fn item_oblique_pair(_seed: u64) -> Result<String, String> {
    let theta = std::f64::consts::FRAC_PI_4;
    let observables = [sharp([0.0, 0.0, 1.0]), sharp(tilted(theta))];
    let result = check_perfect_discrimination(&observables, 2).map_err(core_err)?;
    if result.feasible {
        return Err("π/4 pair should not be two-shot discriminable".into());
    }
    if result.min_eigenvalue <= 1e-6 {
        return Err(format!("infeasibility margin {} too thin", result.min_eigenvalue));
    }
    Ok(format!(
        "correctly infeasible (margin {:.3e})",
        result.min_eigenvalue
    ))
}

fn item_zero_eigenvalue_condition(_seed: u64) -> Result<String, String> {
    let sharp_pair = [sharp([0.0, 0.0, 1.0]), sharp([1.0, 0.0, 0.0])];
    if !verify_zero_eigenvalue_condition(&sharp_pair).map_err(core_err)? {
        return Err("sharp pair should satisfy the condition".into());
    }
    let unsharp = from_bloch(&BlochObservable::new([0.0, 0.0, 0.6], 1.0).expect("ball"))
        .expect("qubit");
    let unsharp_pair = [unsharp, sharp([1.0, 0.0, 0.0])];
    if verify_zero_eigenvalue_condition(&unsharp_pair).map_err(core_err)? {
        return Err("unsharp pair should violate the condition".into());
    }
    let result = check_perfect_discrimination(&unsharp_pair, 2).map_err(core_err)?;
    if result.feasible {
        return Err("pair violating the condition must be infeasible".into());
    }
    Ok("necessary condition matches feasibility on sharp and unsharp pairs".into())
}

fn item_two_shot_identification(_seed: u64) -> Result<String, String> {
    let theta = std::f64::consts::FRAC_PI_3;
    let task = TaskSpec::new(
        vec![sharp([0.0, 0.0, 1.0]), sharp(tilted(theta))],
        Some(vec![0.5, 0.5]),
        Some(vec![0]),
        2,
        Mode::Ui,
    )
    .map_err(core_err)?;
    let result = optimize(&task).map_err(core_err)?;
    if (result.success_probability - 0.375).abs() > 1e-6 {
        return Err(format!(
            "expected 0.375 = η·sin²θ, got {}",
            result.success_probability
        ));
    }
    Ok("optimizer gives 0.375 = η·sin²θ at θ = π/3, η = 1/2".into())
}

fn item_unsharp_identification(_seed: u64) -> Result<String, String> {
    let len = 0.6;
    let theta = 1.0;
    let eta = 0.7;
    let a = BlochObservable::new([0.0, 0.0, len], eta).map_err(core_err)?;
    let expected = closed_form_identification(&a, tilted(theta)).map_err(core_err)?;
    let task = TaskSpec::new(
        vec![
            from_bloch(&a).map_err(core_err)?,
            sharp(tilted(theta)),
        ],
        Some(vec![eta, 1.0 - eta]),
        Some(vec![0]),
        2,
        Mode::Ui,
    )
    .map_err(core_err)?;
    let result = optimize(&task).map_err(core_err)?;
    if (result.success_probability - expected).abs() > 1e-6 {
        return Err(format!(
            "optimizer {} vs closed form {expected}",
            result.success_probability
        ));
    }
    Ok("optimizer matches the unsharp closed form".into())
}

/// Best success when the given two-shot pattern is the sole conclusive
/// region for observable A.
fn best_single_pattern_success(a: &Povm, b: &Povm, pattern_index: usize) -> Result<f64, String> {
    let patterns = enumerate_patterns(2, 2).map_err(core_err)?;
    let p = &patterns[pattern_index];
    let constraint = orbit_effect(b, p, 2).map_err(core_err)?;
    let eig = constraint.eig_hermitian().map_err(core_err)?;
    let zero_tol = constraint.default_zero_tol();
    let kernel: Vec<&StateVector> = eig
        .eigenvalues
        .iter()
        .zip(&eig.eigenvectors)
        .take_while(|(l, _)| **l <= zero_tol)
        .map(|(_, v)| v)
        .collect();
    if kernel.is_empty() {
        return Ok(0.0);
    }
    let success = orbit_effect(a, p, 2).map_err(core_err)?;
    let projected = Operator::from_fn(kernel.len(), |i, j| {
        let image = success.matvec(kernel[j].amplitudes());
        kernel[i]
            .amplitudes()
            .iter()
            .zip(&image)
            .map(|(x, y)| x.conj() * y)
            .sum()
    });
    Ok(projected.eig_hermitian().map_err(core_err)?.max_eigenvalue())
}

fn item_same_diff_symmetry(_seed: u64) -> Result<String, String> {
    let a = sharp([0.0, 0.0, 1.0]);
    let b = sharp(tilted(1.1));
    let best_same = best_single_pattern_success(&a, &b, 0)?;
    let best_diff = best_single_pattern_success(&a, &b, 1)?;
    if (best_same - best_diff).abs() > 1e-9 {
        return Err(format!("same {best_same} vs diff {best_diff}"));
    }
    Ok("same-outcome and different-outcome conclusive regions equally good".into())
}

fn item_four_shot_identification(seed: u64) -> Result<String, String> {
    let a = [0.0, 0.0, 1.0];
    let theta = std::f64::consts::FRAC_PI_3;
    let b = tilted(theta);
    let expected = theta.sin().powi(2);

    let result = four_shot_discrimination(a, b, [0.5, 0.5]).map_err(core_err)?;
    for &(_, p) in &result.per_target_probability {
        if (p - expected).abs() > 1e-9 {
            return Err(format!("per-target {p} vs sin²θ = {expected}"));
        }
    }
    let skewed = four_shot_discrimination(a, b, [0.3, 0.7]).map_err(core_err)?;
    if (skewed.success_probability - result.success_probability).abs() > 1e-9 {
        return Err("success probability should not depend on priors".into());
    }

    let probe = result.probe.as_ref().expect("probe");
    let map = result.region_map.as_ref().expect("region map");
    let trials = 10_000u64;
    for (true_index, obs) in [sharp(a), sharp(b)].iter().enumerate() {
        let hist = simulate(obs, probe, 4, trials, seed.wrapping_add(true_index as u64))
            .map_err(core_err)?;
        for (p, c) in map.patterns().iter().zip(map.conclusions()) {
            if let Some(x) = c {
                if *x != true_index && hist.get(p).copied().unwrap_or(0) > 0 {
                    return Err(format!(
                        "simulated run concluded observable {x} while {true_index} was used"
                    ));
                }
            }
        }
    }
    Ok(format!(
        "success = sin²θ, prior-independent; {} simulated runs error-free",
        2 * trials
    ))
}

fn cmd_paper(seed: u64) -> u8 {
    let items: Vec<(&str, fn(u64) -> Result<String, String>)> = vec![
        ("Example 1", item_two_sharp_orthogonal),
        ("Example 2", item_five_qutrit_family),
        ("Example 3", item_full_rank_qutrit_pair),
        ("Oblique sharp pair", item_oblique_pair),
        ("Zero-eigenvalue condition", item_zero_eigenvalue_condition),
        ("Two-shot identification", item_two_shot_identification),
        ("Unsharp identification", item_unsharp_identification),
        ("Same/diff symmetry", item_same_diff_symmetry),
        ("Four-shot identification", item_four_shot_identification),
    ];
    let mut failures = 0;
    for (label, item) in &items {
        match item(seed) {
            Ok(msg) => println!("{label}: {msg}"),
            Err(msg) => {
                failures += 1;
                println!("{label}: FAIL — {msg}");
            }
        }
    }
    if failures == 0 {
        println!("all {} reference checks passed", items.len());
        0
    } else {
        println!("{failures} of {} reference checks failed", items.len());
        1
    }
}
