//! Executes scenarios: evolution, classification, verification and report files.

use std::fs;
use std::path::{Path, PathBuf};

use coherence_core::coherence::{
    classify_hamiltonian, verify_trajectory, Classification, ExpectedLaw, Trajectory, Verdict, BOSON_COHERENT_TOL,
    VERIFY_TOL, VISIBLE_BREAK_TOL,
};
use coherence_core::boson::make_coherent_boson;
use coherence_core::dynamics::{
    evolve_classical_boson, evolve_grassmann_classical, evolve_schrodinger_boson, evolve_schrodinger_fermion,
    SystemKind, TimeGrid,
};
use coherence_core::fermion::make_coherent;

use crate::report::{boson_csv, fermion_csv, verdict_csv, Check};
use crate::scenario::{verdict_name, Scenario};
use crate::{exit, CliError};

/// Largest tolerated drift of `⟨ψ|ψ⟩` for exact-sector runs.
pub const UNITARITY_TOL: f64 = 1e-9;

/// Command-line overrides applied on top of a scenario.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub out_dir: Option<PathBuf>,
}

impl RunOptions {
    pub fn apply(&self, s: &Scenario) -> Scenario {
        let mut s = s.clone();
        if let Some(dt) = self.dt {
            s.integration.dt = dt;
        }
        if let Some(t) = self.t_end {
            s.integration.t_end = t;
        }
        s
    }
}

/// In-memory result of a run.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub csv: String,
    pub checks: Vec<Check>,
}

impl Evaluation {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn verdict_csv(&self) -> String {
        verdict_csv(&self.checks)
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub evaluation: Evaluation,
    pub csv_path: PathBuf,
    pub verdict_path: PathBuf,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.evaluation.passed() {
            exit::OK
        } else {
            exit::VERIFICATION_FAILED
        }
    }
}

fn classification_checks(s: &Scenario, c: &Classification, checks: &mut Vec<Check>) {
    checks.push(Check::info("static_verdict", verdict_name(c.verdict)));
    checks.push(Check::equals("dynamic_verdict", verdict_name(c.dynamic_verdict), verdict_name(c.verdict)));
    if let Some(t) = c.forcing_onset {
        checks.push(Check::info("forcing_onset", &crate::report::num(t)));
    }
    if let Some(expected) = s.expect {
        checks.push(Check::equals("expect", verdict_name(c.verdict), verdict_name(expected)));
    }
}

/// Runs the evolutions and verifications for `s` without touching the filesystem.
pub fn evaluate(s: &Scenario) -> Result<Evaluation, CliError> {
    let grid: TimeGrid = s.integration.grid()?;
    let spec = s.spec();
    let classification = classify_hamiltonian(&spec, &grid)?;
    let mut checks = Vec::new();
    classification_checks(s, &classification, &mut checks);

    let csv = match s.kind {
        SystemKind::Boson => {
            let s0 = make_coherent_boson(s.z0, s.nmax_or_default())?;
            let traj = evolve_schrodinger_boson(&spec, &s0, &grid)?;
            let classical = evolve_classical_boson(&spec, s.z0, &grid)?;
            let report = verify_trajectory(Trajectory::Boson(&traj), &ExpectedLaw::Boson { spec: spec.clone(), z0: s.z0 }, &grid)?;
            checks.push(Check::at_most("max_eigenvalue_deviation", report.max_deviation, VERIFY_TOL));
            checks.push(Check::at_most("max_residual", report.max_residual, VERIFY_TOL));
            checks.push(Check::at_most("max_norm_deviation", traj.max_norm_deviation(), BOSON_COHERENT_TOL));
            boson_csv(&traj, &classical.closed_form)
        }
        SystemKind::Fermion | SystemKind::Grassmann => {
            let gens = s.generator_set()?;
            let zeta0 = s.zeta0(&gens);
            let traj = evolve_schrodinger_fermion(|t| spec.fermion_operator(&gens, t), &make_coherent(&zeta0)?, &grid)?;
            let mut phase = None;
            match (s.kind, classification.verdict) {
                (SystemKind::Grassmann, _) => {
                    let law = ExpectedLaw::GrassmannForced { spec: spec.clone(), zeta0: zeta0.clone() };
                    let report = verify_trajectory(Trajectory::Fermion(&traj), &law, &grid)?;
                    checks.push(Check::at_most("max_eigenvalue_deviation", report.max_deviation, VERIFY_TOL));
                    checks.push(Check::at_most("max_residual", report.max_residual, VERIFY_TOL));
                    checks.push(Check::at_most(
                        "max_state_deviation",
                        report.max_state_deviation.unwrap_or(f64::INFINITY),
                        VERIFY_TOL,
                    ));
                    phase = Some(evolve_grassmann_classical(&spec, &zeta0, &grid)?);
                }
                (_, Verdict::Preserving) => {
                    let law = ExpectedLaw::FreeRotation { omega: s.omega.clone(), zeta0: zeta0.clone() };
                    let report = verify_trajectory(Trajectory::Fermion(&traj), &law, &grid)?;
                    checks.push(Check::at_most("max_eigenvalue_deviation", report.max_deviation, VERIFY_TOL));
                    checks.push(Check::at_most("max_residual", report.max_residual, VERIFY_TOL));
                }
                (_, Verdict::NonPreserving) => {
                    checks.push(Check::above("max_residual", traj.max_residual(), VISIBLE_BREAK_TOL));
                }
            }
            checks.push(Check::at_most("max_norm_deviation", traj.max_norm_deviation(), UNITARITY_TOL));
            fermion_csv(&gens, &traj, phase.as_ref())
        }
    };
    Ok(Evaluation { csv, checks })
}

/// Report location: `[output] path`, else `<scenario stem>.csv`, placed under `out_dir` when given.
pub fn output_path(s: &Scenario, source: Option<&Path>, out_dir: Option<&Path>) -> PathBuf {
    let base = s.output.clone().unwrap_or_else(|| {
        let stem = source.and_then(Path::file_stem).map_or("scenario".into(), |s| s.to_string_lossy().into_owned());
        PathBuf::from(format!("{stem}.csv"))
    });
    match out_dir {
        Some(dir) => dir.join(base),
        None => base,
    }
}

fn verdict_path(csv: &Path) -> PathBuf {
    let stem = csv.file_stem().map_or("scenario".into(), |s| s.to_string_lossy().into_owned());
    csv.with_file_name(format!("{stem}.verdict.csv"))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(io)?;
    }
    fs::write(path, text).map_err(io)
}

/// Evaluates `s` and writes the trajectory and verdict CSV files.
pub fn run_scenario(s: &Scenario, source: Option<&Path>, opts: &RunOptions) -> Result<RunOutcome, CliError> {
    let s = opts.apply(s);
    let evaluation = evaluate(&s)?;
    let csv_path = output_path(&s, source, opts.out_dir.as_deref());
    let verdict_path = verdict_path(&csv_path);
    write(&csv_path, &evaluation.csv)?;
    write(&verdict_path, &evaluation.verdict_csv())?;
    Ok(RunOutcome { evaluation, csv_path, verdict_path })
}

pub fn classify_scenario(s: &Scenario, opts: &RunOptions) -> Result<Classification, CliError> {
    let s = opts.apply(s);
    Ok(classify_hamiltonian(&s.spec(), &s.integration.grid()?)?)
}
