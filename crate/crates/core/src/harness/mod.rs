//! Randomized suites over the registry, mutation-aware fuzzing and report
//! serialization.

mod fuzz;
mod report;
mod sampler;

pub use fuzz::{fuzz_search, Counterexample, FUZZ_THRESHOLD};
pub use report::{emit_report, to_csv, to_json, ReportFormat};

use crate::error::{Error, Result};
use crate::inequalities::{check_inequality, min_term_bracket, CheckParams, InequalityId, InequalityReport};
use num_complex::Complex64;
use rayon::prelude::*;
use sampler::{sample_instance, trial_rng, Lane};
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "POLARINEQ_THREADS";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub ids: Vec<InequalityId>,
    pub trials: usize,
    pub seed: u64,
    pub tol_rel: f64,
    pub radii: Vec<f64>,
    pub angles_per_radius: usize,
    /// Record wall time in the report (which then stops being reproducible).
    pub timing: bool,
}

impl SuiteConfig {
    pub fn new(ids: Vec<InequalityId>, trials: usize, seed: u64) -> Self {
        let defaults = CheckParams::default();
        Self {
            ids,
            trials,
            seed,
            tol_rel: defaults.tol_rel,
            radii: defaults.radii,
            angles_per_radius: defaults.angles_per_radius,
            timing: false,
        }
    }

    pub fn check_params(&self) -> CheckParams {
        CheckParams {
            radii: self.radii.clone(),
            angles_per_radius: self.angles_per_radius,
            tol_rel: self.tol_rel,
        }
    }
}

/// Everything needed to regenerate a trial and the point where it was tightest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub seed: u64,
    pub trial: usize,
    pub n: usize,
    pub s: usize,
    pub k: f64,
    pub alphas: Vec<Complex64>,
    pub beta: Complex64,
    pub z: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub id: InequalityId,
    pub trial: usize,
    pub n: Option<usize>,
    pub s: Option<usize>,
    pub k: Option<f64>,
    pub pass: bool,
    pub min_slack: Option<f64>,
    pub min_rel_slack: Option<f64>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub z: Option<Complex64>,
    /// Subtracted min-term at `z`, for the refined entries.
    pub bracket: Option<f64>,
    pub error: Option<String>,
}

/// Signs of the subtracted min-term over the trials of a refined entry.
/// Values within 1e-12 of the right-hand side count as zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketSigns {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdResult {
    pub id: InequalityId,
    pub trials: usize,
    pub passes: usize,
    /// Trials that could not be generated or evaluated.
    pub errors: usize,
    pub min_rel_slack: Option<f64>,
    pub witness: Option<Witness>,
    pub bracket_signs: Option<BracketSigns>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub results: Vec<IdResult>,
    pub rows: Vec<TrialRow>,
    pub pass: bool,
    pub elapsed_s: Option<f64>,
}

pub(crate) fn thread_pool() -> Result<rayon::ThreadPool> {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))
}

/// Regenerates trial `trial` of `id` under `seed` and checks it again.
pub fn replay(id: InequalityId, seed: u64, trial: usize, params: &CheckParams) -> Result<InequalityReport> {
    let mut rng = trial_rng(seed, Lane::Suite, id, trial as u64);
    let inst = sample_instance(id, &mut rng, false)?;
    check_inequality(&inst, params)
}

fn run_trial(id: InequalityId, seed: u64, trial: usize, params: &CheckParams) -> TrialRow {
    let checked = sample_instance(id, &mut trial_rng(seed, Lane::Suite, id, trial as u64), false).and_then(|inst| {
        let r = check_inequality(&inst, params)?;
        let bracket = min_term_bracket(&inst, r.witness_z)?;
        Ok((r, bracket))
    });
    match checked {
        Ok((r, bracket)) => TrialRow {
            id,
            trial,
            n: Some(r.spec.n),
            s: Some(r.spec.s()),
            k: Some(r.spec.k),
            pass: r.pass,
            min_slack: Some(r.min_slack),
            min_rel_slack: Some(r.min_rel_slack),
            lhs: Some(r.lhs),
            rhs: Some(r.rhs),
            z: Some(r.witness_z),
            bracket,
            error: None,
        },
        Err(e) => TrialRow {
            id,
            trial,
            n: None,
            s: None,
            k: None,
            pass: false,
            min_slack: None,
            min_rel_slack: None,
            lhs: None,
            rhs: None,
            z: None,
            bracket: None,
            error: Some(e.to_string()),
        },
    }
}

fn bracket_signs(rows: &[&TrialRow]) -> Option<BracketSigns> {
    let mut signs = BracketSigns::default();
    let mut any = false;
    for row in rows {
        let (Some(b), Some(rhs)) = (row.bracket, row.rhs) else { continue };
        any = true;
        if b.abs() <= 1e-12 * rhs.abs() {
            signs.zero += 1;
        } else if b > 0.0 {
            signs.positive += 1;
        } else {
            signs.negative += 1;
        }
    }
    any.then_some(signs)
}

/// Runs `config.trials` random premise-satisfying instances of every id.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    if config.trials < 1 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    if config.ids.is_empty() {
        return Err(Error::InvalidArgument("no inequality ids given".into()));
    }
    let params = config.check_params();
    let start = Instant::now();
    let tasks: Vec<(InequalityId, usize)> = config
        .ids
        .iter()
        .flat_map(|&id| (0..config.trials).map(move |t| (id, t)))
        .collect();
    let rows: Vec<TrialRow> = thread_pool()?.install(|| {
        tasks
            .par_iter()
            .map(|&(id, t)| run_trial(id, config.seed, t, &params))
            .collect()
    });

    let mut results = Vec::new();
    for &id in &config.ids {
        let mine: Vec<&TrialRow> = rows.iter().filter(|r| r.id == id).collect();
        let worst = mine
            .iter()
            .filter(|r| r.min_rel_slack.is_some())
            .min_by(|a, b| a.min_rel_slack.unwrap().total_cmp(&b.min_rel_slack.unwrap()));
        let witness = match worst {
            Some(row) => {
                let mut rng = trial_rng(config.seed, Lane::Suite, id, row.trial as u64);
                let inst = sample_instance(id, &mut rng, false)?;
                Some(Witness {
                    seed: config.seed,
                    trial: row.trial,
                    n: inst.spec.n,
                    s: inst.spec.s(),
                    k: inst.spec.k,
                    alphas: inst.spec.alphas.clone(),
                    beta: inst.spec.beta,
                    z: row.z.unwrap(),
                })
            }
            None => None,
        };
        results.push(IdResult {
            id,
            trials: mine.len(),
            passes: mine.iter().filter(|r| r.pass).count(),
            errors: mine.iter().filter(|r| r.error.is_some()).count(),
            min_rel_slack: worst.and_then(|r| r.min_rel_slack),
            witness,
            bracket_signs: bracket_signs(&mine),
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(SuiteReport {
        config: config.clone(),
        results,
        rows,
        pass,
        elapsed_s: config.timing.then(|| start.elapsed().as_secs_f64()),
    })
}
