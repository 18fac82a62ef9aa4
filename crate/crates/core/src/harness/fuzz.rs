use super::sampler::{sample_instance, trial_rng, Lane};
use super::thread_pool;
use crate::error::Result;
use crate::inequalities::{check_inequality, CheckParams, InequalityId, Mutation};
use crate::polar::PolarSpec;
use crate::poly::Polynomial;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Relative slack below which a fuzz hit counts as a counterexample.
pub const FUZZ_THRESHOLD: f64 = -1e-6;
const CHUNK: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub id: InequalityId,
    pub seed: u64,
    pub trial: usize,
    pub spec: PolarSpec,
    pub p: Polynomial,
    pub f: Option<Polynomial>,
    pub z: Complex64,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_slack: f64,
}

fn fuzz_params() -> CheckParams {
    CheckParams {
        radii: vec![1.0, 1.001, 1.01],
        angles_per_radius: 256,
        tol_rel: 0.0,
    }
}

/// Checks `budget` instances per id drawn near the premise boundaries
/// (`|alpha_j|` at or just above `k`, `|beta| = 1`, `|z|` near 1) and returns
/// the first, in (id, trial) order, whose relative slack is below
/// [`FUZZ_THRESHOLD`]. Instances the sampler cannot produce are skipped.
pub fn fuzz_search(ids: &[InequalityId], budget: usize, seed: u64, mutation: Mutation) -> Result<Option<Counterexample>> {
    let params = fuzz_params();
    let pool = thread_pool()?;
    for &id in ids {
        let mut start = 0;
        while start < budget {
            let end = (start + CHUNK).min(budget);
            let hits: Vec<Option<Counterexample>> = pool.install(|| {
                (start..end)
                    .into_par_iter()
                    .map(|trial| {
                        let mut rng = trial_rng(seed, Lane::Fuzz, id, trial as u64);
                        let inst = sample_instance(id, &mut rng, true).ok()?.with_mutation(mutation);
                        let report = check_inequality(&inst, &params).ok()?;
                        (report.min_rel_slack < FUZZ_THRESHOLD).then(|| Counterexample {
                            id,
                            seed,
                            trial,
                            spec: inst.spec.clone(),
                            p: inst.p.clone(),
                            f: inst.f.clone(),
                            z: report.witness_z,
                            lhs: report.lhs,
                            rhs: report.rhs,
                            rel_slack: report.min_rel_slack,
                        })
                    })
                    .collect()
            });
            if let Some(hit) = hits.into_iter().flatten().next() {
                return Ok(Some(hit));
            }
            start = end;
        }
    }
    Ok(None)
}
