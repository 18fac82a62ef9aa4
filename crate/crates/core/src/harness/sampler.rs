//! Per-trial instance sampling.
//!
//! Trial `t` of inequality `id` draws from ChaCha8 seeded with the suite seed
//! on stream `(lane << 56) | (index(id) << 32) | t`, so every trial is
//! reproducible on its own and trials can run in any order.

use crate::error::{Error, Result};
use crate::generators::{dominated_pair, random_zeros_poly, GenConfig, GenMode};
use crate::inequalities::{build_instance, premises, AlphaRule, InequalityId, InequalityInstance, KRule, SRule, ZeroRule};
use crate::polar::PolarSpec;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

const K_CHOICES: [f64; 4] = [0.3, 0.5, 0.8, 1.0];
/// k >= 1 entries (E4) need their own grid.
const K_CHOICES_LARGE: [f64; 4] = [1.0, 1.5, 2.0, 3.0];
const MAX_ATTEMPTS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Lane {
    Suite = 0,
    Fuzz = 1,
}

pub(crate) fn trial_rng(seed: u64, lane: Lane, id: InequalityId, trial: u64) -> ChaCha8Rng {
    let index = InequalityId::ALL.iter().position(|&x| x == id).unwrap() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((lane as u64) << 56) | (index << 32) | (trial & 0xffff_ffff));
    rng
}

fn unit(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..TAU))
}

fn sample_spec(id: InequalityId, rng: &mut ChaCha8Rng, aggressive: bool) -> PolarSpec {
    let rules = premises(id);
    let n = rng.gen_range(2..=12usize);
    let k = match rules.k {
        KRule::Unused => 1.0,
        KRule::AtMostOne => *K_CHOICES.choose(rng).unwrap(),
        KRule::AtLeastOne => *K_CHOICES_LARGE.choose(rng).unwrap(),
    };
    let s = match rules.s {
        SRule::Unused => 0,
        SRule::One => 1,
        SRule::Chain => rng.gen_range(1..=3.min(n - 1)),
    };
    let bound = if rules.alpha == AlphaRule::AtLeastOne { 1.0 } else { k };
    let alphas = (0..s)
        .map(|_| {
            let u: f64 = rng.gen();
            let modulus = if aggressive {
                if u < 0.5 {
                    bound
                } else {
                    bound * (1.0 + 1e-3 * rng.gen::<f64>())
                }
            } else if u < 0.1 {
                bound
            } else if u < 0.2 {
                20.0 * bound
            } else {
                rng.gen_range(bound..=4.0 * bound)
            };
            unit(rng) * modulus
        })
        .collect();
    let beta = if !rules.beta {
        Complex64::new(0.0, 0.0)
    } else if aggressive {
        unit(rng)
    } else {
        let u: f64 = rng.gen();
        if u < 0.1 {
            Complex64::new(0.0, 0.0)
        } else if u < 0.2 {
            unit(rng)
        } else {
            unit(rng) * rng.gen::<f64>().sqrt()
        }
    };
    PolarSpec::new(n, k, alphas, beta)
}

fn sample_polys(id: InequalityId, spec: &PolarSpec, rng: &mut ChaCha8Rng, aggressive: bool) -> Result<(crate::Polynomial, Option<crate::Polynomial>)> {
    let rules = premises(id);
    let mode = match rules.zeros {
        ZeroRule::Any => GenMode::Unconstrained,
        ZeroRule::Inside => GenMode::ZerosInside,
        ZeroRule::NoneInOpenDisk => GenMode::ZerosOutsideOpenDisk,
    };
    let cfg = GenConfig::new(spec.n, spec.k, rng.next_u64(), mode);
    if rules.dominated {
        let total = if aggressive { 1.0 } else { rng.gen::<f64>() };
        let split: f64 = rng.gen();
        let g1 = unit(rng) * (total * split);
        let g2 = unit(rng) * (total * (1.0 - split));
        let (p, f) = dominated_pair(&cfg, g1, g2)?;
        Ok((p, Some(f)))
    } else {
        Ok((random_zeros_poly(&cfg)?, None))
    }
}

/// Draws an instance of `id` whose premises hold, retrying on the rare
/// draws the premise checks reject (for instance roots on the boundary).
pub(crate) fn sample_instance(id: InequalityId, rng: &mut ChaCha8Rng, aggressive: bool) -> Result<InequalityInstance> {
    let mut last = None;
    for _ in 0..MAX_ATTEMPTS {
        let spec = sample_spec(id, rng, aggressive);
        let (p, f) = sample_polys(id, &spec, rng, aggressive)?;
        match build_instance(id, &p, f.as_ref(), &spec) {
            Ok(inst) => return Ok(inst),
            Err(err @ (Error::HypothesisViolated(_) | Error::NoConvergence { .. })) => last = Some(err),
            Err(err) => return Err(err),
        }
    }
    Err(last.unwrap())
}
