//! Seeded generators for polynomials that satisfy the registry's premises.
//!
//! All randomness comes from ChaCha8 seeded with `GenConfig::seed` through
//! `SeedableRng::seed_from_u64`, so a config always yields the same
//! coefficients bit for bit, on any platform.

use crate::error::{Error, Result};
use crate::extrema::{circle_extremum, default_eps, ExtremumKind};
use crate::poly::Polynomial;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Inside-mode roots stay this far (relatively) inside `|z| = k`.
const INSIDE_MARGIN: f64 = 1e-6;
const BOUNDARY_PROBABILITY: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenMode {
    /// all zeros in `|z| <= k`
    ZerosInside,
    /// no zero in `|z| < k`
    ZerosOutsideOpenDisk,
    Unconstrained,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub n: usize,
    pub k: f64,
    pub seed: u64,
    pub mode: GenMode,
}

impl GenConfig {
    pub fn new(n: usize, k: f64, seed: u64, mode: GenMode) -> Self {
        Self { n, k, seed, mode }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn check_config(cfg: &GenConfig) -> Result<()> {
    if cfg.n < 1 {
        return Err(Error::InvalidArgument("generator needs n >= 1".into()));
    }
    if !(cfg.k > 0.0) || !cfg.k.is_finite() {
        return Err(Error::InvalidArgument(format!("generator needs k > 0, got {}", cfg.k)));
    }
    Ok(())
}

/// `n` random zeros placed according to `cfg.mode`, times a random
/// unit-modulus leading coefficient.
pub fn random_zeros_poly(cfg: &GenConfig) -> Result<Polynomial> {
    check_config(cfg)?;
    let mut rng = cfg.rng();
    let k = cfg.k;
    let roots: Vec<Complex64> = (0..cfg.n)
        .map(|_| {
            let modulus = match cfg.mode {
                GenMode::ZerosInside => rng.gen_range(0.0..=k * (1.0 - INSIDE_MARGIN)),
                GenMode::ZerosOutsideOpenDisk => {
                    if rng.gen_bool(BOUNDARY_PROBABILITY) {
                        k
                    } else {
                        rng.gen_range(k..=3.0 * k + 1.0)
                    }
                }
                GenMode::Unconstrained => rng.gen_range(0.0..=3.0 * k + 1.0),
            };
            Complex64::from_polar(modulus, rng.gen_range(0.0..TAU))
        })
        .collect();
    let lead = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
    Polynomial::from_roots(&roots, lead)
}

/// `(P, F)` with `F = random_zeros_poly(cfg)` and
/// `P = g1 F + g2 (m_F / k^n) z^n`, where `m_F` is a certified lower bound for
/// `min |F|` on `|z| = k`. On that circle `|P| <= |g1| |F| + |g2| m_F <= |F|`.
pub fn dominated_pair(cfg: &GenConfig, gamma1: Complex64, gamma2: Complex64) -> Result<(Polynomial, Polynomial)> {
    if cfg.mode != GenMode::ZerosInside {
        return Err(Error::InvalidArgument("dominated_pair needs mode zeros_inside".into()));
    }
    if !(gamma1.norm() + gamma2.norm() <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "|gamma1| + |gamma2| must be <= 1, got {}",
            gamma1.norm() + gamma2.norm()
        )));
    }
    let f = random_zeros_poly(cfg)?;
    let n = cfg.n;
    let k = cfg.k;
    let ext = circle_extremum(&f, k, ExtremumKind::Min, default_eps(&f, k))?;
    let m_f = (ext.value - ext.certified_error).max(0.0);
    let lead_f = f.coeff(n);

    let mut gamma1 = gamma1;
    for attempt in 0.. {
        let term = Polynomial::monomial(gamma2 * m_f / k.powi(n as i32), n);
        let p = &f.scale(gamma1) + &term;
        if p.degree() == Some(n) && p.coeff(n).norm() > 1e-12 * lead_f.norm() {
            return Ok((p, f));
        }
        if gamma1.norm() == 0.0 && gamma2.norm() == 0.0 || attempt >= 16 {
            return Err(Error::DegenerateLeadingCoefficient);
        }
        // the leading terms cancel; a small rotation of g1 keeps |g1| and separates them
        gamma1 *= Complex64::from_polar(1.0, 0.1);
    }
    unreachable!()
}

/// Polynomials at which the classical inequalities become equalities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `a z^n`
    Power { a: Complex64 },
    /// `a z^n + b` with `|a| = |b|`
    ErdosLax { a: Complex64, b: Complex64 },
    /// `(z + 1)^n`
    Turan,
    /// `(z^n + 1) / 2`
    Half,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Power { .. } => "power",
            Self::ErdosLax { .. } => "erdos_lax",
            Self::Turan => "turan",
            Self::Half => "half",
        }
    }
}

pub fn extremal_poly(family: &Family, n: usize) -> Result<Polynomial> {
    if n < 1 {
        return Err(Error::InvalidArgument("extremal family needs n >= 1".into()));
    }
    let one = Complex64::new(1.0, 0.0);
    match *family {
        Family::Power { a } => {
            if a.norm() == 0.0 {
                return Err(Error::DegenerateLeadingCoefficient);
            }
            Ok(Polynomial::monomial(a, n))
        }
        Family::ErdosLax { a, b } => {
            if a.norm() == 0.0 {
                return Err(Error::DegenerateLeadingCoefficient);
            }
            if (a.norm() - b.norm()).abs() > 1e-12 * a.norm() {
                return Err(Error::FamilyRequiresEqualModuli);
            }
            Ok(&Polynomial::monomial(a, n) + &Polynomial::constant(b))
        }
        Family::Turan => Polynomial::from_roots(&vec![-one; n], one),
        Family::Half => Ok(&Polynomial::monomial(one * 0.5, n) + &Polynomial::constant(one * 0.5)),
    }
}
