use super::{build_instance, evaluate_sides, InequalityId, InequalityInstance, Relation, ZDomain};
use crate::error::{Error, Result};
use crate::generators::{extremal_poly, Family};
use crate::polar::PolarSpec;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

const REFINE_CANDIDATES: usize = 5;
const GOLDEN_ITERATIONS: usize = 60;
const MIN_ANGLES: usize = 256;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckParams {
    pub radii: Vec<f64>,
    pub angles_per_radius: usize,
    pub tol_rel: f64,
}

impl Default for CheckParams {
    fn default() -> Self {
        Self {
            radii: vec![1.0, 1.05, 1.5, 3.0],
            angles_per_radius: 512,
            tol_rel: 1e-8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub id: InequalityId,
    pub spec: PolarSpec,
    /// Signed slack at the witness, positive when the inequality holds
    /// (`rhs - lhs` for `<=`, `lhs - rhs` for `>=`).
    pub min_slack: f64,
    /// `min_slack / scale`, minimized over the grid and refinement.
    pub min_rel_slack: f64,
    pub witness_z: Complex64,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
    pub samples: usize,
    pub radii: Vec<f64>,
    pub tol_rel: f64,
    /// `max(|lhs|, |rhs|)` at the witness.
    pub scale: f64,
}

#[derive(Clone, Copy)]
struct Sample {
    z: Complex64,
    lhs: f64,
    rhs: f64,
    slack: f64,
    rel: f64,
}

fn sample(inst: &InequalityInstance, z: Complex64) -> Result<Sample> {
    let (lhs, rhs) = evaluate_sides(inst, z)?;
    let slack = match inst.id.def().relation {
        Relation::AtMost => rhs - lhs,
        Relation::AtLeast => lhs - rhs,
    };
    let scale = lhs.abs().max(rhs.abs());
    let rel = if scale > 0.0 { slack / scale } else { 0.0 };
    if !rel.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(Sample { z, lhs, rhs, slack, rel })
}

/// Minimizes the relative slack of `inst` over an angle grid on each radius,
/// then refines the smallest grid values by golden-section search in the angle.
pub fn check_inequality(inst: &InequalityInstance, params: &CheckParams) -> Result<InequalityReport> {
    if params.angles_per_radius < MIN_ANGLES {
        return Err(Error::InvalidArgument(format!(
            "angles_per_radius must be >= {MIN_ANGLES}, got {}",
            params.angles_per_radius
        )));
    }
    if !(params.tol_rel >= 0.0) {
        return Err(Error::InvalidArgument(format!("tol_rel must be >= 0, got {}", params.tol_rel)));
    }
    let domain = inst.id.def().domain;
    let radii: Vec<f64> = match domain {
        ZDomain::Constant | ZDomain::UnitCircle => vec![1.0],
        ZDomain::OutsideUnitDisk => {
            if params.radii.is_empty() {
                return Err(Error::InvalidArgument("no radii given".into()));
            }
            if let Some(r) = params.radii.iter().find(|r| !(**r >= 1.0)) {
                return Err(Error::InvalidArgument(format!("radii must be >= 1, got {r}")));
            }
            params.radii.clone()
        }
    };

    let finish = |best: Sample, samples: usize| {
        let scale = best.lhs.abs().max(best.rhs.abs());
        InequalityReport {
            id: inst.id,
            spec: inst.spec.clone(),
            min_slack: best.slack,
            min_rel_slack: best.rel,
            witness_z: best.z,
            lhs: best.lhs,
            rhs: best.rhs,
            pass: best.slack >= -params.tol_rel * scale,
            samples,
            radii: radii.clone(),
            tol_rel: params.tol_rel,
            scale,
        }
    };

    if domain == ZDomain::Constant {
        let s = sample(inst, Complex64::new(1.0, 0.0))?;
        return Ok(finish(s, 1));
    }

    let m = params.angles_per_radius;
    let step = TAU / m as f64;
    let mut grid = Vec::with_capacity(radii.len() * m);
    for &r in &radii {
        for i in 0..m {
            let theta = step * i as f64;
            grid.push((r, theta, sample(inst, Complex64::from_polar(r, theta))?));
        }
    }
    let mut samples = grid.len();
    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&a, &b| grid[a].2.rel.total_cmp(&grid[b].2.rel));
    let mut best = grid[order[0]].2;

    for &idx in order.iter().take(REFINE_CANDIDATES) {
        let (r, theta, _) = grid[idx];
        let (refined, used) = golden_section(inst, r, theta - step, theta + step)?;
        samples += used;
        if refined.rel < best.rel {
            best = refined;
        }
    }
    Ok(finish(best, samples))
}

fn golden_section(inst: &InequalityInstance, r: f64, mut a: f64, mut b: f64) -> Result<(Sample, usize)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let at = |theta: f64| sample(inst, Complex64::from_polar(r, theta));
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut s1 = at(x1)?;
    let mut s2 = at(x2)?;
    let mut best = if s1.rel <= s2.rel { s1 } else { s2 };
    for _ in 0..GOLDEN_ITERATIONS {
        if s1.rel <= s2.rel {
            b = x2;
            x2 = x1;
            s2 = s1;
            x1 = b - inv_phi * (b - a);
            s1 = at(x1)?;
            if s1.rel < best.rel {
                best = s1;
            }
        } else {
            a = x1;
            x1 = x2;
            s1 = s2;
            x2 = a + inv_phi * (b - a);
            s2 = at(x2)?;
            if s2.rel < best.rel {
                best = s2;
            }
        }
    }
    Ok((best, GOLDEN_ITERATIONS + 2))
}

fn compatible(id: InequalityId, family: &Family) -> bool {
    use InequalityId::*;
    match family {
        Family::Power { .. } => id == E1,
        Family::ErdosLax { .. } => matches!(id, E2 | AE | AWE),
        Family::Turan => matches!(id, E3 | E5),
        Family::Half => matches!(id, AE | AWE | E2),
    }
}

/// Minimal relative slack of `id` on the named equality family, with the
/// polynomial's degree taken from `spec.n`.
pub fn sharpness_probe(id: InequalityId, family: &Family, spec: &PolarSpec) -> Result<f64> {
    if !compatible(id, family) {
        return Err(Error::IncompatibleFamily {
            family: family.name().to_string(),
            id: id.to_string(),
        });
    }
    let p = extremal_poly(family, spec.n)?;
    let inst = build_instance(id, &p, None, spec)?;
    Ok(check_inequality(&inst, &CheckParams::default())?.min_rel_slack)
}
