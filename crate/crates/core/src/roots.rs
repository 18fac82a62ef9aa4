//! Root localization: simultaneous (Aberth-Ehrlich) iteration for all roots,
//! and an independent zero count from the argument principle.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

/// Slack allowed on root moduli when testing disk containment.
pub const ROOT_TOL: f64 = 1e-7;

const MAX_ITERATIONS: usize = 500;
const POLISH_STEPS: usize = 5;
const RESIDUAL_TOL: f64 = 1e-10;
const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;

const MAX_WINDING_SAMPLES: usize = 1 << 20;

/// Roots closer than this (relative to `max(1, |z|)`) are tested as one
/// multiple root.
const CLUSTER_RADIUS: f64 = 0.1;
/// Taylor coefficients below this fraction of their magnitude bound count as zero.
const MULTIPLICITY_TOL: f64 = 1e-9;

/// A group of computed roots identified as one root of multiplicity
/// `multiplicity` at `center`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootCluster {
    pub center: Complex64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroLocationReport {
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
    /// Simple roots as singleton clusters; verified multiple roots merged.
    pub clusters: Vec<RootCluster>,
    /// Largest cluster-center modulus.
    pub max_modulus: f64,
    pub min_modulus: f64,
    pub verified_by_winding: bool,
}

impl ZeroLocationReport {
    /// All zeros in the closed disk `|z| <= k` (up to [`ROOT_TOL`]).
    pub fn contained_in(&self, k: f64) -> bool {
        self.max_modulus <= k + ROOT_TOL
    }

    /// No zero in the open disk `|z| < k` (up to [`ROOT_TOL`]).
    pub fn excludes_open_disk(&self, k: f64) -> bool {
        self.min_modulus >= k - ROOT_TOL
    }
}

fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn residual_bound(coeffs: &[Complex64], z: Complex64) -> f64 {
    let base = z.norm().max(1.0);
    let mut power = 1.0;
    let mut total = 0.0;
    for a in coeffs {
        total += a.norm() * power;
        power *= base;
    }
    RESIDUAL_TOL * total
}

fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let radius = 1.0 + coeffs[..n].iter().map(|a| (a / lead).norm()).fold(0.0, f64::max);
    (0..n)
        .map(|i| Complex64::from_polar(radius, 0.4 + i as f64 * GOLDEN_ANGLE))
        .collect()
}

fn aberth(coeffs: &[Complex64]) -> (Vec<Complex64>, bool) {
    let mut z = initial_guesses(coeffs);
    let n = z.len();
    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let mut step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                // coincident iterates or vanishing derivative; nudge and retry next sweep
                step = Complex64::from_polar(1e-8 * z[i].norm().max(1.0), i as f64);
            }
            z[i] -= step;
            max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
        }
        if max_step <= 4.0 * f64::EPSILON {
            return (z, true);
        }
    }
    (z, false)
}

fn polish(coeffs: &[Complex64], root: Complex64) -> Complex64 {
    let mut best = root;
    let mut best_residual = eval_with_derivative(coeffs, root).0.norm();
    for _ in 0..POLISH_STEPS {
        let (p, dp) = eval_with_derivative(coeffs, best);
        if p.norm() == 0.0 || dp.norm() == 0.0 {
            break;
        }
        let candidate = best - p / dp;
        let residual = eval_with_derivative(coeffs, candidate).0.norm();
        if residual < best_residual {
            best = candidate;
            best_residual = residual;
        } else {
            break;
        }
    }
    best
}

/// All `degree` roots of `p`, with multiplicity.
pub fn find_roots(p: &Polynomial) -> Result<ZeroLocationReport> {
    let degree = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::InvalidArgument("find_roots needs degree >= 1".into())),
    };
    if !p.is_finite() {
        return Err(Error::NonFinite);
    }
    let coeffs = p.coeffs();
    // exact zeros at the origin are split off before iterating
    let zero_count = coeffs.iter().take_while(|a| a.norm() == 0.0).count();
    let reduced = &coeffs[zero_count..];
    let mut roots = vec![Complex64::new(0.0, 0.0); zero_count];
    if reduced.len() > 1 {
        let (iterates, _converged) = aberth(reduced);
        roots.extend(iterates.into_iter().map(|r| polish(reduced, r)));
    }

    let residuals: Vec<f64> = roots.iter().map(|&r| p.eval(r).norm()).collect();
    let ok = roots
        .iter()
        .zip(&residuals)
        .all(|(&r, &res)| res <= residual_bound(coeffs, r) && r.re.is_finite() && r.im.is_finite());
    if !ok {
        return Err(Error::NoConvergence {
            iterations: MAX_ITERATIONS,
            best: roots,
            residuals,
        });
    }
    debug_assert_eq!(roots.len(), degree);

    let clusters = cluster_roots(coeffs, &roots);
    let moduli: Vec<f64> = clusters.iter().map(|c| c.center.norm()).collect();
    let max_modulus = moduli.iter().copied().fold(0.0, f64::max);
    let min_modulus = moduli.iter().copied().fold(f64::INFINITY, f64::min);
    let verified_by_winding = winding_agrees(p, &clusters);
    Ok(ZeroLocationReport {
        roots,
        residuals,
        clusters,
        max_modulus,
        min_modulus,
        verified_by_winding,
    })
}

/// Taylor coefficients `P^(j)(c) / j!` for `j = 0..=n`, by repeated synthetic division.
fn taylor_at(coeffs: &[Complex64], c: Complex64) -> Vec<Complex64> {
    let mut work = coeffs.to_vec();
    let n = work.len();
    for j in 0..n {
        for i in (j..n - 1).rev() {
            let next = work[i + 1];
            work[i] += c * next;
        }
    }
    work
}

/// Bound on `|P^(j)(c) / j!|` from the coefficient moduli, for each `j`.
fn taylor_bounds(coeffs: &[Complex64], c: Complex64) -> Vec<f64> {
    let moduli: Vec<Complex64> = coeffs.iter().map(|a| Complex64::new(a.norm(), 0.0)).collect();
    taylor_at(&moduli, Complex64::new(c.norm().max(1.0), 0.0))
        .into_iter()
        .map(|t| t.re)
        .collect()
}

fn is_multiple_root(coeffs: &[Complex64], center: Complex64, multiplicity: usize) -> bool {
    let taylor = taylor_at(coeffs, center);
    let bounds = taylor_bounds(coeffs, center);
    (0..multiplicity).all(|j| taylor[j].norm() <= MULTIPLICITY_TOL * bounds[j])
}

/// Newton on `P^(m-1)`, for which an `m`-fold root of `P` is simple.
fn refine_multiple(coeffs: &[Complex64], start: Complex64, m: usize) -> Complex64 {
    let mut deriv = Polynomial::from_coeffs(coeffs.to_vec()).sth_derivative(m - 1);
    if deriv.is_zero() {
        return start;
    }
    // keep the magnitudes near those of P for the Newton updates
    deriv = deriv.scale(Complex64::new(1.0 / deriv.max_abs_coeff(), 0.0));
    let mut z = start;
    for _ in 0..POLISH_STEPS * 4 {
        let (v, dv) = eval_with_derivative(deriv.coeffs(), z);
        if v.norm() == 0.0 || dv.norm() == 0.0 {
            break;
        }
        let step = v / dv;
        z -= step;
        if step.norm() <= f64::EPSILON * z.norm().max(1.0) {
            break;
        }
    }
    if z.re.is_finite() && z.im.is_finite() {
        z
    } else {
        start
    }
}

/// Groups nearby roots (single linkage) and keeps a group as one multiple root
/// when the polynomial and its first `m - 1` derivatives vanish at the centroid.
fn cluster_roots(coeffs: &[Complex64], roots: &[Complex64]) -> Vec<RootCluster> {
    let n = roots.len();
    let mut group: Vec<usize> = (0..n).collect();
    fn find(group: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while group[r] != r {
            r = group[r];
        }
        group[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let reach = CLUSTER_RADIUS * roots[i].norm().max(roots[j].norm()).max(1.0);
            if (roots[i] - roots[j]).norm() <= reach {
                let (a, b) = (find(&mut group, i), find(&mut group, j));
                group[a.max(b)] = a.min(b);
            }
        }
    }
    let mut clusters = Vec::new();
    let mut seen = vec![false; n];
    for i in 0..n {
        let root = find(&mut group, i);
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let members: Vec<Complex64> = (0..n).filter(|&j| find(&mut group, j) == root).map(|j| roots[j]).collect();
        let m = members.len();
        let centroid = members.iter().sum::<Complex64>() / m as f64;
        let center = if m > 1 { refine_multiple(coeffs, centroid, m) } else { centroid };
        if m > 1 && is_multiple_root(coeffs, center, m) {
            clusters.push(RootCluster { center, multiplicity: m });
        } else {
            clusters.extend(members.into_iter().map(|center| RootCluster { center, multiplicity: 1 }));
        }
    }
    clusters
}

/// Cross-checks the clusters against the argument principle on a circle
/// outside all roots and on one inside the widest gap between root moduli.
fn winding_agrees(p: &Polynomial, clusters: &[RootCluster]) -> bool {
    let total: usize = clusters.iter().map(|c| c.multiplicity).sum();
    let mut sorted: Vec<f64> = clusters.iter().map(|c| c.center.norm()).collect();
    sorted.sort_by(f64::total_cmp);
    let outer = 2.0 * sorted.last().copied().unwrap_or(0.0) + 1.0;
    if count_zeros_in_disk(p, outer).ok() != Some(total) {
        return false;
    }
    let mut bounds = vec![0.0];
    bounds.extend_from_slice(&sorted);
    let widest = bounds
        .windows(2)
        .map(|w| (w[0], w[1]))
        .max_by(|a, b| (a.1 - a.0).total_cmp(&(b.1 - b.0)));
    match widest {
        Some((lo, hi)) if hi - lo > 1e-3 * hi.max(1.0) => {
            let r = 0.5 * (lo + hi);
            let expected: usize = clusters.iter().filter(|c| c.center.norm() < r).map(|c| c.multiplicity).sum();
            count_zeros_in_disk(p, r).ok() == Some(expected)
        }
        _ => true,
    }
}

/// Number of zeros of `p` in `|z| < r`, from the winding number of
/// `p(r e^{i theta})` about the origin.
pub fn count_zeros_in_disk(p: &Polynomial, r: f64) -> Result<usize> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    let degree = p
        .degree()
        .ok_or_else(|| Error::InvalidArgument("zero polynomial has no zero count".into()))?;
    let scale = p.abs_coeff_sum(r);
    let mut samples = 4096 * (degree.div_ceil(8) + 1);
    loop {
        let values: Vec<Complex64> = (0..samples)
            .map(|i| p.eval(Complex64::from_polar(r, TAU * i as f64 / samples as f64)))
            .collect();
        if values.iter().any(|v| v.norm() < 1e-9 * scale) {
            return Err(Error::RootNearContour { radius: r });
        }
        let mut total = 0.0;
        let mut too_coarse = false;
        for i in 0..samples {
            let step = (values[(i + 1) % samples] / values[i]).arg();
            if step.abs() >= PI / 2.0 {
                too_coarse = true;
                break;
            }
            total += step;
        }
        if !too_coarse {
            let winding = (total / TAU).round();
            return Ok(winding.max(0.0) as usize);
        }
        if samples * 2 > MAX_WINDING_SAMPLES {
            return Err(Error::PhaseStepTooLarge { radius: r, samples });
        }
        samples *= 2;
    }
}
