//! Certified maximum and minimum of `|P|` on a circle `|z| = r`.
//!
//! The search runs on `f(theta) = |P(r e^{i theta})|^2`, a trigonometric
//! polynomial whose second derivative is bounded from the coefficients alone:
//! `|f''| <= sum_{j,l} (j - l)^2 |a_j| |a_l| r^{j+l}`. On an interval of width
//! `w` this bounds `f` within `C w^2 / 8` of the endpoint values, which drives
//! a branch-and-bound refinement of an initial uniform grid. The bound never
//! uses a derivative inequality for polynomials, so it stays independent of the
//! inequalities being checked with it.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

const MAX_EVALUATIONS: usize = 1 << 22;
const MIN_GRID: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Max,
    Min,
}

impl std::str::FromStr for ExtremumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(Self::Max),
            "min" => Ok(Self::Min),
            other => Err(Error::InvalidArgument(format!("kind must be max or min, got {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CircleExtremum {
    pub kind: ExtremumKind,
    pub radius: f64,
    /// `|P(r e^{i witness_theta})|`.
    pub value: f64,
    pub witness_theta: f64,
    /// Guaranteed bound on `|true extremum - value|`.
    pub certified_error: f64,
}

impl CircleExtremum {
    pub fn witness(&self) -> Complex64 {
        Complex64::from_polar(self.radius, self.witness_theta)
    }
}

/// `1e-9 * sum |a_j| max(1, r)^j`.
pub fn default_eps(p: &Polynomial, r: f64) -> f64 {
    1e-9 * p.abs_coeff_sum(r.max(1.0))
}

#[derive(Clone, Copy)]
struct Interval {
    lo: f64,
    f_lo: f64,
    hi: f64,
    f_hi: f64,
}

/// Max or min of `|P|` on `|z| = r`, certified to within `eps`.
pub fn circle_extremum(p: &Polynomial, r: f64, kind: ExtremumKind, eps: f64) -> Result<CircleExtremum> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let degree = p
        .degree()
        .ok_or_else(|| Error::InvalidArgument("extremum of the zero polynomial".into()))?;
    if degree == 0 {
        return Ok(CircleExtremum {
            kind,
            radius: r,
            value: p.coeff(0).norm(),
            witness_theta: 0.0,
            certified_error: 0.0,
        });
    }

    let weights: Vec<f64> = {
        let mut power = 1.0;
        p.coeffs()
            .iter()
            .map(|a| {
                let w = a.norm() * power;
                power *= r;
                w
            })
            .collect()
    };
    let scale: f64 = weights.iter().sum();
    let mut curvature = 0.0;
    for j in 0..weights.len() {
        for l in j + 1..weights.len() {
            let gap = (l - j) as f64;
            curvature += 2.0 * gap * gap * weights[j] * weights[l];
        }
    }
    // floating-point error of one Horner evaluation, in units of |P|
    let rounding = 4.0 * (degree + 1) as f64 * f64::EPSILON * scale;
    if eps <= 2.0 * rounding {
        return Err(Error::ToleranceUnattainable { eps });
    }
    let budget = eps - rounding;

    let f = |theta: f64| p.eval(Complex64::from_polar(r, theta)).norm_sqr();
    let grid = MIN_GRID.max(64 * degree);
    let values: Vec<f64> = (0..grid).map(|i| f(TAU * i as f64 / grid as f64)).collect();
    let mut evaluations = grid;

    let better = |candidate: f64, incumbent: f64| match kind {
        ExtremumKind::Max => candidate > incumbent,
        ExtremumKind::Min => candidate < incumbent,
    };
    let mut best_f = values[0];
    let mut best_theta = 0.0;
    for (i, &v) in values.iter().enumerate() {
        if better(v, best_f) {
            best_f = v;
            best_theta = TAU * i as f64 / grid as f64;
        }
    }

    let bound = |iv: &Interval| {
        let width = iv.hi - iv.lo;
        let bulge = curvature * width * width / 8.0;
        match kind {
            ExtremumKind::Max => iv.f_lo.max(iv.f_hi) + bulge,
            ExtremumKind::Min => iv.f_lo.min(iv.f_hi) - bulge,
        }
    };
    // an interval is settled once its bound cannot beat the incumbent by more than `budget`
    let settled = |b: f64, best: f64| match kind {
        ExtremumKind::Max => b <= (best.sqrt() + budget).powi(2),
        ExtremumKind::Min => {
            let v = best.sqrt();
            v <= budget || b >= (v - budget).powi(2)
        }
    };

    let mut open: Vec<Interval> = (0..grid)
        .map(|i| Interval {
            lo: TAU * i as f64 / grid as f64,
            f_lo: values[i],
            hi: TAU * (i + 1) as f64 / grid as f64,
            f_hi: values[(i + 1) % grid],
        })
        .collect();
    // most extreme bound over settled intervals
    let mut settled_bound = best_f;
    let fold = |acc: f64, b: f64| match kind {
        ExtremumKind::Max => acc.max(b),
        ExtremumKind::Min => acc.min(b),
    };

    while !open.is_empty() {
        let mut next = Vec::new();
        for iv in open {
            let b = bound(&iv);
            if settled(b, best_f) {
                settled_bound = fold(settled_bound, b);
                continue;
            }
            let mid = 0.5 * (iv.lo + iv.hi);
            let f_mid = f(mid);
            evaluations += 1;
            if better(f_mid, best_f) {
                best_f = f_mid;
                best_theta = mid;
            }
            next.push(Interval { lo: iv.lo, f_lo: iv.f_lo, hi: mid, f_hi: f_mid });
            next.push(Interval { lo: mid, f_lo: f_mid, hi: iv.hi, f_hi: iv.f_hi });
        }
        if evaluations > MAX_EVALUATIONS {
            return Err(Error::ToleranceUnattainable { eps });
        }
        open = next;
    }

    let witness_theta = if best_theta >= TAU { best_theta - TAU } else { best_theta };
    let value = p.eval(Complex64::from_polar(r, witness_theta)).norm();
    let gap = match kind {
        ExtremumKind::Max => settled_bound.max(0.0).sqrt() - value,
        ExtremumKind::Min => value - settled_bound.max(0.0).sqrt(),
    };
    Ok(CircleExtremum {
        kind,
        radius: r,
        value,
        witness_theta,
        certified_error: gap.max(0.0) + rounding,
    })
}

/// Max of `|P|` on `|z| = r` at the default tolerance.
pub fn max_modulus(p: &Polynomial, r: f64) -> Result<CircleExtremum> {
    circle_extremum(p, r, ExtremumKind::Max, default_eps(p, r))
}

/// Min of `|P|` on `|z| = r` at the default tolerance.
pub fn min_modulus(p: &Polynomial, r: f64) -> Result<CircleExtremum> {
    circle_extremum(p, r, ExtremumKind::Min, default_eps(p, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn monomial_is_flat() {
        let p = Polynomial::monomial(Complex64::new(1.0, 0.0), 5);
        let ext = max_modulus(&p, 0.7).unwrap();
        assert!((ext.value - 0.7f64.powi(5)).abs() < 1e-15);
        let ext = min_modulus(&p, 0.7).unwrap();
        assert!((ext.value - 0.7f64.powi(5)).abs() < 1e-15);
    }

    #[test]
    fn half_polynomial_extrema() {
        // |(z^2 + 1) / 2| = |cos theta| on the unit circle
        let p = Polynomial::from_real(&[0.5, 0.0, 0.5]);
        let max = max_modulus(&p, 1.0).unwrap();
        assert!((max.value - 1.0).abs() < 1e-12);
        let t = max.witness_theta;
        assert!(t.abs() < 1e-6 || (t - PI).abs() < 1e-6, "{t}");

        let min = min_modulus(&p, 1.0).unwrap();
        assert!(min.value <= default_eps(&p, 1.0));
        let t = min.witness_theta;
        assert!((t - PI / 2.0).abs() < 1e-6 || (t - 1.5 * PI).abs() < 1e-6, "{t}");
        assert!(min.certified_error <= default_eps(&p, 1.0));
    }

    #[test]
    fn turan_polynomial_max() {
        for n in 1..10 {
            let p = Polynomial::from_roots(&vec![Complex64::new(-1.0, 0.0); n], Complex64::new(1.0, 0.0)).unwrap();
            let ext = max_modulus(&p, 1.0).unwrap();
            let exact = 2f64.powi(n as i32);
            assert!((ext.value - exact).abs() <= ext.certified_error + 1e-12 * exact);
        }
    }

    #[test]
    fn value_recomputes_from_witness() {
        let p = Polynomial::from_real(&[0.3, -1.0, 0.2, 0.9, -0.4]);
        for kind in [ExtremumKind::Max, ExtremumKind::Min] {
            let ext = circle_extremum(&p, 1.3, kind, 1e-9).unwrap();
            assert_eq!(ext.value, p.eval(ext.witness()).norm());
            assert!(ext.certified_error <= 1e-9);
            assert!((0.0..TAU).contains(&ext.witness_theta));
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let p = Polynomial::from_real(&[1.0, 1.0]);
        assert!(circle_extremum(&Polynomial::zero(), 1.0, ExtremumKind::Max, 1e-9).is_err());
        assert!(circle_extremum(&p, 0.0, ExtremumKind::Max, 1e-9).is_err());
        assert!(circle_extremum(&p, 1.0, ExtremumKind::Max, 0.0).is_err());
        assert!(matches!(
            circle_extremum(&p, 1.0, ExtremumKind::Max, 1e-17),
            Err(Error::ToleranceUnattainable { .. })
        ));
    }

    #[test]
    fn constant_polynomial() {
        let p = Polynomial::constant(Complex64::new(0.0, -3.0));
        let ext = max_modulus(&p, 2.0).unwrap();
        assert_eq!(ext.value, 3.0);
        assert_eq!(ext.certified_error, 0.0);
    }
}
