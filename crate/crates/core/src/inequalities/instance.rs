use super::InequalityId;
use crate::error::{Error, Result};
use crate::extrema::{circle_extremum, ExtremumKind};
use crate::polar::{falling_factorial, lambda_product, polar_chain, PolarSpec};
use crate::poly::Polynomial;
use crate::roots::{find_roots, ZeroLocationReport};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

/// Relative accuracy (against `sum |a_j| r^j`) of the cached circle extrema.
const EXTREMA_REL_EPS: f64 = 1e-13;
const DOMINATION_SAMPLES: usize = 4096;
const DOMINATION_TOL: f64 = 1e-9;

/// Deliberate defects used to show that the checker can fail.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mutation {
    #[default]
    None,
    /// Subtracts instead of adds the `|z^s + b|` term on the right of TE2.
    FlipTe2RhsSign,
}

/// Evidence collected while validating an instance's premises.
#[derive(Clone, Debug, Default, Serialize)]
pub struct HypothesisReport {
    pub p_zeros: Option<ZeroLocationReport>,
    pub f_zeros: Option<ZeroLocationReport>,
    /// `min (|F| - |P|)` over the domination samples on `|z| = k`.
    pub domination_margin: Option<f64>,
    pub verified: Vec<String>,
}

#[derive(Clone, Debug)]
pub(crate) struct Cached {
    pub n_s: f64,
    pub lambda: f64,
    /// `n_s L_s / (1 + k)^s`
    pub c: f64,
    pub alpha_product: Complex64,
    pub p_chain: Polynomial,
    pub p_deriv: Polynomial,
    pub f_chain: Polynomial,
    pub f_deriv: Polynomial,
    pub r_poly: Polynomial,
    pub r_chain: Polynomial,
    /// max / min of |P| on the entry's reference circle
    pub max: f64,
    pub min: f64,
    /// both sides for the z-independent entries
    pub constant_sides: Option<(f64, f64)>,
}

/// A registry entry bound to concrete polynomials and parameters whose
/// premises have been verified.
#[derive(Clone, Debug)]
pub struct InequalityInstance {
    pub id: InequalityId,
    pub p: Polynomial,
    pub f: Option<Polynomial>,
    pub spec: PolarSpec,
    pub hypotheses: HypothesisReport,
    pub(crate) cached: Cached,
    pub(crate) mutation: Mutation,
}

impl InequalityInstance {
    #[doc(hidden)]
    pub fn with_mutation(mut self, mutation: Mutation) -> Self {
        self.mutation = mutation;
        self
    }

    /// `max |P|` on the reference circle (`|z| = k`, or `|z| = 1` for E1-E5, AE, AWE).
    pub fn max_modulus(&self) -> f64 {
        self.cached.max
    }

    pub fn min_modulus(&self) -> f64 {
        self.cached.min
    }
}

#[derive(Clone, Copy, PartialEq)]
pub(crate) enum ZeroRule {
    Any,
    Inside,
    NoneInOpenDisk,
}

#[derive(Clone, Copy, PartialEq)]
pub(crate) enum KRule {
    Unused,
    AtMostOne,
    AtLeastOne,
}

#[derive(Clone, Copy, PartialEq)]
pub(crate) enum SRule {
    Unused,
    Chain,
    One,
}

#[derive(Clone, Copy, PartialEq)]
pub(crate) enum AlphaRule {
    Unused,
    AtLeastK,
    AtLeastOne,
}

pub(crate) struct Premises {
    pub zeros: ZeroRule,
    /// zero rule applies to F rather than P
    pub on_f: bool,
    pub dominated: bool,
    pub k: KRule,
    pub s: SRule,
    pub alpha: AlphaRule,
    pub beta: bool,
    /// radius of the circle for M and m
    pub unit_circle: bool,
}

pub(crate) fn premises(id: InequalityId) -> Premises {
    use InequalityId::*;
    let base = Premises {
        zeros: ZeroRule::Any,
        on_f: false,
        dominated: false,
        k: KRule::AtMostOne,
        s: SRule::Chain,
        alpha: AlphaRule::AtLeastK,
        beta: true,
        unit_circle: false,
    };
    let constant = Premises { s: SRule::Unused, alpha: AlphaRule::Unused, beta: false, unit_circle: true, ..base };
    match id {
        E1 => Premises { k: KRule::Unused, ..constant },
        E2 => Premises { zeros: ZeroRule::NoneInOpenDisk, k: KRule::Unused, ..constant },
        E3 => Premises { zeros: ZeroRule::Inside, k: KRule::Unused, ..constant },
        E4 => Premises { zeros: ZeroRule::NoneInOpenDisk, k: KRule::AtLeastOne, ..constant },
        E5 => Premises { zeros: ZeroRule::Inside, ..constant },
        AE | AWE => Premises {
            zeros: ZeroRule::NoneInOpenDisk,
            k: KRule::Unused,
            alpha: AlphaRule::AtLeastOne,
            beta: false,
            unit_circle: true,
            ..base
        },
        TE1 => Premises { zeros: ZeroRule::Inside, on_f: true, dominated: true, ..base },
        CES1 => Premises { zeros: ZeroRule::Inside, on_f: true, dominated: true, s: SRule::One, ..base },
        CE3 => Premises { zeros: ZeroRule::Inside, on_f: true, dominated: true, alpha: AlphaRule::Unused, ..base },
        CE1 | LE5 => base,
        CE2 => Premises { alpha: AlphaRule::Unused, ..base },
        CE4 => Premises { zeros: ZeroRule::Inside, ..base },
        CE5 => Premises { zeros: ZeroRule::Inside, alpha: AlphaRule::Unused, ..base },
        TE2 | TE3 => Premises { zeros: ZeroRule::NoneInOpenDisk, ..base },
        CE7 => Premises { zeros: ZeroRule::NoneInOpenDisk, alpha: AlphaRule::Unused, ..base },
        CE8 => Premises { zeros: ZeroRule::NoneInOpenDisk, alpha: AlphaRule::Unused, s: SRule::One, ..base },
        CE9 => Premises { zeros: ZeroRule::NoneInOpenDisk, beta: false, ..base },
        CE10 => Premises { zeros: ZeroRule::NoneInOpenDisk, alpha: AlphaRule::Unused, beta: false, ..base },
        CE11 => Premises { zeros: ZeroRule::NoneInOpenDisk, s: SRule::One, ..base },
        LE2 => Premises { zeros: ZeroRule::Inside, s: SRule::One, beta: false, ..base },
        LE3 => Premises { zeros: ZeroRule::Inside, s: SRule::Unused, alpha: AlphaRule::Unused, beta: false, ..base },
        LE4 => Premises { zeros: ZeroRule::Inside, beta: false, ..base },
    }
}

fn violated(what: impl Into<String>) -> Error {
    Error::HypothesisViolated(what.into())
}

fn extremum(p: &Polynomial, r: f64, kind: ExtremumKind) -> Result<f64> {
    let scale = p.abs_coeff_sum(r);
    // stay clear of the Horner rounding floor at high degree
    let floor = 12.0 * (p.coeffs().len() as f64) * f64::EPSILON * scale;
    let eps = (EXTREMA_REL_EPS * scale).max(floor);
    Ok(circle_extremum(p, r, kind, eps)?.value)
}

/// Validates the premises of `id` for `(p, f, spec)` and precomputes every
/// polynomial and circle extremum the entry needs.
///
/// Entries about a single polynomial (including CE4, CE5) take it as `p`;
/// TE1, CE3 and CE_S1 additionally require the dominating polynomial `f`.
pub fn build_instance(
    id: InequalityId,
    p: &Polynomial,
    f: Option<&Polynomial>,
    spec: &PolarSpec,
) -> Result<InequalityInstance> {
    let rules = premises(id);
    let n = spec.n;
    let k = spec.k;
    let mut report = HypothesisReport::default();

    if p.degree() != Some(n) {
        return Err(violated(format!("deg P = n = {n}")));
    }
    if !p.is_finite() {
        return Err(Error::NonFinite);
    }
    if n < 1 {
        return Err(violated("n >= 1"));
    }
    match rules.k {
        KRule::Unused => {}
        KRule::AtMostOne if !(k > 0.0 && k <= 1.0) => return Err(violated("0 < k <= 1")),
        KRule::AtLeastOne if !(k >= 1.0 && k.is_finite()) => return Err(violated("k >= 1")),
        _ => report.verified.push(format!("k = {k}")),
    }
    // the unit circle is the reference circle wherever k is not used for it
    let k_eff = if rules.k == KRule::Unused { 1.0 } else { k };
    let s = spec.s();
    match rules.s {
        SRule::Unused => {}
        SRule::One if s != 1 => return Err(violated("s = 1")),
        _ if s < 1 || s >= n => return Err(violated("1 <= s <= n - 1")),
        _ => {}
    }
    match rules.alpha {
        AlphaRule::Unused => {}
        AlphaRule::AtLeastK | AlphaRule::AtLeastOne => {
            let (bound, name) = if rules.alpha == AlphaRule::AtLeastOne { (1.0, "1") } else { (k, "k") };
            for (j, a) in spec.alphas.iter().enumerate() {
                if !(a.norm() >= bound) {
                    return Err(violated(format!("|alpha_{}| >= {name}", j + 1)));
                }
            }
            report.verified.push(format!("|alpha_j| >= {name}"));
        }
    }
    if rules.beta {
        if !(spec.beta.norm() <= 1.0) {
            return Err(violated("|beta| <= 1"));
        }
        report.verified.push("|beta| <= 1".into());
    }

    let f = if rules.on_f {
        let f = f.ok_or_else(|| Error::InvalidArgument(format!("{id} needs a dominating polynomial F")))?;
        if f.degree() != Some(n) {
            return Err(violated(format!("deg F = n = {n}")));
        }
        Some(f.clone())
    } else {
        None
    };

    let zero_target = if rules.on_f { f.as_ref().unwrap() } else { p };
    let zero_name = if rules.on_f { "F" } else { "P" };
    if rules.zeros != ZeroRule::Any {
        let zeros = find_roots(zero_target)?;
        match rules.zeros {
            ZeroRule::Inside if !zeros.contained_in(k_eff) => {
                return Err(violated(format!("all zeros of {zero_name} in |z| <= {k_eff}")))
            }
            ZeroRule::NoneInOpenDisk if !zeros.excludes_open_disk(k_eff) => {
                return Err(violated(format!("{zero_name} has no zero in |z| < {k_eff}")))
            }
            _ => {}
        }
        report.verified.push(match rules.zeros {
            ZeroRule::Inside => format!("all zeros of {zero_name} in |z| <= {k_eff}"),
            _ => format!("{zero_name} has no zero in |z| < {k_eff}"),
        });
        if rules.on_f {
            report.f_zeros = Some(zeros);
        } else {
            report.p_zeros = Some(zeros);
        }
    }

    if rules.dominated {
        let f = f.as_ref().unwrap();
        let samples: Vec<(f64, f64)> = (0..DOMINATION_SAMPLES)
            .map(|i| {
                let z = Complex64::from_polar(k, TAU * i as f64 / DOMINATION_SAMPLES as f64);
                (p.eval(z).norm(), f.eval(z).norm())
            })
            .collect();
        let scale = samples.iter().map(|s| s.1).fold(0.0, f64::max);
        let margin = samples.iter().map(|(pv, fv)| fv - pv).fold(f64::INFINITY, f64::min);
        if margin < -DOMINATION_TOL * scale {
            return Err(violated("|P| <= |F| on |z| = k"));
        }
        report.domination_margin = Some(margin);
        report.verified.push("|P| <= |F| on |z| = k".into());
    }

    let cached = precompute(id, p, f.as_ref(), spec, k_eff, &rules)?;
    Ok(InequalityInstance {
        id,
        p: p.clone(),
        f,
        spec: spec.clone(),
        hypotheses: report,
        cached,
        mutation: Mutation::None,
    })
}

fn precompute(
    id: InequalityId,
    p: &Polynomial,
    f: Option<&Polynomial>,
    spec: &PolarSpec,
    k_eff: f64,
    rules: &Premises,
) -> Result<Cached> {
    use InequalityId::*;
    let n = spec.n;
    let uses_s = rules.s != SRule::Unused;
    let s = if uses_s { spec.s() } else { 0 };
    let chain_spec = PolarSpec { k: k_eff, ..spec.clone() };
    let n_s = falling_factorial(n, s)? as f64;
    let lambda = if uses_s && rules.alpha != AlphaRule::Unused { lambda_product(&chain_spec)? } else { 1.0 };
    let c = n_s * lambda / (1.0 + k_eff).powi(s as i32);

    let chain = |poly: &Polynomial| -> Result<Polynomial> {
        if uses_s {
            polar_chain(poly, &chain_spec)
        } else {
            Ok(Polynomial::zero())
        }
    };
    let p_chain = chain(p)?;
    let p_deriv = p.sth_derivative(s);
    let (f_chain, f_deriv) = match f {
        Some(f) => (chain(f)?, f.sth_derivative(s)),
        None => (Polynomial::zero(), Polynomial::zero()),
    };
    let (r_poly, r_chain) = if id == LE5 {
        let r = p
            .conjugate_reciprocal(n)?
            .scale_argument(Complex64::new(1.0 / (k_eff * k_eff), 0.0));
        let rc = chain(&r)?;
        (r, rc)
    } else {
        (Polynomial::zero(), Polynomial::zero())
    };

    let radius = if rules.unit_circle { 1.0 } else { k_eff };
    let max = extremum(p, radius, ExtremumKind::Max)?;
    let needs_min = matches!(id, AWE | CE4 | CE5 | TE3 | CE7 | CE8 | CE9 | CE10 | CE11);
    let min = if needs_min { extremum(p, radius, ExtremumKind::Min)? } else { f64::NAN };

    let nf = n as f64;
    let constant_sides = match id {
        E1 | E2 | E3 | E4 | E5 => {
            let dp = p.derivative();
            let max_dp = if dp.is_zero() { 0.0 } else { extremum(&dp, 1.0, ExtremumKind::Max)? };
            let factor = match id {
                E1 => nf,
                E2 | E3 => nf / 2.0,
                _ => nf / (1.0 + spec.k),
            };
            Some((max_dp, factor * max))
        }
        LE3 => Some(((p.coeff(n - 1) / p.coeff(n)).norm() / nf, spec.k)),
        _ => None,
    };

    Ok(Cached {
        n_s,
        lambda,
        c,
        alpha_product: if uses_s { chain_spec.alpha_product() } else { Complex64::new(1.0, 0.0) },
        p_chain,
        p_deriv,
        f_chain,
        f_deriv,
        r_poly,
        r_chain,
        max,
        min,
        constant_sides,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn te1_accepts_scaled_pair() {
        let f = Polynomial::monomial(c(1.0, 0.0), 2);
        let p = Polynomial::monomial(c(0.5, 0.0), 2);
        let spec = PolarSpec::new(2, 1.0, vec![c(2.0, 0.0)], c(0.5, 0.0));
        let inst = build_instance(InequalityId::TE1, &p, Some(&f), &spec).unwrap();
        assert!(inst.hypotheses.domination_margin.unwrap() >= 0.49);
    }

    #[test]
    fn te2_boundary_zero_is_allowed() {
        let p = Polynomial::from_real(&[1.0, 2.0, 1.0]);
        for k in [0.5, 1.0] {
            let spec = PolarSpec::new(2, k, vec![c(2.0, 0.0)], c(0.0, 0.0));
            assert!(build_instance(InequalityId::TE2, &p, None, &spec).is_ok());
        }
    }

    #[test]
    fn te1_rejects_small_alpha() {
        let f = Polynomial::monomial(c(1.0, 0.0), 2);
        let p = Polynomial::monomial(c(0.5, 0.0), 2);
        let spec = PolarSpec::new(2, 0.8, vec![c(0.4, 0.0)], c(0.0, 0.0));
        let err = build_instance(InequalityId::TE1, &p, Some(&f), &spec).unwrap_err();
        assert_eq!(err.to_string(), "hypothesis violated: |alpha_1| >= k");
    }

    #[test]
    fn rejects_named_premises() {
        let spec = PolarSpec::new(2, 1.0, vec![c(2.0, 0.0)], c(0.0, 0.0));
        // zero at 0.5 is inside |z| < 1
        let p = Polynomial::from_real(&[-0.5, 1.0, 1.0]);
        let err = build_instance(InequalityId::TE2, &p, None, &spec).unwrap_err();
        assert!(err.to_string().contains("no zero in |z| < 1"), "{err}");

        let f = Polynomial::monomial(c(1.0, 0.0), 2);
        let p = Polynomial::monomial(c(1.5, 0.0), 2);
        let err = build_instance(InequalityId::TE1, &p, Some(&f), &spec).unwrap_err();
        assert_eq!(err.to_string(), "hypothesis violated: |P| <= |F| on |z| = k");

        let big_beta = PolarSpec::new(2, 1.0, vec![c(2.0, 0.0)], c(1.0, 0.5));
        let p = Polynomial::from_real(&[1.0, 0.0, 1.0]);
        let err = build_instance(InequalityId::TE2, &p, None, &big_beta).unwrap_err();
        assert_eq!(err.to_string(), "hypothesis violated: |beta| <= 1");

        let long = PolarSpec::new(2, 1.0, vec![c(2.0, 0.0), c(2.0, 0.0)], c(0.0, 0.0));
        assert!(build_instance(InequalityId::TE2, &p, None, &long).is_err());

        let wrong_degree = PolarSpec::new(3, 1.0, vec![c(2.0, 0.0)], c(0.0, 0.0));
        assert!(build_instance(InequalityId::TE2, &p, None, &wrong_degree).is_err());

        let e4_small_k = PolarSpec::new(2, 0.5, vec![c(2.0, 0.0)], c(0.0, 0.0));
        assert!(build_instance(InequalityId::E4, &p, None, &e4_small_k).is_err());
    }
}
