//! Dense univariate polynomials with complex coefficients.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::ops::{Add, Mul, Neg, Sub};

/// A polynomial `a_0 + a_1 z + ... + a_n z^n` stored by ascending powers.
///
/// Trailing zero coefficients are always trimmed, so the last stored
/// coefficient is nonzero and `degree() == coeffs.len() - 1`. The zero
/// polynomial has no coefficients and no degree.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming exact trailing zeros.
    pub fn from_coeffs(coeffs: impl Into<Vec<Complex64>>) -> Self {
        let mut coeffs = coeffs.into();
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect::<Vec<_>>())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `a z^n`.
    pub fn monomial(a: Complex64, n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = a;
        Self::from_coeffs(coeffs)
    }

    /// `lead * prod (z - r_i)`.
    pub fn from_roots(roots: &[Complex64], lead: Complex64) -> Result<Self> {
        if lead == Complex64::new(0.0, 0.0) {
            return Err(Error::DegenerateLeadingCoefficient);
        }
        let mut coeffs = Vec::with_capacity(roots.len() + 1);
        coeffs.push(lead);
        for &r in roots {
            // multiply by (z - r) in place
            coeffs.push(Complex64::new(0.0, 0.0));
            for j in (1..coeffs.len()).rev() {
                coeffs[j] = coeffs[j - 1] - r * coeffs[j];
            }
            coeffs[0] = -r * coeffs[0];
        }
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^j` (zero beyond the degree).
    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs.get(j).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    pub fn derivative(&self) -> Self {
        let coeffs: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &a)| a * j as f64)
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// The `s`-fold derivative; `s = 0` returns a copy.
    pub fn sth_derivative(&self, s: usize) -> Self {
        if s >= self.coeffs.len() {
            return Self::zero();
        }
        let coeffs: Vec<_> = self.coeffs[s..]
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let j = i + s;
                let factor: f64 = (j - s + 1..=j).map(|f| f as f64).product();
                a * factor
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// `Q(z) = z^n conj(P(1/conj z))`, i.e. `Q` has coefficients `conj(a_{n-j})`.
    ///
    /// `n` is the nominal degree and may exceed the numerical degree of `self`.
    pub fn conjugate_reciprocal(&self, n: usize) -> Result<Self> {
        let degree = self.degree().unwrap_or(0);
        if n < degree {
            return Err(Error::DegreeContextTooSmall { context: n, degree });
        }
        let coeffs: Vec<_> = (0..=n).map(|j| self.coeff(n - j).conj()).collect();
        Ok(Self::from_coeffs(coeffs))
    }

    /// `z -> P(c z)`.
    pub fn scale_argument(&self, c: Complex64) -> Self {
        let mut power = Complex64::new(1.0, 0.0);
        let coeffs: Vec<_> = self
            .coeffs
            .iter()
            .map(|&a| {
                let out = a * power;
                power *= c;
                out
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&a| a * c).collect::<Vec<_>>())
    }

    /// Multiplies by `z^m`.
    pub fn shift(&self, m: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); m];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// `sum |a_j| r^j`, the natural size of `P` on the circle `|z| = r`.
    pub fn abs_coeff_sum(&self, r: f64) -> f64 {
        let mut power = 1.0;
        let mut total = 0.0;
        for a in &self.coeffs {
            total += a.norm() * power;
            power *= r;
        }
        total
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let poly: Polynomial = serde_json::from_str(text)?;
        Ok(poly)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..len).map(|j| self.coeff(j) + rhs.coeff(j)).collect::<Vec<_>>())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..len).map(|j| self.coeff(j) - rhs.coeff(j)).collect::<Vec<_>>())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    coeffs: Vec<[f64; 2]>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            coeffs: self.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(deserializer)?;
        if raw.coeffs.iter().flatten().any(|x| !x.is_finite()) {
            return Err(serde::de::Error::custom("coefficients must be finite"));
        }
        Ok(Polynomial::from_coeffs(
            raw.coeffs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect::<Vec<_>>(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn construction_trims_trailing_zeros() {
        let half = Polynomial::from_coeffs(vec![c(0.5, 0.0), c(0.0, 0.0), c(0.5, 0.0)]);
        assert_eq!(half.degree(), Some(2));

        let sq = Polynomial::from_real(&[1.0, 2.0, 1.0, 0.0]);
        assert_eq!(sq.degree(), Some(2));
        assert_eq!(sq.coeffs(), &[c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);

        let zero = Polynomial::from_real(&[0.0]);
        assert!(zero.is_zero());
        assert_eq!(zero.degree(), None);
        assert_eq!(zero.eval(c(3.0, 1.0)), c(0.0, 0.0));
    }

    #[test]
    fn eval_small_cases() {
        let half = Polynomial::from_real(&[0.5, 0.0, 0.5]);
        assert_eq!(half.eval(c(1.0, 0.0)), c(1.0, 0.0));
        let cube = Polynomial::monomial(c(1.0, 0.0), 3);
        assert_eq!(cube.eval(c(0.0, 2.0)), c(0.0, -8.0));
    }

    #[test]
    fn sth_derivative_cases() {
        let cube = Polynomial::monomial(c(1.0, 0.0), 3);
        assert_eq!(cube.sth_derivative(2), Polynomial::from_real(&[0.0, 6.0]));
        let p = Polynomial::from_real(&[1.0, -2.0, 0.5, 3.0]);
        assert_eq!(p.sth_derivative(0), p);
        assert_eq!(p.sth_derivative(1), p.derivative());
        assert_eq!(p.sth_derivative(2), p.derivative().derivative());
        let cubed = Polynomial::from_real(&[1.0, 3.0, 3.0, 1.0]);
        assert!(cubed.sth_derivative(4).is_zero());
        assert!(cubed.sth_derivative(3).degree() == Some(0));
    }

    #[test]
    fn from_roots_cases() {
        let p = Polynomial::from_roots(&[c(-1.0, 0.0), c(-1.0, 0.0)], c(1.0, 0.0)).unwrap();
        assert_eq!(p, Polynomial::from_real(&[1.0, 2.0, 1.0]));
        let k = Polynomial::from_roots(&[], c(3.0, 0.0)).unwrap();
        assert_eq!(k, Polynomial::from_real(&[3.0]));
        let q = Polynomial::from_roots(&[c(0.0, 1.0), c(0.0, -1.0)], c(1.0, 0.0)).unwrap();
        assert_eq!(q, Polynomial::from_real(&[1.0, 0.0, 1.0]));
        assert!(matches!(
            Polynomial::from_roots(&[c(1.0, 0.0)], c(0.0, 0.0)),
            Err(Error::DegenerateLeadingCoefficient)
        ));
    }

    #[test]
    fn conjugate_reciprocal_cases() {
        let a = c(2.0, -1.0);
        let q = Polynomial::monomial(a, 4).conjugate_reciprocal(4).unwrap();
        assert_eq!(q, Polynomial::constant(a.conj()));

        let half = Polynomial::from_real(&[0.5, 0.0, 0.5]);
        assert_eq!(half.conjugate_reciprocal(2).unwrap(), half);

        // z - 2i  ->  1 + 2i z
        let p = Polynomial::from_coeffs(vec![c(0.0, -2.0), c(1.0, 0.0)]);
        let q = p.conjugate_reciprocal(1).unwrap();
        assert_eq!(q, Polynomial::from_coeffs(vec![c(1.0, 0.0), c(0.0, 2.0)]));
        assert_eq!(q.conjugate_reciprocal(1).unwrap(), p);

        assert!(matches!(
            half.conjugate_reciprocal(1),
            Err(Error::DegreeContextTooSmall { context: 1, degree: 2 })
        ));
    }

    #[test]
    fn scale_argument_cases() {
        let p = Polynomial::from_real(&[1.0, 0.0, 1.0]);
        assert_eq!(p.scale_argument(c(2.0, 0.0)), Polynomial::from_real(&[1.0, 0.0, 4.0]));
        assert_eq!(p.scale_argument(c(1.0, 0.0)), p);
    }

    #[test]
    fn modulus_identity_on_inner_circle() {
        // |k^n Q(z/k^2)| = |P(z)| on |z| = k
        let k: f64 = 0.5;
        let p = Polynomial::from_real(&[0.5, 0.0, 0.5]);
        let q = p.conjugate_reciprocal(2).unwrap();
        let scaled = q.scale_argument(c(1.0 / (k * k), 0.0));
        for i in 0..64 {
            let z = Complex64::from_polar(k, i as f64 * 0.1);
            let lhs = k.powi(2) * scaled.eval(z).norm();
            let rhs = p.eval(z).norm();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300), "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn json_rejects_non_finite_and_parses() {
        let p = Polynomial::from_json(r#"{"coeffs": [[1.0, 0.0], [0.0, 2.0]]}"#).unwrap();
        assert_eq!(p.coeffs(), &[c(1.0, 0.0), c(0.0, 2.0)]);
        assert!(Polynomial::from_json(r#"{"coeffs": [[1e400, 0.0]]}"#).is_err());
        assert!(Polynomial::from_json(r#"{"coeffs": [[NaN, 0.0]]}"#).is_err());
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(Polynomial::from_json(&text).unwrap(), p);
    }
}
