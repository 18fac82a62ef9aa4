//! Polar derivatives and the constants attached to iterated chains of them.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Parameters shared by every polar-derivative inequality.
///
/// `n` is the nominal degree, `alphas` are the poles `a_1..a_s` applied in
/// order, `k` the critical radius and `beta` the mixing coefficient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarSpec {
    pub n: usize,
    pub k: f64,
    pub alphas: Vec<Complex64>,
    pub beta: Complex64,
}

impl PolarSpec {
    pub fn new(n: usize, k: f64, alphas: Vec<Complex64>, beta: Complex64) -> Self {
        Self { n, k, alphas, beta }
    }

    /// Chain length.
    pub fn s(&self) -> usize {
        self.alphas.len()
    }

    /// `a_1 a_2 ... a_s`.
    pub fn alpha_product(&self) -> Complex64 {
        self.alphas.iter().product()
    }

    /// `n_s Lambda_s / (1 + k)^s`.
    pub fn chain_constant(&self) -> Result<f64> {
        let ns = falling_factorial(self.n, self.s())? as f64;
        Ok(ns * lambda_product(self)? / (1.0 + self.k).powi(self.s() as i32))
    }
}

/// `D_a P(z) = n P(z) + (a - z) P'(z)`.
pub fn polar_derivative(p: &Polynomial, n: usize, alpha: Complex64) -> Result<Polynomial> {
    let degree = p.degree().unwrap_or(0);
    if n < degree {
        return Err(Error::DegreeContextTooSmall { context: n, degree });
    }
    let dp = p.derivative();
    let len = p.coeffs().len();
    let coeffs: Vec<_> = (0..len)
        .map(|j| {
            let shifted = if j > 0 { dp.coeff(j - 1) } else { Complex64::new(0.0, 0.0) };
            p.coeff(j) * n as f64 + alpha * dp.coeff(j) - shifted
        })
        .collect();
    Ok(Polynomial::from_coeffs(coeffs))
}

/// `P_s = D_{a_s} ... D_{a_1} P`, where step `j` uses degree context `n - j + 1`.
pub fn polar_chain(p: &Polynomial, spec: &PolarSpec) -> Result<Polynomial> {
    if spec.s() == 0 {
        return Ok(p.clone());
    }
    if spec.s() > spec.n {
        return Err(Error::InvalidArgument(format!(
            "chain length {} exceeds degree context {}",
            spec.s(),
            spec.n
        )));
    }
    spec.alphas
        .iter()
        .enumerate()
        .try_fold(p.clone(), |acc, (j, &alpha)| polar_derivative(&acc, spec.n - j, alpha))
}

/// `n (n - 1) ... (n - s + 1)`, with the empty product equal to one.
pub fn falling_factorial(n: usize, s: usize) -> Result<u128> {
    if s > n {
        return Err(Error::InvalidArgument(format!("falling factorial needs s <= n (s = {s}, n = {n})")));
    }
    (n - s + 1..=n).try_fold(1u128, |acc, f| {
        acc.checked_mul(f as u128)
            .ok_or_else(|| Error::InvalidArgument(format!("falling factorial overflow at n = {n}, s = {s}")))
    })
}

/// `Lambda_s = prod (|a_j| - k)`.
pub fn lambda_product(spec: &PolarSpec) -> Result<f64> {
    spec.alphas.iter().enumerate().try_fold(1.0, |acc, (j, alpha)| {
        let gap = alpha.norm() - spec.k;
        if gap < 0.0 {
            Err(Error::HypothesisViolated(format!("|alpha_{}| >= k", j + 1)))
        } else {
            Ok(acc * gap)
        }
    })
}
