//! Registry of polar-derivative inequalities and the machinery to check them.
//!
//! Every entry compares two nonnegative quantities `lhs` and `rhs` at a point
//! `z`, either `lhs <= rhs` or `lhs >= rhs`. Notation used in the registry:
//!
//! - `P_s = D_{a_s} ... D_{a_1} P`, `P^(s)` the ordinary `s`-th derivative;
//! - `n_s = n (n-1) ... (n-s+1)`, `L_s = prod (|a_j| - k)`;
//! - `c = n_s L_s / (1+k)^s`, `b = beta L_s / (1+k)^s`, `A = a_1 ... a_s`;
//! - `M`, `m` the max and min of `|P|` on `|z| = k` (on `|z| = 1` where noted);
//! - `X = |z|^n / k^n * |A + b|`, `Y = |z^s + b|`;
//! - `Q(z) = z^n conj(P(1/conj z))` and `R(z) = Q(z / k^2)`.

mod check;
mod evaluate;
mod instance;

pub use check::{check_inequality, sharpness_probe, CheckParams, InequalityReport};
pub use evaluate::{evaluate_sides, min_term_bracket};
pub use instance::{build_instance, HypothesisReport, InequalityInstance, Mutation};
pub(crate) use instance::{premises, AlphaRule, KRule, SRule, ZeroRule};

use crate::error::Error;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InequalityId {
    E1,
    E2,
    E3,
    E4,
    E5,
    AE,
    AWE,
    TE1,
    CE1,
    CE2,
    CE3,
    CE4,
    CE5,
    #[serde(rename = "CE_S1")]
    CES1,
    TE2,
    TE3,
    CE7,
    CE8,
    CE9,
    CE10,
    CE11,
    LE2,
    LE3,
    LE4,
    LE5,
}

impl InequalityId {
    pub const ALL: [InequalityId; 25] = [
        Self::E1,
        Self::E2,
        Self::E3,
        Self::E4,
        Self::E5,
        Self::AE,
        Self::AWE,
        Self::TE1,
        Self::CE1,
        Self::CE2,
        Self::CE3,
        Self::CE4,
        Self::CE5,
        Self::CES1,
        Self::TE2,
        Self::TE3,
        Self::CE7,
        Self::CE8,
        Self::CE9,
        Self::CE10,
        Self::CE11,
        Self::LE2,
        Self::LE3,
        Self::LE4,
        Self::LE5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::E1 => "E1",
            Self::E2 => "E2",
            Self::E3 => "E3",
            Self::E4 => "E4",
            Self::E5 => "E5",
            Self::AE => "AE",
            Self::AWE => "AWE",
            Self::TE1 => "TE1",
            Self::CE1 => "CE1",
            Self::CE2 => "CE2",
            Self::CE3 => "CE3",
            Self::CE4 => "CE4",
            Self::CE5 => "CE5",
            Self::CES1 => "CE_S1",
            Self::TE2 => "TE2",
            Self::TE3 => "TE3",
            Self::CE7 => "CE7",
            Self::CE8 => "CE8",
            Self::CE9 => "CE9",
            Self::CE10 => "CE10",
            Self::CE11 => "CE11",
            Self::LE2 => "LE2",
            Self::LE3 => "LE3",
            Self::LE4 => "LE4",
            Self::LE5 => "LE5",
        }
    }

    pub fn valid_ids() -> String {
        Self::ALL.iter().map(|id| id.as_str()).collect::<Vec<_>>().join(" ")
    }

    /// Parses a comma-separated list; `ALL` expands to the whole registry.
    pub fn parse_list(text: &str) -> Result<Vec<InequalityId>, Error> {
        let mut ids = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part.eq_ignore_ascii_case("ALL") {
                ids.extend(Self::ALL);
            } else {
                ids.push(part.parse()?);
            }
        }
        if ids.is_empty() {
            return Err(Error::UnknownInequality {
                given: text.to_string(),
                valid: Self::valid_ids(),
            });
        }
        let mut seen = std::collections::BTreeSet::new();
        ids.retain(|id| seen.insert(*id));
        Ok(ids)
    }

    pub fn def(self) -> &'static InequalityDef {
        &REGISTRY[Self::ALL.iter().position(|&id| id == self).unwrap()]
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownInequality {
                given: s.to_string(),
                valid: Self::valid_ids(),
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// `lhs <= rhs`
    AtMost,
    /// `lhs >= rhs`
    AtLeast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZDomain {
    /// Both sides are circle maxima or coefficients; `z` is ignored.
    Constant,
    /// Pointwise on `|z| = 1`.
    UnitCircle,
    /// Pointwise on `|z| >= 1`.
    OutsideUnitDisk,
}

#[derive(Debug)]
pub struct InequalityDef {
    pub id: InequalityId,
    /// Where the inequality comes from.
    pub source: &'static str,
    pub hypotheses: &'static str,
    pub lhs: &'static str,
    pub relation: Relation,
    pub rhs: &'static str,
    pub domain: ZDomain,
}

macro_rules! def {
    ($id:ident, $source:expr, $hyp:expr, $lhs:expr, $rel:ident, $rhs:expr, $dom:ident) => {
        InequalityDef {
            id: InequalityId::$id,
            source: $source,
            hypotheses: $hyp,
            lhs: $lhs,
            relation: Relation::$rel,
            rhs: $rhs,
            domain: ZDomain::$dom,
        }
    };
}

pub static REGISTRY: [InequalityDef; 25] = [
    def!(E1, "Bernstein", "deg P = n", "max_{|z|=1} |P'|", AtMost, "n max_{|z|=1} |P|", Constant),
    def!(E2, "Erdos-Lax", "P has no zero in |z| < 1", "max_{|z|=1} |P'|", AtMost, "(n/2) max_{|z|=1} |P|", Constant),
    def!(E3, "Turan", "all zeros of P in |z| <= 1", "max_{|z|=1} |P'|", AtLeast, "(n/2) max_{|z|=1} |P|", Constant),
    def!(E4, "Malik, k >= 1", "P has no zero in |z| < k, k >= 1", "max_{|z|=1} |P'|", AtMost, "n/(1+k) max_{|z|=1} |P|", Constant),
    def!(E5, "Malik, k <= 1", "all zeros of P in |z| <= k, k <= 1", "max_{|z|=1} |P'|", AtLeast, "n/(1+k) max_{|z|=1} |P|", Constant),
    def!(AE, "Aziz, s-th polar derivative", "P has no zero in |z| < 1; |a_j| >= 1", "|P_s(z)|", AtMost,
        "(n_s/2) (|A| |z|^(n-s) + 1) max_{|z|=1} |P|", OutsideUnitDisk),
    def!(AWE, "Aziz and Wali Mohammad refinement", "P has no zero in |z| < 1; |a_j| >= 1", "|P_s(z)|", AtMost,
        "(n_s/2) [(|A| |z|^(n-s) + 1) max_{|z|=1} |P| - (|A| |z|^(n-s) - 1) min_{|z|=1} |P|]", OutsideUnitDisk),
    def!(TE1, "dominated pair, polar form", "all zeros of F in |z| <= k; |P| <= |F| on |z| = k; |a_j| >= k; |beta| <= 1",
        "|z^s P_s + beta c P|", AtMost, "|z^s F_s + beta c F|", OutsideUnitDisk),
    def!(CE1, "dominated pair with F = M z^n / k^n", "|a_j| >= k; |beta| <= 1",
        "|z^s P_s + beta c P|", AtMost, "n_s X M", OutsideUnitDisk),
    def!(CE2, "CE1 as |a| -> infinity", "|beta| <= 1",
        "|z^s P^(s) + beta n_s/(1+k)^s P|", AtMost, "n_s |z|^n / k^n |1 + beta/(1+k)^s| M", OutsideUnitDisk),
    def!(CE3, "TE1 as |a| -> infinity", "all zeros of F in |z| <= k; |P| <= |F| on |z| = k; |beta| <= 1",
        "|z^s P^(s) + beta n_s/(1+k)^s P|", AtMost, "|z^s F^(s) + beta n_s/(1+k)^s F|", OutsideUnitDisk),
    def!(CE4, "dominated pair with P = m z^n / k^n", "all zeros of P in |z| <= k; |a_j| >= k; |beta| <= 1",
        "|z^s P_s + beta c P|", AtLeast, "n_s X m", OutsideUnitDisk),
    def!(CE5, "CE4 as |a| -> infinity", "all zeros of P in |z| <= k; |beta| <= 1",
        "|z^s P^(s) + beta n_s/(1+k)^s P|", AtLeast, "n_s |z|^n / k^n |1 + beta/(1+k)^s| m", OutsideUnitDisk),
    def!(CES1, "TE1 with s = 1", "all zeros of F in |z| <= k; |P| <= |F| on |z| = k; |a| >= k; |beta| <= 1",
        "|z D_a P + n beta (|a|-k)/(1+k) P|", AtMost, "|z D_a F + n beta (|a|-k)/(1+k) F|", OutsideUnitDisk),
    def!(TE2, "polar form, no zeros in |z| < k", "P has no zero in |z| < k; |a_j| >= k; |beta| <= 1",
        "|z^s P_s + beta c P|", AtMost, "(n_s/2) (X + Y) M", OutsideUnitDisk),
    def!(TE3, "TE2 refined by the minimum", "P has no zero in |z| < k; |a_j| >= k; |beta| <= 1",
        "|z^s P_s + beta c P|", AtMost, "(n_s/2) [(X + Y) M - (X - Y) m]", OutsideUnitDisk),
    def!(CE7, "TE3 as |a| -> infinity", "P has no zero in |z| < k; |beta| <= 1",
        "|z^s P^(s) + beta n_s/(1+k)^s P|", AtMost,
        "(n_s/2) [(X' + Y') M - (X' - Y') m], X' = |z|^n/k^n |1 + beta/(1+k)^s|, Y' = |beta|/(1+k)^s", OutsideUnitDisk),
    def!(CE8, "CE7 with s = 1", "P has no zero in |z| < k; |beta| <= 1",
        "|z P' + n beta/(1+k) P|", AtMost, "(n/2) [(X' + Y') M - (X' - Y') m]", OutsideUnitDisk),
    def!(CE9, "TE3 with beta = 0", "P has no zero in |z| < k; |a_j| >= k",
        "|P_s(z)|", AtMost, "(n_s/2) [(W + 1) M - (W - 1) m], W = |z|^(n-s) |A| / k^n", OutsideUnitDisk),
    def!(CE10, "CE9 as |a| -> infinity", "P has no zero in |z| < k",
        "|P^(s)(z)|", AtMost, "n_s |z|^(n-s) / (2 k^n) (M - m)", OutsideUnitDisk),
    def!(CE11, "TE3 with s = 1", "P has no zero in |z| < k; |a| >= k; |beta| <= 1",
        "|z D_a P + n beta (|a|-k)/(1+k) P|", AtMost, "(n/2) [(X + Y) M - (X - Y) m] at s = 1", OutsideUnitDisk),
    def!(LE2, "Aziz and Rather", "all zeros of P in |z| <= k, k <= 1; |a| >= k",
        "|D_a P(z)|", AtLeast, "n (|a| - k)/(1 + k) |P(z)|", UnitCircle),
    def!(LE3, "leading coefficient bound", "all zeros of P in |z| <= k, k <= 1",
        "(1/n) |a_(n-1) / a_n|", AtMost, "k", Constant),
    def!(LE4, "iterated Aziz and Rather", "all zeros of P in |z| <= k, k <= 1; |a_j| >= k; 1 <= s < n",
        "|P_s(z)|", AtLeast, "c |P(z)|", UnitCircle),
    def!(LE5, "sum with the conjugate-reciprocal", "|a_j| >= k; |beta| <= 1",
        "|z^s P_s + beta c P| + k^n |z^s R_s + beta c R|", AtMost, "n_s (X + Y) M", OutsideUnitDisk),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_in_id_order() {
        for (def, id) in REGISTRY.iter().zip(InequalityId::ALL) {
            assert_eq!(def.id, id);
            assert_eq!(id.def().id, id);
        }
    }

    #[test]
    fn ids_round_trip_through_strings() {
        for id in InequalityId::ALL {
            assert_eq!(id.as_str().parse::<InequalityId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.as_str()));
        }
        assert_eq!(InequalityId::valid_ids().split(' ').count(), 25);
    }

    #[test]
    fn parse_list_handles_all_and_unknown() {
        assert_eq!(InequalityId::parse_list("ALL").unwrap().len(), 25);
        assert_eq!(
            InequalityId::parse_list("TE1,TE3,TE1").unwrap(),
            vec![InequalityId::TE1, InequalityId::TE3]
        );
        let err = InequalityId::parse_list("TE9").unwrap_err();
        assert!(err.to_string().contains("CE_S1"), "{err}");
    }
}
