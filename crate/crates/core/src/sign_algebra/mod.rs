//! Symbolic sign arithmetic for real spectral triples.
//!
//! A real structure `J` on an `n`-dimensional (mod 8) triple satisfies
//! `J² = ε`, `JD = ε′DJ` and, for even `n`, `Jγ = ε″γJ`. This module holds
//! the mod-8 sign table, the sign composition rules for product triples and
//! the rule that picks a product real structure obeying the table.

mod tables;

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use tables::{published_verdicts, reproduce_table, KoRow, ProductRow, Table};

/// A sign factor `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_bool(positive: bool) -> Self {
        if positive {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.as_i8())
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_bool(self == rhs)
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => f.write_str("+"),
            Sign::Minus => f.write_str("−"),
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "+" => Ok(Sign::Plus),
            "-" | "−" => Ok(Sign::Minus),
            other => Err(serde::de::Error::custom(format!("not a sign: {other:?}"))),
        }
    }
}

/// A dimension class modulo 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KODim(u8);

impl KODim {
    /// Reduces any integer to its class mod 8.
    pub fn new(n: i64) -> Self {
        KODim(n.rem_euclid(8) as u8)
    }

    /// Accepts only representatives already in `0..8`.
    pub fn strict(n: i64) -> Result<Self> {
        if (0..8).contains(&n) {
            Ok(KODim(n as u8))
        } else {
            Err(Error::DimensionOutOfRange(n))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_even(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn all() -> impl Iterator<Item = KODim> {
        (0..8).map(KODim)
    }
}

impl std::ops::Add for KODim {
    type Output = KODim;

    fn add(self, rhs: KODim) -> KODim {
        KODim((self.0 + rhs.0) % 8)
    }
}

impl fmt::Display for KODim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The signs `(ε, ε′, ε″)` of a real structure; `ε″` is absent in odd classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KOSigns {
    pub epsilon: Sign,
    pub epsilon_prime: Sign,
    pub epsilon_dprime: Option<Sign>,
}

impl KOSigns {
    pub fn new(epsilon: Sign, epsilon_prime: Sign, epsilon_dprime: Option<Sign>) -> Self {
        KOSigns {
            epsilon,
            epsilon_prime,
            epsilon_dprime,
        }
    }

    pub fn is_even(&self) -> bool {
        self.epsilon_dprime.is_some()
    }
}

impl fmt::Display for KOSigns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ε={} ε′={} ε″=", self.epsilon, self.epsilon_prime)?;
        match self.epsilon_dprime {
            Some(s) => write!(f, "{s}"),
            None => f.write_str("—"),
        }
    }
}

/// How the real structure of a product triple is assembled from the factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProductRule {
    /// `J₁ ⊗ J₂`
    #[serde(rename = "naive")]
    Naive,
    /// `J₁γ₁ ⊗ J₂`, for total class 5 or 1.
    #[serde(rename = "cure1")]
    CureFirst,
    /// `J₁ ⊗ J₂γ₂`, for first class 6 or 2 and an even second factor.
    #[serde(rename = "cure2")]
    CureSecond,
}

impl ProductRule {
    pub fn name(self) -> &'static str {
        match self {
            ProductRule::Naive => "naive",
            ProductRule::CureFirst => "cure1",
            ProductRule::CureSecond => "cure2",
        }
    }

    /// Checks the rule against the factor classes.
    pub fn check_legal(self, n1: KODim, n2: KODim) -> Result<()> {
        if !n1.is_even() {
            return Err(Error::OddFirstFactor(n1.value()));
        }
        let legal = match self {
            ProductRule::Naive => true,
            ProductRule::CureFirst => matches!((n1 + n2).value(), 1 | 5),
            ProductRule::CureSecond => matches!(n1.value(), 2 | 6) && n2.is_even(),
        };
        if legal {
            Ok(())
        } else {
            Err(Error::IllegalRule {
                rule: self,
                n1: n1.value(),
                n2: n2.value(),
            })
        }
    }
}

impl fmt::Display for ProductRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Signs of a product real structure together with the verdicts against the
/// sign table of the total class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSignOutcome {
    pub n: KODim,
    pub epsilon: Sign,
    /// Present only when both candidates agree.
    pub epsilon_prime: Option<Sign>,
    /// Sign picked up by `D₁ ⊗ Id` and by `γ₁ ⊗ D₂` respectively.
    pub epsilon_prime_candidates: (Sign, Sign),
    pub epsilon_dprime: Option<Sign>,
    pub verdict_eps: bool,
    pub verdict_eps_prime: bool,
    /// Only defined when both factors are even.
    pub verdict_eps_dprime: Option<bool>,
}

impl ProductSignOutcome {
    pub fn all_pass(&self) -> bool {
        self.verdict_eps && self.verdict_eps_prime && self.verdict_eps_dprime.unwrap_or(true)
    }
}

const TABLE: [(Sign, Sign, Option<Sign>); 8] = {
    use Sign::{Minus as M, Plus as P};
    [
        (P, P, Some(P)),
        (P, M, None),
        (M, P, Some(M)),
        (M, P, None),
        (M, P, Some(P)),
        (M, M, None),
        (P, P, Some(M)),
        (P, P, None),
    ]
};

/// The mod-8 sign table.
pub fn ko_signs(n: KODim) -> KOSigns {
    let (e, ep, edp) = TABLE[n.value() as usize];
    KOSigns::new(e, ep, edp)
}

/// Signs of `Jγ` given the signs of `J`: `(εε″, −ε′, ε″)`.
pub fn twist_signs(s: KOSigns) -> Result<KOSigns> {
    let edp = s.epsilon_dprime.ok_or(Error::TwistWithoutGrading)?;
    Ok(KOSigns::new(s.epsilon * edp, -s.epsilon_prime, Some(edp)))
}

/// Composes the signs of `J₁ ⊗ J₂` with `D = D₁⊗Id + γ₁⊗D₂` and checks them
/// against the table row of `n_total`.
pub fn naive_product_signs(s1: KOSigns, s2: KOSigns, n_total: KODim) -> Result<ProductSignOutcome> {
    let edp1 = s1.epsilon_dprime.ok_or(Error::OddFirstFactorSigns)?;
    let required = ko_signs(n_total);

    let epsilon = s1.epsilon * s2.epsilon;
    let candidates = (s1.epsilon_prime, edp1 * s2.epsilon_prime);
    let epsilon_prime = (candidates.0 == candidates.1).then_some(candidates.0);
    let epsilon_dprime = s2.epsilon_dprime.map(|edp2| edp1 * edp2);

    let verdict_eps_dprime = match (epsilon_dprime, required.epsilon_dprime) {
        (Some(got), Some(want)) => Some(got == want),
        (None, None) => None,
        // parity of the total class always follows the second factor
        _ => Some(false),
    };

    Ok(ProductSignOutcome {
        n: n_total,
        epsilon,
        epsilon_prime,
        epsilon_prime_candidates: candidates,
        epsilon_dprime,
        verdict_eps: epsilon == required.epsilon,
        verdict_eps_prime: epsilon_prime == Some(required.epsilon_prime),
        verdict_eps_dprime,
    })
}

/// Picks the product real structure that keeps the sign table valid.
pub fn select_rule(n1: KODim, n2: KODim) -> Result<ProductRule> {
    if !n1.is_even() {
        return Err(Error::OddFirstFactor(n1.value()));
    }
    let rule = if matches!((n1 + n2).value(), 1 | 5) {
        ProductRule::CureFirst
    } else if matches!(n1.value(), 2 | 6) && n2.is_even() {
        ProductRule::CureSecond
    } else {
        ProductRule::Naive
    };
    Ok(rule)
}

/// Signs of the product real structure built with `rule`.
pub fn product_signs(n1: KODim, n2: KODim, rule: ProductRule) -> Result<ProductSignOutcome> {
    rule.check_legal(n1, n2)?;
    let (s1, s2) = (ko_signs(n1), ko_signs(n2));
    let n = n1 + n2;
    match rule {
        ProductRule::Naive => naive_product_signs(s1, s2, n),
        // twisting keeps ε₁″, so the γ₁⊗D₂ candidate is still ε₁″ε₂′
        ProductRule::CureFirst => naive_product_signs(twist_signs(s1)?, s2, n),
        ProductRule::CureSecond => naive_product_signs(s1, twist_signs(s2)?, n),
    }
}
