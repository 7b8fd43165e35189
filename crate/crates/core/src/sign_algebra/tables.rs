//! Regeneration of the sign table and the four product tables.
//!
//! Every column is recomputed from the composition rules; nothing but the
//! row order and the published Y/N pattern is stored here.

use serde::Serialize;

use super::{ko_signs, product_signs, twist_signs, KODim, ProductRule, Sign};
use crate::error::{Error, Result};

const EVEN: [i64; 4] = [6, 4, 2, 0];
const ODD: [i64; 4] = [7, 5, 3, 1];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KoRow {
    pub n: KODim,
    pub eps: Sign,
    pub eps_prime: Sign,
    pub eps_dprime: Option<Sign>,
}

/// One row of a product table. In the cured tables the twisted factor's
/// `ε` and `ε′` replace the plain ones, as in the column headers `ε̃₁`, `ε̃₂′`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProductRow {
    pub n1: KODim,
    pub n2: KODim,
    pub n: KODim,
    pub rule: ProductRule,
    pub eps1: Sign,
    pub eps2: Sign,
    pub eps1_eps2: Sign,
    pub eps_required: Sign,
    pub verdict_eps: bool,
    pub eps1_prime: Sign,
    pub eps1_dprime: Sign,
    pub eps2_prime: Sign,
    pub eps1_dprime_eps2_prime: Sign,
    pub eps_prime_required: Sign,
    pub verdict_eps_prime: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Table {
    Signs(Vec<KoRow>),
    Products(Vec<ProductRow>),
}

impl Table {
    pub fn len(&self) -> usize {
        match self {
            Table::Signs(rows) => rows.len(),
            Table::Products(rows) => rows.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn product_rows(&self) -> &[ProductRow] {
        match self {
            Table::Signs(_) => &[],
            Table::Products(rows) => rows,
        }
    }
}

fn product_row(n1: i64, n2: i64, rule: ProductRule) -> Result<ProductRow> {
    let (k1, k2) = (KODim::new(n1), KODim::new(n2));
    let outcome = product_signs(k1, k2, rule)?;
    let mut s1 = ko_signs(k1);
    let mut s2 = ko_signs(k2);
    match rule {
        ProductRule::Naive => {}
        ProductRule::CureFirst => s1 = twist_signs(s1)?,
        ProductRule::CureSecond => s2 = twist_signs(s2)?,
    }
    let required = ko_signs(outcome.n);
    Ok(ProductRow {
        n1: k1,
        n2: k2,
        n: outcome.n,
        rule,
        eps1: s1.epsilon,
        eps2: s2.epsilon,
        eps1_eps2: outcome.epsilon,
        eps_required: required.epsilon,
        verdict_eps: outcome.verdict_eps,
        eps1_prime: outcome.epsilon_prime_candidates.0,
        eps1_dprime: s1.epsilon_dprime.expect("first factor is even"),
        eps2_prime: s2.epsilon_prime,
        eps1_dprime_eps2_prime: outcome.epsilon_prime_candidates.1,
        eps_prime_required: required.epsilon_prime,
        verdict_eps_prime: outcome.verdict_eps_prime,
    })
}

fn pairs(firsts: &[i64], seconds: &[i64]) -> Vec<(i64, i64)> {
    firsts
        .iter()
        .flat_map(|&a| seconds.iter().map(move |&b| (a, b)))
        .collect()
}

/// Rebuilds table `which` (1 to 5) in published row order.
pub fn reproduce_table(which: u8) -> Result<Table> {
    let rows = |pairs: Vec<(i64, i64)>, rule: ProductRule| -> Result<Table> {
        pairs
            .into_iter()
            .map(|(a, b)| product_row(a, b, rule))
            .collect::<Result<Vec<_>>>()
            .map(Table::Products)
    };
    match which {
        1 => Ok(Table::Signs(
            KODim::all()
                .map(|n| {
                    let s = ko_signs(n);
                    KoRow {
                        n,
                        eps: s.epsilon,
                        eps_prime: s.epsilon_prime,
                        eps_dprime: s.epsilon_dprime,
                    }
                })
                .collect(),
        )),
        2 => rows(pairs(&EVEN, &EVEN), ProductRule::Naive),
        3 => rows(pairs(&EVEN, &ODD), ProductRule::Naive),
        4 => rows(
            pairs(&EVEN, &ODD)
                .into_iter()
                .filter(|(a, b)| matches!((a + b) % 8, 1 | 5))
                .collect(),
            ProductRule::CureFirst,
        ),
        5 => rows(pairs(&[6, 2], &EVEN), ProductRule::CureSecond),
        other => Err(Error::NoSuchTable(other)),
    }
}

/// The published `(ε, ε′)` verdict pattern for a product table, in row order.
pub fn published_verdicts(which: u8) -> Option<&'static [(bool, bool)]> {
    const Y: bool = true;
    const N: bool = false;
    const EVEN_EVEN: [(bool, bool); 16] = [
        (N, N),
        (Y, N),
        (N, N),
        (Y, N),
        (Y, Y),
        (Y, Y),
        (Y, Y),
        (Y, Y),
        (N, N),
        (Y, N),
        (N, N),
        (Y, N),
        (Y, Y),
        (Y, Y),
        (Y, Y),
        (Y, Y),
    ];
    const EVEN_ODD: [(bool, bool); 16] = [
        (N, N),
        (Y, Y),
        (N, N),
        (Y, Y),
        (Y, Y),
        (Y, N),
        (Y, Y),
        (Y, N),
        (N, N),
        (Y, Y),
        (N, N),
        (Y, Y),
        (Y, Y),
        (Y, N),
        (Y, Y),
        (Y, N),
    ];
    const ALL_YES: [(bool, bool); 8] = [(Y, Y); 8];
    match which {
        2 => Some(&EVEN_EVEN),
        3 => Some(&EVEN_ODD),
        4 | 5 => Some(&ALL_YES),
        _ => None,
    }
}
