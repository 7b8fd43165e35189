//! Row types and the text/csv/json renderers.

use clap::ValueEnum;
use serde::{Serialize, Serializer};

use realspec::operator_core::{Axiom, SignReport};
use realspec::product::ProductVerification;
use realspec::sign_algebra::{KoRow, ProductRow, ProductRule, ProductSignOutcome, Sign};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// A table verdict, written `Y` or `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict(pub bool);

impl Verdict {
    pub fn symbol(self) -> &'static str {
        if self.0 {
            "Y"
        } else {
            "N"
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductTableRow {
    pub n1: u8,
    pub n2: u8,
    pub n: u8,
    pub rule: ProductRule,
    pub eps1: Sign,
    pub eps2: Sign,
    pub eps1_eps2: Sign,
    pub eps: Sign,
    pub verdict_eps: Verdict,
    pub eps1_prime: Sign,
    pub eps1_dprime: Sign,
    pub eps2_prime: Sign,
    pub eps1_dprime_eps2_prime: Sign,
    pub eps_prime: Sign,
    pub verdict_eps_prime: Verdict,
}

impl From<&ProductRow> for ProductTableRow {
    fn from(r: &ProductRow) -> Self {
        ProductTableRow {
            n1: r.n1.value(),
            n2: r.n2.value(),
            n: r.n.value(),
            rule: r.rule,
            eps1: r.eps1,
            eps2: r.eps2,
            eps1_eps2: r.eps1_eps2,
            eps: r.eps_required,
            verdict_eps: Verdict(r.verdict_eps),
            eps1_prime: r.eps1_prime,
            eps1_dprime: r.eps1_dprime,
            eps2_prime: r.eps2_prime,
            eps1_dprime_eps2_prime: r.eps1_dprime_eps2_prime,
            eps_prime: r.eps_prime_required,
            verdict_eps_prime: Verdict(r.verdict_eps_prime),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductSignsRow {
    pub n1: u8,
    pub n2: u8,
    pub n: u8,
    pub rule: ProductRule,
    pub eps: Sign,
    pub eps_required: Sign,
    pub verdict_eps: Verdict,
    pub eps_prime_candidate1: Sign,
    pub eps_prime_candidate2: Sign,
    pub eps_prime: Option<Sign>,
    pub eps_prime_required: Sign,
    pub verdict_eps_prime: Verdict,
    pub eps_dprime: Option<Sign>,
    pub eps_dprime_required: Option<Sign>,
    pub verdict_eps_dprime: Option<Verdict>,
}

impl ProductSignsRow {
    pub fn new(n1: u8, n2: u8, rule: ProductRule, o: &ProductSignOutcome, required: KoRow) -> Self {
        ProductSignsRow {
            n1,
            n2,
            n: o.n.value(),
            rule,
            eps: o.epsilon,
            eps_required: required.eps,
            verdict_eps: Verdict(o.verdict_eps),
            eps_prime_candidate1: o.epsilon_prime_candidates.0,
            eps_prime_candidate2: o.epsilon_prime_candidates.1,
            eps_prime: o.epsilon_prime,
            eps_prime_required: required.eps_prime,
            verdict_eps_prime: Verdict(o.verdict_eps_prime),
            eps_dprime: o.epsilon_dprime,
            eps_dprime_required: required.eps_dprime,
            verdict_eps_dprime: o.verdict_eps_dprime.map(Verdict),
        }
    }
}

/// One numeric product verification.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyRow {
    pub n1: u8,
    pub n2: u8,
    pub n: u8,
    pub rule: ProductRule,
    pub seed: u64,
    pub dim: usize,
    pub eps_measured: Option<Sign>,
    pub eps_prime_measured: Option<Sign>,
    pub eps_dprime_measured: Option<Sign>,
    pub eps_predicted: Sign,
    pub eps_prime_predicted: Option<Sign>,
    pub eps_dprime_predicted: Option<Sign>,
    pub max_residual: f64,
    pub degenerate: String,
    pub pass: bool,
    pub matches_prediction: bool,
}

impl VerifyRow {
    pub fn new(seed: u64, v: &ProductVerification) -> Self {
        VerifyRow {
            n1: v.n1.value(),
            n2: v.n2.value(),
            n: v.predicted.n.value(),
            rule: v.rule,
            seed,
            dim: v.dim,
            eps_measured: v.report.eps_measured,
            eps_prime_measured: v.report.eps_prime_measured,
            eps_dprime_measured: v.report.eps_dprime_measured,
            eps_predicted: v.predicted.epsilon,
            eps_prime_predicted: v.predicted.epsilon_prime,
            eps_dprime_predicted: v.predicted.epsilon_dprime,
            max_residual: v.report.max_residual(),
            degenerate: degenerate_list(&v.report),
            pass: v.report.pass,
            matches_prediction: v.matches_prediction,
        }
    }
}

/// One realized triple.
#[derive(Debug, Clone, Serialize)]
pub struct RealizeRow {
    pub n: u8,
    pub seed: u64,
    pub dim: usize,
    pub eps_measured: Option<Sign>,
    pub eps_prime_measured: Option<Sign>,
    pub eps_dprime_measured: Option<Sign>,
    pub max_residual: f64,
    pub degenerate: String,
    pub pass: bool,
}

pub fn degenerate_list(r: &SignReport) -> String {
    r.degenerate
        .iter()
        .map(|a| a.name())
        .collect::<Vec<_>>()
        .join(";")
}

/// A measured sign for display: `none` when no sign fits, `±` when both do.
pub fn measured(s: Option<Sign>, report: &SignReport, axiom: Axiom) -> String {
    match s {
        Some(s) => s.to_string(),
        None if report.is_degenerate(axiom) => "±".into(),
        None => "none".into(),
    }
}

pub fn opt_sign(s: Option<Sign>) -> String {
    s.map_or_else(|| "—".to_string(), |s| s.to_string())
}

#[derive(Serialize)]
struct Document<'a, R> {
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<u8>,
    rows: &'a [R],
}

/// Renders `rows` as csv or json; `text` supplies the human-readable form.
pub fn render<R: Serialize>(
    format: Format,
    table: Option<u8>,
    rows: &[R],
    text: impl FnOnce() -> String,
) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(text()),
        Format::Json => {
            let doc = Document { table, rows };
            let mut s =
                serde_json::to_string_pretty(&doc).map_err(|e| CliError::Render(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r)
                    .map_err(|e| CliError::Render(e.to_string()))?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| CliError::Render(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Render(e.to_string()))
        }
    }
}

pub fn sign_table_text(rows: &[KoRow]) -> String {
    let mut out = String::from("n  ε  ε′ ε″\n");
    for r in rows {
        out.push_str(&format!(
            "{}  {}  {}  {}\n",
            r.n,
            r.eps,
            r.eps_prime,
            opt_sign(r.eps_dprime)
        ));
    }
    out
}

pub fn product_table_text(rows: &[ProductTableRow]) -> String {
    let mut out = String::from("n1 n2 n | ε1 ε2 ε1ε2 ε ? | ε1′ ε1″ ε2′ ε1″ε2′ ε′ ? | rule\n");
    for r in rows {
        out.push_str(&format!(
            "{:>2} {:>2} {} | {:>2} {:>2} {:>4} {} {} | {:>3} {:>3} {:>3} {:>6} {:>2} {} | {}\n",
            r.n1,
            r.n2,
            r.n,
            r.eps1.to_string(),
            r.eps2.to_string(),
            r.eps1_eps2.to_string(),
            r.eps,
            r.verdict_eps.symbol(),
            r.eps1_prime.to_string(),
            r.eps1_dprime.to_string(),
            r.eps2_prime.to_string(),
            r.eps1_dprime_eps2_prime.to_string(),
            r.eps_prime.to_string(),
            r.verdict_eps_prime.symbol(),
            r.rule,
        ));
    }
    out
}
