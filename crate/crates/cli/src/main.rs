//! `realspec`: sign tables, product rules and numeric verification of real
//! spectral triples from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a verdict or a numeric
//! check fails, 2 on usage errors.

mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use realspec::clifford::realize;
use realspec::operator_core::{verify_triple, Axiom, SignReport};
use realspec::product::{verify_trials, RuleChoice};
use realspec::sign_algebra::{
    ko_signs, product_signs, published_verdicts, reproduce_table, KODim, KoRow, ProductRule, Table,
};

use render::{
    degenerate_list, measured, opt_sign, product_table_text, render, sign_table_text, Format,
    ProductSignsRow, ProductTableRow, RealizeRow, VerifyRow,
};

#[derive(Debug, Parser)]
#[command(
    name = "realspec",
    version,
    about = "Sign tables and product checks for real spectral triples"
)]
struct Cli {
    /// Tolerance for numeric residuals.
    #[arg(long, global = true, default_value_t = realspec::DEFAULT_TOL, value_parser = parse_tol)]
    tol: f64,
    /// Seed for the Dirac operator coefficients (first seed for `verify`).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the rendered output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The signs (ε, ε′, ε″) of class n.
    Signs {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=7))]
        n: u8,
    },
    /// Regenerates a sign table (1) or product table (2-5).
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
        which: u8,
    },
    /// Predicted signs of a product real structure.
    ProductSigns {
        #[arg(long, value_parser = parse_even)]
        n1: u8,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=7))]
        n2: u8,
        #[arg(long, value_enum, default_value_t = RuleArg::Auto)]
        rule: RuleArg,
    },
    /// Builds seeded product triples and measures their signs.
    Verify {
        #[arg(long, value_parser = parse_even)]
        n1: u8,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=7))]
        n2: u8,
        #[arg(long, value_enum, default_value_t = RuleArg::Auto)]
        rule: RuleArg,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// Builds the Clifford realization of class n and checks it.
    Realize {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=7))]
        n: u8,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuleArg {
    Naive,
    Cure1,
    Cure2,
    Auto,
}

impl From<RuleArg> for RuleChoice {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Naive => RuleChoice::Fixed(ProductRule::Naive),
            RuleArg::Cure1 => RuleChoice::Fixed(ProductRule::CureFirst),
            RuleArg::Cure2 => RuleChoice::Fixed(ProductRule::CureSecond),
            RuleArg::Auto => RuleChoice::Auto,
        }
    }
}

fn parse_even(s: &str) -> Result<u8, String> {
    let n: u8 = s.parse().map_err(|e| format!("{e}"))?;
    match n {
        0 | 2 | 4 | 6 => Ok(n),
        _ => Err(format!(
            "the first factor must have even class in 0..=6, got {n}"
        )),
    }
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(format!("tolerance must be positive and finite, got {t}"))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] realspec::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot render output: {0}")]
    Render(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use realspec::Error as E;
        match self {
            CliError::Core(
                E::IllegalRule { .. }
                | E::OddFirstFactor(_)
                | E::OddFirstFactorSigns
                | E::BadTolerance(_)
                | E::DimensionOutOfRange(_)
                | E::NoSuchTable(_),
            ) => 2,
            _ => 1,
        }
    }
}

/// Rendered output plus whether every check passed.
struct Outcome {
    rendered: String,
    ok: bool,
    notes: Vec<String>,
}

fn k(n: u8) -> KODim {
    KODim::new(i64::from(n))
}

fn ko_row(n: KODim) -> KoRow {
    let s = ko_signs(n);
    KoRow {
        n,
        eps: s.epsilon,
        eps_prime: s.epsilon_prime,
        eps_dprime: s.epsilon_dprime,
    }
}

fn cmd_signs(cli: &Cli, n: u8) -> Result<Outcome, CliError> {
    let n = k(n);
    let rows = [ko_row(n)];
    let rendered = render(cli.format, Some(1), &rows, || format!("{}\n", ko_signs(n)))?;
    Ok(Outcome {
        rendered,
        ok: true,
        notes: Vec::new(),
    })
}

fn cmd_tables(cli: &Cli, which: u8) -> Result<Outcome, CliError> {
    match reproduce_table(which)? {
        Table::Signs(rows) => {
            let ok = rows.iter().all(|r| *r == ko_row(r.n));
            let rendered = render(cli.format, Some(which), &rows, || sign_table_text(&rows))?;
            Ok(Outcome {
                rendered,
                ok,
                notes: Vec::new(),
            })
        }
        Table::Products(rows) => {
            let computed: Vec<(bool, bool)> = rows
                .iter()
                .map(|r| (r.verdict_eps, r.verdict_eps_prime))
                .collect();
            let expected = published_verdicts(which).unwrap_or_default();
            let ok = computed == expected;
            let mut notes = Vec::new();
            if ok {
                notes.push(format!(
                    "table {which}: all {} verdict rows match",
                    rows.len()
                ));
            } else {
                for (r, (got, want)) in rows.iter().zip(computed.iter().zip(expected)) {
                    if got != want {
                        notes.push(format!(
                            "table {which}: row ({}, {}) verdicts differ",
                            r.n1, r.n2
                        ));
                    }
                }
            }
            let out_rows: Vec<ProductTableRow> = rows.iter().map(ProductTableRow::from).collect();
            let rendered = render(cli.format, Some(which), &out_rows, || {
                product_table_text(&out_rows)
            })?;
            Ok(Outcome {
                rendered,
                ok,
                notes,
            })
        }
    }
}

fn cmd_product_signs(cli: &Cli, n1: u8, n2: u8, rule: RuleArg) -> Result<Outcome, CliError> {
    let (a, b) = (k(n1), k(n2));
    let rule = RuleChoice::from(rule).resolve(a, b)?;
    rule.check_legal(a, b)?;
    let outcome = product_signs(a, b, rule)?;
    let row = ProductSignsRow::new(n1, n2, rule, &outcome, ko_row(outcome.n));
    let rows = [row];
    let rendered = render(cli.format, None, &rows, || {
        let r = &rows[0];
        let mut s = format!("n1={} n2={} n={} rule={}\n", r.n1, r.n2, r.n, r.rule);
        s.push_str(&format!(
            "ε  = {}  required {}  {}\n",
            r.eps,
            r.eps_required,
            r.verdict_eps.symbol()
        ));
        s.push_str(&format!(
            "ε′ = {}  candidates ({}, {})  required {}  {}\n",
            r.eps_prime
                .map_or_else(|| "none".to_string(), |s| s.to_string()),
            r.eps_prime_candidate1,
            r.eps_prime_candidate2,
            r.eps_prime_required,
            r.verdict_eps_prime.symbol()
        ));
        s.push_str(&format!(
            "ε″ = {}  required {}  {}\n",
            opt_sign(r.eps_dprime),
            opt_sign(r.eps_dprime_required),
            r.verdict_eps_dprime.map_or("—", |v| v.symbol())
        ));
        s
    })?;
    Ok(Outcome {
        rendered,
        ok: outcome.all_pass(),
        notes: Vec::new(),
    })
}

fn cmd_verify(cli: &Cli, n1: u8, n2: u8, rule: RuleArg, trials: u64) -> Result<Outcome, CliError> {
    let (a, b) = (k(n1), k(n2));
    let choice = RuleChoice::from(rule);
    choice.resolve(a, b)?.check_legal(a, b)?;
    let end = cli.seed.saturating_add(trials);
    let runs = verify_trials(a, b, choice, cli.seed..end, cli.tol)?;
    let rows: Vec<VerifyRow> = runs
        .iter()
        .zip(cli.seed..)
        .map(|(v, seed)| VerifyRow::new(seed, v))
        .collect();
    let passed = runs.iter().filter(|v| v.report.pass).count();
    let matched = runs.iter().filter(|v| v.matches_prediction).count();
    let ok = runs.iter().all(|v| v.ok());
    let rendered = render(cli.format, None, &rows, || {
        let first = &runs[0];
        let p = &first.predicted;
        let mut s = format!(
            "n1={} n2={} n={} rule={} dim={}\n",
            first.n1, first.n2, p.n, first.rule, first.dim
        );
        s.push_str(&format!(
            "predicted ε={} ε′={} ε″={} (candidates {}, {})\n",
            p.epsilon,
            p.epsilon_prime
                .map_or_else(|| "none".to_string(), |s| s.to_string()),
            opt_sign(p.epsilon_dprime),
            p.epsilon_prime_candidates.0,
            p.epsilon_prime_candidates.1
        ));
        for (v, seed) in runs.iter().zip(cli.seed..) {
            s.push_str(&format!(
                "seed {seed}: {}; prediction {}\n",
                v.report,
                if v.matches_prediction {
                    "matched"
                } else {
                    "MISMATCHED"
                }
            ));
        }
        s.push_str(&format!(
            "{} trials: {passed} pass, {matched} match the prediction\n",
            runs.len()
        ));
        s
    })?;
    let mut notes = Vec::new();
    if !ok {
        for v in runs.iter().filter(|v| !v.ok()) {
            let failed: Vec<&str> = v.report.failures().iter().map(|a| a.name()).collect();
            notes.push(format!(
                "failed checks: {}{}",
                if failed.is_empty() {
                    "none".to_string()
                } else {
                    failed.join(", ")
                },
                if v.matches_prediction {
                    ""
                } else {
                    "; measurement differs from the prediction"
                }
            ));
        }
        notes.dedup();
    }
    Ok(Outcome {
        rendered,
        ok,
        notes,
    })
}

fn realize_text(n: KODim, seed: u64, dim: usize, r: &SignReport) -> String {
    let dprime = if n.is_even() {
        measured(r.eps_dprime_measured, r, Axiom::JGrading)
    } else {
        "—".to_string()
    };
    let mut s = format!("class {n}, seed {seed}, dimension {dim}\n");
    s.push_str(&format!(
        "signs ({},{},{})\n",
        measured(r.eps_measured, r, Axiom::JSquare),
        measured(r.eps_prime_measured, r, Axiom::JDirac),
        dprime
    ));
    s.push_str(&format!("{r}\n"));
    for (axiom, res) in &r.residuals {
        s.push_str(&format!("  {:<22} {res:e}\n", axiom.name()));
    }
    s
}

fn cmd_realize(cli: &Cli, n: u8) -> Result<Outcome, CliError> {
    let n = k(n);
    let t = realize(n, cli.seed)?.triple;
    let report = verify_triple(&t, ko_signs(n), cli.tol)?;
    let rows = [RealizeRow {
        n: n.value(),
        seed: cli.seed,
        dim: t.dim,
        eps_measured: report.eps_measured,
        eps_prime_measured: report.eps_prime_measured,
        eps_dprime_measured: report.eps_dprime_measured,
        max_residual: report.max_residual(),
        degenerate: degenerate_list(&report),
        pass: report.pass,
    }];
    let rendered = render(cli.format, None, &rows, || {
        realize_text(n, cli.seed, t.dim, &report)
    })?;
    let notes = report
        .degenerate
        .iter()
        .map(|a| format!("degenerate: {a} holds with both signs (the operator vanishes)"))
        .collect();
    Ok(Outcome {
        rendered,
        ok: report.pass,
        notes,
    })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Signs { n } => cmd_signs(cli, n),
        Command::Tables { which } => cmd_tables(cli, which),
        Command::ProductSigns { n1, n2, rule } => cmd_product_signs(cli, n1, n2, rule),
        Command::Verify {
            n1,
            n2,
            rule,
            trials,
        } => cmd_verify(cli, n1, n2, rule, trials),
        Command::Realize { n } => cmd_realize(cli, n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    match &cli.out {
        Some(path) => {
            if let Err(source) = fs::write(path, &outcome.rendered) {
                let e = CliError::Io {
                    path: path.clone(),
                    source,
                };
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code());
            }
        }
        None => print!("{}", outcome.rendered),
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
