//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line to
//! stderr: `cargo test -p realspec --test acceptance`.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use realspec::clifford::{build_real_triple, realize};
use realspec::operator_core::matrix::{c, hermitian_spectrum, random_unitary};
use realspec::operator_core::{classify_commutation, classify_square, verify_triple, Axiom};
use realspec::product::{
    d_square_decomposition, factor_seeds, product_factor, product_triple, sweep, u_transform,
    v_transform_residuals, verify_pair, ProductSpec, RuleChoice,
};
use realspec::sign_algebra::{
    ko_signs, product_signs, reproduce_table, select_rule, twist_signs, KODim, KOSigns, ProductRow,
    ProductRule, Sign, Table,
};
use realspec::DEFAULT_TOL;

const TOL: f64 = 1e-12;
const SEEDS: u64 = 10;
const RANDOM_CASES: usize = 100;

/// Written straight to the stderr handle so the line shows up even when the
/// harness captures test output.
fn report(id: &str, what: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    let line = format!("[{tag}] AC{id} {what}: {detail}\n");
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn k(n: i64) -> KODim {
    KODim::new(n)
}

fn sign(s: &str) -> Sign {
    match s {
        "+" => Sign::Plus,
        "-" => Sign::Minus,
        other => panic!("bad sign cell {other:?}"),
    }
}

fn yn(s: &str) -> bool {
    match s {
        "Y" => true,
        "N" => false,
        other => panic!("bad verdict cell {other:?}"),
    }
}

// Published tables, cell for cell:
// n1 n2 n | ε1 ε2 ε1ε2 ε ? | ε1′ ε1″ ε2′ ε1″ε2′ ε′ ?
const TABLE_2: [&str; 16] = [
    "6 6 4 + + + - N + - + - + N",
    "6 4 2 + - - - Y + - + - + N",
    "6 2 0 + - - + N + - + - + N",
    "6 0 6 + + + + Y + - + - + N",
    "4 6 2 - + - - Y + + + + + Y",
    "4 4 0 - - + + Y + + + + + Y",
    "4 2 6 - - + + Y + + + + + Y",
    "4 0 4 - + - - Y + + + + + Y",
    "2 6 0 - + - + N + - + - + N",
    "2 4 6 - - + + Y + - + - + N",
    "2 2 4 - - + - N + - + - + N",
    "2 0 2 - + - - Y + - + - + N",
    "0 6 6 + + + + Y + + + + + Y",
    "0 4 4 + - - - Y + + + + + Y",
    "0 2 2 + - - - Y + + + + + Y",
    "0 0 0 + + + + Y + + + + + Y",
];

const TABLE_3: [&str; 16] = [
    "6 7 5 + + + - N + - + - - N",
    "6 5 3 + - - - Y + - - + + Y",
    "6 3 1 + - - + N + - + - - N",
    "6 1 7 + + + + Y + - - + + Y",
    "4 7 3 - + - - Y + + + - + Y",
    "4 5 1 - - + + Y + + - + - N",
    "4 3 7 - - + + Y + + + - + Y",
    "4 1 5 - + - - Y + + - + - N",
    "2 7 1 - + - + N + - + - - N",
    "2 5 7 - - + + Y + - - + + Y",
    "2 3 5 - - + - N + - + - - N",
    "2 1 3 - + - - Y + - - + + Y",
    "0 7 7 + + + + Y + + + + + Y",
    "0 5 5 + - - - Y + + - - - N",
    "0 3 3 + - - - Y + + + + + Y",
    "0 1 1 + + + + Y + + - - - N",
];

// ε1, ε1′ are the twisted ones
const TABLE_4: [&str; 8] = [
    "6 7 5 - + - - Y - - + - - Y",
    "6 3 1 - - + + Y - - + - - Y",
    "4 5 1 - - + + Y - + - + - Y",
    "4 1 5 - + - - Y - + - + - Y",
    "2 7 1 + + + + Y - - + - - Y",
    "2 3 5 + - - - Y - - + - - Y",
    "0 5 5 + - - - Y - + - - - Y",
    "0 1 1 + + + + Y - + - - - Y",
];

// ε2, ε2′ are the twisted ones
const TABLE_5: [&str; 8] = [
    "6 6 4 + - - - Y + - - + + Y",
    "6 4 2 + - - - Y + - - + + Y",
    "6 2 0 + + + + Y + - - + + Y",
    "6 0 6 + + + + Y + - - + + Y",
    "2 6 0 - - + + Y + - - + + Y",
    "2 4 6 - - + + Y + - - + + Y",
    "2 2 4 - + - - Y + - - + + Y",
    "2 0 2 - + - - Y + - - + + Y",
];

/// Published cells that are not the product of the printed factors in the
/// same row: `(n1, n2, column)` with column 11 = ε1″ε2′. All sit in the
/// n1 = 4 rows; the verdict columns of those rows are unaffected.
const SUSPECT_CELLS_3: [(u8, u8, usize); 4] = [(4, 7, 11), (4, 5, 11), (4, 3, 11), (4, 1, 11)];
const SUSPECT_CELLS_4: [(u8, u8, usize); 2] = [(4, 5, 11), (4, 1, 11)];

fn row_cells(r: &ProductRow) -> Vec<String> {
    let s = |x: Sign| x.symbol().to_string();
    let v = |b: bool| if b { "Y" } else { "N" }.to_string();
    vec![
        r.n1.to_string(),
        r.n2.to_string(),
        r.n.to_string(),
        s(r.eps1),
        s(r.eps2),
        s(r.eps1_eps2),
        s(r.eps_required),
        v(r.verdict_eps),
        s(r.eps1_prime),
        s(r.eps1_dprime),
        s(r.eps2_prime),
        s(r.eps1_dprime_eps2_prime),
        s(r.eps_prime_required),
        v(r.verdict_eps_prime),
    ]
}

/// Compares a regenerated product table with the published one; returns the
/// list of mismatching `(row, column)` cells outside `skip`.
fn compare_table(which: u8, published: &[&str], skip: &[(u8, u8, usize)]) -> Vec<String> {
    let table = reproduce_table(which).unwrap();
    let rows = table.product_rows();
    let mut problems = Vec::new();
    if rows.len() != published.len() {
        problems.push(format!("{} rows vs {}", rows.len(), published.len()));
        return problems;
    }
    for (r, line) in rows.iter().zip(published) {
        let want: Vec<&str> = line.split_whitespace().collect();
        let got = row_cells(r);
        for (col, (g, w)) in got.iter().zip(&want).enumerate() {
            if skip.contains(&(r.n1.value(), r.n2.value(), col)) {
                continue;
            }
            if g != w {
                problems.push(format!(
                    "row ({},{}) col {col}: got {g} want {w}",
                    r.n1, r.n2
                ));
            }
        }
    }
    problems
}

fn verdicts(published: &[&str]) -> Vec<(bool, bool)> {
    published
        .iter()
        .map(|l| {
            let cells: Vec<&str> = l.split_whitespace().collect();
            (yn(cells[7]), yn(cells[13]))
        })
        .collect()
}

fn computed_verdicts(which: u8) -> Vec<(bool, bool)> {
    reproduce_table(which)
        .unwrap()
        .product_rows()
        .iter()
        .map(|r| (r.verdict_eps, r.verdict_eps_prime))
        .collect()
}

#[test]
fn ac1_sign_table() {
    // n:   0 1 2 3 4 5 6 7
    let eps = "+ + - - - - + +";
    let eps_p = "+ - + + + - + +";
    let eps_pp = "+ * - * + * - *";
    let cols = |s: &str| s.split_whitespace().map(str::to_string).collect::<Vec<_>>();
    let (e, ep, epp) = (cols(eps), cols(eps_p), cols(eps_pp));
    let mut signs = 0;
    let mut absences = 0;
    let mut ok = true;
    let Table::Signs(rows) = reproduce_table(1).unwrap() else {
        panic!("table 1 is a sign table")
    };
    ok &= rows.len() == 8;
    for n in 0..8 {
        let want = KOSigns::new(
            sign(&e[n]),
            sign(&ep[n]),
            (epp[n] != "*").then(|| sign(&epp[n])),
        );
        ok &= ko_signs(k(n as i64)) == want;
        ok &= rows[n].eps == want.epsilon
            && rows[n].eps_prime == want.epsilon_prime
            && rows[n].eps_dprime == want.epsilon_dprime;
        signs += 2 + usize::from(want.epsilon_dprime.is_some());
        absences += usize::from(want.epsilon_dprime.is_none());
    }
    ok &= signs + absences == 24 && absences == 4;
    report(
        "1",
        "sign table",
        ok,
        &format!(
            "8 rows, {} cells: {signs} signs, {absences} absences",
            signs + absences
        ),
    );
    assert!(ok);
}

#[test]
fn ac2_even_even_table() {
    let verdict_ok = computed_verdicts(2) == verdicts(&TABLE_2);
    let cells = compare_table(2, &TABLE_2, &[]);
    let rows = reproduce_table(2).unwrap();
    let mut pattern_ok = true;
    for r in rows.product_rows() {
        let (a, b) = (r.n1.value(), r.n2.value());
        if matches!(a, 2 | 6) {
            pattern_ok &= !r.verdict_eps_prime;
        }
        if matches!(a, 2 | 6) && matches!(b, 2 | 6) {
            pattern_ok &= !r.verdict_eps;
        }
    }
    let ok = verdict_ok && pattern_ok && cells.is_empty();
    report(
        "2",
        "even-even table",
        ok,
        &format!("16 verdict rows match: {verdict_ok}; N pattern: {pattern_ok}; cell mismatches: {cells:?}"),
    );
    assert!(ok);
}

#[test]
fn ac3_even_odd_table() {
    let verdict_ok = computed_verdicts(3) == verdicts(&TABLE_3);
    let cells = compare_table(3, &TABLE_3, &SUSPECT_CELLS_3);
    // the excluded cells really are the inconsistent ones
    let all_cells = compare_table(3, &TABLE_3, &[]);
    let ok = verdict_ok && cells.is_empty() && all_cells.len() == SUSPECT_CELLS_3.len();
    report(
        "3",
        "even-odd table",
        ok,
        &format!(
            "16 verdict rows match: {verdict_ok}; mismatches outside the excluded cells: {cells:?}; excluded: {all_cells:?}"
        ),
    );
    assert!(ok);
}

#[test]
fn ac4_cured_tables() {
    let c4 = computed_verdicts(4);
    let c5 = computed_verdicts(5);
    let all_yes = c4.len() == 8 && c5.len() == 8 && c4.iter().chain(&c5).all(|&(a, b)| a && b);
    let cells4 = compare_table(4, &TABLE_4, &SUSPECT_CELLS_4);
    let cells5 = compare_table(5, &TABLE_5, &[]);
    let excluded = compare_table(4, &TABLE_4, &[]).len() - cells4.len();
    let rules_ok = reproduce_table(4)
        .unwrap()
        .product_rows()
        .iter()
        .chain(reproduce_table(5).unwrap().product_rows())
        .all(|r| select_rule(r.n1, r.n2).unwrap() == r.rule);
    let ok = all_yes && cells4.is_empty() && cells5.is_empty() && rules_ok && excluded == 2;
    report(
        "4",
        "cured tables",
        ok,
        &format!(
            "16 rows all Y: {all_yes}; selected rule matches: {rules_ok}; \
             mismatches {cells4:?} {cells5:?}; {excluded} excluded cells"
        ),
    );
    assert!(ok);
}

#[test]
fn ac5_symbolic_closure() {
    let mut bad = Vec::new();
    for n1 in [0, 2, 4, 6] {
        for n2 in 0..8 {
            let rule = select_rule(k(n1), k(n2)).unwrap();
            let o = product_signs(k(n1), k(n2), rule).unwrap();
            let want = ko_signs(k(n1 + n2));
            let agree = o.epsilon_prime_candidates.0 == o.epsilon_prime_candidates.1;
            let fine = agree
                && o.epsilon == want.epsilon
                && o.epsilon_prime == Some(want.epsilon_prime)
                && o.epsilon_dprime == want.epsilon_dprime;
            if !fine {
                bad.push((n1, n2));
            }
        }
    }
    let ok = bad.is_empty();
    report(
        "5",
        "symbolic closure",
        ok,
        &format!("32 pairs, failures {bad:?}"),
    );
    assert!(ok);
}

#[test]
fn ac6_realizations() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for n in KODim::all() {
        for seed in 0..SEEDS {
            let t = build_real_triple(n, seed).unwrap();
            let r = verify_triple(&t, ko_signs(n), TOL).unwrap();
            worst = worst.max(r.max_residual());
            // dyadic coefficients and ±1, ±i matrix entries: every residual is exactly zero
            if !r.pass || r.max_residual() != 0.0 {
                failures.push((n.value(), seed));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < Duration::from_secs(5);
    report(
        "6",
        "realizations",
        ok,
        &format!("80 triples, max residual {worst:e}, failures {failures:?}, {elapsed:.2?}"),
    );
    assert!(ok);
}

#[test]
fn ac7_product_sweep() {
    let start = Instant::now();
    let auto = sweep(RuleChoice::Auto, 0..SEEDS, TOL).unwrap();
    let auto_fail: Vec<_> = auto
        .iter()
        .filter(|v| !v.ok())
        .map(|v| (v.n1.value(), v.n2.value()))
        .collect();

    let naive = sweep(RuleChoice::Fixed(ProductRule::Naive), 0..SEEDS, TOL).unwrap();
    let mut naive_failing: Vec<(u8, u8)> = naive
        .iter()
        .filter(|v| !v.predicted.all_pass())
        .map(|v| (v.n1.value(), v.n2.value()))
        .collect();
    naive_failing.sort_unstable();
    naive_failing.dedup();
    // published N rows of the even-even and even-odd tables
    let mut published: Vec<(u8, u8)> = TABLE_2
        .iter()
        .chain(&TABLE_3)
        .filter(|l| l.contains('N'))
        .map(|l| {
            let c: Vec<u8> = l
                .split_whitespace()
                .take(2)
                .map(|x| x.parse().unwrap())
                .collect();
            (c[0], c[1])
        })
        .collect();
    published.sort_unstable();
    let mut mismatched = Vec::new();
    for v in &naive {
        // every naive run: the table verdict equals the prediction and the
        // measured signs equal the predicted ones, none where candidates disagree
        let predicted_fail = !v.predicted.all_pass();
        let prime_none_ok = v.predicted.epsilon_prime.is_some()
            || (v.report.eps_prime_measured.is_none() && !v.report.is_degenerate(Axiom::JDirac));
        if !v.matches_prediction || v.report.pass == predicted_fail || !prime_none_ok {
            mismatched.push((v.n1.value(), v.n2.value()));
        }
    }
    let max_dim = (0..8)
        .step_by(2)
        .flat_map(|a| (0..8).map(move |b| (a, b)))
        .map(|(a, b)| {
            let (s1, s2) = factor_seeds(0);
            product_factor(k(a), s1).unwrap().dim * product_factor(k(b), s2).unwrap().dim
        })
        .max()
        .unwrap();
    let elapsed = start.elapsed();
    let sets_ok = naive_failing == published;
    let ok = auto_fail.is_empty()
        && mismatched.is_empty()
        && sets_ok
        && max_dim <= 256
        && elapsed < Duration::from_secs(60);
    report(
        "7",
        "product sweep",
        ok,
        &format!(
            "{} auto runs, failures {auto_fail:?}; {} naive-failing pairs (= published N rows: {sets_ok}), \
             prediction mismatches {mismatched:?}; max dim {max_dim}; {elapsed:.2?}",
            auto.len(),
            naive_failing.len()
        ),
    );
    assert!(ok);
}

#[test]
fn ac8_identities() {
    let start = Instant::now();
    let mut worst_d2: f64 = 0.0;
    let mut worst_u: f64 = 0.0;
    let mut worst_v: f64 = 0.0;
    let mut count = 0;
    for n1 in [0, 2, 4, 6] {
        for n2 in 0..8 {
            for seed in 0..SEEDS {
                let (s1, s2) = factor_seeds(seed);
                let t1 = product_factor(k(n1), s1).unwrap();
                let t2 = product_factor(k(n2), s2).unwrap();
                let rule = select_rule(k(n1), k(n2)).unwrap();
                let p = product_triple(&ProductSpec::new(&t1, &t2, rule).unwrap()).unwrap();
                worst_d2 = worst_d2.max(d_square_decomposition(&p, &t1, &t2).unwrap());
                if n2 % 2 == 0 {
                    let u = u_transform(&p, &t1, &t2).unwrap();
                    worst_u = worst_u
                        .max(u.unitarity_residual())
                        .max(u.identity_residual());
                }
                count += 1;
            }
        }
    }
    for n in [0, 2, 4, 6] {
        for seed in 0..SEEDS {
            let t = product_factor(k(n), seed).unwrap();
            let (a, b) = v_transform_residuals(&t).unwrap();
            worst_v = worst_v.max(a).max(b);
        }
    }
    let elapsed = start.elapsed();
    let ok =
        worst_d2 <= TOL && worst_u <= TOL && worst_v <= TOL && elapsed < Duration::from_secs(10);
    report(
        "8",
        "product identities",
        ok,
        &format!(
            "{count} products: D² split {worst_d2:e}, U transform {worst_u:e}, V transform {worst_v:e}; {elapsed:.2?}"
        ),
    );
    assert!(ok);
}

#[test]
fn ac9_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures: Vec<String> = Vec::new();

    // twist is an involution on even sign rows
    for _ in 0..RANDOM_CASES {
        let s = KOSigns::new(
            Sign::from_bool(rng.gen()),
            Sign::from_bool(rng.gen()),
            Some(Sign::from_bool(rng.gen())),
        );
        if twist_signs(twist_signs(s).unwrap()).unwrap() != s {
            failures.push(format!("twist {s}"));
        }
    }

    // classifications are unchanged by real rescaling of the operator
    for case in 0..RANDOM_CASES {
        let n = k(rng.gen_range(0..8));
        let t = build_real_triple(n, rng.gen()).unwrap();
        let magnitude = 10f64.powf(rng.gen_range(-3.0..3.0));
        let scale = if rng.gen() { magnitude } else { -magnitude };
        let ops = std::iter::once(&t.d_op).chain(t.grading.as_ref());
        for op in ops {
            let before = classify_commutation(&t.j_op, op, DEFAULT_TOL).unwrap().fit;
            let after = classify_commutation(&t.j_op, &(op * c(scale, 0.0)), DEFAULT_TOL)
                .unwrap()
                .fit;
            if before != after {
                failures.push(format!("scale case {case}: class {n}, factor {scale}"));
            }
        }
    }

    // measured signs survive a random change of basis
    for case in 0..RANDOM_CASES {
        let n = k(rng.gen_range(0..8));
        let t = realize(n, rng.gen()).unwrap().triple;
        let u = random_unitary(&mut rng, t.dim);
        let rotated = t.conjugate_by(&u).unwrap();
        let tol = 1e-10;
        let a = verify_triple(&t, ko_signs(n), tol).unwrap();
        let b = verify_triple(&rotated, ko_signs(n), tol).unwrap();
        let same = a.eps_measured == b.eps_measured
            && a.eps_prime_measured == b.eps_prime_measured
            && a.eps_dprime_measured == b.eps_dprime_measured
            && b.pass
            && classify_square(&rotated.j_op, tol).unwrap().fit.sign() == a.eps_measured;
        if !same {
            failures.push(format!("basis case {case}: class {n}"));
        }
    }

    // spectrum of an odd Dirac operator is symmetric about zero
    for case in 0..RANDOM_CASES {
        let n = k(2 * rng.gen_range(0..4));
        let t = product_factor(n, rng.gen()).unwrap();
        let ev = hermitian_spectrum(&t.d_op);
        let symmetric = ev
            .iter()
            .zip(ev.iter().rev())
            .all(|(a, b)| (a + b).abs() <= 1e-12 * (1.0 + a.abs()));
        if !symmetric {
            failures.push(format!("spectrum case {case}: class {n}"));
        }
    }

    let ok = failures.is_empty();
    report(
        "9",
        "property suite",
        ok,
        &format!("4 × {RANDOM_CASES} cases, failures {failures:?}"),
    );
    assert!(ok);
}

#[test]
fn ac7_single_pair_examples() {
    // Spot checks named alongside the sweep.
    let cure = verify_pair(k(2), k(2), RuleChoice::Auto, 0, TOL).unwrap();
    let naive = verify_pair(k(0), k(1), RuleChoice::Fixed(ProductRule::Naive), 0, TOL).unwrap();
    let ok = cure.ok()
        && cure.rule == ProductRule::CureSecond
        && !naive.report.pass
        && naive.matches_prediction
        && naive.report.eps_prime_measured.is_none();
    report(
        "7a",
        "product spot checks",
        ok,
        "(2,2) auto passes; (0,1) naive has no ε′",
    );
    assert!(ok);
}
