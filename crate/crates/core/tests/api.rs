use realspec::clifford::{build_real_triple, realize, two_point_bimodule_triple, two_point_triple};
use realspec::operator_core::{verify_triple, Axiom};
use realspec::product::{product_factor, sweep, verify_pair, verify_product, RuleChoice};
use realspec::sign_algebra::{
    ko_signs, product_signs, reproduce_table, select_rule, twist_signs, KODim, ProductRule, Sign,
};
use realspec::{Error, DEFAULT_TOL};

fn k(n: i64) -> KODim {
    KODim::new(n)
}

#[test]
fn class_arithmetic_wraps_mod_eight() {
    assert_eq!(k(-1), k(7));
    assert_eq!(k(6) + k(7), k(5));
    assert!(matches!(
        KODim::strict(8),
        Err(Error::DimensionOutOfRange(8))
    ));
}

#[test]
fn sign_symbols() {
    assert_eq!(Sign::Minus.symbol(), "-");
    assert_eq!(Sign::Minus.to_string(), "−");
    assert_eq!(ko_signs(k(7)).to_string(), "ε=+ ε′=+ ε″=—");
}

#[test]
fn odd_classes_cannot_be_twisted() {
    assert!(matches!(
        twist_signs(ko_signs(k(3))),
        Err(Error::TwistWithoutGrading)
    ));
}

#[test]
fn rule_selection_covers_every_pair() {
    for n1 in [0, 2, 4, 6] {
        for n2 in 0..8 {
            let rule = select_rule(k(n1), k(n2)).unwrap();
            assert!(
                product_signs(k(n1), k(n2), rule).unwrap().all_pass(),
                "({n1},{n2})"
            );
        }
    }
    assert!(matches!(
        select_rule(k(1), k(0)),
        Err(Error::OddFirstFactor(1))
    ));
}

#[test]
fn unknown_table_is_an_error() {
    assert!(matches!(reproduce_table(0), Err(Error::NoSuchTable(0))));
    assert!(matches!(reproduce_table(6), Err(Error::NoSuchTable(6))));
}

#[test]
fn realizations_carry_their_class() {
    for n in KODim::all() {
        let r = realize(n, 3).unwrap();
        assert_eq!(r.triple.ko_dim, n);
        assert_eq!(r.gammas.n, n.value() as usize);
        assert_eq!(r.triple.grading.is_some(), n.is_even());
        assert_eq!(r.gammas.clifford_residual(), 0.0);
    }
}

#[test]
fn two_point_fixtures() {
    let plain = verify_triple(&two_point_triple(0.75), ko_signs(k(0)), DEFAULT_TOL).unwrap();
    assert_eq!(plain.eps_measured, Some(Sign::Plus));
    assert_eq!(plain.eps_prime_measured, Some(Sign::Plus));
    assert_eq!(plain.eps_dprime_measured, Some(Sign::Plus));
    assert_eq!(plain.failures(), vec![Axiom::FirstOrder]);

    let bimodule = verify_triple(
        &two_point_bimodule_triple(0.75),
        ko_signs(k(0)),
        DEFAULT_TOL,
    )
    .unwrap();
    assert!(bimodule.pass, "{bimodule}");
}

#[test]
fn a_wrong_expected_row_fails() {
    let t = build_real_triple(k(4), 0).unwrap();
    let r = verify_triple(&t, ko_signs(k(0)), DEFAULT_TOL).unwrap();
    assert!(!r.pass);
    assert!(r.failures().contains(&Axiom::JSquare));
}

#[test]
fn grading_presence_must_match_the_class() {
    let even = build_real_triple(k(2), 0).unwrap();
    assert!(matches!(
        verify_triple(&even, ko_signs(k(3)), DEFAULT_TOL),
        Err(Error::UnexpectedGrading)
    ));
    let odd = build_real_triple(k(3), 0).unwrap();
    assert!(matches!(
        verify_triple(&odd, ko_signs(k(2)), DEFAULT_TOL),
        Err(Error::MissingGrading)
    ));
}

#[test]
fn cure_rules_are_checked_against_the_classes() {
    let t1 = product_factor(k(4), 0).unwrap();
    let t2 = product_factor(k(4), 1).unwrap();
    assert!(matches!(
        verify_product(&t1, &t2, ProductRule::CureSecond, DEFAULT_TOL),
        Err(Error::IllegalRule { .. })
    ));
    assert!(matches!(
        verify_pair(k(3), k(0), RuleChoice::Auto, 0, DEFAULT_TOL),
        Err(Error::OddFirstFactor(3))
    ));
}

#[test]
fn naive_rule_passes_exactly_the_unflagged_pairs() {
    let runs = sweep(RuleChoice::Fixed(ProductRule::Naive), 0..1, DEFAULT_TOL).unwrap();
    assert_eq!(runs.len(), 32);
    let passing = runs.iter().filter(|v| v.report.pass).count();
    assert_eq!(passing, 16);
    assert!(runs.iter().all(|v| v.matches_prediction));
}
