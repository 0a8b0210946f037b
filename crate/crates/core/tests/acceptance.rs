//! The acceptance suite: every criterion of the fixture-corpus contract,
//! one test per criterion, each printing its pass/fail line and enforcing
//! its runtime budget. (Byte-determinism of the CLI selftest is covered in
//! the CLI crate's acceptance tests.)

use sgkit::selftest::{
    criterion_augmentation_facts, criterion_cover_division, criterion_depth_bounds,
    criterion_krohn_rhodes, criterion_merge_proposition, criterion_pointlikes_equality,
    criterion_separation, criterion_subgroup_unions, CriterionResult,
};
use sgkit::Caps;

fn assert_criterion(c: CriterionResult) {
    println!(
        "criterion {}: {} ({:?} of {:?} budget)",
        c.name,
        if c.passed { "PASS" } else { "FAIL" },
        c.elapsed,
        c.budget
    );
    for d in &c.details {
        println!("  {d}");
    }
    assert!(c.passed, "criterion {} failed", c.name);
    assert!(
        c.elapsed <= c.budget,
        "criterion {} exceeded its runtime budget: {:?} > {:?}",
        c.name,
        c.elapsed,
        c.budget
    );
}

#[test]
fn criterion_1_merge_proposition() {
    assert_criterion(criterion_merge_proposition(Caps::default()));
}

#[test]
fn criterion_2_cover_division() {
    assert_criterion(criterion_cover_division(Caps::default()));
}

#[test]
fn criterion_3_krohn_rhodes() {
    assert_criterion(criterion_krohn_rhodes(Caps::default()));
}

#[test]
fn criterion_4_pointlikes_equality() {
    assert_criterion(criterion_pointlikes_equality(Caps::default()));
}

#[test]
fn criterion_5_depth_bounds() {
    assert_criterion(criterion_depth_bounds(Caps::default()));
}

#[test]
fn criterion_6_subgroup_unions() {
    assert_criterion(criterion_subgroup_unions(Caps::default()));
}

#[test]
fn criterion_7_augmentation_facts() {
    assert_criterion(criterion_augmentation_facts(Caps::default()));
}

#[test]
fn criterion_8_separation() {
    let caps = Caps::default();
    let start = std::time::Instant::now();
    // Each of the two decisions must individually stay under 5 seconds.
    let even = sgkit::langsep::parse_dfa(sgkit::fixtures::dfa::EVEN_AA).unwrap();
    let odd = sgkit::langsep::parse_dfa(sgkit::fixtures::dfa::ODD_A).unwrap();
    let t0 = std::time::Instant::now();
    let sep = sgkit::langsep::decide_fo_separability(&even, &odd, caps).unwrap();
    assert!(t0.elapsed() < std::time::Duration::from_secs(5));
    assert!(matches!(
        sep.verdict,
        sgkit::langsep::Verdict::PointlikePair { s1, s2 } if s1 != s2
    ));
    assert!(sep.render(&even.alphabet).starts_with("INSEPARABLE"));

    let afirst = sgkit::langsep::parse_dfa(sgkit::fixtures::dfa::A_FIRST).unwrap();
    let bfirst = sgkit::langsep::parse_dfa(sgkit::fixtures::dfa::B_FIRST).unwrap();
    let t0 = std::time::Instant::now();
    let sep = sgkit::langsep::decide_fo_separability(&afirst, &bfirst, caps).unwrap();
    assert!(t0.elapsed() < std::time::Duration::from_secs(5));
    assert_eq!(sep.render(&afirst.alphabet), "SEPARABLE");
    println!("criterion 8-separation: PASS ({:?})", start.elapsed());

    // The packaged criterion agrees.
    assert_criterion(criterion_separation(caps));
}
