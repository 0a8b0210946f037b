//! CLI-level acceptance: byte-determinism of the selftest report, the
//! documented exit codes, and the text formats on the wire.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sgkit"))
}

fn write(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn criterion_9_selftest_is_byte_deterministic() {
    let first = run(&["selftest"]);
    let second = run(&["selftest"]);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stdout));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stderr, second.stderr);
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.contains("selftest: ALL PASS"));
    println!("criterion 9-determinism: PASS");
}

#[test]
fn separate_exit_codes_and_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let even = write(&dir, "even.dfa", sgkit::fixtures::dfa::EVEN_AA);
    let odd = write(&dir, "odd.dfa", sgkit::fixtures::dfa::ODD_A);
    let out = run(&["separate", even.to_str().unwrap(), odd.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("INSEPARABLE witness=pair:"), "{text}");

    let afirst = write(&dir, "afirst.dfa", sgkit::fixtures::dfa::A_FIRST);
    let bfirst = write(&dir, "bfirst.dfa", sgkit::fixtures::dfa::B_FIRST);
    let out = run(&["separate", afirst.to_str().unwrap(), bfirst.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "SEPARABLE");

    // Non-disjoint languages: inseparable with a word witness.
    let aplus = write(&dir, "aplus.dfa", sgkit::fixtures::dfa::A_PLUS);
    let out = run(&["separate", aplus.to_str().unwrap(), aplus.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stdout).unwrap().contains("witness=word:a"));

    // Missing second file is a usage error.
    let out = run(&["separate", "only-one.dfa"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_pointlikes_and_gen_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let z4 = write(&dir, "z4.sg", &sgkit::io::print_sg(&sgkit::fixtures::z4()));
    let out = run(&["decompose", z4.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("leaf-group"), "{text}");
    assert!(text.contains("verify: ok"), "{text}");
    assert!(text.contains("group-leaves=[2, 2]"), "{text}");

    let out = run(&["pointlikes", z4.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 15);
    assert_eq!(text.lines().next().unwrap(), "{e}");
    assert_eq!(text.lines().last().unwrap(), "{e, g, g2, g3}");

    // tgen -> sg -> parse.
    let tgen = write(&dir, "swap.tgen", "1 0\n");
    let out = run(&["gen", tgen.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let sg = sgkit::io::parse_sg(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(sg.size(), 2);
    assert!(sg.is_group());
}

#[test]
fn witness_and_merge_check_reports() {
    let dir = tempfile::tempdir().unwrap();
    let z2 = write(&dir, "z2.sg", &sgkit::io::print_sg(&sgkit::fixtures::z2()));
    let out = run(&["witness", z2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("|T| = 1"), "{text}");
    assert!(text.contains("k(phi) = 3 (proof formula)"), "{text}");
    assert!(text.contains("cross-validation: witness family equals fixpoint family"));

    let out = run(&["merge-check", "--random", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("lz2-cover"), "{text}");
    assert!(text.contains("counterexamples=0"), "{text}");
}

#[test]
fn bad_inputs_exit_2_and_name_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(&dir, "bad.sg", "n 2\n1 1\n1 0\n");
    let out = run(&["pointlikes", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("error[pointlikes]"), "{err}");
    assert!(err.contains("associative"), "{err}");

    let out = run(&["decompose", "/nonexistent.sg"]);
    assert_eq!(out.status.code(), Some(2));

    // Resource caps are reported with the cap named.
    let tgen = write(&dir, "cyc.tgen", "1 2 0\n");
    let out = run(&["gen", "--cap", "2", tgen.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("cap of 2"), "{err}");
}
