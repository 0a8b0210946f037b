//! The fixture-corpus acceptance suite, shared by the CLI `selftest`
//! subcommand and the integration tests. Output is byte-deterministic:
//! no timings or other run-dependent data are printed.

use std::time::{Duration, Instant};

use crate::error::Result;
use crate::fixtures::{self, dfa};
use crate::hom::is_division_witness;
use crate::langsep::{build_recognizer, decide_fo_separability, parse_dfa, Verdict};
use crate::merge::{division_from_cover, verify_merge, MergeInput};
use crate::products::{flat_embed, triple_product, ActionPair};
use crate::psat::{henckell_pointlikes, subgroup_union_check};
use crate::random::{seeded_merge_inputs, MERGE_CHECK_SEED};
use crate::semigroup::Semigroup;
use crate::witness::{k_formula, pointlikes_with_certificate, CaseKind};
use crate::{adjoin, krd, Caps};

pub struct CriterionResult {
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionResult {
    fn ok(&self) -> bool {
        self.passed && self.elapsed <= self.budget
    }
}

pub struct SelftestReport {
    pub criteria: Vec<CriterionResult>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.ok())
    }
}

impl std::fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.criteria {
            writeln!(f, "criterion {}: {}", c.name, if c.ok() { "PASS" } else { "FAIL" })?;
            for d in &c.details {
                writeln!(f, "  {d}")?;
            }
        }
        write!(
            f,
            "selftest: {}",
            if self.all_passed() { "ALL PASS" } else { "FAILED" }
        )
    }
}

fn run_criterion(
    name: &'static str,
    budget_secs: u64,
    body: impl FnOnce(&mut Vec<String>) -> Result<bool>,
) -> CriterionResult {
    let mut details = Vec::new();
    let start = Instant::now();
    let passed = match body(&mut details) {
        Ok(p) => p,
        Err(e) => {
            details.push(format!("error: {e}"));
            false
        }
    };
    CriterionResult {
        name,
        passed,
        details,
        elapsed: start.elapsed(),
        budget: Duration::from_secs(budget_secs),
    }
}

/// The corpus plus the transition semigroups of the language fixtures.
pub fn extended_corpus(caps: Caps) -> Result<Vec<(String, Semigroup)>> {
    let mut out: Vec<(String, Semigroup)> =
        fixtures::corpus().into_iter().map(|f| (f.name.to_string(), f.sg)).collect();
    let pairs = [
        ("ts-parity", dfa::EVEN_AA, dfa::ODD_A),
        ("ts-first-letter", dfa::A_FIRST, dfa::B_FIRST),
    ];
    for (name, t1, t2) in pairs {
        let d1 = parse_dfa(t1)?;
        let d2 = parse_dfa(t2)?;
        let r = build_recognizer(&d1, &d2, caps)?;
        out.push((name.to_string(), r.sg));
    }
    Ok(out)
}

/// Criterion 1: the merge proposition `f o psi_M = tau` has no
/// counterexamples up to length 6, on the cover fixtures and on 50 seeded
/// random inputs with components of size at most 3.
pub fn criterion_merge_proposition(caps: Caps) -> CriterionResult {
    run_criterion("1-merge-proposition", 30, |details| {
        let mut all_ok = true;
        let lz2 = fixtures::lz2();
        let u1 = fixtures::u1();
        let named: Vec<(&str, MergeInput)> = vec![
            ("lz2-cover", cover_input(&lz2, &[0], &[1])?),
            ("u1-cover", cover_input(&u1, &[0], &[1])?),
        ];
        for (name, input) in named {
            let report = verify_merge(input, 6, caps)?;
            all_ok &= report.passed();
            details.push(format!("{name}: {report}"));
        }
        let mut random_words = 0usize;
        for input in seeded_merge_inputs(MERGE_CHECK_SEED, 50, 3) {
            let report = verify_merge(input, 6, caps)?;
            random_words += report.words_checked;
            if !report.passed() {
                all_ok = false;
                details.push(format!("random input failed: {report}"));
            }
        }
        details.push(format!("random inputs: 50, words checked: {random_words}"));
        Ok(all_ok)
    })
}

fn cover_input(s: &Semigroup, t1: &[usize], t2: &[usize]) -> Result<MergeInput> {
    let div = division_from_cover(s, t1, t2, Caps::default())?;
    Ok(div.merge.input)
}

/// All nonempty product-closed subsets of `s`.
fn subsemigroups(s: &Semigroup) -> Vec<Vec<usize>> {
    let n = s.size();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let elems: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if s.subsemigroup(&elems).is_ok() {
            out.push(elems);
        }
    }
    out
}

/// Criterion 2: the cover division is verified for every corpus member of
/// size at most 4 and every ordered pair of proper subsemigroups whose
/// union generates.
pub fn criterion_cover_division(caps: Caps) -> CriterionResult {
    run_criterion("2-cover-division", 60, |details| {
        let mut all_ok = true;
        let mut total = 0usize;
        for fix in fixtures::corpus() {
            let s = &fix.sg;
            if s.size() > 4 {
                continue;
            }
            let subs = subsemigroups(s);
            let mut tested = 0usize;
            for t1 in &subs {
                if t1.len() == s.size() {
                    continue;
                }
                for t2 in &subs {
                    if t2.len() == s.size() {
                        continue;
                    }
                    let mut union: Vec<usize> = t1.iter().chain(t2).copied().collect();
                    union.sort_unstable();
                    union.dedup();
                    if s.generated_subset(&union).count() != s.size() {
                        continue;
                    }
                    tested += 1;
                    let div = division_from_cover(s, t1, t2, caps)?;
                    if !is_division_witness(s, &div.construction, &div.witness) {
                        all_ok = false;
                        details.push(format!("{}: witness failed for a cover pair", fix.name));
                    }
                }
            }
            total += tested;
            if tested > 0 {
                details.push(format!("{}: {tested} cover pairs verified", fix.name));
            }
        }
        details.push(format!("total pairs: {total}"));
        Ok(all_ok && total > 0)
    })
}

/// Criterion 3: decomposition certificates verify across the extended
/// corpus; aperiodic inputs have no group leaves; Z4 yields exactly two
/// Z2 leaves.
pub fn criterion_krohn_rhodes(caps: Caps) -> CriterionResult {
    run_criterion("3-krohn-rhodes", 60, |details| {
        let mut all_ok = true;
        for (name, s) in extended_corpus(caps)? {
            let tree = krd::kr_decompose(&s, caps)?;
            let report = krd::verify_tree(&tree);
            let groups = tree.group_leaves().len();
            let sls = tree.semilattice_leaf_count();
            if !report.all_ok() {
                all_ok = false;
                details.push(format!("{name}: verify_tree FAILED\n{report}"));
            } else {
                details.push(format!(
                    "{name}: ok depth={} sl-leaves={sls} group-leaves={groups}",
                    tree.depth
                ));
            }
            if s.is_aperiodic() && groups != 0 {
                all_ok = false;
                details.push(format!("{name}: aperiodic input produced group leaves"));
            }
            if name == "z4" {
                let sizes: Vec<usize> =
                    tree.group_leaves().iter().map(|g| g.size()).collect();
                if sizes != vec![2, 2] {
                    all_ok = false;
                    details.push(format!("z4: expected two Z2 leaves, got {sizes:?}"));
                }
            }
        }
        Ok(all_ok)
    })
}

/// Criterion 4: the certified pointlike family equals the fixpoint family
/// exactly; aperiodic members give singletons, groups give all nonempty
/// subsets.
pub fn criterion_pointlikes_equality(caps: Caps) -> CriterionResult {
    run_criterion("4-pointlikes-equality", 120, |details| {
        let mut all_ok = true;
        for (name, s) in extended_corpus(caps)? {
            let cert = pointlikes_with_certificate(&s, caps)?;
            let fix_family = henckell_pointlikes(&s, caps)?;
            let same = cert.family.canonical_members() == fix_family.canonical_members();
            if !same {
                all_ok = false;
                details.push(format!("{name}: certified family differs from the fixpoint"));
                continue;
            }
            if s.is_aperiodic() && cert.family.len() != s.size() {
                all_ok = false;
                details.push(format!("{name}: aperiodic family is not the singletons"));
            }
            if s.is_group() && cert.family.len() != (1 << s.size()) - 1 {
                all_ok = false;
                details.push(format!("{name}: group family is not the full power set"));
            }
            details.push(format!("{name}: family={} |T|={}", cert.family.len(), cert.witness.t.size()));
        }
        Ok(all_ok)
    })
}

/// Criterion 5: witness depth respects `k(phi)` (proof formula) on every
/// run, the split bounds hold at every Case-3 node, and `k` for
/// `|A| = 2, |S| = 3` is exactly 15.
pub fn criterion_depth_bounds(caps: Caps) -> CriterionResult {
    run_criterion("5-depth-bounds", 60, |details| {
        let mut all_ok = k_formula(2, 3)? == 15;
        details.push(format!("k(|A|=2, |S|=3) = {}", k_formula(2, 3)?));
        for (name, s) in extended_corpus(caps)? {
            let cert = pointlikes_with_certificate(&s, caps)?;
            if u128::from(cert.witness.depth) > cert.k_proof {
                all_ok = false;
                details.push(format!("{name}: depth exceeds k"));
            }
            let splits = cert.witness.trace.split_nodes();
            let bad = splits
                .iter()
                .filter(|n| !matches!(n.case, CaseKind::Split { bound_ok: true, .. }))
                .count();
            if bad > 0 {
                all_ok = false;
                details.push(format!("{name}: {bad} split nodes failed the bound audit"));
            }
            details.push(format!(
                "{name}: depth={} k={} k_statement={} splits={}",
                cert.witness.depth,
                cert.k_proof,
                cert.k_statement,
                splits.len()
            ));
        }
        Ok(all_ok)
    })
}

/// Criterion 6: every subgroup of the power semigroup discovered inside
/// `U_phi` during the corpus witness runs passes the union derivation, and
/// the Z2/Z3/Z4 runs contribute theirs.
pub fn criterion_subgroup_unions(caps: Caps) -> CriterionResult {
    run_criterion("6-subgroup-unions", 60, |details| {
        let mut all_ok = true;
        let mut contributions = 0usize;
        for name in ["z2", "z3", "z4"] {
            let fix = fixtures::corpus().into_iter().find(|f| f.name == name).unwrap();
            let cert = pointlikes_with_certificate(&fix.sg, caps)?;
            let groups = cert.witness.trace.local_groups();
            if groups.is_empty() {
                all_ok = false;
                details.push(format!("{name}: no local subgroup discovered"));
            }
            for (host, members) in groups {
                contributions += 1;
                let report = subgroup_union_check(host, members, caps)?;
                if !report.ok() {
                    all_ok = false;
                    details.push(format!("{name}: subgroup union derivation failed"));
                }
                details.push(format!(
                    "{name}: |G|={} union-size={}",
                    members.len(),
                    report.union_of_g.count()
                ));
            }
        }
        for (name, s) in extended_corpus(caps)? {
            let cert = pointlikes_with_certificate(&s, caps)?;
            for (host, members) in cert.witness.trace.local_groups() {
                contributions += 1;
                let report = subgroup_union_check(host, members, caps)?;
                if !report.ok() {
                    all_ok = false;
                    details.push(format!("{name}: subgroup union derivation failed"));
                }
            }
        }
        details.push(format!("subgroups checked: {contributions}"));
        Ok(all_ok && contributions >= 3)
    })
}

/// Criterion 7: the augmentation facts. The zero-adjunction surjection, the
/// flat embedding (with its division of the collapsed flat semigroup), and
/// validated triple products, across the corpus.
pub fn criterion_augmentation_facts(caps: Caps) -> CriterionResult {
    let _ = caps;
    run_criterion("7-augmentation-facts", 60, |details| {
        let mut all_ok = true;
        for fix in fixtures::corpus() {
            let t = &fix.sg;
            let hom = adjoin::zero_adjunction_witness(t)?;
            if !hom.is_surjective() {
                all_ok = false;
                details.push(format!("{}: zero adjunction not surjective", fix.name));
            }
            let m = fixtures::chain(t.size() + 1);
            let emb = flat_embed(t, &m)?; // verify() runs inside
            if t.size() <= 2 {
                let (wp, w) = emb.materialize()?;
                if !is_division_witness(&emb.flat.sg, &wp.sg, &w) {
                    all_ok = false;
                    details.push(format!("{}: materialized flat division failed", fix.name));
                }
            }
            let trivial = fixtures::trivial();
            let ap = ActionPair {
                left_actor: trivial.clone(),
                right_actor: trivial,
                carrier: t.clone(),
                left: (0..t.size() as u32).collect(),
                right: (0..t.size() as u32).collect(),
            };
            let tp = triple_product(&ap)?;
            if tp.sg.size() != t.size() {
                all_ok = false;
                details.push(format!("{}: trivial triple product has the wrong size", fix.name));
            }
            details.push(format!(
                "{}: zero-adjunction ok, flat-embed |formal|={} |flat|={}, triple ok",
                fix.name,
                emb.formal.size(),
                emb.flat.size()
            ));
        }
        // A nontrivial two-sided action: U1 multiplying on both sides.
        let u1 = fixtures::u1();
        let mut left = vec![0u32; 4];
        let mut right = vec![0u32; 4];
        for a in 0..2 {
            for s in 0..2 {
                left[a * 2 + s] = u1.mul(a, s) as u32;
                right[s * 2 + a] = u1.mul(s, a) as u32;
            }
        }
        let ap = ActionPair {
            left_actor: u1.clone(),
            right_actor: u1.clone(),
            carrier: u1,
            left,
            right,
        };
        let tp = triple_product(&ap)?;
        if tp.sg.size() != 8 {
            all_ok = false;
            details.push("u1 triple product size mismatch".into());
        }
        details.push("u1 two-sided triple product: size 8, laws validated".into());
        Ok(all_ok)
    })
}

/// Criterion 8: the end-to-end separation fixtures.
pub fn criterion_separation(caps: Caps) -> CriterionResult {
    run_criterion("8-separation", 10, |details| {
        let mut all_ok = true;
        let even = parse_dfa(dfa::EVEN_AA)?;
        let odd = parse_dfa(dfa::ODD_A)?;
        let sep = decide_fo_separability(&even, &odd, caps)?;
        match &sep.verdict {
            Verdict::PointlikePair { s1, s2 } if s1 != s2 => {
                details.push(format!("even/odd: {}", sep.render(&even.alphabet)));
            }
            other => {
                all_ok = false;
                details.push(format!("even/odd: expected a 2-element pair, got {other:?}"));
            }
        }
        let afirst = parse_dfa(dfa::A_FIRST)?;
        let bfirst = parse_dfa(dfa::B_FIRST)?;
        let sep = decide_fo_separability(&afirst, &bfirst, caps)?;
        if sep.is_separable() {
            details.push("a-first/b-first: SEPARABLE".into());
        } else {
            all_ok = false;
            details.push("a-first/b-first: expected SEPARABLE".into());
        }
        Ok(all_ok)
    })
}

/// Runs criteria 1 through 8. (Criterion 9, byte-determinism of this very
/// report, is exercised by running the CLI twice.)
pub fn run_selftest(caps: Caps) -> SelftestReport {
    SelftestReport {
        criteria: vec![
            criterion_merge_proposition(caps),
            criterion_cover_division(caps),
            criterion_krohn_rhodes(caps),
            criterion_pointlikes_equality(caps),
            criterion_depth_bounds(caps),
            criterion_subgroup_unions(caps),
            criterion_augmentation_facts(caps),
            criterion_separation(caps),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_passes_and_prints_deterministically() {
        let caps = Caps::default();
        let a = run_selftest(caps);
        assert!(a.all_passed(), "{a}");
        let b = run_selftest(caps);
        assert_eq!(a.to_string(), b.to_string());
    }
}
