//! Power-semigroup arithmetic and saturation: subset products, downward
//! closure, `X -> X^(w+*)`, and the pointlike family as a fixpoint.

use std::collections::HashMap;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::semigroup::Semigroup;
use crate::Caps;

fn check_host(s: &Semigroup, x: &Bitset) -> Result<()> {
    if x.len() != s.size() {
        return Err(Error::HostMismatch { expected: s.size(), got: x.len() });
    }
    Ok(())
}

/// `{x y : x in X, y in Y}`.
pub fn subset_product(s: &Semigroup, x: &Bitset, y: &Bitset) -> Result<Bitset> {
    check_host(s, x)?;
    check_host(s, y)?;
    let mut out = Bitset::empty(s.size());
    for a in x.iter() {
        for b in y.iter() {
            out.insert(s.mul(a, b));
        }
    }
    Ok(out)
}

/// `X^(w+*) = union of X^w X^n over n >= 0`, where `X^w` is the unique
/// idempotent power of `X` in the power semigroup.
pub fn omega_star(s: &Semigroup, x: &Bitset) -> Result<Bitset> {
    check_host(s, x)?;
    if x.is_empty() {
        return Err(Error::Precondition("omega_star: empty subset".into()));
    }
    let mut powers = vec![x.clone()];
    loop {
        let next = subset_product(s, powers.last().unwrap(), x)?;
        if powers.contains(&next) {
            break;
        }
        powers.push(next);
    }
    let omega = powers
        .iter()
        .find(|p| subset_product(s, p, p).map(|q| q == **p).unwrap_or(false))
        .expect("a finite cyclic subsemigroup has an idempotent")
        .clone();
    let mut acc = omega.clone();
    let mut cur = omega;
    let mut seen: Vec<Bitset> = vec![cur.clone()];
    loop {
        cur = subset_product(s, &cur, x)?;
        if seen.contains(&cur) {
            break;
        }
        acc.union_with(&cur);
        seen.push(cur.clone());
    }
    Ok(acc)
}

/// How a member of a saturation entered the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivation {
    Seed(usize),
    Product(usize, usize),
    OmegaStar(usize),
    SubsetOf(usize),
}

/// A family of nonempty subsets closed under the three saturation rules,
/// each member carrying a derivation from the seeds.
#[derive(Clone, Debug)]
pub struct Saturation {
    host_size: usize,
    members: Vec<Bitset>,
    derivs: Vec<Derivation>,
    index: HashMap<Bitset, usize>,
}

impl Saturation {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &Bitset) -> bool {
        x.len() == self.host_size && self.index.contains_key(x)
    }

    pub fn members(&self) -> &[Bitset] {
        &self.members
    }

    pub fn derivation(&self, k: usize) -> Derivation {
        self.derivs[k]
    }

    /// Members in canonical order: by size, then lexicographic bit order.
    pub fn canonical_members(&self) -> Vec<Bitset> {
        let mut out = self.members.clone();
        out.sort();
        out
    }

    /// Re-derives every member from the seeds, rule by rule. References
    /// must point at earlier members, so derivations are well-founded.
    pub fn replay(&self, s: &Semigroup, seeds: &[Bitset]) -> Result<()> {
        let earlier = |i: usize, k: usize| {
            if i < k {
                Ok(())
            } else {
                Err(Error::Verification(format!(
                    "derivation of member {k} references member {i}"
                )))
            }
        };
        for (k, member) in self.members.iter().enumerate() {
            let derived = match self.derivs[k] {
                Derivation::Seed(i) => seeds
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::Verification("seed index out of range".into()))?,
                Derivation::Product(i, j) => {
                    earlier(i, k)?;
                    earlier(j, k)?;
                    subset_product(s, &self.members[i], &self.members[j])?
                }
                Derivation::OmegaStar(i) => {
                    earlier(i, k)?;
                    omega_star(s, &self.members[i])?
                }
                Derivation::SubsetOf(i) => {
                    earlier(i, k)?;
                    if !member.is_subset_of(&self.members[i]) || member.is_empty() {
                        return Err(Error::Verification(format!(
                            "member {k} is not a nonempty subset of member {i}"
                        )));
                    }
                    member.clone()
                }
            };
            if derived != *member {
                return Err(Error::Verification(format!("derivation of member {k} replays wrong")));
            }
        }
        Ok(())
    }
}

/// A member whose power set alone would blow the family cap cannot be
/// down-closed; reject it before materializing `2^|X|` subsets.
fn check_expandable(x: &Bitset, cap: usize) -> Result<()> {
    if x.count() >= 63 || (1usize << x.count()) - 1 > cap {
        return Err(Error::Resource { what: "subset family", cap });
    }
    Ok(())
}

/// All nonempty subsets of all members.
pub fn downward_closure(s: &Semigroup, members: &[Bitset]) -> Result<Vec<Bitset>> {
    let mut out: Vec<Bitset> = Vec::new();
    for m in members {
        check_host(s, m)?;
        check_expandable(m, crate::Caps::default().family)?;
        for sub in m.nonempty_subsets() {
            if !out.contains(&sub) {
                out.push(sub);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Is the family closed under product, downward closure and `w+*`?
pub fn is_saturated(s: &Semigroup, members: &[Bitset]) -> Result<bool> {
    let has = |x: &Bitset| members.contains(x);
    for x in members {
        check_expandable(x, crate::Caps::default().family)?;
        for y in members {
            if !has(&subset_product(s, x, y)?) {
                return Ok(false);
            }
        }
        if !has(&omega_star(s, x)?) {
            return Ok(false);
        }
        for sub in x.nonempty_subsets() {
            if !has(&sub) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Least family containing the seeds and closed under the three rules.
/// Round-based worklist: products against all current members, then `w+*`,
/// then one down-closure pass per round; the saturated predicate is
/// re-checked on the result.
pub fn saturate(s: &Semigroup, seeds: &[Bitset], caps: Caps) -> Result<Saturation> {
    let mut sat = Saturation {
        host_size: s.size(),
        members: Vec::new(),
        derivs: Vec::new(),
        index: HashMap::new(),
    };
    let push = |sat: &mut Saturation, m: Bitset, d: Derivation| -> Result<bool> {
        check_host(s, &m)?;
        if m.is_empty() {
            return Err(Error::Precondition("saturate: empty subset".into()));
        }
        if sat.index.contains_key(&m) {
            return Ok(false);
        }
        if sat.members.len() == caps.family {
            return Err(Error::Resource { what: "subset family", cap: caps.family });
        }
        sat.index.insert(m.clone(), sat.members.len());
        sat.members.push(m);
        sat.derivs.push(d);
        Ok(true)
    };

    for (i, seed) in seeds.iter().enumerate() {
        push(&mut sat, seed.clone(), Derivation::Seed(i))?;
    }
    // Worklist rounds: members below `processed` have already been combined
    // with each other, so each ordered pair is multiplied exactly once.
    let mut processed = 0;
    while processed < sat.members.len() {
        let end = sat.members.len();
        for i in processed..end {
            for j in 0..end {
                let p = subset_product(s, &sat.members[i], &sat.members[j])?;
                push(&mut sat, p, Derivation::Product(i, j))?;
                if j < processed {
                    let q = subset_product(s, &sat.members[j], &sat.members[i])?;
                    push(&mut sat, q, Derivation::Product(j, i))?;
                }
            }
            let o = omega_star(s, &sat.members[i])?;
            push(&mut sat, o, Derivation::OmegaStar(i))?;
            check_expandable(&sat.members[i], caps.family)?;
            for sub in sat.members[i].nonempty_subsets() {
                push(&mut sat, sub, Derivation::SubsetOf(i))?;
            }
        }
        processed = end;
    }
    if !is_saturated(s, &sat.members)? {
        return Err(Error::Internal("saturate: fixpoint is not saturated".into()));
    }
    Ok(sat)
}

/// The aperiodic pointlike family: the saturation of the singletons.
pub fn henckell_pointlikes(s: &Semigroup, caps: Caps) -> Result<Saturation> {
    let seeds: Vec<Bitset> = (0..s.size()).map(|i| Bitset::singleton(s.size(), i)).collect();
    saturate(s, &seeds, caps)
}

/// Derivation record produced by [`subgroup_union_check`].
#[derive(Clone, Debug)]
pub struct SubgroupUnionReport {
    /// The union of the subgroup's members.
    pub union_of_g: Bitset,
    /// Per cyclic subgroup: (index of a generator member, union of the
    /// cyclic subgroup, which must equal `omega_star` of that generator).
    pub cyclic_unions: Vec<(usize, Bitset)>,
    /// The setwise product of the cyclic subgroups covers the subgroup.
    pub product_covers_group: bool,
    /// The union lies in the saturation of the subgroup's members.
    pub union_in_saturation: bool,
}

impl SubgroupUnionReport {
    pub fn ok(&self) -> bool {
        self.product_covers_group && self.union_in_saturation
    }
}

/// For a subgroup `G` of the power semigroup, derives `union(G) in Sat(G)`
/// along the cyclic-subgroup route: `union(G) = prod_i union(C_i)` with each
/// `union(C_i) = omega_star(generator)`.
pub fn subgroup_union_check(
    s: &Semigroup,
    members: &[Bitset],
    caps: Caps,
) -> Result<SubgroupUnionReport> {
    // Build the abstract Cayley table of G under subset product.
    let n = members.len();
    if n == 0 {
        return Err(Error::Precondition("subgroup_union_check: empty family".into()));
    }
    let pos = |x: &Bitset| members.iter().position(|m| m == x);
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let p = subset_product(s, &members[i], &members[j])?;
            match pos(&p) {
                Some(k) => table[i * n + j] = k as u32,
                None => {
                    return Err(Error::Precondition(
                        "subgroup_union_check: family is not closed under subset product".into(),
                    ))
                }
            }
        }
    }
    let g = Semigroup::new(n, table, None)?;
    if !g.is_group() {
        return Err(Error::Precondition(
            "subgroup_union_check: family is not a group under subset product".into(),
        ));
    }

    let mut union_of_g = Bitset::empty(s.size());
    for m in members {
        union_of_g.union_with(m);
    }

    let cyclics = crate::group::cyclic_subgroups(&g)?;
    let mut cyclic_unions = Vec::new();
    let mut product: Option<Bitset> = None;
    let mut covered = Bitset::empty(n);
    for cyc in &cyclics {
        // Any generator of the cyclic subgroup works; use the least member
        // whose powers fill it.
        let gen = cyc
            .iter()
            .find(|&x| {
                Bitset::from_indices(n, &g.cyclic_closure(x)) == *cyc
            })
            .expect("a cyclic subgroup has a generator");
        let mut cyc_union = Bitset::empty(s.size());
        for k in cyc.iter() {
            cyc_union.union_with(&members[k]);
            covered.insert(k);
        }
        let omega = omega_star(s, &members[gen])?;
        if omega != cyc_union {
            return Err(Error::Internal(
                "subgroup_union_check: omega_star of a generator missed the cyclic union".into(),
            ));
        }
        product = Some(match product {
            None => cyc_union.clone(),
            Some(p) => subset_product(s, &p, &cyc_union)?,
        });
        cyclic_unions.push((gen, cyc_union));
    }
    // The setwise product of all cyclic subgroups is the whole group:
    // check it covers every member index.
    let mut prod_members: Vec<usize> = vec![g
        .identity()
        .expect("group")];
    for cyc in &cyclics {
        let mut next = Vec::new();
        for &a in &prod_members {
            for b in cyc.iter() {
                let p = g.mul(a, b);
                if !next.contains(&p) {
                    next.push(p);
                }
            }
        }
        prod_members = next;
    }
    let product_covers_group = prod_members.len() == n;

    let product_union = product.expect("at least one cyclic subgroup");
    if product_union != union_of_g {
        return Err(Error::Internal(
            "subgroup_union_check: product of cyclic unions differs from union(G)".into(),
        ));
    }
    let sat = saturate(s, members, caps)?;
    let union_in_saturation = sat.contains(&union_of_g);
    Ok(SubgroupUnionReport { union_of_g, cyclic_unions, product_covers_group, union_in_saturation })
}

/// Renders one subset as `{l1, l2, ...}` using element labels, index order.
pub fn format_subset(s: &Semigroup, x: &Bitset) -> String {
    let inner: Vec<String> = x.iter().map(|i| s.label(i)).collect();
    format!("{{{}}}", inner.join(", "))
}

/// One subset per line, canonical family order.
pub fn format_family(s: &Semigroup, members: &[Bitset]) -> String {
    let mut sorted = members.to_vec();
    sorted.sort();
    sorted
        .iter()
        .map(|m| format_subset(s, m))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::collections::BTreeSet;

    fn bs(len: usize, idx: &[usize]) -> Bitset {
        Bitset::from_indices(len, idx)
    }

    #[test]
    fn subset_product_examples() {
        let z2 = fixtures::z2();
        assert_eq!(subset_product(&z2, &bs(2, &[0]), &bs(2, &[1])).unwrap(), bs(2, &[1]));
        assert_eq!(
            subset_product(&z2, &bs(2, &[0, 1]), &bs(2, &[0, 1])).unwrap(),
            bs(2, &[0, 1])
        );
        let lz2 = fixtures::lz2();
        assert_eq!(subset_product(&lz2, &bs(2, &[0]), &bs(2, &[0, 1])).unwrap(), bs(2, &[0]));
    }

    #[test]
    fn host_mismatch_is_reported() {
        let z2 = fixtures::z2();
        let err = subset_product(&z2, &bs(3, &[0]), &bs(3, &[1])).unwrap_err();
        assert!(matches!(err, Error::HostMismatch { expected: 2, got: 3 }));
    }

    #[test]
    fn omega_star_examples() {
        let z2 = fixtures::z2();
        // Oracle: {g}^2 = {e} is idempotent, so X^w = {e} and the unions
        // {e}, {e}{g} = {g} give {e, g}.
        assert_eq!(omega_star(&z2, &bs(2, &[1])).unwrap(), bs(2, &[0, 1]));

        let u1 = fixtures::u1();
        assert_eq!(omega_star(&u1, &bs(2, &[1])).unwrap(), bs(2, &[1]));

        let c21 = fixtures::c21();
        // X = {x}: X^2 = {x^2} idempotent; x^2 x = x^2.
        assert_eq!(omega_star(&c21, &bs(2, &[0])).unwrap(), bs(2, &[1]));

        assert!(omega_star(&z2, &Bitset::empty(2)).is_err());
    }

    #[test]
    fn downward_closure_examples() {
        let z2 = fixtures::z2();
        let out = downward_closure(&z2, &[bs(2, &[0, 1])]).unwrap();
        assert_eq!(out, vec![bs(2, &[0]), bs(2, &[1]), bs(2, &[0, 1])]);

        let singles = vec![bs(2, &[0]), bs(2, &[1])];
        assert_eq!(downward_closure(&z2, &singles).unwrap(), singles);

        let lz2 = fixtures::lz2();
        let out = downward_closure(&lz2, &[bs(2, &[0]), bs(2, &[0, 1])]).unwrap();
        assert_eq!(out.len(), 3);
    }

    /// Independent oracle: a naive fixpoint over sorted index vectors.
    fn naive_saturate(s: &Semigroup, seeds: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
        let to_vec = |b: &Bitset| b.indices();
        let from_vec = |v: &[usize]| Bitset::from_indices(s.size(), v);
        let mut fam: BTreeSet<Vec<usize>> = seeds.iter().cloned().collect();
        loop {
            let mut next = fam.clone();
            let items: Vec<Vec<usize>> = fam.iter().cloned().collect();
            for x in &items {
                for y in &items {
                    next.insert(to_vec(&subset_product(s, &from_vec(x), &from_vec(y)).unwrap()));
                }
                next.insert(to_vec(&omega_star(s, &from_vec(x)).unwrap()));
                for sub in from_vec(x).nonempty_subsets() {
                    next.insert(to_vec(&sub));
                }
            }
            if next == fam {
                return fam;
            }
            fam = next;
        }
    }

    #[test]
    fn saturate_examples() {
        let caps = Caps::default();
        let u1 = fixtures::u1();
        let sat = saturate(&u1, &[bs(2, &[0]), bs(2, &[1])], caps).unwrap();
        assert_eq!(sat.len(), 2);

        let z2 = fixtures::z2();
        let sat = saturate(&z2, &[bs(2, &[0]), bs(2, &[1])], caps).unwrap();
        assert_eq!(sat.canonical_members(), vec![bs(2, &[0]), bs(2, &[1]), bs(2, &[0, 1])]);

        // Seeding with the full set gives the same three members.
        let sat = saturate(&z2, &[bs(2, &[0, 1])], caps).unwrap();
        assert_eq!(sat.len(), 3);
    }

    #[test]
    fn saturation_matches_naive_oracle_on_corpus() {
        let caps = Caps::default();
        for fix in fixtures::corpus() {
            let s = &fix.sg;
            let sat = henckell_pointlikes(s, caps).unwrap();
            let got: BTreeSet<Vec<usize>> =
                sat.members().iter().map(|m| m.indices()).collect();
            let seeds: Vec<Vec<usize>> = (0..s.size()).map(|i| vec![i]).collect();
            assert_eq!(got, naive_saturate(s, &seeds), "mismatch on {}", fix.name);
        }
    }

    #[test]
    fn henckell_pointlikes_examples() {
        let caps = Caps::default();
        // Aperiodic members: exactly the singletons; groups: all subsets.
        for fix in fixtures::corpus() {
            let s = &fix.sg;
            let fam = henckell_pointlikes(s, caps).unwrap();
            if s.is_aperiodic() {
                assert_eq!(fam.len(), s.size(), "{} should be singletons", fix.name);
            } else {
                assert!(fam.len() > s.size(), "{} should grow", fix.name);
            }
            if s.is_group() {
                assert_eq!(fam.len(), (1 << s.size()) - 1, "{}", fix.name);
            }
        }
        assert_eq!(henckell_pointlikes(&fixtures::z4(), caps).unwrap().len(), 15);
    }

    #[test]
    fn derivations_replay() {
        let caps = Caps::default();
        for fix in fixtures::corpus() {
            let s = &fix.sg;
            let seeds: Vec<Bitset> =
                (0..s.size()).map(|i| Bitset::singleton(s.size(), i)).collect();
            let sat = saturate(s, &seeds, caps).unwrap();
            sat.replay(s, &seeds).unwrap();
        }
    }

    #[test]
    fn saturate_is_idempotent_and_monotone() {
        let caps = Caps::default();
        let z4 = fixtures::z4();
        let seeds = vec![bs(4, &[1])];
        let sat = saturate(&z4, &seeds, caps).unwrap();
        let again = saturate(&z4, &sat.members().to_vec(), caps).unwrap();
        assert_eq!(sat.canonical_members(), again.canonical_members());

        // Monotone: adding a seed can only grow the result.
        let bigger = saturate(&z4, &[bs(4, &[1]), bs(4, &[0, 2])], caps).unwrap();
        for m in sat.members() {
            assert!(bigger.contains(m));
        }
    }

    #[test]
    fn family_cap_is_enforced() {
        let z4 = fixtures::z4();
        let caps = Caps { family: 4, ..Caps::default() };
        let err = henckell_pointlikes(&z4, caps).unwrap_err();
        assert_eq!(err, Error::Resource { what: "subset family", cap: 4 });
    }

    #[test]
    fn omega_star_is_idempotent_headed() {
        let caps = Caps::default();
        for fix in fixtures::corpus() {
            let s = &fix.sg;
            let fam = henckell_pointlikes(s, caps).unwrap();
            for x in fam.members() {
                let os = omega_star(s, x).unwrap();
                let sq = subset_product(s, &os, &os).unwrap();
                assert!(os.is_subset_of(&sq));
                // X^w X^(w+*) = X^(w+*): multiply by X^w on the left.
                let mut powers = vec![x.clone()];
                loop {
                    let next = subset_product(s, powers.last().unwrap(), x).unwrap();
                    if powers.contains(&next) {
                        break;
                    }
                    powers.push(next);
                }
                let omega = powers
                    .iter()
                    .find(|p| subset_product(s, p, p).unwrap() == **p)
                    .unwrap();
                assert_eq!(subset_product(s, omega, &os).unwrap(), os);
            }
        }
    }

    #[test]
    fn subgroup_union_check_examples() {
        let caps = Caps::default();
        let z2 = fixtures::z2();
        let report =
            subgroup_union_check(&z2, &[bs(2, &[0]), bs(2, &[1])], caps).unwrap();
        assert!(report.ok());
        assert_eq!(report.union_of_g, bs(2, &[0, 1]));

        let report = subgroup_union_check(&z2, &[bs(2, &[0])], caps).unwrap();
        assert!(report.ok());
        assert_eq!(report.union_of_g, bs(2, &[0]));

        // The singleton image of Z4 in its power semigroup.
        let z4 = fixtures::z4();
        let members: Vec<Bitset> = (0..4).map(|i| bs(4, &[i])).collect();
        let report = subgroup_union_check(&z4, &members, caps).unwrap();
        assert!(report.ok());
        assert_eq!(report.union_of_g.count(), 4);

        // A Z2 inside 2^Z4 made of two 2-element subsets.
        let members = vec![bs(4, &[0, 2]), bs(4, &[1, 3])];
        let report = subgroup_union_check(&z4, &members, caps).unwrap();
        assert!(report.ok());
        assert_eq!(report.union_of_g.count(), 4);

        // Not closed under subset product: rejected.
        let err = subgroup_union_check(&fixtures::c21(), &[bs(2, &[0])], caps);
        assert!(err.is_err());
    }

    #[test]
    fn formatting_is_canonical() {
        let z2 = fixtures::z2();
        let fam = vec![bs(2, &[0, 1]), bs(2, &[1]), bs(2, &[0])];
        assert_eq!(format_family(&z2, &fam), "{e}\n{g}\n{e, g}");
    }
}
