//! Recursive two-sided decomposition into wreath and triple products, with
//! a per-node division certificate. Leaves are semilattices and simple
//! groups dividing the root.

use crate::error::{Error, Result};
use crate::fixtures;
use crate::group::{composition_factors, is_simple, GROUP_SEARCH_CAP};
use crate::hom::DivisionWitness;
use crate::merge::division_from_cover;
use crate::products::{wreath_product, WreathProduct};
use crate::semigroup::Semigroup;
use crate::words::words_of_length;
use crate::Caps;

/// Certificate node: the target divides the construction via the witness.
#[derive(Clone, Debug)]
pub struct DecompNode {
    pub target: Semigroup,
    pub construction: Semigroup,
    pub witness: DivisionWitness,
    /// Depth counter: 1 at leaves, `l + r` at wreath nodes,
    /// `mid + max(l, r) + 1` at triple nodes.
    pub depth: u64,
    pub kind: NodeKind,
}

#[derive(Clone, Debug)]
pub enum NodeKind {
    LeafSemilattice,
    LeafSimpleGroup,
    Wreath { left: Box<DecompNode>, right: Box<DecompNode> },
    Triple {
        right: Box<DecompNode>,
        mid: Box<DecompNode>,
        left: Box<DecompNode>,
        /// Generating subsemigroups of the target, for re-derivation.
        t1_elements: Vec<usize>,
        t2_elements: Vec<usize>,
    },
    Dual { child: Box<DecompNode> },
}

impl DecompNode {
    fn leaf(target: Semigroup, kind: NodeKind) -> DecompNode {
        DecompNode {
            construction: target.clone(),
            witness: DivisionWitness::identity(&target),
            target,
            depth: 1,
            kind,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            NodeKind::LeafSemilattice => "leaf-sl",
            NodeKind::LeafSimpleGroup => "leaf-group",
            NodeKind::Wreath { .. } => "wreath",
            NodeKind::Triple { .. } => "triple",
            NodeKind::Dual { .. } => "dual",
        }
    }

    pub fn children(&self) -> Vec<&DecompNode> {
        match &self.kind {
            NodeKind::LeafSemilattice | NodeKind::LeafSimpleGroup => vec![],
            NodeKind::Wreath { left, right } => vec![left, right],
            NodeKind::Triple { right, mid, left, .. } => vec![right, mid, left],
            NodeKind::Dual { child } => vec![child],
        }
    }

    /// All group leaves in the tree.
    pub fn group_leaves(&self) -> Vec<&Semigroup> {
        match self.kind {
            NodeKind::LeafSimpleGroup => vec![&self.target],
            _ => self.children().into_iter().flat_map(|c| c.group_leaves()).collect(),
        }
    }

    pub fn semilattice_leaf_count(&self) -> usize {
        match self.kind {
            NodeKind::LeafSemilattice => 1,
            _ => self.children().into_iter().map(|c| c.semilattice_leaf_count()).sum(),
        }
    }
}

/// An irredundant generating set: starting from all elements, greedily drop
/// (from the highest index down) anything generated by the rest, so the
/// least-index generators survive.
pub fn minimal_generating_set(s: &Semigroup) -> Vec<usize> {
    let mut gens: Vec<usize> = (0..s.size()).collect();
    let mut i = gens.len();
    while i > 0 {
        i -= 1;
        let mut without = gens.clone();
        without.remove(i);
        if !without.is_empty() && s.generated_subset(&without).count() == s.size() {
            gens = without;
            i = gens.len();
        }
    }
    gens
}

/// Decomposes a group along a composition series: nested wreath nodes via
/// the transversal embedding, with simple-group leaves.
pub fn decompose_group(g: &Semigroup, caps: Caps) -> Result<DecompNode> {
    if !g.is_group() {
        return Err(Error::Precondition("decompose_group: input is not a group".into()));
    }
    if g.is_semilattice() {
        // Only the trivial group.
        return Ok(DecompNode::leaf(g.clone(), NodeKind::LeafSemilattice));
    }
    if is_simple(g, GROUP_SEARCH_CAP)? {
        return Ok(DecompNode::leaf(g.clone(), NodeKind::LeafSimpleGroup));
    }
    let steps = composition_factors(g, GROUP_SEARCH_CAP)?;
    // steps[0] gives G_1 = kernel of the first quotient, factor = G/G_1.
    let factor = steps[0].factor.clone();
    let n_local: Vec<usize> = {
        let q = &steps[0].quotient;
        let e = factor.identity().expect("group");
        (0..g.size()).filter(|&x| q.apply(x) == e).collect()
    };
    let n_bits = crate::bitset::Bitset::from_indices(g.size(), &n_local);
    let (hom, wp) = crate::group::kk_embed(g, &n_bits)?;
    let sub: Vec<usize> = (0..g.size()).map(|x| hom.apply(x)).collect();
    let witness = DivisionWitness { sub, map: (0..g.size()).collect() };
    let n_sg = g.subsemigroup(&n_local)?;
    let left = decompose_group(&n_sg, caps)?;
    let right = if factor.is_semilattice() {
        DecompNode::leaf(factor.clone(), NodeKind::LeafSemilattice)
    } else {
        DecompNode::leaf(factor.clone(), NodeKind::LeafSimpleGroup)
    };
    Ok(DecompNode {
        target: g.clone(),
        construction: wp.sg,
        witness,
        depth: left.depth + right.depth,
        kind: NodeKind::Wreath { left: Box::new(left), right: Box::new(right) },
    })
}

/// The left-nested tower `W_1 = U1`, `W_j = W_(j-1) wr U1`, together with an
/// element `eta_j` generating a copy of the aperiodic cyclic semigroup of
/// index `j`: `eta_j = (f, 0)` with `f(1) = 1_W` and `f(0) = eta_(j-1)`.
fn counter_tower(m: usize) -> Result<Vec<(WreathProduct, usize)>> {
    let u1 = fixtures::u1();
    let mut tower: Vec<(WreathProduct, usize)> = Vec::new();
    for j in 2..=m {
        let (prev_sg, prev_eta) = match tower.last() {
            None => (u1.clone(), 1usize),
            Some((wp, eta)) => (wp.sg.clone(), *eta),
        };
        let wp = wreath_product(&prev_sg, &u1)?;
        let one = prev_sg.identity().ok_or_else(|| {
            Error::Internal("counter tower: wreath of monoids lost its identity".into())
        })?;
        let eta = wp.encode(&(vec![one, prev_eta], 1));
        let _ = j;
        tower.push((wp, eta));
    }
    Ok(tower)
}

/// Certificate for the tower semigroup `W_j` itself (an identity witness at
/// each level, with semilattice leaves).
fn tower_tree(tower: &[(WreathProduct, usize)], j: usize) -> DecompNode {
    if j == 1 {
        return DecompNode::leaf(fixtures::u1(), NodeKind::LeafSemilattice);
    }
    let wp = &tower[j - 2].0;
    let left = tower_tree(tower, j - 1);
    let right = DecompNode::leaf(fixtures::u1(), NodeKind::LeafSemilattice);
    DecompNode {
        target: wp.sg.clone(),
        construction: wp.sg.clone(),
        witness: DivisionWitness::identity(&wp.sg),
        depth: left.depth + right.depth,
        kind: NodeKind::Wreath { left: Box::new(left), right: Box::new(right) },
    }
}

/// Node dividing `target` (an aperiodic cyclic semigroup of index `m`,
/// elements `powers[k]` being the k+1st power of the generator) into the
/// tower `W_m` via the powers of `eta_m`.
fn counter_node(m: usize, target: &Semigroup, powers: &[usize]) -> Result<DecompNode> {
    let tower = counter_tower(m)?;
    let (wp, eta) = &tower[m - 2];
    let mut sub = Vec::with_capacity(m);
    let mut p = *eta;
    for _ in 0..m {
        sub.push(p);
        p = wp.sg.mul(p, *eta);
    }
    let witness = DivisionWitness { sub, map: powers.to_vec() };
    let left = tower_tree(&tower, m - 1);
    let right = DecompNode::leaf(fixtures::u1(), NodeKind::LeafSemilattice);
    let node = DecompNode {
        target: target.clone(),
        construction: wp.sg.clone(),
        witness,
        depth: left.depth + right.depth,
        kind: NodeKind::Wreath { left: Box::new(left), right: Box::new(right) },
    };
    if node.witness.check(target, &node.construction).is_err() {
        return Err(Error::Internal("counter_node: tower witness failed".into()));
    }
    Ok(node)
}

/// Decomposes a cyclic semigroup `<x>` with index `m` and period `r` into a
/// wreath of its kernel group (when `r >= 2`) and `m` semilattice leaves;
/// witnesses encode elements as (threshold counter, kernel phase).
pub fn decompose_cyclic(s: &Semigroup, x: usize, caps: Caps) -> Result<DecompNode> {
    let (m, r) = s.index_period(x);
    if s.cyclic_closure(x).len() != s.size() {
        return Err(Error::Precondition("decompose_cyclic: x does not generate".into()));
    }
    if m == 1 {
        // <x> is a cyclic group.
        return decompose_group(s, caps);
    }
    // powers[k] = index of x^(k+1) in s.
    let powers = s.cyclic_closure(x);
    if r == 1 {
        return counter_node(m, s, &powers);
    }

    // Kernel group K = {x^m, ..., x^(m+r-1)}.
    let mut kernel: Vec<usize> = powers[m - 1..].to_vec();
    kernel.sort_unstable();
    let k_sg = s.subsemigroup(&kernel)?;
    let k_pos = |x: usize| kernel.binary_search(&x).expect("kernel element");
    if !k_sg.is_group() {
        return Err(Error::Internal("decompose_cyclic: kernel is not a group".into()));
    }
    let e = s.idempotent_power(x);

    let counter = fixtures::cyclic(m, 1);
    let wp = wreath_product(&k_sg, &counter)?;
    // x^k maps to (constant e x^k, counter^min(k, m)).
    let mut sub = Vec::with_capacity(s.size());
    let mut map = Vec::with_capacity(s.size());
    for (k0, &xk) in powers.iter().enumerate() {
        let k = k0 + 1;
        let gamma = k_pos(s.mul(e, xk));
        let t = k.min(m) - 1;
        sub.push(wp.encode(&(vec![gamma; counter.size()], t)));
        map.push(xk);
    }
    let witness = DivisionWitness { sub, map };
    let left = decompose_group(&k_sg, caps)?;
    let right = counter_node(m, &counter, &(0..m).collect::<Vec<_>>())?;
    let node = DecompNode {
        target: s.clone(),
        construction: wp.sg.clone(),
        witness,
        depth: left.depth + right.depth,
        kind: NodeKind::Wreath { left: Box::new(left), right: Box::new(right) },
    };
    if node.witness.check(s, &node.construction).is_err() {
        return Err(Error::Internal("decompose_cyclic: kernel-phase witness failed".into()));
    }
    Ok(node)
}

/// The recursive decomposer. Case order: semilattice leaf, group, cyclic,
/// then the generator split `A1 = {a}`, `A2 = A \ {a}` for the least
/// generator with `a S` proper (dualizing when only right splitters exist).
pub fn kr_decompose(s: &Semigroup, caps: Caps) -> Result<DecompNode> {
    kr_inner(s, caps, caps.depth, false)
}

fn kr_inner(s: &Semigroup, caps: Caps, depth_left: usize, dualized: bool) -> Result<DecompNode> {
    if depth_left == 0 {
        return Err(Error::Resource { what: "decomposition recursion depth", cap: caps.depth });
    }
    if s.is_semilattice() {
        return Ok(DecompNode::leaf(s.clone(), NodeKind::LeafSemilattice));
    }
    if s.is_group() {
        return decompose_group(s, caps);
    }
    if let Some(x) = (0..s.size()).find(|&x| s.cyclic_closure(x).len() == s.size()) {
        return decompose_cyclic(s, x, caps);
    }

    let gens = minimal_generating_set(s);
    let full = |set: &crate::bitset::Bitset| set.count() == s.size();
    let splitter = gens.iter().copied().find(|&a| {
        let a_s: Vec<usize> = (0..s.size()).map(|y| s.mul(a, y)).collect();
        !full(&crate::bitset::Bitset::from_indices(s.size(), &a_s))
    });
    let a = match splitter {
        Some(a) => a,
        None => {
            if dualized {
                return Err(Error::Internal(
                    "kr_decompose: no splitter on either side of a non-group".into(),
                ));
            }
            let op = s.opposite();
            let child = kr_inner(&op, caps, depth_left - 1, true)?;
            let node = DecompNode {
                target: s.clone(),
                construction: child.construction.opposite(),
                witness: child.witness.clone(),
                depth: child.depth,
                kind: NodeKind::Dual { child: Box::new(child) },
            };
            if node.witness.check(s, &node.construction).is_err() {
                return Err(Error::Internal("kr_decompose: dual witness failed".into()));
            }
            return Ok(node);
        }
    };

    let t1_elements = s.generated_subset(&[a]).indices();
    let a2: Vec<usize> = gens.iter().copied().filter(|&g| g != a).collect();
    let t2_elements = s.generated_subset(&a2).indices();
    let div = division_from_cover(s, &t1_elements, &t2_elements, caps)?;
    if t1_elements.len() >= s.size()
        || t2_elements.len() >= s.size()
        || div.t0_elems.len() >= s.size()
    {
        return Err(Error::Internal(
            "kr_decompose: a component failed to shrink; recursion would not terminate".into(),
        ));
    }
    let t1_sg = s.subsemigroup(&t1_elements)?;
    let t2_sg = s.subsemigroup(&t2_elements)?;
    let t0_sg = s.subsemigroup(&div.t0_elems)?;
    let left = kr_inner(&t1_sg, caps, depth_left - 1, false)?;
    let right = kr_inner(&t2_sg, caps, depth_left - 1, false)?;
    let mid = kr_inner(&t0_sg, caps, depth_left - 1, false)?;
    Ok(DecompNode {
        target: s.clone(),
        construction: div.construction,
        witness: div.witness,
        depth: mid.depth + left.depth.max(right.depth) + 1,
        kind: NodeKind::Triple {
            right: Box::new(right),
            mid: Box::new(mid),
            left: Box::new(left),
            t1_elements,
            t2_elements,
        },
    })
}

/// One line per node in the verification report.
#[derive(Clone, Debug)]
pub struct VerifyEntry {
    pub path: String,
    pub kind: &'static str,
    pub target_id: String,
    pub depth: u64,
    pub status: std::result::Result<(), String>,
}

#[derive(Clone, Debug)]
pub struct TreeReport {
    pub entries: Vec<VerifyEntry>,
    pub semilattice_leaves: usize,
    pub group_leaf_sizes: Vec<usize>,
    pub depth: u64,
}

impl TreeReport {
    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(|e| e.status.is_ok())
    }
}

impl std::fmt::Display for TreeReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for e in &self.entries {
            let status = match &e.status {
                Ok(()) => "ok".to_string(),
                Err(msg) => format!("FAIL({msg})"),
            };
            writeln!(
                f,
                "{} {} target={} depth={} {}",
                e.path, e.kind, e.target_id, e.depth, status
            )?;
        }
        write!(
            f,
            "leaves: semilattice={} groups={:?} depth={}",
            self.semilattice_leaves, self.group_leaf_sizes, self.depth
        )
    }
}

/// Re-validates every node bottom-up: witnesses, leaf shapes, wreath/triple
/// re-derivations, dual unwinding, and (when the root is small enough) that
/// every simple-group leaf divides the root.
pub fn verify_tree(root: &DecompNode) -> TreeReport {
    let mut entries = Vec::new();
    verify_node(root, root, "0", &mut entries);
    TreeReport {
        entries,
        semilattice_leaves: root.semilattice_leaf_count(),
        group_leaf_sizes: root.group_leaves().iter().map(|g| g.size()).collect(),
        depth: root.depth,
    }
}

fn verify_node(node: &DecompNode, root: &DecompNode, path: &str, out: &mut Vec<VerifyEntry>) {
    let status = check_node(node, root);
    out.push(VerifyEntry {
        path: path.to_string(),
        kind: node.kind_name(),
        target_id: node.target.id(),
        depth: node.depth,
        status,
    });
    for (i, child) in node.children().into_iter().enumerate() {
        verify_node(child, root, &format!("{path}.{i}"), out);
    }
}

fn check_node(node: &DecompNode, root: &DecompNode) -> std::result::Result<(), String> {
    node.witness
        .check(&node.target, &node.construction)
        .map_err(|d| format!("witness {d}"))?;
    match &node.kind {
        NodeKind::LeafSemilattice => {
            if !node.target.is_semilattice() {
                return Err("leaf target is not a semilattice".into());
            }
        }
        NodeKind::LeafSimpleGroup => {
            if !node.target.is_group() {
                return Err("leaf target is not a group".into());
            }
            match is_simple(&node.target, GROUP_SEARCH_CAP) {
                Ok(true) => {}
                Ok(false) => return Err("leaf group is not simple".into()),
                Err(e) => return Err(e.to_string()),
            }
            if root.target.size() <= 8 {
                match group_divides(&node.target, &root.target) {
                    Ok(true) => {}
                    Ok(false) => return Err("group leaf does not divide the root".into()),
                    Err(e) => return Err(e.to_string()),
                }
            }
        }
        NodeKind::Wreath { left, right } => {
            if node.witness.sub.len() != node.target.size() {
                return Err("wreath witness should be an embedding image".into());
            }
            match wreath_product(&left.target, &right.target) {
                Ok(wp) => {
                    if wp.sg.table() != node.construction.table() {
                        return Err("construction is not the wreath of the children".into());
                    }
                }
                Err(e) => return Err(format!("cannot rebuild wreath: {e}")),
            }
        }
        NodeKind::Triple { right, mid, left, t1_elements, t2_elements } => {
            let s = &node.target;
            let rebuild = |elems: &[usize]| s.subsemigroup(elems).map_err(|e| e.to_string());
            if rebuild(t1_elements)?.table() != left.target.table() {
                return Err("left child does not match <A1>".into());
            }
            if rebuild(t2_elements)?.table() != right.target.table() {
                return Err("right child does not match <A2>".into());
            }
            let mut t0_gens = Vec::new();
            for &x in t1_elements {
                for &y in t2_elements {
                    t0_gens.push(s.mul(x, y));
                }
            }
            let t0_elems = s.generated_subset(&t0_gens).indices();
            if rebuild(&t0_elems)?.table() != mid.target.table() {
                return Err("mid child does not match <T1 T2>".into());
            }
            let mut union: Vec<usize> = t1_elements.iter().chain(t2_elements).copied().collect();
            union.sort_unstable();
            union.dedup();
            if s.generated_subset(&union).count() != s.size() {
                return Err("T1 and T2 do not generate the target".into());
            }
            let want = mid.depth + left.depth.max(right.depth) + 1;
            if node.depth != want {
                return Err(format!("depth {} should be {want}", node.depth));
            }
        }
        NodeKind::Dual { child } => {
            if child.target.table() != node.target.opposite().table() {
                return Err("dual child does not decompose the opposite".into());
            }
            if child.construction.table() != node.construction.opposite().table() {
                return Err("dual construction mismatch".into());
            }
        }
    }
    for child in node.children() {
        check_node(child, root).map_err(|e| format!("child: {e}"))?;
    }
    Ok(())
}

/// Does the simple group `f` divide `root`? Exhaustive search over group
/// subsemigroups of `root` and surjective homomorphisms onto `f`.
fn group_divides(f: &Semigroup, root: &Semigroup) -> Result<bool> {
    if root.size() > 12 {
        return Err(Error::Resource { what: "divides-root search", cap: 12 });
    }
    let n = root.size();
    for mask in 1u32..(1 << n) {
        let elems: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let Ok(sub) = root.subsemigroup(&elems) else { continue };
        if !sub.is_group() || sub.size() < f.size() {
            continue;
        }
        // Brute-force surjective homomorphisms sub -> f.
        if f.size().pow(sub.size() as u32) > 1_000_000 {
            return Err(Error::Resource { what: "divides-root hom search", cap: 1_000_000 });
        }
        for assign in words_of_length(f.size(), sub.size()) {
            let hom_ok = (0..sub.size()).all(|x| {
                (0..sub.size()).all(|y| assign[sub.mul(x, y)] == f.mul(assign[x], assign[y]))
            });
            if !hom_ok {
                continue;
            }
            let mut hit = vec![false; f.size()];
            for &v in &assign {
                hit[v] = true;
            }
            if hit.into_iter().all(|b| b) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Certificate text: an indented s-expression, one node per line.
pub fn format_tree(root: &DecompNode) -> String {
    let mut out = String::new();
    fn emit(node: &DecompNode, indent: usize, out: &mut String) {
        let ok = node.witness.check(&node.target, &node.construction).is_ok();
        out.push_str(&"  ".repeat(indent));
        out.push_str(&format!(
            "({} target={} depth={} witness={}",
            node.kind_name(),
            node.target.id(),
            node.depth,
            if ok { "ok" } else { "FAIL" }
        ));
        let children = node.children();
        if children.is_empty() {
            out.push(')');
        } else {
            for child in children {
                out.push('\n');
                emit(child, indent + 1, out);
            }
            out.push(')');
        }
    }
    emit(root, 0, &mut out);
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn minimal_generating_set_examples() {
        assert_eq!(minimal_generating_set(&fixtures::z4()), vec![1]); // {g}
        assert_eq!(minimal_generating_set(&fixtures::u1()), vec![0, 1]);
        assert_eq!(minimal_generating_set(&fixtures::lz2()), vec![0, 1]);
        assert_eq!(minimal_generating_set(&fixtures::b21()), vec![0, 1, 2]);
    }

    #[test]
    fn kr_decompose_semilattice_shortcut() {
        let node = kr_decompose(&fixtures::u1(), Caps::default()).unwrap();
        assert!(matches!(node.kind, NodeKind::LeafSemilattice));
        assert_eq!(node.depth, 1);
    }

    #[test]
    fn kr_decompose_groups() {
        let node = kr_decompose(&fixtures::z2(), Caps::default()).unwrap();
        assert!(matches!(node.kind, NodeKind::LeafSimpleGroup));

        let node = kr_decompose(&fixtures::z4(), Caps::default()).unwrap();
        let leaves = node.group_leaves();
        assert_eq!(leaves.len(), 2);
        assert!(leaves.iter().all(|g| g.size() == 2));
        assert!(verify_tree(&node).all_ok());
    }

    #[test]
    fn kr_decompose_lz2_is_a_triple_over_trivial_parts() {
        let node = kr_decompose(&fixtures::lz2(), Caps::default()).unwrap();
        match &node.kind {
            NodeKind::Triple { t1_elements, t2_elements, .. } => {
                assert_eq!(t1_elements, &vec![0]);
                assert_eq!(t2_elements, &vec![1]);
            }
            other => panic!("expected triple, got {other:?}"),
        }
        assert!(verify_tree(&node).all_ok());
    }

    #[test]
    fn kr_decompose_rz2_dualizes() {
        let node = kr_decompose(&fixtures::rz2(), Caps::default()).unwrap();
        assert!(matches!(node.kind, NodeKind::Dual { .. }));
        assert!(verify_tree(&node).all_ok());
    }

    #[test]
    fn decompose_cyclic_examples() {
        let caps = Caps::default();
        // c21: two semilattice leaves, no groups; witness verified.
        let node = kr_decompose(&fixtures::c21(), caps).unwrap();
        assert_eq!(node.semilattice_leaf_count(), 2);
        assert!(node.group_leaves().is_empty());
        assert!(verify_tree(&node).all_ok());

        // Z3 routes through the group case.
        let node = kr_decompose(&fixtures::z3(), caps).unwrap();
        assert!(matches!(node.kind, NodeKind::LeafSimpleGroup));

        // c22: two semilattice leaves plus a Z2 leaf.
        let node = kr_decompose(&fixtures::c22(), caps).unwrap();
        assert_eq!(node.semilattice_leaf_count(), 2);
        assert_eq!(node.group_leaves().len(), 1);
        assert_eq!(node.group_leaves()[0].size(), 2);
        assert!(verify_tree(&node).all_ok());

        // c32: three semilattice leaves plus a Z2 leaf.
        let node = kr_decompose(&fixtures::c32(), caps).unwrap();
        assert_eq!(node.semilattice_leaf_count(), 3);
        assert_eq!(node.group_leaves().len(), 1);
        assert!(verify_tree(&node).all_ok());
    }

    #[test]
    fn kr_decompose_s3_uses_a_nonabelian_series() {
        // S3 from a 3-cycle and a transposition: factors Z3 and Z2.
        let gen = crate::closure::transformation_closure(
            &[vec![1, 2, 0], vec![1, 0, 2]],
            10,
        )
        .unwrap();
        assert_eq!(gen.sg.size(), 6);
        assert!(gen.sg.is_group());
        let node = kr_decompose(&gen.sg, Caps::default()).unwrap();
        let mut sizes: Vec<usize> = node.group_leaves().iter().map(|g| g.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 3]);
        assert!(verify_tree(&node).all_ok());
    }

    #[test]
    fn decompose_cyclic_delegates_groups_and_checks_generation() {
        // A cyclic group goes straight to the group case.
        let z3 = fixtures::z3();
        let node = decompose_cyclic(&z3, 1, Caps::default()).unwrap();
        assert!(matches!(node.kind, NodeKind::LeafSimpleGroup));
        // The identity does not generate Z3.
        assert!(decompose_cyclic(&z3, 0, Caps::default()).is_err());
    }

    #[test]
    fn kr_decompose_corpus_and_verify() {
        let caps = Caps::default();
        for fix in fixtures::corpus() {
            let node = kr_decompose(&fix.sg, caps).unwrap();
            let report = verify_tree(&node);
            assert!(report.all_ok(), "{}: {report}", fix.name);
            if fix.sg.is_aperiodic() {
                assert!(
                    node.group_leaves().is_empty(),
                    "{} is aperiodic but has group leaves",
                    fix.name
                );
            }
        }
    }

    #[test]
    fn kr_decompose_full_transformation_monoid_on_three_points() {
        let gen = crate::closure::transformation_closure(
            &[vec![1, 2, 0], vec![1, 0, 2], vec![0, 0, 2]],
            100,
        )
        .unwrap();
        assert_eq!(gen.sg.size(), 27);
        let node = kr_decompose(&gen.sg, Caps::default()).unwrap();
        let mut sizes: Vec<usize> = node.group_leaves().iter().map(|g| g.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 2, 2, 3]);
        let report = verify_tree(&node);
        assert!(report.all_ok(), "{report}");
    }

    #[test]
    fn corrupted_witness_is_flagged() {
        let mut node = kr_decompose(&fixtures::lz2(), Caps::default()).unwrap();
        node.witness.map[0] = (node.witness.map[0] + 1) % 2;
        let report = verify_tree(&node);
        assert!(!report.all_ok());
        let msg = report.entries[0].status.clone().unwrap_err();
        assert!(msg.contains("NotHom") || msg.contains("NotSurjective"), "{msg}");
    }

    #[test]
    fn non_simple_leaf_is_flagged() {
        let z4 = fixtures::z4();
        let fake = DecompNode::leaf(z4, NodeKind::LeafSimpleGroup);
        let report = verify_tree(&fake);
        assert!(!report.all_ok());
        assert!(report.entries[0].status.clone().unwrap_err().contains("not simple"));
    }

    #[test]
    fn certificate_format_is_stable() {
        let node = kr_decompose(&fixtures::c21(), Caps::default()).unwrap();
        let a = format_tree(&node);
        let b = format_tree(&kr_decompose(&fixtures::c21(), Caps::default()).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with("(wreath"));
        assert!(a.contains("leaf-sl"));
    }

    #[test]
    fn cross_check_cyclic_witness_with_bounded_search() {
        // The constructive counter witness agrees with a blind bounded
        // search at tiny sizes.
        let c21 = fixtures::c21();
        let node = kr_decompose(&c21, Caps::default()).unwrap();
        let found =
            crate::hom::search_division(&c21, &node.construction, &[0], 10_000).unwrap();
        assert!(crate::hom::is_division_witness(&c21, &node.construction, &found));
    }
}
