//! Recursive construction of an aperiodic witness for a subset-valued
//! homomorphism `phi: A+ -> 2^S \ {0}`: a homomorphism `psi: A+ -> T` with
//! `T` aperiodic, a depth counter bounded by `k(phi)`, and the preimage
//! union map `P(t)` landing in the saturation of `im(phi)`. Applied to the
//! singleton images of a generating set, this certifies the pointlike
//! family computed by the fixpoint.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::bitset::Bitset;
use crate::closure::{close, close_set, Generated};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::hom::FreeHom;
use crate::merge::{merge_system, MergeInput, MergeSystem};
use crate::psat::{
    format_subset, henckell_pointlikes, omega_star, saturate, subgroup_union_check,
    subset_product, Saturation,
};
use crate::semigroup::Semigroup;
use crate::words::words_up_to;
use crate::Caps;

/// A homomorphism from a free semigroup into the nonempty subsets of `S`.
#[derive(Clone, Debug)]
pub struct PhiHom {
    pub host: Semigroup,
    pub letter_names: Vec<String>,
    pub images: Vec<Bitset>,
}

impl PhiHom {
    pub fn new(host: Semigroup, letter_names: Vec<String>, images: Vec<Bitset>) -> Result<PhiHom> {
        if images.is_empty() {
            return Err(Error::Precondition("phi: empty alphabet".into()));
        }
        if letter_names.len() != images.len() {
            return Err(Error::Precondition("phi: one name per letter".into()));
        }
        for img in &images {
            if img.len() != host.size() {
                return Err(Error::HostMismatch { expected: host.size(), got: img.len() });
            }
            if img.is_empty() {
                return Err(Error::Precondition("phi: letter image must be nonempty".into()));
            }
        }
        Ok(PhiHom { host, letter_names, images })
    }

    /// Singleton images of a generating set of `s`, one letter per generator.
    pub fn from_generators(s: &Semigroup, generators: &[usize]) -> Result<PhiHom> {
        let images = generators
            .iter()
            .map(|&g| Bitset::singleton(s.size(), g))
            .collect();
        let names = generators.iter().map(|&g| s.label(g)).collect();
        PhiHom::new(s.clone(), names, images)
    }

    pub fn alphabet_len(&self) -> usize {
        self.images.len()
    }

    /// The distinct letter images, in first-occurrence order.
    pub fn distinct_images(&self) -> Vec<Bitset> {
        let mut out: Vec<Bitset> = Vec::new();
        for img in &self.images {
            if !out.contains(img) {
                out.push(img.clone());
            }
        }
        out
    }

    /// `U_phi = im(phi)`: the closure of the letter images under subset
    /// product, as an abstract semigroup over concrete subsets.
    pub fn u_phi(&self, caps: Caps) -> Result<Generated<Bitset>> {
        let host = &self.host;
        close(
            &self.images,
            |x, y| subset_product(host, x, y).expect("same host"),
            caps.closure,
        )
    }

    /// `S_phi`: the union of all members of `U_phi`.
    pub fn s_phi(&self, caps: Caps) -> Result<Bitset> {
        let u = self.u_phi(caps)?;
        let mut out = Bitset::empty(self.host.size());
        for m in &u.elements {
            out.union_with(m);
        }
        Ok(out)
    }

    pub fn eval(&self, word: &[usize]) -> Result<Bitset> {
        let (&first, rest) = word
            .split_first()
            .ok_or_else(|| Error::Precondition("phi applied to the empty word".into()))?;
        let mut acc = self.images[first].clone();
        for &a in rest {
            acc = subset_product(&self.host, &acc, &self.images[a])?;
        }
        Ok(acc)
    }

    fn opposite(&self) -> PhiHom {
        PhiHom {
            host: self.host.opposite(),
            letter_names: self.letter_names.clone(),
            images: self.images.clone(),
        }
    }
}

/// `k(phi) = (|phi(A)| - 1) 2^binom(|S_phi|, 2) + 2^|S_phi| - 1`, exactly.
pub fn k_formula(image_count: usize, s_phi_size: usize) -> Result<u128> {
    let c = s_phi_size * s_phi_size.saturating_sub(1) / 2;
    if c >= 120 || s_phi_size >= 120 {
        return Err(Error::Resource { what: "k-bound exponent", cap: 120 });
    }
    let term1 = (image_count as u128 - 1)
        .checked_mul(1u128 << c)
        .ok_or(Error::Resource { what: "k-bound arithmetic", cap: 128 })?;
    let term2 = (1u128 << s_phi_size) - 1;
    term1.checked_add(term2).ok_or(Error::Resource { what: "k-bound arithmetic", cap: 128 })
}

pub fn k_bound(phi: &PhiHom, caps: Caps) -> Result<u128> {
    k_formula(phi.distinct_images().len(), phi.s_phi(caps)?.count())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitSide {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseTag {
    /// Every letter image acts fully on both sides of `S_phi`.
    Case1,
    /// A single distinct letter image.
    Case2,
    /// Some letter image acts properly; the least such letter, preferring
    /// the left condition across all letters.
    Case3 { a0: usize, side: SplitSide },
}

pub fn case_split(phi: &PhiHom, caps: Caps) -> Result<CaseTag> {
    let s_phi = phi.s_phi(caps)?;
    let host = &phi.host;
    let left_full = |img: &Bitset| {
        subset_product(host, img, &s_phi).map(|p| p == s_phi)
    };
    let right_full = |img: &Bitset| {
        subset_product(host, &s_phi, img).map(|p| p == s_phi)
    };
    let mut all_full = true;
    for img in &phi.images {
        if !(left_full(img)? && right_full(img)?) {
            all_full = false;
            break;
        }
    }
    if all_full {
        return Ok(CaseTag::Case1);
    }
    if phi.distinct_images().len() == 1 {
        return Ok(CaseTag::Case2);
    }
    for (a, img) in phi.images.iter().enumerate() {
        if !left_full(img)? {
            return Ok(CaseTag::Case3 { a0: a, side: SplitSide::Left });
        }
    }
    for (a, img) in phi.images.iter().enumerate() {
        if !right_full(img)? {
            return Ok(CaseTag::Case3 { a0: a, side: SplitSide::Right });
        }
    }
    Err(Error::Internal("case_split: no case applies".into()))
}

/// `P(t) = union of phi(w) over psi(w) = t`, computed as the closure of the
/// pairs `(psi(a), phi(a))` under componentwise product (exact, since the
/// pair map is a homomorphism into `T x 2^S`). Only the pair set is
/// enumerated, never a table.
pub fn preimage_union_map(
    t: &Semigroup,
    psi_gen_map: &[u32],
    phi: &PhiHom,
    caps: Caps,
) -> Result<Vec<Bitset>> {
    if psi_gen_map.len() != phi.alphabet_len() {
        return Err(Error::Precondition("preimage_union_map: alphabet mismatch".into()));
    }
    let seeds: Vec<(usize, Bitset)> = psi_gen_map
        .iter()
        .zip(&phi.images)
        .map(|(&g, img)| (g as usize, img.clone()))
        .collect();
    let host = &phi.host;
    let pairs = close_set(
        &seeds,
        |(t1, x), (t2, y)| (t.mul(*t1, *t2), subset_product(host, x, y).expect("same host")),
        caps.closure,
    )?;
    let mut out = vec![Bitset::empty(host.size()); t.size()];
    for (ti, x) in &pairs.elements {
        out[*ti].union_with(x);
    }
    Ok(out)
}

/// Recursion trace: one node per constructed witness.
#[derive(Clone, Debug)]
pub struct WitnessTrace {
    pub case: CaseKind,
    pub s_phi_size: usize,
    pub image_count: usize,
    pub k: u128,
    pub depth: u64,
}

#[derive(Clone, Debug)]
pub enum CaseKind {
    /// Case 1: trivial witness; records the host and the local subgroup of
    /// `U_phi` (as subset families) whose union covers `S_phi`.
    Trivial { host: Semigroup, local_group: Vec<Bitset> },
    /// Case 2: the aperiodic cyclic counter of index `m`.
    CyclicCounter { m: usize },
    /// Case 3: split at `a0` and merge the recursive witnesses.
    Split {
        a0: usize,
        side: SplitSide,
        k_phi0: u128,
        k_children: (u128, u128),
        bound_ok: bool,
        children: Vec<WitnessTrace>,
    },
    /// Right-sided split handled on the opposite semigroup.
    Dual { inner: Box<WitnessTrace> },
}

impl WitnessTrace {
    /// All Case-3 nodes (including inside duals), for bound auditing.
    pub fn split_nodes(&self) -> Vec<&WitnessTrace> {
        let mut out = Vec::new();
        self.collect_splits(&mut out);
        out
    }

    fn collect_splits<'a>(&'a self, out: &mut Vec<&'a WitnessTrace>) {
        match &self.case {
            CaseKind::Split { children, .. } => {
                out.push(self);
                for c in children {
                    c.collect_splits(out);
                }
            }
            CaseKind::Dual { inner } => inner.collect_splits(out),
            _ => {}
        }
    }

    /// Local subgroups recorded at Case-1 nodes, with their hosts.
    pub fn local_groups(&self) -> Vec<(&Semigroup, &Vec<Bitset>)> {
        let mut out = Vec::new();
        self.collect_groups(&mut out);
        out
    }

    fn collect_groups<'a>(&'a self, out: &mut Vec<(&'a Semigroup, &'a Vec<Bitset>)>) {
        match &self.case {
            CaseKind::Trivial { host, local_group } => out.push((host, local_group)),
            CaseKind::Split { children, .. } => {
                for c in children {
                    c.collect_groups(out);
                }
            }
            CaseKind::Dual { inner } => inner.collect_groups(out),
            _ => {}
        }
    }
}

/// The constructed witness: an aperiodic `T`, the surjective `psi`, a depth
/// counter `<= k(phi)`, and the preimage union map with saturation
/// membership verified.
#[derive(Clone, Debug)]
pub struct WitnessResult {
    pub t: Semigroup,
    pub psi: FreeHom,
    pub depth: u64,
    pub p_map: Vec<Bitset>,
    pub trace: WitnessTrace,
}

pub fn construct_witness(phi: &PhiHom, caps: Caps) -> Result<WitnessResult> {
    construct(phi, caps, caps.depth, None, false)
}

fn construct(
    phi: &PhiHom,
    caps: Caps,
    depth_left: usize,
    bound: Option<(usize, usize)>,
    dual_hop: bool,
) -> Result<WitnessResult> {
    if depth_left == 0 {
        return Err(Error::Resource { what: "witness recursion depth", cap: caps.depth });
    }
    let u = phi.u_phi(caps)?;
    let mut s_phi = Bitset::empty(phi.host.size());
    for m in &u.elements {
        s_phi.union_with(m);
    }
    let image_count = phi.distinct_images().len();
    let measure = (s_phi.count(), image_count);
    if let Some(b) = bound {
        let ok = measure < b || (dual_hop && measure == b);
        if !ok {
            return Err(Error::Internal(format!(
                "witness recursion measure did not decrease: {measure:?} vs {b:?}"
            )));
        }
    }
    let k = k_formula(image_count, measure.0)?;

    let result = match case_split(phi, caps)? {
        CaseTag::Case1 => case1(phi, &u, &s_phi, k, measure, caps)?,
        CaseTag::Case2 => case2(phi, &u, k, measure)?,
        CaseTag::Case3 { a0, side: SplitSide::Left } => {
            case3_left(phi, a0, k, measure, caps, depth_left)?
        }
        CaseTag::Case3 { a0: _, side: SplitSide::Right } => {
            let dual_phi = phi.opposite();
            let inner = construct(&dual_phi, caps, depth_left - 1, Some(measure), true)?;
            WitnessResult {
                t: inner.t.opposite(),
                psi: FreeHom::new(
                    phi.letter_names.clone(),
                    inner.t.opposite(),
                    inner.psi.gen_map.clone(),
                )?,
                depth: inner.depth,
                p_map: inner.p_map.clone(),
                trace: WitnessTrace {
                    case: CaseKind::Dual { inner: Box::new(inner.trace) },
                    s_phi_size: measure.0,
                    image_count,
                    k,
                    depth: inner.depth,
                },
            }
        }
    };
    verify_invariants(&result, phi, k, caps)?;
    Ok(result)
}

fn case1(
    phi: &PhiHom,
    u: &Generated<Bitset>,
    s_phi: &Bitset,
    k: u128,
    measure: (usize, usize),
    caps: Caps,
) -> Result<WitnessResult> {
    // e: the least idempotent in the minimal ideal of U_phi; the local
    // group G = e U e has union S_phi.
    let ideal = u.sg.minimal_ideal();
    let e = ideal
        .iter()
        .find(|&i| u.sg.is_idempotent(i))
        .ok_or_else(|| Error::Internal("minimal ideal without idempotent".into()))?;
    let (_, g_elems) = u.sg.local_group(e)?;
    let members: Vec<Bitset> = g_elems.iter().map(|&i| u.elements[i].clone()).collect();
    let mut union = Bitset::empty(phi.host.size());
    for m in &members {
        union.union_with(m);
    }
    if union != *s_phi {
        return Err(Error::Internal(
            "case 1: union of the local group misses S_phi".into(),
        ));
    }
    let report = subgroup_union_check(&phi.host, &members, caps)?;
    if !report.ok() {
        return Err(Error::Internal("case 1: subgroup union derivation failed".into()));
    }
    let t = fixtures::trivial();
    let psi = FreeHom::new(
        phi.letter_names.clone(),
        t.clone(),
        vec![0; phi.alphabet_len()],
    )?;
    Ok(WitnessResult {
        t,
        psi,
        depth: 1,
        p_map: vec![s_phi.clone()],
        trace: WitnessTrace {
            case: CaseKind::Trivial { host: phi.host.clone(), local_group: members },
            s_phi_size: measure.0,
            image_count: measure.1,
            k,
            depth: 1,
        },
    })
}

fn case2(
    phi: &PhiHom,
    u: &Generated<Bitset>,
    k: u128,
    measure: (usize, usize),
) -> Result<WitnessResult> {
    let x = phi.images[0].clone();
    // Least m with X^m idempotent.
    let mut m = 1usize;
    let mut power = x.clone();
    loop {
        if subset_product(&phi.host, &power, &power)? == power {
            break;
        }
        power = subset_product(&phi.host, &power, &x)?;
        m += 1;
        if m > u.elements.len() {
            return Err(Error::Internal(
                "case 2: no idempotent power within |U_phi|".into(),
            ));
        }
    }
    let t = fixtures::cyclic(m, 1);
    let psi = FreeHom::new(
        phi.letter_names.clone(),
        t.clone(),
        vec![0; phi.alphabet_len()],
    )?;
    // P(x^i) = X^i for i < m; P(x^m) = X^(w+*).
    let mut p_map = Vec::with_capacity(m);
    let mut xi = x.clone();
    for _ in 1..m {
        p_map.push(xi.clone());
        xi = subset_product(&phi.host, &xi, &x)?;
    }
    p_map.push(omega_star(&phi.host, &x)?);
    Ok(WitnessResult {
        t,
        psi,
        depth: m as u64,
        p_map,
        trace: WitnessTrace {
            case: CaseKind::CyclicCounter { m },
            s_phi_size: measure.0,
            image_count: measure.1,
            k,
            depth: m as u64,
        },
    })
}

/// The two bound checks at a split: `k(phi0) <= 2^binom(m,2) - 1` with
/// `m = |S_phi|`, and `k(phi0) + max(k(phi1), k(phi2)) + 1 <= k(phi)`.
pub fn bound_check_phi0(phi: &PhiHom, a0: usize, phi0: &PhiHom, caps: Caps) -> Result<bool> {
    let m = phi.s_phi(caps)?.count();
    let k = k_bound(phi, caps)?;
    let k0 = k_bound(phi0, caps)?;
    let c = m * m.saturating_sub(1) / 2;
    if c >= 120 {
        return Err(Error::Resource { what: "k-bound exponent", cap: 120 });
    }
    let first = k0 < (1u128 << c);
    let (phi1, phi2) = split_phi(phi, a0)?;
    let k1 = k_bound(&phi1, caps)?;
    let k2 = k_bound(&phi2, caps)?;
    let second = k0
        .checked_add(k1.max(k2))
        .and_then(|v| v.checked_add(1))
        .map(|v| v <= k)
        .unwrap_or(false);
    Ok(first && second)
}

/// Restrictions of `phi` to `A1 = {a : phi(a) = phi(a0)}` and its complement.
fn split_phi(phi: &PhiHom, a0: usize) -> Result<(PhiHom, PhiHom)> {
    let img0 = &phi.images[a0];
    let (mut l1, mut i1, mut l2, mut i2) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (a, img) in phi.images.iter().enumerate() {
        if img == img0 {
            l1.push(phi.letter_names[a].clone());
            i1.push(img.clone());
        } else {
            l2.push(phi.letter_names[a].clone());
            i2.push(img.clone());
        }
    }
    Ok((
        PhiHom::new(phi.host.clone(), l1, i1)?,
        PhiHom::new(phi.host.clone(), l2, i2)?,
    ))
}

fn case3_left(
    phi: &PhiHom,
    a0: usize,
    k: u128,
    measure: (usize, usize),
    caps: Caps,
    depth_left: usize,
) -> Result<WitnessResult> {
    let host = &phi.host;
    let (phi1, phi2) = split_phi(phi, a0)?;
    let w1 = construct(&phi1, caps, depth_left - 1, Some(measure), false)?;
    let w2 = construct(&phi2, caps, depth_left - 1, Some(measure), false)?;
    let (t1, t2) = (&w1.t, &w2.t);

    // phi0 on the pair alphabet T1 x T2: phi0(t1, t2) = P1(t1) P2(t2),
    // which equals the union of phi over psi1^-1 t1 . psi2^-1 t2 since
    // multiplication distributes over union.
    let mut pair_names = Vec::with_capacity(t1.size() * t2.size());
    let mut pair_images = Vec::with_capacity(t1.size() * t2.size());
    for x in 0..t1.size() {
        for y in 0..t2.size() {
            pair_names.push(format!("({x},{y})"));
            pair_images.push(subset_product(host, &w1.p_map[x], &w2.p_map[y])?);
        }
    }
    let phi0 = PhiHom::new(host.clone(), pair_names, pair_images)?;

    // Measure bookkeeping: S_phi0 sits inside phi(a0) S_phi.
    let s_phi = phi.s_phi(caps)?;
    let bound_region = subset_product(host, &phi.images[a0], &s_phi)?;
    let s_phi0 = phi0.s_phi(caps)?;
    if !s_phi0.is_subset_of(&bound_region) || s_phi0.count() >= measure.0 {
        return Err(Error::Internal("case 3: S_phi0 did not shrink into a0 S_phi".into()));
    }

    let w0 = construct(&phi0, caps, depth_left - 1, Some(measure), false)?;
    let bound_ok = bound_check_phi0(phi, a0, &phi0, caps)?;

    // Assemble the merge over the reordered alphabet (A1 letters, then A2);
    // split_phi keeps letter order, so the part gen-maps line up directly.
    let mut a1_letters = Vec::new();
    let mut a2_letters = Vec::new();
    for (a, img) in phi.images.iter().enumerate() {
        if img == &phi.images[a0] {
            a1_letters.push(a);
        } else {
            a2_letters.push(a);
        }
    }
    let psi1: Vec<u32> = w1.psi.gen_map.clone();
    let psi2: Vec<u32> = w2.psi.gen_map.clone();
    let chi: Vec<u32> = w0.psi.gen_map.clone();
    let letter_names: Vec<String> = a1_letters
        .iter()
        .chain(&a2_letters)
        .map(|&a| phi.letter_names[a].clone())
        .collect();
    let input = MergeInput::new(
        t1.clone(),
        t2.clone(),
        w0.t.clone(),
        psi1,
        psi2,
        chi,
        letter_names,
    )?;
    let sys = merge_system(input)?;
    let merge_order: Vec<usize> = a1_letters.iter().chain(&a2_letters).copied().collect();
    let merge_images: Vec<Bitset> =
        merge_order.iter().map(|&a| phi.images[a].clone()).collect();
    let (t, class_of_gen) = reduce_merge(&sys, &merge_images, host, caps)?;

    // psi over the original letter order.
    let mut gen_map = vec![0u32; phi.alphabet_len()];
    for (pos, &a) in merge_order.iter().enumerate() {
        gen_map[a] = class_of_gen[pos] as u32;
    }
    let psi = FreeHom::new(phi.letter_names.clone(), t.clone(), gen_map)?;
    let p_map = preimage_union_map(&t, &psi.gen_map, phi, caps)?;
    let depth = w0.depth + w1.depth.max(w2.depth) + 1;
    let trace = WitnessTrace {
        case: CaseKind::Split {
            a0,
            side: SplitSide::Left,
            k_phi0: w0.trace.k,
            k_children: (w1.trace.k, w2.trace.k),
            bound_ok,
            children: vec![w1.trace, w2.trace, w0.trace],
        },
        s_phi_size: measure.0,
        image_count: measure.1,
        k,
        depth,
    };
    Ok(WitnessResult { t, psi, depth, p_map, trace })
}

/// Closes the merge letter images without a table and quotients the
/// generated semigroup by the coarsest congruence refining equality of the
/// preimage union map: classes start at equal `P` and split under generator
/// translations until stable. Quotients preserve aperiodicity and the depth
/// bookkeeping, `P` is constant on classes, and the caller re-verifies every
/// witness invariant on the result. Returns the quotient and the class of
/// each letter image (letters in merge order).
fn reduce_merge(
    sys: &MergeSystem,
    letter_images: &[Bitset],
    host: &Semigroup,
    caps: Caps,
) -> Result<(Semigroup, Vec<usize>)> {
    let raw = close_set(&sys.gen_images, |x, y| sys.mul(x, y), caps.closure)?;
    let n = raw.elements.len();
    let gens = &raw.gen_indices;
    let letters = sys.gen_images.len();

    // P per raw element, via the pair set.
    let mut p: Vec<Bitset> = vec![Bitset::empty(host.size()); n];
    let mut seen: HashSet<(usize, Bitset)> = HashSet::new();
    let mut queue: VecDeque<(usize, Bitset)> = VecDeque::new();
    for a in 0..letters {
        let pair = (gens[a], letter_images[a].clone());
        if seen.insert(pair.clone()) {
            queue.push_back(pair);
        }
    }
    while let Some((i, x)) = queue.pop_front() {
        p[i].union_with(&x);
        for a in 0..letters {
            let pair = (raw.right_by_gen[a][i], subset_product(host, &x, &letter_images[a])?);
            if seen.insert(pair.clone()) {
                if seen.len() > caps.family {
                    return Err(Error::Resource { what: "preimage pair set", cap: caps.family });
                }
                queue.push_back(pair);
            }
        }
    }

    let mut left_by_gen: Vec<Vec<usize>> = vec![vec![0; n]; letters];
    for a in 0..letters {
        for (i, elem) in raw.elements.iter().enumerate() {
            let prod = sys.mul(&sys.gen_images[a], elem);
            left_by_gen[a][i] = *raw
                .index
                .get(&prod)
                .ok_or_else(|| Error::Internal("left product escaped the closure".into()))?;
        }
    }

    let mut class_of = assign_classes(n, |i| p[i].indices());
    loop {
        let next = assign_classes(n, |i| {
            let mut sig = Vec::with_capacity(1 + 2 * letters);
            sig.push(class_of[i]);
            for a in 0..letters {
                sig.push(class_of[raw.right_by_gen[a][i]]);
                sig.push(class_of[left_by_gen[a][i]]);
            }
            sig
        });
        if next == class_of {
            break;
        }
        class_of = next;
    }

    let n_c = class_of.iter().max().copied().unwrap_or(0) + 1;
    let mut reps = vec![usize::MAX; n_c];
    for (i, &c) in class_of.iter().enumerate() {
        if reps[c] == usize::MAX {
            reps[c] = i;
        }
    }
    let mut table = vec![0u32; n_c * n_c];
    for c1 in 0..n_c {
        for c2 in 0..n_c {
            let prod = sys.mul(&raw.elements[reps[c1]], &raw.elements[reps[c2]]);
            let k = *raw
                .index
                .get(&prod)
                .ok_or_else(|| Error::Internal("representative product escaped".into()))?;
            table[c1 * n_c + c2] = class_of[k] as u32;
        }
    }
    let sg = Semigroup::new(n_c, table, None)?;
    // Congruence audit: the class map is a homomorphism against every
    // generator, on both sides.
    for a in 0..letters {
        for i in 0..n {
            if class_of[raw.right_by_gen[a][i]] != sg.mul(class_of[i], class_of[gens[a]])
                || class_of[left_by_gen[a][i]] != sg.mul(class_of[gens[a]], class_of[i])
            {
                return Err(Error::Internal("merge reduction is not a congruence".into()));
            }
        }
    }
    let class_of_gen = (0..letters).map(|a| class_of[gens[a]]).collect();
    Ok((sg, class_of_gen))
}

/// Class ids by first occurrence of the key, scanning in element order.
fn assign_classes<K: Eq + std::hash::Hash>(n: usize, key: impl Fn(usize) -> K) -> Vec<usize> {
    let mut ids: HashMap<K, usize> = HashMap::new();
    (0..n)
        .map(|i| {
            let next = ids.len();
            *ids.entry(key(i)).or_insert(next)
        })
        .collect()
}

fn verify_invariants(w: &WitnessResult, phi: &PhiHom, k: u128, caps: Caps) -> Result<()> {
    if !w.t.is_aperiodic() {
        return Err(Error::Verification("witness semigroup is not aperiodic".into()));
    }
    if u128::from(w.depth) > k {
        return Err(Error::Verification(format!(
            "witness depth {} exceeds k(phi) = {k}",
            w.depth
        )));
    }
    if !w.psi.is_surjective() {
        return Err(Error::Verification("psi is not surjective onto T".into()));
    }
    if w.p_map.len() != w.t.size() {
        return Err(Error::Verification("P map does not cover T".into()));
    }
    // Every P(t) has a derivation inside Sat(U_phi).
    let sat = saturate(&phi.host, &phi.images, caps)?;
    for (t, p) in w.p_map.iter().enumerate() {
        if !sat.contains(p) {
            return Err(Error::Verification(format!(
                "P({t}) = {} is outside Sat(U_phi)",
                format_subset(&phi.host, p)
            )));
        }
    }
    // Exact consistency on sampled words: phi(w) within P(psi(w)).
    let a = phi.alphabet_len();
    let mut max_len = 2usize;
    while max_len < 6 && a.pow(max_len as u32 + 1) <= 4096 {
        max_len += 1;
    }
    for word in words_up_to(a, max_len) {
        let img = phi.eval(&word)?;
        let t = w.psi.eval(&word)?;
        if !img.is_subset_of(&w.p_map[t]) {
            return Err(Error::Verification(format!(
                "phi(w) escapes P(psi(w)) for a word of length {}",
                word.len()
            )));
        }
    }
    Ok(())
}

/// A fully defined multiplicative relation `S -> T` given by its fibers.
#[derive(Clone, Debug)]
pub struct RelMorphism {
    pub s: Semigroup,
    pub t: Semigroup,
    pub fibers: Vec<Bitset>,
}

impl RelMorphism {
    /// Fullness (`every s lies in some fiber`) and multiplicativity
    /// (`fibers(t) fibers(t') <= fibers(t t')`).
    pub fn validate(&self) -> Result<()> {
        let mut covered = Bitset::empty(self.s.size());
        for f in &self.fibers {
            covered.union_with(f);
        }
        if covered.count() != self.s.size() {
            return Err(Error::Verification("relational morphism is not full".into()));
        }
        for t1 in 0..self.t.size() {
            for t2 in 0..self.t.size() {
                let prod = subset_product(&self.s, &self.fibers[t1], &self.fibers[t2])?;
                if !prod.is_subset_of(&self.fibers[self.t.mul(t1, t2)]) {
                    return Err(Error::Verification(format!(
                        "relational morphism is not multiplicative at ({t1},{t2})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The doubly certified pointlike family: the fixpoint family, the
/// relational morphism built from the witness, and the audit flags.
pub struct PointlikeCertificate {
    pub family: Saturation,
    pub rel: RelMorphism,
    pub witness: WitnessResult,
    /// `k` by the proof formula (the `2^|S|` term).
    pub k_proof: u128,
    /// `k` by the theorem-statement formula (the `2^|A|` term).
    pub k_statement: u128,
    pub generators: Vec<usize>,
}

/// Runs the witness construction on the singleton images of the canonical
/// generators, certifies the relational morphism, and cross-validates the
/// family against the fixpoint: the downward closure of the fibers must be
/// exactly the saturation of the singletons.
pub fn pointlikes_with_certificate(s: &Semigroup, caps: Caps) -> Result<PointlikeCertificate> {
    let generators = crate::krd::minimal_generating_set(s);
    let phi = PhiHom::from_generators(s, &generators)?;
    let witness = construct_witness(&phi, caps)?;
    let rel = RelMorphism { s: s.clone(), t: witness.t.clone(), fibers: witness.p_map.clone() };
    rel.validate()?;

    let family = henckell_pointlikes(s, caps)?;
    // (ii) every fiber is pointlike.
    for f in &rel.fibers {
        if !family.contains(f) {
            return Err(Error::Verification(
                "a fiber of the relational morphism is not pointlike".into(),
            ));
        }
    }
    // (iii) every member of the family is captured by some fiber.
    for m in family.members() {
        if !rel.fibers.iter().any(|f| m.is_subset_of(f)) {
            return Err(Error::Verification(format!(
                "pointlike set {} is not contained in any fiber",
                format_subset(s, m)
            )));
        }
    }
    // Cross-validation: the witness-side family (downward closure of the
    // fibers) equals the fixpoint family exactly.
    let witness_family = crate::psat::downward_closure(s, &rel.fibers)?;
    if witness_family != family.canonical_members() {
        return Err(Error::Verification(
            "witness-side family differs from the fixpoint family".into(),
        ));
    }
    let k_proof = witness.trace.k;
    let k_statement = {
        let c = s.size() * (s.size() - 1) / 2;
        if c >= 120 {
            return Err(Error::Resource { what: "k-bound exponent", cap: 120 });
        }
        (generators.len() as u128 - 1) * (1u128 << c) + (1u128 << generators.len()) - 1
    };
    if u128::from(witness.depth) > k_proof {
        return Err(Error::Verification("depth exceeds the proof bound".into()));
    }
    Ok(PointlikeCertificate { family, rel, witness, k_proof, k_statement, generators })
}
