//! The merge decomposition: combining homomorphisms on two disjoint
//! subalphabets through a triple product of augmented semigroups.
//!
//! Given `psi1: A1+ -> T1`, `psi2: A2+ -> T2` and `chi: (T1 x T2)+ -> T0`,
//! the merge semigroup lives on triples (element of `T2^b`, function
//! `T1^I x T2^I -> T0^I`, element of `T1^#`); only the part generated by the
//! letter images is ever materialized.

use crate::augment::{augment, Augmented, Side};
use crate::closure::{close, Generated};
use crate::error::{Error, Result};
use crate::hom::{is_division_witness, DivisionWitness};
use crate::semigroup::Semigroup;
use crate::words::words_up_to;
use crate::Caps;

/// Alphabets, component semigroups and generator maps for a merge.
/// Letters `0..a1` form `A1`, letters `a1..a1+a2` form `A2`.
#[derive(Clone, Debug)]
pub struct MergeInput {
    pub t1: Semigroup,
    pub t2: Semigroup,
    pub t0: Semigroup,
    pub a1: usize,
    pub a2: usize,
    /// `A1`-letter to `T1` element.
    pub psi1: Vec<u32>,
    /// `A2`-letter to `T2` element.
    pub psi2: Vec<u32>,
    /// Pair `(x, y)` to `T0` element, at `x * |T2| + y`.
    pub chi: Vec<u32>,
    pub letter_names: Vec<String>,
}

impl MergeInput {
    pub fn new(
        t1: Semigroup,
        t2: Semigroup,
        t0: Semigroup,
        psi1: Vec<u32>,
        psi2: Vec<u32>,
        chi: Vec<u32>,
        letter_names: Vec<String>,
    ) -> Result<MergeInput> {
        let (a1, a2) = (psi1.len(), psi2.len());
        if a1 == 0 || a2 == 0 {
            return Err(Error::Precondition("merge: both subalphabets must be nonempty".into()));
        }
        if chi.len() != t1.size() * t2.size() {
            return Err(Error::Precondition(format!(
                "merge: chi has {} entries, expected {}",
                chi.len(),
                t1.size() * t2.size()
            )));
        }
        if letter_names.len() != a1 + a2 {
            return Err(Error::Precondition("merge: one name per letter".into()));
        }
        if psi1.iter().any(|&v| v as usize >= t1.size())
            || psi2.iter().any(|&v| v as usize >= t2.size())
            || chi.iter().any(|&v| v as usize >= t0.size())
        {
            return Err(Error::Precondition("merge: generator image out of range".into()));
        }
        Ok(MergeInput { t1, t2, t0, a1, a2, psi1, psi2, chi, letter_names })
    }

    pub fn alphabet_len(&self) -> usize {
        self.a1 + self.a2
    }

    pub fn is_a1(&self, letter: usize) -> bool {
        letter < self.a1
    }

    fn chi_at(&self, x: usize, y: usize) -> usize {
        self.chi[x * self.t2.size() + y] as usize
    }

    /// `psi1` on a nonempty `A1`-word given by global letter indices.
    fn eval1(&self, word: &[usize]) -> usize {
        let mut acc = self.psi1[word[0]] as usize;
        for &a in &word[1..] {
            acc = self.t1.mul(acc, self.psi1[a] as usize);
        }
        acc
    }

    fn eval2(&self, word: &[usize]) -> usize {
        let mut acc = self.psi2[word[0] - self.a1] as usize;
        for &a in &word[1..] {
            acc = self.t2.mul(acc, self.psi2[a - self.a1] as usize);
        }
        acc
    }
}

/// One element of the merge semigroup: indexes into `T2^b` and `T1^#` plus
/// the dense middle table over `T0^I` (0 is the adjoined identity of `T0`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MergeElem {
    pub right: u32,
    pub left: u32,
    pub mid: Vec<u32>,
}

/// The built merge: augmented component semigroups, the letter images, and
/// the subsemigroup they generate.
pub struct MergeDecomposition {
    pub input: MergeInput,
    pub sharp1: Augmented,
    pub flat2: Augmented,
    pub gen_images: Vec<MergeElem>,
    pub generated: Generated<MergeElem>,
}

struct MergeCtx<'a> {
    input: &'a MergeInput,
    sharp1: &'a Augmented,
    flat2: &'a Augmented,
}

impl MergeCtx<'_> {
    fn dims(&self) -> (usize, usize) {
        (self.input.t1.size() + 1, self.input.t2.size() + 1)
    }

    /// Product in `T0^I`.
    fn mul0(&self, a: usize, b: usize) -> usize {
        match (a, b) {
            (0, _) => b,
            (_, 0) => a,
            _ => self.input.t0.mul(a - 1, b - 1) + 1,
        }
    }

    fn i0(&self) -> Vec<u32> {
        let (d1, d2) = self.dims();
        vec![0; d1 * d2]
    }

    /// The table `s_(w1)`: value `I0` against `I2`, otherwise
    /// `chi(t1 psi1(w1), t2)`.
    fn s_table(&self, w1: &[usize]) -> Vec<u32> {
        let p = self.input.eval1(w1);
        let (d1, d2) = self.dims();
        let mut mid = vec![0u32; d1 * d2];
        for t1 in 0..d1 {
            let t1p = if t1 == 0 { p } else { self.input.t1.mul(t1 - 1, p) };
            for t2 in 1..d2 {
                mid[t1 * d2 + t2] = (self.input.chi_at(t1p, t2 - 1) + 1) as u32;
            }
        }
        mid
    }

    fn act_left(&self, l: usize, mid: &[u32]) -> Vec<u32> {
        let (d1, d2) = self.dims();
        let mut out = vec![0u32; d1 * d2];
        for t1 in 0..d1 {
            let src = self.sharp1.apply(l, t1);
            for t2 in 0..d2 {
                out[t1 * d2 + t2] = mid[src * d2 + t2];
            }
        }
        out
    }

    fn act_right(&self, mid: &[u32], r: usize) -> Vec<u32> {
        let (d1, d2) = self.dims();
        let mut out = vec![0u32; d1 * d2];
        for t1 in 0..d1 {
            for t2 in 0..d2 {
                out[t1 * d2 + t2] = mid[t1 * d2 + self.flat2.apply(r, t2)];
            }
        }
        out
    }

    /// Triple-product multiplication with the merge actions:
    /// `(r,s,l)(r',s',l') = (r r', s.r' + l.s', l l')`.
    fn mul(&self, x: &MergeElem, y: &MergeElem) -> MergeElem {
        let (d1, d2) = self.dims();
        let mut mid = vec![0u32; d1 * d2];
        for t1 in 0..d1 {
            let lt1 = self.sharp1.apply(x.left as usize, t1);
            for t2 in 0..d2 {
                let rt2 = self.flat2.apply(y.right as usize, t2);
                mid[t1 * d2 + t2] = self.mul0(
                    x.mid[t1 * d2 + rt2] as usize,
                    y.mid[lt1 * d2 + t2] as usize,
                ) as u32;
            }
        }
        MergeElem {
            right: self.flat2.sg.mul(x.right as usize, y.right as usize) as u32,
            left: self.sharp1.sg.mul(x.left as usize, y.left as usize) as u32,
            mid,
        }
    }

    fn letter_image(&self, letter: usize) -> MergeElem {
        if self.input.is_a1(letter) {
            MergeElem {
                right: self.flat2.const_index(0) as u32,
                left: self.sharp1.mult_index(self.input.psi1[letter] as usize) as u32,
                mid: self.s_table(&[letter]),
            }
        } else {
            MergeElem {
                right: self.flat2.mult_index(self.input.psi2[letter - self.input.a1] as usize)
                    as u32,
                left: self.sharp1.const_index(0) as u32,
                mid: self.i0(),
            }
        }
    }

    /// Action laws and commutation, checked over all actor pairs against the
    /// letter-image middle tables. A failure is a bug, not bad input.
    fn check_actions(&self, mids: &[Vec<u32>]) -> Result<()> {
        let nl = self.sharp1.size();
        let nr = self.flat2.size();
        for s in mids {
            for l in 0..nl {
                for l2 in 0..nl {
                    let lhs = self.act_left(self.sharp1.sg.mul(l, l2), s);
                    let rhs = self.act_left(l, &self.act_left(l2, s));
                    if lhs != rhs {
                        return Err(Error::Internal("merge: left action law failed".into()));
                    }
                }
            }
            for r in 0..nr {
                for r2 in 0..nr {
                    let lhs = self.act_right(s, self.flat2.sg.mul(r, r2));
                    let rhs = self.act_right(&self.act_right(s, r), r2);
                    if lhs != rhs {
                        return Err(Error::Internal("merge: right action law failed".into()));
                    }
                }
            }
            for l in 0..nl {
                for r in 0..nr {
                    let lhs = self.act_right(&self.act_left(l, s), r);
                    let rhs = self.act_left(l, &self.act_right(s, r));
                    if lhs != rhs {
                        return Err(Error::Internal("merge: actions do not commute".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The merge machinery without any closure: augmented components, letter
/// images, and the triple-product multiplication. Action laws and their
/// commutation are asserted against the letter-image middle tables.
pub struct MergeSystem {
    pub input: MergeInput,
    pub sharp1: Augmented,
    pub flat2: Augmented,
    pub gen_images: Vec<MergeElem>,
}

pub fn merge_system(input: MergeInput) -> Result<MergeSystem> {
    let sharp1 = augment(&input.t1, Side::Sharp);
    let flat2 = augment(&input.t2, Side::Flat);
    let ctx = MergeCtx { input: &input, sharp1: &sharp1, flat2: &flat2 };

    let gen_images: Vec<MergeElem> =
        (0..input.alphabet_len()).map(|a| ctx.letter_image(a)).collect();
    let mut mids: Vec<Vec<u32>> = vec![ctx.i0()];
    for g in &gen_images {
        if !mids.contains(&g.mid) {
            mids.push(g.mid.clone());
        }
    }
    ctx.check_actions(&mids)?;
    Ok(MergeSystem { input, sharp1, flat2, gen_images })
}

impl MergeSystem {
    pub fn mul(&self, x: &MergeElem, y: &MergeElem) -> MergeElem {
        MergeCtx { input: &self.input, sharp1: &self.sharp1, flat2: &self.flat2 }.mul(x, y)
    }
}

/// Builds the merge decomposition: letter images per the defining formulas
/// and the closure under the triple-product multiplication.
pub fn build_merge(input: MergeInput, caps: Caps) -> Result<MergeDecomposition> {
    let sys = merge_system(input)?;
    let ctx = MergeCtx { input: &sys.input, sharp1: &sys.sharp1, flat2: &sys.flat2 };
    let generated = close(&sys.gen_images, |x, y| ctx.mul(x, y), caps.closure)?;
    Ok(MergeDecomposition {
        input: sys.input,
        sharp1: sys.sharp1,
        flat2: sys.flat2,
        gen_images: sys.gen_images,
        generated,
    })
}

impl MergeDecomposition {
    fn ctx(&self) -> MergeCtx<'_> {
        MergeCtx { input: &self.input, sharp1: &self.sharp1, flat2: &self.flat2 }
    }

    /// Number of elements in the generated part of the merge semigroup.
    pub fn size(&self) -> usize {
        self.generated.sg.size()
    }

    /// `psi_M` on a nonempty word, as a concrete merge element.
    pub fn psi_m(&self, word: &[usize]) -> Result<MergeElem> {
        let ctx = self.ctx();
        let (&first, rest) = word
            .split_first()
            .ok_or_else(|| Error::Precondition("psi_M applied to the empty word".into()))?;
        let mut acc = self.gen_images[first].clone();
        for &a in rest {
            acc = ctx.mul(&acc, &self.gen_images[a]);
        }
        Ok(acc)
    }

    /// `psi_M` as an index into the generated semigroup.
    pub fn psi_m_index(&self, word: &[usize]) -> Result<usize> {
        let (&first, rest) = word
            .split_first()
            .ok_or_else(|| Error::Precondition("psi_M applied to the empty word".into()))?;
        let mut acc = self.generated.gen_indices[first];
        for &a in rest {
            acc = self.generated.sg.mul(acc, self.generated.gen_indices[a]);
        }
        Ok(acc)
    }

    /// `f(t) = (right applied to I2, mid at (I1, I2), left applied to I1)`,
    /// each coordinate in the pointed component (`0` is the identity).
    pub fn f_map(&self, e: &MergeElem) -> (usize, usize, usize) {
        // mid[0] is the cell at (I1, I2).
        (
            self.flat2.apply(e.right as usize, 0),
            e.mid[0] as usize,
            self.sharp1.apply(e.left as usize, 0),
        )
    }
}

/// The middle-coordinate table of an `A1`-word: `I0` against `I2`, else
/// `chi(t1 psi1(w1), t2)`; laid out as a dense `(|T1|+1) x (|T2|+1)` vector
/// over the pointed `T0^I` (0 is the adjoined identity).
pub fn s_table(input: &MergeInput, w1: &[usize]) -> Result<Vec<u32>> {
    if w1.is_empty() || w1.iter().any(|&a| !input.is_a1(a)) {
        return Err(Error::Precondition("s_table: expected a nonempty A1-word".into()));
    }
    let sharp1 = augment(&input.t1, Side::Sharp);
    let flat2 = augment(&input.t2, Side::Flat);
    Ok(MergeCtx { input, sharp1: &sharp1, flat2: &flat2 }.s_table(w1))
}

/// The unique block factorization of a word in `(A1+ A2+)+` as a word over
/// the pair alphabet `T1 x T2`.
pub fn mu(input: &MergeInput, word: &[usize]) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut i = 0;
    let render = |w: &[usize]| {
        w.iter().map(|&a| input.letter_names[a].clone()).collect::<Vec<_>>().join(" ")
    };
    if word.is_empty() {
        return Err(Error::Factorization("empty word".into()));
    }
    while i < word.len() {
        let start1 = i;
        while i < word.len() && input.is_a1(word[i]) {
            i += 1;
        }
        if i == start1 {
            return Err(Error::Factorization(render(word)));
        }
        let start2 = i;
        while i < word.len() && !input.is_a1(word[i]) {
            i += 1;
        }
        if i == start2 {
            return Err(Error::Factorization(render(word)));
        }
        out.push((input.eval1(&word[start1..start2]), input.eval2(&word[start2..i])));
    }
    Ok(out)
}

/// `psi_0 = chi o mu` in the pointed `T0^I`; the empty word maps to 0.
fn psi0_pointed(input: &MergeInput, word: &[usize]) -> Result<usize> {
    if word.is_empty() {
        return Ok(0);
    }
    let pairs = mu(input, word)?;
    let mut acc = input.chi_at(pairs[0].0, pairs[0].1);
    for &(x, y) in &pairs[1..] {
        acc = input.t0.mul(acc, input.chi_at(x, y));
    }
    Ok(acc + 1)
}

/// The factorization `w = v2 u v1` (maximal `A2*` prefix, maximal `A1*`
/// suffix) mapped to `(psi2(v2), psi0(u), psi1(v1))` in the pointed
/// components; empty parts map to the adjoined identities (index 0).
pub fn tau(input: &MergeInput, word: &[usize]) -> Result<(usize, usize, usize)> {
    let mut start = 0;
    while start < word.len() && !input.is_a1(word[start]) {
        start += 1;
    }
    let mut end = word.len();
    while end > start && input.is_a1(word[end - 1]) {
        end -= 1;
    }
    let v2 = &word[..start];
    let u = &word[start..end];
    let v1 = &word[end..];
    let p2 = if v2.is_empty() { 0 } else { input.eval2(v2) + 1 };
    let p1 = if v1.is_empty() { 0 } else { input.eval1(v1) + 1 };
    Ok((p2, psi0_pointed(input, u)?, p1))
}

/// Outcome of checking `f o psi_M = tau` over all words up to a length.
pub struct MergeReport {
    pub fixture: String,
    pub im_size: usize,
    pub words_checked: usize,
    pub counterexamples: Vec<Vec<usize>>,
}

impl MergeReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl std::fmt::Display for MergeReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "fixture={} |im(psi_M)|={} words={} counterexamples={}",
            self.fixture, self.im_size, self.words_checked, self.counterexamples.len()
        )
    }
}

/// Exhaustively checks `f(psi_M(w)) = tau(w)` for all `w` with
/// `|w| <= max_len`.
pub fn verify_merge(input: MergeInput, max_len: usize, caps: Caps) -> Result<MergeReport> {
    if max_len == 0 {
        return Err(Error::Precondition("verify_merge: max_len must be >= 1".into()));
    }
    let merge = build_merge(input, caps)?;
    let fixture = format!(
        "T1={} T2={} T0={}",
        merge.input.t1.id(),
        merge.input.t2.id(),
        merge.input.t0.id()
    );
    let mut words_checked = 0;
    let mut counterexamples = Vec::new();
    for w in words_up_to(merge.input.alphabet_len(), max_len) {
        words_checked += 1;
        let lhs = merge.f_map(&merge.psi_m(&w)?);
        let rhs = tau(&merge.input, &w)?;
        if lhs != rhs && counterexamples.len() < 16 {
            counterexamples.push(w);
        }
    }
    Ok(MergeReport { fixture, im_size: merge.size(), words_checked, counterexamples })
}

/// A verified division of `S` into the generated part of a merge semigroup,
/// built from two subsemigroups whose union generates `S`.
pub struct CoverDivision {
    pub merge: MergeDecomposition,
    /// The ambient (generated) merge semigroup.
    pub construction: Semigroup,
    pub witness: DivisionWitness,
    pub t1_elems: Vec<usize>,
    pub t2_elems: Vec<usize>,
    pub t0_elems: Vec<usize>,
}

/// Realizes the cover construction: alphabets `T_i x {i}`, `chi(x, y) = x y`,
/// `T0 = <T1 T2>`; the division map sends a merge element `t` to the product
/// in `S` of the non-identity coordinates of `f(t)`.
pub fn division_from_cover(
    s: &Semigroup,
    t1_elems: &[usize],
    t2_elems: &[usize],
    caps: Caps,
) -> Result<CoverDivision> {
    if t1_elems.is_empty() || t2_elems.is_empty() {
        return Err(Error::Precondition("division_from_cover: empty subsemigroup".into()));
    }
    let t1 = s.subsemigroup(t1_elems)?;
    let t2 = s.subsemigroup(t2_elems)?;
    let mut union: Vec<usize> = t1_elems.iter().chain(t2_elems).copied().collect();
    union.sort_unstable();
    union.dedup();
    if s.generated_subset(&union).count() != s.size() {
        return Err(Error::Precondition(
            "division_from_cover: T1 and T2 do not generate S".into(),
        ));
    }
    let mut t0_gens: Vec<usize> = Vec::new();
    for &x in t1_elems {
        for &y in t2_elems {
            t0_gens.push(s.mul(x, y));
        }
    }
    let t0_elems = s.generated_subset(&t0_gens).indices();
    let t0 = s.subsemigroup(&t0_elems)?;
    let t0_pos = |x: usize| t0_elems.binary_search(&x).expect("closed");

    let mut chi = vec![0u32; t1_elems.len() * t2_elems.len()];
    for (i, &x) in t1_elems.iter().enumerate() {
        for (j, &y) in t2_elems.iter().enumerate() {
            chi[i * t2_elems.len() + j] = t0_pos(s.mul(x, y)) as u32;
        }
    }
    let letter_names: Vec<String> = t1_elems
        .iter()
        .map(|&x| format!("{}_1", s.label(x)))
        .chain(t2_elems.iter().map(|&y| format!("{}_2", s.label(y))))
        .collect();
    let psi1: Vec<u32> = (0..t1_elems.len() as u32).collect();
    let psi2: Vec<u32> = (0..t2_elems.len() as u32).collect();
    let input = MergeInput::new(t1, t2, t0, psi1, psi2, chi, letter_names)?;
    let merge = build_merge(input, caps)?;

    let mut map = Vec::with_capacity(merge.size());
    for e in &merge.generated.elements {
        let (p2, p0, p1) = merge.f_map(e);
        let mut factors = Vec::new();
        if p2 > 0 {
            factors.push(t2_elems[p2 - 1]);
        }
        if p0 > 0 {
            factors.push(t0_elems[p0 - 1]);
        }
        if p1 > 0 {
            factors.push(t1_elems[p1 - 1]);
        }
        let value = s.product(&factors).ok_or_else(|| {
            Error::Internal("division_from_cover: image of psi_M has no coordinates".into())
        })?;
        map.push(value);
    }
    let witness = DivisionWitness { sub: (0..merge.size()).collect(), map };
    let construction = merge.generated.sg.clone();
    if !is_division_witness(s, &construction, &witness) {
        return Err(Error::Verification(
            "division_from_cover: constructed witness failed the division check".into(),
        ));
    }
    Ok(CoverDivision {
        merge,
        construction,
        witness,
        t1_elems: t1_elems.to_vec(),
        t2_elems: t2_elems.to_vec(),
        t0_elems,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// The lz2 cover fixture: T1 = {a}, T2 = {b}, T0 = {a}, chi(a,b) = a.
    fn lz2_input() -> MergeInput {
        let s = fixtures::lz2();
        let t1 = s.subsemigroup(&[0]).unwrap();
        let t2 = s.subsemigroup(&[1]).unwrap();
        let t0 = s.subsemigroup(&[0]).unwrap();
        MergeInput::new(
            t1,
            t2,
            t0,
            vec![0],
            vec![0],
            vec![0],
            vec!["a".into(), "b".into()],
        )
        .unwrap()
    }

    #[test]
    fn mu_examples() {
        let input = lz2_input();
        // a b: one pair.
        assert_eq!(mu(&input, &[0, 1]).unwrap(), vec![(0, 0)]);
        // a a b a b: two pairs (psi1(aa), psi2(b)), (psi1(a), psi2(b)).
        assert_eq!(mu(&input, &[0, 0, 1, 0, 1]).unwrap(), vec![(0, 0), (0, 0)]);
        // b a: not in (A1+ A2+)+.
        assert!(matches!(mu(&input, &[1, 0]), Err(Error::Factorization(_))));
    }

    #[test]
    fn tau_examples() {
        let input = lz2_input();
        // b a: v2 = b, u empty, v1 = a.
        assert_eq!(tau(&input, &[1, 0]).unwrap(), (1, 0, 1));
        // a b: u = ab, psi0(ab) = chi(a, b) = a.
        assert_eq!(tau(&input, &[0, 1]).unwrap(), (0, 1, 0));
        // a alone.
        assert_eq!(tau(&input, &[0]).unwrap(), (0, 0, 1));
    }

    #[test]
    fn s_table_matches_formula() {
        // Evaluate the defining formula on all 4 cells by hand:
        // s_a = [(I1,I2) -> I0, (a,I2) -> I0, (I1,b) -> a, (a,b) -> a].
        let input = lz2_input();
        assert_eq!(s_table(&input, &[0]).unwrap(), vec![0, 1, 0, 1]);
        // (a a = a in T1, so the tables agree.)
        assert_eq!(s_table(&input, &[0, 0]).unwrap(), s_table(&input, &[0]).unwrap());
        assert!(s_table(&input, &[1]).is_err());

        let merge = build_merge(input, Caps::default()).unwrap();
        let img_a = &merge.gen_images[0];
        assert_eq!(img_a.mid, vec![0, 1, 0, 1]);

        // The t2 = I2 column is identically I0 for any A1-word.
        let ctx_mid = merge.psi_m(&[0, 0]).unwrap().mid;
        let d2 = merge.input.t2.size() + 1;
        for t1 in 0..=merge.input.t1.size() {
            assert_eq!(ctx_mid[t1 * d2], 0);
        }

        // s_(a a) = s_a in this fixture since a a = a in T1.
        assert_eq!(merge.psi_m(&[0, 0]).unwrap().mid, img_a.mid);
    }

    #[test]
    fn psi_m_on_pure_words_has_the_stated_shape() {
        let merge = build_merge(lz2_input(), Caps::default()).unwrap();
        // For w2 in A2+: psi_M(w2) = (psi2(w2), i0, I1^#), checked to length 4.
        for len in 1..=4 {
            let w: Vec<usize> = vec![1; len];
            let e = merge.psi_m(&w).unwrap();
            assert_eq!(e.right as usize, merge.flat2.mult_index(0));
            assert!(e.mid.iter().all(|&v| v == 0));
            assert_eq!(e.left as usize, merge.sharp1.const_index(0));
        }
        // For w1 in A1+: psi_M(w1) = (I2^b, s_(w1), psi1(w1)).
        for len in 1..=4 {
            let w: Vec<usize> = vec![0; len];
            let e = merge.psi_m(&w).unwrap();
            assert_eq!(e.right as usize, merge.flat2.const_index(0));
            assert_eq!(e.left as usize, merge.sharp1.mult_index(0));
        }
    }

    #[test]
    fn mid_at_identity_pair_is_psi0() {
        let merge = build_merge(lz2_input(), Caps::default()).unwrap();
        let d2 = merge.input.t2.size() + 1;
        for w1_len in 1..=3usize {
            for w2_len in 1..=3usize {
                let mut w: Vec<usize> = vec![0; w1_len];
                w.extend(std::iter::repeat(1).take(w2_len));
                let e = merge.psi_m(&w).unwrap();
                let expect = psi0_pointed(&merge.input, &w).unwrap();
                assert_eq!(e.mid[0] as usize, expect);
            }
        }
    }

    #[test]
    fn f_map_examples() {
        let merge = build_merge(lz2_input(), Caps::default()).unwrap();
        let f_a = merge.f_map(&merge.psi_m(&[0]).unwrap());
        assert_eq!(f_a, tau(&merge.input, &[0]).unwrap());
        let f_ab = merge.f_map(&merge.psi_m(&[0, 1]).unwrap());
        assert_eq!(f_ab, tau(&merge.input, &[0, 1]).unwrap());
    }

    #[test]
    fn verify_merge_lz2_to_length_six() {
        let report = verify_merge(lz2_input(), 6, Caps::default()).unwrap();
        assert!(report.passed(), "counterexamples: {:?}", report.counterexamples);
        assert_eq!(report.words_checked, 126);
        assert!(report.im_size < 20);
    }

    #[test]
    fn verify_merge_length_one_is_trivially_fine() {
        let report = verify_merge(lz2_input(), 1, Caps::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.words_checked, 2);
    }

    #[test]
    fn division_from_cover_examples() {
        let caps = Caps::default();
        // lz2 covered by {a} and {b}.
        let lz2 = fixtures::lz2();
        let div = division_from_cover(&lz2, &[0], &[1], caps).unwrap();
        assert!(is_division_witness(&lz2, &div.construction, &div.witness));

        // u1 covered by {1} and {0}.
        let u1 = fixtures::u1();
        let div = division_from_cover(&u1, &[0], &[1], caps).unwrap();
        assert!(is_division_witness(&u1, &div.construction, &div.witness));

        // z2 covered by itself twice.
        let z2 = fixtures::z2();
        let div = division_from_cover(&z2, &[0, 1], &[0, 1], caps).unwrap();
        assert!(is_division_witness(&z2, &div.construction, &div.witness));
    }

    #[test]
    fn division_from_cover_checks_generation() {
        let z4 = fixtures::z4();
        // {e} and {e, g^2} do not generate Z4.
        let err = division_from_cover(&z4, &[0], &[0, 2], Caps::default());
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn degenerate_alphabets_are_rejected() {
        let u1 = fixtures::u1();
        let t = u1.subsemigroup(&[0]).unwrap();
        let err = MergeInput::new(
            t.clone(),
            t.clone(),
            t,
            vec![],
            vec![0],
            vec![0],
            vec!["b".into()],
        );
        assert!(err.is_err());
    }
}
