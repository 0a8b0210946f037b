//! Wreath products, triple products, and the flat embedding into a wreath.

use crate::augment::{augment, Augmented, Side};
use crate::adjoin::tilde;
use crate::closure::MAX_TABLE_ELEMENTS;
use crate::error::{Error, Result};
use crate::hom::{check_division_oracle, DivisionWitness, SgHom};
use crate::semigroup::Semigroup;

/// `M wr T`: pairs `(f: T -> M, t)` with `(f,t)(g,t') = (x -> f(x) g(x t), t t')`.
#[derive(Clone, Debug)]
pub struct WreathProduct {
    pub m: Semigroup,
    pub t: Semigroup,
    pub sg: Semigroup,
}

/// A single wreath-product element, usable without materializing the table.
pub type WreathElem = (Vec<usize>, usize);

pub fn wreath_mul(m: &Semigroup, t: &Semigroup, a: &WreathElem, b: &WreathElem) -> WreathElem {
    let f: Vec<usize> = (0..t.size())
        .map(|x| m.mul(a.0[x], b.0[t.mul(x, a.1)]))
        .collect();
    (f, t.mul(a.1, b.1))
}

impl WreathProduct {
    pub fn encode(&self, e: &WreathElem) -> usize {
        let mut idx = 0usize;
        for &v in &e.0 {
            idx = idx * self.m.size() + v;
        }
        idx * self.t.size() + e.1
    }

    pub fn decode(&self, mut idx: usize) -> WreathElem {
        let t = idx % self.t.size();
        idx /= self.t.size();
        let deg = self.t.size();
        let mut f = vec![0usize; deg];
        for x in (0..deg).rev() {
            f[x] = idx % self.m.size();
            idx /= self.m.size();
        }
        (f, t)
    }

    /// The identity `(const 1_M, 1_T)` when both operands are monoids.
    pub fn identity(&self) -> Option<usize> {
        let one_m = self.m.identity()?;
        let one_t = self.t.identity()?;
        Some(self.encode(&(vec![one_m; self.t.size()], one_t)))
    }
}

/// Materializes `M wr T`. Requires `M` to be a monoid; `T` is any finite
/// semigroup (in practice one with an identity or zero).
pub fn wreath_product(m: &Semigroup, t: &Semigroup) -> Result<WreathProduct> {
    if !m.is_monoid() {
        return Err(Error::Precondition(
            "wreath_product: left operand must be a monoid".into(),
        ));
    }
    let functions = (m.size() as u128).checked_pow(t.size() as u32);
    let n = functions
        .and_then(|f| f.checked_mul(t.size() as u128))
        .filter(|&n| n <= MAX_TABLE_ELEMENTS as u128)
        .ok_or(Error::Resource { what: "wreath product size", cap: MAX_TABLE_ELEMENTS })?
        as usize;

    let mut wp = WreathProduct { m: m.clone(), t: t.clone(), sg: Semigroup::new(1, vec![0], None)? };
    let mut table = vec![0u32; n * n];
    let elems: Vec<WreathElem> = (0..n).map(|i| wp.decode(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let p = wreath_mul(m, t, &elems[i], &elems[j]);
            table[i * n + j] = wp.encode(&p) as u32;
        }
    }
    wp.sg = Semigroup::new(n, table, None)?;
    Ok(wp)
}

/// Commuting left and right actions on a carrier semigroup `(S, +)`.
#[derive(Clone, Debug)]
pub struct ActionPair {
    pub left_actor: Semigroup,
    pub right_actor: Semigroup,
    pub carrier: Semigroup,
    /// `left[l * |S| + s]` is `l . s`.
    pub left: Vec<u32>,
    /// `right[s * |S_R| + r]` is `s . r`.
    pub right: Vec<u32>,
}

impl ActionPair {
    pub fn act_left(&self, l: usize, s: usize) -> usize {
        self.left[l * self.carrier.size() + s] as usize
    }

    pub fn act_right(&self, s: usize, r: usize) -> usize {
        self.right[s * self.right_actor.size() + r] as usize
    }

    /// Checks both action laws and commutation.
    pub fn validate(&self) -> Result<()> {
        let (nl, ns, nr) =
            (self.left_actor.size(), self.carrier.size(), self.right_actor.size());
        if self.left.len() != nl * ns || self.right.len() != ns * nr {
            return Err(Error::Precondition("action tables have the wrong shape".into()));
        }
        for l in 0..nl {
            for l2 in 0..nl {
                for s in 0..ns {
                    if self.act_left(self.left_actor.mul(l, l2), s)
                        != self.act_left(l, self.act_left(l2, s))
                    {
                        return Err(Error::Precondition(format!(
                            "left action law fails at (l={l}, l'={l2}, s={s})"
                        )));
                    }
                }
            }
        }
        for r in 0..nr {
            for r2 in 0..nr {
                for s in 0..ns {
                    if self.act_right(s, self.right_actor.mul(r, r2))
                        != self.act_right(self.act_right(s, r), r2)
                    {
                        return Err(Error::Precondition(format!(
                            "right action law fails at (s={s}, r={r}, r'={r2})"
                        )));
                    }
                }
            }
        }
        for l in 0..nl {
            for s in 0..ns {
                for r in 0..nr {
                    if self.act_right(self.act_left(l, s), r)
                        != self.act_left(l, self.act_right(s, r))
                    {
                        return Err(Error::Precondition(format!(
                            "actions do not commute at (l={l}, s={s}, r={r})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The triple product `(S_R, S, S_L)`: triples `(r, s, l)` with
/// `(r,s,l)(r',s',l') = (r r', s.r' + l.s', l l')`.
#[derive(Clone, Debug)]
pub struct TripleProduct {
    pub actions: ActionPair,
    pub sg: Semigroup,
}

impl TripleProduct {
    pub fn encode(&self, r: usize, s: usize, l: usize) -> usize {
        (r * self.actions.carrier.size() + s) * self.actions.left_actor.size() + l
    }

    pub fn decode(&self, idx: usize) -> (usize, usize, usize) {
        let nl = self.actions.left_actor.size();
        let ns = self.actions.carrier.size();
        (idx / (ns * nl), idx / nl % ns, idx % nl)
    }
}

pub fn triple_product(actions: &ActionPair) -> Result<TripleProduct> {
    actions.validate()?;
    let (nl, ns, nr) =
        (actions.left_actor.size(), actions.carrier.size(), actions.right_actor.size());
    let n = nl
        .checked_mul(ns)
        .and_then(|x| x.checked_mul(nr))
        .filter(|&n| n <= MAX_TABLE_ELEMENTS)
        .ok_or(Error::Resource { what: "triple product size", cap: MAX_TABLE_ELEMENTS })?;
    let tp = TripleProduct {
        actions: actions.clone(),
        sg: Semigroup::new(1, vec![0], None)?,
    };
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        let (r, s, l) = tp.decode(i);
        for j in 0..n {
            let (r2, s2, l2) = tp.decode(j);
            let mid = actions
                .carrier
                .mul(actions.act_right(s, r2), actions.act_left(l, s2));
            table[i * n + j] = tp.encode(
                actions.right_actor.mul(r, r2),
                mid,
                actions.left_actor.mul(l, l2),
            ) as u32;
        }
    }
    let sg = Semigroup::new(n, table, None)?;
    Ok(TripleProduct { actions: actions.clone(), sg })
}

/// Formal tag of an element of the un-collapsed augmented semigroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormalAug {
    Mult(usize),
    /// Constant at a point of `T^I` (0 is the adjoined identity).
    Const(usize),
}

/// The embedding of the flat augmentation into `M wr T~`.
///
/// The map is defined on the tag-formal semigroup `T u {t^b : t in T^I}`
/// (size `2|T| + 1`), where it is always an injective homomorphism; when a
/// left-multiplication map coincides with a constant (any `t` with
/// `t x = t` for all `x`), the two formula branches disagree, so on the
/// function-collapsed `T^b` the same images instead give a machine-checked
/// division witness.
#[derive(Clone, Debug)]
pub struct FlatEmbedding {
    /// The formal (un-collapsed) flat semigroup.
    pub formal: Semigroup,
    pub formal_tags: Vec<FormalAug>,
    /// The function-collapsed flat semigroup.
    pub flat: Augmented,
    pub m: Semigroup,
    /// `T~`: zero at 0, identity at 1, original `t` at `t + 2`.
    pub t_tilde: Semigroup,
    /// Image of each formal element in `M wr T~`.
    pub images: Vec<WreathElem>,
}

pub fn flat_embed(t: &Semigroup, m: &Semigroup) -> Result<FlatEmbedding> {
    if !m.is_monoid() {
        return Err(Error::Precondition("flat_embed: M must be a monoid".into()));
    }
    if m.size() <= t.size() {
        return Err(Error::Precondition(format!(
            "flat_embed: need |M| > |T| ({} <= {})",
            m.size(),
            t.size()
        )));
    }
    let n = t.size();
    let one_m = m.identity().expect("monoid");
    // A bijection from T onto a subset of M \ {1_M}, in index order.
    let pool: Vec<usize> = (0..m.size()).filter(|&x| x != one_m).collect();
    let m_of = |elem: usize| pool[elem];

    let t_tilde = tilde(t);
    let deg = t_tilde.size(); // n + 2

    // Formal flat semigroup: Mult(t) at index t, Const(c) at index n + c.
    let formal_n = 2 * n + 1;
    let mut tags = Vec::with_capacity(formal_n);
    tags.extend((0..n).map(FormalAug::Mult));
    tags.extend((0..=n).map(FormalAug::Const));
    let mut table = vec![0u32; formal_n * formal_n];
    // Product of a T-element with a T^I point, as a T^I point.
    let mult_const = |a: usize, c: usize| if c == 0 { a + 1 } else { t.mul(a, c - 1) + 1 };
    for i in 0..formal_n {
        for j in 0..formal_n {
            // Flat side composes (f g)(x) = f(g(x)).
            let prod = match (tags[i], tags[j]) {
                (FormalAug::Mult(a), FormalAug::Mult(b)) => t.mul(a, b),
                (FormalAug::Mult(a), FormalAug::Const(c)) => n + mult_const(a, c),
                (FormalAug::Const(c), _) => n + c,
            };
            table[i * formal_n + j] = prod as u32;
        }
    }
    let formal = Semigroup::new(formal_n, table, None)?;

    // Images: Mult(t) -> (const 1_M, t~); Const(c) -> (f_c, zero) with
    // f_c(zero) = 1_M, f_c(p) = m_{p c} for p in T^I, and f_I(I) = 1_M
    // (the only point the defining product leaves outside T).
    let images: Vec<WreathElem> = tags
        .iter()
        .map(|tag| match *tag {
            FormalAug::Mult(e) => (vec![one_m; deg], e + 2),
            FormalAug::Const(c) => {
                let f: Vec<usize> = (0..deg)
                    .map(|p| {
                        if p == 0 {
                            one_m
                        } else {
                            // Point p of T~ is point p - 1 of T^I.
                            match point_times(t, p - 1, c) {
                                Some(elem) => m_of(elem),
                                None => one_m, // f_I at I
                            }
                        }
                    })
                    .collect();
                (f, 0)
            }
        })
        .collect();

    let flat = augment(t, Side::Flat);
    let emb = FlatEmbedding { formal, formal_tags: tags, flat, m: m.clone(), t_tilde, images };
    emb.verify()?;
    Ok(emb)
}

/// Product `p * c` in `T^I` (both as `T^I` points, 0 = I): `None` when the
/// result is the identity, i.e. both factors are I.
fn point_times(t: &Semigroup, p: usize, c: usize) -> Option<usize> {
    match (p, c) {
        (0, 0) => None,
        (0, _) => Some(c - 1),
        (_, 0) => Some(p - 1),
        _ => Some(t.mul(p - 1, c - 1)),
    }
}

impl FlatEmbedding {
    fn mul_images(&self, a: &WreathElem, b: &WreathElem) -> WreathElem {
        wreath_mul(&self.m, &self.t_tilde, a, b)
    }

    /// Hom law and injectivity of the formal embedding, plus the division
    /// witness for the collapsed `T^b`, all checked exhaustively.
    pub fn verify(&self) -> Result<()> {
        let n = self.formal.size();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.mul_images(&self.images[i], &self.images[j]);
                let rhs = &self.images[self.formal.mul(i, j)];
                if lhs != *rhs {
                    return Err(Error::Verification(format!(
                        "flat_embed: hom law fails at ({i},{j})"
                    )));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] == self.images[j] {
                    return Err(Error::Verification(format!(
                        "flat_embed: images of {i} and {j} coincide"
                    )));
                }
            }
        }
        let (sub, map) = self.division_data();
        check_division_oracle(&self.flat.sg, &sub, &map, |a, b| self.mul_images(a, b))
            .map_err(|d| Error::Verification(format!("flat_embed division: {d}")))?;
        Ok(())
    }

    /// The image elements together with their collapse to `T^b` indices.
    pub fn division_data(&self) -> (Vec<WreathElem>, Vec<usize>) {
        let map = self
            .formal_tags
            .iter()
            .map(|tag| match *tag {
                FormalAug::Mult(e) => self.flat.mult_index(e),
                FormalAug::Const(c) => self.flat.const_index(c),
            })
            .collect();
        (self.images.clone(), map)
    }

    /// True when no multiplication map collapsed onto a constant, i.e. the
    /// images literally embed the collapsed `T^b`.
    pub fn is_strict_embedding(&self) -> bool {
        self.flat.size() == self.formal.size()
    }

    /// Materialized form: the witness inside the full wreath-product table.
    /// Only feasible for small `|M|` and `|T|`.
    pub fn materialize(&self) -> Result<(WreathProduct, DivisionWitness)> {
        let wp = wreath_product(&self.m, &self.t_tilde)?;
        let (sub_elems, map) = self.division_data();
        let sub: Vec<usize> = sub_elems.iter().map(|e| wp.encode(e)).collect();
        Ok((wp, DivisionWitness { sub, map }))
    }

    /// The injective hom from the formal flat semigroup, materialized.
    pub fn to_sg_hom(&self) -> Result<SgHom> {
        let wp = wreath_product(&self.m, &self.t_tilde)?;
        let map: Vec<u32> = self.images.iter().map(|e| wp.encode(e) as u32).collect();
        let hom = SgHom::new(self.formal.clone(), wp.sg, map)?;
        if !hom.is_injective() {
            return Err(Error::Verification("flat_embed: not injective".into()));
        }
        Ok(hom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hom::is_division_witness;

    #[test]
    fn wreath_size_formula() {
        let m = fixtures::z2();
        let t = fixtures::chain(3);
        let wp = wreath_product(&m, &t).unwrap();
        assert_eq!(wp.sg.size(), 2usize.pow(3) * 3);
    }

    #[test]
    fn wreath_of_u1_and_trivial_monoid_is_u1_like() {
        let wp = wreath_product(&fixtures::u1(), &fixtures::trivial()).unwrap();
        assert_eq!(wp.sg.size(), 2);
        assert!(wp.sg.is_semilattice());
    }

    #[test]
    fn wreath_requires_monoid() {
        let err = wreath_product(&fixtures::lz2(), &fixtures::u1());
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn wreath_encode_decode_roundtrip() {
        let wp = wreath_product(&fixtures::z2(), &fixtures::z2()).unwrap();
        for i in 0..wp.sg.size() {
            assert_eq!(wp.encode(&wp.decode(i)), i);
        }
    }

    fn trivial_actions(carrier: &Semigroup) -> ActionPair {
        let tr = fixtures::trivial();
        ActionPair {
            left_actor: tr.clone(),
            right_actor: tr,
            carrier: carrier.clone(),
            left: (0..carrier.size() as u32).collect(),
            right: (0..carrier.size() as u32).collect(),
        }
    }

    #[test]
    fn triple_product_size_and_trivial_actors() {
        // U1 acting on U1 by multiplication on both sides: size 2*2*2.
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
            carrier: u1.clone(),
            left,
            right,
        };
        let tp = triple_product(&ap).unwrap();
        assert_eq!(tp.sg.size(), 8);

        // Trivial actors acting identically: middle coordinates multiply by
        // the carrier product alone.
        let z3 = fixtures::z3();
        let tp = triple_product(&trivial_actions(&z3)).unwrap();
        assert_eq!(tp.sg.size(), 3);
        for s in 0..3 {
            for s2 in 0..3 {
                let p = tp.sg.mul(tp.encode(0, s, 0), tp.encode(0, s2, 0));
                assert_eq!(tp.decode(p).1, z3.mul(s, s2));
            }
        }
    }

    #[test]
    fn invalid_action_is_rejected() {
        // The idempotent trivial actor cannot act by the swap:
        // (l l) s = l s but l (l s) = s.
        let mut ap = trivial_actions(&fixtures::u1());
        ap.left = vec![1, 0];
        assert!(triple_product(&ap).is_err());
    }

    #[test]
    fn flat_embed_trivial_into_two_chain() {
        let emb = flat_embed(&fixtures::trivial(), &fixtures::chain(2)).unwrap();
        assert_eq!(emb.t_tilde.size(), 3);
        assert_eq!(emb.flat.size(), 2);
        assert_eq!(emb.formal.size(), 3);
        // The collapsed flat semigroup divides M wr T~, inside the real table.
        let (wp, w) = emb.materialize().unwrap();
        assert_eq!(wp.sg.size(), 24);
        assert!(is_division_witness(&emb.flat.sg, &wp.sg, &w));
    }

    #[test]
    fn flat_embed_lz2_into_three_chain() {
        let emb = flat_embed(&fixtures::lz2(), &fixtures::chain(3)).unwrap();
        // Left multiplications in lz2 are constants, so T^b collapses to 3
        // elements while the formal domain has 5.
        assert_eq!(emb.flat.size(), 3);
        assert_eq!(emb.formal.size(), 5);
        assert!(!emb.is_strict_embedding());
        let (wp, w) = emb.materialize().unwrap();
        assert!(is_division_witness(&emb.flat.sg, &wp.sg, &w));
        let hom = emb.to_sg_hom().unwrap();
        assert!(hom.is_injective());
    }

    #[test]
    fn flat_embed_strict_when_no_collapse() {
        // rz2 has no right-absorbing element, so the embedding is strict.
        let emb = flat_embed(&fixtures::rz2(), &fixtures::chain(3)).unwrap();
        assert_eq!(emb.flat.size(), 5);
        assert!(emb.is_strict_embedding());
        let hom = emb.to_sg_hom().unwrap();
        assert!(hom.is_injective());
    }

    #[test]
    fn flat_embed_rejects_small_m() {
        let err = flat_embed(&fixtures::u1(), &fixtures::u1());
        assert!(matches!(err, Err(Error::Precondition(_))));
    }
}
