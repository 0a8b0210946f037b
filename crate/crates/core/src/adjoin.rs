//! Adjoining identities and zeros.

use crate::error::Result;
use crate::fixtures;
use crate::hom::SgHom;
use crate::semigroup::Semigroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdjoinKind {
    Identity,
    Zero,
}

/// A semigroup with a freshly adjoined identity or zero at index 0;
/// original element `t` sits at index `t + 1`.
#[derive(Clone, Debug)]
pub struct PointedSemigroup {
    pub sg: Semigroup,
    pub kind: AdjoinKind,
}

impl PointedSemigroup {
    pub const SPECIAL: usize = 0;
}

/// Adjoins a new identity or zero, even when one is already present.
pub fn adjoin(s: &Semigroup, kind: AdjoinKind) -> PointedSemigroup {
    let n = s.size() + 1;
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = match (kind, i, j) {
                (AdjoinKind::Identity, 0, _) => j as u32,
                (AdjoinKind::Identity, _, 0) => i as u32,
                (AdjoinKind::Zero, 0, _) | (AdjoinKind::Zero, _, 0) => 0,
                _ => (s.mul(i - 1, j - 1) + 1) as u32,
            };
        }
    }
    let labels = s.labels().map(|ls| {
        let special = fresh_label(ls, if kind == AdjoinKind::Identity { "I" } else { "0" });
        std::iter::once(special).chain(ls.iter().cloned()).collect()
    });
    let sg = Semigroup::new(n, table, labels).expect("adjunction preserves associativity");
    PointedSemigroup { sg, kind }
}

fn fresh_label(existing: &[String], base: &str) -> String {
    let mut label = base.to_string();
    while existing.contains(&label) {
        label.push('\'');
    }
    label
}

/// `T` with an identity and a zero adjoined (in that order), so the zero is
/// at index 0, the identity at index 1 and original `t` at `t + 2`.
pub fn tilde(s: &Semigroup) -> Semigroup {
    adjoin(&adjoin(s, AdjoinKind::Identity).sg, AdjoinKind::Zero).sg
}

/// The surjection `T x U1 -> T^0` sending `(t, 1) -> t` and `(t, 0) -> 0`,
/// with the homomorphism law machine-checked.
pub fn zero_adjunction_witness(t: &Semigroup) -> Result<SgHom> {
    let u1 = fixtures::u1();
    let dom = t.direct_product(&u1);
    let t0 = adjoin(t, AdjoinKind::Zero).sg;
    // Pair (i, u) is encoded as i*2 + u; u = 0 is the identity of U1.
    let map: Vec<u32> = (0..dom.size())
        .map(|p| {
            let (i, u) = (p / 2, p % 2);
            if u == 0 {
                (i + 1) as u32
            } else {
                0
            }
        })
        .collect();
    let hom = SgHom::new(dom, t0, map)?;
    debug_assert!(hom.is_surjective());
    Ok(hom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn adjoin_zero_to_u1() {
        let p = adjoin(&fixtures::u1(), AdjoinKind::Zero);
        assert_eq!(p.sg.size(), 3);
        for x in 0..3 {
            assert_eq!(p.sg.mul(0, x), 0);
            assert_eq!(p.sg.mul(x, 0), 0);
        }
    }

    #[test]
    fn adjoin_identity_to_z2_gives_a_second_identity() {
        let p = adjoin(&fixtures::z2(), AdjoinKind::Identity);
        assert_eq!(p.sg.size(), 3);
        // The new I at 0 is the identity; the old e (now at 1) no longer is.
        assert_eq!(p.sg.identity(), Some(0));
        for x in 0..3 {
            assert_eq!(p.sg.mul(0, x), x);
            assert_eq!(p.sg.mul(x, 0), x);
        }
        assert_eq!(p.sg.mul(1, 2), 2);
    }

    #[test]
    fn adjoin_identity_to_lz2() {
        let p = adjoin(&fixtures::lz2(), AdjoinKind::Identity);
        assert_eq!(p.sg.size(), 3);
        assert_eq!(p.sg.mul(0, 1), 1); // I a = a
        assert_eq!(p.sg.mul(1, 0), 1); // a I = a
    }

    #[test]
    fn tilde_has_zero_then_identity() {
        let t = tilde(&fixtures::lz2());
        assert_eq!(t.size(), 4);
        assert_eq!(t.zero(), Some(0));
        assert_eq!(t.identity(), Some(1));
    }

    #[test]
    fn zero_adjunction_examples() {
        // T = U1: surjection from the 4-element product onto the 3-element U1^0.
        // Oracle: SgHom::new checks the law on all 16 pairs.
        let hom = zero_adjunction_witness(&fixtures::u1()).unwrap();
        assert_eq!(hom.dom.size(), 4);
        assert_eq!(hom.cod.size(), 3);
        assert!(hom.is_surjective());

        let hom = zero_adjunction_witness(&fixtures::z2()).unwrap();
        assert!(hom.is_surjective());

        // Trivial T: a size-2 to size-2 isomorphism.
        let hom = zero_adjunction_witness(&fixtures::trivial()).unwrap();
        assert_eq!(hom.dom.size(), 2);
        assert!(hom.is_injective() && hom.is_surjective());
    }
}
