//! Homomorphisms, free-semigroup homomorphisms and division witnesses.

use crate::error::{Error, Result};
use crate::semigroup::Semigroup;

/// A verified homomorphism between two concrete semigroups.
#[derive(Clone, Debug)]
pub struct SgHom {
    pub dom: Semigroup,
    pub cod: Semigroup,
    pub map: Vec<u32>,
}

impl SgHom {
    /// Builds and verifies `map(x y) = map(x) map(y)` on all pairs.
    pub fn new(dom: Semigroup, cod: Semigroup, map: Vec<u32>) -> Result<SgHom> {
        if map.len() != dom.size() {
            return Err(Error::Precondition(format!(
                "hom map has {} entries for a domain of size {}",
                map.len(),
                dom.size()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v as usize >= cod.size()) {
            return Err(Error::Precondition(format!(
                "hom map value {bad} outside codomain of size {}",
                cod.size()
            )));
        }
        for x in 0..dom.size() {
            for y in 0..dom.size() {
                let lhs = map[dom.mul(x, y)] as usize;
                let rhs = cod.mul(map[x] as usize, map[y] as usize);
                if lhs != rhs {
                    return Err(Error::Verification(format!(
                        "not a homomorphism at ({}, {})",
                        dom.label(x),
                        dom.label(y)
                    )));
                }
            }
        }
        Ok(SgHom { dom, cod, map })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        for &v in &self.map {
            seen[v as usize] = true;
        }
        seen.into_iter().all(|b| b)
    }
}

/// A homomorphism from a free semigroup `A+`, given by its generator map.
#[derive(Clone, Debug)]
pub struct FreeHom {
    pub alphabet: Vec<String>,
    pub cod: Semigroup,
    pub gen_map: Vec<u32>,
}

impl FreeHom {
    pub fn new(alphabet: Vec<String>, cod: Semigroup, gen_map: Vec<u32>) -> Result<FreeHom> {
        if gen_map.len() != alphabet.len() {
            return Err(Error::Precondition(format!(
                "generator map has {} entries for {} letters",
                gen_map.len(),
                alphabet.len()
            )));
        }
        if let Some(&bad) = gen_map.iter().find(|&&v| v as usize >= cod.size()) {
            return Err(Error::Precondition(format!(
                "generator image {bad} outside codomain of size {}",
                cod.size()
            )));
        }
        Ok(FreeHom { alphabet, cod, gen_map })
    }

    pub fn letter(&self, a: usize) -> usize {
        self.gen_map[a] as usize
    }

    /// Image of a nonempty word (letters as alphabet indices).
    pub fn eval(&self, word: &[usize]) -> Result<usize> {
        let (&first, rest) = word
            .split_first()
            .ok_or_else(|| Error::Precondition("free hom applied to the empty word".into()))?;
        let mut acc = self.letter(first);
        for &a in rest {
            acc = self.cod.mul(acc, self.letter(a));
        }
        Ok(acc)
    }

    /// Image in the pointed codomain `T^I` (0 is the adjoined identity,
    /// element `t` sits at `t + 1`); the empty word maps to 0.
    pub fn eval_pointed(&self, word: &[usize]) -> usize {
        if word.is_empty() {
            0
        } else {
            self.eval(word).expect("nonempty") + 1
        }
    }

    pub fn is_surjective(&self) -> bool {
        let gens: Vec<usize> = self.gen_map.iter().map(|&g| g as usize).collect();
        self.cod.generated_subset(&gens).count() == self.cod.size()
    }
}

/// Why a division witness was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisionDefect {
    NotClosed { i: usize, j: usize },
    NotHom { i: usize, j: usize },
    NotSurjective { missing: usize },
}

impl std::fmt::Display for DivisionDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DivisionDefect::NotClosed { i, j } => write!(f, "NotClosed({i},{j})"),
            DivisionDefect::NotHom { i, j } => write!(f, "NotHom({i},{j})"),
            DivisionDefect::NotSurjective { missing } => write!(f, "NotSurjective({missing})"),
        }
    }
}

/// Witness that `S` divides `T`: a subsemigroup of `T` (listed by `T`-index)
/// together with a surjective homomorphism onto `S` (parallel `S`-indices).
#[derive(Clone, Debug)]
pub struct DivisionWitness {
    pub sub: Vec<usize>,
    pub map: Vec<usize>,
}

impl DivisionWitness {
    /// The identity division of `S` into itself.
    pub fn identity(s: &Semigroup) -> DivisionWitness {
        DivisionWitness { sub: (0..s.size()).collect(), map: (0..s.size()).collect() }
    }

    /// Checks closure of `sub` in `T`, the homomorphism law of `map`, and
    /// surjectivity onto `S`.
    pub fn check(&self, s: &Semigroup, t: &Semigroup) -> std::result::Result<(), DivisionDefect> {
        let mut pos = vec![usize::MAX; t.size()];
        for (k, &e) in self.sub.iter().enumerate() {
            pos[e] = k;
        }
        for (a, &x) in self.sub.iter().enumerate() {
            for (b, &y) in self.sub.iter().enumerate() {
                let p = t.mul(x, y);
                let k = pos[p];
                if k == usize::MAX {
                    return Err(DivisionDefect::NotClosed { i: x, j: y });
                }
                if self.map[k] != s.mul(self.map[a], self.map[b]) {
                    return Err(DivisionDefect::NotHom { i: x, j: y });
                }
            }
        }
        let mut hit = vec![false; s.size()];
        for &v in &self.map {
            hit[v] = true;
        }
        if let Some(missing) = hit.iter().position(|&h| !h) {
            return Err(DivisionDefect::NotSurjective { missing });
        }
        Ok(())
    }
}

/// Boolean form of the witness check.
pub fn is_division_witness(s: &Semigroup, t: &Semigroup, w: &DivisionWitness) -> bool {
    w.check(s, t).is_ok()
}

/// Division check against an ambient semigroup given only by a product
/// oracle on opaque elements. `sub[k]` maps to `map[k]` in `S`.
pub fn check_division_oracle<E, F>(
    s: &Semigroup,
    sub: &[E],
    map: &[usize],
    mut product: F,
) -> std::result::Result<(), DivisionDefect>
where
    E: Eq,
    F: FnMut(&E, &E) -> E,
{
    for (a, x) in sub.iter().enumerate() {
        for (b, y) in sub.iter().enumerate() {
            let p = product(x, y);
            match sub.iter().position(|e| *e == p) {
                None => return Err(DivisionDefect::NotClosed { i: a, j: b }),
                Some(k) => {
                    if map[k] != s.mul(map[a], map[b]) {
                        return Err(DivisionDefect::NotHom { i: a, j: b });
                    }
                }
            }
        }
    }
    let mut hit = vec![false; s.size()];
    for &v in map {
        hit[v] = true;
    }
    if let Some(missing) = hit.iter().position(|&h| !h) {
        return Err(DivisionDefect::NotSurjective { missing });
    }
    Ok(())
}

/// Bounded brute-force search for a division of `s` into `ambient`: tries
/// assignments of the generators of `s` to elements of `ambient` and closes.
/// Used as a cross-check at tiny sizes.
pub fn search_division(
    s: &Semigroup,
    ambient: &Semigroup,
    gens: &[usize],
    max_candidates: usize,
) -> Option<DivisionWitness> {
    let g = gens.len();
    let m = ambient.size();
    let total = m.checked_pow(g as u32)?.min(max_candidates);
    'cand: for c in 0..total {
        let mut assign = Vec::with_capacity(g);
        let mut rem = c;
        for _ in 0..g {
            assign.push(rem % m);
            rem /= m;
        }
        // Close the assignment, tracking the induced image in `s`.
        let mut sub: Vec<usize> = Vec::new();
        let mut img: Vec<usize> = Vec::new();
        for (k, &a) in assign.iter().enumerate() {
            match sub.iter().position(|&e| e == a) {
                Some(p) => {
                    if img[p] != gens[k] {
                        continue 'cand;
                    }
                }
                None => {
                    sub.push(a);
                    img.push(gens[k]);
                }
            }
        }
        let mut i = 0;
        while i < sub.len() {
            if sub.len() > s.size() * 4 {
                continue 'cand;
            }
            for j in 0..sub.len() {
                for (x, y, ix, iy) in [(sub[i], sub[j], img[i], img[j]), (sub[j], sub[i], img[j], img[i])] {
                    let p = ambient.mul(x, y);
                    let want = s.mul(ix, iy);
                    match sub.iter().position(|&e| e == p) {
                        Some(k) => {
                            if img[k] != want {
                                continue 'cand;
                            }
                        }
                        None => {
                            sub.push(p);
                            img.push(want);
                        }
                    }
                }
            }
            i += 1;
        }
        let w = DivisionWitness { sub, map: img };
        if w.check(s, ambient).is_ok() {
            return Some(w);
        }
    }
    None
}
