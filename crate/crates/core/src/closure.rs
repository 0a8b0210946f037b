//! Generic closure of a generating set under an associative product oracle.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::semigroup::Semigroup;

/// Hard bound on materialized Cayley tables (`n^2` entries would otherwise
/// grow without limit for wreath-style constructions).
pub const MAX_TABLE_ELEMENTS: usize = 6000;

/// Result of closing a generating set: the abstract semigroup, the concrete
/// element values in canonical order, and the index of each generator.
#[derive(Debug)]
pub struct Generated<E> {
    pub sg: Semigroup,
    pub elements: Vec<E>,
    /// Index in `elements` of each input generator (duplicates allowed).
    pub gen_indices: Vec<usize>,
}

/// Breadth-first closure with the canonical element order: by word length,
/// ties broken by generator index, then by left-factor index.
pub fn close<E, F>(generators: &[E], mut product: F, cap: usize) -> Result<Generated<E>>
where
    E: Clone + Eq + Hash,
    F: FnMut(&E, &E) -> E,
{
    if generators.is_empty() {
        return Err(Error::Precondition("closure: no generators".into()));
    }
    let mut elements: Vec<E> = Vec::new();
    let mut index: HashMap<E, usize> = HashMap::new();
    let mut gen_indices = Vec::with_capacity(generators.len());
    for g in generators {
        let i = *index.entry(g.clone()).or_insert_with(|| {
            elements.push(g.clone());
            elements.len() - 1
        });
        gen_indices.push(i);
    }
    if elements.len() > cap {
        return Err(Error::Resource { what: "semigroup closure", cap });
    }

    let mut frontier: Vec<usize> = (0..elements.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for gpos in 0..generators.len() {
            for &w in &frontier {
                let p = product(&elements[w], &generators[gpos]);
                if !index.contains_key(&p) {
                    if elements.len() == cap {
                        return Err(Error::Resource { what: "semigroup closure", cap });
                    }
                    elements.push(p.clone());
                    index.insert(p, elements.len() - 1);
                    next.push(elements.len() - 1);
                }
            }
        }
        frontier = next;
    }

    let n = elements.len();
    if n > MAX_TABLE_ELEMENTS {
        return Err(Error::Resource { what: "cayley table", cap: MAX_TABLE_ELEMENTS });
    }
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let p = product(&elements[i], &elements[j]);
            let k = *index.get(&p).ok_or_else(|| {
                Error::Internal("closure: product escaped the closed set".into())
            })?;
            table[i * n + j] = k as u32;
        }
    }
    let mut gens_dedup = gen_indices.clone();
    gens_dedup.sort_unstable();
    gens_dedup.dedup();
    let sg = Semigroup::from_generated(n, table, &gens_dedup, None)?;
    Ok(Generated { sg, elements, gen_indices })
}

/// Table-free closure: the element set in canonical order, generator
/// indices, and the right-multiplication-by-generator maps (which the
/// breadth-first search computes anyway). Used where the full Cayley table
/// would be too large to materialize.
pub struct ClosedSet<E> {
    pub elements: Vec<E>,
    pub gen_indices: Vec<usize>,
    /// `right_by_gen[g][i]` is the index of `elements[i] * generators[g]`.
    pub right_by_gen: Vec<Vec<usize>>,
    pub index: HashMap<E, usize>,
}

pub fn close_set<E, F>(generators: &[E], mut product: F, cap: usize) -> Result<ClosedSet<E>>
where
    E: Clone + Eq + Hash,
    F: FnMut(&E, &E) -> E,
{
    if generators.is_empty() {
        return Err(Error::Precondition("closure: no generators".into()));
    }
    let mut elements: Vec<E> = Vec::new();
    let mut index: HashMap<E, usize> = HashMap::new();
    let mut gen_indices = Vec::with_capacity(generators.len());
    for g in generators {
        let i = *index.entry(g.clone()).or_insert_with(|| {
            elements.push(g.clone());
            elements.len() - 1
        });
        gen_indices.push(i);
    }
    if elements.len() > cap {
        return Err(Error::Resource { what: "semigroup closure", cap });
    }
    let mut right_by_gen: Vec<Vec<usize>> = vec![vec![usize::MAX; elements.len()]; generators.len()];
    let mut frontier: Vec<usize> = (0..elements.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for gpos in 0..generators.len() {
            for &w in &frontier {
                let p = product(&elements[w], &generators[gpos]);
                let k = match index.get(&p) {
                    Some(&k) => k,
                    None => {
                        if elements.len() == cap {
                            return Err(Error::Resource { what: "semigroup closure", cap });
                        }
                        elements.push(p.clone());
                        index.insert(p, elements.len() - 1);
                        for col in right_by_gen.iter_mut() {
                            col.push(usize::MAX);
                        }
                        next.push(elements.len() - 1);
                        elements.len() - 1
                    }
                };
                right_by_gen[gpos][w] = k;
            }
        }
        frontier = next;
    }
    Ok(ClosedSet { elements, gen_indices, right_by_gen, index })
}

/// Closure of transformations of a finite point set under left-to-right
/// composition (`x (f g) = g(f(x))`), the product matching word action.
pub fn transformation_closure(maps: &[Vec<usize>], cap: usize) -> Result<Generated<Vec<usize>>> {
    if let Some(m) = maps.first() {
        let deg = m.len();
        for m in maps {
            if m.len() != deg || m.iter().any(|&x| x >= deg) {
                return Err(Error::Precondition(
                    "transformation maps must share a degree and stay in range".into(),
                ));
            }
        }
    }
    close(
        maps,
        |f, g| f.iter().map(|&x| g[x]).collect::<Vec<usize>>(),
        cap,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_map_closure_is_trivial() {
        let gen = transformation_closure(&[vec![0, 0]], 100).unwrap();
        assert_eq!(gen.sg.size(), 1);
        assert_eq!(gen.gen_indices, vec![0]);
    }

    #[test]
    fn swap_generates_z2() {
        // Oracle: compose the swap with itself until closed by hand:
        // swap, swap^2 = id, swap^3 = swap — two elements.
        let gen = transformation_closure(&[vec![1, 0]], 100).unwrap();
        assert_eq!(gen.sg.size(), 2);
        assert!(gen.sg.is_group());
        assert_eq!(gen.sg.identity(), Some(1));
    }

    #[test]
    fn left_zero_law_closure() {
        let gen = close(&['a', 'b'], |x, _| *x, 100).unwrap();
        assert_eq!(gen.sg.size(), 2);
        assert_eq!(gen.sg.mul(0, 1), 0);
        assert_eq!(gen.sg.mul(1, 0), 1);
    }

    #[test]
    fn cap_is_reported() {
        let err = transformation_closure(&[vec![1, 2, 0]], 2).unwrap_err();
        assert_eq!(err, Error::Resource { what: "semigroup closure", cap: 2 });
    }

    #[test]
    fn canonical_order_is_bfs_by_generator_then_left_factor() {
        // Generators a=[1,1,0], b=[2,2,2] on 3 points.
        let a = vec![1usize, 1, 0];
        let b = vec![2usize, 2, 2];
        let gen = transformation_closure(&[a.clone(), b.clone()], 100).unwrap();
        // Level 2 candidates in order: a*a, b*a, a*b, b*b.
        let aa: Vec<usize> = a.iter().map(|&x| a[x]).collect();
        assert_eq!(gen.elements[0], a);
        assert_eq!(gen.elements[1], b);
        assert_eq!(gen.elements[2], aa);
    }
}
