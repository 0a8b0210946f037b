//! Finite semigroups as indexed Cayley tables.

use crate::bitset::Bitset;
use crate::error::{Error, Result};

/// A finite semigroup on elements `0..n`, with `table[i*n+j]` the index of
/// the product of element `i` by element `j`. Associativity is validated at
/// construction, so a value of this type is always a genuine semigroup.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Semigroup {
    n: usize,
    table: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl Semigroup {
    /// Validates entry ranges, associativity (full `O(n^3)` scan) and label
    /// distinctness.
    pub fn new(n: usize, table: Vec<u32>, labels: Option<Vec<String>>) -> Result<Semigroup> {
        let sg = Self::check_shape(n, table, labels)?;
        for i in 0..n {
            for j in 0..n {
                let ij = sg.mul(i, j);
                for k in 0..n {
                    if sg.mul(ij, k) != sg.mul(i, sg.mul(j, k)) {
                        return Err(Error::InvalidSemigroup(format!(
                            "not associative at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(sg)
    }

    /// Constructor for tables produced by closing a generating set inside an
    /// ambient associative structure. Uses Light's associativity test, which
    /// is complete when `generators` generate: it checks `(x a) y = x (a y)`
    /// for every generator `a` and all `x, y`.
    pub(crate) fn from_generated(
        n: usize,
        table: Vec<u32>,
        generators: &[usize],
        labels: Option<Vec<String>>,
    ) -> Result<Semigroup> {
        let sg = Self::check_shape(n, table, labels)?;
        for &a in generators {
            for x in 0..n {
                let xa = sg.mul(x, a);
                for y in 0..n {
                    if sg.mul(xa, y) != sg.mul(x, sg.mul(a, y)) {
                        return Err(Error::InvalidSemigroup(format!(
                            "not associative at ({x},{a},{y})"
                        )));
                    }
                }
            }
        }
        Ok(sg)
    }

    fn check_shape(n: usize, table: Vec<u32>, labels: Option<Vec<String>>) -> Result<Semigroup> {
        if n == 0 {
            return Err(Error::InvalidSemigroup("element count must be >= 1".into()));
        }
        if table.len() != n * n {
            return Err(Error::InvalidSemigroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if let Some(&bad) = table.iter().find(|&&e| e as usize >= n) {
            return Err(Error::InvalidSemigroup(format!(
                "table entry {bad} out of range 0..{n}"
            )));
        }
        if let Some(ls) = &labels {
            if ls.len() != n {
                return Err(Error::InvalidSemigroup(format!(
                    "{} labels for {n} elements",
                    ls.len()
                )));
            }
            for i in 0..n {
                for j in i + 1..n {
                    if ls[i] == ls[j] {
                        return Err(Error::InvalidSemigroup(format!(
                            "duplicate label {:?}",
                            ls[i]
                        )));
                    }
                }
            }
        }
        Ok(Semigroup { n, table, labels })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.n + j] as usize
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(ls) => ls[i].clone(),
            None => format!("s{i}"),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Semigroup> {
        Self::check_shape(self.n, std::mem::take(&mut self.table), Some(labels))
    }

    /// Product of a nonempty slice of elements, left to right.
    pub fn product(&self, elems: &[usize]) -> Option<usize> {
        let (&first, rest) = elems.split_first()?;
        Some(rest.iter().fold(first, |acc, &e| self.mul(acc, e)))
    }

    /// Two-sided identity, if one exists.
    pub fn identity(&self) -> Option<usize> {
        (0..self.n).find(|&e| (0..self.n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// Two-sided zero, if one exists.
    pub fn zero(&self) -> Option<usize> {
        (0..self.n).find(|&z| (0..self.n).all(|x| self.mul(z, x) == z && self.mul(x, z) == z))
    }

    pub fn is_monoid(&self) -> bool {
        self.identity().is_some()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.mul(i, i) == i
    }

    /// Commutative and all elements idempotent.
    pub fn is_semilattice(&self) -> bool {
        self.is_commutative() && (0..self.n).all(|i| self.is_idempotent(i))
    }

    /// A finite semigroup is a group iff both cancellation laws hold,
    /// i.e. every row and every column of the table is a permutation.
    pub fn is_group(&self) -> bool {
        let perm = |row: bool| {
            (0..self.n).all(|i| {
                let mut seen = vec![false; self.n];
                for j in 0..self.n {
                    let p = if row { self.mul(i, j) } else { self.mul(j, i) };
                    if seen[p] {
                        return false;
                    }
                    seen[p] = true;
                }
                true
            })
        };
        perm(true) && perm(false)
    }

    /// Inverse of `g`, when `self` is a group.
    pub fn group_inverse(&self, g: usize) -> Option<usize> {
        let e = self.identity()?;
        (0..self.n).find(|&h| self.mul(g, h) == e && self.mul(h, g) == e)
    }

    /// The unique idempotent among the powers of `s`.
    pub fn idempotent_power(&self, s: usize) -> usize {
        let mut seen = vec![false; self.n];
        let mut p = s;
        while !seen[p] {
            seen[p] = true;
            p = self.mul(p, s);
        }
        (0..self.n)
            .find(|&q| seen[q] && self.is_idempotent(q))
            .expect("every finite cyclic subsemigroup contains an idempotent")
    }

    /// `s^w s = s^w` for all `s`.
    pub fn is_aperiodic(&self) -> bool {
        (0..self.n).all(|s| {
            let e = self.idempotent_power(s);
            self.mul(e, s) == e
        })
    }

    /// Index and period of the cyclic subsemigroup generated by `x`:
    /// the least `(m, r)` with `x^(m+r) = x^m`, `m >= 1`, `r >= 1`.
    pub fn index_period(&self, x: usize) -> (usize, usize) {
        let mut power_of = vec![usize::MAX; self.n];
        let mut p = x;
        let mut k = 1usize;
        loop {
            if power_of[p] != usize::MAX {
                let m = power_of[p];
                return (m, k - m);
            }
            power_of[p] = k;
            p = self.mul(p, x);
            k += 1;
        }
    }

    /// Elements of the cyclic subsemigroup generated by `x`.
    pub fn cyclic_closure(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut seen = vec![false; self.n];
        let mut p = x;
        while !seen[p] {
            seen[p] = true;
            out.push(p);
            p = self.mul(p, x);
        }
        out
    }

    /// Transposed table.
    pub fn opposite(&self) -> Semigroup {
        let mut table = vec![0u32; self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                table[i * self.n + j] = self.table[j * self.n + i];
            }
        }
        Semigroup { n: self.n, table, labels: self.labels.clone() }
    }

    /// Direct product; pair `(i, j)` is encoded as `i * |other| + j`.
    pub fn direct_product(&self, other: &Semigroup) -> Semigroup {
        let n = self.n * other.n;
        let mut table = vec![0u32; n * n];
        for a in 0..self.n {
            for b in 0..other.n {
                for c in 0..self.n {
                    for d in 0..other.n {
                        let x = a * other.n + b;
                        let y = c * other.n + d;
                        table[x * n + y] = (self.mul(a, c) * other.n + other.mul(b, d)) as u32;
                    }
                }
            }
        }
        Semigroup { n, table, labels: None }
    }

    /// Restriction to a product-closed subset, in the given element order.
    /// Labels are inherited. Errors if the subset is not closed.
    pub fn subsemigroup(&self, elems: &[usize]) -> Result<Semigroup> {
        let mut pos = vec![usize::MAX; self.n];
        for (k, &e) in elems.iter().enumerate() {
            pos[e] = k;
        }
        let m = elems.len();
        let mut table = vec![0u32; m * m];
        for (a, &x) in elems.iter().enumerate() {
            for (b, &y) in elems.iter().enumerate() {
                let p = self.mul(x, y);
                if pos[p] == usize::MAX {
                    return Err(Error::Precondition(format!(
                        "subset not closed: {} * {} = {} lies outside",
                        self.label(x),
                        self.label(y),
                        self.label(p)
                    )));
                }
                table[a * m + b] = pos[p] as u32;
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|ls| elems.iter().map(|&e| ls[e].clone()).collect());
        Ok(Semigroup { n: m, table, labels })
    }

    /// Closure of a nonempty subset under the product, as a sorted index set.
    pub fn generated_subset(&self, gens: &[usize]) -> Bitset {
        let mut in_set = Bitset::empty(self.n);
        let mut stack: Vec<usize> = Vec::new();
        for &g in gens {
            if !in_set.contains(g) {
                in_set.insert(g);
                stack.push(g);
            }
        }
        while let Some(x) = stack.pop() {
            for y in in_set.indices() {
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !in_set.contains(p) {
                        in_set.insert(p);
                        stack.push(p);
                    }
                }
            }
        }
        in_set
    }

    /// The least two-sided ideal: the principal ideal of any element whose
    /// principal ideal has minimum size.
    pub fn minimal_ideal(&self) -> Bitset {
        let mut best: Option<Bitset> = None;
        for s in 0..self.n {
            let ideal = self.principal_ideal(s);
            if best.as_ref().map_or(true, |b| ideal.count() < b.count()) {
                best = Some(ideal);
            }
        }
        best.expect("nonempty semigroup")
    }

    fn principal_ideal(&self, s: usize) -> Bitset {
        let mut out = Bitset::empty(self.n);
        out.insert(s);
        for x in 0..self.n {
            out.insert(self.mul(x, s));
            out.insert(self.mul(s, x));
            for y in 0..self.n {
                out.insert(self.mul(self.mul(x, s), y));
            }
        }
        out
    }

    /// The local subsemigroup `e S e` at an idempotent `e` in the minimal
    /// ideal, which is then a group. Returns it with its element indices in
    /// `self`; errors if `e` is not idempotent or `e S e` fails the group
    /// check (which happens exactly when `e` is outside the minimal ideal).
    pub fn local_group(&self, e: usize) -> Result<(Semigroup, Vec<usize>)> {
        if !self.is_idempotent(e) {
            return Err(Error::Precondition(format!(
                "local_group: {} is not idempotent",
                self.label(e)
            )));
        }
        let mut elems: Vec<usize> = (0..self.n)
            .map(|x| self.mul(self.mul(e, x), e))
            .collect();
        elems.sort_unstable();
        elems.dedup();
        let sub = self.subsemigroup(&elems)?;
        if !sub.is_group() {
            return Err(Error::Precondition(format!(
                "local_group: e S e at {} is not a group; e is outside the minimal ideal",
                self.label(e)
            )));
        }
        Ok((sub, elems))
    }

    /// FNV-1a digest of the table, used for stable certificate identifiers.
    pub fn digest(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |b: u64| {
            h ^= b;
            h = h.wrapping_mul(0x100000001b3);
        };
        eat(self.n as u64);
        for &e in &self.table {
            eat(e as u64);
        }
        h
    }

    /// Short stable identifier like `4#1a2b3c4d` (size + table digest).
    pub fn id(&self) -> String {
        format!("{}#{:08x}", self.n, self.digest() as u32)
    }
}

impl std::fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Semigroup(n={}", self.n)?;
        if let Some(ls) = &self.labels {
            write!(f, ", labels={ls:?}")?;
        }
        write!(f, ")")
    }
}
