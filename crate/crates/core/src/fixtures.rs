//! The small-semigroup corpus used by tests, the selftest and benchmarks.

use crate::semigroup::Semigroup;

fn sg(n: usize, table: Vec<u32>, labels: &[&str]) -> Semigroup {
    Semigroup::new(n, table, Some(labels.iter().map(|s| s.to_string()).collect()))
        .expect("fixture tables are valid")
}

/// The one-element semigroup.
pub fn trivial() -> Semigroup {
    sg(1, vec![0], &["e"])
}

/// The two-element semilattice `{1, 0}` with `1` the identity.
pub fn u1() -> Semigroup {
    chain(2)
}

/// Chain semilattice with `k` elements; index 0 is the top (identity),
/// products take the lower element (larger index).
pub fn chain(k: usize) -> Semigroup {
    let mut table = vec![0u32; k * k];
    for i in 0..k {
        for j in 0..k {
            table[i * k + j] = i.max(j) as u32;
        }
    }
    let labels: Vec<String> = (0..k)
        .map(|i| if i == 0 { "1".into() } else if i == k - 1 { "0".into() } else { format!("c{i}") })
        .collect();
    Semigroup::new(k, table, Some(labels)).expect("chain is a semigroup")
}

/// Left-zero semigroup on two elements: `x y = x`.
pub fn lz2() -> Semigroup {
    sg(2, vec![0, 0, 1, 1], &["a", "b"])
}

/// Right-zero semigroup on two elements: `x y = y`.
pub fn rz2() -> Semigroup {
    sg(2, vec![0, 1, 0, 1], &["a", "b"])
}

/// Cyclic group of order `k`; index `i` is `g^i`, identity at 0.
pub fn zn(k: usize) -> Semigroup {
    let mut table = vec![0u32; k * k];
    for i in 0..k {
        for j in 0..k {
            table[i * k + j] = ((i + j) % k) as u32;
        }
    }
    let labels: Vec<String> = (0..k)
        .map(|i| match i {
            0 => "e".into(),
            1 => "g".into(),
            _ => format!("g{i}"),
        })
        .collect();
    Semigroup::new(k, table, Some(labels)).expect("Z_n is a semigroup")
}

pub fn z2() -> Semigroup {
    zn(2)
}

pub fn z3() -> Semigroup {
    zn(3)
}

pub fn z4() -> Semigroup {
    zn(4)
}

/// Klein four-group as Z2 x Z2.
pub fn k4() -> Semigroup {
    let t = |i: usize, j: usize| (i ^ j) as u32;
    let mut table = vec![0u32; 16];
    for i in 0..4 {
        for j in 0..4 {
            table[i * 4 + j] = t(i, j);
        }
    }
    sg(4, table, &["e", "a", "b", "ab"])
}

/// Cyclic semigroup with index `m` and period `r`: generator `x` with
/// `x^(m+r) = x^m`. Element `i` is `x^(i+1)`; size `m + r - 1`.
pub fn cyclic(m: usize, r: usize) -> Semigroup {
    assert!(m >= 1 && r >= 1);
    let n = m + r - 1;
    let norm = |k: usize| if k <= n { k } else { m + (k - m) % r };
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = (norm(i + 1 + j + 1) - 1) as u32;
        }
    }
    let labels: Vec<String> = (0..n)
        .map(|i| if i == 0 { "x".into() } else { format!("x{}", i + 1) })
        .collect();
    Semigroup::new(n, table, Some(labels)).expect("cyclic semigroup")
}

/// `x^3 = x^2`: the two-element aperiodic cyclic semigroup.
pub fn c21() -> Semigroup {
    cyclic(2, 1)
}

/// `x^4 = x^2`, size 3.
pub fn c22() -> Semigroup {
    cyclic(2, 2)
}

/// `x^5 = x^3`, size 4.
pub fn c32() -> Semigroup {
    cyclic(3, 2)
}

/// The six-element Brandt monoid: partial injective maps on two points
/// without the swap, i.e. `{1, a, b, ab, ba, 0}` with `a = (1 -> 2)`,
/// `b = (2 -> 1)`, `ab = (1 -> 1)`, `ba = (2 -> 2)` and `a a = 0`.
/// Realized as a transformation semigroup on `{sink, 1, 2}`.
pub fn b21() -> Semigroup {
    // Encode a partial map on {1,2} as a total map on {0,1,2} with 0 a sink.
    let one = vec![0usize, 1, 2];
    let a = vec![0usize, 2, 0];
    let b = vec![0usize, 0, 1];
    let compose = |f: &Vec<usize>, g: &Vec<usize>| -> Vec<usize> { f.iter().map(|&x| g[x]).collect() };
    let ab = compose(&a, &b);
    let ba = compose(&b, &a);
    let zero = vec![0usize, 0, 0];
    let elems = [one, a, b, ab, ba, zero];
    let mut table = vec![0u32; 36];
    for i in 0..6 {
        for j in 0..6 {
            let p = compose(&elems[i], &elems[j]);
            let k = elems.iter().position(|e| *e == p).expect("closed");
            table[i * 6 + j] = k as u32;
        }
    }
    sg(6, table, &["1", "a", "b", "ab", "ba", "0"])
}

/// A named fixture.
pub struct Fixture {
    pub name: &'static str,
    pub sg: Semigroup,
}

/// The full corpus, in a fixed order.
pub fn corpus() -> Vec<Fixture> {
    vec![
        Fixture { name: "trivial", sg: trivial() },
        Fixture { name: "u1", sg: u1() },
        Fixture { name: "chain2", sg: chain(2) },
        Fixture { name: "chain3", sg: chain(3) },
        Fixture { name: "lz2", sg: lz2() },
        Fixture { name: "rz2", sg: rz2() },
        Fixture { name: "z2", sg: z2() },
        Fixture { name: "z3", sg: z3() },
        Fixture { name: "z4", sg: z4() },
        Fixture { name: "k4", sg: k4() },
        Fixture { name: "c21", sg: c21() },
        Fixture { name: "c22", sg: c22() },
        Fixture { name: "c32", sg: c32() },
        Fixture { name: "b21", sg: b21() },
    ]
}

/// The `.dfa`-format language fixtures for the separation front end.
pub mod dfa {
    /// Even number of `a`s, at least two: `(aa)+`.
    pub const EVEN_AA: &str = "\
states 3
alphabet a
init 0
final 2
trans 0 a 1
trans 1 a 2
trans 2 a 1
";

    /// Odd number of `a`s: `a(aa)*`.
    pub const ODD_A: &str = "\
states 3
alphabet a
init 0
final 1
trans 0 a 1
trans 1 a 2
trans 2 a 1
";

    /// Words over {a,b} starting with `a`.
    pub const A_FIRST: &str = "\
states 3
alphabet a b
init 0
final 1
trans 0 a 1
trans 0 b 2
trans 1 a 1
trans 1 b 1
trans 2 a 2
trans 2 b 2
";

    /// Words over {a,b} starting with `b`.
    pub const B_FIRST: &str = "\
states 3
alphabet a b
init 0
final 2
trans 0 a 1
trans 0 b 2
trans 1 a 1
trans 1 b 1
trans 2 a 2
trans 2 b 2
";

    /// Nonempty words over {a}: `a+` (used for the non-disjoint case).
    pub const A_PLUS: &str = "\
states 2
alphabet a
init 0
final 1
trans 0 a 1
trans 1 a 1
";
}
