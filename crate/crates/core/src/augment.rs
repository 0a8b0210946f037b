//! Augmented semigroups: multiplication maps plus constant maps on `T^I`.

use std::collections::HashMap;

use crate::semigroup::Semigroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Right-multiplication maps; the semigroup acts on `T^I` on the right.
    Sharp,
    /// Left-multiplication maps; acts on `T^I` on the left.
    Flat,
}

/// Representative tag of an augmented element. `Mult` holds an index into
/// `T`; `Const` holds a point of `T^I` (0 is the adjoined identity).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AugTag {
    Mult(usize),
    Const(usize),
}

/// `T^#` or `T^b`: total functions `T^I -> T^I`, with functionally equal
/// maps identified. Canonical order: multiplication maps by element index,
/// then the surviving constants by point index.
#[derive(Clone, Debug)]
pub struct Augmented {
    pub base: Semigroup,
    pub side: Side,
    pub sg: Semigroup,
    pub tags: Vec<AugTag>,
    maps: Vec<Vec<u32>>,
    mult_of: Vec<usize>,
    const_of: Vec<usize>,
}

/// Builds the augmented semigroup of `t` on the given side.
pub fn augment(t: &Semigroup, side: Side) -> Augmented {
    let n = t.size();
    let points = n + 1; // T^I: 0 = I, element u at u + 1

    let mult_map = |e: usize| -> Vec<u32> {
        (0..points)
            .map(|x| {
                let val = match (side, x) {
                    (_, 0) => e,
                    (Side::Sharp, _) => t.mul(x - 1, e),
                    (Side::Flat, _) => t.mul(e, x - 1),
                };
                (val + 1) as u32
            })
            .collect()
    };

    let mut maps: Vec<Vec<u32>> = Vec::new();
    let mut tags: Vec<AugTag> = Vec::new();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut mult_of = Vec::with_capacity(n);
    for e in 0..n {
        let m = mult_map(e);
        let i = *index.entry(m.clone()).or_insert_with(|| {
            maps.push(m);
            tags.push(AugTag::Mult(e));
            maps.len() - 1
        });
        mult_of.push(i);
    }
    let mut const_of = Vec::with_capacity(points);
    for c in 0..points {
        let m = vec![c as u32; points];
        let i = *index.entry(m.clone()).or_insert_with(|| {
            maps.push(m);
            tags.push(AugTag::Const(c));
            maps.len() - 1
        });
        const_of.push(i);
    }

    let m = maps.len();
    let mut table = vec![0u32; m * m];
    for i in 0..m {
        for j in 0..m {
            // Sharp composes left-to-right (x (fg) = (x f) g), Flat
            // right-to-left ((fg) x = f (g x)).
            let comp: Vec<u32> = match side {
                Side::Sharp => (0..points).map(|x| maps[j][maps[i][x] as usize]).collect(),
                Side::Flat => (0..points).map(|x| maps[i][maps[j][x] as usize]).collect(),
            };
            table[i * m + j] = index[&comp] as u32;
        }
    }

    let labels = t.labels().map(|ls| {
        let point_label = |c: usize| if c == 0 { "I".to_string() } else { ls[c - 1].clone() };
        let suffix = if side == Side::Sharp { "#" } else { "@" };
        tags.iter()
            .map(|tag| match tag {
                AugTag::Mult(e) => ls[*e].clone(),
                AugTag::Const(c) => format!("{}{}", point_label(*c), suffix),
            })
            .collect::<Vec<_>>()
    });
    let sg = match Semigroup::new(m, table.clone(), labels) {
        Ok(sg) => sg,
        // Base labels that collide with the generated ones are dropped.
        Err(_) => Semigroup::new(m, table, None).expect("composition is associative"),
    };

    Augmented { base: t.clone(), side, sg, tags, maps, mult_of, const_of }
}

impl Augmented {
    pub fn size(&self) -> usize {
        self.sg.size()
    }

    /// Index of the multiplication map of base element `e`.
    pub fn mult_index(&self, e: usize) -> usize {
        self.mult_of[e]
    }

    /// Index of the constant map at point `c` of `T^I`.
    pub fn const_index(&self, c: usize) -> usize {
        self.const_of[c]
    }

    /// Applies element `i` to a point of `T^I`.
    pub fn apply(&self, i: usize, point: usize) -> usize {
        self.maps[i][point] as usize
    }
}
