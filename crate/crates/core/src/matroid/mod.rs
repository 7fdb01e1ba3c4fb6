//! Matroids given by explicit base families, uniform-matroid slack matrices,
//! matroid expressions built from 1-sums and 2-sums, and recognition of
//! slack matrices of 2-level matroid base polytopes.
//!
//! Base families are kept explicitly, so everything here is meant for desk
//! scale instances.

mod expr;
mod hypersimplex;
mod recognize;

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::info::UnionFind;

pub use expr::{expr_to_bases, expr_to_slack, expr_to_slack_with_bases, MatroidExpr};
pub use hypersimplex::{
    binomial, hypersimplex_columns, hypersimplex_slack, recognize_hypersimplex, HypersimplexForm,
    Side,
};
pub use recognize::{recognize_2level_matroid_slack, RecognizedMatroid, RowRole};

/// Element label.
pub type Element = u32;

/// Ground set plus the family of bases, each base a sorted list of labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    ground: Vec<Element>,
    bases: BTreeSet<Vec<Element>>,
}

impl Matroid {
    /// Validates that bases are nonempty as a family, live in the ground
    /// set and have a common size. The exchange axiom is not checked here;
    /// see [`crate::oracle::base_exchange_validator`].
    pub fn new(ground: Vec<Element>, bases: impl IntoIterator<Item = Vec<Element>>) -> Result<Self> {
        let mut ground = ground;
        ground.sort_unstable();
        if ground.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Matroid("duplicate ground element".into()));
        }
        let mut family = BTreeSet::new();
        for mut b in bases {
            b.sort_unstable();
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Matroid("base with repeated element".into()));
            }
            if let Some(e) = b.iter().find(|e| ground.binary_search(e).is_err()) {
                return Err(Error::Matroid(format!("base element {e} not in ground set")));
            }
            family.insert(b);
        }
        let Some(first) = family.iter().next() else {
            return Err(Error::Matroid("no bases".into()));
        };
        let r = first.len();
        if family.iter().any(|b| b.len() != r) {
            return Err(Error::Matroid("bases of different sizes".into()));
        }
        Ok(Matroid {
            ground,
            bases: family,
        })
    }

    /// Sorted ground set.
    pub fn ground(&self) -> &[Element] {
        &self.ground
    }

    pub fn bases(&self) -> &BTreeSet<Vec<Element>> {
        &self.bases
    }

    pub fn rank(&self) -> usize {
        self.bases.iter().next().map_or(0, Vec::len)
    }

    pub fn is_loop(&self, e: Element) -> bool {
        self.ground.contains(&e) && self.bases.iter().all(|b| !b.contains(&e))
    }

    pub fn is_coloop(&self, e: Element) -> bool {
        self.ground.contains(&e) && self.bases.iter().all(|b| b.contains(&e))
    }

    /// Same matroid with every label `e` replaced by `map(e)`.
    pub fn relabel(&self, map: impl Fn(Element) -> Element) -> Result<Matroid> {
        Matroid::new(
            self.ground.iter().map(|&e| map(e)).collect(),
            self.bases
                .iter()
                .map(|b| b.iter().map(|&e| map(e)).collect())
                .collect::<Vec<_>>(),
        )
    }

    /// Groups the ground set into connected components. Two elements are
    /// joined when one can be exchanged for the other in some base; the
    /// transitive closure of this relation is the component relation.
    pub fn components(&self) -> Vec<Vec<Element>> {
        let index: HashMap<Element, usize> =
            self.ground.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut uf = UnionFind::new(self.ground.len());
        for b in &self.bases {
            for (pos, &e) in b.iter().enumerate() {
                for &f in &self.ground {
                    if b.binary_search(&f).is_ok() || uf.find(index[&e]) == uf.find(index[&f]) {
                        continue;
                    }
                    let mut swapped = b.clone();
                    swapped.remove(pos);
                    let at = swapped.binary_search(&f).unwrap_err();
                    swapped.insert(at, f);
                    if self.bases.contains(&swapped) {
                        uf.union(index[&e], index[&f]);
                    }
                }
            }
        }
        uf.groups(&self.ground)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// `U_{d,k}` on the labels `0..d`: every `k`-subset is a base.
pub fn uniform_bases(d: usize, k: usize) -> Result<Matroid> {
    if k > d {
        return Err(Error::KOutOfRange { d, k });
    }
    let ground: Vec<Element> = (0..d as Element).collect();
    Matroid::new(ground.clone(), k_subsets(&ground, k))
}

/// All `k`-subsets of `items` in lexicographic order of positions.
pub(crate) fn k_subsets<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let n = items.len();
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Bases are the complements of the bases of `m`.
pub fn dual(m: &Matroid) -> Matroid {
    let bases = m
        .bases
        .iter()
        .map(|b| {
            m.ground
                .iter()
                .copied()
                .filter(|e| b.binary_search(e).is_err())
                .collect()
        })
        .collect();
    Matroid {
        ground: m.ground.clone(),
        bases,
    }
}

/// Direct sum on disjoint ground sets.
pub fn one_sum(m1: &Matroid, m2: &Matroid) -> Result<Matroid> {
    if m1.ground.iter().any(|e| m2.ground.binary_search(e).is_ok()) {
        return Err(Error::Matroid("1-sum of overlapping ground sets".into()));
    }
    let ground: Vec<Element> = m1.ground.iter().chain(&m2.ground).copied().collect();
    let mut bases = Vec::with_capacity(m1.bases.len() * m2.bases.len());
    for b1 in &m1.bases {
        for b2 in &m2.bases {
            bases.push(b1.iter().chain(b2).copied().collect());
        }
    }
    Matroid::new(ground, bases)
}

/// 2-sum along `p`: bases `(B1 ∪ B2) \ {p}` for `p ∈ B1 △ B2`.
pub fn two_sum(m1: &Matroid, m2: &Matroid, p: Element) -> Result<Matroid> {
    let common: Vec<Element> = m1
        .ground
        .iter()
        .copied()
        .filter(|e| m2.ground.binary_search(e).is_ok())
        .collect();
    if common != [p] {
        return Err(Error::Matroid(format!(
            "2-sum ground sets must meet exactly in {p}, they meet in {common:?}"
        )));
    }
    for m in [m1, m2] {
        if m.is_loop(p) || m.is_coloop(p) {
            return Err(Error::Matroid(format!("glue element {p} is a loop or coloop")));
        }
    }
    let ground: Vec<Element> = m1
        .ground
        .iter()
        .chain(&m2.ground)
        .copied()
        .filter(|&e| e != p)
        .collect();
    let mut bases = Vec::new();
    for b1 in &m1.bases {
        let in1 = b1.binary_search(&p).is_ok();
        for b2 in &m2.bases {
            if in1 != b2.binary_search(&p).is_ok() {
                bases.push(b1.iter().chain(b2).copied().filter(|&e| e != p).collect());
            }
        }
    }
    Matroid::new(ground, bases)
}
