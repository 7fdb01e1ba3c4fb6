//! Column distribution of a matrix and the mutual-information set function.
//!
//! Let `C` be a uniformly random column of `S`. For a row subset `X`,
//! `f(X) = I(C_X ; C_Xbar) = H(C_X) + H(C_Xbar) - H(C)`, in bits. `f` is
//! symmetric, nonnegative and submodular, and `f(X) = 0` exactly when `S` is
//! a 1-product with respect to the row bipartition `X, Xbar`.
//!
//! The float value is only a guide for minimization. Whether `f(X)` is zero
//! is decided by [`InfoFunction::is_independent_exact`], which checks the
//! integer identity `n * mu(a, b) = mu_X(a) * mu_Xbar(b)` for every pair of
//! restricted patterns.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Rational, RowSubset};
use crate::queyranne::SymmetricOracle;

/// Float threshold below which a value of `f` is worth an exact check.
pub const ZERO_EPS: f64 = 1e-9;

/// Occurrence counts of the distinct columns of `S` restricted to `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTable {
    rows: RowSubset,
    counts: BTreeMap<Vec<Rational>, usize>,
    total: usize,
}

impl MultiplicityTable {
    pub fn rows(&self) -> &RowSubset {
        &self.rows
    }

    pub fn counts(&self) -> &BTreeMap<Vec<Rational>, usize> {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn count(&self, pattern: &[Rational]) -> usize {
        self.counts.get(pattern).copied().unwrap_or(0)
    }

    /// Number of distinct patterns.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Counts the distinct columns of `s` restricted to `x`. The empty subset
/// gives the single empty pattern with count `n`.
pub fn multiplicity_table(s: &Matrix, x: &RowSubset) -> MultiplicityTable {
    let mut counts = BTreeMap::new();
    for j in 0..s.ncols() {
        let pattern: Vec<Rational> = x.indices().iter().map(|&i| s.get(i, j).clone()).collect();
        *counts.entry(pattern).or_insert(0) += 1;
    }
    MultiplicityTable {
        rows: x.clone(),
        counts,
        total: s.ncols(),
    }
}

/// Shannon entropy in bits of the distribution `count / total`.
pub fn entropy(table: &MultiplicityTable) -> f64 {
    entropy_of_counts(table.counts.values().copied(), table.total)
}

fn entropy_of_counts(counts: impl IntoIterator<Item = usize>, total: usize) -> f64 {
    let n = total as f64;
    -counts
        .into_iter()
        .map(|c| {
            let p = c as f64 / n;
            p * p.log2()
        })
        .sum::<f64>()
}

/// Partition of the columns into classes, numbered by first occurrence.
#[derive(Debug, Clone)]
struct Labels {
    ids: Vec<u32>,
    classes: u32,
}

impl Labels {
    fn trivial(n: usize) -> Self {
        Labels {
            ids: vec![0; n],
            classes: 1,
        }
    }

    fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.classes as usize];
        for &id in &self.ids {
            counts[id as usize] += 1;
        }
        counts
    }

    fn entropy(&self) -> f64 {
        if self.classes == 1 {
            return 0.0;
        }
        entropy_of_counts(self.counts(), self.ids.len())
    }

    /// Common refinement of two column partitions.
    fn combine(&self, other: &Labels) -> Labels {
        if self.classes == 1 {
            return other.clone();
        }
        if other.classes == 1 {
            return self.clone();
        }
        let n = self.ids.len();
        let width = other.classes as usize;
        let space = self.classes as usize * width;
        let mut ids = Vec::with_capacity(n);
        let mut next = 0u32;
        if space <= (1 << 16).max(4 * n) {
            let mut table = vec![u32::MAX; space];
            for (&a, &b) in self.ids.iter().zip(&other.ids) {
                let slot = &mut table[a as usize * width + b as usize];
                if *slot == u32::MAX {
                    *slot = next;
                    next += 1;
                }
                ids.push(*slot);
            }
        } else {
            let mut table: FxHashMap<(u32, u32), u32> = FxHashMap::default();
            table.reserve(n);
            for (&a, &b) in self.ids.iter().zip(&other.ids) {
                let id = *table.entry((a, b)).or_insert_with(|| {
                    next += 1;
                    next - 1
                });
                ids.push(id);
            }
        }
        Labels { ids, classes: next }
    }
}

/// The set function `f` of a fixed matrix, ready for repeated evaluation.
///
/// Immutable after construction and `Sync`; every evaluation works on its own
/// buffers.
#[derive(Debug, Clone)]
pub struct InfoFunction {
    matrix: Matrix,
    rows: Vec<Labels>,
    full_entropy: f64,
}

impl InfoFunction {
    pub fn new(s: &Matrix) -> Self {
        let (ids, counts) = s.row_value_ids();
        let rows: Vec<Labels> = ids
            .into_iter()
            .zip(counts)
            .map(|(ids, classes)| Labels { ids, classes })
            .collect();
        let mut f = InfoFunction {
            matrix: s.clone(),
            rows,
            full_entropy: 0.0,
        };
        let all: Vec<usize> = (0..s.nrows()).collect();
        f.full_entropy = f.labels(&all).entropy();
        f
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.matrix.ncols()
    }

    /// `H(C)` of the full column distribution.
    pub fn full_entropy(&self) -> f64 {
        self.full_entropy
    }

    fn labels(&self, rows: &[usize]) -> Labels {
        match rows {
            [] => Labels::trivial(self.n()),
            [only] => self.rows[*only].clone(),
            [first, rest @ ..] => rest
                .iter()
                .fold(self.rows[*first].clone(), |acc, &r| acc.combine(&self.rows[r])),
        }
    }

    fn complement_of(&self, set: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.m()];
        for &i in set {
            inside[i] = true;
        }
        (0..self.m()).filter(|&i| !inside[i]).collect()
    }

    /// `H(C_X)` in bits.
    pub fn entropy_of(&self, x: &[usize]) -> f64 {
        self.labels(x).entropy()
    }

    /// `f(X)` for any `X`, including the empty and the full set.
    pub fn value(&self, x: &[usize]) -> f64 {
        let xbar = self.complement_of(x);
        self.entropy_of(x) + self.entropy_of(&xbar) - self.full_entropy
    }

    /// Exact test that `C_X` and `C_Xbar` are independent, for `X` a nonempty
    /// proper subset of the rows.
    pub fn is_independent_exact(&self, x: &RowSubset) -> Result<bool> {
        if x.is_empty() || x.len() >= self.m() {
            return Err(Error::TrivialSubset);
        }
        if let Some(&last) = x.indices().last() {
            if last >= self.m() {
                return Err(Error::IndexOutOfRange {
                    index: last,
                    size: self.m(),
                });
            }
        }
        Ok(self.independent(x.indices(), &self.complement_of(x.indices())))
    }

    /// Exact independence of `C_X` and `C_Y` for disjoint row sets.
    pub(crate) fn independent(&self, x: &[usize], y: &[usize]) -> bool {
        let lx = self.labels(x);
        let ly = self.labels(y);
        independent_labels(&lx, &ly)
    }

    /// Groups `ground` into the connected components of the graph joining two
    /// rows whenever their single-row distributions are dependent. Every
    /// zero set of `f` restricted to `ground` is a union of components.
    pub fn dependency_components(&self, ground: &[usize]) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(ground.len());
        self.join_dependent(ground, &mut uf);
        uf.groups(ground)
    }

    pub(crate) fn join_dependent(&self, ground: &[usize], uf: &mut UnionFind) {
        for a in 0..ground.len() {
            for b in a + 1..ground.len() {
                if uf.find(a) == uf.find(b) {
                    continue;
                }
                if !independent_labels(&self.rows[ground[a]], &self.rows[ground[b]]) {
                    uf.union(a, b);
                }
            }
        }
    }
}

fn independent_labels(lx: &Labels, ly: &Labels) -> bool {
    let joint = lx.combine(ly);
    if joint.classes as u64 != lx.classes as u64 * ly.classes as u64 {
        return false;
    }
    let n = lx.ids.len() as u128;
    let cx = lx.counts();
    let cy = ly.counts();
    let cj = joint.counts();
    let mut checked = vec![false; joint.classes as usize];
    for ((&a, &b), &ab) in lx.ids.iter().zip(&ly.ids).zip(&joint.ids) {
        if std::mem::replace(&mut checked[ab as usize], true) {
            continue;
        }
        if n * cj[ab as usize] as u128 != cx[a as usize] as u128 * cy[b as usize] as u128 {
            return false;
        }
    }
    true
}

impl SymmetricOracle for InfoFunction {
    fn ground_size(&self) -> usize {
        self.m()
    }

    fn eval(&self, set: &[usize]) -> f64 {
        self.value(set)
    }

    /// Batched `f(base ∪ c)`: the complement of `base ∪ c_j` is the rest of
    /// the ground set plus every other candidate, assembled from prefix and
    /// suffix refinements so that each call costs O((m + k) n).
    fn eval_extensions(&self, base: &[usize], candidates: &[&[usize]]) -> Vec<f64> {
        let k = candidates.len();
        if k == 0 {
            return Vec::new();
        }
        let mut used = vec![false; self.m()];
        for &i in base.iter().chain(candidates.iter().flat_map(|c| c.iter())) {
            used[i] = true;
        }
        let rest: Vec<usize> = (0..self.m()).filter(|&i| !used[i]).collect();
        let base_labels = self.labels(base);
        let rest_labels = self.labels(&rest);
        let cand_labels: Vec<Labels> = candidates.iter().map(|c| self.labels(c)).collect();

        // prefix[j] = rest + candidates[..j], suffix[j] = candidates[j..]
        let mut prefix = Vec::with_capacity(k + 1);
        prefix.push(rest_labels);
        for l in &cand_labels[..k - 1] {
            let next = prefix.last().expect("nonempty").combine(l);
            prefix.push(next);
        }
        let mut suffix: Vec<Option<Labels>> = vec![None; k + 1];
        for j in (1..k).rev() {
            suffix[j] = Some(match &suffix[j + 1] {
                Some(s) => cand_labels[j].combine(s),
                None => cand_labels[j].clone(),
            });
        }

        (0..k)
            .map(|j| {
                let with = base_labels.combine(&cand_labels[j]);
                let without = match &suffix[j + 1] {
                    Some(s) => prefix[j].combine(s),
                    None => prefix[j].clone(),
                };
                with.entropy() + without.entropy() - self.full_entropy
            })
            .collect()
    }
}

/// `f(X)` of the matrix wrapped by `f`.
pub fn mutual_info_f(f: &InfoFunction, x: &RowSubset) -> f64 {
    f.value(x.indices())
}

/// Exact independence test; see [`InfoFunction::is_independent_exact`].
pub fn is_independent_exact(f: &InfoFunction, x: &RowSubset) -> Result<bool> {
    f.is_independent_exact(x)
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }

    /// Groups `items` (indexed like the union-find) by root, ordered by their
    /// first member.
    pub(crate) fn groups<T: Copy>(&mut self, items: &[T]) -> Vec<Vec<T>> {
        let mut by_root: BTreeMap<usize, Vec<T>> = BTreeMap::new();
        for (i, &item) in items.iter().enumerate() {
            let r = self.find(i);
            by_root.entry(r).or_default().push(item);
        }
        by_root.into_values().collect()
    }
}
