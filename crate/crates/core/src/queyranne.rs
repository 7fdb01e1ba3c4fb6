//! Minimization of symmetric submodular set functions by pendent pairs.
//!
//! Each phase orders the current (merged) elements greedily, starting from
//! the one with the smallest representative and repeatedly appending the
//! element `x` minimizing `f(W ∪ x) - f(x)`. The last two elements `t, u` form
//! a pendent pair: `f(u)` is minimal among all sets separating `u` from `t`.
//! `u`'s original set is recorded as a candidate, `t` and `u` are merged, and
//! the process repeats until one element remains. The best candidate is a
//! global minimizer over nonempty proper subsets.

use std::cell::Cell;

use crate::error::{Error, Result};
use crate::matrix::RowSubset;

/// A set function on `0..ground_size()` that the caller promises to be
/// symmetric and submodular. Sets are passed as lists of original indices.
pub trait SymmetricOracle {
    fn ground_size(&self) -> usize;

    fn eval(&self, set: &[usize]) -> f64;

    /// `f(base ∪ c)` for every candidate `c`. Candidates are disjoint from
    /// `base` and from each other. Implementations may batch the work.
    fn eval_extensions(&self, base: &[usize], candidates: &[&[usize]]) -> Vec<f64> {
        candidates
            .iter()
            .map(|c| {
                let mut set = base.to_vec();
                set.extend_from_slice(c);
                self.eval(&set)
            })
            .collect()
    }
}

impl<O: SymmetricOracle + ?Sized> SymmetricOracle for &O {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn eval(&self, set: &[usize]) -> f64 {
        (**self).eval(set)
    }

    fn eval_extensions(&self, base: &[usize], candidates: &[&[usize]]) -> Vec<f64> {
        (**self).eval_extensions(base, candidates)
    }
}

/// Pointwise sum of oracles on the same ground set. A sum of symmetric
/// submodular functions is symmetric submodular.
pub struct SumOracle<'a, O: SymmetricOracle> {
    parts: Vec<&'a O>,
}

impl<'a, O: SymmetricOracle> SumOracle<'a, O> {
    pub fn new(parts: Vec<&'a O>) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::DimensionMismatch("empty oracle sum".into()));
        };
        let m = first.ground_size();
        if parts.iter().any(|p| p.ground_size() != m) {
            return Err(Error::DimensionMismatch(
                "summed oracles have different ground sets".into(),
            ));
        }
        Ok(SumOracle { parts })
    }
}

impl<O: SymmetricOracle> SymmetricOracle for SumOracle<'_, O> {
    fn ground_size(&self) -> usize {
        self.parts[0].ground_size()
    }

    fn eval(&self, set: &[usize]) -> f64 {
        self.parts.iter().map(|p| p.eval(set)).sum()
    }

    fn eval_extensions(&self, base: &[usize], candidates: &[&[usize]]) -> Vec<f64> {
        let mut total = vec![0.0; candidates.len()];
        for p in &self.parts {
            for (t, v) in total.iter_mut().zip(p.eval_extensions(base, candidates)) {
                *t += v;
            }
        }
        total
    }
}

/// Cut function of an undirected weighted graph: total weight of edges
/// leaving the set.
#[derive(Debug, Clone)]
pub struct GraphCut {
    vertices: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl GraphCut {
    pub fn new(vertices: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        for &(a, b, _) in &edges {
            for v in [a, b] {
                if v >= vertices {
                    return Err(Error::IndexOutOfRange {
                        index: v,
                        size: vertices,
                    });
                }
            }
        }
        Ok(GraphCut { vertices, edges })
    }

    pub fn path(vertices: usize) -> Self {
        let edges = (1..vertices).map(|v| (v - 1, v, 1.0)).collect();
        GraphCut { vertices, edges }
    }
}

impl SymmetricOracle for GraphCut {
    fn ground_size(&self) -> usize {
        self.vertices
    }

    fn eval(&self, set: &[usize]) -> f64 {
        let mut inside = vec![false; self.vertices];
        for &v in set {
            inside[v] = true;
        }
        self.edges
            .iter()
            .filter(|(a, b, _)| inside[*a] != inside[*b])
            .map(|e| e.2)
            .sum()
    }
}

/// An element of the contracted ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedElement {
    /// Smallest member.
    pub representative: usize,
    /// Sorted original indices.
    pub members: Vec<usize>,
}

impl MergedElement {
    pub fn singleton(i: usize) -> Self {
        MergedElement {
            representative: i,
            members: vec![i],
        }
    }

    fn absorb(&mut self, other: MergedElement) {
        self.members.extend(other.members);
        self.members.sort_unstable();
        self.representative = self.members[0];
    }
}

/// Wraps an oracle and counts evaluated sets.
struct Counting<'a, O: SymmetricOracle + ?Sized> {
    inner: &'a O,
    count: Cell<usize>,
}

impl<O: SymmetricOracle + ?Sized> Counting<'_, O> {
    fn extensions(&self, base: &[usize], candidates: &[&[usize]]) -> Vec<f64> {
        self.count.set(self.count.get() + candidates.len());
        self.inner.eval_extensions(base, candidates)
    }
}

/// Greedy ordering of `elements` from `start`; returns the indices `(t, u)`
/// of the last two elements together with `f` of every element, which the
/// ordering needs anyway.
fn ordering<O: SymmetricOracle + ?Sized>(
    oracle: &Counting<'_, O>,
    elements: &[MergedElement],
    start: usize,
) -> (usize, usize, Vec<f64>) {
    let all: Vec<&[usize]> = elements.iter().map(|e| e.members.as_slice()).collect();
    let single = oracle.extensions(&[], &all);

    let mut remaining: Vec<usize> = (0..elements.len()).filter(|&i| i != start).collect();
    let mut order = vec![start];
    let mut w: Vec<usize> = elements[start].members.clone();
    while remaining.len() > 1 {
        let cands: Vec<&[usize]> = remaining.iter().map(|&i| all[i]).collect();
        let values = oracle.extensions(&w, &cands);
        // remaining stays sorted by representative, so the first strict
        // minimum is the smallest-representative tie-break.
        let mut best = 0;
        let mut best_key = values[0] - single[remaining[0]];
        for pos in 1..remaining.len() {
            let key = values[pos] - single[remaining[pos]];
            if key < best_key {
                best = pos;
                best_key = key;
            }
        }
        let chosen = remaining.remove(best);
        w.extend_from_slice(&elements[chosen].members);
        order.push(chosen);
    }
    order.push(remaining[0]);
    let k = order.len();
    (order[k - 2], order[k - 1], single)
}

/// Finds a pendent pair of the merged elements, starting the ordering at
/// `elements[start]`. Returns indices into `elements`.
pub fn pendent_pair<O: SymmetricOracle + ?Sized>(
    oracle: &O,
    elements: &[MergedElement],
    start: usize,
) -> Result<(usize, usize)> {
    if elements.len() < 2 {
        return Err(Error::TrivialSubset);
    }
    if start >= elements.len() {
        return Err(Error::IndexOutOfRange {
            index: start,
            size: elements.len(),
        });
    }
    let counting = Counting {
        inner: oracle,
        count: Cell::new(0),
    };
    let (t, u, _) = ordering(&counting, elements, start);
    Ok((t, u))
}

/// Result of [`minimize_symmetric`].
#[derive(Debug, Clone)]
pub struct Minimum {
    /// Minimizer, given as the side that contains element 0.
    pub set: RowSubset,
    pub value: f64,
    /// Every recorded pendent-pair cut with its value, in phase order, each
    /// given as the side that contains element 0.
    pub candidates: Vec<(RowSubset, f64)>,
    /// Number of sets evaluated.
    pub evaluations: usize,
}

/// Minimizes a symmetric submodular function over nonempty proper subsets
/// of its ground set. Ties go to the lexicographically smallest set.
pub fn minimize_symmetric<O: SymmetricOracle + ?Sized>(oracle: &O) -> Result<Minimum> {
    let m = oracle.ground_size();
    if m < 2 {
        return Err(Error::TrivialSubset);
    }
    let counting = Counting {
        inner: oracle,
        count: Cell::new(0),
    };
    let mut elements: Vec<MergedElement> = (0..m).map(MergedElement::singleton).collect();
    let mut candidates = Vec::with_capacity(m - 1);
    while elements.len() >= 2 {
        let (t, u, single) = ordering(&counting, &elements, 0);
        let side = RowSubset::from_sorted(elements[u].members.clone());
        let side = if side.contains(0) { side } else { side.complement(m) };
        candidates.push((side, single[u]));

        let removed = elements.remove(u);
        let t = if t > u { t - 1 } else { t };
        elements[t].absorb(removed);
        elements.sort_by_key(|e| e.representative);
    }

    let (set, value) = candidates
        .iter()
        .min_by(|a, b| {
            a.1.partial_cmp(&b.1)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then_with(|| a.0.indices().cmp(b.0.indices()))
        })
        .cloned()
        .expect("at least one phase");
    Ok(Minimum {
        set,
        value,
        candidates,
        evaluations: counting.count.get(),
    })
}
