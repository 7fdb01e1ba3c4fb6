//! Brute-force reference implementations used to cross-check the fast paths.
//!
//! Nothing in here calls the information, product, queyranne or matroid
//! recognition code. Independence is decided by counting column patterns in
//! ordered maps and comparing `n * joint(a, b)` with `left(a) * right(b)` for
//! every pair of marginal patterns. Every enumeration is guarded and a guard
//! violation is an error rather than a truncated answer.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{is_zero_one, Matrix, Rational, RowSubset};
use crate::matroid::{Element, Matroid};
use crate::queyranne::SymmetricOracle;

pub const MAX_ONE_PRODUCT_ROWS: usize = 16;
pub const MAX_TWO_PRODUCT_ROWS: usize = 12;
pub const MAX_MIN_GROUND: usize = 16;
pub const MAX_BASES: usize = 100_000;

/// Evidence attached to a positive oracle verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Row set of `S` inducing a 1-product split.
    Split(RowSubset),
    /// Special row of `S` and the rows (in `S` indices) of the first factor.
    SpecialRow { row: usize, x: RowSubset },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub verdict: bool,
    /// First witness found, in enumeration order.
    pub witness: Option<Witness>,
    /// Every witness found.
    pub all: Vec<Witness>,
    /// Number of independence tests performed.
    pub evaluations: usize,
}

fn guard(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::GuardExceeded { what, value, limit })
    } else {
        Ok(())
    }
}

/// Bipartitions `{X, X̄}` of `items`, each listed once as the side holding
/// `items[0]`, in increasing bitmask order over the remaining items.
fn bipartitions(items: &[usize]) -> Vec<Vec<usize>> {
    let m = items.len();
    if m < 2 {
        return Vec::new();
    }
    let rest = &items[1..];
    let mut out = Vec::new();
    // Masks over `rest`; all-ones would make X the whole set.
    for mask in 0u32..(1u32 << (m - 1)) - 1 {
        let mut x = vec![items[0]];
        x.extend(
            rest.iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &i)| i),
        );
        x.sort_unstable();
        out.push(x);
    }
    out
}

/// Exact independence of the row blocks `x` and `y` over the columns `cols`.
pub fn naive_independent(s: &Matrix, x: &[usize], y: &[usize], cols: &[usize]) -> bool {
    let pattern = |rows: &[usize], j: usize| -> Vec<Rational> {
        rows.iter().map(|&i| s.get(i, j).clone()).collect()
    };
    let mut left: BTreeMap<Vec<Rational>, usize> = BTreeMap::new();
    let mut right: BTreeMap<Vec<Rational>, usize> = BTreeMap::new();
    let mut joint: BTreeMap<(Vec<Rational>, Vec<Rational>), usize> = BTreeMap::new();
    for &j in cols {
        let a = pattern(x, j);
        let b = pattern(y, j);
        *left.entry(a.clone()).or_default() += 1;
        *right.entry(b.clone()).or_default() += 1;
        *joint.entry((a, b)).or_default() += 1;
    }
    let n = cols.len();
    for (a, ca) in &left {
        for (b, cb) in &right {
            let c = joint.get(&(a.clone(), b.clone())).copied().unwrap_or(0);
            if n * c != ca * cb {
                return false;
            }
        }
    }
    true
}

/// Tests every bipartition of the rows for exact independence.
pub fn bf_one_product(s: &Matrix) -> Result<OracleReport> {
    guard("rows", s.nrows(), MAX_ONE_PRODUCT_ROWS)?;
    let rows: Vec<usize> = (0..s.nrows()).collect();
    let cols: Vec<usize> = (0..s.ncols()).collect();
    let mut all = Vec::new();
    let mut evaluations = 0;
    for x in bipartitions(&rows) {
        let y: Vec<usize> = rows.iter().copied().filter(|i| !x.contains(i)).collect();
        evaluations += 1;
        if naive_independent(s, &x, &y, &cols) {
            all.push(Witness::Split(RowSubset::from_sorted(x)));
        }
    }
    Ok(report(all, evaluations))
}

fn report(all: Vec<Witness>, evaluations: usize) -> OracleReport {
    OracleReport {
        verdict: !all.is_empty(),
        witness: all.first().cloned(),
        all,
        evaluations,
    }
}

/// Tests every (0/1 split row, bipartition of the other rows) pair for exact
/// independence on both column sides of the row.
pub fn bf_two_product(s: &Matrix) -> Result<OracleReport> {
    guard("rows", s.nrows(), MAX_TWO_PRODUCT_ROWS)?;
    let m = s.nrows();
    let mut all = Vec::new();
    let mut evaluations = 0;
    if m < 3 {
        return Ok(report(all, evaluations));
    }
    for r in 0..m {
        let row = s.row(r);
        let values: BTreeSet<&Rational> = row.iter().collect();
        if !row.iter().all(is_zero_one) || values.len() != 2 {
            continue;
        }
        let (zero, one): (Vec<usize>, Vec<usize>) = (0..s.ncols()).partition(|&j| row[j].is_zero());
        let others: Vec<usize> = (0..m).filter(|&i| i != r).collect();
        for x in bipartitions(&others) {
            let y: Vec<usize> = others.iter().copied().filter(|i| !x.contains(i)).collect();
            evaluations += 1;
            if naive_independent(s, &x, &y, &zero) && naive_independent(s, &x, &y, &one) {
                all.push(Witness::SpecialRow {
                    row: r,
                    x: RowSubset::from_sorted(x),
                });
            }
        }
    }
    Ok(report(all, evaluations))
}

/// Exhaustive minimum of `f` over nonempty proper subsets. Ties (within
/// `1e-12`) go to the lexicographically smallest sorted index list.
pub fn bf_submodular_min<O: SymmetricOracle + ?Sized>(f: &O) -> Result<(RowSubset, f64)> {
    let m = f.ground_size();
    guard("ground size", m, MAX_MIN_GROUND)?;
    if m < 2 {
        return Err(Error::TrivialSubset);
    }
    let mut best: Option<(Vec<usize>, f64)> = None;
    for mask in 1u32..(1u32 << m) - 1 {
        let x: Vec<usize> = (0..m).filter(|b| mask >> b & 1 == 1).collect();
        let v = f.eval(&x);
        let better = match &best {
            None => true,
            Some((bx, bv)) => v < bv - 1e-12 || (v <= bv + 1e-12 && x < *bx),
        };
        if better {
            best = Some((x, v));
        }
    }
    let (x, v) = best.expect("m >= 2 gives a proper subset");
    Ok((RowSubset::from_sorted(x), v))
}

/// Checks equal base sizes and the exchange axiom: for bases `B1, B2` and
/// `e ∈ B1 \ B2` some `f ∈ B2 \ B1` has `B1 - e + f` a base.
pub fn base_exchange_validator(m: &Matroid) -> Result<bool> {
    let bases = m.bases();
    guard("bases", bases.len(), MAX_BASES)?;
    let sets: Vec<BTreeSet<Element>> = bases.iter().map(|b| b.iter().copied().collect()).collect();
    let lookup: BTreeSet<&BTreeSet<Element>> = sets.iter().collect();
    let Some(first) = sets.first() else {
        return Ok(false);
    };
    if sets.iter().any(|b| b.len() != first.len()) {
        return Ok(false);
    }
    for b1 in &sets {
        for b2 in &sets {
            for e in b1.difference(b2) {
                let ok = b2.difference(b1).any(|f| {
                    let mut c = b1.clone();
                    c.remove(e);
                    c.insert(*f);
                    lookup.contains(&c)
                });
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `I(C_X; C_X̄)` in bits from the double sum over joint patterns.
pub fn bf_mutual_info(s: &Matrix, x: &[usize]) -> f64 {
    let y: Vec<usize> = (0..s.nrows()).filter(|i| !x.contains(i)).collect();
    let n = s.ncols() as f64;
    let mut left: BTreeMap<Vec<&Rational>, f64> = BTreeMap::new();
    let mut right: BTreeMap<Vec<&Rational>, f64> = BTreeMap::new();
    let mut joint: BTreeMap<(Vec<&Rational>, Vec<&Rational>), f64> = BTreeMap::new();
    for j in 0..s.ncols() {
        let a: Vec<&Rational> = x.iter().map(|&i| s.get(i, j)).collect();
        let b: Vec<&Rational> = y.iter().map(|&i| s.get(i, j)).collect();
        *left.entry(a.clone()).or_default() += 1.0;
        *right.entry(b.clone()).or_default() += 1.0;
        *joint.entry((a, b)).or_default() += 1.0;
    }
    joint
        .iter()
        .map(|((a, b), c)| {
            let p = c / n;
            p * (p / ((left[a] / n) * (right[b] / n))).log2()
        })
        .sum()
}
