//! 1-products: construction, recognition, factor reconstruction and the
//! unique factorization into irreducible factors.
//!
//! `S` is a 1-product with respect to the row bipartition `X, Xbar` exactly
//! when the restricted column variables `C_X` and `C_Xbar` are independent.
//! A zero of the mutual-information function is searched with Queyranne's
//! algorithm and confirmed with the exact integer test before the factors
//! are rebuilt from the pattern multiplicities.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::info::{InfoFunction, ZERO_EPS};
use crate::matrix::{Matrix, Rational, RowSubset};
use crate::queyranne::{minimize_symmetric, SumOracle, SymmetricOracle};

/// Column `k * n2 + l` is column `k` of `s1` stacked on column `l` of `s2`.
pub fn one_product(s1: &Matrix, s2: &Matrix) -> Result<Matrix> {
    let (m1, n1) = (s1.nrows(), s1.ncols());
    let (m2, n2) = (s2.nrows(), s2.ncols());
    let n = n1 * n2;
    let mut data = vec![Rational::zero(); (m1 + m2) * n];
    for k in 0..n1 {
        for l in 0..n2 {
            let j = k * n2 + l;
            for i in 0..m1 {
                data[i * n + j] = s1.get(i, k).clone();
            }
            for i in 0..m2 {
                data[(m1 + i) * n + j] = s2.get(i, l).clone();
            }
        }
    }
    Matrix::new(m1 + m2, n, data)
}

/// True when the two matrices have the same shape and the same multiset of
/// columns, i.e. they agree up to a column permutation.
pub fn same_columns(a: &Matrix, b: &Matrix) -> bool {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return false;
    }
    let mut counts: HashMap<Vec<&Rational>, isize> = HashMap::new();
    for j in 0..a.ncols() {
        let col: Vec<&Rational> = (0..a.nrows()).map(|i| a.get(i, j)).collect();
        *counts.entry(col).or_insert(0) += 1;
    }
    for j in 0..b.ncols() {
        let col: Vec<&Rational> = (0..b.nrows()).map(|i| b.get(i, j)).collect();
        match counts.get_mut(&col) {
            Some(c) if *c > 0 => *c -= 1,
            _ => return false,
        }
    }
    true
}

/// Witness that `S` is a 1-product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneProductCert {
    /// Rows of `S` that form the first factor.
    pub x: RowSubset,
    /// Rows of `S` in `x`, ascending.
    pub s1: Matrix,
    /// Rows of `S` outside `x`, ascending.
    pub s2: Matrix,
    /// `row_map[i] = (factor, row)`: row `i` of `S` is row `row` of factor
    /// `factor` (0 for `s1`, 1 for `s2`).
    pub row_map: Vec<(usize, usize)>,
}

impl OneProductCert {
    /// `one_product(s1, s2)` with its rows put back in the order of `S`.
    pub fn expand(&self) -> Result<Matrix> {
        let product = one_product(&self.s1, &self.s2)?;
        let m1 = self.s1.nrows();
        let order: Vec<usize> = self
            .row_map
            .iter()
            .map(|&(factor, row)| if factor == 0 { row } else { m1 + row })
            .collect();
        product.select_rows(&order)
    }

    /// Checks that the expansion equals `s` up to a column permutation.
    pub fn verify(&self, s: &Matrix) -> bool {
        self.expand().is_ok_and(|e| same_columns(&e, s))
    }
}

fn row_map_for(x: &RowSubset, m: usize) -> Vec<(usize, usize)> {
    let (mut a, mut b) = (0, 0);
    (0..m)
        .map(|i| {
            if x.contains(i) {
                a += 1;
                (0, a - 1)
            } else {
                b += 1;
                (1, b - 1)
            }
        })
        .collect()
}

/// Distinct patterns of the columns restricted to `rows`, in order of first
/// occurrence, with their counts.
fn patterns(s: &Matrix, rows: &[usize]) -> Vec<(Vec<Rational>, usize)> {
    let mut index: HashMap<Vec<&Rational>, usize> = HashMap::new();
    let mut out: Vec<(Vec<Rational>, usize)> = Vec::new();
    for j in 0..s.ncols() {
        let key: Vec<&Rational> = rows.iter().map(|&i| s.get(i, j)).collect();
        let next = out.len();
        let slot = *index.entry(key).or_insert(next);
        if slot == next {
            out.push((rows.iter().map(|&i| s.get(i, j).clone()).collect(), 0));
        }
        out[slot].1 += 1;
    }
    out
}

/// Rebuilds integral factors from the pattern multiplicities, assuming the
/// split is known to be independent.
fn reconstruct_unchecked(s: &Matrix, x: &RowSubset) -> Result<(Matrix, Matrix)> {
    let xbar = x.complement(s.nrows());
    let a = patterns(s, x.indices());
    let b = patterns(s, xbar.indices());
    let n = Rational::from_integer(s.ncols().into());

    let mut u: Vec<Rational> = a
        .iter()
        .map(|(_, c)| Rational::from_integer((*c).into()) / &n)
        .collect();
    let mut v: Vec<Rational> = b
        .iter()
        .map(|(_, c)| Rational::from_integer((*c).into()))
        .collect();
    for i in 0..u.len() {
        if u[i].is_integer() {
            continue;
        }
        let q = Rational::from_integer(u[i].denom().clone());
        for ui in u.iter_mut() {
            *ui *= &q;
        }
        for vj in v.iter_mut() {
            *vj /= &q;
        }
    }
    if !v.iter().all(Rational::is_integer) {
        return Err(Error::NotIndependent);
    }

    let expand = |pats: &[(Vec<Rational>, usize)], mult: &[Rational], rows: usize| {
        let mut cols: Vec<&Vec<Rational>> = Vec::new();
        for ((p, _), k) in pats.iter().zip(mult) {
            let mut k = k.clone();
            while !k.is_zero() {
                cols.push(p);
                k -= Rational::one();
            }
        }
        let ncols = cols.len();
        let mut data = Vec::with_capacity(rows * ncols);
        for i in 0..rows {
            data.extend(cols.iter().map(|c| c[i].clone()));
        }
        Matrix::new(rows, ncols, data)
    };
    let s1 = expand(&a, &u, x.len())?;
    let s2 = expand(&b, &v, xbar.len())?;
    Ok((s1, s2))
}

/// Integral factors `(S1, S2)` with `one_product(S1, S2)` equal to `S` up to
/// row and column order, for an independent split `X`.
///
/// Patterns are taken in order of first occurrence. Starting from
/// `u_i = mu_X(a_i) / n` and `v_j = mu_Xbar(b_j)`, each fractional `u_i`
/// (ascending `i`) with denominator `q` multiplies `u` by `q` and divides
/// `v` by `q`; `S1` repeats pattern `a_i` `u_i` times and `S2` repeats `b_j`
/// `v_j` times.
pub fn reconstruct_factors(s: &Matrix, x: &RowSubset) -> Result<(Matrix, Matrix)> {
    let f = InfoFunction::new(s);
    if !f.is_independent_exact(x)? {
        return Err(Error::NotIndependent);
    }
    reconstruct_unchecked(s, x)
}

/// Runs Queyranne's algorithm and returns an exactly verified zero set:
/// the minimizer if it passes `exact`, else the first recorded candidate
/// with float value at most [`ZERO_EPS`] that does.
fn find_zero_set<O: SymmetricOracle + ?Sized>(
    oracle: &O,
    exact: impl Fn(&RowSubset) -> bool,
) -> Option<RowSubset> {
    let min = minimize_symmetric(oracle).ok()?;
    if exact(&min.set) {
        return Some(min.set);
    }
    min.candidates
        .into_iter()
        .filter(|(set, value)| *value <= ZERO_EPS && *set != min.set)
        .map(|(set, _)| set)
        .find(|set| exact(set))
}

fn independent(f: &InfoFunction, x: &RowSubset) -> bool {
    f.is_independent_exact(x).unwrap_or(false)
}

fn one_product_split(s: &Matrix) -> Option<(RowSubset, Matrix, Matrix)> {
    if s.nrows() < 2 {
        return None;
    }
    let f = InfoFunction::new(s);
    let x = find_zero_set(&f, |x| independent(&f, x))?;
    let (s1, s2) = reconstruct_unchecked(s, &x).ok()?;
    Some((x, s1, s2))
}

/// Decides whether `S` is a 1-product and, if so, returns a verified
/// certificate.
pub fn recognize_one_product(s: &Matrix) -> Option<OneProductCert> {
    let (x, s1, s2) = one_product_split(s)?;
    let cert = OneProductCert {
        row_map: row_map_for(&x, s.nrows()),
        x,
        s1,
        s2,
    };
    cert.verify(s).then_some(cert)
}

/// Decomposition of `S` into irreducible 1-product factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// Row blocks, ordered by smallest element.
    pub blocks: Vec<RowSubset>,
    /// `factors[i]` holds the rows `blocks[i]` in ascending order.
    pub factors: Vec<Matrix>,
}

impl Factorization {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Iterated 1-product of the factors with rows in the order of `S`.
    pub fn expand(&self) -> Result<Matrix> {
        let mut product = self.factors[0].clone();
        for f in &self.factors[1..] {
            product = one_product(&product, f)?;
        }
        let m: usize = self.blocks.iter().map(RowSubset::len).sum();
        let mut position = vec![0; m];
        let mut next = 0;
        for block in &self.blocks {
            for &i in block.indices() {
                position[i] = next;
                next += 1;
            }
        }
        product.select_rows(&position)
    }
}

/// Splits `S` recursively along exact zero sets until every factor is
/// irreducible. The blocks are the minimal nonempty zero sets of `f`.
pub fn factorize_irreducible(s: &Matrix) -> Factorization {
    let mut parts = Vec::new();
    factorize_rec(s, (0..s.nrows()).collect(), &mut parts);
    parts.sort_by_key(|(rows, _)| rows[0]);
    let (blocks, factors) = parts
        .into_iter()
        .map(|(rows, m)| (RowSubset::from_sorted(rows), m))
        .unzip();
    Factorization { blocks, factors }
}

fn factorize_rec(s: &Matrix, rows: Vec<usize>, out: &mut Vec<(Vec<usize>, Matrix)>) {
    // Rows that are pairwise dependent can never be separated.
    let connected = s.nrows() < 2 || {
        let f = InfoFunction::new(s);
        let all: Vec<usize> = (0..s.nrows()).collect();
        f.dependency_components(&all).len() == 1
    };
    let split = if connected { None } else { one_product_split(s) };
    match split {
        None => out.push((rows, s.clone())),
        Some((x, s1, s2)) => {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for (i, &r) in rows.iter().enumerate() {
                if x.contains(i) {
                    a.push(r);
                } else {
                    b.push(r);
                }
            }
            factorize_rec(&s1, a, out);
            factorize_rec(&s2, b, out);
        }
    }
}

/// Minimal nonempty row sets `X` such that every matrix in `fs` is a
/// 1-product along `X, Xbar` (all matrices share the same rows). The atoms
/// partition the rows; joint zero sets are exactly the unions of atoms.
pub fn joint_zero_atoms(matrices: &[&Matrix]) -> Vec<Vec<usize>> {
    let m = matrices.first().map_or(0, |s| s.nrows());
    let mut out = Vec::new();
    atoms_rec(matrices, (0..m).collect(), &mut out);
    out.sort_by_key(|a| a[0]);
    out
}

fn atoms_rec(matrices: &[&Matrix], rows: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if rows.len() < 2 {
        out.push(rows);
        return;
    }
    let restricted: Vec<Matrix> = matrices
        .iter()
        .map(|s| s.select_rows(&rows).expect("rows in range"))
        .collect();
    let fs: Vec<InfoFunction> = restricted.iter().map(InfoFunction::new).collect();

    let local: Vec<usize> = (0..rows.len()).collect();
    let mut uf = crate::info::UnionFind::new(rows.len());
    for f in &fs {
        f.join_dependent(&local, &mut uf);
    }
    if uf.groups(&local).len() == 1 {
        out.push(rows);
        return;
    }

    let sum = SumOracle::new(fs.iter().collect()).expect("same rows");
    let zero = find_zero_set(&sum, |x| fs.iter().all(|f| independent(f, x)));
    match zero {
        None => out.push(rows),
        Some(x) => {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for (i, &r) in rows.iter().enumerate() {
                if x.contains(i) {
                    a.push(r);
                } else {
                    b.push(r);
                }
            }
            atoms_rec(matrices, a, out);
            atoms_rec(matrices, b, out);
        }
    }
}
