//! Slack matrices of hypersimplices, the base polytopes of uniform matroids.
//!
//! For `2 <= k <= d - 2`, `B(U_{d,k}) = {x in [0,1]^d : sum x = k}` has the
//! `2d` facets `x_e >= 0` and `x_e <= 1`, and its vertices are the weight-`k`
//! 0/1 vectors, so each column of the slack matrix has the form
//! `(v, 1 - v)`. For `k = 1` only the `x_e >= 0` facets survive and for
//! `k = d - 1` only the `x_e <= 1` facets; both slack matrices are `I_d`.

use num_traits::{One, Zero};

use super::k_subsets;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Which facet of the unit cube a row comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `x_e >= 0`; the slack is `[e in B]`.
    Nonneg,
    /// `x_e <= 1`; the slack is `[e not in B]`.
    Upper,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Nonneg => Side::Upper,
            Side::Upper => Side::Nonneg,
        }
    }
}

/// `C(n, k)`, or `None` on overflow.
pub fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    usize::try_from(acc).ok()
}

fn check_range(d: usize, k: usize) -> Result<()> {
    if d < 2 || k == 0 || k >= d {
        return Err(Error::KOutOfRange { d, k });
    }
    Ok(())
}

/// The base (as element indices `0..d`) of every column of
/// [`hypersimplex_slack`]`(d, k)`. For `2 <= k <= d - 2` these are the
/// `k`-subsets in lexicographic order; for `k = 1` column `j` is `{j}`; for
/// `k = d - 1` column `j` is everything but `j`.
pub fn hypersimplex_columns(d: usize, k: usize) -> Result<Vec<Vec<usize>>> {
    check_range(d, k)?;
    let all: Vec<usize> = (0..d).collect();
    Ok(if k == 1 {
        all.iter().map(|&j| vec![j]).collect()
    } else if k == d - 1 {
        all.iter()
            .map(|&j| all.iter().copied().filter(|&e| e != j).collect())
            .collect()
    } else {
        k_subsets(&all, k)
    })
}

/// Element and facet side of every row of [`hypersimplex_slack`]`(d, k)`.
pub(crate) fn hypersimplex_rows(d: usize, k: usize) -> Vec<(usize, Side)> {
    if k == 1 {
        (0..d).map(|e| (e, Side::Nonneg)).collect()
    } else if k == d - 1 {
        (0..d).map(|e| (e, Side::Upper)).collect()
    } else {
        (0..d)
            .map(|e| (e, Side::Nonneg))
            .chain((0..d).map(|e| (e, Side::Upper)))
            .collect()
    }
}

/// Slack matrix of `B(U_{d,k})`. For `2 <= k <= d - 2`: rows `x_e >= 0` for
/// `e = 0..d`, then `x_e <= 1`, and one column per `k`-subset in
/// lexicographic order. For `k` in `{1, d - 1}`: `I_d`.
pub fn hypersimplex_slack(d: usize, k: usize) -> Result<Matrix> {
    let columns = hypersimplex_columns(d, k)?;
    let rows = hypersimplex_rows(d, k);
    let n = columns.len();
    let mut data = Vec::with_capacity(rows.len() * n);
    for &(e, side) in &rows {
        for base in &columns {
            let inside = base.contains(&e);
            let one = match side {
                Side::Nonneg => inside,
                Side::Upper => !inside,
            };
            data.push(if one {
                crate::matrix::Rational::one()
            } else {
                crate::matrix::Rational::zero()
            });
        }
    }
    Matrix::new(rows.len(), n, data)
}

/// How a matrix is read as a hypersimplex slack matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypersimplexForm {
    pub d: usize,
    /// Always at most `d / 2`.
    pub k: usize,
    /// `(element, side)` of every row.
    pub rows: Vec<(usize, Side)>,
}

impl HypersimplexForm {
    /// The same matrix read as the slack matrix of `U_{d, d-k}`, with every
    /// side swapped.
    pub fn flipped(&self) -> HypersimplexForm {
        HypersimplexForm {
            d: self.d,
            k: self.d - self.k,
            rows: self.rows.iter().map(|&(e, s)| (e, s.flip())).collect(),
        }
    }

    /// True for the `I_d` case, where each element has a single row.
    pub fn is_identity(&self) -> bool {
        self.rows.len() == self.d
    }

    /// The base of column `j`, as sorted element indices.
    pub fn column_base(&self, s: &Matrix, j: usize) -> Vec<usize> {
        let mut member = vec![None; self.d];
        for (i, &(e, side)) in self.rows.iter().enumerate() {
            let one = s.get(i, j).is_one();
            let inside = match side {
                Side::Nonneg => one,
                Side::Upper => !one,
            };
            if side == Side::Nonneg || member[e].is_none() {
                member[e] = Some(inside);
            }
        }
        (0..self.d).filter(|&e| member[e] == Some(true)).collect()
    }
}

/// Recognizes hypersimplex slack matrices up to row and column
/// permutation.
///
/// A square permutation matrix of size `d >= 2` is read as `U_{d,1}`.
/// Otherwise the matrix must be 0/1 with `2d` distinct rows that pair up
/// into complementary rows and `C(d, k)` columns for some
/// `2 <= k <= d / 2`; a depth-first search then picks one row of every pair
/// so that each column has exactly `k` ones on the picked rows, and the
/// picked columns must be exactly the `k`-subsets.
#[allow(clippy::needless_range_loop)]
pub fn recognize_hypersimplex(s: &Matrix) -> Option<HypersimplexForm> {
    if !s.is_zero_one() {
        return None;
    }
    let (m, n) = (s.nrows(), s.ncols());
    let bits: Vec<Vec<bool>> = s
        .rows()
        .map(|r| r.iter().map(One::is_one).collect())
        .collect();

    if m == n && m >= 2 {
        let rows_ok = bits.iter().all(|r| r.iter().filter(|&&b| b).count() == 1);
        let cols_ok = (0..n).all(|j| bits.iter().filter(|r| r[j]).count() == 1);
        if rows_ok && cols_ok {
            return Some(HypersimplexForm {
                d: m,
                k: 1,
                rows: (0..m).map(|e| (e, Side::Nonneg)).collect(),
            });
        }
    }

    if m % 2 != 0 || m < 8 {
        return None;
    }
    let d = m / 2;
    let k = (2..=d / 2).find(|&k| binomial(d, k) == Some(n))?;

    let mut index = std::collections::HashMap::new();
    for (i, r) in bits.iter().enumerate() {
        if index.insert(r.clone(), i).is_some() {
            return None;
        }
    }
    let mut pairs = Vec::with_capacity(d);
    for (i, r) in bits.iter().enumerate() {
        let comp: Vec<bool> = r.iter().map(|b| !b).collect();
        let &c = index.get(&comp)?;
        if i < c {
            pairs.push((i, c));
        }
    }
    if pairs.len() != d {
        return None;
    }

    let mut search = SideSearch {
        bits: &bits,
        pairs: &pairs,
        k,
        weight: vec![0; n],
        chosen: Vec::with_capacity(d),
        fix_first: 2 * k == d,
    };
    if !search.run() {
        return None;
    }

    let mut rows = vec![(0, Side::Nonneg); m];
    for (e, (&(a, b), &pick_a)) in pairs.iter().zip(&search.chosen).enumerate() {
        let (v, u) = if pick_a { (a, b) } else { (b, a) };
        rows[v] = (e, Side::Nonneg);
        rows[u] = (e, Side::Upper);
    }

    let mut seen = std::collections::HashSet::new();
    for j in 0..n {
        let mut base = Vec::with_capacity(k);
        for (i, &(e, side)) in rows.iter().enumerate() {
            if side == Side::Nonneg && bits[i][j] {
                base.push(e);
            }
        }
        if base.len() != k || !seen.insert(base) {
            return None;
        }
    }
    Some(HypersimplexForm { d, k, rows })
}

struct SideSearch<'a> {
    bits: &'a [Vec<bool>],
    pairs: &'a [(usize, usize)],
    k: usize,
    weight: Vec<usize>,
    chosen: Vec<bool>,
    fix_first: bool,
}

impl SideSearch<'_> {
    fn run(&mut self) -> bool {
        let depth = self.chosen.len();
        if depth == self.pairs.len() {
            return self.weight.iter().all(|&w| w == self.k);
        }
        let remaining = self.pairs.len() - depth - 1;
        let options: &[bool] = if depth == 0 && self.fix_first {
            &[true]
        } else {
            &[true, false]
        };
        for &pick_a in options {
            let (a, b) = self.pairs[depth];
            let row = &self.bits[if pick_a { a } else { b }];
            let feasible = self.weight.iter().zip(row).all(|(&w, &bit)| {
                let w = w + usize::from(bit);
                w <= self.k && w + remaining >= self.k
            });
            if !feasible {
                continue;
            }
            for (w, &bit) in self.weight.iter_mut().zip(row) {
                *w += usize::from(bit);
            }
            self.chosen.push(pick_a);
            if self.run() {
                return true;
            }
            self.chosen.pop();
            for (w, &bit) in self.weight.iter_mut().zip(row) {
                *w -= usize::from(bit);
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use crate::shuffle::shuffle;

    #[test]
    fn shapes() {
        let s = hypersimplex_slack(4, 2).unwrap();
        assert_eq!((s.nrows(), s.ncols()), (8, 6));
        assert_eq!(hypersimplex_slack(3, 1).unwrap(), Matrix::identity(3).unwrap());
        assert_eq!(hypersimplex_slack(3, 2).unwrap(), Matrix::identity(3).unwrap());
        let s = hypersimplex_slack(6, 3).unwrap();
        for j in 0..s.ncols() {
            assert_eq!(s.column(j).iter().filter(|v| v.is_one()).count(), 6);
        }
        assert!(hypersimplex_slack(4, 0).is_err());
        assert!(hypersimplex_slack(4, 4).is_err());
        assert!(hypersimplex_slack(1, 1).is_err());
    }

    #[test]
    fn complementary_k_are_isomorphic() {
        for d in 4..=7 {
            for k in 2..=d - 2 {
                let a = hypersimplex_slack(d, k).unwrap();
                let b = hypersimplex_slack(d, d - k).unwrap();
                assert!(is_isomorphic(&a, &b).is_some(), "d={d} k={k}");
            }
        }
    }

    #[test]
    fn recognize_shuffled() {
        let (s, ..) = shuffle(&hypersimplex_slack(5, 2).unwrap(), 1);
        let form = recognize_hypersimplex(&s).unwrap();
        assert_eq!((form.d, form.k), (5, 2));
        let (s, ..) = shuffle(&Matrix::identity(6).unwrap(), 2);
        let form = recognize_hypersimplex(&s).unwrap();
        assert_eq!((form.d, form.k), (6, 1));
        let (s, ..) = shuffle(&hypersimplex_slack(6, 3).unwrap(), 3);
        let form = recognize_hypersimplex(&s).unwrap();
        assert_eq!((form.d, form.k), (6, 3));
    }

    #[test]
    fn flipped_entry_is_rejected() {
        let s = hypersimplex_slack(4, 2).unwrap();
        let mut rows = s.to_rows();
        rows[0][0] = crate::matrix::int(0);
        assert!(recognize_hypersimplex(&Matrix::from_rows(rows).unwrap()).is_none());
    }

    #[test]
    fn column_bases_follow_form() {
        let s = hypersimplex_slack(5, 2).unwrap();
        let form = recognize_hypersimplex(&s).unwrap();
        let bases: std::collections::BTreeSet<Vec<usize>> =
            (0..s.ncols()).map(|j| form.column_base(&s, j)).collect();
        assert_eq!(bases.len(), 10);
        assert!(bases.iter().all(|b| b.len() == 2));
        let flipped = form.flipped();
        assert!((0..s.ncols()).all(|j| flipped.column_base(&s, j).len() == 3));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 4), Some(70));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(0, 0), Some(1));
    }
}
