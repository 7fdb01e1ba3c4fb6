//! 2-products: gluing two matrices along 0/1 special rows.
//!
//! `(S1, x1) ⊗2 (S2, y1)` splits the columns of each factor by the value of
//! its special row, takes the 1-products `S1^0 ⊗ S2^0` and `S1^1 ⊗ S2^1` of
//! the remaining rows side by side, and appends a new special row that is 0
//! on the first block and 1 on the second.
//!
//! Recognition fixes a candidate special row `r` of `S`, splits the other
//! rows' columns into `S^0` and `S^1` by the value of `r`, and looks for a
//! row set that is a zero of `f_0 + f_1`, i.e. a 1-product split of both
//! sides at once.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::info::InfoFunction;
use crate::matrix::{Matrix, Rational, RowSubset};
use crate::product::{one_product, same_columns};
use crate::queyranne::{minimize_symmetric, SumOracle};

/// Columns of `s` whose entry in row `r` is 0 and 1, respectively.
fn split_columns(s: &Matrix, r: usize) -> (Vec<usize>, Vec<usize>) {
    (0..s.ncols()).partition(|&j| s.get(r, j).is_zero())
}

fn check_special(s: &Matrix, r: usize) -> Result<()> {
    if r >= s.nrows() {
        return Err(Error::IndexOutOfRange {
            index: r,
            size: s.nrows(),
        });
    }
    if !s.row(r).iter().all(crate::matrix::is_zero_one) {
        return Err(Error::NotZeroOne(r));
    }
    if !s.is_split_row(r) {
        return Err(Error::ConstantSpecialRow(r));
    }
    Ok(())
}

/// `s` without row `r`, restricted to `cols`.
fn side(s: &Matrix, r: usize, cols: &[usize]) -> Matrix {
    let rows: Vec<usize> = (0..s.nrows()).filter(|&i| i != r).collect();
    s.select_rows(&rows)
        .and_then(|t| t.select_columns(cols))
        .expect("indices in range")
}

/// The 2-product of `(s1, x1)` and `(s2, y1)`. Rows: `s1` without `x1`,
/// then `s2` without `y1`, then the new special row.
pub fn two_product(s1: &Matrix, x1: usize, s2: &Matrix, y1: usize) -> Result<Matrix> {
    check_special(s1, x1)?;
    check_special(s2, y1)?;
    if s1.nrows() + s2.nrows() < 3 {
        return Err(Error::EmptyMatrix);
    }
    let (a0, a1) = split_columns(s1, x1);
    let (b0, b1) = split_columns(s2, y1);
    let mut blocks = Vec::with_capacity(2);
    for (bit, a, b) in [(0, &a0, &b0), (1, &a1, &b1)] {
        let mut block = if s1.nrows() == 1 {
            side(s2, y1, b).select_columns(&repeat_each(b.len(), a.len()))?
        } else if s2.nrows() == 1 {
            side(s1, x1, a).select_columns(&repeat_each(a.len(), b.len()))?
        } else {
            one_product(&side(s1, x1, a), &side(s2, y1, b))?
        };
        let special = vec![Rational::from_integer(bit.into()); block.ncols()];
        block = block.push_row(&special)?;
        blocks.push(block);
    }
    hstack(&blocks[0], &blocks[1])
}

/// Column indices that tile `0..n` `times` times, in product order.
fn repeat_each(n: usize, times: usize) -> Vec<usize> {
    (0..times).flat_map(|_| 0..n).collect()
}

fn hstack(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.nrows() != b.nrows() {
        return Err(Error::DimensionMismatch("hstack row counts differ".into()));
    }
    let rows: Vec<Vec<Rational>> = (0..a.nrows())
        .map(|i| a.row(i).iter().chain(b.row(i)).cloned().collect())
        .collect();
    Matrix::from_rows(rows)
}

/// Witness that `S` is a 2-product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoProductCert {
    /// Row of `S` that is the new special row.
    pub special_row: usize,
    /// Rows of `S` (other than `special_row`) that come from `s1`.
    pub x: RowSubset,
    /// Rows `x ∪ {special_row}` of `S` in ascending order.
    pub s1: Matrix,
    /// Position of the special row inside `s1`.
    pub x1: usize,
    /// Rows outside `x` (including `special_row`) in ascending order.
    pub s2: Matrix,
    /// Position of the special row inside `s2`.
    pub y1: usize,
    /// `row_map[i] = (factor, row)`; the special row maps to `(0, x1)`.
    pub row_map: Vec<(usize, usize)>,
}

impl TwoProductCert {
    /// `two_product(s1, x1, s2, y1)` with its rows in the order of `S`.
    pub fn expand(&self) -> Result<Matrix> {
        let product = two_product(&self.s1, self.x1, &self.s2, self.y1)?;
        let m1 = self.s1.nrows() - 1;
        let m2 = self.s2.nrows() - 1;
        let order: Vec<usize> = self
            .row_map
            .iter()
            .enumerate()
            .map(|(i, &(factor, row))| {
                if i == self.special_row {
                    m1 + m2
                } else if factor == 0 {
                    row - usize::from(row > self.x1)
                } else {
                    m1 + row - usize::from(row > self.y1)
                }
            })
            .collect();
        product.select_rows(&order)
    }

    /// Checks that the expansion equals `s` up to a column permutation.
    pub fn verify(&self, s: &Matrix) -> bool {
        self.expand().is_ok_and(|e| same_columns(&e, s))
    }
}

/// Rows of `S` that may serve as the special row: 0/1 with both values,
/// leaving at least two other rows.
pub fn candidate_special_rows(s: &Matrix) -> Vec<usize> {
    if s.nrows() < 3 {
        return Vec::new();
    }
    (0..s.nrows()).filter(|&r| s.is_split_row(r)).collect()
}

/// The two sides `S^0, S^1` for special row `r`, over the rows other than
/// `r` in ascending order.
pub fn sides(s: &Matrix, r: usize) -> (Matrix, Matrix) {
    let (j0, j1) = split_columns(s, r);
    (side(s, r, &j0), side(s, r, &j1))
}

/// Builds and verifies the certificate for special row `r` and the split
/// `x` of the other rows (indices into the rows of `S` without `r`).
pub fn two_product_cert(s: &Matrix, r: usize, x: &RowSubset) -> Option<TwoProductCert> {
    if !s.is_split_row(r) || x.is_empty() || x.len() + 1 >= s.nrows() {
        return None;
    }
    let (s0, s1side) = sides(s, r);
    let (a0, b0) = crate::product::reconstruct_factors(&s0, x).ok()?;
    let (a1, b1) = crate::product::reconstruct_factors(&s1side, x).ok()?;

    let others: Vec<usize> = (0..s.nrows()).filter(|&i| i != r).collect();
    let xs: Vec<usize> = x.indices().iter().map(|&i| others[i]).collect();
    let xset = RowSubset::from_sorted(xs);

    let glue = |left: &Matrix, right: &Matrix, rows: &[usize]| -> Option<(Matrix, usize)> {
        let pos = rows.iter().filter(|&&i| i < r).count();
        let mut out = Vec::with_capacity(rows.len() + 1);
        for i in 0..=left.nrows() {
            if i == pos {
                let mut special = vec![Rational::zero(); left.ncols()];
                special.extend(vec![Rational::one(); right.ncols()]);
                out.push(special);
            }
            if i < left.nrows() {
                out.push(left.row(i).iter().chain(right.row(i)).cloned().collect());
            }
        }
        Some((Matrix::from_rows(out).ok()?, pos))
    };
    let xbar: Vec<usize> = others.iter().copied().filter(|&i| !xset.contains(i)).collect();
    let (f1, x1) = glue(&a0, &a1, xset.indices())?;
    let (f2, y1) = glue(&b0, &b1, &xbar)?;

    let mut row_map = Vec::with_capacity(s.nrows());
    let (mut a, mut b) = (0, 0);
    for i in 0..s.nrows() {
        if i == r {
            row_map.push((0, x1));
            a += 1;
            b += 1;
        } else if xset.contains(i) {
            row_map.push((0, a));
            a += 1;
        } else {
            row_map.push((1, b));
            b += 1;
        }
    }
    let cert = TwoProductCert {
        special_row: r,
        x: xset,
        s1: f1,
        x1,
        s2: f2,
        y1,
        row_map,
    };
    cert.verify(s).then_some(cert)
}

/// Tries special row `r` with one Queyranne run on `f_0 + f_1`.
fn recognize_at(s: &Matrix, r: usize) -> Option<TwoProductCert> {
    let (s0, s1) = sides(s, r);
    let f0 = InfoFunction::new(&s0);
    let f1 = InfoFunction::new(&s1);
    let sum = SumOracle::new(vec![&f0, &f1]).ok()?;
    let min = minimize_symmetric(&sum).ok()?;
    let exact = |x: &RowSubset| {
        f0.is_independent_exact(x).unwrap_or(false) && f1.is_independent_exact(x).unwrap_or(false)
    };
    let x = if exact(&min.set) {
        min.set
    } else {
        min.candidates
            .into_iter()
            .filter(|(_, v)| *v <= crate::info::ZERO_EPS)
            .map(|(x, _)| x)
            .find(|x| exact(x))?
    };
    two_product_cert(s, r, &x)
}

/// Decides whether `S` is a 2-product. Candidate special rows are tried in
/// ascending order and the first verified certificate is returned.
pub fn recognize_two_product(s: &Matrix) -> Option<TwoProductCert> {
    candidate_special_rows(s)
        .into_iter()
        .find_map(|r| recognize_at(s, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shuffle::shuffle;

    fn tiny() -> Matrix {
        Matrix::from_ints(&[[0, 1], [1, 0]]).unwrap()
    }

    #[test]
    fn tiny_example() {
        let t = two_product(&tiny(), 0, &tiny(), 0).unwrap();
        assert_eq!(t, Matrix::from_ints(&[[1, 0], [1, 0], [0, 1]]).unwrap());
        assert_eq!(t.dedupe_rows().0, Matrix::identity(2).unwrap());
    }

    #[test]
    fn column_count() {
        let s1 = Matrix::from_ints(&[[0, 0, 1], [1, 2, 3]]).unwrap();
        let s2 = Matrix::from_ints(&[[4, 5, 6, 7], [1, 0, 0, 1]]).unwrap();
        let t = two_product(&s1, 0, &s2, 1).unwrap();
        assert_eq!(t.ncols(), 2 * 2 + 2);
        assert_eq!(t.nrows(), 3);
    }

    #[test]
    fn bad_special_rows() {
        let s = Matrix::from_ints(&[[0, 2], [1, 0]]).unwrap();
        assert_eq!(two_product(&s, 0, &tiny(), 0), Err(Error::NotZeroOne(0)));
        let s = Matrix::from_ints(&[[1, 1], [1, 0]]).unwrap();
        assert_eq!(two_product(&s, 0, &tiny(), 0), Err(Error::ConstantSpecialRow(0)));
    }

    #[test]
    fn recognize_round_trip() {
        let t = two_product(&tiny(), 0, &tiny(), 0).unwrap();
        let (s, ..) = shuffle(&t, 3);
        let cert = recognize_two_product(&s).unwrap();
        assert!(cert.verify(&s));

        let s1 = Matrix::from_ints(&[[0, 0, 1, 1], [1, 2, 1, 3], [0, 1, 1, 0]]).unwrap();
        let s2 = Matrix::from_ints(&[[1, 0, 0], [0, 1, 2], [5, 5, 6]]).unwrap();
        let t = two_product(&s1, 0, &s2, 0).unwrap();
        let (s, ..) = shuffle(&t, 11);
        let cert = recognize_two_product(&s).unwrap();
        assert!(cert.verify(&s));
        assert!(cert.expand().is_ok());
    }

    #[test]
    fn no_candidate_row() {
        let s = Matrix::from_ints(&[[0, 2, 1], [3, 1, 0], [1, 1, 2]]).unwrap();
        assert!(recognize_two_product(&s).is_none());
    }
}
