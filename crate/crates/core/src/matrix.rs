//! Dense matrices over exact rationals, and the permutational operations used
//! throughout the crate.
//!
//! Text format: a header line `m n`, then `m` lines of `n` whitespace separated
//! tokens. A token is an integer (`-3`), a decimal (`0.25`, converted exactly
//! to `1/4`) or a fraction `p/q`. The writer emits integers without a
//! denominator and everything else as `p/q`, so `parse(write(S)) == S`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact matrix entry, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds a rational from an integer.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Builds the rational `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses one matrix token: integer, decimal or `p/q`.
pub fn parse_rational(token: &str) -> std::result::Result<Rational, String> {
    if let Some((p, q)) = token.split_once('/') {
        let p = BigInt::from_str(p).map_err(|_| format!("bad numerator in {token:?}"))?;
        let q = BigInt::from_str(q).map_err(|_| format!("bad denominator in {token:?}"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in {token:?}"));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = token.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() && digits.is_empty()
            || !frac.bytes().all(|b| b.is_ascii_digit())
            || !digits.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(format!("malformed decimal {token:?}"));
        }
        let digits = if digits.is_empty() { "0" } else { digits };
        let mantissa = BigInt::from_str(&format!("{digits}{frac}"))
            .map_err(|_| format!("malformed decimal {token:?}"))?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(mantissa, scale);
        return Ok(if negative { -value } else { value });
    }
    BigInt::from_str(token)
        .map(Rational::from_integer)
        .map_err(|_| format!("malformed token {token:?}"))
}

pub fn is_zero_one(value: &Rational) -> bool {
    value.is_zero() || value.is_one()
}

/// Dense `m x n` matrix with exact rational entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has {} entries, expected {n}",
                rows[bad].len()
            )));
        }
        Matrix::new(m, n, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor for integer matrices.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    pub fn identity(d: usize) -> Result<Self> {
        let mut data = vec![Rational::zero(); d * d];
        for i in 0..d {
            data[i * d + i] = Rational::one();
        }
        Matrix::new(d, d, data)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> + '_ {
        self.data.chunks(self.cols)
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.rows().map(<[Rational]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let data = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Builds the matrix made of the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                if j >= self.cols {
                    return Err(Error::IndexOutOfRange {
                        index: j,
                        size: self.cols,
                    });
                }
                data.push(self.get(i, j).clone());
            }
        }
        Matrix::new(self.rows, cols.len(), data)
    }

    /// Builds the matrix made of the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            if i >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    size: self.rows,
                });
            }
            data.extend_from_slice(self.row(i));
        }
        Matrix::new(rows.len(), self.cols, data)
    }

    /// Rows indexed by `subset`, in ascending order; columns unchanged.
    pub fn restrict_rows(&self, subset: &RowSubset) -> Result<Matrix> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&last) = subset.indices().last() {
            if last >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: last,
                    size: self.rows,
                });
            }
        }
        self.select_rows(subset.indices())
    }

    /// `result[i][j] = self[row_perm(i)][col_perm(j)]`.
    pub fn permute(&self, row_perm: &Permutation, col_perm: &Permutation) -> Result<Matrix> {
        if row_perm.len() != self.rows || col_perm.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "permutations of sizes {}x{} for a {}x{} matrix",
                row_perm.len(),
                col_perm.len(),
                self.rows,
                self.cols
            )));
        }
        let data = row_perm
            .as_slice()
            .iter()
            .flat_map(|&i| col_perm.as_slice().iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Stacks `other` under `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::new(self.rows + other.rows, self.cols, data)
    }

    /// Appends a row at the bottom.
    pub fn push_row(&self, row: &[Rational]) -> Result<Matrix> {
        self.vstack(&Matrix::new(1, row.len(), row.to_vec())?)
    }

    /// Keeps the first occurrence of every distinct row. The returned mapping
    /// sends each original row to the index of its kept copy.
    pub fn dedupe_rows(&self) -> (Matrix, Vec<usize>) {
        let mut seen: HashMap<&[Rational], usize> = HashMap::new();
        let mut kept = Vec::new();
        let mut mapping = Vec::with_capacity(self.rows);
        for (i, row) in self.rows().enumerate() {
            let next = kept.len();
            let idx = *seen.entry(row).or_insert_with(|| {
                kept.push(i);
                next
            });
            mapping.push(idx);
        }
        let deduped = self.select_rows(&kept).expect("kept rows are in range");
        (deduped, mapping)
    }

    pub fn is_zero_one(&self) -> bool {
        self.data.iter().all(is_zero_one)
    }

    /// True when every entry of row `i` is 0 or 1 and both values occur.
    pub fn is_split_row(&self, i: usize) -> bool {
        let row = self.row(i);
        row.iter().all(is_zero_one)
            && row.iter().any(Zero::is_zero)
            && row.iter().any(One::is_one)
    }

    /// Per-row dense value identifiers: `ids[i][j] == ids[i][k]` iff the two
    /// entries of row `i` are equal. Returns the ids and the number of distinct
    /// values per row.
    pub fn row_value_ids(&self) -> (Vec<Vec<u32>>, Vec<u32>) {
        let mut ids = Vec::with_capacity(self.rows);
        let mut counts = Vec::with_capacity(self.rows);
        for row in self.rows() {
            let mut map: HashMap<&Rational, u32> = HashMap::new();
            let row_ids: Vec<u32> = row
                .iter()
                .map(|v| {
                    let next = map.len() as u32;
                    *map.entry(v).or_insert(next)
                })
                .collect();
            counts.push(map.len() as u32);
            ids.push(row_ids);
        }
        (ids, counts)
    }

    /// Parses the text format described in the module docs.
    pub fn parse(text: &str) -> Result<Matrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let parse_dim = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: hline,
                msg: format!("bad dimension {s:?}"),
            })
        };
        if dims.len() != 2 {
            return Err(Error::Parse {
                line: hline,
                msg: "header must be \"m n\"".into(),
            });
        }
        let (m, n) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
        if m == 0 || n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(m * n);
        let mut seen_rows = 0;
        for (line, text) in lines {
            if seen_rows == m {
                return Err(Error::DimensionMismatch(format!(
                    "more than {m} rows (line {line})"
                )));
            }
            let before = data.len();
            for token in text.split_whitespace() {
                data.push(parse_rational(token).map_err(|msg| Error::Parse { line, msg })?);
            }
            if data.len() - before != n {
                return Err(Error::DimensionMismatch(format!(
                    "line {line} has {} entries, expected {n}",
                    data.len() - before
                )));
            }
            seen_rows += 1;
        }
        if seen_rows != m {
            return Err(Error::DimensionMismatch(format!(
                "found {seen_rows} rows, expected {m}"
            )));
        }
        Matrix::new(m, n, data)
    }
}

impl fmt::Display for Matrix {
    /// Writes the text format; `Matrix::parse` inverts it exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .rows()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        f.debug_struct("Matrix").field("rows", &rows).finish()
    }
}

impl FromStr for Matrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Matrix::parse(s)
    }
}

/// Entrywise `1 - r` of a 0/1 row.
pub fn complement_row(row: &[Rational]) -> Result<Vec<Rational>> {
    row.iter()
        .enumerate()
        .map(|(j, v)| {
            if is_zero_one(v) {
                Ok(Rational::one() - v)
            } else {
                Err(Error::NotZeroOne(j))
            }
        })
        .collect()
}

/// Sorted set of distinct row indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RowSubset(Vec<usize>);

impl RowSubset {
    /// Validates and sorts `indices` against a host with `m` rows.
    pub fn new(mut indices: Vec<usize>, m: usize) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DimensionMismatch("duplicate row index".into()));
        }
        if let Some(&last) = indices.last() {
            if last >= m {
                return Err(Error::IndexOutOfRange {
                    index: last,
                    size: m,
                });
            }
        }
        Ok(RowSubset(indices))
    }

    /// Builds a subset from indices already known to be distinct.
    pub fn from_sorted(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        RowSubset(indices)
    }

    pub fn full(m: usize) -> Self {
        RowSubset((0..m).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// `[m] \ self`.
    pub fn complement(&self, m: usize) -> RowSubset {
        RowSubset((0..m).filter(|i| !self.contains(*i)).collect())
    }
}

/// Bijection on `0..k`, stored as its value array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let k = values.len();
        let mut seen = vec![false; k];
        for &v in &values {
            if v >= k || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(k));
            }
        }
        Ok(Permutation(values))
    }

    pub fn identity(k: usize) -> Self {
        Permutation((0..k).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Permutation(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let m = Matrix::parse("2 2\n1 0\n0 0").unwrap();
        assert_eq!(m, Matrix::from_ints(&[[1, 0], [0, 0]]).unwrap());
        assert_eq!(Matrix::parse("1 1\n7").unwrap(), Matrix::from_ints(&[[7]]).unwrap());
        let m = Matrix::parse("1 2\n1/3 0.5").unwrap();
        assert_eq!(m.get(0, 0), &ratio(1, 3));
        assert_eq!(m.get(0, 1), &ratio(1, 2));
    }

    #[test]
    fn parse_decimals_exactly() {
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), ratio(-1, 8));
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Matrix::parse("2 2\n1 0\n0"), Err(Error::DimensionMismatch(_))));
        assert!(matches!(Matrix::parse("2 2\n1 0"), Err(Error::DimensionMismatch(_))));
        assert!(matches!(Matrix::parse("0 2\n"), Err(Error::EmptyMatrix)));
        assert!(matches!(Matrix::parse("1 1\nx"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Matrix::parse(""), Err(Error::Parse { .. })));
        assert!(matches!(Matrix::parse("1 1 1\n1"), Err(Error::Parse { .. })));
    }

    #[test]
    fn writer_format() {
        let m = Matrix::parse("1 3\n2 1/3 -0.5").unwrap();
        assert_eq!(m.to_string(), "1 3\n2 1/3 -1/2\n");
        assert_eq!(Matrix::parse(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn restrict_rows_examples() {
        let s = Matrix::from_ints(&[[1, 0], [2, 3]]).unwrap();
        let x = RowSubset::new(vec![0], 2).unwrap();
        assert_eq!(s.restrict_rows(&x).unwrap(), Matrix::from_ints(&[[1, 0]]).unwrap());
        assert_eq!(s.restrict_rows(&RowSubset::full(2)).unwrap(), s);
        assert_eq!(s.restrict_rows(&RowSubset::default()), Err(Error::EmptySubset));
    }

    #[test]
    fn permute_examples() {
        let s = Matrix::from_ints(&[[1, 2, 3], [4, 5, 6]]).unwrap();
        let id_r = Permutation::identity(2);
        let id_c = Permutation::identity(3);
        assert_eq!(s.permute(&id_r, &id_c).unwrap(), s);
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let once = s.permute(&swap, &id_c).unwrap();
        assert_eq!(once, Matrix::from_ints(&[[4, 5, 6], [1, 2, 3]]).unwrap());
        assert_eq!(once.permute(&swap, &id_c).unwrap(), s);
        let cp = Permutation::new(vec![2, 0, 1]).unwrap();
        let p = s.permute(&swap, &cp).unwrap();
        assert_eq!(p.get(0, 0), s.get(1, 2));
        assert_eq!(p.permute(&swap.inverse(), &cp.inverse()).unwrap(), s);
        assert!(s.permute(&id_c, &id_c).is_err());
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::new(vec![1, 0]).is_ok());
    }

    #[test]
    fn dedupe_examples() {
        let s = Matrix::from_ints(&[[1, 0], [1, 0], [0, 1]]).unwrap();
        let (d, map) = s.dedupe_rows();
        assert_eq!(d, Matrix::from_ints(&[[1, 0], [0, 1]]).unwrap());
        assert_eq!(map, vec![0, 0, 1]);
        let distinct = Matrix::from_ints(&[[1, 2], [3, 4]]).unwrap();
        assert_eq!(distinct.dedupe_rows().0, distinct);
        let same = Matrix::from_ints(&[[5, 5], [5, 5], [5, 5]]).unwrap();
        assert_eq!(same.dedupe_rows().0, Matrix::from_ints(&[[5, 5]]).unwrap());
    }

    #[test]
    fn complement_examples() {
        let r: Vec<Rational> = [0, 1, 1].iter().map(|&v| int(v)).collect();
        let c = complement_row(&r).unwrap();
        assert_eq!(c, vec![int(1), int(0), int(0)]);
        assert_eq!(complement_row(&c).unwrap(), r);
        let zeros = vec![int(0); 4];
        assert_eq!(complement_row(&zeros).unwrap(), vec![int(1); 4]);
        assert_eq!(complement_row(&[int(0), int(2)]), Err(Error::NotZeroOne(1)));
    }

    #[test]
    fn row_subset_complement() {
        let x = RowSubset::new(vec![3, 0], 5).unwrap();
        assert_eq!(x.indices(), &[0, 3]);
        assert_eq!(x.complement(5).indices(), &[1, 2, 4]);
        assert!(RowSubset::new(vec![5], 5).is_err());
        assert!(RowSubset::new(vec![1, 1], 5).is_err());
    }
}
