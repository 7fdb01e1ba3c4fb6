//! Slack matrices of polytopes given by explicit vertex and inequality
//! lists, and their Cartesian-product decomposition.
//!
//! For vertices `v_j` and inequalities `a_i x <= b_i` the slack matrix is
//! `S[i][j] = b_i - a_i v_j`. A polytope is affinely a Cartesian product
//! `P1 x P2` exactly when its slack matrix is a 1-product, and then the
//! factors are slack matrices of `P1` and `P2`. Whether a given matrix is a
//! slack matrix at all is not checked here; callers vouch for that.
//!
//! File formats: vertices are `n d` followed by `n` rows of `d` coordinates;
//! inequalities are `m d` followed by `m` rows `a_1 .. a_d b`.

use std::collections::HashSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{parse_rational, Matrix, Rational};
use crate::product::{factorize_irreducible, Factorization};

/// Points `conv(points)` in dimension `dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VRep {
    dim: usize,
    points: Vec<Vec<Rational>>,
}

impl VRep {
    pub fn new(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, expected {dim}",
                p.len()
            )));
        }
        Ok(VRep { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (dim, rows) = parse_table(text, 0)?;
        VRep::new(dim, rows)
    }
}

/// Inequalities `a_i x <= b_i` in dimension `dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRep {
    dim: usize,
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
}

impl HRep {
    pub fn new(dim: usize, a: Vec<Vec<Rational>>, b: Vec<Rational>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficient rows but {} right-hand sides",
                a.len(),
                b.len()
            )));
        }
        if let Some(row) = a.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "inequality has {} coefficients, expected {dim}",
                row.len()
            )));
        }
        Ok(HRep { dim, a, b })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (dim, rows) = parse_table(text, 1)?;
        let (a, b) = rows
            .into_iter()
            .map(|mut r| {
                let b = r.pop().expect("row has d + 1 entries");
                (r, b)
            })
            .unzip();
        HRep::new(dim, a, b)
    }
}

/// Parses `count d` and `count` rows of `d + extra` rationals.
fn parse_table(text: &str, extra: usize) -> Result<(usize, Vec<Vec<Rational>>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse {
            line: hline,
            msg: "bad header".into(),
        })?;
    let [count, dim] = dims[..] else {
        return Err(Error::Parse {
            line: hline,
            msg: "header must have two numbers".into(),
        });
    };
    let mut rows = Vec::with_capacity(count);
    for (line, text) in lines {
        let row: Vec<Rational> = text
            .split_whitespace()
            .map(|t| parse_rational(t).map_err(|msg| Error::Parse { line, msg }))
            .collect::<Result<_>>()?;
        if row.len() != dim + extra {
            return Err(Error::DimensionMismatch(format!(
                "line {line} has {} entries, expected {}",
                row.len(),
                dim + extra
            )));
        }
        rows.push(row);
    }
    if rows.len() != count {
        return Err(Error::DimensionMismatch(format!(
            "found {} rows, expected {count}",
            rows.len()
        )));
    }
    Ok((dim, rows))
}

/// `S[i][j] = b_i - a_i v_j`, rows indexed by inequalities and columns by
/// points. Fails if some point violates some inequality.
pub fn slack_from_vh(v: &VRep, h: &HRep) -> Result<Matrix> {
    if v.dim != h.dim {
        return Err(Error::DimensionMismatch(format!(
            "points live in dimension {}, inequalities in {}",
            v.dim, h.dim
        )));
    }
    let mut data = Vec::with_capacity(h.len() * v.points.len());
    for (i, (a, b)) in h.a.iter().zip(&h.b).enumerate() {
        for (j, p) in v.points.iter().enumerate() {
            let dot: Rational = a.iter().zip(p).map(|(x, y)| x * y).sum();
            let slack = b - dot;
            if slack.is_negative() {
                return Err(Error::NegativeSlack {
                    point: j,
                    inequality: i,
                    value: slack.to_string(),
                });
            }
            data.push(slack);
        }
    }
    Matrix::new(h.len(), v.points.len(), data)
}

/// Splits a slack matrix into the slack matrices of its Cartesian factors.
/// Each factor of the returned factorization is the slack matrix of one
/// irreducible factor polytope, with its facets given by the block's rows.
pub fn cartesian_factorize(s: &Matrix) -> Factorization {
    factorize_irreducible(s)
}

/// Rows whose entries take exactly the two values `0` and `s > 0`, scaled by
/// `1 / s` to 0/1.
pub fn two_level_rows(s: &Matrix) -> Vec<(usize, Vec<Rational>)> {
    let mut out = Vec::new();
    for (i, row) in s.rows().enumerate() {
        let mut positive: Option<&Rational> = None;
        let mut has_zero = false;
        let mut ok = true;
        for v in row {
            if v.is_zero() {
                has_zero = true;
            } else if !v.is_positive() || positive.is_some_and(|p| p != v) {
                ok = false;
                break;
            } else {
                positive = Some(v);
            }
        }
        if let (true, true, Some(p)) = (ok, has_zero, positive) {
            out.push((i, row.iter().map(|v| v / p).collect()));
        }
    }
    out
}

fn redundant_lines(lines: &[Vec<&Rational>]) -> Vec<bool> {
    let mut seen = HashSet::new();
    lines
        .iter()
        .map(|line| {
            let all_zero = line.iter().all(|v| v.is_zero());
            let no_zero = line.iter().all(|v| !v.is_zero());
            all_zero || no_zero || !seen.insert(line.clone())
        })
        .collect()
}

/// Normalization that also reports which rows and columns of `s` survive.
pub fn normalize_with_indices(s: &Matrix) -> Result<(Matrix, Vec<usize>, Vec<usize>)> {
    let mut rows: Vec<usize> = (0..s.nrows()).collect();
    let mut cols: Vec<usize> = (0..s.ncols()).collect();
    loop {
        let row_lines: Vec<Vec<&Rational>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| s.get(i, j)).collect())
            .collect();
        let drop_rows = redundant_lines(&row_lines);
        let kept_rows: Vec<usize> = rows
            .iter()
            .zip(&drop_rows)
            .filter(|(_, d)| !**d)
            .map(|(&i, _)| i)
            .collect();

        let col_lines: Vec<Vec<&Rational>> = cols
            .iter()
            .map(|&j| kept_rows.iter().map(|&i| s.get(i, j)).collect())
            .collect();
        let drop_cols = redundant_lines(&col_lines);
        let kept_cols: Vec<usize> = cols
            .iter()
            .zip(&drop_cols)
            .filter(|(_, d)| !**d)
            .map(|(&j, _)| j)
            .collect();

        let stable = kept_rows.len() == rows.len() && kept_cols.len() == cols.len();
        rows = kept_rows;
        cols = kept_cols;
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::Degenerate);
        }
        if stable {
            break;
        }
    }
    let out = s.select_rows(&rows)?.select_columns(&cols)?;
    Ok((out, rows, cols))
}

/// Removes duplicate rows and columns and those that are all zero or have no
/// zero entry, repeating until nothing changes. First occurrences are kept.
pub fn normalize_nonredundant(s: &Matrix) -> Result<Matrix> {
    normalize_with_indices(s).map(|(m, ..)| m)
}

/// Drops the rows whose zero set is strictly contained in the zero set of
/// another row. When the rows include every facet, the survivors are exactly
/// the facet rows, since the vertex set of a lower-dimensional face sits
/// strictly inside that of a facet. Returns the kept row indices.
pub fn facet_rows(s: &Matrix) -> Vec<usize> {
    let zeros: Vec<Vec<bool>> = s
        .rows()
        .map(|row| row.iter().map(Zero::is_zero).collect())
        .collect();
    let inside = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(x, y)| !x || *y);
    (0..s.nrows())
        .filter(|&i| {
            !zeros
                .iter()
                .any(|z| z != &zeros[i] && inside(&zeros[i], z))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    fn segment() -> (VRep, HRep) {
        let v = VRep::parse("2 1\n0\n1\n").unwrap();
        let h = HRep::parse("2 1\n-1 0\n1 1\n").unwrap();
        (v, h)
    }

    #[test]
    fn segment_slack() {
        let (v, h) = segment();
        assert_eq!(
            slack_from_vh(&v, &h).unwrap(),
            Matrix::from_ints(&[[0, 1], [1, 0]]).unwrap()
        );
    }

    #[test]
    fn square_is_product_of_segments() {
        let v = VRep::parse("4 2\n0 0\n1 0\n0 1\n1 1\n").unwrap();
        let h = HRep::parse("4 2\n-1 0 0\n1 0 1\n0 -1 0\n0 1 1\n").unwrap();
        let s = slack_from_vh(&v, &h).unwrap();
        let fact = cartesian_factorize(&s);
        assert_eq!(fact.len(), 2);
        let seg = Matrix::from_ints(&[[0, 1], [1, 0]]).unwrap();
        for f in &fact.factors {
            assert!(crate::iso::is_isomorphic(f, &seg).is_some());
        }
    }

    #[test]
    fn violated_inequality() {
        let v = VRep::parse("1 1\n2\n").unwrap();
        let (_, h) = segment();
        assert!(matches!(
            slack_from_vh(&v, &h),
            Err(Error::NegativeSlack { point: 0, inequality: 1, .. })
        ));
    }

    #[test]
    fn triangle_is_irreducible() {
        let s = Matrix::from_ints(&[[0, 1, 1], [1, 0, 1], [1, 1, 0]]).unwrap();
        assert_eq!(cartesian_factorize(&s).len(), 1);
    }

    #[test]
    fn two_level_examples() {
        let s = Matrix::from_ints(&[[0, 3, 3, 0], [1, 2, 1, 2], [0, 1, 1, 1], [5, 5, 5, 5]])
            .unwrap();
        let rows = two_level_rows(&s);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0], (0, vec![int(0), int(1), int(1), int(0)]));
        assert_eq!(rows[1].0, 2);
    }

    #[test]
    fn normalize_examples() {
        let s = Matrix::from_ints(&[[1, 0], [1, 0], [0, 1]]).unwrap();
        let n = normalize_nonredundant(&s).unwrap();
        assert_eq!(n, Matrix::identity(2).unwrap());
        assert_eq!(normalize_nonredundant(&n).unwrap(), n);
        let ones = Matrix::from_ints(&[[1, 1], [1, 1]]).unwrap();
        let extra = Matrix::from_ints(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]]).unwrap();
        assert_eq!(facet_rows(&extra), vec![0, 1, 2]);
        assert_eq!(facet_rows(&Matrix::identity(3).unwrap()), vec![0, 1, 2]);
        assert_eq!(normalize_nonredundant(&ones), Err(Error::Degenerate));
    }

    #[test]
    fn parse_errors() {
        assert!(VRep::parse("2 2\n0 0\n").is_err());
        assert!(HRep::parse("1 2\n1 2\n").is_err());
        assert!(HRep::parse("1 x\n1 2 3\n").is_err());
    }
}
