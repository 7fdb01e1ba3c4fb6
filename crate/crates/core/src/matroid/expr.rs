//! Expression trees over uniform matroids with 1-sum and 2-sum nodes.
//!
//! Text format (s-expressions):
//!
//! ```text
//! (u d k)              U_{d,k} with automatically assigned labels
//! (u d k l1 .. ld)     U_{d,k} on the given labels
//! (1sum e1 e2 ...)     1-sum of two or more expressions
//! (2sum e1 e2)         2-sum; the children share exactly one label
//! ```
//!
//! Labels are either given on every leaf or on none. Automatic labeling
//! numbers the leaf elements left to right from 0; in a 2-sum the smallest
//! label of the right child is then renamed to the largest label of the left
//! child, and that shared label is the glue element.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::One;

use super::{
    hypersimplex_columns, hypersimplex_slack, one_sum, two_sum, uniform_bases, Element, Matroid,
};
use crate::error::{Error, Result};
use crate::matrix::{int, Matrix, Rational};
use crate::polytope::{facet_rows, normalize_with_indices};
use crate::product::one_product;
use crate::two_product::two_product;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidExpr {
    /// `U_{d,k}`; `labels[e]` names element `e`.
    Leaf {
        d: usize,
        k: usize,
        labels: Vec<Element>,
    },
    OneSum(Vec<MatroidExpr>),
    TwoSum {
        left: Box<MatroidExpr>,
        right: Box<MatroidExpr>,
        glue: Element,
    },
}

impl MatroidExpr {
    /// `U_{d,k}` on the labels `0..d`.
    pub fn uniform(d: usize, k: usize) -> MatroidExpr {
        MatroidExpr::Leaf {
            d,
            k,
            labels: (0..d as Element).collect(),
        }
    }

    /// 1-sum of the children, automatically relabeled.
    pub fn one_sum(children: Vec<MatroidExpr>) -> MatroidExpr {
        MatroidExpr::OneSum(children).auto_labeled()
    }

    /// 2-sum of two expressions, automatically relabeled.
    pub fn two_sum(left: MatroidExpr, right: MatroidExpr) -> MatroidExpr {
        MatroidExpr::TwoSum {
            left: Box::new(left),
            right: Box::new(right),
            glue: 0,
        }
        .auto_labeled()
    }

    /// The same tree with labels assigned as described in the module docs.
    pub fn auto_labeled(&self) -> MatroidExpr {
        let mut next = 0;
        self.relabel(&mut next)
    }

    fn relabel(&self, next: &mut Element) -> MatroidExpr {
        match self {
            MatroidExpr::Leaf { d, k, .. } => {
                let labels = (*next..*next + *d as Element).collect();
                *next += *d as Element;
                MatroidExpr::Leaf {
                    d: *d,
                    k: *k,
                    labels,
                }
            }
            MatroidExpr::OneSum(children) => {
                MatroidExpr::OneSum(children.iter().map(|c| c.relabel(next)).collect())
            }
            MatroidExpr::TwoSum { left, right, .. } => {
                let left = left.relabel(next);
                let right = right.relabel(next);
                let glue = left.ground().last().copied().unwrap_or(0);
                let old = right.ground().first().copied().unwrap_or(0);
                MatroidExpr::TwoSum {
                    left: Box::new(left),
                    right: Box::new(right.rename(old, glue)),
                    glue,
                }
            }
        }
    }

    fn rename(&self, from: Element, to: Element) -> MatroidExpr {
        let swap = |e: Element| if e == from { to } else { e };
        match self {
            MatroidExpr::Leaf { d, k, labels } => MatroidExpr::Leaf {
                d: *d,
                k: *k,
                labels: labels.iter().map(|&e| swap(e)).collect(),
            },
            MatroidExpr::OneSum(children) => {
                MatroidExpr::OneSum(children.iter().map(|c| c.rename(from, to)).collect())
            }
            MatroidExpr::TwoSum { left, right, glue } => MatroidExpr::TwoSum {
                left: Box::new(left.rename(from, to)),
                right: Box::new(right.rename(from, to)),
                glue: swap(*glue),
            },
        }
    }

    /// Ground set of the matroid the expression denotes, sorted.
    pub fn ground(&self) -> Vec<Element> {
        let set: BTreeSet<Element> = match self {
            MatroidExpr::Leaf { labels, .. } => labels.iter().copied().collect(),
            MatroidExpr::OneSum(children) => children.iter().flat_map(|c| c.ground()).collect(),
            MatroidExpr::TwoSum { left, right, glue } => left
                .ground()
                .into_iter()
                .chain(right.ground())
                .filter(|e| e != glue)
                .collect(),
        };
        set.into_iter().collect()
    }

    /// Every label used anywhere in the tree, glue elements included.
    fn all_labels(&self) -> Vec<Element> {
        match self {
            MatroidExpr::Leaf { labels, .. } => labels.clone(),
            MatroidExpr::OneSum(children) => children.iter().flat_map(|c| c.all_labels()).collect(),
            MatroidExpr::TwoSum { left, right, .. } => {
                let mut all = left.all_labels();
                all.extend(right.all_labels());
                all
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            MatroidExpr::Leaf { .. } => 1,
            MatroidExpr::OneSum(children) => children.iter().map(|c| c.leaf_count()).sum(),
            MatroidExpr::TwoSum { left, right, .. } => left.leaf_count() + right.leaf_count(),
        }
    }

    /// Checks leaf parameters and label sharing: leaves need `d >= 2`,
    /// `1 <= k <= d - 1` and `d` distinct labels; 1-sum children share no
    /// label; 2-sum children share exactly their glue, which lies in both
    /// ground sets.
    pub fn validate(&self) -> Result<()> {
        match self {
            MatroidExpr::Leaf { d, k, labels } => {
                if *d < 2 || *k == 0 || *k >= *d {
                    return Err(Error::Expr(format!("leaf U({d},{k}) needs d >= 2 and 0 < k < d")));
                }
                let distinct: BTreeSet<_> = labels.iter().collect();
                if labels.len() != *d || distinct.len() != *d {
                    return Err(Error::Expr(format!("leaf U({d},{k}) needs {d} distinct labels")));
                }
            }
            MatroidExpr::OneSum(children) => {
                if children.len() < 2 {
                    return Err(Error::Expr("1sum needs at least two children".into()));
                }
                let mut seen = BTreeSet::new();
                for c in children {
                    c.validate()?;
                    let own: BTreeSet<Element> = c.all_labels().into_iter().collect();
                    for e in own {
                        if !seen.insert(e) {
                            return Err(Error::Expr(format!("label {e} used in two 1sum children")));
                        }
                    }
                }
            }
            MatroidExpr::TwoSum { left, right, glue } => {
                left.validate()?;
                right.validate()?;
                let l: BTreeSet<_> = left.all_labels().into_iter().collect();
                let r: BTreeSet<_> = right.all_labels().into_iter().collect();
                let shared: Vec<Element> = l.intersection(&r).copied().collect();
                if shared != [*glue]
                    || !left.ground().contains(glue)
                    || !right.ground().contains(glue)
                {
                    return Err(Error::Expr(format!(
                        "2sum children must share exactly the glue {glue}, they share {shared:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn write_compact(&self, f: &mut fmt::Formatter<'_>, explicit: bool) -> fmt::Result {
        match self {
            MatroidExpr::Leaf { d, k, labels } => {
                write!(f, "(u {d} {k}")?;
                if explicit {
                    for l in labels {
                        write!(f, " {l}")?;
                    }
                }
                write!(f, ")")
            }
            MatroidExpr::OneSum(children) => {
                write!(f, "(1sum")?;
                for c in children {
                    write!(f, " ")?;
                    c.write_compact(f, explicit)?;
                }
                write!(f, ")")
            }
            MatroidExpr::TwoSum { left, right, .. } => {
                write!(f, "(2sum ")?;
                left.write_compact(f, explicit)?;
                write!(f, " ")?;
                right.write_compact(f, explicit)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for MatroidExpr {
    /// Omits labels when they coincide with the automatic labeling.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let explicit = *self != self.auto_labeled();
        self.write_compact(f, explicit)
    }
}

enum Token {
    Open,
    Close,
    Atom(String),
}

fn tokenize(text: &str) -> Vec<Token> {
    let spaced = text.replace('(', " ( ").replace(')', " ) ");
    spaced
        .split_whitespace()
        .map(|t| match t {
            "(" => Token::Open,
            ")" => Token::Close,
            other => Token::Atom(other.to_string()),
        })
        .collect()
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    explicit_leaves: usize,
    leaves: usize,
}

impl Parser {
    fn atom(&mut self) -> Result<String> {
        match self.tokens.get(self.pos) {
            Some(Token::Atom(a)) => {
                self.pos += 1;
                Ok(a.clone())
            }
            _ => Err(Error::Expr(format!("expected a word at token {}", self.pos))),
        }
    }

    fn number<T: FromStr>(&mut self) -> Result<T> {
        let a = self.atom()?;
        a.parse()
            .map_err(|_| Error::Expr(format!("expected a number, found {a:?}")))
    }

    fn at_close(&self) -> bool {
        matches!(self.tokens.get(self.pos), Some(Token::Close))
    }

    fn expr(&mut self) -> Result<MatroidExpr> {
        if !matches!(self.tokens.get(self.pos), Some(Token::Open)) {
            return Err(Error::Expr(format!("expected '(' at token {}", self.pos)));
        }
        self.pos += 1;
        let head = self.atom()?;
        let out = match head.as_str() {
            "u" => {
                let d: usize = self.number()?;
                let k: usize = self.number()?;
                let mut labels = Vec::new();
                while !self.at_close() {
                    labels.push(self.number()?);
                }
                self.leaves += 1;
                if labels.is_empty() {
                    labels = (0..d as Element).collect();
                } else {
                    self.explicit_leaves += 1;
                }
                MatroidExpr::Leaf { d, k, labels }
            }
            "1sum" => {
                let mut children = Vec::new();
                while !self.at_close() {
                    children.push(self.expr()?);
                }
                MatroidExpr::OneSum(children)
            }
            "2sum" => {
                let left = self.expr()?;
                let right = self.expr()?;
                let l = left.ground();
                let shared: Vec<Element> =
                    right.ground().into_iter().filter(|e| l.contains(e)).collect();
                MatroidExpr::TwoSum {
                    left: Box::new(left),
                    right: Box::new(right),
                    glue: shared.first().copied().unwrap_or(0),
                }
            }
            other => return Err(Error::Expr(format!("unknown operator {other:?}"))),
        };
        if !self.at_close() {
            return Err(Error::Expr(format!("expected ')' at token {}", self.pos)));
        }
        self.pos += 1;
        Ok(out)
    }
}

impl FromStr for MatroidExpr {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut parser = Parser {
            tokens: tokenize(text),
            pos: 0,
            explicit_leaves: 0,
            leaves: 0,
        };
        let expr = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Expr("trailing input after expression".into()));
        }
        let expr = match parser.explicit_leaves {
            0 => expr.auto_labeled(),
            n if n == parser.leaves => expr,
            _ => return Err(Error::Expr("give labels on every leaf or on none".into())),
        };
        expr.validate()?;
        Ok(expr)
    }
}

/// The matroid denoted by the expression, evaluated bottom-up.
pub fn expr_to_bases(e: &MatroidExpr) -> Result<Matroid> {
    e.validate()?;
    bases_rec(e)
}

fn bases_rec(e: &MatroidExpr) -> Result<Matroid> {
    match e {
        MatroidExpr::Leaf { d, k, labels } => {
            uniform_bases(*d, *k)?.relabel(|x| labels[x as usize])
        }
        MatroidExpr::OneSum(children) => {
            let mut acc = bases_rec(&children[0])?;
            for c in &children[1..] {
                acc = one_sum(&acc, &bases_rec(c)?)?;
            }
            Ok(acc)
        }
        MatroidExpr::TwoSum { left, right, glue } => {
            two_sum(&bases_rec(left)?, &bases_rec(right)?, *glue)
        }
    }
}

/// Non-redundant slack matrix of the base polytope of the matroid denoted
/// by `e`.
pub fn expr_to_slack(e: &MatroidExpr) -> Result<Matrix> {
    expr_to_slack_with_bases(e).map(|(s, _)| s)
}

/// Like [`expr_to_slack`], also returning the base (sorted labels) that
/// each column is the vertex of.
///
/// Leaves are hypersimplex slack matrices and 1-sums are 1-products. A
/// 2-sum along `p` is the 2-product of the children along a coherent pair of
/// special rows: the row of `x_p >= 0` in one child and the row of
/// `x_p <= 1` in the other. The left child supplies `x_p >= 0` and the right
/// child `x_p <= 1`; an identity leaf keeps only one of the two, so a missing
/// row is added as a valid inequality. Every internal node is normalized and
/// stripped of rows that are not facets.
pub fn expr_to_slack_with_bases(e: &MatroidExpr) -> Result<(Matrix, Vec<Vec<Element>>)> {
    e.validate()?;
    slack_rec(e)
}

/// Row of `x_p >= 0` (`inside`) or of `x_p <= 1` in `s`, found by value.
/// A missing row is appended; it is a valid inequality that the final
/// facet filter removes if it is not a facet.
fn coherent_row(s: Matrix, bases: &[Vec<Element>], p: Element, inside: bool) -> Result<(Matrix, usize)> {
    let row: Vec<Rational> = bases
        .iter()
        .map(|b| int(i64::from(b.binary_search(&p).is_ok() == inside)))
        .collect();
    if let Some(i) = (0..s.nrows()).find(|&i| s.row(i) == row.as_slice()) {
        return Ok((s, i));
    }
    if row.iter().all(|v| v == &row[0]) {
        return Err(Error::MissingCoherentRow(p));
    }
    let i = s.nrows();
    Ok((s.push_row(&row)?, i))
}

/// Normalizes and drops rows that are valid but not facets; a 2-sum can
/// produce such rows, e.g. `x_e >= 0` when a side is `U_{2,1}`.
fn normalized(s: Matrix, bases: Vec<Vec<Element>>) -> Result<(Matrix, Vec<Vec<Element>>)> {
    let (s, _, cols) = normalize_with_indices(&s)?;
    let bases: Vec<Vec<Element>> = cols.into_iter().map(|j| bases[j].clone()).collect();
    let s = s.select_rows(&facet_rows(&s))?;
    let (s, _, cols) = normalize_with_indices(&s)?;
    let bases = cols.into_iter().map(|j| bases[j].clone()).collect();
    Ok((s, bases))
}

fn slack_rec(e: &MatroidExpr) -> Result<(Matrix, Vec<Vec<Element>>)> {
    match e {
        MatroidExpr::Leaf { d, k, labels } => {
            let s = hypersimplex_slack(*d, *k)?;
            let bases = hypersimplex_columns(*d, *k)?
                .into_iter()
                .map(|b| {
                    let mut b: Vec<Element> = b.into_iter().map(|x| labels[x]).collect();
                    b.sort_unstable();
                    b
                })
                .collect();
            Ok((s, bases))
        }
        MatroidExpr::OneSum(children) => {
            let (mut s, mut bases) = slack_rec(&children[0])?;
            for c in &children[1..] {
                let (s2, b2) = slack_rec(c)?;
                s = one_product(&s, &s2)?;
                let mut combined = Vec::with_capacity(bases.len() * b2.len());
                for b1 in &bases {
                    for b in &b2 {
                        let mut u: Vec<Element> = b1.iter().chain(b).copied().collect();
                        u.sort_unstable();
                        combined.push(u);
                    }
                }
                bases = combined;
            }
            normalized(s, bases)
        }
        MatroidExpr::TwoSum { left, right, glue } => {
            let p = *glue;
            let (sl, bl) = slack_rec(left)?;
            let (sr, br) = slack_rec(right)?;
            let (sl, x) = coherent_row(sl, &bl, p, true)?;
            let (sr, y) = coherent_row(sr, &br, p, false)?;
            let s = two_product(&sl, x, &sr, y)?;

            let mut bases = Vec::with_capacity(s.ncols());
            for bit in [false, true] {
                let lcols = (0..sl.ncols()).filter(|&j| sl.get(x, j).is_one() == bit);
                for j in lcols {
                    for l in (0..sr.ncols()).filter(|&l| sr.get(y, l).is_one() == bit) {
                        let mut u: Vec<Element> = bl[j]
                            .iter()
                            .chain(&br[l])
                            .copied()
                            .filter(|&q| q != p)
                            .collect();
                        u.sort_unstable();
                        bases.push(u);
                    }
                }
            }
            normalized(s, bases)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;

    fn parse(s: &str) -> MatroidExpr {
        s.parse().unwrap()
    }

    #[test]
    fn auto_labels() {
        let e = parse("(2sum (u 2 1) (u 2 1))");
        assert_eq!(
            e,
            MatroidExpr::TwoSum {
                left: Box::new(MatroidExpr::Leaf { d: 2, k: 1, labels: vec![0, 1] }),
                right: Box::new(MatroidExpr::Leaf { d: 2, k: 1, labels: vec![1, 3] }),
                glue: 1,
            }
        );
        assert_eq!(e.ground(), vec![0, 3]);
        assert_eq!(e.to_string(), "(2sum (u 2 1) (u 2 1))");
    }

    #[test]
    fn explicit_labels_round_trip() {
        let e = parse("(2sum (u 3 1 7 8 9) (u 4 2 9 10 11 12))");
        assert_eq!(e.to_string(), "(2sum (u 3 1 7 8 9) (u 4 2 9 10 11 12))");
        assert_eq!(parse(&e.to_string()), e);
        assert!("(2sum (u 3 1 7 8 9) (u 4 2))".parse::<MatroidExpr>().is_err());
        assert!("(2sum (u 2 1 0 1) (u 2 1 2 3))".parse::<MatroidExpr>().is_err());
        assert!("(u 3 0)".parse::<MatroidExpr>().is_err());
        assert!("(1sum (u 2 1))".parse::<MatroidExpr>().is_err());
        assert!("(u 2 1) x".parse::<MatroidExpr>().is_err());
    }

    #[test]
    fn bases_examples() {
        assert_eq!(expr_to_bases(&parse("(u 3 1)")).unwrap().bases().len(), 3);
        let m = expr_to_bases(&parse("(2sum (u 2 1) (u 2 1))")).unwrap();
        assert_eq!(m, uniform_bases(2, 1).unwrap().relabel(|e| [0, 3][e as usize]).unwrap());
    }

    #[test]
    fn slack_examples() {
        assert_eq!(
            expr_to_slack(&parse("(u 4 2)")).unwrap(),
            hypersimplex_slack(4, 2).unwrap()
        );
        assert_eq!(
            expr_to_slack(&parse("(2sum (u 2 1) (u 2 1))")).unwrap(),
            Matrix::identity(2).unwrap()
        );
        let square = Matrix::from_ints(&[[0, 1, 0, 1], [1, 0, 1, 0], [0, 0, 1, 1], [1, 1, 0, 0]])
            .unwrap();
        let s = expr_to_slack(&parse("(1sum (u 2 1) (u 2 1))")).unwrap();
        assert!(is_isomorphic(&s, &square).is_some());
    }

    #[test]
    fn slack_columns_are_bases() {
        for text in [
            "(2sum (u 4 2) (u 3 1))",
            "(2sum (u 3 1) (u 3 2))",
            "(2sum (u 3 2) (u 3 1))",
            "(1sum (2sum (u 4 2) (u 2 1)) (u 5 2))",
            "(2sum (2sum (u 4 1) (u 5 3)) (u 3 2))",
        ] {
            let e = parse(text);
            let (s, bases) = expr_to_slack_with_bases(&e).unwrap();
            let m = expr_to_bases(&e).unwrap();
            let got: BTreeSet<Vec<Element>> = bases.iter().cloned().collect();
            assert_eq!(got.len(), s.ncols(), "{text}");
            assert_eq!(&got, m.bases(), "{text}");
        }
    }
}
