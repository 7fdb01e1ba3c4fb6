#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use prodrec::matroid::{binomial, Element, Matroid, MatroidExpr};
use prodrec::two_product::two_product;
use prodrec::{Matrix, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize, max: i64) -> Matrix {
    let rows: Vec<Vec<Rational>> = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| Rational::from_integer(rng.random_range(0..=max).into()))
                .collect()
        })
        .collect();
    Matrix::from_rows(rows).unwrap()
}

pub fn has_distinct_columns(s: &Matrix) -> bool {
    let cols: BTreeSet<Vec<Rational>> = (0..s.ncols()).map(|j| s.column(j)).collect();
    cols.len() == s.ncols()
}

/// Random matrix with a 0/1 row at `row` taking both values.
pub fn with_split_row(rng: &mut ChaCha8Rng, m: usize, n: usize, max: i64, row: usize) -> Matrix {
    loop {
        let mut rows = random_matrix(rng, m, n, max).to_rows();
        rows[row] = (0..n)
            .map(|_| Rational::from_integer(rng.random_range(0..=1).into()))
            .collect();
        let s = Matrix::from_rows(rows).unwrap();
        if s.is_split_row(row) {
            return s;
        }
    }
}

/// A 2-product of two random factors with at most `max_rows` rows in total.
pub fn random_two_product(rng: &mut ChaCha8Rng, max_rows: usize) -> Matrix {
    let m1 = rng.random_range(2..=max_rows - 2);
    let m2 = rng.random_range(2..=max_rows + 1 - m1);
    let (x1, y1) = (rng.random_range(0..m1), rng.random_range(0..m2));
    let (n1, n2) = (rng.random_range(2..=4), rng.random_range(2..=4));
    let s1 = with_split_row(rng, m1, n1, 2, x1);
    let s2 = with_split_row(rng, m2, n2, 2, y1);
    two_product(&s1, x1, &s2, y1).unwrap()
}

/// Product of the leaf base counts, an upper bound on the number of bases.
fn base_bound(e: &MatroidExpr) -> usize {
    match e {
        MatroidExpr::Leaf { d, k, .. } => binomial(*d, *k).unwrap_or(usize::MAX),
        MatroidExpr::OneSum(children) => children
            .iter()
            .map(base_bound)
            .fold(1usize, |a, b| a.saturating_mul(b)),
        MatroidExpr::TwoSum { left, right, .. } => {
            base_bound(left).saturating_mul(base_bound(right))
        }
    }
}

fn random_tree(rng: &mut ChaCha8Rng, leaves: usize, dmax: usize) -> MatroidExpr {
    if leaves == 1 {
        let d = rng.random_range(2..=dmax);
        let k = rng.random_range(1..d);
        return MatroidExpr::uniform(d, k);
    }
    let left = rng.random_range(1..leaves);
    let a = random_tree(rng, left, dmax);
    let b = random_tree(rng, leaves - left, dmax);
    if rng.random_bool(0.5) {
        MatroidExpr::OneSum(vec![a, b])
    } else {
        MatroidExpr::TwoSum {
            left: Box::new(a),
            right: Box::new(b),
            glue: 0,
        }
    }
}

/// Random expression with 1 to `max_leaves` leaves `U_{d,k}`,
/// `2 <= d <= dmax`, redrawn until the base-count bound is at most `cap`.
pub fn random_expr(rng: &mut ChaCha8Rng, max_leaves: usize, dmax: usize, cap: usize) -> MatroidExpr {
    loop {
        let leaves = rng.random_range(1..=max_leaves);
        let e = random_tree(rng, leaves, dmax).auto_labeled();
        if base_bound(&e) <= cap {
            return e;
        }
    }
}

/// Incidence of `e` across `bases`, one bit per base.
fn incidence(bases: &[Vec<Element>], e: Element) -> Vec<bool> {
    bases.iter().map(|b| b.contains(&e)).collect()
}

/// Element correspondence between an original and a recovered per-column
/// base listing.
#[derive(Debug)]
pub struct Correspondence {
    /// `(original, recovered, flipped)`; a flipped element is read with the
    /// recovered bases complemented on its component.
    pub map: Vec<(Element, Element, bool)>,
    /// Original components read as duals.
    pub flipped: Vec<Vec<Element>>,
    /// Original components read as they are.
    pub kept: Vec<Vec<Element>>,
}

/// Matches every original element to the recovered element whose column
/// incidence equals its own, or the complement of it, with one choice per
/// connected component of `m`. The result must be a bijection.
pub fn element_correspondence(
    m: &Matroid,
    original: &[Vec<Element>],
    recovered: &[Vec<Element>],
) -> Option<Correspondence> {
    let labels: BTreeSet<Element> = recovered.iter().flatten().copied().collect();
    let rec: BTreeMap<Vec<bool>, Element> =
        labels.iter().map(|&e| (incidence(recovered, e), e)).collect();
    if rec.len() != labels.len() || labels.len() != m.ground().len() {
        return None;
    }
    let mut map = Vec::new();
    let (mut flipped, mut kept) = (Vec::new(), Vec::new());
    for c in m.components() {
        let read = |flip: bool| -> Option<Vec<(Element, Element, bool)>> {
            c.iter()
                .map(|&e| {
                    let inc: Vec<bool> = incidence(original, e).iter().map(|b| b != &flip).collect();
                    rec.get(&inc).map(|&r| (e, r, flip))
                })
                .collect()
        };
        if let Some(part) = read(false) {
            map.extend(part);
            kept.push(c);
        } else {
            map.extend(read(true)?);
            flipped.push(c);
        }
    }
    let targets: BTreeSet<Element> = map.iter().map(|t| t.1).collect();
    if targets.len() != map.len() {
        return None;
    }
    Some(Correspondence { map, flipped, kept })
}

/// `e` with every leaf whose ground elements lie in one of `flipped`
/// replaced by its dual leaf. Leaves sharing a glue label belong together,
/// so a leaf without ground elements follows the leaves it is glued to.
pub fn dualize_components(e: &MatroidExpr, flipped: &[Vec<Element>]) -> MatroidExpr {
    let mut leaves = Vec::new();
    collect_leaf_labels(e, &mut leaves);
    let mut group: BTreeMap<Element, usize> = BTreeMap::new();
    let mut parent: Vec<usize> = (0..leaves.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    for (i, labels) in leaves.iter().enumerate() {
        for &l in labels {
            if let Some(&j) = group.get(&l) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            } else {
                group.insert(l, i);
            }
        }
    }
    let flip_label = |l: Element| flipped.iter().any(|c| c.contains(&l));
    let roots: BTreeSet<usize> = (0..leaves.len())
        .filter(|&i| leaves[i].iter().any(|&l| flip_label(l)))
        .map(|i| find(&mut parent, i))
        .collect();
    let flags: Vec<bool> = (0..leaves.len())
        .map(|i| roots.contains(&find(&mut parent, i)))
        .collect();
    let mut next = 0;
    rebuild(e, &flags, &mut next)
}

fn collect_leaf_labels(e: &MatroidExpr, out: &mut Vec<Vec<Element>>) {
    match e {
        MatroidExpr::Leaf { labels, .. } => out.push(labels.clone()),
        MatroidExpr::OneSum(children) => children.iter().for_each(|c| collect_leaf_labels(c, out)),
        MatroidExpr::TwoSum { left, right, .. } => {
            collect_leaf_labels(left, out);
            collect_leaf_labels(right, out);
        }
    }
}

fn rebuild(e: &MatroidExpr, flags: &[bool], next: &mut usize) -> MatroidExpr {
    match e {
        MatroidExpr::Leaf { d, k, labels } => {
            let flip = flags[*next];
            *next += 1;
            MatroidExpr::Leaf {
                d: *d,
                k: if flip { d - k } else { *k },
                labels: labels.clone(),
            }
        }
        MatroidExpr::OneSum(children) => {
            MatroidExpr::OneSum(children.iter().map(|c| rebuild(c, flags, next)).collect())
        }
        MatroidExpr::TwoSum { left, right, glue } => MatroidExpr::TwoSum {
            left: Box::new(rebuild(left, flags, next)),
            right: Box::new(rebuild(right, flags, next)),
            glue: *glue,
        },
    }
}
