//! Matrix isomorphism under independent row and column permutations.
//!
//! Backtracking over row assignments. Columns carry a class label that is
//! refined by every assigned row pair, and a partial assignment survives only
//! if both sides have identical class histograms. Rows are only matched with
//! rows of the same sorted value multiset, and the initial column classes are
//! the sorted column multisets.

use std::collections::HashMap;

use rustc_hash::FxHashMap;

use crate::matrix::{Matrix, Permutation, Rational};

/// Returns `(row_perm, col_perm)` with `a.permute(row_perm, col_perm) == b`,
/// or `None` if the matrices are not isomorphic.
///
/// Rows of `b` are assigned in order, trying rows of `a` in ascending order,
/// so the returned row permutation is the lexicographically least one; the
/// column permutation is the least one compatible with it.
pub fn is_isomorphic<'a>(a: &'a Matrix, b: &'a Matrix) -> Option<(Permutation, Permutation)> {
    let (m, n) = (a.nrows(), a.ncols());
    if b.nrows() != m || b.ncols() != n {
        return None;
    }

    let mut dict: HashMap<&Rational, u32> = HashMap::new();
    let mut encode = |mat: &'a Matrix| -> Vec<Vec<u32>> {
        (0..m)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let next = dict.len() as u32;
                        *dict.entry(mat.get(i, j)).or_insert(next)
                    })
                    .collect()
            })
            .collect()
    };
    let av = encode(a);
    let bv = encode(b);

    let mut sig_ids: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
    let mut signature = |values: Vec<u32>| -> u32 {
        let mut values = values;
        values.sort_unstable();
        let next = sig_ids.len() as u32;
        *sig_ids.entry(values).or_insert(next)
    };
    let row_sig_a: Vec<u32> = av.iter().map(|r| signature(r.clone())).collect();
    let row_sig_b: Vec<u32> = bv.iter().map(|r| signature(r.clone())).collect();
    let col_sig_a: Vec<u32> = (0..n)
        .map(|j| signature(av.iter().map(|r| r[j]).collect()))
        .collect();
    let col_sig_b: Vec<u32> = (0..n)
        .map(|j| signature(bv.iter().map(|r| r[j]).collect()))
        .collect();

    if !same_multiset(&row_sig_a, &row_sig_b) || !same_multiset(&col_sig_a, &col_sig_b) {
        return None;
    }

    let mut search = Search {
        av: &av,
        bv: &bv,
        row_sig_a: &row_sig_a,
        row_sig_b: &row_sig_b,
        used: vec![false; m],
        assignment: Vec::with_capacity(m),
    };
    let (ca, cb) = search.run(col_sig_a, col_sig_b)?;

    let mut pool: FxHashMap<u32, Vec<usize>> = FxHashMap::default();
    for (j, &c) in ca.iter().enumerate().rev() {
        pool.entry(c).or_default().push(j);
    }
    let col_perm: Vec<usize> = cb
        .iter()
        .map(|c| pool.get_mut(c).and_then(Vec::pop).expect("histograms agree"))
        .collect();
    let row_perm = Permutation::new(search.assignment).expect("assignment is a bijection");
    let col_perm = Permutation::new(col_perm).expect("column matching is a bijection");
    Some((row_perm, col_perm))
}

fn same_multiset(x: &[u32], y: &[u32]) -> bool {
    let mut x = x.to_vec();
    let mut y = y.to_vec();
    x.sort_unstable();
    y.sort_unstable();
    x == y
}

struct Search<'a> {
    av: &'a [Vec<u32>],
    bv: &'a [Vec<u32>],
    row_sig_a: &'a [u32],
    row_sig_b: &'a [u32],
    used: Vec<bool>,
    assignment: Vec<usize>,
}

impl Search<'_> {
    /// Depth-first assignment of b-rows; returns the final column classes.
    fn run(&mut self, ca: Vec<u32>, cb: Vec<u32>) -> Option<(Vec<u32>, Vec<u32>)> {
        let depth = self.assignment.len();
        if depth == self.bv.len() {
            return Some((ca, cb));
        }
        for cand in 0..self.av.len() {
            if self.used[cand] || self.row_sig_a[cand] != self.row_sig_b[depth] {
                continue;
            }
            let Some((na, nb)) = refine(&ca, &self.av[cand], &cb, &self.bv[depth]) else {
                continue;
            };
            self.used[cand] = true;
            self.assignment.push(cand);
            if let Some(done) = self.run(na, nb) {
                return Some(done);
            }
            self.assignment.pop();
            self.used[cand] = false;
        }
        None
    }
}

/// Refines both column labelings by one row each; `None` if the resulting
/// class histograms differ.
fn refine(ca: &[u32], ra: &[u32], cb: &[u32], rb: &[u32]) -> Option<(Vec<u32>, Vec<u32>)> {
    let mut ids: FxHashMap<(u32, u32), u32> = FxHashMap::default();
    let mut counts: Vec<i64> = Vec::new();
    let mut na = Vec::with_capacity(ca.len());
    for (&c, &v) in ca.iter().zip(ra) {
        let next = ids.len() as u32;
        let id = *ids.entry((c, v)).or_insert(next);
        if id as usize == counts.len() {
            counts.push(0);
        }
        counts[id as usize] += 1;
        na.push(id);
    }
    let mut nb = Vec::with_capacity(cb.len());
    for (&c, &v) in cb.iter().zip(rb) {
        let id = *ids.get(&(c, v))?;
        counts[id as usize] -= 1;
        if counts[id as usize] < 0 {
            return None;
        }
        nb.push(id);
    }
    Some((na, nb))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &Matrix, b: &Matrix) -> bool {
        match is_isomorphic(a, b) {
            Some((rp, cp)) => {
                assert_eq!(&a.permute(&rp, &cp).unwrap(), b);
                true
            }
            None => false,
        }
    }

    #[test]
    fn identical_matrices_give_identity() {
        let s = Matrix::from_ints(&[[1, 0, 2], [3, 3, 0]]).unwrap();
        let (rp, cp) = is_isomorphic(&s, &s).unwrap();
        assert_eq!(rp, Permutation::identity(2));
        assert_eq!(cp, Permutation::identity(3));
    }

    #[test]
    fn reversed_corner() {
        let a = Matrix::from_ints(&[[1, 0], [0, 0]]).unwrap();
        let b = Matrix::from_ints(&[[0, 0], [0, 1]]).unwrap();
        let (rp, cp) = is_isomorphic(&a, &b).unwrap();
        assert_eq!(rp.as_slice(), &[1, 0]);
        assert_eq!(cp.as_slice(), &[1, 0]);
    }

    #[test]
    fn non_isomorphic() {
        let a = Matrix::from_ints(&[[1, 0], [0, 1]]).unwrap();
        let b = Matrix::from_ints(&[[1, 1], [0, 0]]).unwrap();
        assert!(!check(&a, &b));
        let c = Matrix::from_ints(&[[1, 0, 0], [0, 1, 0]]).unwrap();
        assert!(!check(&a, &c));
        // same row and column multisets, different structure
        let p = Matrix::from_ints(&[[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]])
            .unwrap();
        let q = Matrix::from_ints(&[[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, 1]])
            .unwrap();
        assert!(!check(&p, &q));
    }

    #[test]
    fn needs_backtracking() {
        // Two 4-cycles vs one 8-cycle incidence pattern: rows all look alike locally.
        let cyc = |edges: &[(usize, usize)]| {
            let mut rows = vec![vec![0i64; 8]; 8];
            for (e, &(u, v)) in edges.iter().enumerate() {
                rows[u][e] = 1;
                rows[v][e] = 1;
            }
            Matrix::from_ints(&rows).unwrap()
        };
        let two = cyc(&[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)]);
        let one = cyc(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0)]);
        assert!(!check(&two, &one));
        let shuffled = cyc(&[(4, 5), (1, 2), (6, 7), (3, 0), (0, 1), (5, 6), (2, 3), (7, 4)]);
        assert!(check(&two, &shuffled));
    }
}
