mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use prodrec::info::{is_independent_exact, InfoFunction};
use prodrec::iso::is_isomorphic;
use prodrec::matrix::ratio;
use prodrec::matroid::{
    dual, expr_to_bases, expr_to_slack_with_bases, hypersimplex_slack, two_sum, uniform_bases,
    MatroidExpr,
};
use prodrec::oracle::{
    base_exchange_validator, bf_mutual_info, bf_one_product, bf_submodular_min, bf_two_product,
    naive_independent,
};
use prodrec::product::{factorize_irreducible, one_product, recognize_one_product};
use prodrec::queyranne::{minimize_symmetric, GraphCut};
use prodrec::shuffle::shuffle;
use prodrec::two_product::recognize_two_product;
use prodrec::{Matrix, Rational, RowSubset};

fn matrix(max_m: usize, max_n: usize, max: i64) -> impl Strategy<Value = Matrix> {
    (1..=max_m, 1..=max_n).prop_flat_map(move |(m, n)| {
        prop::collection::vec(0..=max, m * n).prop_map(move |v| {
            Matrix::new(m, n, v.into_iter().map(prodrec::matrix::int).collect())
                .unwrap()
        })
    })
}

fn rational_matrix() -> impl Strategy<Value = Matrix> {
    (1..=5usize, 1..=5usize).prop_flat_map(|(m, n)| {
        prop::collection::vec((-20i64..=20, 1i64..=7), m * n)
            .prop_map(move |v| Matrix::new(m, n, v.into_iter().map(|(p, q)| ratio(p, q)).collect()).unwrap())
    })
}

fn subset(m: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(any::<bool>(), m).prop_map(|bits| {
        bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_round_trip(s in rational_matrix()) {
        let text = s.to_string();
        prop_assert_eq!(Matrix::parse(&text).unwrap(), s);
    }

    #[test]
    fn shuffles_are_isomorphic(s in matrix(6, 6, 2), seed in any::<u64>()) {
        let (t, ..) = shuffle(&s, seed);
        let (rows, cols) = is_isomorphic(&s, &t).expect("shuffle is an isomorphism");
        prop_assert_eq!(s.permute(&rows, &cols).unwrap(), t);
    }

    #[test]
    fn changed_entry_breaks_isomorphism_to_self(s in matrix(5, 5, 2), i in 0usize..5, j in 0usize..5) {
        let (i, j) = (i % s.nrows(), j % s.ncols());
        let mut rows = s.to_rows();
        rows[i][j] = Rational::from_integer(7.into());
        let t = Matrix::from_rows(rows).unwrap();
        prop_assert!(is_isomorphic(&s, &t).is_none());
    }

    #[test]
    fn f_matches_double_sum(s in matrix(7, 10, 3), bits in subset(7)) {
        let x: Vec<usize> = bits.into_iter().filter(|&i| i < s.nrows()).collect();
        let f = InfoFunction::new(&s);
        prop_assert!((f.value(&x) - bf_mutual_info(&s, &x)).abs() < 1e-9);
    }

    #[test]
    fn exact_independence_matches_naive(s in matrix(6, 10, 2), bits in subset(6)) {
        let m = s.nrows();
        let x: Vec<usize> = bits.into_iter().filter(|&i| i < m).collect();
        prop_assume!(!x.is_empty() && x.len() < m);
        let y: Vec<usize> = (0..m).filter(|i| !x.contains(i)).collect();
        let cols: Vec<usize> = (0..s.ncols()).collect();
        let f = InfoFunction::new(&s);
        let fast = is_independent_exact(&f, &RowSubset::new(x.clone(), m).unwrap()).unwrap();
        prop_assert_eq!(fast, naive_independent(&s, &x, &y, &cols));
    }

    #[test]
    fn one_product_verdict_matches_oracle(s in matrix(7, 9, 1)) {
        let fast = recognize_one_product(&s);
        prop_assert_eq!(fast.is_some(), bf_one_product(&s).unwrap().verdict);
        if let Some(cert) = fast {
            prop_assert!(cert.verify(&s));
        }
    }

    #[test]
    fn two_product_verdict_matches_oracle(s in matrix(6, 8, 1)) {
        let fast = recognize_two_product(&s);
        prop_assert_eq!(fast.is_some(), bf_two_product(&s).unwrap().verdict);
        if let Some(cert) = fast {
            prop_assert!(cert.verify(&s));
        }
    }

    #[test]
    fn products_are_recognized(a in matrix(4, 4, 3), b in matrix(4, 4, 3), seed in any::<u64>()) {
        let (s, ..) = shuffle(&one_product(&a, &b).unwrap(), seed);
        let cert = recognize_one_product(&s).expect("a product is recognized");
        prop_assert!(cert.verify(&s));
    }

    #[test]
    fn factorization_commutes_with_shuffles(a in matrix(3, 3, 2), b in matrix(3, 3, 2), seed in any::<u64>()) {
        let s = one_product(&a, &b).unwrap();
        prop_assume!(common::has_distinct_columns(&s));
        let (t, rows, _) = shuffle(&s, seed);
        let family = |blocks: Vec<Vec<usize>>| blocks.into_iter().collect::<BTreeSet<_>>();
        let direct = family(factorize_irreducible(&s).blocks.iter().map(|b| b.indices().to_vec()).collect());
        let mapped = family(
            factorize_irreducible(&t)
                .blocks
                .iter()
                .map(|b| {
                    let mut v: Vec<usize> = b.indices().iter().map(|&i| rows.apply(i)).collect();
                    v.sort_unstable();
                    v
                })
                .collect(),
        );
        prop_assert_eq!(direct, mapped);
    }

    #[test]
    fn minimizer_matches_exhaustive_on_cuts(
        n in 2usize..=9,
        edges in prop::collection::vec((0usize..9, 0usize..9, 1u32..=6), 0..20),
    ) {
        let edges: Vec<(usize, usize, f64)> = edges
            .into_iter()
            .filter(|(a, b, _)| a < b && *b < n)
            .map(|(a, b, w)| (a, b, f64::from(w)))
            .collect();
        let g = GraphCut::new(n, edges).unwrap();
        let fast = minimize_symmetric(&g).unwrap();
        let (_, best) = bf_submodular_min(&g).unwrap();
        prop_assert!((fast.value - best).abs() < 1e-9);
        prop_assert!(fast.evaluations <= n * n * n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn expressions_round_trip_through_text(seed in any::<u64>()) {
        let e = common::random_expr(&mut common::rng(seed), 4, 5, 400);
        let back: MatroidExpr = e.to_string().parse().unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn expressions_denote_matroids(seed in any::<u64>()) {
        let e = common::random_expr(&mut common::rng(seed), 4, 5, 400);
        let m = expr_to_bases(&e).unwrap();
        prop_assert!(base_exchange_validator(&m).unwrap());
        prop_assert!(base_exchange_validator(&dual(&m)).unwrap());
        let (s, bases) = expr_to_slack_with_bases(&e).unwrap();
        prop_assert_eq!(s.ncols(), m.bases().len());
        let listed: BTreeSet<Vec<u32>> = bases.into_iter().collect();
        prop_assert_eq!(&listed, m.bases());
    }
}

#[test]
fn two_sums_pass_the_exchange_check() {
    for d1 in 2..=5usize {
        for k1 in 1..d1 {
            for d2 in 2..=4usize {
                for k2 in 1..d2 {
                    let a = uniform_bases(d1, k1).unwrap();
                    let p = (d1 - 1) as u32;
                    let b = uniform_bases(d2, k2)
                        .unwrap()
                        .relabel(|e| e + p)
                        .unwrap();
                    let m = two_sum(&a, &b, p).unwrap();
                    assert!(base_exchange_validator(&m).unwrap(), "U({d1},{k1}) + U({d2},{k2})");
                    assert_eq!(m.rank(), k1 + k2 - 1);
                }
            }
        }
    }
}

#[test]
fn complementary_hypersimplices_are_isomorphic() {
    for d in 4..=8 {
        for k in 2..=d - 2 {
            let a = hypersimplex_slack(d, k).unwrap();
            let b = hypersimplex_slack(d, d - k).unwrap();
            assert!(is_isomorphic(&a, &b).is_some(), "S({d},{k})");
        }
    }
}

/// Rank of the differences `p - points[0]`, by exact elimination.
#[allow(clippy::needless_range_loop)]
fn affine_rank(points: &[Vec<Rational>]) -> usize {
    use num_traits::Zero;
    let Some(first) = points.first() else {
        return 0;
    };
    let mut rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    let mut rank = 0;
    for col in 0..first.len() {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank].clone();
        for r in rank + 1..rows.len() {
            let factor = &rows[r][col] / &lead[col];
            for c in col..first.len() {
                let delta = &factor * &lead[c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn slack_rows_are_facets() {
    let mut r = common::rng(11);
    for _ in 0..40 {
        let e = common::random_expr(&mut r, 4, 5, 300);
        let ground = e.ground();
        let (s, bases) = expr_to_slack_with_bases(&e).unwrap();
        let points: Vec<Vec<Rational>> = bases
            .iter()
            .map(|b| ground.iter().map(|g| prodrec::matrix::int(i64::from(b.contains(g)))).collect())
            .collect();
        let dim = affine_rank(&points);
        for (i, row) in s.rows().enumerate() {
            let face: Vec<Vec<Rational>> = row
                .iter()
                .zip(&points)
                .filter(|(v, _)| num_traits::Zero::is_zero(*v))
                .map(|(_, p)| p.clone())
                .collect();
            assert_eq!(affine_rank(&face) + 1, dim, "row {i} of {e} is not a facet");
        }
    }
}
