//! Reproducible row/column shuffles.
//!
//! Generator: ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64(seed)`).
//! Permutations are drawn with a Fisher-Yates pass from the last index down,
//! picking `j = (next_u64() * (i + 1)) >> 64` at step `i`. The row
//! permutation is drawn first, then the column permutation. The same seed
//! therefore yields the same output bit for bit.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{Matrix, Permutation};

pub const SHUFFLE_ALGORITHM: &str = "chacha8-fisher-yates-v1";

fn draw_permutation(rng: &mut ChaCha8Rng, k: usize) -> Permutation {
    let mut values: Vec<usize> = (0..k).collect();
    for i in (1..k).rev() {
        let j = ((rng.next_u64() as u128 * (i as u128 + 1)) >> 64) as usize;
        values.swap(i, j);
    }
    Permutation::new(values).expect("shuffled identity is a permutation")
}

/// A seeded pair of row and column permutations for an `m x n` matrix.
pub fn random_permutations(m: usize, n: usize, seed: u64) -> (Permutation, Permutation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = draw_permutation(&mut rng, m);
    let cols = draw_permutation(&mut rng, n);
    (rows, cols)
}

/// Shuffles rows and columns; returns the shuffled matrix and the
/// permutations used, so that `shuffled[i][j] = s[rows(i)][cols(j)]`.
pub fn shuffle(s: &Matrix, seed: u64) -> (Matrix, Permutation, Permutation) {
    let (rows, cols) = random_permutations(s.nrows(), s.ncols(), seed);
    let shuffled = s.permute(&rows, &cols).expect("sizes match");
    (shuffled, rows, cols)
}
