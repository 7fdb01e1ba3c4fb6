pub mod error;
pub mod info;
pub mod iso;
pub mod matroid;
pub mod matrix;
pub mod oracle;
pub mod polytope;
pub mod product;
pub mod queyranne;
pub mod shuffle;
pub mod two_product;

pub use error::{Error, Result};
pub use matrix::{Matrix, Permutation, Rational, RowSubset};
