//! Dense complex linear algebra used throughout the crate.

pub mod charpoly;
pub mod decomp;
pub mod expm;
pub mod matrix;
pub mod poly;
pub mod rank;
pub mod roots;

pub use charpoly::charpoly;
pub use decomp::{det, eig, inverse, Eigen, Lu};
pub use expm::mat_exp;
pub use matrix::{trace_form, Matrix};
pub use poly::{divide_by_monic, expand_in_monic_basis, MonicPoly};
pub use rank::numeric_rank;
pub use roots::{eigenvalues_ordered, lex_sort};
