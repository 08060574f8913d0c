//! Lie-Poisson brackets on `M(n)`: an exact engine over rational polynomials
//! in the entries, and a numerical bracket built from gradients.

mod bracket;
mod numeric;
mod sympoly;

pub use bracket::{
    gz_commutativity_report, gz_generator_symbolic, gz_generators_symbolic, sym_bracket,
    verify_gz_commutativity, CommutativityReport, MAX_SYMBOLIC_N,
};
pub use numeric::{
    gradient_check, num_bracket, Entry, FiniteDifference, Observable, TraceGenerator,
};
pub use sympoly::{Monomial, SymPoly};
