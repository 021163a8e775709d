//! Exact arithmetic in Q(q) and linear algebra over it.

pub mod laurent;
pub mod matrix;
mod poly;
pub mod ratfunc;

pub use laurent::LaurentInt;
pub use matrix::{QMatrix, RankMode, Solution, SparseVec, Subspace};
pub use ratfunc::{qbinomial, qfactorial, qint, RatFunc};
