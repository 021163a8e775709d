//! Exact computer algebra for quantum parabolic BGG complexes.
//!
//! Layers, bottom up: [`qfield`] (arithmetic in Q(q)), [`cartan`] and [`weyl`]
//! (root data, coset representatives, Bruhat arrows), [`reps`] (characters),
//! [`uqalg`] (the quantized enveloping algebra), [`verma`] (Verma module slices
//! and standard maps), [`bgg`] (complexes and their verification) and
//! [`qsphere`] (the rank-one coordinate-ring picture).

pub mod bgg;
pub mod cartan;
pub mod error;
pub mod qfield;
pub mod qsphere;
pub mod report;
pub mod reps;
pub mod suite;
pub mod uqalg;
pub mod verma;
pub mod weyl;

pub use error::{Error, Result};
