use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan type: {0}")]
    InvalidType(String),
    #[error("invalid parabolic subset: {0}")]
    InvalidSubset(String),
    #[error("group too large: reached {reached} elements, cap is {cap}")]
    GroupTooLarge { reached: usize, cap: usize },
    #[error("weight {0} is not dominant for the Levi factor")]
    NotLeviDominant(String),
    #[error("not in the root lattice: {0}")]
    NotInRootLattice(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("flag is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
