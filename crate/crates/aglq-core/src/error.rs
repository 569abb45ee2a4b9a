//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by field construction, lattice machinery, and the
/// subgroup/Moebius operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("size {q} exceeds the configured cap {cap}")]
    SizeCap { q: u128, cap: u64 },
    #[error("division by zero in the field")]
    DivisionByZero,
    #[error("operands belong to different fields (q = {0} vs q = {1})")]
    FieldMismatch(u64, u64),
    #[error("multiplicative order is undefined for zero")]
    ZeroElement,
    #[error("{m} does not divide the extension degree {n}")]
    NotDivisor { m: u32, n: u32 },
    #[error("{r} is not the order of a subfield of the field with {q} elements")]
    NotSubfield { r: u64, q: u64 },
    #[error("the characteristic {p} divides {d}")]
    CharDividesD { p: u64, d: u64 },
    #[error("the first submodule is not contained in the second")]
    NotContained,
    #[error("submodule is not a module over the subfield of order {r}")]
    NotModule { r: u64 },
    #[error("prime-field dimension gap is not divisible by the subfield degree")]
    NonIntegralDim,
    #[error("a is zero: affine maps require an invertible linear part")]
    NotInvertible,
    #[error("{0} does not divide q - 1")]
    BadSubgroupOrder(u64),
    #[error("relation is not a valid partial order: {0}")]
    NotPoset(String),
    #[error("poset is not a lattice: {0}")]
    NotLattice(String),
    #[error("subset is not a crosscut: {0}")]
    NotCrosscut(String),
    #[error("crosscut has {len} elements, above the cap of {cap}")]
    CrosscutTooLarge { len: usize, cap: usize },
    #[error("the full group has no proper supergroups")]
    FullGroup,
    #[error("subset size k = {k} is out of range 0..={q}")]
    KOutOfRange { k: u64, q: u64 },
    #[error("subgroup order {order} does not divide the group order {group_order}")]
    InvalidOrder { order: u64, group_order: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
