//! Exact computations in the subgroup lattice of the one-dimensional affine
//! group AGL(1, F_q).
//!
//! The crate enumerates all subgroups of AGL(1, F_q) through their canonical
//! (d, b, H) parametrization, evaluates the Moebius function of the subgroup
//! lattice both by a closed formula and by independent oracles (the defining
//! recursion and crosscut sums), and applies the resulting tables to
//! 2-design parameter scans and Eulerian-function evaluation. All arithmetic
//! is exact: field elements are coefficient vectors mod p, counts and
//! Moebius values are arbitrary-precision integers, design parameters are
//! exact rationals.
//!
//! Module map:
//! - [`gf`] — GF(p^n) arithmetic, generator discovery, subfields.
//! - [`submodules`] — F_r-subspaces of F_q: canonical bases, enumeration,
//!   stabilizer subfields, the subspace Moebius function.
//! - [`subgroups`] — affine maps, canonical subgroup triples, the full
//!   catalog with containment.
//! - [`lattice`] — generic finite-poset Moebius machinery and crosscut sums.
//! - [`agl_mobius`] — the closed-form Moebius function on subgroup pairs and
//!   whole-lattice tables (closed and oracle).
//! - [`designs`] — orbit counts, fixed k-subset counts, design parameters,
//!   Eulerian function.

#![forbid(unsafe_code)]

mod arith;
mod error;

pub mod agl_mobius;
pub mod designs;
pub mod gf;
pub mod lattice;
pub mod subgroups;
pub mod submodules;

pub use error::{Error, Result};
pub use gf::{Field, FieldElement, GeneratorCertificate};
pub use subgroups::{AffineMap, GroupCatalog, Subgroup};
pub use submodules::{SubfieldTag, Submodule};
