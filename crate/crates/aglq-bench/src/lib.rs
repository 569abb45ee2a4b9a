//! Shared helpers for the benchmark targets.

use aglq_core::{Field, GroupCatalog};

pub fn field(p: u64, n: u32) -> Field {
    Field::new(p, n).expect("valid field parameters")
}

pub fn catalog(p: u64, n: u32) -> GroupCatalog {
    GroupCatalog::build(field(p, n)).expect("catalog within limits")
}
