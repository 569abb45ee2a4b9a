//! The Moebius function of the subgroup lattice of AGL(1, F_q).
//!
//! `mu_closed` evaluates mu(S1, S2) in closed form: after translation
//! conjugation reduces the pair to (d1, 0, H1) <= (d2, 0, H2), the value is
//! a product of the classic number-theoretic Moebius value of d2/d1 and the
//! subspace Moebius value of H2/H1 over the subfield generated by elements
//! of order d2 — with an extra coset factor |H2|/|H1| when d1 = 1, and zero
//! whenever H1 fails to be a module over that subfield. `mu_table_oracle`
//! computes the same table from the defining recursion on the containment
//! poset; the two must agree exactly, which is the crate's central
//! verification property.

use std::collections::BTreeMap;
use std::str::FromStr;

use num::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::lattice;
use crate::subgroups::{GroupCatalog, Subgroup, SubgroupJson};
use crate::submodules::{module_subfield, mu_subspace, quotient_dim};

/// Default cap on catalog size for the recursive oracle.
pub const DEFAULT_ORACLE_CAP: usize = 4096;

/// Classic number-theoretic Moebius function, by trial-division
/// factorization: (-1)^t on squarefree products of t primes, else 0.
pub fn classic_mu(n: u64) -> i64 {
    assert!(n >= 1, "classic_mu is defined on positive integers");
    let factors = arith::factorize(n);
    if factors.iter().any(|&(_, e)| e > 1) {
        return 0;
    }
    if factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Reduces a nested pair S1 <= S2 to the conjugate pair in (d, 0, H) form.
///
/// S1 is normalized by its own translation, which is applied to S2 as well;
/// when d1 = 1 the pair's second member is then normalized alone (this
/// leaves the translation-only S1 untouched). Moebius values are invariant
/// under the whole operation.
pub fn normalize_pair(field: &Field, s1: &Subgroup, s2: &Subgroup) -> Result<(Subgroup, Subgroup)> {
    if !s2.contains(field, s1)? {
        return Err(Error::NotContained);
    }
    let (t1, tr) = s1.normalize_conjugate(field);
    let mut t2 = s2.conjugate_by_translation(field, tr.b())?;
    if t1.d() == 1 {
        t2 = t2.normalize_conjugate(field).0;
    }
    debug_assert!(
        t2.b_rep().is_zero(),
        "containment forces b = 0 on the outer group"
    );
    debug_assert_eq!(t2.d() % t1.d(), 0);
    debug_assert!(t2.h().contains(field, t1.h()));
    Ok((t1, t2))
}

/// Closed-form mu(S1, S2) for nested subgroups of AGL(1, F_q).
pub fn mu_closed(field: &Field, s1: &Subgroup, s2: &Subgroup) -> Result<BigInt> {
    let (t1, t2) = normalize_pair(field, s1, s2)?;
    if t1 == t2 {
        return Ok(BigInt::from(1));
    }
    // The subfield generated by elements of order d2 (the prime field when
    // d2 = 1). H2 is a module over it by construction; H1 need not be, and
    // the value vanishes when it is not.
    let tag = module_subfield(field, t2.d())?;
    if !t1.h().is_module_over(field, &tag) {
        return Ok(BigInt::from(0));
    }
    let l = quotient_dim(field, t1.h(), t2.h(), &tag)?;
    let sub_mu = mu_subspace(l, tag.r());
    if t1.d() != 1 || t2.d() == 1 {
        Ok(BigInt::from(classic_mu(t2.d() / t1.d())) * sub_mu)
    } else {
        let coset_factor = t2.h().size(field) / t1.h().size(field);
        Ok(BigInt::from(coset_factor) * BigInt::from(classic_mu(t2.d())) * sub_mu)
    }
}

/// Moebius values for every comparable pair of a catalog, keyed by catalog
/// indices. Incomparable pairs are absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuTable {
    q: u64,
    entries: BTreeMap<(usize, usize), BigInt>,
}

/// Serialized table: subgroups in canonical order plus (i, j, value)
/// triples sorted by (i, j); values are decimal strings since Moebius
/// values outgrow fixed-width integers.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct MuTableJson {
    pub q: u64,
    pub subgroups: Vec<SubgroupJson>,
    pub mu: Vec<(usize, usize, String)>,
}

impl MuTable {
    pub fn q(&self) -> u64 {
        self.q
    }

    /// mu(i, j), or None when the subgroups are incomparable.
    pub fn mu(&self, i: usize, j: usize) -> Option<&BigInt> {
        self.entries.get(&(i, j))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.entries.iter()
    }

    /// True iff the table holds exactly the comparable pairs of the catalog
    /// (the precondition of the design and Eulerian sums). Deserialized
    /// tables should be checked before use.
    pub fn covers(&self, catalog: &GroupCatalog) -> bool {
        if self.q != catalog.field().q() {
            return false;
        }
        let mut comparable = 0usize;
        for i in 0..catalog.len() {
            for j in 0..catalog.len() {
                if catalog.leq(i, j) {
                    comparable += 1;
                    if !self.entries.contains_key(&(i, j)) {
                        return false;
                    }
                }
            }
        }
        comparable == self.entries.len()
    }

    pub fn to_json(&self, catalog: &GroupCatalog) -> MuTableJson {
        MuTableJson {
            q: self.q,
            subgroups: catalog.to_json().subgroups,
            mu: self
                .entries
                .iter()
                .map(|(&(i, j), v)| (i, j, v.to_string()))
                .collect(),
        }
    }

    pub fn from_json(json: &MuTableJson) -> Result<MuTable> {
        let mut entries = BTreeMap::new();
        for (i, j, v) in &json.mu {
            let value =
                BigInt::from_str(v).map_err(|_| Error::Parse(format!("bad integer '{}'", v)))?;
            entries.insert((*i, *j), value);
        }
        Ok(MuTable { q: json.q, entries })
    }
}

/// Evaluates the closed formula on every comparable pair. Pairs are
/// independent, so the evaluation runs on the current rayon pool.
pub fn mu_table_closed(catalog: &GroupCatalog) -> Result<MuTable> {
    let comparable: Vec<(usize, usize)> = (0..catalog.len())
        .flat_map(|i| (0..catalog.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| catalog.leq(i, j))
        .collect();
    let entries: Result<Vec<((usize, usize), BigInt)>> = comparable
        .par_iter()
        .map(|&(i, j)| {
            mu_closed(catalog.field(), catalog.get(i), catalog.get(j)).map(|v| ((i, j), v))
        })
        .collect();
    Ok(MuTable {
        q: catalog.field().q(),
        entries: entries?.into_iter().collect(),
    })
}

/// Computes the same table from the defining recursion on the containment
/// poset. Refuses catalogs larger than `cap` subgroups.
pub fn mu_table_oracle(catalog: &GroupCatalog, cap: usize) -> Result<MuTable> {
    if catalog.len() > cap {
        return Err(Error::SizeCap {
            q: catalog.len() as u128,
            cap: cap as u64,
        });
    }
    let poset = catalog.poset()?;
    let table = lattice::mu_recursive(&poset);
    let entries = table
        .pairs()
        .map(|(&(i, j), v)| ((i, j), v.clone()))
        .collect();
    Ok(MuTable {
        q: catalog.field().q(),
        entries,
    })
}
