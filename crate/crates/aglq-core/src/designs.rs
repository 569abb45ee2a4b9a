//! Design-theoretic applications of the subgroup Moebius table.
//!
//! For a subgroup H acting on F_q, `f_k` counts the k-subsets fixed setwise
//! by H (unions of H-orbits, read off a truncated orbit generating
//! function), and `g_k` inverts that count through the Moebius table to the
//! number of k-subsets whose full stabilizer is exactly H. Nonzero g_k rows
//! yield 2-design parameters with lambda = k(k-1)/|H| exactly. The same
//! table drives the Eulerian count of generating m-tuples.

use num::{BigInt, BigRational, BigUint, One, Zero};
use serde::{Deserialize, Serialize};

use crate::agl_mobius::MuTable;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::subgroups::{GroupCatalog, Subgroup};

/// The orbit decomposition of F_q under a subgroup's affine action.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    orbits: Vec<Vec<FieldElement>>,
}

impl OrbitPartition {
    /// Orbits as sorted element lists, in order of their smallest point.
    pub fn orbits(&self) -> &[Vec<FieldElement>] {
        &self.orbits
    }

    /// Orbit lengths, ascending.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.orbits.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }
}

/// Orbit partition of F_q under x -> ax + b over all maps in the subgroup.
/// Orbits of the generated group are connected components under the
/// generator maps and their inverses.
pub fn orbits(field: &Field, s: &Subgroup) -> OrbitPartition {
    let mut gens = s.generators(field);
    let inverses: Vec<_> = gens
        .iter()
        .map(|g| g.inverse(field).expect("invertible"))
        .collect();
    gens.extend(inverses);
    let mut seen = vec![false; field.q() as usize];
    let mut orbits = Vec::new();
    for start in 0..field.q() {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut stack = vec![field.from_code(start).expect("code in range")];
        seen[start as usize] = true;
        while let Some(x) = stack.pop() {
            orbit.push(x);
            for g in &gens {
                let y = g.apply(field, x).expect("same field");
                if !seen[y.code() as usize] {
                    seen[y.code() as usize] = true;
                    stack.push(y);
                }
            }
        }
        orbit.sort();
        orbits.push(orbit);
    }
    OrbitPartition { orbits }
}

/// Number of k-subsets of F_q fixed setwise by the subgroup: the k-th
/// coefficient of the product of (1 + z^len) over orbit lengths.
pub fn f_k(field: &Field, s: &Subgroup, k: u64) -> Result<BigUint> {
    if k > field.q() {
        return Err(Error::KOutOfRange { k, q: field.q() });
    }
    Ok(f_k_table(field, s, k).pop().expect("table reaches k"))
}

/// f_k for every k in 0..=k_max, by truncated polynomial products.
pub fn f_k_table(field: &Field, s: &Subgroup, k_max: u64) -> Vec<BigUint> {
    let part = orbits(field, s);
    let cap = k_max as usize;
    let mut coeffs = vec![BigUint::zero(); cap + 1];
    coeffs[0] = BigUint::one();
    for orbit in part.orbits() {
        let len = orbit.len();
        if len > cap {
            continue;
        }
        for i in (0..=cap - len).rev() {
            let add = coeffs[i].clone();
            if !add.is_zero() {
                coeffs[i + len] += add;
            }
        }
    }
    coeffs
}

/// Number of k-subsets whose full stabilizer is exactly the subgroup at
/// `h_index`: the Moebius-weighted sum of f_k over its supergroups.
pub fn g_k(catalog: &GroupCatalog, table: &MuTable, h_index: usize, k: u64) -> Result<BigInt> {
    let field = catalog.field();
    if k > field.q() {
        return Err(Error::KOutOfRange { k, q: field.q() });
    }
    let mut acc = BigInt::zero();
    for j in 0..catalog.len() {
        if !catalog.leq(h_index, j) {
            continue;
        }
        let mu = table.mu(h_index, j).expect("comparable pair in table");
        if mu.is_zero() {
            continue;
        }
        let fk = f_k(field, catalog.get(j), k)?;
        acc += mu * BigInt::from(fk);
    }
    Ok(acc)
}

/// Exact 2-design index for block size k and a stabilizer of the given
/// order: lambda = k(k-1)/|H|, kept as a reduced rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaParam {
    /// Unreduced numerator k(k-1).
    pub raw_numer: u64,
    /// Unreduced denominator |H|.
    pub raw_denom: u64,
    /// Reduced exact value.
    pub value: BigRational,
    pub integral: bool,
}

pub fn lambda_param(q: u64, k: u64, order_h: u64) -> Result<LambdaParam> {
    if k < 2 || k > q {
        return Err(Error::KOutOfRange { k, q });
    }
    let group_order = q * (q - 1);
    if order_h == 0 || group_order % order_h != 0 {
        return Err(Error::InvalidOrder {
            order: order_h,
            group_order,
        });
    }
    let raw_numer = k * (k - 1);
    let value = BigRational::new(BigInt::from(raw_numer), BigInt::from(order_h));
    Ok(LambdaParam {
        raw_numer,
        raw_denom: order_h,
        integral: value.is_integer(),
        value,
    })
}

/// One (subgroup, k) record of a design scan.
#[derive(Clone, Debug)]
pub struct DesignRow {
    pub subgroup_index: usize,
    pub order: u64,
    pub k: u64,
    pub f_k: BigUint,
    pub g_k: BigInt,
    /// Defined for k >= 2 only.
    pub lambda: Option<LambdaParam>,
    /// g_k > 0: the subgroup is realized as a full stabilizer, so the block
    /// orbit of any witness forms a 2-design with the row's lambda.
    pub realizable: bool,
}

/// Per-(subgroup, k) table of fixed-set counts, exact-stabilizer counts,
/// and design parameters.
#[derive(Clone, Debug)]
pub struct DesignReport {
    pub q: u64,
    pub v: u64,
    pub t: u32,
    pub k_min: u64,
    pub k_max: u64,
    pub rows: Vec<DesignRow>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DesignRowJson {
    pub subgroup_index: usize,
    pub order: u64,
    pub k: u64,
    pub f_k: String,
    pub g_k: String,
    pub lambda_num: Option<u64>,
    pub lambda_den: Option<u64>,
    pub integral: Option<bool>,
    pub realizable: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DesignReportJson {
    pub q: u64,
    pub v: u64,
    pub t: u32,
    pub k_min: u64,
    pub k_max: u64,
    pub rows: Vec<DesignRowJson>,
}

impl DesignReport {
    pub fn to_json(&self) -> DesignReportJson {
        DesignReportJson {
            q: self.q,
            v: self.v,
            t: self.t,
            k_min: self.k_min,
            k_max: self.k_max,
            rows: self
                .rows
                .iter()
                .map(|r| DesignRowJson {
                    subgroup_index: r.subgroup_index,
                    order: r.order,
                    k: r.k,
                    f_k: r.f_k.to_string(),
                    g_k: r.g_k.to_string(),
                    lambda_num: r.lambda.as_ref().map(|l| {
                        u64::try_from(l.value.numer().clone()).expect("reduced numerator fits")
                    }),
                    lambda_den: r.lambda.as_ref().map(|l| {
                        u64::try_from(l.value.denom().clone()).expect("reduced denominator fits")
                    }),
                    integral: r.lambda.as_ref().map(|l| l.integral),
                    realizable: r.realizable,
                })
                .collect(),
        }
    }
}

/// Full scan over every subgroup and every k in the range.
pub fn design_scan(
    catalog: &GroupCatalog,
    table: &MuTable,
    k_min: u64,
    k_max: u64,
) -> Result<DesignReport> {
    let field = catalog.field();
    let q = field.q();
    if k_min > k_max || k_max > q {
        return Err(Error::KOutOfRange { k: k_max, q });
    }
    // One f table per subgroup, shared across all its appearances as a
    // supergroup in the g sums.
    let f_tables: Vec<Vec<BigUint>> = (0..catalog.len())
        .map(|i| f_k_table(field, catalog.get(i), k_max))
        .collect();
    let mut rows = Vec::new();
    for i in 0..catalog.len() {
        let order = catalog.get(i).order(field);
        for k in k_min..=k_max {
            let mut g = BigInt::zero();
            for j in 0..catalog.len() {
                if !catalog.leq(i, j) {
                    continue;
                }
                let mu = table.mu(i, j).expect("comparable pair in table");
                if !mu.is_zero() {
                    g += mu * BigInt::from(f_tables[j][k as usize].clone());
                }
            }
            let lambda = if k >= 2 {
                Some(lambda_param(q, k, order)?)
            } else {
                None
            };
            rows.push(DesignRow {
                subgroup_index: i,
                order,
                k,
                f_k: f_tables[i][k as usize].clone(),
                realizable: g > BigInt::zero(),
                g_k: g,
                lambda,
            });
        }
    }
    Ok(DesignReport {
        q,
        v: q,
        t: 2,
        k_min,
        k_max,
        rows,
    })
}

/// Number of ordered m-tuples generating the full group:
/// the Moebius-weighted sum of |H|^m over all subgroups.
pub fn eulerian_phi(catalog: &GroupCatalog, table: &MuTable, m: u32) -> BigInt {
    assert!(m >= 1, "tuple length must be positive");
    let field = catalog.field();
    let top = catalog.full_index();
    let mut acc = BigInt::zero();
    for i in 0..catalog.len() {
        let mu = table
            .mu(i, top)
            .expect("every subgroup sits below the full group");
        if !mu.is_zero() {
            acc += mu * BigInt::from(catalog.get(i).order(field)).pow(m);
        }
    }
    acc
}
