//! F_r-submodules (subspaces) of F_q.
//!
//! Every submodule is stored the same way regardless of which subfield it is
//! a module over: as a reduced row-echelon basis over the prime field, rows
//! ordered by pivot position. That gives one canonical representative per
//! subspace, so structural equality is subspace equality, and "is a module
//! over F_r" becomes a checkable predicate instead of a storage property.

use std::fmt;

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// A subfield F_r of F_q, identified by r = p^m with m | n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubfieldTag {
    r: u64,
    m: u32,
}

impl SubfieldTag {
    /// Subfield of degree m over the prime field. Requires m | n.
    pub fn from_degree(field: &Field, m: u32) -> Result<SubfieldTag> {
        if m == 0 || field.n() % m != 0 {
            return Err(Error::NotDivisor { m, n: field.n() });
        }
        Ok(SubfieldTag {
            r: field.p().pow(m),
            m,
        })
    }

    /// Subfield of order r. Requires r = p^m with m | n.
    pub fn from_order(field: &Field, r: u64) -> Result<SubfieldTag> {
        let mut m = 0u32;
        let mut cur = 1u64;
        while cur < r {
            cur *= field.p();
            m += 1;
        }
        if cur != r || m == 0 || field.n() % m != 0 {
            return Err(Error::NotSubfield { r, q: field.q() });
        }
        Ok(SubfieldTag { r, m })
    }

    pub fn prime_field(field: &Field) -> SubfieldTag {
        SubfieldTag { r: field.p(), m: 1 }
    }

    pub fn whole_field(field: &Field) -> SubfieldTag {
        SubfieldTag {
            r: field.q(),
            m: field.n(),
        }
    }

    /// Order of the subfield.
    pub fn r(&self) -> u64 {
        self.r
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.m
    }
}

/// An F_p-subspace of F_q in canonical reduced-echelon form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Submodule {
    q: u64,
    basis: Vec<FieldElement>,
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Submodule(q={}, dim_p={}, basis={:?})",
            self.q,
            self.basis.len(),
            self.basis.iter().map(|b| b.code()).collect::<Vec<_>>()
        )
    }
}

impl PartialOrd for Submodule {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Submodule {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Canonical order: dimension first, then basis rows lexicographically.
        (self.q, self.basis.len(), &self.basis).cmp(&(other.q, other.basis.len(), &other.basis))
    }
}

/// Serialized form: {"dim_p": k, "basis": [[c0,..,c_{n-1}], ..]}.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SubmoduleJson {
    pub dim_p: usize,
    pub basis: Vec<Vec<u64>>,
}

impl Submodule {
    /// The zero module {0}.
    pub fn zero(field: &Field) -> Submodule {
        Submodule {
            q: field.q(),
            basis: Vec::new(),
        }
    }

    /// All of F_q as a module over itself.
    pub fn whole(field: &Field) -> Submodule {
        let gens: Vec<FieldElement> = (0..field.n())
            .map(|i| {
                let mut coeffs = vec![0u64; field.n() as usize];
                coeffs[i as usize] = 1;
                field.from_coeffs(&coeffs).expect("unit vector")
            })
            .collect();
        Submodule::span(field, &gens).expect("standard basis spans")
    }

    /// F_p-span of a set of elements.
    pub fn span(field: &Field, gens: &[FieldElement]) -> Result<Submodule> {
        let mut rows = Vec::with_capacity(gens.len());
        for &g in gens {
            if g.q() != field.q() {
                return Err(Error::FieldMismatch(field.q(), g.q()));
            }
            rows.push(field.coeffs(g));
        }
        let rows = rref(field.p(), rows);
        Ok(Submodule {
            q: field.q(),
            basis: rows
                .iter()
                .map(|r| field.from_coeffs(r).expect("reduced row"))
                .collect(),
        })
    }

    /// F_r-span: closure of the generators under addition and scalar
    /// multiplication by the subfield of order r.
    pub fn span_over(field: &Field, tag: &SubfieldTag, gens: &[FieldElement]) -> Result<Submodule> {
        if tag.m == 1 {
            return Submodule::span(field, gens);
        }
        // F_r = F_p[s] with basis 1, s, .., s^(m-1), where s generates F_r^*.
        let s = field.subfield_generator_code(tag.r);
        let mut scaled = Vec::with_capacity(gens.len() * tag.m as usize);
        for &g in gens {
            if g.q() != field.q() {
                return Err(Error::FieldMismatch(field.q(), g.q()));
            }
            let mut cur = g.code();
            for _ in 0..tag.m {
                scaled.push(field.from_code(cur).expect("code in range"));
                cur = field.mul_c(cur, s);
            }
        }
        Submodule::span(field, &scaled)
    }

    /// Dimension over the prime field.
    pub fn dim_p(&self) -> u32 {
        self.basis.len() as u32
    }

    /// Number of elements, p^dim_p.
    pub fn size(&self, field: &Field) -> u64 {
        field.p().pow(self.dim_p())
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_whole(&self, field: &Field) -> bool {
        self.dim_p() == field.n()
    }

    /// Canonical echelon basis rows, ordered by pivot.
    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Reduces an element against the basis; the result is the canonical
    /// (lexicographically smallest) representative of its coset.
    pub fn reduce(&self, field: &Field, x: FieldElement) -> FieldElement {
        let p = field.p();
        let mut coeffs = field.coeffs(x);
        for row in &self.basis {
            let rc = field.coeffs(*row);
            let pivot = rc.iter().position(|&c| c != 0).expect("nonzero row");
            let c = coeffs[pivot];
            if c != 0 {
                for (a, &b) in coeffs.iter_mut().zip(&rc) {
                    *a = (*a + (p - c) * b) % p;
                }
            }
        }
        field.from_coeffs(&coeffs).expect("reduced coefficients")
    }

    pub fn contains_element(&self, field: &Field, x: FieldElement) -> bool {
        self.reduce(field, x).is_zero()
    }

    /// Containment of submodules of the same field.
    pub fn contains(&self, field: &Field, other: &Submodule) -> bool {
        other.basis.iter().all(|&b| self.contains_element(field, b))
    }

    /// All elements, sorted in canonical order.
    pub fn elements(&self, field: &Field) -> Vec<FieldElement> {
        let mut out = vec![field.zero()];
        for &row in &self.basis {
            let mut next = Vec::with_capacity(out.len() * field.p() as usize);
            let mut mult = field.zero();
            for _ in 0..field.p() {
                for &e in &out {
                    next.push(field.add(e, mult).expect("same field"));
                }
                mult = field.add(mult, row).expect("same field");
            }
            out = next;
        }
        out.sort();
        out
    }

    /// True iff s * h stays in the module for a generator s of F_r^* and all
    /// basis elements h; sufficient by linearity and cyclicity of F_r^*.
    pub fn is_module_over(&self, field: &Field, tag: &SubfieldTag) -> bool {
        if tag.r == field.p() {
            return true;
        }
        let s = field.subfield_generator_code(tag.r);
        self.basis.iter().all(|&h| {
            let sh = field.mul_c(h.code(), s);
            self.contains_element(field, field.from_code(sh).expect("code in range"))
        })
    }

    /// The largest subfield over which this is a module.
    pub fn stabilizer_field(&self, field: &Field) -> SubfieldTag {
        let mut best = SubfieldTag::prime_field(field);
        for m in (1..=field.n()).rev() {
            if field.n() % m != 0 {
                continue;
            }
            let tag = SubfieldTag::from_degree(field, m).expect("m divides n");
            if self.is_module_over(field, &tag) {
                best = tag;
                break;
            }
        }
        best
    }

    pub fn to_json(&self, field: &Field) -> SubmoduleJson {
        SubmoduleJson {
            dim_p: self.basis.len(),
            basis: self.basis.iter().map(|&b| field.coeffs(b)).collect(),
        }
    }

    pub fn from_json(field: &Field, json: &SubmoduleJson) -> Result<Submodule> {
        let gens: Result<Vec<FieldElement>> = json
            .basis
            .iter()
            .map(|row| field.from_coeffs(row))
            .collect();
        let sub = Submodule::span(field, &gens?)?;
        if sub.dim_p() as usize != json.dim_p {
            return Err(Error::Parse(format!(
                "basis of rank {} tagged dim_p = {}",
                sub.dim_p(),
                json.dim_p
            )));
        }
        Ok(sub)
    }
}

/// Smallest power of p congruent to 1 mod d (so p(1) = 1). Fails if p | d.
pub fn p_of_d(p: u64, d: u64) -> Result<u64> {
    if d == 0 || (d > 1 && d % p == 0) {
        return Err(Error::CharDividesD { p, d });
    }
    if d == 1 {
        return Ok(1);
    }
    let mut cur = p % d;
    let mut m = 1u32;
    while cur != 1 {
        cur = cur * (p % d) % d;
        m += 1;
        assert!(m as u64 <= d, "order of p mod d exceeds d");
    }
    Ok(p.checked_pow(m).expect("p(d) overflows u64"))
}

/// The subfield generated by an element of multiplicative order d: F_{p(d)}
/// for d > 1 and the prime field for d = 1. Requires d | q - 1.
pub fn module_subfield(field: &Field, d: u64) -> Result<SubfieldTag> {
    if d == 0 || (field.q() - 1) % d != 0 {
        return Err(Error::BadSubgroupOrder(d));
    }
    if d == 1 {
        return Ok(SubfieldTag::prime_field(field));
    }
    let r = p_of_d(field.p(), d)?;
    SubfieldTag::from_order(field, r)
}

/// All F_r-subspaces of F_q, canonical, sorted by (dim_p, basis).
pub fn enumerate_submodules(field: &Field, tag: &SubfieldTag) -> Vec<Submodule> {
    enumerate_submodules_within(field, tag, &Submodule::whole(field))
}

/// All F_r-subspaces contained in `ambient`, canonical and sorted.
pub fn enumerate_submodules_within(
    field: &Field,
    tag: &SubfieldTag,
    ambient: &Submodule,
) -> Vec<Submodule> {
    let points = ambient.elements(field);
    let zero = Submodule::zero(field);
    let mut seen = std::collections::HashSet::new();
    seen.insert(zero.clone());
    let mut queue = vec![zero];
    while let Some(m) = queue.pop() {
        for &x in &points {
            if x.is_zero() || m.contains_element(field, x) {
                continue;
            }
            let mut gens: Vec<FieldElement> = m.basis.to_vec();
            gens.push(x);
            let bigger = Submodule::span_over(field, tag, &gens).expect("same field");
            if seen.insert(bigger.clone()) {
                queue.push(bigger);
            }
        }
    }
    let mut out: Vec<Submodule> = seen.into_iter().collect();
    out.sort();
    out
}

/// Preimages in F_q of the 1-dimensional F_r-subspaces of F_q/H, i.e. the
/// immediate F_r-module extensions of H. H must be an F_r-module.
pub fn quotient_lines(field: &Field, tag: &SubfieldTag, h: &Submodule) -> Vec<Submodule> {
    let mut seen = std::collections::HashSet::new();
    for code in 0..field.q() {
        let x = field.from_code(code).expect("code in range");
        if h.contains_element(field, x) {
            continue;
        }
        let mut gens: Vec<FieldElement> = h.basis.to_vec();
        gens.push(x);
        seen.insert(Submodule::span_over(field, tag, &gens).expect("same field"));
    }
    let mut out: Vec<Submodule> = seen.into_iter().collect();
    out.sort();
    out
}

/// dim over F_r of H2/H1 for nested F_r-modules H1 within H2.
pub fn quotient_dim(
    field: &Field,
    h1: &Submodule,
    h2: &Submodule,
    tag: &SubfieldTag,
) -> Result<u32> {
    if !h2.contains(field, h1) {
        return Err(Error::NotContained);
    }
    if !h1.is_module_over(field, tag) || !h2.is_module_over(field, tag) {
        return Err(Error::NotModule { r: tag.r });
    }
    let gap = h2.dim_p() - h1.dim_p();
    if gap % tag.m != 0 {
        return Err(Error::NonIntegralDim);
    }
    Ok(gap / tag.m)
}

/// Moebius value of a codimension-l containment of F_r-spaces:
/// (-1)^l * r^(l(l-1)/2).
pub fn mu_subspace(l: u32, r: u64) -> BigInt {
    let exp = if l < 2 {
        0
    } else {
        l as u64 * (l as u64 - 1) / 2
    };
    let mag = BigInt::from(r).pow(exp.try_into().expect("exponent fits u32"));
    if l % 2 == 0 {
        mag
    } else {
        -mag
    }
}

/// Checks the subspace-refinement identity: over all F_r-subspaces L of V
/// whose F_q'-span is V, the F_r Moebius values sum to the F_q' Moebius
/// value of V. Returning false signals an implementation bug.
pub fn mu_refinement_check(
    field: &Field,
    r: &SubfieldTag,
    q_prime: &SubfieldTag,
    v: &Submodule,
) -> Result<bool> {
    if q_prime.m % r.m != 0 {
        return Err(Error::NotSubfield {
            r: r.r,
            q: q_prime.r,
        });
    }
    let dim_v = quotient_dim(field, &Submodule::zero(field), v, q_prime)?;
    let rhs = mu_subspace(dim_v, q_prime.r);
    let mut lhs = BigInt::from(0);
    for l in enumerate_submodules_within(field, r, v) {
        let spanned = Submodule::span_over(field, q_prime, l.basis())?;
        if spanned == *v {
            lhs += mu_subspace(l.dim_p() / r.m, r.r);
        }
    }
    Ok(lhs == rhs)
}

/// Reduced row echelon form over F_p; returns nonzero rows ordered by pivot.
fn rref(p: u64, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    if rows.is_empty() {
        return rows;
    }
    let n = rows[0].len();
    let mut pivot_row = 0usize;
    for col in 0..n {
        let Some(found) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = arith::inv_mod(rows[pivot_row][col], p);
        for c in rows[pivot_row].iter_mut() {
            *c = *c * inv % p;
        }
        for r in 0..rows.len() {
            if r != pivot_row && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..n {
                    let sub = factor * rows[pivot_row][c] % p;
                    rows[r][c] = (rows[r][c] + p - sub) % p;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Gaussian binomial [n k]_r by the Pascal-type recurrence; independent
    /// of the enumeration code.
    fn gaussian_binomial(n: u32, k: u32, r: u64) -> u128 {
        if k > n {
            return 0;
        }
        if k == 0 || k == n {
            return 1;
        }
        gaussian_binomial(n - 1, k - 1, r) + (r as u128).pow(k) * gaussian_binomial(n - 1, k, r)
    }

    fn subspace_total(n: u32, m: u32, r: u64) -> u128 {
        let nr = n / m;
        (0..=nr).map(|k| gaussian_binomial(nr, k, r)).sum()
    }

    #[test]
    fn p_of_d_examples() {
        assert_eq!(p_of_d(2, 1).unwrap(), 1);
        assert_eq!(p_of_d(7, 1).unwrap(), 1);
        assert_eq!(p_of_d(2, 3).unwrap(), 4);
        assert_eq!(p_of_d(3, 2).unwrap(), 3);
        assert_eq!(p_of_d(2, 7).unwrap(), 8);
        assert!(matches!(p_of_d(3, 6), Err(Error::CharDividesD { .. })));
    }

    #[test]
    fn p_of_d_degree_divides_n_for_divisors_of_group_order() {
        for (p, n) in [(2u64, 4u32), (3, 3), (5, 2), (2, 6)] {
            let q = p.pow(n);
            for d in crate::arith::divisors(q - 1) {
                let r = p_of_d(p, d).unwrap();
                if d > 1 {
                    let mut m = 0;
                    let mut cur = 1u64;
                    while cur < r {
                        cur *= p;
                        m += 1;
                    }
                    assert_eq!(n % m, 0, "ord_{}({}) must divide {}", d, p, n);
                }
            }
        }
    }

    #[test]
    fn zero_and_whole_are_modules_over_everything() {
        let f = Field::new(2, 4).unwrap();
        for m in [1, 2, 4] {
            let tag = SubfieldTag::from_degree(&f, m).unwrap();
            assert!(Submodule::zero(&f).is_module_over(&f, &tag));
            assert!(Submodule::whole(&f).is_module_over(&f, &tag));
        }
    }

    #[test]
    fn f2_span_of_one_is_not_an_f4_module() {
        let f = Field::new(2, 4).unwrap();
        let h = Submodule::span(&f, &[f.one()]).unwrap();
        let f4 = SubfieldTag::from_order(&f, 4).unwrap();
        assert!(!h.is_module_over(&f, &f4));
        // Witness: the F_4 generator gamma^5 moves 1 outside {0, 1}.
        let g5 = f.pow(f.generator(), 5).unwrap();
        assert!(!h.contains_element(&f, g5));
    }

    #[test]
    fn stabilizer_fields() {
        let f = Field::new(2, 4).unwrap();
        assert_eq!(Submodule::zero(&f).stabilizer_field(&f).r(), 16);
        assert_eq!(Submodule::whole(&f).stabilizer_field(&f).r(), 16);
        let g = f.generator();
        let h = Submodule::span(&f, &[f.one(), g]).unwrap();
        assert_eq!(h.stabilizer_field(&f).r(), 2);
        // The F_4 subfield, viewed as a submodule, is stabilized by F_4.
        let sub4 = Submodule::span(&f, &f.subfield_elements(2).unwrap()).unwrap();
        assert_eq!(sub4.stabilizer_field(&f).r(), 4);
    }

    #[test]
    fn stabilizer_is_maximal() {
        for (p, n) in [(2u64, 4u32), (2, 6), (3, 2)] {
            let f = Field::new(p, n).unwrap();
            for sub in enumerate_submodules(&f, &SubfieldTag::prime_field(&f)) {
                let stab = sub.stabilizer_field(&f);
                assert!(sub.is_module_over(&f, &stab));
                for m in 1..=n {
                    if n % m != 0 {
                        continue;
                    }
                    let tag = SubfieldTag::from_degree(&f, m).unwrap();
                    if tag.r() > stab.r() {
                        assert!(
                            !sub.is_module_over(&f, &tag),
                            "subfield of order {} beats the claimed stabilizer {}",
                            tag.r(),
                            stab.r()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_counts_match_gaussian_binomials() {
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(
            enumerate_submodules(&f4, &SubfieldTag::whole_field(&f4)).len(),
            2
        );
        assert_eq!(
            enumerate_submodules(&f4, &SubfieldTag::prime_field(&f4)).len(),
            5
        );
        let f16 = Field::new(2, 4).unwrap();
        assert_eq!(
            enumerate_submodules(&f16, &SubfieldTag::from_order(&f16, 4).unwrap()).len(),
            7
        );

        for (p, n) in [
            (2u64, 1u32),
            (3, 1),
            (2, 2),
            (5, 1),
            (7, 1),
            (2, 3),
            (3, 2),
            (2, 4),
            (5, 2),
            (3, 3),
            (2, 5),
            (7, 2),
            (2, 6),
            (3, 4),
        ] {
            let f = Field::new(p, n).unwrap();
            if f.q() > 81 {
                continue;
            }
            for m in 1..=n {
                if n % m != 0 {
                    continue;
                }
                let tag = SubfieldTag::from_degree(&f, m).unwrap();
                let subs = enumerate_submodules(&f, &tag);
                assert_eq!(derive_total(&subs), subs.len());
                assert_eq!(
                    subs.len() as u128,
                    subspace_total(n, m, tag.r()),
                    "count mismatch for q={} r={}",
                    f.q(),
                    tag.r()
                );
            }
        }

        fn derive_total(subs: &[Submodule]) -> usize {
            // Duplicate-free by canonical-form equality.
            let set: std::collections::HashSet<_> = subs.iter().collect();
            set.len()
        }
    }

    #[test]
    fn canonical_form_is_spanning_set_independent() {
        let f = Field::new(3, 2).unwrap();
        let tag = SubfieldTag::prime_field(&f);
        for sub in enumerate_submodules(&f, &tag) {
            let elems = sub.elements(&f);
            // Spanning from all elements, reversed elements, or the basis
            // itself must rebuild the identical canonical form.
            let a = Submodule::span(&f, &elems).unwrap();
            let mut rev = elems.clone();
            rev.reverse();
            let b = Submodule::span(&f, &rev).unwrap();
            assert_eq!(a, sub);
            assert_eq!(b, sub);
            assert_eq!(elems.len() as u64, sub.size(&f));
        }
    }

    #[test]
    fn quotient_dims() {
        let f = Field::new(2, 4).unwrap();
        let f4 = SubfieldTag::from_order(&f, 4).unwrap();
        let zero = Submodule::zero(&f);
        let whole = Submodule::whole(&f);
        assert_eq!(quotient_dim(&f, &zero, &zero, &f4).unwrap(), 0);
        assert_eq!(quotient_dim(&f, &zero, &whole, &f4).unwrap(), 2);
        let sub4 = Submodule::span(&f, &f.subfield_elements(2).unwrap()).unwrap();
        assert_eq!(quotient_dim(&f, &sub4, &whole, &f4).unwrap(), 1);
        assert_eq!(
            quotient_dim(&f, &whole, &zero, &f4).unwrap_err(),
            Error::NotContained
        );
        let h = Submodule::span(&f, &[f.one()]).unwrap();
        assert_eq!(
            quotient_dim(&f, &h, &whole, &f4).unwrap_err(),
            Error::NotModule { r: 4 }
        );

        let f4_field = Field::new(2, 2).unwrap();
        let w4 = SubfieldTag::whole_field(&f4_field);
        assert_eq!(
            quotient_dim(
                &f4_field,
                &Submodule::zero(&f4_field),
                &Submodule::whole(&f4_field),
                &w4
            )
            .unwrap(),
            1
        );
    }

    #[test]
    fn mu_subspace_values() {
        assert_eq!(mu_subspace(0, 4), BigInt::from(1));
        assert_eq!(mu_subspace(1, 2), BigInt::from(-1));
        assert_eq!(mu_subspace(1, 97), BigInt::from(-1));
        assert_eq!(mu_subspace(3, 2), BigInt::from(-8));
        assert_eq!(mu_subspace(2, 3), BigInt::from(3));
    }

    #[test]
    fn refinement_identity_examples() {
        let f = Field::new(2, 4).unwrap();
        let r2 = SubfieldTag::prime_field(&f);
        let r4 = SubfieldTag::from_order(&f, 4).unwrap();
        // V = {0}: both sides 1.
        assert!(mu_refinement_check(&f, &r2, &r4, &Submodule::zero(&f)).unwrap());
        // V = the F_4 subfield: -3 + 2 = -1.
        let sub4 = Submodule::span(&f, &f.subfield_elements(2).unwrap()).unwrap();
        assert!(mu_refinement_check(&f, &r2, &r4, &sub4).unwrap());
        // V = F_16 over F_4, refined by F_2.
        assert!(mu_refinement_check(&f, &r2, &r4, &Submodule::whole(&f)).unwrap());
    }

    #[test]
    fn quotient_lines_of_zero_are_the_lines() {
        let f = Field::new(2, 2).unwrap();
        let lines = quotient_lines(&f, &SubfieldTag::prime_field(&f), &Submodule::zero(&f));
        assert_eq!(lines.len(), 3);
        for l in &lines {
            assert_eq!(l.dim_p(), 1);
        }
        let f16 = Field::new(2, 4).unwrap();
        let tag4 = SubfieldTag::from_order(&f16, 4).unwrap();
        let lines4 = quotient_lines(&f16, &tag4, &Submodule::zero(&f16));
        assert_eq!(lines4.len(), 5); // the five F_4-lines of a 2-dim F_4-space
    }

    #[test]
    fn reduce_gives_coset_canonical_representative() {
        let f = Field::new(3, 2).unwrap();
        let h = Submodule::span(&f, &[f.one()]).unwrap();
        // Reducing any element twice is stable, and representatives of the
        // same coset coincide.
        for a in 0..f.q() {
            let x = f.from_code(a).unwrap();
            let rx = h.reduce(&f, x);
            assert_eq!(h.reduce(&f, rx), rx);
            for hel in h.elements(&f) {
                let shifted = f.add(x, hel).unwrap();
                assert_eq!(h.reduce(&f, shifted), rx);
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let f = Field::new(2, 4).unwrap();
        let sub = Submodule::span(&f, &[f.one(), f.generator()]).unwrap();
        let json = sub.to_json(&f);
        assert_eq!(json.dim_p, 2);
        let back = Submodule::from_json(&f, &json).unwrap();
        assert_eq!(back, sub);
    }
}
