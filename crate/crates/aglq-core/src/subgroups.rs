//! Subgroups of AGL(1, F_q) in canonical triple form.
//!
//! Every subgroup is S(a, b, H): the group generated by the affine map
//! x -> ax + b together with all translations by H, where a = gamma^((q-1)/d)
//! for a divisor d of q - 1 and H is a module over the subfield generated by
//! a. The triple (d, H, b mod H) identifies the subgroup uniquely, with b
//! fixed to its canonical coset representative (and to 0 when d = 1), so
//! `Subgroup` is a value type with structural equality. The catalog holds
//! the complete, canonically ordered list for one field.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::lattice::Poset;
use crate::submodules::{
    enumerate_submodules, module_subfield, quotient_lines, SubfieldTag, Submodule, SubmoduleJson,
};

/// An invertible affine map x -> ax + b with a != 0.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineMap {
    a: FieldElement,
    b: FieldElement,
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineMap(a={}, b={})", self.a.code(), self.b.code())
    }
}

impl AffineMap {
    pub fn new(field: &Field, a: FieldElement, b: FieldElement) -> Result<AffineMap> {
        if a.q() != field.q() || b.q() != field.q() {
            return Err(Error::FieldMismatch(field.q(), a.q().max(b.q())));
        }
        if a.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(AffineMap { a, b })
    }

    pub fn identity(field: &Field) -> AffineMap {
        AffineMap {
            a: field.one(),
            b: field.zero(),
        }
    }

    pub fn translation(field: &Field, b: FieldElement) -> Result<AffineMap> {
        AffineMap::new(field, field.one(), b)
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    pub fn b(&self) -> FieldElement {
        self.b
    }

    /// Composition (self then applied after other): (a1,b1)(a2,b2) =
    /// (a1 a2, a1 b2 + b1).
    pub fn compose(&self, field: &Field, other: &AffineMap) -> Result<AffineMap> {
        let a = field.mul(self.a, other.a)?;
        let b = field.add(field.mul(self.a, other.b)?, self.b)?;
        Ok(AffineMap { a, b })
    }

    pub fn inverse(&self, field: &Field) -> Result<AffineMap> {
        let ainv = field.inv(self.a)?;
        let b = field.neg(field.mul(ainv, self.b)?)?;
        Ok(AffineMap { a: ainv, b })
    }

    /// The action on points: x -> ax + b.
    pub fn apply(&self, field: &Field, x: FieldElement) -> Result<FieldElement> {
        field.add(field.mul(self.a, x)?, self.b)
    }
}

/// A subgroup in canonical (d, H, b) form; order d * |H|.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    d: u64,
    h: Submodule,
    b_rep: FieldElement,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subgroup(d={}, dim_h={}, b={})",
            self.d,
            self.h.dim_p(),
            self.b_rep.code()
        )
    }
}

/// Serialized form: {"d": d, "b": "g^k", "H": {...}, "order": d|H|}.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SubgroupJson {
    pub d: u64,
    pub b: String,
    #[serde(rename = "H")]
    pub h: SubmoduleJson,
    pub order: u64,
}

impl Subgroup {
    /// Canonicalizing constructor: reduces b mod H (forcing 0 when d = 1)
    /// and validates that d | q - 1 and H is a module over the subfield
    /// generated by elements of order d.
    pub fn new(field: &Field, d: u64, h: Submodule, b: FieldElement) -> Result<Subgroup> {
        if d == 0 || (field.q() - 1) % d != 0 {
            return Err(Error::BadSubgroupOrder(d));
        }
        if h.q() != field.q() || b.q() != field.q() {
            return Err(Error::FieldMismatch(field.q(), h.q()));
        }
        let tag = module_subfield(field, d)?;
        if !h.is_module_over(field, &tag) {
            return Err(Error::NotModule { r: tag.r() });
        }
        let b_rep = if d == 1 {
            field.zero()
        } else {
            h.reduce(field, b)
        };
        Ok(Subgroup { d, h, b_rep })
    }

    pub fn trivial(field: &Field) -> Subgroup {
        Subgroup {
            d: 1,
            h: Submodule::zero(field),
            b_rep: field.zero(),
        }
    }

    pub fn full(field: &Field) -> Subgroup {
        Subgroup {
            d: field.q() - 1,
            h: Submodule::whole(field),
            b_rep: field.zero(),
        }
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn h(&self) -> &Submodule {
        &self.h
    }

    pub fn b_rep(&self) -> FieldElement {
        self.b_rep
    }

    pub fn order(&self, field: &Field) -> u64 {
        self.d * self.h.size(field)
    }

    pub fn is_trivial(&self) -> bool {
        self.d == 1 && self.h.is_zero()
    }

    pub fn is_full(&self, field: &Field) -> bool {
        self.d == field.q() - 1 && self.h.is_whole(field)
    }

    /// The cyclic part's generator a = gamma^((q-1)/d).
    pub fn a_generator(&self, field: &Field) -> FieldElement {
        field
            .from_code(field.gamma_pow_c((field.q() - 1) / self.d))
            .expect("generator power")
    }

    /// A generating set: the map (a, b) plus translations by basis vectors.
    pub fn generators(&self, field: &Field) -> Vec<AffineMap> {
        let mut gens = vec![AffineMap {
            a: self.a_generator(field),
            b: self.b_rep,
        }];
        for &h in self.h.basis() {
            gens.push(AffineMap {
                a: field.one(),
                b: h,
            });
        }
        gens
    }

    /// Membership: g = (a, b) lies in S(A, b0, H) iff a = A^k for some k and
    /// b - b0 * (1 + A + .. + A^(k-1)) falls in H.
    pub fn member(&self, field: &Field, g: &AffineMap) -> Result<bool> {
        if g.a.q() != field.q() || self.h.q() != field.q() {
            return Err(Error::FieldMismatch(field.q(), g.a.q()));
        }
        let step = (field.q() - 1) / self.d;
        let e = field.dlog(g.a)?.expect("a is nonzero");
        if e % step != 0 {
            return Ok(false);
        }
        let k = e / step;
        let residue = if self.b_rep.is_zero() {
            g.b
        } else {
            let a_gen = self.a_generator(field);
            let shift = field.mul(self.b_rep, geometric_sum(field, a_gen, k)?)?;
            field.sub(g.b, shift)?
        };
        Ok(self.h.contains_element(field, residue))
    }

    /// All d * |H| elements: (A^k, b * (1 + A + .. + A^(k-1)) + h).
    pub fn elements(&self, field: &Field) -> Vec<AffineMap> {
        let a_gen = self.a_generator(field);
        let h_elems = self.h.elements(field);
        let mut out = Vec::with_capacity(self.d as usize * h_elems.len());
        let mut a_pow = field.one();
        let mut shift = field.zero();
        for _ in 0..self.d {
            for &h in &h_elems {
                out.push(AffineMap {
                    a: a_pow,
                    b: field.add(shift, h).expect("same field"),
                });
            }
            // Maintain (A^k, b * sigma_k) incrementally: applying (A, b)
            // once more multiplies a by A and maps the shift to A*shift + b.
            shift = field
                .add(field.mul(a_gen, shift).expect("same field"), self.b_rep)
                .expect("same field");
            a_pow = field.mul(a_pow, a_gen).expect("same field");
        }
        out.sort();
        out
    }

    /// Recognizes the canonical triple of the subgroup generated by a set of
    /// maps (closure under composition, then triple extraction). An empty
    /// set yields the trivial subgroup.
    pub fn from_generators(field: &Field, gens: &[AffineMap]) -> Result<Subgroup> {
        let mut elems: Vec<AffineMap> = vec![AffineMap::identity(field)];
        let mut seen: HashSet<AffineMap> = elems.iter().copied().collect();
        let mut queue: Vec<AffineMap> = Vec::new();
        for &g in gens {
            if g.a.q() != field.q() {
                return Err(Error::FieldMismatch(field.q(), g.a.q()));
            }
            if seen.insert(g) {
                elems.push(g);
                queue.push(g);
            }
        }
        while let Some(g) = queue.pop() {
            let snapshot: Vec<AffineMap> = elems.clone();
            for e in snapshot {
                for prod in [g.compose(field, &e)?, e.compose(field, &g)?] {
                    if seen.insert(prod) {
                        elems.push(prod);
                        queue.push(prod);
                    }
                }
            }
        }

        let mut d = 1u64;
        for g in &elems {
            d = arith::lcm(d, field.element_order(g.a)?);
        }
        let translations: Vec<FieldElement> = elems
            .iter()
            .filter(|g| g.a == field.one())
            .map(|g| g.b)
            .collect();
        let h = Submodule::span(field, &translations)?;
        let a_gen = field.pow(field.generator(), (field.q() - 1) / d)?;
        let b = elems
            .iter()
            .find(|g| g.a == a_gen)
            .map(|g| g.b)
            .expect("closure contains every power of its cyclic part");
        let sub = Subgroup::new(field, d, h, b)?;
        debug_assert_eq!(sub.order(field) as usize, elems.len());
        Ok(sub)
    }

    /// The translation conjugate with b = 0, together with the conjugating
    /// translation t = (1, c) satisfying t S t^-1 = S(a, 0, H); c = 0 when
    /// d = 1 or b is already 0, else c = b / (a - 1).
    pub fn normalize_conjugate(&self, field: &Field) -> (Subgroup, AffineMap) {
        if self.d == 1 || self.b_rep.is_zero() {
            return (self.clone(), AffineMap::identity(field));
        }
        let a_gen = self.a_generator(field);
        let c = field
            .div(
                self.b_rep,
                field.sub(a_gen, field.one()).expect("same field"),
            )
            .expect("a != 1 since d != 1");
        let normalized = Subgroup {
            d: self.d,
            h: self.h.clone(),
            b_rep: field.zero(),
        };
        (
            normalized,
            AffineMap::translation(field, c).expect("translation"),
        )
    }

    /// Conjugation by the translation (1, c): S(a, b, H) maps to
    /// S(a, b + c(1 - a), H).
    pub fn conjugate_by_translation(&self, field: &Field, c: FieldElement) -> Result<Subgroup> {
        let a_gen = self.a_generator(field);
        let delta = field.mul(c, field.sub(field.one(), a_gen)?)?;
        let b = field.add(self.b_rep, delta)?;
        Subgroup::new(field, self.d, self.h.clone(), b)
    }

    /// True iff `inner` is a subgroup of `self`, decided by membership of
    /// inner's generators.
    pub fn contains(&self, field: &Field, inner: &Subgroup) -> Result<bool> {
        for g in inner.generators(field) {
            if !self.member(field, &g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Containment decided on canonical forms alone: after conjugating both
    /// by the translation normalizing `inner`, containment holds iff
    /// d1 | d2, H1 within H2, and the conjugated outer triple has b = 0.
    /// Used as a cross-check against `contains`.
    pub fn contains_by_form(&self, field: &Field, inner: &Subgroup) -> Result<bool> {
        if self.d % inner.d != 0 || !self.h.contains(field, &inner.h) {
            return Ok(false);
        }
        if inner.d == 1 {
            // Translations of inner are exactly H1, already checked above.
            return Ok(true);
        }
        let (_, t) = inner.normalize_conjugate(field);
        let outer = self.conjugate_by_translation(field, t.b)?;
        Ok(outer.b_rep.is_zero())
    }

    pub fn to_json(&self, field: &Field) -> SubgroupJson {
        SubgroupJson {
            d: self.d,
            b: field.format_element(self.b_rep),
            h: self.h.to_json(field),
            order: self.order(field),
        }
    }

    pub fn from_json(field: &Field, json: &SubgroupJson) -> Result<Subgroup> {
        let h = Submodule::from_json(field, &json.h)?;
        let b = field.parse_element(&json.b)?;
        let sub = Subgroup::new(field, json.d, h, b)?;
        if sub.order(field) != json.order {
            return Err(Error::Parse(format!(
                "subgroup order {} tagged {}",
                sub.order(field),
                json.order
            )));
        }
        Ok(sub)
    }
}

/// 1 + a + .. + a^(k-1), via (a^k - 1)/(a - 1) when a != 1 and as the
/// constant k mod p otherwise.
fn geometric_sum(field: &Field, a: FieldElement, k: u64) -> Result<FieldElement> {
    if a == field.one() {
        field.from_coeffs(&[k % field.p()])
    } else {
        let num = field.sub(field.pow(a, k)?, field.one())?;
        field.div(num, field.sub(a, field.one())?)
    }
}

/// Size limits for catalog construction.
#[derive(Clone, Copy, Debug)]
pub struct CatalogLimits {
    /// Enumeration refuses fields larger than this.
    pub max_q: u64,
    /// The containment relation is precomputed as a bit matrix up to this q;
    /// beyond it, containment queries fall back to on-demand checks.
    pub containment_matrix_max_q: u64,
}

impl Default for CatalogLimits {
    fn default() -> Self {
        CatalogLimits {
            max_q: 128,
            containment_matrix_max_q: 128,
        }
    }
}

/// The complete, canonically ordered list of subgroups of AGL(1, F_q),
/// with containment and per-subgroup element caches. Frozen after
/// construction; all queries are read-only.
pub struct GroupCatalog {
    field: Arc<Field>,
    all: Vec<Subgroup>,
    index: HashMap<Subgroup, usize>,
    by_order: BTreeMap<u64, Vec<usize>>,
    /// Row-major containment bits: leq[i * len + j] = (i inside j).
    leq_matrix: Option<Vec<bool>>,
    elements_cache: Vec<OnceLock<Arc<Vec<AffineMap>>>>,
    trivial_index: usize,
    full_index: usize,
}

impl fmt::Debug for GroupCatalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupCatalog(q={}, subgroups={})",
            self.field.q(),
            self.all.len()
        )
    }
}

/// Serialized catalog: field fingerprint plus subgroups in canonical order.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CatalogJson {
    pub p: u64,
    pub n: u32,
    pub q: u64,
    pub subgroups: Vec<SubgroupJson>,
}

impl GroupCatalog {
    pub fn build(field: Field) -> Result<GroupCatalog> {
        GroupCatalog::build_with(field, CatalogLimits::default())
    }

    pub fn build_with(field: Field, limits: CatalogLimits) -> Result<GroupCatalog> {
        if field.q() > limits.max_q {
            return Err(Error::SizeCap {
                q: field.q() as u128,
                cap: limits.max_q,
            });
        }
        let mut all = Vec::new();
        for d in arith::divisors(field.q() - 1) {
            let tag = module_subfield(&field, d)?;
            for h in enumerate_submodules(&field, &tag) {
                if d == 1 {
                    all.push(Subgroup::new(&field, 1, h, field.zero())?);
                } else {
                    for b in coset_representatives(&field, &h) {
                        all.push(Subgroup::new(&field, d, h.clone(), b)?);
                    }
                }
            }
        }
        all.sort();
        all.dedup();
        GroupCatalog::freeze(Arc::new(field), all, limits)
    }

    /// Assembles a catalog from an already-enumerated subgroup list (used by
    /// cache loading); the list must be canonically sorted and complete.
    pub fn from_parts(field: Field, subgroups: Vec<Subgroup>) -> Result<GroupCatalog> {
        let mut sorted = subgroups.clone();
        sorted.sort();
        sorted.dedup();
        if sorted != subgroups {
            return Err(Error::Parse(
                "subgroup list is not in canonical order".into(),
            ));
        }
        GroupCatalog::freeze(Arc::new(field), subgroups, CatalogLimits::default())
    }

    fn freeze(
        field: Arc<Field>,
        all: Vec<Subgroup>,
        limits: CatalogLimits,
    ) -> Result<GroupCatalog> {
        let len = all.len();
        let index: HashMap<Subgroup, usize> = all
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut by_order: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (i, s) in all.iter().enumerate() {
            by_order.entry(s.order(&field)).or_default().push(i);
        }
        let leq_matrix = if field.q() <= limits.containment_matrix_max_q {
            let mut m = vec![false; len * len];
            for (i, inner) in all.iter().enumerate() {
                for (j, outer) in all.iter().enumerate() {
                    m[i * len + j] = outer.contains(&field, inner)?;
                }
            }
            Some(m)
        } else {
            None
        };
        // Enumeration always produces these; a deserialized list may not.
        let trivial_index = *index
            .get(&Subgroup::trivial(&field))
            .ok_or_else(|| Error::Parse("subgroup list is missing the trivial subgroup".into()))?;
        let full_index = *index
            .get(&Subgroup::full(&field))
            .ok_or_else(|| Error::Parse("subgroup list is missing the full group".into()))?;
        Ok(GroupCatalog {
            field,
            all,
            index,
            by_order,
            leq_matrix,
            elements_cache: (0..len).map(|_| OnceLock::new()).collect(),
            trivial_index,
            full_index,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<Field> {
        Arc::clone(&self.field)
    }

    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.all[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Subgroup> {
        self.all.iter()
    }

    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn indices_of_order(&self, order: u64) -> &[usize] {
        self.by_order.get(&order).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn trivial_index(&self) -> usize {
        self.trivial_index
    }

    pub fn full_index(&self) -> usize {
        self.full_index
    }

    /// Containment: subgroup i inside subgroup j.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        match &self.leq_matrix {
            Some(m) => m[i * self.all.len() + j],
            None => self.all[j]
                .contains(&self.field, &self.all[i])
                .expect("cataloged subgroups share the field"),
        }
    }

    /// Element set of subgroup i, computed once and shared.
    pub fn elements(&self, i: usize) -> Arc<Vec<AffineMap>> {
        self.elements_cache[i]
            .get_or_init(|| Arc::new(self.all[i].elements(&self.field)))
            .clone()
    }

    /// The containment poset over catalog indices.
    pub fn poset(&self) -> Result<Poset> {
        Poset::from_leq(self.all.len(), |i, j| self.leq(i, j))
    }

    /// Immediate (cover) supergroups of subgroup i, by the closed-form
    /// description: prime extensions of the cyclic part bounded by the
    /// stabilizer subfield of H, plus one-line module extensions of H.
    pub fn immediate_supergroups(&self, i: usize) -> Result<Vec<usize>> {
        let s = &self.all[i];
        let field = &*self.field;
        if s.is_full(field) {
            return Err(Error::FullGroup);
        }
        let mut out = BTreeSet::new();
        if s.d != 1 {
            let (s0, t) = s.normalize_conjugate(field);
            let neg_c = field.neg(t.b)?;
            let stab = s0.h.stabilizer_field(field);
            let quota = (stab.r() - 1) / s0.d;
            for (e, _) in arith::factorize(quota) {
                let k = Subgroup::new(field, s0.d * e, s0.h.clone(), field.zero())?
                    .conjugate_by_translation(field, neg_c)?;
                out.insert(self.expect_index(&k));
            }
            let tag = module_subfield(field, s0.d)?;
            for line in quotient_lines(field, &tag, &s0.h) {
                let k = Subgroup::new(field, s0.d, line, field.zero())?
                    .conjugate_by_translation(field, neg_c)?;
                out.insert(self.expect_index(&k));
            }
        } else {
            let stab = s.h.stabilizer_field(field);
            for (e, _) in arith::factorize(stab.r() - 1) {
                for b in coset_representatives(field, &s.h) {
                    let k = Subgroup::new(field, e, s.h.clone(), b)?;
                    out.insert(self.expect_index(&k));
                }
            }
            let prime = SubfieldTag::prime_field(field);
            for line in quotient_lines(field, &prime, &s.h) {
                let k = Subgroup::new(field, 1, line, field.zero())?;
                out.insert(self.expect_index(&k));
            }
        }
        Ok(out.into_iter().collect())
    }

    fn expect_index(&self, s: &Subgroup) -> usize {
        self.index_of(s)
            .expect("constructed supergroup must be cataloged")
    }

    pub fn to_json(&self) -> CatalogJson {
        CatalogJson {
            p: self.field.p(),
            n: self.field.n(),
            q: self.field.q(),
            subgroups: self.all.iter().map(|s| s.to_json(&self.field)).collect(),
        }
    }

    pub fn from_json(json: &CatalogJson) -> Result<GroupCatalog> {
        let field = Field::new(json.p, json.n)?;
        if field.q() != json.q {
            return Err(Error::Parse(format!(
                "inconsistent field sizes: p^n = {} but q = {}",
                field.q(),
                json.q
            )));
        }
        let subs: Result<Vec<Subgroup>> = json
            .subgroups
            .iter()
            .map(|sj| Subgroup::from_json(&field, sj))
            .collect();
        GroupCatalog::from_parts(field, subs?)
    }
}

/// Canonical coset representatives of H in F_q (elements equal to their own
/// reduction), sorted.
pub fn coset_representatives(field: &Field, h: &Submodule) -> Vec<FieldElement> {
    let mut out = Vec::with_capacity((field.q() / h.size(field)) as usize);
    for code in 0..field.q() {
        let x = field.from_code(code).expect("code in range");
        if h.reduce(field, x) == x {
            out.push(x);
        }
    }
    out
}
