//! Acceptance suite: one test per verification criterion, each printing a
//! pass line. Every check is exact — integer equality, zero tolerance.
//!
//! The brute-force helpers in this file (map closure, subgroup enumeration
//! by iterated closure, generating-tuple counts, binomials) deliberately
//! avoid the library's triple parametrization and Moebius code paths so the
//! two sides stay independent.

use std::collections::{BTreeSet, HashSet};

use num::{BigInt, BigUint, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use aglq_core::agl_mobius::{mu_closed, mu_table_closed, mu_table_oracle, DEFAULT_ORACLE_CAP};
use aglq_core::designs::{design_scan, eulerian_phi, f_k};
use aglq_core::lattice::{
    elementary_abelian_mu_check, moebius_invert, mu_crosscut_lower, mu_crosscut_upper,
    mu_recursive, summatory,
};
use aglq_core::submodules::{enumerate_submodules, mu_refinement_check, SubfieldTag};
use aglq_core::{Field, GroupCatalog};

fn build(q: u64) -> GroupCatalog {
    let (p, n) = prime_power(q).expect("verification q must be a prime power");
    GroupCatalog::build(Field::new(p, n).unwrap()).unwrap()
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    for p in 2..=q {
        if q % p == 0 {
            let mut n = 0;
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
                n += 1;
            }
            return if rest == 1 { Some((p, n)) } else { None };
        }
    }
    None
}

/// Composition of affine maps given as raw (a, b) code pairs.
fn compose(field: &Field, g: (u64, u64), h: (u64, u64)) -> (u64, u64) {
    let a1 = field.from_code(g.0).unwrap();
    let b1 = field.from_code(g.1).unwrap();
    let a2 = field.from_code(h.0).unwrap();
    let b2 = field.from_code(h.1).unwrap();
    let a = field.mul(a1, a2).unwrap();
    let b = field.add(field.mul(a1, b2).unwrap(), b1).unwrap();
    (a.code(), b.code())
}

/// Closure of a generating set under composition.
fn closure(field: &Field, gens: &[(u64, u64)]) -> BTreeSet<(u64, u64)> {
    let one = field.one().code();
    let mut set: BTreeSet<(u64, u64)> = BTreeSet::new();
    set.insert((one, 0));
    let mut queue: Vec<(u64, u64)> = Vec::new();
    for &g in gens {
        if set.insert(g) {
            queue.push(g);
        }
    }
    while let Some(g) = queue.pop() {
        let snapshot: Vec<(u64, u64)> = set.iter().copied().collect();
        for e in snapshot {
            for prod in [compose(field, g, e), compose(field, e, g)] {
                if set.insert(prod) {
                    queue.push(prod);
                }
            }
        }
    }
    set
}

/// Every subgroup of AGL(1, F_q) as an element set, by iterated closure:
/// grow each known subgroup by each outside element until no new subgroup
/// appears. Complete because every subgroup is reached by adding one
/// generator at a time.
fn all_subgroups_brute(field: &Field) -> BTreeSet<BTreeSet<(u64, u64)>> {
    let mut points = Vec::new();
    for a in 0..field.q() {
        if field.from_code(a).unwrap().is_zero() {
            continue;
        }
        for b in 0..field.q() {
            points.push((a, b));
        }
    }
    let trivial: BTreeSet<(u64, u64)> = closure(field, &[]);
    let mut found: BTreeSet<BTreeSet<(u64, u64)>> = BTreeSet::new();
    found.insert(trivial.clone());
    let mut queue = vec![trivial];
    while let Some(sub) = queue.pop() {
        for &g in &points {
            if sub.contains(&g) {
                continue;
            }
            let mut gens: Vec<(u64, u64)> = sub.iter().copied().collect();
            gens.push(g);
            let bigger = closure(field, &gens);
            if found.insert(bigger.clone()) {
                queue.push(bigger);
            }
        }
    }
    found
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[test]
fn acceptance_1_oracle_equivalence() {
    let qs = [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27];
    let mut pairs = 0usize;
    for &q in &qs {
        let catalog = build(q);
        let closed = mu_table_closed(&catalog).unwrap();
        let oracle = mu_table_oracle(&catalog, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(
            closed.len(),
            oracle.len(),
            "comparable-pair sets differ for q = {}",
            q
        );
        for (&(i, j), v) in closed.pairs() {
            assert_eq!(
                Some(v),
                oracle.mu(i, j),
                "mu mismatch at ({}, {}) for q = {}",
                i,
                j,
                q
            );
        }
        pairs += closed.len();
    }
    println!(
        "ACCEPTANCE 1 (oracle equivalence, closed formula vs defining recursion): PASS — {} q values, {} comparable pairs, exact",
        qs.len(),
        pairs
    );
}

#[test]
fn acceptance_2_subgroup_classification() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let catalog = build(q);
        let field = catalog.field();
        let brute = all_subgroups_brute(field);
        let cataloged: BTreeSet<BTreeSet<(u64, u64)>> = (0..catalog.len())
            .map(|i| {
                catalog
                    .elements(i)
                    .iter()
                    .map(|m| (m.a().code(), m.b().code()))
                    .collect()
            })
            .collect();
        assert_eq!(
            cataloged.len(),
            catalog.len(),
            "duplicate element sets at q = {}",
            q
        );
        assert_eq!(
            cataloged, brute,
            "catalog and closure enumeration disagree for q = {}",
            q
        );
    }
    // Spot values: AGL(1, F_4) has the subgroup count and Moebius top value
    // of the alternating group on 4 letters.
    let catalog = build(4);
    assert_eq!(catalog.len(), 10);
    let table = mu_table_closed(&catalog).unwrap();
    assert_eq!(
        table.mu(catalog.trivial_index(), catalog.full_index()),
        Some(&BigInt::from(4))
    );
    println!(
        "ACCEPTANCE 2 (subgroup classification vs closure enumeration, q in 2..9): PASS — exact element-set equality; q=4 yields 10 subgroups with mu(1, G) = 4"
    );
}

#[test]
fn acceptance_3_crosscut_theorem() {
    let mut intervals = 0usize;
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let catalog = build(q);
        let poset = catalog.poset().unwrap();
        let table = mu_recursive(&poset);
        for i in 0..poset.size() {
            for j in 0..poset.size() {
                if !poset.le(i, j) {
                    continue;
                }
                let (sub, _) = poset.interval_subposet(i, j);
                let atoms = sub.atoms();
                let coatoms = sub.coatoms();
                if atoms.len() > 25 || coatoms.len() > 25 {
                    continue;
                }
                let expected = table.mu(i, j).unwrap();
                let lower = mu_crosscut_lower(&sub, &atoms).unwrap();
                let upper = mu_crosscut_upper(&sub, &coatoms).unwrap();
                assert_eq!(
                    &lower, expected,
                    "lower crosscut at [{}, {}], q = {}",
                    i, j, q
                );
                assert_eq!(
                    &upper, expected,
                    "upper crosscut at [{}, {}], q = {}",
                    i, j, q
                );
                intervals += 1;
            }
        }
    }
    println!(
        "ACCEPTANCE 3 (crosscut sums vs recursive mu on all intervals, q <= 9): PASS — {} intervals, both forms exact",
        intervals
    );
}

#[test]
fn acceptance_4_subspace_refinement_identity() {
    let mut triples = 0usize;
    for q in [4u64, 8, 9, 16, 27] {
        let (p, n) = prime_power(q).unwrap();
        let field = Field::new(p, n).unwrap();
        for mr in 1..=n {
            if n % mr != 0 {
                continue;
            }
            let r = SubfieldTag::from_degree(&field, mr).unwrap();
            for mq in 1..=n {
                if n % mq != 0 || mq % mr != 0 {
                    continue;
                }
                let qp = SubfieldTag::from_degree(&field, mq).unwrap();
                for v in enumerate_submodules(&field, &qp) {
                    assert!(
                        mu_refinement_check(&field, &r, &qp, &v).unwrap(),
                        "refinement identity fails for q = {}, r = {}, q' = {}, dim V = {}",
                        q,
                        r.r(),
                        qp.r(),
                        v.dim_p()
                    );
                    triples += 1;
                }
            }
        }
    }
    println!(
        "ACCEPTANCE 4 (subspace refinement identity over nested subfields): PASS — {} (r, q', V) triples, exact",
        triples
    );
}

#[test]
fn acceptance_5_elementary_abelian_mu() {
    for q in [4u64, 8, 9, 16, 27] {
        let (p, n) = prime_power(q).unwrap();
        let field = Field::new(p, n).unwrap();
        assert!(
            elementary_abelian_mu_check(&field).unwrap(),
            "elementary abelian mu formula fails inside the translation subgroup for q = {}",
            q
        );
    }
    println!(
        "ACCEPTANCE 5 (recursive mu vs (-1)^a p^(a choose 2) in the translation subgroup): PASS — q in {{4, 8, 9, 16, 27}}, exact"
    );
}

#[test]
fn acceptance_6_design_inversion() {
    let mut rows_checked = 0usize;
    for q in [4u64, 5, 7, 8, 9] {
        let catalog = build(q);
        let field = catalog.field();
        let table = mu_table_closed(&catalog).unwrap();
        let report = design_scan(&catalog, &table, 0, q).unwrap();
        // Index rows by (subgroup, k).
        let g = |i: usize, k: u64| -> BigInt {
            report.rows[i * (q as usize + 1) + k as usize].g_k.clone()
        };
        for k in 0..=q {
            let mut total = BigInt::zero();
            for i in 0..catalog.len() {
                let gi = g(i, k);
                assert!(
                    gi >= BigInt::zero(),
                    "negative g at q={}, i={}, k={}",
                    q,
                    i,
                    k
                );
                total += &gi;
                let mut sum_over_supergroups = BigInt::zero();
                for j in 0..catalog.len() {
                    if catalog.leq(i, j) {
                        sum_over_supergroups += g(j, k);
                    }
                }
                let f = BigInt::from(f_k(field, catalog.get(i), k).unwrap());
                assert_eq!(
                    sum_over_supergroups, f,
                    "inversion identity fails at q={}, subgroup {}, k={}",
                    q, i, k
                );
                rows_checked += 1;
            }
            assert_eq!(
                total,
                BigInt::from(binomial(q, k)),
                "stabilizer counts must partition the k-subsets at q={}, k={}",
                q,
                k
            );
        }
        // Realized rows come from actual 2-designs (the action is sharply
        // 2-transitive), so their lambda is forced integral.
        for row in &report.rows {
            if row.k >= 2 && row.g_k > BigInt::zero() {
                let lambda = row.lambda.as_ref().expect("lambda defined for k >= 2");
                assert!(
                    lambda.integral,
                    "non-integral lambda on a realizable row: q={}, subgroup {}, k={}",
                    q, row.subgroup_index, row.k
                );
            }
        }
    }
    println!(
        "ACCEPTANCE 6 (design inversion: f = sum of g over supergroups, g partitions binomial(q, k)): PASS — {} (subgroup, k) rows, exact",
        rows_checked
    );
}

#[test]
fn acceptance_7_eulerian_cross_check() {
    for q in [2u64, 3, 4, 5, 7] {
        let catalog = build(q);
        let field = catalog.field();
        let table = mu_table_closed(&catalog).unwrap();
        let full: BTreeSet<(u64, u64)> = catalog
            .elements(catalog.full_index())
            .iter()
            .map(|m| (m.a().code(), m.b().code()))
            .collect();
        let elems: Vec<(u64, u64)> = full.iter().copied().collect();
        for m in [1u32, 2] {
            // Brute force: count ordered m-tuples whose closure is the
            // whole group.
            let mut count = 0u64;
            let mut tuple = vec![(0u64, 0u64); m as usize];
            count_tuples(field, &elems, &full, &mut tuple, 0, &mut count);
            let closed = eulerian_phi(&catalog, &table, m);
            assert_eq!(
                closed,
                BigInt::from(count),
                "Eulerian count mismatch at q = {}, m = {}",
                q,
                m
            );
            if q == 4 && m == 2 {
                assert_eq!(count, 96);
            }
        }
    }
    println!(
        "ACCEPTANCE 7 (Eulerian function vs brute-force generating tuples, q in 2..7, m in 1..2): PASS — exact (q=4, m=2 gives 96)"
    );

    fn count_tuples(
        field: &Field,
        elems: &[(u64, u64)],
        full: &BTreeSet<(u64, u64)>,
        tuple: &mut Vec<(u64, u64)>,
        idx: usize,
        count: &mut u64,
    ) {
        if idx == tuple.len() {
            if &closure(field, tuple) == full {
                *count += 1;
            }
            return;
        }
        for &g in elems {
            tuple[idx] = g;
            count_tuples(field, elems, full, tuple, idx + 1, count);
        }
    }
}

#[test]
fn acceptance_8_moebius_inversion_roundtrip() {
    let catalog = build(8);
    let poset = catalog.poset().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x41474c51);
    for round in 0..100 {
        let f: Vec<BigInt> = (0..poset.size())
            .map(|_| BigInt::from(rng.random_range(-1_000_000i64..=1_000_000)))
            .collect();
        let fs = summatory(&poset, &f);
        let recovered = moebius_invert(&poset, &fs);
        assert_eq!(recovered, f, "roundtrip failed on round {}", round);
    }
    println!(
        "ACCEPTANCE 8 (Moebius inversion roundtrip on the q=8 lattice, 100 random functions): PASS — exact recovery"
    );
}

#[test]
fn catalog_roundtrips_through_generators() {
    // Canonical-form roundtrip at every q up to 16: regenerating a subgroup
    // from its own element set lands on the identical triple.
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let catalog = build(q);
        let field = catalog.field();
        for i in 0..catalog.len() {
            let elems = catalog.elements(i);
            let rebuilt = aglq_core::Subgroup::from_generators(field, &elems).unwrap();
            assert_eq!(
                &rebuilt,
                catalog.get(i),
                "roundtrip failed at q={}, {}",
                q,
                i
            );
        }
    }
}

#[test]
fn mu_is_invariant_under_translation_conjugation() {
    // Closed values must not depend on the coset representatives: every
    // translation conjugate of a comparable pair evaluates identically.
    for q in [4u64, 8, 9] {
        let catalog = build(q);
        let field = catalog.field();
        let table = mu_table_closed(&catalog).unwrap();
        for (&(i, j), expected) in table.pairs() {
            for code in 0..field.q() {
                let c = field.from_code(code).unwrap();
                let s1 = catalog.get(i).conjugate_by_translation(field, c).unwrap();
                let s2 = catalog.get(j).conjugate_by_translation(field, c).unwrap();
                assert_eq!(
                    &mu_closed(field, &s1, &s2).unwrap(),
                    expected,
                    "conjugated pair ({}, {}) by c={} at q={}",
                    i,
                    j,
                    code,
                    q
                );
            }
        }
    }
}

#[test]
fn contains_matches_elementwise_for_cataloged_pairs() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let catalog = build(q);
        let field = catalog.field();
        for i in 0..catalog.len() {
            let inner = catalog.elements(i);
            for j in 0..catalog.len() {
                let claimed = catalog.get(j).contains(field, catalog.get(i)).unwrap();
                let by_form = catalog
                    .get(j)
                    .contains_by_form(field, catalog.get(i))
                    .unwrap();
                let outer: HashSet<_> = catalog.elements(j).iter().copied().collect();
                let elementwise = inner.iter().all(|g| outer.contains(g));
                assert_eq!(claimed, elementwise, "contains at q={}, ({}, {})", q, i, j);
                assert_eq!(by_form, elementwise, "form rule at q={}, ({}, {})", q, i, j);
            }
        }
    }
}

#[test]
fn immediate_supergroups_match_poset_minimal_q16() {
    for q in [8u64, 9, 11, 13, 16] {
        let catalog = build(q);
        for i in 0..catalog.len() {
            if i == catalog.full_index() {
                continue;
            }
            let strict: Vec<usize> = (0..catalog.len())
                .filter(|&j| j != i && catalog.leq(i, j))
                .collect();
            let minimal: Vec<usize> = strict
                .iter()
                .copied()
                .filter(|&j| !strict.iter().any(|&k| k != j && catalog.leq(k, j)))
                .collect();
            assert_eq!(
                catalog.immediate_supergroups(i).unwrap(),
                minimal,
                "covers of {} at q = {}",
                i,
                q
            );
        }
    }
}
