//! Finite-poset incidence machinery: the defining Moebius recursion,
//! Moebius inversion, and crosscut sums over finite lattices.
//!
//! These are the independent oracles the closed formula is validated
//! against. Elements are handles 0..size into client-side storage; the poset
//! itself stores only the order relation.

use std::collections::BTreeMap;

use num::BigInt;

use crate::error::{Error, Result};

/// Hard cap on crosscut size: the subset sums are exponential and these
/// operations are verification oracles, not the production path.
pub const CROSSCUT_MAX: usize = 25;

/// A finite partial order on handles 0..size, validated on construction.
#[derive(Clone, Debug)]
pub struct Poset {
    size: usize,
    leq: Vec<bool>,
}

impl Poset {
    /// Builds from a relation matrix given as a closure; checks reflexivity,
    /// antisymmetry, and transitivity.
    pub fn from_leq(size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let mut m = vec![false; size * size];
        for x in 0..size {
            for y in 0..size {
                m[x * size + y] = leq(x, y);
            }
        }
        let p = Poset { size, leq: m };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        for x in 0..self.size {
            if !self.le(x, x) {
                return Err(Error::NotPoset(format!("not reflexive at {}", x)));
            }
            for y in 0..self.size {
                if x != y && self.le(x, y) && self.le(y, x) {
                    return Err(Error::NotPoset(format!("not antisymmetric at {},{}", x, y)));
                }
                if !self.le(x, y) {
                    continue;
                }
                for z in 0..self.size {
                    if self.le(y, z) && !self.le(x, z) {
                        return Err(Error::NotPoset(format!(
                            "not transitive at {},{},{}",
                            x, y, z
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size + y]
    }

    /// The minimum element, if one exists.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.size).find(|&b| (0..self.size).all(|y| self.le(b, y)))
    }

    /// The maximum element, if one exists.
    pub fn top(&self) -> Option<usize> {
        (0..self.size).find(|&t| (0..self.size).all(|y| self.le(y, t)))
    }

    /// Handles z with x <= z <= y.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.size)
            .filter(|&z| self.le(x, z) && self.le(z, y))
            .collect()
    }

    /// Minimal elements strictly above the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        let Some(b) = self.bottom() else {
            return Vec::new();
        };
        (0..self.size)
            .filter(|&a| a != b && !(0..self.size).any(|z| z != b && z != a && self.le(z, a)))
            .collect()
    }

    /// Maximal elements strictly below the top.
    pub fn coatoms(&self) -> Vec<usize> {
        let Some(t) = self.top() else {
            return Vec::new();
        };
        (0..self.size)
            .filter(|&c| c != t && !(0..self.size).any(|z| z != t && z != c && self.le(c, z)))
            .collect()
    }

    /// The induced subposet on an interval, with the handle mapping back to
    /// this poset.
    pub fn interval_subposet(&self, x: usize, y: usize) -> (Poset, Vec<usize>) {
        let handles = self.interval(x, y);
        let size = handles.len();
        let mut leq = vec![false; size * size];
        for (i, &a) in handles.iter().enumerate() {
            for (j, &b) in handles.iter().enumerate() {
                leq[i * size + j] = self.le(a, b);
            }
        }
        (Poset { size, leq }, handles)
    }

    /// Least upper bound of a pair, if unique.
    fn join(&self, x: usize, y: usize) -> Option<usize> {
        let uppers: Vec<usize> = (0..self.size)
            .filter(|&z| self.le(x, z) && self.le(y, z))
            .collect();
        uppers
            .iter()
            .copied()
            .find(|&u| uppers.iter().all(|&v| self.le(u, v)))
    }

    /// Greatest lower bound of a pair, if unique.
    fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let lowers: Vec<usize> = (0..self.size)
            .filter(|&z| self.le(z, x) && self.le(z, y))
            .collect();
        lowers
            .iter()
            .copied()
            .find(|&l| lowers.iter().all(|&v| self.le(v, l)))
    }

    /// A linear extension: handles sorted by how many elements sit below.
    fn linear_extension(&self) -> Vec<usize> {
        let mut counted: Vec<(usize, usize)> = (0..self.size)
            .map(|x| ((0..self.size).filter(|&z| self.le(z, x)).count(), x))
            .collect();
        counted.sort_unstable();
        counted.into_iter().map(|(_, x)| x).collect()
    }
}

/// Memoized Moebius values for all comparable pairs of a poset.
#[derive(Clone, Debug)]
pub struct MoebiusTable {
    size: usize,
    mu: BTreeMap<(usize, usize), BigInt>,
}

impl MoebiusTable {
    pub fn size(&self) -> usize {
        self.size
    }

    /// mu(x, y); None when x and y are incomparable.
    pub fn mu(&self, x: usize, y: usize) -> Option<&BigInt> {
        self.mu.get(&(x, y))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.mu.iter()
    }
}

/// Exact Moebius table from the defining recursion:
/// sum of mu(x, z) over z in [x, y] is 1 if x = y, else 0.
pub fn mu_recursive(poset: &Poset) -> MoebiusTable {
    let order = poset.linear_extension();
    let mut mu = BTreeMap::new();
    // Dense row per x: the linear extension guarantees mu(x, z) is filled
    // before any y above z asks for it.
    let mut row: Vec<Option<BigInt>> = vec![None; poset.size];
    for &x in &order {
        row.iter_mut().for_each(|v| *v = None);
        for &y in &order {
            if !poset.le(x, y) {
                continue;
            }
            if x == y {
                row[y] = Some(BigInt::from(1));
                continue;
            }
            let mut acc = BigInt::from(0);
            for &z in &order {
                if z != y && poset.le(x, z) && poset.le(z, y) {
                    acc += row[z].as_ref().expect("linear extension order");
                }
            }
            row[y] = Some(-acc);
        }
        for (y, v) in row.iter().enumerate() {
            if let Some(v) = v {
                mu.insert((x, y), v.clone());
            }
        }
    }
    MoebiusTable {
        size: poset.size,
        mu,
    }
}

/// The bottom row mu(bottom, y) alone, in O(size^2) interval sums.
pub fn mu_bottom_row(poset: &Poset) -> Result<Vec<BigInt>> {
    let b = poset
        .bottom()
        .ok_or_else(|| Error::NotLattice("poset has no minimum".into()))?;
    let order = poset.linear_extension();
    let mut row = vec![BigInt::from(0); poset.size()];
    for &y in &order {
        if y == b {
            row[y] = BigInt::from(1);
            continue;
        }
        let mut acc = BigInt::from(0);
        for &z in &order {
            if z != y && poset.le(z, y) {
                acc += &row[z];
            }
        }
        row[y] = -acc;
    }
    Ok(row)
}

fn check_lattice(poset: &Poset) -> Result<(usize, usize)> {
    let bottom = poset
        .bottom()
        .ok_or_else(|| Error::NotLattice("no minimum element".into()))?;
    let top = poset
        .top()
        .ok_or_else(|| Error::NotLattice("no maximum element".into()))?;
    for x in 0..poset.size() {
        for y in x + 1..poset.size() {
            if poset.join(x, y).is_none() {
                return Err(Error::NotLattice(format!("no join for {},{}", x, y)));
            }
            if poset.meet(x, y).is_none() {
                return Err(Error::NotLattice(format!("no meet for {},{}", x, y)));
            }
        }
    }
    Ok((bottom, top))
}

/// Crosscut sum in join form: mu(bottom, top) as the signed count of subsets
/// of a lower crosscut whose join is the top.
pub fn mu_crosscut_lower(poset: &Poset, crosscut: &[usize]) -> Result<BigInt> {
    let (bottom, top) = check_lattice(poset)?;
    if crosscut.len() > CROSSCUT_MAX {
        return Err(Error::CrosscutTooLarge {
            len: crosscut.len(),
            cap: CROSSCUT_MAX,
        });
    }
    if crosscut.contains(&bottom) {
        return Err(Error::NotCrosscut("contains the bottom element".into()));
    }
    for y in 0..poset.size() {
        if y == bottom || crosscut.contains(&y) {
            continue;
        }
        if !crosscut.iter().any(|&x| x != y && poset.le(x, y)) {
            return Err(Error::NotCrosscut(format!(
                "element {} has nothing below it in the crosscut",
                y
            )));
        }
    }
    let join_table = pairwise_table(poset, Poset::join)?;
    // DFS over subsets with an incremental join. Once the join reaches the
    // top, the remaining inclusion-exclusion contributions cancel unless the
    // subset is complete, so the branch collapses to a closed count.
    let mut total = BigInt::from(0);
    subset_sum(poset, crosscut, &join_table, bottom, top, 0, 0, &mut total);
    return Ok(total);

    #[allow(clippy::too_many_arguments)]
    fn subset_sum(
        poset: &Poset,
        cut: &[usize],
        table: &[usize],
        acc: usize,
        target: usize,
        idx: usize,
        parity: u32,
        total: &mut BigInt,
    ) {
        if acc == target {
            // Every extension also joins to the target, so the signs of all
            // strict extensions cancel; only the complete subset counts.
            if idx == cut.len() {
                if parity % 2 == 0 {
                    *total += 1;
                } else {
                    *total -= 1;
                }
            }
            return;
        }
        if idx == cut.len() {
            return;
        }
        subset_sum(poset, cut, table, acc, target, idx + 1, parity, total);
        let joined = table[acc * poset.size() + cut[idx]];
        subset_sum(
            poset,
            cut,
            table,
            joined,
            target,
            idx + 1,
            parity + 1,
            total,
        );
    }
}

/// Crosscut sum in meet form: mu(bottom, top) as the signed count of subsets
/// of an upper crosscut whose meet is the bottom.
pub fn mu_crosscut_upper(poset: &Poset, crosscut: &[usize]) -> Result<BigInt> {
    let (bottom, top) = check_lattice(poset)?;
    if crosscut.len() > CROSSCUT_MAX {
        return Err(Error::CrosscutTooLarge {
            len: crosscut.len(),
            cap: CROSSCUT_MAX,
        });
    }
    if crosscut.contains(&top) {
        return Err(Error::NotCrosscut("contains the top element".into()));
    }
    for y in 0..poset.size() {
        if y == top || crosscut.contains(&y) {
            continue;
        }
        if !crosscut.iter().any(|&x| x != y && poset.le(y, x)) {
            return Err(Error::NotCrosscut(format!(
                "element {} has nothing above it in the crosscut",
                y
            )));
        }
    }
    let meet_table = pairwise_table(poset, Poset::meet)?;
    let mut total = BigInt::from(0);
    subset_sum(poset, crosscut, &meet_table, top, bottom, 0, 0, &mut total);
    return Ok(total);

    #[allow(clippy::too_many_arguments)]
    fn subset_sum(
        poset: &Poset,
        cut: &[usize],
        table: &[usize],
        acc: usize,
        target: usize,
        idx: usize,
        parity: u32,
        total: &mut BigInt,
    ) {
        if acc == target {
            if idx == cut.len() {
                if parity % 2 == 0 {
                    *total += 1;
                } else {
                    *total -= 1;
                }
            }
            return;
        }
        if idx == cut.len() {
            return;
        }
        subset_sum(poset, cut, table, acc, target, idx + 1, parity, total);
        let met = table[acc * poset.size() + cut[idx]];
        subset_sum(poset, cut, table, met, target, idx + 1, parity + 1, total);
    }
}

fn pairwise_table(
    poset: &Poset,
    op: impl Fn(&Poset, usize, usize) -> Option<usize>,
) -> Result<Vec<usize>> {
    let n = poset.size();
    let mut table = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            table[x * n + y] = op(poset, x, y)
                .ok_or_else(|| Error::NotLattice(format!("no bound for {},{}", x, y)))?;
        }
    }
    Ok(table)
}

/// Summatory function: fs(x) = sum of f(z) over z <= x.
pub fn summatory(poset: &Poset, f: &[BigInt]) -> Vec<BigInt> {
    (0..poset.size())
        .map(|x| {
            (0..poset.size())
                .filter(|&z| poset.le(z, x))
                .map(|z| f[z].clone())
                .sum()
        })
        .collect()
}

/// Moebius inversion: recovers f from its summatory function,
/// f(x) = sum over z <= x of mu(z, x) * fs(z).
pub fn moebius_invert(poset: &Poset, f_sum: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(f_sum.len(), poset.size());
    let table = mu_recursive(poset);
    (0..poset.size())
        .map(|x| {
            let mut acc = BigInt::from(0);
            for z in 0..poset.size() {
                if poset.le(z, x) {
                    acc += table.mu(z, x).expect("comparable") * &f_sum[z];
                }
            }
            acc
        })
        .collect()
}

/// Checks that on the subgroup lattice of an elementary abelian p-group
/// (realized as the subspace lattice of F_q over F_p) the recursive Moebius
/// values equal (-1)^a * p^(a choose 2) with a the dimension gap.
pub fn elementary_abelian_mu_check(field: &crate::gf::Field) -> Result<bool> {
    use crate::submodules::{enumerate_submodules, mu_subspace, SubfieldTag};
    let subs = enumerate_submodules(field, &SubfieldTag::prime_field(field));
    let poset = Poset::from_leq(subs.len(), |i, j| subs[j].contains(field, &subs[i]))?;
    let table = mu_recursive(&poset);
    for i in 0..subs.len() {
        for j in 0..subs.len() {
            if !poset.le(i, j) {
                continue;
            }
            let alpha = subs[j].dim_p() - subs[i].dim_p();
            if *table.mu(i, j).expect("comparable") != mu_subspace(alpha, field.p()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
