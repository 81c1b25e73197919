//! Finite groups given by multiplication tables.
//!
//! Every group stores its full Cayley table. The product convention is
//! `table[i][j] = "i then j"`: for permutation groups the first argument is
//! applied first, so cycle notation reads the same way words are evaluated.
//!
//! Groups carry a process-unique id. Elements and subsets remember the id of
//! the group they were created from, and mixing groups is an error.

mod catalog;
mod perm;

use std::collections::{BTreeSet, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use catalog::{catalog, catalog_names, CATALOG};
pub use perm::{format_cycles, parse_cycles, Permutation};

/// Default bound on the order of a group built by closure.
pub const DEFAULT_ORDER_CAP: usize = 10_080;

/// Groups up to this order get a full O(n³) associativity check.
const FULL_ASSOCIATIVITY_LIMIT: usize = 256;
const ASSOCIATIVITY_SAMPLES: usize = 100_000;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

pub type GroupId = u64;

fn fresh_id() -> GroupId {
    NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed)
}

/// A finite group stored as a multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    id: GroupId,
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<usize>,
    element_orders: Vec<usize>,
    names: Vec<String>,
}

/// An element tagged with the id of its group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    group: GroupId,
    index: usize,
}

impl GroupElement {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn group_id(&self) -> GroupId {
        self.group
    }
}

/// A sorted, duplicate-free set of element indices of one group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSubset {
    group: GroupId,
    members: Vec<usize>,
}

/// Serialized as the list of member indices.
impl serde::Serialize for ElementSubset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(s)
    }
}

impl ElementSubset {
    pub fn group_id(&self) -> GroupId {
        self.group
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    fn same_group(&self, other: &ElementSubset) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn is_subset_of(&self, other: &ElementSubset) -> Result<bool> {
        self.same_group(other)?;
        Ok(self.members.iter().all(|&m| other.contains(m)))
    }

    pub fn union(&self, other: &ElementSubset) -> Result<ElementSubset> {
        self.same_group(other)?;
        let set: BTreeSet<usize> = self.iter().chain(other.iter()).collect();
        Ok(ElementSubset {
            group: self.group,
            members: set.into_iter().collect(),
        })
    }

    pub fn intersection(&self, other: &ElementSubset) -> Result<ElementSubset> {
        self.same_group(other)?;
        Ok(ElementSubset {
            group: self.group,
            members: self.iter().filter(|&m| other.contains(m)).collect(),
        })
    }

    pub fn difference(&self, other: &ElementSubset) -> Result<ElementSubset> {
        self.same_group(other)?;
        Ok(ElementSubset {
            group: self.group,
            members: self.iter().filter(|&m| !other.contains(m)).collect(),
        })
    }
}

/// JSON form of a multiplication table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableSpec {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// JSON form of a permutation group given by generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PermutationSpec {
    pub degree: usize,
    pub cycles: Vec<String>,
}

impl FiniteGroup {
    /// Builds a group from a row-major table, checking the group axioms.
    pub fn from_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidTable(format!(
                    "row {i} has length {}, expected {order}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= order {
                    return Err(Error::InvalidTable(format!("entry {x} out of range in row {i}")));
                }
                flat.push(x as u32);
            }
        }
        Self::from_flat(order, flat, names)
    }

    pub fn from_table_spec(spec: &TableSpec) -> Result<Self> {
        if spec.order != spec.table.len() {
            return Err(Error::InvalidTable(format!(
                "declared order {} but table has {} rows",
                spec.order,
                spec.table.len()
            )));
        }
        Self::from_table(spec.table.clone(), spec.names.clone())
    }

    pub(crate) fn from_flat(order: usize, table: Vec<u32>, names: Option<Vec<String>>) -> Result<Self> {
        debug_assert_eq!(table.len(), order * order);
        let at = |i: usize, j: usize| table[i * order + j] as usize;

        // Latin square.
        let mut seen = vec![usize::MAX; order];
        for i in 0..order {
            for j in 0..order {
                let x = at(i, j);
                if seen[x] == i {
                    return Err(Error::InvalidTable(format!("row {i} repeats element {x}")));
                }
                seen[x] = i;
            }
        }
        let mut seen = vec![usize::MAX; order];
        for j in 0..order {
            for i in 0..order {
                let x = at(i, j);
                if seen[x] == j {
                    return Err(Error::InvalidTable(format!("column {j} repeats element {x}")));
                }
                seen[x] = j;
            }
        }

        let identity = (0..order)
            .find(|&e| (0..order).all(|i| at(e, i) == i && at(i, e) == i))
            .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;

        let mut inverses = vec![0; order];
        for (i, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..order)
                .find(|&j| at(i, j) == identity)
                .expect("latin square has a solution in every row");
            if at(*inv, i) != identity {
                return Err(Error::InvalidTable(format!("element {i} has no two-sided inverse")));
            }
        }

        let associative = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if order <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if !associative(a, b, c) {
                            return Err(Error::InvalidTable(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (a, b, c) = (
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                );
                if !associative(a, b, c) {
                    return Err(Error::InvalidTable(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }

        let names = match names {
            Some(names) => {
                if names.len() != order {
                    return Err(Error::InvalidTable(format!(
                        "{} names given for {order} elements",
                        names.len()
                    )));
                }
                let distinct: BTreeSet<&String> = names.iter().collect();
                if distinct.len() != order {
                    return Err(Error::InvalidTable("element names are not distinct".into()));
                }
                names
            }
            None => (0..order)
                .map(|i| if i == identity { "e".to_string() } else { format!("g{i}") })
                .collect(),
        };

        let mut group = FiniteGroup {
            id: fresh_id(),
            order,
            table,
            identity,
            inverses,
            element_orders: Vec::new(),
            names,
        };
        group.element_orders = (0..order).map(|i| group.compute_order(i)).collect();
        Ok(group)
    }

    /// Closure of permutation generators, with the default order cap.
    pub fn from_permutation_generators(degree: usize, generators: &[&str]) -> Result<Self> {
        Self::from_permutation_generators_capped(degree, generators, DEFAULT_ORDER_CAP)
    }

    /// Closure of permutation generators given in cycle notation on `1..=degree`.
    ///
    /// Elements are numbered in breadth-first discovery order: element 0 is the
    /// identity, and each dequeued element is multiplied on the right by the
    /// generators in the order given.
    pub fn from_permutation_generators_capped(
        degree: usize,
        generators: &[&str],
        cap: usize,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::OutOfRange("permutation degree must be positive".into()));
        }
        let gens = generators
            .iter()
            .map(|g| parse_cycles(g, degree))
            .collect::<Result<Vec<_>>>()?;
        let (elements, _) = perm::closure(degree, &gens, cap)?;
        let names = elements
            .iter()
            .map(|p| if p.is_identity() { "e".to_string() } else { format_cycles(p) })
            .collect();
        let table = perm::table(&elements);
        Self::from_flat(elements.len(), table, Some(names))
    }

    pub fn from_permutation_spec(spec: &PermutationSpec) -> Result<Self> {
        let gens: Vec<&str> = spec.cycles.iter().map(String::as_str).collect();
        Self::from_permutation_generators(spec.degree, &gens)
    }

    /// The direct product, with `(a, b)` stored at index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let order = n * m;
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            let (a1, b1) = (x / m, x % m);
            for y in 0..order {
                let (a2, b2) = (y / m, y % m);
                table.push((self.mul(a1, a2) * m + other.mul(b1, b2)) as u32);
            }
        }
        let names = (0..order)
            .map(|x| {
                let (a, b) = (x / m, x % m);
                if a == self.identity && b == other.identity {
                    "e".to_string()
                } else {
                    format!("({},{})", self.names[a], other.names[b])
                }
            })
            .collect();
        // Products of valid groups are groups; skip re-validation of the axioms.
        let identity = self.identity * m + other.identity;
        let inverses = (0..order)
            .map(|x| self.inverses[x / m] * m + other.inverses[x % m])
            .collect();
        let element_orders = (0..order)
            .map(|x| num_integer::lcm(self.element_orders[x / m], other.element_orders[x % m]))
            .collect();
        FiniteGroup {
            id: fresh_id(),
            order,
            table,
            identity,
            inverses,
            element_orders,
            names,
        }
    }

    pub fn id(&self) -> GroupId {
        self.id
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Product of two element indices.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `b⁻¹ a b`
    #[inline]
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inverses[b], a), b)
    }

    /// `a⁻¹ b⁻¹ a b`
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(
            self.mul(self.inverses[a], self.inverses[b]),
            self.mul(a, b),
        )
    }

    /// `a^e` for any integer exponent.
    pub fn pow(&self, a: usize, e: i64) -> usize {
        let n = self.element_orders[a] as i64;
        let mut e = e.rem_euclid(n);
        let mut base = a;
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn order_of(&self, a: usize) -> usize {
        self.element_orders[a]
    }

    fn compute_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element(&self, index: usize) -> Result<GroupElement> {
        if index < self.order {
            Ok(GroupElement { group: self.id, index })
        } else {
            Err(Error::InvalidElement { index, order: self.order })
        }
    }

    pub fn identity_element(&self) -> GroupElement {
        GroupElement { group: self.id, index: self.identity }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |index| GroupElement { group: self.id, index })
    }

    pub(crate) fn check_element(&self, g: &GroupElement) -> Result<usize> {
        if g.group != self.id {
            return Err(Error::GroupMismatch);
        }
        Ok(g.index)
    }

    pub(crate) fn check_subset(&self, s: &ElementSubset) -> Result<()> {
        if s.group != self.id {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    /// Product of two tagged elements; fails on elements of another group.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let (a, b) = (self.check_element(a)?, self.check_element(b)?);
        Ok(GroupElement { group: self.id, index: self.mul(a, b) })
    }

    pub fn invert(&self, a: &GroupElement) -> Result<GroupElement> {
        let a = self.check_element(a)?;
        Ok(GroupElement { group: self.id, index: self.inv(a) })
    }

    /// Least `n ≥ 1` with `g^n = e`.
    pub fn element_order(&self, g: &GroupElement) -> Result<usize> {
        Ok(self.order_of(self.check_element(g)?))
    }

    /// A validated subset; duplicates are removed and indices sorted.
    pub fn subset<I: IntoIterator<Item = usize>>(&self, indices: I) -> Result<ElementSubset> {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&i| i >= self.order) {
            return Err(Error::InvalidElement { index: bad, order: self.order });
        }
        Ok(ElementSubset { group: self.id, members: set.into_iter().collect() })
    }

    pub(crate) fn subset_unchecked(&self, mut members: Vec<usize>) -> ElementSubset {
        members.sort_unstable();
        members.dedup();
        ElementSubset { group: self.id, members }
    }

    pub(crate) fn subset_from_mask(&self, mask: &[bool]) -> ElementSubset {
        ElementSubset {
            group: self.id,
            members: mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect(),
        }
    }

    pub fn full_subset(&self) -> ElementSubset {
        ElementSubset { group: self.id, members: (0..self.order).collect() }
    }

    pub fn empty_subset(&self) -> ElementSubset {
        ElementSubset { group: self.id, members: Vec::new() }
    }

    pub fn complement(&self, s: &ElementSubset) -> Result<ElementSubset> {
        self.check_subset(s)?;
        Ok(ElementSubset {
            group: self.id,
            members: (0..self.order).filter(|&i| !s.contains(i)).collect(),
        })
    }

    pub fn subset_names(&self, s: &ElementSubset) -> Vec<String> {
        s.iter().map(|i| self.names[i].clone()).collect()
    }

    /// Smallest subgroup containing `s`.
    pub fn subgroup_closure(&self, s: &ElementSubset) -> Result<ElementSubset> {
        self.check_subset(s)?;
        let mut mask = vec![false; self.order];
        mask[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for g in s.iter() {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Ok(self.subset_from_mask(&mask))
    }

    pub fn is_subgroup(&self, s: &ElementSubset) -> Result<bool> {
        self.check_subset(s)?;
        if !s.contains(self.identity) {
            return Ok(false);
        }
        Ok(s.iter().all(|a| s.iter().all(|b| s.contains(self.mul(a, b)))))
    }

    /// Closed under conjugation by every element of the group.
    pub fn is_normal_set(&self, s: &ElementSubset) -> Result<bool> {
        self.check_subset(s)?;
        Ok(s.iter().all(|a| (0..self.order).all(|g| s.contains(self.conj(a, g)))))
    }

    /// Conjugacy classes: sorted members, classes ordered by least member with
    /// the identity's class first.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order];
        let mut classes = Vec::new();
        let starts = std::iter::once(self.identity).chain(0..self.order);
        for g in starts {
            if assigned[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|x| self.conj(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                assigned[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Normal closure of `s`: the subgroup generated by all conjugates.
    pub fn normal_closure(&self, s: &ElementSubset) -> Result<ElementSubset> {
        self.check_subset(s)?;
        let conjugates: Vec<usize> = s
            .iter()
            .flat_map(|a| (0..self.order).map(move |g| (a, g)))
            .map(|(a, g)| self.conj(a, g))
            .collect();
        self.subgroup_closure(&self.subset_unchecked(conjugates))
    }

    /// All normal subgroups, sorted by size and then by member list.
    pub fn normal_subgroups(&self) -> Vec<ElementSubset> {
        let classes = self.conjugacy_classes();
        let trivial = self.subset_unchecked(vec![self.identity]);
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(trivial.members.clone());
        let mut queue = VecDeque::from([trivial]);
        while let Some(n) = queue.pop_front() {
            for class in &classes {
                if n.contains(class[0]) {
                    continue;
                }
                let generators = n.iter().chain(class.iter().copied()).collect();
                let bigger = self
                    .subgroup_closure(&self.subset_unchecked(generators))
                    .expect("same group");
                if found.insert(bigger.members.clone()) {
                    queue.push_back(bigger);
                }
            }
        }
        let mut all: Vec<ElementSubset> =
            found.into_iter().map(|members| ElementSubset { group: self.id, members }).collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
        all
    }

    /// The quotient by a normal subgroup, with the projection as an index map.
    ///
    /// Cosets are numbered by their least member, so the coset of the
    /// identity is the image of the identity.
    pub fn quotient(&self, n: &ElementSubset) -> Result<(FiniteGroup, Vec<usize>)> {
        self.check_subset(n)?;
        if !self.is_subgroup(n)? {
            return Err(Error::NotSubgroup);
        }
        if !self.is_normal_set(n)? {
            return Err(Error::NotNormal);
        }
        let mut projection = vec![usize::MAX; self.order];
        let mut representatives = Vec::new();
        for g in 0..self.order {
            if projection[g] != usize::MAX {
                continue;
            }
            let coset = representatives.len();
            for h in n.iter() {
                projection[self.mul(g, h)] = coset;
            }
            representatives.push(g);
        }
        let k = representatives.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &representatives {
            for &b in &representatives {
                table.push(projection[self.mul(a, b)] as u32);
            }
        }
        let names = representatives
            .iter()
            .map(|&r| {
                if projection[r] == projection[self.identity] {
                    "e".to_string()
                } else {
                    format!("{}N", self.names[r])
                }
            })
            .collect();
        let quotient = FiniteGroup::from_flat(k, table, Some(names))?;
        Ok((quotient, projection))
    }

    /// The Cayley table as nested rows.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.mul(i, j)).collect())
            .collect()
    }

    pub fn to_table_spec(&self) -> TableSpec {
        TableSpec { order: self.order, table: self.table_rows(), names: Some(self.names.clone()) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutation_generators(3, &["(1 2)", "(1 2 3)"]).unwrap()
    }

    #[test]
    fn permutation_closure_orders() {
        assert_eq!(s3().order(), 6);
        let trivial = FiniteGroup::from_permutation_generators(1, &[]).unwrap();
        assert_eq!(trivial.order(), 1);
        let s4 = FiniteGroup::from_permutation_generators(4, &["(1 2 3 4)", "(1 2)"]).unwrap();
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.identity(), 0);
    }

    #[test]
    fn closure_respects_cap() {
        let err = FiniteGroup::from_permutation_generators_capped(5, &["(1 2 3 4 5)", "(1 2)"], 100)
            .unwrap_err();
        assert_eq!(err, Error::GroupTooLarge { cap: 100 });
    }

    #[test]
    fn left_to_right_composition() {
        // (1 2) then (1 2 3): 1 -> 2 -> 3, so the product is (1 3).
        let g = s3();
        let a = g.index_of_name("(1 2)").unwrap();
        let b = g.index_of_name("(1 2 3)").unwrap();
        assert_eq!(g.name(g.mul(a, b)), "(1 3)");
    }

    #[test]
    fn rejects_non_group_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![0, 1]], None).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 2]], None).is_err());
        // Latin square with identity but not associative.
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(loop5, None), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn conjugacy_class_sizes() {
        let sizes = |g: &FiniteGroup| {
            let mut s: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
            s.sort_unstable();
            s
        };
        assert_eq!(sizes(&s3()), vec![1, 2, 3]);
        assert_eq!(sizes(&catalog("S4").unwrap()), vec![1, 3, 6, 6, 8]);
        let c6 = catalog("C6").unwrap();
        assert!(c6.conjugacy_classes().iter().all(|c| c.len() == 1));
        assert_eq!(s3().conjugacy_classes()[0], vec![s3().identity()]);
    }

    #[test]
    fn subgroup_closure_examples() {
        let g = s3();
        assert_eq!(g.subgroup_closure(&g.empty_subset()).unwrap().members(), &[g.identity()]);
        let c = g.index_of_name("(1 2 3)").unwrap();
        assert_eq!(g.subgroup_closure(&g.subset([c]).unwrap()).unwrap().len(), 3);
        let transpositions: Vec<usize> =
            (0..6).filter(|&i| g.order_of(i) == 2).collect();
        assert_eq!(g.subgroup_closure(&g.subset(transpositions).unwrap()).unwrap().len(), 6);
    }

    #[test]
    fn element_orders() {
        let g = s3();
        assert_eq!(g.element_order(&g.identity_element()).unwrap(), 1);
        let t = g.element(g.index_of_name("(1 2)").unwrap()).unwrap();
        assert_eq!(g.element_order(&t).unwrap(), 2);
        let c6 = catalog("C6").unwrap();
        assert_eq!(c6.element_order(&c6.element(1).unwrap()).unwrap(), 6);
    }

    #[test]
    fn cross_group_arithmetic_is_an_error() {
        let (a, b) = (s3(), s3());
        let x = a.element(1).unwrap();
        assert_eq!(b.multiply(&x, &x), Err(Error::GroupMismatch));
        assert_eq!(b.element_order(&x), Err(Error::GroupMismatch));
    }

    #[test]
    fn quotient_examples() {
        let g = s3();
        let a3: Vec<usize> = (0..6).filter(|&i| g.order_of(i) != 2).collect();
        let (q, proj) = g.quotient(&g.subset(a3).unwrap()).unwrap();
        assert_eq!(q.order(), 2);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(proj[g.mul(a, b)], q.mul(proj[a], proj[b]));
            }
        }
        let (same, proj) = g.quotient(&g.subset([g.identity()]).unwrap()).unwrap();
        assert_eq!(same.order(), 6);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(proj[g.mul(a, b)], same.mul(proj[a], proj[b]));
            }
        }
        let c6 = catalog("C6").unwrap();
        let c3 = c6.subgroup_closure(&c6.subset([2]).unwrap()).unwrap();
        let (c2, _) = c6.quotient(&c3).unwrap();
        assert_eq!(c2.order(), 2);
    }

    #[test]
    fn quotient_rejects_bad_kernels() {
        let g = s3();
        let t = g.index_of_name("(1 2)").unwrap();
        let not_sub = g.subset([t]).unwrap();
        assert_eq!(g.quotient(&not_sub).unwrap_err(), Error::NotSubgroup);
        let sub = g.subset([g.identity(), t]).unwrap();
        assert_eq!(g.quotient(&sub).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn normal_subgroups_of_small_groups() {
        let sizes = |name: &str| -> Vec<usize> {
            catalog(name).unwrap().normal_subgroups().iter().map(ElementSubset::len).collect()
        };
        assert_eq!(sizes("S3"), vec![1, 3, 6]);
        assert_eq!(sizes("S4"), vec![1, 4, 12, 24]);
        assert_eq!(sizes("Q8"), vec![1, 2, 4, 4, 4, 8]);
        assert_eq!(sizes("C6"), vec![1, 2, 3, 6]);
    }

    #[test]
    fn table_json_round_trip() {
        let g = catalog("D4").unwrap();
        let spec = g.to_table_spec();
        let json = serde_json::to_string(&spec).unwrap();
        let back: TableSpec = serde_json::from_str(&json).unwrap();
        let h = FiniteGroup::from_table_spec(&back).unwrap();
        assert_eq!(h.table_rows(), g.table_rows());
        assert_eq!(h.names(), g.names());
    }
}
