//! Complete subgroup lattices of desk-scale groups.
//!
//! Elements of the parent group are listed once, in lexicographic order
//! of their image arrays, and every subgroup is stored as the set of
//! indices into that list. Subgroup ids are assigned in increasing
//! `(order, element_key)` order, so id order is also a deterministic
//! tie-break everywhere else in the crate.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use crate::arith;
use crate::bitset::BitSet;
use crate::classes::FormationSpec;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::subnormal::StepPolicy;

/// Largest group order accepted by [`Lattice::new`].
pub const LATTICE_ORDER_CAP: u64 = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupId(pub usize);

/// One node of the lattice.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: BitSet,
    order: u64,
    generators: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn elements(&self) -> &BitSet {
        &self.elements
    }

    /// Sorted indices into the parent's element list.
    pub fn element_key(&self) -> Vec<usize> {
        self.elements.iter().collect()
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.generators
    }
}

/// Ascending chain of normal subgroups with no normal subgroup strictly between terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefSeries {
    pub terms: Vec<SubgroupId>,
}

impl ChiefSeries {
    /// Consecutive `(K, H)` pairs, lower term first.
    pub fn factors(&self) -> impl Iterator<Item = (SubgroupId, SubgroupId)> + '_ {
        self.terms.windows(2).map(|w| (w[0], w[1]))
    }
}

#[derive(Default)]
pub(crate) struct Memo {
    pub residual: Mutex<HashMap<(SubgroupId, FormationSpec), SubgroupId>>,
    pub membership: Mutex<HashMap<(SubgroupId, SubgroupId, FormationSpec), bool>>,
    pub reach: Mutex<HashMap<(SubgroupId, StepPolicy), Arc<BitSet>>>,
    pub perfect_core: Mutex<HashMap<SubgroupId, SubgroupId>>,
}

pub(crate) fn memo_get<K: std::hash::Hash + Eq, V: Clone>(
    map: &Mutex<HashMap<K, V>>,
    key: &K,
) -> Option<V> {
    map.lock().expect("memo lock").get(key).cloned()
}

pub(crate) fn memo_put<K: std::hash::Hash + Eq, V>(map: &Mutex<HashMap<K, V>>, key: K, value: V) {
    map.lock().expect("memo lock").insert(key, value);
}

pub struct Lattice {
    group: PermGroup,
    elements: Vec<Permutation>,
    element_index: HashMap<Permutation, u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    nodes: Vec<Subgroup>,
    by_key: HashMap<BitSet, SubgroupId>,
    /// `below[i]`: nodes contained in node `i`, including `i`.
    below: Vec<BitSet>,
    /// `above[i]`: nodes containing node `i`, including `i`.
    above: Vec<BitSet>,
    normalizer: Vec<SubgroupId>,
    pub(crate) memo: Memo,
}

/// Builds the full subgroup lattice of `g`.
pub fn all_subgroups(g: &PermGroup) -> Result<Lattice> {
    Lattice::new(g)
}

impl Lattice {
    pub fn new(group: &PermGroup) -> Result<Self> {
        if group.order() > LATTICE_ORDER_CAP {
            return Err(Error::Capacity {
                what: "lattice group order",
                limit: LATTICE_ORDER_CAP,
                actual: group.order(),
            });
        }
        let elements = group.elements()?;
        let n = elements.len();
        let element_index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * n + j] = element_index[&(a * b)];
            }
        }
        let inv = elements
            .iter()
            .map(|a| element_index[&a.inverse()])
            .collect();
        let mut lattice = Lattice {
            group: group.clone(),
            elements,
            element_index,
            mul,
            inv,
            nodes: Vec::new(),
            by_key: HashMap::new(),
            below: Vec::new(),
            above: Vec::new(),
            normalizer: Vec::new(),
            memo: Memo::default(),
        };
        lattice.enumerate_subgroups();
        lattice.build_relations();
        Ok(lattice)
    }

    /// Incremental closure: cyclic subgroups first, then joins of every
    /// known subgroup with every cyclic subgroup it does not contain.
    fn enumerate_subgroups(&mut self) {
        let n = self.elements.len();
        let mut found: Vec<Subgroup> = Vec::new();
        let mut seen: HashMap<BitSet, usize> = HashMap::new();
        let mut push = |set: BitSet, gens: Vec<u32>, found: &mut Vec<Subgroup>| {
            if !seen.contains_key(&set) {
                seen.insert(set.clone(), found.len());
                let order = set.count() as u64;
                found.push(Subgroup {
                    elements: set,
                    order,
                    generators: gens,
                });
            }
        };
        push(BitSet::from_members(n, [0]), Vec::new(), &mut found);
        let mut cyclic: Vec<(BitSet, u32)> = Vec::new();
        for g in 1..n as u32 {
            let set = self.closure(&[g]);
            if !cyclic.iter().any(|(s, _)| s == &set) {
                cyclic.push((set.clone(), g));
                push(set, vec![g], &mut found);
            }
        }
        let mut i = 0;
        while i < found.len() {
            for (cset, cgen) in &cyclic {
                if cset.is_subset(&found[i].elements) {
                    continue;
                }
                let mut gens = found[i].generators.clone();
                gens.push(*cgen);
                let set = self.closure_from(&found[i].elements, &gens);
                push(set, gens, &mut found);
            }
            i += 1;
        }
        found.sort_by(|a, b| {
            a.order
                .cmp(&b.order)
                .then_with(|| a.elements.cmp_members(&b.elements))
        });
        self.by_key = found
            .iter()
            .enumerate()
            .map(|(i, s)| (s.elements.clone(), SubgroupId(i)))
            .collect();
        self.nodes = found;
    }

    fn build_relations(&mut self) {
        let m = self.nodes.len();
        let mut below = vec![BitSet::new(m); m];
        let mut above = vec![BitSet::new(m); m];
        for (i, big) in self.nodes.iter().enumerate() {
            for (j, small) in self.nodes.iter().enumerate() {
                if small.order <= big.order
                    && big.order.is_multiple_of(small.order)
                    && small.elements.is_subset(&big.elements)
                {
                    below[i].insert(j);
                    above[j].insert(i);
                }
            }
        }
        self.below = below;
        self.above = above;
        let n = self.elements.len();
        let normalizer = (0..m)
            .map(|i| {
                let gens = &self.nodes[i].generators;
                let set = &self.nodes[i].elements;
                let members = (0..n)
                    .filter(|&g| gens.iter().all(|&x| set.contains(self.conj(x as usize, g))));
                let nset = BitSet::from_members(n, members);
                self.by_key[&nset]
            })
            .collect();
        self.normalizer = normalizer;
    }

    // ---- element arithmetic ----

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn num_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn element_index(&self, p: &Permutation) -> Option<usize> {
        self.element_index.get(p).map(|&i| i as usize)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn power(&self, x: usize, k: u64) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Subgroup generated by `gens`, as an element set.
    pub fn closure(&self, gens: &[u32]) -> BitSet {
        self.closure_from(&BitSet::from_members(self.elements.len(), [0]), gens)
    }

    fn closure_from(&self, start: &BitSet, gens: &[u32]) -> BitSet {
        let mut set = start.clone();
        let mut list: Vec<usize> = set.iter().collect();
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            for &g in gens {
                let y = self.mul(x, g as usize);
                if set.insert(y) {
                    list.push(y);
                }
            }
            k += 1;
        }
        set
    }

    // ---- nodes ----

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn ids(&self) -> impl DoubleEndedIterator<Item = SubgroupId> {
        (0..self.nodes.len()).map(SubgroupId)
    }

    pub fn subgroup(&self, id: SubgroupId) -> &Subgroup {
        &self.nodes[id.0]
    }

    pub fn order_of(&self, id: SubgroupId) -> u64 {
        self.nodes[id.0].order
    }

    pub fn trivial(&self) -> SubgroupId {
        SubgroupId(0)
    }

    pub fn top(&self) -> SubgroupId {
        SubgroupId(self.nodes.len() - 1)
    }

    pub fn find(&self, set: &BitSet) -> Option<SubgroupId> {
        self.by_key.get(set).copied()
    }

    pub fn generated_by(&self, gens: &[usize]) -> SubgroupId {
        let gens: Vec<u32> = gens.iter().map(|&g| g as u32).collect();
        self.by_key[&self.closure(&gens)]
    }

    pub fn generated_by_perms(&self, gens: &[Permutation]) -> Result<SubgroupId> {
        let idx = gens
            .iter()
            .map(|p| {
                if p.degree() != self.group.degree() {
                    return Err(Error::Degree {
                        expected: self.group.degree(),
                        found: p.degree(),
                    });
                }
                self.element_index(p)
                    .ok_or_else(|| Error::Membership(format!("{p} is not an element of the group")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.generated_by(&idx))
    }

    pub fn generators(&self, id: SubgroupId) -> Vec<Permutation> {
        self.nodes[id.0]
            .generators
            .iter()
            .map(|&g| self.elements[g as usize].clone())
            .collect()
    }

    /// The node as a standalone permutation group of the parent's degree.
    pub fn as_group(&self, id: SubgroupId) -> PermGroup {
        PermGroup::new(self.group.degree(), self.generators(id)).expect("valid generators")
    }

    /// `x ≤ y`.
    #[inline]
    pub fn le(&self, x: SubgroupId, y: SubgroupId) -> bool {
        self.below[y.0].contains(x.0)
    }

    pub fn below(&self, y: SubgroupId) -> &BitSet {
        &self.below[y.0]
    }

    pub fn above(&self, x: SubgroupId) -> &BitSet {
        &self.above[x.0]
    }

    /// Nodes `z` with `bottom ≤ z ≤ top`.
    pub fn interval(&self, bottom: SubgroupId, top: SubgroupId) -> BitSet {
        self.above[bottom.0].intersection(&self.below[top.0])
    }

    /// `|y : x|` when `x ≤ y`.
    pub fn index(&self, x: SubgroupId, y: SubgroupId) -> Option<u64> {
        self.le(x, y).then(|| self.order_of(y) / self.order_of(x))
    }

    pub fn normalizer(&self, x: SubgroupId) -> SubgroupId {
        self.normalizer[x.0]
    }

    /// `x ⊴ y`.
    #[inline]
    pub fn is_normal_in(&self, x: SubgroupId, y: SubgroupId) -> bool {
        self.le(x, y) && self.le(y, self.normalizer[x.0])
    }

    pub fn is_normal(&self, x: SubgroupId) -> bool {
        self.normalizer[x.0] == self.top()
    }

    pub fn join(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        if self.le(a, b) {
            return b;
        }
        if self.le(b, a) {
            return a;
        }
        let mut gens = self.nodes[a.0].generators.clone();
        gens.extend(&self.nodes[b.0].generators);
        self.by_key[&self.closure_from(&self.nodes[a.0].elements, &gens)]
    }

    pub fn meet(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        self.by_key[&self.nodes[a.0]
            .elements
            .intersection(&self.nodes[b.0].elements)]
    }

    /// `x^g` for an element index `g`.
    pub fn conjugate_node(&self, x: SubgroupId, g: usize) -> SubgroupId {
        let set = BitSet::from_members(
            self.elements.len(),
            self.nodes[x.0].elements.iter().map(|e| self.conj(e, g)),
        );
        self.by_key[&set]
    }

    /// Largest subgroup of `x` normal in `y`; `x ≤ y` is expected.
    pub fn core_in(&self, x: SubgroupId, y: SubgroupId) -> SubgroupId {
        self.below[x.0]
            .iter()
            .map(SubgroupId)
            .filter(|&m| self.is_normal_in(m, y))
            .max_by_key(|&m| self.order_of(m))
            .expect("trivial subgroup is always normal")
    }

    pub fn core(&self, x: SubgroupId) -> SubgroupId {
        self.core_in(x, self.top())
    }

    /// Smallest subgroup of `y` containing `x` and normal in `y`.
    pub fn normal_closure_in(&self, x: SubgroupId, y: SubgroupId) -> SubgroupId {
        self.interval(x, y)
            .iter()
            .map(SubgroupId)
            .filter(|&m| self.is_normal_in(m, y))
            .min_by_key(|&m| self.order_of(m))
            .expect("y itself qualifies")
    }

    // ---- structural subgroups of the whole group ----

    pub fn sylow(&self, p: u64) -> Result<SubgroupId> {
        self.sylow_in(self.trivial(), self.top(), p)
    }

    /// A node `s` with `bottom ≤ s ≤ top` and `|s : bottom|` the full
    /// `p`-part of `|top : bottom|`. Lowest id wins.
    pub fn sylow_in(&self, bottom: SubgroupId, top: SubgroupId, p: u64) -> Result<SubgroupId> {
        if !arith::is_prime(p) {
            return Err(Error::argument(format!("{p} is not prime")));
        }
        let target =
            self.order_of(bottom) * arith::p_part(self.order_of(top) / self.order_of(bottom), p);
        Ok(self
            .interval(bottom, top)
            .iter()
            .map(SubgroupId)
            .find(|&s| self.order_of(s) == target)
            .expect("Sylow subgroups exist"))
    }

    /// Every Sylow `p`-subgroup of the whole group.
    pub fn sylow_subgroups(&self, p: u64) -> Result<Vec<SubgroupId>> {
        if !arith::is_prime(p) {
            return Err(Error::argument(format!("{p} is not prime")));
        }
        let target = arith::p_part(self.group.order(), p);
        Ok(self.ids().filter(|&s| self.order_of(s) == target).collect())
    }

    pub fn normal_subgroups(&self) -> Vec<SubgroupId> {
        self.ids().filter(|&x| self.is_normal(x)).collect()
    }

    /// Nodes covered by `y`.
    pub fn maximal_in(&self, y: SubgroupId) -> Vec<SubgroupId> {
        let strict: Vec<SubgroupId> = self.below[y.0]
            .iter()
            .map(SubgroupId)
            .filter(|&x| x != y)
            .collect();
        strict
            .iter()
            .copied()
            .filter(|&x| !strict.iter().any(|&z| z != x && self.le(x, z)))
            .collect()
    }

    pub fn maximal_subgroups(&self) -> Vec<SubgroupId> {
        self.maximal_in(self.top())
    }

    pub fn minimal_normal_subgroups(&self) -> Result<Vec<SubgroupId>> {
        if self.group.order() == 1 {
            return Err(Error::argument(
                "trivial group has no minimal normal subgroups",
            ));
        }
        let normals: Vec<SubgroupId> = self
            .normal_subgroups()
            .into_iter()
            .filter(|&x| x != self.trivial())
            .collect();
        Ok(normals
            .iter()
            .copied()
            .filter(|&x| !normals.iter().any(|&z| z != x && self.le(z, x)))
            .collect())
    }

    /// Intersection of the maximal subgroups of `y`.
    pub fn frattini_of(&self, y: SubgroupId) -> SubgroupId {
        let mut set = self.nodes[y.0].elements.clone();
        for m in self.maximal_in(y) {
            set.intersect_with(&self.nodes[m.0].elements);
        }
        self.by_key[&set]
    }

    pub fn frattini(&self) -> SubgroupId {
        self.frattini_of(self.top())
    }

    pub fn o_p(&self, p: u64) -> Result<SubgroupId> {
        Ok(self.core(self.sylow(p)?))
    }

    pub fn fitting(&self) -> SubgroupId {
        arith::prime_divisors(self.group.order())
            .into_iter()
            .map(|p| self.o_p(p).expect("prime"))
            .fold(self.trivial(), |acc, x| self.join(acc, x))
    }

    /// Chief series of the section `top/bottom`: a maximal chain of
    /// subgroups normal in `top` from `bottom` to `top`. At each step the
    /// minimal candidate with the smallest element key is taken.
    pub fn chief_series_between(&self, bottom: SubgroupId, top: SubgroupId) -> ChiefSeries {
        let mut terms = vec![bottom];
        let mut current = bottom;
        while current != top {
            let candidates: Vec<SubgroupId> = self
                .interval(current, top)
                .iter()
                .map(SubgroupId)
                .filter(|&m| m != current && self.is_normal_in(m, top))
                .collect();
            let next = candidates
                .iter()
                .copied()
                .filter(|&m| !candidates.iter().any(|&z| z != m && self.le(z, m)))
                .min_by(|a, b| {
                    self.nodes[a.0]
                        .elements
                        .cmp_members(&self.nodes[b.0].elements)
                })
                .expect("top is a candidate");
            terms.push(next);
            current = next;
        }
        ChiefSeries { terms }
    }

    pub fn chief_series(&self) -> ChiefSeries {
        self.chief_series_between(self.trivial(), self.top())
    }

    /// True when `k < h`, both normal in `y`, with no `y`-normal node strictly between.
    pub fn is_chief_factor_in(&self, h: SubgroupId, k: SubgroupId, y: SubgroupId) -> bool {
        h != k
            && self.le(k, h)
            && self.is_normal_in(h, y)
            && self.is_normal_in(k, y)
            && !self
                .interval(k, h)
                .iter()
                .map(SubgroupId)
                .any(|m| m != h && m != k && self.is_normal_in(m, y))
    }

    /// `{g ∈ y : [g, x] ∈ k for all x ∈ h}`, for `k ⊴ y`, `h ⊴ y`, `k ≤ h`.
    pub fn factor_centralizer_in(&self, y: SubgroupId, h: SubgroupId, k: SubgroupId) -> SubgroupId {
        let kset = &self.nodes[k.0].elements;
        let hgens = &self.nodes[h.0].generators;
        let members = self.nodes[y.0].elements.iter().filter(|&g| {
            hgens
                .iter()
                .all(|&x| kset.contains(self.commutator(g, x as usize)))
        });
        self.by_key[&BitSet::from_members(self.elements.len(), members)]
    }

    pub fn chief_centralizer(&self, h: SubgroupId, k: SubgroupId) -> Result<SubgroupId> {
        if !self.is_chief_factor_in(h, k, self.top()) {
            return Err(Error::argument("H/K is not a chief factor of G"));
        }
        Ok(self.factor_centralizer_in(self.top(), h, k))
    }

    /// Whether `G/C_G(H/K)` is abelian with every element order dividing `m`.
    pub fn automizer_is_abelian_of_exponent_dividing(
        &self,
        h: SubgroupId,
        k: SubgroupId,
        m: u64,
    ) -> Result<bool> {
        if m == 0 {
            return Err(Error::argument("exponent bound must be positive"));
        }
        let c = self.chief_centralizer(h, k)?;
        let cset = &self.nodes[c.0].elements;
        let gens = &self.nodes[self.top().0].generators;
        let abelian = gens.iter().all(|&a| {
            gens.iter()
                .all(|&b| cset.contains(self.commutator(a as usize, b as usize)))
        });
        Ok(abelian && (0..self.elements.len()).all(|g| cset.contains(self.power(g, m))))
    }

    /// Last term of the derived series of `y`.
    pub fn perfect_core(&self, y: SubgroupId) -> SubgroupId {
        if let Some(v) = memo_get(&self.memo.perfect_core, &y) {
            return v;
        }
        let mut cur = y;
        loop {
            let d = self.derived(cur);
            if d == cur {
                break;
            }
            cur = d;
        }
        memo_put(&self.memo.perfect_core, y, cur);
        cur
    }

    /// Commutator subgroup `[y, y]`.
    pub fn derived(&self, y: SubgroupId) -> SubgroupId {
        let gens = &self.nodes[y.0].generators;
        let mut comms: Vec<usize> = Vec::new();
        for &a in gens {
            for &b in gens {
                comms.push(self.commutator(a as usize, b as usize));
            }
        }
        let c = self.generated_by(&comms);
        self.normal_closure_in(c, y)
    }

    /// DOT rendering of the covering relation, one node per subgroup.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph lattice {\n");
        for id in self.ids() {
            let _ = writeln!(
                out,
                "  n{} [label=\"order={} normal={}\"];",
                id.0,
                self.order_of(id),
                u8::from(self.is_normal(id))
            );
        }
        for y in self.ids() {
            for x in self.maximal_in(y) {
                let _ = writeln!(out, "  n{} -> n{};", x.0, y.0);
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn sym(n: usize) -> PermGroup {
        let full: Vec<usize> = (0..n).collect();
        PermGroup::new(n, vec![cyc(n, &[&full]), cyc(n, &[&[0, 1]])]).unwrap()
    }

    fn cyclic(n: usize) -> PermGroup {
        let full: Vec<usize> = (0..n).collect();
        PermGroup::new(n, vec![cyc(n, &[&full])]).unwrap()
    }

    #[test]
    fn small_lattice_sizes() {
        assert_eq!(Lattice::new(&sym(3)).unwrap().len(), 6);
        assert_eq!(Lattice::new(&cyclic(6)).unwrap().len(), 4);
        assert_eq!(Lattice::new(&sym(4)).unwrap().len(), 30);
        assert_eq!(Lattice::new(&cyclic(1)).unwrap().len(), 1);
    }

    #[test]
    fn capacity_error() {
        assert!(matches!(Lattice::new(&sym(6)), Err(Error::Capacity { .. })));
    }

    #[test]
    fn s3_structure() {
        let lat = Lattice::new(&sym(3)).unwrap();
        let t = lat.generated_by_perms(&[cyc(3, &[&[0, 1]])]).unwrap();
        assert_eq!(lat.normalizer(t), t);
        assert_eq!(lat.core(t), lat.trivial());
        let max: Vec<u64> = lat
            .maximal_subgroups()
            .iter()
            .map(|&m| lat.order_of(m))
            .collect();
        assert_eq!(max, vec![2, 2, 2, 3]);
        assert_eq!(lat.order_of(lat.o_p(3).unwrap()), 3);
        let z3 = lat.o_p(3).unwrap();
        assert_eq!(lat.chief_centralizer(z3, lat.trivial()).unwrap(), z3);
    }

    #[test]
    fn element_zero_is_identity() {
        let lat = Lattice::new(&sym(4)).unwrap();
        assert!(lat.element(0).is_identity());
        assert_eq!(lat.mul(0, 5), 5);
        assert_eq!(lat.mul(5, lat.inv(5)), 0);
    }

    #[test]
    fn z6_chief_series_uses_smallest_key() {
        let lat = Lattice::new(&cyclic(6)).unwrap();
        let orders: Vec<u64> = lat
            .chief_series()
            .terms
            .iter()
            .map(|&x| lat.order_of(x))
            .collect();
        assert_eq!(orders, vec![1, 3, 6]);
    }

    #[test]
    fn not_a_chief_factor_is_rejected() {
        let lat = Lattice::new(&sym(4)).unwrap();
        assert!(lat.chief_centralizer(lat.top(), lat.trivial()).is_err());
        assert!(lat.sylow(4).is_err());
    }

    #[test]
    fn minimal_normal_of_trivial_group() {
        let lat = Lattice::new(&cyclic(1)).unwrap();
        assert!(lat.minimal_normal_subgroups().is_err());
    }

    #[test]
    fn dot_export_has_every_node() {
        let lat = Lattice::new(&sym(3)).unwrap();
        let dot = lat.to_dot();
        assert_eq!(dot.matches("label=").count(), 6);
        assert!(dot.contains("order=6 normal=1"));
        assert!(dot.contains("order=2 normal=0"));
        assert_eq!(dot.matches("->").count(), 8);
    }
}
