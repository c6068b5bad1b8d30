//! Independent checks for the chain search.
//!
//! Nothing here goes through the reach sets, the section predicates or the
//! lattice normaliser table. Edges are re-validated with BSGS membership
//! tests, and residuals are rebuilt from coset-action quotients with fresh
//! lattices.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::classes::{self, FormationSpec};
use crate::error::{Error, Result};
use crate::group::{quotient, PermGroup};
use crate::lattice::{ChiefSeries, Lattice, SubgroupId};
use crate::subnormal::{ChainWitness, StepPolicy, StepTag};

/// Largest group order accepted by [`brute_force_oracle`].
pub const ORACLE_ORDER_CAP: u64 = 48;

fn prime(n: u64) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn admissible(p: u64, t: u32) -> bool {
    let mut m = p - 1;
    let mut q = 2;
    while m > 1 {
        let mut e = 0;
        while m.is_multiple_of(q) {
            m /= q;
            e += 1;
        }
        if e > t {
            return false;
        }
        q += 1;
    }
    true
}

fn exponent_free_of_powers_above(exp: u64, k: u32) -> bool {
    (2..=exp).all(|q| !prime(q) || !exp.is_multiple_of(q.pow(k + 1)))
}

/// Supersolubility by the maximal-subgroup criterion: every maximal
/// subgroup has prime index.
fn supersoluble_by_maximals(lat: &Lattice) -> bool {
    lat.maximal_subgroups()
        .iter()
        .all(|&m| prime(lat.order_of(lat.top()) / lat.order_of(m)))
}

fn member(g: &PermGroup, spec: FormationSpec) -> Result<bool> {
    let lat = Lattice::new(g)?;
    Ok(match spec {
        FormationSpec::UK(k) => {
            supersoluble_by_maximals(&lat) && exponent_free_of_powers_above(g.exponent()?, k)
        }
        FormationSpec::Supersoluble => supersoluble_by_maximals(&lat),
        other => classes::is_member(&lat, other),
    })
}

/// Edge validator over one ambient lattice, with per-edge caches.
pub struct EdgeValidator<'a> {
    lat: &'a Lattice,
    groups: RefCell<HashMap<SubgroupId, PermGroup>>,
    residuals: RefCell<HashMap<(SubgroupId, FormationSpec), PermGroup>>,
}

impl<'a> EdgeValidator<'a> {
    pub fn new(lat: &'a Lattice) -> Self {
        EdgeValidator {
            lat,
            groups: RefCell::new(HashMap::new()),
            residuals: RefCell::new(HashMap::new()),
        }
    }

    fn group(&self, x: SubgroupId) -> PermGroup {
        self.groups
            .borrow_mut()
            .entry(x)
            .or_insert_with(|| self.lat.as_group(x))
            .clone()
    }

    fn contained(&self, x: SubgroupId, y: SubgroupId) -> bool {
        self.group(y)
            .contains_group(&self.group(x))
            .expect("same degree")
    }

    fn normal(&self, x: SubgroupId, y: SubgroupId) -> bool {
        let (gx, gy) = (self.group(x), self.group(y));
        gy.generators().iter().all(|g| {
            gx.generators()
                .iter()
                .all(|h| gx.contains(&h.conjugate_by(g)).expect("same degree"))
        })
    }

    fn index(&self, x: SubgroupId, y: SubgroupId) -> u64 {
        self.group(y).order() / self.group(x).order()
    }

    /// `Y^F`, computed from every quotient of `Y` by coset action.
    pub fn residual(&self, y: SubgroupId, spec: FormationSpec) -> Result<PermGroup> {
        if let Some(r) = self.residuals.borrow().get(&(y, spec)) {
            return Ok(r.clone());
        }
        let gy = self.group(y);
        let own = Lattice::new(&gy)?;
        let mut acc = own.top();
        for n in own.normal_subgroups() {
            let (q, _) = quotient(&gy, &own.as_group(n))?;
            if member(&q, spec)? {
                acc = own.meet(acc, n);
            }
        }
        let r = own.as_group(acc);
        self.residuals.borrow_mut().insert((y, spec), r.clone());
        Ok(r)
    }

    fn residual_below(&self, x: SubgroupId, y: SubgroupId, spec: FormationSpec) -> Result<bool> {
        let r = self.residual(y, spec)?;
        self.group(x).contains_group(&r)
    }

    /// Whether the strict step `x < y` is allowed under `policy`.
    pub fn edge(&self, x: SubgroupId, y: SubgroupId, policy: StepPolicy) -> Result<bool> {
        if x == y || !self.contained(x, y) {
            return Ok(false);
        }
        let index = self.index(x, y);
        Ok(match policy {
            StepPolicy::Subnormal => self.normal(x, y),
            StepPolicy::PSub => prime(index),
            StepPolicy::KPSub => self.normal(x, y) || prime(index),
            StepPolicy::KPt(t) => self.normal(x, y) || (prime(index) && admissible(index, t)),
            StepPolicy::FSub(f) => self.residual_below(x, y, f)?,
            StepPolicy::KFSub(f) => self.normal(x, y) || self.residual_below(x, y, f)?,
        })
    }

    /// Whether `tag` truthfully certifies the step `x < y` under `policy`.
    pub fn tag_valid(
        &self,
        x: SubgroupId,
        y: SubgroupId,
        tag: StepTag,
        policy: StepPolicy,
    ) -> Result<bool> {
        if x == y || !self.contained(x, y) {
            return Ok(false);
        }
        let index = self.index(x, y);
        Ok(match (tag, policy) {
            (
                StepTag::Normal,
                StepPolicy::Subnormal
                | StepPolicy::KPSub
                | StepPolicy::KPt(_)
                | StepPolicy::KFSub(_),
            ) => self.normal(x, y),
            (StepTag::Prime(p), StepPolicy::PSub | StepPolicy::KPSub) => index == p && prime(p),
            (StepTag::Prime(p), StepPolicy::KPt(t)) => index == p && prime(p) && admissible(p, t),
            (StepTag::Residual, StepPolicy::FSub(f) | StepPolicy::KFSub(f)) => {
                self.residual_below(x, y, f)?
            }
            _ => false,
        })
    }
}

/// Replays `w` as a chain from `h` to `G`. Returns a description of the
/// first defect.
pub fn validate_witness(
    lat: &Lattice,
    h: SubgroupId,
    policy: StepPolicy,
    w: &ChainWitness,
) -> std::result::Result<(), String> {
    validate_witness_with(&EdgeValidator::new(lat), lat, h, lat.top(), policy, w)
}

/// As [`validate_witness`], ending at `target` and reusing `v`'s caches.
pub fn validate_witness_with(
    v: &EdgeValidator<'_>,
    lat: &Lattice,
    h: SubgroupId,
    target: SubgroupId,
    policy: StepPolicy,
    w: &ChainWitness,
) -> std::result::Result<(), String> {
    if w.nodes.first() != Some(&h) {
        return Err("chain does not start at H".into());
    }
    if w.nodes.last() != Some(&target) {
        return Err("chain does not end at the target".into());
    }
    if w.steps.len() + 1 != w.nodes.len() {
        return Err("step count does not match node count".into());
    }
    for (i, pair) in w.nodes.windows(2).enumerate() {
        let ok = v
            .tag_valid(pair[0], pair[1], w.steps[i], policy)
            .map_err(|e| e.to_string())?;
        if !ok {
            return Err(format!(
                "step {} (order {} -> {}) tagged {} is not valid",
                i + 1,
                lat.order_of(pair[0]),
                lat.order_of(pair[1]),
                w.steps[i]
            ));
        }
    }
    Ok(())
}

/// Exhaustive search over strictly ascending chains of one small group.
pub struct Oracle<'a> {
    lat: &'a Lattice,
    validator: EdgeValidator<'a>,
    edges: RefCell<HashMap<(SubgroupId, SubgroupId, StepPolicy), bool>>,
    /// Nodes already shown to have no valid chain up to `G`.
    dead: RefCell<HashMap<StepPolicy, Vec<bool>>>,
}

impl<'a> Oracle<'a> {
    pub fn new(lat: &'a Lattice) -> Result<Self> {
        let order = lat.group().order();
        if order > ORACLE_ORDER_CAP {
            return Err(Error::Capacity {
                what: "oracle group order",
                limit: ORACLE_ORDER_CAP,
                actual: order,
            });
        }
        Ok(Oracle {
            lat,
            validator: EdgeValidator::new(lat),
            edges: RefCell::new(HashMap::new()),
            dead: RefCell::new(HashMap::new()),
        })
    }

    fn edge(&self, x: SubgroupId, y: SubgroupId, policy: StepPolicy) -> Result<bool> {
        if let Some(&v) = self.edges.borrow().get(&(x, y, policy)) {
            return Ok(v);
        }
        let v = self.validator.edge(x, y, policy)?;
        self.edges.borrow_mut().insert((x, y, policy), v);
        Ok(v)
    }

    fn is_dead(&self, x: SubgroupId, policy: StepPolicy) -> bool {
        self.dead.borrow().get(&policy).is_some_and(|d| d[x.0])
    }

    fn mark_dead(&self, x: SubgroupId, policy: StepPolicy) {
        self.dead
            .borrow_mut()
            .entry(policy)
            .or_insert_with(|| vec![false; self.lat.len()])[x.0] = true;
    }

    fn dfs(&self, x: SubgroupId, policy: StepPolicy) -> Result<bool> {
        let top = self.lat.top();
        if x == top {
            return Ok(true);
        }
        if self.is_dead(x, policy) {
            return Ok(false);
        }
        let order = self.lat.order_of(x);
        for y in self.lat.ids() {
            if self.lat.order_of(y) <= order {
                continue;
            }
            if self.edge(x, y, policy)? && self.dfs(y, policy)? {
                return Ok(true);
            }
        }
        self.mark_dead(x, policy);
        Ok(false)
    }

    pub fn decide(&self, h: SubgroupId, policy: StepPolicy) -> Result<bool> {
        self.dfs(h, policy)
    }
}

/// Exhaustive verdict for one subgroup of a group of order at most 48.
pub fn brute_force_oracle(lat: &Lattice, h: SubgroupId, policy: StepPolicy) -> Result<bool> {
    Oracle::new(lat)?.decide(h, policy)
}

/// Every chief series of `G`, i.e. every maximal chain of normal subgroups.
pub fn all_chief_series(lat: &Lattice) -> Vec<ChiefSeries> {
    let normals = lat.normal_subgroups();
    let covers = |k: SubgroupId| -> Vec<SubgroupId> {
        let above: Vec<SubgroupId> = normals
            .iter()
            .copied()
            .filter(|&m| m != k && lat.le(k, m))
            .collect();
        above
            .iter()
            .copied()
            .filter(|&m| !above.iter().any(|&z| z != m && lat.le(z, m)))
            .collect()
    };
    let mut out = Vec::new();
    let mut stack = vec![vec![lat.trivial()]];
    while let Some(terms) = stack.pop() {
        let last = *terms.last().expect("nonempty");
        if last == lat.top() {
            out.push(ChiefSeries { terms });
            continue;
        }
        for m in covers(last) {
            let mut next = terms.clone();
            next.push(m);
            stack.push(next);
        }
    }
    out
}

/// Membership in `N_p A(p−1)` by searching all normal `p`-subgroups
/// for one with abelian quotient of exponent dividing `p − 1`.
pub fn np_a_by_search(lat: &Lattice, p: u64) -> Result<bool> {
    let g = lat.group();
    for n in lat.normal_subgroups() {
        let order = lat.order_of(n);
        if order != crate::arith::p_part(order, p) {
            continue;
        }
        let (q, _) = quotient(g, &lat.as_group(n))?;
        if q.is_abelian() && (p - 1).is_multiple_of(q.exponent()?) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `H_t` membership checked on every Sylow subgroup rather than one per prime.
pub fn in_class_ht_all_sylows(lat: &Lattice, t: u32) -> bool {
    crate::arith::prime_divisors(lat.group().order())
        .into_iter()
        .all(|p| {
            lat.sylow_subgroups(p)
                .expect("prime")
                .into_iter()
                .all(|s| crate::subnormal::is_subnormal_in(lat, s, lat.top(), StepPolicy::KPt(t)))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build, GroupRecipe};

    #[test]
    fn independent_arithmetic() {
        assert!(!admissible(17, 3) && admissible(17, 4));
        assert!(!admissible(13, 1) && admissible(13, 2));
        assert!(admissible(2, 1) && admissible(3, 1));
        assert!(prime(2) && prime(13) && !prime(1) && !prime(9));
        assert!(exponent_free_of_powers_above(6, 1));
        assert!(!exponent_free_of_powers_above(4, 1));
    }

    #[test]
    fn cap_enforced() {
        let lat = Lattice::new(&build(&GroupRecipe::Alternating(5)).unwrap()).unwrap();
        assert!(matches!(
            brute_force_oracle(&lat, lat.trivial(), StepPolicy::KPSub),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn s4_chief_series_unique() {
        let lat = Lattice::new(&build(&GroupRecipe::Symmetric(4)).unwrap()).unwrap();
        assert_eq!(all_chief_series(&lat).len(), 1);
    }
}
