//! Subnormality variants as reachability in the subgroup lattice.
//!
//! A chain `H = H_0 ≤ H_1 ≤ … ≤ H_n = G` may repeat terms; dropping the
//! repeats leaves a path of strict containments, so every variant reduces
//! to "is the top reachable from `H` along allowed edges".

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::bitset::BitSet;
use crate::classes::{self, pt_admissible, FormationSpec, Section};
use crate::error::{Error, Result};
use crate::lattice::{memo_get, memo_put, Lattice, SubgroupId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepPolicy {
    /// Every step normal.
    Subnormal,
    /// Every step of prime index.
    PSub,
    /// Every step normal or of prime index.
    KPSub,
    /// Every step normal or of prime index `p` with `p` admissible for `t`.
    KPt(u32),
    /// Every step `X < Y` with `Y^F ≤ X`.
    FSub(FormationSpec),
    /// Every step normal or with `Y^F ≤ X`.
    KFSub(FormationSpec),
}

impl StepPolicy {
    /// Parses the command-line spelling: `subnormal`, `psub`, `kpsub`,
    /// `kpt` (needs `t`), `fsub:<F>`, `kfsub:<F>`.
    pub fn parse(text: &str, t: Option<u32>) -> Result<Self> {
        let lower = text.trim().to_ascii_lowercase();
        if let Some(f) = lower.strip_prefix("fsub:") {
            return Ok(StepPolicy::FSub(f.parse()?));
        }
        if let Some(f) = lower.strip_prefix("kfsub:") {
            return Ok(StepPolicy::KFSub(f.parse()?));
        }
        match lower.as_str() {
            "subnormal" => Ok(StepPolicy::Subnormal),
            "psub" => Ok(StepPolicy::PSub),
            "kpsub" => Ok(StepPolicy::KPSub),
            "kpt" => match t {
                Some(t) if t >= 1 => Ok(StepPolicy::KPt(t)),
                Some(_) => Err(Error::argument("t must be at least 1")),
                None => Err(Error::argument("policy kpt requires --t")),
            },
            _ => Err(Error::argument(format!("unknown policy {text:?}"))),
        }
    }
}

impl fmt::Display for StepPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepPolicy::Subnormal => write!(f, "subnormal"),
            StepPolicy::PSub => write!(f, "psub"),
            StepPolicy::KPSub => write!(f, "kpsub"),
            StepPolicy::KPt(t) => write!(f, "kpt{t}"),
            StepPolicy::FSub(spec) => write!(f, "fsub:{spec}"),
            StepPolicy::KFSub(spec) => write!(f, "kfsub:{spec}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepTag {
    Normal,
    Prime(u64),
    Residual,
}

impl fmt::Display for StepTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepTag::Normal => write!(f, "[normal]"),
            StepTag::Prime(p) => write!(f, "[p={p}]"),
            StepTag::Residual => write!(f, "[residual]"),
        }
    }
}

/// `nodes[0] = H`, `nodes.last() = G`, with `steps[i]` certifying
/// `nodes[i] → nodes[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainWitness {
    pub nodes: Vec<SubgroupId>,
    pub steps: Vec<StepTag>,
}

impl ChainWitness {
    /// Number of steps.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// One line per subgroup: `order=<n> gens=<cycles>`, each line after
    /// the first suffixed with the tag of the step that reached it.
    pub fn serialize(&self, lat: &Lattice) -> String {
        let mut out = String::new();
        for (i, &node) in self.nodes.iter().enumerate() {
            let gens: Vec<String> = lat
                .generators(node)
                .iter()
                .map(|g| g.to_cycle_string())
                .collect();
            let gens = if gens.is_empty() {
                "()".to_string()
            } else {
                gens.join(", ")
            };
            out.push_str(&format!("order={} gens={}", lat.order_of(node), gens));
            if i > 0 {
                out.push(' ');
                out.push_str(&self.steps[i - 1].to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Concatenation of `self` (ending at `R`) with `other` (starting at `R`).
    pub fn then(&self, other: &ChainWitness) -> Result<ChainWitness> {
        if self.nodes.last() != other.nodes.first() {
            return Err(Error::argument("witnesses do not meet"));
        }
        let mut nodes = self.nodes.clone();
        nodes.extend(&other.nodes[1..]);
        let mut steps = self.steps.clone();
        steps.extend(&other.steps);
        Ok(ChainWitness { nodes, steps })
    }
}

/// The tag certifying `x → y` under `policy`, if the edge is allowed.
/// `x ≤ y` is assumed; equal nodes have no tag.
pub fn step_tag(
    lat: &Lattice,
    x: SubgroupId,
    y: SubgroupId,
    policy: StepPolicy,
) -> Option<StepTag> {
    if x == y {
        return None;
    }
    let normal = || lat.is_normal_in(x, y);
    let prime = || {
        let index = lat.order_of(y) / lat.order_of(x);
        arith::is_prime(index).then_some(index)
    };
    let residual = |f: FormationSpec| lat.le(classes::subgroup_residual(lat, y, f), x);
    match policy {
        StepPolicy::Subnormal => normal().then_some(StepTag::Normal),
        StepPolicy::PSub => prime().map(StepTag::Prime),
        StepPolicy::KPSub => {
            if normal() {
                Some(StepTag::Normal)
            } else {
                prime().map(StepTag::Prime)
            }
        }
        StepPolicy::KPt(t) => {
            if normal() {
                Some(StepTag::Normal)
            } else {
                prime().filter(|&p| pt_admissible(p, t)).map(StepTag::Prime)
            }
        }
        StepPolicy::FSub(f) => residual(f).then_some(StepTag::Residual),
        StepPolicy::KFSub(f) => {
            if normal() {
                Some(StepTag::Normal)
            } else {
                residual(f).then_some(StepTag::Residual)
            }
        }
    }
}

/// Whether the chain may step from `x` to `y`; `x = y` is always allowed.
pub fn step_allowed(
    lat: &Lattice,
    x: SubgroupId,
    y: SubgroupId,
    policy: StepPolicy,
) -> Result<bool> {
    if !lat.le(x, y) {
        return Err(Error::argument("step requires X ≤ Y"));
    }
    Ok(x == y || step_tag(lat, x, y, policy).is_some())
}

/// All nodes from which `target` is reachable under `policy`. Memoised.
pub fn reach_set(lat: &Lattice, target: SubgroupId, policy: StepPolicy) -> Arc<BitSet> {
    let key = (target, policy);
    if let Some(v) = memo_get(&lat.memo.reach, &key) {
        return v;
    }
    let mut reached = BitSet::new(lat.len());
    reached.insert(target.0);
    let mut queue = VecDeque::from([target]);
    while let Some(y) = queue.pop_front() {
        for x in lat.below(y).iter().map(SubgroupId) {
            if !reached.contains(x.0) && step_tag(lat, x, y, policy).is_some() {
                reached.insert(x.0);
                queue.push_back(x);
            }
        }
    }
    let reached = Arc::new(reached);
    memo_put(&lat.memo.reach, key, Arc::clone(&reached));
    reached
}

/// `h` is `policy`-subnormal in `y`, both nodes of the same lattice.
pub fn is_subnormal_in(lat: &Lattice, h: SubgroupId, y: SubgroupId, policy: StepPolicy) -> bool {
    lat.le(h, y) && reach_set(lat, y, policy).contains(h.0)
}

/// Shortest chain from `h` to `y`, ties broken towards lower ids.
pub fn witness_in(
    lat: &Lattice,
    h: SubgroupId,
    y: SubgroupId,
    policy: StepPolicy,
) -> Option<ChainWitness> {
    if !is_subnormal_in(lat, h, y, policy) {
        return None;
    }
    let reach = reach_set(lat, y, policy);
    let mut parent: Vec<Option<(SubgroupId, StepTag)>> = vec![None; lat.len()];
    let mut seen = BitSet::new(lat.len());
    seen.insert(h.0);
    let mut queue = VecDeque::from([h]);
    'bfs: while let Some(x) = queue.pop_front() {
        for z in lat.interval(x, y).iter().map(SubgroupId) {
            if seen.contains(z.0) || !reach.contains(z.0) {
                continue;
            }
            if let Some(tag) = step_tag(lat, x, z, policy) {
                seen.insert(z.0);
                parent[z.0] = Some((x, tag));
                if z == y {
                    break 'bfs;
                }
                queue.push_back(z);
            }
        }
    }
    let mut nodes = vec![y];
    let mut steps = Vec::new();
    let mut cur = y;
    while cur != h {
        let (prev, tag) = parent[cur.0].expect("target reached");
        nodes.push(prev);
        steps.push(tag);
        cur = prev;
    }
    nodes.reverse();
    steps.reverse();
    Some(ChainWitness { nodes, steps })
}

/// Decides `policy`-subnormality of `h` in the whole group, with a witness
/// when the verdict is true.
pub fn is_subnormal_variant(
    lat: &Lattice,
    h: SubgroupId,
    policy: StepPolicy,
) -> (bool, Option<ChainWitness>) {
    match witness_in(lat, h, lat.top(), policy) {
        Some(w) => (true, Some(w)),
        None => (false, None),
    }
}

/// Every Sylow subgroup of `G` is K-P_t-subnormal.
pub fn in_class_ht(lat: &Lattice, t: u32) -> bool {
    Section::whole(lat).in_class_ht(t)
}

/// Every Sylow subgroup of `G` is `F`-subnormal.
pub fn in_wf(lat: &Lattice, f: FormationSpec) -> bool {
    Section::whole(lat).in_wf(f)
}

/// Supersoluble with every Sylow subgroup K-P_t-subnormal.
pub fn in_ut0(lat: &Lattice, t: u32) -> bool {
    Section::whole(lat).in_ut0(t)
}
