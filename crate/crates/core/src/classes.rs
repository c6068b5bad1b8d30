//! Group classes, local formations and residuals.
//!
//! Everything here is evaluated on a [`Section`] `Y/N` of an ambient
//! lattice: subgroups of `Y/N` are the nodes between `N` and `Y`, so a
//! quotient of a subgroup never needs its own lattice.

use crate::arith;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::{memo_get, memo_put, ChiefSeries, Lattice, SubgroupId};
use crate::subnormal::{self, StepPolicy};

/// A built-in group class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormationSpec {
    Nilpotent,
    Soluble,
    Supersoluble,
    /// `p`-groups.
    PGroups(u64),
    /// Abelian groups of exponent dividing `m`.
    AbelianExpDiv(u64),
    /// Extensions of a `p`-group by an abelian group of exponent dividing `p − 1`.
    NpA(u64),
    /// Groups whose Sylow subgroups all lie in `NpA(p)`.
    SylowNpA(u64),
    /// Soluble groups whose Sylow subgroups all lie in `NpA(p)`.
    SolubleSylowNpA(u64),
    /// Supersoluble groups with exponent free of `(k+1)`-th prime powers.
    UK(u32),
    /// Groups whose Sylow subgroups are all K-P_t-subnormal.
    HT(u32),
    /// Supersoluble members of `HT(t)`.
    UT0(u32),
    Local(LocalFunction),
}

/// The two local functions the crate knows about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalFunction {
    /// `p ↦ SolubleSylowNpA(p)` for admissible `p`, else `p`-groups.
    ForHt(u32),
    /// `p ↦ NpA(p)` for admissible `p`, else `p`-groups.
    ForUt0(u32),
}

impl LocalFunction {
    pub fn at(&self, p: u64) -> FormationSpec {
        match *self {
            LocalFunction::ForHt(t) => ht_local_value(p, t),
            LocalFunction::ForUt0(t) => ut0_local_value(p, t),
        }
    }
}

impl std::fmt::Display for FormationSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormationSpec::Nilpotent => write!(f, "N"),
            FormationSpec::Soluble => write!(f, "S"),
            FormationSpec::Supersoluble => write!(f, "U"),
            FormationSpec::PGroups(p) => write!(f, "N{p}"),
            FormationSpec::AbelianExpDiv(m) => write!(f, "A{m}"),
            FormationSpec::NpA(p) => write!(f, "NpA{p}"),
            FormationSpec::SylowNpA(p) => write!(f, "SylNpA{p}"),
            FormationSpec::SolubleSylowNpA(p) => write!(f, "SSylNpA{p}"),
            FormationSpec::UK(k) => write!(f, "UK{k}"),
            FormationSpec::HT(t) => write!(f, "HT{t}"),
            FormationSpec::UT0(t) => write!(f, "UT0{t}"),
            FormationSpec::Local(LocalFunction::ForHt(t)) => write!(f, "LF(F{t})"),
            FormationSpec::Local(LocalFunction::ForUt0(t)) => write!(f, "LF(X{t})"),
        }
    }
}

impl std::str::FromStr for FormationSpec {
    type Err = Error;

    /// Accepts `N`, `S`, `U`, `UK<k>`, `HT<t>`, `UT0<t>`.
    fn from_str(s: &str) -> Result<Self> {
        let num = |rest: &str| -> Result<u32> {
            rest.parse::<u32>()
                .ok()
                .filter(|&k| k >= 1)
                .ok_or_else(|| Error::argument(format!("bad formation parameter in {s:?}")))
        };
        let upper = s.trim().to_ascii_uppercase();
        match upper.as_str() {
            "N" => Ok(FormationSpec::Nilpotent),
            "S" => Ok(FormationSpec::Soluble),
            "U" => Ok(FormationSpec::Supersoluble),
            _ => {
                if let Some(rest) = upper.strip_prefix("UT0") {
                    Ok(FormationSpec::UT0(num(rest)?))
                } else if let Some(rest) = upper.strip_prefix("UK") {
                    Ok(FormationSpec::UK(num(rest)?))
                } else if let Some(rest) = upper.strip_prefix("HT") {
                    Ok(FormationSpec::HT(num(rest)?))
                } else {
                    Err(Error::argument(format!("unknown formation {s:?}")))
                }
            }
        }
    }
}

/// True when no prime power `q^(t+1)` divides `p − 1`.
pub fn pt_admissible(p: u64, t: u32) -> bool {
    debug_assert!(p >= 2);
    arith::free_of_powers_above(p - 1, t)
}

/// Value at `p` of the local function that defines `HT(t)`.
pub fn ht_local_value(p: u64, t: u32) -> FormationSpec {
    if pt_admissible(p, t) {
        FormationSpec::SolubleSylowNpA(p)
    } else {
        FormationSpec::PGroups(p)
    }
}

/// Value at `p` of the local function that defines `UT0(t)`.
pub fn ut0_local_value(p: u64, t: u32) -> FormationSpec {
    if pt_admissible(p, t) {
        FormationSpec::NpA(p)
    } else {
        FormationSpec::PGroups(p)
    }
}

/// The section `top/bottom` of an ambient lattice, with `bottom ⊴ top`.
#[derive(Clone, Copy)]
pub struct Section<'a> {
    lat: &'a Lattice,
    top: SubgroupId,
    bottom: SubgroupId,
}

impl std::fmt::Debug for Section<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Section({:?}/{:?})", self.top, self.bottom)
    }
}

impl<'a> Section<'a> {
    pub fn new(lat: &'a Lattice, top: SubgroupId, bottom: SubgroupId) -> Result<Self> {
        if !lat.is_normal_in(bottom, top) {
            return Err(Error::Normality(
                "section bottom must be normal in its top".into(),
            ));
        }
        Ok(Section { lat, top, bottom })
    }

    /// The whole ambient group.
    pub fn whole(lat: &'a Lattice) -> Self {
        Section {
            lat,
            top: lat.top(),
            bottom: lat.trivial(),
        }
    }

    /// A subgroup regarded as a group in its own right.
    pub fn subgroup(lat: &'a Lattice, y: SubgroupId) -> Self {
        Section {
            lat,
            top: y,
            bottom: lat.trivial(),
        }
    }

    /// `top/n` for `bottom ≤ n ⊴ top`.
    pub fn quotient_by(&self, n: SubgroupId) -> Result<Self> {
        if !self.lat.le(self.bottom, n) {
            return Err(Error::argument(
                "quotient kernel must contain the section bottom",
            ));
        }
        Section::new(self.lat, self.top, n)
    }

    pub fn lattice(&self) -> &'a Lattice {
        self.lat
    }

    pub fn top(&self) -> SubgroupId {
        self.top
    }

    pub fn bottom(&self) -> SubgroupId {
        self.bottom
    }

    pub fn order(&self) -> u64 {
        self.lat.order_of(self.top) / self.lat.order_of(self.bottom)
    }

    pub fn primes(&self) -> Vec<u64> {
        arith::prime_divisors(self.order())
    }

    /// Nodes of the section, i.e. subgroups `bottom ≤ x ≤ top`.
    pub fn nodes(&self) -> impl Iterator<Item = SubgroupId> + 'a {
        self.lat.interval(self.bottom, self.top).into_iter_ids()
    }

    pub fn normal_subgroups(&self) -> Vec<SubgroupId> {
        let (lat, top) = (self.lat, self.top);
        self.nodes().filter(|&m| lat.is_normal_in(m, top)).collect()
    }

    pub fn sylow(&self, p: u64) -> SubgroupId {
        self.lat
            .sylow_in(self.bottom, self.top, p)
            .expect("primes come from the section order")
    }

    /// Order of `x·bottom` in the section.
    fn coset_order(&self, x: usize) -> u64 {
        let bottom = self.lat.subgroup(self.bottom).elements();
        let mut y = x;
        let mut k = 1;
        while !bottom.contains(y) {
            y = self.lat.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        self.lat
            .subgroup(self.top)
            .elements()
            .iter()
            .fold(1, |acc, x| arith::lcm(acc, self.coset_order(x)))
    }

    pub fn is_abelian(&self) -> bool {
        let lat = self.lat;
        let bottom = lat.subgroup(self.bottom).elements();
        let gens = lat.subgroup(self.top).generator_indices();
        gens.iter().all(|&a| {
            gens.iter()
                .all(|&b| bottom.contains(lat.commutator(a as usize, b as usize)))
        })
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        arith::is_prime_power_of(self.order(), p)
    }

    pub fn is_soluble(&self) -> bool {
        self.lat.le(self.lat.perfect_core(self.top), self.bottom)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.primes()
            .into_iter()
            .all(|p| self.lat.is_normal_in(self.sylow(p), self.top))
    }

    pub fn chief_series(&self) -> ChiefSeries {
        self.lat.chief_series_between(self.bottom, self.top)
    }

    /// Every chief factor has prime order.
    pub fn is_supersoluble(&self) -> bool {
        self.chief_series()
            .factors()
            .all(|(k, h)| arith::is_prime(self.lat.order_of(h) / self.lat.order_of(k)))
    }

    /// Largest normal `p`-subgroup of the section, as a node above `bottom`.
    pub fn o_p(&self, p: u64) -> SubgroupId {
        if !self.order().is_multiple_of(p) {
            return self.bottom;
        }
        self.lat.core_in(self.sylow(p), self.top)
    }

    /// For primes `p_1 > p_2 > …` dividing the order, a normal subgroup of
    /// order `p_1^a_1 ⋯ p_i^a_i` exists for every `i`.
    pub fn is_ore_dispersive(&self) -> bool {
        let order = self.order();
        let normals = self.normal_subgroups();
        let base = self.lat.order_of(self.bottom);
        let mut prefix = 1;
        for p in self.primes().into_iter().rev() {
            prefix *= arith::p_part(order, p);
            if !normals
                .iter()
                .any(|&m| self.lat.order_of(m) == base * prefix)
            {
                return false;
            }
        }
        true
    }

    pub fn in_abelian_exp_div(&self, m: u64) -> bool {
        self.is_abelian() && m.is_multiple_of(self.exponent())
    }

    pub fn in_np_a(&self, p: u64) -> bool {
        let op = self.o_p(p);
        Section {
            lat: self.lat,
            top: self.top,
            bottom: op,
        }
        .in_abelian_exp_div(p - 1)
    }

    pub fn in_u_k(&self, k: u32) -> bool {
        self.is_supersoluble() && arith::free_of_powers_above(self.exponent(), k)
    }

    fn sylows_in_np_a(&self, p: u64) -> bool {
        self.primes().into_iter().all(|q| {
            Section {
                lat: self.lat,
                top: self.sylow(q),
                bottom: self.bottom,
            }
            .in_np_a(p)
        })
    }

    /// One Sylow subgroup per prime is `policy`-subnormal in the section.
    pub fn sylows_subnormal(&self, policy: StepPolicy) -> bool {
        self.primes()
            .into_iter()
            .all(|p| subnormal::is_subnormal_in(self.lat, self.sylow(p), self.top, policy))
    }

    /// Every Sylow `p`-subgroup of the section, as nodes above `bottom`.
    pub fn sylows_of(&self, p: u64) -> Vec<SubgroupId> {
        let target = self.lat.order_of(self.bottom) * arith::p_part(self.order(), p);
        self.nodes()
            .filter(|&s| self.lat.order_of(s) == target)
            .collect()
    }

    /// Every Sylow subgroup of the section is K-P_t-subnormal in it.
    pub fn in_class_ht(&self, t: u32) -> bool {
        self.sylows_subnormal(StepPolicy::KPt(t))
    }

    pub fn in_ut0(&self, t: u32) -> bool {
        self.is_supersoluble() && self.in_class_ht(t)
    }

    /// Every Sylow subgroup of the section is F-subnormal in it.
    pub fn in_wf(&self, f: FormationSpec) -> bool {
        self.sylows_subnormal(StepPolicy::FSub(f))
    }

    /// `C_top(h/k)` for a chief factor `h/k` of the section.
    pub fn factor_centralizer(&self, h: SubgroupId, k: SubgroupId) -> SubgroupId {
        self.lat.factor_centralizer_in(self.top, h, k)
    }

    /// Membership in `LF(f)` evaluated on the deterministic chief series.
    pub fn lf_member(&self, f: LocalFunction) -> bool {
        self.lf_member_along(f, &self.chief_series())
    }

    /// Membership in `LF(f)` along a caller-supplied chief series.
    pub fn lf_member_along(&self, f: LocalFunction, series: &ChiefSeries) -> bool {
        series.factors().all(|(k, h)| {
            let c = self.factor_centralizer(h, k);
            let automizer = Section {
                lat: self.lat,
                top: self.top,
                bottom: c,
            };
            let index = self.lat.order_of(h) / self.lat.order_of(k);
            arith::prime_divisors(index)
                .into_iter()
                .all(|p| automizer.is_member(f.at(p)))
        })
    }

    pub fn is_member(&self, spec: FormationSpec) -> bool {
        let key = (self.top, self.bottom, spec);
        if let Some(v) = memo_get(&self.lat.memo.membership, &key) {
            return v;
        }
        let v = match spec {
            FormationSpec::Nilpotent => self.is_nilpotent(),
            FormationSpec::Soluble => self.is_soluble(),
            FormationSpec::Supersoluble => self.is_supersoluble(),
            FormationSpec::PGroups(p) => self.is_p_group(p),
            FormationSpec::AbelianExpDiv(m) => self.in_abelian_exp_div(m),
            FormationSpec::NpA(p) => self.in_np_a(p),
            FormationSpec::SylowNpA(p) => self.sylows_in_np_a(p),
            FormationSpec::SolubleSylowNpA(p) => self.is_soluble() && self.sylows_in_np_a(p),
            FormationSpec::UK(k) => self.in_u_k(k),
            FormationSpec::HT(t) => self.in_class_ht(t),
            FormationSpec::UT0(t) => self.in_ut0(t),
            FormationSpec::Local(f) => self.lf_member(f),
        };
        memo_put(&self.lat.memo.membership, key, v);
        v
    }

    /// The `F`-residual of the section: the intersection of all
    /// `bottom ≤ M ⊴ top` with `top/M ∈ F`, returned as a node.
    pub fn residual(&self, spec: FormationSpec) -> SubgroupId {
        let lat = self.lat;
        let mut acc: BitSet = lat.subgroup(self.top).elements().clone();
        for m in self.normal_subgroups() {
            let q = Section {
                lat,
                top: self.top,
                bottom: m,
            };
            if q.is_member(spec) {
                acc.intersect_with(lat.subgroup(m).elements());
            }
        }
        let r = lat.find(&acc).expect("intersection of subgroups");
        debug_assert!(Section {
            lat,
            top: self.top,
            bottom: r
        }
        .is_member(spec));
        r
    }
}

/// `G^F` for a subgroup `y` taken as a group in its own right. Memoised.
pub fn subgroup_residual(lat: &Lattice, y: SubgroupId, spec: FormationSpec) -> SubgroupId {
    let key = (y, spec);
    if let Some(v) = memo_get(&lat.memo.residual, &key) {
        return v;
    }
    let r = Section::subgroup(lat, y).residual(spec);
    memo_put(&lat.memo.residual, key, r);
    r
}

trait IntoIds {
    fn into_iter_ids(self) -> std::vec::IntoIter<SubgroupId>;
}

impl IntoIds for BitSet {
    fn into_iter_ids(self) -> std::vec::IntoIter<SubgroupId> {
        self.iter().map(SubgroupId).collect::<Vec<_>>().into_iter()
    }
}

// Whole-group entry points.

pub fn is_soluble(lat: &Lattice) -> bool {
    Section::whole(lat).is_soluble()
}

pub fn is_nilpotent(lat: &Lattice) -> bool {
    Section::whole(lat).is_nilpotent()
}

pub fn is_supersoluble(lat: &Lattice) -> bool {
    Section::whole(lat).is_supersoluble()
}

pub fn is_ore_dispersive(lat: &Lattice) -> bool {
    Section::whole(lat).is_ore_dispersive()
}

pub fn in_abelian_exp_div(lat: &Lattice, m: u64) -> bool {
    Section::whole(lat).in_abelian_exp_div(m)
}

pub fn in_np_a(lat: &Lattice, p: u64) -> bool {
    Section::whole(lat).in_np_a(p)
}

pub fn in_u_k(lat: &Lattice, k: u32) -> bool {
    Section::whole(lat).in_u_k(k)
}

pub fn lf_member(lat: &Lattice, f: LocalFunction) -> bool {
    Section::whole(lat).lf_member(f)
}

pub fn is_member(lat: &Lattice, spec: FormationSpec) -> bool {
    Section::whole(lat).is_member(spec)
}

pub fn residual(lat: &Lattice, spec: FormationSpec) -> SubgroupId {
    subgroup_residual(lat, lat.top(), spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(!pt_admissible(17, 3));
        assert!(pt_admissible(17, 4));
        assert!(!pt_admissible(13, 1));
        assert!(pt_admissible(13, 2));
        assert!(pt_admissible(5, 2));
        assert!(!pt_admissible(5, 1));
        for t in 1..6 {
            assert!(pt_admissible(2, t));
            assert!(pt_admissible(3, t));
        }
    }

    #[test]
    fn local_values() {
        assert_eq!(ht_local_value(17, 3), FormationSpec::PGroups(17));
        assert_eq!(ht_local_value(3, 1), FormationSpec::SolubleSylowNpA(3));
        assert_eq!(ut0_local_value(13, 1), FormationSpec::PGroups(13));
        assert_eq!(ut0_local_value(5, 2), FormationSpec::NpA(5));
        assert_eq!(ut0_local_value(2, 1), FormationSpec::NpA(2));
    }

    #[test]
    fn parse_formation_codes() {
        assert_eq!(
            "UK2".parse::<FormationSpec>().unwrap(),
            FormationSpec::UK(2)
        );
        assert_eq!(
            "ut01".parse::<FormationSpec>().unwrap(),
            FormationSpec::UT0(1)
        );
        assert!("UK0".parse::<FormationSpec>().is_err());
        assert!("XY".parse::<FormationSpec>().is_err());
    }
}
