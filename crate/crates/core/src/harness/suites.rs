use rayon::prelude::*;

use crate::arith;
use crate::bitset::BitSet;
use crate::classes::{self, pt_admissible, FormationSpec, LocalFunction, Section};
use crate::corpus::{build, Corpus, CorpusEntry, GroupRecipe};
use crate::error::{Error, Result};
use crate::group::{conjugate, direct_product, quotient, Homomorphism, PermGroup};
use crate::harness::report::{Case, Outcome};
use crate::harness::SuiteId;
use crate::lattice::{Lattice, SubgroupId};
use crate::oracle::{self, EdgeValidator, Oracle, ORACLE_ORDER_CAP};
use crate::subnormal::{self, is_subnormal_in, StepPolicy, StepTag};

/// Pair evaluations allowed per group in the factorisation search.
pub const FACTORISATION_BUDGET: u64 = 2_000_000;

pub(super) fn run(id: SuiteId, corpus: &Corpus, ts: &[u32]) -> Vec<Case> {
    match id {
        SuiteId::Lemma1_1 => per_entry(corpus, lemma_1_1),
        SuiteId::Lemma1_2 => per_entry(corpus, lemma_1_2),
        SuiteId::Lemma1_3Fwd => per_entry(corpus, lemma_1_3),
        SuiteId::Lemma1_4 => per_entry(corpus, |e, lat| lemma_1_4(e, lat, ts)),
        SuiteId::Lemma1_5 => per_entry(corpus, |e, lat| lemma_1_5(e, lat, ts)),
        SuiteId::Lemma2_1 => per_entry(corpus, |e, lat| lemma_2_1(e, lat, ts)),
        SuiteId::Lemma2_2 => per_entry(corpus, |e, lat| lemma_2_2(e, lat, ts)),
        SuiteId::Lemma2_3 => per_entry(corpus, |e, lat| lemma_2_3(e, lat, ts)),
        SuiteId::Lemma2_4 => per_entry(corpus, |e, lat| lemma_2_4(e, lat, ts)),
        SuiteId::ExamplesPaper => examples_paper(),
        SuiteId::Theorem3_1 => {
            let mut cases = per_entry(corpus, |e, lat| theorem_3_1(e, lat, ts));
            cases.extend(direct_products(corpus, ts));
            cases
        }
        SuiteId::Theorem3_2 => per_entry(corpus, |e, lat| theorem_3_2(e, lat, ts)),
        SuiteId::Theorem3_3 => per_entry(corpus, |e, lat| theorem_3_3(e, lat, ts)),
        SuiteId::Theorem3_4 => per_entry(corpus, |e, lat| theorem_3_4(e, lat, ts)),
        SuiteId::OracleEquiv => per_entry(corpus, |e, lat| oracle_equiv(e, lat, ts)),
        SuiteId::Lemma3_1 => per_entry(corpus, |e, lat| lemma_3_1(e, lat, ts)),
        SuiteId::Lemma3_2 => per_entry(corpus, |e, lat| lemma_3_2(e, lat, ts)),
    }
}

/// Runs `f` on every entry in parallel, keeping corpus order.
fn per_entry<F>(corpus: &Corpus, f: F) -> Vec<Case>
where
    F: Fn(&CorpusEntry, &Lattice) -> Vec<Case> + Sync,
{
    corpus
        .entries
        .par_iter()
        .map(|e| match e.lattice() {
            Ok(lat) => f(e, &lat),
            Err(err) => vec![skip_or_fail(&e.name, None, "lattice", err)],
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn skip_or_fail(group: &str, t: Option<u32>, check: &str, err: Error) -> Case {
    let outcome = match err {
        Error::Capacity { .. } => Outcome::Skip,
        _ => Outcome::Fail,
    };
    Case::new(group, t, check, outcome, format!("reason=\"{err}\""))
}

fn node(lat: &Lattice, x: SubgroupId) -> String {
    format!("#{}/{}", x.0, lat.order_of(x))
}

/// Counts checked instances of an implication and keeps the first counterexample.
#[derive(Default)]
struct Tally {
    checked: usize,
    premise: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn implies(&mut self, premise: bool, conclusion: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if premise {
            self.premise += 1;
            if !conclusion && self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    fn equal(&mut self, a: bool, b: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if a {
            self.premise += 1;
        }
        if a != b && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn holds(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.implies(true, ok, describe);
    }

    fn case(self, group: &str, t: Option<u32>, check: impl Into<String>) -> Case {
        let mut detail = format!("checked={} premise={}", self.checked, self.premise);
        if let Some(c) = &self.counterexample {
            detail.push_str(&format!(" counterexample={c}"));
        }
        Case::check(group, t, check, self.counterexample.is_none(), detail)
    }
}

/// A quotient `G/N` materialised by coset action, with its own lattice.
struct QuotientView {
    lattice: Lattice,
    hom: Homomorphism,
}

impl QuotientView {
    fn new(lat: &Lattice, n: SubgroupId) -> Result<Self> {
        let (q, hom) = quotient(lat.group(), &lat.as_group(n))?;
        Ok(QuotientView {
            lattice: Lattice::new(&q)?,
            hom,
        })
    }

    fn image(&self, lat: &Lattice, x: SubgroupId) -> SubgroupId {
        let gens: Vec<_> = lat
            .generators(x)
            .iter()
            .map(|g| self.hom.image(g).expect("element of the source"))
            .collect();
        self.lattice
            .generated_by_perms(&gens)
            .expect("images lie in the quotient")
    }
}

struct ClosureChecks {
    quotient: bool,
    subdirect: bool,
    subgroup: bool,
    saturated: bool,
}

const FORMATION: ClosureChecks = ClosureChecks {
    quotient: true,
    subdirect: true,
    subgroup: false,
    saturated: false,
};

const HEREDITARY_SATURATED: ClosureChecks = ClosureChecks {
    quotient: true,
    subdirect: true,
    subgroup: true,
    saturated: true,
};

/// Closure properties of a class given by a predicate on sections.
fn closure_cases(
    e: &CorpusEntry,
    lat: &Lattice,
    t: Option<u32>,
    label: &str,
    which: &ClosureChecks,
    pred: &dyn Fn(Section<'_>) -> bool,
) -> Vec<Case> {
    let whole = Section::whole(lat);
    let in_g = pred(whole);
    let normals = lat.normal_subgroups();
    let quotient_member: Vec<bool> = normals
        .iter()
        .map(|&n| pred(whole.quotient_by(n).expect("normal")))
        .collect();
    let mut out = Vec::new();
    if which.quotient {
        let mut tally = Tally::default();
        for (i, &n) in normals.iter().enumerate() {
            tally.implies(in_g, quotient_member[i], || format!("N={}", node(lat, n)));
        }
        out.push(tally.case(&e.name, t, format!("{label}.quotient")));
    }
    if which.subdirect {
        let mut tally = Tally::default();
        for (i, &n1) in normals.iter().enumerate() {
            for (j, &n2) in normals.iter().enumerate().skip(i + 1) {
                let meet = lat.meet(n1, n2);
                let k = normals
                    .iter()
                    .position(|&m| m == meet)
                    .expect("meet is normal");
                tally.implies(
                    quotient_member[i] && quotient_member[j],
                    quotient_member[k],
                    || format!("N1={} N2={}", node(lat, n1), node(lat, n2)),
                );
            }
        }
        out.push(tally.case(&e.name, t, format!("{label}.subdirect")));
    }
    if which.subgroup {
        let mut tally = Tally::default();
        for u in lat.ids() {
            tally.implies(in_g, pred(Section::subgroup(lat, u)), || {
                format!("U={}", node(lat, u))
            });
        }
        out.push(tally.case(&e.name, t, format!("{label}.subgroup")));
    }
    if which.saturated {
        let mut tally = Tally::default();
        for y in lat.ids() {
            let phi = lat.frattini_of(y);
            let above = Section::new(lat, y, phi).expect("Frattini subgroup is normal");
            tally.implies(pred(above), pred(Section::subgroup(lat, y)), || {
                format!("Y={}", node(lat, y))
            });
        }
        out.push(tally.case(&e.name, t, format!("{label}.saturated")));
    }
    out
}

fn lemma_1_1(e: &CorpusEntry, lat: &Lattice) -> Vec<Case> {
    let series = if lat.group().order() <= ORACLE_ORDER_CAP {
        oracle::all_chief_series(lat)
    } else {
        vec![lat.chief_series()]
    };
    let mut seen = std::collections::HashSet::new();
    let mut tally = Tally::default();
    let mut failure = None;
    for s in &series {
        for (k, h) in s.factors() {
            if !seen.insert((k, h)) {
                continue;
            }
            let size = lat.order_of(h) / lat.order_of(k);
            let primes = arith::prime_divisors(size);
            if primes.len() != 1 {
                continue;
            }
            let p = primes[0];
            let criterion = match lat.automizer_is_abelian_of_exponent_dividing(h, k, p - 1) {
                Ok(v) => v,
                Err(err) => {
                    failure = Some(err);
                    break;
                }
            };
            let c = lat.chief_centralizer(h, k).expect("chief factor");
            let materialised = quotient(lat.group(), &lat.as_group(c))
                .and_then(|(q, _)| Ok(q.is_abelian() && (p - 1).is_multiple_of(q.exponent()?)));
            let materialised = match materialised {
                Ok(v) => v,
                Err(err) => {
                    failure = Some(err);
                    break;
                }
            };
            tally.holds(
                criterion == (size == p) && criterion == materialised,
                || format!("H={} K={}", node(lat, h), node(lat, k)),
            );
        }
    }
    match failure {
        Some(err) => vec![skip_or_fail(&e.name, None, "automizer_criterion", err)],
        None => vec![tally.case(&e.name, None, "automizer_criterion")],
    }
}

fn lemma_1_2(e: &CorpusEntry, lat: &Lattice) -> Vec<Case> {
    let pred = |s: Section<'_>| s.sylows_subnormal(StepPolicy::KPSub);
    let mut tally = Tally::default();
    for u in lat.ids() {
        let s = Section::subgroup(lat, u);
        tally.implies(pred(s), s.is_ore_dispersive(), || {
            format!("U={}", node(lat, u))
        });
    }
    let mut out = vec![tally.case(&e.name, None, "wU.ore_dispersive")];
    out.extend(closure_cases(
        e,
        lat,
        None,
        "wU",
        &HEREDITARY_SATURATED,
        &pred,
    ));
    out
}

fn lemma_1_3(e: &CorpusEntry, lat: &Lattice) -> Vec<Case> {
    let whole = Section::whole(lat);
    let supersoluble = whole.is_supersoluble();
    let candidates: Vec<SubgroupId> = lat
        .ids()
        .filter(|&a| {
            Section::subgroup(lat, a).is_nilpotent()
                && is_subnormal_in(lat, a, lat.top(), StepPolicy::PSub)
        })
        .collect();
    let order = lat.group().order();
    let mut budget = FACTORISATION_BUDGET;
    let mut found = None;
    'search: for (i, &a) in candidates.iter().enumerate() {
        for &b in &candidates[i..] {
            if budget == 0 {
                break 'search;
            }
            budget -= 1;
            let meet = lat.meet(a, b);
            if lat.order_of(a) * lat.order_of(b) == order * lat.order_of(meet)
                && product_is_whole(lat, a, b)
            {
                found = Some((a, b));
                break 'search;
            }
        }
    }
    let exhausted = budget == 0 && found.is_none();
    let (outcome, detail) = match (supersoluble, found, exhausted) {
        (_, Some((a, b)), _) => (
            if supersoluble {
                Outcome::Pass
            } else {
                Outcome::Fail
            },
            format!(
                "supersoluble={supersoluble} A={} B={}",
                node(lat, a),
                node(lat, b)
            ),
        ),
        (_, None, true) => (
            Outcome::Skip,
            format!("reason=\"search budget of {FACTORISATION_BUDGET} pairs exhausted\""),
        ),
        (true, None, false) => (
            Outcome::Fail,
            format!(
                "supersoluble=true candidates={} no factorisation",
                candidates.len()
            ),
        ),
        (false, None, false) => (
            Outcome::Pass,
            format!("supersoluble=false candidates={} none", candidates.len()),
        ),
    };
    vec![Case::new(
        &e.name,
        None,
        "nilpotent_p_factorisation",
        outcome,
        detail,
    )]
}

fn product_is_whole(lat: &Lattice, a: SubgroupId, b: SubgroupId) -> bool {
    let mut set = BitSet::new(lat.num_elements());
    for x in lat.subgroup(a).elements().iter() {
        for y in lat.subgroup(b).elements().iter() {
            set.insert(lat.mul(x, y));
        }
    }
    set.count() == lat.num_elements()
}

/// Built-in hereditary formations used by the F-subnormality suites.
fn hereditary_formations(ts: &[u32]) -> Vec<(Option<u32>, FormationSpec)> {
    let mut out = vec![
        (None, FormationSpec::Nilpotent),
        (None, FormationSpec::Supersoluble),
    ];
    for &t in ts {
        out.push((Some(t), FormationSpec::UK(t)));
        out.push((Some(t), FormationSpec::UT0(t)));
    }
    out
}

fn lemma_1_4(e: &CorpusEntry, lat: &Lattice, ts: &[u32]) -> Vec<Case> {
    let mut out = Vec::new();
    let top = lat.top();
    let normals = lat.normal_subgroups();
    let views: Vec<(SubgroupId, Result<QuotientView>)> = normals
        .iter()
        .filter(|&&n| n != lat.trivial())
        .map(|&n| (n, QuotientView::new(lat, n)))
        .collect();
    for (t, f) in hereditary_formations(ts) {
        let policy = StepPolicy::FSub(f);
        let in_g = |h: SubgroupId| is_subnormal_in(lat, h, top, policy);
        let mut trans = Tally::default();
        let mut inter = Tally::default();
        for u in lat.ids() {
            for h in lat.below(u).iter().map(SubgroupId) {
                trans.implies(
                    is_subnormal_in(lat, h, u, policy) && in_g(u),
                    in_g(h),
                    || format!("H={} U={}", node(lat, h), node(lat, u)),
                );
            }
            for h in lat.ids() {
                inter.implies(
                    in_g(h),
                    is_subnormal_in(lat, lat.meet(h, u), u, policy),
                    || format!("H={} U={}", node(lat, h), node(lat, u)),
                );
            }
        }
        let label = format!("{f}");
        out.push(trans.case(&e.name, t, format!("{label}.transitive")));

        let mut lift = Tally::default();
        let mut image = Tally::default();
        let mut skipped = None;
        for (n, view) in &views {
            let view = match view {
                Ok(v) => v,
                Err(err) => {
                    skipped = Some(err.clone());
                    continue;
                }
            };
            let q = &view.lattice;
            for h in lat.ids() {
                let img = view.image(lat, h);
                let img_sub = is_subnormal_in(q, img, q.top(), policy);
                if lat.le(*n, h) {
                    lift.implies(img_sub, in_g(h), || {
                        format!("U={} N={}", node(lat, h), node(lat, *n))
                    });
                }
                image.implies(in_g(h), img_sub, || {
                    format!("H={} N={}", node(lat, h), node(lat, *n))
                });
            }
        }
        match skipped {
            Some(err) => {
                out.push(skip_or_fail(
                    &e.name,
                    t,
                    &format!("{label}.quotient_lift"),
                    err.clone(),
                ));
                out.push(skip_or_fail(
                    &e.name,
                    t,
                    &format!("{label}.quotient_image"),
                    err,
                ));
            }
            None => {
                out.push(lift.case(&e.name, t, format!("{label}.quotient_lift")));
                out.push(image.case(&e.name, t, format!("{label}.quotient_image")));
            }
        }

        let residual = classes::subgroup_residual(lat, top, f);
        let mut contains = Tally::default();
        for h in lat.above(residual).iter().map(SubgroupId) {
            contains.holds(in_g(h), || format!("H={}", node(lat, h)));
        }
        out.push(contains.case(&e.name, t, format!("{label}.residual_contained")));
        out.push(inter.case(&e.name, t, format!("{label}.intersection")));
    }
    out
}

fn lemma_1_5(e: &CorpusEntry, lat: &Lattice, ts: &[u32]) -> Vec<Case> {
    let mut out = Vec::new();
    for (t, f) in hereditary_formations(ts) {
        let pred = |s: Section<'_>| s.in_wf(f);
        let mut tally = Tally::default();
        for u in lat.ids() {
            let s = Section::subgroup(lat, u);
            tally.implies(pred(s), s.is_soluble(), || format!("U={}", node(lat, u)));
        }
        let label = format!("w{f}");
        out.push(tally.case(&e.name, t, format!("{label}.soluble")));
        out.extend(closure_cases(
            e,
            lat,
            t,
            &label,
            &HEREDITARY_SATURATED,
            &pred,
        ));
    }
    out
}

fn lemma_2_1(e: &CorpusEntry, lat: &Lattice, ts: &[u32]) -> Vec<Case> {
    let g = lat.group();
    let mut sample: Vec<_> = g.generators().to_vec();
    for a in g.generators() {
        for b in g.generators() {
            sample.push(a * b);
        }
    }
    sample.sort();
    sample.dedup();
    let validator = EdgeValidator::new(lat);
    let mut out = Vec::new();
    for &t in ts {
        let policy = StepPolicy::KPt(t);
        let top = lat.top();
        let mut conj = Tally::default();
        for h in lat.ids() {
            let hg = lat.as_group(h);
            for x in &sample {
                let c = conjugate(&hg, x, g).expect("sample lies in G");
                let c_node = lat
                    .generated_by_perms(c.generators())
                    .expect("conjugate lies in G");
                let by_table = lat.conjugate_node(h, lat.element_index(x).expect("element"));
                conj.holds(
                    c_node == by_table
                        && is_subnormal_in(lat, h, top, policy)
                            == is_subnormal_in(lat, c_node, top, policy),
                    || format!("H={} x={x}", node(lat, h)),
                );
            }
        }
        out.push(conj.case(&e.name, Some(t), "conjugation"));

        let mut trans = Tally::default();
        for r in lat.ids() {
            let Some(upper) = subnormal::witness_in(lat, r, top, policy) else {
                continue;
            };
            for h in lat.below(r).iter().map(SubgroupId) {
                let Some(lower) = subnormal::witness_in(lat, h, r, policy) else {
                    trans.checked += 1;
                    continue;
                };
                let ok = lower.then(&upper).is_ok_and(|w| {
                    oracle::validate_witness_with(&validator, lat, h, top, policy, &w).is_ok()
                }) && is_subnormal_in(lat, h, top, policy);
                trans.implies(true, ok, || {
                    format!("H={} R={}", node(lat, h), node(lat, r))
                });
            }
        }
        out.push(trans.case(&e.name, Some(t), "transitive_witness"));
    }
    out
}

fn lemma_2_2(e: &CorpusEntry, lat: &Lattice, ts: &[u32]) -> Vec<Case> {
    let normals = lat.normal_subgroups();
    let views: Vec<(SubgroupId, Result<QuotientView>)> = normals
        .iter()
        .map(|&n| (n, QuotientView::new(lat, n)))
        .collect();
    let mut out = Vec::new();
    for &t in ts {
        let policy = StepPolicy::KPt(t);
        let top = lat.top();
        let in_g = |h: SubgroupId| is_subnormal_in(lat, h, top, policy);
        let mut meet = Tally::default();
        let mut image = Tally::default();
        let mut lift = Tally::default();
        let mut iff = Tally::default();
        let mut skipped = None;
        for (n, view) in &views {
            let n = *n;
            for h in lat.ids() {
                meet.implies(
                    in_g(h),
                    is_subnormal_in(lat, lat.meet(h, n), n, policy),
                    || format!("H={} N={}", node(lat, h), node(lat, n)),
                );
            }
            let view = match view {
                Ok(v) => v,
                Err(err) => {
                    skipped = Some(err.clone());
                    continue;
                }
            };
            let q = &view.lattice;
            for h in lat.ids() {
                let img = view.image(lat, h);
                let img_sub = is_subnormal_in(q, img, q.top(), policy);
                let describe = || format!("H={} N={}", node(lat, h), node(lat, n));
                image.implies(in_g(h), img_sub, describe);
                if lat.le(n, h) {
                    lift.implies(img_sub, in_g(h), describe);
                }
                iff.equal(in_g(lat.join(h, n)), img_sub, describe);
            }
        }
        out.push(meet.case(&e.name, Some(t), "intersection_normal"));
        match skipped {
            Some(err) => {
                for check in ["quotient_image", "quotient_lift", "product_iff"] {
                    out.push(skip_or_fail(&e.name, Some(t), check, err.clone()));
                }
            }
            None => {
                out.push(image.case(&e.name, Some(t), "quotient_image"));
                out.push(lift.case(&e.name, Some(t), "quotient_lift"));
                out.push(iff.case(&e.name, Some(t), "product_iff"));
            }
        }
        let mut pair = Tally::default();
        for h in lat.ids() {
            for (i, &n1) in normals.iter().enumerate() {
                for &n2 in &normals[i..] {
                    let (hn1, hn2) = (lat.join(h, n1), lat.join(h, n2));
                    pair.implies(in_g(hn1) && in_g(hn2), in_g(lat.meet(hn1, hn2)), || {
                        format!(
                            "H={} N1={} N2={}",
                            node(lat, h),
                            node(lat, n1),
                            node(lat, n2)
                        )
                    });
                }
            }
        }
        out.push(pair.case(&e.name, Some(t), "product_intersection"));
    }
    out
}

fn lemma_2_3(e: &CorpusEntry, lat: &Lattice, ts: &[u32]) -> Vec<Case> {
    if !Section::whole(lat).is_soluble() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for &t in ts {
        let policy = StepPolicy::KPt(t);
        let top = lat.top();
        let in_g = |h: SubgroupId| is_subnormal_in(lat, h, top, policy);
        let mut sub = Tally::default();
        let mut pair = Tally::default();
        for h in lat.ids() {
            for u in lat.ids() {
                let m = lat.meet(h, u);
                let describe = || format!("H={} U={}", node(lat, h), node(lat, u));
                sub.implies(in_g(h), is_subnormal_in(lat, m, u, policy), describe);
                pair.implies(in_g(h) && in_g(u), in_g(m), describe);
            }
        }
        out.push(sub.case(&e.name, Some(t), "intersection_subgroup"));
        out.push(pair.case(&e.name, Some(t), "intersection_pair"));
    }
    out
}

fn lemma_2_4(e: &CorpusEntry, lat: &Lattice, ts: &[u32]) -> Vec<Case> {
    if !Section::whole(lat).is_soluble() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for &t in ts {
        let top = lat.top();
        let mut tally = Tally::default();
        let mut converse_fails = 0;
        for h in lat.ids() {
            let kpt = is_subnormal_in(lat, h, top, StepPolicy::KPt(t));
            let fsub = is_subnormal_in(lat, h, top, StepPolicy::FSub(FormationSpec::UK(t)));
            if fsub && !kpt {
                converse_fails += 1;
            }
            tally.implies(kpt, fsub, || format!("H={}", node(lat, h)));
        }
        let mut case = tally.case(&e.name, Some(t), "kpt_implies_uk_subnormal");
        case.detail
            .push_str(&format!(" converse_fails={converse_fails}"));
        out.push(case);
    }
    out
}

fn example_group(recipe: GroupRecipe) -> Result<(String, Lattice)> {
    let name = recipe.name();
    Ok((name, Lattice::new(&build(&recipe)?)?))
}

fn examples_paper() -> Vec<Case> {
    let mut out = Vec::new();
    match example_group(GroupRecipe::HolomorphCyclic(17)) {
        Ok((name, lat)) => out.extend(example_hol17(&name, &lat)),
        Err(err) => out.push(skip_or_fail("Hol17", Some(3), "build", err)),
    }
    match example_group(GroupRecipe::Alternating(5)) {
        Ok((name, lat)) => out.extend(example_a5(&name, &lat)),
        Err(err) => out.push(skip_or_fail("A5", Some(2), "build", err)),
    }
    match example_group(GroupRecipe::SemidirectCyclic(13, 3)) {
        Ok((name, lat)) => out.extend(example_39(&name, &lat)),
        Err(err) => out.push(skip_or_fail("SD13_3", Some(1), "build", err)),
    }
    out
}

fn verdict_case(
    name: &str,
    t: Option<u32>,
    lat: &Lattice,
    h: SubgroupId,
    policy: StepPolicy,
    expected: bool,
) -> Case {
    let (v, w) = subnormal::is_subnormal_variant(lat, h, policy);
    let witness_ok = match &w {
        Some(w) => oracle::validate_witness(lat, h, policy, w).is_ok(),
        None => true,
    };
    let detail = match &w {
        Some(w) => format!("verdict={v} steps={} witness_valid={witness_ok}", w.len()),
        None => format!("verdict={v}"),
    };
    Case::check(
        name,
        t,
        policy.to_string(),
        v == expected && witness_ok,
        detail,
    )
}

fn example_hol17(name: &str, lat: &Lattice) -> Vec<Case> {
    let t = Some(3);
    let mut out = vec![Case::check(
        name,
        t,
        "order",
        lat.group().order() == 272,
        format!("order={}", lat.group().order()),
    )];
    let a = lat.sylow(17).expect("prime");
    let b = lat.sylow(2).expect("prime");
    let q = quotient(lat.group(), &lat.as_group(a)).map(|(q, _)| q);
    out.push(Case::check(
        name,
        t,
        "complement_quotient",
        q.as_ref()
            .is_ok_and(|q| q.order() == 16 && q.is_abelian() && q.exponent() == Ok(16)),
        "G/Z17 abelian of order 16 and exponent 16",
    ));
    out.push(Case::check(
        name,
        t,
        "complement_in_A16",
        classes::Section::subgroup(lat, b).in_abelian_exp_div(16),
        format!("B={}", node(lat, b)),
    ));
    let h = lat
        .below(b)
        .iter()
        .map(SubgroupId)
        .find(|&x| lat.order_of(x) == 2)
        .expect("Z16 has an involution");
    out.push(Case::check(
        name,
        t,
        "pt_admissible(17,3)",
        !pt_admissible(17, 3),
        "17-1=2^4",
    ));
    out.push(verdict_case(name, None, lat, h, StepPolicy::KPSub, true));
    out.push(verdict_case(name, None, lat, h, StepPolicy::PSub, true));
    out.push(verdict_case(name, t, lat, h, StepPolicy::KPt(3), false));
    out.push(verdict_case(
        name,
        Some(4),
        lat,
        h,
        StepPolicy::KPt(4),
        true,
    ));
    out
}

fn example_a5(name: &str, lat: &Lattice) -> Vec<Case> {
    let t = Some(2);
    let h = lat.sylow(2).expect("prime");
    let policy = StepPolicy::KPt(2);
    let (v, w) = subnormal::is_subnormal_variant(lat, h, policy);
    let shape_ok = w.as_ref().is_some_and(|w| {
        w.steps == [StepTag::Normal, StepTag::Prime(5)]
            && lat.order_of(w.nodes[1]) == 12
            && oracle::validate_witness(lat, h, policy, w).is_ok()
    });
    let mut out = vec![Case::check(
        name,
        t,
        policy.to_string(),
        v && shape_ok,
        format!("verdict={v} chain=H<|A4<G"),
    )];
    out.push(verdict_case(
        name,
        t,
        lat,
        h,
        StepPolicy::FSub(FormationSpec::UK(2)),
        false,
    ));
    let g_res = classes::residual(lat, FormationSpec::UK(2));
    out.push(Case::check(
        name,
        t,
        "residual_G",
        g_res == lat.top(),
        format!("order={}", lat.order_of(g_res)),
    ));
    let a4 = w.as_ref().map(|w| w.nodes[1]).unwrap_or(lat.top());
    let a4_res = classes::subgroup_residual(lat, a4, FormationSpec::UK(2));
    out.push(Case::check(
        name,
        t,
        "residual_H1",
        a4_res == h && lat.order_of(a4) == 12,
        format!("H1={} residual={}", node(lat, a4), node(lat, a4_res)),
    ));
    out
}

fn example_39(name: &str, lat: &Lattice) -> Vec<Case> {
    let t = Some(1);
    let g = lat.group();
    let mut out = vec![Case::check(
        name,
        t,
        "order_nonabelian",
        g.order() == 39 && !g.is_abelian(),
        format!("order={}", g.order()),
    )];
    let res = classes::residual(lat, FormationSpec::UK(1));
    out.push(Case::check(
        name,
        t,
        "residual_G",
        res == lat.trivial(),
        format!("order={}", lat.order_of(res)),
    ));
    let h = lat.sylow(3).expect("prime");
    out.push(Case::check(
        name,
        t,
        "pt_admissible(13,1)",
        !pt_admissible(13, 1),
        "13-1=2^2*3",
    ));
    out.push(verdict_case(
        name,
        t,
        lat,
        h,
        StepPolicy::FSub(FormationSpec::UK(1)),
        true,
    ));
    out.push(verdict_case(name, t, lat, h, StepPolicy::KPt(1), false));
    out
}

fn theorem_3_1(e: &CorpusEntry, lat: &Lattice, ts: &[u32]) -> Vec<Case> {
    let mut out = Vec::new();
    for &t in ts {
        let pred = |s: Section<'_>| s.in_class_ht(t);
        let mut nil = Tally::default();
        let mut ore = Tally::default();
        for u in lat.ids() {
            let s = Section::subgroup(lat, u);
            let member = pred(s);
            nil.implies(s.is_nilpotent(), member, || format!("U={}", node(lat, u)));
            ore.implies(member, s.is_ore_dispersive(), || {
                format!("U={}", node(lat, u))
            });
        }
        out.push(nil.case(&e.name, Some(t), "Ht.contains_nilpotent"));
        out.push(ore.case(&e.name, Some(t), "Ht.ore_dispersive"));
        out.extend(closure_cases(
            e,
            lat,
            Some(t),
            "Ht",
            &HEREDITARY_SATURATED,
            &pred,
        ));
    }
    out
}

fn product_pool(corpus: &Corpus, max_order: u64) -> Vec<&CorpusEntry> {
    corpus
        .iter()
        .filter(|e| e.provenance == "constructor" || e.provenance == "direct product")
        .filter(|e| (2..=max_order).contains(&e.order()))
        .collect()
}

/// Direct products of corpus groups, checked for membership in `H_t`.
fn direct_products(corpus: &Corpus, ts: &[u32]) -> Vec<Case> {
    const PRODUCT_CAP: u64 = 120;
    let left = product_pool(corpus, 24);
    let right = product_pool(corpus, 6);
    let pairs: Vec<(&CorpusEntry, &CorpusEntry)> = left
        .iter()
        .flat_map(|&a| right.iter().map(move |&b| (a, b)))
        .filter(|(a, b)| a.order() * b.order() <= PRODUCT_CAP)
        .collect();
    pairs
        .par_iter()
        .map(|&(a, b)| {
            let name = format!("{}x{}", a.name, b.name);
            let lats = (a.lattice(), b.lattice());
            let (la, lb) = match lats {
                (Ok(la), Ok(lb)) => (la, lb),
                (Err(err), _) | (_, Err(err)) => {
                    return vec![skip_or_fail(&name, None, "Ht.direct_product", err)]
                }
            };
            let product: PermGroup = direct_product(&a.group, &b.group);
            let lp = match Lattice::new(&product) {
                Ok(l) => l,
                Err(err) => return vec![skip_or_fail(&name, None, "Ht.direct_product", err)],
            };
            ts.iter()
                .map(|&t| {
                    let (ia, ib) = (
                        subnormal::in_class_ht(&la, t),
                        subnormal::in_class_ht(&lb, t),
                    );
                    let ip = subnormal::in_class_ht(&lp, t);
                    let ok = if ia && ib { ip } else { !ip };
                    Case::check(
                        &name,
                        Some(t),
                        "Ht.direct_product",
                        ok,
                        format!("factors_in={},{} product_in={ip}", ia, ib),
                    )
                })
                .collect()
        })
        .collect::<Vec<Vec<Case>>>()
        .into_iter()
        .flatten()
        .collect()
}

/// `check` on `G` and on every quotient `G/N`.
fn on_quotients(lat: &Lattice, mut check: impl FnMut(Section<'_>) -> (bool, bool)) -> Tally {
    let mut tally = Tally::default();
    let whole = Section::whole(lat);
    for n in lat.normal_subgroups() {
        let (a, b) = check(whole.quotient_by(n).expect("normal"));
        tally.equal(a, b, || format!("N={}", node(lat, n)));
    }
    tally
}

fn theorem_3_2(e: &CorpusEntry, lat: &Lattice, ts: &[u32]) -> Vec<Case> {
    ts.iter()
        .map(|&t| {
            on_quotients(lat, |s| {
                (s.in_class_ht(t), s.lf_member(LocalFunction::ForHt(t)))
            })
            .case(&e.name, Some(t), "Ht_eq_LF(F)")
        })
        .collect()
}

fn theorem_3_3(e: &CorpusEntry, lat: &Lattice, ts: &[u32]) -> Vec<Case> {
    ts.iter()
        .map(|&t| {
            on_quotients(lat, |s| {
                (s.in_ut0(t), s.lf_member(LocalFunction::ForUt0(t)))
            })
            .case(&e.name, Some(t), "Ut0_eq_LF(X)")
        })
        .collect()
}

fn theorem_3_4(e: &CorpusEntry, lat: &Lattice, ts: &[u32]) -> Vec<Case> {
    let mut out = Vec::new();
    for &t in ts {
        let f = FormationSpec::UT0(t);
        let mut tally = on_quotients(lat, |s| (s.in_class_ht(t), s.in_wf(f)));
        for u in lat.ids() {
            let s = Section::subgroup(lat, u);
            tally.equal(s.in_class_ht(t), s.in_wf(f), || {
                format!("U={}", node(lat, u))
            });
        }
        out.push(tally.case(&e.name, Some(t), "Ht_eq_wUt0"));
    }
    out
}

fn oracle_policies(ts: &[u32]) -> Vec<(Option<u32>, StepPolicy)> {
    let mut out = vec![
        (None, StepPolicy::Subnormal),
        (None, StepPolicy::PSub),
        (None, StepPolicy::KPSub),
    ];
    for &t in ts {
        out.push((Some(t), StepPolicy::KPt(t)));
    }
    let mut uks: Vec<u32> = std::iter::once(1).chain(ts.iter().copied()).collect();
    uks.sort_unstable();
    uks.dedup();
    for k in uks {
        out.push((Some(k), StepPolicy::FSub(FormationSpec::UK(k))));
        out.push((Some(k), StepPolicy::KFSub(FormationSpec::UK(k))));
    }
    out
}

fn oracle_equiv(e: &CorpusEntry, lat: &Lattice, ts: &[u32]) -> Vec<Case> {
    let oracle = match Oracle::new(lat) {
        Ok(o) => o,
        Err(err) => return vec![skip_or_fail(&e.name, None, "oracle", err)],
    };
    let mut out = Vec::new();
    for (t, policy) in oracle_policies(ts) {
        let mut tally = Tally::default();
        let mut failure = None;
        for h in lat.ids() {
            let (v, w) = subnormal::is_subnormal_variant(lat, h, policy);
            let o = match oracle.decide(h, policy) {
                Ok(o) => o,
                Err(err) => {
                    failure = Some(err);
                    break;
                }
            };
            let witness_ok = w
                .as_ref()
                .is_none_or(|w| oracle::validate_witness(lat, h, policy, w).is_ok());
            tally.equal(v, o && witness_ok, || {
                format!("H={} bfs={v} oracle={o}", node(lat, h))
            });
        }
        let check = format!("oracle.{policy}");
        out.push(match failure {
            Some(err) => skip_or_fail(&e.name, t, &check, err),
            None => tally.case(&e.name, t, check),
        });
    }
    for &t in ts {
        let mut tally = Tally::default();
        tally.equal(
            subnormal::in_class_ht(lat, t),
            oracle::in_class_ht_all_sylows(lat, t),
            String::new,
        );
        out.push(tally.case(&e.name, Some(t), "Ht.one_sylow_per_prime"));
    }
    let mut np = Tally::default();
    let primes: Vec<u64> = {
        let mut ps = arith::prime_divisors(lat.group().order());
        ps.extend([2, 3, 5, 7]);
        ps.sort_unstable();
        ps.dedup();
        ps
    };
    for &p in &primes {
        match oracle::np_a_by_search(lat, p) {
            Ok(v) => np.equal(classes::in_np_a(lat, p), v, || format!("p={p}")),
            Err(err) => {
                out.push(skip_or_fail(&e.name, None, "NpA.direct_search", err));
                return out;
            }
        }
    }
    out.push(np.case(&e.name, None, "NpA.direct_search"));
    let series = oracle::all_chief_series(lat);
    for &t in ts {
        let mut tally = Tally::default();
        for f in [LocalFunction::ForHt(t), LocalFunction::ForUt0(t)] {
            let expected = classes::lf_member(lat, f);
            for (i, s) in series.iter().enumerate() {
                tally.equal(expected, Section::whole(lat).lf_member_along(f, s), || {
                    format!("series={i}")
                });
            }
        }
        out.push(tally.case(&e.name, Some(t), "LF.every_chief_series"));
    }
    out
}

fn lemma_3_1(e: &CorpusEntry, lat: &Lattice, ts: &[u32]) -> Vec<Case> {
    let whole = Section::whole(lat);
    let normals = lat.normal_subgroups();
    let mut out = Vec::new();
    for &t in ts {
        let policy = StepPolicy::KPt(t);
        let mut in_n = Tally::default();
        let mut in_q = Tally::default();
        for p in whole.primes() {
            let premise = is_subnormal_in(lat, whole.sylow(p), lat.top(), policy);
            for &n in &normals {
                let sub = Section::subgroup(lat, n);
                for s in sub.sylows_of(p) {
                    in_n.implies(premise, is_subnormal_in(lat, s, n, policy), || {
                        format!("p={p} N={} P={}", node(lat, n), node(lat, s))
                    });
                }
                let q = whole.quotient_by(n).expect("normal");
                for s in q.sylows_of(p) {
                    in_q.implies(premise, is_subnormal_in(lat, s, lat.top(), policy), || {
                        format!("p={p} N={} R={}", node(lat, n), node(lat, s))
                    });
                }
            }
        }
        out.push(in_n.case(&e.name, Some(t), "sylow_in_normal"));
        out.push(in_q.case(&e.name, Some(t), "sylow_in_quotient"));
        let member = whole.in_class_ht(t);
        let mut normal = Tally::default();
        let mut quot = Tally::default();
        for &n in &normals {
            let describe = || format!("N={}", node(lat, n));
            normal.implies(member, Section::subgroup(lat, n).in_class_ht(t), describe);
            quot.implies(
                member,
                whole.quotient_by(n).expect("normal").in_class_ht(t),
                describe,
            );
        }
        out.push(normal.case(&e.name, Some(t), "Ht.normal_subgroup"));
        out.push(quot.case(&e.name, Some(t), "Ht.quotient"));
    }
    out
}

const SMALL_PRIMES: [u64; 7] = [2, 3, 5, 7, 11, 13, 17];

fn lemma_3_2(e: &CorpusEntry, lat: &Lattice, ts: &[u32]) -> Vec<Case> {
    let mut out = Vec::new();
    for &t in ts {
        let primes: Vec<u64> = SMALL_PRIMES
            .into_iter()
            .filter(|&p| pt_admissible(p, t))
            .collect();
        let pred = |s: Section<'_>| {
            primes
                .iter()
                .map(|&p| s.is_member(FormationSpec::SylowNpA(p)))
                .fold(0u32, |acc, v| (acc << 1) | u32::from(v))
        };
        for (i, &p) in primes.iter().enumerate() {
            let bit = primes.len() - 1 - i;
            let member = |s: Section<'_>| pred(s) >> bit & 1 == 1;
            let label = format!("SylNpA{p}");
            let checks = ClosureChecks {
                subgroup: true,
                ..FORMATION
            };
            out.extend(closure_cases(e, lat, Some(t), &label, &checks, &member));
        }
    }
    out
}
