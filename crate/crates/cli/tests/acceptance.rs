//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use sublab_core::classes::{self, FormationSpec};
use sublab_core::corpus::{build, shared_standard_corpus, Corpus, CorpusEntry, GroupRecipe};
use sublab_core::group::quotient;
use sublab_core::harness::{run_suite, Outcome, Report, SuiteId};
use sublab_core::oracle::validate_witness;
use sublab_core::subnormal::{is_subnormal_variant, StepPolicy, StepTag};
use sublab_core::{Lattice, SubgroupId};

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn lattice(recipe: GroupRecipe) -> Result<Lattice, String> {
    let g = build(&recipe).map_err(|e| e.to_string())?;
    Lattice::new(&g).map_err(|e| e.to_string())
}

fn hol17() -> Check {
    let lat = lattice(GroupRecipe::HolomorphCyclic(17))?;
    ensure(
        lat.group().order() == 272,
        "Hol(Z17) does not have order 272",
    )?;
    let z17 = lat.sylow(17).map_err(|e| e.to_string())?;
    let (q, _) = quotient(lat.group(), &lat.as_group(z17)).map_err(|e| e.to_string())?;
    ensure(
        q.order() == 16 && q.is_abelian(),
        "complement is not abelian of order 16",
    )?;
    let b = lat.sylow(2).map_err(|e| e.to_string())?;
    let h = lat
        .below(b)
        .iter()
        .map(SubgroupId)
        .find(|&x| lat.order_of(x) == 2)
        .ok_or("no involution in the complement")?;
    let (kp, w) = is_subnormal_variant(&lat, h, StepPolicy::KPSub);
    let w = w.ok_or("K-P-subnormal without a witness")?;
    ensure(kp, "H is not K-P-subnormal")?;
    validate_witness(&lat, h, StepPolicy::KPSub, &w)?;
    let (kp3, w3) = is_subnormal_variant(&lat, h, StepPolicy::KPt(3));
    ensure(!kp3 && w3.is_none(), "H is K-P_3-subnormal")?;
    let (kp4, w4) = is_subnormal_variant(&lat, h, StepPolicy::KPt(4));
    ensure(kp4, "H is not K-P_4-subnormal")?;
    validate_witness(&lat, h, StepPolicy::KPt(4), &w4.ok_or("no t=4 witness")?)?;
    Ok(format!(
        "kpsub=true kpt3=false kpt4=true witness_steps={}",
        w.len()
    ))
}

fn a5() -> Check {
    let lat = lattice(GroupRecipe::Alternating(5))?;
    let h = lat.sylow(2).map_err(|e| e.to_string())?;
    let policy = StepPolicy::KPt(2);
    let (v, w) = is_subnormal_variant(&lat, h, policy);
    let w = w.ok_or("no witness")?;
    ensure(v, "Sylow 2 is not K-P_2-subnormal")?;
    ensure(
        w.steps == [StepTag::Normal, StepTag::Prime(5)],
        format!("witness {:?}", w.steps),
    )?;
    let h1 = w.nodes[1];
    ensure(lat.order_of(h1) == 12, "middle term does not have order 12")?;
    validate_witness(&lat, h, policy, &w)?;
    let (f, _) = is_subnormal_variant(&lat, h, StepPolicy::FSub(FormationSpec::UK(2)));
    ensure(!f, "Sylow 2 is U_2-subnormal")?;
    ensure(
        classes::residual(&lat, FormationSpec::UK(2)) == lat.top(),
        "G^U2 != G",
    )?;
    ensure(
        classes::subgroup_residual(&lat, h1, FormationSpec::UK(2)) == h,
        "H1^U2 is not the Sylow 2-subgroup",
    )?;
    Ok("kpt2=true via order 4 -> 12 [normal] -> 60 [p=5], fsub:UK2=false".into())
}

fn order39() -> Check {
    let lat = lattice(GroupRecipe::SemidirectCyclic(13, 3))?;
    ensure(
        lat.group().order() == 39 && !lat.group().is_abelian(),
        "wrong group",
    )?;
    ensure(
        classes::residual(&lat, FormationSpec::UK(1)) == lat.trivial(),
        "G^U1 != 1",
    )?;
    let h = lat.sylow(3).map_err(|e| e.to_string())?;
    let policy = StepPolicy::FSub(FormationSpec::UK(1));
    let (f, w) = is_subnormal_variant(&lat, h, policy);
    ensure(f, "Sylow 3 is not U_1-subnormal")?;
    validate_witness(&lat, h, policy, &w.ok_or("no witness")?)?;
    let (k, _) = is_subnormal_variant(&lat, h, StepPolicy::KPt(1));
    ensure(!k, "Sylow 3 is K-P_1-subnormal")?;
    Ok("fsub:UK1=true kpt1=false".into())
}

fn summarise(reports: &[Report]) -> Result<(usize, usize), String> {
    let mut pass = 0;
    let mut skip = 0;
    for r in reports {
        if let Some(c) = r.failures().next() {
            return Err(format!("{}: {c}", r.suite));
        }
        for c in &r.cases {
            if c.outcome == Outcome::Skip && !c.detail.contains("exceeds cap") {
                return Err(format!("{}: skip without a cap reason: {c}", r.suite));
            }
        }
        let t = r.totals();
        pass += t.pass;
        skip += t.skip;
    }
    Ok((pass, skip))
}

fn suites(ids: &[SuiteId], corpus: &Corpus, ts: &[u32]) -> Result<Vec<Report>, String> {
    ids.iter()
        .map(|&id| run_suite(id, corpus, ts).map_err(|e| e.to_string()))
        .collect()
}

fn oracle_equivalence() -> Check {
    let mut slice = Corpus::new();
    for e in shared_standard_corpus().entries_up_to(48) {
        slice
            .push(CorpusEntry::new(
                e.name.clone(),
                e.group.clone(),
                e.provenance.clone(),
            ))
            .map_err(|e| e.to_string())?;
    }
    let reports = suites(&[SuiteId::OracleEquiv], &slice, &[1, 2, 3])?;
    let (pass, skip) = summarise(&reports)?;
    ensure(skip == 0, "entries of order at most 48 were skipped")?;
    let required = [
        "oracle.subnormal",
        "oracle.psub",
        "oracle.kpsub",
        "oracle.kpt1",
        "oracle.kpt2",
        "oracle.kpt3",
        "oracle.fsub:UK1",
        "oracle.kfsub:UK1",
    ];
    for check in required {
        let n = reports[0].cases.iter().filter(|c| c.check == check).count();
        ensure(
            n == slice.len(),
            format!("{check} ran on {n} of {} groups", slice.len()),
        )?;
    }
    Ok(format!("groups={} pass={pass}", slice.len()))
}

fn local_definitions() -> Check {
    let ids = [
        SuiteId::Theorem3_2,
        SuiteId::Theorem3_3,
        SuiteId::Theorem3_4,
    ];
    let (pass, skip) = summarise(&suites(&ids, shared_standard_corpus(), &[1, 2, 3, 4])?)?;
    Ok(format!("pass={pass} skip={skip}"))
}

fn ht_closure() -> Check {
    let reports = suites(&[SuiteId::Theorem3_1], shared_standard_corpus(), &[1, 2, 3])?;
    let (pass, skip) = summarise(&reports)?;
    for check in [
        "Ht.subgroup",
        "Ht.quotient",
        "Ht.subdirect",
        "Ht.saturated",
        "Ht.direct_product",
        "Ht.ore_dispersive",
    ] {
        ensure(
            reports[0].cases.iter().any(|c| c.check == check),
            format!("no {check} cases"),
        )?;
    }
    Ok(format!("pass={pass} skip={skip}"))
}

fn lemma_suites() -> Check {
    let ids = [
        SuiteId::Lemma1_1,
        SuiteId::Lemma1_2,
        SuiteId::Lemma1_5,
        SuiteId::Lemma2_1,
        SuiteId::Lemma2_2,
        SuiteId::Lemma2_3,
        SuiteId::Lemma2_4,
        SuiteId::Lemma3_1,
        SuiteId::Lemma3_2,
    ];
    let (pass, skip) = summarise(&suites(&ids, shared_standard_corpus(), &[1, 2, 3])?)?;
    Ok(format!("pass={pass} skip={skip}"))
}

fn determinism() -> Check {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_sublab"))
            .args(["verify", "--suite", "all"])
            .output()
            .map_err(|e| e.to_string())?;
        if out.status.code() != Some(0) {
            return Err(format!("verify exited with {:?}", out.status.code()));
        }
        Ok(out.stdout)
    };
    let first = run()?;
    let second = run()?;
    ensure(first == second, "reports differ between runs")?;
    Ok(format!("bytes={}", first.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("hol17_counterexample", Duration::from_secs(60), hol17),
        ("a5_example", Duration::from_secs(10), a5),
        ("order39_example", Duration::from_secs(5), order39),
        (
            "oracle_equivalence",
            Duration::from_secs(300),
            oracle_equivalence,
        ),
        (
            "local_definition_equivalences",
            Duration::from_secs(600),
            local_definitions,
        ),
        ("ht_closure", Duration::from_secs(600), ht_closure),
        ("lemma_suites", Duration::from_secs(900), lemma_suites),
        ("determinism", Duration::from_secs(1800), determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let verdict = match &result {
            Ok(_) if took > *limit => Err(format!("took longer than {}s", limit.as_secs())),
            Ok(detail) => Ok(detail.clone()),
            Err(e) => Err(e.clone()),
        };
        match verdict {
            Ok(detail) => println!(
                "ACCEPT {} {name}: PASS {:.2}s {detail}",
                i + 1,
                took.as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "ACCEPT {} {name}: FAIL {:.2}s {why}",
                    i + 1,
                    took.as_secs_f64()
                );
            }
        }
    }
    println!(
        "ACCEPT total: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
