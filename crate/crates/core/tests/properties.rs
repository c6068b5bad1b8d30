use proptest::prelude::*;
use proptest::sample::select;

use sublab_core::arith;
use sublab_core::classes::{self, FormationSpec, Section};
use sublab_core::corpus::{build, GroupRecipe};
use sublab_core::group::{conjugate, quotient, PermGroup};
use sublab_core::oracle::Oracle;
use sublab_core::subnormal::{is_subnormal_in, is_subnormal_variant, StepPolicy};
use sublab_core::{Lattice, Permutation, SubgroupId};

const SMALL: [&str; 16] = [
    "S3", "S4", "A4", "D4", "D5", "D6", "Q8", "Z12", "Z2xZ2", "Z2xS3", "Z3xS3", "Hol5", "SD7_3",
    "Z2xQ8", "Z4xS3", "Z2xA4",
];

fn lattice(name: &str) -> Lattice {
    Lattice::new(&build(&GroupRecipe::from_name(name).unwrap()).unwrap()).unwrap()
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn policies() -> Vec<StepPolicy> {
    vec![
        StepPolicy::Subnormal,
        StepPolicy::PSub,
        StepPolicy::KPSub,
        StepPolicy::KPt(1),
        StepPolicy::KPt(2),
        StepPolicy::KPt(3),
        StepPolicy::FSub(FormationSpec::UK(1)),
        StepPolicy::KFSub(FormationSpec::UK(1)),
        StepPolicy::FSub(FormationSpec::Supersoluble),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a * &a.inverse()).is_identity());
        prop_assert_eq!(&a * &Permutation::identity(7), a.clone());
    }

    #[test]
    fn product_applies_left_first(a in perm(6), b in perm(6), x in 0usize..6) {
        prop_assert_eq!((&a * &b).image(x), b.image(a.image(x)));
    }

    #[test]
    fn conjugation_preserves_order(a in perm(8), g in perm(8)) {
        prop_assert_eq!(a.conjugate_by(&g).order(), a.order());
        prop_assert_eq!(a.conjugate_by(&g), &(&g.inverse() * &a) * &g);
    }

    #[test]
    fn cycle_strings_round_trip(a in perm(9)) {
        let text = a.to_cycle_string();
        prop_assert_eq!(sublab_core::perm::parse_cycles(9, &text).unwrap(), a);
    }

    #[test]
    fn order_matches_enumeration(gens in prop::collection::vec(perm(6), 1..3)) {
        let g = PermGroup::new(6, gens.clone()).unwrap();
        let elems = g.elements().unwrap();
        prop_assert_eq!(elems.len() as u64, g.order());
        prop_assert_eq!(720 % g.order(), 0);
        for x in &gens {
            prop_assert!(g.contains(x).unwrap());
        }
    }

    #[test]
    fn random_subgroup_lattice_node_matches(gens in prop::collection::vec(perm(5), 1..3)) {
        let s5 = lattice("S5");
        let h = s5.generated_by_perms(&gens).unwrap();
        let g = PermGroup::new(5, gens).unwrap();
        prop_assert_eq!(s5.order_of(h), g.order());
        prop_assert!(s5.as_group(h).same_group(&g).unwrap());
    }

    #[test]
    fn quotient_orders_multiply(name in select(&SMALL[..])) {
        let lat = lattice(name);
        for n in lat.normal_subgroups() {
            let (q, hom) = quotient(lat.group(), &lat.as_group(n)).unwrap();
            prop_assert_eq!(q.order() * lat.order_of(n), lat.group().order());
            prop_assert_eq!(hom.kernel().order(), lat.order_of(n));
        }
    }

    #[test]
    fn conjugate_subgroups_agree(name in select(&SMALL[..]), k in 0usize..64, x in 0usize..64) {
        let lat = lattice(name);
        let h = SubgroupId(k % lat.len());
        let g = x % lat.num_elements();
        let c = conjugate(&lat.as_group(h), lat.element(g), lat.group()).unwrap();
        let node = lat.conjugate_node(h, g);
        prop_assert!(lat.as_group(node).same_group(&c).unwrap());
        prop_assert_eq!(lat.order_of(node), lat.order_of(h));
    }
}

#[test]
fn lattice_partial_order() {
    for name in SMALL {
        let lat = lattice(name);
        for a in lat.ids() {
            assert!(lat.le(lat.trivial(), a) && lat.le(a, lat.top()));
            assert_eq!(lat.order_of(lat.top()) % lat.order_of(a), 0);
            for b in lat.ids() {
                if lat.le(a, b) && lat.le(b, a) {
                    assert_eq!(a, b);
                }
                let (j, m) = (lat.join(a, b), lat.meet(a, b));
                assert!(lat.le(a, j) && lat.le(b, j) && lat.le(m, a) && lat.le(m, b));
                if lat.le(a, b) {
                    assert_eq!(lat.order_of(b) % lat.order_of(a), 0, "{name}");
                }
            }
        }
    }
}

#[test]
fn sylow_counts() {
    for name in SMALL {
        let lat = lattice(name);
        let order = lat.group().order();
        for p in arith::prime_divisors(order) {
            let sylows = lat.sylow_subgroups(p).unwrap();
            assert_eq!(sylows.len() as u64 % p, 1, "{name} p={p}");
            assert_eq!(order % sylows.len() as u64, 0);
            for &s in &sylows {
                assert_eq!(lat.order_of(s), arith::p_part(order, p));
            }
        }
    }
}

#[test]
fn frattini_and_fitting() {
    for name in SMALL {
        let lat = lattice(name);
        let phi = lat.frattini();
        let fit = lat.fitting();
        for m in lat.maximal_subgroups() {
            assert!(lat.le(phi, m));
        }
        assert!(lat.is_normal(phi) && lat.is_normal(fit));
        assert!(lat.le(phi, fit), "{name}");
        assert!(classes::is_nilpotent(
            &Lattice::new(&lat.as_group(fit)).unwrap()
        ));
        for n in lat.normal_subgroups() {
            if Section::subgroup(&lat, n).is_nilpotent() {
                assert!(lat.le(n, fit));
            }
        }
    }
}

#[test]
fn formations_are_closed() {
    let specs = [
        FormationSpec::Nilpotent,
        FormationSpec::Soluble,
        FormationSpec::Supersoluble,
        FormationSpec::UK(1),
        FormationSpec::UK(2),
        FormationSpec::UT0(1),
        FormationSpec::UT0(2),
        FormationSpec::NpA(3),
        FormationSpec::AbelianExpDiv(4),
    ];
    for name in SMALL {
        let lat = lattice(name);
        let whole = Section::whole(&lat);
        let normals = lat.normal_subgroups();
        for spec in specs {
            let member: Vec<bool> = normals
                .iter()
                .map(|&n| whole.quotient_by(n).unwrap().is_member(spec))
                .collect();
            let res = classes::residual(&lat, spec);
            for (i, &n) in normals.iter().enumerate() {
                if whole.is_member(spec) {
                    assert!(member[i], "{name} {spec} quotient");
                }
                assert_eq!(member[i], lat.le(res, n), "{name} {spec} residual");
                for (j, &m) in normals.iter().enumerate() {
                    if member[i] && member[j] {
                        let k = normals.iter().position(|&x| x == lat.meet(n, m)).unwrap();
                        assert!(member[k], "{name} {spec} subdirect");
                    }
                }
            }
        }
    }
}

#[test]
fn uk_is_subgroup_closed() {
    for name in SMALL {
        let lat = lattice(name);
        for k in 1..=3 {
            if classes::in_u_k(&lat, k) {
                for u in lat.ids() {
                    assert!(Section::subgroup(&lat, u).in_u_k(k), "{name} k={k}");
                }
            }
        }
    }
}

#[test]
fn residual_passes_through_quotients() {
    for name in SMALL {
        let lat = lattice(name);
        for n in lat.normal_subgroups() {
            let (q, hom) = quotient(lat.group(), &lat.as_group(n)).unwrap();
            let qlat = Lattice::new(&q).unwrap();
            for spec in [
                FormationSpec::Supersoluble,
                FormationSpec::UK(1),
                FormationSpec::Nilpotent,
            ] {
                let r = classes::residual(&lat, spec);
                let image = hom.image_of(&lat.as_group(r)).unwrap();
                let qr = qlat.as_group(classes::residual(&qlat, spec));
                assert!(image.same_group(&qr).unwrap(), "{name} {spec}");
            }
        }
    }
}

#[test]
fn sections_match_materialised_quotients() {
    for name in SMALL {
        let lat = lattice(name);
        let whole = Section::whole(&lat);
        for n in lat.normal_subgroups() {
            let (q, _) = quotient(lat.group(), &lat.as_group(n)).unwrap();
            let qlat = Lattice::new(&q).unwrap();
            let s = whole.quotient_by(n).unwrap();
            assert_eq!(s.order(), q.order());
            assert_eq!(s.is_abelian(), q.is_abelian());
            assert_eq!(s.exponent(), q.exponent().unwrap());
            assert_eq!(s.nodes().count(), qlat.len(), "{name}");
            assert_eq!(s.is_nilpotent(), classes::is_nilpotent(&qlat));
            assert_eq!(s.is_supersoluble(), classes::is_supersoluble(&qlat));
            for t in 1..=3 {
                assert_eq!(
                    s.in_class_ht(t),
                    sublab_core::subnormal::in_class_ht(&qlat, t)
                );
                assert_eq!(s.in_u_k(t), classes::in_u_k(&qlat, t));
            }
        }
    }
}

#[test]
fn policy_monotonicity() {
    for name in SMALL {
        let lat = lattice(name);
        let top = lat.top();
        for h in lat.ids() {
            let sub = |p| is_subnormal_in(&lat, h, top, p);
            let kp = sub(StepPolicy::KPSub);
            if sub(StepPolicy::Subnormal) || sub(StepPolicy::PSub) {
                assert!(kp);
            }
            for t in 1..=3 {
                if sub(StepPolicy::KPt(t)) {
                    assert!(sub(StepPolicy::KPt(t + 1)) && kp);
                }
            }
            if sub(StepPolicy::FSub(FormationSpec::UK(1))) {
                assert!(sub(StepPolicy::KFSub(FormationSpec::UK(1))));
            }
            if sub(StepPolicy::Subnormal) {
                assert!(sub(StepPolicy::KFSub(FormationSpec::UK(1))));
            }
        }
    }
}

#[test]
fn search_matches_oracle_on_small_groups() {
    for name in ["S3", "D4", "A4", "Hol5", "S4", "Z2xS3"] {
        let lat = lattice(name);
        let oracle = Oracle::new(&lat).unwrap();
        for policy in policies() {
            for h in lat.ids() {
                let (v, w) = is_subnormal_variant(&lat, h, policy);
                assert_eq!(v, oracle.decide(h, policy).unwrap(), "{name} {policy}");
                assert_eq!(v, w.is_some());
                if let Some(w) = w {
                    sublab_core::oracle::validate_witness(&lat, h, policy, &w).unwrap();
                }
            }
        }
    }
}
