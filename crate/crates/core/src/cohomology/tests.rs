use super::*;
use crate::fixtures;
use crate::fingroup::FiniteGroup;

fn named(name: &str) -> PreTrack {
    fixtures::pretrack(name).unwrap()
}

#[test]
fn zero_triple_over_pair_with_z2_passes() {
    let p = named("pair-z2");
    let z = p.zero_cocycle().unwrap();
    assert!(validate_cocycle(&p, &z).unwrap().passed());
}

#[test]
fn zero_triple_over_trivial_coefficients_passes() {
    for name in ["trivial-triple-z2", "trivial-z4-mod2-z2", "identity-pair"] {
        let p = named(name);
        let z = p.zero_cocycle().unwrap();
        assert!(validate_cocycle(&p, &z).unwrap().passed(), "{name}");
    }
}

#[test]
fn pushforward_along_identity_is_phi() {
    let p = named("pair-s3");
    let k = p.k();
    let (f, g) = (k.morphism_by_name("f").unwrap(), k.morphism_by_name("g").unwrap());
    let z = enumerate_cocycles(&p, Budget::default()).unwrap().pop().unwrap();
    let id1 = k.id(1);
    let id0 = k.id(0);
    assert_eq!(pushforward_phi(&p, &z, id1, g, f).unwrap(), z.phi[&(g, f)]);
    assert_eq!(pullback_phi(&p, &z, id0, g, f).unwrap(), z.phi[&(g, f)]);
}

#[test]
fn pushforward_rejects_mistyped_arguments() {
    let p = named("pair-z2");
    let z = p.zero_cocycle().unwrap();
    let k = p.k();
    let (f, g) = (k.morphism_by_name("f").unwrap(), k.morphism_by_name("g").unwrap());
    assert!(matches!(pushforward_phi(&p, &z, f, g, f), Err(Error::Structural(_))));
    assert!(matches!(pushforward_phi(&p, &z, k.id(1), k.id(0), f), Err(Error::Structural(_))));
}

#[test]
fn zero_coboundary_is_identity() {
    for (name, p) in fixtures::pretracks() {
        for z in enumerate_cocycles(&p, Budget::default()).unwrap() {
            assert_eq!(apply_coboundary(&p, &z, &Coboundary::zero(&p)).unwrap(), z, "{name}");
        }
    }
}

#[test]
fn z2_shift_on_the_pair_fixes_the_zero_triple() {
    // ζ(f,g) = ζ(g,f) = 1 in Z/2; every ξ' and χ' entry is 1 - 1 = 0 by hand.
    let p = named("pair-z2");
    let k = p.k();
    let (f, g) = (k.morphism_by_name("f").unwrap(), k.morphism_by_name("g").unwrap());
    let z = p.zero_cocycle().unwrap();
    let mut c = Coboundary::zero(&p);
    c.zeta.insert((f, g), 1);
    c.zeta.insert((g, f), 1);
    assert_eq!(apply_coboundary(&p, &z, &c).unwrap(), z);
}

#[test]
fn unnormalized_coboundary_is_rejected() {
    let p = named("pair-z3");
    let k = p.k();
    let (f, g) = (k.morphism_by_name("f").unwrap(), k.morphism_by_name("g").unwrap());
    let z = p.zero_cocycle().unwrap();
    let mut c = Coboundary::zero(&p);
    c.zeta.insert((f, g), 1);
    let err = apply_coboundary(&p, &z, &c).unwrap_err();
    assert!(matches!(err, Error::Invalid(_)));
}

#[test]
fn cohomologous_finds_the_applied_coboundary() {
    let p = named("triple-z2");
    let zs = enumerate_cocycles(&p, Budget::default()).unwrap();
    let z = &zs[zs.len() / 2];
    let k = p.k();
    let (f, g, h) = (
        k.morphism_by_name("f").unwrap(),
        k.morphism_by_name("g").unwrap(),
        k.morphism_by_name("h").unwrap(),
    );
    let lower = [((f, g), 1), ((f, h), 0), ((g, h), 1)].into_iter().collect();
    let c = complete_coboundary(&p, z, &lower).unwrap();
    let z2 = apply_coboundary(&p, z, &c).unwrap();
    let w = are_cohomologous(&p, z, &z2).unwrap().expect("witness");
    assert_eq!(apply_coboundary(&p, z, &w).unwrap(), z2);
    assert_eq!(are_cohomologous(&p, z, z).unwrap(), Some(Coboundary::zero(&p)));
}

#[test]
fn class_counts_on_the_parallel_pair() {
    // The fibre {f, g} carries only φ_{g,f} and its inverse, so the classes
    // are the outer automorphism classes of the coefficient group.
    let expect = [("pair-z2", 1), ("pair-z3", 2), ("pair-s3", 1)];
    for (name, n) in expect {
        let r = classify(&named(name)).unwrap();
        assert_eq!(r.class_count, n, "{name}");
    }
}

#[test]
fn cocycle_count_on_the_pair_is_the_automorphism_count() {
    for (group, name) in [(FiniteGroup::cyclic(3), "pair-z3"), (FiniteGroup::symmetric(3), "pair-s3")] {
        let auts = crate::fingroup::enumerate_isomorphisms(&group, &group).len();
        assert_eq!(enumerate_cocycles(&named(name), Budget::default()).unwrap().len(), auts);
    }
}

#[test]
fn budget_is_reported() {
    let err = classify_with_budget(&named("pair-z2"), Budget::nodes(1)).unwrap_err();
    assert!(matches!(err, Error::Budget(_)));
}
