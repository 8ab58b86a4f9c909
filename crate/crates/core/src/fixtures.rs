//! Small named inputs used by the test suites and exposed by the CLI.

use crate::cohomology::PreTrack;
use crate::fincat::{FiniteCategory, QuotientFunctor};
use crate::fingroup::{FiniteGroup, GroupHom};
use crate::natsys::NaturalSystem;

/// Objects `0, 1`; morphisms `f, g: 0 → 1` besides the identities.
pub fn parallel_pair() -> FiniteCategory {
    FiniteCategory::from_names(&["0", "1"], &[("f", "0", "1"), ("g", "0", "1")], &[]).unwrap()
}

/// Objects `0, 1`; morphisms `f, g, h: 0 → 1` besides the identities.
pub fn parallel_triple() -> FiniteCategory {
    FiniteCategory::from_names(
        &["0", "1"],
        &[("f", "0", "1"), ("g", "0", "1"), ("h", "0", "1")],
        &[],
    )
    .unwrap()
}

/// Objects `0, 1` and a single non-identity `u: 0 → 1`.
pub fn arrow() -> FiniteCategory {
    FiniteCategory::from_names(&["0", "1"], &[("u", "0", "1")], &[]).unwrap()
}

/// `0 -u-> 1 -v-> 2` with the composite `vu`.
pub fn chain() -> FiniteCategory {
    FiniteCategory::from_names(
        &["0", "1", "2"],
        &[("u", "0", "1"), ("v", "1", "2"), ("vu", "0", "2")],
        &[("v", "u", "vu")],
    )
    .unwrap()
}

/// The cyclic group `Z/n` as a one-object category; morphism `rk` is `k`.
pub fn cyclic_monoid(n: usize) -> FiniteCategory {
    let names: Vec<String> = (0..n).map(|k| format!("r{k}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    FiniteCategory::one_object(&refs, |g, f| (g + f) % n).unwrap()
}

/// `π: K → arrow` collapsing every non-identity of `K` onto `u`, for `K` a
/// parallel family on objects `0, 1`.
pub fn collapse_onto_arrow(k: FiniteCategory) -> QuotientFunctor {
    let c = arrow();
    let u = c.morphism_by_name("u").unwrap();
    let map = k
        .morphisms()
        .map(|m| match k.name(m) {
            "id_0" => c.id(0),
            "id_1" => c.id(1),
            _ => u,
        })
        .collect();
    QuotientFunctor::new(k, c, map).unwrap()
}

pub fn collapse_parallel_pair() -> QuotientFunctor {
    collapse_onto_arrow(parallel_pair())
}

/// Reduction `Z/n → Z/m` of one-object categories (`m` divides `n`).
pub fn cyclic_quotient(n: usize, m: usize) -> QuotientFunctor {
    assert_eq!(n % m, 0);
    QuotientFunctor::new(cyclic_monoid(n), cyclic_monoid(m), (0..n).map(|k| k % m).collect())
        .unwrap()
}

/// `G_f = group` on every non-identity, trivial on identities, with
/// identity or zero structure maps.
pub fn parallel_system(k: &FiniteCategory, group: &FiniteGroup) -> NaturalSystem {
    let groups = k
        .morphisms()
        .map(|f| {
            if k.is_identity(f) {
                FiniteGroup::trivial()
            } else {
                group.clone()
            }
        })
        .collect();
    NaturalSystem::with_default_maps(k, groups).unwrap()
}

/// The same group on every morphism with identity structure maps.
pub fn constant_system(k: &FiniteCategory, group: &FiniteGroup) -> NaturalSystem {
    NaturalSystem::with_default_maps(k, vec![group.clone(); k.num_morphisms()]).unwrap()
}

/// `Z/2 → 1` with `G = Z/3` everywhere, where pushing forward along the
/// non-identity `r1` negates and pulling back is the identity.
pub fn twisted_collapse() -> PreTrack {
    let k = cyclic_monoid(2);
    let c = FiniteCategory::one_object(&["e"], |_, _| 0).unwrap();
    let pi = QuotientFunctor::new(k.clone(), c, vec![0, 0]).unwrap();
    let z3 = FiniteGroup::cyclic(3);
    let neg = GroupHom::new((0..3).map(|x| z3.neg(x)).collect());
    let mut push = std::collections::BTreeMap::new();
    let mut pull = std::collections::BTreeMap::new();
    for (g, f) in k.composable_pairs() {
        let p = if g == 1 { neg.clone() } else { GroupHom::identity(3) };
        push.insert((g, f), p);
        pull.insert((g, f), GroupHom::identity(3));
    }
    let g = NaturalSystem::new(&k, vec![z3.clone(), z3], push, pull).unwrap();
    PreTrack::new(pi, g).unwrap()
}

/// The named pre-track fixtures: name and pre-track.
pub fn pretracks() -> Vec<(&'static str, PreTrack)> {
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let pair = |g: &FiniteGroup| {
        let q = collapse_parallel_pair();
        let sys = parallel_system(&q.src, g);
        PreTrack::new(q, sys).unwrap()
    };
    let triple = {
        let q = collapse_onto_arrow(parallel_triple());
        let sys = parallel_system(&q.src, &z2);
        PreTrack::new(q, sys).unwrap()
    };
    let z4 = {
        let q = cyclic_quotient(4, 2);
        let sys = constant_system(&q.src, &z2);
        PreTrack::new(q, sys).unwrap()
    };
    vec![
        ("pair-z2", pair(&z2)),
        ("pair-z3", pair(&z3)),
        ("pair-s3", pair(&FiniteGroup::symmetric(3))),
        ("triple-z2", triple),
        ("z4-mod2-z2", z4),
        ("z2-collapse-twisted-z3", twisted_collapse()),
    ]
}

/// Looks up a fixture by name, including the `trivial-<name>` variants
/// that replace `G` by the trivial system.
pub fn pretrack(name: &str) -> Option<PreTrack> {
    if let Some(base) = name.strip_prefix("trivial-") {
        return pretrack(base).map(|p| p.with_trivial_coefficients());
    }
    if name == "identity-pair" {
        let k = parallel_pair();
        let g = NaturalSystem::trivial(&k);
        return Some(PreTrack::new(QuotientFunctor::identity(k), g).unwrap());
    }
    pretracks().into_iter().find(|(n, _)| *n == name).map(|(_, p)| p)
}

/// Names accepted by [`pretrack`].
pub fn pretrack_names() -> Vec<String> {
    let mut names: Vec<String> = pretracks().iter().map(|(n, _)| n.to_string()).collect();
    let trivial: Vec<String> = names.iter().map(|n| format!("trivial-{n}")).collect();
    names.extend(trivial);
    names.push("identity-pair".into());
    names
}
