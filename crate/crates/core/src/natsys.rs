//! Natural systems of groups on a finite category.
//!
//! A natural system `D` assigns a group `D_f` to each morphism `f` and, for
//! composable pairs, homomorphisms `h_*: D_f → D_{hf}` and
//! `g^*: D_f → D_{fg}`. Only these generators are stored; the action of a
//! general factorization `(g, h)` is `g^* h_*`.

use std::collections::BTreeMap;

use crate::fincat::{factorization_category, FiniteCategory, Mor};
use crate::fingroup::{validate_group, validate_hom, FiniteGroup, GroupHom};
use crate::report::{ValidationReport, Violation};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalSystem {
    groups: Vec<FiniteGroup>,
    /// `(h, f) ↦ h_*: D_f → D_{hf}`
    push: BTreeMap<(Mor, Mor), GroupHom>,
    /// `(f, g) ↦ g^*: D_f → D_{fg}`
    pull: BTreeMap<(Mor, Mor), GroupHom>,
}

impl NaturalSystem {
    /// Checks that the tables cover exactly the composable pairs of `base`
    /// and are dimensionally typed.
    pub fn new(
        base: &FiniteCategory,
        groups: Vec<FiniteGroup>,
        push: BTreeMap<(Mor, Mor), GroupHom>,
        pull: BTreeMap<(Mor, Mor), GroupHom>,
    ) -> Result<Self, Error> {
        if groups.len() != base.num_morphisms() {
            return Err(Error::Structural("one group per morphism required".into()));
        }
        let pairs = base.composable_pairs();
        for &(g, f) in &pairs {
            let gf = base.comp(g, f);
            let p = push.get(&(g, f)).ok_or_else(|| {
                Error::Structural(format!("missing push {}_* on D_{}", base.name(g), base.name(f)))
            })?;
            if !p.is_typed(&groups[f], &groups[gf]) {
                return Err(Error::Structural(format!(
                    "push {}_* on D_{} has the wrong shape",
                    base.name(g),
                    base.name(f)
                )));
            }
            let q = pull.get(&(g, f)).ok_or_else(|| {
                Error::Structural(format!("missing pull {}^* on D_{}", base.name(f), base.name(g)))
            })?;
            if !q.is_typed(&groups[g], &groups[gf]) {
                return Err(Error::Structural(format!(
                    "pull {}^* on D_{} has the wrong shape",
                    base.name(f),
                    base.name(g)
                )));
            }
        }
        if push.len() != pairs.len() || pull.len() != pairs.len() {
            return Err(Error::Structural(
                "structure maps given for non-composable pairs".into(),
            ));
        }
        Ok(NaturalSystem { groups, push, pull })
    }

    /// Fills every structure map with the identity when source and target
    /// groups coincide and with the zero map when either side is trivial.
    pub fn with_default_maps(base: &FiniteCategory, groups: Vec<FiniteGroup>) -> Result<Self, Error> {
        let default = |src: &FiniteGroup, dst: &FiniteGroup| -> Result<GroupHom, Error> {
            if src.order() == 1 || dst.order() == 1 {
                Ok(GroupHom::zero(src.order()))
            } else if src == dst {
                Ok(GroupHom::identity(src.order()))
            } else {
                Err(Error::Structural("no default map between distinct groups".into()))
            }
        };
        let mut push = BTreeMap::new();
        let mut pull = BTreeMap::new();
        for (g, f) in base.composable_pairs() {
            let gf = base.comp(g, f);
            push.insert((g, f), default(&groups[f], &groups[gf])?);
            pull.insert((g, f), default(&groups[g], &groups[gf])?);
        }
        NaturalSystem::new(base, groups, push, pull)
    }

    pub fn trivial(base: &FiniteCategory) -> Self {
        let groups = vec![FiniteGroup::trivial(); base.num_morphisms()];
        NaturalSystem::with_default_maps(base, groups).expect("trivial system is well-typed")
    }

    #[inline]
    pub fn group(&self, f: Mor) -> &FiniteGroup {
        &self.groups[f]
    }

    pub fn groups(&self) -> &[FiniteGroup] {
        &self.groups
    }

    /// `h_*: D_f → D_{hf}`.
    #[inline]
    pub fn push(&self, h: Mor, f: Mor) -> &GroupHom {
        &self.push[&(h, f)]
    }

    /// `g^*: D_f → D_{fg}`.
    #[inline]
    pub fn pull(&self, f: Mor, g: Mor) -> &GroupHom {
        &self.pull[&(f, g)]
    }

    pub fn push_table(&self) -> &BTreeMap<(Mor, Mor), GroupHom> {
        &self.push
    }

    pub fn pull_table(&self) -> &BTreeMap<(Mor, Mor), GroupHom> {
        &self.pull
    }

    /// `D(g, h) = g^* h_*: D_f → D_{hfg}`.
    pub fn factorization_map(&self, base: &FiniteCategory, f: Mor, g: Mor, h: Mor) -> GroupHom {
        let hf = base.comp(h, f);
        self.pull(hf, g).after(self.push(h, f))
    }

    /// Every group is trivial.
    pub fn is_trivial(&self) -> bool {
        self.groups.iter().all(|g| g.order() == 1)
    }
}

/// Checks group axioms, homomorphism laws and functoriality of the
/// structure maps over every composable tuple.
pub fn validate_natural_system(base: &FiniteCategory, d: &NaturalSystem) -> ValidationReport {
    let mut report = ValidationReport::new();
    for f in base.morphisms() {
        let r = validate_group(d.group(f));
        if !r.passed() {
            report.push(Violation::new(
                "group-axioms",
                format!("D_{}: {}", base.name(f), r.rules().join(",")),
            ));
        }
    }
    for ((h, f), map) in &d.push {
        let hf = base.comp(*h, *f);
        if !validate_hom(map, d.group(*f), d.group(hf)).passed() {
            report.push(Violation::new(
                "hom",
                format!("{}_*: D_{} → D_{}", base.name(*h), base.name(*f), base.name(hf)),
            ));
        }
    }
    for ((f, g), map) in &d.pull {
        let fg = base.comp(*f, *g);
        if !validate_hom(map, d.group(*f), d.group(fg)).passed() {
            report.push(Violation::new(
                "hom",
                format!("{}^*: D_{} → D_{}", base.name(*g), base.name(*f), base.name(fg)),
            ));
        }
    }
    for u in base.morphisms() {
        let n = d.group(u).order();
        if *d.push(base.id(base.tgt(u)), u) != GroupHom::identity(n) {
            report.push(Violation::new("push-identity", format!("1_* on D_{}", base.name(u))));
        }
        if *d.pull(u, base.id(base.src(u))) != GroupHom::identity(n) {
            report.push(Violation::new("pull-identity", format!("1^* on D_{}", base.name(u))));
        }
    }
    for u in base.morphisms() {
        // (f f1)^* = f1^* f^* on D_u
        for f in base.before(u) {
            for f1 in base.before(f) {
                let ff1 = base.comp(f, f1);
                let uf = base.comp(u, f);
                if *d.pull(u, ff1) != d.pull(uf, f1).after(d.pull(u, f)) {
                    report.push(Violation::new(
                        "pull-composition",
                        format!(
                            "({} {})^* on D_{}",
                            base.name(f),
                            base.name(f1),
                            base.name(u)
                        ),
                    ));
                }
            }
        }
        // (g g1)_* = g_* g1_* on D_u
        for g1 in base.after(u) {
            for g in base.after(g1) {
                let gg1 = base.comp(g, g1);
                let g1u = base.comp(g1, u);
                if *d.push(gg1, u) != d.push(g, g1u).after(d.push(g1, u)) {
                    report.push(Violation::new(
                        "push-composition",
                        format!(
                            "({} {})_* on D_{}",
                            base.name(g),
                            base.name(g1),
                            base.name(u)
                        ),
                    ));
                }
            }
        }
        // g_* f^* = f^* g_*: D_u → D_{g u f}
        for f in base.before(u) {
            for g in base.after(u) {
                let uf = base.comp(u, f);
                let gu = base.comp(g, u);
                if d.push(g, uf).after(d.pull(u, f)) != d.pull(gu, f).after(d.push(g, u)) {
                    report.push(Violation::new(
                        "push-pull-commute",
                        format!(
                            "{}_* {}^* on D_{}",
                            base.name(g),
                            base.name(f),
                            base.name(u)
                        ),
                    ));
                }
            }
        }
    }
    report.finish()
}

/// Independent check of the same laws: `D(g, h) = g^* h_*` must be a functor
/// on the factorization category, and must also equal `h_* g^*`.
pub fn validate_as_functor(base: &FiniteCategory, d: &NaturalSystem) -> Result<ValidationReport, Error> {
    let fc = factorization_category(base)?;
    let act = |i: Mor| {
        let m = &fc.morphisms[i];
        d.factorization_map(base, m.from, m.pre, m.post)
    };
    let mut report = ValidationReport::new();
    for (i, m) in fc.morphisms.iter().enumerate() {
        let fg = base.comp(m.from, m.pre);
        let other = d.push(m.post, fg).after(d.pull(m.from, m.pre));
        if act(i) != other {
            report.push(Violation::new(
                "factorization-commute",
                format!("({},{}) on D_{}", base.name(m.pre), base.name(m.post), base.name(m.from)),
            ));
        }
    }
    for f in base.morphisms() {
        let i = fc.category.id(f);
        if act(i) != GroupHom::identity(d.group(f).order()) {
            report.push(Violation::new("functor-identity", base.name(f).to_string()));
        }
    }
    for (second, first) in fc.category.composable_pairs() {
        let composite = fc.category.comp(second, first);
        if act(composite) != act(second).after(&act(first)) {
            report.push(Violation::new(
                "functor-composition",
                format!("{} after {}", fc.category.name(second), fc.category.name(first)),
            ));
        }
    }
    Ok(report.finish())
}

/// `g_*(x) + f^*(y) = f^*(y) + g_*(x)` in `D_{gf}` for composable
/// `i -f-> j -g-> k`, `x ∈ D_f`, `y ∈ D_g`; also reports any non-abelian
/// `D_{id_i}`, which the condition forces.
pub fn is_centralised(base: &FiniteCategory, d: &NaturalSystem) -> ValidationReport {
    let mut report = ValidationReport::new();
    for (g, f) in base.composable_pairs() {
        let gf = base.comp(g, f);
        let target = d.group(gf);
        let push = d.push(g, f);
        let pull = d.pull(g, f);
        'outer: for x in d.group(f).elements() {
            for y in d.group(g).elements() {
                let (a, b) = (push.apply(x), pull.apply(y));
                if target.add(a, b) != target.add(b, a) {
                    report.push(Violation::new(
                        "centralised",
                        format!(
                            "f={}, g={}, x={x}, y={y}",
                            base.name(f),
                            base.name(g)
                        ),
                    ));
                    break 'outer;
                }
            }
        }
    }
    for o in 0..base.num_objects() {
        let i = base.id(o);
        if !d.group(i).is_abelian() {
            report.push(Violation::new(
                "identity-abelian",
                format!("D_{} is not abelian", base.name(i)),
            ));
        }
    }
    report.finish()
}
