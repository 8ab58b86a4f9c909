//! Track categories over a fixed finite underlying category.
//!
//! A track `α: f ⇒ g` between parallel morphisms is stored as a local index
//! into the finite set `T(f, g)`. Vertical composition is written `α + β`
//! (first `α`, then `β`), `a_*` post-whiskers by `a` and `b^*` pre-whiskers
//! by `b`.

use std::collections::BTreeMap;

use crate::cohomology::PreTrack;
use crate::fincat::{validate_category, validate_quotient, FiniteCategory, Mor, QuotientFunctor};
use crate::fingroup::{Elem, FiniteGroup, GroupHom};
use crate::natsys::{is_centralised, validate_natural_system, NaturalSystem};
use crate::report::{ValidationReport, Violation};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackCategory {
    pub underlying: FiniteCategory,
    /// `|T(f, g)|` for every non-empty track set.
    pub tracks: BTreeMap<(Mor, Mor), usize>,
    /// `(f, g, h) ↦` table of `α + β` indexed by `α * |T(g,h)| + β`.
    pub vcomp: BTreeMap<(Mor, Mor, Mor), Vec<usize>>,
    /// `(f, g) ↦` table `T(f, g) → T(g, f)` of `-α`.
    pub vneg: BTreeMap<(Mor, Mor), Vec<usize>>,
    /// Identity track `0_f ∈ T(f, f)` per morphism.
    pub vzero: Vec<usize>,
    /// `(a, f, g) ↦` table `T(f, g) → T(af, ag)` of `a_*`.
    pub lwhisk: BTreeMap<(Mor, Mor, Mor), Vec<usize>>,
    /// `(f, g, b) ↦` table `T(f, g) → T(fb, gb)` of `b^*`.
    pub rwhisk: BTreeMap<(Mor, Mor, Mor), Vec<usize>>,
}

impl TrackCategory {
    /// The track category with exactly one track `0_f: f ⇒ f` per morphism.
    pub fn discrete(k: FiniteCategory) -> Self {
        let mut t = TrackCategory {
            tracks: k.morphisms().map(|f| ((f, f), 1)).collect(),
            vcomp: k.morphisms().map(|f| ((f, f, f), vec![0])).collect(),
            vneg: k.morphisms().map(|f| ((f, f), vec![0])).collect(),
            vzero: vec![0; k.num_morphisms()],
            lwhisk: BTreeMap::new(),
            rwhisk: BTreeMap::new(),
            underlying: k,
        };
        for (a, f) in t.underlying.composable_pairs() {
            t.lwhisk.insert((a, f, f), vec![0]);
            t.rwhisk.insert((a, a, f), vec![0]);
        }
        t
    }

    /// `|T(f, g)|`, zero when there is no track.
    #[inline]
    pub fn count(&self, f: Mor, g: Mor) -> usize {
        self.tracks.get(&(f, g)).copied().unwrap_or(0)
    }

    pub fn homotopic(&self, f: Mor, g: Mor) -> bool {
        self.count(f, g) > 0
    }

    /// Non-empty pairs `(f, g)`, ascending.
    pub fn pairs(&self) -> impl Iterator<Item = (Mor, Mor)> + '_ {
        self.tracks.keys().copied()
    }

    /// `α + β` for `α: f ⇒ g`, `β: g ⇒ h`.
    #[inline]
    pub fn vc(&self, f: Mor, g: Mor, h: Mor, a: usize, b: usize) -> usize {
        self.vcomp[&(f, g, h)][a * self.count(g, h) + b]
    }

    #[inline]
    pub fn neg(&self, f: Mor, g: Mor, a: usize) -> usize {
        self.vneg[&(f, g)][a]
    }

    #[inline]
    pub fn zero(&self, f: Mor) -> usize {
        self.vzero[f]
    }

    /// `a_* α` for `α: f ⇒ g`.
    #[inline]
    pub fn lw(&self, a: Mor, f: Mor, g: Mor, t: usize) -> usize {
        self.lwhisk[&(a, f, g)][t]
    }

    /// `b^* α` for `α: f ⇒ g`.
    #[inline]
    pub fn rw(&self, f: Mor, g: Mor, b: Mor, t: usize) -> usize {
        self.rwhisk[&(f, g, b)][t]
    }

    fn structural(&self, msg: String) -> Error {
        Error::Structural(msg)
    }

    fn pair_name(&self, f: Mor, g: Mor) -> String {
        format!("{}⇒{}", self.underlying.name(f), self.underlying.name(g))
    }

    /// Checks that every table is present, typed and in range.
    pub fn check_structure(&self) -> Result<(), Error> {
        let k = &self.underlying;
        for (&(f, g), &n) in &self.tracks {
            if f >= k.num_morphisms() || g >= k.num_morphisms() {
                return Err(self.structural(format!("track set ({f},{g}) names unknown morphisms")));
            }
            if !k.parallel(f, g) {
                return Err(self.structural(format!(
                    "tracks between non-parallel {}",
                    self.pair_name(f, g)
                )));
            }
            if n == 0 {
                return Err(self.structural(format!("empty track set {} listed", self.pair_name(f, g))));
            }
        }
        for f in k.morphisms() {
            if self.count(f, f) == 0 {
                return Err(self.structural(format!("no identity track on {}", k.name(f))));
            }
        }
        if self.vzero.len() != k.num_morphisms() {
            return Err(self.structural("vzero must list one track per morphism".into()));
        }
        for f in k.morphisms() {
            if self.vzero[f] >= self.count(f, f) {
                return Err(self.structural(format!("0_{} out of range", k.name(f))));
            }
        }
        let table = |name: &str, key: String, tab: Option<&Vec<usize>>, len: usize, range: usize| {
            let tab = tab.ok_or_else(|| Error::Structural(format!("missing {name} entry {key}")))?;
            if tab.len() != len {
                return Err(Error::Structural(format!("{name} entry {key} has length {}", tab.len())));
            }
            if range == 0 || tab.iter().any(|&x| x >= range) {
                return Err(Error::Structural(format!("{name} entry {key} leaves its target")));
            }
            Ok(())
        };
        let mut expected_vcomp = 0;
        for (f, g) in self.pairs() {
            for h in k.morphisms().filter(|&h| self.homotopic(g, h)) {
                expected_vcomp += 1;
                table(
                    "vcomp",
                    format!("({},{},{})", k.name(f), k.name(g), k.name(h)),
                    self.vcomp.get(&(f, g, h)),
                    self.count(f, g) * self.count(g, h),
                    self.count(f, h),
                )?;
            }
            table(
                "vneg",
                self.pair_name(f, g),
                self.vneg.get(&(f, g)),
                self.count(f, g),
                self.count(g, f),
            )?;
        }
        if self.vcomp.len() != expected_vcomp || self.vneg.len() != self.tracks.len() {
            return Err(self.structural("vcomp/vneg list untyped entries".into()));
        }
        let mut expected_l = 0;
        let mut expected_r = 0;
        for (f, g) in self.pairs() {
            for a in k.after(f) {
                expected_l += 1;
                table(
                    "lwhisk",
                    format!("{}_* on {}", k.name(a), self.pair_name(f, g)),
                    self.lwhisk.get(&(a, f, g)),
                    self.count(f, g),
                    self.count(k.comp(a, f), k.comp(a, g)),
                )?;
            }
            for b in k.before(f) {
                expected_r += 1;
                table(
                    "rwhisk",
                    format!("{}^* on {}", k.name(b), self.pair_name(f, g)),
                    self.rwhisk.get(&(f, g, b)),
                    self.count(f, g),
                    self.count(k.comp(f, b), k.comp(g, b)),
                )?;
            }
        }
        if self.lwhisk.len() != expected_l || self.rwhisk.len() != expected_r {
            return Err(self.structural("whiskering tables list untyped entries".into()));
        }
        Ok(())
    }

    /// Triples `(f, g, h)` with `T(f,g)` and `T(g,h)` non-empty.
    pub fn composable_triples(&self) -> Vec<(Mor, Mor, Mor)> {
        self.vcomp.keys().copied().collect()
    }
}

fn tr(rule: &str, witness: String) -> Violation {
    Violation::new(rule, witness)
}

/// Checks the groupoid laws and TR1–TR9 over every typed tuple.
pub fn validate_track_category(t: &TrackCategory) -> Result<ValidationReport, Error> {
    t.check_structure()?;
    let k = &t.underlying;
    let nm = |f: Mor| k.name(f);
    let mut report = ValidationReport::new();

    // TR1
    for &(f, g, h) in t.vcomp.keys() {
        for e in k.morphisms().filter(|&e| t.homotopic(h, e)) {
            for a in 0..t.count(f, g) {
                for b in 0..t.count(g, h) {
                    let ab = t.vc(f, g, h, a, b);
                    for c in 0..t.count(h, e) {
                        let left = t.vc(f, h, e, ab, c);
                        let right = t.vc(f, g, e, a, t.vc(g, h, e, b, c));
                        if left != right {
                            report.push(tr(
                                "TR1",
                                format!("{},{},{},{} tracks ({a},{b},{c})", nm(f), nm(g), nm(h), nm(e)),
                            ));
                        }
                    }
                }
            }
        }
    }
    // TR2 and inverses
    for (f, g) in t.pairs() {
        for a in 0..t.count(f, g) {
            if t.vc(f, g, g, a, t.zero(g)) != a || t.vc(f, f, g, t.zero(f), a) != a {
                report.push(tr("TR2", format!("{} track {a}", t.pair_name(f, g))));
            }
            let na = t.neg(f, g, a);
            if t.vc(f, g, f, a, na) != t.zero(f) || t.vc(g, f, g, na, a) != t.zero(g) {
                report.push(tr("inverse", format!("{} track {a}", t.pair_name(f, g))));
            }
        }
    }
    // TR3, TR4
    for &(f, g, h) in t.vcomp.keys() {
        for b in k.before(f) {
            let (fb, gb, hb) = (k.comp(f, b), k.comp(g, b), k.comp(h, b));
            for x in 0..t.count(f, g) {
                for y in 0..t.count(g, h) {
                    let left = t.rw(f, h, b, t.vc(f, g, h, x, y));
                    let right = t.vc(fb, gb, hb, t.rw(f, g, b, x), t.rw(g, h, b, y));
                    if left != right {
                        report.push(tr(
                            "TR3",
                            format!("{}^* on {},{},{} tracks ({x},{y})", nm(b), nm(f), nm(g), nm(h)),
                        ));
                    }
                }
            }
        }
        for a in k.after(f) {
            let (af, ag, ah) = (k.comp(a, f), k.comp(a, g), k.comp(a, h));
            for x in 0..t.count(f, g) {
                for y in 0..t.count(g, h) {
                    let left = t.lw(a, f, h, t.vc(f, g, h, x, y));
                    let right = t.vc(af, ag, ah, t.lw(a, f, g, x), t.lw(a, g, h, y));
                    if left != right {
                        report.push(tr(
                            "TR4",
                            format!("{}_* on {},{},{} tracks ({x},{y})", nm(a), nm(f), nm(g), nm(h)),
                        ));
                    }
                }
            }
        }
    }
    // TR5
    for f in k.morphisms() {
        for b in k.before(f) {
            if t.rw(f, f, b, t.zero(f)) != t.zero(k.comp(f, b)) {
                report.push(tr("TR5", format!("{}^*(0_{})", nm(b), nm(f))));
            }
        }
        for a in k.after(f) {
            if t.lw(a, f, f, t.zero(f)) != t.zero(k.comp(a, f)) {
                report.push(tr("TR5", format!("{}_*(0_{})", nm(a), nm(f))));
            }
        }
    }
    // TR6, TR7, TR8
    for (u, v) in t.pairs() {
        let n = t.count(u, v);
        let src_id = k.id(k.src(u));
        let tgt_id = k.id(k.tgt(u));
        for x in 0..n {
            if t.rw(u, v, src_id, x) != x {
                report.push(tr("TR6", format!("1^* on {} track {x}", t.pair_name(u, v))));
            }
            if t.lw(tgt_id, u, v, x) != x {
                report.push(tr("TR7", format!("1_* on {} track {x}", t.pair_name(u, v))));
            }
        }
        for f in k.before(u) {
            let (uf, vf) = (k.comp(u, f), k.comp(v, f));
            for f1 in k.before(f) {
                let ff1 = k.comp(f, f1);
                for x in 0..n {
                    if t.rw(u, v, ff1, x) != t.rw(uf, vf, f1, t.rw(u, v, f, x)) {
                        report.push(tr(
                            "TR6",
                            format!("({} {})^* on {} track {x}", nm(f), nm(f1), t.pair_name(u, v)),
                        ));
                    }
                }
            }
            for g in k.after(u) {
                let (gu, gv) = (k.comp(g, u), k.comp(g, v));
                for x in 0..n {
                    let left = t.lw(g, uf, vf, t.rw(u, v, f, x));
                    let right = t.rw(gu, gv, f, t.lw(g, u, v, x));
                    if left != right {
                        report.push(tr(
                            "TR8",
                            format!("{}_* {}^* on {} track {x}", nm(g), nm(f), t.pair_name(u, v)),
                        ));
                    }
                }
            }
        }
        for g1 in k.after(u) {
            let (g1u, g1v) = (k.comp(g1, u), k.comp(g1, v));
            for g in k.after(g1) {
                let gg1 = k.comp(g, g1);
                for x in 0..n {
                    if t.lw(gg1, u, v, x) != t.lw(g, g1u, g1v, t.lw(g1, u, v, x)) {
                        report.push(tr(
                            "TR7",
                            format!("({} {})_* on {} track {x}", nm(g), nm(g1), t.pair_name(u, v)),
                        ));
                    }
                }
            }
        }
    }
    // TR9: g_*(α) + f1^*(α1) = f^*(α1) + g1_*(α) for α: f ⇒ f1, α1: g ⇒ g1.
    for (f, f1) in t.pairs() {
        for (g, g1) in t.pairs().filter(|&(g, _)| k.src(g) == k.tgt(f)) {
            let (gf, gf1, g1f, g1f1) = (k.comp(g, f), k.comp(g, f1), k.comp(g1, f), k.comp(g1, f1));
            for a in 0..t.count(f, f1) {
                for a1 in 0..t.count(g, g1) {
                    let left = t.vc(gf, gf1, g1f1, t.lw(g, f, f1, a), t.rw(g, g1, f1, a1));
                    let right = t.vc(gf, g1f, g1f1, t.rw(g, g1, f, a1), t.lw(g1, f, f1, a));
                    if left != right {
                        report.push(tr(
                            "TR9",
                            format!(
                                "α={a}: {}, α1={a1}: {}",
                                t.pair_name(f, f1),
                                t.pair_name(g, g1)
                            ),
                        ));
                    }
                }
            }
        }
    }
    Ok(report.finish())
}

/// Quotients the underlying category by `f ≃ g ⇔ T(f, g) ≠ ∅`.
///
/// Fails when the relation is not a congruence. Morphisms of the quotient
/// are named by joining the names of their members with `~`.
pub fn homotopy_category(t: &TrackCategory) -> Result<(FiniteCategory, QuotientFunctor), Error> {
    t.check_structure()?;
    let k = &t.underlying;
    for (f, g) in t.pairs() {
        if !t.homotopic(g, f) {
            return Err(Error::Invalid(format!("homotopy is not symmetric at {}", t.pair_name(f, g))));
        }
        for h in k.morphisms().filter(|&h| t.homotopic(g, h)) {
            if !t.homotopic(f, h) {
                return Err(Error::Invalid(format!(
                    "homotopy is not transitive at {},{}",
                    t.pair_name(f, g),
                    k.name(h)
                )));
            }
        }
        for a in k.after(f) {
            if !t.homotopic(k.comp(a, f), k.comp(a, g)) {
                return Err(Error::Invalid(format!("{}_* breaks the congruence", k.name(a))));
            }
        }
        for b in k.before(f) {
            if !t.homotopic(k.comp(f, b), k.comp(g, b)) {
                return Err(Error::Invalid(format!("{}^* breaks the congruence", k.name(b))));
            }
        }
    }
    let reps: Vec<Mor> = k
        .morphisms()
        .map(|f| k.morphisms().find(|&g| t.homotopic(f, g)).unwrap())
        .collect();
    let mut classes: Vec<Mor> = reps.clone();
    classes.sort_unstable();
    classes.dedup();
    let class_index = |f: Mor| classes.binary_search(&reps[f]).unwrap();
    let infos = classes
        .iter()
        .map(|&r| {
            let members: Vec<&str> = k.morphisms().filter(|&f| reps[f] == r).map(|f| k.name(f)).collect();
            crate::fincat::MorphismInfo {
                name: members.join("~"),
                src: k.src(r),
                tgt: k.tgt(r),
            }
        })
        .collect();
    let mut compose = BTreeMap::new();
    for (g, f) in k.composable_pairs() {
        let key = (class_index(g), class_index(f));
        let val = class_index(k.comp(g, f));
        if let Some(&old) = compose.get(&key) {
            if old != val {
                return Err(Error::Invalid(format!(
                    "composition is not well defined on the class of {} ∘ {}",
                    k.name(g),
                    k.name(f)
                )));
            }
        }
        compose.insert(key, val);
    }
    let identity = (0..k.num_objects()).map(|o| class_index(k.id(o))).collect();
    let c = FiniteCategory::new(k.object_names().to_vec(), infos, identity, compose)?;
    let map = k.morphisms().map(class_index).collect();
    let q = QuotientFunctor::new(k.clone(), c.clone(), map)?;
    Ok((c, q))
}

/// `Aut^T` together with the labelling of loop tracks by group elements.
#[derive(Clone, Debug)]
pub struct AutSystem {
    pub system: NaturalSystem,
    /// `labels[f][track]` is the group element of a track `f ⇒ f`.
    pub labels: Vec<Vec<Elem>>,
    /// Inverse of `labels`.
    pub tracks: Vec<Vec<usize>>,
}

/// The natural system `f ↦ T(f, f)` with whiskerings as structure maps.
/// Loop tracks are relabelled so that `0_f` becomes element `0`.
pub fn aut_natural_system(t: &TrackCategory) -> Result<AutSystem, Error> {
    t.check_structure()?;
    let k = &t.underlying;
    let mut labels = Vec::new();
    let mut tracks = Vec::new();
    let mut groups = Vec::new();
    for f in k.morphisms() {
        let n = t.count(f, f);
        let z = t.zero(f);
        let mut to_track: Vec<usize> = (0..n).collect();
        to_track.swap(0, z);
        let mut label = vec![0; n];
        for (e, &tr) in to_track.iter().enumerate() {
            label[tr] = e;
        }
        let add = (0..n)
            .map(|x| (0..n).map(|y| label[t.vc(f, f, f, to_track[x], to_track[y])]).collect())
            .collect();
        let neg = (0..n).map(|x| label[t.neg(f, f, to_track[x])]).collect();
        groups.push(FiniteGroup::from_tables(add, neg)?);
        labels.push(label);
        tracks.push(to_track);
    }
    let mut push = BTreeMap::new();
    let mut pull = BTreeMap::new();
    for (a, f) in k.composable_pairs() {
        let af = k.comp(a, f);
        let map = (0..t.count(f, f))
            .map(|x| labels[af][t.lw(a, f, f, tracks[f][x])])
            .collect();
        push.insert((a, f), GroupHom::new(map));
        let map = (0..t.count(a, a))
            .map(|x| labels[af][t.rw(a, a, f, tracks[a][x])])
            .collect();
        pull.insert((a, f), GroupHom::new(map));
    }
    let system = NaturalSystem::new(k, groups, push, pull)?;
    Ok(AutSystem {
        system,
        labels,
        tracks,
    })
}

/// Checks `π` and `G` of a pre-track category: both categories, the
/// quotient functor, the natural system and the centralised condition.
pub fn validate_pre_track(pi: &QuotientFunctor, g: &NaturalSystem) -> ValidationReport {
    let mut report = ValidationReport::new();
    report.extend(validate_category(&pi.src));
    report.extend(validate_category(&pi.dst));
    report.extend(validate_quotient(pi));
    report.extend(validate_natural_system(&pi.src, g));
    report.extend(is_centralised(&pi.src, g));
    report.finish()
}

/// A track category realising a pre-track category, with the isomorphism
/// `σ: Aut^T → G` stored per morphism as `sigma[f][track] ∈ G_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiGTrack {
    pub track: TrackCategory,
    pub pre: PreTrack,
    pub sigma: Vec<Vec<Elem>>,
}

impl PiGTrack {
    fn check_shape(&self) -> Result<(), Error> {
        self.track.check_structure()?;
        if self.track.underlying != self.pre.pi.src {
            return Err(Error::Structural(
                "track category and pre-track have different underlying categories".into(),
            ));
        }
        let k = &self.track.underlying;
        if self.sigma.len() != k.num_morphisms() {
            return Err(Error::Structural("sigma must have one entry per morphism".into()));
        }
        for f in k.morphisms() {
            let order = self.pre.g.group(f).order();
            if self.sigma[f].len() != self.track.count(f, f) || self.sigma[f].iter().any(|&x| x >= order) {
                return Err(Error::Structural(format!("sigma at {} is mis-sized", k.name(f))));
            }
        }
        Ok(())
    }

    /// `σ_f^{-1}`, if `σ_f` is a bijection.
    pub fn sigma_inverse(&self, f: Mor) -> Option<Vec<usize>> {
        GroupHom::new(self.sigma[f].clone()).inverse().map(|h| h.table().to_vec())
    }
}

/// Checks the track axioms, the pre-track, the condition
/// `π(f) = π(g) ⇔ T(f, g) ≠ ∅` and that `σ` is an isomorphism of natural
/// systems `Aut^T → G`.
pub fn validate_pi_g_track(x: &PiGTrack) -> Result<ValidationReport, Error> {
    x.check_shape()?;
    let t = &x.track;
    let k = &t.underlying;
    let mut report = validate_track_category(t)?;
    report.extend(validate_pre_track(&x.pre.pi, &x.pre.g));
    for f in k.morphisms() {
        for g in k.morphisms().filter(|&g| k.parallel(f, g)) {
            if x.pre.pi.same_class(f, g) != t.homotopic(f, g) {
                report.push(Violation::new(
                    "iff",
                    format!("π-equal={} but |T({},{})|={}", x.pre.pi.same_class(f, g), k.name(f), k.name(g), t.count(f, g)),
                ));
            }
        }
    }
    if !report.passed() {
        return Ok(report.finish());
    }
    let aut = aut_natural_system(t)?;
    let sigma: Vec<GroupHom> = k
        .morphisms()
        .map(|f| GroupHom::new(aut.tracks[f].iter().map(|&tr| x.sigma[f][tr]).collect()))
        .collect();
    for f in k.morphisms() {
        if !sigma[f].is_iso(aut.system.group(f), x.pre.g.group(f)) {
            report.push(Violation::new("sigma-iso", format!("σ_{}", k.name(f))));
        }
    }
    for (a, f) in k.composable_pairs() {
        if sigma[k.comp(a, f)].after(aut.system.push(a, f)) != x.pre.g.push(a, f).after(&sigma[f]) {
            report.push(Violation::new("sigma-natural", format!("{}_* on {}", k.name(a), k.name(f))));
        }
        if sigma[k.comp(a, f)].after(aut.system.pull(a, f)) != x.pre.g.pull(a, f).after(&sigma[a]) {
            report.push(Violation::new("sigma-natural", format!("{}^* on {}", k.name(f), k.name(a))));
        }
    }
    Ok(report.finish())
}

/// A track functor that is the identity on the underlying category, given
/// by one bijection `T(f, g) → T'(f, g)` per non-empty pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackFunctorWitness {
    pub maps: BTreeMap<(Mor, Mor), Vec<usize>>,
}

impl TrackFunctorWitness {
    pub fn identity(t: &TrackCategory) -> Self {
        TrackFunctorWitness {
            maps: t.pairs().map(|(f, g)| ((f, g), (0..t.count(f, g)).collect())).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &TrackFunctorWitness) -> Self {
        TrackFunctorWitness {
            maps: self
                .maps
                .iter()
                .map(|(key, m)| (*key, m.iter().map(|&x| other.maps[key][x]).collect()))
                .collect(),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let mut maps = BTreeMap::new();
        for (key, m) in &self.maps {
            maps.insert(*key, GroupHom::new(m.clone()).inverse()?.table().to_vec());
        }
        Some(TrackFunctorWitness { maps })
    }
}

/// Whether `w` is a track functor `x → y` over the identity of `K`
/// compatible with `σ` and `σ'`.
pub fn is_track_functor(x: &PiGTrack, y: &PiGTrack, w: &TrackFunctorWitness) -> bool {
    let (s, t) = (&x.track, &y.track);
    let k = &s.underlying;
    let keys_ok = s.tracks == t.tracks
        && w.maps.len() == s.tracks.len()
        && s.pairs().all(|(f, g)| {
            w.maps
                .get(&(f, g))
                .is_some_and(|m| m.len() == s.count(f, g) && GroupHom::new(m.clone()).inverse().is_some())
        });
    if !keys_ok {
        return false;
    }
    let map = |f: Mor, g: Mor, a: usize| w.maps[&(f, g)][a];
    for &(f, g, h) in s.vcomp.keys() {
        for a in 0..s.count(f, g) {
            for b in 0..s.count(g, h) {
                if map(f, h, s.vc(f, g, h, a, b)) != t.vc(f, g, h, map(f, g, a), map(g, h, b)) {
                    return false;
                }
            }
        }
    }
    for f in k.morphisms() {
        if map(f, f, s.zero(f)) != t.zero(f) {
            return false;
        }
        for a in 0..s.count(f, f) {
            if y.sigma[f][map(f, f, a)] != x.sigma[f][a] {
                return false;
            }
        }
    }
    for (f, g) in s.pairs() {
        for a in 0..s.count(f, g) {
            if map(g, f, s.neg(f, g, a)) != t.neg(f, g, map(f, g, a)) {
                return false;
            }
        }
    }
    for (&(a, f, g), tab) in &s.lwhisk {
        let (af, ag) = (k.comp(a, f), k.comp(a, g));
        for (x0, &img) in tab.iter().enumerate() {
            if map(af, ag, img) != t.lw(a, f, g, map(f, g, x0)) {
                return false;
            }
        }
    }
    for (&(f, g, b), tab) in &s.rwhisk {
        let (fb, gb) = (k.comp(f, b), k.comp(g, b));
        for (x0, &img) in tab.iter().enumerate() {
            if map(fb, gb, img) != t.rw(f, g, b, map(f, g, x0)) {
                return false;
            }
        }
    }
    true
}

/// Searches for a `(π, G)`-equivalence `x → y`: a track functor that fixes
/// every object and morphism of `K` and satisfies `σ' ∘ F = σ`.
///
/// On loops `F` is forced to be `σ'^{-1} σ`. On `T(f, g)` with `f ≠ g`,
/// `F` is determined by the image of one track `t0`, since
/// `F(α + t0) = F(α) + F(t0)`; those images are searched with pruning on
/// every vertical composite and whiskering whose pairs are already mapped.
pub fn are_equivalent_tracks(x: &PiGTrack, y: &PiGTrack) -> Result<Option<TrackFunctorWitness>, Error> {
    x.check_shape()?;
    y.check_shape()?;
    if x.pre != y.pre {
        return Err(Error::Structural("the two tracks live over different pre-tracks".into()));
    }
    let (s, t) = (&x.track, &y.track);
    if s.tracks != t.tracks {
        return Ok(None);
    }
    let k = &s.underlying;
    let mut maps: BTreeMap<(Mor, Mor), Vec<usize>> = BTreeMap::new();
    for f in k.morphisms() {
        let Some(inv) = y.sigma_inverse(f) else {
            return Ok(None);
        };
        maps.insert((f, f), (0..s.count(f, f)).map(|a| inv[x.sigma[f][a]]).collect());
    }
    let open: Vec<(Mor, Mor)> = s.pairs().filter(|(f, g)| f != g).collect();
    let mut search = EquivSearch { x, y, open: &open, maps };
    if search.extend(0) {
        let w = TrackFunctorWitness { maps: search.maps };
        debug_assert!(is_track_functor(x, y, &w));
        Ok(Some(w))
    } else {
        Ok(None)
    }
}

struct EquivSearch<'a> {
    x: &'a PiGTrack,
    y: &'a PiGTrack,
    open: &'a [(Mor, Mor)],
    maps: BTreeMap<(Mor, Mor), Vec<usize>>,
}

impl EquivSearch<'_> {
    fn extend(&mut self, i: usize) -> bool {
        if i == self.open.len() {
            return is_track_functor(self.x, self.y, &TrackFunctorWitness { maps: self.maps.clone() });
        }
        let (f, g) = self.open[i];
        let (s, t) = (&self.x.track, &self.y.track);
        let n = s.count(f, g);
        let t0_neg = s.neg(f, g, 0);
        for image in 0..n {
            // t = (t + (-t0)) + t0 with t + (-t0) a loop at f.
            let m: Vec<usize> = (0..n)
                .map(|tr| {
                    let loop_f = s.vc(f, g, f, tr, t0_neg);
                    t.vc(f, f, g, self.maps[&(f, f)][loop_f], image)
                })
                .collect();
            self.maps.insert((f, g), m);
            if self.consistent(f, g) && self.extend(i + 1) {
                return true;
            }
            self.maps.remove(&(f, g));
        }
        false
    }

    /// Checks every law that only involves mapped pairs and touches `(f, g)`.
    fn consistent(&self, f: Mor, g: Mor) -> bool {
        let (s, t) = (&self.x.track, &self.y.track);
        let k = &s.underlying;
        let maps = &self.maps;
        let touches = |pairs: &[(Mor, Mor)]| pairs.contains(&(f, g)) && pairs.iter().all(|p| maps.contains_key(p));
        for &(a, b, c) in s.vcomp.keys() {
            if !touches(&[(a, b), (b, c), (a, c)]) {
                continue;
            }
            for p in 0..s.count(a, b) {
                for q in 0..s.count(b, c) {
                    if maps[&(a, c)][s.vc(a, b, c, p, q)] != t.vc(a, b, c, maps[&(a, b)][p], maps[&(b, c)][q]) {
                        return false;
                    }
                }
            }
        }
        for (&(a, u, v), tab) in &s.lwhisk {
            let target = (k.comp(a, u), k.comp(a, v));
            if !touches(&[(u, v), target]) {
                continue;
            }
            for (p, &img) in tab.iter().enumerate() {
                if maps[&target][img] != t.lw(a, u, v, maps[&(u, v)][p]) {
                    return false;
                }
            }
        }
        for (&(u, v, b), tab) in &s.rwhisk {
            let target = (k.comp(u, b), k.comp(v, b));
            if !touches(&[(u, v), target]) {
                continue;
            }
            for (p, &img) in tab.iter().enumerate() {
                if maps[&target][img] != t.rw(u, v, b, maps[&(u, v)][p]) {
                    return false;
                }
            }
        }
        true
    }
}
