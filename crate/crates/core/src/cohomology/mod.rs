//! Cocycle triples `(ξ, χ, φ)` over a pre-track category, coboundaries,
//! exhaustive classification, and the two directions of the bijection
//! between cohomology classes and `(π, G)`-track categories.
//!
//! Conventions: `G_f` is written additively and need not be abelian; every
//! formula is evaluated left to right exactly as written, `-x` is the group
//! negation, and `χ(f, g | x, y)` is keyed as `(f, g, x, y)`.
//!
//! Triples are *normalized*: `ξ(f,f,h) = ξ(f,g,g) = ξ(f,g,f) = 0`,
//! `χ(x,x|a,a) = χ(x,y|1,1) = χ(1,1|a,b) = 0` and `φ_{f,f} = 1`. These are
//! the values forced by a track choice with `H_{f,f} = 0` and
//! `H_{g,f} = -H_{f,g}`, and the inverse construction needs them for the
//! unit law and for `σ` to be natural.

mod bijection;
mod classify;
pub(crate) mod equations;

use std::collections::BTreeMap;
use std::time::Instant;

use crate::fincat::{FiniteCategory, Mor, QuotientFunctor};
use crate::fingroup::{Elem, GroupHom};
use crate::natsys::NaturalSystem;
use crate::report::{ValidationReport, Violation};
use crate::track::validate_pre_track;
use crate::Error;

pub use bijection::{build_track, choice_coboundary, choose_tracks, extract_cocycle};
pub use classify::{classify, classify_with_budget, enumerate_cocycles, ClassificationResult, SearchStats};
pub use equations::Entry;
use equations::{push_phi_at, pull_phi_at, CocycleView, Equation};

/// A quotient functor `π: K → C` with a centralised natural system `G` on `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreTrack {
    pub pi: QuotientFunctor,
    pub g: NaturalSystem,
}

impl PreTrack {
    /// Rejects inputs failing [`validate_pre_track`].
    pub fn new(pi: QuotientFunctor, g: NaturalSystem) -> Result<Self, Error> {
        let report = validate_pre_track(&pi, &g);
        if !report.passed() {
            return Err(Error::Invalid(format!("not a pre-track category: {report}")));
        }
        Ok(PreTrack { pi, g })
    }

    /// The underlying category `K`.
    #[inline]
    pub fn k(&self) -> &FiniteCategory {
        &self.pi.src
    }

    /// The same `π` with the trivial natural system.
    pub fn with_trivial_coefficients(&self) -> PreTrack {
        PreTrack {
            pi: self.pi.clone(),
            g: NaturalSystem::trivial(self.k()),
        }
    }

    /// Keys of `ξ`: triples in one fibre.
    pub fn xi_keys(&self) -> Vec<(Mor, Mor, Mor)> {
        self.pi.class_triples()
    }

    /// Keys `(f, g, x, y)` of `χ(f, g | x, y)`.
    pub fn chi_keys(&self) -> Vec<(Mor, Mor, Mor, Mor)> {
        let k = self.k();
        let pairs = self.pi.class_pairs();
        let mut out = Vec::new();
        for &(f, g) in &pairs {
            for &(x, y) in &pairs {
                if k.src(x) == k.tgt(f) {
                    out.push((f, g, x, y));
                }
            }
        }
        out
    }

    /// Keys `(g, f)` of `φ_{g,f}: G_g → G_f`.
    pub fn phi_keys(&self) -> Vec<(Mor, Mor)> {
        self.pi.class_pairs()
    }

    /// Class pairs `(f, g)` with `f ≠ g`.
    pub fn open_pairs(&self) -> Vec<(Mor, Mor)> {
        self.pi.class_pairs().into_iter().filter(|(f, g)| f != g).collect()
    }

    /// `ξ = 0, χ = 0, φ = 1`; needs `G_f = G_g` on every fibre.
    pub fn zero_cocycle(&self) -> Result<CocycleTriple, Error> {
        let mut phi = BTreeMap::new();
        for (g, f) in self.phi_keys() {
            if self.g.group(g) != self.g.group(f) {
                return Err(Error::Invalid(format!(
                    "G_{} and G_{} differ, so φ cannot be the identity",
                    self.k().name(g),
                    self.k().name(f)
                )));
            }
            phi.insert((g, f), GroupHom::identity(self.g.group(f).order()));
        }
        Ok(CocycleTriple {
            xi: self.xi_keys().into_iter().map(|key| (key, 0)).collect(),
            chi: self.chi_keys().into_iter().map(|key| (key, 0)).collect(),
            phi,
        })
    }
}

/// The functions `ξ`, `χ`, `φ` as finite tables over their full typed
/// index sets (normalized entries included).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CocycleTriple {
    /// `(f, g, h) ↦ ξ(f,g,h) ∈ G_f`
    pub xi: BTreeMap<(Mor, Mor, Mor), Elem>,
    /// `(f, g, x, y) ↦ χ(f,g|x,y) ∈ G_{xf}`
    pub chi: BTreeMap<(Mor, Mor, Mor, Mor), Elem>,
    /// `(g, f) ↦ φ_{g,f}: G_g → G_f`
    pub phi: BTreeMap<(Mor, Mor), GroupHom>,
}

impl CocycleView for CocycleTriple {
    fn xi(&self, f: Mor, g: Mor, h: Mor) -> Elem {
        self.xi[&(f, g, h)]
    }
    fn chi(&self, f: Mor, g: Mor, x: Mor, y: Mor) -> Elem {
        self.chi[&(f, g, x, y)]
    }
    fn phi(&self, g: Mor, f: Mor) -> &GroupHom {
        &self.phi[&(g, f)]
    }
}

impl CocycleTriple {
    /// The value of a `ξ` or `χ` entry; `None` for `φ` entries and unknown keys.
    pub fn element(&self, e: Entry) -> Option<Elem> {
        match e {
            Entry::Xi(f, g, h) => self.xi.get(&(f, g, h)).copied(),
            Entry::Chi(f, g, x, y) => self.chi.get(&(f, g, x, y)).copied(),
            Entry::Phi(..) => None,
        }
    }

    /// Checks that the tables cover exactly the typed index sets of `p`
    /// and that every value is in range.
    pub fn check_shape(&self, p: &PreTrack) -> Result<(), Error> {
        let k = p.k();
        let keys_match = self.xi.keys().copied().eq(p.xi_keys())
            && self.chi.keys().copied().eq({
                let mut keys = p.chi_keys();
                keys.sort_unstable();
                keys
            })
            && self.phi.keys().copied().eq(p.phi_keys());
        if !keys_match {
            return Err(Error::Structural(
                "cocycle tables do not match the typed index sets of the pre-track".into(),
            ));
        }
        for (&(f, _, _), &v) in &self.xi {
            if v >= p.g.group(f).order() {
                return Err(Error::Structural(format!("ξ value {v} out of range in G_{}", k.name(f))));
            }
        }
        for (&(f, _, x, _), &v) in &self.chi {
            let xf = k.comp(x, f);
            if v >= p.g.group(xf).order() {
                return Err(Error::Structural(format!("χ value {v} out of range in G_{}", k.name(xf))));
            }
        }
        for (&(g, f), h) in &self.phi {
            if !h.is_typed(p.g.group(g), p.g.group(f)) {
                return Err(Error::Structural(format!(
                    "φ_{{{},{}}} is not a map G_{} → G_{}",
                    k.name(g),
                    k.name(f),
                    k.name(g),
                    k.name(f)
                )));
            }
        }
        Ok(())
    }
}

fn entry_name(k: &FiniteCategory, e: Entry) -> String {
    match e {
        Entry::Phi(g, f) => format!("φ_{{{},{}}}", k.name(g), k.name(f)),
        Entry::Xi(f, g, h) => format!("ξ({},{},{})", k.name(f), k.name(g), k.name(h)),
        Entry::Chi(f, g, x, y) => format!("χ({},{}|{},{})", k.name(f), k.name(g), k.name(x), k.name(y)),
    }
}

/// Checks normalization, that each `φ_{g,f}` is an isomorphism, and every
/// instance of the equation families (i)(a)–(c), (ii), (iii), (iv).
pub fn validate_cocycle(p: &PreTrack, z: &CocycleTriple) -> Result<ValidationReport, Error> {
    z.check_shape(p)?;
    let k = p.k();
    let mut report = ValidationReport::new();
    for (&(f, g, h), &v) in &z.xi {
        if Entry::Xi(f, g, h).is_normalized(p) && v != 0 {
            report.push(Violation::new("normalization", entry_name(k, Entry::Xi(f, g, h))));
        }
    }
    for (&(f, g, x, y), &v) in &z.chi {
        if Entry::Chi(f, g, x, y).is_normalized(p) && v != 0 {
            report.push(Violation::new("normalization", entry_name(k, Entry::Chi(f, g, x, y))));
        }
    }
    for (&(g, f), h) in &z.phi {
        if g == f && *h != GroupHom::identity(p.g.group(f).order()) {
            report.push(Violation::new("normalization", entry_name(k, Entry::Phi(g, f))));
        }
        if !h.is_iso(p.g.group(g), p.g.group(f)) {
            report.push(Violation::new("phi-iso", entry_name(k, Entry::Phi(g, f))));
        }
    }
    for eq in Equation::all(p) {
        if let Err(w) = eq.check(p, z) {
            report.push(Violation::new(eq.label(), w));
        }
    }
    Ok(report.finish())
}

fn require_class_pair(p: &PreTrack, f: Mor, g: Mor) -> Result<(), Error> {
    if p.pi.same_class(f, g) && p.k().parallel(f, g) {
        Ok(())
    } else {
        Err(Error::Structural(format!(
            "{} and {} are not in one fibre of π",
            p.k().name(f),
            p.k().name(g)
        )))
    }
}

/// The map `m_*φ_{b,a}: G_{mb} → G_{ma}`,
/// `t ↦ -χ(a,b|m,m) + φ_{mb,ma}(t) + χ(a,b|m,m)`.
pub fn pushforward_phi(p: &PreTrack, z: &CocycleTriple, m: Mor, b: Mor, a: Mor) -> Result<GroupHom, Error> {
    z.check_shape(p)?;
    require_class_pair(p, a, b)?;
    let k = p.k();
    if k.src(m) != k.tgt(a) {
        return Err(Error::Structural(format!("{} does not follow {}", k.name(m), k.name(a))));
    }
    let mb = k.comp(m, b);
    Ok(GroupHom::new(
        p.g.group(mb).elements().map(|t| push_phi_at(p, z, m, b, a, t)).collect(),
    ))
}

/// The map `b^*φ_{n,m}: G_{nb} → G_{mb}`,
/// `t ↦ -χ(b,b|m,n) + φ_{nb,mb}(t) + χ(b,b|m,n)`.
pub fn pullback_phi(p: &PreTrack, z: &CocycleTriple, b: Mor, n: Mor, m: Mor) -> Result<GroupHom, Error> {
    z.check_shape(p)?;
    require_class_pair(p, m, n)?;
    let k = p.k();
    if k.tgt(b) != k.src(m) {
        return Err(Error::Structural(format!("{} does not precede {}", k.name(b), k.name(m))));
    }
    let nb = k.comp(n, b);
    Ok(GroupHom::new(
        p.g.group(nb).elements().map(|t| pull_phi_at(p, z, b, n, m, t)).collect(),
    ))
}

/// `ζ(f, g) ∈ G_f` for every class pair, with `ζ(f, f) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coboundary {
    pub zeta: BTreeMap<(Mor, Mor), Elem>,
}

impl Coboundary {
    pub fn zero(p: &PreTrack) -> Self {
        Coboundary {
            zeta: p.pi.class_pairs().into_iter().map(|key| (key, 0)).collect(),
        }
    }

    pub fn get(&self, f: Mor, g: Mor) -> Elem {
        self.zeta[&(f, g)]
    }

    pub fn check_shape(&self, p: &PreTrack) -> Result<(), Error> {
        if !self.zeta.keys().copied().eq(p.pi.class_pairs()) {
            return Err(Error::Structural("ζ does not cover exactly the class pairs".into()));
        }
        for (&(f, g), &v) in &self.zeta {
            if v >= p.g.group(f).order() {
                return Err(Error::Structural(format!("ζ value {v} out of range")));
            }
            if f == g && v != 0 {
                return Err(Error::Invalid(format!("ζ({0},{0}) must be 0", p.k().name(f))));
            }
        }
        Ok(())
    }

    /// Pointwise negation `ζ(f, g) ↦ -ζ(f, g)`.
    pub fn negated(&self, p: &PreTrack) -> Self {
        Coboundary {
            zeta: self
                .zeta
                .iter()
                .map(|(&(f, g), &v)| ((f, g), p.g.group(f).neg(v)))
                .collect(),
        }
    }
}

/// The three coboundary formulas, evaluated without validating the result.
pub(crate) fn apply_coboundary_unchecked(p: &PreTrack, z: &CocycleTriple, c: &Coboundary) -> CocycleTriple {
    let k = p.k();
    let zeta = |f: Mor, g: Mor| c.zeta[&(f, g)];
    let xi = z
        .xi
        .iter()
        .map(|(&(f, g, h), &v)| {
            let gr = p.g.group(f);
            let val = gr.sum([
                zeta(f, h),
                v,
                gr.neg(z.phi[&(g, f)].apply(zeta(g, h))),
                gr.neg(zeta(f, g)),
            ]);
            ((f, g, h), val)
        })
        .collect();
    let chi = z
        .chi
        .iter()
        .map(|(&(x, y, a, b), &v)| {
            let (ax, by) = (k.comp(a, x), k.comp(b, y));
            let gr = p.g.group(ax);
            let val = gr.sum([
                zeta(ax, by),
                v,
                gr.neg(p.g.pull(a, x).apply(zeta(a, b))),
                gr.neg(p.g.push(a, x).apply(zeta(x, y))),
            ]);
            ((x, y, a, b), val)
        })
        .collect();
    let phi = z
        .phi
        .iter()
        .map(|(&(g, f), h)| {
            let inner = GroupHom::inner(p.g.group(f), zeta(f, g));
            ((g, f), inner.after(h))
        })
        .collect();
    CocycleTriple { xi, chi, phi }
}

/// `(ξ', χ', φ')` from `(ξ, χ, φ)` and `ζ`:
///
/// - `ξ'(f,g,h) = ζ(f,h) + ξ(f,g,h) - φ_{g,f}ζ(g,h) - ζ(f,g)`
/// - `χ'(x,y|a,b) = ζ(ax,by) + χ(x,y|a,b) - x^*ζ(a,b) - a_*ζ(x,y)`
/// - `φ'_{g,f}(t) = ζ(f,g) + φ_{g,f}(t) - ζ(f,g)`
///
/// The result must again be a normalized cocycle, which additionally
/// requires `φ_{g,f}ζ(g,f) = -ζ(f,g)`; otherwise an error names the failure.
pub fn apply_coboundary(p: &PreTrack, z: &CocycleTriple, c: &Coboundary) -> Result<CocycleTriple, Error> {
    z.check_shape(p)?;
    c.check_shape(p)?;
    let out = apply_coboundary_unchecked(p, z, c);
    let report = validate_cocycle(p, &out)?;
    if !report.passed() {
        return Err(Error::Invalid(format!("coboundary image is not a normalized cocycle: {report}")));
    }
    Ok(out)
}

/// The normalized coboundary with `ζ(f, g)` given on the pairs `f < g`
/// and `ζ(g, f) = φ_{g,f}^{-1}(-ζ(f, g))`.
pub fn complete_coboundary(
    p: &PreTrack,
    z: &CocycleTriple,
    lower: &BTreeMap<(Mor, Mor), Elem>,
) -> Result<Coboundary, Error> {
    let mut zeta = BTreeMap::new();
    for (f, g) in p.pi.class_pairs() {
        let v = if f == g {
            0
        } else if f < g {
            *lower
                .get(&(f, g))
                .ok_or_else(|| Error::Structural("missing ζ entry".into()))?
        } else {
            let inv = z.phi[&(f, g)]
                .inverse()
                .ok_or_else(|| Error::Invalid("φ is not invertible".into()))?;
            inv.apply(p.g.group(g).neg(lower[&(g, f)]))
        };
        zeta.insert((f, g), v);
    }
    Ok(Coboundary { zeta })
}

/// Limits for exhaustive searches.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Maximum number of search nodes.
    pub max_nodes: u64,
    pub max_seconds: Option<f64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 200_000_000,
            max_seconds: None,
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes,
            max_seconds: None,
        }
    }
}

/// Counts search nodes against a [`Budget`].
pub(crate) struct Meter {
    budget: Budget,
    start: Instant,
    pub nodes: u64,
}

impl Meter {
    pub fn new(budget: Budget) -> Self {
        Meter {
            budget,
            start: Instant::now(),
            nodes: 0,
        }
    }

    pub fn tick(&mut self) -> Result<(), Error> {
        self.charge(1)
    }

    pub fn charge(&mut self, n: u64) -> Result<(), Error> {
        self.nodes = self.nodes.saturating_add(n);
        if self.nodes > self.budget.max_nodes {
            return Err(Error::Budget(format!("more than {} search nodes", self.budget.max_nodes)));
        }
        if let Some(secs) = self.budget.max_seconds {
            if (n > 1 || self.nodes % 1024 == 0) && self.start.elapsed().as_secs_f64() > secs {
                return Err(Error::Budget(format!("more than {secs} seconds")));
            }
        }
        Ok(())
    }
}

/// Searches for `ζ` with `apply_coboundary(z1, ζ) = z2`.
pub fn are_cohomologous(p: &PreTrack, z1: &CocycleTriple, z2: &CocycleTriple) -> Result<Option<Coboundary>, Error> {
    are_cohomologous_with_budget(p, z1, z2, Budget::default())
}

/// [`are_cohomologous`] with an explicit search budget.
///
/// Every `ζ(f, g)` with `f ≠ g` ranges over `G_f`, filtered up front by the
/// `φ` formula (which involves no other entry); the `ξ'` and `χ'` entries
/// are compared as soon as the `ζ` values they read are fixed.
pub fn are_cohomologous_with_budget(
    p: &PreTrack,
    z1: &CocycleTriple,
    z2: &CocycleTriple,
    budget: Budget,
) -> Result<Option<Coboundary>, Error> {
    z1.check_shape(p)?;
    z2.check_shape(p)?;
    let k = p.k();
    let open = p.open_pairs();
    let pos: BTreeMap<(Mor, Mor), usize> = open.iter().enumerate().map(|(i, &pr)| (pr, i)).collect();
    let mut candidates = Vec::with_capacity(open.len());
    for &(f, g) in &open {
        let gr = p.g.group(f);
        let target = &z2.phi[&(g, f)];
        let source = &z1.phi[&(g, f)];
        let ok: Vec<Elem> = gr
            .elements()
            .filter(|&c| GroupHom::inner(gr, c).after(source) == *target)
            .collect();
        if ok.is_empty() {
            return Ok(None);
        }
        candidates.push(ok);
    }
    for (&(g, f), h) in &z1.phi {
        if g == f && z2.phi[&(g, f)] != *h {
            return Ok(None);
        }
    }
    // Each ξ'/χ' entry is checked once the last ζ it reads is assigned.
    let trigger = |pairs: &[(Mor, Mor)]| pairs.iter().filter_map(|pr| pos.get(pr).copied()).max();
    let mut xi_at: Vec<Vec<(Mor, Mor, Mor)>> = vec![Vec::new(); open.len()];
    let mut chi_at: Vec<Vec<(Mor, Mor, Mor, Mor)>> = vec![Vec::new(); open.len()];
    let mut always_xi = Vec::new();
    let mut always_chi = Vec::new();
    for &(f, g, h) in z1.xi.keys() {
        match trigger(&[(f, h), (g, h), (f, g)]) {
            Some(i) => xi_at[i].push((f, g, h)),
            None => always_xi.push((f, g, h)),
        }
    }
    for &(x, y, a, b) in z1.chi.keys() {
        let (ax, by) = (k.comp(a, x), k.comp(b, y));
        match trigger(&[(ax, by), (a, b), (x, y)]) {
            Some(i) => chi_at[i].push((x, y, a, b)),
            None => always_chi.push((x, y, a, b)),
        }
    }
    let mut zeta = Coboundary::zero(p);
    let xi_ok = |zeta: &Coboundary, (f, g, h): (Mor, Mor, Mor)| {
        let gr = p.g.group(f);
        let val = gr.sum([
            zeta.get(f, h),
            z1.xi[&(f, g, h)],
            gr.neg(z1.phi[&(g, f)].apply(zeta.get(g, h))),
            gr.neg(zeta.get(f, g)),
        ]);
        val == z2.xi[&(f, g, h)]
    };
    let chi_ok = |zeta: &Coboundary, (x, y, a, b): (Mor, Mor, Mor, Mor)| {
        let (ax, by) = (k.comp(a, x), k.comp(b, y));
        let gr = p.g.group(ax);
        let val = gr.sum([
            zeta.get(ax, by),
            z1.chi[&(x, y, a, b)],
            gr.neg(p.g.pull(a, x).apply(zeta.get(a, b))),
            gr.neg(p.g.push(a, x).apply(zeta.get(x, y))),
        ]);
        val == z2.chi[&(x, y, a, b)]
    };
    if !always_xi.iter().all(|&e| xi_ok(&zeta, e)) || !always_chi.iter().all(|&e| chi_ok(&zeta, e)) {
        return Ok(None);
    }
    let mut meter = Meter::new(budget);
    let mut choice = vec![0usize; open.len()];
    let mut depth = 0usize;
    // Iterative backtracking over candidate indices.
    if open.is_empty() {
        return Ok(Some(zeta));
    }
    loop {
        if choice[depth] == candidates[depth].len() {
            choice[depth] = 0;
            zeta.zeta.insert(open[depth], 0);
            if depth == 0 {
                return Ok(None);
            }
            depth -= 1;
            choice[depth] += 1;
            continue;
        }
        meter.tick()?;
        zeta.zeta.insert(open[depth], candidates[depth][choice[depth]]);
        let ok = xi_at[depth].iter().all(|&e| xi_ok(&zeta, e)) && chi_at[depth].iter().all(|&e| chi_ok(&zeta, e));
        if ok {
            if depth + 1 == open.len() {
                debug_assert_eq!(apply_coboundary_unchecked(p, z1, &zeta), *z2);
                return Ok(Some(zeta));
            }
            depth += 1;
        } else {
            choice[depth] += 1;
        }
    }
}

/// A track `H_{f,g} ∈ T(f, g)` for every class pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackChoice {
    pub h: BTreeMap<(Mor, Mor), usize>,
}

#[cfg(test)]
mod tests;
