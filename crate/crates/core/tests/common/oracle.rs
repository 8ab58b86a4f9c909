//! Brute-force enumeration of `(π, G)`-track structures, independent of the
//! cocycle machinery.
//!
//! Every `(π, G)`-track category is equivalent to one where
//! - `T(f, g)` has `|G_f|` elements for `π(f) = π(g)` and is empty otherwise,
//! - on loops, `+`, `-`, `0`, `a_*` and `b^*` are the group law and the
//!   structure maps of `G` (relabel `T(f, f)` along `σ_f`),
//! - for `f ≠ g`, track `α` of `T(f, g)` is `α + t` where `t` is track `0`
//!   and `α ∈ T(f, f) = G_f` (relabel `T(f, g)` along `α ↦ α + t`).
//!
//! All remaining table entries are free. The search assigns them one at a
//! time and re-evaluates the groupoid laws and TR1–TR9 that were waiting on
//! the entry just assigned; every leaf is checked in full.

use std::collections::{BTreeMap, HashSet};

use tracat::cohomology::PreTrack;
use tracat::track::{validate_pi_g_track, PiGTrack, TrackCategory};
use tracat::{FiniteCategory, Mor};

const UNSET: u16 = u16::MAX;

type Blocked = usize;

#[derive(Clone, Copy, Debug)]
enum Law {
    Assoc { f: Mor, g: Mor, h: Mor, e: Mor, a: usize, b: usize, c: usize },
    Unit { f: Mor, g: Mor, a: usize },
    Inverse { f: Mor, g: Mor, a: usize },
    Tr3 { f: Mor, g: Mor, h: Mor, b: Mor, x: usize, y: usize },
    Tr4 { f: Mor, g: Mor, h: Mor, a: Mor, x: usize, y: usize },
    Tr5 { f: Mor },
    IdWhisker { u: Mor, v: Mor, x: usize },
    Tr6 { u: Mor, v: Mor, f: Mor, f1: Mor, x: usize },
    Tr7 { u: Mor, v: Mor, g1: Mor, g: Mor, x: usize },
    Tr8 { u: Mor, v: Mor, f: Mor, g: Mor, x: usize },
    Tr9 { f: Mor, f1: Mor, g: Mor, g1: Mor, a: usize, a1: usize },
}

struct Layout<'a> {
    p: &'a PreTrack,
    count: BTreeMap<(Mor, Mor), usize>,
    vcomp: BTreeMap<(Mor, Mor, Mor), usize>,
    vneg: BTreeMap<(Mor, Mor), usize>,
    lw: BTreeMap<(Mor, Mor, Mor), usize>,
    rw: BTreeMap<(Mor, Mor, Mor), usize>,
    len: usize,
}

impl<'a> Layout<'a> {
    fn new(p: &'a PreTrack) -> Self {
        let k = p.pi.src.clone();
        let pairs = p.pi.class_pairs();
        let count: BTreeMap<(Mor, Mor), usize> = pairs.iter().map(|&(f, g)| ((f, g), p.g.group(f).order())).collect();
        let mut len = 0;
        let mut alloc = |n: usize| {
            let at = len;
            len += n;
            at
        };
        let mut vcomp = BTreeMap::new();
        for (f, g, h) in p.pi.class_triples() {
            vcomp.insert((f, g, h), alloc(count[&(f, g)] * count[&(g, h)]));
        }
        let mut vneg = BTreeMap::new();
        for &(f, g) in &pairs {
            vneg.insert((f, g), alloc(count[&(f, g)]));
        }
        let mut lw = BTreeMap::new();
        let mut rw = BTreeMap::new();
        for &(f, g) in &pairs {
            for a in k.after(f) {
                lw.insert((a, f, g), alloc(count[&(f, g)]));
            }
            for b in k.before(f) {
                rw.insert((f, g, b), alloc(count[&(f, g)]));
            }
        }
        Layout { p, count, vcomp, vneg, lw, rw, len }
    }

    fn k(&self) -> &FiniteCategory {
        &self.p.pi.src
    }

    fn n(&self, f: Mor, g: Mor) -> usize {
        self.count[&(f, g)]
    }

    /// Fixed entries: loop data from `G` and the `T(f, f)`-action gauge.
    fn fixed(&self) -> Vec<u16> {
        let k = self.k();
        let g = &self.p.g;
        let mut vals = vec![UNSET; self.len];
        for (&(f, f2, f3), &at) in &self.vcomp {
            if f == f2 && f2 == f3 {
                let gr = g.group(f);
                for a in gr.elements() {
                    for b in gr.elements() {
                        vals[at + a * gr.order() + b] = gr.add(a, b) as u16;
                    }
                }
            } else if f == f2 {
                let n = self.n(f, f3);
                for a in 0..self.n(f, f) {
                    vals[at + a * n] = a as u16;
                }
            }
        }
        for (&(f, f2), &at) in &self.vneg {
            if f == f2 {
                for a in g.group(f).elements() {
                    vals[at + a] = g.group(f).neg(a) as u16;
                }
            }
        }
        for (&(a, f, f2), &at) in &self.lw {
            if f == f2 {
                for x in g.group(f).elements() {
                    vals[at + x] = g.push(a, f).apply(x) as u16;
                }
            }
        }
        for (&(f, f2, b), &at) in &self.rw {
            if f == f2 {
                for x in g.group(f).elements() {
                    vals[at + x] = g.pull(f, b).apply(x) as u16;
                }
            }
        }
        let _ = k;
        vals
    }

    /// Free entries in layout order with their domain sizes.
    fn free(&self, vals: &[u16]) -> Vec<(usize, usize)> {
        let k = self.k();
        let mut out = Vec::new();
        for (&(f, g, h), &at) in &self.vcomp {
            let range = self.n(f, h);
            for i in 0..self.n(f, g) * self.n(g, h) {
                out.push((at + i, range));
            }
        }
        for (&(f, g), &at) in &self.vneg {
            for i in 0..self.n(f, g) {
                out.push((at + i, self.n(g, f)));
            }
        }
        for (&(a, f, g), &at) in &self.lw {
            for i in 0..self.n(f, g) {
                out.push((at + i, self.n(k.comp(a, f), k.comp(a, g))));
            }
        }
        for (&(f, g, b), &at) in &self.rw {
            for i in 0..self.n(f, g) {
                out.push((at + i, self.n(k.comp(f, b), k.comp(g, b))));
            }
        }
        out.retain(|&(e, _)| vals[e] == UNSET);
        out
    }

    fn laws(&self) -> Vec<Law> {
        let k = self.k();
        let pairs: Vec<(Mor, Mor)> = self.count.keys().copied().collect();
        let mut out = Vec::new();
        for &(f, g, h) in self.vcomp.keys() {
            for e in self.p.pi.class_of(f) {
                for a in 0..self.n(f, g) {
                    for b in 0..self.n(g, h) {
                        for c in 0..self.n(h, e) {
                            out.push(Law::Assoc { f, g, h, e, a, b, c });
                        }
                    }
                }
            }
            for b in k.before(f) {
                for x in 0..self.n(f, g) {
                    for y in 0..self.n(g, h) {
                        out.push(Law::Tr3 { f, g, h, b, x, y });
                    }
                }
            }
            for a in k.after(f) {
                for x in 0..self.n(f, g) {
                    for y in 0..self.n(g, h) {
                        out.push(Law::Tr4 { f, g, h, a, x, y });
                    }
                }
            }
        }
        for f in k.morphisms() {
            out.push(Law::Tr5 { f });
        }
        for &(u, v) in &pairs {
            for x in 0..self.n(u, v) {
                out.push(Law::Unit { f: u, g: v, a: x });
                out.push(Law::Inverse { f: u, g: v, a: x });
                out.push(Law::IdWhisker { u, v, x });
                for f in k.before(u) {
                    for f1 in k.before(f) {
                        out.push(Law::Tr6 { u, v, f, f1, x });
                    }
                    for g in k.after(u) {
                        out.push(Law::Tr8 { u, v, f, g, x });
                    }
                }
                for g1 in k.after(u) {
                    for g in k.after(g1) {
                        out.push(Law::Tr7 { u, v, g1, g, x });
                    }
                }
            }
        }
        for &(f, f1) in &pairs {
            for &(g, g1) in pairs.iter().filter(|&&(g, _)| k.src(g) == k.tgt(f)) {
                for a in 0..self.n(f, f1) {
                    for a1 in 0..self.n(g, g1) {
                        out.push(Law::Tr9 { f, f1, g, g1, a, a1 });
                    }
                }
            }
        }
        out
    }
}

struct View<'a, 'b> {
    l: &'b Layout<'a>,
    vals: &'b [u16],
}

impl View<'_, '_> {
    fn get(&self, e: usize) -> Result<usize, Blocked> {
        match self.vals[e] {
            UNSET => Err(e),
            v => Ok(v as usize),
        }
    }
    fn vc(&self, f: Mor, g: Mor, h: Mor, a: usize, b: usize) -> Result<usize, Blocked> {
        self.get(self.l.vcomp[&(f, g, h)] + a * self.l.n(g, h) + b)
    }
    fn neg(&self, f: Mor, g: Mor, a: usize) -> Result<usize, Blocked> {
        self.get(self.l.vneg[&(f, g)] + a)
    }
    fn lw(&self, a: Mor, f: Mor, g: Mor, x: usize) -> Result<usize, Blocked> {
        self.get(self.l.lw[&(a, f, g)] + x)
    }
    fn rw(&self, f: Mor, g: Mor, b: Mor, x: usize) -> Result<usize, Blocked> {
        self.get(self.l.rw[&(f, g, b)] + x)
    }

    fn holds(&self, law: Law) -> Result<bool, Blocked> {
        let k = self.l.k();
        Ok(match law {
            Law::Assoc { f, g, h, e, a, b, c } => {
                let left = self.vc(f, h, e, self.vc(f, g, h, a, b)?, c)?;
                let right = self.vc(f, g, e, a, self.vc(g, h, e, b, c)?)?;
                left == right
            }
            Law::Unit { f, g, a } => self.vc(f, g, g, a, 0)? == a && self.vc(f, f, g, 0, a)? == a,
            Law::Inverse { f, g, a } => {
                let na = self.neg(f, g, a)?;
                self.vc(f, g, f, a, na)? == 0 && self.vc(g, f, g, na, a)? == 0
            }
            Law::Tr3 { f, g, h, b, x, y } => {
                let (fb, gb, hb) = (k.comp(f, b), k.comp(g, b), k.comp(h, b));
                let left = self.rw(f, h, b, self.vc(f, g, h, x, y)?)?;
                left == self.vc(fb, gb, hb, self.rw(f, g, b, x)?, self.rw(g, h, b, y)?)?
            }
            Law::Tr4 { f, g, h, a, x, y } => {
                let (af, ag, ah) = (k.comp(a, f), k.comp(a, g), k.comp(a, h));
                let left = self.lw(a, f, h, self.vc(f, g, h, x, y)?)?;
                left == self.vc(af, ag, ah, self.lw(a, f, g, x)?, self.lw(a, g, h, y)?)?
            }
            Law::Tr5 { f } => {
                k.before(f).into_iter().all(|b| self.rw(f, f, b, 0) == Ok(0))
                    && k.after(f).into_iter().all(|a| self.lw(a, f, f, 0) == Ok(0))
            }
            Law::IdWhisker { u, v, x } => {
                self.rw(u, v, k.id(k.src(u)), x)? == x && self.lw(k.id(k.tgt(u)), u, v, x)? == x
            }
            Law::Tr6 { u, v, f, f1, x } => {
                let (uf, vf) = (k.comp(u, f), k.comp(v, f));
                self.rw(u, v, k.comp(f, f1), x)? == self.rw(uf, vf, f1, self.rw(u, v, f, x)?)?
            }
            Law::Tr7 { u, v, g1, g, x } => {
                let (g1u, g1v) = (k.comp(g1, u), k.comp(g1, v));
                self.lw(k.comp(g, g1), u, v, x)? == self.lw(g, g1u, g1v, self.lw(g1, u, v, x)?)?
            }
            Law::Tr8 { u, v, f, g, x } => {
                let (uf, vf, gu, gv) = (k.comp(u, f), k.comp(v, f), k.comp(g, u), k.comp(g, v));
                self.lw(g, uf, vf, self.rw(u, v, f, x)?)? == self.rw(gu, gv, f, self.lw(g, u, v, x)?)?
            }
            Law::Tr9 { f, f1, g, g1, a, a1 } => {
                let (gf, gf1, g1f, g1f1) = (k.comp(g, f), k.comp(g, f1), k.comp(g1, f), k.comp(g1, f1));
                let left = self.vc(gf, gf1, g1f1, self.lw(g, f, f1, a)?, self.rw(g, g1, f1, a1)?)?;
                let right = self.vc(gf, g1f, g1f1, self.rw(g, g1, f, a1)?, self.lw(g1, f, f1, a)?)?;
                left == right
            }
        })
    }
}

struct Search<'a> {
    layout: Layout<'a>,
    vals: Vec<u16>,
    free: Vec<(usize, usize)>,
    laws: Vec<Law>,
    watch: Vec<HashSet<u32>>,
    nodes: u64,
    max_nodes: u64,
    found: Vec<Vec<u16>>,
}

impl Search<'_> {
    fn view(&self) -> View<'_, '_> {
        View { l: &self.layout, vals: &self.vals }
    }

    /// Re-evaluates the laws waiting on `e`; `false` on a violation.
    fn wake(&mut self, e: usize) -> bool {
        let waiting: Vec<u32> = self.watch[e].iter().copied().collect();
        for c in waiting {
            match self.view().holds(self.laws[c as usize]) {
                Ok(true) => {}
                Ok(false) => return false,
                Err(b) => {
                    self.watch[b].insert(c);
                }
            }
        }
        true
    }

    fn dfs(&mut self, i: usize) {
        assert!(self.nodes <= self.max_nodes, "oracle search exceeded {} nodes", self.max_nodes);
        if i == self.free.len() {
            let view = self.view();
            if self.laws.iter().all(|&law| view.holds(law) == Ok(true)) {
                self.found.push(self.vals.clone());
            }
            return;
        }
        let (e, range) = self.free[i];
        for v in 0..range {
            self.nodes += 1;
            self.vals[e] = v as u16;
            if self.wake(e) {
                self.dfs(i + 1);
            }
        }
        self.vals[e] = UNSET;
    }
}

fn assemble(layout: &Layout, vals: &[u16]) -> PiGTrack {
    let p = layout.p;
    let k = layout.k().clone();
    let slice = |at: usize, n: usize| vals[at..at + n].iter().map(|&v| v as usize).collect::<Vec<_>>();
    let track = TrackCategory {
        tracks: layout.count.clone(),
        vcomp: layout
            .vcomp
            .iter()
            .map(|(&(f, g, h), &at)| ((f, g, h), slice(at, layout.n(f, g) * layout.n(g, h))))
            .collect(),
        vneg: layout.vneg.iter().map(|(&(f, g), &at)| ((f, g), slice(at, layout.n(f, g)))).collect(),
        vzero: vec![0; k.num_morphisms()],
        lwhisk: layout.lw.iter().map(|(&(a, f, g), &at)| ((a, f, g), slice(at, layout.n(f, g)))).collect(),
        rwhisk: layout.rw.iter().map(|(&(f, g, b), &at)| ((f, g, b), slice(at, layout.n(f, g)))).collect(),
        underlying: k.clone(),
    };
    PiGTrack {
        track,
        pre: p.clone(),
        sigma: k.morphisms().map(|f| p.g.group(f).elements().collect()).collect(),
    }
}

/// Every gauge-fixed `(π, G)`-track structure on `p`, each checked by
/// `validate_pi_g_track`.
pub fn track_structures(p: &PreTrack, max_nodes: u64) -> Vec<PiGTrack> {
    let layout = Layout::new(p);
    let vals = layout.fixed();
    let free = layout.free(&vals);
    let laws = layout.laws();
    let mut search = Search {
        watch: vec![HashSet::new(); layout.len],
        layout,
        vals,
        free,
        laws,
        nodes: 0,
        max_nodes,
        found: Vec::new(),
    };
    for c in 0..search.laws.len() {
        match search.view().holds(search.laws[c]) {
            Ok(true) => {}
            Ok(false) => return Vec::new(),
            Err(b) => {
                search.watch[b].insert(c as u32);
            }
        }
    }
    search.dfs(0);
    let out: Vec<PiGTrack> = search.found.iter().map(|v| assemble(&search.layout, v)).collect();
    for x in &out {
        let report = validate_pi_g_track(x).unwrap();
        assert!(report.passed(), "oracle produced an invalid structure: {report}");
    }
    out
}

/// Number of classes of `(π, G)`-track structures under
/// `are_equivalent_tracks`, comparing each structure with the classes
/// found so far.
pub fn track_class_count(p: &PreTrack, max_nodes: u64) -> (usize, usize) {
    let all = track_structures(p, max_nodes);
    let mut reps: Vec<&PiGTrack> = Vec::new();
    for x in &all {
        let known = reps
            .iter()
            .any(|r| tracat::track::are_equivalent_tracks(r, x).unwrap().is_some());
        if !known {
            reps.push(x);
        }
    }
    (reps.len(), all.len())
}
