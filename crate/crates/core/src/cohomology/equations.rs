//! The cocycle equations, each as a typed instance that can be evaluated
//! against any (possibly partial) source of `ξ`, `χ` and `φ` values.

use crate::fincat::Mor;
use crate::fingroup::{Elem, GroupHom};

use super::PreTrack;

/// A single entry of a cocycle triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entry {
    /// `φ_{g,f}` as `Phi(g, f)`.
    Phi(Mor, Mor),
    /// `ξ(f, g, h)`.
    Xi(Mor, Mor, Mor),
    /// `χ(f, g | x, y)` as `Chi(f, g, x, y)`.
    Chi(Mor, Mor, Mor, Mor),
}

impl Entry {
    /// Whether this entry is pinned by normalization.
    pub fn is_normalized(&self, p: &PreTrack) -> bool {
        let k = p.k();
        match *self {
            Entry::Phi(g, f) => g == f,
            Entry::Xi(f, g, h) => f == g || g == h || f == h,
            Entry::Chi(f, g, x, y) => {
                (f == g && x == y) || (x == y && k.is_identity(x)) || (f == g && k.is_identity(f))
            }
        }
    }
}

/// Read access to the three tables.
pub(crate) trait CocycleView {
    fn xi(&self, f: Mor, g: Mor, h: Mor) -> Elem;
    fn chi(&self, f: Mor, g: Mor, x: Mor, y: Mor) -> Elem;
    fn phi(&self, g: Mor, f: Mor) -> &GroupHom;
}

/// `(m_*φ_{b,a})(t) = -χ(a,b|m,m) + φ_{mb,ma}(t) + χ(a,b|m,m)`, for `t ∈ G_{mb}`.
pub(crate) fn push_phi_at<V: CocycleView + ?Sized>(p: &PreTrack, v: &V, m: Mor, b: Mor, a: Mor, t: Elem) -> Elem {
    let k = p.k();
    let (ma, mb) = (k.comp(m, a), k.comp(m, b));
    let c = v.chi(a, b, m, m);
    p.g.group(ma).conjugate(p.g.group(ma).neg(c), v.phi(mb, ma).apply(t))
}

/// `(b^*φ_{n,m})(t) = -χ(b,b|m,n) + φ_{nb,mb}(t) + χ(b,b|m,n)`, for `t ∈ G_{nb}`.
pub(crate) fn pull_phi_at<V: CocycleView + ?Sized>(p: &PreTrack, v: &V, b: Mor, n: Mor, m: Mor, t: Elem) -> Elem {
    let k = p.k();
    let (mb, nb) = (k.comp(m, b), k.comp(n, b));
    let c = v.chi(b, b, m, n);
    p.g.group(mb).conjugate(p.g.group(mb).neg(c), v.phi(nb, mb).apply(t))
}

/// One instance of one equation family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Equation {
    /// (i)(a) for `f, g, h` in one fibre.
    PhiComposite { f: Mor, g: Mor, h: Mor },
    /// (i)(b), pushforward half: `a, b: i → j` in one fibre, `m: j → k`.
    PushPhi { a: Mor, b: Mor, m: Mor },
    /// (i)(b), pullback half: `m, n: j → k` in one fibre, `a: i → j`.
    PullPhi { m: Mor, n: Mor, a: Mor },
    /// (i)(c), first half.
    PushPhiPull { a: Mor, b: Mor, m: Mor },
    /// (i)(c), second half.
    PullPhiPush { m: Mor, n: Mor, a: Mor },
    /// (ii) for `f, g, h, e` in one fibre.
    XiCocycle { f: Mor, g: Mor, h: Mor, e: Mor },
    /// (iii) for `x, y, z: i → j` and `a, b, c: j → k`, each in one fibre.
    XiChi { x: Mor, y: Mor, z: Mor, a: Mor, b: Mor, c: Mor },
    /// (iv) for `x, y`, `a, b`, `m, n`, each pair in one fibre.
    ChiCocycle { x: Mor, y: Mor, a: Mor, b: Mor, m: Mor, n: Mor },
}

impl Equation {
    pub fn label(&self) -> &'static str {
        match self {
            Equation::PhiComposite { .. } => "(i)(a)",
            Equation::PushPhi { .. } | Equation::PullPhi { .. } => "(i)(b)",
            Equation::PushPhiPull { .. } | Equation::PullPhiPush { .. } => "(i)(c)",
            Equation::XiCocycle { .. } => "(ii)",
            Equation::XiChi { .. } => "(iii)",
            Equation::ChiCocycle { .. } => "(iv)",
        }
    }

    /// Every typed instance of every family, in a fixed order.
    pub fn all(p: &PreTrack) -> Vec<Equation> {
        let k = p.k();
        let pi = &p.pi;
        let mut out = Vec::new();
        for (f, g, h) in pi.class_triples() {
            out.push(Equation::PhiComposite { f, g, h });
        }
        for (a, b) in pi.class_pairs() {
            for m in k.after(a) {
                out.push(Equation::PushPhi { a, b, m });
                out.push(Equation::PushPhiPull { a, b, m });
            }
        }
        for (m, n) in pi.class_pairs() {
            for a in k.before(m) {
                out.push(Equation::PullPhi { m, n, a });
                out.push(Equation::PullPhiPush { m, n, a });
            }
        }
        for (f, g, h) in pi.class_triples() {
            for e in pi.class_of(f) {
                out.push(Equation::XiCocycle { f, g, h, e });
            }
        }
        for (x, y, z) in pi.class_triples() {
            for (a, b, c) in pi.class_triples() {
                if k.src(a) == k.tgt(x) {
                    out.push(Equation::XiChi { x, y, z, a, b, c });
                }
            }
        }
        for (x, y) in pi.class_pairs() {
            for (a, b) in pi.class_pairs().into_iter().filter(|&(a, _)| k.src(a) == k.tgt(x)) {
                for (m, n) in pi.class_pairs().into_iter().filter(|&(m, _)| k.src(m) == k.tgt(a)) {
                    out.push(Equation::ChiCocycle { x, y, a, b, m, n });
                }
            }
        }
        out
    }

    /// Entries read by this instance, normalized ones included.
    pub fn entries(&self, p: &PreTrack) -> Vec<Entry> {
        let k = p.k();
        match *self {
            Equation::PhiComposite { f, g, h } => {
                vec![Entry::Phi(g, f), Entry::Phi(h, g), Entry::Phi(h, f), Entry::Xi(f, g, h)]
            }
            Equation::PushPhi { a, b, m } | Equation::PushPhiPull { a, b, m } => vec![
                Entry::Chi(a, b, m, m),
                Entry::Phi(k.comp(m, b), k.comp(m, a)),
                Entry::Phi(b, a),
            ],
            Equation::PullPhi { m, n, a } | Equation::PullPhiPush { m, n, a } => vec![
                Entry::Chi(a, a, m, n),
                Entry::Phi(k.comp(n, a), k.comp(m, a)),
                Entry::Phi(n, m),
            ],
            Equation::XiCocycle { f, g, h, e } => vec![
                Entry::Xi(f, g, e),
                Entry::Phi(g, f),
                Entry::Xi(g, h, e),
                Entry::Xi(f, h, e),
                Entry::Xi(f, g, h),
            ],
            Equation::XiChi { x, y, z, a, b, c } => {
                let (ax, by, cz) = (k.comp(a, x), k.comp(b, y), k.comp(c, z));
                vec![
                    Entry::Xi(ax, by, cz),
                    Entry::Phi(by, ax),
                    Entry::Chi(y, z, b, c),
                    Entry::Chi(x, y, a, b),
                    Entry::Chi(x, z, a, c),
                    Entry::Xi(a, b, c),
                    Entry::Xi(x, y, z),
                ]
            }
            Equation::ChiCocycle { x, y, a, b, m, n } => vec![
                Entry::Chi(k.comp(a, x), k.comp(b, y), m, n),
                Entry::Chi(x, y, a, b),
                Entry::Chi(x, y, k.comp(m, a), k.comp(n, b)),
                Entry::Chi(a, b, m, n),
            ],
        }
    }

    /// Evaluates the instance; `Err` carries a witness description.
    pub fn check<V: CocycleView + ?Sized>(&self, p: &PreTrack, v: &V) -> Result<(), String> {
        let k = p.k();
        let g_sys = &p.g;
        let nm = |f: Mor| k.name(f);
        match *self {
            Equation::PhiComposite { f, g, h } => {
                let gf = g_sys.group(f);
                let xi = v.xi(f, g, h);
                for t in g_sys.group(h).elements() {
                    let lhs = v.phi(g, f).apply(v.phi(h, g).apply(t));
                    let rhs = gf.conjugate(gf.neg(xi), v.phi(h, f).apply(t));
                    if lhs != rhs {
                        return Err(format!("f={},g={},h={},t={t}", nm(f), nm(g), nm(h)));
                    }
                }
            }
            Equation::PushPhi { a, b, m } => {
                let ma = k.comp(m, a);
                for beta in g_sys.group(b).elements() {
                    let lhs = push_phi_at(p, v, m, b, a, g_sys.push(m, b).apply(beta));
                    let rhs = g_sys.push(m, a).apply(v.phi(b, a).apply(beta));
                    if lhs != rhs {
                        return Err(format!("a={},b={},m={},β={beta} (in G_{})", nm(a), nm(b), nm(m), nm(ma)));
                    }
                }
            }
            Equation::PullPhi { m, n, a } => {
                for nu in g_sys.group(n).elements() {
                    let lhs = pull_phi_at(p, v, a, n, m, g_sys.pull(n, a).apply(nu));
                    let rhs = g_sys.pull(m, a).apply(v.phi(n, m).apply(nu));
                    if lhs != rhs {
                        return Err(format!("m={},n={},a={},ν={nu}", nm(m), nm(n), nm(a)));
                    }
                }
            }
            Equation::PushPhiPull { a, b, m } => {
                for mu in g_sys.group(m).elements() {
                    let lhs = push_phi_at(p, v, m, b, a, g_sys.pull(m, b).apply(mu));
                    let rhs = g_sys.pull(m, a).apply(mu);
                    if lhs != rhs {
                        return Err(format!("a={},b={},m={},μ={mu}", nm(a), nm(b), nm(m)));
                    }
                }
            }
            Equation::PullPhiPush { m, n, a } => {
                for alpha in g_sys.group(a).elements() {
                    let lhs = pull_phi_at(p, v, a, n, m, g_sys.push(n, a).apply(alpha));
                    let rhs = g_sys.push(m, a).apply(alpha);
                    if lhs != rhs {
                        return Err(format!("m={},n={},a={},α={alpha}", nm(m), nm(n), nm(a)));
                    }
                }
            }
            Equation::XiCocycle { f, g, h, e } => {
                let gr = g_sys.group(f);
                let lhs = gr.add(v.xi(f, g, e), v.phi(g, f).apply(v.xi(g, h, e)));
                let rhs = gr.add(v.xi(f, h, e), v.xi(f, g, h));
                if lhs != rhs {
                    return Err(format!("f={},g={},h={},e={}", nm(f), nm(g), nm(h), nm(e)));
                }
            }
            Equation::XiChi { x, y, z, a, b, c } => {
                let (ax, by, cz) = (k.comp(a, x), k.comp(b, y), k.comp(c, z));
                let gr = g_sys.group(ax);
                let lhs = gr.sum([
                    v.xi(ax, by, cz),
                    v.phi(by, ax).apply(v.chi(y, z, b, c)),
                    v.chi(x, y, a, b),
                ]);
                let rhs = gr.sum([
                    v.chi(x, z, a, c),
                    g_sys.pull(a, x).apply(v.xi(a, b, c)),
                    g_sys.push(a, x).apply(v.xi(x, y, z)),
                ]);
                if lhs != rhs {
                    return Err(format!(
                        "x,y,z={},{},{} a,b,c={},{},{}",
                        nm(x),
                        nm(y),
                        nm(z),
                        nm(a),
                        nm(b),
                        nm(c)
                    ));
                }
            }
            Equation::ChiCocycle { x, y, a, b, m, n } => {
                let (ax, by, ma, nb) = (k.comp(a, x), k.comp(b, y), k.comp(m, a), k.comp(n, b));
                let max = k.comp(m, ax);
                let gr = g_sys.group(max);
                let lhs = gr.add(v.chi(ax, by, m, n), g_sys.push(m, ax).apply(v.chi(x, y, a, b)));
                let rhs = gr.add(v.chi(x, y, ma, nb), g_sys.pull(ma, x).apply(v.chi(a, b, m, n)));
                if lhs != rhs {
                    return Err(format!(
                        "x,y={},{} a,b={},{} m,n={},{}",
                        nm(x),
                        nm(y),
                        nm(a),
                        nm(b),
                        nm(m),
                        nm(n)
                    ));
                }
            }
        }
        Ok(())
    }
}
