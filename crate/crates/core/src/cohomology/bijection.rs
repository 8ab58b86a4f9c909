//! Track choices, cocycle extraction and the inverse construction.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fincat::Mor;
use crate::fingroup::Elem;
use crate::track::{validate_pi_g_track, PiGTrack, TrackCategory};
use crate::Error;

use super::{validate_cocycle, Coboundary, CocycleTriple, PreTrack, TrackChoice};

/// A normalized track choice: `H_{f,f} = 0_f`, `H_{g,f} = -H_{f,g}`, and
/// `H_{f,g}` for `f < g` drawn uniformly from `T(f, g)` by a seeded ChaCha8.
pub fn choose_tracks(x: &PiGTrack, seed: u64) -> TrackChoice {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    complete_choice(x, |f, g| rng.gen_range(0..x.track.count(f, g)))
}

impl TrackChoice {
    /// The normalized choice taking track `0` of `T(f, g)` for `f < g`.
    pub fn first(x: &PiGTrack) -> Self {
        complete_choice(x, |_, _| 0)
    }

    /// Checks coverage of the class pairs and normalization.
    pub fn check(&self, x: &PiGTrack) -> Result<(), Error> {
        let t = &x.track;
        if !self.h.keys().copied().eq(x.pre.pi.class_pairs()) {
            return Err(Error::Structural("track choice does not cover exactly the class pairs".into()));
        }
        for (&(f, g), &h) in &self.h {
            if h >= t.count(f, g) {
                return Err(Error::Structural(format!("chosen track {h} out of range")));
            }
            let normalized = if f == g {
                h == t.zero(f)
            } else {
                self.h[&(g, f)] == t.neg(f, g, h)
            };
            if !normalized {
                return Err(Error::Invalid(format!(
                    "track choice is not normalized at ({},{})",
                    t.underlying.name(f),
                    t.underlying.name(g)
                )));
            }
        }
        Ok(())
    }
}

fn complete_choice(x: &PiGTrack, mut pick: impl FnMut(Mor, Mor) -> usize) -> TrackChoice {
    let t = &x.track;
    let mut h = BTreeMap::new();
    for (f, g) in x.pre.pi.class_pairs() {
        if f == g {
            h.insert((f, g), t.zero(f));
        } else if f < g {
            let chosen = pick(f, g);
            h.insert((f, g), chosen);
            h.insert((g, f), t.neg(f, g, chosen));
        }
    }
    TrackChoice { h }
}

/// Composes a path of tracks `(source, target, track)` left to right.
fn path(t: &TrackCategory, steps: &[(Mor, Mor, usize)]) -> usize {
    let (start, mut at, mut acc) = steps[0];
    for &(f, g, tr) in &steps[1..] {
        debug_assert_eq!(f, at);
        acc = t.vc(start, at, g, acc, tr);
        at = g;
    }
    acc
}

/// `(ξ, χ, φ)` of a `(π, G)`-track category and a normalized choice `H`:
///
/// - `ξ(f,g,h) = σ(H_{f,h} - H_{g,h} - H_{f,g})`
/// - `χ(x,y|a,b) = σ(H_{ax,by} - (a_*H_{x,y} + y^*H_{a,b}))`
/// - `φ_{g,f}(t) = σ(H_{f,g} + σ^{-1}(t) - H_{f,g})`
pub fn extract_cocycle(x: &PiGTrack, choice: &TrackChoice) -> Result<CocycleTriple, Error> {
    let report = validate_pi_g_track(x)?;
    if !report.passed() {
        return Err(Error::Invalid(format!("not a (π, G)-track category: {report}")));
    }
    choice.check(x)?;
    let t = &x.track;
    let k = &t.underlying;
    let p = &x.pre;
    let h = |f: Mor, g: Mor| choice.h[&(f, g)];
    let neg = |f: Mor, g: Mor, a: usize| t.neg(f, g, a);

    let xi = p
        .xi_keys()
        .into_iter()
        .map(|(f, g, hh)| {
            let loop_ = path(
                t,
                &[(f, hh, h(f, hh)), (hh, g, neg(g, hh, h(g, hh))), (g, f, neg(f, g, h(f, g)))],
            );
            ((f, g, hh), x.sigma[f][loop_])
        })
        .collect();

    let mut chi = BTreeMap::new();
    for (xx, y, a, b) in p.chi_keys() {
        let (ax, ay, by) = (k.comp(a, xx), k.comp(a, y), k.comp(b, y));
        let whiskered = path(t, &[(ax, ay, t.lw(a, xx, y, h(xx, y))), (ay, by, t.rw(a, b, y, h(a, b)))]);
        let loop_ = path(t, &[(ax, by, h(ax, by)), (by, ax, neg(ax, by, whiskered))]);
        chi.insert((xx, y, a, b), x.sigma[ax][loop_]);
    }

    let mut phi = BTreeMap::new();
    for (g, f) in p.phi_keys() {
        let inv = x
            .sigma_inverse(g)
            .ok_or_else(|| Error::Invalid(format!("σ_{} is not a bijection", k.name(g))))?;
        let hfg = h(f, g);
        let table: Vec<Elem> = p
            .g
            .group(g)
            .elements()
            .map(|s| {
                let loop_ = path(t, &[(f, g, hfg), (g, g, inv[s]), (g, f, neg(f, g, hfg))]);
                x.sigma[f][loop_]
            })
            .collect();
        phi.insert((g, f), crate::fingroup::GroupHom::new(table));
    }
    Ok(CocycleTriple { xi, chi, phi })
}

/// `ζ(f, g) = σ(H'_{f,g} - H_{f,g})`, so that the coboundary of `ζ` sends
/// the cocycle of `H` to the cocycle of `H'`.
pub fn choice_coboundary(x: &PiGTrack, h1: &TrackChoice, h2: &TrackChoice) -> Result<Coboundary, Error> {
    h1.check(x)?;
    h2.check(x)?;
    let t = &x.track;
    let zeta = h1
        .h
        .iter()
        .map(|(&(f, g), &a)| {
            let loop_ = path(t, &[(f, g, h2.h[&(f, g)]), (g, f, t.neg(f, g, a))]);
            ((f, g), x.sigma[f][loop_])
        })
        .collect();
    Ok(Coboundary { zeta })
}

/// The `(π, G)`-track category of a normalized cocycle: `T(f, g) = G_f` for
/// `π(f) = π(g)`, with
///
/// - `α + β = α + φ_{g,f}(β) - ξ(f,g,h)` for `α ∈ T(f,g)`, `β ∈ T(g,h)`
/// - `0_f = 0`
/// - `a_*α = a_*α - χ(f,g|a,a)` and `b^*α = b^*α - χ(b,b|f,g)`
/// - `σ = 1`.
pub fn build_track(p: &PreTrack, z: &CocycleTriple) -> Result<PiGTrack, Error> {
    let report = validate_cocycle(p, z)?;
    if !report.passed() {
        return Err(Error::Invalid(format!("not a normalized cocycle: {report}")));
    }
    let k = p.k().clone();
    let gs = &p.g;
    let pairs = p.pi.class_pairs();
    let tracks: BTreeMap<(Mor, Mor), usize> = pairs.iter().map(|&(f, g)| ((f, g), gs.group(f).order())).collect();
    let vc = |f: Mor, g: Mor, h: Mor, a: Elem, b: Elem| {
        let gr = gs.group(f);
        gr.sum([a, z.phi[&(g, f)].apply(b), gr.neg(z.xi[&(f, g, h)])])
    };
    let mut vcomp = BTreeMap::new();
    for (f, g, h) in p.xi_keys() {
        let table = gs
            .group(f)
            .elements()
            .flat_map(|a| gs.group(g).elements().map(move |b| (a, b)))
            .map(|(a, b)| vc(f, g, h, a, b))
            .collect();
        vcomp.insert((f, g, h), table);
    }
    let mut vneg = BTreeMap::new();
    for &(f, g) in &pairs {
        let table = gs
            .group(f)
            .elements()
            .map(|a| {
                gs.group(g)
                    .elements()
                    .find(|&b| vc(f, g, f, a, b) == 0)
                    .ok_or_else(|| Error::Invalid("vertical composition has no inverse".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        vneg.insert((f, g), table);
    }
    let mut lwhisk = BTreeMap::new();
    let mut rwhisk = BTreeMap::new();
    for &(f, g) in &pairs {
        for a in k.after(f) {
            let gr = gs.group(k.comp(a, f));
            let c = z.chi[&(f, g, a, a)];
            let table = gs.group(f).elements().map(|t| gr.sub(gs.push(a, f).apply(t), c)).collect();
            lwhisk.insert((a, f, g), table);
        }
        for b in k.before(f) {
            let gr = gs.group(k.comp(f, b));
            let c = z.chi[&(b, b, f, g)];
            let table = gs.group(f).elements().map(|t| gr.sub(gs.pull(f, b).apply(t), c)).collect();
            rwhisk.insert((f, g, b), table);
        }
    }
    let sigma = k.morphisms().map(|f| gs.group(f).elements().collect()).collect();
    let track = TrackCategory {
        vzero: vec![0; k.num_morphisms()],
        underlying: k,
        tracks,
        vcomp,
        vneg,
        lwhisk,
        rwhisk,
    };
    Ok(PiGTrack {
        track,
        pre: p.clone(),
        sigma,
    })
}
