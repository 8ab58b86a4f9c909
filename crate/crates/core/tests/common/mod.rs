#![allow(dead_code)]

pub mod oracle;

use tracat::cohomology::{enumerate_cocycles, Budget, PreTrack};
use tracat::CocycleTriple;

pub fn pretrack(name: &str) -> PreTrack {
    tracat::fixtures::pretrack(name).unwrap_or_else(|| panic!("unknown fixture {name}"))
}

pub fn cocycles(p: &PreTrack) -> Vec<CocycleTriple> {
    enumerate_cocycles(p, Budget::default()).unwrap()
}

use rand::seq::SliceRandom;
use rand::Rng;
use tracat::track::{PiGTrack, TrackCategory};

/// The same structure with every track set permuted at random; `σ` is
/// transported so the result is again a `(π, G)`-track category.
pub fn relabel<R: Rng>(x: &PiGTrack, rng: &mut R) -> PiGTrack {
    let t = &x.track;
    let k = &t.underlying;
    let perm: std::collections::BTreeMap<(usize, usize), Vec<usize>> = t
        .tracks
        .iter()
        .map(|(&key, &n)| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            (key, p)
        })
        .collect();
    let inv = |key: (usize, usize)| {
        let mut q = vec![0; perm[&key].len()];
        for (i, &j) in perm[&key].iter().enumerate() {
            q[j] = i;
        }
        q
    };
    let mut vcomp = std::collections::BTreeMap::new();
    for (&(f, g, h), _) in &t.vcomp {
        let (ifg, igh) = (inv((f, g)), inv((g, h)));
        let n = t.count(g, h);
        let mut table = vec![0; t.count(f, g) * n];
        for a in 0..t.count(f, g) {
            for b in 0..n {
                table[a * n + b] = perm[&(f, h)][t.vc(f, g, h, ifg[a], igh[b])];
            }
        }
        vcomp.insert((f, g, h), table);
    }
    let map1 = |src: (usize, usize), dst: (usize, usize), old: &dyn Fn(usize) -> usize| -> Vec<usize> {
        let i = inv(src);
        (0..i.len()).map(|a| perm[&dst][old(i[a])]).collect()
    };
    let vneg = t
        .vneg
        .keys()
        .map(|&(f, g)| ((f, g), map1((f, g), (g, f), &|a| t.neg(f, g, a))))
        .collect();
    let lwhisk = t
        .lwhisk
        .keys()
        .map(|&(a, f, g)| ((a, f, g), map1((f, g), (k.comp(a, f), k.comp(a, g)), &|x| t.lw(a, f, g, x))))
        .collect();
    let rwhisk = t
        .rwhisk
        .keys()
        .map(|&(f, g, b)| ((f, g, b), map1((f, g), (k.comp(f, b), k.comp(g, b)), &|x| t.rw(f, g, b, x))))
        .collect();
    let vzero = k.morphisms().map(|f| perm[&(f, f)][t.zero(f)]).collect();
    let sigma = k
        .morphisms()
        .map(|f| inv((f, f)).iter().map(|&old| x.sigma[f][old]).collect())
        .collect();
    PiGTrack {
        track: TrackCategory {
            underlying: k.clone(),
            tracks: t.tracks.clone(),
            vcomp,
            vneg,
            vzero,
            lwhisk,
            rwhisk,
        },
        pre: x.pre.clone(),
        sigma,
    }
}

/// Changes one entry of one of the track tables to a different value;
/// `None` when every table has a one-element target.
pub fn mutate_entry<R: Rng>(t: &TrackCategory, rng: &mut R) -> Option<TrackCategory> {
    let k = &t.underlying;
    // (table kind, key index, slot, target size)
    let mut slots: Vec<(u8, usize, usize, usize)> = Vec::new();
    for (i, (&(f, _, h), table)) in t.vcomp.iter().enumerate() {
        slots.extend((0..table.len()).map(|j| (0, i, j, t.count(f, h))));
    }
    for (i, (&(f, g), table)) in t.vneg.iter().enumerate() {
        slots.extend((0..table.len()).map(|j| (1, i, j, t.count(g, f))));
    }
    for (i, (&(a, f, g), table)) in t.lwhisk.iter().enumerate() {
        slots.extend((0..table.len()).map(|j| (2, i, j, t.count(k.comp(a, f), k.comp(a, g)))));
    }
    for (i, (&(f, g, b), table)) in t.rwhisk.iter().enumerate() {
        slots.extend((0..table.len()).map(|j| (3, i, j, t.count(k.comp(f, b), k.comp(g, b)))));
    }
    slots.retain(|s| s.3 > 1);
    let &(kind, i, j, n) = slots.choose(rng)?;
    let mut out = t.clone();
    let table = match kind {
        0 => out.vcomp.values_mut().nth(i),
        1 => out.vneg.values_mut().nth(i),
        2 => out.lwhisk.values_mut().nth(i),
        _ => out.rwhisk.values_mut().nth(i),
    }
    .unwrap();
    let old = table[j];
    table[j] = (old + rng.gen_range(1..n)) % n;
    Some(out)
}
