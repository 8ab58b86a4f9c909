//! Exhaustive enumeration of normalized cocycles and their partition into
//! cohomology classes.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::fincat::Mor;
use crate::fingroup::{enumerate_isomorphisms, Elem, GroupHom};
use crate::union_find::UnionFind;
use crate::Error;

use super::equations::{Entry, Equation};
use super::{apply_coboundary_unchecked, complete_coboundary, Budget, CocycleTriple, Meter, PreTrack};

/// Counters reported by [`classify`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Free entries after normalization.
    pub variables: usize,
    /// Equation instances checked during the search.
    pub equations: usize,
    /// Search nodes visited while enumerating cocycles.
    pub nodes: u64,
    /// Normalized cocycles found.
    pub cocycles: usize,
    /// Normalized coboundaries applied to each cocycle.
    pub coboundaries: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    pub class_count: usize,
    /// The lexicographically least triple of each class, ascending.
    pub representatives: Vec<CocycleTriple>,
    pub stats: SearchStats,
}

struct Search<'a> {
    p: &'a PreTrack,
    vars: Vec<Entry>,
    /// Candidate isomorphisms for each `φ` variable.
    isos: HashMap<(Mor, Mor), Vec<GroupHom>>,
    domain: Vec<usize>,
    /// Equations whose last free entry is variable `i`.
    at: Vec<Vec<Equation>>,
    constant: Vec<Equation>,
}

impl<'a> Search<'a> {
    fn new(p: &'a PreTrack) -> Option<Self> {
        let k = p.k();
        let mut vars = Vec::new();
        let mut domain = Vec::new();
        let mut isos = HashMap::new();
        for (g, f) in p.phi_keys() {
            if g == f {
                continue;
            }
            let list = enumerate_isomorphisms(p.g.group(g), p.g.group(f));
            if list.is_empty() {
                return None;
            }
            domain.push(list.len());
            vars.push(Entry::Phi(g, f));
            isos.insert((g, f), list);
        }
        for (f, g, h) in p.xi_keys() {
            let e = Entry::Xi(f, g, h);
            if !e.is_normalized(p) {
                vars.push(e);
                domain.push(p.g.group(f).order());
            }
        }
        let mut chi_keys = p.chi_keys();
        chi_keys.sort_unstable();
        for (f, g, x, y) in chi_keys {
            let e = Entry::Chi(f, g, x, y);
            if !e.is_normalized(p) {
                vars.push(e);
                domain.push(p.g.group(k.comp(x, f)).order());
            }
        }
        let pos: HashMap<Entry, usize> = vars.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut at = vec![Vec::new(); vars.len()];
        let mut constant = Vec::new();
        for eq in Equation::all(p) {
            match eq.entries(p).iter().filter_map(|e| pos.get(e).copied()).max() {
                Some(i) => at[i].push(eq),
                None => constant.push(eq),
            }
        }
        Some(Search {
            p,
            vars,
            isos,
            domain,
            at,
            constant,
        })
    }

    /// Normalized entries at their fixed values, free entries at choice 0.
    fn initial(&self) -> CocycleTriple {
        let p = self.p;
        let phi = p
            .phi_keys()
            .into_iter()
            .map(|(g, f)| {
                let h = match self.isos.get(&(g, f)) {
                    Some(list) => list[0].clone(),
                    None => GroupHom::identity(p.g.group(f).order()),
                };
                ((g, f), h)
            })
            .collect();
        CocycleTriple {
            xi: p.xi_keys().into_iter().map(|key| (key, 0)).collect(),
            chi: p.chi_keys().into_iter().map(|key| (key, 0)).collect(),
            phi,
        }
    }

    fn set(&self, work: &mut CocycleTriple, i: usize, choice: usize) {
        match self.vars[i] {
            Entry::Phi(g, f) => {
                work.phi.insert((g, f), self.isos[&(g, f)][choice].clone());
            }
            Entry::Xi(f, g, h) => {
                work.xi.insert((f, g, h), choice);
            }
            Entry::Chi(f, g, x, y) => {
                work.chi.insert((f, g, x, y), choice);
            }
        }
    }

    fn run(&self, meter: &mut Meter, stats: &mut SearchStats) -> Result<Vec<CocycleTriple>, Error> {
        let p = self.p;
        let mut work = self.initial();
        stats.equations += self.constant.len();
        if !self.constant.iter().all(|eq| eq.check(p, &work).is_ok()) {
            return Ok(Vec::new());
        }
        meter.tick()?;
        let n = self.vars.len();
        if n == 0 {
            return Ok(vec![work]);
        }
        let mut out = Vec::new();
        let mut choice = vec![0usize; n];
        let mut depth = 0usize;
        loop {
            if choice[depth] == self.domain[depth] {
                choice[depth] = 0;
                if depth == 0 {
                    return Ok(out);
                }
                depth -= 1;
                choice[depth] += 1;
                continue;
            }
            meter.tick()?;
            self.set(&mut work, depth, choice[depth]);
            stats.equations += self.at[depth].len();
            if self.at[depth].iter().all(|eq| eq.check(p, &work).is_ok()) {
                if depth + 1 == n {
                    out.push(work.clone());
                    choice[depth] += 1;
                } else {
                    depth += 1;
                }
            } else {
                choice[depth] += 1;
            }
        }
    }
}

/// All normalized cocycle triples of `p`, ascending.
///
/// Free entries are assigned in the order `φ` by `(g, f)`, then `ξ` by
/// `(f, g, h)`, then `χ` by `(f, g, x, y)`; each equation instance is
/// checked as soon as its last free entry is assigned.
pub fn enumerate_cocycles(p: &PreTrack, budget: Budget) -> Result<Vec<CocycleTriple>, Error> {
    enumerate_with_stats(p, budget).map(|(z, _, _)| z)
}

fn enumerate_with_stats(p: &PreTrack, budget: Budget) -> Result<(Vec<CocycleTriple>, SearchStats, Meter), Error> {
    let mut stats = SearchStats::default();
    let mut meter = Meter::new(budget);
    let Some(search) = Search::new(p) else {
        return Ok((Vec::new(), stats, meter));
    };
    stats.variables = search.vars.len();
    let mut found = search.run(&mut meter, &mut stats)?;
    found.sort_unstable();
    stats.nodes = meter.nodes;
    stats.cocycles = found.len();
    Ok((found, stats, meter))
}

/// Every assignment of `ζ(f, g)` on the pairs `f < g`.
fn lower_assignments(p: &PreTrack) -> Vec<BTreeMap<(Mor, Mor), Elem>> {
    let lower: Vec<(Mor, Mor)> = p.open_pairs().into_iter().filter(|(f, g)| f < g).collect();
    let mut out = vec![BTreeMap::new()];
    for (f, g) in lower {
        let order = p.g.group(f).order();
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..order).map(move |v| {
                    let mut m = m.clone();
                    m.insert((f, g), v);
                    m
                })
            })
            .collect();
    }
    out
}

/// [`classify_with_budget`] with the default budget.
pub fn classify(p: &PreTrack) -> Result<ClassificationResult, Error> {
    classify_with_budget(p, Budget::default())
}

/// Enumerates the normalized cocycles and joins each to its image under
/// every normalized coboundary. A coboundary between normalized triples
/// is itself normalized (`ζ(g,f) = φ_{g,f}^{-1}(-ζ(f,g))`), so these orbits
/// are exactly the cohomology classes.
pub fn classify_with_budget(p: &PreTrack, budget: Budget) -> Result<ClassificationResult, Error> {
    let (cocycles, mut stats, mut meter) = enumerate_with_stats(p, budget)?;
    stats.coboundaries = p
        .open_pairs()
        .into_iter()
        .filter(|(f, g)| f < g)
        .fold(1u64, |acc, (f, _)| acc.saturating_mul(p.g.group(f).order() as u64));
    meter.charge((cocycles.len() as u64).saturating_mul(stats.coboundaries))?;
    let lowers = lower_assignments(p);
    let index: HashMap<&CocycleTriple, usize> = cocycles.iter().enumerate().map(|(i, z)| (z, i)).collect();
    let images: Vec<Vec<usize>> = cocycles
        .par_iter()
        .map(|z| {
            lowers
                .iter()
                .map(|lower| {
                    let c = complete_coboundary(p, z, lower)?;
                    let image = apply_coboundary_unchecked(p, z, &c);
                    index.get(&image).copied().ok_or_else(|| {
                        Error::Invalid("a normalized coboundary left the set of normalized cocycles".into())
                    })
                })
                .collect::<Result<Vec<_>, Error>>()
        })
        .collect::<Result<_, _>>()?;
    let mut uf = UnionFind::new(cocycles.len());
    for (i, js) in images.iter().enumerate() {
        for &j in js {
            uf.union(i, j);
        }
    }
    let representatives: Vec<CocycleTriple> = uf.sets().iter().map(|s| cocycles[s[0]].clone()).collect();
    Ok(ClassificationResult {
        class_count: representatives.len(),
        representatives,
        stats,
    })
}
