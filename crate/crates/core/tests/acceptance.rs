//! Acceptance criteria 1-8, one PASS/FAIL line each.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tracat::cohomology::{
    apply_coboundary, are_cohomologous, build_track, choice_coboundary, choose_tracks, classify, extract_cocycle,
    validate_cocycle, Entry, PreTrack, TrackChoice,
};
use tracat::fingroup::enumerate_isomorphisms;
use tracat::natsys::is_centralised;
use tracat::track::{
    are_equivalent_tracks, aut_natural_system, is_track_functor, validate_pi_g_track, validate_track_category,
    PiGTrack, TrackCategory,
};
use tracat::CocycleTriple;

use common::oracle;

/// The three named fixtures and the extra ones used throughout.
const SUITE: &[&str] = &["pair-z2", "triple-z2", "z4-mod2-z2", "pair-z3", "pair-s3", "z2-collapse-twisted-z3"];
const ORACLE_NODES: u64 = 200_000_000;

type Outcome = Result<String, String>;

fn suite() -> Vec<(&'static str, PreTrack)> {
    SUITE.iter().map(|&n| (n, common::pretrack(n))).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Built tracks of every enumerated cocycle, plus the oracle's structures.
fn corpus() -> Vec<(&'static str, PiGTrack)> {
    let mut out = Vec::new();
    for (name, p) in suite() {
        for z in common::cocycles(&p) {
            out.push((name, build_track(&p, &z).unwrap()));
        }
        for x in oracle::track_structures(&p, ORACLE_NODES) {
            out.push((name, x));
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let mut n = 0;
    for (name, p) in suite() {
        for z in common::cocycles(&p) {
            let x = build_track(&p, &z).map_err(|e| format!("{name}: {e}"))?;
            let tr = validate_track_category(&x.track).unwrap();
            ensure(tr.passed(), || format!("{name}: {tr}"))?;
            let full = validate_pi_g_track(&x).unwrap();
            ensure(full.passed(), || format!("{name}: {full}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} cocycles built, 0 violations"))
}

fn criterion_2() -> Outcome {
    let mut n = 0;
    for (name, p) in suite() {
        for z in common::cocycles(&p) {
            let x = build_track(&p, &z).unwrap();
            let mut choices = vec![TrackChoice::first(&x)];
            choices.extend((0..3).map(|s| choose_tracks(&x, s)));
            for h in &choices {
                let z2 = extract_cocycle(&x, h).unwrap();
                let w = are_cohomologous(&p, &z, &z2)
                    .unwrap()
                    .ok_or_else(|| format!("{name}: no witness"))?;
                ensure(apply_coboundary(&p, &z, &w).unwrap() == z2, || format!("{name}: witness does not map z"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} roundtrips, all with exact witnesses"))
}

fn criterion_3(corpus: &[(&str, PiGTrack)]) -> Outcome {
    let mut n = 0;
    for (name, x) in corpus {
        for seed in 0..2 {
            let h = choose_tracks(x, seed);
            let y = build_track(&x.pre, &extract_cocycle(x, &h).unwrap()).unwrap();
            let w = are_equivalent_tracks(x, &y)
                .unwrap()
                .ok_or_else(|| format!("{name}: no equivalence"))?;
            ensure(is_track_functor(x, &y, &w), || format!("{name}: witness is not a track functor"))?;
            n += 1;
        }
    }
    Ok(format!("{n} roundtrips, all with checked track functors"))
}

/// `σ^{-1}ζ(f,g) + H_{f,g} = H'_{f,g}` for every class pair.
fn shifts_choice(x: &PiGTrack, zeta: &tracat::Coboundary, h: &TrackChoice, h2: &TrackChoice) -> bool {
    let t = &x.track;
    h.h.iter().all(|(&(f, g), &a)| {
        let inv = x.sigma_inverse(f).unwrap();
        t.vc(f, f, g, inv[zeta.zeta[&(f, g)]], a) == h2.h[&(f, g)]
    })
}

fn criterion_4(corpus: &[(&str, PiGTrack)]) -> Outcome {
    let mut pairs = 0;
    for (name, x) in corpus {
        let first = TrackChoice::first(x);
        let Some(other) = (0..64).map(|s| choose_tracks(x, s)).find(|h| *h != first) else {
            continue;
        };
        for (h, h2) in [(&first, &other), (&other, &first)] {
            let (z, z2) = (extract_cocycle(x, h).unwrap(), extract_cocycle(x, h2).unwrap());
            let zeta = choice_coboundary(x, h, h2).unwrap();
            ensure(shifts_choice(x, &zeta, h, h2), || format!("{name}: ζ + H ≠ H'"))?;
            ensure(apply_coboundary(&x.pre, &z, &zeta).unwrap() == z2, || format!("{name}: ζ does not map z to z'"))?;
            ensure(are_cohomologous(&x.pre, &z, &z2).unwrap().is_some(), || format!("{name}: search found no ζ"))?;
            pairs += 1;
        }
    }
    ensure(pairs > 0, || "no track category admits two choices".into())?;
    Ok(format!("{pairs} choice pairs, ζ verified entrywise"))
}

fn criterion_5() -> Outcome {
    let mut lines = Vec::new();
    for (name, p) in suite() {
        let start = Instant::now();
        let (expected, structures) = oracle::track_class_count(&p, ORACLE_NODES);
        let got = classify(&p).unwrap().class_count;
        ensure(got == expected, || format!("{name}: classify {got}, oracle {expected}"))?;
        ensure(start.elapsed().as_secs() < 300, || format!("{name}: over 5 minutes"))?;
        lines.push(format!("{name}={got} ({structures} structures)"));
    }
    Ok(lines.join(", "))
}

fn criterion_6() -> Outcome {
    let mut names: Vec<String> = SUITE.iter().map(|n| format!("trivial-{n}")).collect();
    names.push("identity-pair".into());
    for name in &names {
        let p = common::pretrack(name);
        let r = classify(&p).unwrap();
        ensure(r.class_count == 1, || format!("{name}: {} classes", r.class_count))?;
        let x = build_track(&p, &r.representatives[0]).unwrap();
        ensure(x.track.tracks.values().all(|&n| n == 1), || format!("{name}: a track set has more than one track"))?;
        if p.pi.src == p.pi.dst {
            ensure(x.track == TrackCategory::discrete(p.pi.src.clone()), || format!("{name}: not discrete"))?;
        }
    }
    Ok(format!("{} trivial-coefficient pre-tracks, 1 class each", names.len()))
}

fn criterion_7(corpus: &[(&str, PiGTrack)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    let mut mutants = 0;
    let mut relabelled = 0;
    let mut check = |name: &str, t: &TrackCategory| -> Result<(), String> {
        let aut = aut_natural_system(t).unwrap();
        let r = is_centralised(&t.underlying, &aut.system);
        ensure(r.passed(), || format!("{name}: Aut is not centralised: {r}"))?;
        checked += 1;
        Ok(())
    };
    for (name, x) in corpus {
        check(name, &x.track)?;
        for _ in 0..3 {
            let y = common::relabel(x, &mut rng);
            ensure(validate_pi_g_track(&y).unwrap().passed(), || format!("{name}: relabelling broke the axioms"))?;
            check(name, &y.track)?;
            relabelled += 1;
        }
        for _ in 0..20 {
            let Some(t) = common::mutate_entry(&x.track, &mut rng) else {
                break;
            };
            if validate_track_category(&t).unwrap().passed() {
                check(name, &t)?;
                mutants += 1;
            }
        }
    }
    for k in [tracat::fixtures::chain(), tracat::fixtures::cyclic_monoid(3)] {
        check("discrete", &TrackCategory::discrete(k))?;
    }
    Ok(format!(
        "{checked} track categories incl. {relabelled} random relabellings and {mutants} entry mutants passing TR1-TR9, 0 failures"
    ))
}

fn allowed(e: Entry) -> &'static [&'static str] {
    match e {
        Entry::Xi(..) => &["(i)(a)", "(ii)", "(iii)", "normalization"],
        Entry::Chi(..) => &["(i)(b)", "(i)(c)", "(iii)", "(iv)", "normalization"],
        Entry::Phi(..) => &["(i)(a)", "(i)(b)", "(i)(c)", "(ii)", "(iii)", "(iv)", "normalization", "phi-iso"],
    }
}

fn single_entry_mutants(p: &PreTrack, z: &CocycleTriple) -> Vec<(Entry, CocycleTriple)> {
    let mut out = Vec::new();
    for (&(f, g, h), &v) in &z.xi {
        for w in p.g.group(f).elements().filter(|&w| w != v) {
            let mut m = z.clone();
            m.xi.insert((f, g, h), w);
            out.push((Entry::Xi(f, g, h), m));
        }
    }
    for (&(f, g, x, y), &v) in &z.chi {
        for w in p.g.group(p.k().comp(x, f)).elements().filter(|&w| w != v) {
            let mut m = z.clone();
            m.chi.insert((f, g, x, y), w);
            out.push((Entry::Chi(f, g, x, y), m));
        }
    }
    for ((g, f), phi) in &z.phi {
        for other in enumerate_isomorphisms(p.g.group(*g), p.g.group(*f)) {
            if other != *phi {
                let mut m = z.clone();
                m.phi.insert((*g, *f), other);
                out.push((Entry::Phi(*g, *f), m));
            }
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let (mut total, mut labelled, mut valid) = (0usize, 0usize, 0usize);
    for (name, p) in suite() {
        let cocycles = common::cocycles(&p);
        let known: BTreeSet<&CocycleTriple> = cocycles.iter().collect();
        for z in &cocycles {
            for (entry, m) in single_entry_mutants(&p, z) {
                total += 1;
                let r = validate_cocycle(&p, &m).unwrap();
                if r.passed() {
                    let x = build_track(&p, &m).map_err(|e| format!("{name}: accepted mutant fails to build: {e}"))?;
                    let ok = validate_pi_g_track(&x).unwrap().passed() && known.contains(&m);
                    ensure(ok, || format!("{name}: accepted mutant {entry:?} is not genuinely valid"))?;
                    valid += 1;
                } else if r.rules().iter().all(|rule| allowed(entry).contains(rule)) {
                    labelled += 1;
                } else {
                    return Err(format!("{name}: mutant {entry:?} rejected with {:?}", r.rules()));
                }
            }
        }
    }
    let rate = labelled as f64 / total as f64;
    ensure(rate >= 0.95, || format!("only {labelled}/{total} rejected with a correct label"))?;
    Ok(format!(
        "{labelled}/{total} rejected with a correct label ({:.1}%), {valid} verified valid",
        100.0 * rate
    ))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("1 axiom closure of build_track", Box::new(criterion_1)),
        ("2 roundtrip cocycle -> track -> cocycle", Box::new(criterion_2)),
        ("3 roundtrip track -> cocycle -> track", Box::new(|| criterion_3(&corpus))),
        ("4 choice independence", Box::new(|| criterion_4(&corpus))),
        ("5 class count matches track-level oracle", Box::new(criterion_5)),
        ("6 trivial coefficients", Box::new(criterion_6)),
        ("7 Aut^T is centralised", Box::new(|| criterion_7(&corpus))),
        ("8 negative controls", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (label, run) in &criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("criterion {label}: PASS ({detail}) [{:.2?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {label}: FAIL ({why}) [{:.2?}]", start.elapsed());
            }
        }
    }
    if failed == 0 {
        println!("acceptance: {} of {} criteria passed", criteria.len(), criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
