//! `tracat`: validate, classify and convert track categories and cocycles.
//!
//! Exit codes: 0 pass, 1 mathematical failure, 2 parse or structural
//! error, 3 search budget exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tracat::cohomology::{self, classify_with_budget, Budget, PreTrack};
use tracat::fincat::validate_category;
use tracat::fingroup::validate_group;
use tracat::natsys::validate_natural_system;
use tracat::track::{are_equivalent_tracks, validate_pi_g_track, validate_pre_track, validate_track_category};
use tracat::{fixtures, io, Error, ValidationReport};

#[derive(Parser)]
#[command(name = "tracat", version, about = "Track categories and their classification by non-abelian 2-cocycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate any structure file; cocycle, coboundary and classification files need --pretrack.
    Validate {
        path: PathBuf,
        #[arg(long)]
        pretrack: Option<PathBuf>,
    },
    /// Check only the track category axioms TR1-TR9 of a track file.
    Axioms { path: PathBuf },
    /// Enumerate normalized cocycles of a pre-track and count cohomology classes.
    Classify {
        pretrack: PathBuf,
        /// Maximum number of search nodes.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        max_seconds: Option<f64>,
        /// Write one cocycle file per class representative into this directory.
        #[arg(long)]
        emit_reps: Option<PathBuf>,
        /// Write the classification result.
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Build the (π,G)-track category of a cocycle.
    BuildTrack {
        pretrack: PathBuf,
        cocycle: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Extract a cocycle from a (π,G)-track category using a seeded track choice.
    ExtractCocycle {
        track: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Decide whether two cocycles or two (π,G)-track categories are equivalent.
    Equivalent {
        kind: EquivKind,
        a: PathBuf,
        b: PathBuf,
        /// Pre-track for the cocycles.
        #[arg(long)]
        pretrack: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Build a track from a cocycle, extract it again and check both equivalences.
    Roundtrip {
        pretrack: PathBuf,
        cocycle: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Write the built-in pre-track fixtures into a directory.
    Fixtures { dir: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum EquivKind {
    Cocycles,
    Tracks,
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Invalid(_) => 1,
        Error::Structural(_) | Error::Parse(_) | Error::Io(_) => 2,
        Error::Budget(_) => 3,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text)?;
    Ok(())
}

fn emit(o: Option<&Path>, text: &str) -> Result<(), Error> {
    match o {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_pretrack(path: &Path) -> Result<PreTrack, Error> {
    let p = io::pretrack_from_json(&io::parse_kind(&read(path)?, "pretrack")?)?;
    let report = validate_pre_track(&p.pi, &p.g);
    if !report.passed() {
        return Err(Error::Invalid(format!("pre-track does not validate: {report}")));
    }
    Ok(p)
}

fn budget(nodes: Option<u64>, seconds: Option<f64>) -> Result<Budget, Error> {
    let mut b = Budget::default();
    if let Some(n) = nodes {
        if n == 0 {
            return Err(Error::Structural("--budget must be positive".into()));
        }
        b.max_nodes = n;
    }
    if let Some(s) = seconds {
        if s.is_nan() || s <= 0.0 {
            return Err(Error::Structural("--max-seconds must be positive".into()));
        }
        b.max_seconds = Some(s);
    }
    Ok(b)
}

fn report(r: &ValidationReport) -> Outcome {
    if r.passed() {
        println!("PASS");
        Outcome::Pass
    } else {
        println!("FAIL");
        for v in r.violations() {
            println!("  {v}");
        }
        Outcome::Fail
    }
}

fn validate(path: &Path, pretrack: Option<&Path>) -> Result<Outcome, Error> {
    let (kind, data) = io::parse_envelope(&read(path)?)?;
    let context = || -> Result<PreTrack, Error> {
        let p = pretrack.ok_or_else(|| Error::Structural(format!("validating a {kind} file needs --pretrack")))?;
        load_pretrack(p)
    };
    let r = match kind.as_str() {
        "group" => validate_group(&io::group_from_json(&data)?),
        "category" => validate_category(&io::category_from_json(&data)?),
        "natural_system" => {
            let (base, d) = io::natural_system_from_json(&data)?;
            let mut r = validate_category(&base);
            r.extend(validate_natural_system(&base, &d));
            r.finish()
        }
        "pretrack" => {
            let p = io::pretrack_from_json(&data)?;
            validate_pre_track(&p.pi, &p.g)
        }
        "track_category" => validate_track_category(&io::track_from_json(&data)?)?,
        "pi_g_track" => validate_pi_g_track(&io::pi_g_track_from_json(&data)?)?,
        "cocycle" => {
            let p = context()?;
            cohomology::validate_cocycle(&p, &io::cocycle_from_json(&p, &data)?)?
        }
        "coboundary" => {
            let p = context()?;
            io::coboundary_from_json(&p, &data)?;
            ValidationReport::new()
        }
        _ => {
            let p = context()?;
            let reps = data
                .get("representatives")
                .and_then(|v| v.as_array())
                .ok_or_else(|| Error::Parse("classification without representatives".into()))?;
            let mut r = ValidationReport::new();
            for rep in reps {
                r.extend(cohomology::validate_cocycle(&p, &io::cocycle_from_json(&p, rep)?)?);
            }
            r.finish()
        }
    };
    println!("kind: {kind}");
    Ok(report(&r))
}

fn axioms(path: &Path) -> Result<Outcome, Error> {
    let (kind, data) = io::parse_envelope(&read(path)?)?;
    let t = match kind.as_str() {
        "track_category" | "pi_g_track" => io::track_from_json(&data)?,
        _ => return Err(Error::Structural(format!("axioms needs a track file, found {kind}"))),
    };
    Ok(report(&validate_track_category(&t)?))
}

fn classify(
    pretrack: &Path,
    b: Budget,
    emit_reps: Option<&Path>,
    o: Option<&Path>,
) -> Result<Outcome, Error> {
    let p = load_pretrack(pretrack)?;
    let r = classify_with_budget(&p, b)?;
    if let Some(dir) = emit_reps {
        fs::create_dir_all(dir)?;
        for (i, z) in r.representatives.iter().enumerate() {
            write(&dir.join(format!("rep-{i}.json")), &io::render("cocycle", io::cocycle_to_json(&p, z)))?;
        }
    }
    if let Some(path) = o {
        write(path, &io::render("classification", io::classification_to_json(&p, &r)))?;
    }
    println!("classes: {}", r.class_count);
    println!("cocycles: {}", r.stats.cocycles);
    println!("variables: {}", r.stats.variables);
    println!("nodes: {}", r.stats.nodes);
    println!("equations: {}", r.stats.equations);
    println!("coboundaries: {}", r.stats.coboundaries);
    Ok(Outcome::Pass)
}

fn build_track(pretrack: &Path, cocycle: &Path, o: Option<&Path>) -> Result<Outcome, Error> {
    let p = load_pretrack(pretrack)?;
    let z = io::cocycle_from_json(&p, &io::parse_kind(&read(cocycle)?, "cocycle")?)?;
    let r = cohomology::validate_cocycle(&p, &z)?;
    if !r.passed() {
        eprintln!("cocycle does not validate");
        return Ok(report(&r));
    }
    let x = cohomology::build_track(&p, &z)?;
    let check = validate_pi_g_track(&x)?;
    if !check.passed() {
        eprintln!("built track category does not validate");
        return Ok(report(&check));
    }
    emit(o, &io::render("pi_g_track", io::pi_g_track_to_json(&x)))?;
    Ok(Outcome::Pass)
}

fn load_pi_g_track(path: &Path) -> Result<tracat::PiGTrack, Error> {
    let x = io::pi_g_track_from_json(&io::parse_kind(&read(path)?, "pi_g_track")?)?;
    let r = validate_pi_g_track(&x)?;
    if !r.passed() {
        return Err(Error::Invalid(format!("(π,G)-track category does not validate: {r}")));
    }
    Ok(x)
}

fn extract(track: &Path, seed: u64, o: Option<&Path>) -> Result<Outcome, Error> {
    let x = load_pi_g_track(track)?;
    let h = cohomology::choose_tracks(&x, seed);
    let z = cohomology::extract_cocycle(&x, &h)?;
    emit(o, &io::render("cocycle", io::extracted_cocycle_to_json(&x.pre, &z, &h, seed)))?;
    Ok(Outcome::Pass)
}

fn equivalent(kind: EquivKind, a: &Path, b: &Path, pretrack: Option<&Path>, budget: Budget) -> Result<Outcome, Error> {
    match kind {
        EquivKind::Cocycles => {
            let p = load_pretrack(pretrack.ok_or_else(|| Error::Structural("cocycles need --pretrack".into()))?)?;
            let load = |path: &Path| -> Result<_, Error> {
                let z = io::cocycle_from_json(&p, &io::parse_kind(&read(path)?, "cocycle")?)?;
                let r = cohomology::validate_cocycle(&p, &z)?;
                if !r.passed() {
                    return Err(Error::Invalid(format!("{} does not validate: {r}", path.display())));
                }
                Ok(z)
            };
            let (z1, z2) = (load(a)?, load(b)?);
            match cohomology::are_cohomologous_with_budget(&p, &z1, &z2, budget)? {
                Some(c) => {
                    println!("cohomologous");
                    print!("{}", io::render("coboundary", io::coboundary_to_json(&p, &c)));
                    Ok(Outcome::Pass)
                }
                None => {
                    println!("not cohomologous");
                    Ok(Outcome::Fail)
                }
            }
        }
        EquivKind::Tracks => {
            let (x, y) = (load_pi_g_track(a)?, load_pi_g_track(b)?);
            if x.pre != y.pre {
                return Err(Error::Structural("the two tracks have different pre-track categories".into()));
            }
            match are_equivalent_tracks(&x, &y)? {
                Some(w) => {
                    println!("equivalent");
                    let k = &x.track.underlying;
                    for (&(f, g), map) in &w.maps {
                        println!("  {},{}: {:?}", k.name(f), k.name(g), map);
                    }
                    Ok(Outcome::Pass)
                }
                None => {
                    println!("not equivalent");
                    Ok(Outcome::Fail)
                }
            }
        }
    }
}

fn roundtrip(pretrack: &Path, cocycle: &Path, seed: u64, budget: Budget) -> Result<Outcome, Error> {
    let p = load_pretrack(pretrack)?;
    let z = io::cocycle_from_json(&p, &io::parse_kind(&read(cocycle)?, "cocycle")?)?;
    let x = cohomology::build_track(&p, &z)?;
    let h = cohomology::choose_tracks(&x, seed);
    let z2 = cohomology::extract_cocycle(&x, &h)?;
    let cohomologous = cohomology::are_cohomologous_with_budget(&p, &z, &z2, budget)?.is_some();
    println!("build -> extract cohomologous: {cohomologous}");
    let x2 = cohomology::build_track(&p, &z2)?;
    let equivalent = are_equivalent_tracks(&x, &x2)?.is_some();
    println!("extract -> build equivalent: {equivalent}");
    Ok(if cohomologous && equivalent { Outcome::Pass } else { Outcome::Fail })
}

fn write_fixtures(dir: &Path) -> Result<Outcome, Error> {
    fs::create_dir_all(dir)?;
    for name in fixtures::pretrack_names() {
        let p = fixtures::pretrack(&name).expect("listed fixture exists");
        write(&dir.join(format!("{name}.json")), &io::render("pretrack", io::pretrack_to_json(&p)))?;
        println!("{name}");
    }
    Ok(Outcome::Pass)
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Validate { path, pretrack } => validate(&path, pretrack.as_deref()),
        Command::Axioms { path } => axioms(&path),
        Command::Classify {
            pretrack,
            budget: nodes,
            max_seconds,
            emit_reps,
            o,
        } => classify(&pretrack, budget(nodes, max_seconds)?, emit_reps.as_deref(), o.as_deref()),
        Command::BuildTrack { pretrack, cocycle, o } => build_track(&pretrack, &cocycle, o.as_deref()),
        Command::ExtractCocycle { track, seed, o } => extract(&track, seed, o.as_deref()),
        Command::Equivalent {
            kind,
            a,
            b,
            pretrack,
            budget: nodes,
        } => equivalent(kind, &a, &b, pretrack.as_deref(), budget(nodes, None)?),
        Command::Roundtrip {
            pretrack,
            cocycle,
            seed,
            budget: nodes,
        } => roundtrip(&pretrack, &cocycle, seed, budget(nodes, None)?),
        Command::Fixtures { dir } => write_fixtures(&dir),
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("TRACAT_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    configure_threads();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
