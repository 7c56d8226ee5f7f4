use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use ringlab_core::extend::{critical_ideal, intermediate_rings};
use ringlab_core::harness::{self, Instance, InstanceFile, Report, Setting, SubringSpec, TheoremId};
use ringlab_core::ideals::{conductor, ideal_generated, max_ideals, spec, Ideal};
use ringlab_core::ring::{find_isomorphism, subring_closure};
use ringlab_core::{classify_extension, Construction, FiniteRing, Limits, SubringHandle};

/// Finite ring extensions under group actions.
#[derive(Parser)]
#[command(name = "ringlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify R ⊂ T, and R^G ⊂ T^G when an action is given.
    Classify {
        file: PathBuf,
    },
    /// Run theorem checkers on an instance file or on the shipped catalog.
    Verify {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        file: Option<PathBuf>,
        #[arg(long)]
        all: bool,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Overrides the seed stored in the file; defaults to 0.
        #[arg(long)]
        seed: Option<u64>,
        /// Restrict to these checkers.
        #[arg(long = "theorem", value_name = "ID")]
        theorems: Vec<TheoremId>,
        /// Print the JSON report instead of the summary table.
        #[arg(long)]
        json: bool,
    },
    /// Inspect a single ring: ideals, intermediate rings, conductor.
    Explore {
        #[arg(long)]
        ring: Construction,
        /// Inner ring given as a construction embedded in the ring.
        #[arg(long, conflicts_with = "subring")]
        base: Option<Construction>,
        /// Inner ring as base, diag, full or a JSON subring spec.
        #[arg(long)]
        subring: Option<String>,
        #[arg(long)]
        list_intermediate: bool,
        #[arg(long)]
        spec: bool,
        #[arg(long)]
        max: bool,
        #[arg(long)]
        conductor: bool,
        #[arg(long)]
        critical: bool,
        /// Largest ambient order for intermediate-ring enumeration.
        #[arg(long)]
        max_order: Option<usize>,
    },
}

fn read_instance(path: &PathBuf) -> Result<InstanceFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    InstanceFile::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn finite_setting(inst: &Instance, limits: &Limits) -> Result<harness::FiniteSetting> {
    match inst.materialize(limits)? {
        Setting::Finite(s) => Ok(s),
        Setting::Func(_) => bail!("classify needs a finite construction"),
    }
}

fn classify(path: &PathBuf) -> Result<ExitCode> {
    let limits = Limits::default();
    let file = read_instance(path)?;
    let s = finite_setting(&file.instance, &limits)?;
    let base = classify_extension(&s.inner, &s.outer, &limits)?;
    let fixed = match (&s.fixed_inner, file.instance.action.is_empty()) {
        (Some(rg), false) => Some(classify_extension(rg, &s.fixed_outer, &limits)?),
        _ => None,
    };
    match &fixed {
        Some(f) => println!("{} → fixed: {}", base.kind, f.kind),
        None => println!("{}", base.kind),
    }
    let out = json!({"extension": base, "fixed": fixed, "group_order": s.group.order()});
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(ExitCode::SUCCESS)
}

fn verify(
    file: Option<PathBuf>,
    all: bool,
    report_path: Option<PathBuf>,
    seed: Option<u64>,
    theorems: Vec<TheoremId>,
    as_json: bool,
) -> Result<ExitCode> {
    let limits = Limits::default();
    let report = if all {
        let seed = seed.unwrap_or(0);
        if theorems.is_empty() {
            harness::run_all(seed, &limits)?
        } else {
            let mut verdicts = Vec::new();
            for inst in harness::catalog() {
                verdicts.extend(harness::run_instance(&inst, &theorems, seed, &limits)?);
            }
            Report::new(seed, verdicts)
        }
    } else {
        let file = read_instance(file.as_ref().expect("clap requires a file"))?;
        let seed = seed.unwrap_or(file.seed);
        let requested = if !theorems.is_empty() { theorems } else { file.checks.clone() };
        let verdicts = if requested.is_empty() {
            harness::run_instance(&file.instance, TheoremId::ALL, seed, &limits)?
        } else {
            let setting = file.instance.materialize(&limits)?;
            requested
                .iter()
                .map(|&t| harness::verify_setting(t, &file.instance, &setting, seed, &limits))
                .collect::<std::result::Result<Vec<_>, _>>()?
        };
        Report::new(seed, verdicts)
    };
    if let Some(path) = &report_path {
        fs::write(path, report.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    if as_json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.summary_table());
    }
    Ok(if report.has_failures() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

/// `(x)` when the ideal is principal, else its element list.
fn show_ideal(ideal: &Ideal) -> String {
    let ring = ideal.ring();
    for &g in ideal.members() {
        if ideal_generated(ideal.carrier(), [g]).map(|i| &i == ideal).unwrap_or(false) {
            return format!("({})", ring.label(g));
        }
    }
    format!("{{{}}}", ideal.labels().join(", "))
}

fn show_set(sub: &SubringHandle) -> String {
    format!("{{{}}}", sub.labels().join(", "))
}

fn embedded(ring: &Arc<FiniteRing>, base: &Construction, limits: &Limits) -> Result<SubringHandle> {
    let b = base.build(limits)?;
    let prime = subring_closure(ring, [ring.one()]);
    let mut candidates = intermediate_rings(&prime, &ring.full(), limits)?;
    candidates.retain(|s| s.len() == b.order());
    for s in candidates {
        let (m, _) = s.materialize();
        if find_isomorphism(&m, &b).is_some() {
            return Ok(s);
        }
    }
    bail!("{base} does not embed in {}", ring.construction())
}

#[allow(clippy::too_many_arguments)]
fn explore(
    ring: Construction,
    base: Option<Construction>,
    subring: Option<String>,
    list_intermediate: bool,
    show_spec: bool,
    show_max: bool,
    show_conductor: bool,
    show_critical: bool,
    max_order: Option<usize>,
) -> Result<ExitCode> {
    let mut limits = Limits::default();
    if let Some(m) = max_order {
        limits.max_intermediate_order = m;
    }
    let t = ring.build(&limits)?;
    let inner = match (&base, &subring) {
        (Some(b), _) => embedded(&t, b, &limits)?,
        (None, Some(s)) => {
            let spec = match SubringSpec::parse(s) {
                Ok(spec) => spec,
                Err(_) => serde_json::from_str(s).with_context(|| format!("subring spec '{s}'"))?,
            };
            spec.resolve(&t, &limits)?
        }
        (None, None) => SubringSpec::Base.resolve(&t, &limits)?,
    };
    let outer = t.full();
    println!("T = {} (order {}), R of order {}", t.construction(), t.order(), inner.len());
    if list_intermediate {
        let mut rings = intermediate_rings(&inner, &outer, &limits)?;
        rings.sort_by_key(|s| (s.len(), s.members().clone()));
        println!("intermediate rings ({}):", rings.len());
        for s in rings {
            println!("  order {:>4}: {}", s.len(), show_set(&s));
        }
    }
    if show_spec {
        let mut primes: Vec<String> = spec(&outer, &limits)?.iter().map(show_ideal).collect();
        primes.sort();
        println!("Spec: {}", primes.join(", "));
    }
    if show_max {
        let mut maxes: Vec<String> = max_ideals(&outer, &limits)?.iter().map(show_ideal).collect();
        maxes.sort();
        println!("Max: {}", maxes.join(", "));
    }
    if show_conductor {
        let c = conductor(&inner, &outer)?;
        println!("conductor (R :_R T) = {{{}}}", c.labels().join(", "));
    }
    if show_critical {
        match critical_ideal(&inner, &outer)? {
            Some(p) => println!("critical ideal = {{{}}}", p.labels().join(", ")),
            None => println!("critical ideal: none"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Classify { file } => classify(&file),
        Command::Verify { file, all, report, seed, theorems, json } => {
            verify(file, all, report, seed, theorems, json)
        }
        Command::Explore {
            ring,
            base,
            subring,
            list_intermediate,
            spec,
            max,
            conductor,
            critical,
            max_order,
        } => explore(ring, base, subring, list_intermediate, spec, max, conductor, critical, max_order),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
