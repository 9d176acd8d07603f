use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use canonsys::canonical::{self, CanonicalSystem};
use canonsys::group::DEFAULT_CLOSURE_CAP;
use canonsys::invariants::{self, InvariantSystem};
use canonsys::{io, AnalyzeOptions, ReflGroup, Report};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

/// Exact canonical systems of basic invariants for finite unitary reflection groups.
///
/// GROUP is a catalog name (cyclic:m, G:m,p,n, dihedral:m, B:n, G4) or a path
/// to a group-spec JSON file.
#[derive(Parser)]
#[command(name = "canonsys", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, reflections, hyperplanes, Delta, degrees and Molien coefficients.
    Info {
        #[command(flatten)]
        group: GroupArgs,
        /// Highest Molien coefficient to print [default: 2 deg Delta]
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Generate (or check with --from) a system of basic invariants.
    Invariants {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Build a canonical system from generated or supplied basic invariants.
    Canonical {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Also write LaTeX (next to --out as .tex, or to stdout)
        #[arg(long)]
        latex: bool,
    },
    /// Verify an externally supplied canonical system.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        /// CanonicalSystem JSON file
        system: PathBuf,
    },
}

#[derive(Args)]
struct GroupArgs {
    group: String,
    /// Closure cap on the number of group elements
    #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
    cap: usize,
    /// Analyze groups that act reducibly
    #[arg(long)]
    allow_reducible: bool,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Read basic invariants (InvariantSystem JSON) instead of generating them
    #[arg(long)]
    from: Option<PathBuf>,
    /// Write the resulting system JSON here
    #[arg(long)]
    out: Option<PathBuf>,
}

impl GroupArgs {
    fn analyze(&self) -> Result<ReflGroup> {
        let spec = io::resolve_group(&self.group)?;
        let opts = AnalyzeOptions { cap: self.cap, allow_reducible: self.allow_reducible };
        Ok(spec.analyze(&opts)?)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn exit_for(report: &Report) -> ExitCode {
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn emit(json_mode: bool, report: &Report, system: Value, text: &str) {
    if json_mode {
        let out = json!({ "passed": report.passed(), "report": report, "system": system });
        println!("{}", serde_json::to_string_pretty(&out).expect("plain data serializes"));
    } else {
        print!("{text}{report}");
        if !report.passed() {
            println!("failed checks: {}", report.failures().join(", "));
        }
    }
}

fn info(args: &GroupArgs, max_degree: Option<u32>) -> Result<ExitCode> {
    let g = args.analyze()?;
    let top = max_degree.unwrap_or(2 * g.delta().total_degree().unwrap_or(0)) as usize;
    let molien = g.molien_coeffs(top)?;
    let hyperplanes: Vec<Value> =
        g.hyperplanes().iter().map(|h| json!({ "form": h.form.to_string(), "e": h.order })).collect();
    let certificate = g.irreducibility_certificate().to_string();
    if args.json {
        let out = json!({
            "name": g.name(),
            "rank": g.rank(),
            "order": g.order(),
            "conductor": g.conductor(),
            "reflections": g.reflections().len(),
            "hyperplanes": hyperplanes,
            "delta": g.delta().to_string(),
            "degrees": g.degrees(),
            "irreducibility_certificate": certificate,
            "molien": molien,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
        return Ok(ExitCode::SUCCESS);
    }
    println!("group {} (rank {}, field Q(zeta_{}))", g.name(), g.rank(), g.conductor());
    println!("|W| = {}", g.order());
    println!("reflections = {}", g.reflections().len());
    println!("hyperplanes = {}", g.hyperplanes().len());
    for h in g.hyperplanes() {
        println!("  {}  e_H = {}", h.form, h.order);
    }
    println!("Delta = {}", g.delta());
    println!("degrees = {:?}", g.degrees());
    println!("irreducibility certificate = {certificate}");
    println!("Molien coefficients 0..={top}: {molien:?}");
    Ok(ExitCode::SUCCESS)
}

fn load_or_generate(g: &ReflGroup, run: &RunArgs) -> Result<InvariantSystem> {
    match &run.from {
        Some(path) => {
            let sys = io::invariants_from_json(&read(path)?)?;
            check_vars(g, sys.polys.iter().map(|p| p.nvars()))?;
            Ok(sys)
        }
        None => Ok(invariants::basic_invariants(g, run.seed)?),
    }
}

fn check_vars(g: &ReflGroup, nvars: impl Iterator<Item = usize>) -> Result<()> {
    for n in nvars {
        if n != g.rank() {
            bail!("system is in {n} variables but {} has rank {}", g.name(), g.rank());
        }
    }
    Ok(())
}

fn cmd_invariants(args: &GroupArgs, run: &RunArgs) -> Result<ExitCode> {
    let g = args.analyze()?;
    let sys = load_or_generate(&g, run)?;
    let report = invariants::verify_basic(&g, &sys)?;
    let text = io::invariants_to_json(&sys);
    if let Some(out) = &run.out {
        write(out, &text)?;
    }
    let listing: String = sys.polys.iter().enumerate().map(|(i, h)| format!("h{} = {h}\n", i + 1)).collect();
    emit(args.json, &report, serde_json::from_str(&text)?, &listing);
    Ok(exit_for(&report))
}

fn cmd_canonical(args: &GroupArgs, run: &RunArgs, latex: bool) -> Result<ExitCode> {
    let g = args.analyze()?;
    let sys = load_or_generate(&g, run)?;
    let basic = invariants::verify_basic(&g, &sys)?;
    if !basic.passed() {
        emit(args.json, &basic, Value::Null, "");
        return Ok(ExitCode::from(1));
    }
    let cs = canonical::canonical_system(&g, &sys)?;
    let report = canonical::verify_canonical(&g, &cs)?;
    let text = io::canonical_to_json(&cs);
    let tex = cs.to_latex();
    if let Some(out) = &run.out {
        write(out, &text)?;
        if latex {
            write(&out.with_extension("tex"), &tex)?;
        }
    } else if latex && !args.json {
        print!("{tex}");
    }
    emit(args.json, &report, serde_json::from_str(&text)?, &listing(&cs));
    Ok(exit_for(&report))
}

fn listing(cs: &CanonicalSystem) -> String {
    cs.pairs.iter().enumerate().map(|(i, (g, c))| format!("g{} = {g}\nc{} = {c}\n", i + 1, i + 1)).collect()
}

fn cmd_verify(args: &GroupArgs, path: &Path) -> Result<ExitCode> {
    let g = args.analyze()?;
    let cs = io::canonical_from_json(&read(path)?)?;
    check_vars(&g, cs.pairs.iter().map(|(p, _)| p.nvars()))?;
    let report = canonical::verify_canonical(&g, &cs)?;
    emit(args.json, &report, Value::Null, "");
    Ok(exit_for(&report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Info { group, max_degree } => info(group, *max_degree),
        Command::Invariants { group, run } => cmd_invariants(group, run),
        Command::Canonical { group, run, latex } => cmd_canonical(group, run, *latex),
        Command::Verify { group, system } => cmd_verify(group, system),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
