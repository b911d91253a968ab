mod classify;
mod spec;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use biharm::catalog::{all_entries, check_entries, find, CatalogEntry};
use biharm::{check_immersion, classify_two_curvature, BiharmonicReport, CheckOptions, Verdict};
use clap::{Args, Parser, Subcommand};
use num_rational::Rational64;

use crate::spec::SpecFile;

/// Exit status for a verdict that does not meet `--expect`, or a failing
/// catalog entry. Errors exit with 1.
const MISMATCH: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "biharm", version, about = "Biharmonicity checks for pseudo-Riemannian submanifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the immersion described by a TOML spec file.
    Check(CheckArgs),
    /// List or check the built-in fixtures.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Solve the two-principal-curvature system for (n, p, C).
    #[command(allow_negative_numbers = true)]
    Classify {
        n: i64,
        p: i64,
        /// Ambient curvature, an integer or a fraction such as 3/2.
        c: String,
    },
}

#[derive(Debug, Args)]
struct CheckArgs {
    spec: PathBuf,
    /// Write the JSON report to this path (`-` for standard output).
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,
    /// Expected verdict: minimal, proper-biharmonic, biconservative or
    /// not-biharmonic. A biconservative result meets not-biharmonic.
    #[arg(long, value_parser = parse_verdict)]
    expect: Option<Verdict>,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Debug, Args)]
struct Overrides {
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Finite-difference step.
    #[arg(long)]
    step: Option<f64>,
    /// Residual tolerance.
    #[arg(long)]
    tol_res: Option<f64>,
    /// Mean-curvature tolerance for minimality.
    #[arg(long)]
    tol_h: Option<f64>,
}

impl Overrides {
    fn apply(&self, mut opts: CheckOptions) -> CheckOptions {
        opts.samples = self.samples.unwrap_or(opts.samples);
        opts.seed = self.seed.unwrap_or(opts.seed);
        opts.step = self.step.unwrap_or(opts.step);
        opts.tol_res = self.tol_res.unwrap_or(opts.tol_res);
        opts.tol_h = self.tol_h.unwrap_or(opts.tol_h);
        opts
    }
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    /// Print every entry with its expected verdict and source.
    List,
    /// Run the engine on one entry or on all of them.
    Check {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        name: Option<String>,
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        overrides: Overrides,
    },
}

fn parse_verdict(s: &str) -> Result<Verdict, String> {
    s.parse()
}

fn write_json(report: &BiharmonicReport, out: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(report)? + "\n";
    if out == Path::new("-") {
        std::io::stdout().write_all(text.as_bytes())?;
    } else {
        std::fs::write(out, text).with_context(|| format!("cannot write {}", out.display()))?;
    }
    Ok(())
}

fn summary(r: &BiharmonicReport) -> String {
    let mut lines = vec![
        format!("ambient: {}", r.ambient),
        format!(
            "dimension {}, codimension {}, signature ({}, {})",
            r.dim, r.codim, r.signature.neg, r.signature.pos
        ),
        format!(
            "samples: {} (seed {}, step {:e}, tol_res {:e}, tol_h {:e})",
            r.samples.len(),
            r.options.seed,
            r.options.step,
            r.options.tol_res,
            r.options.tol_h
        ),
        format!("|H|: min {:.6e}, max {:.6e}; <H,H> spread {:.3e}", r.min_h_norm, r.max_h_norm, r.h_inner_spread),
        format!("residual: normal {:.3e}, tangential {:.3e}", r.max_normal, r.max_tangential),
        format!("pseudo-umbilical residual: {:.3e}", r.max_pseudo_umbilical),
        format!("verdict: {}", r.verdict),
    ];
    lines.extend(r.warnings.iter().map(|w| format!("warning: {w}")));
    lines.join("\n")
}

fn cmd_check(args: &CheckArgs) -> Result<u8> {
    let spec = SpecFile::read(&args.spec)?;
    let immersion = spec.immersion().with_context(|| format!("in {}", args.spec.display()))?;
    let opts = args.overrides.apply(spec.options());
    let report = check_immersion(&immersion, &opts).with_context(|| format!("checking {}", args.spec.display()))?;
    let to_stdout = args.json.as_deref() == Some(Path::new("-"));
    let text = summary(&report);
    if to_stdout {
        eprintln!("{text}");
    } else {
        println!("{text}");
    }
    if let Some(out) = &args.json {
        write_json(&report, out)?;
    }
    Ok(match args.expect {
        Some(expected) if !report.verdict.satisfies(expected) => {
            eprintln!("expected {expected}, got {}", report.verdict);
            MISMATCH
        }
        _ => 0,
    })
}

fn cmd_catalog_list() -> Result<u8> {
    for e in all_entries() {
        println!("{:<44} {:<12} {:<18} {}", e.name, e.ambient(), e.expected, e.description);
        println!("    {}", e.citation);
    }
    Ok(0)
}

fn cmd_catalog_check(name: Option<&str>, overrides: &Overrides) -> Result<u8> {
    let entries: Vec<CatalogEntry> = match name {
        Some(n) => vec![find(n)?],
        None => all_entries(),
    };
    let opts = overrides.apply(CheckOptions::default());
    let mut failed = 0;
    for (e, check) in entries.iter().zip(check_entries(&entries, &opts)) {
        let check = check.with_context(|| format!("checking {}", e.name))?;
        let r = &check.report;
        let status = if check.passed() { "PASS" } else { "FAIL" };
        failed += usize::from(!check.passed());
        println!(
            "{status} {}: expected {}, got {} (normal {:.2e}, tangential {:.2e}, |H| {:.3e})",
            e.name, check.expected, r.verdict, r.max_normal, r.max_tangential, r.max_h_norm
        );
    }
    println!("{} of {} entries verified", entries.len() - failed, entries.len());
    Ok(if failed == 0 { 0 } else { MISMATCH })
}

fn cmd_classify(n: i64, p: i64, c: &str) -> Result<u8> {
    let c: Rational64 = match c.trim().parse() {
        Ok(c) => c,
        Err(_) => bail!("C must be an integer or a fraction, got `{c}`"),
    };
    let r = classify_two_curvature(n, p, c)?;
    println!("{}", classify::render(&r));
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check(args) => cmd_check(&args),
        Command::Catalog(CatalogCommand::List) => cmd_catalog_list(),
        Command::Catalog(CatalogCommand::Check { name, overrides, .. }) => cmd_catalog_check(name.as_deref(), &overrides),
        Command::Classify { n, p, c } => cmd_classify(n, p, &c),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
