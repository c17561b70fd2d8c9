mod parse;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use resolvent_core::algebra::{PrimeSite, ProductRing};
use resolvent_core::invariants::NeLocus;
use resolvent_core::spectrum::SpecPoset;
use resolvent_core::verify::{Fault, Scale, VerifyConfig};
use resolvent_core::Error;

use parse::{load_complex, load_poset, load_ring, InputError};
use report::{Named, Report};

#[derive(Parser)]
#[command(name = "resolvent", version, about = "Homological invariants of perfect complexes over small rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(clap::Args)]
struct Opts {
    /// Ring description file.
    #[arg(long, global = true)]
    ring: Option<PathBuf>,
    /// Complex description file; repeatable.
    #[arg(long = "complex", global = true)]
    complexes: Vec<PathBuf>,
    /// Poset description file.
    #[arg(long, global = true)]
    poset: Option<PathBuf>,
    /// Designated site; repeatable where a set of sites is expected.
    #[arg(long = "site", global = true)]
    sites: Vec<usize>,
    /// Value cap for enumerations and chains.
    #[arg(long, global = true)]
    cap: Option<u32>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = ScaleArg::Default)]
    scale: ScaleArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Tiny,
    Default,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    DualSign,
}

#[derive(Subcommand)]
enum Command {
    /// pd, depth, gdim, homology and NE-locus of each complex.
    Invariants,
    /// Classifying data of the resolving closure of the complexes.
    Classify,
    /// Whether the last complex lies in the resolving closure of the others.
    Member,
    /// Fingerprint of the resolving closure of the complexes.
    Fingerprint,
    /// Shrink the NE-locus of one complex to the given sites.
    Shrink,
    /// Koszul chain witnesses at one site up to the cap.
    Chain,
    /// Maps, filtrations and classifying pairs of a poset.
    Enumerate,
    /// Run the property suite.
    Verify {
        /// Inject a deliberate fault to confirm the suite catches it.
        #[arg(long, value_enum)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Compute(#[from] Error),
    #[error("{path}: {source}")]
    Write { path: String, source: std::io::Error },
}

fn usage(msg: &str) -> CliError {
    CliError::Input(InputError::Usage(msg.to_string()))
}

struct Inputs {
    ring: Arc<ProductRing>,
    complexes: Vec<Named>,
}

/// Loads the ring and complexes. Without `--ring`, the first complex's own
/// `ring` line supplies the ring for all of them.
fn load_inputs(opts: &Opts, need_complex: bool) -> Result<Inputs, CliError> {
    let mut ring = opts.ring.as_deref().map(load_ring).transpose()?;
    let mut complexes = Vec::new();
    for path in &opts.complexes {
        let c = load_complex(path, ring.as_ref())?;
        ring.get_or_insert_with(|| c.ring().clone());
        complexes.push(Named { name: display(path), complex: c });
    }
    if need_complex && complexes.is_empty() {
        return Err(usage("at least one --complex is required"));
    }
    let ring = ring.ok_or_else(|| usage("--ring or a --complex with a ring line is required"))?;
    Ok(Inputs { ring, complexes })
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

fn site(opts: &Opts) -> Option<PrimeSite> {
    opts.sites.first().map(|&s| PrimeSite(s))
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let opts = &cli.opts;
    let seed = opts.seed;
    let report = match &cli.command {
        Command::Invariants => {
            let inp = load_inputs(opts, true)?;
            report::invariants(&inp.ring, &inp.complexes, site(opts), seed)?
        }
        Command::Classify => {
            let inp = load_inputs(opts, false)?;
            report::classify(&inp.ring, &inp.complexes, seed)?
        }
        Command::Fingerprint => {
            let inp = load_inputs(opts, false)?;
            report::fingerprint_report(&inp.ring, &inp.complexes, seed)?
        }
        Command::Member => {
            let inp = load_inputs(opts, true)?;
            report::member(&inp.ring, &inp.complexes, site(opts), opts.cap.map(i64::from), seed)?
        }
        Command::Shrink => {
            let inp = load_inputs(opts, true)?;
            if inp.complexes.len() != 1 {
                return Err(usage("shrink takes exactly one --complex"));
            }
            for &s in &opts.sites {
                inp.ring.check_site(PrimeSite(s))?;
            }
            let w: NeLocus = opts.sites.iter().map(|&s| PrimeSite(s)).collect();
            report::shrink(&inp.ring, &inp.complexes[0], &w, seed)?
        }
        Command::Chain => {
            let inp = load_inputs(opts, false)?;
            let s = site(opts).ok_or_else(|| usage("chain needs --site"))?;
            report::chain(&inp.ring, s, i64::from(opts.cap.unwrap_or(4)), seed)?
        }
        Command::Enumerate => {
            let poset = match (&opts.poset, &opts.ring) {
                (Some(p), _) => Some(load_poset(p)?),
                (None, Some(r)) => Some(SpecPoset::from_ring(load_ring(r)?.as_ref())),
                (None, None) => None,
            };
            match poset {
                Some(p) => report::enumerate(&p, opts.cap.unwrap_or(3), seed)?,
                None => report::poset_counts(opts.cap.unwrap_or(4) as usize, seed)?,
            }
        }
        Command::Verify { inject_fault } => {
            let scale = match opts.scale {
                ScaleArg::Tiny => Scale::Tiny,
                ScaleArg::Default => Scale::Default,
                ScaleArg::Full => Scale::Full,
            };
            let fault = inject_fault.map(|f| match f {
                FaultArg::DualSign => Fault::DualSign,
            });
            report::verify(VerifyConfig { scale, seed, fault })
        }
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &cli.opts.out {
        Some(path) => {
            if let Err(source) = fs::write(path, &report.text) {
                eprintln!("error: {}", CliError::Write { path: display(path), source });
                return ExitCode::from(2);
            }
        }
        None => print!("{}", report.text),
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
