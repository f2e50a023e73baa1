//! Command-line front end: graph generation, exact solving, construction,
//! classification and the verification reports.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mopdom::exact::{Solver, DEFAULT_GUARD};
use mopdom::families::{canonical_mops, random_mop, FamilySpec};
use mopdom::io::{format_graphs, read_graphs};
use mopdom::report::{self, Format};
use mopdom::MopGraph;

#[derive(Parser)]
#[command(name = "mopdom", version, about = "k-component domination in maximal outerplanar graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Csv => Format::Csv,
            OutFormat::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Fan,
    Strip,
    StripMinus,
    Fig5,
    Fig6,
    Fig6Even,
    Random,
    /// Every canonical class of order `--n`.
    All,
}

#[derive(Args)]
struct Common {
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutFormat,
    /// Raise the exact solver's order limit (at most 64).
    #[arg(long)]
    guard_override: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Write graphs in the canonical file format.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact minimum k-component dominating set of each graph in a file.
    Solve {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Constructive set within the bound, with its branch trace.
    Construct {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Exceptional-family membership per k, as JSON lines.
    Classify {
        file: PathBuf,
        /// Only this k; every k with n >= 2k+1 when absent.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive maximum of gamma_k for orders up to `--n`.
    Table {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        /// Directory for the extremal graph files.
        #[arg(long)]
        extremal_dir: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive check of exact value, construction and family membership.
    Verify {
        /// Largest k.
        #[arg(long)]
        k: usize,
        /// Largest order.
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check gamma_k(n) against the closed formula.
    GammaFormula {
        #[arg(long)]
        k: usize,
        /// Comma-separated orders.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Largest order settled by exhaustive enumeration.
        #[arg(long, default_value_t = 13)]
        enum_limit: usize,
        /// Random graphs checked against the constructive bound per order.
        #[arg(long, default_value_t = 16)]
        samples: u64,
        #[command(flatten)]
        common: Common,
    },
}

type Failure = Box<dyn std::error::Error>;

fn solver(guard: Option<usize>) -> Result<Solver, Failure> {
    Ok(Solver::with_guard(guard.unwrap_or(DEFAULT_GUARD))?)
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn need(v: Option<usize>, flag: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| format!("--{flag} is required for this family").into())
}

#[allow(clippy::too_many_arguments)]
fn generate(
    family: Family,
    n: Option<usize>,
    m: Option<usize>,
    k: Option<usize>,
    s: Option<usize>,
    t: Option<usize>,
    seed: u64,
    count: u64,
) -> Result<Vec<MopGraph>, Failure> {
    let spec = match family {
        Family::Random => return Ok((0..count).map(|i| random_mop(n.unwrap_or(10), seed + i)).collect()),
        Family::All => {
            let n = need(n, "n")?;
            if n < 3 {
                return Err("--n must be at least 3".into());
            }
            return Ok(canonical_mops(n).iter().map(|c| c.graph()).collect());
        }
        Family::Fan => FamilySpec::Fan { n: need(n, "n")? },
        Family::Strip => FamilySpec::Strip { m: need(m, "m")? },
        Family::StripMinus => FamilySpec::StripMinus { m: need(m, "m")? },
        Family::Fig5 => FamilySpec::Fig5 { k: need(k, "k")?, s: need(s, "s")? },
        Family::Fig6 => FamilySpec::Fig6 { k: need(k, "k")?, s: need(s, "s")?, t: need(t, "t")? },
        Family::Fig6Even => FamilySpec::Fig6Even { k: need(k, "k")?, s: need(s, "s")?, t: need(t, "t")? },
    };
    Ok(vec![spec.build()?])
}

/// Runs one command; `Ok(false)` means it ran but a checked property failed.
fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Gen { family, n, m, k, s, t, seed, count, out } => {
            let graphs = generate(family, n, m, k, s, t, seed, count)?;
            emit(out.as_ref(), &format_graphs(&graphs))?;
            Ok(true)
        }
        Command::Solve { file, k, common } => {
            let graphs = read_graphs(&file)?;
            let rows = report::cmd_solve(&graphs, k, solver(common.guard_override)?)?;
            emit(common.out.as_ref(), &report::render_records(&rows, common.format.into())?)?;
            Ok(true)
        }
        Command::Construct { file, k, common } => {
            let graphs = read_graphs(&file)?;
            let rows = report::cmd_construct(&graphs, k)?;
            emit(common.out.as_ref(), &report::render_records(&rows, common.format.into())?)?;
            Ok(rows.iter().all(|r| r.holds()))
        }
        Command::Classify { file, k, out } => {
            let mut text = String::new();
            for g in read_graphs(&file)? {
                let ks: Vec<usize> = match k {
                    Some(k) => vec![k],
                    None => (1..=(g.order() - 1) / 2).collect(),
                };
                text += &report::render_records(&report::cmd_classify(&g, &ks)?, Format::Json)?;
            }
            emit(out.as_ref(), &text)?;
            Ok(true)
        }
        Command::Table { k, n, n_min, extremal_dir, common } => {
            if let Some(dir) = &extremal_dir {
                std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            }
            let (table, text) =
                report::cmd_table(k, n_min..=n, solver(common.guard_override)?, extremal_dir.as_deref(), common.format.into())?;
            emit(common.out.as_ref(), &text)?;
            Ok(table.monotonicity_violations().is_empty())
        }
        Command::Verify { k, n, common } => {
            let rep = report::cmd_verify(k, n, solver(common.guard_override)?)?;
            emit(common.out.as_ref(), &rep.render(common.format.into())?)?;
            for f in &rep.failures {
                eprintln!("failure: {f}");
            }
            eprintln!("{} rows, {} exceptional, {:.1?}", rep.rows.len(), rep.exceptional_rows().count(), rep.wall_time);
            Ok(rep.ok())
        }
        Command::GammaFormula { k, n, enum_limit, samples, common } => {
            let rows = report::cmd_gamma_formula(k, &n, solver(common.guard_override)?, enum_limit, samples)?;
            emit(common.out.as_ref(), &report::render_formula(&rows, common.format.into())?)?;
            Ok(rows.iter().all(|r| r.agrees))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
