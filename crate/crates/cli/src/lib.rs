//! The `knsub` command line: classify submodules, print closure spectra, run the
//! property suite, hunt counterexamples and query the `cZ ⊆ Z` engine.

mod commands;
pub mod output;

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use knsub_core::AlgebraError;
use knsub_harness::HarnessError;
use thiserror::Error;

use output::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser)]
#[command(name = "knsub", version, about = "(k,n)-closed submodules of finite modules over Z/mZ")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closure spectrum of one submodule over the grid 1 ≤ k,n ≤ K.
    Spectrum {
        /// Ring, as `zmod:m`.
        #[arg(long)]
        ring: String,
        /// Cyclic orders `d1,d2,…` of M; defaults to `m`.
        #[arg(long)]
        factors: Option<String>,
        /// Generators `a,b;c,d`; empty means the zero submodule.
        #[arg(long, default_value = "")]
        gens: String,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// One row per proper submodule of M.
    Classify {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        factors: Option<String>,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
        #[arg(long, default_value_t = 3)]
        nabs_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run the property suite. Exit 0 when the verified tier is clean, 1 otherwise.
    Verify {
        /// Catalog JSON; the shipped catalog when omitted.
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
        #[arg(long, default_value_t = 3)]
        nabs_max: u32,
        #[arg(long, value_enum, default_value_t = TierArg::All)]
        tier: TierArg,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// First failing instance of a property or named claim.
    Hunt {
        #[arg(long)]
        property: String,
        #[arg(long, default_value_t = 100)]
        bound: u64,
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Predicates on cZ ⊆ Z.
    Zint {
        #[arg(long)]
        c: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, value_enum)]
        predicate: ZintPredicate,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TierArg {
    Verified,
    Scrutiny,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ZintPredicate {
    KnClosed,
    SemiN,
    NAbsorbing,
    IdealKn,
    TknCondition,
}

fn run(cli: Cli) -> Result<(output::Document, Format, bool), CliError> {
    let cap = commands::module_cap()?;
    Ok(match cli.command {
        Command::Spectrum { ring, factors, gens, kmax, format } => {
            (commands::spectrum(&ring, factors.as_deref(), &gens, kmax, cap)?, format, true)
        }
        Command::Classify { ring, factors, kmax, nabs_max, format } => {
            (commands::classify(&ring, factors.as_deref(), kmax, nabs_max, cap)?, format, true)
        }
        Command::Verify { catalog, kmax, nabs_max, tier, jobs, format } => {
            let (doc, clean) = commands::verify(catalog.as_deref(), kmax, nabs_max, tier, jobs, cap)?;
            (doc, format, clean)
        }
        Command::Hunt { property, bound, catalog, format } => {
            (commands::hunt(&property, bound, catalog.as_deref(), cap)?, format, true)
        }
        Command::Zint { c, k, n, predicate, format } => (commands::zint(c, k, n, predicate)?, format, true),
    })
}

/// What one invocation prints and its exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Run `knsub` on `args` (program name first) without touching the process streams.
/// Exit codes: 0 clean, 1 verified-tier counterexample, 2 usage or input error.
pub fn execute<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Invocation { code, stdout, stderr };
        }
    };
    match run(cli) {
        Ok((doc, format, clean)) => Invocation {
            code: if clean { 0 } else { 1 },
            stdout: format!("{}\n", doc.render(format).trim_end()),
            stderr: String::new(),
        },
        Err(e) => Invocation { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
