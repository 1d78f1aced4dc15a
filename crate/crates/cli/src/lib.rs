//! Command-line front end: argument parsing, dispatch and exit codes.

pub mod commands;
pub mod report;

use clap::{Parser, Subcommand};

use report::{Format, RunReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ANOMALY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "prinseries", version, about = "Distinction checks for principal series of GL(n) over quadratic extensions")]
pub struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,

    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, env = "PRINSERIES_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide distinction and η-distinction of a principal series.
    Distinguish {
        /// `unram:p=<p>[,f=<f>]` or `ram:p=<p>,u0=<k>[,f=<f>]`.
        #[arg(long)]
        ext: String,
        /// `;`-separated characters `c=<int>[,phase=<a>/<b>][,mag=<a>/<b>]`.
        #[arg(long)]
        chars: String,
    },
    /// Search for σ-self-dual data that are neither distinguished nor η-distinguished.
    Counterexample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ext: String,
        #[arg(long, default_value_t = 8)]
        budget: usize,
    },
    /// γ(μχ)·γ(μ^{-σ}χ) over all tame χ trivial on F*.
    Gamma {
        #[arg(long)]
        ext: String,
        #[arg(long)]
        mu: String,
    },
    /// Borel orbits on the finite symmetric space.
    Orbits {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        full_enum: bool,
        #[arg(long, default_value_t = 0)]
        random_checks: usize,
    },
    /// Length-sorted Bruhat cells and the closure check.
    Cells {
        #[arg(long)]
        n: usize,
    },
}

/// Runs a parsed command. Returns the rendered report (or diagnostic) and the exit code.
pub fn execute(cli: &Cli) -> (String, i32) {
    let result: prinseries_core::Result<RunReport> = match &cli.command {
        Command::Distinguish { ext, chars } => commands::distinguish(ext, chars),
        Command::Counterexample { n, ext, budget } => commands::counterexample(*n, ext, *budget),
        Command::Gamma { ext, mu } => commands::gamma(ext, mu),
        Command::Orbits {
            n,
            q,
            full_enum,
            random_checks,
        } => commands::orbits(&commands::OrbitOptions {
            n: *n,
            q: *q,
            full_enum: *full_enum,
            random_checks: *random_checks,
            seed: cli.seed,
        }),
        Command::Cells { n } => commands::cells(*n),
    };
    match result {
        Ok(report) => {
            let code = if report.all_pass() { EXIT_OK } else { EXIT_ANOMALY };
            (report.render(cli.format), code)
        }
        Err(e) => (format!("error: {e}\n"), commands::exit_code(&e)),
    }
}

/// Parses `args` (including the program name) and runs.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            (e.render().to_string(), code)
        }
    }
}
