use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use suq2::params::{DEFAULT_T, DEFAULT_TOL};
use suq2::report::{self, Format, Report, RunConfig, Suite, DEFAULT_TWICE_N_MAX};
use suq2::{Error, RepIndex};

const EXIT_FAILED_CHECK: u8 = 1;
const EXIT_INVALID_CONFIG: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "suq2", version, allow_negative_numbers = true, about = "Build and verify the discrete quantum group su_q(2) and its compact dual")]
struct Cli {
    /// Deformation parameter; lambda = exp(t).
    #[arg(long, global = true, default_value_t = DEFAULT_T, env = "SUQ2_T")]
    t: f64,

    /// Largest spin, as a doubled integer (10 means spin 5).
    #[arg(long, global = true, default_value_t = DEFAULT_TWICE_N_MAX, env = "SUQ2_NMAX")]
    nmax: u32,

    #[arg(long, global = true, default_value_t = DEFAULT_TOL, env = "SUQ2_TOL_ABS")]
    tol_abs: f64,

    #[arg(long, global = true, default_value_t = DEFAULT_TOL, env = "SUQ2_TOL_REL")]
    tol_rel: f64,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json, env = "SUQ2_FORMAT")]
    format: FormatArg,

    /// Output file (JSON) or directory (CSV, and `tables`). Defaults to stdout;
    /// `tables` defaults to `./tables`.
    #[arg(long, global = true, env = "SUQ2_OUT")]
    out: Option<PathBuf>,

    /// Seed for the randomized batteries.
    #[arg(long, global = true, default_value_t = 0, env = "SUQ2_SEED")]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// r_j, generator matrices and Casimir scalar of pi_n (argument is 2n).
    Rep { twice_n: u32 },
    /// Clebsch-Gordan decomposition of pi_n (x) pi_m (arguments are 2n, 2m).
    Cg { twice_n: u32, twice_m: u32 },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
    /// Write integral, modular element, Delta(h) and dual Haar tables.
    Tables,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Hopf,
    Reps,
    Clebsch,
    Dqg,
    Dual,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Hopf => Suite::Hopf,
            SuiteArg::Reps => Suite::Reps,
            SuiteArg::Clebsch => Suite::Clebsch,
            SuiteArg::Dqg => Suite::Dqg,
            SuiteArg::Dual => Suite::Dual,
            SuiteArg::All => Suite::All,
        }
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let config = RunConfig {
        t: cli.t,
        n_max: cli.nmax,
        tol_abs: cli.tol_abs,
        tol_rel: cli.tol_rel,
        format: match cli.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        },
        seed: cli.seed,
        out: cli.out,
    };
    config.params()?;
    let report: Report = match cli.command {
        Command::Rep { twice_n } => report::cmd_rep(&config, RepIndex::from_twice(twice_n))?,
        Command::Cg { twice_n, twice_m } => {
            report::cmd_cg(&config, RepIndex::from_twice(twice_n), RepIndex::from_twice(twice_m))?
        }
        Command::Verify { suite } => report::cmd_verify(&config, suite.into())?,
        Command::Tables => {
            let report = report::cmd_tables(&config)?;
            let dir = config.out.clone().unwrap_or_else(|| PathBuf::from("tables"));
            for path in report::write_tables(&report, config.format, &dir)? {
                eprintln!("wrote {}", path.display());
            }
            let summary = Report { tables: Vec::new(), ..report.clone() };
            summary.emit(config.format, None)?;
            return Ok(report.pass);
        }
    };
    report.emit(config.format, config.out.as_deref())?;
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED_CHECK),
        Err(e @ Error::InvalidParams(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID_CONFIG)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAILED_CHECK)
        }
    }
}
