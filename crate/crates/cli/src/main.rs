use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use fsplit_cli::{config_from_env, run, CliError, Command, Options};

/// Frobenius splitting numbers of quotients of polynomial rings.
#[derive(Parser)]
#[command(name = "fsplit", version)]
struct Cli {
    /// Leave the timestamp out of JSON output.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Print a plain-text table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// s_e at the origin for one e, or the sequence s_0..s_emax.
    Se {
        file: PathBuf,
        #[arg(long, required_unless_present = "emax", conflicts_with = "emax")]
        e: Option<u32>,
        #[arg(long)]
        emax: Option<u32>,
    },
    /// s_e at coordinate primes, with threshold and chain checks.
    Probe {
        file: PathBuf,
        /// Primes as variable lists separated by '|', e.g. "x | x,z".
        #[arg(long)]
        primes: Option<String>,
        #[arg(long)]
        e: u32,
        /// Comma-separated rationals r.
        #[arg(long, default_value = "0")]
        thresholds: String,
        /// Also check that dim + alpha is constant (needs both flags in the file).
        #[arg(long)]
        kunz: bool,
    },
    /// s_e through a socle generator of R/(sop).
    Gorenstein {
        file: PathBuf,
        /// Comma-separated system of parameters.
        #[arg(long)]
        sop: Option<String>,
        /// Socle generator to use instead of computing one.
        #[arg(long)]
        socle: Option<String>,
        #[arg(long)]
        e: u32,
    },
    #[command(hide = true)]
    Oracle {
        file: PathBuf,
        #[arg(long)]
        e: u32,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u128,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match go(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fsplit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn go(cli: Cli) -> Result<(), CliError> {
    let config = config_from_env(std::env::var("FSPLIT_BUDGET").ok().as_deref())?;
    let timestamp = (!cli.no_timestamp).then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    let (file, cmd) = match cli.cmd {
        Cmd::Se { file, e, emax } => (file, Command::Se { e, emax }),
        Cmd::Probe {
            file,
            primes,
            e,
            thresholds,
            kunz,
        } => (
            file,
            Command::Probe {
                primes,
                e,
                thresholds,
                kunz,
            },
        ),
        Cmd::Gorenstein { file, sop, socle, e } => (file, Command::Gorenstein { sop, socle, e }),
        Cmd::Oracle { file, e, budget } => (file, Command::Oracle { e, budget }),
    };
    let text = std::fs::read_to_string(&file)
        .map_err(|err| CliError::Usage(format!("cannot read {}: {err}", file.display())))?;
    let out = run(&text, &cmd, &Options { config, timestamp })?;
    if cli.table {
        print!("{}", out.to_table());
    } else {
        println!("{}", out.to_json());
    }
    Ok(())
}
