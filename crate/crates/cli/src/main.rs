//! `cube-sections`: certified reports on diagonal sections of the unit cube.
//!
//! Exit codes: 0 success, 1 computation failure, 2 parse error, 3 domain error.
//! Whatever was computed before a failure is still written, followed by the
//! status record.

mod commands;
mod format;
mod output;

use clap::{Args, Parser, Subcommand};
use cube_sections::numeric::parse_rational;
use cube_sections::Rational;
use format::Digits;
use output::{write_report, Format, Status};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "cube-sections", version, about = "Certified diagonal sections of the unit hypercube")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Working precision of interval enclosures, in bits.
    #[arg(long = "precision", global = true, env = "CUBE_SECTIONS_PRECISION", default_value_t = 128,
          value_parser = clap::value_parser!(u32).range(64..=65536))]
    pub precision_bits: u32,
    /// Fractional digits of every decimal string.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=200))]
    pub digits: u32,
    /// Absolute tolerance of numerical quadrature.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tolerance: f64,
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

impl Global {
    pub fn digits(&self) -> Digits {
        Digits { digits: self.digits as usize, bits: self.precision_bits }
    }
}

/// `p/q` or a finite decimal; floats such as `1e-3` are rejected.
pub fn exact_t(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact value of I_d(t) with a decimal enclosure.
    Eval {
        #[arg(long)]
        d: u32,
        #[arg(long, value_parser = exact_t, allow_hyphen_values = true)]
        t: Rational,
        /// Also report quadrature and, for large d, estimate-envelope membership.
        #[arg(long)]
        oracle: bool,
    },
    /// Certified brackets of the named constants.
    Constants,
    /// Sign certificates for I_{d+1} - I_d, or the monotonicity verdict at one t.
    Monotonicity(commands::MonotonicityArgs),
    /// Which dimension attains the supremum and infimum over d.
    Supinf(commands::GridArgs),
    /// Local extremality of the section through an n-face of the d-cube.
    Extremality {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, value_parser = exact_t, allow_hyphen_values = true)]
        t: Rational,
    },
    /// Eulerian rows and the normality and step checks.
    Eulerian(commands::EulerianArgs),
    /// Extremality verdicts for every face dimension 4..=n_max at one t.
    Sweep {
        #[arg(long, value_parser = exact_t, allow_hyphen_values = true)]
        t: Rational,
        #[arg(long, default_value_t = 200)]
        n_max: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Constants => "constants",
            Command::Monotonicity(_) => "monotonicity",
            Command::Supinf(_) => "supinf",
            Command::Extremality { .. } => "extremality",
            Command::Eulerian(_) => "eulerian",
            Command::Sweep { .. } => "sweep",
        }
    }
}

fn main() -> ExitCode {
    // clap exits with code 2 on malformed arguments, including bad `t`
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let mut records = Vec::new();
    let result = commands::run(&cli.command, &cli.global, &mut records);
    let status = match &result {
        Ok(()) => Status { ok: true, exit_code: 0, error: None },
        Err(e) => Status { ok: false, exit_code: e.exit_code(), error: Some(e.to_string()) },
    };
    let mut sink: Box<dyn Write> = match &cli.global.output {
        Some(path) => match std::fs::File::create(path) {
            Ok(f) => Box::new(std::io::BufWriter::new(f)),
            Err(e) => {
                eprintln!("cube-sections: cannot create {}: {e}", path.display());
                return ExitCode::from(1);
            }
        },
        None => Box::new(std::io::stdout().lock()),
    };
    if let Err(e) = write_report(&mut *sink, cli.global.format, cli.command.name(), &records, &status).and_then(|_| sink.flush()) {
        eprintln!("cube-sections: write failed: {e}");
        return ExitCode::from(1);
    }
    if let Some(msg) = &status.error {
        eprintln!("cube-sections: {msg}");
    }
    ExitCode::from(status.exit_code as u8)
}
