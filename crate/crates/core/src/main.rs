use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use orbitcheck::cli::{self, Command, OutputFormat, RunConfig};

/// Exact verification of orbit-level trace identities for double covers of
/// curves over finite fields.
#[derive(Parser)]
#[command(name = "orbitcheck", version, about)]
struct Args {
    #[command(subcommand)]
    command: CliCommand,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Tsv)]
    format: FormatArg,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Raise the cap consulted by the subcommand (tensor size for
    /// verify-identity and spectrum, shape degree and tensor size for
    /// curve-report, field size for census).
    #[arg(long, global = true)]
    cap_override: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Tsv,
    Text,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Check the trace identity for every cycle type of S_{2d}, d <= d-max.
    VerifyIdentity {
        #[arg(long)]
        d_max: usize,
        #[arg(long)]
        r_max: usize,
    },
    /// Compare both distributions on every divisor shape of a curve config.
    CurveReport {
        /// Path to a curve config file (TOML: q, zeta_numerator, eta_numerator).
        #[arg(long)]
        curve: PathBuf,
        /// Half-degree of the divisors to enumerate (shapes have degree 2d).
        #[arg(long)]
        d: Option<usize>,
        /// Sweep all half-degrees 0..=d-max instead.
        #[arg(long)]
        d_max: Option<usize>,
        #[arg(long)]
        r_max: usize,
    },
    /// Recompute the spectrum of the flip operator on each isotypic block.
    Spectrum {
        #[arg(long)]
        n: usize,
    },
    /// Double-coset census of the invariant map over PGL_2(F_q).
    Census {
        #[arg(long)]
        q: u64,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let format = match args.format {
        FormatArg::Tsv => OutputFormat::Tsv,
        FormatArg::Text => OutputFormat::Text,
    };
    let command = match build_command(args.command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut cfg = RunConfig::new(command);
    cfg.format = format;
    if let Some(cap) = args.cap_override {
        cfg.tensor_cap = cap as usize;
        cfg.shape_degree_cap = cap as usize;
        cfg.census_q_cap = cap;
    }
    let outcome = match cli::run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let write_result = match &args.out {
        Some(path) => std::fs::write(path, &outcome.output),
        None => {
            print!("{}", outcome.output);
            Ok(())
        }
    };
    if let Err(e) = write_result {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if outcome.violations > 0 {
        eprintln!("{} violation(s) found", outcome.violations);
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}

fn build_command(cmd: CliCommand) -> Result<Command, orbitcheck::Error> {
    Ok(match cmd {
        CliCommand::VerifyIdentity { d_max, r_max } => Command::VerifyIdentity { d_max, r_max },
        CliCommand::CurveReport {
            curve,
            d,
            d_max,
            r_max,
        } => {
            let config_text = std::fs::read_to_string(&curve)?;
            Command::CurveReport {
                config_text,
                d,
                d_max,
                r_max,
            }
        }
        CliCommand::Spectrum { n } => Command::Spectrum { n },
        CliCommand::Census { q } => Command::Census { q },
    })
}
