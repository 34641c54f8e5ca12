use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fewqma_cli::commands::{
    cmd_claims, cmd_gen, cmd_horn, cmd_reduce, cmd_spectrum, ReduceConfig, SpectrumConfig,
};
use fewqma_cli::config::{
    ClaimsConfig, HornConfig, InstanceConfig, Kind, OutputFormat, DEFAULT_TOLERANCE,
};
use fewqma_cli::report::RunReport;
use fewqma_cli::ConfigError;

/// Exact simulator for few-witness quantum verification and its reduction to
/// a unique witness: claim suites, planted instances, the oracle reduction,
/// spectra, and majorization bounds, with seeded, reproducible JSON/CSV
/// reports.
#[derive(Parser)]
#[command(name = "fewqma", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the subspace identities, dimension traces, and witness claims.
    Claims {
        /// Local dimension K of each register.
        #[arg(long, default_value_t = 4)]
        k: usize,
        /// Witness subspace dimension d.
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Tensor copies t.
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Master seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random subspaces per configuration.
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// Residual tolerance for derived checks.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        /// Corrupt one projector before checking (negative control).
        #[arg(long)]
        corrupt: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Plant instances and run the oracle reduction end to end.
    Reduce {
        /// Witness qubits.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Auxiliary qubits.
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Planted witness dimension (yes instances).
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Witness-count bound q.
        #[arg(long, default_value_t = 3)]
        q: usize,
        /// Amplification exponent r.
        #[arg(long, default_value_t = 8)]
        r: u32,
        /// Instance kind to plant.
        #[arg(long, value_enum, default_value_t = Kind::Yes)]
        kind: Kind,
        /// Master seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of planted instances.
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Residual tolerance for derived checks.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the spectra of a verifier (from a file or a planted instance).
    Spectrum {
        /// Verifier file; a planted instance is generated when absent.
        file: Option<PathBuf>,
        /// Witness qubits (planted mode).
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Auxiliary qubits (planted mode).
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Planted witness dimension (planted yes mode).
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Witness-count bound q (planted mode).
        #[arg(long, default_value_t = 3)]
        q: usize,
        /// Amplification exponent r (planted mode).
        #[arg(long, default_value_t = 8)]
        r: u32,
        /// Instance kind (planted mode).
        #[arg(long, value_enum, default_value_t = Kind::Yes)]
        kind: Kind,
        /// Copies count for the combined-operator spectrum.
        #[arg(long)]
        t: Option<usize>,
        /// Master seed (planted mode).
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Residual tolerance for derived checks.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Majorization suite and witness eigenvalue bounds.
    Horn {
        /// Random Hermitian trials.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Master seed.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Residual tolerance.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Generate a planted verifier file.
    Gen {
        /// Witness qubits.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Auxiliary qubits.
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Planted witness dimension (yes instances).
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Witness-count bound q.
        #[arg(long, default_value_t = 3)]
        q: usize,
        /// Amplification exponent r.
        #[arg(long, default_value_t = 8)]
        r: u32,
        /// Instance kind to plant.
        #[arg(long, value_enum, default_value_t = Kind::Yes)]
        kind: Kind,
        /// Master seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Path of the verifier file to write.
        #[arg(long)]
        out: PathBuf,
    },
}

fn instance_config(
    k: usize,
    m: usize,
    d: usize,
    q: usize,
    r: u32,
    kind: Kind,
    seed: u64,
) -> InstanceConfig {
    InstanceConfig {
        witness_qubits: k,
        aux_qubits: m,
        witness_dim: d,
        witness_bound: q,
        amplification_exponent: r,
        kind,
        seed,
    }
}

fn run(cli: Cli) -> Result<(RunReport, Option<OutputArgs>), ConfigError> {
    match cli.command {
        Command::Claims {
            k,
            d,
            t,
            seed,
            trials,
            tol,
            corrupt,
            output,
        } => {
            let cfg = ClaimsConfig {
                local_dim: k,
                witness_dim: d,
                copies: t,
                seed,
                trials,
                tolerance: tol,
                corrupt,
            };
            Ok((cmd_claims(&cfg)?, Some(output)))
        }
        Command::Reduce {
            k,
            m,
            d,
            q,
            r,
            kind,
            seed,
            trials,
            tol,
            output,
        } => {
            let cfg = ReduceConfig {
                instance: instance_config(k, m, d, q, r, kind, seed),
                trials,
                tolerance: tol,
            };
            Ok((cmd_reduce(&cfg)?, Some(output)))
        }
        Command::Spectrum {
            file,
            k,
            m,
            d,
            q,
            r,
            kind,
            t,
            seed,
            tol,
            output,
        } => {
            let cfg = SpectrumConfig {
                source: file,
                instance: instance_config(k, m, d, q, r, kind, seed),
                copies: t,
                tolerance: tol,
            };
            Ok((cmd_spectrum(&cfg)?, Some(output)))
        }
        Command::Horn {
            trials,
            seed,
            tol,
            output,
        } => {
            let cfg = HornConfig {
                trials,
                seed,
                tolerance: tol,
            };
            Ok((cmd_horn(&cfg)?, Some(output)))
        }
        Command::Gen {
            k,
            m,
            d,
            q,
            r,
            kind,
            seed,
            out,
        } => {
            let cfg = instance_config(k, m, d, q, r, kind, seed);
            let report = cmd_gen(&cfg, &out)?;
            // The verifier file goes to --out; the report goes to stdout.
            Ok((report, None))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, output)) => {
            let (format, out) = match &output {
                Some(args) => (args.format, args.out.as_deref()),
                None => (OutputFormat::Json, None),
            };
            if let Err(err) = report.write(format, out) {
                eprintln!("error: {err}");
                return ExitCode::from(2);
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
