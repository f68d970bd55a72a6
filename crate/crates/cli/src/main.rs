//! Batch front door: generate the objective, solve a system through either
//! route, run the quantum emulation, emit energy curves, or verify against
//! the embedded reference data.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use clap::{Parser, Subcommand};
use moleig_cli::commands::{self, CommandError, OutputFormat};
use moleig_cli::verify;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "moleig",
    about = "Molecular structure optimization as polynomial eigenproblems",
    version
)]
struct Cli {
    /// Directory for output artifacts (manifest.json included).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format for solution listings.
    #[arg(long, global = true, default_value = "table")]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the energy objective polynomial and diff it against the
    /// embedded reference.
    Generate {
        /// Expansion center (decimal or fraction, e.g. 1.8 or 9/5).
        #[arg(long)]
        rc: Option<String>,
        /// Taylor order in the bond length.
        #[arg(long)]
        order: Option<usize>,
        /// Decimal scale exponent n (0 keeps float coefficients).
        #[arg(long = "scale-exp")]
        scale_exp: Option<u32>,
        /// basis.cfg with key=value overrides (c1..c3, a1..a3, zeta, rc,
        /// order, n).
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Solve a polynomial system for all roots.
    Solve {
        /// groebner | macaulay
        route: String,
        /// System file (one polynomial per line); omit for the built-in
        /// default.
        system: Option<PathBuf>,
        /// Built-in system: h3 | two-level.
        #[arg(long)]
        builtin: Option<String>,
        /// Macaulay degree.
        #[arg(long, default_value_t = 16)]
        degree: u32,
        /// Comma-separated degrees: run a sweep and write sweep.csv and
        /// roots.csv (macaulay route).
        #[arg(long)]
        sweep: Option<String>,
        /// Write the Macaulay matrix as `row col value` triplet text.
        #[arg(long = "export-matrix", default_value_t = false)]
        export_matrix: bool,
        /// Pivot variable.
        #[arg(long, default_value = "x")]
        pivot: String,
    },
    /// Run the emulated quantum pipeline.
    Qpe {
        /// groebner | macaulay
        #[arg(long)]
        route: Option<String>,
        /// Phase bits per coordinate.
        #[arg(long)]
        bits: Option<usize>,
        /// Macaulay degree.
        #[arg(long)]
        degree: Option<u32>,
        /// Pipeline config file (key=value).
        #[arg(long)]
        config: Option<PathBuf>,
        /// System file; omit for the built-in default.
        system: Option<PathBuf>,
        /// Built-in system: h3 | two-level.
        #[arg(long)]
        builtin: Option<String>,
    },
    /// Emit the exact / series / rationalized energy curves as CSV.
    EnergyCurve {
        #[arg(long, default_value_t = 1.0)]
        min: f64,
        #[arg(long, default_value_t = 4.0)]
        max: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// basis.cfg overrides.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Check computed artifacts against the embedded reference tables.
    Verify {
        /// Comma-separated check ids (e.g. T1,T7,CURVE); default runs all.
        #[arg(long)]
        only: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format: OutputFormat = match cli.format.parse() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match cli.command {
        Command::Generate {
            rc,
            order,
            scale_exp,
            config,
        } => commands::cmd_generate(&commands::GenerateArgs {
            rc,
            order,
            scale_exp,
            config,
            out: cli.out,
        }),
        Command::Solve {
            route,
            system,
            builtin,
            degree,
            sweep,
            export_matrix,
            pivot,
        } => {
            let sweep = match sweep {
                None => None,
                Some(s) => {
                    let parsed: Result<Vec<u32>, _> =
                        s.split(',').map(|x| x.trim().parse::<u32>()).collect();
                    match parsed {
                        Ok(v) => Some(v),
                        Err(_) => {
                            eprintln!("error: --sweep expects comma-separated degrees");
                            return ExitCode::from(2);
                        }
                    }
                }
            };
            commands::cmd_solve(&commands::SolveArgs {
                route,
                system,
                builtin,
                degree,
                sweep,
                export_matrix,
                pivot,
                format,
                out: cli.out,
            })
        }
        Command::Qpe {
            route,
            bits,
            degree,
            config,
            system,
            builtin,
        } => commands::cmd_qpe(&commands::QpeArgs {
            route,
            bits,
            degree,
            config,
            system,
            builtin,
            format,
            out: cli.out,
        }),
        Command::EnergyCurve {
            min,
            max,
            step,
            config,
        } => commands::cmd_energy_curve(&commands::CurveArgs {
            min,
            max,
            step,
            config,
            out: cli.out,
        }),
        Command::Verify { only } => {
            let filter: Option<Vec<String>> =
                only.map(|s| s.split(',').map(|x| x.trim().to_string()).collect());
            let verifier = verify::Verifier::new();
            let results = verifier.run(filter.as_deref());
            let (report, all_pass) = verify::render(&results);
            print!("{report}");
            return if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match result {
        Ok(output) => {
            print!("{}", output.report);
            ExitCode::SUCCESS
        }
        Err(CommandError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
