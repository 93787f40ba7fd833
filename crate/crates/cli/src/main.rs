//! `nullray`: command-line access to the null X-ray transform library.
//!
//! Exit codes: 0 ok, 1 usage or input error, 2 verification failure,
//! 3 undecided result.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nullray_core::diophantine::DEFAULT_SEARCH_BOUND;
use nullray_core::Signature;

#[derive(Debug, Parser)]
#[command(
    name = "nullray",
    version,
    about = "Null X-ray transforms on tori and restricted-direction X-ray transforms"
)]
struct Cli {
    /// Emit line-delimited JSON records instead of tables.
    #[arg(long, global = true)]
    records: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate membership in K for every frequency of a box.
    #[command(name = "kset")]
    Kset {
        #[command(flatten)]
        signature: SignatureArg,
        /// Box radius: max |entry| of the frequencies.
        #[arg(long = "box", value_name = "R", value_parser = clap::value_parser!(i64).range(1..))]
        freq_box: i64,
        /// Max-norm bound for the brute-force witness search.
        #[arg(long, value_name = "B", default_value_t = DEFAULT_SEARCH_BOUND, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
    },
    /// Decide one frequency and print its null witness.
    #[command(name = "witness")]
    Witness {
        #[command(flatten)]
        signature: SignatureArg,
        /// Frequency coordinates `k_1 … k_n1 p_1 … p_n2`.
        #[arg(required = true, allow_negative_numbers = true, value_name = "COORD")]
        coords: Vec<i64>,
        #[arg(long, value_name = "B", default_value_t = DEFAULT_SEARCH_BOUND, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        /// For a frequency outside K, print the single-frequency kernel
        /// element and check it against every direction up to `--bound`.
        #[arg(long)]
        kernel: bool,
    },
    /// Transform a trigonometric polynomial along closed null geodesics.
    #[command(name = "transform")]
    Transform {
        /// Polynomial file, `-` for stdin.
        input: PathBuf,
        /// Direction list file; defaults to every primitive direction up to `--bound`.
        #[arg(long, value_name = "FILE")]
        directions: Option<PathBuf>,
        #[arg(long, value_name = "B", default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        /// Evaluate at the geodesics through this offset and cross-check by quadrature.
        #[arg(long, num_args = 1.., allow_negative_numbers = true, value_name = "X")]
        offset: Option<Vec<f64>>,
        /// Quadrature cross-check tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        /// Exact rational coefficients.
        #[arg(long)]
        exact: bool,
    },
    /// Recover Fourier coefficients from transform data.
    #[command(name = "recover")]
    Recover {
        /// Transform data file as written by `transform`, `-` for stdin.
        input: PathBuf,
        #[arg(long = "box", value_name = "R", value_parser = clap::value_parser!(i64).range(1..))]
        freq_box: i64,
        #[arg(long)]
        exact: bool,
    },
    /// Fourier-slice check of a grid field or a sampled Gaussian.
    #[command(name = "slice_check", alias = "slice-check")]
    SliceCheck {
        /// Grid file; without it a standard Gaussian is sampled.
        input: Option<PathBuf>,
        /// Line direction (normalized before use).
        #[arg(long, num_args = 1.., required = true, allow_negative_numbers = true, value_name = "V")]
        direction: Vec<f64>,
        /// Centre of the sampled Gaussian.
        #[arg(long, num_args = 1.., allow_negative_numbers = true, value_name = "X")]
        shift: Option<Vec<f64>>,
        #[arg(long, default_value_t = 256)]
        size: usize,
        #[arg(long, default_value_t = 4.0)]
        half_width: f64,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Test whether a point lies in the normal bundle of a direction set.
    #[command(name = "normal_bundle", alias = "normal-bundle")]
    NormalBundle {
        /// Direction set file (`finite`, `arc` or `lightcone` records).
        #[arg(
            long,
            value_name = "FILE",
            required_unless_present = "n1n2",
            conflicts_with = "n1n2"
        )]
        directions: Option<PathBuf>,
        /// Light cone of this signature instead of a file.
        #[arg(long = "signature", id = "n1n2", num_args = 2, value_names = ["N1", "N2"])]
        signature: Option<Vec<usize>>,
        #[arg(long, num_args = 1.., required = true, allow_negative_numbers = true, value_name = "X")]
        point: Vec<f64>,
        /// For an arc, also print and verify an interior normal point.
        #[arg(long)]
        certificate: bool,
    },
    /// Compare bounded solvability with the sum-of-squares predicate in
    /// signature (n1, 1), n1 ≥ 4.
    #[command(name = "scan")]
    Scan {
        #[command(flatten)]
        signature: SignatureArg,
        #[arg(long = "box", value_name = "R", default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
        freq_box: i64,
        #[arg(long, value_name = "B", default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
    },
}

#[derive(Debug, Args)]
struct SignatureArg {
    #[arg(long = "signature", num_args = 2, required = true, value_names = ["N1", "N2"])]
    values: Vec<usize>,
}

impl SignatureArg {
    fn get(&self) -> anyhow::Result<Signature> {
        Ok(Signature::new(self.values[0], self.values[1])?)
    }
}

/// How a command finished when it did not hit an input error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    VerificationFailed,
    Unknown,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Self::Ok => 0,
            Self::VerificationFailed => 2,
            Self::Unknown => 3,
        }
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<Status> {
    let records = cli.records;
    match cli.command {
        Command::Kset {
            signature,
            freq_box,
            bound,
        } => commands::kset(signature.get()?, freq_box, bound, records, out),
        Command::Witness {
            signature,
            coords,
            bound,
            kernel,
        } => commands::witness(signature.get()?, &coords, bound, kernel, records, out),
        Command::Transform {
            input,
            directions,
            bound,
            offset,
            tolerance,
            exact,
        } => {
            let args = commands::TransformArgs {
                input: &input,
                directions: directions.as_deref(),
                bound,
                offset: offset.as_deref(),
                tolerance,
                records,
            };
            if exact {
                commands::transform::<nullray_core::torus::ExactComplex>(&args, out)
            } else {
                commands::transform::<nullray_core::Complex64>(&args, out)
            }
        }
        Command::Recover {
            input,
            freq_box,
            exact,
        } => {
            if exact {
                commands::recover::<nullray_core::torus::ExactComplex>(
                    &input, freq_box, records, out,
                )
            } else {
                commands::recover::<nullray_core::Complex64>(&input, freq_box, records, out)
            }
        }
        Command::SliceCheck {
            input,
            direction,
            shift,
            size,
            half_width,
            tolerance,
        } => commands::slice_check(
            &commands::SliceArgs {
                input: input.as_deref(),
                direction: &direction,
                shift: shift.as_deref(),
                size,
                half_width,
                tolerance,
            },
            records,
            out,
        ),
        Command::NormalBundle {
            directions,
            signature,
            point,
            certificate,
        } => {
            let light_cone = match signature {
                Some(s) => Some(Signature::new(s[0], s[1])?),
                None => None,
            };
            commands::normal_bundle(
                directions.as_deref(),
                light_cone,
                &point,
                certificate,
                records,
                out,
            )
        }
        Command::Scan {
            signature,
            freq_box,
            bound,
        } => commands::scan(signature.get()?, freq_box, bound, records, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(status) => {
            let _ = out.flush();
            ExitCode::from(status.code())
        }
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
