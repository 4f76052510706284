//! `cyclat` — ideal matrices, cyclic lattices, and smoothing reports from
//! the command line.
//!
//! One verb per invocation; artifacts go to stdout or `--out`, as JSON by
//! default or TSV via `--format tsv`.  Exit codes: 0 on success, 1 when a
//! mathematical precondition fails (non-coprime generator, non-member
//! vector, rank problems), 2 on I/O, JSON, or flag grammar problems.

mod parse;
mod render;
mod verify;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cyclat::cyclic::{is_cyclic, is_prime_spot, module_to_lattice, CyclicLattice};
use cyclat::idealmat::{ideal_det, ideal_matrix};
use cyclat::rat::Rational;
use cyclat::smoothing::{discrete_gauss_sample, smoothing_report, GaussParams};

use num::Zero;
use render::Format;

/// How an invocation failed, carrying the exit code distinction between
/// domain errors (1) and I/O or grammar errors (2).
pub enum Failure {
    Domain(cyclat::Error),
    Io(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(cyclat::Error::Parse(_)) | Failure::Io(_) => 2,
            Failure::Domain(_) | Failure::Check(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Domain(e) => write!(f, "{e}"),
            Failure::Io(msg) | Failure::Check(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<cyclat::Error> for Failure {
    fn from(e: cyclat::Error) -> Self {
        Failure::Domain(e)
    }
}

#[derive(Parser)]
#[command(
    name = "cyclat",
    version,
    about = "Ideal matrices, cyclic lattices, and smoothing-parameter reports",
    arg_required_else_help = true
)]
struct Cli {
    /// Artifact format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the artifact to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ideal matrix of f in Z[x]/<phi>, with its determinant
    IdealMatrix {
        /// Modulus, e.g. "x^3-1"
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        /// Coefficients of f, lowest first, e.g. "1,2,3"
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Certify that g is invertible mod phi and derive its dual generator
    PrimeSpot {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        /// Coefficients of g, lowest first
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Decide whether a basis spans a lattice closed under the rotation map
    CyclicCheck {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        /// Basis file: {"n", "m", "basis": [[...] per column]}
        #[arg(long)]
        basis: PathBuf,
    },
    /// Canonical basis of the lattice generated by module generators
    ModuleLattice {
        /// Generators file: {"phi": [...], "generators": [[...], ...]}
        #[arg(long)]
        generators: PathBuf,
    },
    /// Smoothing threshold and its upper bounds for a lattice basis
    Eta {
        #[arg(long)]
        basis: PathBuf,
        /// Ring modulus; enables the cyclicity check and, with --g, the
        /// certificate bound
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<String>,
        /// Prime-spot generator for the certificate bound
        #[arg(long, requires = "phi", allow_hyphen_values = true)]
        g: Option<String>,
        /// Quality, rational or float; defaults to 2^-n
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Draw from the discrete Gaussian on a lattice
    Sample {
        #[arg(long)]
        basis: PathBuf,
        /// Gaussian width s
        #[arg(long, visible_alias = "s")]
        width: f64,
        /// Center coordinates, lowest first; defaults to the origin
        #[arg(long, allow_hyphen_values = true)]
        center: Option<String>,
        /// Generator seed (required: no ambient entropy)
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Re-run the built-in worked examples and property suites
    Verify,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let format = cli.format;
    let artifact = match cli.command {
        Command::IdealMatrix { phi, f } => {
            let ctx = parse::parse_phi(&phi)?;
            let f = parse::parse_element(&ctx, &f)?;
            let matrix = ideal_matrix(&f);
            let (det, det_spectral) = ideal_det(&f);
            render::ideal_matrix_report(&f, matrix.entries(), &det, det_spectral, format)
        }
        Command::PrimeSpot { phi, g } => {
            let ctx = parse::parse_phi(&phi)?;
            let g = parse::parse_element(&ctx, &g)?;
            let cert = is_prime_spot(&g)?;
            render::certificate_report(&cert, format)
        }
        Command::CyclicCheck { phi, basis } => {
            let ctx = parse::parse_phi(&phi)?;
            let basis = parse::load_basis(&basis)?;
            let verdict = is_cyclic(&basis, &ctx)?;
            render::verdict_report("cyclic", verdict, format)
        }
        Command::ModuleLattice { generators } => {
            let (_, gens) = parse::load_generators(&generators)?;
            let lattice = module_to_lattice(&gens)?;
            render::basis_report(lattice.basis(), format)
        }
        Command::Eta { basis, phi, g, epsilon } => {
            let basis = parse::load_basis(&basis)?;
            let epsilon = match epsilon {
                Some(text) => parse::parse_epsilon(&text)?,
                None => 2f64.powi(-(basis.ambient_dim() as i32)),
            };
            let generator = match (&phi, &g) {
                (Some(phi_text), g_text) => {
                    let ctx = parse::parse_phi(phi_text)?;
                    // Validate cyclicity even without a generator.
                    CyclicLattice::from_basis(basis.clone(), &ctx)?;
                    g_text
                        .as_ref()
                        .map(|t| parse::parse_element(&ctx, t))
                        .transpose()?
                }
                (None, _) => None,
            };
            let report = smoothing_report(&basis, epsilon, generator.as_ref())?;
            match format {
                Format::Json => report.to_json(),
                Format::Tsv => render::report_tsv(&report),
            }
        }
        Command::Sample { basis, width, center, seed, count } => {
            if !width.is_finite() || width <= 0.0 {
                return Err(Failure::Domain(cyclat::Error::Parse(format!(
                    "width must be positive and finite, got {width}"
                ))));
            }
            let basis = parse::load_basis(&basis)?;
            let c: Vec<Rational> = match center {
                Some(text) => parse::parse_vector(&text)?,
                None => vec![Rational::zero(); basis.ambient_dim()],
            };
            let samples = discrete_gauss_sample(&basis, &GaussParams { s: width, c }, seed, count)?;
            render::samples_report(&samples, seed, format)
        }
        Command::Verify => return verify::run(),
    };
    emit(&artifact, cli.out.as_deref())
}

fn emit(artifact: &str, out: Option<&std::path::Path>) -> Result<(), Failure> {
    match out {
        None => println!("{artifact}"),
        Some(path) => {
            std::fs::write(path, format!("{artifact}\n"))
                .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}
