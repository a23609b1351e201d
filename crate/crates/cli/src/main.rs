mod commands;
mod envelope;
mod error;
mod random;
mod scene;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "folrho", version, about = "Secondary invariants of foliated flat tori")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(clap::Args, Debug, Clone, serde::Serialize)]
pub struct Flags {
    /// Scene file (JSON, or TOML by extension).
    #[arg(long, global = true)]
    pub scene: Option<PathBuf>,
    /// Holonomy parameter of the circle family.
    #[arg(long, global = true)]
    pub r: Option<f64>,
    #[arg(long, global = true)]
    pub q: Option<u32>,
    #[arg(long, global = true)]
    pub dim: Option<u32>,
    #[arg(long = "max-degree", global = true)]
    pub max_degree: Option<u32>,
    /// Factor applied to every 1e-8 / 1e-9 threshold.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Also write the result envelope to this path.
    #[arg(long = "json-out", global = true)]
    #[serde(skip)]
    pub json_out: Option<PathBuf>,
    /// Seed for randomly generated data when no scene is given.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Eta-invariant method for `rho-s1` and `eta`.
    #[arg(long, global = true, value_enum)]
    pub method: Option<Method>,
    /// Add wall time to the envelope (the output is then no longer reproducible byte for byte).
    #[arg(long, global = true)]
    #[serde(skip)]
    pub timing: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    ZetaNumeric,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Load a scene and run every structural check.
    Validate { file: Option<PathBuf> },
    /// Full ρ-invariant of the circle with the flat line bundle of holonomy e^{2πir}.
    RhoS1,
    /// Imaginary part ρ^iℝ of an extension of a flat partial connection.
    RhoImag { file: Option<PathBuf> },
    /// Godbillon-Vey checks on codimension-one data.
    GvCheck { file: Option<PathBuf> },
    /// Relative e-invariant of two flat framings.
    ERel { file: Option<PathBuf> },
    /// η-invariant of an arithmetic progression with finitely many replaced eigenvalues.
    Eta { file: Option<PathBuf> },
    /// Chern character and Chern forms.
    Chern { file: Option<PathBuf> },
    /// Â-genus form of a real connection.
    Ahat { file: Option<PathBuf> },
    /// Transgression ch̃(∇₁,∇₀) of the first two bundles.
    Transgress { file: Option<PathBuf> },
    /// Top-degree bordism integrand of an extension on an even torus.
    BordismIntegrand { file: Option<PathBuf> },
    /// Ranks of H^*(WO_q).
    WoBetti,
    /// The universal class U in WO_q for a manifold of the given dimension.
    WoUniversal,
    /// Kamber-Tondeur forms against 2iᵖΔ(c̃_p).
    KtRelation { file: Option<PathBuf> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::RhoS1 => "rho-s1",
            Command::RhoImag { .. } => "rho-imag",
            Command::GvCheck { .. } => "gv-check",
            Command::ERel { .. } => "e-rel",
            Command::Eta { .. } => "eta",
            Command::Chern { .. } => "chern",
            Command::Ahat { .. } => "ahat",
            Command::Transgress { .. } => "transgress",
            Command::BordismIntegrand { .. } => "bordism-integrand",
            Command::WoBetti => "wo-betti",
            Command::WoUniversal => "wo-universal",
            Command::KtRelation { .. } => "kt-relation",
        }
    }

    /// Scene path given positionally.
    pub fn file(&self) -> Option<&PathBuf> {
        match self {
            Command::Validate { file }
            | Command::RhoImag { file }
            | Command::GvCheck { file }
            | Command::ERel { file }
            | Command::Eta { file }
            | Command::Chern { file }
            | Command::Ahat { file }
            | Command::Transgress { file }
            | Command::BordismIntegrand { file }
            | Command::KtRelation { file } => file.as_ref(),
            Command::RhoS1 | Command::WoBetti | Command::WoUniversal => None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(env) => {
            let text = env.render();
            if let Some(path) = &cli.flags.json_out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            // A closed pipe (e.g. `| head`) is not an error of the computation.
            let _ = writeln!(std::io::stdout(), "{text}");
            let failed = env.failed_checks();
            if failed.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed: {}", failed.join(", "));
                ExitCode::from(env.failure_code())
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
