use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use killform::commands::{self, Options};
use killform::model::ModelArgs;
use killform::{InputError, Output, EXIT_INPUT};

/// Classify algebraic curvature models by the forms on which Killing-type
/// equations can hold, and check the underlying identities numerically.
#[derive(Parser)]
#[command(name = "killform", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List model kinds and their parameters.
    Catalog {
        #[arg(long)]
        human: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the identity checks on a model.
    Verify {
        #[command(flatten)]
        model: ModelFlags,
        /// A degree or `all`.
        #[arg(long, default_value = "all")]
        p: String,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Compute the fixed point (E, F) in one degree and report the branch.
    Classify {
        #[command(flatten)]
        model: ModelFlags,
        #[arg(long)]
        p: usize,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Walk through the four-dimensional self-dual Weyl example.
    WeylDemo {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ModelFlags {
    /// sphere, flat, cpn, product, weyl4 or file.
    #[arg(long)]
    model: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    kappa: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    /// Product factors, e.g. `sphere:2:1,cpn:2,flat:3`.
    #[arg(long)]
    factors: Option<String>,
    #[arg(long)]
    path: Option<PathBuf>,
    #[arg(long, default_value_t = killform_core::DEFAULT_MAX_DIM)]
    max_n: usize,
}

#[derive(Args)]
struct CommonFlags {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = killform_core::DEFAULT_TOL)]
    tol: f64,
    #[arg(long)]
    human: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CommonFlags {
    fn options(&self) -> Options {
        Options {
            seed: self.seed,
            tol: self.tol,
            human: self.human,
        }
    }
}

impl ModelFlags {
    fn args(&self) -> ModelArgs {
        ModelArgs {
            model: self.model.clone(),
            n: self.n,
            kappa: self.kappa,
            m: self.m,
            factors: self.factors.clone(),
            path: self.path.clone(),
        }
    }
}

fn run(cli: Cli) -> Result<(Output, Option<PathBuf>), InputError> {
    Ok(match cli.command {
        Command::Catalog { human, out } => (commands::catalog_with(human), out),
        Command::Verify { model, p, common } => {
            let resolved = model.args().resolve(model.max_n)?;
            (
                commands::verify(&resolved, &p, common.options())?,
                common.out,
            )
        }
        Command::Classify { model, p, common } => {
            let resolved = model.args().resolve(model.max_n)?;
            (
                commands::classify(&resolved, p, common.options())?,
                common.out,
            )
        }
        Command::WeylDemo { out } => (commands::weyl_demo(), out),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (output, out) = match run(cli) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    match out {
        Some(path) => {
            if let Err(e) = fs::write(&path, &output.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
        None => print!("{}", output.text),
    }
    if let Some(msg) = &output.message {
        eprintln!("{msg}");
    }
    ExitCode::from(output.code as u8)
}
