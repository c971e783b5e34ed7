mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use arclab::Error;

#[derive(Parser)]
#[command(
    name = "arclab",
    version,
    about = "Exact computations with platform arc rings and their bimodules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Clone, Copy)]
pub struct Global {
    /// Validate the inputs and stop before computing.
    #[arg(long, global = true)]
    pub dry_run: bool,
    /// Lift the size guards (more than 14 points or 8 crossings).
    #[arg(long, global = true)]
    pub force: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Clone, Copy)]
pub struct TripleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub l: usize,
}

#[derive(Args, Clone, Copy)]
pub struct WeightArgs {
    #[arg(long = "N", short = 'N')]
    pub big_n: usize,
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub k: usize,
}

#[derive(Subcommand)]
enum Command {
    /// List the crossingless matchings of a triple.
    Basis(TripleArgs),
    /// Multiply two ring elements given as `index[:coeff],…` over the basis.
    Multiply {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Basis, degrees and graded rank of a ring, optionally with its multiplication table.
    RingDump {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long)]
        products: bool,
    },
    /// Bimodule of a flat tangle given as a JSON file.
    Bimodule {
        #[arg(long)]
        file: String,
        /// Platform sizes `k,l` of the top (left) ring.
        #[arg(long)]
        left: String,
        /// Platform sizes `k,l` of the bottom (right) ring.
        #[arg(long)]
        right: String,
    },
    /// Checks F(T2) ⊗ F(T1) -> F(T2 T1) for two flat tangle files.
    TensorCheck {
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        /// Platform sizes `k,l` shared by all three rings.
        #[arg(long, default_value = "0,0")]
        platforms: String,
    },
    /// Blockwise homology of a tangle diagram given as a JSON file.
    TangleHomology {
        #[arg(long)]
        file: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Compares homology of two diagram files, or runs the built-in catalog without files.
    Invariance {
        #[arg(long, requires = "second")]
        first: Option<String>,
        #[arg(long, requires = "first")]
        second: Option<String>,
        #[arg(long, default_value = "0,0")]
        left: String,
        #[arg(long, default_value = "0,0")]
        right: String,
    },
    /// Center of a ring with its graded rank.
    Center {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long)]
        elements: bool,
    },
    /// Springer cohomology presentation.
    Springer {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Center of the one-platform ring against the Springer presentation.
    CenterVsSpringer {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Number of cells in the arc-graph partition.
    CellCount {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Weights of the level-two representation with their dimensions.
    Weights(WeightArgs),
    /// Tableaux of each weight with their matchings.
    Bijection {
        #[command(flatten)]
        weight: WeightArgs,
        /// Restrict to one weight, comma separated.
        #[arg(long)]
        mu: Option<String>,
    },
    /// Grothendieck group matrices of E_i and F_i.
    Kgroup {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long)]
        i: Option<usize>,
        /// Also check every quantum group relation and both functor propositions.
        #[arg(long)]
        verify: bool,
    },
    /// Runs registered verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_points: Option<usize>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// List suite names instead of running them.
        #[arg(long)]
        list: bool,
    },
}

/// A finished command: its report and whether every check in it passed.
pub struct Outcome {
    pub report: serde_json::Value,
    pub passed: bool,
}

fn configure_threads() -> Result<(), Error> {
    if let Ok(v) = std::env::var("ARCLAB_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Invalid(format!("ARCLAB_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Invalid(e.to_string()))?;
    }
    Ok(())
}

fn dispatch(cmd: &Command, g: Global) -> Result<Outcome, Error> {
    use commands::*;
    match cmd {
        Command::Basis(t) => basis(*t, g),
        Command::Multiply { triple, x, y } => multiply(*triple, x, y, g),
        Command::RingDump { triple, products } => ring_dump(*triple, *products, g),
        Command::Bimodule { file, left, right } => bimodule(file, left, right, g),
        Command::TensorCheck {
            first,
            second,
            platforms,
        } => tensor_check(first, second, platforms, g),
        Command::TangleHomology { file, left, right } => tangle_homology(file, left, right, g),
        Command::Invariance {
            first,
            second,
            left,
            right,
        } => invariance(first.as_deref().zip(second.as_deref()), left, right, g),
        Command::Center { triple, elements } => center(*triple, *elements, g),
        Command::Springer { n, m } => springer(*n, *m, g),
        Command::CenterVsSpringer { n, m } => center_vs_springer(*n, *m, g),
        Command::CellCount { n, m } => cell_count(*n, *m, g),
        Command::Weights(w) => weights(*w, g),
        Command::Bijection { weight, mu } => bijection(*weight, mu.as_deref(), g),
        Command::Kgroup { weight, i, verify } => kgroup(*weight, *i, *verify, g),
        Command::Verify {
            suite,
            max_points,
            seed,
            samples,
            list,
        } => verify(suite, *max_points, *seed, *samples, *list, g),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| dispatch(&cli.command, cli.global));
    match result {
        Ok(out) => {
            output::emit(&out.report, cli.global.format);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Inconsistent(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
