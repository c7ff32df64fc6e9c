//! `tetra`: command-line front end for tetra-core.
//!
//! Every run prints line-tagged `key=value` text on standard output, starting
//! with a `config` line. Exit status is 0 for success or a true verdict, 1 for
//! a false verdict and 2 for usage, parse or guard errors.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{CocycleArgs, SolutionArgs};

#[derive(Parser, Debug)]
#[command(name = "tetra", version, about = "Tetrahedron maps, cube cocycles, 2-knot graph invariants, quandle state sums and lattice transfer matrices")]
pub struct Cli {
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Override an enumeration limit, e.g. `lattice_direct=1e8`.
    #[arg(long = "guard", global = true, value_name = "NAME=LIMIT")]
    pub guards: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tetrahedron-equation checks on a solution.
    Te {
        #[command(subcommand)]
        action: TeAction,
    },
    /// Multiplicative 3-cocycles of the cube complex.
    Cocycle {
        #[command(subcommand)]
        action: CocycleAction,
    },
    /// Boundary matrices and homology of the cube complex.
    Cube {
        #[command(subcommand)]
        action: CubeAction,
    },
    /// Partition function of a closed singular-point graph.
    Chi(ChiArgs),
    /// Invariance checks for the local moves of knotted-surface diagrams.
    Roseman {
        #[command(subcommand)]
        action: RosemanAction,
    },
    /// Quandles, their homology and cocycle state sums.
    Quandle {
        #[command(subcommand)]
        action: QuandleAction,
    },
    /// Periodic three-dimensional vertex model.
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
    /// Closure of the reduced color set under inversion and negation.
    Closure {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TeAction {
    /// Exhaustive check of the tetrahedron equation on X⁶.
    Verify(SolutionArgs),
    /// Existence of all partial transposes and their inverse relations.
    Transposes(SolutionArgs),
    /// Every catalogued word identity on X⁶.
    Identities(SolutionArgs),
    /// A user-given word identity.
    Word {
        #[command(flatten)]
        solution: SolutionArgs,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long, default_value_t = 6)]
        arity: usize,
    },
    /// Prints the map (or a transpose or inverse) in the tetramap format.
    Print {
        #[command(flatten)]
        solution: SolutionArgs,
        /// Transposed directions, e.g. `13`.
        #[arg(long)]
        dirs: Option<String>,
        #[arg(long)]
        inverse: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum CocycleAction {
    /// Cocycle condition over every seed of I⁴.
    Verify(SolutionCocycle),
    /// Monomial candidates `±x^a y^b z^c` with exponents bounded by `--bound`.
    Search {
        #[command(flatten)]
        solution: SolutionArgs,
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
    /// Contractions of A(s) in the three directions.
    Normalized(SolutionCocycle),
    /// Matrix tetrahedron equation for A(s).
    OperatorTe(SolutionCocycle),
}

#[derive(Args, Debug)]
pub struct SolutionCocycle {
    #[command(flatten)]
    pub solution: SolutionArgs,
    #[command(flatten)]
    pub cocycle: CocycleArgs,
}

#[derive(Subcommand, Debug)]
pub enum CubeAction {
    /// Shape of d_n.
    Boundary {
        #[command(flatten)]
        solution: SolutionArgs,
        #[arg(long)]
        n: usize,
    },
    /// Checks d_{n-1}·d_n = 0.
    Square {
        #[command(flatten)]
        solution: SolutionArgs,
        #[arg(long)]
        n: usize,
    },
    /// Kernel, image and homology dimensions at degree n.
    Homology {
        #[command(flatten)]
        solution: SolutionArgs,
        #[arg(long)]
        n: usize,
        /// `rational` or a prime.
        #[arg(long, default_value = "rational")]
        coefficients: String,
    },
}

#[derive(Args, Debug)]
pub struct ChiArgs {
    /// Graph file or `fixture:NAME`.
    #[arg(long)]
    pub graph: String,
    #[command(flatten)]
    pub solution: SolutionArgs,
    #[command(flatten)]
    pub cocycle: CocycleArgs,
    /// Character descriptor: `trivial`, `N:primitive` or `N:a1,a2,...`.
    #[arg(long)]
    pub character: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum RosemanAction {
    /// Runs the checker for one move.
    Check {
        #[arg(long = "move")]
        mv: u32,
        #[command(flatten)]
        inner: SolutionCocycle,
    },
    /// χ before and after a branch-orientation change.
    Branch(SolutionCocycle),
}

#[derive(Subcommand, Debug)]
pub enum QuandleAction {
    /// Quandle axioms.
    Verify {
        #[arg(long)]
        quandle: String,
    },
    /// Rack and quandle boundary ∂_n, and ∂_{n-1}·∂_n = 0 for n ≥ 3.
    Boundary {
        #[arg(long)]
        quandle: String,
        #[arg(long)]
        n: usize,
    },
    /// Quandle 3-cocycle condition.
    Cocycle {
        #[arg(long)]
        quandle: String,
        /// `zero`, `coboundary:A,B,C` or a cochain file.
        #[arg(long)]
        theta: String,
        /// Coefficient group Z/m.
        #[arg(long, default_value_t = 6)]
        m: u64,
    },
    /// Colorings and state sum of a diagram.
    StateSum {
        #[arg(long)]
        quandle: String,
        /// Diagram file or `fixture:NAME`.
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        theta: String,
        #[arg(long, default_value_t = 6)]
        m: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum LatticeAction {
    /// Partition function Z(s).
    Z(LatticeArgs),
}

#[derive(Args, Debug)]
pub struct LatticeArgs {
    #[arg(long = "K", id = "K")]
    pub extent_k: usize,
    #[arg(long = "L", id = "L")]
    pub extent_l: usize,
    #[arg(long = "M", id = "M")]
    pub extent_m: usize,
    /// `direct`, `transfer` or `both`.
    #[arg(long, default_value = "direct")]
    pub via: String,
    /// Also compute the transfer trace in the group ring.
    #[arg(long)]
    pub exact: bool,
    /// `i-major` or `k-major`.
    #[arg(long, default_value = "i-major")]
    pub order: String,
    #[command(flatten)]
    pub solution: SolutionArgs,
    #[command(flatten)]
    pub cocycle: CocycleArgs,
    #[arg(long)]
    pub character: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = with_workers(cli.workers, || commands::run(&cli));
    let code = match outcome {
        Ok(report) => {
            print!("{}", report.text);
            match report.verdict {
                Some(false) => 1,
                _ => 0,
            }
        }
        Err(e) => {
            println!("{}", commands::error_line(&e));
            eprintln!("tetra: {e}");
            2
        }
    };
    ExitCode::from(code)
}

#[cfg(feature = "parallel")]
fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_workers<T: Send>(_workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    f()
}
