use std::fmt;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

/// Prime fields available at run time.
pub const PRIMES: [u64; 8] = [3, 5, 7, 11, 13, 101, 7919, 2147483647];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl FromStr for Field {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim().to_ascii_lowercase();
        if matches!(t.as_str(), "rational" | "q") {
            return Ok(Field::Rational);
        }
        let digits = t.trim_start_matches(['p', 'f']).trim_start_matches('=');
        let p: u64 = digits.parse().map_err(|_| format!("'{s}' is neither 'rational' nor a prime"))?;
        if PRIMES.contains(&p) {
            Ok(Field::Prime(p))
        } else {
            Err(format!("prime {p} is not available; choose one of {PRIMES:?}"))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Mode {
    Oga,
    Unipotent,
    Gamma,
    SigmaPrime,
    Layers,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Strategy {
    Formula,
    Iteration,
    Both,
}

/// Exact computation in Grassmann algebras and their automorphism groups.
///
/// Elements use the grammar `2/3 - x1x3 + 5x2x3x4`; endomorphisms are
/// `x1 -> <element>; x2 -> <element>` with unlisted generators fixed.
/// An argument of the form `@path` is read from the file at path.
#[derive(Parser, Debug)]
#[command(name = "grassmann-cli", version)]
pub struct Cli {
    /// Number of generators, 1..=16.
    #[arg(long, global = true, default_value_t = 4)]
    pub n: usize,

    /// Coefficient field: `rational` or one of the primes 3, 5, 7, 11, 13, 101, 7919, 2147483647.
    #[arg(long, global = true, default_value = "rational")]
    pub field: Field,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multiply elements left to right.
    Mul {
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Apply an endomorphism to an element.
    Apply {
        #[arg(long)]
        endo: String,
        element: String,
    },
    /// The Jacobian determinant of an endomorphism with odd images.
    Jacobian {
        #[arg(long)]
        endo: String,
    },
    /// Invert an automorphism.
    Invert {
        #[arg(long)]
        endo: String,
        #[arg(long, value_enum, default_value_t = Strategy::Iteration)]
        strategy: Strategy,
    },
    /// Factor an automorphism.
    Decompose {
        #[arg(long)]
        endo: String,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Decide membership in a subgroup, e.g. `sigma`, `gamma-asc:4`, `u-pow:3`.
    Member {
        #[arg(long)]
        endo: String,
        #[arg(long)]
        group: String,
    },
    /// Find σ ∈ Γ with prescribed Jacobian.
    Preimage {
        element: String,
        /// Fail instead of reporting a nonzero forced top coefficient.
        #[arg(long)]
        exact: bool,
    },
    /// Dimension by closed form and by coordinate count; `--group all` lists every target.
    Dims {
        #[arg(long)]
        group: String,
    },
    /// One-parameter subgroups generating a group.
    Generators {
        #[arg(long)]
        group: String,
        /// Also compute the dimension of the Lie algebra they generate.
        #[arg(long)]
        rank: bool,
    },
    /// Run the seeded property battery.
    Verify {
        /// Comma-separated suite names, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}
