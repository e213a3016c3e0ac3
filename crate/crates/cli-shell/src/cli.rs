use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "infowords", version, about = "Informative words in two-generator groups")]
pub struct Cli {
    /// Print JSON instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Convention lockfile (default: ./conventions.json, then the workspace copy).
    #[arg(long, global = true, value_name = "PATH")]
    pub conventions: Option<PathBuf>,
    /// Worker threads for the grid search.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScalarMode {
    Rational,
    Float,
    Interval,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce a word and report its basic invariants.
    Word {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Farey words, addition, continued fractions and LR sequences.
    Farey {
        #[command(subcommand)]
        op: FareyOp,
    },
    /// Generator pair and Farey data of an F-sequence such as {1,2}.
    Fseq {
        seq: String,
        /// Whether the last step is Fibonacci (default: the locked convention).
        #[arg(long)]
        trailing: Option<bool>,
    },
    /// Fricke trace polynomial in x = tr A, y = tr B, z = tr AB.
    TracePoly { word: String },
    /// Polynomial P_W(γ, β) of a good word.
    GoodPoly {
        word: String,
        #[arg(long, default_value_t = 1)]
        margin: u32,
    },
    /// Good product w1 ∗ w2 = w1(w2, b).
    GoodProduct { w1: String, w2: String },
    /// Run the trace-minimizing discreteness procedure.
    Discrete {
        /// Matrix "a,b;c,d" with rational entries.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, value_enum, default_value = "rational")]
        scalar: ScalarMode,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        #[arg(long, default_value_t = 64)]
        q_max: u32,
    },
    /// Jørgensen sum |β(f)| + |γ(f, g)|.
    Jorgensen {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Certified killer-word exclusion over a (γ, β) rectangle.
    KillerGrid {
        /// γ range lo:hi
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        /// β range lo:hi
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value_t = 9)]
        max_syllables: usize,
        #[arg(long, default_value_t = 2)]
        max_b_exponent: i64,
        /// interval (f64 enclosures) or rational (exact enclosures).
        #[arg(long, value_enum, default_value = "interval")]
        scalar: ScalarMode,
        /// Write the full report JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the battery of theorem and proposition checks.
    VerifyPaper {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Recompute the conventions and write the lockfile.
    Calibrate {
        /// Only compare with the lockfile, do not write it.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum FareyOp {
    /// W_{p/q}.
    Word { fraction: String },
    /// W_f +_F W_g for Farey neighbours.
    Add { f: String, g: String },
    /// Continued fraction digits.
    Cf { fraction: String },
    /// Stern-Brocot path.
    Lr { fraction: String },
}
