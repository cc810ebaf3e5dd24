use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "valgcd", version, about = "Gcds of values of integer polynomials")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Worker threads (defaults to one per core).
    #[arg(long, env = "VALGCD_THREADS", global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

/// Polynomials given inline or in a file (one per line, `#` starts a comment).
#[derive(Args, Debug, Clone)]
pub struct PolyArgs {
    /// Polynomials; write one with a leading minus in parentheses, e.g. "(-x+1)".
    #[arg(long, num_args = 1.., required_unless_present = "polys_file")]
    pub polys: Vec<String>,

    #[arg(long, conflicts_with = "polys")]
    pub polys_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct BudgetArgs {
    /// Largest max-norm of a search direction.
    #[arg(long, default_value_t = 3)]
    pub max_direction_norm: u32,
    /// Largest multiplier k tried for t* = k·δ1·δ2.
    #[arg(long, default_value_t = 64)]
    pub max_k: u64,
    /// Bit-size cap on periods.
    #[arg(long, default_value_t = 4096)]
    pub max_period_bits: u64,
    /// Bit-size cap on the CRT modulus.
    #[arg(long, default_value_t = 8192)]
    pub max_modulus_bits: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate the attained values d_n over a box.
    Gcdset {
        #[command(flatten)]
        polys: PolyArgs,
        /// Inclusive ranges: one range for every variable ("-50..50") or one per variable.
        #[arg(long = "box", default_value = "-50..50", allow_hyphen_values = true)]
        grid: String,
    },
    /// Construct a point attaining gcd or lcm of d_m and d_n.
    Witness {
        #[command(flatten)]
        polys: PolyArgs,
        #[arg(long, default_value = "gcd")]
        mode: String,
        /// The point m, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// The point n, comma separated.
        #[arg(long = "and", allow_hyphen_values = true)]
        and: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Certify gcd and lcm closure for sampled pairs of attained values.
    ClosureAudit {
        #[command(flatten)]
        polys: PolyArgs,
        #[arg(long = "box", default_value = "-50..50", allow_hyphen_values = true)]
        grid: String,
        #[arg(long, default_value_t = 20)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Period of d_n for a one-variable family.
    Period {
        #[command(flatten)]
        polys: PolyArgs,
        /// Number of n checked directly (0 skips the check).
        #[arg(long, default_value_t = valgcd_core::gcdset::period::DEFAULT_WINDOW_CAP)]
        window_cap: u64,
    },
    /// Truncated Euler product with a tail bracket.
    Density {
        #[command(flatten)]
        polys: PolyArgs,
        /// Largest prime in the partial product.
        #[arg(long, default_value_t = 100)]
        truncate: u64,
        /// Also count [0,B)^r and [-B,B]^r exactly.
        #[arg(long)]
        empirical: Option<i64>,
        /// Also count the three tail sets on [0,B)^r.
        #[arg(long)]
        tail_box: Option<i64>,
    },
    /// Exact density for a one-variable family.
    DensityExact1 {
        #[command(flatten)]
        polys: PolyArgs,
    },
    /// Density of points where several families all have coprime values.
    DensityFamilies {
        /// A comma separated family; repeat for each family.
        #[arg(long = "family", required = true, allow_hyphen_values = true)]
        families: Vec<String>,
        #[arg(long, default_value_t = 100)]
        truncate: u64,
    },
    /// Certify a one-variable family coprime from a single small value.
    #[command(name = "criterion-1var")]
    Criterion1Var {
        #[command(flatten)]
        polys: PolyArgs,
        /// Largest n tried (default 10·(2H+3)+1000).
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Certify coprimality from the proportion of small values on S^r.
    CriterionSample {
        #[command(flatten)]
        polys: PolyArgs,
        /// The set S: ranges and values, comma separated ("1..100").
        #[arg(long, default_value = "1..100", allow_hyphen_values = true)]
        set: String,
        #[arg(long, default_value_t = 1)]
        k: u64,
        /// Sample size when S^r is too large to count exactly.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Count the zeros of a polynomial on S^r against the Schwartz-Zippel bound.
    SzCount {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value = "1..10", allow_hyphen_values = true)]
        set: String,
    },
    /// Primes up to a bound where the reduced family has a common factor.
    ReduceScan {
        #[command(flatten)]
        polys: PolyArgs,
        #[arg(long, default_value_t = 100)]
        bound: u64,
    },
    /// Primes dividing every value of the family.
    FixedDivisors {
        #[command(flatten)]
        polys: PolyArgs,
    },
    /// Irreducibility of integer specializations P(n, y) in Z[y].
    Hilbert {
        #[command(flatten)]
        polys: PolyArgs,
        /// The variable that stays free.
        #[arg(long, default_value = "y")]
        y: String,
        #[arg(long = "box", default_value = "-20..20", allow_hyphen_values = true)]
        grid: String,
        /// Test a single point instead of scanning the box.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, default_value_t = valgcd_core::hilbert::DEFAULT_DEGREE_CAP)]
        degree_cap: u32,
        /// Include the per-point outcome table.
        #[arg(long)]
        outcomes: bool,
    },
    /// Re-check every certificate of a JSON report ("-" reads stdin).
    Verify {
        report: PathBuf,
    },
}
