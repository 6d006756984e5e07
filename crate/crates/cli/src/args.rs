use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ba-arrange", version, about = "Construct and verify planar line arrangements with multiplicities")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Working precision in bits.
    #[arg(long, global = true, env = "BA_PRECISION", default_value_t = 256)]
    pub precision: usize,
    /// log2 of the pass threshold for relative residuals (default: −(precision − 32)).
    #[arg(long = "threshold-log2", global = true, allow_hyphen_values = true)]
    pub threshold_log2: Option<i64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write the main output here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

impl Global {
    pub fn threshold(&self) -> f64 {
        self.threshold_log2
            .map(|t| t as f64)
            .unwrap_or(-(self.precision as f64 - 32.0))
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a configuration and write it as JSON.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Evaluate every existence condition and report a certificate.
    Certify(CertifyArgs),
    /// Graded dimensions of quasi-invariants and the Gorenstein test.
    Hilbert(HilbertArgs),
    /// Run one of the checks over a parameter grid.
    Scan {
        #[command(subcommand)]
        what: Scan,
    },
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// A_(m,1^n): one line of multiplicity m and n simple lines.
    Am1n {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// A_(m,m̃,1^n): orthogonal lines of multiplicity m and m̃ plus n simple lines.
    Twomult {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        mt: u32,
        #[arg(long)]
        n: u32,
    },
    /// T_q expansion of a stored configuration.
    Tq {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        q: u32,
    },
    /// Critical point of the multiplicity-weighted log-sine energy.
    General {
        /// Comma-separated integer multiplicities, e.g. 2,1,1,1.
        #[arg(long, value_delimiter = ',')]
        mults: Vec<f64>,
    },
    /// Random rational type-(m,1^n) configuration (uses --seed).
    Random {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// Type-(m,1^n) configuration with the given slopes α, e.g. 1/2,-1/3.
    Rational {
        #[arg(long)]
        m: u32,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alphas: Vec<String>,
    },
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Rotate one line before certifying: LINE:RADIANS.
    #[arg(long, allow_hyphen_values = true)]
    pub perturb: Option<String>,
    /// Include every individual condition in the output.
    #[arg(long)]
    pub full: bool,
}

#[derive(Args, Debug)]
pub struct HilbertArgs {
    #[arg(long, conflicts_with = "random")]
    pub input: Option<PathBuf>,
    /// Use a random rational configuration (with --m, --n, --seed).
    #[arg(long, requires_all = ["m", "n"])]
    pub random: bool,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Degree cutoff (default 2m+2n+4).
    #[arg(long = "D")]
    pub d: Option<usize>,
    /// Exit 1 unless the numerator equals the A_(m,1^n) closed form.
    #[arg(long)]
    pub check_closed_form: bool,
    /// Also write the coefficients as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Force the numeric rank route.
    #[arg(long)]
    pub numeric: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Am1n,
    Twomult,
    Tq,
}

#[derive(Subcommand, Debug)]
pub enum Scan {
    /// Gorenstein dichotomy: A_(m,1^n) against random samples.
    Gorenstein {
        #[arg(long, default_value = "1..3")]
        m: String,
        #[arg(long, default_value = "2..5")]
        n: String,
        #[arg(long, default_value_t = 20)]
        samples: u64,
    },
    /// Certification over a family.
    Certify {
        #[arg(long, value_enum, default_value_t = Family::Am1n)]
        family: Family,
        #[arg(long, default_value = "1..3")]
        m: String,
        /// Second multiplicity; "0..m" follows m.
        #[arg(long, default_value = "0..m")]
        mt: String,
        #[arg(long, default_value = "2,4")]
        n: String,
        #[arg(long, default_value = "1..4")]
        q: String,
    },
    /// Darboux identities.
    Darboux {
        #[arg(long, default_value = "1..4")]
        m: String,
        #[arg(long, default_value = "0..m")]
        mt: String,
        #[arg(long, default_value = "2,4,6")]
        n: String,
        #[arg(long = "q-max", default_value_t = 3)]
        q_max: u32,
    },
}
