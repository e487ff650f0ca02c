use clap::{Args, Parser, Subcommand, ValueEnum};
use theta_core::{CuspPoint, LemmaId, Level, Mat2};

#[derive(Debug, Parser)]
#[command(
    name = "theta",
    version,
    about = "Multiplier systems of eta quotients on theta-type groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test membership in the level-N theta group.
    Membership {
        #[command(flatten)]
        target: MatrixLevel,
        #[command(flatten)]
        output: Output,
    },
    /// Exact multiplier value of a member.
    Multiplier {
        #[command(flatten)]
        target: MatrixLevel,
        /// Also report the value of the k-th power.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        #[command(flatten)]
        output: Output,
    },
    /// Kernel membership for the k-th power, coset representatives, or a
    /// residue-lemma report.
    Kernel {
        #[arg(long, value_parser = parse_level)]
        level: Option<Level>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_matrix)]
        matrix: Option<Mat2>,
        /// Run an exhaustive residue-lemma scan instead.
        #[arg(long, value_parser = parse_lemma, conflicts_with_all = ["matrix", "k", "level"])]
        lemma: Option<LemmaId>,
        /// Entry bound for the lemma scan.
        #[arg(long = "box", default_value_t = 40, requires = "lemma")]
        box_bound: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Coset representatives, index, and the coset of a matrix.
    Cosets {
        #[arg(long, value_parser = parse_level)]
        level: Level,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_matrix)]
        matrix: Option<Mat2>,
        #[command(flatten)]
        output: Output,
    },
    /// Cusp classes, or equivalence of two cusps (`inf` or `p/q`).
    Cusp {
        #[arg(long, value_parser = parse_level)]
        level: Level,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_cusp, requires = "to")]
        from: Option<CuspPoint>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_cusp, requires = "from")]
        to: Option<CuspPoint>,
        #[command(flatten)]
        output: Output,
    },
    /// Run verification suites.
    Verify {
        /// character, closed-form, kernels, lemmas, cosets, cusps, oracle,
        /// formula-arbitration, or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, env = "THETA_KERNEL_SEED", default_value_t = 0)]
        seed: u64,
        /// Oracle comparison tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Entry bound for the lemma scans.
        #[arg(long = "box")]
        box_bound: Option<i64>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Args)]
pub struct MatrixLevel {
    /// Row-major `a,b,c,d`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_matrix)]
    pub matrix: Mat2,
    #[arg(long, value_parser = parse_level)]
    pub level: Level,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn parse_matrix(s: &str) -> Result<Mat2, String> {
    s.parse().map_err(|e: theta_core::Error| e.to_string())
}

fn parse_level(s: &str) -> Result<Level, String> {
    let n: u32 = s.parse().map_err(|_| format!("{s:?} is not a level"))?;
    Level::try_from(n).map_err(|e| e.to_string())
}

fn parse_cusp(s: &str) -> Result<CuspPoint, String> {
    s.parse().map_err(|e: theta_core::Error| e.to_string())
}

fn parse_lemma(s: &str) -> Result<LemmaId, String> {
    s.parse().map_err(|e: theta_core::Error| {
        let names: Vec<&str> = LemmaId::ALL.iter().map(|id| id.name()).collect();
        format!("{e}; expected one of {}", names.join(", "))
    })
}
