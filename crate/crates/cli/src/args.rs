use clap::{Args, Parser, Subcommand, ValueEnum};
use std::f64::consts::PI;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "accr",
    version,
    about = "Curvature and soliton checks for almost contact B-metric Lie groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure, curvature, scalar curvatures and Einstein-like fit
    Inspect(InspectArgs),
    /// Ricci-Bourguignon-like soliton residuals for a vertical or conformal potential
    Soliton(SolitonArgs),
    /// Run a built-in scenario over a parameter grid
    Sweep(SweepArgs),
    /// Print the JSON definition of the built-in example2 model
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    Example1,
    Example2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Residual tolerance
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// JSON manifold definition
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Built-in model
    #[arg(long, value_enum)]
    pub scenario: Option<Scenario>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub p: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub q: f64,
    /// Curve parameter of example1
    #[arg(long, default_value_t = 0.0, value_parser = parse_real, allow_negative_numbers = true)]
    pub t: f64,
    /// Half the contact dimension of example1
    #[arg(long, default_value_t = 2)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SolitonArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, default_value_t = 0.0, value_parser = parse_real, allow_negative_numbers = true)]
    pub beta: f64,
    /// Vertical potential k xi with k = -2 t0
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub t0: f64,
    /// Value of k (overrides --t0)
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<f64>,
    /// dk(xi)
    #[arg(long = "k-prime", allow_negative_numbers = true)]
    pub k_prime: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub psi: Option<f64>,
    #[arg(long = "psi-tilde", allow_negative_numbers = true)]
    pub psi_tilde: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long = "lambda-tilde", allow_negative_numbers = true)]
    pub lambda_tilde: Option<f64>,
    /// Also check the eta-Ricci-Bourguignon-like equation with this mu
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Solve for lambda and lambda~ (the default when they are not given)
    #[arg(long)]
    pub solve: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub scenario: Scenario,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long = "grid-p", value_parser = parse_real, value_delimiter = ',', allow_negative_numbers = true)]
    pub grid_p: Option<Vec<f64>>,
    #[arg(long = "grid-q", value_parser = parse_real, value_delimiter = ',', allow_negative_numbers = true)]
    pub grid_q: Option<Vec<f64>>,
    #[arg(long = "grid-beta", value_parser = parse_real, value_delimiter = ',', allow_negative_numbers = true)]
    pub grid_beta: Option<Vec<f64>>,
    #[arg(long = "grid-t0", value_parser = parse_real, value_delimiter = ',', allow_negative_numbers = true)]
    pub grid_t0: Option<Vec<f64>>,
    #[arg(long = "grid-t", value_parser = parse_real, value_delimiter = ',', allow_negative_numbers = true)]
    pub grid_t: Option<Vec<f64>>,
    #[arg(long = "grid-n", value_delimiter = ',')]
    pub grid_n: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub p: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub q: f64,
}

/// A real number, optionally a multiple or fraction of pi: `0.5`, `pi`, `-0.75pi`, `3pi/4`, `-1/4`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let bad = || format!("cannot read `{s}` as a number");
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim().parse::<f64>().map_err(|_| bad())?)),
        None => (s, None),
    };
    let value = match num.strip_suffix("pi") {
        Some(coef) => {
            let c = match coef.trim() {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.trim_end_matches('*').parse::<f64>().map_err(|_| bad())?,
            };
            c * PI
        }
        None => num.parse::<f64>().map_err(|_| bad())?,
    };
    match den {
        Some(0.0) => Err(bad()),
        Some(d) => Ok(value / d),
        None => Ok(value),
    }
}
