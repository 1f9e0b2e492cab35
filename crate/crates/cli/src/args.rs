//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(name = "zerodist", version, about = "Zeros, maximum modulus and coefficient envelopes of analytic-function families")]
pub struct Cli {
    /// Output directory (created if missing).
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,

    /// Seed for randomized families.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Root acceptance threshold on `ln|f(z)| - ln max_k |a_k z^k|`.
    #[arg(long = "tol-residual", global = true, allow_hyphen_values = true, value_name = "LOG")]
    pub tol_residual: Option<f64>,

    /// Grid of `t = ln r` as `t_min:t_max:n`.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_grid, value_name = "T_MIN:T_MAX:N")]
    pub grid: Option<GridSpec>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build one family member and write `coeffseq.json`.
    Generate(GenerateArgs),
    /// Envelope duality, modulus sandwich, zeros and plots for a coefficient file.
    Analyze {
        input: PathBuf,
        /// Pair zeros with this circle instead of the detected ones.
        #[arg(long)]
        radius_guess: Option<f64>,
    },
    /// Zeros against critical points for a coefficient file.
    CompareDerivative {
        input: PathBuf,
        /// Points per side of the square sample grid.
        #[arg(long, default_value_t = 41)]
        grid_side: usize,
        /// Skip sample points this close to a zero (default: 5% of the largest zero modulus).
        #[arg(long)]
        exclusion: Option<f64>,
    },
    /// Boundary-window coefficient condition for a list of `eps`.
    JentzschCheck {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0.05,0.1,0.2")]
        eps: Vec<f64>,
    },
    /// Re-run the command recorded in a manifest and compare output hashes.
    Verify {
        /// Directory holding `manifest.json` (default: `--out`).
        dir: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    GeometricPartialSum,
    CustomRule,
    Tutte,
    Ruelle,
    Hardy,
    RandomRootsDisk,
}

/// Named coefficient rules for `custom-rule`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `a_k = 1`
    One,
    /// `a_k = 1/(k+1)`
    Reciprocal,
    /// `a_k = 1/k!`
    Exponential,
    /// `a_k = (-1)^k`
    Alternating,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub family: FamilyName,
    /// Family index (degree for partial sums and random zeros, vertices for tutte).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum)]
    pub rule: Option<Rule>,
    /// Explicit real coefficients `a_0,a_1,...` for `custom-rule`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Option<Vec<f64>>,
    /// Normalization override for `custom-rule`.
    #[arg(long = "V")]
    pub v: Option<f64>,
    /// Ruelle parameter, `c < -2`.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Hardy parameter, `0 < a < 1`.
    #[arg(long)]
    pub a: Option<f64>,
    /// Truncation order for ruelle and hardy.
    #[arg(long = "K")]
    pub k: Option<usize>,
    /// Pick the truncation order from the tail rule.
    #[arg(long = "auto-K", conflicts_with = "k")]
    pub auto_k: bool,
    /// Contour radius for the tail rule.
    #[arg(long, default_value_t = zerodist::series::DEFAULT_TRUNCATION_RADIUS)]
    pub radius: f64,
    /// Log tail tolerance for the tail rule.
    #[arg(long, default_value_t = zerodist::series::DEFAULT_TAIL_LOG_TOL)]
    pub tail_tol: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub n: usize,
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(format!("expected t_min:t_max:n, got `{s}`"));
    };
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("bad number `{x}`: {e}"));
    let g = GridSpec {
        t_min: num(a)?,
        t_max: num(b)?,
        n: n.trim().parse().map_err(|e| format!("bad point count `{n}`: {e}"))?,
    };
    if !(g.t_min < g.t_max && g.t_min.is_finite() && g.t_max.is_finite()) || g.n < 2 {
        return Err(format!("need finite t_min < t_max and n >= 2, got `{s}`"));
    }
    Ok(g)
}
