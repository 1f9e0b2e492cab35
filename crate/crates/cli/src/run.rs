//! Resolved run configurations and the artifacts each command produces.
//!
//! A [`RunConfig`] carries everything a command depends on, so re-running it
//! (see `verify`) reproduces the same bytes.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use zerodist::pipeline::{
    default_t_grid, derivative_comparison, jentzsch_condition, square_grid, theorem1_check, uniformity_report,
    UniformityOptions, SCHEMA_VERSION,
};
use zerodist::roots::{newton_polygon_radii, AberthOptions};
use zerodist::series::{
    factorial, from_roots, geometric_partial_sum, hardy, hardy_auto_k, partial_sums, random_disk_zeros, ruelle_auto_k,
    ruelle_zeta, tutte_coeffseq, tutte_connected, CoeffSeq,
};
use zerodist::wiman::linear_grid;
use zerodist::{ExtComplex, ExtScalar};

use crate::args::{Cli, Command, FamilyName, GenerateArgs, GridSpec, Rule};
use crate::error::{param_error, CliError};
use crate::figures;
use crate::manifest::sha256_hex;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AutoK {
    pub radius: f64,
    pub tail_log_tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum FamilySpec {
    GeometricPartialSum {
        n: usize,
    },
    CustomRule {
        n: Option<usize>,
        rule: Option<Rule>,
        coeffs: Option<Vec<f64>>,
        #[serde(rename = "V")]
        v: Option<f64>,
    },
    Tutte {
        n: usize,
    },
    Ruelle {
        c: f64,
        #[serde(rename = "K")]
        k: usize,
        /// Present when `K` came from the tail rule.
        auto_k: Option<AutoK>,
    },
    Hardy {
        a: f64,
        #[serde(rename = "K")]
        k: usize,
        auto_k: Option<AutoK>,
    },
    RandomRootsDisk {
        n: usize,
        seed: u64,
    },
}

/// Input file pinned by content hash.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputRef {
    pub path: PathBuf,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum RunConfig {
    Generate {
        family: FamilySpec,
    },
    Analyze {
        input: InputRef,
        grid: Option<GridSpec>,
        tol_residual_log: f64,
        radius_guess: Option<f64>,
    },
    CompareDerivative {
        input: InputRef,
        tol_residual_log: f64,
        grid_side: usize,
        exclusion: Option<f64>,
    },
    JentzschCheck {
        input: InputRef,
        eps: Vec<f64>,
    },
}

/// One output file held in memory until the run succeeds.
pub struct Artifact {
    pub name: &'static str,
    pub bytes: Vec<u8>,
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{family} needs --{flag}")))
}

fn truncation(
    k: Option<usize>,
    auto: bool,
    a: &GenerateArgs,
    family: &str,
    rule: impl Fn(f64, f64) -> zerodist::Result<usize>,
) -> Result<(usize, Option<AutoK>), CliError> {
    match (k, auto) {
        (Some(k), false) => Ok((k, None)),
        (None, true) => {
            let k = rule(a.radius, a.tail_tol).map_err(param_error)?;
            Ok((k, Some(AutoK { radius: a.radius, tail_log_tol: a.tail_tol })))
        }
        _ => Err(CliError::Usage(format!("{family} needs exactly one of --K and --auto-K"))),
    }
}

fn family_spec(a: &GenerateArgs, seed: u64) -> Result<FamilySpec, CliError> {
    Ok(match a.family {
        FamilyName::GeometricPartialSum => FamilySpec::GeometricPartialSum { n: need(a.n, "n", "geometric-partial-sum")? },
        FamilyName::CustomRule => {
            if a.rule.is_some() == a.coeffs.is_some() {
                return Err(CliError::Usage("custom-rule needs exactly one of --rule and --coeffs".into()));
            }
            if a.rule.is_some() && a.n.is_none() {
                return Err(CliError::Usage("custom-rule --rule needs --n".into()));
            }
            FamilySpec::CustomRule { n: a.n, rule: a.rule, coeffs: a.coeffs.clone(), v: a.v }
        }
        FamilyName::Tutte => FamilySpec::Tutte { n: need(a.n, "n", "tutte")? },
        FamilyName::Ruelle => {
            let c = need(a.c, "c", "ruelle")?;
            let (k, auto_k) = truncation(a.k, a.auto_k, a, "ruelle", |r, tol| ruelle_auto_k(c, r, tol))?;
            FamilySpec::Ruelle { c, k, auto_k }
        }
        FamilyName::Hardy => {
            let x = need(a.a, "a", "hardy")?;
            let (k, auto_k) = truncation(a.k, a.auto_k, a, "hardy", |r, tol| hardy_auto_k(x, r, tol))?;
            FamilySpec::Hardy { a: x, k, auto_k }
        }
        FamilyName::RandomRootsDisk => FamilySpec::RandomRootsDisk { n: need(a.n, "n", "random-roots-disk")?, seed },
    })
}

fn rule_coeff(rule: Rule, k: usize) -> ExtComplex {
    match rule {
        Rule::One => ExtComplex::ONE,
        Rule::Reciprocal => ExtComplex::from_f64(1.0 / (k + 1) as f64),
        Rule::Exponential => {
            ExtComplex::from_real(ExtScalar::from_bigint(&factorial(k as u64)).recip().expect("k! is nonzero"))
        }
        Rule::Alternating => ExtComplex::from_f64(if k.is_multiple_of(2) { 1.0 } else { -1.0 }),
    }
}

pub fn build_family(family: &FamilySpec) -> Result<CoeffSeq, CliError> {
    let seq = match family {
        FamilySpec::GeometricPartialSum { n } => geometric_partial_sum(*n),
        FamilySpec::CustomRule { n, rule, coeffs, v } => {
            let base = match (rule, coeffs) {
                (Some(r), None) => {
                    let r = *r;
                    partial_sums(move |k| rule_coeff(r, k), n.unwrap_or(0)).map(|f| f.with_label("custom-rule"))
                }
                (None, Some(c)) => {
                    let d = c.len().saturating_sub(1).max(1);
                    CoeffSeq::from_f64("custom-rule", n.unwrap_or(d) as u64, d as f64, c)
                }
                _ => return Err(CliError::Usage("custom-rule needs exactly one of rule and coeffs".into())),
            };
            match v {
                Some(v) => base.and_then(|f| f.with_v(*v)),
                None => base,
            }
        }
        FamilySpec::Tutte { n } => tutte_connected(*n).and_then(|p| tutte_coeffseq(&p, *n)),
        FamilySpec::Ruelle { c, k, .. } => ruelle_zeta(*c, *k),
        FamilySpec::Hardy { a, k, .. } => hardy(*a, *k),
        FamilySpec::RandomRootsDisk { n, seed } => {
            if *n < 1 {
                return Err(CliError::Usage("random-roots-disk needs n >= 1".into()));
            }
            from_roots("random-roots-disk", &random_disk_zeros(*n, *seed))
        }
    };
    seq.map_err(param_error)
}

fn input_ref(path: &Path) -> Result<InputRef, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::input(path, e))?;
    let abs = std::fs::canonicalize(path).map_err(|e| CliError::input(path, e))?;
    Ok(InputRef { path: abs, sha256: sha256_hex(&bytes) })
}

/// Reads a coefficient file, failing if it no longer matches its hash.
fn load(input: &InputRef) -> Result<CoeffSeq, CliError> {
    let bytes = std::fs::read(&input.path).map_err(|e| CliError::input(&input.path, e))?;
    if sha256_hex(&bytes) != input.sha256 {
        return Err(CliError::input(&input.path, "contents changed since the run was recorded"));
    }
    serde_json::from_slice(&bytes).map_err(|e| CliError::input(&input.path, format!("malformed coefficient file: {e}")))
}

fn aberth(tol: f64) -> AberthOptions {
    AberthOptions { residual_tol_log: tol, ..AberthOptions::default() }
}

/// Turns parsed arguments into a self-contained configuration.
pub fn resolve(cli: &Cli) -> Result<RunConfig, CliError> {
    let tol = cli.tol_residual.unwrap_or(AberthOptions::default().residual_tol_log);
    if !(tol.is_finite() && tol < 0.0) {
        return Err(CliError::Usage(format!("--tol-residual must be a negative log, got {tol}")));
    }
    Ok(match &cli.command {
        Command::Generate(a) => RunConfig::Generate { family: family_spec(a, cli.seed)? },
        Command::Analyze { input, radius_guess } => {
            if radius_guess.is_some_and(|r| !(r > 0.0 && r.is_finite())) {
                return Err(CliError::Usage("--radius-guess must be positive".into()));
            }
            RunConfig::Analyze { input: input_ref(input)?, grid: cli.grid, tol_residual_log: tol, radius_guess: *radius_guess }
        }
        Command::CompareDerivative { input, grid_side, exclusion } => {
            if *grid_side < 1 {
                return Err(CliError::Usage("--grid-side must be at least 1".into()));
            }
            RunConfig::CompareDerivative {
                input: input_ref(input)?,
                tol_residual_log: tol,
                grid_side: *grid_side,
                exclusion: *exclusion,
            }
        }
        Command::JentzschCheck { input, eps } => RunConfig::JentzschCheck { input: input_ref(input)?, eps: eps.clone() },
        Command::Verify { .. } => unreachable!("verify has no run configuration"),
    })
}

fn json<T: Serialize>(name: &'static str, v: &T) -> Artifact {
    let mut bytes = serde_json::to_vec_pretty(v).expect("reports serialize");
    bytes.push(b'\n');
    Artifact { name, bytes }
}

fn text(name: &'static str, s: String) -> Artifact {
    Artifact { name, bytes: s.into_bytes() }
}

#[derive(Serialize)]
struct EpsResult {
    eps: f64,
    holds: bool,
}

#[derive(Serialize)]
struct JentzschReport<'a> {
    schema_version: u32,
    label: &'a str,
    n: u64,
    degree: usize,
    results: Vec<EpsResult>,
}

/// Runs a configuration; returns the artifacts and a short human summary.
pub fn produce(cfg: &RunConfig) -> Result<(Vec<Artifact>, Vec<String>), CliError> {
    match cfg {
        RunConfig::Generate { family } => {
            let f = build_family(family)?;
            let line = format!("{}: n = {}, degree = {}, V = {}", f.label(), f.n(), f.degree(), f.v());
            Ok((vec![json("coeffseq.json", &f)], vec![line]))
        }
        RunConfig::Analyze { input, grid, tol_residual_log, radius_guess } => {
            let f = load(input)?;
            let t_grid = match grid {
                Some(g) => linear_grid(g.t_min, g.t_max, g.n).map_err(param_error)?,
                None => default_t_grid(&f)?,
            };
            let t1 = theorem1_check(&f, &t_grid)?;
            let opts = UniformityOptions { t_grid: Some(t_grid), aberth: aberth(*tol_residual_log), ..Default::default() };
            let u = uniformity_report(&f, *radius_guess, &opts)?;
            let roots = u.roots.as_ref().expect("uniformity report carries its roots");
            let lines = vec![
                format!("duality residual {:e}, sandwich gap {:.6}", t1.duality_residual, t1.sandwich_gap),
                format!(
                    "{} roots ({} at the origin), detector: {}, circles: {:?}",
                    u.root_count,
                    u.zeros_at_origin,
                    u.detector_status,
                    u.circles.iter().map(|c| c.radius).collect::<Vec<_>>()
                ),
            ];
            let arts = vec![
                json("theorem1.json", &t1),
                json("uniformity.json", &u),
                text("roots.csv", roots.to_csv()),
                text("profile.svg", figures::profile(&f, &t1, u.segmentation.as_ref())),
                text("envelope.svg", figures::envelope(&f, &t1)),
                text("roots.svg", figures::roots(&f, roots, &u.circles)),
            ];
            Ok((arts, lines))
        }
        RunConfig::CompareDerivative { input, tol_residual_log, grid_side, exclusion } => {
            let f = load(input)?;
            let reach = newton_polygon_radii(&f).iter().map(|&(s, _)| s.exp()).fold(0.0, f64::max);
            let half = if reach > 0.0 && reach.is_finite() { 1.25 * reach } else { 1.0 };
            let grid = square_grid(half, *grid_side);
            let rep = derivative_comparison(&f, &grid, *exclusion, aberth(*tol_residual_log))?;
            let line = format!(
                "w1(zeros, critical points) = {}, pointwise gap max = {:?}",
                rep.w1_zero_vs_crit, rep.pointwise_gap
            );
            let overlay = figures::overlay(&f, rep.zeros.as_ref(), rep.critical_points.as_ref());
            Ok((vec![json("derivative.json", &rep), text("overlay.svg", overlay)], vec![line]))
        }
        RunConfig::JentzschCheck { input, eps } => {
            let f = load(input)?;
            let results = eps
                .iter()
                .map(|&e| Ok(EpsResult { eps: e, holds: jentzsch_condition(&f, e).map_err(param_error)? }))
                .collect::<Result<Vec<_>, CliError>>()?;
            let lines = results.iter().map(|r| format!("eps = {}: {}", r.eps, r.holds)).collect();
            let rep = JentzschReport { schema_version: SCHEMA_VERSION, label: f.label(), n: f.n(), degree: f.degree(), results };
            Ok((vec![json("jentzsch.json", &rep)], lines))
        }
    }
}
