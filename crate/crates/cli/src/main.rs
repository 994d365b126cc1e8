//! Command-line front end: parses a layered configuration (TOML document
//! plus flag overrides, flags winning), dispatches the experiments, and
//! writes machine-readable CSV/JSON reports.
//!
//! Exit status: 0 on success, 1 on configuration/validation failure, 2 on
//! numerical failure (non-convergence, overflow) or a failed check.
//! `BERGMAN_WORM_THREADS` selects the worker count; the default is the
//! machine parallelism. Reports are byte-identical across runs for a fixed
//! configuration and seed.

mod commands;
mod config;
mod report;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use std::path::PathBuf;
use std::process::ExitCode;

use config::ConfigFile;
use report::ReportFormat;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
}

#[derive(Parser, Debug)]
#[command(
    name = "bergman-worm",
    version,
    about = "Bergman-space diagnostics on the truncated worm domain",
    long_about = "Closed-form inner products of the worm-domain monomial families, checked \
                  against brute-force integration oracles, plus orthogonality, completeness, \
                  and incompleteness experiments. Configuration comes from an optional TOML \
                  document overridden by these flags. Pass negative values with '=', e.g. \
                  --alpha-re=-0.5."
)]
struct Cli {
    /// TOML configuration file (flags override its values)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Report file path (stdout always gets a per-row summary)
    #[arg(long, global = true)]
    output: Option<String>,

    /// Report format
    #[arg(long, global = true, value_enum)]
    format: Option<ReportFormat>,

    /// Half-width μ of log|z₂|²
    #[arg(long, global = true)]
    mu: Option<f64>,

    /// Base exponent shift c₀ of the monomial lattice
    #[arg(long, global = true)]
    c0: Option<f64>,

    #[command(flatten)]
    quad: config::QuadFlags,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form inner product vs the integration oracles
    InnerProduct {
        #[arg(long)]
        alpha_re: Option<f64>,
        #[arg(long)]
        alpha_im: Option<f64>,
        #[arg(long)]
        beta_re: Option<f64>,
        #[arg(long)]
        beta_im: Option<f64>,
        #[arg(long)]
        j: Option<i32>,
        /// Also run the Monte-Carlo oracle
        #[arg(long)]
        with_mc: bool,
    },
    /// Normalized Gram system of lattice elements plus projection residual
    Gram {
        #[arg(long)]
        j: Option<i32>,
        #[arg(long)]
        target_ell: Option<u32>,
        /// Comma-separated basis indices, e.g. 1,2,3
        #[arg(long, value_delimiter = ',')]
        basis_ells: Option<Vec<u32>>,
    },
    /// Pairwise normalized inner products of one parity class
    OrthogonalityCheck {
        #[arg(long)]
        j: Option<i32>,
        /// Even-index lattice elements (default)
        #[arg(long)]
        even: bool,
        /// Odd-index lattice elements
        #[arg(long, conflicts_with = "even")]
        odd: bool,
        #[arg(long)]
        ell_max: Option<u32>,
    },
    /// Incompleteness certificate: Bessel defect and its bounding sums
    BesselDefect {
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        j: Option<i32>,
        #[arg(long)]
        k_max: Option<u32>,
    },
    /// Truncations of the residue series for π²
    Pi2Series {
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n_terms: Option<u32>,
    },
    /// Density trend of power families in the disk space
    Muntz {
        #[arg(long)]
        a: Option<f64>,
        /// Exponent offset of the family (distinct from the worm c₀)
        #[arg(long)]
        muntz_c0: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long)]
        sigma_re: Option<f64>,
        #[arg(long)]
        sigma_im: Option<f64>,
        /// Comma-separated truncation list, e.g. 1,2,4,8,16
        #[arg(long, value_delimiter = ',')]
        truncations: Option<Vec<i64>>,
    },
    /// Redundancy of the first lattice element inside the rest of the family
    RedThm {
        #[arg(long)]
        j: Option<i32>,
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Joint-family completeness trend for chosen targets
    Completeness {
        #[arg(long)]
        j: Option<i32>,
        #[arg(long)]
        n_max: Option<u32>,
        /// Targets as re,im exponent pairs; repeatable
        #[arg(long, value_parser = parse_complex_pair)]
        target: Vec<(f64, f64)>,
    },
    /// Full closed-form-vs-oracle suite with pass/fail per case
    Verify,
}

fn parse_complex_pair(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected re,im (got {s:?})"));
    }
    let re: f64 = parts[0].trim().parse().map_err(|e| format!("re: {e}"))?;
    let im: f64 = parts[1].trim().parse().map_err(|e| format!("im: {e}"))?;
    Ok((re, im))
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::InnerProduct { .. } => "inner-product",
        Command::Gram { .. } => "gram",
        Command::OrthogonalityCheck { .. } => "orthogonality-check",
        Command::BesselDefect { .. } => "bessel-defect",
        Command::Pi2Series { .. } => "pi2-series",
        Command::Muntz { .. } => "muntz",
        Command::RedThm { .. } => "red-thm",
        Command::Completeness { .. } => "completeness",
        Command::Verify => "verify",
    }
}

fn require<T>(value: Option<T>, field: &str) -> Result<T, CliError> {
    value.ok_or_else(|| {
        CliError::Validation(format!(
            "{field}: required (set it in the config file or pass the flag)"
        ))
    })
}

fn init_thread_pool() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("BERGMAN_WORM_THREADS") {
        let n: usize = v.parse().map_err(|_| {
            CliError::Validation(format!(
                "BERGMAN_WORM_THREADS: expected a positive integer (got {v:?})"
            ))
        })?;
        if n == 0 {
            return Err(CliError::Validation(
                "BERGMAN_WORM_THREADS: expected a positive integer (got 0)".into(),
            ));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Validation(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    init_thread_pool()?;
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let name = command_name(&cli.command);
    if let Some(declared) = &file.command {
        if declared != name {
            return Err(CliError::Validation(format!(
                "command: config declares {declared:?} but {name:?} was invoked"
            )));
        }
    }
    let params = config::resolve_worm(&file.worm, cli.mu, cli.c0)?;
    let quad = config::resolve_quad(&file.quad, &cli.quad)?;
    let output = cli.output.or_else(|| file.output.path.clone());
    let format = match cli.format {
        Some(f) => f,
        None => match file.output.format.as_deref() {
            Some("csv") => ReportFormat::Csv,
            Some("json") | None => ReportFormat::Json,
            Some(other) => {
                return Err(CliError::Validation(format!(
                    "output.format: expected \"csv\" or \"json\" (got {other:?})"
                )))
            }
        },
    };

    let report = match &cli.command {
        Command::InnerProduct {
            alpha_re,
            alpha_im,
            beta_re,
            beta_im,
            j,
            with_mc,
        } => {
            let t = &file.inner_product;
            let alpha = Complex64::new(
                require(alpha_re.or(t.alpha_re), "inner-product.alpha-re")?,
                alpha_im.or(t.alpha_im).unwrap_or(0.0),
            );
            let beta = Complex64::new(
                require(beta_re.or(t.beta_re), "inner-product.beta-re")?,
                beta_im.or(t.beta_im).unwrap_or(0.0),
            );
            let j = j.or(t.j).unwrap_or(0);
            let with_mc = *with_mc || t.with_mc.unwrap_or(false);
            commands::inner_product(alpha, beta, j, with_mc, &params, &quad)?
        }
        Command::Gram {
            j,
            target_ell,
            basis_ells,
        } => {
            let t = &file.gram;
            commands::gram(
                j.or(t.j).unwrap_or(0),
                target_ell.or(t.target_ell).unwrap_or(0),
                &require(
                    basis_ells.clone().or_else(|| t.basis_ells.clone()),
                    "gram.basis-ells",
                )?,
                &params,
                &quad,
            )?
        }
        Command::OrthogonalityCheck {
            j,
            even,
            odd,
            ell_max,
        } => {
            let t = &file.orthogonality_check;
            let even = if *even || *odd {
                *even
            } else {
                match t.parity.as_deref() {
                    Some("odd") => false,
                    Some("even") | None => true,
                    Some(other) => return Err(CliError::Validation(format!(
                        "orthogonality-check.parity: expected \"even\" or \"odd\" (got {other:?})"
                    ))),
                }
            };
            commands::orthogonality_check(
                j.or(t.j).unwrap_or(0),
                even,
                ell_max.or(t.ell_max).unwrap_or(12),
                &params,
                &quad,
            )?
        }
        Command::BesselDefect { m, j, k_max } => {
            let t = &file.bessel_defect;
            commands::bessel(
                m.or(t.m).unwrap_or(0),
                j.or(t.j).unwrap_or(0),
                k_max.or(t.k_max).unwrap_or(50),
                &params,
                &quad,
            )?
        }
        Command::Pi2Series { m, n_terms } => {
            let t = &file.pi2_series;
            commands::pi2(
                m.or(t.m).unwrap_or(0),
                n_terms.or(t.n_terms).unwrap_or(10_000),
                &params,
                &quad,
            )?
        }
        Command::Muntz {
            a,
            muntz_c0,
            b,
            sigma_re,
            sigma_im,
            truncations,
        } => {
            let t = &file.muntz;
            commands::muntz(
                a.or(t.a).unwrap_or(0.5),
                muntz_c0.or(t.c0).unwrap_or(0.0),
                b.or(t.b).unwrap_or(0.0),
                Complex64::new(
                    sigma_re.or(t.sigma_re).unwrap_or(0.3),
                    sigma_im.or(t.sigma_im).unwrap_or(0.0),
                ),
                &truncations
                    .clone()
                    .or_else(|| t.truncations.clone())
                    .unwrap_or_else(|| vec![1, 2, 4, 8, 16]),
                &params,
                &quad,
            )?
        }
        Command::RedThm { j, n_max } => {
            let t = &file.red_thm;
            commands::red_thm(
                j.or(t.j).unwrap_or(0),
                n_max.or(t.n_max).unwrap_or(24),
                &params,
                &quad,
            )?
        }
        Command::Completeness { j, n_max, target } => {
            let t = &file.completeness;
            let j = j.or(t.j).unwrap_or(0);
            let targets: Vec<[f64; 2]> = if !target.is_empty() {
                target.iter().map(|&(re, im)| [re, im]).collect()
            } else if let Some(list) = &t.targets {
                list.clone()
            } else {
                // off-lattice default halfway between the first two indices
                vec![[params.c0() + params.nu() * 0.5, (j as f64 + 1.0) / 2.0]]
            };
            commands::completeness(j, n_max.or(t.n_max).unwrap_or(16), &targets, &params, &quad)?
        }
        Command::Verify => commands::verify(&params, &quad)?,
    };

    report.emit(output.as_deref(), format)?;
    Ok(report.all_pass())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: one or more checks failed");
            ExitCode::from(2)
        }
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
