//! Layered configuration: an optional TOML document supplies defaults, and
//! command-line flags override individual values. Unknown keys anywhere in
//! the document are rejected.

use bergman_worm::geometry::{QuadConfig, WormParams};
use serde::Deserialize;
use std::path::Path;

use crate::CliError;

/// The full configuration document. Every command's parameter table may be
/// present; only the one matching the invoked command is consulted.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConfigFile {
    /// Optional command name; must match the invoked subcommand when given.
    pub command: Option<String>,
    pub worm: WormTable,
    pub quad: QuadConfig,
    pub output: OutputTable,
    #[serde(rename = "inner-product")]
    pub inner_product: InnerProductTable,
    pub gram: GramTable,
    #[serde(rename = "orthogonality-check")]
    pub orthogonality_check: OrthogonalityTable,
    #[serde(rename = "bessel-defect")]
    pub bessel_defect: BesselTable,
    #[serde(rename = "pi2-series")]
    pub pi2_series: Pi2Table,
    pub muntz: MuntzTable,
    #[serde(rename = "red-thm")]
    pub red_thm: RedThmTable,
    pub completeness: CompletenessTable,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WormTable {
    pub mu: f64,
    pub c0: f64,
}

impl Default for WormTable {
    fn default() -> Self {
        Self {
            mu: std::f64::consts::PI,
            c0: 0.0,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputTable {
    pub path: Option<String>,
    pub format: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default, rename_all = "kebab-case")]
pub struct InnerProductTable {
    pub alpha_re: Option<f64>,
    pub alpha_im: Option<f64>,
    pub beta_re: Option<f64>,
    pub beta_im: Option<f64>,
    pub j: Option<i32>,
    pub with_mc: Option<bool>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default, rename_all = "kebab-case")]
pub struct GramTable {
    pub j: Option<i32>,
    pub target_ell: Option<u32>,
    pub basis_ells: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default, rename_all = "kebab-case")]
pub struct OrthogonalityTable {
    pub j: Option<i32>,
    pub parity: Option<String>,
    pub ell_max: Option<u32>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default, rename_all = "kebab-case")]
pub struct BesselTable {
    pub m: Option<u32>,
    pub j: Option<i32>,
    pub k_max: Option<u32>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default, rename_all = "kebab-case")]
pub struct Pi2Table {
    pub m: Option<u32>,
    pub n_terms: Option<u32>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default, rename_all = "kebab-case")]
pub struct MuntzTable {
    pub a: Option<f64>,
    pub c0: Option<f64>,
    pub b: Option<f64>,
    pub sigma_re: Option<f64>,
    pub sigma_im: Option<f64>,
    pub truncations: Option<Vec<i64>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default, rename_all = "kebab-case")]
pub struct RedThmTable {
    pub j: Option<i32>,
    pub n_max: Option<u32>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default, rename_all = "kebab-case")]
pub struct CompletenessTable {
    pub j: Option<i32>,
    pub n_max: Option<u32>,
    /// Targets as [re, im] exponent pairs; defaults to one off-lattice
    /// exponent halfway between the first two lattice points.
    pub targets: Option<Vec<[f64; 2]>>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Validation(format!("config {}: {e}", path.display())))
    }
}

/// Validated worm parameters from config + flag overrides.
pub fn resolve_worm(
    table: &WormTable,
    mu_flag: Option<f64>,
    c0_flag: Option<f64>,
) -> Result<WormParams, CliError> {
    let mu = mu_flag.unwrap_or(table.mu);
    let c0 = c0_flag.unwrap_or(table.c0);
    WormParams::new(mu, c0).map_err(|e| CliError::Validation(e.to_string()))
}

/// Validated quadrature controls from config + flag overrides.
#[derive(Debug, Clone, Copy, Default, clap::Args)]
pub struct QuadFlags {
    /// Gauss–Legendre nodes per radial panel
    #[arg(long, global = true)]
    pub radial_nodes: Option<usize>,
    /// Angular node count
    #[arg(long, global = true)]
    pub angular_nodes: Option<usize>,
    /// Gauss–Legendre nodes in the fiber direction
    #[arg(long, global = true)]
    pub s_nodes: Option<usize>,
    /// Radial subdivision levels toward the boundary singularity
    #[arg(long, global = true)]
    pub max_subdivision: Option<usize>,
    /// Absolute tolerance for oracle convergence
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    /// Relative tolerance for oracle convergence
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    /// Monte-Carlo sample count
    #[arg(long, global = true)]
    pub mc_samples: Option<u64>,
    /// Seed of the Monte-Carlo counter stream
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

pub fn resolve_quad(base: &QuadConfig, flags: &QuadFlags) -> Result<QuadConfig, CliError> {
    let cfg = QuadConfig {
        radial_nodes: flags.radial_nodes.unwrap_or(base.radial_nodes),
        angular_nodes: flags.angular_nodes.unwrap_or(base.angular_nodes),
        s_nodes: flags.s_nodes.unwrap_or(base.s_nodes),
        max_subdivision: flags.max_subdivision.unwrap_or(base.max_subdivision),
        abs_tol: flags.abs_tol.unwrap_or(base.abs_tol),
        rel_tol: flags.rel_tol.unwrap_or(base.rel_tol),
        mc_samples: flags.mc_samples.unwrap_or(base.mc_samples),
        seed: flags.seed.unwrap_or(base.seed),
    };
    cfg.validate()
        .map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_are_rejected() {
        let err = toml::from_str::<ConfigFile>("[worm]\nmu = 1.0\nwidth = 2.0\n").unwrap_err();
        assert!(err.to_string().contains("width"), "{err}");
    }

    #[test]
    fn kebab_case_tables_parse() {
        let cfg: ConfigFile = toml::from_str(
            "[bessel-defect]\nm = 1\nk-max = 40\n\n[muntz]\ntruncations = [1, 2, 4]\n",
        )
        .unwrap();
        assert_eq!(cfg.bessel_defect.m, Some(1));
        assert_eq!(cfg.bessel_defect.k_max, Some(40));
        assert_eq!(cfg.muntz.truncations, Some(vec![1, 2, 4]));
    }

    #[test]
    fn invalid_mu_is_a_validation_error() {
        let cfg: ConfigFile = toml::from_str("[worm]\nmu = -1.0\n").unwrap();
        let err = resolve_worm(&cfg.worm, None, None).unwrap_err();
        assert!(err.to_string().contains("worm.mu"), "{err}");
    }
}
