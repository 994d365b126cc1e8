//! The disk Δ, the truncated worm W′_μ, fiber coordinates, and quadrature
//! nodes.
//!
//! Both domains are described in the fiber coordinates (ζ, s): a point of
//! W′_μ is (ζ·e^{is}, z₂) with ζ ∈ Δ = {|ζ−1| < 1} and s = log|z₂|² ∈
//! (−μ, μ). The change of variables collapses the four real dimensions of
//! the ambient inner-product integral to three, and node generation here
//! follows that reduction: a tensor product of a polar rule on Δ (centered
//! at 1, so the only boundary singularity of ζ^α sits at the far edge of the
//! radial direction) with Gauss–Legendre in s.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

/// Errors from domain parameters and membership tests.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("worm.mu: must be positive and finite (got {0})")]
    InvalidMu(f64),
    #[error("worm.c0: must be > -1 (got {0})")]
    InvalidC0(f64),
    #[error("z2 = 0: log|z2|^2 undefined")]
    ZeroFiber,
    #[error("fiber point outside the domain: {0}")]
    OutsideDomain(String),
    #[error("quad.{field}: {message}")]
    InvalidQuadConfig {
        field: &'static str,
        message: String,
    },
}

/// Parameters of the truncated worm W′_μ and the monomial family built on it.
///
/// `nu` is always derived from `mu` as π/(2μ) — the reciprocal winding
/// number — and never stored separately.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WormParams {
    mu: f64,
    c0: f64,
}

impl WormParams {
    /// Requires μ > 0 and c₀ > −1 (the latter keeps the monomials square
    /// integrable).
    pub fn new(mu: f64, c0: f64) -> Result<Self, GeometryError> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(GeometryError::InvalidMu(mu));
        }
        if !(c0 > -1.0) || !c0.is_finite() {
            return Err(GeometryError::InvalidC0(c0));
        }
        Ok(Self { mu, c0 })
    }

    /// Half-width of log|z₂|².
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Base exponent shift of the monomial grid.
    pub fn c0(&self) -> f64 {
        self.c0
    }

    /// ν = π/(2μ), computed on demand.
    pub fn nu(&self) -> f64 {
        PI / (2.0 * self.mu)
    }
}

/// A point of W′_μ in fiber coordinates: ζ ∈ Δ and s = log|z₂|².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberPoint {
    pub zeta: Complex64,
    pub s: f64,
}

impl FiberPoint {
    /// Checked constructor: |ζ−1| < 1 and |s| < μ.
    pub fn new(zeta: Complex64, s: f64, params: &WormParams) -> Result<Self, GeometryError> {
        if (zeta - 1.0).norm() >= 1.0 {
            return Err(GeometryError::OutsideDomain(format!(
                "|zeta - 1| = {} >= 1",
                (zeta - 1.0).norm()
            )));
        }
        if s.abs() >= params.mu() {
            return Err(GeometryError::OutsideDomain(format!(
                "|s| = {} >= mu = {}",
                s.abs(),
                params.mu()
            )));
        }
        Ok(Self { zeta, s })
    }
}

/// Controls for the quadrature and Monte-Carlo oracles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadConfig {
    /// Gauss–Legendre nodes per radial panel.
    pub radial_nodes: usize,
    /// Angular nodes (uniform trapezoid grid).
    pub angular_nodes: usize,
    /// Gauss–Legendre nodes on (−μ, μ).
    pub s_nodes: usize,
    /// Geometric subdivision levels of the radial direction toward the
    /// boundary point ζ = 0 of Δ.
    pub max_subdivision: usize,
    /// Absolute tolerance for oracle convergence checks.
    pub abs_tol: f64,
    /// Relative tolerance for oracle convergence checks.
    pub rel_tol: f64,
    /// Monte-Carlo sample count.
    pub mc_samples: u64,
    /// Seed of the counter-based Monte-Carlo stream.
    pub seed: u64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            radial_nodes: 24,
            angular_nodes: 256,
            s_nodes: 48,
            max_subdivision: 16,
            abs_tol: 1e-9,
            rel_tol: 1e-7,
            mc_samples: 200_000,
            seed: 0x5EED,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<(), GeometryError> {
        let node_check = |field: &'static str, n: usize| {
            if n < 4 {
                Err(GeometryError::InvalidQuadConfig {
                    field,
                    message: format!("node count must be >= 4 (got {n})"),
                })
            } else {
                Ok(())
            }
        };
        node_check("radial_nodes", self.radial_nodes)?;
        node_check("angular_nodes", self.angular_nodes)?;
        node_check("s_nodes", self.s_nodes)?;
        for (field, t) in [("abs_tol", self.abs_tol), ("rel_tol", self.rel_tol)] {
            if !(t > 0.0 && t < 1.0) {
                return Err(GeometryError::InvalidQuadConfig {
                    field,
                    message: format!("tolerance must lie in (0, 1) (got {t})"),
                });
            }
        }
        if self.mc_samples == 0 {
            return Err(GeometryError::InvalidQuadConfig {
                field: "mc_samples",
                message: "sample count must be positive".into(),
            });
        }
        Ok(())
    }
}

/// Membership test for W′_μ: |z₁ − e^{i log|z₂|²}| < 1 and |log|z₂|²| < μ.
pub fn in_worm(z1: Complex64, z2: Complex64, params: &WormParams) -> Result<bool, GeometryError> {
    if z2 == Complex64::new(0.0, 0.0) {
        return Err(GeometryError::ZeroFiber);
    }
    let s = z2.norm_sqr().ln();
    Ok(s.abs() < params.mu() && (z1 - Complex64::from_polar(1.0, s)).norm() < 1.0)
}

/// Fiber coordinates to ambient coordinates: (ζ, s) ↦ (ζ·e^{is}, e^{s/2}).
pub fn fiber_to_ambient(p: &FiberPoint) -> (Complex64, Complex64) {
    let rot = Complex64::from_polar(1.0, p.s);
    (p.zeta * rot, Complex64::new((0.5 * p.s).exp(), 0.0))
}

/// Gauss–Legendre nodes and weights on [−1, 1].
///
/// Newton iteration on the Legendre recurrence; accurate to machine
/// precision for the node counts used here.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(x) and P'_n(x) by upward recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Radial panel breakpoints: geometric grading toward r = 1, where the
/// boundary point ζ = 0 of Δ sits in the polar parameterization centered
/// at 1. `levels = 0` is the single panel (0, 1).
pub(crate) fn radial_breakpoints(levels: usize) -> Vec<f64> {
    let mut bps: Vec<f64> = (0..=levels).map(|k| 1.0 - 0.5f64.powi(k as i32)).collect();
    bps.push(1.0);
    bps
}

/// Tensor-product quadrature nodes on Δ, as (node, weight) pairs.
///
/// Polar coordinates centered at 1: ζ = 1 + r·e^{iθ} with Gauss–Legendre in
/// r on geometrically graded panels and a uniform trapezoid grid in θ. The
/// weights carry the polar Jacobian, so Σ w·f(ζ) ≈ ∫_Δ f dA and the weights
/// alone sum to the area π.
pub fn disk_nodes(cfg: &QuadConfig) -> Vec<(Complex64, f64)> {
    let (xs, ws) = gauss_legendre(cfg.radial_nodes);
    let bps = radial_breakpoints(cfg.max_subdivision);
    let n_t = cfg.angular_nodes;
    let dtheta = 2.0 * PI / n_t as f64;
    let mut nodes = Vec::with_capacity((bps.len() - 1) * cfg.radial_nodes * n_t);
    for panel in bps.windows(2) {
        let mid = 0.5 * (panel[1] + panel[0]);
        let half = 0.5 * (panel[1] - panel[0]);
        for (&x, &wr) in xs.iter().zip(&ws) {
            let r = mid + half * x;
            let w_radial = half * wr * r; // polar Jacobian
            for k in 0..n_t {
                let theta = dtheta * k as f64;
                let zeta = 1.0 + Complex64::from_polar(r, theta);
                nodes.push((zeta, w_radial * dtheta));
            }
        }
    }
    nodes
}

/// Tensor product of [`disk_nodes`] with Gauss–Legendre on (−μ, μ), as
/// (fiber point, weight) pairs.
///
/// Weights carry the leading π of the reduced inner-product formula, so for
/// F = f·z₂^j and G = g·z₂^j in the same rotation sector,
/// Σ w·f(ζe^{is}, e^{s/2})·conj(g(ζe^{is}, e^{s/2}))·e^{s(j+1)}
/// approximates ⟨F, G⟩ in A²(W′_μ).
pub fn worm_nodes(cfg: &QuadConfig, params: &WormParams) -> Vec<(FiberPoint, f64)> {
    let disk = disk_nodes(cfg);
    let (xs, ws) = gauss_legendre(cfg.s_nodes);
    let mu = params.mu();
    let mut nodes = Vec::with_capacity(disk.len() * cfg.s_nodes);
    for (&x, &w_s) in xs.iter().zip(&ws) {
        let s = mu * x;
        let w_outer = PI * mu * w_s;
        for &(zeta, w_d) in &disk {
            nodes.push((FiberPoint { zeta, s }, w_outer * w_d));
        }
    }
    nodes
}
