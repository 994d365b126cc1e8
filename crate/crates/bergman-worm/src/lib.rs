//! Numerics for the Bergman space of the truncated worm domain.
//!
//! The truncated worm is the bounded, non-smooth domain in ℂ²
//!
//! ```text
//! W′_μ = { (z₁, z₂) : |z₁ − e^{i log|z₂|²}| < 1,  |log|z₂|²| < μ },   μ > 0,
//! ```
//!
//! whose fiber disks in z₁ wind around the origin as |z₂| varies. Its Bergman
//! space A²(W′_μ) admits explicit one-parameter families of "monomials"
//! F_{α,j} = E_α(z)·z₂^j built from a branched power E_α, with closed-form
//! inner products in terms of the Gamma function and a sinh kernel. This crate
//! evaluates those closed forms, checks every one of them against independent
//! brute-force integration oracles, and runs the completeness/incompleteness
//! diagnostics that the closed forms make possible:
//!
//! * [`special`] — complex log-Gamma (Lanczos), log-space Gamma ratios, and
//!   the sinh-ratio kernel with its removable singularity.
//! * [`geometry`] — the disk Δ = {|ζ−1| < 1} and W′_μ, fiber coordinates,
//!   and quadrature node generation.
//! * [`monomials`] — E_η, F_{α,j}, H_{ℓ,j}, closed-form inner products,
//!   norms, and the exact orthogonality predicate.
//! * [`oracle`] — reduced 3D quadrature, a direct 4D Monte-Carlo check over
//!   the ambient domain, and the numerical Fourier-sector projector.
//! * [`diagnostics`] — Gram systems, least-squares projection residuals,
//!   Bessel-defect incompleteness certificates, and a Müntz–Szász-type
//!   density experiment on A²(Δ).
//!
//! All operations are pure functions over immutable values; parallel sums are
//! reduced in a fixed order so results are bit-reproducible regardless of the
//! number of worker threads.

// `!(x > 0.0)` guards reject NaN along with the out-of-range values; the
// suggested `partial_cmp` forms do not.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// reference constants (Lanczos table, frozen test values) keep their
// published digits even where f64 cannot hold them all
#![allow(clippy::excessive_precision)]

pub mod diagnostics;
pub mod geometry;
pub mod monomials;
pub mod oracle;
pub mod rng;
pub mod special;
pub mod summation;

pub use geometry::{FiberPoint, QuadConfig, WormParams};
pub use monomials::{MonomialIndex, PowerSpec};
pub use oracle::OracleResult;

/// Complex double-precision scalar used throughout.
pub type C64 = num_complex::Complex64;
