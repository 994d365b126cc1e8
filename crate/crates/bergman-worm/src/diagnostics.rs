//! Theorem-level experiments: least-squares projection residuals, the
//! Bessel-defect incompleteness certificate, and the auxiliary identities
//! behind it.
//!
//! Everything here reduces to Gram systems over the closed-form inner
//! products. Basis elements are unit-normalized before assembly — raw norms
//! of H_{ℓ,j} grow Gamma-fast in ℓ, and normalization is a similarity
//! transform that leaves residuals untouched — and the normalized entries
//! are produced in log space, so spans can reach indices whose raw norms
//! overflow f64. Solves go through a rank-revealing Hermitian
//! eigendecomposition with a relative drop tolerance: the Müntz-type systems
//! studied here are exponentially ill-conditioned by nature, and the
//! condition estimate is always surfaced next to the residual.

use crate::geometry::WormParams;
use crate::monomials::{self, MonomialError, MonomialIndex, PowerSpec};
use crate::special::{self, LogComplex};
use crate::summation::pairwise_sum;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;
use thiserror::Error;

/// Relative eigenvalue drop tolerance of the rank-revealing solve.
pub const DROP_TOL: f64 = 1e-12;

/// Condition estimate above which results are flagged.
pub const ILL_CONDITION_THRESHOLD: f64 = 1e12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagnosticsError {
    #[error("basis element {index} lives in sector j = {found}, expected j = {expected}")]
    MixedSectors {
        index: usize,
        found: i32,
        expected: i32,
    },
    #[error("{what}: {why}")]
    InvalidParameter { what: &'static str, why: String },
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

/// A normalized least-squares system: Gram matrix of unit basis elements and
/// the inner products of a unit target against them.
#[derive(Debug, Clone)]
pub struct GramSystem {
    specs: Vec<PowerSpec>,
    matrix: DMatrix<Complex64>,
    rhs: DVector<Complex64>,
    target_norm_sq: f64,
}

impl GramSystem {
    pub fn specs(&self) -> &[PowerSpec] {
        &self.specs
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn rhs(&self) -> &DVector<Complex64> {
        &self.rhs
    }

    pub fn target_norm_sq(&self) -> f64 {
        self.target_norm_sq
    }

    /// Smallest eigenvalue of the Hermitian-symmetrized matrix. The Gram
    /// matrix of any set of vectors is positive semidefinite, so anything
    /// materially below zero indicates trouble upstream.
    pub fn smallest_eigenvalue(&self) -> f64 {
        if self.specs.is_empty() {
            return 0.0;
        }
        let sym = hermitian_part(&self.matrix);
        let eig = sym.symmetric_eigen();
        eig.eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min)
    }
}

fn hermitian_part(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Outcome of a rank-revealing projection solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionOutcome {
    /// Relative distance from the target to the span, in [0, 1].
    pub residual: f64,
    /// λ_max/λ_min of the normalized Gram matrix (∞ if λ_min ≤ 0).
    pub condition_estimate: f64,
    /// True when the condition estimate exceeds [`ILL_CONDITION_THRESHOLD`].
    pub ill_conditioned: bool,
    /// Eigenvalues discarded by the drop tolerance.
    pub dropped: usize,
}

/// Residuals of one target against a growing family of spans.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualCurve {
    pub truncation_sizes: Vec<usize>,
    pub residuals: Vec<f64>,
    pub condition_estimates: Vec<f64>,
}

/// Assemble the normalized Gram system of `basis` against `target`.
///
/// All elements must share one rotation sector. Entries are
/// worm_inner(b_i, b_k)/√(‖b_i‖²‖b_k‖²) with the upper triangle computed and
/// mirrored, so the matrix is Hermitian by construction.
pub fn gram_system(
    target: &PowerSpec,
    basis: &[PowerSpec],
    params: &WormParams,
) -> Result<GramSystem, DiagnosticsError> {
    for (index, b) in basis.iter().enumerate() {
        if b.j() != target.j() {
            return Err(DiagnosticsError::MixedSectors {
                index,
                found: b.j(),
                expected: target.j(),
            });
        }
    }
    let n = basis.len();
    let target_norm_sq = monomials::worm_norm_sq(target, params)?;
    let log_norms: Vec<f64> = basis
        .iter()
        .map(|b| monomials::worm_norm_sq_log(b, params))
        .collect::<Result<_, _>>()?;
    let log_target_norm = monomials::worm_norm_sq_log(target, params)?;

    // upper triangle in parallel, mirrored below
    let upper: Vec<((usize, usize), Complex64)> = (0..n)
        .flat_map(|i| (i..n).map(move |k| (i, k)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(i, k)| {
            let ip = monomials::worm_inner_log(&basis[i], &basis[k], params)
                .expect("sectors checked above");
            let entry = LogComplex::new(
                ip.log_modulus - 0.5 * log_norms[i] - 0.5 * log_norms[k],
                ip.phase,
            )
            .exp();
            ((i, k), entry)
        })
        .collect();
    let mut matrix = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for ((i, k), v) in upper {
        matrix[(i, k)] = v;
        if i != k {
            matrix[(k, i)] = v.conj();
        }
    }

    let rhs_entries: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let ip = monomials::worm_inner_log(target, &basis[i], params)
                .expect("sectors checked above");
            LogComplex::new(
                ip.log_modulus - 0.5 * log_target_norm - 0.5 * log_norms[i],
                ip.phase,
            )
            .exp()
        })
        .collect();
    let rhs = DVector::from_vec(rhs_entries);

    Ok(GramSystem {
        specs: basis.to_vec(),
        matrix,
        rhs,
        target_norm_sq,
    })
}

/// Relative distance from the target to the span of the basis.
///
/// Computes √(1 − Σ |(Uᵀ·rhs)_i|²/λ_i) over the eigenvalues kept by the
/// drop tolerance, where UΛU† is the Hermitian-symmetrized Gram matrix. The
/// transpose (not the adjoint) is what the normal equations demand for
/// rhs_i = ⟨target, b_i⟩. Ill-conditioned systems still return a value,
/// flagged through the condition estimate.
///
/// Distances below √ε ≈ 1.5e−8 are not resolvable by this quadratic form in
/// f64: a target lying exactly in the span comes back as ~1e−8, not 0.
pub fn projection_residual(sys: &GramSystem) -> ProjectionOutcome {
    residual_of(&sys.matrix, &sys.rhs)
}

fn residual_of(matrix: &DMatrix<Complex64>, rhs: &DVector<Complex64>) -> ProjectionOutcome {
    let n = matrix.nrows();
    if n == 0 {
        return ProjectionOutcome {
            residual: 1.0,
            condition_estimate: 1.0,
            ill_conditioned: false,
            dropped: 0,
        };
    }
    let sym = hermitian_part(matrix);
    let eig = sym.symmetric_eigen();
    let lambda_max = eig
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let lambda_min = eig
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let drop = DROP_TOL * lambda_max.max(0.0);

    let p = eig.eigenvectors.transpose() * rhs;
    let mut quad = 0.0;
    let mut dropped = 0usize;
    for i in 0..n {
        let lam = eig.eigenvalues[i];
        if lam > drop {
            quad += p[i].norm_sqr() / lam;
        } else {
            dropped += 1;
        }
    }
    let condition_estimate = if lambda_min > 0.0 {
        lambda_max / lambda_min
    } else {
        f64::INFINITY
    };
    ProjectionOutcome {
        residual: (1.0 - quad).clamp(0.0, 1.0).sqrt(),
        condition_estimate,
        ill_conditioned: condition_estimate > ILL_CONDITION_THRESHOLD,
        dropped,
    }
}

/// Residual of H-lattice projections: target against span{H_{ℓ,j} : ℓ ∈ ells}.
pub fn h_span_residual(
    target: &PowerSpec,
    ells: &[u32],
    j: i32,
    params: &WormParams,
) -> Result<ProjectionOutcome, DiagnosticsError> {
    let basis: Vec<PowerSpec> = ells
        .iter()
        .map(|&ell| monomials::resolve(MonomialIndex::new(ell, j), params))
        .collect();
    let sys = gram_system(target, &basis, params)?;
    Ok(projection_residual(&sys))
}

/// Residuals of each target against the growing spans
/// {H_{0,j}, …, H_{n,j}}, n = 0 … n_max.
///
/// The density claim behind this experiment assumes μ > π/2; the curves are
/// still computed for smaller μ (callers flag them as exploratory).
pub fn completeness_study(
    j: i32,
    params: &WormParams,
    targets: &[PowerSpec],
    n_max: u32,
) -> Result<Vec<ResidualCurve>, DiagnosticsError> {
    let mut curves = Vec::with_capacity(targets.len());
    for target in targets {
        let mut curve = ResidualCurve {
            truncation_sizes: Vec::new(),
            residuals: Vec::new(),
            condition_estimates: Vec::new(),
        };
        for n in 0..=n_max {
            let ells: Vec<u32> = (0..=n).collect();
            let outcome = h_span_residual(target, &ells, j, params)?;
            curve.truncation_sizes.push(ells.len());
            curve.residuals.push(outcome.residual);
            curve.condition_estimates.push(outcome.condition_estimate);
        }
        curves.push(curve);
    }
    Ok(curves)
}

/// Distance from H_{0,j} to span{H_{1,j}, …, H_{n,j}} for n = 1 … n_max: the
/// redundancy of the first lattice element inside the rest of the family.
pub fn redundancy_curve(
    j: i32,
    params: &WormParams,
    n_max: u32,
) -> Result<ResidualCurve, DiagnosticsError> {
    let target = monomials::resolve(MonomialIndex::new(0, j), params);
    let mut curve = ResidualCurve {
        truncation_sizes: Vec::new(),
        residuals: Vec::new(),
        condition_estimates: Vec::new(),
    };
    for n in 1..=n_max {
        let ells: Vec<u32> = (1..=n).collect();
        let outcome = h_span_residual(&target, &ells, j, params)?;
        curve.truncation_sizes.push(ells.len());
        curve.residuals.push(outcome.residual);
        curve.condition_estimates.push(outcome.condition_estimate);
    }
    Ok(curve)
}

/// The three pieces of the incompleteness certificate for the odd element
/// H_{2m+1,j} against the even family {H_{2k,j}}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselDefect {
    /// ‖H_{2m+1,j}‖².
    pub lhs: f64,
    /// Σ_{k ≤ k_max} |⟨H_{2m+1,j}, H_{2k,j}⟩|²/‖H_{2k,j}‖².
    pub rhs_partial: f64,
    /// Upper bound on the omitted k > k_max terms.
    pub tail_bound: f64,
}

impl BesselDefect {
    /// The certified gap lhs − rhs_partial − tail_bound; positive means the
    /// even family provably misses part of the target.
    pub fn margin(&self) -> f64 {
        self.lhs - self.rhs_partial - self.tail_bound
    }
}

/// Bessel-defect certificate: a finite computation that bounds the full
/// Bessel sum of H_{2m+1,j} over the even orthogonal family from above.
///
/// Only the sector j′ = j contributes (distinct sectors are orthogonal).
/// Each omitted term with k > k_max is at most lhs/(π²(k−(2m+1)/2)²) —
/// a Cauchy–Schwarz bound on the Gamma-ratio factor — and that tail is
/// summed exactly with the trigamma function. All Gamma ratios are taken in
/// log space, so large k never overflows.
pub fn bessel_defect(
    m: u32,
    j: i32,
    params: &WormParams,
    k_max: u32,
) -> Result<BesselDefect, DiagnosticsError> {
    if k_max < m + 2 {
        return Err(DiagnosticsError::InvalidParameter {
            what: "k_max",
            why: format!("need k_max >= m + 2 (got m = {m}, k_max = {k_max})"),
        });
    }
    let odd = monomials::resolve(MonomialIndex::new(2 * m + 1, j), params);
    let log_lhs = monomials::worm_norm_sq_log(&odd, params)?;
    let lhs = log_lhs.exp();

    let terms: Vec<f64> = (0..=k_max)
        .map(|k| {
            let even = monomials::resolve(MonomialIndex::new(2 * k, j), params);
            let ip = monomials::worm_inner_log(&odd, &even, params)?;
            let log_norm = monomials::worm_norm_sq_log(&even, params)?;
            Ok((2.0 * ip.log_modulus - log_norm).exp())
        })
        .collect::<Result<_, DiagnosticsError>>()?;
    let rhs_partial = pairwise_sum(&terms);

    // Σ_{k > k_max} 1/(k − (2m+1)/2)² = ψ₁(k_max − m + 1/2)
    let tail_bound = lhs * special::trigamma(k_max as f64 - m as f64 + 0.5) / (PI * PI);

    Ok(BesselDefect {
        lhs,
        rhs_partial,
        tail_bound,
    })
}

/// The two bounding sums of the certificate chain, over k = 0 … k_max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselBoundChain {
    /// Σ 1/(π²(k−(2m+1)/2)²)·Γ(2c₀+2+(2(k+m)+1)ν)²/(Γ(2c₀+2+2(2m+1)ν)Γ(2c₀+2+4kν)).
    pub sum3: f64,
    /// The same sum with the sin² factor of the exact cross terms restored
    /// (≤ sum3 term by term).
    pub sum2_normalized: f64,
}

/// Evaluate the bounding sums. `sum3 < 1` is what certifies the strict
/// defect inequality uniformly in the sector index, which never enters
/// these sums.
pub fn bessel_bound_chain(
    m: u32,
    _j: i32,
    params: &WormParams,
    k_max: u32,
) -> Result<BesselBoundChain, DiagnosticsError> {
    if k_max < m + 2 {
        return Err(DiagnosticsError::InvalidParameter {
            what: "k_max",
            why: format!("need k_max >= m + 2 (got m = {m}, k_max = {k_max})"),
        });
    }
    let nu = params.nu();
    let mu = params.mu();
    let a0 = 2.0 * params.c0() + 2.0;
    let lg = |x: f64| -> Result<f64, DiagnosticsError> {
        Ok(special::log_gamma(Complex64::new(x, 0.0))
            .map_err(MonomialError::from)?
            .log_modulus)
    };
    let lg_odd = lg(a0 + 2.0 * (2.0 * m as f64 + 1.0) * nu)?;
    let mut t3 = Vec::with_capacity(k_max as usize + 1);
    let mut t2 = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let kf = k as f64;
        let mf = m as f64;
        let log_num = 2.0 * lg(a0 + (2.0 * (kf + mf) + 1.0) * nu)?;
        let log_den = lg_odd + lg(a0 + 4.0 * kf * nu)?;
        let envelope = PI * PI * (kf - mf - 0.5) * (kf - mf - 0.5);
        let term3 = (log_num - log_den).exp() / envelope;
        let s = (mu * nu * (2.0 * kf - 2.0 * mf - 1.0)).sin();
        t3.push(term3);
        t2.push(term3 * s * s);
    }
    Ok(BesselBoundChain {
        sum3: pairwise_sum(&t3),
        sum2_normalized: pairwise_sum(&t2),
    })
}

/// Partial sums of Σ 1/(k−(2m+1)/2)².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pi2Series {
    /// Σ over |k| ≤ n_terms; converges to π² like 1/n.
    pub two_sided: f64,
    /// Σ over 0 ≤ k ≤ n_terms; strictly below π².
    pub one_sided: f64,
}

/// The residue-series identity π² = Σ_{k∈ℤ} 1/(k−(2m+1)/2)², truncated.
pub fn pi2_series(m: u32, n_terms: u32) -> Pi2Series {
    let c = m as f64 + 0.5;
    let n = n_terms as i64;
    let term = |k: i64| {
        let d = k as f64 - c;
        1.0 / (d * d)
    };
    let two: Vec<f64> = (-n..=n).map(term).collect();
    let one: Vec<f64> = (0..=n).map(term).collect();
    Pi2Series {
        two_sided: pairwise_sum(&two),
        one_sided: pairwise_sum(&one),
    }
}

/// The log-convexity bound Γ(c+x+y)² ≤ Γ(c+2x)Γ(c+2y) for c ≥ 0, x, y > 0,
/// evaluated in log space. Returns (lhs, rhs); equality holds at x = y.
pub fn gamma_cs_check(c: f64, x: f64, y: f64) -> (f64, f64) {
    assert!(c >= 0.0 && x > 0.0 && y > 0.0);
    let lg = |v: f64| {
        special::log_gamma(Complex64::new(v, 0.0))
            .expect("positive argument")
            .log_modulus
    };
    let lhs = (2.0 * lg(c + x + y)).exp();
    let rhs = (lg(c + 2.0 * x) + lg(c + 2.0 * y)).exp();
    (lhs, rhs)
}

/// One point of the disk density experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuntzPoint {
    pub residual: f64,
    pub condition_estimate: f64,
    pub ill_conditioned: bool,
}

/// Relative residual of projecting ζ^σ onto span{ζ^{λ_k} : 0 ≤ k ≤ n} in
/// A²(Δ), with λ_k = a·k + c₀ + ib.
///
/// The arithmetic-progression exponents with 0 < a < 1 make the span dense,
/// so the residual decays in n; the Gram matrices are notoriously
/// ill-conditioned long before the residual reaches machine precision, and
/// the condition estimate says how far the solve can be trusted. `n = −1`
/// means the empty span.
pub fn muntz_residual(
    target_sigma: Complex64,
    a: f64,
    c0: f64,
    b: f64,
    n: i64,
) -> Result<MuntzPoint, DiagnosticsError> {
    if !(a > 0.0 && a < 1.0) {
        return Err(DiagnosticsError::InvalidParameter {
            what: "a",
            why: format!("need 0 < a < 1 (got {a})"),
        });
    }
    if !(c0 > -1.0) {
        return Err(DiagnosticsError::InvalidParameter {
            what: "c0",
            why: format!("need c0 > -1 (got {c0})"),
        });
    }
    if !(target_sigma.re > -1.0) {
        return Err(MonomialError::DivergentIntegral(target_sigma.re).into());
    }
    if n < 0 {
        return Ok(MuntzPoint {
            residual: 1.0,
            condition_estimate: 1.0,
            ill_conditioned: false,
        });
    }
    let lambdas: Vec<Complex64> = (0..=n)
        .map(|k| Complex64::new(a * k as f64 + c0, b))
        .collect();
    let log_inner = |x: Complex64, y: Complex64| -> Result<LogComplex, DiagnosticsError> {
        // log of Γ(x+ȳ+2)/(Γ(x+2)Γ(ȳ+2)); the leading π cancels after
        // normalization, so it is omitted throughout.
        let yb = y.conj();
        let num = special::log_gamma(x + yb + 2.0).map_err(MonomialError::from)?;
        let d1 = special::log_gamma(x + 2.0).map_err(MonomialError::from)?;
        let d2 = special::log_gamma(yb + 2.0).map_err(MonomialError::from)?;
        Ok(LogComplex::new(
            num.log_modulus - d1.log_modulus - d2.log_modulus,
            num.phase - d1.phase - d2.phase,
        ))
    };
    let m = lambdas.len();
    let log_diag: Vec<f64> = lambdas
        .iter()
        .map(|&l| Ok(log_inner(l, l)?.log_modulus))
        .collect::<Result<_, DiagnosticsError>>()?;
    let log_target = log_inner(target_sigma, target_sigma)?.log_modulus;

    let mut matrix = DMatrix::from_element(m, m, Complex64::new(0.0, 0.0));
    for i in 0..m {
        for k in i..m {
            let ip = log_inner(lambdas[i], lambdas[k])?;
            let v = LogComplex::new(
                ip.log_modulus - 0.5 * log_diag[i] - 0.5 * log_diag[k],
                ip.phase,
            )
            .exp();
            matrix[(i, k)] = v;
            if i != k {
                matrix[(k, i)] = v.conj();
            }
        }
    }
    let mut rhs = DVector::from_element(m, Complex64::new(0.0, 0.0));
    for i in 0..m {
        let ip = log_inner(target_sigma, lambdas[i])?;
        rhs[i] = LogComplex::new(
            ip.log_modulus - 0.5 * log_target - 0.5 * log_diag[i],
            ip.phase,
        )
        .exp();
    }
    let outcome = residual_of(&matrix, &rhs);
    Ok(MuntzPoint {
        residual: outcome.residual,
        condition_estimate: outcome.condition_estimate,
        ill_conditioned: outcome.ill_conditioned,
    })
}
