//! The monomial families E_η, F_{α,j}, H_{ℓ,j} and their closed-form inner
//! products on A²(W′_μ).
//!
//! E_η(z) = e^{ηL(z)} with L(z) = log(z₁e^{−i log|z₂|²}) + i log|z₂|² is the
//! holomorphic continuation of the power z₁^η to the worm; it is locally
//! constant in |z₂| but picks up a factor e^{2πiη} between fiber components,
//! which is why non-integer powers see the winding of the domain. The
//! family F_{α,j} = E_α·z₂^j (square integrable exactly when Re α > −1) has
//! the closed inner product
//!
//! ```text
//! ⟨F_{α,j}, F_{β,j}⟩ = 2π² · sinh(μw)/w · Γ(α+β̄+2)/(Γ(α+2)Γ(β̄+2)),
//!                      w = j+1+i(α−β̄),
//! ```
//!
//! vanishing exactly when α−β̄ = 2kν + i(j+1), k ∈ ℤ∖{0}, ν = π/(2μ).
//! Distinct rotation sectors j ≠ j′ are orthogonal outright. The lattice
//! H_{ℓ,j} = F_{c₀+νℓ+i(j+1)/2, j} places every same-parity pair on that
//! orthogonality locus.

use crate::geometry::WormParams;
use crate::special::{self, LogComplex, SpecialError};
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

/// Errors from monomial evaluation and inner products.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MonomialError {
    #[error("exponent with Re = {0} <= -1: the inner-product integral diverges")]
    DivergentIntegral(f64),
    #[error("z2 = 0: log|z2|^2 undefined")]
    ZeroFiber,
    #[error("z1*e^{{-i log|z2|^2}} = {0} lies on the closed negative real axis: outside the principal branch")]
    BranchCut(Complex64),
    #[error("rotation sectors differ: j = {0} vs j = {1}")]
    SectorMismatch(i32, i32),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

/// An exponent pair (α, j) naming F_{α,j} = E_α(z)·z₂^j.
///
/// Construction enforces Re α > −1, which is exactly membership of F_{α,j}
/// in A²(W′_μ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSpec {
    alpha: Complex64,
    j: i32,
}

impl PowerSpec {
    pub fn new(alpha: Complex64, j: i32) -> Result<Self, MonomialError> {
        if !(alpha.re > -1.0) {
            return Err(MonomialError::DivergentIntegral(alpha.re));
        }
        Ok(Self { alpha, j })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn j(&self) -> i32 {
        self.j
    }
}

/// Integer label (ℓ, j) of the lattice element H_{ℓ,j}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialIndex {
    pub ell: u32,
    pub j: i32,
}

impl MonomialIndex {
    pub fn new(ell: u32, j: i32) -> Self {
        Self { ell, j }
    }
}

/// H_{ℓ,j} as a concrete exponent pair: α = c₀ + νℓ + i(j+1)/2.
///
/// c₀ > −1 and νℓ ≥ 0 guarantee Re α > −1, so this never fails.
pub fn resolve(idx: MonomialIndex, params: &WormParams) -> PowerSpec {
    let alpha = Complex64::new(
        params.c0() + params.nu() * idx.ell as f64,
        (idx.j as f64 + 1.0) / 2.0,
    );
    PowerSpec { alpha, j: idx.j }
}

/// L(z) = log(z₁e^{−i log|z₂|²}) + i log|z₂|², principal branch.
pub fn eval_l(z1: Complex64, z2: Complex64) -> Result<Complex64, MonomialError> {
    if z2 == Complex64::new(0.0, 0.0) {
        return Err(MonomialError::ZeroFiber);
    }
    let s = z2.norm_sqr().ln();
    let w = z1 * Complex64::from_polar(1.0, -s);
    if w.im == 0.0 && w.re <= 0.0 {
        return Err(MonomialError::BranchCut(w));
    }
    Ok(w.ln() + Complex64::new(0.0, s))
}

/// F_{α,j}(z₁, z₂) = e^{α·L(z)}·z₂^j.
///
/// For integer α = k this reduces to z₁^k·z₂^j up to rounding.
pub fn eval_f(spec: &PowerSpec, z1: Complex64, z2: Complex64) -> Result<Complex64, MonomialError> {
    let l = eval_l(z1, z2)?;
    Ok((spec.alpha * l).exp() * z2.powi(spec.j))
}

/// ⟨ζ^α, ζ^β⟩ on A²(Δ): π·Γ(α+β̄+2)/(Γ(α+2)Γ(β̄+2)).
///
/// Never zero — non-integer powers on the disk are never orthogonal.
pub fn disk_inner(alpha: Complex64, beta: Complex64) -> Result<Complex64, MonomialError> {
    Ok(PI * disk_inner_log(alpha, beta)?.exp())
}

/// Log-space core of [`disk_inner`] without the leading π.
fn disk_inner_log(alpha: Complex64, beta: Complex64) -> Result<LogComplex, MonomialError> {
    if !(alpha.re > -1.0) {
        return Err(MonomialError::DivergentIntegral(alpha.re));
    }
    if !(beta.re > -1.0) {
        return Err(MonomialError::DivergentIntegral(beta.re));
    }
    let bb = beta.conj();
    let num = special::log_gamma(alpha + bb + 2.0)?;
    let d1 = special::log_gamma(alpha + 2.0)?;
    let d2 = special::log_gamma(bb + 2.0)?;
    Ok(LogComplex::new(
        num.log_modulus - d1.log_modulus - d2.log_modulus,
        num.phase - d1.phase - d2.phase,
    ))
}

/// γ_{αβ} = sinh(μw)/w at w = j+1+i(α−β̄), the s-integral
/// (1/2)∫_{|s|<μ} e^{s(j+1+i(α−β̄))} ds in closed form.
pub fn gamma_ab(
    alpha: Complex64,
    beta: Complex64,
    j: i32,
    params: &WormParams,
) -> Result<Complex64, MonomialError> {
    let w = Complex64::new(j as f64 + 1.0, 0.0) + Complex64::i() * (alpha - beta.conj());
    Ok(special::sinh_ratio(w, params.mu())?)
}

/// ⟨F_a, F_b⟩ on A²(W′_μ).
///
/// Distinct rotation sectors are orthogonal by the Fourier decomposition and
/// return exactly zero; within a sector the value is
/// 2π·γ_{αβ}·⟨ζ^α, ζ^β⟩_{A²(Δ)} = 2π²·γ_{αβ}·Γ(α+β̄+2)/(Γ(α+2)Γ(β̄+2)).
pub fn worm_inner(
    a: &PowerSpec,
    b: &PowerSpec,
    params: &WormParams,
) -> Result<Complex64, MonomialError> {
    if a.j != b.j {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let g = gamma_ab(a.alpha, b.alpha, a.j, params)?;
    let disk = disk_inner(a.alpha, b.alpha)?;
    Ok(2.0 * PI * g * disk)
}

/// Same-sector inner product in log form, for magnitudes far outside the f64
/// range. Errors on mismatched sectors instead of representing log 0.
pub fn worm_inner_log(
    a: &PowerSpec,
    b: &PowerSpec,
    params: &WormParams,
) -> Result<LogComplex, MonomialError> {
    if a.j != b.j {
        return Err(MonomialError::SectorMismatch(a.j, b.j));
    }
    let g = gamma_ab(a.alpha, b.alpha, a.j, params)?;
    let lg = LogComplex::from_complex(g);
    let disk = disk_inner_log(a.alpha, b.alpha)?;
    Ok(LogComplex::new(
        (2.0 * PI * PI).ln() + lg.log_modulus + disk.log_modulus,
        lg.phase + disk.phase,
    ))
}

/// ‖F_{α,j}‖² = 2π²·sinh(μ(j+1−2 Im α))/(j+1−2 Im α)·Γ(2+2Re α)/|Γ(2+α)|².
pub fn worm_norm_sq(spec: &PowerSpec, params: &WormParams) -> Result<f64, MonomialError> {
    let lg = worm_norm_sq_log(spec, params)?;
    Ok(lg.exp())
}

/// log ‖F_{α,j}‖², safe for indices whose norms overflow f64.
pub fn worm_norm_sq_log(spec: &PowerSpec, params: &WormParams) -> Result<f64, MonomialError> {
    let alpha = spec.alpha;
    let w_diag = Complex64::new(spec.j as f64 + 1.0 - 2.0 * alpha.im, 0.0);
    let g = special::sinh_ratio(w_diag, params.mu())?;
    debug_assert!(g.re > 0.0 && g.im == 0.0);
    let num = special::log_gamma(Complex64::new(2.0 + 2.0 * alpha.re, 0.0))?;
    let den = special::log_gamma(alpha + 2.0)?;
    Ok((2.0 * PI * PI).ln() + g.re.ln() + num.log_modulus - 2.0 * den.log_modulus)
}

/// Exact orthogonality test for a same-sector pair: ⟨F_a, F_b⟩ = 0 iff
/// α−β̄ = 2kν + i(j+1) for some integer k ≠ 0.
///
/// The integrality of Re(α−β̄)/(2ν) and the match of Im(α−β̄) with j+1 are
/// both tested to 1e−12 relative; exponents in this toolkit are constructed,
/// not measured, so nothing tighter is needed.
pub fn is_orthogonal(a: &PowerSpec, b: &PowerSpec, params: &WormParams) -> bool {
    debug_assert_eq!(a.j, b.j, "callers handle distinct sectors separately");
    let d = a.alpha - b.alpha.conj();
    let target_im = a.j as f64 + 1.0;
    if (d.im - target_im).abs() > 1e-12 * target_im.abs().max(1.0) {
        return false;
    }
    let t = d.re / (2.0 * params.nu());
    let k = t.round();
    k != 0.0 && (t - k).abs() <= 1e-12 * t.abs().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::in_worm;
    use crate::rng::CounterRng;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(mu: f64, c0: f64) -> WormParams {
        WormParams::new(mu, c0).unwrap()
    }

    #[test]
    fn resolve_examples() {
        let p = params(PI, 0.0);
        let s = resolve(MonomialIndex::new(0, -1), &p);
        assert_abs_diff_eq!((s.alpha() - c(0.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
        assert_eq!(s.j(), -1);

        // ν = 1/2 at μ = π: ℓ = 2, j = 0 gives α = 1 + i/2
        let s = resolve(MonomialIndex::new(2, 0), &p);
        assert_relative_eq!(s.alpha().re, 1.0, max_relative = 1e-15);
        assert_relative_eq!(s.alpha().im, 0.5, max_relative = 1e-15);

        // c₀ = −1/2, ℓ = 1, j = 3: α = −1/2 + 1/2 + 2i = 2i
        let p = params(PI, -0.5);
        let s = resolve(MonomialIndex::new(1, 3), &p);
        assert_abs_diff_eq!(s.alpha().re, 0.0, epsilon = 1e-15);
        assert_relative_eq!(s.alpha().im, 2.0, max_relative = 1e-15);
        assert!(s.alpha().re > -1.0);
    }

    #[test]
    fn power_spec_rejects_divergent_exponents() {
        assert!(PowerSpec::new(c(-1.0, 0.3), 0).is_err());
        assert!(PowerSpec::new(c(-1.2, 0.0), 0).is_err());
        assert!(PowerSpec::new(c(-0.99, 5.0), -2).is_ok());
    }

    #[test]
    fn eval_l_examples() {
        let one = c(1.0, 0.0);
        assert_abs_diff_eq!(eval_l(one, one).unwrap().norm(), 0.0, epsilon = 1e-15);

        // center of the fiber disk: z1 = e^{is} gives L = is
        let s = 0.8;
        let z1 = Complex64::from_polar(1.0, s);
        let z2 = Complex64::new((0.5 * s).exp(), 0.0);
        let l = eval_l(z1, z2).unwrap();
        assert_abs_diff_eq!(l.re, 0.0, epsilon = 1e-14);
        assert_relative_eq!(l.im, s, max_relative = 1e-14);

        // z1 = 1.5 e^{i}, s = 1: L = log 1.5 + i
        let z1 = Complex64::from_polar(1.5, 1.0);
        let z2 = Complex64::new(0.5f64.exp(), 0.0);
        let l = eval_l(z1, z2).unwrap();
        assert_relative_eq!(l.re, 1.5f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(l.im, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn eval_l_error_paths() {
        assert!(matches!(
            eval_l(c(1.0, 0.0), c(0.0, 0.0)),
            Err(MonomialError::ZeroFiber)
        ));
        // z1 e^{-is} on the negative real axis
        assert!(matches!(
            eval_l(c(-1.0, 0.0), c(1.0, 0.0)),
            Err(MonomialError::BranchCut(_))
        ));
    }

    #[test]
    fn eval_f_examples() {
        let z1 = Complex64::from_polar(1.5, 1.0);
        let z2 = Complex64::new(0.5f64.exp(), 0.0);

        // α = 2, j = 0: exactly z₁²
        let spec = PowerSpec::new(c(2.0, 0.0), 0).unwrap();
        let v = eval_f(&spec, z1, z2).unwrap();
        let direct = z1 * z1;
        assert_relative_eq!(v.re, direct.re, max_relative = 1e-14);
        assert_relative_eq!(v.im, direct.im, max_relative = 1e-14);

        // α = 0, j = 5: z₂⁵
        let spec = PowerSpec::new(c(0.0, 0.0), 5).unwrap();
        let v = eval_f(&spec, z1, z2).unwrap();
        let direct = z2.powi(5);
        assert_relative_eq!(v.re, direct.re, max_relative = 1e-14);

        // α = i, j = 0 at L = log 1.5 + i: e^{iL} = e^{−1}e^{i log 1.5}
        let spec = PowerSpec::new(c(0.0, 1.0), 0).unwrap();
        let v = eval_f(&spec, z1, z2).unwrap();
        let expect = Complex64::from_polar((-1.0f64).exp(), 1.5f64.ln());
        assert_relative_eq!(v.re, expect.re, max_relative = 1e-13);
        assert_relative_eq!(v.im, expect.im, max_relative = 1e-13);
    }

    #[test]
    fn integer_exponents_degenerate_to_plain_powers() {
        // 100 random worm points via rejection from the sampling box
        let p = params(PI, 0.0);
        let rng = CounterRng::new(0x77);
        let mut found = 0usize;
        let mut i = 0u64;
        while found < 100 {
            let u0 = rng.unit_f64_at(4 * i);
            let u1 = rng.unit_f64_at(4 * i + 1);
            let u2 = rng.unit_f64_at(4 * i + 2);
            let u3 = rng.unit_f64_at(4 * i + 3);
            i += 1;
            let z1 = Complex64::from_polar(2.0 * u0.sqrt(), 2.0 * PI * u1);
            let r2 = (-PI).exp() + u2 * (PI.exp() - (-PI).exp());
            let z2 = Complex64::from_polar(r2.sqrt(), 2.0 * PI * u3);
            if !in_worm(z1, z2, &p).unwrap() {
                continue;
            }
            found += 1;
            let k = (found % 5) as i32;
            let j = (found % 7) as i32 - 3;
            let spec = PowerSpec::new(c(k as f64, 0.0), j).unwrap();
            let v = eval_f(&spec, z1, z2).unwrap();
            let direct = z1.powi(k) * z2.powi(j);
            assert!(
                (v - direct).norm() <= 1e-14 * direct.norm(),
                "k={k} j={j}: {v} vs {direct}"
            );
        }
    }

    #[test]
    fn disk_inner_examples() {
        let v = disk_inner(c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, PI, max_relative = 1e-14);

        // π·Γ(4)/Γ(3)² = 3π/2
        let v = disk_inner(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, 1.5 * PI, max_relative = 1e-13);

        // ⟨ζ^α, 1⟩ = π for any α (mean value at the center)
        for alpha in [c(0.7, 0.3), c(-0.4, 2.0), c(3.0, -1.0)] {
            let v = disk_inner(alpha, c(0.0, 0.0)).unwrap();
            assert_relative_eq!(v.re, PI, max_relative = 1e-13);
            assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-13 * PI);
        }

        assert!(matches!(
            disk_inner(c(-1.0, 0.0), c(0.0, 0.0)),
            Err(MonomialError::DivergentIntegral(_))
        ));
    }

    #[test]
    fn gamma_ab_examples() {
        let p = params(PI, 0.0);
        // α = β real, j = 0: w = 1, sinh(π)/1
        let v = gamma_ab(c(0.3, 0.0), c(0.3, 0.0), 0, &p).unwrap();
        assert_relative_eq!(v.re, 11.548739357257748, max_relative = 1e-13);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-13);

        // w = 0: α−β̄ = i(j+1)
        let j = 2;
        let alpha = c(0.5, 1.0);
        let beta = (alpha - Complex64::i() * (j as f64 + 1.0)).conj();
        let v = gamma_ab(alpha, beta, j, &p).unwrap();
        assert_relative_eq!(v.re, PI, max_relative = 1e-14);

        // α−β̄ = 2ν + i(j+1): first orthogonality zero
        let beta = (alpha - 2.0 * p.nu() - Complex64::i() * (j as f64 + 1.0)).conj();
        let v = gamma_ab(alpha, beta, j, &p).unwrap();
        assert!(v.norm() < 1e-14, "{v}");
    }

    #[test]
    fn worm_inner_anchor_and_orthogonality() {
        let p = params(PI, 0.0);
        // ‖F_{0,−1}‖² = 2π³ (w = 0 branch gives μ, Gamma factors are 1)
        let f = PowerSpec::new(c(0.0, 0.0), -1).unwrap();
        let v = worm_inner(&f, &f, &p).unwrap();
        assert_relative_eq!(v.re, 2.0 * PI.powi(3), max_relative = 1e-13);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-13);

        // H_{0,0} ⊥ H_{2,0}
        let h0 = resolve(MonomialIndex::new(0, 0), &p);
        let h2 = resolve(MonomialIndex::new(2, 0), &p);
        let v = worm_inner(&h0, &h2, &p).unwrap();
        let scale = (worm_norm_sq(&h0, &p).unwrap() * worm_norm_sq(&h2, &p).unwrap()).sqrt();
        assert!(v.norm() < 1e-14 * scale);

        // distinct sectors vanish identically
        let a = PowerSpec::new(c(0.5, 0.0), 0).unwrap();
        let b = PowerSpec::new(c(0.5, 0.0), 1).unwrap();
        assert_eq!(worm_inner(&a, &b, &p).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn worm_inner_hermitian_symmetry() {
        let p = params(1.7, -0.3);
        let rng = CounterRng::new(0xA1);
        for i in 0..200 {
            let a = PowerSpec::new(
                c(
                    -0.5 + 3.0 * rng.unit_f64_at(5 * i),
                    -3.0 + 6.0 * rng.unit_f64_at(5 * i + 1),
                ),
                (rng.u64_at(5 * i + 2) % 7) as i32 - 3,
            )
            .unwrap();
            let b = PowerSpec::new(
                c(
                    -0.5 + 3.0 * rng.unit_f64_at(5 * i + 3),
                    -3.0 + 6.0 * rng.unit_f64_at(5 * i + 4),
                ),
                a.j(),
            )
            .unwrap();
            let ab = worm_inner(&a, &b, &p).unwrap();
            let ba = worm_inner(&b, &a, &p).unwrap();
            assert!(
                (ab - ba.conj()).norm() <= 1e-13 * ab.norm().max(1e-300),
                "{ab} vs conj {ba}"
            );
        }
    }

    #[test]
    fn diagonal_matches_norm() {
        let p = params(2.0 * PI, 0.5);
        let rng = CounterRng::new(0xB2);
        for i in 0..100 {
            let spec = PowerSpec::new(
                c(
                    -0.5 + 3.5 * rng.unit_f64_at(3 * i),
                    -3.0 + 6.0 * rng.unit_f64_at(3 * i + 1),
                ),
                (rng.u64_at(3 * i + 2) % 7) as i32 - 3,
            )
            .unwrap();
            let diag = worm_inner(&spec, &spec, &p).unwrap();
            let norm = worm_norm_sq(&spec, &p).unwrap();
            assert!(norm > 0.0);
            assert!(diag.im.abs() <= 1e-12 * norm);
            assert_relative_eq!(diag.re, norm, max_relative = 1e-12);
        }
    }

    #[test]
    fn h_norm_closed_form() {
        // resolved H_{ℓ,j} has Im α = (j+1)/2, so the sinh factor is exactly μ:
        // ‖H‖² = 2π²·μ·Γ(2+2c₀+2νℓ)/|Γ(2+c₀+νℓ+i(j+1)/2)|².
        let p = params(PI, 0.0);
        let h = resolve(MonomialIndex::new(0, 0), &p);
        let norm = worm_norm_sq(&h, &p).unwrap();
        // |Γ(2+i/2)|² = 0.85321181291357221, independently computed
        let expect = 2.0 * PI.powi(3) / 0.85321181291357221;
        assert_relative_eq!(norm, expect, max_relative = 1e-12);
        assert_relative_eq!(norm, 72.6813112781894, max_relative = 1e-12);
    }

    #[test]
    fn worm_inner_log_matches_linear_scale() {
        let p = params(PI, 0.0);
        let a = resolve(MonomialIndex::new(3, 1), &p);
        let b = resolve(MonomialIndex::new(4, 1), &p);
        let lin = worm_inner(&a, &b, &p).unwrap();
        let log = worm_inner_log(&a, &b, &p).unwrap().exp();
        assert_relative_eq!(lin.re, log.re, max_relative = 1e-12);
        assert_relative_eq!(lin.im, log.im, max_relative = 1e-12);
        // norms too
        assert_relative_eq!(
            worm_norm_sq(&a, &p).unwrap().ln(),
            worm_norm_sq_log(&a, &p).unwrap(),
            max_relative = 1e-13
        );
        // sector mismatch is an error here, not a zero
        let other = resolve(MonomialIndex::new(3, 2), &p);
        assert!(matches!(
            worm_inner_log(&a, &other, &p),
            Err(MonomialError::SectorMismatch(1, 2))
        ));
    }

    #[test]
    fn orthogonality_predicate() {
        let p = params(PI, 0.0);
        let h0 = resolve(MonomialIndex::new(0, 2), &p);
        let h1 = resolve(MonomialIndex::new(1, 2), &p);
        let h2 = resolve(MonomialIndex::new(2, 2), &p);
        assert!(is_orthogonal(&h0, &h2, &p));
        assert!(!is_orthogonal(&h0, &h1, &p));
        assert!(!is_orthogonal(&h0, &h0, &p)); // k must be nonzero
    }

    #[test]
    fn orthogonality_predicate_matches_closed_form_zeros() {
        let p = params(1.9, 0.2);
        let nu = p.nu();
        let rng = CounterRng::new(0xC3);
        for i in 0..500 {
            let j = (rng.u64_at(6 * i) % 7) as i32 - 3;
            let alpha = c(
                -0.4 + 3.0 * rng.unit_f64_at(6 * i + 1),
                -3.0 + 6.0 * rng.unit_f64_at(6 * i + 2),
            );
            let a = PowerSpec::new(alpha, j).unwrap();
            let engineered = i.is_multiple_of(2);
            let b = if engineered {
                // place β on the orthogonality locus: α−β̄ = 2kν + i(j+1)
                let k = 1 + (rng.u64_at(6 * i + 3) % 3) as i32;
                let beta = (alpha - 2.0 * k as f64 * nu - Complex64::i() * (j as f64 + 1.0)).conj();
                match PowerSpec::new(beta, j) {
                    Ok(b) => b,
                    Err(_) => continue,
                }
            } else {
                PowerSpec::new(
                    c(
                        -0.4 + 3.0 * rng.unit_f64_at(6 * i + 4),
                        -3.0 + 6.0 * rng.unit_f64_at(6 * i + 5),
                    ),
                    j,
                )
                .unwrap()
            };
            let predicted = is_orthogonal(&a, &b, &p);
            let v = worm_inner(&a, &b, &p).unwrap();
            let scale = (worm_norm_sq(&a, &p).unwrap() * worm_norm_sq(&b, &p).unwrap()).sqrt();
            let vanishes = v.norm() < 1e-10 * scale;
            assert_eq!(predicted, vanishes, "i={i} a={alpha} v={v} scale={scale}");
            if engineered {
                assert!(predicted);
            }
        }
    }
}
