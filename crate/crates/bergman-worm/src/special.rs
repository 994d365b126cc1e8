//! Complex special functions behind the closed-form inner products.
//!
//! Everything in this crate that looks like Γ(α+β̄+2)/(Γ(α+2)Γ(β̄+2)) is
//! evaluated through [`log_gamma`] and combined in log space by
//! [`gamma_ratio`], so ratios stay finite long after the individual Gamma
//! values overflow. The sinh-ratio kernel sinh(μw)/w, whose zeros encode
//! orthogonality in the worm Bergman space, is handled by [`sinh_ratio`]
//! with a Taylor branch across the removable singularity at w = 0.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

/// Largest x with eˣ finite in f64.
const MAX_EXP: f64 = 709.782712893384;

/// Errors from special-function evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    /// Argument at (or within 1e−12 of) a pole of Γ: z ∈ {0, −1, −2, …}.
    #[error("gamma pole at z = {re} + {im}i (non-positive integer)")]
    GammaPole { re: f64, im: f64 },
    /// A final exponent left the representable range of f64.
    #[error("overflow: log-magnitude {log_modulus} exceeds the f64 exponent range")]
    Overflow { log_modulus: f64 },
}

/// A nonzero complex number stored as log-magnitude and principal phase.
///
/// `phase` is always normalized to (−π, π]. Values whose magnitude would
/// overflow or underflow f64 stay representable as long as `log_modulus`
/// itself is finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogComplex {
    pub log_modulus: f64,
    pub phase: f64,
}

impl LogComplex {
    /// Build from raw parts, normalizing the phase into (−π, π].
    pub fn new(log_modulus: f64, phase: f64) -> Self {
        Self {
            log_modulus,
            phase: normalize_phase(phase),
        }
    }

    /// Principal log of a nonzero complex number.
    pub fn from_complex(z: Complex64) -> Self {
        Self {
            log_modulus: z.norm().ln(),
            phase: z.arg(),
        }
    }

    /// exp of the stored logarithm. Infinite if `log_modulus` overflows f64.
    pub fn exp(&self) -> Complex64 {
        Complex64::from_polar(self.log_modulus.exp(), self.phase)
    }

    /// exp with an overflow check on the magnitude.
    pub fn checked_exp(&self) -> Result<Complex64, SpecialError> {
        if self.log_modulus > MAX_EXP {
            return Err(SpecialError::Overflow {
                log_modulus: self.log_modulus,
            });
        }
        Ok(self.exp())
    }
}

/// Reduce a phase to the principal interval (−π, π].
fn normalize_phase(phase: f64) -> f64 {
    let p = phase.rem_euclid(2.0 * PI); // [0, 2π)
    if p > PI {
        p - 2.0 * PI
    } else {
        p
    }
}

// Lanczos approximation, g = 7, n = 9. Coefficients as in the GNU Scientific
// Library and Boost.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

fn lanczos_sum(zm1: Complex64) -> Complex64 {
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (zm1 + i as f64);
    }
    acc
}

fn near_gamma_pole(z: Complex64) -> bool {
    z.im.abs() <= 1e-12 && z.re <= 1e-12 && (z.re - z.re.round()).abs() <= 1e-12
}

/// log Γ(z) with principal phase.
///
/// Lanczos for Re z ≥ 1/2, reflection through Γ(z)Γ(1−z) = π/sin(πz)
/// otherwise. Accurate to at least 12 significant digits for |z| ≤ 50,
/// Re z > −10. Returns [`SpecialError::GammaPole`] within 1e−12 of a
/// non-positive integer.
pub fn log_gamma(z: Complex64) -> Result<LogComplex, SpecialError> {
    if near_gamma_pole(z) {
        return Err(SpecialError::GammaPole { re: z.re, im: z.im });
    }
    if z.re < 0.5 {
        // log Γ(z) = log π − log sin(πz) − log Γ(1−z); phase taken principal.
        let s = (PI * z).sin();
        let ls = LogComplex::from_complex(s);
        let lg = log_gamma_lanczos(Complex64::new(1.0, 0.0) - z);
        return Ok(LogComplex::new(
            PI.ln() - ls.log_modulus - lg.log_modulus,
            -ls.phase - lg.phase,
        ));
    }
    Ok(log_gamma_lanczos(z))
}

/// Lanczos branch, valid for Re z ≥ 1/2.
fn log_gamma_lanczos(z: Complex64) -> LogComplex {
    let zm1 = z - 1.0;
    let t = zm1 + LANCZOS_G + 0.5;
    let log_t = t.ln();
    let log_sum = lanczos_sum(zm1).ln();
    let v = 0.5 * (2.0 * PI).ln() + (zm1 + 0.5) * log_t - t + log_sum;
    LogComplex::new(v.re, v.im)
}

/// Γ(z) itself; overflows are reported, never returned as infinities.
pub fn gamma(z: Complex64) -> Result<Complex64, SpecialError> {
    log_gamma(z)?.checked_exp()
}

/// ∏ Γ(num) / ∏ Γ(den), with all cancellation done in log space.
///
/// Phases are accumulated before a single principal-value reduction, so the
/// result is exact modulo 2π regardless of how large the individual
/// log-Gammas grow.
pub fn gamma_ratio(num: &[Complex64], den: &[Complex64]) -> Result<Complex64, SpecialError> {
    let mut log_modulus = 0.0;
    let mut phase = 0.0;
    for &z in num {
        let lg = log_gamma(z)?;
        log_modulus += lg.log_modulus;
        phase += lg.phase;
    }
    for &z in den {
        let lg = log_gamma(z)?;
        log_modulus -= lg.log_modulus;
        phase -= lg.phase;
    }
    LogComplex::new(log_modulus, phase).checked_exp()
}

/// Switch radius for the Taylor branch of [`sinh_ratio`]: below |μw| = 1e−3
/// the direct quotient loses about a digit to cancellation while the
/// truncation error of the 3-term Taylor branch is < 1e−19 relative.
pub const SINH_RATIO_SWITCH: f64 = 1e-3;

/// sinh(μw)/w, continued across the removable singularity at w = 0 where it
/// takes the value μ.
///
/// For |μw| below [`SINH_RATIO_SWITCH`] the Taylor form
/// μ·(1 + (μw)²/6 + (μw)⁴/120) is used; the two branches agree to better
/// than 12 digits at the switch radius.
pub fn sinh_ratio(w: Complex64, mu: f64) -> Result<Complex64, SpecialError> {
    debug_assert!(mu > 0.0);
    let x = mu * w;
    if x.re.abs() > MAX_EXP {
        return Err(SpecialError::Overflow {
            log_modulus: x.re.abs(),
        });
    }
    if x.norm() < SINH_RATIO_SWITCH {
        let x2 = x * x;
        Ok(mu * (1.0 + x2 / 6.0 + x2 * x2 / 120.0))
    } else {
        let v = x.sinh() / w;
        // the quotient itself can overflow when |w| is tiny against e^{Re x}
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(SpecialError::Overflow {
                log_modulus: x.re.abs() - w.norm().ln(),
            });
        }
        Ok(v)
    }
}

/// Trigamma ψ₁(x) = Σ_{n≥0} 1/(x+n)² for x > 0.
///
/// Recurrence lifts the argument to x ≥ 10, then a 7-term asymptotic series;
/// absolute accuracy is well below 1e−13 on that range. Used to sum exact
/// tails of Σ 1/(k−c)².
pub fn trigamma(mut x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut acc = 0.0;
    while x < 10.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // 1/x + 1/(2x²) + 1/(6x³) − 1/(30x⁵) + 1/(42x⁷) − 1/(30x⁹) + 5/(66x¹¹)
    acc + inv
        + 0.5 * inv2
        + inv2
            * inv
            * (1.0 / 6.0
                + inv2
                    * (-1.0 / 30.0
                        + inv2 * (1.0 / 42.0 + inv2 * (-1.0 / 30.0 + inv2 * 5.0 / 66.0))))
}
