//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured figures (run with `--nocapture` to see them).
//!
//! Run as `cargo test --release -p bergman-worm --test acceptance`.

use bergman_worm::diagnostics::{
    bessel_bound_chain, bessel_defect, gamma_cs_check, muntz_residual, pi2_series, redundancy_curve,
};
use bergman_worm::geometry::{QuadConfig, WormParams};
use bergman_worm::monomials::{
    disk_inner, is_orthogonal, resolve, worm_inner, worm_norm_sq, MonomialIndex, PowerSpec,
};
use bergman_worm::oracle::{mc_worm_inner, q_project, quad_disk_inner, quad_worm_inner};
use bergman_worm::rng::CounterRng;
use bergman_worm::C64;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn oracle_config() -> QuadConfig {
    QuadConfig {
        radial_nodes: 24,
        angular_nodes: 512,
        s_nodes: 64,
        max_subdivision: 26,
        abs_tol: 1e-9,
        rel_tol: 1e-8,
        mc_samples: 1_000_000,
        seed: 0x0AC5,
    }
}

const MU_GRID: [f64; 3] = [PI / 2.0 + 0.1, PI, 2.0 * PI];
const C0_GRID: [f64; 3] = [-0.5, 0.0, 1.0];

/// Criterion 1: disk closed form vs oracle on a 25-point exponent grid,
/// |quad − closed| ≤ max(1e−6·|closed|, 1e−8), plus the two anchors.
#[test]
fn criterion_1_disk_closed_form_vs_oracle() {
    let cfg = oracle_config();
    let re_grid = [-0.5, 0.0, 0.7, 1.5, 3.0];
    let im_grid = [-2.0, 0.0, 2.0];
    let mut worst: f64 = 0.0;
    for i in 0..5 {
        for k in 0..5 {
            let alpha = c(re_grid[i], im_grid[(i + k) % 3]);
            let beta = c(re_grid[k], im_grid[(i + 2 * k + 1) % 3]);
            let closed = disk_inner(alpha, beta).unwrap();
            let quad = quad_disk_inner(alpha, beta, &cfg).unwrap();
            let diff = (quad.value - closed).norm();
            let tol = (1e-6 * closed.norm()).max(1e-8);
            assert!(
                diff <= tol,
                "grid point alpha={alpha} beta={beta}: |diff| = {diff:e} > {tol:e}"
            );
            worst = worst.max(diff / tol);
        }
    }
    // anchors: <1,1> = π exactly, <ζ,ζ> = 3π/2
    let q = quad_disk_inner(c(0.0, 0.0), c(0.0, 0.0), &cfg).unwrap();
    assert!((q.value.re - PI).abs() <= 1e-8 && q.value.im.abs() <= 1e-8);
    let q = quad_disk_inner(c(1.0, 0.0), c(1.0, 0.0), &cfg).unwrap();
    assert!((q.value.re - 1.5 * PI).abs() <= 1e-6 * 1.5 * PI);
    println!("criterion 1 PASS: 25-point disk grid + 2 anchors, worst diff/tol = {worst:.3}");
}

/// Criterion 2: worm closed form vs both oracles on 20 random same-sector
/// pairs over the (μ, c₀) grid, with the 2π³ norm anchor.
#[test]
fn criterion_2_worm_closed_form_vs_oracles() {
    let cfg = oracle_config();
    let rng = CounterRng::new(0xAC2);
    let mut worst_quad: f64 = 0.0;
    let mut worst_mc: f64 = 0.0;
    for case in 0..20u64 {
        let mu = MU_GRID[(case % 3) as usize];
        let c0 = C0_GRID[((case / 3) % 3) as usize];
        let params = WormParams::new(mu, c0).unwrap();
        let j = (rng.u64_at(5 * case) % 7) as i32 - 3;
        let a = PowerSpec::new(
            c(
                -0.5 + 3.5 * rng.unit_f64_at(5 * case + 1),
                -3.0 + 6.0 * rng.unit_f64_at(5 * case + 2),
            ),
            j,
        )
        .unwrap();
        let b = PowerSpec::new(
            c(
                -0.5 + 3.5 * rng.unit_f64_at(5 * case + 3),
                -3.0 + 6.0 * rng.unit_f64_at(5 * case + 4),
            ),
            j,
        )
        .unwrap();
        let closed = worm_inner(&a, &b, &params).unwrap();
        let quad = quad_worm_inner(&a, &b, &params, &cfg).unwrap();
        let dq = (quad.value - closed).norm();
        assert!(
            dq <= 1e-6 * closed.norm(),
            "case {case} (mu={mu}, c0={c0}, j={j}): quad diff {dq:e} vs {:e}",
            closed.norm()
        );
        worst_quad = worst_quad.max(dq / closed.norm());

        let mc = mc_worm_inner(&a, &b, &params, &cfg).unwrap();
        let dm = (mc.result.value - closed).norm();
        let three_se = 3.0 * mc.result.abs_error_estimate;
        assert!(
            dm <= three_se,
            "case {case}: mc diff {dm:e} > 3se {three_se:e}"
        );
        worst_mc = worst_mc.max(dm / three_se);

        // the two oracles agree with each other within combined estimates
        let cross = (quad.value - mc.result.value).norm();
        assert!(
            cross <= 3.0 * (quad.abs_error_estimate + mc.result.abs_error_estimate),
            "case {case}: oracle cross-check {cross:e}"
        );
    }
    // anchor: ‖F_{0,−1}‖² = 2π³ at μ = π
    let params = WormParams::new(PI, 0.0).unwrap();
    let f = PowerSpec::new(c(0.0, 0.0), -1).unwrap();
    let anchor = 2.0 * PI.powi(3);
    assert!((worm_norm_sq(&f, &params).unwrap() - anchor).abs() <= 1e-12 * anchor);
    let q = quad_worm_inner(&f, &f, &params, &cfg).unwrap();
    assert!((q.value.re - anchor).abs() <= 1e-6 * anchor);
    println!(
        "criterion 2 PASS: 20 random pairs, worst quad rel diff ratio = {worst_quad:.3e}, worst mc z/3 = {worst_mc:.3}"
    );
}

/// Criterion 3: parity systems are orthogonal to 1e−10 (normalized) for
/// ℓ ≤ 12, |j| ≤ 3 over the grid, and is_orthogonal exactly characterizes
/// the closed-form zeros on a 500-pair sweep.
#[test]
fn criterion_3_orthogonality() {
    let mut checked = 0usize;
    let mut worst: f64 = 0.0;
    for mu in MU_GRID {
        for c0 in C0_GRID {
            let params = WormParams::new(mu, c0).unwrap();
            for j in -3..=3 {
                for parity in 0..2u32 {
                    let ells: Vec<u32> = (0..=12).filter(|l| l % 2 == parity).collect();
                    for (i, &la) in ells.iter().enumerate() {
                        for &lb in &ells[i + 1..] {
                            let a = resolve(MonomialIndex::new(la, j), &params);
                            let b = resolve(MonomialIndex::new(lb, j), &params);
                            let ip = worm_inner(&a, &b, &params).unwrap();
                            let scale = (worm_norm_sq(&a, &params).unwrap()
                                * worm_norm_sq(&b, &params).unwrap())
                            .sqrt();
                            let normalized = ip.norm() / scale;
                            assert!(
                                normalized < 1e-10,
                                "mu={mu} c0={c0} j={j} ({la},{lb}): {normalized:e}"
                            );
                            assert!(is_orthogonal(&a, &b, &params));
                            worst = worst.max(normalized);
                            checked += 1;
                        }
                    }
                }
            }
        }
    }

    // 500-pair random sweep: predicate ⟺ closed-form zero
    let params = WormParams::new(1.9, 0.2).unwrap();
    let nu = params.nu();
    let rng = CounterRng::new(0xAC3);
    let mut sweep = 0usize;
    let mut i = 0u64;
    while sweep < 500 {
        i += 1;
        let j = (rng.u64_at(6 * i) % 7) as i32 - 3;
        let alpha = c(
            -0.4 + 3.0 * rng.unit_f64_at(6 * i + 1),
            -3.0 + 6.0 * rng.unit_f64_at(6 * i + 2),
        );
        let a = PowerSpec::new(alpha, j).unwrap();
        let b = if i.is_multiple_of(2) {
            let k = 1 + (rng.u64_at(6 * i + 3) % 3) as i32;
            let beta = (alpha - 2.0 * k as f64 * nu - C64::i() * (j as f64 + 1.0)).conj();
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
        let predicted = is_orthogonal(&a, &b, &params);
        let ip = worm_inner(&a, &b, &params).unwrap();
        let scale =
            (worm_norm_sq(&a, &params).unwrap() * worm_norm_sq(&b, &params).unwrap()).sqrt();
        assert_eq!(
            predicted,
            ip.norm() < 1e-10 * scale,
            "sweep pair {i}: predicate disagrees with closed form"
        );
        sweep += 1;
    }
    println!(
        "criterion 3 PASS: {checked} parity pairs < 1e-10 (worst {worst:.2e}), 500-pair sweep characterized"
    );
}

/// Criterion 4: the incompleteness certificate over the full grid —
/// positive defect margin at k_max = 50 and bounding sum3 < 1.
#[test]
fn criterion_4_incompleteness_certificate() {
    let mut cases = 0usize;
    let mut min_margin = f64::INFINITY;
    let mut max_sum3: f64 = 0.0;
    for mu in MU_GRID {
        for c0 in C0_GRID {
            let params = WormParams::new(mu, c0).unwrap();
            for m in 0..=4u32 {
                for j in -2..=2 {
                    let d = bessel_defect(m, j, &params, 50).unwrap();
                    assert!(
                        d.margin() > 0.0,
                        "mu={mu} c0={c0} m={m} j={j}: margin {}",
                        d.margin()
                    );
                    let chain = bessel_bound_chain(m, j, &params, 50).unwrap();
                    assert!(
                        chain.sum3 < 1.0,
                        "mu={mu} c0={c0} m={m}: sum3 = {}",
                        chain.sum3
                    );
                    assert!(chain.sum2_normalized <= chain.sum3 + 1e-15);
                    min_margin = min_margin.min(d.margin() / d.lhs);
                    max_sum3 = max_sum3.max(chain.sum3);
                    cases += 1;
                }
            }
        }
    }
    println!(
        "criterion 4 PASS: {cases} grid cases, min relative margin = {min_margin:.4}, max sum3 = {max_sum3:.4}"
    );
}

/// Criterion 5: the residue-series identity, truncated at 10⁴ terms.
#[test]
fn criterion_5_residue_identity() {
    let pi_sq = PI * PI;
    for m in 0..=5u32 {
        let s = pi2_series(m, 10_000);
        assert!(
            (s.two_sided - pi_sq).abs() <= 4e-4,
            "m={m}: two-sided {} vs {pi_sq}",
            s.two_sided
        );
        assert!(s.one_sided < pi_sq, "m={m}: one-sided {}", s.one_sided);
    }
    println!(
        "criterion 5 PASS: two-sided sums within 4e-4 of pi^2, one-sided strictly below, m <= 5"
    );
}

/// Criterion 6: the Gamma Cauchy–Schwarz bound on 10⁴ random triples, with
/// equality on the diagonal.
#[test]
fn criterion_6_gamma_cauchy_schwarz() {
    let rng = CounterRng::new(0xAC6);
    for i in 0..10_000u64 {
        let cc = 5.0 * rng.unit_f64_at(3 * i);
        let x = 5.0 * rng.unit_f64_at(3 * i + 1).max(1e-8);
        let y = 5.0 * rng.unit_f64_at(3 * i + 2).max(1e-8);
        let (lhs, rhs) = gamma_cs_check(cc, x, y);
        assert!(
            lhs <= rhs * (1.0 + 1e-12),
            "c={cc} x={x} y={y}: {lhs} > {rhs}"
        );
    }
    for i in 0..100u64 {
        let cc = 5.0 * (i as f64) / 100.0;
        let x = 0.05 + 4.9 * (i as f64) / 100.0;
        let (lhs, rhs) = gamma_cs_check(cc, x, x);
        assert!(
            (lhs - rhs).abs() <= 1e-12 * rhs,
            "diagonal c={cc} x={x}: {lhs} vs {rhs}"
        );
    }
    println!("criterion 6 PASS: 10^4 random triples bounded, 100 diagonal samples equal to 1e-12");
}

/// Criterion 7: the first lattice element drifts into the span of the rest —
/// non-increasing residuals with at least a factor 2 drop by n = 24, pinned
/// to regression values.
#[test]
fn criterion_7_not_a_basis_trend() {
    let params = WormParams::new(PI, 0.0).unwrap();
    let curve = redundancy_curve(0, &params, 24).unwrap();
    for w in curve.residuals.windows(2) {
        assert!(w[1] <= w[0] + 1e-10, "curve not non-increasing: {w:?}");
    }
    let first = curve.residuals[0];
    let last = *curve.residuals.last().unwrap();
    assert!(
        last <= 0.5 * first,
        "factor-2 drop violated: res(1) = {first}, res(24) = {last}"
    );
    // regression values, frozen from the first verified run; the n = 24
    // point sits on a Gram matrix drifting toward singularity (the family
    // approaches linear dependence), so the rank-revealing f64 solve lands
    // ~5e-6 relative away from the 50-digit reference 0.14964363181037168
    assert!(
        (first - 0.8011874799591139).abs() < 1e-12,
        "res(1) = {first:.16}"
    );
    assert!(
        (last - 0.1496429030065395).abs() < 1e-9,
        "res(24) = {last:.16}"
    );
    assert!((last - 0.14964363181037168).abs() < 1e-4);
    println!(
        "criterion 7 PASS: res(1) = {first:.12}, res(24) = {last:.12}, ratio = {:.4}",
        last / first
    );
}

/// Criterion 8: the disk density trend — strictly decreasing residuals with
/// condition estimates reported, pinned to regression values.
#[test]
fn criterion_8_muntz_trend() {
    let sigma = c(0.3, 0.0);
    let ns = [1i64, 2, 4, 8, 16];
    let mut residuals = Vec::new();
    let mut conds = Vec::new();
    for &n in &ns {
        let pt = muntz_residual(sigma, 0.5, 0.0, 0.0, n).unwrap();
        residuals.push(pt.residual);
        conds.push(pt.condition_estimate);
    }
    for w in residuals.windows(2) {
        assert!(w[1] < w[0], "not strictly decreasing: {residuals:?}");
    }
    assert!(conds.iter().all(|&k| k >= 1.0));
    // regression values, frozen from the first verified run (the n = 16
    // point sits on the drop-tolerance floor of the rank-revealing solve;
    // an exact-arithmetic solve would give 1.77e-5)
    let frozen = [
        0.022624136959567,
        0.006406770775530,
        0.001240128729314,
        0.000169750302989,
        0.000097145883032,
    ];
    for ((&r, &f), &n) in residuals.iter().zip(&frozen).zip(&ns) {
        assert!(
            (r - f).abs() <= 1e-9_f64.max(1e-6 * f),
            "n={n}: residual {r:.15} vs frozen {f:.15}"
        );
    }
    println!(
        "criterion 8 PASS: residuals {residuals:?} strictly decreasing, conditions up to {:.3e}",
        conds.last().unwrap()
    );
}

/// Criterion 9: the sector projector reproduces single Fourier modes and
/// annihilates orthogonal ones, |j| ≤ 6 at 64 angles.
#[test]
fn criterion_9_sector_projector() {
    let z1 = c(1.2, 0.3);
    let r2 = 1.9;
    for mode in -6..=6i32 {
        for j in -6..=6i32 {
            let v = q_project(|_, z2| z2.powi(mode), j, z1, r2, 64);
            if mode == j {
                let expect = r2.powf(mode as f64 / 2.0);
                assert!(
                    (v.re - expect).abs() <= 1e-12 * expect.max(1.0) && v.im.abs() <= 1e-12,
                    "mode {mode}: {v} vs {expect}"
                );
            } else {
                assert!(v.norm() <= 1e-12, "mode {mode} vs j {j}: {v}");
            }
        }
    }
    println!("criterion 9 PASS: modes |j| <= 6 reproduced/annihilated at 1e-12 with 64 angles");
}
