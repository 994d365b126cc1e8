//! Experiment runners: each builds a [`Report`] from the library calls.

use bergman_worm::diagnostics::{
    bessel_bound_chain, bessel_defect, completeness_study, gamma_cs_check, gram_system,
    muntz_residual, pi2_series, projection_residual, redundancy_curve,
};
use bergman_worm::geometry::{QuadConfig, WormParams};
use bergman_worm::monomials::{
    disk_inner, resolve, worm_inner, worm_norm_sq, MonomialIndex, PowerSpec,
};
use bergman_worm::oracle::{mc_worm_inner, q_project, quad_disk_inner, quad_worm_inner};
use bergman_worm::special::sinh_ratio;
use bergman_worm::C64;
use std::f64::consts::PI;

use crate::report::{fmt_f64, Meta, Report, Row};
use crate::CliError;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn spec(re: f64, im: f64, j: i32) -> Result<PowerSpec, CliError> {
    PowerSpec::new(c(re, im), j).map_err(|e| CliError::Validation(e.to_string()))
}

fn numerical<E: std::fmt::Display>(operation: &str) -> impl Fn(E) -> CliError + '_ {
    move |e| CliError::Numerical(format!("{operation}: {e}"))
}

/// Closed-form inner product of two exponent pairs against both oracles.
pub fn inner_product(
    alpha: C64,
    beta: C64,
    j: i32,
    with_mc: bool,
    params: &WormParams,
    quad: &QuadConfig,
) -> Result<Report, CliError> {
    let a = spec(alpha.re, alpha.im, j)?;
    let b = spec(beta.re, beta.im, j)?;
    let closed = worm_inner(&a, &b, params).map_err(numerical("worm_inner"))?;
    let q = quad_worm_inner(&a, &b, params, quad).map_err(numerical("quad_worm_inner"))?;
    let tol = (quad.rel_tol * closed.norm()).max(quad.abs_tol);
    let mut rows = vec![Row::matches(
        format!(
            "closed vs quadrature: alpha=({},{}) beta=({},{}) j={j}",
            alpha.re, alpha.im, beta.re, beta.im
        ),
        closed,
        q.value,
        tol.max(10.0 * q.abs_error_estimate),
        format!(
            "oracle error estimate {}, {} evaluations",
            fmt_f64(q.abs_error_estimate),
            q.evaluations
        ),
    )];
    if with_mc {
        let mc = mc_worm_inner(&a, &b, params, quad).map_err(numerical("mc_worm_inner"))?;
        rows.push(Row::matches(
            "closed vs monte-carlo",
            closed,
            mc.result.value,
            3.0 * mc.result.abs_error_estimate,
            format!(
                "standard error {}, acceptance rate {}, {} samples",
                fmt_f64(mc.result.abs_error_estimate),
                fmt_f64(mc.acceptance_rate),
                mc.result.evaluations
            ),
        ));
    }
    Ok(Report {
        meta: Meta::new(
            "inner-product",
            "closed-form inner product vs integration oracles",
            params,
            quad,
        ),
        rows,
    })
}

/// Normalized Gram system of lattice elements and the projection residual.
pub fn gram(
    j: i32,
    target_ell: u32,
    basis_ells: &[u32],
    params: &WormParams,
    quad: &QuadConfig,
) -> Result<Report, CliError> {
    let target = resolve(MonomialIndex::new(target_ell, j), params);
    let basis: Vec<PowerSpec> = basis_ells
        .iter()
        .map(|&ell| resolve(MonomialIndex::new(ell, j), params))
        .collect();
    let sys = gram_system(&target, &basis, params).map_err(numerical("gram_system"))?;
    let mut rows = Vec::new();
    for (i, &li) in basis_ells.iter().enumerate() {
        for (k, &lk) in basis_ells.iter().enumerate() {
            rows.push(Row::matches(
                format!("matrix[{i}][{k}] (ell {li} vs {lk})"),
                sys.matrix()[(i, k)],
                if i == k { c(1.0, 0.0) } else { c(0.0, 0.0) },
                f64::INFINITY,
                "diagonal is 1 by normalization; off-diagonal values are data",
            ));
        }
    }
    for (i, &li) in basis_ells.iter().enumerate() {
        rows.push(Row::matches(
            format!("rhs[{i}] (target {target_ell} vs ell {li})"),
            sys.rhs()[i],
            c(0.0, 0.0),
            f64::INFINITY,
            "",
        ));
    }
    let out = projection_residual(&sys);
    rows.push(Row::value(
        "projection residual",
        out.residual,
        format!(
            "condition estimate {}, dropped {} modes{}",
            fmt_f64(out.condition_estimate),
            out.dropped,
            if out.ill_conditioned {
                ", ill-conditioned"
            } else {
                ""
            }
        ),
    ));
    rows.push(Row::value("target norm squared", sys.target_norm_sq(), ""));
    Ok(Report {
        meta: Meta::new(
            "gram",
            "normalized Gram system and projection residual",
            params,
            quad,
        ),
        rows,
    })
}

/// All distinct same-parity pairs up to ell_max: normalized inner products
/// must vanish to 1e−10.
pub fn orthogonality_check(
    j: i32,
    even: bool,
    ell_max: u32,
    params: &WormParams,
    quad: &QuadConfig,
) -> Result<Report, CliError> {
    let parity = if even { 0 } else { 1 };
    let ells: Vec<u32> = (0..=ell_max).filter(|l| l % 2 == parity).collect();
    let mut rows = Vec::new();
    for (i, &la) in ells.iter().enumerate() {
        for &lb in &ells[i + 1..] {
            let a = resolve(MonomialIndex::new(la, j), params);
            let b = resolve(MonomialIndex::new(lb, j), params);
            let ip = worm_inner(&a, &b, params).map_err(numerical("worm_inner"))?;
            let scale = (worm_norm_sq(&a, params).map_err(numerical("worm_norm_sq"))?
                * worm_norm_sq(&b, params).map_err(numerical("worm_norm_sq"))?)
            .sqrt();
            rows.push(Row::matches(
                format!("H_{{{la},{j}}} vs H_{{{lb},{j}}}"),
                ip / scale,
                c(0.0, 0.0),
                1e-10,
                "normalized inner product",
            ));
        }
    }
    Ok(Report {
        meta: Meta::new(
            "orthogonality-check",
            "orthogonal-system check on one parity class of the lattice",
            params,
            quad,
        ),
        rows,
    })
}

/// The incompleteness certificate: defect pieces, margin, and bounding sums.
pub fn bessel(
    m: u32,
    j: i32,
    k_max: u32,
    params: &WormParams,
    quad: &QuadConfig,
) -> Result<Report, CliError> {
    let d = bessel_defect(m, j, params, k_max).map_err(numerical("bessel_defect"))?;
    let chain = bessel_bound_chain(m, j, params, k_max).map_err(numerical("bessel_bound_chain"))?;
    let rows = vec![
        Row::value(
            "lhs = squared norm of the odd element",
            d.lhs,
            format!("m={m} j={j} k_max={k_max}"),
        ),
        Row::value(
            "rhs_partial = Bessel sum over the even family",
            d.rhs_partial,
            "",
        ),
        Row::value("tail_bound on the omitted terms", d.tail_bound, ""),
        Row::bound(
            "defect margin lhs - rhs_partial - tail_bound > 0",
            d.margin(),
            0.0,
            "positive margin certifies incompleteness",
        ),
        Row::bound("bounding sum3 < 1", 1.0, chain.sum3, "certificate chain"),
        Row::bound(
            "sum2 (with sin^2) <= sum3",
            chain.sum3 * (1.0 + 1e-15),
            chain.sum2_normalized,
            "",
        ),
    ];
    Ok(Report {
        meta: Meta::new(
            "bessel-defect",
            "incompleteness certificate: positive Bessel defect",
            params,
            quad,
        ),
        rows,
    })
}

/// Truncations of the residue series for π².
pub fn pi2(
    m: u32,
    n_terms: u32,
    params: &WormParams,
    quad: &QuadConfig,
) -> Result<Report, CliError> {
    let s = pi2_series(m, n_terms);
    let pi_sq = PI * PI;
    let rows = vec![
        Row::matches(
            format!("two-sided partial sum, m={m}, n={n_terms}"),
            c(s.two_sided, 0.0),
            c(pi_sq, 0.0),
            (4e-4_f64).max(8.0 / n_terms.max(1) as f64),
            "converges like 1/n",
        ),
        Row::bound("one-sided sum strictly below pi^2", pi_sq, s.one_sided, ""),
        Row::bound(
            "one-sided below two-sided",
            s.two_sided,
            s.one_sided - f64::EPSILON,
            "",
        ),
    ];
    Ok(Report {
        meta: Meta::new(
            "pi2-series",
            "residue-series identity for pi^2",
            params,
            quad,
        ),
        rows,
    })
}

/// Density trend of power families in the disk space.
pub fn muntz(
    a: f64,
    c0: f64,
    b: f64,
    sigma: C64,
    truncations: &[i64],
    params: &WormParams,
    quad: &QuadConfig,
) -> Result<Report, CliError> {
    let mut rows = Vec::new();
    let mut prev: Option<f64> = None;
    for &n in truncations {
        let pt = muntz_residual(sigma, a, c0, b, n).map_err(|e| match e {
            bergman_worm::diagnostics::DiagnosticsError::InvalidParameter { .. } => {
                CliError::Validation(e.to_string())
            }
            other => CliError::Numerical(format!("muntz_residual: {other}")),
        })?;
        rows.push(Row::value(
            format!("residual at n = {n}"),
            pt.residual,
            format!(
                "condition estimate {}{}",
                fmt_f64(pt.condition_estimate),
                if pt.ill_conditioned {
                    ", ill-conditioned"
                } else {
                    ""
                }
            ),
        ));
        if let Some(p) = prev {
            rows.push(Row::bound(
                format!("residual decreases into n = {n}"),
                p,
                pt.residual,
                "",
            ));
        }
        prev = Some(pt.residual);
    }
    Ok(Report {
        meta: Meta::new(
            "muntz",
            "power-family density trend in the disk space",
            params,
            quad,
        ),
        rows,
    })
}

/// Redundancy of the first lattice element: distance to the span of the rest.
pub fn red_thm(
    j: i32,
    n_max: u32,
    params: &WormParams,
    quad: &QuadConfig,
) -> Result<Report, CliError> {
    let curve = redundancy_curve(j, params, n_max).map_err(numerical("redundancy_curve"))?;
    let mut rows = Vec::new();
    for (i, &n) in curve.truncation_sizes.iter().enumerate() {
        rows.push(Row::value(
            format!("residual of H_{{0,{j}}} against span of H_{{1..{},{j}}}", n),
            curve.residuals[i],
            format!(
                "condition estimate {}",
                fmt_f64(curve.condition_estimates[i])
            ),
        ));
    }
    if let (Some(&first), Some(&last)) = (curve.residuals.first(), curve.residuals.last()) {
        if n_max >= 24 {
            rows.push(Row::bound(
                "final residual at most half the first",
                0.5 * first,
                last - f64::EPSILON,
                "trend toward membership in the closed span",
            ));
        } else {
            rows.push(Row::value(
                "drop ratio so far",
                last / first,
                format!("reaches 0.5 by n = 24; this run stopped at n = {n_max}"),
            ));
        }
    }
    Ok(Report {
        meta: Meta::new(
            "red-thm",
            "complete family is not a basis: first element is redundant",
            params,
            quad,
        ),
        rows,
    })
}

/// Joint-family completeness trend for chosen targets.
pub fn completeness(
    j: i32,
    n_max: u32,
    targets: &[[f64; 2]],
    params: &WormParams,
    quad: &QuadConfig,
) -> Result<Report, CliError> {
    let specs: Vec<PowerSpec> = targets
        .iter()
        .map(|t| spec(t[0], t[1], j))
        .collect::<Result<_, _>>()?;
    let curves =
        completeness_study(j, params, &specs, n_max).map_err(numerical("completeness_study"))?;
    let within = params.mu() > PI / 2.0;
    let mut rows = Vec::new();
    if !within {
        rows.push(Row::value(
            "hypothesis flag",
            params.mu(),
            "mu <= pi/2: outside the density claim's hypotheses; exploratory output",
        ));
    }
    for (t, curve) in curves.iter().enumerate() {
        for (i, &n) in curve.truncation_sizes.iter().enumerate() {
            rows.push(Row::value(
                format!(
                    "target {t} (alpha = {} + {}i): residual with span size {n}",
                    targets[t][0], targets[t][1]
                ),
                curve.residuals[i],
                format!(
                    "condition estimate {}",
                    fmt_f64(curve.condition_estimates[i])
                ),
            ));
        }
    }
    Ok(Report {
        meta: Meta::new(
            "completeness",
            "joint-family completeness trend",
            params,
            quad,
        ),
        rows,
    })
}

/// The full closed-form-vs-oracle suite at the configured mesh sizes.
pub fn verify(params: &WormParams, quad: &QuadConfig) -> Result<Report, CliError> {
    let mut rows = Vec::new();

    // disk anchors and a complex pair
    let q =
        quad_disk_inner(c(0.0, 0.0), c(0.0, 0.0), quad).map_err(numerical("quad_disk_inner"))?;
    rows.push(Row::matches(
        "disk <1,1> = pi",
        c(PI, 0.0),
        q.value,
        1e-8,
        "area of the disk",
    ));
    let q =
        quad_disk_inner(c(1.0, 0.0), c(1.0, 0.0), quad).map_err(numerical("quad_disk_inner"))?;
    rows.push(Row::matches(
        "disk <z,z> = 3pi/2",
        c(1.5 * PI, 0.0),
        q.value,
        1e-6 * 1.5 * PI,
        "factorial case",
    ));
    for (alpha, beta, label) in [
        (c(0.7, 0.3), c(0.2, -0.1), "disk generic complex pair"),
        (c(-0.5, 2.0), c(-0.5, -2.0), "disk boundary-singular pair"),
    ] {
        let closed = disk_inner(alpha, beta).map_err(numerical("disk_inner"))?;
        let q = quad_disk_inner(alpha, beta, quad).map_err(numerical("quad_disk_inner"))?;
        rows.push(Row::matches(
            label,
            closed,
            q.value,
            (1e-6 * closed.norm()).max(1e-8),
            format!("oracle error estimate {}", fmt_f64(q.abs_error_estimate)),
        ));
    }

    // worm anchors at the configured parameters and at the reference point
    let pi_params = WormParams::new(PI, 0.0).map_err(|e| CliError::Validation(e.to_string()))?;
    let f = spec(0.0, 0.0, -1)?;
    let closed = worm_inner(&f, &f, &pi_params).map_err(numerical("worm_inner"))?;
    rows.push(Row::matches(
        "worm norm anchor 2pi^3 (mu = pi)",
        closed,
        c(2.0 * PI.powi(3), 0.0),
        1e-12 * 2.0 * PI.powi(3),
        "closed form against the exact constant",
    ));
    let q = quad_worm_inner(&f, &f, &pi_params, quad).map_err(numerical("quad_worm_inner"))?;
    rows.push(Row::matches(
        "worm norm anchor vs quadrature",
        closed,
        q.value,
        1e-6 * closed.norm(),
        format!("{} evaluations", q.evaluations),
    ));

    // orthogonal lattice pair seen by the oracle
    let h0 = resolve(MonomialIndex::new(0, 0), &pi_params);
    let h2 = resolve(MonomialIndex::new(2, 0), &pi_params);
    let q = quad_worm_inner(&h0, &h2, &pi_params, quad).map_err(numerical("quad_worm_inner"))?;
    rows.push(Row::matches(
        "orthogonal lattice pair via quadrature",
        c(0.0, 0.0),
        q.value,
        1e-8,
        "",
    ));

    // one generic pair at the configured worm against both oracles
    let a = spec(0.6, 0.4, 1)?;
    let b = spec(0.3, -0.8, 1)?;
    let closed = worm_inner(&a, &b, params).map_err(numerical("worm_inner"))?;
    let q = quad_worm_inner(&a, &b, params, quad).map_err(numerical("quad_worm_inner"))?;
    rows.push(Row::matches(
        "worm generic pair vs quadrature",
        closed,
        q.value,
        1e-6 * closed.norm(),
        "",
    ));
    let mc = mc_worm_inner(&a, &b, params, quad).map_err(numerical("mc_worm_inner"))?;
    rows.push(Row::matches(
        "worm generic pair vs monte-carlo (3 standard errors)",
        closed,
        mc.result.value,
        3.0 * mc.result.abs_error_estimate,
        format!("acceptance rate {}", fmt_f64(mc.acceptance_rate)),
    ));

    // volume through the monte-carlo route
    let one = spec(0.0, 0.0, 0)?;
    let mc = mc_worm_inner(&one, &one, params, quad).map_err(numerical("mc_worm_inner"))?;
    let vol = 2.0 * PI * PI * params.mu().sinh();
    rows.push(Row::matches(
        "domain volume vs monte-carlo (3 standard errors)",
        c(vol, 0.0),
        mc.result.value,
        3.0 * mc.result.abs_error_estimate,
        "2 pi^2 sinh(mu)",
    ));

    // sector projector
    let v = q_project(|_, z2| z2.powi(3), 3, c(1.2, 0.1), 1.7, 64);
    rows.push(Row::matches(
        "sector projector keeps its mode",
        v,
        c(1.7f64.powf(1.5), 0.0),
        1e-12,
        "",
    ));
    let v = q_project(|_, z2| z2.powi(3), 2, c(1.2, 0.1), 1.7, 64);
    rows.push(Row::matches(
        "sector projector kills other modes",
        v,
        c(0.0, 0.0),
        1e-12,
        "",
    ));

    // incompleteness certificate at the configured worm
    let d = bessel_defect(0, 0, params, 50).map_err(numerical("bessel_defect"))?;
    rows.push(Row::bound(
        "Bessel defect margin > 0",
        d.margin(),
        0.0,
        "m=0 j=0 k_max=50",
    ));
    let chain = bessel_bound_chain(0, 0, params, 50).map_err(numerical("bessel_bound_chain"))?;
    rows.push(Row::bound("bounding sum3 < 1", 1.0, chain.sum3, ""));

    // residue identity and the Gamma bound
    let s = pi2_series(0, 10_000);
    rows.push(Row::matches(
        "pi^2 residue series (10^4 terms)",
        c(s.two_sided, 0.0),
        c(PI * PI, 0.0),
        4e-4,
        "",
    ));
    rows.push(Row::bound(
        "one-sided sum below pi^2",
        PI * PI,
        s.one_sided,
        "",
    ));
    let (lhs, rhs) = gamma_cs_check(0.0, 1.0, 2.0);
    rows.push(Row::bound(
        "Gamma log-convexity bound",
        rhs,
        lhs - 1e-12,
        "Gamma(3)^2 = 4 <= Gamma(2)Gamma(4) = 6",
    ));

    // removable singularity: Taylor branch against the direct quotient,
    // evaluated at one point just inside the switch radius
    let w = c(0.9e-3 / params.mu(), 0.0);
    let taylor = sinh_ratio(w, params.mu()).map_err(numerical("sinh_ratio"))?;
    let direct = (w * params.mu()).sinh() / w;
    rows.push(Row::matches(
        "sinh-ratio branch agreement just inside the switch radius",
        taylor,
        direct,
        1e-12 * params.mu(),
        "",
    ));

    // density trends, small truncations
    let r2 = muntz_residual(c(0.3, 0.0), 0.5, 0.0, 0.0, 2).map_err(numerical("muntz_residual"))?;
    let r4 = muntz_residual(c(0.3, 0.0), 0.5, 0.0, 0.0, 4).map_err(numerical("muntz_residual"))?;
    rows.push(Row::bound(
        "disk density residual decreases (n = 2 to 4)",
        r2.residual,
        r4.residual,
        "",
    ));
    let curve = redundancy_curve(0, &pi_params, 8).map_err(numerical("redundancy_curve"))?;
    rows.push(Row::bound(
        "redundancy residual decreases (n = 1 to 8)",
        curve.residuals[0],
        *curve.residuals.last().unwrap(),
        "",
    ));

    Ok(Report {
        meta: Meta::new(
            "verify",
            "closed-form vs oracle verification suite",
            params,
            quad,
        ),
        rows,
    })
}
