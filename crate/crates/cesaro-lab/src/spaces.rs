//! Norm estimators and membership statistics for the Hardy, Bloch-type,
//! Morrey and mean-Lipschitz scales.  Every supremum over the disk is taken
//! over a declared finite grid and boundedness claims are trend verdicts,
//! never certified suprema.

use crate::quad::{self, gauss_legendre_16};
use crate::series::{PowerSeries, SeriesError, TRUNCATION_TOL};
use crate::trend::{self, TrendReport, Verdict};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpaceError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("coefficient {index} is not real nonnegative (got {value})")]
    NegativeCoefficient { index: usize, value: Complex64 },
}

/// The spaces the estimators understand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "snake_case")]
pub enum SpaceSpec {
    Hardy { p: f64 },
    BlochType { alpha: f64 },
    Morrey { lambda: f64 },
    MeanLip { p: f64, alpha: f64 },
}

/// The grid a norm estimate was computed on, sufficient to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct GridSpec {
    pub radii: Vec<f64>,
    pub theta_nodes: usize,
    /// Nonempty for area-integral norms: the w-samples as (re, im) pairs.
    pub w_samples: Vec<(f64, f64)>,
    /// True when nonnegative coefficients let the angular grid collapse to
    /// the positive real axis.
    pub theta_collapsed: bool,
}

/// A norm value over a declared grid with convergence diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub grid_spec: GridSpec,
    /// True when recomputing at half the truncation order moves the value
    /// by less than 2%.
    pub converged: bool,
    /// (grid parameter, statistic) pairs for growth diagnostics.
    pub profile: Option<Vec<(f64, f64)>>,
}

impl NormEstimate {
    /// Log-log slope of the profile tail against ln 1/(1-r).
    pub fn trend_slope(&self) -> f64 {
        self.trend_report().slope
    }

    pub fn trend_report(&self) -> TrendReport {
        let profile = self.profile.clone().unwrap_or_default();
        let grid: Vec<f64> = profile.iter().map(|&(r, _)| r).collect();
        let scale: Vec<f64> = grid.iter().map(|&r| -(1.0 - r).max(1e-300).ln()).collect();
        let values: Vec<f64> = profile.iter().map(|&(_, v)| v).collect();
        trend::assess(grid, &scale, values)
    }

    pub fn growth_verdict(&self) -> Verdict {
        self.trend_report().verdict
    }
}

/// Default depth of the radial grid r_j = 1 - 2^{-j/2}.
pub const DEFAULT_RADIAL_DEPTH: usize = 30;

/// Radial grid {0} ∪ {1 - 2^{-j/2}} capped at (and including) `r_cap`.
fn radial_grid(depth: usize, r_cap: f64) -> Vec<f64> {
    let mut grid = vec![0.0];
    for j in 1..=depth {
        let r = 1.0 - (-(j as f64) / 2.0).exp2();
        if r >= r_cap {
            break;
        }
        grid.push(r);
    }
    grid.push(r_cap);
    grid
}

fn check_hardy_p(p: f64) -> Result<(), SpaceError> {
    if p.is_nan() || p <= 0.0 {
        return Err(SpaceError::InvalidParameter(format!(
            "Hardy exponent p must be in (0, ∞], got {p}"
        )));
    }
    Ok(())
}

/// Integral mean M_p(r, f): the periodic trapezoid over ≥ 4N angular nodes
/// (exact for the truncated spectrum at p = 2), or the node maximum at
/// p = ∞.
pub fn integral_mean(f: &PowerSeries, r: f64, p: f64) -> Result<f64, SpaceError> {
    check_hardy_p(p)?;
    f.evaluate(Complex64::new(r, 0.0))?;
    Ok(integral_mean_unchecked(f, r, p))
}

fn integral_mean_unchecked(f: &PowerSeries, r: f64, p: f64) -> f64 {
    let m = quad::circle_nodes_for(f.coeffs().len());
    let samples = quad::circle_samples(f.coeffs(), r, m);
    if p.is_infinite() {
        samples.iter().map(|v| v.norm()).fold(0.0, f64::max)
    } else {
        let sum: f64 = samples.iter().map(|v| v.norm().powf(p)).sum();
        (sum / m as f64).powf(1.0 / p)
    }
}

/// Shared pattern for the radial-sup estimators: value, profile and the
/// N-refinement convergence flag.
fn radial_sup_estimate(
    f: &PowerSeries,
    depth: usize,
    statistic: impl Fn(&PowerSeries, f64) -> Result<f64, SpaceError>,
    base: f64,
    theta_nodes: usize,
    theta_collapsed: bool,
) -> Result<NormEstimate, SpaceError> {
    let estimate_on = |g: &PowerSeries| -> Result<(f64, Vec<(f64, f64)>), SpaceError> {
        let r_cap = g.admissible_radius(TRUNCATION_TOL);
        let grid = radial_grid(depth, r_cap);
        let mut profile = Vec::with_capacity(grid.len());
        let mut sup = 0.0f64;
        for &r in &grid {
            let v = statistic(g, r)?;
            sup = sup.max(v);
            profile.push((r, v));
        }
        Ok((sup, profile))
    };
    let (sup, profile) = estimate_on(f)?;
    let converged = if f.order() >= 8 {
        let (sup_half, _) = estimate_on(&f.truncated(f.order() / 2))?;
        (sup - sup_half).abs() <= 0.02 * sup.abs().max(sup_half.abs()).max(1e-300)
    } else {
        true
    };
    let radii = profile.iter().map(|&(r, _)| r).collect();
    Ok(NormEstimate {
        value: base + sup,
        grid_spec: GridSpec {
            radii,
            theta_nodes,
            w_samples: Vec::new(),
            theta_collapsed,
        },
        converged,
        profile: Some(profile),
    })
}

/// sup_r M_p(r, f) over the radial grid.
pub fn hardy_norm(f: &PowerSeries, p: f64) -> Result<NormEstimate, SpaceError> {
    hardy_norm_with_depth(f, p, DEFAULT_RADIAL_DEPTH)
}

pub fn hardy_norm_with_depth(
    f: &PowerSeries,
    p: f64,
    depth: usize,
) -> Result<NormEstimate, SpaceError> {
    check_hardy_p(p)?;
    let theta = quad::circle_nodes_for(f.coeffs().len());
    radial_sup_estimate(
        f,
        depth,
        |g, r| Ok(integral_mean_unchecked(g, r, p)),
        0.0,
        theta,
        false,
    )
}

/// |f(0)| + sup (1-r²)^α·|f'| over the grid.  For nonnegative coefficients
/// the angular maximum sits on the positive real axis and the θ-grid
/// collapses to θ = 0.
pub fn bloch_norm(f: &PowerSeries, alpha: f64) -> Result<NormEstimate, SpaceError> {
    bloch_norm_with_depth(f, alpha, DEFAULT_RADIAL_DEPTH)
}

pub fn bloch_norm_with_depth(
    f: &PowerSeries,
    alpha: f64,
    depth: usize,
) -> Result<NormEstimate, SpaceError> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(SpaceError::InvalidParameter(format!(
            "Bloch exponent α must be positive, got {alpha}"
        )));
    }
    let base = f.constant_term().norm();
    if f.order() == 0 {
        return Ok(NormEstimate {
            value: base,
            grid_spec: GridSpec::default(),
            converged: true,
            profile: Some(Vec::new()),
        });
    }
    let collapsed = f.has_nonneg_real_coeffs();
    let df = f.differentiate(1)?;
    let theta = if collapsed {
        1
    } else {
        quad::circle_nodes_for(df.coeffs().len())
    };
    let mut est = radial_sup_estimate(
        &df,
        depth,
        move |g, r| {
            let weight = (1.0 - r * r).powf(alpha);
            let sup_mod = if collapsed {
                g.evaluate_unchecked(Complex64::new(r, 0.0)).norm()
            } else {
                integral_mean_unchecked(g, r, f64::INFINITY)
            };
            Ok(weight * sup_mod)
        },
        base,
        theta,
        collapsed,
    )?;
    est.grid_spec.theta_collapsed = collapsed;
    Ok(est)
}

/// max over 1 ≤ n ≤ N of n^{-α}·Σ_{k≤n} k·ĉ_k, the coefficient-side
/// Bloch statistic for series with nonnegative coefficients.
pub fn bloch_coefficient_statistic(f: &PowerSeries, alpha: f64) -> Result<f64, SpaceError> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(SpaceError::InvalidParameter(format!(
            "Bloch exponent α must be positive, got {alpha}"
        )));
    }
    let scale = f
        .coeffs()
        .iter()
        .map(|c| c.norm())
        .fold(0.0f64, f64::max)
        .max(1.0);
    for (k, c) in f.coeffs().iter().enumerate() {
        if c.im.abs() > 1e-14 * scale || c.re < -1e-14 * scale {
            return Err(SpaceError::NegativeCoefficient {
                index: k,
                value: *c,
            });
        }
    }
    let mut best = 0.0f64;
    let mut partial = 0.0f64;
    for (k, c) in f.coeffs().iter().enumerate().skip(1) {
        partial += k as f64 * c.re.max(0.0);
        let stat = partial / (k as f64).powf(alpha);
        best = best.max(stat);
    }
    Ok(best)
}

/// Morrey norm with the equivalent area-integral form:
/// |f(0)| + sup_w ((1-|w|²)^{2-λ} ∫ |f'(z)|²(1-|z|²)/|1-z·w̄|² dA(z))^{1/2}.
/// The w-grid runs up the positive real axis plus a coarse complex ring;
/// constants are representative of the equivalence class only.
pub fn morrey_norm(f: &PowerSeries, lambda: f64) -> Result<NormEstimate, SpaceError> {
    morrey_norm_with_depth(f, lambda, 15)
}

pub fn morrey_norm_with_depth(
    f: &PowerSeries,
    lambda: f64,
    w_depth: usize,
) -> Result<NormEstimate, SpaceError> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(SpaceError::InvalidParameter(format!(
            "Morrey exponent λ must be in (0, 1], got {lambda}"
        )));
    }
    let base = f.constant_term().norm();
    if f.order() == 0 {
        return Ok(NormEstimate {
            value: base,
            grid_spec: GridSpec::default(),
            converged: true,
            profile: Some(Vec::new()),
        });
    }
    let compute = |g: &PowerSeries| -> Result<(f64, Vec<(f64, f64)>, GridSpec), SpaceError> {
        let dg = g.differentiate(1)?;
        let r_cap = dg.admissible_radius(TRUNCATION_TOL);
        let m_theta = quad::circle_nodes_for(dg.coeffs().len());

        // Radial Gauss-Legendre nodes on dyadic annuli in 1-r, capped at the
        // admissible radius of f'.
        let rule = gauss_legendre_16();
        let mut radial: Vec<(f64, f64)> = Vec::new(); // (r, global weight 2r·dr)
        let mut outer = 0.0f64;
        let mut j = 0usize;
        loop {
            let inner_edge = outer;
            let outer_edge = (1.0 - (0.5f64).powi(j as i32 + 1)).min(r_cap);
            let (a, b) = (inner_edge, outer_edge);
            if b > a {
                let mid = 0.5 * (a + b);
                let half = 0.5 * (b - a);
                for &(x, w) in rule {
                    let r = mid + half * x;
                    radial.push((r, w * half * 2.0 * r));
                }
            }
            outer = outer_edge;
            j += 1;
            if outer >= r_cap || j > 60 {
                break;
            }
        }

        // |f'|² samples on every (r, θ) node.
        let thetas: Vec<f64> = (0..m_theta)
            .map(|k| 2.0 * std::f64::consts::PI * k as f64 / m_theta as f64)
            .collect();
        let cos_t: Vec<f64> = thetas.iter().map(|t| t.cos()).collect();
        let sin_t: Vec<f64> = thetas.iter().map(|t| t.sin()).collect();
        let samples: Vec<Vec<f64>> = radial
            .iter()
            .map(|&(r, _)| {
                quad::circle_samples(dg.coeffs(), r, m_theta)
                    .iter()
                    .map(|v| v.norm_sqr())
                    .collect()
            })
            .collect();

        // w grid: positive real axis (trend axis) plus a coarse ring.
        // Once 1-w falls under twice the truncation margin the kernel peak
        // escapes the integrated region, so the radial w walk stops there.
        let w_limit = 1.0 - 2.0 * (1.0 - r_cap);
        let mut w_real: Vec<f64> = Vec::new();
        for jw in 1..=w_depth {
            let w = 1.0 - (-(jw as f64) / 2.0).exp2();
            if w > w_limit {
                break;
            }
            w_real.push(w);
        }
        let mut w_all: Vec<Complex64> = w_real.iter().map(|&w| Complex64::new(w, 0.0)).collect();
        for &rho in &[0.5f64, 0.9] {
            for k in 0..8 {
                let phi = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / 8.0;
                w_all.push(Complex64::from_polar(rho, phi));
            }
        }

        let eval_w = |w: Complex64| -> f64 {
            let wn = w.norm_sqr();
            let mut integral = 0.0f64;
            for (ri, &(r, wt)) in radial.iter().enumerate() {
                let one_minus_r2 = 1.0 - r * r;
                let mut theta_sum = 0.0f64;
                let row = &samples[ri];
                for k in 0..m_theta {
                    // |1 - r e^{iθ} w̄|² = 1 + r²|w|² - 2r·Re(w̄ e^{iθ})
                    let denom =
                        1.0 + r * r * wn - 2.0 * r * (w.re * cos_t[k] + w.im * sin_t[k]);
                    theta_sum += row[k] / denom;
                }
                integral += wt * one_minus_r2 * theta_sum / m_theta as f64;
            }
            ((1.0 - wn).powf(2.0 - lambda) * integral).max(0.0).sqrt()
        };

        let values: Vec<f64> = w_all.iter().map(|&w| eval_w(w)).collect();
        let sup = values.iter().copied().fold(0.0, f64::max);
        let profile: Vec<(f64, f64)> = w_real
            .iter()
            .copied()
            .zip(values.iter().copied())
            .collect();
        let grid_spec = GridSpec {
            radii: radial.iter().map(|&(r, _)| r).collect(),
            theta_nodes: m_theta,
            w_samples: w_all.iter().map(|w| (w.re, w.im)).collect(),
            theta_collapsed: false,
        };
        Ok((sup, profile, grid_spec))
    };

    let (sup, profile, grid_spec) = compute(f)?;
    let converged = if f.order() >= 8 {
        let (sup_half, _, _) = compute(&f.truncated(f.order() / 2))?;
        (sup - sup_half).abs() <= 0.02 * sup.abs().max(sup_half.abs()).max(1e-300)
    } else {
        true
    };
    Ok(NormEstimate {
        value: base + sup,
        grid_spec,
        converged,
        profile: Some(profile),
    })
}

/// |f(0)| + sup (1-r)^{1-α}·M_p(r, f').
pub fn mean_lipschitz_norm(f: &PowerSeries, p: f64, alpha: f64) -> Result<NormEstimate, SpaceError> {
    mean_lipschitz_norm_with_depth(f, p, alpha, DEFAULT_RADIAL_DEPTH)
}

pub fn mean_lipschitz_norm_with_depth(
    f: &PowerSeries,
    p: f64,
    alpha: f64,
    depth: usize,
) -> Result<NormEstimate, SpaceError> {
    if !(1.0..f64::INFINITY).contains(&p) {
        return Err(SpaceError::InvalidParameter(format!(
            "mean-Lipschitz exponent p must be in [1, ∞), got {p}"
        )));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(SpaceError::InvalidParameter(format!(
            "mean-Lipschitz smoothness α must be in (0, 1], got {alpha}"
        )));
    }
    let base = f.constant_term().norm();
    if f.order() == 0 {
        return Ok(NormEstimate {
            value: base,
            grid_spec: GridSpec::default(),
            converged: true,
            profile: Some(Vec::new()),
        });
    }
    let df = f.differentiate(1)?;
    let theta = quad::circle_nodes_for(df.coeffs().len());
    radial_sup_estimate(
        &df,
        depth,
        move |g, r| Ok((1.0 - r).powf(1.0 - alpha) * integral_mean_unchecked(g, r, p)),
        base,
        theta,
        false,
    )
}

/// The Λ¹₁ criterion statistic: sup (1-r)·M₁(r, f'').
pub fn lambda11_statistic(f: &PowerSeries) -> Result<NormEstimate, SpaceError> {
    lambda11_statistic_with_depth(f, DEFAULT_RADIAL_DEPTH)
}

pub fn lambda11_statistic_with_depth(
    f: &PowerSeries,
    depth: usize,
) -> Result<NormEstimate, SpaceError> {
    if f.order() < 2 {
        return Ok(NormEstimate {
            value: 0.0,
            grid_spec: GridSpec::default(),
            converged: true,
            profile: Some(Vec::new()),
        });
    }
    let ddf = f.differentiate(2)?;
    let theta = quad::circle_nodes_for(ddf.coeffs().len());
    radial_sup_estimate(
        &ddf,
        depth,
        move |g, r| Ok((1.0 - r) * integral_mean_unchecked(g, r, 1.0)),
        0.0,
        theta,
        false,
    )
}

/// Growth-envelope check along the positive radius against the pointwise
/// bounds the Bloch-type and Morrey scales impose.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    /// (r, |f(r)| / envelope(r)) pairs.
    pub ratios: Vec<(f64, f64)>,
    pub max_ratio: f64,
    pub trend: TrendReport,
}

pub fn growth_envelope_check(
    f: &PowerSeries,
    spec: SpaceSpec,
) -> Result<GrowthReport, SpaceError> {
    let envelope: Box<dyn Fn(f64) -> f64> = match spec {
        SpaceSpec::BlochType { alpha } => {
            if !(alpha > 0.0) {
                return Err(SpaceError::InvalidParameter(format!(
                    "Bloch exponent α must be positive, got {alpha}"
                )));
            }
            if alpha < 1.0 {
                Box::new(|_r| 1.0)
            } else if alpha == 1.0 {
                Box::new(|r: f64| (2.0 / (1.0 - r)).ln())
            } else {
                Box::new(move |r: f64| (1.0 - r).powf(1.0 - alpha))
            }
        }
        SpaceSpec::Morrey { lambda } => {
            if !(lambda > 0.0 && lambda <= 1.0) {
                return Err(SpaceError::InvalidParameter(format!(
                    "Morrey exponent λ must be in (0, 1], got {lambda}"
                )));
            }
            if lambda == 1.0 {
                Box::new(|r: f64| (2.0 / (1.0 - r)).ln())
            } else {
                Box::new(move |r: f64| (1.0 - r).powf(-(1.0 - lambda) / 2.0))
            }
        }
        other => {
            return Err(SpaceError::InvalidParameter(format!(
                "growth envelopes are defined for Bloch-type and Morrey specs, got {other:?}"
            )))
        }
    };
    let r_cap = f.admissible_radius(TRUNCATION_TOL);
    let grid = radial_grid(DEFAULT_RADIAL_DEPTH, r_cap);
    let mut ratios = Vec::with_capacity(grid.len());
    let mut max_ratio = 0.0f64;
    for &r in &grid {
        let v = f.evaluate_unchecked(Complex64::new(r, 0.0)).norm();
        let ratio = v / envelope(r);
        max_ratio = max_ratio.max(ratio);
        ratios.push((r, ratio));
    }
    let scale: Vec<f64> = grid.iter().map(|&r| -(1.0 - r).max(1e-300).ln()).collect();
    let values: Vec<f64> = ratios.iter().map(|&(_, v)| v).collect();
    let trend = trend::assess(grid, &scale, values);
    Ok(GrowthReport {
        ratios,
        max_ratio,
        trend,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{make_series, TestFunctionKind};
    use approx::assert_relative_eq;

    #[test]
    fn integral_mean_examples() {
        let c = make_series(TestFunctionKind::Constant { value: -2.5 }, 4).unwrap();
        assert_relative_eq!(integral_mean(&c, 0.7, 1.0).unwrap(), 2.5, epsilon = 1e-12);
        assert_relative_eq!(
            integral_mean(&c, 0.3, f64::INFINITY).unwrap(),
            2.5,
            epsilon = 1e-12
        );

        let m = make_series(TestFunctionKind::Monomial { n: 4 }, 8).unwrap();
        assert_relative_eq!(
            integral_mean(&m, 0.5, 2.0).unwrap(),
            0.5f64.powi(4),
            epsilon = 1e-12
        );

        let g = make_series(TestFunctionKind::GeometricOnes, 512).unwrap();
        assert_relative_eq!(
            integral_mean(&g, 0.5, 2.0).unwrap(),
            (1.0f64 / 0.75).sqrt(),
            max_relative = 1e-10
        );
    }

    #[test]
    fn parseval_identity_on_the_grid() {
        let kinds = [
            TestFunctionKind::LogKernel,
            TestFunctionKind::PowerKernel { c: 1.5 },
            TestFunctionKind::Lacunary,
            TestFunctionKind::ConformalKernel { a: 0.8, p: 2.0 },
            TestFunctionKind::GeometricOnes,
        ];
        for kind in kinds {
            let f = make_series(kind, 1024).unwrap();
            let r_cap = f.admissible_radius(TRUNCATION_TOL);
            for frac in [0.1, 0.5, 0.9, 1.0] {
                let r = r_cap * frac;
                let mean = integral_mean(&f, r, 2.0).unwrap();
                let sum: f64 = f
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c.norm_sqr() * r.powi(2 * k as i32))
                    .sum();
                assert!(
                    (mean * mean - sum).abs() <= 1e-10 * (1.0 + sum),
                    "{kind:?} r={r}: {} vs {sum}",
                    mean * mean
                );
            }
        }
    }

    #[test]
    fn integral_mean_is_nondecreasing_in_r() {
        for kind in [
            TestFunctionKind::LogKernel,
            TestFunctionKind::Lacunary,
            TestFunctionKind::ConformalKernel { a: 0.7, p: 1.0 },
        ] {
            let f = make_series(kind, 256).unwrap();
            let r_cap = f.admissible_radius(TRUNCATION_TOL);
            for p in [0.5, 1.0, 2.0, f64::INFINITY] {
                let mut prev = -1.0;
                for i in 1..=10 {
                    let v = integral_mean(&f, r_cap * i as f64 / 10.0, p).unwrap();
                    assert!(v + 1e-10 >= prev, "{kind:?} p={p}");
                    prev = v;
                }
            }
        }
    }

    #[test]
    fn hardy_norm_examples() {
        let m = make_series(TestFunctionKind::Monomial { n: 3 }, 16).unwrap();
        let est = hardy_norm(&m, 4.0).unwrap();
        // Monotone in r: the last grid point dominates; r_cap = 1 for
        // polynomials so the sup is 1.
        assert_relative_eq!(est.value, 1.0, epsilon = 1e-9);
        assert!(est.converged);

        // sup_a ||f_a||_p is uniformly bounded.
        let mut values = Vec::new();
        for a in [0.5, 0.9, 0.99] {
            let f = make_series(TestFunctionKind::ConformalKernel { a, p: 2.0 }, 2048).unwrap();
            values.push(hardy_norm(&f, 2.0).unwrap().value);
        }
        let max = values.iter().copied().fold(0.0f64, f64::max);
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        assert!(max / min < 4.0, "f_a family norms spread too far: {values:?}");

        // Basel: ||log 1/(1-z)||_{H²} = π/√6.
        let log = make_series(TestFunctionKind::LogKernel, 4096).unwrap();
        let est = hardy_norm(&log, 2.0).unwrap();
        assert_relative_eq!(est.value, 1.2825498301618641, max_relative = 0.03);
        assert!(est.converged);
    }

    #[test]
    fn bloch_norm_examples() {
        let m = make_series(TestFunctionKind::Monomial { n: 1 }, 4).unwrap();
        let est = bloch_norm(&m, 1.0).unwrap();
        assert_relative_eq!(est.value, 1.0, epsilon = 1e-12);

        let log = make_series(TestFunctionKind::LogKernel, 4096).unwrap();
        let est = bloch_norm(&log, 1.0).unwrap();
        assert!(
            (est.value - 2.0).abs() < 0.03,
            "Bloch norm of log kernel: {}",
            est.value
        );
        assert!(est.converged);
        assert!(est.grid_spec.theta_collapsed);

        let h = make_series(TestFunctionKind::Lacunary, 4096).unwrap();
        let est = bloch_norm(&h, 1.0).unwrap();
        assert!(est.converged, "lacunary series is a Bloch member");
        assert!(est.value.is_finite());
    }

    #[test]
    fn bloch_statistic_examples() {
        let h = make_series(TestFunctionKind::Lacunary, 4096).unwrap();
        let s = bloch_coefficient_statistic(&h, 1.0).unwrap();
        assert!(s <= 2.0 + 1e-12, "dyadic sums stay below 2n: {s}");

        let m = make_series(TestFunctionKind::Monomial { n: 1 }, 4).unwrap();
        assert_relative_eq!(bloch_coefficient_statistic(&m, 1.0).unwrap(), 1.0);

        // (1-z)^{-3/2} sits in B^α exactly for α ≥ 5/2.
        let f = make_series(TestFunctionKind::PowerKernel { c: 1.5 }, 4096).unwrap();
        let s_bounded = bloch_coefficient_statistic(&f, 2.5).unwrap();
        let s_half = bloch_coefficient_statistic(&f.truncated(2048), 2.5).unwrap();
        assert!(s_bounded / s_half < 1.25, "statistic must stabilize at α = 2.5");
        let g_full = bloch_coefficient_statistic(&f, 1.5).unwrap();
        let g_half = bloch_coefficient_statistic(&f.truncated(2048), 1.5).unwrap();
        assert!(g_full / g_half > 1.5, "statistic must grow at α = 1.5");

        let neg = PowerSeries::from_coeffs(
            vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
            None,
        );
        assert!(matches!(
            bloch_coefficient_statistic(&neg, 1.0),
            Err(SpaceError::NegativeCoefficient { index: 1, .. })
        ));
    }

    #[test]
    fn morrey_norm_examples() {
        let c = make_series(TestFunctionKind::Constant { value: 3.0 }, 0).unwrap();
        let est = morrey_norm(&c, 0.5).unwrap();
        assert_relative_eq!(est.value, 3.0);

        // Lemma-2.6 membership boundary: (1-z)^{-(1-λ)/2} ∈ L^{2,λ}.  The
        // boundary member converges slowly in N (its corner mass decays
        // like the truncation margin^{1/2}), so stability is asserted with
        // that margin; the non-member's value keeps growing with N.
        let f = make_series(TestFunctionKind::PowerKernel { c: 0.25 }, 4096).unwrap();
        let est = morrey_norm(&f, 0.5).unwrap();
        let est_half = morrey_norm(&f.truncated(2048), 0.5).unwrap();
        assert!(
            (est.value - est_half.value).abs() <= 0.08 * est.value,
            "member must be nearly stable: {} vs {}",
            est.value,
            est_half.value
        );
        assert!(!est.growth_verdict().is_growing(), "slope {}", est.trend_slope());

        let g = make_series(TestFunctionKind::PowerKernel { c: 0.75 }, 4096).unwrap();
        let est = morrey_norm(&g, 0.5).unwrap();
        let est_half = morrey_norm(&g.truncated(2048), 0.5).unwrap();
        assert!(
            est.value > 1.2 * est_half.value,
            "non-member must keep growing without stabilization: {} vs {}",
            est.value,
            est_half.value
        );
        assert!(!est.converged);
    }

    #[test]
    fn mean_lipschitz_examples() {
        let m = make_series(TestFunctionKind::Monomial { n: 1 }, 4).unwrap();
        let est = mean_lipschitz_norm(&m, 2.0, 1.0).unwrap();
        assert_relative_eq!(est.value, 1.0, epsilon = 1e-12);

        let log = make_series(TestFunctionKind::LogKernel, 4096).unwrap();
        let est = mean_lipschitz_norm(&log, 2.0, 0.5).unwrap();
        assert!(est.value <= 1.0 + 1e-9, "(1-r)^{{1/2}}·M₂(r, 1/(1-z)) ≤ 1");
        assert!(!est.growth_verdict().is_growing());

        let g = make_series(TestFunctionKind::GeometricOnes, 4096).unwrap();
        let est = mean_lipschitz_norm(&g, 2.0, 0.5).unwrap();
        assert!(
            est.growth_verdict().is_growing(),
            "slope {}",
            est.trend_slope()
        );
    }

    #[test]
    fn lambda11_examples() {
        let m = make_series(TestFunctionKind::Monomial { n: 2 }, 4).unwrap();
        let est = lambda11_statistic(&m).unwrap();
        assert_relative_eq!(est.value, 2.0, epsilon = 1e-9);

        let log = make_series(TestFunctionKind::LogKernel, 4096).unwrap();
        let est = lambda11_statistic(&log).unwrap();
        assert!(
            !est.growth_verdict().is_growing(),
            "(1-r)·M₁(r, (1-z)^{{-2}}) plateaus; slope {}",
            est.trend_slope()
        );

        let f = make_series(TestFunctionKind::PowerKernel { c: 2.0 }, 4096).unwrap();
        let est = lambda11_statistic(&f).unwrap();
        assert!(
            est.growth_verdict().is_growing(),
            "slope {}",
            est.trend_slope()
        );
    }

    #[test]
    fn growth_envelope_examples() {
        let c = make_series(TestFunctionKind::Constant { value: 1.0 }, 4).unwrap();
        let rep = growth_envelope_check(&c, SpaceSpec::BlochType { alpha: 0.5 }).unwrap();
        assert!(!rep.trend.verdict.is_growing());
        assert_relative_eq!(rep.max_ratio, 1.0, epsilon = 1e-12);

        let log = make_series(TestFunctionKind::LogKernel, 4096).unwrap();
        let rep = growth_envelope_check(&log, SpaceSpec::BlochType { alpha: 1.0 }).unwrap();
        let last = rep.ratios.last().unwrap().1;
        assert!(last > 0.8 && last <= 1.0 + 1e-9, "sharp log growth: {last}");

        let f = make_series(TestFunctionKind::PowerKernel { c: 0.25 }, 4096).unwrap();
        let rep = growth_envelope_check(&f, SpaceSpec::Morrey { lambda: 0.5 }).unwrap();
        assert!(!rep.trend.verdict.is_growing());

        assert!(growth_envelope_check(&f, SpaceSpec::Hardy { p: 2.0 }).is_err());
    }

    #[test]
    fn estimators_are_absolutely_homogeneous() {
        let f = make_series(TestFunctionKind::LogKernel, 512).unwrap();
        let fc = f.scaled(Complex64::new(-3.0, 0.0));
        let h = hardy_norm(&f, 2.0).unwrap().value;
        let hc = hardy_norm(&fc, 2.0).unwrap().value;
        assert_relative_eq!(hc, 3.0 * h, max_relative = 1e-12);
        let b = bloch_norm(&f, 1.0).unwrap().value;
        let bc = bloch_norm(&fc, 1.0).unwrap().value;
        assert_relative_eq!(bc, 3.0 * b, max_relative = 1e-12);
        let m = morrey_norm(&f, 0.5).unwrap().value;
        let mc = morrey_norm(&fc, 0.5).unwrap().value;
        assert_relative_eq!(mc, 3.0 * m, max_relative = 1e-10);
        let l = mean_lipschitz_norm(&f, 2.0, 0.5).unwrap().value;
        let lc = mean_lipschitz_norm(&fc, 2.0, 0.5).unwrap().value;
        assert_relative_eq!(lc, 3.0 * l, max_relative = 1e-12);
    }

    #[test]
    fn parameter_domains_are_enforced() {
        let f = make_series(TestFunctionKind::LogKernel, 16).unwrap();
        assert!(hardy_norm(&f, 0.0).is_err());
        assert!(bloch_norm(&f, -1.0).is_err());
        assert!(morrey_norm(&f, 0.0).is_err());
        assert!(morrey_norm(&f, 1.5).is_err());
        assert!(mean_lipschitz_norm(&f, 0.5, 0.5).is_err());
        assert!(mean_lipschitz_norm(&f, 2.0, 1.5).is_err());
    }

    #[test]
    fn coefficient_statistic_and_bloch_norm_verdicts_agree() {
        // Lemma-2.2 agreement on the nonnegative corpus: the coefficient
        // statistic stabilizes under N-refinement iff the norm does.
        let corpus = [
            TestFunctionKind::Lacunary,
            TestFunctionKind::LogKernel,
            TestFunctionKind::Monomial { n: 3 },
            TestFunctionKind::PowerKernel { c: 1.5 },
            TestFunctionKind::GeometricOnes,
            TestFunctionKind::ConformalKernel { a: 0.9, p: 2.0 },
        ];
        for alpha in [0.5, 1.0, 1.5] {
            for kind in corpus {
                let f = make_series(kind, 2048).unwrap();
                let s_full = bloch_coefficient_statistic(&f, alpha).unwrap();
                let s_half = bloch_coefficient_statistic(&f.truncated(1024), alpha).unwrap();
                let stat_stable = s_half == 0.0 || s_full / s_half < 1.25;
                let norm_stable = bloch_norm(&f, alpha).unwrap().converged;
                assert_eq!(
                    stat_stable, norm_stable,
                    "{kind:?} α={alpha}: statistic ratio {} vs norm convergence",
                    if s_half > 0.0 { s_full / s_half } else { 0.0 }
                );
            }
        }
    }
}
