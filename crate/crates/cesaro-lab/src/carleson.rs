//! Carleson-measure classifiers for radial measures: tail statistics over a
//! geometric grid, moment-decay exponent fits, the logarithmic correction
//! fit, and the cubic tail-sum statistic.

use crate::measure::{MeasureError, MomentSequence, RadialMeasure};
use crate::trend::{self, TrendReport, Verdict};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CarlesonError {
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("moment window [{lo}, {hi}] contains zero or nonfinite moments; decay is super-polynomial")]
    DegenerateMomentFit { lo: usize, hi: usize },
    #[error("moment sequence too short: need max order ≥ {need}, have {have}")]
    TooShort { need: usize, have: usize },
    #[error("moment tail extrapolation unreliable: fit residual {residual:.3} exceeds 0.1")]
    UnreliableTail { residual: f64 },
    #[error("tail sum does not converge: fitted decay exponent {s_hat:.3} is too small")]
    TailSumDivergent { s_hat: f64 },
}

/// Fitted power-law decay of a moment sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentFit {
    pub s_hat: f64,
    pub residual: f64,
}

/// Tail statistics for the (β-logarithmic) t-Carleson condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarlesonReport {
    pub target_exponent: f64,
    pub log_exponent: f64,
    /// Grid a_j = 1 - 2^{-j/2}.
    pub grid: Vec<f64>,
    /// μ([a,1))·log^β(e/(1-a))/(1-a)^t at each grid point.
    pub statistic: Vec<f64>,
    pub sup_statistic: f64,
    /// Regression slope of ln(statistic) against ln 1/(1-a) on the last
    /// half of the grid.
    pub trend_slope: f64,
    pub verdict: Verdict,
    pub fitted_moment_exponent: Option<MomentFit>,
}

/// Tail statistic of `m` at exponent `t` with logarithmic weight `beta`
/// over the grid a_j = 1 - 2^{-j/2}, j = 1..=depth.  The grid is cut short
/// if tail-quadrature error exceeds 1% of the statistic.
pub fn tail_statistic(
    m: &RadialMeasure,
    t: f64,
    beta: f64,
    depth: usize,
) -> Result<CarlesonReport, CarlesonError> {
    if !(t > 0.0) {
        return Err(MeasureError::InvalidParameter(format!("target exponent t = {t} must be > 0")).into());
    }
    if !(beta >= 0.0) {
        return Err(MeasureError::InvalidParameter(format!("log exponent β = {beta} must be ≥ 0")).into());
    }
    if depth < 8 {
        return Err(MeasureError::InvalidParameter(format!("grid depth {depth} below minimum 8")).into());
    }
    let mut grid = Vec::with_capacity(depth);
    let mut scale = Vec::with_capacity(depth);
    let mut statistic = Vec::with_capacity(depth);
    for j in 1..=depth {
        let one_minus = (-(j as f64) / 2.0).exp2();
        let a = 1.0 - one_minus;
        let (tail, err) = m.tail_mass(a)?;
        if err > 0.01 * tail && tail > 0.0 {
            break;
        }
        let log_term = (1.0 - one_minus.ln()).powf(beta);
        grid.push(a);
        scale.push(j as f64 * std::f64::consts::LN_2 / 2.0);
        statistic.push(tail * log_term / one_minus.powf(t));
    }
    if grid.len() < 4 {
        return Err(MeasureError::InvalidParameter(
            "tail grid collapsed under the quadrature-error cap".into(),
        )
        .into());
    }
    let report = trend::assess(grid, &scale, statistic);
    Ok(CarlesonReport {
        target_exponent: t,
        log_exponent: beta,
        grid: report.grid,
        statistic: report.values,
        sup_statistic: report.sup,
        trend_slope: report.slope,
        verdict: report.verdict,
        fitted_moment_exponent: None,
    })
}

/// Fit window n ∈ [M/4, M].
fn window(moms: &MomentSequence) -> (usize, usize) {
    let m = moms.max_order();
    (m / 4, m)
}

/// Least-squares decay exponent: slope of ln μ_n against ln n over the
/// window; ŝ = -slope.  Zero moments in the window mean the decay is
/// super-polynomial (a finite atom set at 0) and yield a degenerate-fit
/// error.
pub fn moment_decay_fit(moms: &MomentSequence) -> Result<MomentFit, CarlesonError> {
    if moms.max_order() < 256 {
        return Err(CarlesonError::TooShort {
            need: 256,
            have: moms.max_order(),
        });
    }
    let (lo, hi) = window(moms);
    let mut xs = Vec::with_capacity(hi - lo + 1);
    let mut ys = Vec::with_capacity(hi - lo + 1);
    for n in lo..=hi {
        let v = moms.values[n];
        if !(v > 0.0 && v.is_finite()) {
            return Err(CarlesonError::DegenerateMomentFit { lo, hi });
        }
        xs.push((n as f64).ln());
        ys.push(v.ln());
    }
    let fit = trend::linear_fit(&xs, &ys).ok_or(CarlesonError::DegenerateMomentFit { lo, hi })?;
    Ok(MomentFit {
        s_hat: -fit.slope,
        residual: fit.rms_residual,
    })
}

/// Logarithmic-correction statistic μ_n·n^s·log(n+1) over the window:
/// its supremum and the slope of its log against log n (≈ 0 is consistent
/// with a 1-logarithmic s-Carleson measure).
pub fn log_moment_decay_fit(
    moms: &MomentSequence,
    s: f64,
) -> Result<(f64, f64), CarlesonError> {
    if !(s > 0.0) {
        return Err(
            MeasureError::InvalidParameter(format!("exponent s = {s} must be > 0")).into(),
        );
    }
    if moms.max_order() < 256 {
        return Err(CarlesonError::TooShort {
            need: 256,
            have: moms.max_order(),
        });
    }
    let (lo, hi) = window(moms);
    let mut c_hat = 0.0f64;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for n in lo.max(1)..=hi {
        let v = moms.values[n] * (n as f64).powf(s) * ((n + 1) as f64).ln();
        c_hat = c_hat.max(v);
        if v > 0.0 && v.is_finite() {
            xs.push((n as f64).ln());
            ys.push(v.ln());
        }
    }
    if xs.len() < 2 {
        // All window statistics vanish: trivially consistent.
        return Ok((0.0, 0.0));
    }
    let fit = trend::linear_fit(&xs, &ys).ok_or(CarlesonError::DegenerateMomentFit { lo, hi })?;
    Ok((c_hat, fit.slope))
}

/// The cubic tail-sum statistic b_n = (n+1)^3·Σ_{k≥n} μ_k^2 with the sum
/// beyond the cached order extrapolated by the fitted power law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlascoReport {
    pub sup_value: f64,
    pub argmax_n: usize,
    /// Statistic on the dyadic subgrid used for the trend.
    pub profile: TrendReport,
}

pub fn blasco_statistic(moms: &MomentSequence) -> Result<BlascoReport, CarlesonError> {
    if moms.max_order() < 512 {
        return Err(CarlesonError::TooShort {
            need: 512,
            have: moms.max_order(),
        });
    }
    let m = moms.max_order();
    let (lo, hi) = window(moms);
    let all_zero = moms.values[lo..=hi].iter().all(|&v| v == 0.0);
    let tail_beyond = if all_zero {
        0.0
    } else {
        let fit = moment_decay_fit(moms)?;
        if fit.residual > 0.1 {
            return Err(CarlesonError::UnreliableTail {
                residual: fit.residual,
            });
        }
        if 2.0 * fit.s_hat - 1.0 <= 0.05 {
            return Err(CarlesonError::TailSumDivergent { s_hat: fit.s_hat });
        }
        // μ_k ≈ A·k^{-ŝ} for k > M ⇒ Σ_{k>M} μ_k² ≈ A²·M^{1-2ŝ}/(2ŝ-1).
        let amp = {
            let (lo, hi) = window(moms);
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            for n in lo..=hi {
                xs.push((n as f64).ln());
                ys.push(moms.values[n].ln());
            }
            trend::linear_fit(&xs, &ys)
                .map(|f| f.intercept.exp())
                .unwrap_or(0.0)
        };
        amp * amp * (m as f64 + 0.5).powf(1.0 - 2.0 * fit.s_hat) / (2.0 * fit.s_hat - 1.0)
    };

    // Suffix sums of μ_k² from the top.
    let mut suffix = vec![0.0f64; m + 2];
    suffix[m + 1] = tail_beyond;
    for k in (0..=m).rev() {
        suffix[k] = suffix[k + 1] + moms.values[k] * moms.values[k];
    }
    let mut sup_value = 0.0f64;
    let mut argmax_n = 0usize;
    for n in 0..=m / 2 {
        let b = ((n + 1) as f64).powi(3) * suffix[n];
        if b > sup_value {
            sup_value = b;
            argmax_n = n;
        }
    }
    // Dyadic subgrid for the trend.
    let mut grid = Vec::new();
    let mut scale = Vec::new();
    let mut values = Vec::new();
    let mut n = 1usize;
    while n <= m / 2 {
        grid.push(n as f64);
        scale.push((n as f64).ln());
        values.push(((n + 1) as f64).powi(3) * suffix[n]);
        n *= 2;
    }
    let profile = trend::assess(grid, &scale, values);
    Ok(BlascoReport {
        sup_value,
        argmax_n,
        profile,
    })
}

/// Combined classification used by the CLI: tail verdict at a target
/// exponent plus the coefficient-side fits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureClassification {
    pub tail: CarlesonReport,
    pub moment_fit: Option<MomentFit>,
    pub super_polynomial_decay: bool,
    pub log_correction: Option<(f64, f64)>,
    pub blasco: Option<BlascoReport>,
    pub blasco_error: Option<String>,
}

pub fn classify(
    m: &RadialMeasure,
    t: f64,
    beta: f64,
    depth: usize,
    moment_order: usize,
) -> Result<MeasureClassification, CarlesonError> {
    let moms = m.moments(moment_order)?;
    let mut tail = tail_statistic(m, t, beta, depth)?;
    let (moment_fit, super_poly) = match moment_decay_fit(&moms) {
        Ok(fit) => (Some(fit), false),
        Err(CarlesonError::DegenerateMomentFit { .. }) => (None, true),
        Err(e) => return Err(e),
    };
    tail.fitted_moment_exponent = moment_fit;
    let log_correction = log_moment_decay_fit(&moms, t).ok();
    let (blasco, blasco_error) = match blasco_statistic(&moms) {
        Ok(b) => (Some(b), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(MeasureClassification {
        tail,
        moment_fit,
        super_polynomial_decay: super_poly,
        log_correction,
        blasco,
        blasco_error,
    })
}
