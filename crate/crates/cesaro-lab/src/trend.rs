//! Finite-grid surrogates for boundedness claims: least-squares slopes in
//! log-log coordinates and the three-way verdict used across the crate.

use serde::{Deserialize, Serialize};

/// A statistic whose log-log slope on the tail of the grid exceeds this is
/// classified as growing.
pub const SLOPE_THRESHOLD: f64 = 0.05;

/// A statistic whose tail stays below this fraction of its grid supremum is
/// classified as vanishing.
pub const VANISH_FRACTION: f64 = 0.2;

/// Two-sided flatness threshold for asymptotic-ratio checks, where a
/// decaying ratio is as suspicious as a growing one.
pub const FLAT_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ConsistentBounded,
    ConsistentVanishing,
    Growing,
}

impl Verdict {
    pub fn is_growing(self) -> bool {
        self == Verdict::Growing
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::ConsistentBounded => write!(f, "consistent_bounded"),
            Verdict::ConsistentVanishing => write!(f, "consistent_vanishing"),
            Verdict::Growing => write!(f, "growing"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub rms_residual: f64,
}

/// Ordinary least squares y = slope·x + intercept.  None with fewer than two
/// points or a degenerate abscissa.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<LineFit> {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let mx = xs[..n].iter().sum::<f64>() / nf;
    let my = ys[..n].iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for i in 0..n {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if sxx <= 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss = 0.0;
    for i in 0..n {
        let r = ys[i] - slope * xs[i] - intercept;
        ss += r * r;
    }
    Some(LineFit {
        slope,
        intercept,
        rms_residual: (ss / nf).sqrt(),
    })
}

/// Least-squares fit of ln y against ln x, skipping nonpositive entries.
pub fn loglog_fit(xs: &[f64], ys: &[f64]) -> Option<LineFit> {
    let mut lx = Vec::with_capacity(xs.len());
    let mut ly = Vec::with_capacity(ys.len());
    for (&x, &y) in xs.iter().zip(ys.iter()) {
        if x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite() {
            lx.push(x.ln());
            ly.push(y.ln());
        }
    }
    linear_fit(&lx, &ly)
}

/// A statistic over an ordered grid together with its tail-trend assessment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendReport {
    /// Grid parameter in its natural units (a-value, radius, index, ...).
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub sup: f64,
    /// Slope of ln(value) against the supplied log-scale on the last half.
    pub slope: f64,
    pub verdict: Verdict,
}

impl TrendReport {
    pub fn is_flat(&self, threshold: f64) -> bool {
        self.slope.abs() <= threshold
    }
}

/// Assess a statistic sampled on an ordered grid.  `log_scale[i]` is the
/// abscissa used for the regression (e.g. ln 1/(1-a) or ln n); the verdict
/// uses `SLOPE_THRESHOLD` for growth and `VANISH_FRACTION` for decay on the
/// last half of the grid.
pub fn assess(grid: Vec<f64>, log_scale: &[f64], values: Vec<f64>) -> TrendReport {
    assess_with(grid, log_scale, values, SLOPE_THRESHOLD, VANISH_FRACTION)
}

pub fn assess_with(
    grid: Vec<f64>,
    log_scale: &[f64],
    values: Vec<f64>,
    slope_threshold: f64,
    vanish_fraction: f64,
) -> TrendReport {
    assert_eq!(grid.len(), values.len());
    assert_eq!(log_scale.len(), values.len());
    let sup = values.iter().copied().fold(0.0f64, f64::max);
    let start = values.len() / 2;
    let tail_x = &log_scale[start..];
    let tail_y = &values[start..];
    let slope = {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (&x, &y) in tail_x.iter().zip(tail_y.iter()) {
            if y > 0.0 && y.is_finite() {
                xs.push(x);
                ys.push(y.ln());
            }
        }
        linear_fit(&xs, &ys).map(|f| f.slope).unwrap_or(0.0)
    };
    let tail_max = tail_y.iter().copied().fold(0.0f64, f64::max);
    let verdict = if slope > slope_threshold {
        Verdict::Growing
    } else if sup == 0.0 || tail_max < vanish_fraction * sup {
        Verdict::ConsistentVanishing
    } else {
        Verdict::ConsistentBounded
    };
    TrendReport {
        grid,
        values,
        sup,
        slope,
        verdict,
    }
}

/// The grid a_j = 1 - 2^{-j/2}, j = 1..=depth, together with the exact
/// log-scale ln 1/(1-a_j) = j·(ln 2)/2.
pub fn half_power_grid(depth: usize) -> (Vec<f64>, Vec<f64>) {
    let mut grid = Vec::with_capacity(depth);
    let mut scale = Vec::with_capacity(depth);
    for j in 1..=depth {
        let one_minus = (-(j as f64) / 2.0).exp2();
        grid.push(1.0 - one_minus);
        scale.push(j as f64 * std::f64::consts::LN_2 / 2.0);
    }
    (grid, scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn linear_fit_recovers_exact_line() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [1.0, 3.0, 5.0, 7.0];
        let fit = linear_fit(&xs, &ys).unwrap();
        assert_relative_eq!(fit.slope, 2.0, epsilon = 1e-12);
        assert_relative_eq!(fit.intercept, 1.0, epsilon = 1e-12);
        assert!(fit.rms_residual < 1e-12);
    }

    #[test]
    fn power_law_trend_is_classified_growing() {
        let (grid, scale) = half_power_grid(20);
        let values: Vec<f64> = grid.iter().map(|a| (1.0 - a).powf(-0.4)).collect();
        let report = assess(grid, &scale, values);
        assert_eq!(report.verdict, Verdict::Growing);
        assert_relative_eq!(report.slope, 0.4, epsilon = 1e-9);
    }

    #[test]
    fn constant_trend_is_bounded_and_decay_is_vanishing() {
        let (grid, scale) = half_power_grid(40);
        let flat = vec![3.0; grid.len()];
        let r = assess(grid.clone(), &scale, flat);
        assert_eq!(r.verdict, Verdict::ConsistentBounded);
        let decay: Vec<f64> = grid.iter().map(|a| (1.0 - a).powf(0.5)).collect();
        let r = assess(grid, &scale, decay);
        assert_eq!(r.verdict, Verdict::ConsistentVanishing);
    }

    #[test]
    fn all_zero_statistic_is_vanishing() {
        let (grid, scale) = half_power_grid(10);
        let r = assess(grid, &scale, vec![0.0; 10]);
        assert_eq!(r.verdict, Verdict::ConsistentVanishing);
    }
}
