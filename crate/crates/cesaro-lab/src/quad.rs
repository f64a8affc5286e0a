//! Quadrature kernels shared by the measure, operator and estimate modules:
//! Gauss–Legendre panels, dyadic refinement toward an endpoint singularity,
//! and spectrally accurate averages over circles.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::cell::RefCell;
use std::sync::OnceLock;

/// A panel contribution below this fraction of the accumulated integral
/// (after the contributions have started decaying) terminates refinement.
pub const PANEL_REL_FLOOR: f64 = 1e-15;

/// Hard cap on dyadic refinement levels. At level J the innermost panel sits
/// at distance 2^-J from the endpoint; 200 levels resolve densities
/// (1-t)^(s-1) down to s ≈ 0.25 at 1e-13 relative accuracy.
pub const MAX_DYADIC_PANELS: usize = 200;

/// Values a panel rule can accumulate.
pub trait QuadValue: Copy {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn scale(self, s: f64) -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence.
fn legendre_rule(n: usize) -> Vec<(f64, f64)> {
    let mut rule = vec![(0.0, 0.0); n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess for the i-th positive-side root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n and P_n' via the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule[i] = (-x, w);
        rule[n - 1 - i] = (x, w);
    }
    if n % 2 == 1 {
        // The middle node is exactly zero; recompute its weight cleanly.
        let mut p0 = 1.0;
        let mut p1 = 0.0;
        for k in 2..=n {
            let kf = k as f64;
            let p2 = (-(kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = nf * (0.0 - p0) / (0.0 - 1.0);
        rule[n / 2] = (0.0, 2.0 / (dp * dp));
    }
    rule
}

/// 32-node rule used for measure-side panels.
pub fn gauss_legendre_32() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(32))
}

/// 16-node rule used for radial panels of area integrals.
pub fn gauss_legendre_16() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(16))
}

/// Integrate `g` over the panel [a, b] with the given rule.
pub fn panel<T: QuadValue>(g: &mut impl FnMut(f64) -> T, a: f64, b: f64, rule: &[(f64, f64)]) -> T {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = T::zero();
    for &(x, w) in rule {
        acc = acc.add(g(mid + half * x).scale(w));
    }
    acc.scale(half)
}

/// Outcome of a dyadically refined integral.
#[derive(Debug, Clone, Copy)]
pub struct DyadicOutcome<T> {
    pub value: T,
    /// Estimated absolute error (unresolved tail beyond the last panel).
    pub err: f64,
    /// False when the panel budget ran out before contributions decayed.
    pub converged: bool,
    pub panels: usize,
}

/// ∫_0^hi g(u) du with panels halving toward u = 0, where the integrand may
/// carry an integrable singularity.  Contributions are allowed to rise first
/// (weights like (1-u)^n concentrate away from the outer panels) and the
/// rule terminates only once they decay below `PANEL_REL_FLOOR` relative to
/// the accumulated value.
pub fn integrate_to_zero<T: QuadValue>(
    g: &mut impl FnMut(f64) -> T,
    hi: f64,
) -> DyadicOutcome<T> {
    let rule = gauss_legendre_32();
    let mut acc = T::zero();
    let mut upper = hi;
    let mut prev_mag = f64::INFINITY;
    let mut last_mag = 0.0;
    for j in 0..MAX_DYADIC_PANELS {
        let lower = 0.5 * upper;
        let p = panel(g, lower, upper, rule);
        acc = acc.add(p);
        last_mag = p.magnitude();
        // Weights like (1-u)^n vanish on the outer panels, so termination
        // is only allowed once a normal-range value has accumulated;
        // subnormal leading panels would otherwise underflow the tail test.
        if last_mag <= prev_mag && acc.magnitude() >= f64::MIN_POSITIVE {
            let ratio = if prev_mag > 0.0 && prev_mag.is_finite() {
                (last_mag / prev_mag).min(0.99)
            } else {
                0.5
            };
            let tail = last_mag * ratio / (1.0 - ratio);
            if tail <= PANEL_REL_FLOOR * acc.magnitude() {
                return DyadicOutcome {
                    value: acc,
                    err: tail + f64::EPSILON * acc.magnitude(),
                    converged: true,
                    panels: j + 1,
                };
            }
        }
        prev_mag = last_mag;
        upper = lower;
    }
    // Budget exhausted.  A zero accumulation with zero trailing panels is a
    // genuinely zero integral; otherwise estimate the remainder from the
    // last panel and flag slow decay.
    if acc.magnitude() == 0.0 && last_mag == 0.0 {
        return DyadicOutcome {
            value: acc,
            err: 0.0,
            converged: true,
            panels: MAX_DYADIC_PANELS,
        };
    }
    let decaying = last_mag < prev_mag;
    let tail = if decaying && prev_mag > 0.0 {
        let ratio = (last_mag / prev_mag).min(0.99);
        last_mag * ratio / (1.0 - ratio)
    } else {
        last_mag.max(prev_mag)
    };
    DyadicOutcome {
        value: acc,
        err: tail + f64::EPSILON * acc.magnitude(),
        converged: decaying && tail <= 1e-9 * acc.magnitude(),
        panels: MAX_DYADIC_PANELS,
    }
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Samples of Σ_k coeffs[k]·r^k·e^{ikθ_j} at the m equispaced angles
/// θ_j = 2πj/m, via one inverse FFT.  Requires m ≥ coeffs.len().
pub fn circle_samples(coeffs: &[Complex64], r: f64, m: usize) -> Vec<Complex64> {
    assert!(m >= coeffs.len(), "circle grid must resolve the spectrum");
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    let mut rk = 1.0;
    for (k, c) in coeffs.iter().enumerate() {
        buf[k] = c * rk;
        rk *= r;
    }
    PLANNER.with(|p| {
        let fft = p.borrow_mut().plan_fft_inverse(m);
        fft.process(&mut buf);
    });
    buf
}

/// Angular node count for a spectrum of length `len`: a power of two at
/// least four times the truncation order, so trapezoid sums of |f|^2 are
/// exact for the truncated spectrum.
pub fn circle_nodes_for(len: usize) -> usize {
    (4 * len.max(1)).next_power_of_two().max(256)
}

/// Mean of a smooth 2π-periodic function over one period by the trapezoid
/// rule with doubling, reusing previous nodes.  Returns (mean, converged,
/// nodes used).
pub fn periodic_mean(
    g: &mut impl FnMut(f64) -> f64,
    rel_tol: f64,
    m_start: usize,
    m_cap: usize,
) -> (f64, bool, usize) {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut m = m_start.max(8);
    let mut sum = 0.0;
    for j in 0..m {
        sum += g(two_pi * j as f64 / m as f64);
    }
    let mut mean = sum / m as f64;
    while m < m_cap {
        // New nodes sit halfway between the old ones.
        let m2 = 2 * m;
        let mut odd = 0.0;
        for j in 0..m {
            odd += g(two_pi * (2 * j + 1) as f64 / m2 as f64);
        }
        let mean2 = 0.5 * (mean + odd / m as f64);
        let delta = (mean2 - mean).abs();
        mean = mean2;
        m = m2;
        if delta <= rel_tol * mean.abs().max(f64::MIN_POSITIVE) {
            return (mean, true, m);
        }
    }
    (mean, false, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_rule_matches_known_five_point_nodes() {
        let rule = legendre_rule(5);
        let known = [
            -0.906_179_845_938_664,
            -0.538_469_310_105_683,
            0.0,
            0.538_469_310_105_683,
            0.906_179_845_938_664,
        ];
        for (i, &(x, _)) in rule.iter().enumerate() {
            assert_relative_eq!(x, known[i], epsilon = 1e-14);
        }
        let wsum: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert_relative_eq!(wsum, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn gauss_legendre_32_is_exact_for_high_degree_polynomials() {
        // Exact for degree ≤ 63.
        for k in [0usize, 5, 20, 63] {
            let mut g = |x: f64| x.powi(k as i32);
            let v: f64 = panel(&mut g, -1.0, 1.0, gauss_legendre_32());
            let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert_relative_eq!(v, exact, epsilon = 1e-13, max_relative = 1e-13);
        }
    }

    #[test]
    fn dyadic_refinement_handles_endpoint_singularity() {
        // ∫_0^1 u^{-1/2} du = 2
        let mut g = |u: f64| u.powf(-0.5);
        let out = integrate_to_zero(&mut g, 1.0);
        assert!(out.converged);
        assert_relative_eq!(out.value, 2.0, max_relative = 1e-12);
        // ∫_0^1 u^{-3/4} du = 4 (needs deep refinement)
        let mut g = |u: f64| u.powf(-0.75);
        let out = integrate_to_zero(&mut g, 1.0);
        assert!(out.converged);
        assert_relative_eq!(out.value, 4.0, max_relative = 1e-11);
    }

    #[test]
    fn dyadic_refinement_flags_divergent_integrand() {
        let mut g = |u: f64| 1.0 / u;
        let out = integrate_to_zero(&mut g, 1.0);
        assert!(!out.converged);
    }

    #[test]
    fn circle_samples_match_direct_evaluation() {
        let coeffs: Vec<Complex64> = (0..17)
            .map(|k| Complex64::new(1.0 / (k as f64 + 1.0), 0.02 * k as f64))
            .collect();
        let r = 0.83;
        let m = 64;
        let samples = circle_samples(&coeffs, r, m);
        for j in [0usize, 1, 13, 40] {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
            let z = Complex64::from_polar(r, theta);
            let mut direct = Complex64::new(0.0, 0.0);
            let mut zp = Complex64::new(1.0, 0.0);
            for c in &coeffs {
                direct += c * zp;
                zp *= z;
            }
            assert!((samples[j] - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn periodic_mean_is_spectrally_accurate() {
        // mean of |1 - z e^{-iθ}|^{-2} over θ is 1/(1-|z|^2)
        let z = 0.5;
        let mut g = |theta: f64| {
            let w = Complex64::new(1.0, 0.0) - z * Complex64::from_polar(1.0, -theta);
            1.0 / w.norm_sqr()
        };
        let (mean, converged, _) = periodic_mean(&mut g, 1e-12, 16, 1 << 20);
        assert!(converged);
        assert_relative_eq!(mean, 1.0 / 0.75, max_relative = 1e-11);
    }
}
