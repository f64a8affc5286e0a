//! The Cesàro-like operator in coefficient form (moments times prefix
//! sums) and integral form, its first and second derivatives at a point,
//! and the cross-representation residual.

use crate::measure::{MeasureError, MomentSequence, RadialMeasure};
use crate::series::{PowerSeries, SeriesError, TailEnvelope};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CesaroError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// A measure together with its cached moment sequence.  The cache is
/// append-only: extension recomputes deterministically, so extending twice
/// to the same order is idempotent.  Callers sharing an instance across
/// threads must either presize the cache or guard mutation themselves.
#[derive(Debug, Clone)]
pub struct OperatorInstance {
    measure: RadialMeasure,
    moments: MomentSequence,
}

impl OperatorInstance {
    pub fn new(measure: RadialMeasure, order: usize) -> Result<Self, CesaroError> {
        let moments = measure.moments(order)?;
        Ok(OperatorInstance { measure, moments })
    }

    pub fn measure(&self) -> &RadialMeasure {
        &self.measure
    }

    pub fn moments(&self) -> &MomentSequence {
        &self.moments
    }

    pub fn ensure_moments(&mut self, order: usize) -> Result<(), CesaroError> {
        if order > self.moments.max_order() {
            self.moments = self.measure.moments(order)?;
        }
        Ok(())
    }

    /// Coefficient form of the operator: output coefficient n is
    /// μ_n·Σ_{k≤n} c_k.  A cache shorter than the input is extended
    /// implicitly; the truncation order is preserved.
    pub fn apply(&mut self, f: &PowerSeries) -> Result<PowerSeries, CesaroError> {
        self.ensure_moments(f.order())?;
        let sums = f.partial_sum_transform();
        let coeffs: Vec<Complex64> = sums
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, a)| a * self.moments.values[n])
            .collect();
        // |μ_n·A_n| ≤ μ_0·A·(n+1)^{max(m,0)+1}; for exact polynomials the
        // image still has an infinite tail μ_n·A_N, bounded by μ_0·Σ|c_k|.
        let envelope = match f.envelope() {
            Some(e) => Some(TailEnvelope {
                amplitude: self.moments.values[0] * e.amplitude,
                power: e.power.max(0.0) + 1.0,
            }),
            None => {
                let l1: f64 = f.coeffs().iter().map(|c| c.norm()).sum();
                Some(TailEnvelope {
                    amplitude: self.moments.values[0] * l1,
                    power: 0.0,
                })
            }
        };
        Ok(PowerSeries::from_coeffs(coeffs, envelope))
    }
}

/// Integral form ∫ f(tz)/(1-tz) dμ(t), evaluated by the measure module's
/// panel scheme (exact finite sum for atomic measures).  This is the
/// validation route; the coefficient form is the computational one.
pub fn apply_integral(
    m: &RadialMeasure,
    f: &PowerSeries,
    z: Complex64,
) -> Result<Complex64, CesaroError> {
    // |tz| ≤ |z| for t ∈ [0,1), so one radius check covers every node.
    f.evaluate(z)?;
    let one = Complex64::new(1.0, 0.0);
    let (value, _err) = m.integrate(0.0, &mut |t: f64, _u: f64| {
        let tz = z * t;
        f.evaluate_unchecked(tz) / (one - tz)
    })?;
    Ok(value)
}

/// Derivatives of the integral representation at a point.
///
/// Order 1: ∫ t·f'(tz)/(1-tz) dμ + ∫ t·f(tz)/(1-tz)² dμ.
/// Order 2: ∫ t²·f''(tz)/(1-tz) dμ + 2∫ t²·f'(tz)/(1-tz)² dμ
///          + 2∫ t²·f(tz)/(1-tz)³ dμ.
pub fn derivative_at(
    m: &RadialMeasure,
    f: &PowerSeries,
    z: Complex64,
    order: usize,
) -> Result<Complex64, CesaroError> {
    f.evaluate(z)?;
    let one = Complex64::new(1.0, 0.0);
    match order {
        1 => {
            let df = f.differentiate(1)?;
            let (value, _err) = m.integrate(0.0, &mut |t: f64, _u: f64| {
                let tz = z * t;
                let denom = one - tz;
                let fv = f.evaluate_unchecked(tz);
                let dv = df.evaluate_unchecked(tz);
                (dv / denom + fv / (denom * denom)) * t
            })?;
            Ok(value)
        }
        2 => {
            let df = f.differentiate(1)?;
            let ddf = f.differentiate(2)?;
            let (value, _err) = m.integrate(0.0, &mut |t: f64, _u: f64| {
                let tz = z * t;
                let denom = one - tz;
                let d2 = denom * denom;
                let fv = f.evaluate_unchecked(tz);
                let dv = df.evaluate_unchecked(tz);
                let d2v = ddf.evaluate_unchecked(tz);
                (d2v / denom + (dv * 2.0) / d2 + (fv * 2.0) / (d2 * denom)) * (t * t)
            })?;
            Ok(value)
        }
        other => Err(SeriesError::InvalidParameter(format!(
            "derivative order must be 1 or 2, got {other}"
        ))
        .into()),
    }
}

/// Max over the grid of the normalized gap between the two representations:
/// |evaluate(apply(f), z) - apply_integral(f, z)| / (1 + |value|).
pub fn representation_residual(
    m: &RadialMeasure,
    f: &PowerSeries,
    z_grid: &[Complex64],
) -> Result<f64, CesaroError> {
    let mut op = OperatorInstance::new(m.clone(), f.order())?;
    let image = op.apply(f)?;
    let mut worst = 0.0f64;
    for &z in z_grid {
        let coeff_side = image.evaluate(z)?;
        let integral_side = apply_integral(m, f, z)?;
        let gap = (coeff_side - integral_side).norm() / (1.0 + coeff_side.norm());
        worst = worst.max(gap);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{make_series, TestFunctionKind};
    use approx::assert_relative_eq;

    fn real_coeffs(f: &PowerSeries) -> Vec<f64> {
        f.coeffs().iter().map(|c| c.re).collect()
    }

    #[test]
    fn classical_cesaro_fixes_the_szego_kernel() {
        // With Lebesgue measure, C(1/(1-z)) = 1/(1-z).
        let f = make_series(TestFunctionKind::GeometricOnes, 64).unwrap();
        let mut op = OperatorInstance::new(RadialMeasure::Lebesgue, 64).unwrap();
        let image = op.apply(&f).unwrap();
        for c in image.coeffs() {
            assert_relative_eq!(c.re, 1.0, epsilon = 1e-14);
            assert_eq!(c.im, 0.0);
        }
    }

    #[test]
    fn dirac_at_zero_collapses_to_the_constant_term() {
        let m = RadialMeasure::atoms(vec![(0.0, 1.0)]).unwrap();
        let f = make_series(TestFunctionKind::LogKernel, 16).unwrap();
        let mut op = OperatorInstance::new(m, 16).unwrap();
        let image = op.apply(&f).unwrap();
        assert_eq!(image.coeff(0), Complex64::new(0.0, 0.0));
        for k in 1..=16 {
            assert_eq!(image.coeff(k), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn lebesgue_log_kernel_coefficients() {
        let f = make_series(TestFunctionKind::LogKernel, 4).unwrap();
        let mut op = OperatorInstance::new(RadialMeasure::Lebesgue, 4).unwrap();
        let got = real_coeffs(&op.apply(&f).unwrap());
        let want = [0.0, 0.5, 0.5, 11.0 / 24.0, 5.0 / 12.0];
        for (g, w) in got.iter().zip(want.iter()) {
            assert_relative_eq!(g, w, epsilon = 1e-15);
        }
    }

    #[test]
    fn integral_form_examples() {
        let dirac = RadialMeasure::atoms(vec![(0.0, 1.0)]).unwrap();
        let f = make_series(TestFunctionKind::LogKernel, 128).unwrap();
        let v = apply_integral(&dirac, &f, Complex64::new(0.7, 0.0)).unwrap();
        assert!(v.norm() < 1e-15);

        // ∫_0^1 dt/(1 - z t) at z = 1/2 is 2 ln 2.
        let c = make_series(TestFunctionKind::Constant { value: 1.0 }, 8).unwrap();
        let v = apply_integral(&RadialMeasure::Lebesgue, &c, Complex64::new(0.5, 0.0)).unwrap();
        assert_relative_eq!(v.re, 1.3862943611198906, max_relative = 1e-12);

        let g = make_series(TestFunctionKind::GeometricOnes, 512).unwrap();
        let v = apply_integral(&RadialMeasure::Lebesgue, &g, Complex64::new(0.5, 0.0)).unwrap();
        assert_relative_eq!(v.re, 2.0, max_relative = 1e-8);
    }

    #[test]
    fn derivative_examples() {
        let dirac = RadialMeasure::atoms(vec![(0.0, 1.0)]).unwrap();
        let f = make_series(TestFunctionKind::LogKernel, 32).unwrap();
        let v = derivative_at(&dirac, &f, Complex64::new(0.4, 0.2), 1).unwrap();
        assert!(v.norm() < 1e-15);

        // ∫_0^1 t/(1 - t/2)² dt = 4(1 - ln 2).
        let c = make_series(TestFunctionKind::Constant { value: 1.0 }, 8).unwrap();
        let v = derivative_at(&RadialMeasure::Lebesgue, &c, Complex64::new(0.5, 0.0), 1).unwrap();
        assert_relative_eq!(v.re, 1.2274112777602188, max_relative = 1e-12);

        // Coefficient-side cross-check.
        let g = make_series(TestFunctionKind::GeometricOnes, 512).unwrap();
        let z = Complex64::new(0.3, 0.0);
        let int_side = derivative_at(&RadialMeasure::Lebesgue, &g, z, 1).unwrap();
        let mut op = OperatorInstance::new(RadialMeasure::Lebesgue, 512).unwrap();
        let coeff_side = op
            .apply(&g)
            .unwrap()
            .differentiate(1)
            .unwrap()
            .evaluate(z)
            .unwrap();
        assert!((int_side - coeff_side).norm() < 1e-8 * (1.0 + coeff_side.norm()));
    }

    #[test]
    fn second_derivative_matches_coefficient_route() {
        let m = RadialMeasure::beta_log(1.5, 0.0, 1.0).unwrap();
        let f = make_series(TestFunctionKind::LogKernel, 512).unwrap();
        let z = Complex64::new(0.35, 0.15);
        let int_side = derivative_at(&m, &f, z, 2).unwrap();
        let mut op = OperatorInstance::new(m.clone(), 512).unwrap();
        let coeff_side = op
            .apply(&f)
            .unwrap()
            .differentiate(2)
            .unwrap()
            .evaluate(z)
            .unwrap();
        assert!(
            (int_side - coeff_side).norm() < 1e-7 * (1.0 + coeff_side.norm()),
            "gap {}",
            (int_side - coeff_side).norm()
        );
    }

    #[test]
    fn representation_residual_examples() {
        let f = make_series(TestFunctionKind::LogKernel, 1024).unwrap();
        let grid: Vec<Complex64> = (1..=9)
            .map(|i| Complex64::new(0.1 * i as f64, 0.0))
            .collect();
        let r = representation_residual(&RadialMeasure::Lebesgue, &f, &grid).unwrap();
        assert!(r < 1e-8, "residual {r}");

        // The image of a polynomial has an honest infinite tail (μ_n·A_N for
        // n > N), so the truncation must leave room for it at z = 0.5.
        let atom = RadialMeasure::atoms(vec![(0.5, 1.0)]).unwrap();
        let mono = make_series(TestFunctionKind::Monomial { n: 2 }, 64).unwrap();
        let r =
            representation_residual(&atom, &mono, &[Complex64::new(0.5, 0.0)]).unwrap();
        assert!(r < 1e-14);

        let b = RadialMeasure::beta_log(1.5, 0.0, 1.0).unwrap();
        let g = make_series(TestFunctionKind::GeometricOnes, 2048).unwrap();
        let grid: Vec<Complex64> = vec![
            Complex64::new(0.4, 0.0),
            Complex64::new(0.0, 0.8),
            Complex64::new(-0.5, 0.3),
            Complex64::new(0.8, 0.0),
        ];
        let r = representation_residual(&b, &g, &grid).unwrap();
        assert!(r < 1e-7, "residual {r}");
    }

    #[test]
    fn apply_is_positive_on_nonneg_coefficients() {
        let m = RadialMeasure::beta_log(0.75, 0.0, 2.0).unwrap();
        let f = make_series(TestFunctionKind::Lacunary, 128).unwrap();
        let mut op = OperatorInstance::new(m, 128).unwrap();
        let image = op.apply(&f).unwrap();
        for c in image.coeffs() {
            assert!(c.re >= 0.0 && c.im == 0.0);
        }
    }

    #[test]
    fn cache_extension_is_implicit_and_idempotent() {
        let mut op = OperatorInstance::new(RadialMeasure::Lebesgue, 4).unwrap();
        let f = make_series(TestFunctionKind::GeometricOnes, 32).unwrap();
        let a = op.apply(&f).unwrap();
        assert_eq!(op.moments().max_order(), 32);
        let b = op.apply(&f).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn derivative_agrees_with_finite_differences() {
        let m = RadialMeasure::beta_log(1.0, 1.0, 1.0).unwrap();
        let f = make_series(TestFunctionKind::ConformalKernel { a: 0.6, p: 2.0 }, 256).unwrap();
        for z in [Complex64::new(0.5, 0.0), Complex64::new(0.2, 0.55)] {
            let h = 1e-5 * (1.0 - z.norm());
            let dz = Complex64::new(h, 0.0);
            let plus = apply_integral(&m, &f, z + dz).unwrap();
            let minus = apply_integral(&m, &f, z - dz).unwrap();
            let fd = (plus - minus) / (2.0 * h);
            let an = derivative_at(&m, &f, z, 1).unwrap();
            assert!(
                (fd - an).norm() <= 1e-5 * (1.0 + an.norm()),
                "z = {z}: fd {fd} vs {an}"
            );
        }
    }
}
