//! Truncated power series on the unit disk: the test-function catalogue,
//! Horner evaluation with an explicit admissible radius, differentiation and
//! the prefix-sum transform.

use num_complex::Complex64;
use thiserror::Error;

/// Default truncation order for experiments.
pub const DEFAULT_TRUNCATION: usize = 4096;

/// Truncation-error budget defining the admissible evaluation radius.
pub const TRUNCATION_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(
        "|z| = {requested:.6e} exceeds the admissible radius {admissible:.6e} \
         at truncation order {order}"
    )]
    RadiusExceeded {
        requested: f64,
        admissible: f64,
        order: usize,
    },
    #[error("derivative order {order} exceeds truncation order {truncation}")]
    OrderExceedsTruncation { order: usize, truncation: usize },
}

/// A coefficient envelope |c_k| ≤ amplitude·(k+1)^power valid for every k,
/// not just the stored prefix.  It certifies the truncation error that
/// defines the admissible evaluation radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEnvelope {
    pub amplitude: f64,
    pub power: f64,
}

impl TailEnvelope {
    fn combine(a: Option<TailEnvelope>, b: Option<TailEnvelope>) -> Option<TailEnvelope> {
        match (a, b) {
            (Some(x), Some(y)) => Some(TailEnvelope {
                amplitude: x.amplitude + y.amplitude,
                power: x.power.max(y.power),
            }),
            (Some(x), None) => Some(x),
            (None, Some(y)) => Some(y),
            (None, None) => None,
        }
    }
}

/// Truncated Taylor coefficients of an analytic function on the disk.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
    envelope: Option<TailEnvelope>,
}

/// The closed family of test functions used by the experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunctionKind {
    /// f_a(z) = (1-a)/(1-az)^{1+1/p}; `p` may be infinite.
    ConformalKernel { a: f64, p: f64 },
    /// log 1/(1-z)
    LogKernel,
    /// (1-z)^{-c}, c > 0
    PowerKernel { c: f64 },
    /// Σ z^{2^k}
    Lacunary,
    /// z^n
    Monomial { n: usize },
    Constant { value: f64 },
    /// 1/(1-z)
    GeometricOnes,
}

/// First N+1 Taylor coefficients of the requested kind, exactly (closed
/// forms; Gamma ratios go through the multiplicative recurrence).
pub fn make_series(kind: TestFunctionKind, n: usize) -> Result<PowerSeries, SeriesError> {
    let len = n + 1;
    match kind {
        TestFunctionKind::ConformalKernel { a, p } => {
            if !(a > 0.0 && a < 1.0) {
                return Err(SeriesError::InvalidParameter(format!(
                    "conformal kernel requires 0 < a < 1, got a = {a}"
                )));
            }
            if !(p > 0.0) {
                return Err(SeriesError::InvalidParameter(format!(
                    "conformal kernel requires p > 0, got p = {p}"
                )));
            }
            let delta = if p.is_infinite() { 0.0 } else { 1.0 / p };
            let mut coeffs = Vec::with_capacity(len);
            // c_k = (1-a) · Γ(1+δ+k)/(Γ(1+δ)·k!) · a^k
            let mut g = 1.0f64;
            let mut ak = 1.0f64;
            for k in 0..len {
                coeffs.push(Complex64::new((1.0 - a) * g * ak, 0.0));
                g *= (1.0 + delta + k as f64) / (k as f64 + 1.0);
                ak *= a;
            }
            // Γ(1+δ+k)/(Γ(1+δ)k!) = Π_i (1+δ/i) ≤ e^δ (k+1)^δ, and a^k ≤ 1.
            Ok(PowerSeries {
                coeffs,
                envelope: Some(TailEnvelope {
                    amplitude: (1.0 - a) * delta.exp(),
                    power: delta,
                }),
            })
        }
        TestFunctionKind::LogKernel => {
            let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
            for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
                *c = Complex64::new(1.0 / k as f64, 0.0);
            }
            Ok(PowerSeries {
                coeffs,
                envelope: Some(TailEnvelope {
                    amplitude: 1.0,
                    power: 0.0,
                }),
            })
        }
        TestFunctionKind::PowerKernel { c } => {
            if !(c > 0.0 && c.is_finite()) {
                return Err(SeriesError::InvalidParameter(format!(
                    "power kernel requires finite c > 0, got c = {c}"
                )));
            }
            let mut coeffs = Vec::with_capacity(len);
            let mut g = 1.0f64;
            for k in 0..len {
                coeffs.push(Complex64::new(g, 0.0));
                g *= (c + k as f64) / (k as f64 + 1.0);
            }
            // Π_i (1+(c-1)/i) ≤ e^{c-1}(k+1)^{c-1} for c ≥ 1 and ≤ (k+1)^{c-1} for c ≤ 1.
            Ok(PowerSeries {
                coeffs,
                envelope: Some(TailEnvelope {
                    amplitude: (c - 1.0).max(0.0).exp(),
                    power: c - 1.0,
                }),
            })
        }
        TestFunctionKind::Lacunary => {
            let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
            let mut idx = 1usize;
            while idx <= n {
                coeffs[idx] = Complex64::new(1.0, 0.0);
                match idx.checked_mul(2) {
                    Some(next) => idx = next,
                    None => break,
                }
            }
            Ok(PowerSeries {
                coeffs,
                envelope: Some(TailEnvelope {
                    amplitude: 1.0,
                    power: 0.0,
                }),
            })
        }
        TestFunctionKind::Monomial { n: deg } => {
            let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
            if deg <= n {
                coeffs[deg] = Complex64::new(1.0, 0.0);
            }
            Ok(PowerSeries {
                coeffs,
                envelope: None,
            })
        }
        TestFunctionKind::Constant { value } => {
            let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
            coeffs[0] = Complex64::new(value, 0.0);
            Ok(PowerSeries {
                coeffs,
                envelope: None,
            })
        }
        TestFunctionKind::GeometricOnes => Ok(PowerSeries {
            coeffs: vec![Complex64::new(1.0, 0.0); len],
            envelope: Some(TailEnvelope {
                amplitude: 1.0,
                power: 0.0,
            }),
        }),
    }
}

impl PowerSeries {
    /// A series from raw coefficients with an explicit tail claim (or none,
    /// in which case the object is an exact polynomial).
    pub fn from_coeffs(coeffs: Vec<Complex64>, envelope: Option<TailEnvelope>) -> Self {
        assert!(!coeffs.is_empty(), "a power series stores at least c_0");
        PowerSeries { coeffs, envelope }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Truncation order N (the series stores N+1 coefficients).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn envelope(&self) -> Option<TailEnvelope> {
        self.envelope
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// True when every coefficient is real and nonnegative (up to roundoff).
    pub fn has_nonneg_real_coeffs(&self) -> bool {
        let scale = self
            .coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max)
            .max(1.0);
        self.coeffs
            .iter()
            .all(|c| c.im.abs() <= 1e-14 * scale && c.re >= -1e-14 * scale)
    }

    /// Geometric-majorant bound on Σ_{k>N} |c_k| r^k / amplitude.  The bound
    /// is taken relative to the envelope amplitude so that scaling a series
    /// leaves its admissible radius (and therefore every grid derived from
    /// it) unchanged; norm estimators stay exactly homogeneous.
    fn tail_bound(&self, r: f64) -> f64 {
        let Some(env) = self.envelope else {
            return 0.0;
        };
        if env.amplitude == 0.0 {
            return 0.0;
        }
        let n = self.order();
        let k1 = (n + 2) as f64;
        let first = k1.powf(env.power) * r.powi(n as i32 + 1);
        let q = r * ((k1 + 1.0) / k1).powf(env.power.max(0.0));
        if q >= 1.0 {
            return f64::INFINITY;
        }
        first / (1.0 - q)
    }

    /// Largest radius at which the envelope certifies truncation error below
    /// `tol` relative to the envelope amplitude.  Exact polynomials may be
    /// evaluated on the closed disk.
    pub fn admissible_radius(&self, tol: f64) -> f64 {
        if self.envelope.is_none() {
            return 1.0;
        }
        if self.tail_bound(1.0 - 1e-12) <= tol {
            return 1.0 - 1e-12;
        }
        let mut lo = 0.0f64;
        let mut hi = 1.0 - 1e-12;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if self.tail_bound(mid) <= tol {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    fn check_radius(&self, modulus: f64) -> Result<(), SeriesError> {
        let admissible = self.admissible_radius(TRUNCATION_TOL);
        if modulus <= admissible + 1e-15 {
            Ok(())
        } else {
            Err(SeriesError::RadiusExceeded {
                requested: modulus,
                admissible,
                order: self.order(),
            })
        }
    }

    /// Horner evaluation of the stored polynomial.  The radius must sit
    /// within the certified range; requests beyond it are errors, never a
    /// silent truncation.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64, SeriesError> {
        self.check_radius(z.norm())?;
        Ok(self.evaluate_unchecked(z))
    }

    pub(crate) fn evaluate_unchecked(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Termwise derivative of the given order (1 or 2); the truncation order
    /// drops accordingly.
    pub fn differentiate(&self, order: usize) -> Result<PowerSeries, SeriesError> {
        if !(order == 1 || order == 2) {
            return Err(SeriesError::InvalidParameter(format!(
                "derivative order must be 1 or 2, got {order}"
            )));
        }
        if order > self.order() {
            return Err(SeriesError::OrderExceedsTruncation {
                order,
                truncation: self.order(),
            });
        }
        let mut out = self.clone();
        for _ in 0..order {
            let mut coeffs = Vec::with_capacity(out.coeffs.len() - 1);
            for (k, c) in out.coeffs.iter().enumerate().skip(1) {
                coeffs.push(c * k as f64);
            }
            // |(k+1) c_{k+1}| ≤ A (k+2)^{m+1} ≤ A·2^{max(m+1,0)}·(k+1)^{m+1}
            let envelope = out.envelope.map(|e| TailEnvelope {
                amplitude: e.amplitude * (e.power + 1.0).max(0.0).exp2(),
                power: e.power + 1.0,
            });
            out = PowerSeries { coeffs, envelope };
        }
        Ok(out)
    }

    /// The inner transform of the operator: A_n = Σ_{k ≤ n} c_k, same
    /// truncation order.
    pub fn partial_sum_transform(&self) -> PowerSeries {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut acc = Complex64::new(0.0, 0.0);
        for c in &self.coeffs {
            acc += c;
            coeffs.push(acc);
        }
        // |A_n| ≤ A·(n+1)·(n+1)^{max(m,0)}
        let envelope = self.envelope.map(|e| TailEnvelope {
            amplitude: e.amplitude,
            power: e.power.max(0.0) + 1.0,
        });
        PowerSeries { coeffs, envelope }
    }

    /// The prefix of the series up to the new order, keeping the tail claim.
    pub fn truncated(&self, order: usize) -> PowerSeries {
        let len = (order + 1).min(self.coeffs.len());
        PowerSeries {
            coeffs: self.coeffs[..len].to_vec(),
            envelope: self.envelope,
        }
    }

    pub fn scaled(&self, factor: Complex64) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            envelope: self.envelope.map(|e| TailEnvelope {
                amplitude: e.amplitude * factor.norm(),
                power: e.power,
            }),
        }
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        PowerSeries {
            coeffs,
            envelope: TailEnvelope::combine(self.envelope, other.envelope),
        }
    }
}
