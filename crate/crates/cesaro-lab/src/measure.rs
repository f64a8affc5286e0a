//! Finite positive Borel measures on [0, 1): a closed parametric family,
//! tail masses, and power-moment sequences μ_n = ∫ t^n dμ(t).

use crate::quad::{self, QuadValue};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(
        "quadrature did not converge within the panel budget ({context}); \
         partial value {partial:.6e}, error estimate {err:.3e}"
    )]
    QuadratureNonConvergence {
        partial: f64,
        err: f64,
        context: String,
    },
    #[error("moment sequence violates monotonicity at n = {n} beyond error bars")]
    MonotonicityViolated { n: usize },
}

/// A measure from the closed parametric family on [0, 1).
///
/// Deserialization goes through a validating mirror so the invariants
/// (atoms strictly inside [0, 1), positive weights, s > 0) hold for every
/// constructed value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasureSpec", into = "MeasureSpec")]
pub enum RadialMeasure {
    /// Point masses Σ m_j δ_{t_j}, t_j ∈ [0, 1), m_j > 0.
    Atoms(Vec<(f64, f64)>),
    /// Density normalizer·(1-t)^{s-1}·log^{-γ}(e/(1-t)) dt.
    BetaLog {
        s: f64,
        gamma: f64,
        normalizer: f64,
    },
    /// dt on [0, 1).
    Lebesgue,
    Sum(Vec<RadialMeasure>),
}

/// Wire format: `{"family": "...", ...}`.  Each variant wraps a struct with
/// `deny_unknown_fields` so stray keys in a measure document are rejected.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum MeasureSpec {
    Atoms(AtomsSpec),
    BetaLog(BetaLogSpec),
    Lebesgue(LebesgueSpec),
    Sum(SumSpec),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomsSpec {
    pub atoms: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BetaLogSpec {
    pub s: f64,
    pub gamma: f64,
    #[serde(default = "one")]
    pub normalizer: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LebesgueSpec {}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumSpec {
    pub parts: Vec<MeasureSpec>,
}

fn one() -> f64 {
    1.0
}

impl TryFrom<MeasureSpec> for RadialMeasure {
    type Error = MeasureError;
    fn try_from(spec: MeasureSpec) -> Result<Self, MeasureError> {
        match spec {
            MeasureSpec::Atoms(a) => RadialMeasure::atoms(a.atoms),
            MeasureSpec::BetaLog(b) => RadialMeasure::beta_log(b.s, b.gamma, b.normalizer),
            MeasureSpec::Lebesgue(_) => Ok(RadialMeasure::Lebesgue),
            MeasureSpec::Sum(s) => {
                let parts = s
                    .parts
                    .into_iter()
                    .map(RadialMeasure::try_from)
                    .collect::<Result<Vec<_>, _>>()?;
                RadialMeasure::sum(parts)
            }
        }
    }
}

impl From<RadialMeasure> for MeasureSpec {
    fn from(m: RadialMeasure) -> MeasureSpec {
        match m {
            RadialMeasure::Atoms(atoms) => MeasureSpec::Atoms(AtomsSpec { atoms }),
            RadialMeasure::BetaLog {
                s,
                gamma,
                normalizer,
            } => MeasureSpec::BetaLog(BetaLogSpec {
                s,
                gamma,
                normalizer,
            }),
            RadialMeasure::Lebesgue => MeasureSpec::Lebesgue(LebesgueSpec {}),
            RadialMeasure::Sum(parts) => MeasureSpec::Sum(SumSpec {
                parts: parts.into_iter().map(MeasureSpec::from).collect(),
            }),
        }
    }
}

/// How a moment entry was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentMethod {
    ClosedForm,
    Quadrature,
}

/// μ_0..μ_M with per-entry method tags and absolute error estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentSequence {
    pub values: Vec<f64>,
    pub methods: Vec<MomentMethod>,
    pub errs: Vec<f64>,
}

impl MomentSequence {
    /// Highest cached order M.
    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, n: usize) -> f64 {
        self.values[n]
    }
}

impl RadialMeasure {
    pub fn atoms(atoms: Vec<(f64, f64)>) -> Result<Self, MeasureError> {
        if atoms.is_empty() {
            return Err(MeasureError::InvalidParameter(
                "atom list must be nonempty".into(),
            ));
        }
        for &(t, m) in &atoms {
            if !(0.0..1.0).contains(&t) {
                return Err(MeasureError::InvalidParameter(format!(
                    "atom location {t} outside [0, 1)"
                )));
            }
            if !(m > 0.0 && m.is_finite()) {
                return Err(MeasureError::InvalidParameter(format!(
                    "atom weight {m} must be positive and finite"
                )));
            }
        }
        Ok(RadialMeasure::Atoms(atoms))
    }

    pub fn beta_log(s: f64, gamma: f64, normalizer: f64) -> Result<Self, MeasureError> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(MeasureError::InvalidParameter(format!(
                "beta-log exponent s must be positive and finite, got {s}"
            )));
        }
        if !gamma.is_finite() {
            return Err(MeasureError::InvalidParameter(
                "beta-log exponent γ must be finite".into(),
            ));
        }
        if !(normalizer > 0.0 && normalizer.is_finite()) {
            return Err(MeasureError::InvalidParameter(format!(
                "normalizer must be positive and finite, got {normalizer}"
            )));
        }
        Ok(RadialMeasure::BetaLog {
            s,
            gamma,
            normalizer,
        })
    }

    pub fn sum(parts: Vec<RadialMeasure>) -> Result<Self, MeasureError> {
        if parts.is_empty() {
            return Err(MeasureError::InvalidParameter(
                "sum of measures must have at least one part".into(),
            ));
        }
        Ok(RadialMeasure::Sum(parts))
    }

    /// Multiply every weight/density by λ > 0.
    pub fn scaled(&self, factor: f64) -> Result<Self, MeasureError> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(MeasureError::InvalidParameter(format!(
                "scale factor must be positive, got {factor}"
            )));
        }
        Ok(match self {
            RadialMeasure::Atoms(atoms) => {
                RadialMeasure::Atoms(atoms.iter().map(|&(t, m)| (t, m * factor)).collect())
            }
            RadialMeasure::BetaLog {
                s,
                gamma,
                normalizer,
            } => RadialMeasure::BetaLog {
                s: *s,
                gamma: *gamma,
                normalizer: normalizer * factor,
            },
            RadialMeasure::Lebesgue => RadialMeasure::Sum(vec![RadialMeasure::BetaLog {
                s: 1.0,
                gamma: 0.0,
                normalizer: factor,
            }]),
            RadialMeasure::Sum(parts) => RadialMeasure::Sum(
                parts
                    .iter()
                    .map(|p| p.scaled(factor))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        })
    }

    /// ∫_{[lo,1)} g(t, 1-t) dμ(t).  The weight receives both t and 1-t so
    /// callers can keep expressions near t = 1 cancellation-free.  Densities
    /// are integrated on dyadic panels refining toward t = 1.
    pub fn integrate<T: QuadValue>(
        &self,
        lo: f64,
        g: &mut impl FnMut(f64, f64) -> T,
    ) -> Result<(T, f64), MeasureError> {
        match self {
            RadialMeasure::Atoms(atoms) => {
                let mut acc = T::zero();
                for &(t, m) in atoms {
                    if t >= lo {
                        acc = acc.add(g(t, 1.0 - t).scale(m));
                    }
                }
                Ok((acc, 0.0))
            }
            RadialMeasure::Lebesgue => {
                let mut h = |u: f64| g(1.0 - u, u);
                let out = quad::integrate_to_zero(&mut h, 1.0 - lo);
                finish(out, "Lebesgue density")
            }
            RadialMeasure::BetaLog {
                s,
                gamma,
                normalizer,
            } => {
                let (s, gamma, normalizer) = (*s, *gamma, *normalizer);
                let mut h = |u: f64| {
                    let density = normalizer * u.powf(s - 1.0) * (1.0 - u.ln()).powf(-gamma);
                    g(1.0 - u, u).scale(density)
                };
                let out = quad::integrate_to_zero(&mut h, 1.0 - lo);
                finish(out, "beta-log density")
            }
            RadialMeasure::Sum(parts) => {
                let mut acc = T::zero();
                let mut err = 0.0;
                for part in parts {
                    let (v, e) = part.integrate(lo, g)?;
                    acc = acc.add(v);
                    err += e;
                }
                Ok((acc, err))
            }
        }
    }

    /// The n-th power moment with an absolute error estimate.
    pub fn moment(&self, n: usize) -> Result<(f64, f64), MeasureError> {
        match self {
            RadialMeasure::Atoms(atoms) => {
                let v = atoms
                    .iter()
                    .map(|&(t, m)| m * t.powi(n as i32))
                    .sum::<f64>();
                Ok((v, 0.0))
            }
            RadialMeasure::Lebesgue => Ok((1.0 / (n as f64 + 1.0), 0.0)),
            RadialMeasure::BetaLog {
                s,
                gamma,
                normalizer,
            } if *gamma == 0.0 => {
                // normalizer·B(n+1, s) via the product recurrence
                // B(k+1, s) = B(k, s)·k/(k+s), B(1, s) = 1/s.
                let mut b = 1.0 / s;
                for k in 1..=n {
                    b *= k as f64 / (k as f64 + s);
                }
                let v = normalizer * b;
                Ok((v, v * 1e-15 * (n as f64 + 2.0).sqrt()))
            }
            RadialMeasure::BetaLog { .. } => {
                let nf = n as f64;
                self.integrate(0.0, &mut |_t, u| {
                    if n == 0 {
                        1.0
                    } else {
                        (nf * (-u).ln_1p()).exp()
                    }
                })
            }
            RadialMeasure::Sum(parts) => {
                let mut v = 0.0;
                let mut e = 0.0;
                for p in parts {
                    let (pv, pe) = p.moment(n)?;
                    v += pv;
                    e += pe;
                }
                Ok((v, e))
            }
        }
    }

    fn moment_method(&self) -> MomentMethod {
        match self {
            RadialMeasure::Atoms(_) | RadialMeasure::Lebesgue => MomentMethod::ClosedForm,
            RadialMeasure::BetaLog { gamma, .. } if *gamma == 0.0 => MomentMethod::ClosedForm,
            RadialMeasure::BetaLog { .. } => MomentMethod::Quadrature,
            RadialMeasure::Sum(parts) => {
                if parts
                    .iter()
                    .all(|p| p.moment_method() == MomentMethod::ClosedForm)
                {
                    MomentMethod::ClosedForm
                } else {
                    MomentMethod::Quadrature
                }
            }
        }
    }

    /// μ_0..μ_M.  Closed-form families run an incremental recurrence;
    /// quadrature families evaluate entries in parallel.
    pub fn moments(&self, max_order: usize) -> Result<MomentSequence, MeasureError> {
        let values = self.moment_values(max_order)?;
        let (vals, errs): (Vec<f64>, Vec<f64>) = values.into_iter().unzip();
        let method = self.moment_method();
        let seq = MomentSequence {
            methods: vec![method; vals.len()],
            values: vals,
            errs,
        };
        for n in 0..seq.max_order() {
            let slack = 2.0 * (seq.errs[n] + seq.errs[n + 1]) + 1e-300;
            if seq.values[n + 1] > seq.values[n] + slack {
                return Err(MeasureError::MonotonicityViolated { n });
            }
        }
        Ok(seq)
    }

    fn moment_values(&self, max_order: usize) -> Result<Vec<(f64, f64)>, MeasureError> {
        match self {
            RadialMeasure::Atoms(atoms) => {
                let mut powers: Vec<f64> = atoms.iter().map(|_| 1.0).collect();
                let mut out = Vec::with_capacity(max_order + 1);
                for _ in 0..=max_order {
                    let v: f64 = atoms
                        .iter()
                        .zip(powers.iter())
                        .map(|(&(_, m), &p)| m * p)
                        .sum();
                    out.push((v, 0.0));
                    for (p, &(t, _)) in powers.iter_mut().zip(atoms.iter()) {
                        *p *= t;
                    }
                }
                Ok(out)
            }
            RadialMeasure::Lebesgue => Ok((0..=max_order)
                .map(|n| (1.0 / (n as f64 + 1.0), 0.0))
                .collect()),
            RadialMeasure::BetaLog {
                s,
                gamma,
                normalizer,
            } if *gamma == 0.0 => {
                let mut out = Vec::with_capacity(max_order + 1);
                let mut b = 1.0 / s;
                for k in 0..=max_order {
                    let v = normalizer * b;
                    out.push((v, v * 1e-15 * (k as f64 + 2.0).sqrt()));
                    b *= (k as f64 + 1.0) / (k as f64 + 1.0 + s);
                }
                Ok(out)
            }
            RadialMeasure::BetaLog { .. } => (0..=max_order)
                .into_par_iter()
                .map(|n| self.moment(n))
                .collect(),
            RadialMeasure::Sum(parts) => {
                let mut acc = vec![(0.0, 0.0); max_order + 1];
                for p in parts {
                    let vals = p.moment_values(max_order)?;
                    for (a, v) in acc.iter_mut().zip(vals) {
                        a.0 += v.0;
                        a.1 += v.1;
                    }
                }
                Ok(acc)
            }
        }
    }

    /// μ([a, 1)); exact antiderivatives where the family admits them.
    pub fn tail_mass(&self, a: f64) -> Result<(f64, f64), MeasureError> {
        if !(0.0..1.0).contains(&a) {
            return Err(MeasureError::InvalidParameter(format!(
                "tail threshold {a} outside [0, 1)"
            )));
        }
        match self {
            RadialMeasure::Atoms(atoms) => Ok((
                atoms
                    .iter()
                    .filter(|&&(t, _)| t >= a)
                    .map(|&(_, m)| m)
                    .sum(),
                0.0,
            )),
            RadialMeasure::Lebesgue => Ok((1.0 - a, 0.0)),
            RadialMeasure::BetaLog {
                s,
                gamma,
                normalizer,
            } if *gamma == 0.0 => {
                let v = normalizer * (1.0 - a).powf(*s) / s;
                Ok((v, v * 4.0 * f64::EPSILON))
            }
            RadialMeasure::BetaLog { .. } => self.integrate(a, &mut |_t, _u| 1.0),
            RadialMeasure::Sum(parts) => {
                let mut v = 0.0;
                let mut e = 0.0;
                for p in parts {
                    let (pv, pe) = p.tail_mass(a)?;
                    v += pv;
                    e += pe;
                }
                Ok((v, e))
            }
        }
    }

    /// μ([0, 1)).
    pub fn total_mass(&self) -> Result<f64, MeasureError> {
        Ok(self.tail_mass(0.0)?.0)
    }
}

fn finish<T: QuadValue>(
    out: quad::DyadicOutcome<T>,
    context: &str,
) -> Result<(T, f64), MeasureError> {
    if out.converged {
        Ok((out.value, out.err))
    } else {
        Err(MeasureError::QuadratureNonConvergence {
            partial: out.value.magnitude(),
            err: out.err,
            context: format!("{context}, {} panels", out.panels),
        })
    }
}
