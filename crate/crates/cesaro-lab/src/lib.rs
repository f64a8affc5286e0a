//! Numerical laboratory for a Cesàro-like integral operator on the unit
//! disk.  The operator takes Taylor coefficients a_k to μ_n·Σ_{k≤n} a_k for
//! a finite positive Borel measure μ on [0, 1), equivalently
//! f ↦ ∫ f(tz)/(1-tz) dμ(t).  The crate provides the coefficient and
//! integral representations, Carleson-measure classifiers, norm estimators
//! for Hardy, Bloch-type, Morrey and mean-Lipschitz spaces, the supporting
//! integral estimates, and a scenario harness that replays the boundedness
//! characterizations as desk-scale experiments.

pub mod carleson;
pub mod cesaro;
pub mod estimates;
pub mod lab;
pub mod measure;
pub mod quad;
pub mod series;
pub mod spaces;
pub mod trend;

pub use carleson::{CarlesonReport, MomentFit};
pub use cesaro::OperatorInstance;
pub use measure::{MeasureError, MomentSequence, RadialMeasure};
pub use series::{make_series, PowerSeries, SeriesError, TestFunctionKind};
pub use trend::{TrendReport, Verdict};
