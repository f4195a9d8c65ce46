//! Hamiltonian dynamics of trace functions on a leaf: orbit integration,
//! period detection, unique minima, level sets, and convexity / properness
//! probes.
//!
//! The submodules work with any [`ChartFunction`]; the functions here are the
//! curve-level entry points.

pub mod integrate;
pub mod level_set;
pub mod minimum;
pub mod period;
pub mod probes;

pub use integrate::{integrate_fn, IntegratorConfig, Path, Sample};
pub use level_set::{level_set_fn, seed_on_ray, LevelSet};
pub use minimum::{find_minimum_from, Minimum};
pub use period::{detect_period_fn, Period, DEFAULT_PERIOD_T_MAX};
pub use probes::{
    convexity_probe, properness_probe, second_derivative_along, second_difference_at,
    second_differences, PropernessReport, Ray,
};

use crate::coords::{LeafPoint, LengthVector};
use crate::error::{PantsError, Result};
use crate::output::trajectory_csv;
use crate::scalar::ChartFunction;
use crate::traces::{CurveId, TraceFunction};

/// An integrated orbit of a trace function.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub leaf: LengthVector,
    pub curve: CurveId,
    pub samples: Vec<Sample>,
    /// max |f − f₀| / |f₀| over the samples.
    pub drift: f64,
}

impl Trajectory {
    pub fn to_csv(&self) -> String {
        let rows: Vec<_> = self.samples.iter().map(Sample::as_tuple).collect();
        trajectory_csv(&rows)
    }

    pub fn chart_points(&self) -> Vec<(f64, f64)> {
        self.samples.iter().map(|s| (s.sigma1, s.tau1)).collect()
    }
}

/// Integrate the Hamiltonian flow of `curve` from `p0` for time `t_max`
/// (negative integrates backwards) with relative tolerance `rtol`.
pub fn integrate(p0: &LeafPoint, curve: &CurveId, t_max: f64, rtol: f64) -> Result<Trajectory> {
    let cfg = IntegratorConfig::with_rtol(rtol)?;
    integrate_with(p0, curve, t_max, &cfg)
}

/// As [`integrate`] with a full configuration.
pub fn integrate_with(p0: &LeafPoint, curve: &CurveId, t_max: f64, cfg: &IntegratorConfig) -> Result<Trajectory> {
    let f = TraceFunction::new(p0.leaf, curve.clone());
    let path = integrate_fn(&f, p0.sigma1, p0.tau1, t_max, cfg)?;
    Ok(Trajectory {
        leaf: p0.leaf,
        curve: curve.clone(),
        samples: path.samples,
        drift: path.drift,
    })
}

/// Period of the orbit of `curve` through `p0`.
pub fn detect_period(p0: &LeafPoint, curve: &CurveId, rtol: f64) -> Result<Period> {
    let cfg = IntegratorConfig::with_rtol(rtol)?;
    let f = TraceFunction::new(p0.leaf, curve.clone());
    detect_period_fn(&f, p0.sigma1, p0.tau1, DEFAULT_PERIOD_T_MAX, &cfg)
}

fn require_unique_minimum(leaf: &LengthVector, curve: &CurveId) -> Result<()> {
    if curve.has_unique_minimum(leaf) {
        Ok(())
    } else {
        Err(PantsError::InvalidArgument(format!(
            "{curve} is not known to have a unique minimum on this leaf"
        )))
    }
}

/// The unique minimum of `curve` on the leaf.
pub fn find_minimum(leaf: &LengthVector, curve: &CurveId) -> Result<Minimum> {
    find_minimum_starting(leaf, curve, (1.0, 1.0))
}

/// The unique minimum, starting the search at a given chart point.
pub fn find_minimum_starting(leaf: &LengthVector, curve: &CurveId, start: (f64, f64)) -> Result<Minimum> {
    require_unique_minimum(leaf, curve)?;
    find_minimum_from(&TraceFunction::new(*leaf, curve.clone()), start)
}

/// The closed level curve {tr = level}.
pub fn level_set(leaf: &LengthVector, curve: &CurveId, level: f64) -> Result<LevelSet> {
    require_unique_minimum(leaf, curve)?;
    let f = TraceFunction::new(*leaf, curve.clone());
    level_set_fn(&f, level, (1.0, 1.0), DEFAULT_PERIOD_T_MAX, &IntegratorConfig::default())
}

/// The trace function of a curve on a leaf, as a chart function.
pub fn trace_function(leaf: &LengthVector, curve: &CurveId) -> impl ChartFunction {
    TraceFunction::new(*leaf, curve.clone())
}
