//! Level sets of trace functions with a unique minimum, traced as one
//! period of the Hamiltonian orbit.

use super::integrate::IntegratorConfig;
use super::minimum::{find_minimum_from, Minimum};
use super::period::detect_period_fn;
use crate::error::{PantsError, Result};
use crate::scalar::ChartFunction;

/// A closed level curve in the chart.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelSet {
    pub level: f64,
    /// Polyline in the chart (σ₁, τ₁); the last point returns to the first.
    pub points: Vec<(f64, f64)>,
    pub period: f64,
    /// Chart distance between the first and last points.
    pub closure_error: f64,
    /// Largest relative deviation of f from `level` along the polyline.
    pub max_level_error: f64,
    pub minimum: Minimum,
}

/// Find the point on the hexagon ray u ↦ (u* + s, v*), s > 0, where f equals
/// `level`; f is strictly increasing along it by convexity and properness.
pub fn seed_on_ray<F: ChartFunction + ?Sized>(f: &F, min: &Minimum, level: f64) -> Result<(f64, f64)> {
    if level.is_nan() || level <= min.value {
        return Err(PantsError::BelowMinimum {
            level,
            minimum: min.value,
        });
    }
    let (u0, v0) = (min.sigma1.ln(), min.tau1.ln());
    let g = |s: f64| f.eval((u0 + s).exp(), v0.exp()) - level;
    let mut hi = 0.5;
    while g(hi) < 0.0 {
        hi *= 2.0;
        if hi > super::integrate::ESCAPE_LOG {
            return Err(PantsError::TrajectoryEscaped { t: 0.0 });
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(((u0 + hi).exp(), v0.exp()))
}

/// The level set {f = level} of a function with a unique minimum, as one
/// full Hamiltonian orbit from a seed on the hexagon ray.
pub fn level_set_fn<F: ChartFunction + ?Sized>(
    f: &F,
    level: f64,
    start: (f64, f64),
    t_max: f64,
    cfg: &IntegratorConfig,
) -> Result<LevelSet> {
    let minimum = find_minimum_from(f, start)?;
    let (s, t) = seed_on_ray(f, &minimum, level)?;
    let per = detect_period_fn(f, s, t, t_max, cfg)?;
    let points: Vec<(f64, f64)> = per.orbit.samples.iter().map(|p| (p.sigma1, p.tau1)).collect();
    let (a, b) = (points[0], points[points.len() - 1]);
    let max_level_error = per
        .orbit
        .samples
        .iter()
        .map(|p| ((p.f - level) / level).abs())
        .fold(0.0, f64::max);
    Ok(LevelSet {
        level,
        closure_error: (a.0 - b.0).hypot(a.1 - b.1),
        points,
        period: per.period,
        max_level_error,
        minimum,
    })
}
