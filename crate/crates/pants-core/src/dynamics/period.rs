//! Period detection by a Poincaré section through the initial point.

use super::integrate::{drive, Control, IntegratorConfig, LogField, Path};
use crate::error::{require_positive, PantsError, Result};
use crate::scalar::ChartFunction;

/// Default integration budget for period searches.
pub const DEFAULT_PERIOD_T_MAX: f64 = 1e4;

/// A detected closed orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct Period {
    pub period: f64,
    /// Chart distance between the start and the refined return point.
    pub return_distance: f64,
    /// Relative f-drift over the whole orbit.
    pub drift: f64,
    /// Accepted steps over one period, closed by the refined return point.
    pub orbit: Path,
}

/// Find the first return of the flow of `f` from (σ₁, τ₁) to the line
/// through the start point orthogonal to the initial velocity (in log
/// coordinates), crossing in the initial direction. The crossing time is
/// refined by bisection on single Runge–Kutta steps to 1e−10 in t.
pub fn detect_period_fn<F: ChartFunction + ?Sized>(
    f: &F,
    sigma1: f64,
    tau1: f64,
    t_max: f64,
    cfg: &IntegratorConfig,
) -> Result<Period> {
    require_positive("sigma1", sigma1)?;
    require_positive("tau1", tau1)?;
    let y0 = [sigma1.ln(), tau1.ln()];
    let field = LogField { f, direction: 1.0 };
    let w0 = field.eval(y0);
    if w0[0].hypot(w0[1]) == 0.0 {
        return Err(PantsError::InvalidArgument(
            "initial point is a fixed point of the flow".into(),
        ));
    }
    let g = |y: [f64; 2]| (y[0] - y0[0]) * w0[0] + (y[1] - y0[1]) * w0[1];

    let mut went_negative = false;
    let mut crossing: Option<(f64, [f64; 2], [f64; 2], f64)> = None;
    let mut path = drive(f, y0, t_max, cfg, |t, y, k, h, _t_new, y_new| {
        let gn = g(y_new);
        if gn < 0.0 {
            went_negative = true;
        } else if went_negative && g(y) < 0.0 {
            crossing = Some((t, y, k, h));
            return Control::Stop;
        }
        Control::Continue
    })?;
    let Some((t_prev, y_prev, k_prev, h)) = crossing else {
        return Err(PantsError::PeriodNotFound { t_max });
    };

    // bisection on the step length from the last state before the crossing
    let (mut lo, mut hi) = (0.0, h);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if g(field.step(y_prev, k_prev, mid).0) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let y_hit = field.step(y_prev, k_prev, hi).0;
    let period = t_prev + hi;
    let (s_hit, t_hit) = (y_hit[0].exp(), y_hit[1].exp());
    let return_distance = (s_hit - sigma1).hypot(t_hit - tau1);

    // drop the overshooting step and close the orbit at the refined return
    path.samples.pop();
    let f_hit = f.eval(s_hit, t_hit);
    let f0 = path.samples[0].f;
    path.samples.push(super::integrate::Sample {
        t: period,
        sigma1: s_hit,
        tau1: t_hit,
        f: f_hit,
    });
    let drift = path
        .samples
        .iter()
        .map(|s| (s.f - f0).abs() / f0.abs().max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    path.drift = drift;
    Ok(Period {
        period,
        return_distance,
        drift,
        orbit: path,
    })
}
