//! Adaptive Dormand–Prince 5(4) integration of a leaf Hamiltonian flow in
//! log-chart variables (u, v) = (log σ₁, log τ₁).

use crate::error::{PantsError, Result};
use crate::poisson::hamiltonian_vf_log;
use crate::scalar::ChartFunction;

/// Coordinates beyond e^{±ESCAPE_LOG} count as an escaped trajectory.
pub const ESCAPE_LOG: f64 = 300.0;

/// Step-size controller and budget settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorConfig {
    /// Relative tolerance, in [1e−13, 1e−4].
    pub rtol: f64,
    /// Absolute tolerance on (u, v).
    pub atol: f64,
    /// Smallest admissible step before declaring the segment stiff.
    pub h_min: f64,
    /// Maximum number of attempted steps.
    pub max_steps: usize,
    /// Project back onto the initial level set after each step.
    pub project: bool,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rtol: 1e-10,
            atol: 1e-12,
            h_min: 1e-14,
            max_steps: 2_000_000,
            project: false,
        }
    }
}

impl IntegratorConfig {
    pub fn with_rtol(rtol: f64) -> Result<Self> {
        if !(1e-13..=1e-4).contains(&rtol) {
            return Err(PantsError::InvalidArgument(format!("rtol {rtol} outside [1e-13, 1e-4]")));
        }
        Ok(IntegratorConfig {
            rtol,
            ..Default::default()
        })
    }
}

/// One recorded point of a trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub sigma1: f64,
    pub tau1: f64,
    pub f: f64,
}

impl Sample {
    pub fn as_tuple(&self) -> (f64, f64, f64, f64) {
        (self.t, self.sigma1, self.tau1, self.f)
    }
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// The autonomous log-chart vector field of a chart function, with an
/// optional time reversal.
pub struct LogField<'a, F: ChartFunction + ?Sized> {
    pub f: &'a F,
    pub direction: f64,
}

impl<F: ChartFunction + ?Sized> LogField<'_, F> {
    pub fn eval(&self, y: [f64; 2]) -> [f64; 2] {
        let w = hamiltonian_vf_log(self.f, y[0], y[1]);
        [self.direction * w[0], self.direction * w[1]]
    }

    /// One Dormand–Prince step of size `h` from `y` with derivative `k0`;
    /// returns (5th-order solution, error estimate, derivative at the end).
    pub fn step(&self, y: [f64; 2], k0: [f64; 2], h: f64) -> ([f64; 2], [f64; 2], [f64; 2]) {
        let mut k = [[0.0; 2]; 7];
        k[0] = k0;
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                ys[0] += h * A[s][j] * kj[0];
                ys[1] += h * A[s][j] * kj[1];
            }
            debug_assert!(C[s] >= 0.0);
            k[s] = self.eval(ys);
        }
        let mut y5 = y;
        let mut err = [0.0; 2];
        for s in 0..7 {
            for d in 0..2 {
                y5[d] += h * B5[s] * k[s][d];
                err[d] += h * (B5[s] - B4[s]) * k[s][d];
            }
        }
        // FSAL: stage 7 is evaluated at y5
        (y5, err, k[6])
    }
}

/// Result of an integration run.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    pub samples: Vec<Sample>,
    /// max |f − f₀| / |f₀| over the accepted steps.
    pub drift: f64,
}

/// Callback verdict after each accepted step.
pub(crate) enum Control {
    Continue,
    Stop,
}

/// Integrate and call `on_step(t_prev, y_prev, k_prev, h, t, y)` after every
/// accepted step. Returns the samples (every accepted step) and drift.
pub(crate) fn drive<F, G>(
    f: &F,
    y0: [f64; 2],
    t_max: f64,
    cfg: &IntegratorConfig,
    mut on_step: G,
) -> Result<Path>
where
    F: ChartFunction + ?Sized,
    G: FnMut(f64, [f64; 2], [f64; 2], f64, f64, [f64; 2]) -> Control,
{
    let direction = if t_max < 0.0 { -1.0 } else { 1.0 };
    let t_end = t_max.abs();
    let field = LogField { f, direction };
    let value = |y: [f64; 2]| f.eval(y[0].exp(), y[1].exp());
    let f0 = value(y0);
    let scale = f0.abs().max(f64::MIN_POSITIVE);
    let mut samples = vec![Sample {
        t: 0.0,
        sigma1: y0[0].exp(),
        tau1: y0[1].exp(),
        f: f0,
    }];
    let mut drift: f64 = 0.0;
    if t_end == 0.0 {
        return Ok(Path { samples, drift });
    }

    let mut y = y0;
    let mut k = field.eval(y);
    let speed = k[0].hypot(k[1]);
    if speed == 0.0 {
        // an equilibrium: the exact solution is constant
        samples.push(Sample {
            t: direction * t_end,
            ..samples[0]
        });
        return Ok(Path { samples, drift });
    }
    let mut h = (0.01 * (1.0 + y[0].abs().max(y[1].abs())) / speed).min(t_end);
    let mut t = 0.0;
    let mut err_prev: f64 = 1e-4;
    let mut steps = 0;
    const SAFETY: f64 = 0.9;
    const BETA: f64 = 0.04;
    const EXPO: f64 = 0.2 - BETA * 0.75;

    while t < t_end {
        steps += 1;
        if steps > cfg.max_steps {
            return Err(PantsError::StiffSegment { t: direction * t });
        }
        if h < cfg.h_min * (1.0 + t) {
            return Err(PantsError::StiffSegment { t: direction * t });
        }
        let last = t + h >= t_end;
        if last {
            h = t_end - t;
        }
        let (y_new, e, k_new) = field.step(y, k, h);
        let mut norm = 0.0;
        for d in 0..2 {
            let sc = cfg.atol + cfg.rtol * y[d].abs().max(y_new[d].abs());
            norm += (e[d] / sc).powi(2);
        }
        let err = (norm / 2.0).sqrt();
        if !err.is_finite() {
            h *= 0.2;
            continue;
        }
        if err <= 1.0 {
            let mut y_acc = y_new;
            let mut k_acc = k_new;
            if cfg.project {
                y_acc = project(f, y_acc, f0);
                k_acc = field.eval(y_acc);
            }
            if y_acc[0].abs() > ESCAPE_LOG || y_acc[1].abs() > ESCAPE_LOG {
                return Err(PantsError::TrajectoryEscaped { t: direction * (t + h) });
            }
            let t_new = if last { t_end } else { t + h };
            let fv = value(y_acc);
            drift = drift.max((fv - f0).abs() / scale);
            samples.push(Sample {
                t: direction * t_new,
                sigma1: y_acc[0].exp(),
                tau1: y_acc[1].exp(),
                f: fv,
            });
            let verdict = on_step(t, y, k, h, t_new, y_acc);
            t = t_new;
            y = y_acc;
            k = k_acc;
            if let Control::Stop = verdict {
                break;
            }
            let fac = (err.max(1e-10).powf(EXPO) / err_prev.powf(BETA) / SAFETY).clamp(0.1, 5.0);
            h /= fac;
            err_prev = err.max(1e-4);
        } else {
            let fac = (err.powf(EXPO) / SAFETY).clamp(1.0, 10.0);
            h /= fac;
        }
    }
    Ok(Path { samples, drift })
}

/// One Newton step along the log-chart gradient back to the level `target`.
fn project<F: ChartFunction + ?Sized>(f: &F, y: [f64; 2], target: f64) -> [f64; 2] {
    let d = f.log_jet(y[0], y[1]);
    let g2 = d.g[0] * d.g[0] + d.g[1] * d.g[1];
    if g2 == 0.0 {
        return y;
    }
    let c = (target - d.v) / g2;
    [y[0] + c * d.g[0], y[1] + c * d.g[1]]
}

/// Integrate the Hamiltonian flow of `f` from chart point (σ₁, τ₁) for time
/// `t_max` (negative for the reversed flow).
pub fn integrate_fn<F: ChartFunction + ?Sized>(
    f: &F,
    sigma1: f64,
    tau1: f64,
    t_max: f64,
    cfg: &IntegratorConfig,
) -> Result<Path> {
    crate::error::require_positive("sigma1", sigma1)?;
    crate::error::require_positive("tau1", tau1)?;
    if !t_max.is_finite() {
        return Err(PantsError::InvalidArgument("t_max must be finite".into()));
    }
    drive(f, [sigma1.ln(), tau1.ln()], t_max, cfg, |_, _, _, _, _, _| Control::Continue)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    /// f = (log σ)² + (log τ)²: circles in log coordinates with angular
    /// speed 4, so the period is π/2.
    struct Quad;
    impl ChartFunction for Quad {
        fn eval<S: Scalar>(&self, s: S, t: S) -> S {
            let (u, v) = (s.ln(), t.ln());
            u * u + v * v
        }
    }

    #[test]
    fn tableau_is_consistent() {
        for s in 0..7 {
            let row: f64 = A[s].iter().sum();
            assert!((row - C[s]).abs() < 1e-14);
        }
        assert!((B5.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!((B4.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rotation_is_exact_to_tolerance() {
        let cfg = IntegratorConfig::default();
        let t = std::f64::consts::FRAC_PI_2;
        let p = integrate_fn(&Quad, 1f64.exp(), 1.0, t, &cfg).unwrap();
        let last = p.samples.last().unwrap();
        assert!((last.t - t).abs() < 1e-15);
        assert!((last.sigma1.ln() - 1.0).abs() < 1e-8);
        assert!(last.tau1.ln().abs() < 1e-8);
        assert!(p.drift < 1e-8);
        assert!(p.samples.windows(2).all(|w| w[1].t > w[0].t));
    }

    #[test]
    fn equilibrium_and_zero_time() {
        let cfg = IntegratorConfig::default();
        let p = integrate_fn(&Quad, 1.0, 1.0, 3.0, &cfg).unwrap();
        assert!(p.samples.iter().all(|s| s.sigma1 == 1.0 && s.tau1 == 1.0));
        let p = integrate_fn(&Quad, 2.0, 1.0, 0.0, &cfg).unwrap();
        assert_eq!(p.samples.len(), 1);
    }

    #[test]
    fn rtol_bounds() {
        assert!(IntegratorConfig::with_rtol(1e-14).is_err());
        assert!(IntegratorConfig::with_rtol(1e-3).is_err());
        assert!(IntegratorConfig::with_rtol(1e-8).is_ok());
    }

    #[test]
    fn escape_is_reported() {
        // f = log σ · log τ... a hyperbolic saddle sends points to infinity
        struct Saddle;
        impl ChartFunction for Saddle {
            fn eval<S: Scalar>(&self, s: S, t: S) -> S {
                s.ln() * t.ln()
            }
        }
        let r = integrate_fn(&Saddle, 2.0, 2.0, 1e4, &IntegratorConfig::default());
        assert!(matches!(r, Err(PantsError::TrajectoryEscaped { .. })));
    }
}
