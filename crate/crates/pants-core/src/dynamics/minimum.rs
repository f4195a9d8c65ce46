//! Unique minima of trace functions that are proper and strictly convex
//! along mixed flows. Mixed flows are straight lines in the log chart
//! (u, v) = (log σ₁, log τ₁), so such functions are strictly convex there
//! and damped Newton converges from any start.

use crate::error::{PantsError, Result};
use crate::scalar::ChartFunction;

/// A located minimum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Minimum {
    pub sigma1: f64,
    pub tau1: f64,
    pub value: f64,
    /// Euclidean norm of the chart gradient (∂f/∂σ₁, ∂f/∂τ₁).
    pub gradient_norm: f64,
    pub iterations: usize,
}

const MAX_NEWTON: usize = 200;
const MAX_GOLDEN_ROUNDS: usize = 400;

fn chart_gradient_norm<F: ChartFunction + ?Sized>(f: &F, u: f64, v: f64) -> f64 {
    let d = f.log_jet(u, v);
    // ∂f/∂σ = (∂f/∂u)/σ
    (d.g[0] / u.exp()).hypot(d.g[1] / v.exp())
}

fn converged<F: ChartFunction + ?Sized>(f: &F, u: f64, v: f64, value: f64) -> bool {
    chart_gradient_norm(f, u, v) <= 1e-12 * (1.0 + value.abs())
}

/// Damped Newton from the chart point `start`; falls back to alternating
/// golden-section searches along the hexagon (σ₁) and eruption (τ₁)
/// directions if Newton stalls, then polishes with Newton again.
pub fn find_minimum_from<F: ChartFunction + ?Sized>(f: &F, start: (f64, f64)) -> Result<Minimum> {
    crate::error::require_positive("sigma1", start.0)?;
    crate::error::require_positive("tau1", start.1)?;
    let (u, v, n1, ok) = newton(f, start.0.ln(), start.1.ln())?;
    if ok {
        return Ok(finish(f, u, v, n1));
    }
    let (u, v, n2) = golden_rounds(f, u, v);
    let (u, v, n3, _) = newton(f, u, v)?;
    let m = finish(f, u, v, n1 + n2 + n3);
    if m.gradient_norm <= 1e-10 * (1.0 + m.value.abs()) {
        Ok(m)
    } else {
        Err(PantsError::LineSearch {
            iterations: m.iterations,
            gradient_norm: m.gradient_norm,
        })
    }
}

/// Damped Newton in the log chart. Returns (u, v, iterations, converged).
fn newton<F: ChartFunction + ?Sized>(f: &F, mut u: f64, mut v: f64) -> Result<(f64, f64, usize, bool)> {
    let mut iterations = 0;
    while iterations < MAX_NEWTON {
        iterations += 1;
        let d = f.log_jet(u, v);
        if !d.v.is_finite() {
            return Err(PantsError::LineSearch {
                iterations,
                gradient_norm: f64::NAN,
            });
        }
        if converged(f, u, v, d.v) {
            return Ok((u, v, iterations, true));
        }
        let [gu, gv] = d.g;
        let [[a, b], [_, c]] = d.h;
        let det = a * c - b * b;
        let (mut du, mut dv) = if a > 0.0 && det > 0.0 {
            (-(c * gu - b * gv) / det, -(a * gv - b * gu) / det)
        } else {
            (-gu, -gv)
        };
        // keep steps moderate in the log chart
        let len = du.hypot(dv);
        if len > 2.0 {
            du *= 2.0 / len;
            dv *= 2.0 / len;
        }
        let slope = gu * du + gv * dv;
        // values within a few ulps of the current one count as no increase;
        // otherwise rounding noise near the minimum rejects the full Newton
        // step in favour of a uselessly short one
        let noise = 16.0 * f64::EPSILON * d.v.abs();
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let (nu, nv) = (u + step * du, v + step * dv);
            let fv = f.eval(nu.exp(), nv.exp());
            if fv.is_finite() && fv <= d.v + 1e-4 * step * slope + noise {
                u = nu;
                v = nv;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            // at rounding level the value no longer decreases; accept a
            // full step if it shrinks the gradient
            let (nu, nv) = (u + du, v + dv);
            let nd = f.log_jet(nu, nv);
            if nd.v.is_finite() && nd.g[0].hypot(nd.g[1]) < gu.hypot(gv) {
                u = nu;
                v = nv;
                continue;
            }
            return Ok((u, v, iterations, false));
        }
    }
    Ok((u, v, iterations, false))
}

fn finish<F: ChartFunction + ?Sized>(f: &F, u: f64, v: f64, iterations: usize) -> Minimum {
    let value = f.eval(u.exp(), v.exp());
    Minimum {
        sigma1: u.exp(),
        tau1: v.exp(),
        value,
        gradient_norm: chart_gradient_norm(f, u, v),
        iterations,
    }
}

/// Minimize a strictly convex 1-D function by bracketing then golden section.
fn golden_1d<G: Fn(f64) -> f64>(g: G, x0: f64) -> f64 {
    let mut step = 0.5;
    let (mut a, mut b) = (x0 - step, x0 + step);
    let f0 = g(x0);
    // expand until both ends are higher than the centre
    while g(a) < f0 && step < 1e3 {
        step *= 2.0;
        a = x0 - step;
    }
    step = 0.5;
    while g(b) < f0 && step < 1e3 {
        step *= 2.0;
        b = x0 + step;
    }
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (g(c), g(d));
    while (b - a).abs() > 1e-13 * (1.0 + x0.abs()) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = g(d);
        }
    }
    0.5 * (a + b)
}

/// Alternating exact line minimizations along u and v.
fn golden_rounds<F: ChartFunction + ?Sized>(f: &F, mut u: f64, mut v: f64) -> (f64, f64, usize) {
    let mut rounds = 0;
    while rounds < MAX_GOLDEN_ROUNDS {
        rounds += 1;
        let (u0, v0) = (u, v);
        u = golden_1d(|x| f.eval(x.exp(), v.exp()), u);
        v = golden_1d(|y| f.eval(u.exp(), y.exp()), v);
        if (u - u0).abs() + (v - v0).abs() < 1e-9 {
            break;
        }
    }
    (u, v, rounds)
}
