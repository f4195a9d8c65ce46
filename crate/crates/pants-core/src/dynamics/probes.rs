//! Numerical probes of the convexity and properness theorems.

use std::fmt;
use std::str::FromStr;

use crate::coords::LeafPoint;
use crate::error::{PantsError, Result};
use crate::poisson::{mixed_flow_chart, mixed_flow_chart_generic, MixedVariant};
use crate::scalar::{ChartFunction, Dual2};

/// Half-width of the time window of the convexity probe.
pub const CONVEXITY_SPAN: f64 = 3.0;

/// f(mixed_flow(q, a, t)) for the given variant.
pub fn along_mixed_flow<F: ChartFunction + ?Sized>(
    f: &F,
    q: &LeafPoint,
    a: f64,
    variant: MixedVariant,
    t: f64,
) -> f64 {
    let p = mixed_flow_chart(q, a, t, variant);
    f.eval(p.sigma1, p.tau1)
}

/// Exact second derivative of t ↦ f(mixed_flow(q, a, t)) via dual numbers.
pub fn second_derivative_along<F: ChartFunction + ?Sized>(
    f: &F,
    q: &LeafPoint,
    a: f64,
    variant: MixedVariant,
    t: f64,
) -> f64 {
    let time = Dual2::variable(t, 0);
    let (s, tau) = mixed_flow_chart_generic(
        Dual2::constant(q.sigma1),
        Dual2::constant(q.tau1),
        a,
        time,
        variant,
    );
    f.eval(s, tau).h[0][0]
}

/// Centered second differences (f₊ − 2f₀ + f₋)/h² of t ↦ f(mixed_flow(q, a, t))
/// on an `n`-point grid over [−3, 3]; one value per interior grid point.
pub fn second_differences<F: ChartFunction + ?Sized>(
    f: &F,
    q: &LeafPoint,
    a: f64,
    variant: MixedVariant,
    n: usize,
) -> Result<Vec<(f64, f64)>> {
    if n < 3 {
        return Err(PantsError::InvalidArgument("convexity probe needs n >= 3".into()));
    }
    let h = 2.0 * CONVEXITY_SPAN / (n - 1) as f64;
    let ts: Vec<f64> = (0..n).map(|k| -CONVEXITY_SPAN + h * k as f64).collect();
    let vals: Vec<f64> = ts.iter().map(|&t| along_mixed_flow(f, q, a, variant, t)).collect();
    Ok((1..n - 1)
        .map(|k| (ts[k], (vals[k + 1] - 2.0 * vals[k] + vals[k - 1]) / (h * h)))
        .collect())
}

/// Minimum centered second difference over the grid (expected > 0 for
/// functions strictly convex along mixed flows).
pub fn convexity_probe<F: ChartFunction + ?Sized>(
    f: &F,
    q: &LeafPoint,
    a: f64,
    variant: MixedVariant,
    n: usize,
) -> Result<f64> {
    Ok(second_differences(f, q, a, variant, n)?
        .into_iter()
        .map(|(_, d)| d)
        .fold(f64::INFINITY, f64::min))
}

/// A centered second difference with small step `h` at time `t`, for
/// comparison against the exact second derivative.
pub fn second_difference_at<F: ChartFunction + ?Sized>(
    f: &F,
    q: &LeafPoint,
    a: f64,
    variant: MixedVariant,
    t: f64,
    h: f64,
) -> f64 {
    let g = |x: f64| along_mixed_flow(f, q, a, variant, x);
    (g(t + h) - 2.0 * g(t) + g(t - h)) / (h * h)
}

/// Rays to infinity in the chart, followed geometrically with ratio 10.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ray {
    SigmaToInfinity,
    SigmaToZero,
    TauToInfinity,
    TauToZero,
    BothToInfinity,
}

impl Ray {
    pub const ALL: [Ray; 5] = [
        Ray::SigmaToInfinity,
        Ray::SigmaToZero,
        Ray::TauToInfinity,
        Ray::TauToZero,
        Ray::BothToInfinity,
    ];

    /// Multiplicative factors applied to (σ₁, τ₁) per step.
    fn factors(self) -> (f64, f64) {
        match self {
            Ray::SigmaToInfinity => (10.0, 1.0),
            Ray::SigmaToZero => (0.1, 1.0),
            Ray::TauToInfinity => (1.0, 10.0),
            Ray::TauToZero => (1.0, 0.1),
            Ray::BothToInfinity => (10.0, 10.0),
        }
    }
}

impl FromStr for Ray {
    type Err = PantsError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sigma_inf" => Ok(Ray::SigmaToInfinity),
            "sigma_zero" => Ok(Ray::SigmaToZero),
            "tau_inf" => Ok(Ray::TauToInfinity),
            "tau_zero" => Ok(Ray::TauToZero),
            "both_inf" => Ok(Ray::BothToInfinity),
            _ => Err(PantsError::Parse(format!("unknown ray `{s}`"))),
        }
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Ray::SigmaToInfinity => "sigma_inf",
            Ray::SigmaToZero => "sigma_zero",
            Ray::TauToInfinity => "tau_inf",
            Ray::TauToZero => "tau_zero",
            Ray::BothToInfinity => "both_inf",
        };
        write!(f, "{s}")
    }
}

/// Values of f along a ray and whether they diverge monotonically.
#[derive(Clone, Debug, PartialEq)]
pub struct PropernessReport {
    pub ray: Ray,
    /// (σ₁, τ₁, f) at each step, starting from the base point.
    pub values: Vec<(f64, f64, f64)>,
    /// Last value above 1e6 and strictly increasing over the final 4 samples.
    pub diverges: bool,
}

/// Follow `ray` from `base` for `steps` geometric steps of ratio 10.
pub fn properness_probe<F: ChartFunction + ?Sized>(
    f: &F,
    base: (f64, f64),
    ray: Ray,
    steps: usize,
) -> Result<PropernessReport> {
    if steps < 4 {
        return Err(PantsError::InvalidArgument("properness probe needs steps >= 4".into()));
    }
    let (ks, kt) = ray.factors();
    let (mut s, mut t) = base;
    let mut values = vec![(s, t, f.eval(s, t))];
    for _ in 0..steps {
        s *= ks;
        t *= kt;
        values.push((s, t, f.eval(s, t)));
    }
    let n = values.len();
    let last = values[n - 1].2;
    let increasing = values[n - 4..].windows(2).all(|w| w[1].2 > w[0].2);
    Ok(PropernessReport {
        ray,
        values,
        diverges: last.is_finite() && last > 1e6 && increasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::LengthVector;
    use crate::scalar::Scalar;
    use crate::traces::{CurveId, TraceFunction};

    struct Constant;
    impl ChartFunction for Constant {
        fn eval<S: Scalar>(&self, _: S, _: S) -> S {
            S::cst(7.0)
        }
    }

    #[test]
    fn constant_is_flat() {
        let q = LeafPoint::unipotent(1.0, 1.0).unwrap();
        let m = convexity_probe(&Constant, &q, 1.0, MixedVariant::IaE, 61).unwrap();
        assert!(m.abs() < 1e-10);
        assert!(convexity_probe(&Constant, &q, 1.0, MixedVariant::IaE, 2).is_err());
    }

    #[test]
    fn fig8_is_convex_along_mixed_flow() {
        let f = TraceFunction::new(LengthVector::unipotent(), CurveId::Fig8);
        let q = LeafPoint::unipotent(1.0, 1.0).unwrap();
        assert!(convexity_probe(&f, &q, 1.0, MixedVariant::IaE, 61).unwrap() > 0.0);
    }

    #[test]
    fn power_second_derivative_matches_differences() {
        let f = TraceFunction::new(LengthVector::unipotent(), CurveId::Power(2));
        let q = LeafPoint::unipotent(1.0, 1.0).unwrap();
        for t in [-1.0, 0.0, 0.7] {
            let exact = second_derivative_along(&f, &q, -1.0, MixedVariant::AiE, t);
            let fd = second_difference_at(&f, &q, -1.0, MixedVariant::AiE, t, 1e-3);
            assert!(exact > 0.0);
            assert!(((exact - fd) / exact).abs() < 1e-5);
        }
    }

    #[test]
    fn properness_examples() {
        let f = TraceFunction::new(LengthVector::unipotent(), CurveId::Fig8);
        let r = properness_probe(&f, (1.0, 1.0), Ray::SigmaToZero, 8).unwrap();
        assert!(r.diverges);
        let c = TraceFunction::new(LengthVector::unipotent(), CurveId::Commutator);
        assert!(properness_probe(&c, (1.0, 1.0), Ray::TauToInfinity, 8).unwrap().diverges);
        assert!(properness_probe(&Constant, (1.0, 1.0), Ray::TauToZero, 8).map(|r| !r.diverges).unwrap());
        assert!(properness_probe(&f, (1.0, 1.0), Ray::TauToZero, 3).is_err());
        assert_eq!("both_inf".parse::<Ray>().unwrap(), Ray::BothToInfinity);
    }
}
