//! The quiver Poisson structure on the eight coordinates, log-linear
//! functions (the Hamiltonians 𝓘, 𝓔 and the log-Casimirs), the explicit
//! eruption / hexagon / mixed / coordinate flows, and the symplectic form and
//! Hamiltonian vector fields on a two-dimensional leaf.
//!
//! Conventions: the Hamiltonian flow of `f` is ẋ = {x, f}; on a leaf
//! charted by (σ₁, τ₁) the Hamiltonian field is
//! H_φ = 2σ₁τ₁(−∂φ/∂τ₁, ∂φ/∂σ₁).

use std::fmt;
use std::str::FromStr;

use crate::coords::{leaf_embed_generic, FGCoords, LeafPoint, LengthVector};
use crate::error::{PantsError, Result};
use crate::scalar::{ChartFunction, Scalar};

/// The exchange matrix ε in the basis (σ₁..σ₆, τ₁, τ₂).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EpsilonMatrix(pub [[i32; 8]; 8]);

impl EpsilonMatrix {
    /// ε(i, τ₁) = (−1)^{i+1}, ε(i, τ₂) = −ε(i, τ₁) for the edge coordinates
    /// σᵢ (i = 1..6), antisymmetric, zero elsewhere.
    #[allow(clippy::needless_range_loop)]
    pub fn standard() -> Self {
        let mut e = [[0; 8]; 8];
        for i in 0..6 {
            // 0-based i corresponds to σ_{i+1}, so (−1)^{(i+1)+1} = (−1)^i
            let s = if i % 2 == 0 { 1 } else { -1 };
            e[i][6] = s;
            e[6][i] = -s;
            e[i][7] = -s;
            e[7][i] = s;
        }
        EpsilonMatrix(e)
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..8).all(|i| (0..8).all(|j| self.0[i][j] == -self.0[j][i]))
    }

    /// 2·aᵀ ε b.
    #[allow(clippy::needless_range_loop)]
    pub fn pair(&self, a: &[f64; 8], b: &[f64; 8]) -> f64 {
        let mut acc = 0.0;
        for i in 0..8 {
            for j in 0..8 {
                if self.0[i][j] != 0 {
                    acc += a[i] * f64::from(self.0[i][j]) * b[j];
                }
            }
        }
        2.0 * acc
    }
}

impl Default for EpsilonMatrix {
    fn default() -> Self {
        Self::standard()
    }
}

/// One of the eight coordinate functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coordinate {
    /// σᵢ, i ∈ 1..=6.
    Sigma(usize),
    /// τᵢ, i ∈ 1..=2.
    Tau(usize),
}

impl Coordinate {
    pub fn new_sigma(i: usize) -> Result<Self> {
        if (1..=6).contains(&i) {
            Ok(Coordinate::Sigma(i))
        } else {
            Err(PantsError::InvalidArgument(format!("sigma index {i} outside 1..6")))
        }
    }

    pub fn new_tau(i: usize) -> Result<Self> {
        if (1..=2).contains(&i) {
            Ok(Coordinate::Tau(i))
        } else {
            Err(PantsError::InvalidArgument(format!("tau index {i} outside 1..2")))
        }
    }

    /// The coordinate with 1-based index `k` in (σ₁..σ₆, τ₁, τ₂).
    pub fn from_index(k: usize) -> Result<Self> {
        match k {
            1..=6 => Ok(Coordinate::Sigma(k)),
            7 | 8 => Ok(Coordinate::Tau(k - 6)),
            _ => Err(PantsError::InvalidArgument(format!("coordinate index {k} outside 1..8"))),
        }
    }

    /// 0-based position in the 8-vector.
    pub fn position(self) -> usize {
        match self {
            Coordinate::Sigma(i) => i - 1,
            Coordinate::Tau(i) => 5 + i,
        }
    }

    pub fn value(self, c: &FGCoords) -> f64 {
        c.as_array()[self.position()]
    }
}

impl FromStr for Coordinate {
    type Err = PantsError;

    /// `sigma1`..`sigma6`, `tau1`, `tau2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || PantsError::Parse(format!("unknown coordinate `{s}`"));
        if let Some(i) = s.strip_prefix("sigma") {
            Coordinate::new_sigma(i.parse().map_err(|_| bad())?).map_err(|_| bad())
        } else if let Some(i) = s.strip_prefix("tau") {
            Coordinate::new_tau(i.parse().map_err(|_| bad())?).map_err(|_| bad())
        } else {
            Err(bad())
        }
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coordinate::Sigma(i) => write!(f, "sigma{i}"),
            Coordinate::Tau(i) => write!(f, "tau{i}"),
        }
    }
}

/// {Xᵢ, Xⱼ} = 2εᵢⱼXᵢXⱼ for 1-based indices in (σ₁..σ₆, τ₁, τ₂).
pub fn bracket_coordinates(i: usize, j: usize, c: &FGCoords) -> Result<f64> {
    let a = Coordinate::from_index(i)?.position();
    let b = Coordinate::from_index(j)?.position();
    let x = c.as_array();
    Ok(2.0 * f64::from(EpsilonMatrix::standard().0[a][b]) * x[a] * x[b])
}

/// f = k + Σ cᵢ log Xᵢ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogLinearFunction {
    pub coefficients: [f64; 8],
    pub constant: f64,
}

impl LogLinearFunction {
    pub fn new(coefficients: [f64; 8], constant: f64) -> Self {
        LogLinearFunction {
            coefficients,
            constant,
        }
    }

    /// log of a single coordinate.
    pub fn log_coordinate(x: Coordinate) -> Self {
        let mut c = [0.0; 8];
        c[x.position()] = 1.0;
        Self::new(c, 0.0)
    }

    /// 𝓘 = (log τ₁ − log τ₂)/4, generating the hexagon flow.
    pub fn hamiltonian_i() -> Self {
        Self::new([0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.25, -0.25], 0.0)
    }

    /// 𝓔 = −(1/12) Σ (−1)^{i+1} log σᵢ, generating the eruption flow.
    pub fn hamiltonian_e() -> Self {
        let k = 1.0 / 12.0;
        Self::new([-k, k, -k, k, -k, k, 0.0, 0.0], 0.0)
    }

    /// The logarithms of the six Casimirs, in the order of [`LengthVector`].
    pub fn log_casimirs() -> [Self; 6] {
        let v = |c: [f64; 8]| Self::new(c, 0.0);
        [
            v([1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]),
            v([0.0, -1.0, -1.0, 0.0, 0.0, 0.0, 1.0, 1.0]),
            v([0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0]),
            v([0.0, 0.0, 0.0, -1.0, -1.0, 0.0, 1.0, 1.0]),
            v([0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]),
            v([-1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 1.0, 1.0]),
        ]
    }

    pub fn eval(&self, c: &FGCoords) -> f64 {
        self.eval_generic(&c.as_array())
    }

    pub fn eval_generic<S: Scalar>(&self, x: &[S; 8]) -> S {
        let mut acc = S::cst(self.constant);
        for (ci, xi) in self.coefficients.iter().zip(x.iter()) {
            if *ci != 0.0 {
                acc = acc + xi.ln() * *ci;
            }
        }
        acc
    }

    /// The function restricted to a leaf, as a chart function.
    pub fn on_leaf(self, leaf: LengthVector) -> LeafRestriction {
        LeafRestriction { f: self, leaf }
    }
}

/// {f, g} = 2·cᶠᵀ ε cᵍ, a constant for log-linear functions.
pub fn bracket_log_linear(f: &LogLinearFunction, g: &LogLinearFunction) -> f64 {
    EpsilonMatrix::standard().pair(&f.coefficients, &g.coefficients)
}

/// A log-linear function pulled back to the chart of a leaf.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeafRestriction {
    pub f: LogLinearFunction,
    pub leaf: LengthVector,
}

impl ChartFunction for LeafRestriction {
    fn eval<S: Scalar>(&self, s: S, t: S) -> S {
        self.f.eval_generic(&leaf_embed_generic(&self.leaf, s, t))
    }
}

/// Eruption flow, the flow of 𝓔: (τ₁, τ₂) ↦ (eᵗτ₁, e⁻ᵗτ₂).
pub fn eruption_flow(c: &FGCoords, t: f64) -> FGCoords {
    let e = t.exp();
    let mut r = *c;
    r.tau[0] *= e;
    r.tau[1] /= e;
    r
}

/// Hexagon flow, the flow of 𝓘: σᵢ ↦ e^{(−1)^{i+1}t}σᵢ.
pub fn hexagon_flow(c: &FGCoords, t: f64) -> FGCoords {
    let e = t.exp();
    let mut r = *c;
    for (i, s) in r.sigma.iter_mut().enumerate() {
        if i % 2 == 0 {
            *s *= e;
        } else {
            *s /= e;
        }
    }
    r
}

/// The two ways of combining the hexagon and eruption flows into a mixed flow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MixedVariant {
    /// I ∘ aE: hexagon time t, eruption time a·t.
    IaE,
    /// aI ∘ E: hexagon time a·t, eruption time t.
    AiE,
}

impl MixedVariant {
    pub const ALL: [MixedVariant; 2] = [MixedVariant::IaE, MixedVariant::AiE];

    /// (hexagon time, eruption time).
    pub fn times(self, a: f64, t: f64) -> (f64, f64) {
        match self {
            MixedVariant::IaE => (t, a * t),
            MixedVariant::AiE => (a * t, t),
        }
    }
}

/// Mixed flow: the hexagon and eruption flows for the times given by
/// `variant`, composed (they commute).
pub fn mixed_flow(c: &FGCoords, a: f64, t: f64, variant: MixedVariant) -> FGCoords {
    let (ti, te) = variant.times(a, t);
    eruption_flow(&hexagon_flow(c, ti), te)
}

/// The mixed flow in the chart of a leaf: σ₁ ↦ e^{t_I}σ₁, τ₁ ↦ e^{t_E}τ₁.
pub fn mixed_flow_chart(p: &LeafPoint, a: f64, t: f64, variant: MixedVariant) -> LeafPoint {
    let (ti, te) = variant.times(a, t);
    p.with_point(p.sigma1 * ti.exp(), p.tau1 * te.exp())
}

/// Generic-scalar chart mixed flow, for differentiating along the flow.
pub fn mixed_flow_chart_generic<S: Scalar>(s: S, t: S, a: f64, time: S, variant: MixedVariant) -> (S, S) {
    match variant {
        MixedVariant::IaE => (s * time.exp(), t * (time * a).exp()),
        MixedVariant::AiE => (s * (time * a).exp(), t * time.exp()),
    }
}

/// Flow of a coordinate function, in the closed form
/// Φ_{σᵢ}: τ₁ ↦ e^{(−1)^i tσᵢ}τ₁, τ₂ ↦ e^{(−1)^{i+1} tσᵢ}τ₂;
/// Φ_{τ₁}: σᵢ ↦ e^{(−1)^{i+1} tτ₁}σᵢ; Φ_{τ₂}: σᵢ ↦ e^{(−1)^i tτ₂}σᵢ.
/// Every coordinate other than those listed is fixed, so the flowing
/// coordinate's own value is constant along the flow.
pub fn coordinate_flow(c: &FGCoords, which: Coordinate, t: f64) -> FGCoords {
    let mut r = *c;
    match which {
        Coordinate::Sigma(i) => {
            let x = c.sigma[i - 1];
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            r.tau[0] *= (sign * t * x).exp();
            r.tau[1] *= (-sign * t * x).exp();
        }
        Coordinate::Tau(k) => {
            let x = c.tau[k - 1];
            let base = if k == 1 { 1.0 } else { -1.0 };
            for (i, s) in r.sigma.iter_mut().enumerate() {
                // 0-based i ↔ σ_{i+1}: (−1)^{(i+1)+1} = (−1)^i
                let sign = if i % 2 == 0 { base } else { -base };
                *s *= (sign * t * x).exp();
            }
        }
    }
    r
}

/// ω(v, w) = (v₁w₂ − v₂w₁)/(2σ₁τ₁).
pub fn symplectic_form_leaf(p: &LeafPoint, v: [f64; 2], w: [f64; 2]) -> f64 {
    (v[0] * w[1] - v[1] * w[0]) / (2.0 * p.sigma1 * p.tau1)
}

/// H_φ = 2σ₁τ₁(−∂φ/∂τ₁, ∂φ/∂σ₁), with exact derivatives.
pub fn hamiltonian_vf_leaf<F: ChartFunction + ?Sized>(p: &LeafPoint, f: &F) -> [f64; 2] {
    let d = f.jet(p.sigma1, p.tau1);
    let k = 2.0 * p.sigma1 * p.tau1;
    [-k * d.g[1], k * d.g[0]]
}

/// The same field in log coordinates (u, v) = (log σ₁, log τ₁):
/// u̇ = −2 ∂φ/∂v, v̇ = 2 ∂φ/∂u.
pub fn hamiltonian_vf_log<F: ChartFunction + ?Sized>(f: &F, u: f64, v: f64) -> [f64; 2] {
    let d = f.log_jet(u, v);
    [-2.0 * d.g[1], 2.0 * d.g[0]]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic() -> FGCoords {
        FGCoords::new([1.3, 0.4, 2.2, 0.9, 3.1, 0.7], [1.7, 0.35]).unwrap()
    }

    #[test]
    fn epsilon_shape() {
        let e = EpsilonMatrix::standard();
        assert!(e.is_antisymmetric());
        assert_eq!(e.0[0][6], 1);
        assert_eq!(e.0[6][1], 1);
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(e.0[i][j], 0);
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let c = generic();
        assert_eq!(bracket_coordinates(1, 2, &c).unwrap(), 0.0);
        let o = FGCoords::ones();
        assert_eq!(bracket_coordinates(1, 7, &o).unwrap(), 2.0);
        assert_eq!(bracket_coordinates(7, 2, &o).unwrap(), 2.0);
        assert!(bracket_coordinates(0, 2, &o).is_err());
        assert!(bracket_coordinates(1, 9, &o).is_err());
    }

    #[test]
    fn hamiltonian_brackets() {
        let i = LogLinearFunction::hamiltonian_i();
        let e = LogLinearFunction::hamiltonian_e();
        assert_eq!(bracket_log_linear(&i, &e), 0.5);
        assert_eq!(bracket_log_linear(&e, &i), -0.5);
        assert_eq!(bracket_log_linear(&i, &i), 0.0);
        for l in LogLinearFunction::log_casimirs() {
            for k in 1..=8 {
                let g = LogLinearFunction::log_coordinate(Coordinate::from_index(k).unwrap());
                assert_eq!(bracket_log_linear(&l, &g), 0.0);
            }
        }
    }

    #[test]
    fn log_casimirs_match_casimirs() {
        let c = generic();
        let l = crate::coords::casimirs(&c);
        for (f, v) in LogLinearFunction::log_casimirs().iter().zip(l.0) {
            assert!((f.eval(&c) - v.ln()).abs() < 1e-14);
        }
    }

    #[test]
    fn flows_are_hamiltonian_for_i_and_e() {
        // ẋ = {x, f}: the coordinate velocities from the bracket match the
        // derivative of the closed-form flow at t = 0
        let c = generic();
        let x = c.as_array();
        let eps = EpsilonMatrix::standard();
        for (f, flow) in [
            (LogLinearFunction::hamiltonian_i(), hexagon_flow as fn(&FGCoords, f64) -> FGCoords),
            (LogLinearFunction::hamiltonian_e(), eruption_flow),
        ] {
            let h = 1e-6;
            let (a, b) = (flow(&c, h).as_array(), flow(&c, -h).as_array());
            for k in 0..8 {
                let mut ek = [0.0; 8];
                ek[k] = 1.0;
                // {X_k, f} = X_k · 2 e_kᵀ ε c_f
                let vel = x[k] * eps.pair(&ek, &f.coefficients);
                let fd = (a[k] - b[k]) / (2.0 * h);
                assert!((vel - fd).abs() < 1e-8 * (1.0 + vel.abs()), "{k}: {vel} vs {fd}");
            }
        }
    }

    #[test]
    fn flow_examples_and_laws() {
        let o = FGCoords::ones();
        let r = eruption_flow(&o, 2f64.ln());
        assert!((r.tau[0] - 2.0).abs() < 1e-15 && (r.tau[1] - 0.5).abs() < 1e-15);
        assert_eq!(r.sigma, [1.0; 6]);
        assert_eq!(eruption_flow(&o, 0.0), o);
        let c = generic();
        assert_eq!(
            hexagon_flow(&eruption_flow(&c, 0.7), -1.1),
            eruption_flow(&hexagon_flow(&c, -1.1), 0.7)
        );
        let l0 = crate::coords::casimirs(&c);
        for d in [
            eruption_flow(&c, 1.3),
            hexagon_flow(&c, -2.0),
            mixed_flow(&c, 0.3, 1.2, MixedVariant::AiE),
            coordinate_flow(&c, Coordinate::Sigma(3), 0.8),
            coordinate_flow(&c, Coordinate::Tau(2), -0.4),
        ] {
            assert!(crate::coords::casimirs(&d).max_rel_diff(&l0) < 1e-14);
        }
        let a = hexagon_flow(&hexagon_flow(&c, 0.4), 0.9);
        let b = hexagon_flow(&c, 1.3);
        assert!(a.as_array().iter().zip(b.as_array()).all(|(x, y)| ((x - y) / y).abs() < 1e-15));
    }

    #[test]
    fn mixed_flow_examples() {
        let o = FGCoords::ones();
        assert_eq!(mixed_flow(&o, 0.0, 0.8, MixedVariant::IaE), hexagon_flow(&o, 0.8));
        let p = LeafPoint::unipotent(1.0, 1.0).unwrap();
        let q = mixed_flow_chart(&p, 0.5, 2.0, MixedVariant::AiE);
        assert!((q.sigma1 - 1f64.exp()).abs() < 1e-15);
        assert!((q.tau1 - 2f64.exp()).abs() < 1e-14);
        let c = mixed_flow(&crate::coords::leaf_embed(&p), 0.5, 2.0, MixedVariant::AiE);
        assert!((c.sigma[0] - q.sigma1).abs() < 1e-15 && (c.tau[0] - q.tau1).abs() < 1e-15);
    }

    #[test]
    fn coordinate_flow_examples() {
        let o = FGCoords::ones();
        let r = coordinate_flow(&o, Coordinate::Sigma(2), 1.0);
        assert!((r.tau[0] - 1f64.exp()).abs() < 1e-15);
        assert!((r.tau[1] - (-1f64).exp()).abs() < 1e-15);
        assert_eq!(coordinate_flow(&o, Coordinate::Tau(1), 0.0), o);
        let mut c = o;
        c.tau[0] = 2.0;
        let r = coordinate_flow(&c, Coordinate::Tau(1), 1.0);
        assert!((r.sigma[0] - 2f64.exp()).abs() < 1e-14);
        assert!((r.sigma[1] - (-2f64).exp()).abs() < 1e-15);
        let r = coordinate_flow(&c, Coordinate::Tau(2), 1.0);
        assert!((r.sigma[0] - (-1f64).exp()).abs() < 1e-15);
        assert_eq!("tau2".parse::<Coordinate>().unwrap(), Coordinate::Tau(2));
        assert!("sigma7".parse::<Coordinate>().is_err());
    }

    #[test]
    fn symplectic_form_examples() {
        let p = LeafPoint::unipotent(2.0, 0.5).unwrap();
        assert_eq!(symplectic_form_leaf(&p, [1.0, 3.0], [1.0, 3.0]), 0.0);
        assert_eq!(symplectic_form_leaf(&p, [1.0, 0.0], [0.0, 1.0]), 0.5);
    }

    #[test]
    fn hamiltonian_fields_of_i_and_e_pair_to_half() {
        let leaf = LengthVector([0.4, 2.5, 1.7, 0.3, 6.0, 0.8]);
        let fi = LogLinearFunction::hamiltonian_i().on_leaf(leaf);
        let fe = LogLinearFunction::hamiltonian_e().on_leaf(leaf);
        for (s, t) in [(0.3, 2.0), (1.0, 1.0), (5.0, 0.1)] {
            let p = LeafPoint::new(leaf, s, t).unwrap();
            let hi = hamiltonian_vf_leaf(&p, &fi);
            let he = hamiltonian_vf_leaf(&p, &fe);
            assert!((symplectic_form_leaf(&p, hi, he) - 0.5).abs() < 1e-14);
            // each field is tangent to one chart axis
            assert!(hi[1].abs() < 1e-14 && he[0].abs() < 1e-14);
        }
    }

    #[test]
    fn constant_function_has_zero_field() {
        struct K;
        impl ChartFunction for K {
            fn eval<S: Scalar>(&self, _: S, _: S) -> S {
                S::cst(4.0)
            }
        }
        let p = LeafPoint::unipotent(2.0, 3.0).unwrap();
        assert_eq!(hamiltonian_vf_leaf(&p, &K), [0.0, 0.0]);
    }

    #[test]
    fn field_is_tangent_to_level_sets() {
        use crate::traces::{CurveId, TraceFunction};
        let f = TraceFunction::new(LengthVector([3.0, 1.0 / 3.0, 6.0, 1.0 / 6.0, 8.0, 1.0 / 8.0]), CurveId::Fig8);
        let p = LeafPoint::new(f.leaf, 2.0, 1.0).unwrap();
        let h = hamiltonian_vf_leaf(&p, &f);
        assert!((h[0] + 137.5).abs() < 1e-10 && (h[1] - 10.0 / 3.0).abs() < 1e-12);
        let d = f.jet(2.0, 1.0);
        assert!((d.g[0] * h[0] + d.g[1] * h[1]).abs() < 1e-10 * d.g[0].hypot(d.g[1]));
        let lv = hamiltonian_vf_log(&f, 2f64.ln(), 0.0);
        assert!((lv[0] * 2.0 - h[0]).abs() < 1e-10 && (lv[1] - h[1]).abs() < 1e-12);
    }
}
