//! Trace functions on symplectic leaves.
//!
//! Two independent evaluation paths are provided for every curve:
//!
//! * closed forms — rational expressions in the chart (σ₁, τ₁) whose
//!   coefficients depend on the cube roots of the Casimirs;
//! * the matrix oracle — the trace of the SL(3,ℝ) holonomy of a word,
//!   built from products of elementary matrices.
//!
//! Both are generic over [`Scalar`], so either can drive the Hamiltonian
//! dynamics through dual-number differentiation.

use std::fmt;
use std::str::FromStr;

use crate::coords::{leaf_embed_generic, LeafPoint, LengthVector};
use crate::error::{PantsError, Result};
use crate::holonomy::{holonomy_word_generic, peripheral_products, Generator, Word};
use crate::scalar::{ChartFunction, Scalar};

/// Tolerance used to decide that a leaf is the unipotent one.
pub const UNIPOTENT_TOL: f64 = 1e-12;

/// The curves (and the web) whose trace functions are studied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveId {
    /// δ = αγ⁻¹.
    Fig8,
    /// δ⁻¹ = γα⁻¹.
    Fig8Inv,
    /// tr δ + tr δ⁻¹.
    Fig8Sym,
    /// [α, γ] = αγα⁻¹γ⁻¹.
    Commutator,
    /// α^k γ⁻¹, k ≥ 1.
    Power(u32),
    /// The Θ-web, tr α · tr γ − tr αγ⁻¹.
    ThetaWeb,
    /// An arbitrary word (matrix oracle only).
    Word(Word),
}

impl CurveId {
    /// The word realizing the curve, for curves that are a single word.
    pub fn word(&self) -> Option<Word> {
        use Generator::*;
        match self {
            CurveId::Fig8 => Some(Word(vec![(Alpha, 1), (Gamma, -1)])),
            CurveId::Fig8Inv => Some(Word(vec![(Gamma, 1), (Alpha, -1)])),
            CurveId::Commutator => Some(Word(vec![(Alpha, 1), (Gamma, 1), (Alpha, -1), (Gamma, -1)])),
            CurveId::Power(k) => Some(Word(vec![(Alpha, *k as i32), (Gamma, -1)])),
            CurveId::Word(w) => Some(w.clone()),
            CurveId::Fig8Sym | CurveId::ThetaWeb => None,
        }
    }

    /// Whether a closed form is available on the given leaf.
    pub fn has_closed_form(&self, leaf: &LengthVector) -> bool {
        match self {
            CurveId::Fig8 | CurveId::Fig8Inv | CurveId::Fig8Sym | CurveId::ThetaWeb => true,
            CurveId::Commutator | CurveId::Power(_) => leaf.is_unipotent(UNIPOTENT_TOL),
            CurveId::Word(_) => false,
        }
    }

    /// Whether the curve's trace is proper and strictly convex along mixed
    /// flows on the leaf, so that it has a unique minimum there.
    pub fn has_unique_minimum(&self, leaf: &LengthVector) -> bool {
        match self {
            CurveId::Fig8 | CurveId::Fig8Inv | CurveId::Fig8Sym => true,
            CurveId::Commutator | CurveId::Power(_) => leaf.is_unipotent(UNIPOTENT_TOL),
            CurveId::ThetaWeb | CurveId::Word(_) => false,
        }
    }
}

impl FromStr for CurveId {
    type Err = PantsError;

    /// Tags: `fig8`, `fig8_inv`, `fig8_sym`, `commutator`, `power:<k>`,
    /// `theta` (or `theta_web`), `word:<word>`.
    fn from_str(s: &str) -> Result<CurveId> {
        let s = s.trim();
        match s {
            "fig8" => return Ok(CurveId::Fig8),
            "fig8_inv" | "fig8inv" => return Ok(CurveId::Fig8Inv),
            "fig8_sym" | "fig8sym" => return Ok(CurveId::Fig8Sym),
            "commutator" => return Ok(CurveId::Commutator),
            "theta" | "theta_web" => return Ok(CurveId::ThetaWeb),
            _ => {}
        }
        if let Some(k) = s.strip_prefix("power:") {
            let k: u32 = k
                .parse()
                .map_err(|_| PantsError::Parse(format!("bad power in curve tag `{s}`")))?;
            if k == 0 {
                return Err(PantsError::Parse("power requires k >= 1".into()));
            }
            return Ok(CurveId::Power(k));
        }
        if let Some(w) = s.strip_prefix("word:") {
            return Ok(CurveId::Word(w.parse()?));
        }
        Err(PantsError::Parse(format!("unknown curve tag `{s}`")))
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveId::Fig8 => write!(f, "fig8"),
            CurveId::Fig8Inv => write!(f, "fig8_inv"),
            CurveId::Fig8Sym => write!(f, "fig8_sym"),
            CurveId::Commutator => write!(f, "commutator"),
            CurveId::Power(k) => write!(f, "power:{k}"),
            CurveId::ThetaWeb => write!(f, "theta_web"),
            CurveId::Word(w) => write!(f, "word:{w}"),
        }
    }
}

// ═══════════════════════════════════════════════════════════════════
// Closed forms
// ═══════════════════════════════════════════════════════════════════

/// Evaluate Σ c[i][j] sⁱ tʲ for i ≤ 3, j ≤ 2.
fn poly32<S: Scalar>(c: &[[f64; 3]; 4], s: S, t: S) -> S {
    let mut acc = S::cst(0.0);
    for i in (0..4).rev() {
        let row = (t * c[i][2] + c[i][1]) * t + c[i][0];
        acc = acc * s + row;
    }
    acc
}

/// Numerator coefficients and denominator constant of tr(αγ⁻¹) on the leaf
/// `l`: the trace is Σ c[i][j] σ₁ⁱ τ₁ʲ / (d · σ₁ τ₁).
pub fn fig8_coefficients(l: &LengthVector) -> ([[f64; 3]; 4], f64) {
    let [ra1, ra2, rb1, rb2, rg1, rg2] = l.cube_roots();
    let mut c = [[0.0; 3]; 4];
    c[0][0] = ra1.powi(5) * ra2.powi(3) * rb2.powi(5) * rg1.powi(2) * rg2.powi(2);
    c[0][1] = ra1.powi(5)
        * ra2
        * rb2.powi(3)
        * rg1.powi(2)
        * (ra1 * rb1 * rg1 + ra2.powi(2) * rb2.powi(2) * rg2.powi(2));
    c[0][2] = ra1.powi(6) * ra2 * rb1 * rb2.powi(3) * rg1.powi(3);
    c[1][0] = ra1.powi(3)
        * ra2.powi(2)
        * rb2.powi(3)
        * rg1
        * rg2.powi(2)
        * (ra1.powi(2) * ra2 * rb2.powi(2) * rg1
            + ra1 * rb1.powi(2) * rb2 * rg2.powi(2)
            + ra2.powi(2) * rb1 * rg1.powi(2) * rg2);
    c[1][1] = ra1.powi(3)
        * ra2
        * rb1
        * rb2.powi(3)
        * (ra1.powi(3) + ra2.powi(3) + 1.0)
        * (rg1.powi(3) * rg2.powi(3) + rg1.powi(3) + rg2.powi(3));
    c[1][2] = ra1.powi(3)
        * rb2
        * rg1
        * (ra1.powi(2) * rb2 * rg1 * rg2.powi(2)
            + ra1 * ra2.powi(2) * rb1.powi(2) * rg2
            + ra2 * rb1 * rb2.powi(2) * rg1.powi(2));
    c[2][0] = ra1.powi(2)
        * ra2.powi(2)
        * rb1
        * rb2.powi(2)
        * rg1
        * rg2.powi(3)
        * (ra1.powi(2) * rb1 * rb2.powi(2) * rg2
            + ra1 * ra2.powi(2) * rb2 * rg1.powi(2)
            + ra2 * rb1.powi(2) * rg1 * rg2.powi(2));
    c[2][1] = ra1
        * ra2
        * rb2
        * rg2.powi(2)
        * (ra1.powi(3) * ra2 * rb1.powi(2) * rg1 * rg2.powi(2)
            + ra1.powi(2) * rb1 * rb2.powi(2) * rg1.powi(3) * rg2
            + ra1.powi(2) * rb1 * rb2.powi(2) * rg2
            + ra1 * ra2.powi(2) * rb1.powi(3) * rb2 * rg1.powi(2)
            + ra1 * ra2.powi(2) * rb2 * rg1.powi(2)
            + ra2 * rb1.powi(2) * rg1 * rg2.powi(2));
    c[2][2] = ra1
        * rg2
        * (ra1.powi(2) * ra2 * rb1 * rg2.powi(2)
            + ra1 * rb2.powi(2) * rg1.powi(2) * rg2
            + ra2.powi(2) * rb1.powi(2) * rb2 * rg1);
    c[3][0] = ra1.powi(2) * ra2.powi(3) * rb1.powi(3) * rb2.powi(2) * rg1.powi(2) * rg2.powi(5);
    c[3][1] = 2.0 * ra1 * ra2.powi(2) * rb1.powi(2) * rb2 * rg1 * rg2.powi(4);
    c[3][2] = ra2 * rb1 * rg2.powi(3);
    let d = ra1.powi(4) * ra2.powi(2) * rb1 * rb2.powi(3) * rg1.powi(2) * rg2.powi(2);
    (c, d)
}

/// Numerator coefficients and denominator constant of tr(γα⁻¹) on the leaf
/// `l`: the trace is Σ c[i][j] σ₁ⁱ τ₁ʲ / (d · σ₁² τ₁).
pub fn fig8_inv_coefficients(l: &LengthVector) -> ([[f64; 3]; 4], f64) {
    let [ra1, ra2, rb1, rb2, rg1, rg2] = l.cube_roots();
    let mut c = [[0.0; 3]; 4];
    let k0 = ra1.powi(6) * ra2.powi(2) * rb1 * rb2.powi(4) * rg1.powi(3);
    c[0][0] = k0;
    c[0][1] = 2.0 * k0;
    c[0][2] = k0;
    c[1][0] = ra1.powi(4)
        * ra2
        * rb1
        * rb2.powi(2)
        * rg1.powi(2)
        * (ra1.powi(2) * ra2 * rb2.powi(2) * rg1
            + ra1 * rb1.powi(2) * rb2 * rg2.powi(2)
            + ra2.powi(2) * rb1 * rg1.powi(2) * rg2);
    c[1][1] = ra1.powi(3)
        * ra2
        * rb2.powi(2)
        * rg1
        * (ra1.powi(3) * ra2 * rb1 * rb2.powi(2) * rg1.powi(2)
            + ra1.powi(2) * rb1.powi(3) * rb2 * rg1 * rg2.powi(2)
            + ra1.powi(2) * rb2 * rg1 * rg2.powi(2)
            + ra1 * ra2.powi(2) * rb1.powi(2) * rg1.powi(3) * rg2
            + ra1 * ra2.powi(2) * rb1.powi(2) * rg2
            + ra2 * rb1 * rb2.powi(2) * rg1.powi(2));
    c[1][2] = ra1.powi(3)
        * ra2
        * rb2.powi(2)
        * rg1
        * (ra1.powi(2) * rb2 * rg1 * rg2.powi(2)
            + ra1 * ra2.powi(2) * rb1.powi(2) * rg2
            + ra2 * rb1 * rb2.powi(2) * rg1.powi(2));
    c[2][0] = ra1.powi(3)
        * ra2
        * rb1.powi(2)
        * rb2
        * rg1.powi(2)
        * rg2
        * (ra1.powi(2) * rb1 * rb2.powi(2) * rg2
            + ra1 * ra2.powi(2) * rb2 * rg1.powi(2)
            + ra2 * rb1.powi(2) * rg1 * rg2.powi(2));
    c[2][1] = ra1
        * rb1.powi(2)
        * rb2.powi(2)
        * rg1
        * rg2
        * (rg1.powi(3) + rg2.powi(3) + 1.0)
        * (ra1.powi(3) * ra2.powi(3) + ra1.powi(3) + ra2.powi(3));
    c[2][2] = ra1
        * ra2
        * rb2
        * rg2
        * (ra1.powi(2) * ra2 * rb1 * rg2.powi(2)
            + ra1 * rb2.powi(2) * rg1.powi(2) * rg2
            + ra2.powi(2) * rb1.powi(2) * rb2 * rg1);
    c[3][0] = ra1.powi(3) * ra2.powi(2) * rb1.powi(4) * rb2 * rg1.powi(3) * rg2.powi(3);
    c[3][1] = ra1
        * ra2
        * rb1.powi(2)
        * rg1
        * rg2.powi(2)
        * (ra1 * rb1 * rg1 + ra2.powi(2) * rb2.powi(2) * rg2.powi(2));
    c[3][2] = ra2.powi(2) * rb1 * rb2 * rg2.powi(3);
    let d = ra1.powi(3) * ra2.powi(2) * rb1.powi(2) * rb2.powi(2) * rg1.powi(2) * rg2.powi(2);
    (c, d)
}

/// tr(αγ⁻¹) on the leaf `l` at (σ₁, τ₁).
pub fn fig8_closed<S: Scalar>(l: &LengthVector, s: S, t: S) -> S {
    let (c, d) = fig8_coefficients(l);
    poly32(&c, s, t) / (s * t * d)
}

/// tr(γα⁻¹) on the leaf `l` at (σ₁, τ₁).
pub fn fig8_inv_closed<S: Scalar>(l: &LengthVector, s: S, t: S) -> S {
    let (c, d) = fig8_inv_coefficients(l);
    poly32(&c, s, t) / (s * s * t * d)
}

/// tr(αγ⁻¹) on the unipotent leaf:
/// [σ³(τ+1)² + 3σ²(τ+1)² + 3σ(τ²+3τ+1) + (τ+1)²] / (στ).
pub fn fig8_unipotent<S: Scalar>(s: S, t: S) -> S {
    let tp = t + 1.0;
    let tp2 = tp * tp;
    (s.powi(3) * tp2 + s * s * tp2 * 3.0 + s * (t * t + t * 3.0 + 1.0) * 3.0 + tp2) / (s * t)
}

/// tr[α, γ] on the unipotent leaf.
pub fn commutator_unipotent<S: Scalar>(s: S, t: S) -> S {
    let tp = t + 1.0;
    let tp2 = tp * tp;
    let tp3 = tp2 * tp;
    let num = s.powi(6) * tp3
        + s.powi(5) * tp2 * (t * 2.0 + 1.0) * 3.0
        + s.powi(4) * tp2 * (t * 5.0 + 1.0) * 3.0
        + s.powi(3) * (t.powi(3) * 20.0 + t * t * 42.0 + t * 27.0 + 2.0)
        + s * s * tp2 * (t * 5.0 + 1.0) * 3.0
        + s * tp2 * (t * 2.0 + 1.0) * 3.0
        + tp3;
    num / (s.powi(3) * t)
}

/// tr(α^k γ⁻¹) on the unipotent leaf:
/// [k²(σ+1)³(τ+1)² + k(σ+1)³(τ+1)² + 6στ] / (2στ).
pub fn power_unipotent<S: Scalar>(k: u32, s: S, t: S) -> S {
    let k = f64::from(k);
    let sp = s + 1.0;
    let tp = t + 1.0;
    let m = sp.powi(3) * tp * tp;
    (m * (k * k + k) + s * t * 6.0) / (s * t * 2.0)
}

/// tr ρ(α) · tr ρ(γ), constant on each leaf. The peripheral holonomies are
/// triangular with diagonals determined by the Casimirs.
pub fn theta_constant(l: &LengthVector) -> f64 {
    let [a1, a2, _, _, g1, g2] = l.0;
    let c = f64::cbrt;
    let tr_a = c(a2 * a2 / a1) + c(1.0 / (a1 * a2)) + c(a1 * a1 / a2);
    let tr_c = c(g1 * g1 / g2) + c(1.0 / (g1 * g2)) + c(g2 * g2 / g1);
    tr_a * tr_c
}

/// Closed-form trace of `curve` at (σ₁, τ₁) on the leaf `l`.
pub fn closed_form_generic<S: Scalar>(l: &LengthVector, curve: &CurveId, s: S, t: S) -> Result<S> {
    let unavailable = || PantsError::ClosedFormUnavailable {
        curve: curve.to_string(),
    };
    match curve {
        CurveId::Fig8 => Ok(fig8_closed(l, s, t)),
        CurveId::Fig8Inv => Ok(fig8_inv_closed(l, s, t)),
        CurveId::Fig8Sym => Ok(fig8_closed(l, s, t) + fig8_inv_closed(l, s, t)),
        CurveId::ThetaWeb => Ok(-fig8_closed(l, s, t) + theta_constant(l)),
        CurveId::Commutator if l.is_unipotent(UNIPOTENT_TOL) => Ok(commutator_unipotent(s, t)),
        CurveId::Power(k) if l.is_unipotent(UNIPOTENT_TOL) => Ok(power_unipotent(*k, s, t)),
        _ => Err(unavailable()),
    }
}

/// Matrix-oracle trace of `curve` at (σ₁, τ₁) on the leaf `l`.
pub fn oracle_generic<S: Scalar>(l: &LengthVector, curve: &CurveId, s: S, t: S) -> S {
    let x = leaf_embed_generic(l, s, t);
    match curve {
        CurveId::Fig8Sym => {
            holonomy_word_generic(&x, &CurveId::Fig8.word().unwrap_or_default()).trace()
                + holonomy_word_generic(&x, &CurveId::Fig8Inv.word().unwrap_or_default()).trace()
        }
        CurveId::ThetaWeb => {
            let [a, _, c] = peripheral_products(&x);
            let ac = holonomy_word_generic(&x, &CurveId::Fig8.word().unwrap_or_default());
            a.trace() * c.trace() - ac.trace()
        }
        other => holonomy_word_generic(&x, &other.word().unwrap_or_default()).trace(),
    }
}

/// Closed-form trace at a leaf point.
pub fn trace_closed_form(p: &LeafPoint, curve: &CurveId) -> Result<f64> {
    closed_form_generic(&p.leaf, curve, p.sigma1, p.tau1)
}

/// Matrix-oracle trace at a leaf point.
pub fn trace_matrix_oracle(p: &LeafPoint, curve: &CurveId) -> f64 {
    oracle_generic(&p.leaf, curve, p.sigma1, p.tau1)
}

/// Which evaluation path a [`TraceFunction`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Closed form when available on the leaf, matrix oracle otherwise.
    Auto,
    ClosedForm,
    Oracle,
}

/// A trace function restricted to a leaf, as a function of the chart.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceFunction {
    pub leaf: LengthVector,
    pub curve: CurveId,
    pub method: Method,
}

impl TraceFunction {
    pub fn new(leaf: LengthVector, curve: CurveId) -> Self {
        TraceFunction {
            leaf,
            curve,
            method: Method::Auto,
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    fn use_closed_form(&self) -> bool {
        match self.method {
            Method::Auto => self.curve.has_closed_form(&self.leaf),
            Method::ClosedForm => true,
            Method::Oracle => false,
        }
    }

    pub fn value(&self, s: f64, t: f64) -> f64 {
        self.eval(s, t)
    }
}

impl ChartFunction for TraceFunction {
    fn eval<S: Scalar>(&self, s: S, t: S) -> S {
        if self.use_closed_form() {
            if let Ok(v) = closed_form_generic(&self.leaf, &self.curve, s, t) {
                return v;
            }
        }
        oracle_generic(&self.leaf, &self.curve, s, t)
    }
}
