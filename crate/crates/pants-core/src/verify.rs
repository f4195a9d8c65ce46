//! Numerical verification suites: the group relation, eigenvalue-ratio
//! Casimirs, closed-form/oracle equivalence, reference values, fixed points,
//! the Fuchsian flow equations, periodicity, convexity, the conjugating-matrix
//! theorems, Poisson structure constants and flag invariants.
//!
//! Every suite is deterministic given its seed: sample `i` draws from its own
//! ChaCha stream, so results do not depend on scheduling.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coords::{casimirs, fuchsian_leaf, fuchsian_point, leaf_embed, FGCoords, LeafPoint, LengthVector};
use crate::dynamics::{
    convexity_probe, detect_period_fn, find_minimum_from, second_derivative_along, second_difference_at,
    IntegratorConfig, DEFAULT_PERIOD_T_MAX,
};
use crate::error::{PantsError, Result};
use crate::flags::{cr1, cr2, standard_configuration, triple_ratio, Flag, ProjLine, ProjPoint};
use crate::holonomy::{eigenvalue_ratio_report_with, peripheral_holonomies, peripheral_products};
use crate::output::fmt17;
use crate::poisson::{
    bracket_log_linear, eruption_flow, hamiltonian_vf_leaf, hexagon_flow, Coordinate, LogLinearFunction,
    MixedVariant,
};
use crate::proj_linalg::{projective_distance, Mat3};
use crate::scalar::ChartFunction;
use crate::traces::{closed_form_generic, oracle_generic, CurveId, TraceFunction, UNIPOTENT_TOL};

/// Default tolerance of the conjugator checks.
pub const CONJUGATOR_TOL: f64 = 1e-9;

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub worst_error: f64,
    pub seed: u64,
}

impl Report {
    fn from_checks(suite: &str, seed: u64, checks: &[(bool, f64)]) -> Report {
        let passed = checks.iter().filter(|c| c.0).count();
        let worst_error = checks.iter().map(|c| c.1).fold(0.0, |w: f64, e| if e.is_nan() { f64::INFINITY } else { w.max(e) });
        Report {
            suite: suite.to_string(),
            passed,
            failed: checks.len() - passed,
            worst_error,
            seed,
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        format!(
            "{{\"suite\": \"{}\", \"passed\": {}, \"failed\": {}, \"worst_error\": {}, \"seed\": {}}}",
            self.suite,
            self.passed,
            self.failed,
            fmt17(self.worst_error),
            self.seed
        )
    }
}

/// The reports of a full run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SuiteReport {
    pub reports: Vec<Report>,
}

impl SuiteReport {
    pub fn failed(&self) -> usize {
        self.reports.iter().map(|r| r.failed).sum()
    }

    pub fn passed(&self) -> usize {
        self.reports.iter().map(|r| r.passed).sum()
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0
    }

    pub fn to_json(&self) -> String {
        let items: Vec<String> = self.reports.iter().map(|r| format!("  {}", r.to_json())).collect();
        format!("[\n{}\n]", items.join(",\n"))
    }
}

/// The available suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Relation,
    EigenRatios,
    ClosedForms,
    ReferenceValues,
    FixedPoints,
    FuchsianOde,
    Periods,
    Convexity,
    Conjugators,
    Structure,
    Flags,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Relation,
        Suite::EigenRatios,
        Suite::ClosedForms,
        Suite::ReferenceValues,
        Suite::FixedPoints,
        Suite::FuchsianOde,
        Suite::Periods,
        Suite::Convexity,
        Suite::Conjugators,
        Suite::Structure,
        Suite::Flags,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relation => "relation",
            Suite::EigenRatios => "eigen_ratios",
            Suite::ClosedForms => "closed_forms",
            Suite::ReferenceValues => "reference_values",
            Suite::FixedPoints => "fixed_points",
            Suite::FuchsianOde => "fuchsian_ode",
            Suite::Periods => "periods",
            Suite::Convexity => "convexity",
            Suite::Conjugators => "conjugators",
            Suite::Structure => "structure",
            Suite::Flags => "flags",
        }
    }

    /// Run the suite with `samples` random samples (suites with a fixed
    /// grid ignore the count; periods and fixed points cap it at 20 and 5).
    pub fn run(self, seed: u64, samples: usize) -> Report {
        match self {
            Suite::Relation => relation_suite(seed, samples),
            Suite::EigenRatios => eigen_ratio_suite(seed, samples),
            Suite::ClosedForms => closed_form_suite(seed, samples),
            Suite::ReferenceValues => reference_values_suite(seed),
            Suite::FixedPoints => fixed_point_suite(seed, samples.min(5)),
            Suite::FuchsianOde => verify_fuchsian_ode_display(seed, samples),
            Suite::Periods => period_suite(seed, samples.min(20)),
            Suite::Convexity => convexity_suite(seed, samples),
            Suite::Conjugators => conjugator_suite(seed),
            Suite::Structure => structure_suite(seed, samples),
            Suite::Flags => flag_suite(seed, samples),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for Suite {
    type Err = PantsError;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| PantsError::Parse(format!("unknown suite `{s}`")))
    }
}

/// Run every suite. `samples == 0` gives an empty report.
pub fn run_suite(seed: u64, samples: usize) -> SuiteReport {
    if samples == 0 {
        return SuiteReport::default();
    }
    SuiteReport {
        reports: Suite::ALL.iter().map(|s| s.run(seed, samples)).collect(),
    }
}

// ───────────────────────────── sampling ─────────────────────────────

/// The random stream of sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index as u64);
    r
}

/// Log-uniform sample in [lo, hi].
pub fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo.ln()..=hi.ln()).exp()
}

/// Eight log-uniform coordinates in [0.1, 10].
pub fn random_coords(rng: &mut ChaCha8Rng) -> FGCoords {
    let mut x = [0.0; 8];
    for v in &mut x {
        *v = log_uniform(rng, 0.1, 10.0);
    }
    FGCoords::from_array(x)
}

/// Six log-uniform Casimirs in [lo, hi].
pub fn random_leaf(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> LengthVector {
    let mut l = [0.0; 6];
    for v in &mut l {
        *v = log_uniform(rng, lo, hi);
    }
    LengthVector(l)
}

fn par_checks<F>(samples: usize, f: F) -> Vec<(bool, f64)>
where
    F: Fn(usize) -> Vec<(bool, f64)> + Sync,
{
    let mut out: Vec<(usize, Vec<(bool, f64)>)> = (0..samples).into_par_iter().map(|i| (i, f(i))).collect();
    out.sort_by_key(|x| x.0);
    out.into_iter().flat_map(|x| x.1).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }
}

// ───────────────────────────── suites ─────────────────────────────

/// A·B·C projectively equals the identity (closed forms and products).
pub fn relation_suite(seed: u64, samples: usize) -> Report {
    let checks = par_checks(samples, |i| {
        let c = random_coords(&mut sample_rng(seed, i));
        let [a, b, g] = peripheral_holonomies(&c);
        let [pa, pb, pg] = peripheral_products(&c.as_array());
        let e1 = projective_distance(&(a * b * g), &Mat3::identity()).unwrap_or(f64::INFINITY);
        let e2 = projective_distance(&(pa * pb * pg), &Mat3::identity()).unwrap_or(f64::INFINITY);
        let e = e1.max(e2);
        vec![(e <= 1e-9, e)]
    });
    Report::from_checks("relation", seed, &checks)
}

/// Pairwise eigenvalue ratios of each peripheral matrix contain the two
/// predicted Casimirs.
pub fn eigen_ratio_suite(seed: u64, samples: usize) -> Report {
    eigen_ratio_suite_with(seed, samples, &casimirs)
}

/// As [`eigen_ratio_suite`] with the Casimir formula injected (mutation hook).
pub fn eigen_ratio_suite_with(
    seed: u64,
    samples: usize,
    casimir_fn: &(dyn Fn(&FGCoords) -> LengthVector + Sync),
) -> Report {
    let checks = par_checks(samples, |i| {
        let c = random_coords(&mut sample_rng(seed, i));
        match eigenvalue_ratio_report_with(&c, &casimir_fn(&c)) {
            Ok(rep) => rep
                .iter()
                .map(|m| {
                    let e = m.errors[0].max(m.errors[1]);
                    (e <= 1e-8, e)
                })
                .collect(),
            Err(_) => vec![(false, f64::INFINITY)],
        }
    });
    Report::from_checks("eigen_ratios", seed, &checks)
}

/// Closed form of a curve at a chart point, as used by the equivalence suite.
pub type ClosedFormFn = dyn Fn(&LengthVector, &CurveId, f64, f64) -> Result<f64> + Sync;

fn library_closed_form(l: &LengthVector, c: &CurveId, s: f64, t: f64) -> Result<f64> {
    closed_form_generic(l, c, s, t)
}

/// Closed forms agree with the matrix oracle: fig8 and fig8_inv on random
/// leaves, commutator and power(k ≤ 6) on the unipotent leaf.
pub fn closed_form_suite(seed: u64, samples: usize) -> Report {
    closed_form_suite_with(seed, samples, &library_closed_form)
}

/// As [`closed_form_suite`] with the closed-form evaluator injected.
pub fn closed_form_suite_with(seed: u64, samples: usize, closed: &ClosedFormFn) -> Report {
    let checks = par_checks(samples, |i| {
        let mut rng = sample_rng(seed, i);
        let l = random_leaf(&mut rng, 0.1, 10.0);
        let s = log_uniform(&mut rng, 0.1, 10.0);
        let t = log_uniform(&mut rng, 0.1, 10.0);
        let su = log_uniform(&mut rng, 0.1, 10.0);
        let tu = log_uniform(&mut rng, 0.1, 10.0);
        let u = LengthVector::unipotent();
        let mut cases = vec![(l, CurveId::Fig8, s, t), (l, CurveId::Fig8Inv, s, t), (u, CurveId::Commutator, su, tu)];
        cases.extend((1..=6).map(|k| (u, CurveId::Power(k), su, tu)));
        cases
            .into_iter()
            .map(|(l, c, s, t)| match closed(&l, &c, s, t) {
                Ok(v) => {
                    let e = rel(v, oracle_generic(&l, &c, s, t));
                    (e <= 1e-9, e)
                }
                Err(_) => (false, f64::INFINITY),
            })
            .collect()
    });
    Report::from_checks("closed_forms", seed, &checks)
}

/// Reference trace values at the unipotent chart point (1, 1).
pub fn reference_values_suite(seed: u64) -> Report {
    let u = LengthVector::unipotent();
    let checks: Vec<(bool, f64)> = [
        (CurveId::Fig8, 35.0),
        (CurveId::Power(3), 195.0),
        (CurveId::Commutator, 323.0),
        (CurveId::ThetaWeb, -26.0),
    ]
    .into_iter()
    .flat_map(|(c, v)| {
        let a = (closed_form_generic(&u, &c, 1.0, 1.0).unwrap_or(f64::NAN) - v).abs();
        let b = (oracle_generic(&u, &c, 1.0, 1.0) - v).abs();
        [(a <= 1e-10, a), (b <= 1e-10, b)]
    })
    .collect();
    Report::from_checks("reference_values", seed, &checks)
}

fn fixed_point_check(leaf: LengthVector, curve: CurveId, expected: (f64, f64), tol: f64) -> Vec<(bool, f64)> {
    let f = TraceFunction::new(leaf, curve);
    match find_minimum_from(&f, (1.0, 1.0)) {
        Ok(m) => {
            let e = (m.sigma1 - expected.0).abs().max((m.tau1 - expected.1).abs());
            let p = LeafPoint {
                leaf,
                sigma1: m.sigma1,
                tau1: m.tau1,
            };
            let h = hamiltonian_vf_leaf(&p, &f);
            let hn = h[0].hypot(h[1]);
            vec![(e <= tol, e), (hn <= 1e-8, hn)]
        }
        Err(_) => vec![(false, f64::INFINITY)],
    }
}

/// Unique minima: commutator at (1, (√33−1)/16), power(k) at (1/2, 1) for
/// k = 1..5, and fig8_sym at the Fuchsian point of `n_fuchsian` random leaves.
pub fn fixed_point_suite(seed: u64, n_fuchsian: usize) -> Report {
    let u = LengthVector::unipotent();
    let mut checks = fixed_point_check(u, CurveId::Commutator, (1.0, (33f64.sqrt() - 1.0) / 16.0), 1e-8);
    for k in 1..=5 {
        checks.extend(fixed_point_check(u, CurveId::Power(k), (0.5, 1.0), 1e-8));
    }
    checks.extend(par_checks(n_fuchsian, |i| {
        let mut rng = sample_rng(seed, i);
        let (a, b, g) = (
            log_uniform(&mut rng, 0.3, 5.0),
            log_uniform(&mut rng, 0.3, 5.0),
            log_uniform(&mut rng, 0.3, 5.0),
        );
        let leaf = fuchsian_leaf(a, b, g).unwrap_or(u);
        fixed_point_check(leaf, CurveId::Fig8Sym, ((a * g / b).sqrt(), 1.0), 1e-6)
    }));
    Report::from_checks("fixed_points", seed, &checks)
}

/// Closed-form rational right-hand side of the fig8 flow on the leaf of the
/// Fuchsian structure with boundary data (3, 6, 8).
pub fn fuchsian_ode_display(s: f64, t: f64) -> [f64; 2] {
    let sd = (-6.0 * s.powi(3) * (t * t - 1.0) + s * s * (17.0 - 90.0 * t * t) + s * (15.0 - 408.0 * t * t)
        - 576.0 * t * t
        + 4.0)
        / (12.0 * t);
    let td = (t + 1.0) * (12.0 * s.powi(3) * (t + 1.0) + s * s * (90.0 * t + 17.0) - 576.0 * t - 4.0) / (12.0 * s);
    [sd, td]
}

/// Compare the Hamiltonian field of fig8 on the (3, 6, 8) Fuchsian leaf with
/// its closed-form right-hand side at (2, 1), (1, 1) and `n` random chart points. Errors
/// are relative to the norm of the field.
pub fn verify_fuchsian_ode_display(seed: u64, n: usize) -> Report {
    let leaf = fuchsian_leaf(3.0, 6.0, 8.0).expect("positive");
    let f = TraceFunction::new(leaf, CurveId::Fig8);
    let check = |s: f64, t: f64| {
        let p = LeafPoint {
            leaf,
            sigma1: s,
            tau1: t,
        };
        let a = hamiltonian_vf_leaf(&p, &f);
        let b = fuchsian_ode_display(s, t);
        let e = (a[0] - b[0]).hypot(a[1] - b[1]) / b[0].hypot(b[1]).max(f64::MIN_POSITIVE);
        (e <= 1e-9, e)
    };
    let mut checks = vec![check(2.0, 1.0), check(1.0, 1.0)];
    checks.extend(par_checks(n, |i| {
        let mut rng = sample_rng(seed, i);
        vec![check(log_uniform(&mut rng, 0.1, 10.0), log_uniform(&mut rng, 0.1, 10.0))]
    }));
    Report::from_checks("fuchsian_ode", seed, &checks)
}

/// One random periodic-orbit case: (leaf, curve, start point).
pub fn random_period_case(seed: u64, index: usize) -> (LengthVector, CurveId, (f64, f64)) {
    let mut rng = sample_rng(seed, index);
    let kind = rng.random_range(0..6u32);
    let (leaf, curve) = match kind {
        0 => (random_leaf(&mut rng, 0.5, 2.0), CurveId::Fig8),
        1 => (random_leaf(&mut rng, 0.5, 2.0), CurveId::Fig8Inv),
        2 => (random_leaf(&mut rng, 0.5, 2.0), CurveId::Fig8Sym),
        3 => (LengthVector::unipotent(), CurveId::Commutator),
        _ => (LengthVector::unipotent(), CurveId::Power(rng.random_range(1..=4))),
    };
    let s = log_uniform(&mut rng, 0.3, 3.0);
    let t = log_uniform(&mut rng, 0.3, 3.0);
    (leaf, curve, (s, t))
}

/// Return-to-start and conservation over one detected period.
pub fn period_check(leaf: LengthVector, curve: CurveId, start: (f64, f64)) -> (bool, f64, Option<f64>) {
    let f = TraceFunction::new(leaf, curve);
    match detect_period_fn(&f, start.0, start.1, DEFAULT_PERIOD_T_MAX, &IntegratorConfig::default()) {
        Ok(p) => {
            let tol = 1e-6 * (1.0 + start.0.hypot(start.1));
            let e = (p.return_distance / tol).max(p.drift / 1e-8);
            (p.return_distance <= tol && p.drift <= 1e-8, e, Some(p.period))
        }
        Err(_) => (false, f64::INFINITY, None),
    }
}

/// Periodicity on `samples` random cases, plus the inequality of the fig8
/// periods through (2, 1) and (4, 3) on the (3, 6, 8) Fuchsian leaf.
/// Errors are the return distance and drift in units of their tolerances.
pub fn period_suite(seed: u64, samples: usize) -> Report {
    let mut checks = par_checks(samples, |i| {
        let (leaf, curve, start) = random_period_case(seed, i);
        let (ok, e, _) = period_check(leaf, curve, start);
        vec![(ok, e)]
    });
    if samples > 0 {
        let leaf = fuchsian_leaf(3.0, 6.0, 8.0).expect("positive");
        let (ok1, e1, p1) = period_check(leaf, CurveId::Fig8, (2.0, 1.0));
        let (ok2, e2, p2) = period_check(leaf, CurveId::Fig8, (4.0, 3.0));
        checks.push((ok1, e1));
        checks.push((ok2, e2));
        let differ = match (p1, p2) {
            (Some(a), Some(b)) => rel(a, b) > 1e-3,
            _ => false,
        };
        checks.push((differ, 0.0));
    }
    Report::from_checks("periods", seed, &checks)
}

/// The mixed-flow parameters probed by the convexity suite.
pub const CONVEXITY_SLOPES: [f64; 6] = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];

/// Strict convexity along mixed flows: the minimum second difference over a
/// 61-point grid on [−3, 3] is positive for fig8 and fig8_sym (random
/// leaves), commutator and power(k ≤ 4) (unipotent leaf), for both variants
/// and every slope; and fine-step second differences agree with the exact
/// second derivative to 1e−4 relative at t ∈ {−1.5, 0, 1.5}.
pub fn convexity_suite(seed: u64, samples: usize) -> Report {
    let checks = par_checks(samples, |i| {
        let mut rng = sample_rng(seed, i);
        let leaf = random_leaf(&mut rng, 0.3, 3.0);
        let s = log_uniform(&mut rng, 0.2, 5.0);
        let t = log_uniform(&mut rng, 0.2, 5.0);
        let u = LengthVector::unipotent();
        let mut fns = vec![
            TraceFunction::new(leaf, CurveId::Fig8),
            TraceFunction::new(leaf, CurveId::Fig8Sym),
            TraceFunction::new(u, CurveId::Commutator),
        ];
        fns.extend((1..=4).map(|k| TraceFunction::new(u, CurveId::Power(k))));
        let mut out = Vec::new();
        for f in &fns {
            let q = LeafPoint {
                leaf: f.leaf,
                sigma1: s,
                tau1: t,
            };
            for variant in MixedVariant::ALL {
                for a in CONVEXITY_SLOPES {
                    let m = convexity_probe(f, &q, a, variant, 61).unwrap_or(f64::NAN);
                    out.push((m > 0.0, if m > 0.0 { 0.0 } else { 1.0 }));
                    for tt in [-1.5, 0.0, 1.5] {
                        let exact = second_derivative_along(f, &q, a, variant, tt);
                        let fd = second_difference_at(f, &q, a, variant, tt, 1e-3);
                        let e = rel(fd, exact);
                        out.push((e <= 1e-4, e));
                    }
                }
            }
        }
        out
    });
    Report::from_checks("convexity", seed, &checks)
}

// ─────────────────────────── conjugators ───────────────────────────

/// Conjugating matrices (ζᵅₜ, ζᵝₜ, ζᵞₜ) of the eruption flow at the unipotent
/// chart point (σ₁, τ₁).
pub fn zeta_eruption(s: f64, tau: f64, t: f64) -> [Mat3; 3] {
    let e = t.exp();
    let r = ((1.0 + e * tau) / (1.0 + tau)).cbrt();
    let e13 = (t / 3.0).exp();
    let za = Mat3::diag([(-2.0 * t / 3.0).exp() * r * r, e13 / r, e13 / r]);
    let zg = Mat3::diag([1.0 / r, 1.0 / r, r * r]);
    let et = e * tau;
    let k = (1.0 + tau).cbrt() / (e13 * tau * (1.0 + et).cbrt());
    let m = Mat3([
        [
            0.0,
            -(s - 1.0) * (et + 1.0),
            -(s * tau + s - 1.0) * (et + 1.0) / (tau + 1.0),
        ],
        [
            0.0,
            s + s * et - et,
            (s * (tau + 1.0) * (et + 1.0) - et + tau) / (tau + 1.0),
        ],
        [
            -et * tau,
            -s * (et + 1.0) - et * (tau + 1.0),
            -s * (et + 1.0) - tau * (e * (2.0 * tau + 1.0) + 1.0) / (tau + 1.0),
        ],
    ]);
    [za, m.scale(k), zg]
}

/// Conjugating matrices (ηᵅₜ, ηᵝₜ, ηᵞₜ) of the hexagon flow at the unipotent
/// chart point (σ₁, τ₁).
pub fn eta_hexagon(s: f64, tau: f64, t: f64) -> [Mat3; 3] {
    let e = t.exp();
    let m = (-t / 3.0).exp();
    let e23 = (2.0 * t / 3.0).exp();
    let sp = s + 1.0;
    let se = s * e + 1.0;
    let ha = Mat3([
        [m * se / sp, s * m * (e - 1.0) * (tau + 1.0) / (sp * tau), 0.0],
        [0.0, m, 0.0],
        [0.0, 0.0, sp * e23 / se],
    ]);
    let hg = Mat3([
        [sp * e23 / se, 0.0, 0.0],
        [0.0, m, 0.0],
        [0.0, s * m * (e - 1.0) * (tau + 1.0) / sp, m * se / sp],
    ]);
    let d = sp * tau;
    let d2 = sp * (t / 3.0).exp() * tau * se;
    let hb = Mat3([
        [
            0.0,
            m * (tau + 1.0) * (s * s * e - 1.0) / d,
            m * (s * s * e * (tau + 1.0) + s * e * tau - 1.0) / d,
        ],
        [
            0.0,
            -m * (s + s * s * e * (tau + 1.0) - tau) / d,
            -s * m * (s * e * (tau + 1.0) + e * tau + 1.0) / d,
        ],
        [
            sp * e23 * tau / se,
            (tau + 1.0) * (s * s * e * (tau + 2.0) + s * (2.0 * e * tau + 1.0) + s.powi(3) * e * e + e * tau) / d2,
            (s.powi(3) * e * e * (tau + 1.0)
                + s * s * e * ((e + 3.0) * tau + 2.0)
                + s * ((4.0 * e + 1.0) * tau + 1.0)
                + (e + 1.0) * tau)
                / d2,
        ],
    ]);
    [ha, hb, hg]
}

/// Result of a conjugator check at one (σ₁, τ₁, t).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConjugatorReport {
    /// Projective distance of ζ·ρ(x)·ζ⁻¹ from ρₜ(x) for x = α, β, γ.
    pub errors: [f64; 3],
    pub passed: bool,
}

fn conjugator_check(
    p: &LeafPoint,
    t: f64,
    tol: f64,
    flow: fn(&FGCoords, f64) -> FGCoords,
    mats: fn(f64, f64, f64) -> [Mat3; 3],
) -> Result<ConjugatorReport> {
    if !p.leaf.is_unipotent(UNIPOTENT_TOL) {
        return Err(PantsError::NotUnipotent);
    }
    if !(-5.0..=5.0).contains(&t) {
        return Err(PantsError::InvalidArgument(format!("flow time {t} outside [-5, 5]")));
    }
    let c = leaf_embed(p);
    let rho = peripheral_holonomies(&c);
    let rho_t = peripheral_holonomies(&flow(&c, t));
    let z = mats(p.sigma1, p.tau1, t);
    let mut errors = [0.0; 3];
    for k in 0..3 {
        let conj = z[k] * rho[k] * z[k].inverse()?;
        errors[k] = projective_distance(&conj, &rho_t[k])?;
    }
    Ok(ConjugatorReport {
        errors,
        passed: errors.iter().all(|e| *e <= tol),
    })
}

/// Check that the ζ matrices conjugate ρ into the eruption-flowed ρₜ.
pub fn verify_conjugator_eruption(sigma1: f64, tau1: f64, t: f64, tol: f64) -> Result<ConjugatorReport> {
    verify_conjugator_eruption_at(&LeafPoint::unipotent(sigma1, tau1)?, t, tol)
}

/// As [`verify_conjugator_eruption`]; refuses points off the unipotent leaf.
pub fn verify_conjugator_eruption_at(p: &LeafPoint, t: f64, tol: f64) -> Result<ConjugatorReport> {
    conjugator_check(p, t, tol, eruption_flow, zeta_eruption)
}

/// Check that the η matrices conjugate ρ into the hexagon-flowed ρₜ.
pub fn verify_conjugator_hexagon(sigma1: f64, tau1: f64, t: f64, tol: f64) -> Result<ConjugatorReport> {
    verify_conjugator_hexagon_at(&LeafPoint::unipotent(sigma1, tau1)?, t, tol)
}

/// As [`verify_conjugator_hexagon`]; refuses points off the unipotent leaf.
pub fn verify_conjugator_hexagon_at(p: &LeafPoint, t: f64, tol: f64) -> Result<ConjugatorReport> {
    conjugator_check(p, t, tol, hexagon_flow, eta_hexagon)
}

/// The conjugator grid (σ₁, τ₁) ∈ {0.5, 1, 2}², t ∈ {−2, −1, 1, 2}, both flows.
pub fn conjugator_suite(seed: u64) -> Report {
    let mut checks = Vec::new();
    for s in [0.5, 1.0, 2.0] {
        for tau in [0.5, 1.0, 2.0] {
            for t in [-2.0, -1.0, 1.0, 2.0] {
                for r in [
                    verify_conjugator_eruption(s, tau, t, CONJUGATOR_TOL),
                    verify_conjugator_hexagon(s, tau, t, CONJUGATOR_TOL),
                ] {
                    match r {
                        Ok(r) => checks.extend(r.errors.iter().map(|e| (*e <= CONJUGATOR_TOL, *e))),
                        Err(_) => checks.push((false, f64::INFINITY)),
                    }
                }
            }
        }
    }
    Report::from_checks("conjugators", seed, &checks)
}

// ──────────────────────────── structure ────────────────────────────

/// {𝓘, 𝓔} = 1/2 exactly; log-Casimirs bracket to zero with every
/// log-coordinate; hexagon and eruption flows commute exactly at `samples`
/// random (c, s, t).
pub fn structure_suite(seed: u64, samples: usize) -> Report {
    let i = LogLinearFunction::hamiltonian_i();
    let e = LogLinearFunction::hamiltonian_e();
    let b = bracket_log_linear(&i, &e);
    let mut checks = vec![(b == 0.5, (b - 0.5).abs())];
    for l in LogLinearFunction::log_casimirs() {
        for k in 1..=8 {
            let g = LogLinearFunction::log_coordinate(Coordinate::from_index(k).expect("index in range"));
            let v = bracket_log_linear(&l, &g);
            checks.push((v == 0.0, v.abs()));
        }
    }
    checks.extend(par_checks(samples, |n| {
        let mut rng = sample_rng(seed, n);
        let c = random_coords(&mut rng);
        let s = rng.random_range(-3.0..3.0);
        let t = rng.random_range(-3.0..3.0);
        let ab = hexagon_flow(&eruption_flow(&c, t), s);
        let ba = eruption_flow(&hexagon_flow(&c, s), t);
        let err = ab
            .as_array()
            .iter()
            .zip(ba.as_array())
            .map(|(x, y)| rel(*x, y))
            .fold(0.0, f64::max);
        vec![(ab == ba, err)]
    }));
    Report::from_checks("structure", seed, &checks)
}

// ────────────────────────────── flags ──────────────────────────────

fn random_flag(rng: &mut ChaCha8Rng) -> Result<Flag> {
    let mut v = || [0; 3].map(|_: i32| rng.random_range(-1.0..1.0));
    let p = v();
    let q = v();
    let l = [
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    ];
    Flag::new(ProjPoint::new(p)?, ProjLine::new(l)?)
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> Mat3 {
    loop {
        let mut m = Mat3::identity();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = rng.random_range(-2.0..2.0);
            }
        }
        if m.det().abs() >= 0.5 {
            if let Ok(n) = m.normalize_sl3() {
                return n;
            }
        }
    }
}

fn flag_invariants(f: [Flag; 4]) -> Result<[f64; 3]> {
    Ok([cr1(f)?, cr2(f)?, triple_ratio([f[0], f[1], f[2]])?])
}

/// Invariance of cr₁, cr₂ and the triple ratio under random unimodular
/// transformations, and the standard-configuration values
/// cr₁ = −y/(y+z), cr₂ = −(1+xy)/(xy).
pub fn flag_suite(seed: u64, samples: usize) -> Report {
    let checks = par_checks(samples, |i| {
        let mut rng = sample_rng(seed, i);
        let mut out = Vec::new();
        // resample until generic (with overwhelming probability at once)
        let mut inv = None;
        for _ in 0..32 {
            let f = [0; 4].map(|_| random_flag(&mut rng));
            if let [Ok(a), Ok(b), Ok(c), Ok(d)] = f {
                let fl = [a, b, c, d];
                if let Ok(v) = flag_invariants(fl) {
                    inv = Some((fl, v));
                    break;
                }
            }
        }
        match inv {
            Some((fl, v)) => {
                let g = random_unimodular(&mut rng);
                let moved: Result<Vec<Flag>> = fl.iter().map(|f| f.transform(&g)).collect();
                match moved.and_then(|m| flag_invariants([m[0], m[1], m[2], m[3]])) {
                    Ok(w) => {
                        for k in 0..3 {
                            let e = (w[k] - v[k]).abs() / v[k].abs().max(1.0);
                            out.push((e <= 1e-9, e));
                        }
                    }
                    Err(_) => out.push((false, f64::INFINITY)),
                }
            }
            None => out.push((false, f64::INFINITY)),
        }
        let x = log_uniform(&mut rng, 0.2, 5.0);
        let y = log_uniform(&mut rng, 0.2, 5.0);
        let z = log_uniform(&mut rng, 0.2, 5.0);
        let w = log_uniform(&mut rng, 0.2, 5.0);
        match standard_configuration(x, y, z, w).and_then(|f| Ok((cr1(f)?, cr2(f)?))) {
            Ok((a, b)) => {
                let e1 = rel(a, -y / (y + z));
                let e2 = rel(b, -(1.0 + x * y) / (x * y));
                out.push((e1 <= 1e-9, e1));
                out.push((e2 <= 1e-9, e2));
            }
            Err(_) => out.push((false, f64::INFINITY)),
        }
        out
    });
    Report::from_checks("flags", seed, &checks)
}

/// Convenience: the chart function of a curve on a leaf (used by the CLI).
pub fn chart_function(leaf: LengthVector, curve: CurveId) -> impl ChartFunction {
    TraceFunction::new(leaf, curve)
}

/// The Fuchsian structure's chart point on its leaf.
pub fn fuchsian_chart_point(la: f64, lb: f64, lg: f64) -> Result<LeafPoint> {
    Ok(crate::coords::leaf_point_of(&fuchsian_point(la, lb, lg)?))
}
