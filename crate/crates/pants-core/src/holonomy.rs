//! Holonomy reconstruction: the elementary matrices T(x) and E(z, w), the
//! three peripheral holonomies ρ(α), ρ(β), ρ(γ) of the pair of pants, words
//! in them, and the eigenvalue-ratio check of the Casimirs.

use std::fmt;
use std::str::FromStr;

use crate::coords::{casimirs, FGCoords, LengthVector};
use crate::error::{require_positive, PantsError, Result};
use crate::proj_linalg::{eigenvalues_real3, Mat3};
use crate::scalar::Scalar;

/// Generators of π₁ of the pair of pants, with αβγ = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Alpha,
    Beta,
    Gamma,
}

/// A word in the peripheral generators, composed left to right.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Word(pub Vec<(Generator, i32)>);

impl Word {
    pub fn new(tokens: Vec<(Generator, i32)>) -> Result<Self> {
        if tokens.iter().any(|(_, e)| *e == 0) {
            return Err(PantsError::InvalidArgument("word exponents must be nonzero".into()));
        }
        Ok(Word(tokens))
    }

    /// The inverse word.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|(g, e)| (*g, -e)).collect())
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(other.0.iter()).copied().collect())
    }
}

impl FromStr for Word {
    type Err = PantsError;

    /// Whitespace-separated tokens `a|b|c` with optional `^<signed int>`.
    fn from_str(s: &str) -> Result<Word> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let (g, e) = match tok.split_once('^') {
                Some((g, e)) => (
                    g,
                    e.parse::<i32>()
                        .map_err(|_| PantsError::Parse(format!("bad exponent in token `{tok}`")))?,
                ),
                None => (tok, 1),
            };
            let g = match g {
                "a" => Generator::Alpha,
                "b" => Generator::Beta,
                "c" => Generator::Gamma,
                _ => return Err(PantsError::Parse(format!("unknown generator in token `{tok}`"))),
            };
            if e == 0 {
                return Err(PantsError::Parse(format!("zero exponent in token `{tok}`")));
            }
            out.push((g, e));
        }
        Ok(Word(out))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .0
            .iter()
            .map(|(g, e)| {
                let c = match g {
                    Generator::Alpha => "a",
                    Generator::Beta => "b",
                    Generator::Gamma => "c",
                };
                if *e == 1 {
                    c.to_string()
                } else {
                    format!("{c}^{e}")
                }
            })
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// T(x) = x^{−1/3} [[0,0,1],[0,−1,−1],[x,1+x,1]].
pub fn matrix_t_generic<S: Scalar>(x: S) -> Mat3<S> {
    let o = S::cst(0.0);
    let one = S::cst(1.0);
    Mat3([[o, o, one], [o, -one, -one], [x, x + 1.0, one]]).scale(x.cbrt().recip())
}

/// E(z, w) = (z/w)^{1/3} [[0,0,1/z],[0,−1,0],[w,0,0]].
pub fn matrix_e_generic<S: Scalar>(z: S, w: S) -> Mat3<S> {
    let o = S::cst(0.0);
    Mat3([[o, o, z.recip()], [o, S::cst(-1.0), o], [w, o, o]]).scale((z / w).cbrt())
}

/// Inverse of T(x), in closed form (T(x) has determinant one).
pub fn matrix_t_inv_generic<S: Scalar>(x: S) -> Mat3<S> {
    // inverse of the unnormalized matrix, then multiplied by x^{1/3}
    let o = S::cst(0.0);
    let one = S::cst(1.0);
    let m = Mat3([[one, (x + 1.0) / x, x.recip()], [-one, -one, o], [one, o, o]]);
    m.scale(x.cbrt())
}

pub fn matrix_t(x: f64) -> Result<Mat3> {
    require_positive("T argument", x)?;
    Ok(matrix_t_generic(x))
}

pub fn matrix_e(z: f64, w: f64) -> Result<Mat3> {
    require_positive("E argument z", z)?;
    require_positive("E argument w", w)?;
    Ok(matrix_e_generic(z, w))
}

/// The three peripheral holonomies from products of elementary matrices:
/// A = E(σ₂,σ₁)T(τ₂)E(σ₃,σ₄)T(τ₁), B = T(τ₁)⁻¹E(σ₄,σ₃)T(τ₂)E(σ₅,σ₆)T(τ₁)⁻¹,
/// C = T(τ₁)E(σ₆,σ₅)T(τ₂)E(σ₁,σ₂).
pub fn peripheral_products<S: Scalar>(x: &[S; 8]) -> [Mat3<S>; 3] {
    let [s1, s2, s3, s4, s5, s6, t1, t2] = *x;
    let e = matrix_e_generic;
    let t = matrix_t_generic;
    let ti = matrix_t_inv_generic(t1);
    let a = e(s2, s1) * t(t2) * e(s3, s4) * t(t1);
    let b = ti * e(s4, s3) * t(t2) * e(s5, s6) * ti;
    let c = t(t1) * e(s6, s5) * t(t2) * e(s1, s2);
    [a, b, c]
}

/// ρ(α) from its closed-form entries (upper triangular).
pub fn rho_alpha_closed<S: Scalar>(x: &[S; 8]) -> Mat3<S> {
    let [s1, s2, s3, s4, _s5, _s6, t1, t2] = *x;
    let o = S::cst(0.0);
    let q = (s2 * s3 / (s1 * s4 * t1 * t2)).cbrt();
    let s23 = s2 * s3;
    Mat3([
        [
            (t1 * t1 * t2 * t2 / (s1 * s2 * s2 * s3 * s3 * s4)).cbrt(),
            q * (s3 * t2 + s3 + t1 * t2 + t2) / s23,
            q * (s3 * (s4 + t2 + 1.0) + t2) / s23,
        ],
        [o, q, q * (s4 + 1.0)],
        [o, o, (s1 * s1 * s2 * s3 * s4 * s4 / (t1 * t2)).cbrt()],
    ])
}

/// ρ(γ) from its closed-form entries (lower triangular).
pub fn rho_gamma_closed<S: Scalar>(x: &[S; 8]) -> Mat3<S> {
    let [s1, s2, _s3, _s4, s5, s6, t1, t2] = *x;
    let o = S::cst(0.0);
    let q = (s1 * s6 / (s2 * s5 * t1 * t2)).cbrt();
    Mat3([
        [(s1 * s2 * s2 * s5 * s5 * s6 / (t1 * t2)).cbrt(), o, o],
        [-(s2 * (s5 + 1.0) * q), q, o],
        [
            s2 * (s6 * (s5 + t1 + 1.0) + t1) * q / s6,
            -(q * (s6 * (t1 + 1.0) + t1 * (t2 + 1.0)) / s6),
            (t1 * t1 * t2 * t2 / (s1 * s1 * s2 * s5 * s6 * s6)).cbrt(),
        ],
    ])
}

/// ρ(β) from its closed-form entries.
pub fn rho_beta_closed<S: Scalar>(x: &[S; 8]) -> Mat3<S> {
    let [_s1, _s2, s3, s4, s5, s6, t1, t2] = *x;
    let r = (s4 * s5 / (s3 * s6 * t1 * t2)).cbrt();
    let r4 = (s4 * s5 / (s3 * s6 * t1.powi(4) * t2)).cbrt();
    let d = (s3 * s4 * s4 * s5 * s5 * s6 * t2).cbrt();
    let t23 = t1.powf(2.0 / 3.0);
    Mat3([
        [
            r * (s4 * s5 * (s6 * (s3 + t1 + 1.0) + t1 + 1.0) + t1 * (s5 * (s6 + t2 + 1.0) + t2))
                / (s4 * s5),
            r4 * (s4 * (t1 + 1.0) * (s6 * (s3 + t1 + 1.0) + t1)
                + t1 * (s6 * (t1 + 1.0) + t1 * (t2 + 1.0)))
                / s4,
            s6 * (s4 * (s3 + t1 + 1.0) + t1) * r4 / s4,
        ],
        [
            -(t23 * (s5 * (s6 + s4 * (s6 + 1.0) + t2 + 1.0) + t2) / d),
            -(r * ((s4 + 1.0) * s6 * (t1 + 1.0) + t1 * (s4 + t2 + 1.0)) / s4),
            -((s4 + 1.0) * s6 * r / s4),
        ],
        [
            t23 * (s5 * (s6 + t2 + 1.0) + t2) / d,
            r * (s6 * (t1 + 1.0) + t1 * (t2 + 1.0)) / s4,
            (s5 * s6 * s6 / (s3 * s4 * s4 * t1 * t2)).cbrt(),
        ],
    ])
}

/// The peripheral holonomies (A, B, C) = (ρ(α), ρ(β), ρ(γ)) in SL(3,ℝ),
/// evaluated from their closed-form entries.
pub fn peripheral_closed<S: Scalar>(x: &[S; 8]) -> [Mat3<S>; 3] {
    [rho_alpha_closed(x), rho_beta_closed(x), rho_gamma_closed(x)]
}

/// The peripheral holonomies of a coordinate tuple (closed-form entries).
pub fn peripheral_holonomies(c: &FGCoords) -> [Mat3; 3] {
    peripheral_closed(&c.as_array())
}

/// Product of peripheral matrices (and inverses) along a word. `mats` are (A, B, C) and their inverses.
pub fn word_product<S: Scalar>(mats: &[Mat3<S>; 3], inv: &[Mat3<S>; 3], w: &Word) -> Mat3<S> {
    let mut m = Mat3::<S>::identity();
    for (g, e) in &w.0 {
        let i = match g {
            Generator::Alpha => 0,
            Generator::Beta => 1,
            Generator::Gamma => 2,
        };
        let f = if *e > 0 { mats[i] } else { inv[i] };
        for _ in 0..e.unsigned_abs() {
            m = m * f;
        }
    }
    m
}

/// Holonomy of a word evaluated at generic-scalar coordinates, using the
/// product-of-elementary-matrices route.
pub fn holonomy_word_generic<S: Scalar>(x: &[S; 8], w: &Word) -> Mat3<S> {
    let mats = peripheral_products(x);
    // every peripheral matrix has determinant one, so the adjugate is the inverse
    let inv = [mats[0].adjugate(), mats[1].adjugate(), mats[2].adjugate()];
    // the factors already have unit determinant; renormalizing would only
    // inject the rounding error of a 3×3 determinant
    word_product(&mats, &inv, w)
}

/// Holonomy of a word in SL(3,ℝ) (a product of unit-determinant factors).
pub fn holonomy_word(c: &FGCoords, w: &Word) -> Mat3 {
    holonomy_word_generic(&c.as_array(), w)
}

/// Outcome of checking the eigenvalue-ratio description of the Casimirs for
/// one peripheral matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioMatch {
    pub generator: Generator,
    pub eigenvalues: [f64; 3],
    pub predicted: [f64; 2],
    /// Relative error of the closest pairwise eigenvalue ratio to each prediction.
    pub errors: [f64; 2],
}

/// For each of ρ(α), ρ(β), ρ(γ), compare the six pairwise eigenvalue ratios
/// with the two Casimirs predicted for it.
pub fn eigenvalue_ratio_report(c: &FGCoords) -> Result<Vec<RatioMatch>> {
    eigenvalue_ratio_report_with(c, &casimirs(c))
}

/// As [`eigenvalue_ratio_report`] with externally supplied Casimir values.
pub fn eigenvalue_ratio_report_with(c: &FGCoords, l: &LengthVector) -> Result<Vec<RatioMatch>> {
    let mats = peripheral_holonomies(c);
    let gens = [Generator::Alpha, Generator::Beta, Generator::Gamma];
    let mut out = Vec::with_capacity(3);
    for (k, m) in mats.iter().enumerate() {
        let ev = eigenvalues_real3(m)?;
        let mut ratios = Vec::with_capacity(6);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    ratios.push(ev[i] / ev[j]);
                }
            }
        }
        let predicted = [l.0[2 * k], l.0[2 * k + 1]];
        let errors = predicted.map(|p| {
            ratios
                .iter()
                .map(|r| ((r - p) / p).abs())
                .fold(f64::INFINITY, f64::min)
        });
        out.push(RatioMatch {
            generator: gens[k],
            eigenvalues: ev,
            predicted,
            errors,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proj_linalg::projective_distance;

    fn sample() -> FGCoords {
        FGCoords::from_slice(&[0.7, 1.9, 2.3, 0.4, 1.1, 3.2, 0.6, 1.7]).unwrap()
    }

    #[test]
    fn elementary_matrices() {
        let t = matrix_t(1.0).unwrap();
        assert_eq!(t, Mat3([[0.0, 0.0, 1.0], [0.0, -1.0, -1.0], [1.0, 2.0, 1.0]]));
        let e = matrix_e(1.0, 1.0).unwrap();
        assert_eq!(e, Mat3([[0.0, 0.0, 1.0], [0.0, -1.0, 0.0], [1.0, 0.0, 0.0]]));
        assert!((matrix_t(5.0).unwrap().det() - 1.0).abs() < 1e-14);
        assert!((matrix_e(5.0, 0.3).unwrap().det() - 1.0).abs() < 1e-14);
        assert!(matrix_t(0.0).is_err());
        let p = matrix_t_generic(2.7) * matrix_t_inv_generic(2.7);
        assert!(p.max_abs_diff(&Mat3::identity()) < 1e-14);
    }

    #[test]
    fn ones_values() {
        let [a, b, c] = peripheral_holonomies(&FGCoords::ones());
        assert_eq!(a, Mat3([[1.0, 4.0, 4.0], [0.0, 1.0, 2.0], [0.0, 0.0, 1.0]]));
        assert_eq!(c, Mat3([[1.0, 0.0, 0.0], [-2.0, 1.0, 0.0], [4.0, -4.0, 1.0]]));
        assert_eq!(b, Mat3([[9.0, 12.0, 4.0], [-6.0, -7.0, -2.0], [4.0, 4.0, 1.0]]));
    }

    #[test]
    fn closed_forms_match_products() {
        let x = sample().as_array();
        let p = peripheral_products(&x);
        let c = peripheral_closed(&x);
        for k in 0..3 {
            assert!(p[k].max_abs_diff(&c[k]) < 1e-12 * c[k].max_abs(), "{k}");
        }
        assert!(c[0].is_upper_triangular(0.0));
        assert!(c[2].is_lower_triangular(0.0));
    }

    #[test]
    fn relation_holds() {
        let [a, b, c] = peripheral_holonomies(&sample());
        assert!(projective_distance(&(a * b * c), &Mat3::identity()).unwrap() < 1e-12);
    }

    #[test]
    fn words() {
        let c = FGCoords::ones();
        assert_eq!(holonomy_word(&c, &Word::default()), Mat3::identity());
        let m = holonomy_word(&c, &"a c^-1".parse().unwrap());
        let expect = Mat3([[25.0, 20.0, 4.0], [10.0, 9.0, 2.0], [4.0, 4.0, 1.0]]);
        assert!(m.max_abs_diff(&expect) < 1e-12);
        assert!((m.trace() - 35.0).abs() < 1e-12);
        let abc = holonomy_word(&sample(), &"a b c".parse().unwrap());
        assert!(abc.max_abs_diff(&Mat3::identity()) < 1e-10);
        let w: Word = "a^2 c^-1 b a^-3".parse().unwrap();
        let id = holonomy_word(&sample(), &w.concat(&w.inverse()));
        assert!(id.max_abs_diff(&Mat3::identity()) < 1e-8);
    }

    #[test]
    fn word_grammar() {
        let w: Word = "a  c^-1 b^3".parse().unwrap();
        assert_eq!(
            w.0,
            vec![(Generator::Alpha, 1), (Generator::Gamma, -1), (Generator::Beta, 3)]
        );
        assert_eq!(w.to_string(), "a c^-1 b^3");
        assert!("a^0".parse::<Word>().is_err());
        assert!("d".parse::<Word>().is_err());
        assert!("a^x".parse::<Word>().is_err());
        assert_eq!("".parse::<Word>().unwrap(), Word::default());
    }

    #[test]
    fn ratio_report_fuchsian() {
        let c = FGCoords::from_slice(&[2.0, 2.0, 1.5, 1.5, 4.0, 4.0, 1.0, 1.0]).unwrap();
        let rep = eigenvalue_ratio_report(&c).unwrap();
        assert!((rep[0].predicted[0] - 3.0).abs() < 1e-15);
        assert!((rep[0].predicted[1] - 1.0 / 3.0).abs() < 1e-15);
        for r in &rep {
            assert!(r.errors.iter().all(|e| *e < 1e-10), "{r:?}");
        }
        let rep = eigenvalue_ratio_report(&FGCoords::ones()).unwrap();
        assert_eq!(rep[0].eigenvalues, [1.0; 3]);
    }
}
