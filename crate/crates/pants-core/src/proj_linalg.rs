//! Fixed-size 3×3 projective linear algebra.
//!
//! [`Mat3`] is generic over [`Scalar`] so that holonomies can be evaluated
//! with dual numbers; the spectral routines are `f64` only.

use std::ops::{Index, IndexMut, Mul};

use crate::error::{PantsError, Result};
use crate::scalar::Scalar;

/// Default relative tolerance for projective equality checks.
pub const EQ_TOL: f64 = 1e-9;
/// Tolerance used for determinant and structural-zero checks.
pub const DET_TOL: f64 = 1e-12;

/// A 3×3 real matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3<S = f64>(pub [[S; 3]; 3]);

impl<S: Scalar> Mat3<S> {
    pub fn from_rows(rows: [[S; 3]; 3]) -> Self {
        Mat3(rows)
    }

    pub fn identity() -> Self {
        let o = S::cst(0.0);
        let i = S::cst(1.0);
        Mat3([[i, o, o], [o, i, o], [o, o, i]])
    }

    pub fn diag(d: [S; 3]) -> Self {
        let o = S::cst(0.0);
        Mat3([[d[0], o, o], [o, d[1], o], [o, o, d[2]]])
    }

    /// Lift an `f64` matrix into the scalar type `S`.
    pub fn lift(m: &Mat3<f64>) -> Self {
        let mut r = Self::identity();
        for i in 0..3 {
            for j in 0..3 {
                r.0[i][j] = S::cst(m.0[i][j]);
            }
        }
        r
    }

    /// Primal parts of every entry.
    pub fn values(&self) -> Mat3<f64> {
        let mut r = Mat3::<f64>::identity();
        for i in 0..3 {
            for j in 0..3 {
                r.0[i][j] = self.0[i][j].value();
            }
        }
        r
    }

    pub fn scale(&self, c: S) -> Self {
        let mut r = *self;
        for row in r.0.iter_mut() {
            for x in row.iter_mut() {
                *x = *x * c;
            }
        }
        r
    }

    pub fn trace(&self) -> S {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> S {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Adjugate (transpose of the cofactor matrix).
    pub fn adjugate(&self) -> Self {
        let m = &self.0;
        let c = |a: usize, b: usize, c: usize, d: usize| m[a][b] * m[c][d] - m[a][d] * m[c][b];
        Mat3([
            [c(1, 1, 2, 2), -c(0, 1, 2, 2), c(0, 1, 1, 2)],
            [-c(1, 0, 2, 2), c(0, 0, 2, 2), -c(0, 0, 1, 2)],
            [c(1, 0, 2, 1), -c(0, 0, 2, 1), c(0, 0, 1, 1)],
        ])
    }

    /// Inverse via the adjugate; errors on a (numerically) zero determinant.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d.value() == 0.0 || !d.value().is_finite() {
            return Err(PantsError::SingularMatrix);
        }
        Ok(self.adjugate().scale(d.recip()))
    }

    /// Divide by the real cube root of the determinant, giving the SL(3,ℝ)
    /// representative of the projective class.
    pub fn normalize_sl3(&self) -> Result<Self> {
        let d = self.det();
        if d.value() == 0.0 || !d.value().is_finite() {
            return Err(PantsError::SingularMatrix);
        }
        Ok(self.scale(d.cbrt().recip()))
    }

    pub fn matmul(&self, o: &Self) -> Self {
        let a = &self.0;
        let b = &o.0;
        let mut r = [[S::cst(0.0); 3]; 3];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
            }
        }
        Mat3(r)
    }
}

impl<S: Scalar> Mul for Mat3<S> {
    type Output = Mat3<S>;
    fn mul(self, o: Self) -> Self {
        self.matmul(&o)
    }
}

impl<S> Index<(usize, usize)> for Mat3<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.0[i][j]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat3<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.0[i][j]
    }
}

impl Mat3<f64> {
    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |a, x| a.max(x.abs()))
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, o: &Mat3<f64>) -> f64 {
        let mut w: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                w = w.max((self.0[i][j] - o.0[i][j]).abs());
            }
        }
        w
    }

    pub fn is_upper_triangular(&self, tol: f64) -> bool {
        let s = tol * self.max_abs().max(1.0);
        self.0[1][0].abs() <= s && self.0[2][0].abs() <= s && self.0[2][1].abs() <= s
    }

    pub fn is_lower_triangular(&self, tol: f64) -> bool {
        self.transpose().is_upper_triangular(tol)
    }
}

/// Determinant of an `f64` matrix.
pub fn det3(m: &Mat3) -> f64 {
    m.det()
}

/// SL(3,ℝ) representative of the projective class of `m`.
pub fn normalize_sl3(m: &Mat3) -> Result<Mat3> {
    m.normalize_sl3()
}

/// Distance between the projective classes of `a` and `b`: the max-entry
/// distance of their SL(3,ℝ) representatives.
pub fn projective_distance(a: &Mat3, b: &Mat3) -> Result<f64> {
    Ok(a.normalize_sl3()?.max_abs_diff(&b.normalize_sl3()?))
}

/// True iff the SL(3,ℝ) representatives of `a` and `b` agree entrywise within `tol`.
pub fn projectively_equal(a: &Mat3, b: &Mat3, tol: f64) -> Result<bool> {
    Ok(projective_distance(a, b)? <= tol)
}

/// Real eigenvalues of `m` in ascending order.
///
/// Triangular matrices are read off the diagonal; otherwise the characteristic
/// cubic is solved by the trigonometric method and each root is polished by
/// Newton's method on the characteristic polynomial.
pub fn eigenvalues_real3(m: &Mat3) -> Result<[f64; 3]> {
    if m.is_upper_triangular(DET_TOL) || m.is_lower_triangular(DET_TOL) {
        let mut d = [m.0[0][0], m.0[1][1], m.0[2][2]];
        d.sort_by(f64::total_cmp);
        return Ok(d);
    }
    let a = &m.0;
    let tr = m.trace();
    let c2 = a[0][0] * a[1][1] - a[0][1] * a[1][0] + a[0][0] * a[2][2] - a[0][2] * a[2][0]
        + a[1][1] * a[2][2]
        - a[1][2] * a[2][1];
    let det = m.det();
    let mut roots = cubic_real_roots(tr, c2, det, m.max_abs().max(1.0))?;
    for r in roots.iter_mut() {
        *r = polish_root(*r, tr, c2, det);
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// Roots of λ³ − tr λ² + c2 λ − det = 0, required to be real.
fn cubic_real_roots(tr: f64, c2: f64, det: f64, scale: f64) -> Result<[f64; 3]> {
    let shift = tr / 3.0;
    // depressed cubic y³ + p y + q with λ = y + shift
    let p = c2 - tr * tr / 3.0;
    let q = -2.0 * tr * tr * tr / 27.0 + tr * c2 / 3.0 - det;
    let disc = -(4.0 * p * p * p + 27.0 * q * q);
    let s2 = scale * scale;
    let s6 = s2 * s2 * s2;
    if disc < -1e-9 * s6 {
        return Err(PantsError::ComplexSpectrum { discriminant: disc });
    }
    if p.abs() <= 1e-14 * s2 {
        let y = (-q).cbrt();
        return Ok([y + shift; 3]);
    }
    if p > 0.0 {
        // only reachable through rounding of a triple root
        let y = (-q).cbrt();
        return Ok([y + shift; 3]);
    }
    let r = (-p / 3.0).sqrt();
    let arg = (3.0 * q / (2.0 * p) / r).clamp(-1.0, 1.0);
    let phi = arg.acos() / 3.0;
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        let th = phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0;
        *o = 2.0 * r * th.cos() + shift;
    }
    Ok(out)
}

fn polish_root(mut x: f64, tr: f64, c2: f64, det: f64) -> f64 {
    for _ in 0..4 {
        let f = ((x - tr) * x + c2) * x - det;
        let df = (3.0 * x - 2.0 * tr) * x + c2;
        if df == 0.0 || !df.is_finite() {
            break;
        }
        let nx = x - f / df;
        if !nx.is_finite() || (nx - x).abs() > 1e-6 * x.abs().max(1.0) {
            break;
        }
        x = nx;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_shape(x: f64) -> Mat3 {
        Mat3([[0.0, 0.0, 1.0], [0.0, -1.0, -1.0], [x, 1.0 + x, 1.0]])
    }

    #[test]
    fn det_examples() {
        assert_eq!(det3(&Mat3::identity()), 1.0);
        let r = Mat3([[1.0, 2.0, 3.0], [1.0, 2.0, 3.0], [4.0, 5.0, 7.0]]);
        assert_eq!(det3(&r), 0.0);
        assert_eq!(det3(&t_shape(5.0)), 5.0);
    }

    #[test]
    fn normalize_examples() {
        let two = Mat3::<f64>::identity().scale(2.0);
        assert_eq!(normalize_sl3(&two).unwrap(), Mat3::identity());
        assert_eq!(normalize_sl3(&Mat3::identity()).unwrap(), Mat3::identity());
        let m = Mat3::diag([1.0, 1.0, -1.0]);
        assert_eq!(normalize_sl3(&m).unwrap(), Mat3::diag([-1.0, -1.0, 1.0]));
        let z = Mat3::diag([1.0, 0.0, 1.0]);
        assert_eq!(normalize_sl3(&z), Err(PantsError::SingularMatrix));
    }

    #[test]
    fn normalize_is_idempotent() {
        let m = Mat3([[2.0, 1.0, 0.5], [0.3, -1.0, 4.0], [1.0, 1.0, 1.0]]);
        let n1 = normalize_sl3(&m).unwrap();
        let n2 = normalize_sl3(&n1).unwrap();
        assert!(n1.max_abs_diff(&n2) < 1e-15);
        assert!((det3(&n1) - 1.0).abs() < DET_TOL);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Mat3([[2.0, 1.0, 0.5], [0.3, -1.0, 4.0], [1.0, 1.0, 1.0]]);
        let p = m * m.inverse().unwrap();
        assert!(p.max_abs_diff(&Mat3::identity()) < 1e-14);
    }

    #[test]
    fn eigen_examples() {
        assert_eq!(
            eigenvalues_real3(&Mat3::diag([3.0, 1.0, 2.0])).unwrap(),
            [1.0, 2.0, 3.0]
        );
        assert_eq!(eigenvalues_real3(&Mat3::identity()).unwrap(), [1.0; 3]);
        let a = Mat3([[1.0, 4.0, 4.0], [0.0, 1.0, 2.0], [0.0, 0.0, 1.0]]);
        assert_eq!(eigenvalues_real3(&a).unwrap(), [1.0; 3]);
    }

    #[test]
    fn eigen_of_conjugated_diagonal() {
        let p = Mat3([[1.0, 2.0, 0.0], [0.5, 1.0, 1.0], [0.0, 3.0, 1.0]]);
        let m = p * Mat3::diag([0.5, 2.0, 7.0]) * p.inverse().unwrap();
        let e = eigenvalues_real3(&m).unwrap();
        for (x, y) in e.iter().zip([0.5, 2.0, 7.0]) {
            assert!((x - y).abs() < 1e-12 * y, "{e:?}");
        }
        let prod: f64 = e.iter().product();
        assert!((prod - det3(&m)).abs() < 1e-10 * prod.abs());
    }

    #[test]
    fn complex_spectrum_rejected() {
        let rot = Mat3([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 2.0]]);
        assert!(matches!(
            eigenvalues_real3(&rot),
            Err(PantsError::ComplexSpectrum { .. })
        ));
    }

    #[test]
    fn projective_equality() {
        let m = Mat3([[2.0, 1.0, 0.5], [0.3, -1.0, 4.0], [1.0, 1.0, 1.0]]);
        assert!(projectively_equal(&m, &m.scale(7.0), EQ_TOL).unwrap());
        assert!(!projectively_equal(&Mat3::identity(), &Mat3::diag([1.0, 1.0, 2.0]), EQ_TOL).unwrap());
    }
}
