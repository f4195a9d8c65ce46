//! Flags in ℝP² and their projective invariants: the two edge cross ratios
//! of a 4-tuple of flags, the triple ratio of a 3-tuple, and the geometric
//! cross ratio of four concurrent lines.

use crate::error::{PantsError, Result};
use crate::proj_linalg::Mat3;

/// Transversality / incidence tolerance on unit-normalized pairings.
pub const GENERIC_TOL: f64 = 1e-10;

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

/// Unit vector with first nonzero coordinate positive.
fn canonical(a: [f64; 3]) -> Result<[f64; 3]> {
    let n = norm(a);
    if n == 0.0 || !n.is_finite() {
        return Err(PantsError::InvalidArgument(
            "homogeneous coordinates must not all vanish".into(),
        ));
    }
    let first = a.iter().copied().find(|x| x.abs() > 1e-300).unwrap_or(1.0);
    let s = first.signum() / n;
    Ok([a[0] * s, a[1] * s, a[2] * s])
}

/// A point of ℝP² in homogeneous coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjPoint(pub [f64; 3]);

/// A line of ℝP², stored as the covector whose kernel it is.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjLine(pub [f64; 3]);

impl ProjPoint {
    pub fn new(c: [f64; 3]) -> Result<Self> {
        canonical(c).map(|_| ProjPoint(c))
    }

    /// Canonical representative (unit norm, first nonzero coordinate positive).
    pub fn canonical(&self) -> [f64; 3] {
        canonical(self.0).unwrap_or(self.0)
    }

    /// Equality up to nonzero scale.
    pub fn same_as(&self, o: &ProjPoint, tol: f64) -> bool {
        norm(cross(self.canonical(), o.canonical())) <= tol
    }

    /// Image under the linear map `g`.
    pub fn transform(&self, g: &Mat3) -> ProjPoint {
        let m = &g.0;
        let p = self.0;
        ProjPoint([dot(m[0], p), dot(m[1], p), dot(m[2], p)])
    }

    /// The line through two distinct points.
    pub fn join(&self, o: &ProjPoint) -> Result<ProjLine> {
        let l = cross(self.0, o.0);
        if norm(l) <= GENERIC_TOL * norm(self.0) * norm(o.0) {
            return Err(PantsError::NonGenericFlags);
        }
        Ok(ProjLine(l))
    }
}

impl ProjLine {
    pub fn new(c: [f64; 3]) -> Result<Self> {
        canonical(c).map(|_| ProjLine(c))
    }

    pub fn canonical(&self) -> [f64; 3] {
        canonical(self.0).unwrap_or(self.0)
    }

    pub fn same_as(&self, o: &ProjLine, tol: f64) -> bool {
        norm(cross(self.canonical(), o.canonical())) <= tol
    }

    /// Evaluate the covector on a homogeneous point (representative-dependent).
    pub fn eval(&self, p: &ProjPoint) -> f64 {
        dot(self.0, p.0)
    }

    /// Pairing of unit representatives; zero iff the point lies on the line.
    pub fn normalized_pairing(&self, p: &ProjPoint) -> f64 {
        dot(self.0, p.0) / (norm(self.0) * norm(p.0))
    }

    /// Image under `g`: covectors transform by the inverse transpose.
    pub fn transform(&self, g: &Mat3) -> Result<ProjLine> {
        let gi = g.inverse()?;
        let m = &gi.0;
        let l = self.0;
        Ok(ProjLine([
            l[0] * m[0][0] + l[1] * m[1][0] + l[2] * m[2][0],
            l[0] * m[0][1] + l[1] * m[1][1] + l[2] * m[2][1],
            l[0] * m[0][2] + l[1] * m[1][2] + l[2] * m[2][2],
        ]))
    }

    /// Intersection point of two distinct lines.
    pub fn meet(&self, o: &ProjLine) -> Result<ProjPoint> {
        let p = cross(self.0, o.0);
        if norm(p) <= GENERIC_TOL * norm(self.0) * norm(o.0) {
            return Err(PantsError::DegeneratePencil);
        }
        Ok(ProjPoint(p))
    }
}

/// A (point, line) incidence pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Flag {
    pub point: ProjPoint,
    pub line: ProjLine,
}

impl Flag {
    /// Build a flag, checking incidence within [`GENERIC_TOL`].
    pub fn new(point: ProjPoint, line: ProjLine) -> Result<Self> {
        if line.normalized_pairing(&point).abs() > GENERIC_TOL {
            return Err(PantsError::InvalidArgument(
                "flag point does not lie on its line".into(),
            ));
        }
        Ok(Flag { point, line })
    }

    pub fn transform(&self, g: &Mat3) -> Result<Flag> {
        Ok(Flag {
            point: self.point.transform(g),
            line: self.line.transform(g)?,
        })
    }
}

/// Cross ratio of four points on ℝP¹ given in homogeneous coordinates,
/// with the convention cr(∞, −1, 0, x) = x.
pub fn cross_ratio_p1(x: [[f64; 2]; 4]) -> f64 {
    let d = |a: [f64; 2], b: [f64; 2]| a[0] * b[1] - a[1] * b[0];
    d(x[0], x[1]) * d(x[2], x[3]) / (d(x[0], x[3]) * d(x[1], x[2]))
}

/// Cross ratio of four lines through the point `p`, computed by intersecting
/// them with the transversal `h` and identifying `h` with ℝP¹.
pub fn cross_ratio_concurrent_via(lines: [ProjLine; 4], p: &ProjPoint, h: &ProjLine) -> Result<f64> {
    for l in &lines {
        if l.normalized_pairing(p).abs() > GENERIC_TOL {
            return Err(PantsError::NotConcurrent);
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if lines[i].same_as(&lines[j], GENERIC_TOL) {
                return Err(PantsError::DegeneratePencil);
            }
        }
    }
    if h.normalized_pairing(p).abs() <= GENERIC_TOL {
        return Err(PantsError::InvalidArgument(
            "transversal passes through the pencil point".into(),
        ));
    }
    // Basis of h: two independent points on it.
    let hv = h.canonical();
    let e = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let mut cands: Vec<[f64; 3]> = e.iter().map(|&ei| cross(hv, ei)).collect();
    cands.sort_by(|a, b| norm(*b).total_cmp(&norm(*a)));
    let b1 = cands[0];
    let b2 = {
        let c = cross(hv, b1);
        let n = norm(c);
        [c[0] / n, c[1] / n, c[2] / n]
    };
    let b1n = norm(b1);
    let b1 = [b1[0] / b1n, b1[1] / b1n, b1[2] / b1n];
    // b1, b2 orthonormal and orthogonal to hv, so coordinates are dot products.
    let mut xs = [[0.0; 2]; 4];
    for (k, l) in lines.iter().enumerate() {
        let q = cross(l.0, hv);
        xs[k] = [dot(q, b1), dot(q, b2)];
    }
    Ok(cross_ratio_p1(xs))
}

/// Cross ratio of four concurrent lines through `p` using a canonical
/// transversal; the value does not depend on that choice.
pub fn cross_ratio_concurrent(lines: [ProjLine; 4], p: &ProjPoint) -> Result<f64> {
    // The line orthogonal (in the standard metric) to p never passes through p.
    let h = ProjLine(p.canonical());
    cross_ratio_concurrent_via(lines, p, &h)
}

fn require_generic(values: &[f64]) -> Result<()> {
    if values.iter().any(|v| v.abs() <= GENERIC_TOL || !v.is_finite()) {
        Err(PantsError::NonGenericFlags)
    } else {
        Ok(())
    }
}

/// First edge cross ratio of a 4-tuple of flags:
/// −ℓ₁(p₂)·(p₁p₃)(p₄) / ℓ₁(p₄)·(p₁p₃)(p₂).
pub fn cr1(f: [Flag; 4]) -> Result<f64> {
    let [f1, f2, f3, f4] = f;
    let l13 = f1.point.join(&f3.point)?;
    let a = f1.line.eval(&f2.point);
    let b = l13.eval(&f4.point);
    let c = f1.line.eval(&f4.point);
    let d = l13.eval(&f2.point);
    require_generic(&[
        f1.line.normalized_pairing(&f2.point),
        f1.line.normalized_pairing(&f4.point),
        l13.normalized_pairing(&f2.point),
        l13.normalized_pairing(&f4.point),
    ])?;
    Ok(-(a * b) / (c * d))
}

/// Second edge cross ratio of a 4-tuple of flags:
/// −ℓ₃(p₄)·(p₁p₃)(p₂) / ℓ₃(p₂)·(p₁p₃)(p₄).
pub fn cr2(f: [Flag; 4]) -> Result<f64> {
    let [f1, f2, f3, f4] = f;
    let l13 = f1.point.join(&f3.point)?;
    let a = f3.line.eval(&f4.point);
    let b = l13.eval(&f2.point);
    let c = f3.line.eval(&f2.point);
    let d = l13.eval(&f4.point);
    require_generic(&[
        f3.line.normalized_pairing(&f4.point),
        f3.line.normalized_pairing(&f2.point),
        l13.normalized_pairing(&f2.point),
        l13.normalized_pairing(&f4.point),
    ])?;
    Ok(-(a * b) / (c * d))
}

/// Triple ratio ℓ₁(p₂)ℓ₂(p₃)ℓ₃(p₁) / ℓ₁(p₃)ℓ₂(p₁)ℓ₃(p₂).
pub fn triple_ratio(f: [Flag; 3]) -> Result<f64> {
    let [f1, f2, f3] = f;
    require_generic(&[
        f1.line.normalized_pairing(&f2.point),
        f2.line.normalized_pairing(&f3.point),
        f3.line.normalized_pairing(&f1.point),
        f1.line.normalized_pairing(&f3.point),
        f2.line.normalized_pairing(&f1.point),
        f3.line.normalized_pairing(&f2.point),
    ])?;
    Ok(f1.line.eval(&f2.point) * f2.line.eval(&f3.point) * f3.line.eval(&f1.point)
        / (f1.line.eval(&f3.point) * f2.line.eval(&f1.point) * f3.line.eval(&f2.point)))
}

/// The normal-form 4-tuple of flags parameterized by (x, y, z, w):
/// p₁ = e₁, ℓ₁ = [0,1,1]; p₂ = e₂, ℓ₂ = [1,0,1]; p₃ = e₃, ℓ₃ = [1,x,0];
/// p₄ = (1,y,z), ℓ₄ = [−wz−y, 1, w].
pub fn standard_configuration(x: f64, y: f64, z: f64, w: f64) -> Result<[Flag; 4]> {
    Ok([
        Flag::new(ProjPoint::new([1.0, 0.0, 0.0])?, ProjLine::new([0.0, 1.0, 1.0])?)?,
        Flag::new(ProjPoint::new([0.0, 1.0, 0.0])?, ProjLine::new([1.0, 0.0, 1.0])?)?,
        Flag::new(ProjPoint::new([0.0, 0.0, 1.0])?, ProjLine::new([1.0, x, 0.0])?)?,
        Flag::new(ProjPoint::new([1.0, y, z])?, ProjLine::new([-w * z - y, 1.0, w])?)?,
    ])
}

/// The four lines through p₁ whose cross ratio equals [`cr1`].
pub fn cr1_pencil(f: &[Flag; 4]) -> Result<[ProjLine; 4]> {
    let p1 = f[0].point;
    Ok([f[0].line, p1.join(&f[1].point)?, p1.join(&f[2].point)?, p1.join(&f[3].point)?])
}

/// The four lines through p₃ whose cross ratio equals [`cr2`].
pub fn cr2_pencil(f: &[Flag; 4]) -> Result<[ProjLine; 4]> {
    let p3 = f[2].point;
    Ok([f[2].line, p3.join(&f[3].point)?, p3.join(&f[0].point)?, p3.join(&f[1].point)?])
}
