//! The coordinate chart on framed structures of the pair of pants: the eight
//! Fock–Goncharov coordinates, their six Casimirs, the two-dimensional
//! symplectic leaves and their (σ₁, τ₁) chart, and the distinguished
//! Fuchsian and unipotent points.

use crate::error::{require_positive, PantsError, Result};
use crate::output::fmt17;
use crate::scalar::Scalar;

/// The eight positive coordinates (σ₁..σ₆, τ₁, τ₂). Edge coordinates are
/// `sigma[0..6]`, triangle coordinates `tau[0..2]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FGCoords {
    pub sigma: [f64; 6],
    pub tau: [f64; 2],
}

/// Casimir values (ℓα,1, ℓα,2, ℓβ,1, ℓβ,2, ℓγ,1, ℓγ,2) defining a symplectic leaf.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LengthVector(pub [f64; 6]);

/// A point of a symplectic leaf in the (σ₁, τ₁) chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeafPoint {
    pub leaf: LengthVector,
    pub sigma1: f64,
    pub tau1: f64,
}

impl FGCoords {
    pub fn new(sigma: [f64; 6], tau: [f64; 2]) -> Result<Self> {
        for s in sigma {
            require_positive("edge coordinate", s)?;
        }
        for t in tau {
            require_positive("triangle coordinate", t)?;
        }
        Ok(FGCoords { sigma, tau })
    }

    /// From the flat list (σ₁, …, σ₆, τ₁, τ₂).
    pub fn from_slice(x: &[f64]) -> Result<Self> {
        if x.len() != 8 {
            return Err(PantsError::InvalidArgument(format!(
                "expected 8 coordinates, got {}",
                x.len()
            )));
        }
        FGCoords::new([x[0], x[1], x[2], x[3], x[4], x[5]], [x[6], x[7]])
    }

    pub fn ones() -> Self {
        FGCoords {
            sigma: [1.0; 6],
            tau: [1.0; 2],
        }
    }

    /// The flat list (X₁, …, X₈) = (σ₁, …, σ₆, τ₁, τ₂).
    pub fn as_array(&self) -> [f64; 8] {
        let s = self.sigma;
        [s[0], s[1], s[2], s[3], s[4], s[5], self.tau[0], self.tau[1]]
    }

    pub fn from_array(x: [f64; 8]) -> Self {
        FGCoords {
            sigma: [x[0], x[1], x[2], x[3], x[4], x[5]],
            tau: [x[6], x[7]],
        }
    }

    /// `{"sigma":[…],"tau":[…]}` with 17 significant digits.
    pub fn to_json(&self) -> String {
        format!(
            "{{\"sigma\":[{}],\"tau\":[{}]}}",
            join17(&self.sigma),
            join17(&self.tau)
        )
    }
}

impl LengthVector {
    pub fn new(l: [f64; 6]) -> Result<Self> {
        for x in l {
            require_positive("Casimir value", x)?;
        }
        Ok(LengthVector(l))
    }

    pub fn from_slice(x: &[f64]) -> Result<Self> {
        let arr: [f64; 6] = x.try_into().map_err(|_| {
            PantsError::InvalidArgument(format!("expected 6 Casimir values, got {}", x.len()))
        })?;
        LengthVector::new(arr)
    }

    /// The unipotent leaf: every Casimir equals one.
    pub fn unipotent() -> Self {
        LengthVector([1.0; 6])
    }

    pub fn is_unipotent(&self, tol: f64) -> bool {
        self.0.iter().all(|x| (x - 1.0).abs() <= tol)
    }

    /// Cube roots of the six Casimirs, used throughout the closed forms.
    pub fn cube_roots(&self) -> [f64; 6] {
        self.0.map(f64::cbrt)
    }

    /// Largest relative deviation from another length vector.
    pub fn max_rel_diff(&self, o: &LengthVector) -> f64 {
        self.0
            .iter()
            .zip(o.0.iter())
            .fold(0.0, |w: f64, (a, b)| w.max(((a - b) / b).abs()))
    }
}

impl LeafPoint {
    pub fn new(leaf: LengthVector, sigma1: f64, tau1: f64) -> Result<Self> {
        require_positive("sigma1", sigma1)?;
        require_positive("tau1", tau1)?;
        Ok(LeafPoint { leaf, sigma1, tau1 })
    }

    pub fn unipotent(sigma1: f64, tau1: f64) -> Result<Self> {
        LeafPoint::new(LengthVector::unipotent(), sigma1, tau1)
    }

    pub fn with_point(&self, sigma1: f64, tau1: f64) -> LeafPoint {
        LeafPoint {
            leaf: self.leaf,
            sigma1,
            tau1,
        }
    }

    /// `{"leaf":[…],"point":[…]}` with 17 significant digits.
    pub fn to_json(&self) -> String {
        format!(
            "{{\"leaf\":[{}],\"point\":[{}]}}",
            join17(&self.leaf.0),
            join17(&[self.sigma1, self.tau1])
        )
    }
}

fn join17(x: &[f64]) -> String {
    x.iter().map(|v| fmt17(*v)).collect::<Vec<_>>().join(",")
}

/// The six Casimirs of a coordinate tuple:
/// ℓα,1 = σ₁σ₄, ℓα,2 = τ₁τ₂/(σ₂σ₃), ℓβ,1 = σ₃σ₆, ℓβ,2 = τ₁τ₂/(σ₄σ₅),
/// ℓγ,1 = σ₂σ₅, ℓγ,2 = τ₁τ₂/(σ₁σ₆).
pub fn casimirs(c: &FGCoords) -> LengthVector {
    let [s1, s2, s3, s4, s5, s6] = c.sigma;
    let tt = c.tau[0] * c.tau[1];
    LengthVector([
        s1 * s4,
        tt / (s2 * s3),
        s3 * s6,
        tt / (s4 * s5),
        s2 * s5,
        tt / (s1 * s6),
    ])
}

/// Leaf embedding generic over the scalar type: returns (σ₁, …, σ₆, τ₁, τ₂)
/// for the chart point (σ₁, τ₁) of the leaf with the given Casimirs.
pub fn leaf_embed_generic<S: Scalar>(l: &LengthVector, s1: S, t1: S) -> [S; 8] {
    let [a1, a2, b1, b2, g1, g2] = l.0;
    let c = f64::cbrt;
    let s2 = s1.recip() * (c(a1 * b2 * g1).powi(2) / c(a2 * b1 * g2));
    let s3 = s1 * (c(b1 * g2).powi(2) / c(a1 * a2 * b2 * g1));
    let s4 = s1.recip() * a1;
    let s5 = s1 * (c(a2 * b1 * g1 * g2) / c(a1 * b2).powi(2));
    let s6 = s1.recip() * (c(a1 * a2 * b1 * b2 * g1) / c(g2).powi(2));
    let t2 = t1.recip() * c(a1 * a2 * b1 * b2 * g1 * g2);
    [s1, s2, s3, s4, s5, s6, t1, t2]
}

/// The coordinates of a leaf point; `casimirs(leaf_embed(p)) == p.leaf`.
pub fn leaf_embed(p: &LeafPoint) -> FGCoords {
    FGCoords::from_array(leaf_embed_generic(&p.leaf, p.sigma1, p.tau1))
}

/// The leaf point of a coordinate tuple (its Casimirs and its (σ₁, τ₁)).
pub fn leaf_point_of(c: &FGCoords) -> LeafPoint {
    LeafPoint {
        leaf: casimirs(c),
        sigma1: c.sigma[0],
        tau1: c.tau[0],
    }
}

/// The Fuchsian structure with boundary data (ℓα, ℓβ, ℓγ):
/// (s₁, s₁, s₃, s₃, s₅, s₅, 1, 1) with s₁ = √(ℓαℓγ/ℓβ), s₃ = √(ℓαℓβ/ℓγ),
/// s₅ = √(ℓβℓγ/ℓα).
pub fn fuchsian_point(la: f64, lb: f64, lg: f64) -> Result<FGCoords> {
    require_positive("l_alpha", la)?;
    require_positive("l_beta", lb)?;
    require_positive("l_gamma", lg)?;
    let s1 = (la * lg / lb).sqrt();
    let s3 = (la * lb / lg).sqrt();
    let s5 = (lb * lg / la).sqrt();
    Ok(FGCoords {
        sigma: [s1, s1, s3, s3, s5, s5],
        tau: [1.0, 1.0],
    })
}

/// The leaf containing the Fuchsian structure with boundary data (ℓα, ℓβ, ℓγ),
/// i.e. (ℓα, 1/ℓα, ℓβ, 1/ℓβ, ℓγ, 1/ℓγ).
pub fn fuchsian_leaf(la: f64, lb: f64, lg: f64) -> Result<LengthVector> {
    LengthVector::new([la, 1.0 / la, lb, 1.0 / lb, lg, 1.0 / lg])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * y.abs().max(1.0))
    }

    #[test]
    fn casimir_examples() {
        assert_eq!(casimirs(&FGCoords::ones()).0, [1.0; 6]);
        let c = FGCoords::from_slice(&[2.0, 2.0, 1.5, 1.5, 4.0, 4.0, 1.0, 1.0]).unwrap();
        assert!(close(&casimirs(&c).0, &[3.0, 1.0 / 3.0, 6.0, 1.0 / 6.0, 8.0, 1.0 / 8.0], 1e-15));
        let c = FGCoords::from_slice(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]).unwrap();
        assert!(close(&casimirs(&c).0, &[4.0, 28.0 / 3.0, 18.0, 2.8, 10.0, 28.0 / 3.0], 1e-15));
    }

    #[test]
    fn embed_examples() {
        let p = LeafPoint::unipotent(2.5, 0.4).unwrap();
        let c = leaf_embed(&p).as_array();
        assert!(close(&c, &[2.5, 0.4, 2.5, 0.4, 2.5, 0.4, 0.4, 2.5], 1e-15));
        let l = LengthVector([3.0, 1.0 / 3.0, 6.0, 1.0 / 6.0, 8.0, 1.0 / 8.0]);
        let c = leaf_embed(&LeafPoint::new(l, 2.0, 1.0).unwrap()).as_array();
        assert!(close(&c, &[2.0, 2.0, 1.5, 1.5, 4.0, 4.0, 1.0, 1.0], 1e-14), "{c:?}");
        let c = leaf_embed(&LeafPoint::unipotent(1.0, 1.0).unwrap()).as_array();
        assert_eq!(c, [1.0; 8]);
    }

    #[test]
    fn embed_preserves_casimirs() {
        let l = LengthVector([0.3, 7.0, 2.0, 0.9, 4.4, 0.15]);
        let c = leaf_embed(&LeafPoint::new(l, 0.7, 3.1).unwrap());
        assert!(casimirs(&c).max_rel_diff(&l) < 1e-13);
    }

    #[test]
    fn fuchsian_examples() {
        let c = fuchsian_point(3.0, 6.0, 8.0).unwrap();
        assert!(close(&c.as_array(), &[2.0, 2.0, 1.5, 1.5, 4.0, 4.0, 1.0, 1.0], 1e-15));
        assert_eq!(fuchsian_point(1.0, 1.0, 1.0).unwrap(), FGCoords::ones());
        // paired Casimirs are reciprocal: the leaf is (ℓα, 1/ℓα, ℓβ, 1/ℓβ, ℓγ, 1/ℓγ)
        let l = casimirs(&c);
        assert!(l.max_rel_diff(&fuchsian_leaf(3.0, 6.0, 8.0).unwrap()) < 1e-15);
        // chart point on its own leaf
        let p = leaf_point_of(&c);
        assert_eq!((p.sigma1, p.tau1), (2.0, 1.0));
    }

    #[test]
    fn fuchsian_leaf_contains_fuchsian_point() {
        let (la, lb, lg) = (3.0, 6.0, 8.0);
        let l = fuchsian_leaf(la, lb, lg).unwrap();
        let s1 = (la * lg / lb).sqrt();
        let c = leaf_embed(&LeafPoint::new(l, s1, 1.0).unwrap());
        assert!(close(&c.as_array(), &[2.0, 2.0, 1.5, 1.5, 4.0, 4.0, 1.0, 1.0], 1e-14));
    }

    #[test]
    fn validation() {
        assert!(FGCoords::from_slice(&[1.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0]).is_err());
        assert!(FGCoords::from_slice(&[1.0; 7]).is_err());
        assert!(LengthVector::new([1.0, 1.0, -1.0, 1.0, 1.0, 1.0]).is_err());
        assert!(LeafPoint::unipotent(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn json_shapes() {
        let j = FGCoords::ones().to_json();
        assert!(j.starts_with("{\"sigma\":[1.0000000000000000e0,"));
        let j = LeafPoint::unipotent(2.0, 1.0).unwrap().to_json();
        assert!(j.contains("\"point\":[2.0000000000000000e0,1.0000000000000000e0]"));
    }
}
