//! Convex projective structures on the pair of pants.
//!
//! Eight positive Fock–Goncharov coordinates (σ₁…σ₆ on edges, τ₁, τ₂ on
//! triangles) parameterize framed convex projective structures on the pair
//! of pants. This crate provides:
//!
//! - [`holonomy`]: the peripheral holonomies ρ(α), ρ(β), ρ(γ) in SL(3,ℝ)
//!   and holonomies of arbitrary words;
//! - [`coords`]: Casimirs, symplectic leaves and their (σ₁, τ₁) chart;
//! - [`poisson`]: the quiver Poisson bracket, Hamiltonian flows of the
//!   hexagon and eruption functions, and Hamiltonian vector fields on leaves;
//! - [`traces`]: closed-form trace functions (figure-eight, commutator,
//!   αᵏγ⁻¹, Θ-web) with a matrix-product oracle;
//! - [`dynamics`]: orbit integration, periods, unique minima and level sets;
//! - [`flags`]: flags in ℝP², cross ratios and the triple ratio;
//! - [`verify`]: deterministic numerical verification suites.
//!
//! Supporting modules: [`proj_linalg`] (3×3 matrices up to scale),
//! [`scalar`] (second-order dual numbers for exact derivatives),
//! [`output`] (CSV, JSON numbers and SVG) and [`error`].

pub mod coords;
pub mod dynamics;
pub mod error;
pub mod flags;
pub mod holonomy;
pub mod output;
pub mod poisson;
pub mod proj_linalg;
pub mod scalar;
pub mod traces;
pub mod verify;
