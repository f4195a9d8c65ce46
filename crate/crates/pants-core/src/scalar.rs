//! Scalar abstraction shared by plain `f64` evaluation and forward-mode
//! automatic differentiation.
//!
//! Every formula in the crate that feeds the Hamiltonian dynamics (closed-form
//! traces, the leaf embedding, the matrix-product oracle) is written once,
//! generically over [`Scalar`]. Evaluating it with `f64` gives a value;
//! evaluating it with [`Dual2`] gives the value together with the exact
//! gradient and Hessian with respect to two seeded variables.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Minimal real-number interface needed by the formulas in this crate.
pub trait Scalar:
    Copy
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    /// Lift a constant.
    fn cst(x: f64) -> Self;
    /// The primal (real) part.
    fn value(&self) -> f64;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    /// Real cube root (sign-preserving).
    fn cbrt(self) -> Self;
    fn powi(self, n: i32) -> Self;
    /// `self^p` for a positive base.
    fn powf(self, p: f64) -> Self;

    fn recip(self) -> Self {
        Self::cst(1.0) / self
    }
}

impl Scalar for f64 {
    #[inline]
    fn cst(x: f64) -> Self {
        x
    }
    #[inline]
    fn value(&self) -> f64 {
        *self
    }
    #[inline]
    fn exp(self) -> Self {
        f64::exp(self)
    }
    #[inline]
    fn ln(self) -> Self {
        f64::ln(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn cbrt(self) -> Self {
        f64::cbrt(self)
    }
    #[inline]
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    #[inline]
    fn powf(self, p: f64) -> Self {
        f64::powf(self, p)
    }
}

/// Second-order hyper-dual number in two variables: value, gradient and
/// (symmetric) Hessian, propagated exactly through arithmetic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual2 {
    pub v: f64,
    pub g: [f64; 2],
    pub h: [[f64; 2]; 2],
}

impl Dual2 {
    pub const fn constant(v: f64) -> Self {
        Dual2 {
            v,
            g: [0.0; 2],
            h: [[0.0; 2]; 2],
        }
    }

    /// The independent variable number `index` (0 or 1) at value `v`.
    pub fn variable(v: f64, index: usize) -> Self {
        let mut d = Self::constant(v);
        d.g[index] = 1.0;
        d
    }

    /// Apply a scalar function given its value and first two derivatives at `self.v`.
    #[inline]
    fn chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        let mut h = [[0.0; 2]; 2];
        for (i, row) in h.iter_mut().enumerate() {
            for (j, hij) in row.iter_mut().enumerate() {
                *hij = f1 * self.h[i][j] + f2 * self.g[i] * self.g[j];
            }
        }
        Dual2 {
            v: f0,
            g: [f1 * self.g[0], f1 * self.g[1]],
            h,
        }
    }
}

impl Add for Dual2 {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Dual2 {
            v: self.v + o.v,
            g: [self.g[0] + o.g[0], self.g[1] + o.g[1]],
            h: [
                [self.h[0][0] + o.h[0][0], self.h[0][1] + o.h[0][1]],
                [self.h[1][0] + o.h[1][0], self.h[1][1] + o.h[1][1]],
            ],
        }
    }
}

impl Sub for Dual2 {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for Dual2 {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Mul for Dual2 {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        let mut h = [[0.0; 2]; 2];
        for (i, row) in h.iter_mut().enumerate() {
            for (j, hij) in row.iter_mut().enumerate() {
                *hij = self.v * o.h[i][j]
                    + o.v * self.h[i][j]
                    + self.g[i] * o.g[j]
                    + o.g[i] * self.g[j];
            }
        }
        Dual2 {
            v: self.v * o.v,
            g: [
                self.v * o.g[0] + o.v * self.g[0],
                self.v * o.g[1] + o.v * self.g[1],
            ],
            h,
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for Dual2 {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl Add<f64> for Dual2 {
    type Output = Self;
    #[inline]
    fn add(mut self, c: f64) -> Self {
        self.v += c;
        self
    }
}

impl Sub<f64> for Dual2 {
    type Output = Self;
    #[inline]
    fn sub(mut self, c: f64) -> Self {
        self.v -= c;
        self
    }
}

impl Mul<f64> for Dual2 {
    type Output = Self;
    #[inline]
    fn mul(self, c: f64) -> Self {
        Dual2 {
            v: self.v * c,
            g: [self.g[0] * c, self.g[1] * c],
            h: [
                [self.h[0][0] * c, self.h[0][1] * c],
                [self.h[1][0] * c, self.h[1][1] * c],
            ],
        }
    }
}

impl Div<f64> for Dual2 {
    type Output = Self;
    #[inline]
    fn div(self, c: f64) -> Self {
        self * (1.0 / c)
    }
}

impl Scalar for Dual2 {
    fn cst(x: f64) -> Self {
        Dual2::constant(x)
    }
    fn value(&self) -> f64 {
        self.v
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }
    fn ln(self) -> Self {
        let x = self.v;
        self.chain(x.ln(), 1.0 / x, -1.0 / (x * x))
    }
    fn sqrt(self) -> Self {
        let r = self.v.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * self.v))
    }
    fn cbrt(self) -> Self {
        let r = self.v.cbrt();
        let d1 = 1.0 / (3.0 * r * r);
        let d2 = -2.0 / (9.0 * r * r * r * r * r);
        self.chain(r, d1, d2)
    }
    fn powi(self, n: i32) -> Self {
        let x = self.v;
        let nf = f64::from(n);
        let d1 = if n == 0 { 0.0 } else { nf * x.powi(n - 1) };
        let d2 = if n == 0 || n == 1 {
            0.0
        } else {
            nf * (nf - 1.0) * x.powi(n - 2)
        };
        self.chain(x.powi(n), d1, d2)
    }
    fn powf(self, p: f64) -> Self {
        let x = self.v;
        let f0 = x.powf(p);
        self.chain(f0, p * f0 / x, p * (p - 1.0) * f0 / (x * x))
    }
    fn recip(self) -> Self {
        let x = self.v;
        self.chain(1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x))
    }
}

/// A smooth function of the leaf chart (σ₁, τ₁), evaluable at any scalar
/// type so that exact derivatives come for free.
pub trait ChartFunction {
    fn eval<S: Scalar>(&self, sigma1: S, tau1: S) -> S;

    /// Value, gradient and Hessian with respect to (σ₁, τ₁).
    fn jet(&self, sigma1: f64, tau1: f64) -> Dual2 {
        self.eval(Dual2::variable(sigma1, 0), Dual2::variable(tau1, 1))
    }

    /// Value, gradient and Hessian with respect to (u, v) = (log σ₁, log τ₁).
    fn log_jet(&self, u: f64, v: f64) -> Dual2 {
        self.eval(Dual2::variable(u, 0).exp(), Dual2::variable(v, 1).exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f<S: Scalar>(x: S, y: S) -> S {
        (x * y + x.powi(3)).exp().ln() / (y + 2.0) + x.cbrt() * y.sqrt() - y.powf(1.5)
    }

    #[test]
    fn dual_matches_finite_differences() {
        let (x0, y0) = (1.3, 0.7);
        let d = f(Dual2::variable(x0, 0), Dual2::variable(y0, 1));
        assert!((d.v - f(x0, y0)).abs() < 1e-14);
        let h = 1e-5;
        let fx = (f(x0 + h, y0) - f(x0 - h, y0)) / (2.0 * h);
        let fy = (f(x0, y0 + h) - f(x0, y0 - h)) / (2.0 * h);
        assert!((d.g[0] - fx).abs() < 1e-8);
        assert!((d.g[1] - fy).abs() < 1e-8);
        let fxy = (f(x0 + h, y0 + h) - f(x0 + h, y0 - h) - f(x0 - h, y0 + h)
            + f(x0 - h, y0 - h))
            / (4.0 * h * h);
        let fxx = (f(x0 + h, y0) - 2.0 * f(x0, y0) + f(x0 - h, y0)) / (h * h);
        assert!((d.h[0][1] - fxy).abs() < 1e-4);
        assert!((d.h[1][0] - d.h[0][1]).abs() < 1e-14);
        assert!((d.h[0][0] - fxx).abs() < 1e-4);
    }

    #[test]
    fn constants_have_no_derivative() {
        let c = Dual2::constant(2.0).exp() * 3.0;
        assert_eq!(c.g, [0.0, 0.0]);
        assert_eq!(c.h, [[0.0; 2]; 2]);
    }

    #[test]
    fn powi_edge_exponents() {
        let x = Dual2::variable(2.0, 0);
        assert_eq!(x.powi(0).v, 1.0);
        assert_eq!(x.powi(0).g[0], 0.0);
        assert_eq!(x.powi(1).g[0], 1.0);
        let r = x.powi(-2);
        assert!((r.g[0] + 2.0 / 8.0).abs() < 1e-15);
        assert!((r.h[0][0] - 6.0 / 16.0).abs() < 1e-15);
    }
}
