//! Naive test-side oracle, written without reference to the library's matrix
//! code: plain nested arrays, a generic adjugate inverse (instead of the
//! closed-form T⁻¹), and eigenvalues from the trigonometric cubic formula.

#![allow(dead_code, clippy::needless_range_loop)]

pub type M = [[f64; 3]; 3];

pub fn mul(a: &M, b: &M) -> M {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

pub fn det(a: &M) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

pub fn inv(a: &M) -> M {
    let d = det(a);
    let mut r = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            // cofactor of (j, i)
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            r[i][j] = (a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]) / d;
        }
    }
    r
}

pub fn tr(a: &M) -> f64 {
    a[0][0] + a[1][1] + a[2][2]
}

fn scale(a: M, k: f64) -> M {
    a.map(|row| row.map(|x| x * k))
}

/// Unit-determinant triangle matrix.
pub fn t(x: f64) -> M {
    scale([[0.0, 0.0, 1.0], [0.0, -1.0, -1.0], [x, x + 1.0, 1.0]], x.powf(-1.0 / 3.0))
}

/// Unit-determinant edge matrix.
pub fn e(z: f64, w: f64) -> M {
    scale([[0.0, 0.0, 1.0 / z], [0.0, -1.0, 0.0], [w, 0.0, 0.0]], (z / w).powf(1.0 / 3.0))
}

/// (A, B, C) from a coordinate tuple (σ₁..σ₆, τ₁, τ₂).
pub fn peripheral(x: &[f64; 8]) -> [M; 3] {
    let [s1, s2, s3, s4, s5, s6, t1, t2] = *x;
    let ti = inv(&t(t1));
    let chain = |ms: &[M]| ms.iter().skip(1).fold(ms[0], |acc, m| mul(&acc, m));
    [
        chain(&[e(s2, s1), t(t2), e(s3, s4), t(t1)]),
        chain(&[ti, e(s4, s3), t(t2), e(s5, s6), ti]),
        chain(&[t(t1), e(s6, s5), t(t2), e(s1, s2)]),
    ]
}

/// Casimirs (ℓα₁, ℓα₂, ℓβ₁, ℓβ₂, ℓγ₁, ℓγ₂).
pub fn casimirs(x: &[f64; 8]) -> [f64; 6] {
    let [s1, s2, s3, s4, s5, s6, t1, t2] = *x;
    let tt = t1 * t2;
    [s1 * s4, tt / (s2 * s3), s3 * s6, tt / (s4 * s5), s2 * s5, tt / (s1 * s6)]
}

/// Point of the unipotent leaf with chart coordinates (σ₁, τ₁).
pub fn unipotent(s: f64, t: f64) -> [f64; 8] {
    [s, 1.0 / s, s, 1.0 / s, s, 1.0 / s, t, 1.0 / t]
}

/// The traced words of the test suite.
pub enum W {
    Fig8,
    Fig8Inv,
    Commutator,
    Power(u32),
    Theta,
}

pub fn trace(x: &[f64; 8], w: &W) -> f64 {
    let [a, _, c] = peripheral(x);
    let ai = inv(&a);
    let ci = inv(&c);
    match w {
        W::Fig8 => tr(&mul(&a, &ci)),
        W::Fig8Inv => tr(&mul(&c, &ai)),
        W::Commutator => tr(&mul(&mul(&a, &c), &mul(&ai, &ci))),
        W::Power(k) => {
            let mut p = ci;
            for _ in 0..*k {
                p = mul(&a, &p);
            }
            tr(&p)
        }
        W::Theta => tr(&a) * tr(&c) - tr(&mul(&a, &ci)),
    }
}

/// Real eigenvalues of a matrix with real spectrum, by the trigonometric
/// solution of the characteristic cubic, polished with Newton steps.
pub fn eigenvalues(a: &M) -> [f64; 3] {
    let c2 = -tr(a);
    let c1 = a[0][0] * a[1][1] - a[0][1] * a[1][0] + a[0][0] * a[2][2] - a[0][2] * a[2][0] + a[1][1] * a[2][2]
        - a[1][2] * a[2][1];
    let c0 = -det(a);
    let shift = -c2 / 3.0;
    let p = c1 - c2 * c2 / 3.0;
    let q = 2.0 * c2.powi(3) / 27.0 - c2 * c1 / 3.0 + c0;
    let mut out = [shift; 3];
    if p < 0.0 {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let th = arg.acos() / 3.0;
        for (k, o) in out.iter_mut().enumerate() {
            *o = shift + m * (th - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos();
        }
    }
    for o in &mut out {
        for _ in 0..4 {
            let f = ((*o + c2) * *o + c1) * *o + c0;
            let d = (3.0 * *o + 2.0 * c2) * *o + c1;
            if d != 0.0 {
                *o -= f / d;
            }
        }
    }
    out
}

/// Largest entry deviation of `m`, rescaled to unit trace/3, from the identity.
pub fn distance_from_identity(m: &M) -> f64 {
    let k = tr(m) / 3.0;
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let id = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((m[i][j] / k - id).abs());
        }
    }
    worst
}

/// Small deterministic generator (xorshift64*), independent of the library's.
pub struct Xs(pub u64);

impl Xs {
    pub fn next_f64(&mut self) -> f64 {
        self.0 ^= self.0 >> 12;
        self.0 ^= self.0 << 25;
        self.0 ^= self.0 >> 27;
        (self.0.wrapping_mul(0x2545_f491_4f6c_dd1d) >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        (lo.ln() + (hi.ln() - lo.ln()) * self.next_f64()).exp()
    }

    pub fn coords(&mut self) -> [f64; 8] {
        [0; 8].map(|_| self.log_uniform(0.1, 10.0))
    }
}
