//! 2×2 complex matrices and overflow-safe long products.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Entry magnitude above which [`ScaledMatrix`] renormalizes.
pub const RESCALE_THRESHOLD: f64 = 1e100;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Matrix2 {
    pub e11: Complex64,
    pub e12: Complex64,
    pub e21: Complex64,
    pub e22: Complex64,
}

impl Matrix2 {
    pub const fn new(e11: Complex64, e12: Complex64, e21: Complex64, e22: Complex64) -> Self {
        Matrix2 { e11, e12, e21, e22 }
    }

    pub fn real(e11: f64, e12: f64, e21: f64, e22: f64) -> Self {
        Matrix2::new(e11.into(), e12.into(), e21.into(), e22.into())
    }

    pub const fn identity() -> Self {
        Matrix2::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn zero() -> Self {
        Matrix2::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub fn diag(d1: Complex64, d2: Complex64) -> Self {
        Matrix2::new(d1, ZERO, ZERO, d2)
    }

    pub fn det(&self) -> Complex64 {
        self.e11 * self.e22 - self.e12 * self.e21
    }

    pub fn trace(&self) -> Complex64 {
        self.e11 + self.e22
    }

    /// Adjugate: equals the inverse when `det == 1`.
    pub fn adjugate(&self) -> Self {
        Matrix2::new(self.e22, -self.e12, -self.e21, self.e11)
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == ZERO {
            return None;
        }
        Some(self.adjugate().scale(d.inv()))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Matrix2::new(self.e11 * s, self.e12 * s, self.e21 * s, self.e22 * s)
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.e11 * v[0] + self.e12 * v[1],
            self.e21 * v[0] + self.e22 * v[1],
        ]
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.e11, self.e12, self.e21, self.e22]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Largest imaginary part in absolute value over the entries.
    pub fn max_imag(&self) -> f64 {
        self.entries().iter().map(|e| e.im.abs()).fold(0.0, f64::max)
    }

    /// Operator 2-norm (largest singular value), closed form for 2×2.
    pub fn norm(&self) -> f64 {
        let s = self.max_abs();
        if s == 0.0 || !s.is_finite() {
            return s;
        }
        let m = self.scale(Complex64::new(1.0 / s, 0.0));
        let fro2: f64 = m.entries().iter().map(|e| e.norm_sqr()).sum();
        let det2 = m.det().norm_sqr();
        let disc = (fro2 * fro2 - 4.0 * det2).max(0.0);
        s * ((fro2 + disc.sqrt()) / 2.0).sqrt()
    }

    /// Entrywise maximum distance to `other`.
    pub fn max_diff(&self, other: &Matrix2) -> f64 {
        (*self - *other).max_abs()
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, r: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.e11 * r.e11 + self.e12 * r.e21,
            self.e11 * r.e12 + self.e12 * r.e22,
            self.e21 * r.e11 + self.e22 * r.e21,
            self.e21 * r.e12 + self.e22 * r.e22,
        )
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;

    fn add(self, r: Matrix2) -> Matrix2 {
        Matrix2::new(self.e11 + r.e11, self.e12 + r.e12, self.e21 + r.e21, self.e22 + r.e22)
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;

    fn sub(self, r: Matrix2) -> Matrix2 {
        Matrix2::new(self.e11 - r.e11, self.e12 - r.e12, self.e21 - r.e21, self.e22 - r.e22)
    }
}

/// A matrix product stored as `mantissa · exp(log_scale)`.
///
/// The mantissa is renormalized whenever an entry exceeds
/// [`RESCALE_THRESHOLD`]; below that the mantissa is the plain product, so
/// short products agree bit-for-bit with naive multiplication.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledMatrix {
    pub mantissa: Matrix2,
    pub log_scale: f64,
}

impl ScaledMatrix {
    pub fn identity() -> Self {
        ScaledMatrix { mantissa: Matrix2::identity(), log_scale: 0.0 }
    }

    pub fn from_matrix(m: Matrix2) -> Self {
        let mut s = ScaledMatrix { mantissa: m, log_scale: 0.0 };
        s.renormalize();
        s
    }

    /// `self ← factor · self`.
    pub fn left_mul(&mut self, factor: &Matrix2) {
        self.mantissa = *factor * self.mantissa;
        self.renormalize();
    }

    /// `self · rhs` (rhs applied first).
    pub fn compose(&self, rhs: &ScaledMatrix) -> ScaledMatrix {
        let mut out = ScaledMatrix {
            mantissa: self.mantissa * rhs.mantissa,
            log_scale: self.log_scale + rhs.log_scale,
        };
        out.renormalize();
        out
    }

    fn renormalize(&mut self) {
        let m = self.mantissa.max_abs();
        if m > RESCALE_THRESHOLD && m.is_finite() {
            self.mantissa = self.mantissa.scale(Complex64::new(1.0 / m, 0.0));
            self.log_scale += m.ln();
        }
    }

    /// Natural log of the operator norm.
    pub fn log_norm(&self) -> f64 {
        self.mantissa.norm().ln() + self.log_scale
    }

    /// The product as a plain matrix; entries may overflow to infinity.
    pub fn to_matrix(&self) -> Matrix2 {
        self.mantissa.scale(Complex64::new(self.log_scale.exp(), 0.0))
    }

    /// `|det − 1|` relative to `max(1, ‖T‖²)`, evaluated without overflow.
    pub fn det_defect(&self) -> f64 {
        let inv_scale2 = (-2.0 * self.log_scale).exp();
        let n2 = self.mantissa.norm().powi(2);
        (self.mantissa.det() - inv_scale2).norm() / n2.max(inv_scale2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn norm_of_rotation_and_diagonal() {
        let rot = Matrix2::real(0.0, -1.0, 1.0, 0.0);
        assert!((rot.norm() - 1.0).abs() < 1e-15);
        let d = Matrix2::diag(c(3.0, 0.0), c(0.0, -0.5));
        assert!((d.norm() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn norm_matches_power_iteration() {
        let m = Matrix2::new(c(1.0, 2.0), c(-0.5, 0.0), c(0.3, -1.0), c(2.0, 0.1));
        // power iteration on M^H M
        let mh = Matrix2::new(m.e11.conj(), m.e21.conj(), m.e12.conj(), m.e22.conj());
        let g = mh * m;
        let mut v = [c(1.0, 0.0), c(0.3, 0.2)];
        let mut rayleigh = 0.0;
        for _ in 0..200 {
            let w = g.apply(v);
            let n = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
            rayleigh = n / (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
            v = [w[0] / n, w[1] / n];
        }
        assert!((m.norm() - rayleigh.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn scaled_product_survives_overflow() {
        let a = Matrix2::real(10.0, -1.0, 1.0, 0.0);
        let mut s = ScaledMatrix::identity();
        for _ in 0..1000 {
            s.left_mul(&a);
        }
        // growth rate is the larger eigenvalue 5 + sqrt(24)
        let rate = (5.0 + 24f64.sqrt()).ln();
        assert!((s.log_norm() / 1000.0 - rate).abs() < 1e-2);
        assert!(s.det_defect() < 1e-12);
        assert!(s.log_norm().is_finite());
    }

    #[test]
    fn adjugate_inverts_unimodular() {
        let m = Matrix2::new(c(2.0, 1.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let m = m.scale(m.det().sqrt().inv());
        let p = m * m.adjugate();
        assert!(p.max_diff(&Matrix2::identity()) < 1e-14);
    }
}
