//! Real polynomials in the monomial basis and bracketing root search.

use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

/// Coefficients in ascending degree: `coeffs[i]` multiplies `x^i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolynomialReal {
    coeffs: Vec<f64>,
}

impl PolynomialReal {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        PolynomialReal { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        PolynomialReal::new(vec![c])
    }

    /// `c0 + c1 x`
    pub fn linear(c0: f64, c1: f64) -> Self {
        PolynomialReal::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        *self.coeffs.last().unwrap()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `Σ |c_i| |x|^i`, the scale against which rounding in [`eval`](Self::eval) is measured.
    pub fn eval_abs(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * ax + c.abs())
    }

    pub fn derivative(&self) -> PolynomialReal {
        if self.coeffs.len() == 1 {
            return PolynomialReal::constant(0.0);
        }
        PolynomialReal::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| i as f64 * c).collect(),
        )
    }

    pub fn scale(&self, s: f64) -> PolynomialReal {
        PolynomialReal::new(self.coeffs.iter().map(|c| c * s).collect())
    }
}

impl Add for &PolynomialReal {
    type Output = PolynomialReal;

    fn add(self, rhs: &PolynomialReal) -> PolynomialReal {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &PolynomialReal, i: usize| p.coeffs.get(i).copied().unwrap_or(0.0);
        PolynomialReal::new((0..n).map(|i| get(self, i) + get(rhs, i)).collect())
    }
}

impl Mul for &PolynomialReal {
    type Output = PolynomialReal;

    fn mul(self, rhs: &PolynomialReal) -> PolynomialReal {
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolynomialReal::new(out)
    }
}

/// Bisects `f` on `[lo, hi]` given a sign change, down to adjacent floats.
///
/// Returns the midpoint of the final bracket.
pub fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots of `f` on `[lo, hi]` located from sign changes on a uniform grid of
/// `points` samples. Exact zeros at grid nodes are reported once.
pub fn sign_change_roots(lo: f64, hi: f64, points: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
    let points = points.max(2);
    let h = (hi - lo) / (points - 1) as f64;
    let xs: Vec<f64> = (0..points).map(|i| if i + 1 == points { hi } else { lo + h * i as f64 }).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut roots = Vec::new();
    for i in 0..points {
        if ys[i] == 0.0 {
            roots.push(xs[i]);
            continue;
        }
        if i + 1 < points && ys[i + 1] != 0.0 && (ys[i] < 0.0) != (ys[i + 1] < 0.0) {
            roots.push(bisect(xs[i], xs[i + 1], &f));
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horner_and_derivative() {
        // x^2 - 2
        let p = PolynomialReal::new(vec![-2.0, 0.0, 1.0]);
        assert_eq!(p.eval(0.0), -2.0);
        assert_eq!(p.eval(3.0), 7.0);
        assert_eq!(p.derivative().coeffs(), &[0.0, 2.0]);
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn product_of_linears() {
        let p = &PolynomialReal::linear(-1.0, 1.0) * &PolynomialReal::linear(1.0, 1.0);
        assert_eq!(p.coeffs(), &[-1.0, 0.0, 1.0]);
    }

    #[test]
    fn finds_all_simple_roots() {
        let roots = sign_change_roots(-3.0, 3.0, 64, |x| (x - 1.0) * (x + 0.5) * (x - 2.25));
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip([-0.5, 1.0, 2.25]) {
            assert!((r - e).abs() < 1e-14);
        }
    }
}
