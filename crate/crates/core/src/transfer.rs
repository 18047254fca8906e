//! q-step transfer matrices along a coefficient sequence, their
//! diagonalization, long products `T_{m,n}` and the coupling matrices
//! `W_m = U_m^{-1} U_{m+1} - I`.

use std::ops::Range;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coefficients::{JacobiCoefficients, PeriodicJacobi};
use crate::error::{Error, Result};
use crate::matrix::{Matrix2, ScaledMatrix};
use crate::periodic::{discriminant_polynomial, transfer_step, transfer_step_real};

const DEGENERATE_TRACE: f64 = 1e-12;
const SINGULAR_C: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn of(x: f64) -> Sign {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

/// `Φ_m(z)`, the product over sites `mq + 1 ..= (m + 1) q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QStepBlock {
    pub m: usize,
    pub phi: Matrix2,
    pub delta: Complex64,
}

impl QStepBlock {
    pub fn a(&self) -> Complex64 {
        self.phi.e11
    }

    pub fn b(&self) -> Complex64 {
        self.phi.e12
    }

    pub fn c(&self) -> Complex64 {
        self.phi.e21
    }

    pub fn d(&self) -> Complex64 {
        self.phi.e22
    }
}

pub fn q_step_block<S: JacobiCoefficients + ?Sized>(spec: &S, q: usize, m: usize, z: Complex64) -> Result<QStepBlock> {
    if q == 0 {
        return Err(Error::domain("period q must be at least 1"));
    }
    let mut phi = Matrix2::identity();
    for n in m * q + 1..=(m + 1) * q {
        let (a, b) = spec.coefficients(n)?;
        phi = transfer_step(a, b, z) * phi;
    }
    Ok(QStepBlock { m, phi, delta: phi.trace() })
}

/// The q coefficients of block `m`, as one period of a periodic matrix.
pub fn block_coefficients<S: JacobiCoefficients + ?Sized>(spec: &S, q: usize, m: usize) -> Result<PeriodicJacobi> {
    let (a, b) = (m * q + 1..=(m + 1) * q)
        .map(|n| spec.coefficients(n))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    PeriodicJacobi::new(a, b)
}

/// `T_{m,n}(x) = A(a_n, b_n; x) ⋯ A(a_m, b_m; x)` in overflow-safe form.
pub fn transfer_product<S: JacobiCoefficients + ?Sized>(spec: &S, m: usize, n: usize, x: Complex64) -> Result<ScaledMatrix> {
    if m == 0 || m > n {
        return Err(Error::domain(format!("need 1 <= m <= n, got m={m}, n={n}")));
    }
    let mut t = ScaledMatrix::identity();
    if x.im == 0.0 {
        for k in m..=n {
            let (a, b) = spec.coefficients(k)?;
            t.left_mul(&transfer_step_real(a, b, x.re));
        }
    } else {
        for k in m..=n {
            let (a, b) = spec.coefficients(k)?;
            t.left_mul(&transfer_step(a, b, x));
        }
    }
    Ok(t)
}

/// Eigen-decomposition `Φ = U Λ U^{-1}` with `Λ = diag(λ, 1/λ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Diagonalization {
    pub lambda: Complex64,
    pub lambda_inv: Complex64,
    pub u: Matrix2,
    pub u_inv: Matrix2,
    pub s: Sign,
}

impl Diagonalization {
    pub fn big_lambda(&self) -> Matrix2 {
        Matrix2::diag(self.lambda, self.lambda_inv)
    }

    pub fn reconstruct(&self) -> Matrix2 {
        self.u * self.big_lambda() * self.u_inv
    }
}

/// `λ = (Δ + i s √(4 − Δ²)) / 2`, principal square root.
pub fn eigenvalue(delta: Complex64, s: Sign) -> Complex64 {
    let root = (Complex64::new(4.0, 0.0) - delta * delta).sqrt();
    (delta + Complex64::i() * s.value() * root) * 0.5
}

/// Diagonalizes a block with eigenvector columns `(λ − D, C)` and `(1/λ − D, C)`.
pub fn eigen_branch(block: &QStepBlock, s: Sign) -> Result<Diagonalization> {
    let delta = block.delta;
    if (delta - 2.0).norm() < DEGENERATE_TRACE || (delta + 2.0).norm() < DEGENERATE_TRACE {
        return Err(Error::DegenerateBlock { block: block.m, delta: delta.re });
    }
    let c = block.c();
    if c.norm() < SINGULAR_C {
        return Err(Error::NonDiagonalizable { block: block.m, c: c.norm() });
    }
    let d = block.d();
    let lambda = eigenvalue(delta, s);
    // 1/λ is the other root of λ² − Δλ + 1
    let lambda_inv = delta - lambda;
    let u = Matrix2::new(lambda - d, lambda_inv - d, c, c);
    let k = ((lambda - lambda_inv) * c).inv();
    let u_inv = Matrix2::new(c, d - lambda_inv, -c, lambda - d).scale(k);
    Ok(Diagonalization { lambda, lambda_inv, u, u_inv, s })
}

/// Picks `s = sign(−Re Δ_m'(x))` at the midpoint of `[lo, hi]`, with `Δ_m'`
/// from the block's discriminant polynomial.
pub fn pick_sign<S: JacobiCoefficients + ?Sized>(spec: &S, q: usize, m: usize, lo: f64, hi: f64) -> Result<Sign> {
    let block = block_coefficients(spec, q, m)?;
    let slope = discriminant_polynomial(&block).derivative().eval(0.5 * (lo + hi));
    Ok(Sign::of(-slope))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CouplingSeries {
    pub start: usize,
    /// `W_m` for `m` in the requested range.
    pub w: Vec<Matrix2>,
    /// Running sums of `‖W_m‖²` (operator norm).
    pub partial_l2: Vec<f64>,
}

impl CouplingSeries {
    pub fn total(&self) -> f64 {
        self.partial_l2.last().copied().unwrap_or(0.0)
    }

    /// `(E_m, F_m, G_m, H_m)`, the entries of `W_m`.
    pub fn entries(&self, m: usize) -> Option<[Complex64; 4]> {
        self.w.get(m.checked_sub(self.start)?).map(Matrix2::entries)
    }
}

pub fn coupling_series<S: JacobiCoefficients + ?Sized>(
    spec: &S,
    q: usize,
    z: Complex64,
    m_range: Range<usize>,
    s: Sign,
) -> Result<CouplingSeries> {
    let start = m_range.start;
    let mut w = Vec::with_capacity(m_range.len());
    let mut partial_l2 = Vec::with_capacity(m_range.len());
    let mut running = 0.0;
    let mut prev = eigen_branch(&q_step_block(spec, q, start, z)?, s)?;
    for m in m_range {
        let next = eigen_branch(&q_step_block(spec, q, m + 1, z)?, s)?;
        let wm = prev.u_inv * next.u - Matrix2::identity();
        running += wm.norm().powi(2);
        w.push(wm);
        partial_l2.push(running);
        prev = next;
    }
    Ok(CouplingSeries { start, w, partial_l2 })
}
