//! Eventually periodic approximants `J^N`, their Weyl solutions and the
//! explicit a.c. density.
//!
//! `J^N` keeps the first `(N + 1) q` coefficients of a base sequence and
//! continues them q-periodically. Its q-step matrices are `Φ_n` for `n < N`
//! and `Φ_N` from then on, so the decaying eigenvector of `Φ_N` seeds a
//! Weyl solution that is pulled back to block 0 by exact inversion.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coefficients::{eventually_periodic_index, CoefficientSpec, JacobiCoefficients};
use crate::error::{Error, Result};
use crate::periodic::band_structure;
use crate::transfer::{block_coefficients, eigen_branch, q_step_block, Sign};

/// Distance from `|Δ_N| = 2` below which a real energy counts as a band edge.
pub const EDGE_MARGIN: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproximantSpec {
    pub base: CoefficientSpec,
    pub q: usize,
    /// Block index `N` after which the sequence repeats.
    pub blocks: usize,
}

impl ApproximantSpec {
    pub fn new(base: CoefficientSpec, q: usize, blocks: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::domain("period q must be at least 1"));
        }
        base.validate()?;
        if let Some(h) = base.horizon() {
            if h < (blocks + 1) * q {
                return Err(Error::Horizon { n: (blocks + 1) * q, horizon: h });
            }
        }
        Ok(ApproximantSpec { base, q, blocks })
    }

    pub fn to_spec(&self) -> CoefficientSpec {
        CoefficientSpec::EventuallyPeriodic { base: Box::new(self.base.clone()), q: self.q, blocks: self.blocks }
    }
}

impl JacobiCoefficients for ApproximantSpec {
    fn coefficients(&self, n: usize) -> Result<(f64, f64)> {
        if n == 0 {
            return Err(Error::domain("coefficient indices start at 1"));
        }
        self.base.coefficients(eventually_periodic_index(n, self.q, self.blocks))
    }
}

/// `a^N_n, b^N_n`.
pub fn approximant_coefficients(aspec: &ApproximantSpec, n: usize) -> Result<(f64, f64)> {
    aspec.coefficients(n)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylSolution {
    pub z: Complex64,
    pub s: Sign,
    /// `u^N_n` for `n = 0 ..= N`.
    pub values: Vec<[Complex64; 2]>,
    pub lambda: Complex64,
    /// Lower-left entry `C_N` of `Φ_N`.
    pub c: Complex64,
}

impl WeylSolution {
    pub fn blocks(&self) -> usize {
        self.values.len() - 1
    }

    pub fn u0(&self) -> [Complex64; 2] {
        self.values[0]
    }

    pub fn seed(&self) -> [Complex64; 2] {
        *self.values.last().unwrap()
    }

    /// `C_N Im λ_N`, the conserved value of `Im(u_1 conj(u_2))` at real energies.
    pub fn wronskian(&self) -> f64 {
        (self.c * self.lambda.im).re
    }

    /// Magnitude against which [`wronskian_defect`] is measured.
    pub fn scale(&self) -> f64 {
        self.values
            .iter()
            .map(|u| u[0].norm() * u[1].norm())
            .fold(self.wronskian().abs(), f64::max)
            .max(1.0)
    }
}

pub fn weyl_solution(aspec: &ApproximantSpec, z: Complex64, s: Sign) -> Result<WeylSolution> {
    let n_blocks = aspec.blocks;
    let last = q_step_block(aspec, aspec.q, n_blocks, z)?;
    let diag = eigen_branch(&last, s)?;
    let seed = [diag.lambda - last.d(), last.c()];
    let mut values = vec![seed; n_blocks + 1];
    for n in (0..n_blocks).rev() {
        let phi = q_step_block(aspec, aspec.q, n, z)?.phi;
        values[n] = phi.adjugate().apply(values[n + 1]);
    }
    Ok(WeylSolution { z, s, values, lambda: diag.lambda, c: last.c() })
}

/// `max_n |Im(u_{n,1} conj(u_{n,2})) − C_N Im λ_N|`.
pub fn wronskian_defect(u: &WeylSolution) -> f64 {
    let target = u.wronskian();
    u.values
        .iter()
        .map(|v| ((v[0] * v[1].conj()).im - target).abs())
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityValue {
    pub x: f64,
    pub value: f64,
    pub sign: Sign,
    /// Size of the imaginary part of the density formula before taking the real part.
    pub imag_residue: f64,
}

/// `f^N(x) = −C_N Im λ_N / (π |(u^N_0)_2|²)` for the given branch sign,
/// without any positivity adjustment.
pub fn ac_density_with_sign(aspec: &ApproximantSpec, x: f64, s: Sign) -> Result<DensityValue> {
    let z = Complex64::new(x, 0.0);
    let last = q_step_block(aspec, aspec.q, aspec.blocks, z)?;
    let delta_abs = last.delta.re.abs();
    if delta_abs >= 2.0 - EDGE_MARGIN {
        return Err(Error::OutsideBand { x, block: aspec.blocks, delta_abs });
    }
    let u = weyl_solution(aspec, z, s)?;
    let u2 = u.u0()[1].norm_sqr();
    if u2.sqrt() < 1e-12 {
        return Err(Error::NumericalDegeneracy(format!("(u_0)_2 vanishes at x = {x}")));
    }
    let raw = -u.c * u.lambda.im / (std::f64::consts::PI * u2);
    Ok(DensityValue { x, value: raw.re, sign: s, imag_residue: raw.im.abs() })
}

/// The density with the branch sign chosen so that the value is positive.
pub fn ac_density(aspec: &ApproximantSpec, x: f64) -> Result<DensityValue> {
    let first = ac_density_with_sign(aspec, x, Sign::Plus)?;
    if first.value > 0.0 {
        return Ok(first);
    }
    let second = ac_density_with_sign(aspec, x, Sign::Minus)?;
    if second.value > 0.0 {
        Ok(second)
    } else {
        Err(Error::NumericalDegeneracy(format!("no branch gives a positive density at x = {x}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityPoint {
    pub x: f64,
    pub density: Option<DensityValue>,
    /// `ok`, `outside` or an error message.
    pub status: String,
}

/// Evaluates [`ac_density`] on `xs`. Fails if the selected sign changes
/// between two points in the same band of the block-N periodic extension.
pub fn ac_density_grid(aspec: &ApproximantSpec, xs: &[f64]) -> Result<Vec<DensityPoint>> {
    let bs = band_structure(&block_coefficients(aspec, aspec.q, aspec.blocks)?, 1e-10)?;
    let mut band_sign: Vec<Option<Sign>> = vec![None; bs.q()];
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        let point = match ac_density(aspec, x) {
            Ok(d) => {
                if let Some(band) = bs.band_of(x) {
                    match band_sign[band] {
                        Some(s) if s != d.sign => {
                            return Err(Error::NumericalDegeneracy(format!(
                                "branch sign changes inside band {band} at x = {x}"
                            )))
                        }
                        _ => band_sign[band] = Some(d.sign),
                    }
                }
                DensityPoint { x, density: Some(d), status: "ok".into() }
            }
            Err(Error::OutsideBand { .. }) => DensityPoint { x, density: None, status: "outside".into() },
            Err(e) => DensityPoint { x, density: None, status: e.to_string() },
        };
        out.push(point);
    }
    Ok(out)
}

/// `m(z) = −(u_0)_1 / (u_0)_2` for `Im z > 0`.
pub fn m_function(aspec: &ApproximantSpec, z: Complex64, s: Sign) -> Result<Complex64> {
    if z.im <= 0.0 {
        return Err(Error::domain(format!("m-function needs Im z > 0, got {z}")));
    }
    let u = weyl_solution(aspec, z, s)?;
    if u.lambda.norm() >= 1.0 {
        return Err(Error::Precondition(format!(
            "branch {s:?} gives |λ_N| = {} >= 1 at z = {z}; the seed does not decay",
            u.lambda.norm()
        )));
    }
    let [u1, u2] = u.u0();
    if u2.norm() < 1e-300 {
        return Err(Error::Pole(z));
    }
    Ok(-u1 / u2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodic::comb_potential;
    use crate::transfer::{transfer_product, QStepBlock};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn free(q: usize, blocks: usize) -> ApproximantSpec {
        ApproximantSpec::new(CoefficientSpec::free(), q, blocks).unwrap()
    }

    fn free_density(x: f64) -> f64 {
        (4.0 - x * x).sqrt() / (2.0 * PI)
    }

    /// Analytic free m-function with the branch of `√(z² − 4)` that makes it Herglotz.
    fn free_m(z: Complex64) -> Complex64 {
        let r = (z * z - 4.0).sqrt();
        let m = (-z + r) / 2.0;
        if m.im > 0.0 {
            m
        } else {
            (-z - r) / 2.0
        }
    }

    #[test]
    fn coefficient_rule() {
        let base = CoefficientSpec::Explicit { a: (1..=12).map(|i| 1.0 + i as f64 / 100.0).collect(), b: (1..=12).map(f64::from).collect() };
        let zero = ApproximantSpec::new(base.clone(), 3, 0).unwrap();
        for n in 1..30 {
            assert_eq!(zero.coefficients(n).unwrap(), base.coefficients((n - 1) % 3 + 1).unwrap());
        }
        let two = ApproximantSpec::new(base.clone(), 3, 2).unwrap();
        for n in 1..=9 {
            assert_eq!(two.coefficients(n).unwrap(), base.coefficients(n).unwrap());
        }
        assert_eq!(two.coefficients(10).unwrap(), base.coefficients(7).unwrap());
        assert!(ApproximantSpec::new(base, 3, 4).is_err());

        let per = CoefficientSpec::Periodic { a: vec![1.0, 2.0], b: vec![0.5, -0.5] };
        let ap = ApproximantSpec::new(per.clone(), 2, 5).unwrap();
        for n in 1..40 {
            assert_eq!(ap.coefficients(n).unwrap(), per.coefficients(n).unwrap());
        }
    }

    #[test]
    fn free_weyl_solution_at_zero() {
        let u = weyl_solution(&free(1, 0), Complex64::new(0.0, 0.0), Sign::Minus).unwrap();
        assert_eq!(u.values.len(), 1);
        assert!((u.seed()[0] + Complex64::i()).norm() < 1e-15);
        assert_eq!(u.seed()[1], Complex64::new(1.0, 0.0));

        let u = weyl_solution(&free(1, 25), Complex64::new(0.0, 0.0), Sign::Plus).unwrap();
        for v in &u.values {
            assert!(((v[0].norm_sqr() + v[1].norm_sqr()) - 2.0).abs() < 1e-13);
            assert!(((v[0] * v[1].conj()).im - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn forward_round_trip() {
        let base = CoefficientSpec::CosinePower { lambda: 0.3, gamma: 0.3 };
        let aspec = ApproximantSpec::new(base, 2, 40).unwrap();
        let z = Complex64::new(1.1, 0.0);
        let s = crate::transfer::pick_sign(&aspec, 2, 40, 1.1, 1.1).unwrap();
        let u = weyl_solution(&aspec, z, s).unwrap();
        let t = transfer_product(&aspec, 1, 2 * 40, z).unwrap().to_matrix();
        let back = t.apply(u.u0());
        let seed = u.seed();
        let scale = seed[0].norm().max(seed[1].norm());
        assert!((back[0] - seed[0]).norm() <= 1e-7 * scale);
        assert!((back[1] - seed[1]).norm() <= 1e-7 * scale);
    }

    #[test]
    fn free_density_values() {
        assert!((ac_density(&free(1, 3), 0.0).unwrap().value - 1.0 / PI).abs() < 1e-12);
        assert!((ac_density(&free(1, 3), 1.0).unwrap().value - 3f64.sqrt() / (2.0 * PI)).abs() < 1e-12);
        for q in 1..=4 {
            for x in [-1.7, -0.3, 0.45, 1.9] {
                if q > 1 && crate::periodic::free_critical_points(q).iter().any(|z| (z - x).abs() < 1e-3) {
                    continue;
                }
                let d = ac_density(&free(q, 2), x).unwrap();
                assert!((d.value - free_density(x)).abs() < 1e-10, "q={q} x={x}");
            }
        }
    }

    #[test]
    fn sign_flip_negates_density() {
        let aspec = free(1, 4);
        let p = ac_density_with_sign(&aspec, 0.7, Sign::Plus).unwrap();
        let m = ac_density_with_sign(&aspec, 0.7, Sign::Minus).unwrap();
        assert!((p.value + m.value).abs() < 1e-14);
    }

    #[test]
    fn outside_band_is_reported() {
        assert!(matches!(ac_density(&free(1, 2), 2.5), Err(Error::OutsideBand { .. })));
        let comb = ApproximantSpec::new(comb_potential(2, 0.5).unwrap().to_spec(), 2, 3).unwrap();
        assert!(matches!(ac_density(&comb, 0.25), Err(Error::OutsideBand { .. })));
    }

    #[test]
    fn periodic_density_independent_of_blocks() {
        let spec = comb_potential(2, 0.5).unwrap().to_spec();
        let x = 1.3;
        let f0 = ac_density(&ApproximantSpec::new(spec.clone(), 2, 0).unwrap(), x).unwrap().value;
        for n in [1, 5, 30] {
            let f = ac_density(&ApproximantSpec::new(spec.clone(), 2, n).unwrap(), x).unwrap().value;
            assert!((f - f0).abs() < 1e-9);
        }
    }

    #[test]
    fn periodic_wronskian_is_constant() {
        let spec = comb_potential(3, 0.4).unwrap().to_spec();
        for n in [0, 3, 60] {
            let u = weyl_solution(&ApproximantSpec::new(spec.clone(), 3, n).unwrap(), Complex64::new(1.5, 0.0), Sign::Plus).unwrap();
            assert!(wronskian_defect(&u) <= 1e-10 * u.scale());
        }
    }

    #[test]
    fn m_function_against_analytic_free() {
        let aspec = free(1, 10);
        for z in [Complex64::new(0.0, 50.0), Complex64::new(0.5, 0.3), Complex64::new(-1.2, 1e-3), Complex64::new(3.0, 0.5)] {
            let m = m_function(&aspec, z, Sign::Minus).or_else(|_| m_function(&aspec, z, Sign::Plus)).unwrap();
            assert!((m - free_m(z)).norm() < 1e-10, "{z}: {m} vs {}", free_m(z));
        }
        let m = m_function(&aspec, Complex64::new(0.0, 1e4), Sign::Minus).unwrap();
        assert!((m - Complex64::new(0.0, 1e-4)).norm() < 1e-11);
        assert!(m_function(&aspec, Complex64::new(0.0, -1.0), Sign::Minus).is_err());
    }

    #[test]
    fn boundary_value_converges_monotonically() {
        let spec = CoefficientSpec::CosinePower { lambda: 0.4, gamma: 0.35 };
        let aspec = ApproximantSpec::new(spec, 1, 20).unwrap();
        let x = 0.3;
        let f = ac_density(&aspec, x).unwrap();
        let s = f.sign;
        let errs: Vec<f64> = [1e-2, 1e-4, 1e-6]
            .iter()
            .map(|&eps| (m_function(&aspec, Complex64::new(x, eps), s).unwrap().im / PI - f.value).abs())
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
        assert!(errs[2] < 1e-5);
    }

    #[test]
    fn grid_marks_outside_points() {
        let xs: Vec<f64> = (0..=30).map(|i| -3.0 + 0.2 * i as f64).collect();
        let pts = ac_density_grid(&free(1, 2), &xs).unwrap();
        for p in &pts {
            if p.x.abs() < 2.0 - 1e-6 {
                assert_eq!(p.status, "ok");
            } else {
                assert_eq!(p.status, "outside");
            }
        }
    }

    fn random_window() -> impl Strategy<Value = CoefficientSpec> {
        prop::collection::vec((0.8f64..1.2, -0.3f64..0.3), 400..401).prop_map(|ab| {
            let (mut a, mut b): (Vec<f64>, Vec<f64>) = ab.into_iter().unzip();
            // damp the increments so the sequence has small variation
            for i in 1..a.len() {
                let t = 1.0 / (1.0 + i as f64).sqrt();
                a[i] = a[i - 1] + t * (a[i] - 1.0) * 0.2;
                b[i] = b[i - 1] + t * b[i] * 0.2;
            }
            CoefficientSpec::Explicit { a, b }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn wronskian_holds_for_bv_sequences(spec in random_window(), t in 0.2f64..0.8) {
            let aspec = ApproximantSpec::new(spec, 2, 199).unwrap();
            let pj = block_coefficients(&aspec, 2, 199).unwrap();
            let bs = band_structure(&pj, 1e-10).unwrap();
            let [lo, hi] = bs.bands[1];
            let x = lo + t * (hi - lo);
            let blk: QStepBlock = q_step_block(&aspec, 2, 199, Complex64::new(x, 0.0)).unwrap();
            prop_assume!(blk.delta.re.abs() < 1.99);
            let u = weyl_solution(&aspec, Complex64::new(x, 0.0), Sign::Plus).unwrap();
            prop_assert!(wronskian_defect(&u) <= 1e-8 * u.scale());
            let d = ac_density(&aspec, x).unwrap();
            prop_assert!(d.value > 0.0);
            prop_assert!(d.imag_residue <= 1e-10 * d.value.max(1.0));
        }

        #[test]
        fn herglotz(x in -1.9f64..1.9, y in 1e-3f64..1.0) {
            let aspec = ApproximantSpec::new(CoefficientSpec::CosinePower { lambda: 0.2, gamma: 0.3 }, 1, 15).unwrap();
            let z = Complex64::new(x, y);
            let m = m_function(&aspec, z, Sign::Minus).or_else(|_| m_function(&aspec, z, Sign::Plus)).unwrap();
            prop_assert!(m.im > 0.0);
        }
    }
}
