//! Discriminants and band structures of q-periodic Jacobi matrices.
//!
//! The spectrum of a two-sided q-periodic Jacobi matrix is the preimage of
//! `[-2, 2]` under its discriminant `Δ`, a degree-q polynomial. Band edges
//! are found by locating the `q - 1` critical points of `Δ` first: between
//! consecutive critical points `Δ` is monotone, so each such segment holds
//! exactly one band whose edges are bracketed roots of `Δ ∓ 2`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coefficients::PeriodicJacobi;
use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalUnion};
use crate::matrix::Matrix2;
use crate::polynomial::{bisect, sign_change_roots, PolynomialReal};

/// Grid density per period used to bracket critical points.
const GRID_PER_PERIOD: usize = 64;

/// The one-step transfer matrix `((z-b)/a, -1/a; a, 0)`.
pub fn one_step_matrix(a: f64, b: f64, z: Complex64) -> Result<Matrix2> {
    if !(a > 0.0) {
        return Err(Error::domain(format!("off-diagonal coefficient must be positive, got {a}")));
    }
    Ok(transfer_step(a, b, z))
}

#[inline]
pub(crate) fn transfer_step(a: f64, b: f64, z: Complex64) -> Matrix2 {
    let inv = 1.0 / a;
    Matrix2::new(
        (z - b) * inv,
        Complex64::new(-inv, 0.0),
        Complex64::new(a, 0.0),
        Complex64::new(0.0, 0.0),
    )
}

#[inline]
pub(crate) fn transfer_step_real(a: f64, b: f64, x: f64) -> Matrix2 {
    let inv = 1.0 / a;
    Matrix2::real((x - b) * inv, -inv, a, 0.0)
}

/// Ordered product over one period, site q leftmost.
pub fn monodromy(p: &PeriodicJacobi, z: Complex64) -> Matrix2 {
    p.a()
        .iter()
        .zip(p.b())
        .fold(Matrix2::identity(), |acc, (&a, &b)| transfer_step(a, b, z) * acc)
}

pub fn discriminant_value(p: &PeriodicJacobi, z: Complex64) -> Complex64 {
    monodromy(p, z).trace()
}

fn discriminant_real(p: &PeriodicJacobi, x: f64) -> f64 {
    p.a()
        .iter()
        .zip(p.b())
        .fold(Matrix2::identity(), |acc, (&a, &b)| transfer_step_real(a, b, x) * acc)
        .trace()
        .re
}

/// `Δ` in the monomial basis, from the product of polynomial-valued transfer matrices.
pub fn discriminant_polynomial(p: &PeriodicJacobi) -> PolynomialReal {
    let zero = PolynomialReal::constant(0.0);
    let one = PolynomialReal::constant(1.0);
    let mut m = [one.clone(), zero.clone(), zero.clone(), one];
    for (&a, &b) in p.a().iter().zip(p.b()) {
        let s11 = PolynomialReal::linear(-b / a, 1.0 / a);
        let s12 = PolynomialReal::constant(-1.0 / a);
        let s21 = PolynomialReal::constant(a);
        // s22 = 0
        m = [
            &(&s11 * &m[0]) + &(&s12 * &m[2]),
            &(&s11 * &m[1]) + &(&s12 * &m[3]),
            &s21 * &m[0],
            &s21 * &m[1],
        ];
    }
    &m[0] + &m[3]
}

/// A spectral gap between consecutive bands. Closed gaps have `lo == hi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gap {
    pub lo: f64,
    pub hi: f64,
    pub open: bool,
}

impl Gap {
    pub fn center(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        if self.open {
            self.hi - self.lo
        } else {
            0.0
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandStructure {
    /// The q closed bands `[lo, hi]`, ordered.
    pub bands: Vec<[f64; 2]>,
    /// Always `q - 1` entries, open or closed.
    pub gaps: Vec<Gap>,
    /// `{x : Δ(x) ∈ (-2, 2)}`.
    pub q_interior: IntervalUnion,
    /// `{x : Δ(x) ∈ [-2, 2]}`.
    pub spectrum: IntervalUnion,
    /// Roots of `Δ'`, ascending.
    pub critical_points: Vec<f64>,
    /// `Δ` at each critical point.
    pub critical_values: Vec<f64>,
    pub discriminant: PolynomialReal,
}

impl BandStructure {
    pub fn q(&self) -> usize {
        self.bands.len()
    }

    /// Index of the band containing `x`, if any.
    pub fn band_of(&self, x: f64) -> Option<usize> {
        self.bands.iter().position(|&[lo, hi]| lo <= x && x <= hi)
    }
}

/// Bands, gaps and q-interior of `p`.
///
/// `tol` is the closed-gap threshold: a gap narrower than `tol`, or a
/// critical value whose excess over 2 is indistinguishable from rounding,
/// is reported closed and its touch point is removed from the q-interior.
pub fn band_structure(p: &PeriodicJacobi, tol: f64) -> Result<BandStructure> {
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(Error::domain(format!("tol must lie in (0, 1e-3], got {tol}")));
    }
    let q = p.q();
    let disc = discriminant_polynomial(p);
    let d1 = disc.derivative();
    let d2 = d1.derivative();

    let amax = p.a().iter().cloned().fold(0.0, f64::max);
    let bmin = p.b().iter().cloned().fold(f64::INFINITY, f64::min);
    let bmax = p.b().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let (lo0, hi0) = (bmin - 2.0 * amax, bmax + 2.0 * amax);
    let pad = 1e-3 * (hi0 - lo0);
    let (lo, hi) = (lo0 - pad, hi0 + pad);

    let critical_points = critical_points(&d1, q, lo, hi)?;
    let critical_values: Vec<f64> = critical_points.iter().map(|&c| discriminant_real(p, c)).collect();

    let touching: Vec<bool> = critical_points
        .iter()
        .zip(&critical_values)
        .map(|(&c, &v)| {
            let noise = 64.0 * f64::EPSILON * disc.eval_abs(c).max(1.0);
            let resolvable = d2.eval(c).abs() * tol * tol / 8.0;
            v.abs() - 2.0 <= noise.max(resolvable)
        })
        .collect();

    let mut boundaries = Vec::with_capacity(q + 1);
    boundaries.push(lo);
    boundaries.extend_from_slice(&critical_points);
    boundaries.push(hi);

    let f = |x: f64| discriminant_real(p, x);
    let edge = |from: f64, to: f64| -> f64 {
        let v = f(from);
        if v.abs() <= 2.0 {
            return from;
        }
        let level = 2.0 * v.signum();
        bisect(from.min(to), from.max(to), |x| f(x) - level)
    };

    let mut bands = Vec::with_capacity(q);
    for k in 0..q {
        let (s0, s1) = (boundaries[k], boundaries[k + 1]);
        let left = if k > 0 && touching[k - 1] { s0 } else { edge(s0, s1) };
        let right = if k + 1 < q && touching[k] { s1 } else { edge(s1, s0) };
        if !(left <= right) {
            return Err(Error::RootIsolation(format!(
                "band {k} has inverted edges [{left}, {right}] on segment [{s0}, {s1}]"
            )));
        }
        bands.push([left, right]);
    }

    let mut gaps = Vec::with_capacity(q.saturating_sub(1));
    for k in 0..q.saturating_sub(1) {
        let (glo, ghi) = (bands[k][1], bands[k + 1][0]);
        if touching[k] || ghi - glo < tol {
            let at = if touching[k] { critical_points[k] } else { 0.5 * (glo + ghi) };
            bands[k][1] = at;
            bands[k + 1][0] = at;
            gaps.push(Gap { lo: at, hi: at, open: false });
        } else {
            gaps.push(Gap { lo: glo, hi: ghi, open: true });
        }
    }

    let spectrum = IntervalUnion::from_intervals(bands.iter().map(|&[l, h]| Interval::closed(l, h)).collect());
    let q_interior = IntervalUnion::from_intervals(bands.iter().map(|&[l, h]| Interval::open(l, h)).collect());

    Ok(BandStructure { bands, gaps, q_interior, spectrum, critical_points, critical_values, discriminant: disc })
}

fn critical_points(d1: &PolynomialReal, q: usize, lo: f64, hi: f64) -> Result<Vec<f64>> {
    if q < 2 {
        return Ok(Vec::new());
    }
    let mut points = GRID_PER_PERIOD * q;
    for _ in 0..8 {
        let roots = sign_change_roots(lo, hi, points, |x| d1.eval(x));
        if roots.len() == q - 1 {
            return Ok(roots);
        }
        points *= 4;
    }
    Err(Error::RootIsolation(format!(
        "expected {} critical points of the discriminant on [{lo}, {hi}]",
        q - 1
    )))
}

/// `2 cos((q - j) π / q)` for `j = 1, …, q - 1`, ascending.
pub fn free_critical_points(q: usize) -> Vec<f64> {
    (1..q)
        .map(|j| 2.0 * ((q - j) as f64 * std::f64::consts::PI / q as f64).cos())
        .collect()
}

/// Chebyshev polynomial of the second kind, `p_0 = 1`, `p_1 = x`,
/// `p_{n+1} = x p_n - p_{n-1}`.
pub fn chebyshev_second_kind(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Period-q discrete Schrödinger operator with `b = (0, …, 0, w)`.
pub fn comb_potential(q: usize, w: f64) -> Result<PeriodicJacobi> {
    if q < 2 {
        return Err(Error::domain(format!("comb potential needs q >= 2, got {q}")));
    }
    if !(w > 0.0 && w.is_finite()) {
        return Err(Error::domain(format!("comb coupling must be positive, got {w}")));
    }
    let mut b = vec![0.0; q];
    b[q - 1] = w;
    PeriodicJacobi::new(vec![1.0; q], b)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    /// All `q - 1` gaps as open intervals; closed gaps are degenerate.
    pub gap_intervals: Vec<Interval>,
    pub centers: Vec<f64>,
    pub widths: Vec<f64>,
    /// Smallest gap width, 0 when any gap is closed.
    pub min_width: f64,
    pub all_open: bool,
}

pub fn gap_report(p: &PeriodicJacobi, tol: f64) -> Result<GapReport> {
    let bs = band_structure(p, tol)?;
    let gap_intervals: Vec<Interval> = bs.gaps.iter().map(|g| Interval::open(g.lo, g.hi)).collect();
    let centers = bs.gaps.iter().map(Gap::center).collect();
    let widths: Vec<f64> = bs.gaps.iter().map(Gap::width).collect();
    let min_width = widths.iter().cloned().fold(f64::INFINITY, f64::min);
    let min_width = if min_width.is_finite() { min_width } else { 0.0 };
    let all_open = widths.len() == p.q() - 1 && !widths.is_empty() && widths.iter().all(|&w| w > tol);
    Ok(GapReport { gap_intervals, centers, widths, min_width, all_open })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyMode {
    Spectrum,
    QInterior,
}

/// How a finite family stands in for the set of right limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilySampling {
    /// Intersect exactly the listed members.
    Discrete,
    /// Members are consecutive samples of a continuous one-parameter path;
    /// band edges and closed-gap points are swept between neighbours.
    Path,
}

/// Intersection of spectra (or q-interiors) across `family`.
pub fn intersection_over_family(
    family: &[PeriodicJacobi],
    mode: FamilyMode,
    sampling: FamilySampling,
    tol: f64,
) -> Result<IntervalUnion> {
    if family.is_empty() {
        return Err(Error::domain("cannot intersect over an empty family"));
    }
    let structures = family.iter().map(|p| band_structure(p, tol)).collect::<Result<Vec<_>>>()?;
    let select = |bs: &BandStructure| match mode {
        FamilyMode::Spectrum => bs.spectrum.clone(),
        FamilyMode::QInterior => bs.q_interior.clone(),
    };
    match sampling {
        FamilySampling::Discrete => Ok(structures
            .iter()
            .skip(1)
            .fold(select(&structures[0]), |acc, bs| acc.intersect(&select(bs)))),
        FamilySampling::Path => {
            let q = structures[0].q();
            if structures.iter().any(|bs| bs.q() != q) {
                return Err(Error::domain("path sampling needs a common period across the family"));
            }
            let mut excluded = Vec::new();
            let windows: Vec<(&BandStructure, &BandStructure)> = if structures.len() == 1 {
                vec![(&structures[0], &structures[0])]
            } else {
                structures.windows(2).map(|w| (&w[0], &w[1])).collect()
            };
            for (s, t) in windows {
                let (cs, ct) = (complement_components(s, mode), complement_components(t, mode));
                for (x, y) in cs.iter().zip(&ct) {
                    if let Some(iv) = sweep(x, y, mode) {
                        excluded.push(iv);
                    }
                }
            }
            Ok(IntervalUnion::from_intervals(excluded).complement())
        }
    }
}

/// The q + 1 ordered pieces of the complement: left ray, gaps, right ray.
/// Closed gaps appear as degenerate pieces so they can be matched by index.
fn complement_components(bs: &BandStructure, mode: FamilyMode) -> Vec<Interval> {
    let closed = mode == FamilyMode::QInterior;
    let mut out = Vec::with_capacity(bs.q() + 1);
    out.push(Interval::new(f64::NEG_INFINITY, bs.bands[0][0], false, closed));
    for g in &bs.gaps {
        out.push(Interval::new(g.lo, g.hi, closed, closed));
    }
    out.push(Interval::new(bs.bands[bs.q() - 1][1], f64::INFINITY, closed, false));
    out
}

fn sweep(x: &Interval, y: &Interval, mode: FamilyMode) -> Option<Interval> {
    match mode {
        FamilyMode::QInterior => Some(x.hull(y)),
        FamilyMode::Spectrum => {
            // both closed touch points: every swept point is a band edge of some member
            if x.lo == x.hi && y.lo == y.hi {
                return None;
            }
            Some(Interval::open(x.lo.min(y.lo), x.hi.max(y.hi)))
        }
    }
}
