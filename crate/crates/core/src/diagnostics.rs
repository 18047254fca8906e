//! Transfer-matrix growth statistics, gap lower bounds, windowed coefficient
//! extrema and Sturm counts for finite truncations.
//!
//! Results at finitely many energies and horizons are numerical evidence.
//! The statements they mirror are asymptotic or hold for almost every energy.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coefficients::{JacobiCoefficients, PeriodicJacobi};
use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalUnion};
use crate::matrix::ScaledMatrix;
use crate::periodic::{band_structure, transfer_step_real};

/// Streaming evaluation of `Σ_{n ≤ N} ‖T_{1,n}(x)‖²`, kept in log form.
#[derive(Clone, Debug)]
pub struct GrowthAccumulator {
    x: f64,
    t: ScaledMatrix,
    n: usize,
    log_sum: f64,
}

impl GrowthAccumulator {
    pub fn new(x: f64) -> Self {
        GrowthAccumulator { x, t: ScaledMatrix::identity(), n: 0, log_sum: f64::NEG_INFINITY }
    }

    /// Appends site `n + 1` with coefficients `(a, b)`.
    pub fn push(&mut self, a: f64, b: f64) {
        self.t.left_mul(&transfer_step_real(a, b, self.x));
        self.n += 1;
        self.log_sum = log_add_exp(self.log_sum, 2.0 * self.t.log_norm());
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn log_norm(&self) -> f64 {
        self.t.log_norm()
    }

    pub fn log_sum(&self) -> f64 {
        self.log_sum
    }

    /// `ln(Σ ‖T_{1,n}‖² / (N ln² N))`; `−∞` for `N < 2`.
    pub fn log_statistic(&self) -> f64 {
        if self.n < 2 {
            return f64::NEG_INFINITY;
        }
        let nf = self.n as f64;
        self.log_sum - nf.ln() - 2.0 * nf.ln().ln()
    }

    pub fn transfer(&self) -> &ScaledMatrix {
        &self.t
    }
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub n: usize,
    pub statistic: f64,
    pub log_statistic: f64,
    pub log_running_max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthTrace {
    pub x: f64,
    pub n: usize,
    pub statistic: f64,
    /// Natural log of `statistic`; finite even when the statistic overflows.
    pub log_statistic: f64,
    /// Largest statistic over `2 ≤ N' ≤ N`.
    pub running_max: f64,
    pub log_running_max: f64,
    pub argmax: usize,
    pub trace: Vec<TracePoint>,
}

fn checkpoints(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = std::iter::successors(Some(2usize), |&p| p.checked_mul(2)).take_while(|&p| p < n).collect();
    out.push(n);
    out
}

/// `(1 / (N ln² N)) Σ_{n=1}^{N} ‖T_{1,n}(x)‖²` with a prefix trace at powers of two.
pub fn growth_statistic<S: JacobiCoefficients + ?Sized>(spec: &S, x: f64, n: usize) -> Result<GrowthTrace> {
    growth_statistic_at(spec, x, &checkpoints(n.max(2)))
}

/// As [`growth_statistic`], recording the trace at the given increasing checkpoints.
pub fn growth_statistic_at<S: JacobiCoefficients + ?Sized>(spec: &S, x: f64, marks: &[usize]) -> Result<GrowthTrace> {
    let n = *marks.last().ok_or_else(|| Error::domain("need at least one checkpoint"))?;
    if n < 2 || marks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("checkpoints must increase and end at N >= 2"));
    }
    let mut acc = GrowthAccumulator::new(x);
    let (mut log_max, mut argmax) = (f64::NEG_INFINITY, 0);
    let mut trace = Vec::with_capacity(marks.len());
    let mut next = marks.iter().peekable();
    for j in 1..=n {
        let (a, b) = spec.coefficients(j)?;
        acc.push(a, b);
        let ls = acc.log_statistic();
        if ls > log_max {
            log_max = ls;
            argmax = j;
        }
        if next.peek() == Some(&&j) {
            next.next();
            trace.push(TracePoint { n: j, statistic: ls.exp(), log_statistic: ls, log_running_max: log_max });
        }
    }
    let ls = acc.log_statistic();
    Ok(GrowthTrace {
        x,
        n,
        statistic: ls.exp(),
        log_statistic: ls,
        running_max: log_max.exp(),
        log_running_max: log_max,
        argmax,
        trace,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthSegment {
    pub from: usize,
    pub to: usize,
    /// Largest log statistic over `from < N ≤ to`.
    pub log_max: f64,
    pub log_end: f64,
}

/// Per-segment maxima of the log statistic between consecutive `breaks`.
pub fn growth_segments<S: JacobiCoefficients + ?Sized>(spec: &S, x: f64, breaks: &[usize]) -> Result<Vec<GrowthSegment>> {
    if breaks.len() < 2 || breaks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("need at least two increasing breakpoints"));
    }
    let mut acc = GrowthAccumulator::new(x);
    let mut out = Vec::with_capacity(breaks.len() - 1);
    for j in 1..=breaks[0] {
        let (a, b) = spec.coefficients(j)?;
        acc.push(a, b);
    }
    for w in breaks.windows(2) {
        let mut log_max = f64::NEG_INFINITY;
        for j in w[0] + 1..=w[1] {
            let (a, b) = spec.coefficients(j)?;
            acc.push(a, b);
            log_max = log_max.max(acc.log_statistic());
        }
        out.push(GrowthSegment { from: w[0], to: w[1], log_max, log_end: acc.log_statistic() });
    }
    Ok(out)
}

/// `½ δ² (1 + δ²)^{(l − 3)/2}`, the floor on `‖T_{m,m+l}(E)‖` at distance `δ` from the spectrum.
pub fn gap_growth_lower_bound(delta: f64, l: usize) -> Result<f64> {
    if l < 4 {
        return Err(Error::domain(format!("window length l must be at least 4, got {l}")));
    }
    if !(delta > 0.0) {
        return Err(Error::domain(format!("delta must be positive, got {delta}")));
    }
    let d2 = delta * delta;
    Ok(0.5 * d2 * (1.0 + d2).powf((l as f64 - 3.0) / 2.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prop62Row {
    pub l: usize,
    pub norm: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prop62Report {
    pub m: usize,
    pub k: usize,
    pub energy: f64,
    pub delta: f64,
    pub rows: Vec<Prop62Row>,
    pub violations: usize,
}

/// Compares `‖T_{m,m+l}(E)‖` with [`gap_growth_lower_bound`] for `l = 4 ..= k − m`.
///
/// `comparison` must agree with `spec` on sites `m ..= k` (site `n` of the
/// periodic matrix is `(n − 1) mod q`) and its spectrum must miss
/// `(E − δ, E + δ)`. The bound is stated for `a ≡ 1`.
pub fn verify_prop62<S: JacobiCoefficients + ?Sized>(
    spec: &S,
    comparison: &PeriodicJacobi,
    m: usize,
    k: usize,
    energy: f64,
    delta: f64,
    tol: f64,
) -> Result<Prop62Report> {
    if m == 0 || k < m + 4 {
        return Err(Error::Precondition(format!("window [{m}, {k}] must start at 1 or later and span at least 4 steps")));
    }
    if !(delta > 0.0) {
        return Err(Error::Precondition(format!("delta must be positive, got {delta}")));
    }
    let q = comparison.q();
    for n in m..=k {
        let (a, b) = spec.coefficients(n)?;
        let i = (n - 1) % q;
        let (ca, cb) = (comparison.a()[i], comparison.b()[i]);
        if (a - ca).abs() > 1e-12 * ca.abs().max(1.0) || (b - cb).abs() > 1e-12 * cb.abs().max(1.0) {
            return Err(Error::Precondition(format!(
                "window mismatch at site {n}: ({a}, {b}) vs comparison ({ca}, {cb})"
            )));
        }
    }
    let bs = band_structure(comparison, tol)?;
    let window = IntervalUnion::single(Interval::open(energy - delta, energy + delta));
    if !bs.spectrum.intersect(&window).is_empty() {
        return Err(Error::Precondition(format!(
            "spectrum of the comparison matrix meets ({}, {})",
            energy - delta,
            energy + delta
        )));
    }
    let mut t = ScaledMatrix::identity();
    let (a, b) = spec.coefficients(m)?;
    t.left_mul(&transfer_step_real(a, b, energy));
    let mut rows = Vec::with_capacity(k - m);
    for l in 1..=k - m {
        let (a, b) = spec.coefficients(m + l)?;
        t.left_mul(&transfer_step_real(a, b, energy));
        if l >= 4 {
            let bound = gap_growth_lower_bound(delta, l)?;
            let log_norm = t.log_norm();
            let pass = log_norm >= bound.ln();
            rows.push(Prop62Row { l, norm: log_norm.exp(), bound, pass });
        }
    }
    let violations = rows.iter().filter(|r| !r.pass).count();
    Ok(Prop62Report { m, k, energy, delta, rows, violations })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowExtrema {
    pub from: usize,
    pub to: usize,
    /// `max (b_n − 2 a_n)` over the window.
    pub lower: f64,
    /// `min (b_n + 2 a_n)` over the window.
    pub upper: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Corollary13Report {
    /// `[lower, upper]` from the last window; empty when `lower > upper`.
    pub interval: IntervalUnion,
    pub lower: f64,
    pub upper: f64,
    pub windows: Vec<WindowExtrema>,
    /// Largest change of either endpoint across the last four windows.
    pub spread: f64,
    pub stabilized: bool,
}

pub const WINDOWS: usize = 8;
pub const STABILITY_THRESHOLD: f64 = 1e-3;

/// Tail estimate of `[limsup (b_n − 2a_n), liminf (b_n + 2a_n)]` from eight
/// windows of length `horizon / 8`.
pub fn corollary13_interval<S: JacobiCoefficients + ?Sized>(spec: &S, horizon: usize) -> Result<Corollary13Report> {
    if horizon < WINDOWS {
        return Err(Error::domain(format!("horizon must be at least {WINDOWS}, got {horizon}")));
    }
    let len = horizon / WINDOWS;
    let mut windows = Vec::with_capacity(WINDOWS);
    for w in 0..WINDOWS {
        let from = horizon - (WINDOWS - w) * len + 1;
        let to = from + len - 1;
        let (mut lower, mut upper) = (f64::NEG_INFINITY, f64::INFINITY);
        for n in from..=to {
            let (a, b) = spec.coefficients(n)?;
            lower = lower.max(b - 2.0 * a);
            upper = upper.min(b + 2.0 * a);
        }
        windows.push(WindowExtrema { from, to, lower, upper });
    }
    let tail = &windows[WINDOWS - 4..];
    let spread_of = |f: fn(&WindowExtrema) -> f64| {
        let lo = tail.iter().map(f).fold(f64::INFINITY, f64::min);
        let hi = tail.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
        hi - lo
    };
    let spread = spread_of(|w| w.lower).max(spread_of(|w| w.upper));
    let last = windows[WINDOWS - 1];
    let interval = if last.lower <= last.upper {
        IntervalUnion::single(Interval::closed(last.lower, last.upper))
    } else {
        IntervalUnion::empty()
    };
    Ok(Corollary13Report {
        interval,
        lower: last.lower,
        upper: last.upper,
        windows,
        spread,
        stabilized: spread < STABILITY_THRESHOLD,
    })
}

/// Number of eigenvalues below `x` of the leading `size × size` truncation.
pub fn sturm_count<S: JacobiCoefficients + ?Sized>(spec: &S, size: usize, x: f64) -> Result<usize> {
    let mut count = 0;
    let mut d = 1.0;
    let mut a_prev = 0.0;
    for i in 1..=size {
        let (a, b) = spec.coefficients(i)?;
        let mut pivot = (b - x) - if i == 1 { 0.0 } else { a_prev * a_prev / d };
        if pivot == 0.0 {
            pivot = 1e-300 * (b.abs() + x.abs() + a_prev + a).max(1.0);
        }
        if pivot < 0.0 {
            count += 1;
        }
        d = pivot;
        a_prev = a;
    }
    Ok(count)
}

/// Upper bound on the widest eigenvalue-free subinterval of `[lo, hi]` for
/// the `size × size` truncation, from Sturm counts on a grid of step `h`.
pub fn largest_eigenvalue_gap<S: JacobiCoefficients + ?Sized>(
    spec: &S,
    size: usize,
    lo: f64,
    hi: f64,
    h: f64,
) -> Result<f64> {
    if !(hi > lo && h > 0.0) {
        return Err(Error::domain("need lo < hi and h > 0"));
    }
    let steps = ((hi - lo) / h).ceil() as usize;
    let xs: Vec<f64> = (0..=steps).map(|i| (lo + h * i as f64).min(hi)).collect();
    let counts = xs.iter().map(|&x| sturm_count(spec, size, x)).collect::<Result<Vec<_>>>()?;
    // a run of equal counts between grid points i and j means no eigenvalue in [x_i, x_j)
    let mut best: f64 = 0.0;
    let mut run_start = 0;
    for i in 1..xs.len() {
        if counts[i] != counts[run_start] {
            best = best.max(xs[i] - xs[run_start.saturating_sub(1)].max(lo));
            run_start = i;
        }
    }
    best = best.max(hi - xs[run_start.saturating_sub(1)].max(lo));
    Ok(best)
}

/// `⟨δ_1, (J_size − z)^{−1} δ_1⟩` by the backward continued fraction.
pub fn truncated_m_function<S: JacobiCoefficients + ?Sized>(spec: &S, size: usize, z: Complex64) -> Result<Complex64> {
    if size == 0 {
        return Err(Error::domain("truncation size must be positive"));
    }
    let mut g = Complex64::new(0.0, 0.0);
    for n in (1..=size).rev() {
        let (a, b) = spec.coefficients(n)?;
        let denom = Complex64::new(b, 0.0) - z - if n == size { Complex64::new(0.0, 0.0) } else { g * (a * a) };
        g = denom.inv();
    }
    Ok(g)
}

/// `π^{−1} Im m(x + iε)` for the truncation, Richardson-extrapolated from `ε`, `2ε` and `4ε`
/// so that the first- and second-order smoothing errors cancel.
pub fn resolvent_density<S: JacobiCoefficients + ?Sized>(spec: &S, size: usize, x: f64, eps: f64) -> Result<f64> {
    let f = |e: f64| -> Result<f64> {
        Ok(truncated_m_function(spec, size, Complex64::new(x, e))?.im / std::f64::consts::PI)
    };
    Ok((8.0 * f(eps)? - 6.0 * f(2.0 * eps)? + f(4.0 * eps)?) / 3.0)
}
