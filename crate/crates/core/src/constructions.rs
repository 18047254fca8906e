//! Coefficient sequences with prescribed a.c. spectrum: a staircase plus
//! comb construction with bounded variation (level by level), and the slow
//! cosine `b_n = λ cos(n^γ)`.
//!
//! The staircase lives on levels `l = 1, 2, …`. Level `l` occupies sites
//! `L_l < n ≤ L_{l+1}` and is split into `m_l` steps `n_{l,k} < n ≤ n_{l,k+1}`
//! on which
//!
//! ```text
//! b_n = (−1)^l (1 − 2k/m_l) λ + w_l [n ≡ 0 mod q],   a_n = 1.
//! ```
//!
//! Each step is made long enough that the growth statistic of the transfer
//! matrices exceeds `l` at energies in the shifted comb gaps.

use serde::{Deserialize, Serialize};

use crate::coefficients::{CoefficientSpec, JacobiCoefficients};
use crate::diagnostics::GrowthAccumulator;
use crate::error::{Error, Result};
use crate::periodic::{comb_potential, gap_report};

const GAP_TOL: f64 = 1e-12;
/// Relative slack when rounding `4/δ_l` up, so a width computed a few ulps
/// short of an exact value does not bump `m_l`.
const CEIL_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScheduleMode {
    /// Step lengths from the a priori lower bound `‖T_{1,n}‖ ≥ 10^{−n}` and the gap estimate.
    Analytic,
    /// Step lengths from actual transfer products at probe energies.
    Empirical,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub l: usize,
    pub w: f64,
    /// Minimum gap width of the comb with coupling `w`.
    pub delta: f64,
    /// Gap centers `z_{l,j}`, `j = 1..q−1`.
    pub centers: Vec<f64>,
    pub m: usize,
    /// Breakpoints `n_{l,0} = L_l < n_{l,1} < … < n_{l,m_l} = L_{l+1}`.
    /// Shorter than `m + 1` only on the last level of a truncated schedule.
    pub n: Vec<usize>,
}

impl Level {
    pub fn start(&self) -> usize {
        self.n[0]
    }

    pub fn end(&self) -> usize {
        *self.n.last().unwrap()
    }

    pub fn is_complete(&self) -> bool {
        self.n.len() == self.m + 1
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub q: usize,
    pub lambda: f64,
    pub mode: ScheduleMode,
    pub growth_margin: f64,
    pub cap: usize,
    pub levels: Vec<Level>,
    /// Set when some step needed more than `cap` sites.
    pub truncated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StaircaseValue {
    pub l: usize,
    pub k: usize,
    pub value: f64,
}

/// `(−1)^l (1 − 2k/m) λ`.
pub fn staircase_value(l: usize, k: usize, m: usize, lambda: f64) -> StaircaseValue {
    let sign = if l.is_multiple_of(2) { 1.0 } else { -1.0 };
    StaircaseValue { l, k, value: sign * (1.0 - 2.0 * k as f64 / m as f64) * lambda }
}

fn min_step(q: usize) -> usize {
    (3 * q).max(5)
}

fn check_params(q: usize, lambda: f64) -> Result<()> {
    if q < 2 {
        return Err(Error::domain(format!("period q must be at least 2, got {q}")));
    }
    if !(lambda > 0.0 && lambda < 2.0) {
        return Err(Error::domain(format!("lambda must lie in (0, 2), got {lambda}")));
    }
    Ok(())
}

impl Schedule {
    /// Last site covered by the schedule.
    pub fn horizon(&self) -> usize {
        self.levels.last().map_or(0, Level::end)
    }

    /// `L_1, L_2, …` (level starts, followed by the end of the last level).
    pub fn breakpoints(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.levels.iter().map(Level::start).collect();
        out.push(self.horizon());
        out
    }

    /// Level and step containing site `n`.
    pub fn locate(&self, n: usize) -> Result<(usize, usize)> {
        if n == 0 || n > self.horizon() {
            return Err(Error::Horizon { n, horizon: self.horizon() });
        }
        let li = self.levels.partition_point(|lv| lv.end() < n);
        let lv = &self.levels[li];
        let k = lv.n.partition_point(|&b| b < n) - 1;
        Ok((li, k))
    }

    /// Staircase part `λ_n`.
    pub fn staircase(&self, n: usize) -> Result<f64> {
        let (li, k) = self.locate(n)?;
        let lv = &self.levels[li];
        Ok(staircase_value(lv.l, k, lv.m, self.lambda).value)
    }

    /// Comb part `W_n = w_l V_n`.
    pub fn comb(&self, n: usize) -> Result<f64> {
        let (li, _) = self.locate(n)?;
        Ok(if n.is_multiple_of(self.q) { self.levels[li].w } else { 0.0 })
    }

    pub fn b(&self, n: usize) -> Result<f64> {
        let (li, k) = self.locate(n)?;
        let lv = &self.levels[li];
        let comb = if n.is_multiple_of(self.q) { lv.w } else { 0.0 };
        Ok(staircase_value(lv.l, k, lv.m, self.lambda).value + comb)
    }

    /// Checks every structural invariant; used when a schedule is loaded.
    pub fn validate(&self) -> Result<()> {
        self.check_invariants().map_err(Error::Spec)
    }

    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        check_params(self.q, self.lambda).map_err(|e| e.to_string())?;
        if self.levels.is_empty() {
            return Err("schedule has no levels".into());
        }
        if self.levels[0].start() != 0 {
            return Err(format!("L_1 must be 0, got {}", self.levels[0].start()));
        }
        if self.levels[0].w > 1.0 {
            return Err(format!("w_1 must be at most 1, got {}", self.levels[0].w));
        }
        for (i, lv) in self.levels.iter().enumerate() {
            if lv.l != i + 1 {
                return Err(format!("level {} is labelled {}", i + 1, lv.l));
            }
            if !(lv.w > 0.0) {
                return Err(format!("level {}: w must be positive", lv.l));
            }
            if !(lv.delta > 0.0) || lv.centers.len() != self.q - 1 {
                return Err(format!("level {}: needs q-1 open gaps", lv.l));
            }
            let needed = (1usize << lv.l.min(63)).max((4.0 / lv.delta * (1.0 - CEIL_SLACK)).ceil() as usize);
            if lv.m < needed {
                return Err(format!("level {}: m = {} below max(2^l, 4/δ) = {needed}", lv.l, lv.m));
            }
            if lv.n.len() < 2 || lv.n.len() > lv.m + 1 {
                return Err(format!("level {}: {} breakpoints for m = {}", lv.l, lv.n.len(), lv.m));
            }
            if lv.n.windows(2).any(|p| p[0] >= p[1]) {
                return Err(format!("level {}: breakpoints not strictly increasing", lv.l));
            }
            let last = i + 1 == self.levels.len();
            if !lv.is_complete() && !(last && self.truncated) {
                return Err(format!("level {} is incomplete", lv.l));
            }
            if let Some(next) = self.levels.get(i + 1) {
                if next.start() != lv.end() {
                    return Err(format!("level {} starts at {}, previous ends at {}", next.l, next.start(), lv.end()));
                }
                if !(next.w < lv.w) {
                    return Err(format!("w not strictly decreasing at level {}", next.l));
                }
            }
        }
        Ok(())
    }

    /// Step-1 staircase energy `Σ |λ_{n+1} − λ_n|²` over the realized sites
    /// and the bound `4λ² Σ 1/m_l`.
    pub fn staircase_variation(&self) -> Result<(f64, f64)> {
        let h = self.horizon();
        let mut sum = 0.0;
        let mut prev = self.staircase(1)?;
        for n in 2..=h {
            let cur = self.staircase(n)?;
            sum += (cur - prev).powi(2);
            prev = cur;
        }
        let bound = 4.0 * self.lambda.powi(2) * self.levels.iter().map(|lv| 1.0 / lv.m as f64).sum::<f64>();
        Ok((sum, bound))
    }

    /// Step-q comb energy `Σ |W_{n+q} − W_n|²` and the bound `q Σ_l |w_{l+1} − w_l|²`.
    pub fn comb_variation(&self) -> Result<(f64, f64)> {
        let h = self.horizon();
        let mut sum = 0.0;
        for n in 1..=h.saturating_sub(self.q) {
            sum += (self.comb(n + self.q)? - self.comb(n)?).powi(2);
        }
        let bound = self.q as f64
            * self.levels.iter().map(|lv| (lv.w - level_width(lv.l + 1)).powi(2)).sum::<f64>();
        Ok((sum, bound))
    }
}

/// `w_l = 2^{−l}`.
pub fn level_width(l: usize) -> f64 {
    0.5f64.powi(l as i32)
}

impl JacobiCoefficients for Schedule {
    fn coefficients(&self, n: usize) -> Result<(f64, f64)> {
        Ok((1.0, self.b(n)?))
    }

    fn horizon(&self) -> Option<usize> {
        Some(Schedule::horizon(self))
    }
}

/// Builds the schedule level by level, stopping early with `truncated = true`
/// once a step would need more than `cap` sites.
pub fn build_schedule(
    q: usize,
    lambda: f64,
    levels: usize,
    growth_margin: f64,
    cap: usize,
    mode: ScheduleMode,
) -> Result<Schedule> {
    check_params(q, lambda)?;
    if levels == 0 {
        return Err(Error::domain("need at least one level"));
    }
    if !(growth_margin >= 1.0) {
        return Err(Error::domain(format!("growth margin must be at least 1, got {growth_margin}")));
    }
    let mut sched = Schedule { q, lambda, mode, growth_margin, cap, levels: Vec::new(), truncated: false };
    // empirical mode keeps the diagonal so probe products can restart from n = 1
    let mut diag: Vec<f64> = Vec::new();
    let mut start = 0;
    'levels: for l in 1..=levels {
        let w = level_width(l);
        let report = gap_report(&comb_potential(q, w)?, GAP_TOL)?;
        if !report.all_open {
            return Err(Error::NumericalDegeneracy(format!("comb({q}, {w}) has a closed gap")));
        }
        let delta = report.min_width;
        let m = (1usize << l.min(63)).max((4.0 / delta * (1.0 - CEIL_SLACK)).ceil() as usize);
        sched.levels.push(Level { l, w, delta, centers: report.centers.clone(), m, n: vec![start] });
        for k in 0..m {
            let from = *sched.levels.last().unwrap().n.last().unwrap();
            let stair = staircase_value(l, k, m, lambda).value;
            let next = match mode {
                ScheduleMode::Analytic => analytic_step(q, l, delta, from, growth_margin, cap),
                ScheduleMode::Empirical => {
                    let probes: Vec<f64> = report
                        .centers
                        .iter()
                        .flat_map(|&z| [z + stair - delta / 4.0, z + stair, z + stair + delta / 4.0])
                        .collect();
                    empirical_step(&mut diag, q, w, stair, l, from, &probes, growth_margin, cap)
                }
            };
            match next {
                Some(n) => sched.levels.last_mut().unwrap().n.push(n),
                None => {
                    sched.truncated = true;
                    let lv = sched.levels.pop().unwrap();
                    if lv.n.len() >= 2 {
                        sched.levels.push(lv);
                    }
                    break 'levels;
                }
            }
        }
        start = sched.levels.last().unwrap().end();
    }
    if sched.levels.is_empty() {
        return Err(Error::Precondition(format!("cap {cap} is too small for the first step")));
    }
    Ok(sched)
}

/// Smallest `n ≤ cap` with
/// `10^{−2 n_k} ¼ (δ/4)⁴ Σ_{j=n_k+5}^{n} (1 + (δ/4)²)^{j − n_k − 4} ≥ margin · l · n ln² n`.
fn analytic_step(q: usize, l: usize, delta: f64, from: usize, margin: f64, cap: usize) -> Option<usize> {
    let d = delta / 4.0;
    let ln_r = (d * d).ln_1p();
    let log_pref = -2.0 * from as f64 * std::f64::consts::LN_10 + 0.25f64.ln() + 4.0 * d.ln();
    let first = from + min_step(q).max(5);
    (first..=cap).find(|&n| {
        let terms = (n - from - 4) as f64;
        // ln(r (r^K − 1)/(r − 1)) without overflow
        let log_sum = (terms + 1.0) * ln_r + (-(-terms * ln_r).exp_m1()).ln() - (d * d).ln();
        let nf = n as f64;
        log_pref + log_sum >= (margin * l as f64).ln() + nf.ln() + 2.0 * nf.ln().ln()
    })
}

/// Extends the diagonal with the current step's values and returns the
/// smallest `n ≤ cap` at which the growth statistic at every probe is at
/// least `margin · l`.
#[allow(clippy::too_many_arguments)]
fn empirical_step(
    diag: &mut Vec<f64>,
    q: usize,
    w: f64,
    stair: f64,
    l: usize,
    from: usize,
    probes: &[f64],
    margin: f64,
    cap: usize,
) -> Option<usize> {
    let target = (margin * l as f64).ln();
    let first = from + min_step(q);
    if first > cap {
        return None;
    }
    diag.truncate(from);
    let value = |n: usize| stair + if n.is_multiple_of(q) { w } else { 0.0 };
    let mut accs: Vec<GrowthAccumulator> = probes
        .iter()
        .map(|&x| {
            let mut acc = GrowthAccumulator::new(x);
            for &b in diag.iter() {
                acc.push(1.0, b);
            }
            acc
        })
        .collect();
    for n in from + 1..=cap {
        let b = value(n);
        diag.push(b);
        let mut all = true;
        for acc in accs.iter_mut() {
            acc.push(1.0, b);
            all &= acc.log_statistic() >= target;
        }
        if n >= first && all {
            return Some(n);
        }
    }
    None
}

/// Wraps a schedule as a coefficient sequence.
pub fn theorem15_sequence(schedule: Schedule) -> Result<CoefficientSpec> {
    schedule.validate()?;
    Ok(CoefficientSpec::Theorem15Schedule(schedule))
}

/// `a_n = 1`, `b_n = λ cos(n^γ)` with `λ ∈ (0, 2)`, `γ ∈ (0, ½)`.
pub fn theorem16_sequence(lambda: f64, gamma: f64) -> Result<CoefficientSpec> {
    if !(lambda > 0.0 && lambda < 2.0) {
        return Err(Error::domain(format!("lambda must lie in (0, 2), got {lambda}")));
    }
    if !(gamma > 0.0 && gamma < 0.5) {
        return Err(Error::domain(format!("gamma must lie in (0, 1/2), got {gamma}")));
    }
    Ok(CoefficientSpec::CosinePower { lambda, gamma })
}

/// `(Σ |a_{n+q} − a_n|², Σ |b_{n+q} − b_n|²)` over `n + q ≤ horizon`.
pub fn bv_energy<S: JacobiCoefficients + ?Sized>(spec: &S, q: usize, horizon: usize) -> Result<(f64, f64)> {
    if q == 0 || horizon < q + 1 {
        return Err(Error::domain(format!("need q >= 1 and horizon >= q + 1, got q={q}, horizon={horizon}")));
    }
    let mut ring: Vec<(f64, f64)> = (1..=q).map(|n| spec.coefficients(n)).collect::<Result<_>>()?;
    let (mut sa, mut sb) = (0.0, 0.0);
    for n in q + 1..=horizon {
        let (a, b) = spec.coefficients(n)?;
        let slot = &mut ring[(n - 1) % q];
        sa += (a - slot.0).powi(2);
        sb += (b - slot.1).powi(2);
        *slot = (a, b);
    }
    Ok((sa, sb))
}

/// Largest `|b_{n+q} − b_n|` over `n ∈ [from, to]`.
pub fn max_step_difference<S: JacobiCoefficients + ?Sized>(spec: &S, q: usize, from: usize, to: usize) -> Result<f64> {
    let mut best: f64 = 0.0;
    for n in from.max(1)..=to {
        best = best.max((spec.coefficients(n + q)?.1 - spec.coefficients(n)?.1).abs());
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Schedule {
        build_schedule(2, 0.5, 2, 1.0, 1_000_000, ScheduleMode::Empirical).unwrap()
    }

    #[test]
    fn first_level_parameters() {
        let s = build_schedule(2, 0.5, 1, 1.0, 1_000_000, ScheduleMode::Empirical).unwrap();
        let lv = &s.levels[0];
        assert_eq!(lv.w, 0.5);
        assert!((lv.delta - 0.5).abs() < 1e-12);
        assert!((lv.centers[0] - 0.25).abs() < 1e-12);
        assert_eq!(lv.m, 8);
        assert!(!s.truncated);
        assert_eq!(lv.n.len(), 9);
        s.check_invariants().unwrap();
    }

    #[test]
    fn staircase_formula() {
        assert_eq!(staircase_value(1, 0, 8, 0.5).value, -0.5);
        assert_eq!(staircase_value(1, 8, 8, 0.5).value, 0.5);
        assert_eq!(staircase_value(2, 8, 8, 0.5).value, -0.5);
        for k in 0..8 {
            let d = staircase_value(1, k + 1, 8, 0.5).value - staircase_value(1, k, 8, 0.5).value;
            assert!((d.abs() - 2.0 * 0.5 / 8.0).abs() < 1e-15);
        }
    }

    #[test]
    fn sequence_values() {
        let s = small();
        let l2 = s.levels[0].end();
        for n in 1..=s.horizon() {
            let b = s.b(n).unwrap();
            assert!(b.abs() <= s.lambda + s.levels[0].w + 1e-15);
            if n % 2 == 1 {
                assert_eq!(b, s.staircase(n).unwrap());
            }
        }
        assert_eq!(s.b(2).unwrap(), s.staircase(2).unwrap() + 0.5);
        assert_eq!(s.b(l2 + 2).unwrap(), s.staircase(l2 + 2).unwrap() + 0.25);
        assert!(matches!(s.b(s.horizon() + 1), Err(Error::Horizon { .. })));
        assert!(s.b(0).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let spec = theorem15_sequence(small()).unwrap();
        let back = CoefficientSpec::from_json(&spec.to_json().unwrap()).unwrap();
        assert_eq!(back, spec);
        for n in [1, 17, 250] {
            assert_eq!(back.coefficients(n).unwrap(), spec.coefficients(n).unwrap());
        }
    }

    #[test]
    fn invariant_checks_catch_tampering() {
        let mut s = small();
        s.levels[1].w = 0.75;
        assert!(s.check_invariants().is_err());
        let mut s = small();
        s.levels[0].m = 4;
        assert!(s.check_invariants().is_err());
        let mut s = small();
        s.levels[0].n[3] = s.levels[0].n[2];
        assert!(s.check_invariants().is_err());
        let mut s = small();
        s.levels[0].n[0] = 1;
        assert!(s.validate().is_err());
    }

    #[test]
    fn parameter_errors() {
        assert!(build_schedule(2, 2.5, 1, 1.0, 100, ScheduleMode::Empirical).is_err());
        assert!(build_schedule(1, 0.5, 1, 1.0, 100, ScheduleMode::Empirical).is_err());
        assert!(build_schedule(2, 0.5, 1, 0.5, 100, ScheduleMode::Empirical).is_err());
        assert!(theorem16_sequence(0.5, 0.6).is_err());
        assert!(theorem16_sequence(0.0, 0.3).is_err());
    }

    #[test]
    fn analytic_mode_truncates() {
        let s = build_schedule(2, 0.5, 2, 1.0, 200_000, ScheduleMode::Analytic).unwrap();
        assert!(s.truncated);
        s.check_invariants().unwrap();
        // the first step starts from ‖T_{1,0}‖ = 1, later ones pay 10^{-2 n_k}
        let lv = &s.levels[0];
        assert!(lv.n.len() >= 2);
        if lv.n.len() >= 3 {
            assert!(lv.n[2] - lv.n[1] > lv.n[1]);
        }
    }

    #[test]
    fn analytic_step_inequality_is_tight() {
        let (q, l, delta) = (2, 1, 0.5);
        let n = analytic_step(q, l, delta, 0, 1.0, 1_000_000).unwrap();
        let d = delta / 4.0;
        let direct = |n: usize| -> f64 {
            (5..=n).map(|j| 0.25 * d.powi(4) * (1.0 + d * d).powi(j as i32 - 4)).sum()
        };
        let rhs = |n: usize| n as f64 * (n as f64).ln().powi(2);
        assert!(direct(n) >= rhs(n));
        assert!(direct(n - 1) < rhs(n - 1));
    }

    #[test]
    fn bv_energy_examples() {
        let per = CoefficientSpec::Periodic { a: vec![1.0, 2.0, 1.5], b: vec![0.0, 1.0, -1.0] };
        assert_eq!(bv_energy(&per, 3, 500).unwrap(), (0.0, 0.0));
        let cos = theorem16_sequence(0.5, 0.4).unwrap();
        let (sa, head) = bv_energy(&cos, 1, 100_000).unwrap();
        assert_eq!(sa, 0.0);
        let (_, total) = bv_energy(&cos, 1, 1_000_000).unwrap();
        assert!(total - head < head);
        assert!((total - COSINE_BV_BASELINE).abs() < 1e-9 * COSINE_BV_BASELINE, "{total}");
        assert!(bv_energy(&per, 3, 3).is_err());
    }

    const COSINE_BV_BASELINE: f64 = 0.11275820584330835;

    #[test]
    fn schedule_bv_displays() {
        let s = small();
        let (stair, stair_bound) = s.staircase_variation().unwrap();
        assert!(stair <= stair_bound);
        let (comb, comb_bound) = s.comb_variation().unwrap();
        assert!(comb <= comb_bound);
        let (_, sb) = bv_energy(&s, 2, s.horizon()).unwrap();
        assert!(sb <= 2.0 * comb_bound + 2.0 * 4.0 * stair_bound);
    }

    #[test]
    fn windows_look_like_constant_plus_comb() {
        let s = small();
        let q = s.q;
        for n in (s.horizon() / 2..s.horizon() - 3 * q).step_by(97) {
            let (li, _) = s.locate(n).unwrap();
            let lv = &s.levels[li];
            let window: Vec<f64> = (n..n + 3 * q).map(|j| s.b(j).unwrap()).collect();
            let beta = s.staircase(n).unwrap();
            let dist = window.iter().map(|b| (b - beta).abs()).fold(0.0, f64::max);
            assert!(dist <= lv.w + 2.0 * s.lambda / lv.m as f64 + 1e-15);
        }
    }
}
