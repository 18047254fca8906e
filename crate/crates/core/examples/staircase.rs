// The staircase-plus-comb sequence: build a two-level schedule, check its
// invariants and variation bounds, and watch the growth statistic blow up
// at a gap center while staying flat inside the spectrum.
//
// ```text
// cargo run --example staircase
// ```

use jbv::{build_schedule, bv_energy, growth_segments, theorem15_sequence, ScheduleMode};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sched = build_schedule(2, 0.5, 2, 1.0, 1_000_000, ScheduleMode::Empirical)?;
    sched.check_invariants()?;
    println!("breakpoints L_l = {:?}, truncated = {}", sched.breakpoints(), sched.truncated);
    for lvl in &sched.levels {
        println!("  level {}: w = {}, δ = {:.4}, m = {}, steps {:?}", lvl.l, lvl.w, lvl.delta, lvl.m, lvl.n);
    }
    let (stair, stair_bound) = sched.staircase_variation()?;
    let (comb, comb_bound) = sched.comb_variation()?;
    println!("staircase {stair:.4} <= {stair_bound:.4}, comb {comb:.4} <= {comb_bound:.4}");

    let breaks = sched.breakpoints();
    let center = sched.levels[0].centers[0];
    let spec = theorem15_sequence(sched.clone())?;
    let (_, sum_b) = bv_energy(&spec, 2, sched.horizon())?;
    println!("Σ |b_(n+2) - b_n|² = {sum_b:.4}");
    for x in [center, 1.2] {
        let seg = growth_segments(&spec, x, &breaks)?;
        let maxima: Vec<String> = seg.iter().map(|s| format!("{:.3e}", s.log_max.exp())).collect();
        println!("x = {x:+.3}: per-level maxima of the statistic {maxima:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
