// Exponential growth of transfer matrices on a window where the matrix
// agrees with a periodic one whose spectrum misses `(E - δ, E + δ)`.
//
// ```text
// cargo run --example gap_growth
// ```

use jbv::{comb_potential, gap_growth_lower_bound, gap_report, verify_prop62, CoefficientSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cmp = comb_potential(3, 0.6)?;
    let gap = gap_report(&cmp, 1e-12)?.gap_intervals[0];
    let (energy, delta) = (gap.lo + 0.5 * gap.width(), gap.width() / 4.0);
    println!("gap {gap}, E = {energy:.4}, δ = {delta:.4}");

    // random-looking sites outside the window [m, k]
    let (m, k) = (7, 67);
    let (a, b): (Vec<f64>, Vec<f64>) = (1..=k + 10)
        .map(|n| if (m..=k).contains(&n) { (1.0, cmp.b()[(n - 1) % 3]) } else { (1.0, ((n * 37) % 11) as f64 / 5.0 - 1.0) })
        .unzip();
    let spec = CoefficientSpec::Explicit { a, b };
    let rep = verify_prop62(&spec, &cmp, m, k, energy, delta, 1e-12)?;
    for row in rep.rows.iter().step_by(10) {
        println!("  l = {:3}: ‖T‖ = {:.4e} >= {:.4e}", row.l, row.norm, row.bound);
    }
    println!("violations: {}", rep.violations);
    println!("bound at l = 100: {:.4e}", gap_growth_lower_bound(delta, 100)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
