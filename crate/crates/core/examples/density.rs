// A.c. density of an eventually periodic approximant, checked against the
// resolvent of a large finite truncation.
//
// ```text
// cargo run --example density
// ```

use jbv::{ac_density, ac_density_grid, band_structure, block_coefficients, resolvent_density, ApproximantSpec, CoefficientSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // b_n = 0.5 cos(n^0.4), frozen into period 2 after block N = 20
    let base = CoefficientSpec::CosinePower { lambda: 0.5, gamma: 0.4 };
    let aspec = ApproximantSpec::new(base, 2, 20)?;
    let bs = band_structure(&block_coefficients(&aspec, 2, 20)?, 1e-10)?;
    println!("bands of the repeated block: {:?}", bs.bands);

    let [lo, hi] = bs.bands[0];
    let xs: Vec<f64> = (1..8).map(|i| lo + (hi - lo) * i as f64 / 8.0).collect();
    for p in ac_density_grid(&aspec, &xs)? {
        let f = p.density.map(|d| d.value).unwrap_or(f64::NAN);
        let oracle = resolvent_density(&aspec, 10_000, p.x, 2.5e-3)?;
        println!("  x = {:+.4}  f = {f:.8}  resolvent = {oracle:.8}", p.x);
        assert!((f - oracle).abs() <= 1e-3 * oracle);
    }

    // the free half-line: f(x) = sqrt(4 - x^2) / 2π
    let free = ApproximantSpec::new(CoefficientSpec::free(), 1, 0)?;
    let f = ac_density(&free, 0.3)?.value;
    println!("free density at 0.3: {f:.12} (exact {:.12})", (4.0f64 - 0.09).sqrt() / std::f64::consts::TAU);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
