// q-step transfer blocks, their diagonalization and the coupling series
// `W_m = U_m^{-1} U_{m+1} - I`.
//
// ```text
// cargo run --example transfer
// ```

use jbv::{coupling_series, eigen_branch, pick_sign, q_step_block, transfer_product, CoefficientSpec};
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = CoefficientSpec::CosinePower { lambda: 0.5, gamma: 0.4 };
    let (q, x) = (1, 0.0);
    let z = Complex64::new(x, 0.0);

    let blk = q_step_block(&spec, q, 10, z)?;
    let s = pick_sign(&spec, q, 10, x, x)?;
    let d = eigen_branch(&blk, s)?;
    println!("Φ_10 = {:?}", blk.phi);
    println!("Δ = {:.6}, λ = {:.6}, |λ| = {:.15}", blk.delta.re, d.lambda, d.lambda.norm());
    println!("reconstruction error {:.2e}", d.reconstruct().max_diff(&blk.phi));

    let t = transfer_product(&spec, 1, 5000, z)?;
    println!("log ‖T(1, 5000)‖ = {:.4}, det defect {:.2e}", t.log_norm(), t.det_defect());

    let series = coupling_series(&spec, q, z, 1..10_000, s)?;
    for m in [10, 100, 1000, 9999] {
        println!("  Σ_{{j<={m}}} ‖W_j‖² = {:.6}", series.partial_l2[m - 1]);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
