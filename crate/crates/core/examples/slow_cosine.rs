// `b_n = λ cos(n^γ)`: the interval swept by `[b - 2a, b + 2a]` and the
// absence of large eigenvalue-free runs in a finite truncation.
//
// ```text
// cargo run --example slow_cosine
// ```

use jbv::{corollary13_interval, largest_eigenvalue_gap, sturm_count, theorem16_sequence};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = theorem16_sequence(0.5, 0.4)?;
    let rep = corollary13_interval(&spec, 1_000_000)?;
    println!("interval [{:.6}, {:.6}], spread {:.2e}, stabilized {}", rep.lower, rep.upper, rep.spread, rep.stabilized);

    let size = 4000;
    for x in [-2.5, -1.5, 0.0, 1.5, 2.5] {
        println!("  #eigenvalues below {x:+.1}: {}", sturm_count(&spec, size, x)?);
    }
    let gap = largest_eigenvalue_gap(&spec, size, -2.45, 2.45, 0.005)?;
    println!("largest eigenvalue-free run in [-2.45, 2.45] is at most {gap:.3}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
