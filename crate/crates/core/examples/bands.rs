// Band structure of periodic Jacobi matrices: the free case, where every
// gap is closed, and the comb potential, where every gap opens.
//
// ```text
// cargo run --example bands
// ```

use jbv::{band_structure, comb_potential, free_critical_points, gap_report, PeriodicJacobi};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let free = PeriodicJacobi::free(4)?;
    let bs = band_structure(&free, 1e-10)?;
    println!("free, q = 4");
    for (i, [lo, hi]) in bs.bands.iter().enumerate() {
        println!("  band {i}: [{lo:+.6}, {hi:+.6}]");
    }
    println!("  closed gaps at {:?}", bs.gaps.iter().map(|g| g.lo).collect::<Vec<_>>());
    println!("  2 cos(jπ/q)      {:?}", free_critical_points(4));
    println!("  q-interior {}", bs.q_interior);
    assert!(bs.gaps.iter().all(|g| !g.open));

    for w in [0.1, 0.5, 1.0] {
        let rep = gap_report(&comb_potential(3, w)?, 1e-12)?;
        println!("comb q = 3, w = {w}: gaps {:?}, min width {:.6}", rep.gap_intervals, rep.min_width);
        assert!(rep.all_open);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
