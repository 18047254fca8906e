// Intersections of spectra and q-interiors over the constant family
// `J(1, β)` with `β` in `[-λ, λ]`.
//
// ```text
// cargo run --example intersect
// ```

use jbv::{intersection_over_family, FamilyMode, FamilySampling, PeriodicJacobi};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (q, lambda) = (3, 0.5);
    let family: Vec<PeriodicJacobi> = (0..101)
        .map(|i| PeriodicJacobi::new(vec![1.0; q], vec![-lambda + lambda * i as f64 / 50.0; q]))
        .collect::<Result<_, _>>()?;
    for mode in [FamilyMode::Spectrum, FamilyMode::QInterior] {
        for sampling in [FamilySampling::Path, FamilySampling::Discrete] {
            let set = intersection_over_family(&family, mode, sampling, 1e-10)?;
            println!("{mode:?} / {sampling:?}: {} pieces, measure {:.6}", set.intervals().len(), set.measure());
            if set.intervals().len() <= 3 {
                println!("  {set}");
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
