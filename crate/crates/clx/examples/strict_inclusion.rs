//! Verifying strict-inclusion witnesses: a sandwich of alpha- and
//! eps-enlargements of bornology members between a set and a target.
//!
//! Run with: cargo run --example strict_inclusion

use clx::bornology::{enlargement_shell_sample, strictly_included, InclusionWitness};
use clx::geoset::{GeoSet, Region};

fn main() -> clx::Result<()> {
    let center = GeoSet::cloud2(&[(0.0, 0.0)]);

    // a valid sandwich: unit cloud inside B(center, 1), shell inside the
    // 3-ball target
    let witness = InclusionWitness {
        set: center.clone(),
        alpha: 1.0,
        eps: 2.0,
    };
    let shell = enlargement_shell_sample(&center, 2.0, 16)?;
    let target = Region::ball(vec![0.0, 0.0], 3.0);
    let check = strictly_included(
        &center,
        &|p| target.contains_point(p),
        std::slice::from_ref(&witness),
        std::slice::from_ref(&shell),
    )?;
    println!(
        "valid witness: holds={} over {} grid points",
        check.holds, check.grid_points_checked
    );

    // a failing sandwich: the eps-shell escapes a slightly smaller target
    let tight = Region::ball(vec![0.0, 0.0], 1.15);
    let witness = InclusionWitness {
        set: center.clone(),
        alpha: 1.1,
        eps: 1.2,
    };
    let shell = enlargement_shell_sample(&center, 1.2, 16)?;
    let check = strictly_included(
        &center,
        &|p| tight.contains_point(p),
        std::slice::from_ref(&witness),
        std::slice::from_ref(&shell),
    )?;
    match check.violation {
        Some((point, why)) => println!("tight target: fails at {point} ({why})"),
        None => println!("tight target: unexpectedly held"),
    }
    Ok(())
}
