//! f-selections, including the sequence-space construction where the basis
//! vectors form a valid Lip-selection of a compact set.
//!
//! Run with: cargo run --example selections

use clx::fixtures::l2_selection;
use clx::geoset::GeoSet;
use clx::radius::RadiusFunction;
use clx::selection::{select, verify_selection_pairs};
use clx::space::point_distance;

fn main() -> clx::Result<()> {
    // a set is always an f-selection of itself
    let s = GeoSet::cloud2(&[(0.0, 0.0), (5.0, 5.0), (9.0, 1.0)]);
    let f = RadiusFunction::constant(0.5)?;
    let same = select(&s, &f, &s, 1)?;
    println!("self-selection returns the set itself: {}", same == s);

    // a seeded draw from a candidate pool
    let pool = GeoSet::cloud2(&[(0.4, 0.0), (0.0, 0.4), (5.2, 5.1), (8.8, 1.3)]);
    let drawn = select(&s, &f, &pool, 42)?;
    println!("drawn selection:");
    for p in drawn.points() {
        println!("  {p}");
    }

    // the 200-dimensional harmonic construction: targets pairwise sqrt(2)
    // apart, yet within reach of every source point
    let fx = l2_selection(200)?;
    let targets: Vec<_> = fx.targets.points().collect();
    let d01 = point_distance(fx.targets.space(), targets[0], targets[1])?;
    println!("\nbasis separation |e1 - e2| = {d01}");

    let mut rows: Vec<Vec<f64>> = targets.iter().map(|p| p.coords().unwrap().to_vec()).collect();
    rows.push(targets[0].coords().unwrap().to_vec());
    let assignment = GeoSet::cloud(fx.targets.space().clone(), rows)?;
    println!(
        "basis vectors form a valid f-selection of K: {}",
        verify_selection_pairs(&fx.k_set, &assignment, &fx.radius)?
    );
    Ok(())
}
