//! The canonical inclusion-directed net: truncations of a set along a
//! nested chain of balls converge to it from below with deficit exactly
//! zero on every earlier probe.
//!
//! Run with: cargo run --example canonical_net

use clx::convergence::canonical_net_check;
use clx::geoset::{GeoSet, Region};

fn main() -> clx::Result<()> {
    let a = GeoSet::cloud2(&[
        (0.5, 0.5),
        (2.0, -1.0),
        (4.0, 4.0),
        (7.5, 0.0),
        (-3.0, 8.0),
    ]);
    let chain: Vec<Region> = (1..=5)
        .map(|k| Region::ball(vec![0.0, 0.0], 2.5 * k as f64))
        .collect();
    let deficits = canonical_net_check(&a, &chain, 1e-9)?;
    println!(
        "checked {} (member, probe) cells along the chain; max deficit = {:?}",
        deficits.len(),
        deficits.iter().cloned().fold(0.0f64, f64::max)
    );
    assert!(deficits.iter().all(|&d| d == 0.0));
    println!("every deficit is exactly zero");
    Ok(())
}
