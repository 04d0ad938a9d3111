//! The GeoSet text format: write, read back bit-exactly, clip, and work in
//! a distance-matrix space.
//!
//! Run with: cargo run --example geoset_io

use clx::functionals::{distance, gap};
use clx::geoset::{clip, GeoSet, Primitive, Region};
use clx::space::{Point, Space};

fn main() -> clx::Result<()> {
    let a = GeoSet::new(
        Space::euclidean(2)?,
        vec![
            Primitive::Point(Point::xy(0.1, -2.5e-17)),
            Primitive::Segment(Point::xy(0.0, 0.0), Point::xy(10.0, 10.0)),
        ],
    )?;
    let text = a.to_text();
    println!("--- text format ---\n{text}");
    let back = GeoSet::from_text(&text, "stdin")?;
    println!("round-trips bit-exactly: {}\n", back == a);

    let clipped = clip(&a, &Region::ball(vec![0.0, 0.0], 2.0_f64.sqrt() * 5.0))?.unwrap();
    println!("clipped to the 5*sqrt(2) ball:\n{}", clipped.to_text());

    // a finite metric space given by its distance matrix
    let space = Space::distance_matrix(vec![
        vec![0.0, 1.0, 2.0],
        vec![1.0, 0.0, 1.5],
        vec![2.0, 1.5, 0.0],
    ])?;
    let m = GeoSet::new(
        space,
        vec![
            Primitive::Point(Point::Index(0)),
            Primitive::Point(Point::Index(2)),
        ],
    )?;
    println!("matrix-space set:\n{}", m.to_text());
    println!("d(#1, set) = {}", distance(&Point::Index(1), &m)?);
    let singleton = GeoSet::new(m.space().clone(), vec![Primitive::Point(Point::Index(1))])?;
    println!("gap(set, {{#1}}) = {}", gap(&m, &singleton)?);
    Ok(())
}
