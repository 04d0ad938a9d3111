//! Enlargement membership, functional enlargements and pointwise hits.
//!
//! Run with: cargo run --example enlargements

use clx::enlargement::{hits_pointwise, in_enlargement, in_functional_enlargement};
use clx::functionals::excess;
use clx::geoset::GeoSet;
use clx::radius::RadiusFunction;
use clx::space::Point;

fn main() -> clx::Result<()> {
    let a = GeoSet::segment2((0.0, 0.0), (100.0, 100.0));

    // open vs closed at the boundary
    let unit = GeoSet::cloud2(&[(0.0, 0.0)]);
    let x = Point::xy(0.0, 1.0);
    println!(
        "boundary point: open={}, closed={}",
        in_enlargement(&x, &unit, 1.0, false)?,
        in_enlargement(&x, &unit, 1.0, true)?
    );

    // duality: excess(A,B) <= eps iff A sits in the closed eps-enlargement
    let cloud = GeoSet::cloud2(&[(1.0, 0.0), (3.0, 0.0), (5.0, 0.0)]);
    let e = excess(&cloud, &a, 1.0)?.value;
    let eps = 4.0;
    let contained = cloud
        .points()
        .all(|p| in_enlargement(p, &a, eps, true).unwrap());
    println!("excess={e:.4}  closed {eps}-containment={contained}  (agree: {})",
        (e <= eps) == contained);

    // functional enlargement with a radius growing along the axis
    let anchor = GeoSet::cloud2(&[(25.0, 0.0)]);
    let quarter = RadiusFunction::affine_coord(0, 0.25, 0.0);
    let hit = in_functional_enlargement(&Point::xy(25.0, 1.0), &anchor, &quarter, &anchor)?;
    println!("\n(25,1) in B(anchor, x/4): {} via {:?}", hit.inside, hit.witness);

    // the diagonal misses the half-slope enlargement of the axis pointwise
    let axis_rows: Vec<(f64, f64)> = (1..=20).map(|m| (m as f64, 0.0)).collect();
    let axis = GeoSet::cloud2(&axis_rows);
    let half = RadiusFunction::affine_coord(0, 0.5, 0.0);
    let rep = hits_pointwise(&a, &axis, &half)?;
    println!(
        "diagonal hits B(axis, x/2) pointwise: {} (witness {:?})",
        rep.holds,
        rep.witness.map(|w| format!("{} d={:.4} r={:.4}", w.point, w.dist, w.radius))
    );
    Ok(())
}
