//! The set functionals on a bent-sequence pair: gap, excess, Hausdorff and
//! the entourage deficit.
//!
//! Run with: cargo run --example functionals

use clx::fixtures::quadrant_bend;
use clx::functionals::{distance, excess, gap, hausdorff, uniform_gap};
use clx::geoset::GeoSet;
use clx::space::Point;

fn main() -> clx::Result<()> {
    let fx = quadrant_bend(8, 80.0)?;
    let a = &fx.limit;
    println!("limit: diagonal segment, members bend to a horizontal ray\n");

    for n in [1usize, 4, 8] {
        let an = fx.seq.member(n);
        let e_up = excess(&an, a, 0.01)?;
        let e_lo = excess(a, &an, 0.01)?;
        println!(
            "n={n:2}  gap={:.6}  e(An,A)={:.4}±{:.0e}  e(A,An)={:.4}±{:.0e}  hausdorff={:.4}",
            gap(a, &an)?,
            e_up.value,
            e_up.error_bound,
            e_lo.value,
            e_lo.error_bound,
            hausdorff(a, &an, 0.01)?,
        );
    }

    // distance functionals seen from single probe points
    let an = fx.seq.member(4);
    for probe in [(0.0, 32.0), (100.0 / 2.0, 0.0), (10.0, 10.0)] {
        let x = Point::xy(probe.0, probe.1);
        println!(
            "\nx={x}: d(x,A)={:.6}  d(x,A4)={:.6}",
            distance(&x, a)?,
            distance(&x, &an)?
        );
    }

    // the entourage deficit over a probe cloud dominates nothing beyond the
    // Hausdorff distance
    let probe_rows: Vec<(f64, f64)> = (1..=20).map(|k| (k as f64, 2.0 * k as f64)).collect();
    let probe = GeoSet::cloud2(&probe_rows);
    println!(
        "\nuniform gap on a 20-point probe: {:.6} (hausdorff bound {:.6})",
        uniform_gap(a, &an, &probe)?,
        hausdorff(a, &an, 0.01)?
    );
    Ok(())
}
