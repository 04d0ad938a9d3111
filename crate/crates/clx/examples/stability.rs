//! The four bornology stability checkers across the built-in variants.
//!
//! Run with: cargo run --example stability

use clx::bornology::{
    check_stable_under_constant_selection, check_stable_under_enlargement,
    check_stable_under_lip_selection, check_stable_under_lipschitz_enlargement, probe_family,
    Bornology, ProbeBudget,
};
use clx::geoset::GeoSet;
use clx::radius::RadiusFunction;
use clx::space::Space;

fn main() -> clx::Result<()> {
    let space = Space::euclidean(2)?;
    let budget = ProbeBudget {
        count: 10,
        extent: 30.0,
        density: 1.0,
    };
    let eps_grid = [0.5, 1.0, 2.0];
    let origin = GeoSet::cloud2(&[(0.0, 0.0)]);
    let radius_fns = vec![
        RadiusFunction::constant(1.0)?,
        RadiusFunction::affine_dist(origin, 0.5, 1.0)?,
        RadiusFunction::affine_coord(1, 1.0, 1.0),
    ];

    let anchor_rows: Vec<(f64, f64)> = (1..=30)
        .flat_map(|k| [(k as f64, 0.0), (0.0, k as f64)])
        .collect();
    let variants = vec![
        Bornology::Finite,
        Bornology::Bounded,
        Bornology::StripBase { axis: 0 },
        Bornology::AnchorBase {
            anchor: GeoSet::cloud2(&anchor_rows),
        },
    ];

    for b in variants {
        println!("== {}", b.describe());
        let probes = probe_family(&b, &space, budget, 5)?;
        let reports = [
            check_stable_under_enlargement(&b, &probes, &eps_grid),
            check_stable_under_lipschitz_enlargement(&b, &probes, &radius_fns),
            check_stable_under_constant_selection(&b, &probes, &eps_grid, &[], 5),
            check_stable_under_lip_selection(&b, &probes, &radius_fns, &[], 5),
        ];
        for r in reports {
            print!("  {:40} {}/{}", r.property, r.passed, r.trials);
            match r.counterexample {
                Some(ce) => println!("  FAIL on {} [{}]: {}", ce.probe_id, ce.parameter, ce.reason),
                None => println!("  pass"),
            }
        }
    }
    Ok(())
}
