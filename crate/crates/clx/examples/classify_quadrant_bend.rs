//! Full classification of the bent-sequence fixture: gap and excess
//! functionals converge on the anchor bornology while both halves of the
//! distance-functional convergence are refuted.
//!
//! Run with: cargo run --example classify_quadrant_bend

use clx::bornology::ProbeBudget;
use clx::convergence::{classify, ClassifyConfig, Status};
use clx::fixtures::quadrant_bend;

fn main() -> clx::Result<()> {
    let fx = quadrant_bend(40, 400.0)?;
    let cfg = ClassifyConfig {
        eps_grid: vec![1.0, 0.5, 0.1],
        budget: ProbeBudget {
            count: 6,
            extent: 40.0,
            density: 1.0,
        },
        seed: 7,
        extra_probes: fx.probes.clone(),
        hints: fx.hints,
        notes: fx.notes.clone(),
        ..Default::default()
    };
    let report = classify(&fx.limit, &fx.seq, &fx.bornology, &cfg)?;

    println!("mode summary:");
    for (mode, status) in &report.mode_summary {
        println!("  {mode:12} {status:?}");
    }

    println!("\nrefuted cells:");
    for cell in report.cells.iter().filter(|c| c.status == Status::Refuted) {
        let w = cell.witness.as_ref().unwrap();
        println!(
            "  {} on {} at eps={}: witness n={} x={} {:?}",
            cell.mode.name(),
            cell.probe_id,
            cell.eps,
            w.n,
            w.point,
            w.values
        );
    }
    println!("\nimplication cells audited: {}", report.implications_checked);
    Ok(())
}
