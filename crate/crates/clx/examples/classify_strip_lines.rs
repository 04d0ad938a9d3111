//! Classification of the tilted-lines fixture over the strip bornology:
//! truncation convergence at rate m/n against a refuted lower
//! distance-functional half, with the oracle-found witness recorded.
//!
//! Run with: cargo run --example classify_strip_lines

use clx::bornology::{ProbeBudget, ProbeSet};
use clx::convergence::{classify, lower_borno_deficit, ClassifyConfig};
use clx::fixtures::strip_lines;
use clx::geoset::Region;

fn main() -> clx::Result<()> {
    let fx = strip_lines(40, 200.0)?;

    // the paper-rate table: deficits on strip boxes stay below m/n
    println!("lower bornological deficits on strip boxes (bound m/n):");
    for m in [1usize, 3, 5] {
        let region = Region::bbox(vec![-(m as f64), 0.0], vec![m as f64, 200.0]);
        let probe = ProbeSet::Region(region);
        print!("  m={m}:");
        for n in [m, 2 * m, 5 * m, 40] {
            let d = lower_borno_deficit(&fx.limit, &fx.seq.member(n), &probe, 1e-9, 1e-3)?;
            print!("  n={n}: {d:.4} (<= {:.4})", m as f64 / n as f64);
        }
        println!();
    }

    let cfg = ClassifyConfig {
        eps_grid: vec![1.0, 0.5, 0.25],
        budget: ProbeBudget {
            count: 6,
            extent: 200.0,
            density: 1.0,
        },
        seed: 42,
        extra_probes: fx.probes.clone(),
        hints: fx.hints,
        notes: fx.notes.clone(),
        ..Default::default()
    };
    let report = classify(&fx.limit, &fx.seq, &fx.bornology, &cfg)?;
    println!("\nmode summary:");
    for (mode, status) in &report.mode_summary {
        println!("  {mode:12} {status:?}");
    }
    println!("\nnotes:");
    for note in &report.notes {
        println!("  {note}");
    }
    Ok(())
}
