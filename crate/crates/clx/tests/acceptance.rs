//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Tolerances are pinned in the asserts; expected values come from
//! closed-form geometry worked independently of the library code paths
//! (clamped projections, corner distances, harmonic sums).

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use clx::bornology::{
    check_stable_under_constant_selection, check_stable_under_enlargement,
    check_stable_under_lip_selection, check_stable_under_lipschitz_enlargement, probe_family,
    Bornology, Probe, ProbeBudget, ProbeSet,
};
use clx::convergence::{
    borno_lower_deficit_verdict, canonical_net_check, gap_check, hit_type_borno_lower,
    le_lower_check, lower_tau_deficit, upper_tau_deficit, upper_tau_miss_check, AnalyticHint,
    CheckOptions, HintKind, Mode, Status,
};
use clx::fixtures::{l2_selection, quadrant_bend, random_clouds, strip_lines, CloudParams};
use clx::functionals::{distance, excess, gap, hausdorff};
use clx::geoset::{GeoSet, Region};
use clx::radius::RadiusFunction;
use clx::selection::{select, verify_selection_pairs};
use clx::space::{point_distance, Point, Space};

const SQRT2: f64 = std::f64::consts::SQRT_2;

fn cloud(rng: &mut ChaCha8Rng, dim: usize, max_pts: usize, extent: f64) -> GeoSet {
    let n = rng.gen_range(1..=max_pts);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..dim).map(|_| rng.gen_range(-extent..extent)).collect())
        .collect();
    GeoSet::cloud(Space::euclidean(dim).unwrap(), rows).unwrap()
}

/// Criterion 1: functional identities on 1000 seeded random point-cloud
/// triples, all within 1e-9, in under 10 seconds.
#[test]
fn criterion_01_functional_identities() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for trial in 0..1000 {
        let dim = if trial % 2 == 0 { 2 } else { 3 };
        let s1 = cloud(&mut rng, dim, 8, 50.0);
        let s2 = cloud(&mut rng, dim, 8, 50.0);
        let c = cloud(&mut rng, dim, 8, 50.0);

        // union laws
        let u = s1.union(&s2).unwrap();
        let g_u = gap(&u, &c).unwrap();
        let g_min = gap(&s1, &c).unwrap().min(gap(&s2, &c).unwrap());
        assert!((g_u - g_min).abs() <= 1e-9, "gap union law, trial {trial}");
        let e_u = excess(&u, &c, 1.0).unwrap().value;
        let e_max = excess(&s1, &c, 1.0)
            .unwrap()
            .value
            .max(excess(&s2, &c, 1.0).unwrap().value);
        assert!((e_u - e_max).abs() <= 1e-9, "excess union law, trial {trial}");

        // hausdorff as max of excesses
        let h = hausdorff(&s1, &s2, 1.0).unwrap();
        let e12 = excess(&s1, &s2, 1.0).unwrap().value;
        let e21 = excess(&s2, &s1, 1.0).unwrap().value;
        assert!((h - e12.max(e21)).abs() <= 1e-9, "hausdorff, trial {trial}");

        // excess triangle inequality
        let e_sc = excess(&s1, &c, 1.0).unwrap().value;
        let e_s2 = excess(&s1, &s2, 1.0).unwrap().value;
        let e_2c = excess(&s2, &c, 1.0).unwrap().value;
        assert!(e_sc <= e_s2 + e_2c + 1e-9, "excess triangle, trial {trial}");

        // 1-Lipschitzness of the distance functional on a sampled pair
        let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-50.0..50.0)).collect();
        let y: Vec<f64> = (0..dim).map(|_| rng.gen_range(-50.0..50.0)).collect();
        let px = Point::Coords(x.clone());
        let py = Point::Coords(y.clone());
        let dxy = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let da = distance(&px, &c).unwrap();
        let db = distance(&py, &c).unwrap();
        assert!((da - db).abs() <= dxy + 1e-9, "lipschitz, trial {trial}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "criterion 1 took {elapsed:?}");
    println!("ACCEPTANCE 01 functional-identities: PASS ({elapsed:?})");
}

/// Criterion 2: the excess/enlargement duality on 1000 random pairs and an
/// epsilon grid, with zero violations.
#[test]
fn criterion_02_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let grid = [2.0, 1.0, 0.5, 0.1];
    let mut checked = 0usize;
    for _ in 0..1000 {
        let a = cloud(&mut rng, 2, 8, 10.0);
        let b = cloud(&mut rng, 2, 8, 10.0);
        let e = excess(&a, &b, 1.0).unwrap().value;
        for &eps in &grid {
            // closed-enlargement equivalence, exact
            let closed = a
                .points()
                .all(|x| clx::enlargement::in_enlargement(x, &b, eps, true).unwrap());
            assert_eq!(e <= eps, closed, "closed duality violated");
            // open direction: strict containment forces excess <= eps
            let open = a
                .points()
                .all(|x| clx::enlargement::in_enlargement(x, &b, eps, false).unwrap());
            if open {
                assert!(e <= eps, "open duality direction violated");
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 4000);
    println!("ACCEPTANCE 02 duality: PASS ({checked} cells, zero violations)");
}

struct DeficitTable {
    tau_lo: Vec<f64>,
    tau_up: Vec<f64>,
    borno_lo: Vec<f64>,
    borno_up: Vec<f64>,
    le_diff: Vec<f64>,
}

fn deficit_table(
    limit: &GeoSet,
    seq: &clx::convergence::SetSequence,
    probe: &GeoSet,
    tol: f64,
) -> DeficitTable {
    let horizon = seq.horizon();
    let e_limit = excess(probe, limit, 1.0).unwrap().value;
    let trunc_a: Vec<&Point> = probe
        .points()
        .filter(|x| distance(x, limit).unwrap() <= tol)
        .collect();
    let mut t = DeficitTable {
        tau_lo: Vec::new(),
        tau_up: Vec::new(),
        borno_lo: Vec::new(),
        borno_up: Vec::new(),
        le_diff: Vec::new(),
    };
    for n in 1..=horizon {
        let an = seq.member(n);
        t.tau_lo.push(lower_tau_deficit(limit, &an, probe).unwrap().0);
        t.tau_up.push(upper_tau_deficit(limit, &an, probe).unwrap().0);
        let b_lo = trunc_a
            .iter()
            .map(|x| distance(x, &an).unwrap())
            .fold(0.0f64, f64::max);
        t.borno_lo.push(b_lo);
        let b_up = probe
            .points()
            .filter(|x| distance(x, &an).unwrap() <= tol)
            .map(|x| distance(x, limit).unwrap())
            .fold(0.0f64, f64::max);
        t.borno_up.push(b_up);
        let e_n = excess(probe, &an, 1.0).unwrap().value;
        t.le_diff.push(e_n - e_limit);
    }
    t
}

fn corpus() -> Vec<clx::fixtures::SequenceInstance> {
    let mut instances = random_clouds(
        &CloudParams {
            dimension: 2,
            count: 100,
            ..Default::default()
        },
        303,
    )
    .unwrap();
    instances.extend(
        random_clouds(
            &CloudParams {
                dimension: 3,
                count: 100,
                ..Default::default()
            },
            313,
        )
        .unwrap(),
    );
    instances
}

/// Criterion 3: the per-cell implication matrix on 200 random instances,
/// zero violations, under 60 seconds.
#[test]
fn criterion_03_implication_matrix() {
    let start = Instant::now();
    let grid = [1.0, 0.5, 0.1, 0.01];
    let mut cells = 0usize;
    for inst in corpus() {
        for probe in &inst.probes {
            let t = deficit_table(&inst.limit, &inst.seq, probe, 1e-9);
            for n in 0..inst.seq.horizon() {
                for &eps in &grid {
                    cells += 1;
                    if t.tau_lo[n] < eps {
                        assert!(
                            t.borno_lo[n] < eps,
                            "{}: tau_lower cell holds but borno_lower fails (n={}, eps={eps})",
                            inst.name,
                            n + 1
                        );
                        assert!(
                            t.le_diff[n] < eps,
                            "{}: tau_lower cell holds but left-excess fails (n={}, eps={eps})",
                            inst.name,
                            n + 1
                        );
                    }
                    if t.tau_up[n] < eps {
                        assert!(
                            t.borno_up[n] < eps,
                            "{}: tau_upper cell holds but borno_upper fails (n={}, eps={eps})",
                            inst.name,
                            n + 1
                        );
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "criterion 3 took {elapsed:?}");
    println!("ACCEPTANCE 03 implication-matrix: PASS ({cells} cells, {elapsed:?})");
}

/// Criterion 4: the hit-type verdict equals the deficit-threshold verdict
/// on every cell of the criterion-3 corpus.
#[test]
fn criterion_04_hit_type_equivalence() {
    let grid = [1.0, 0.5, 0.1, 0.01];
    let opts = CheckOptions::default();
    let mut cells = 0usize;
    for inst in corpus() {
        for (k, probe) in inst.probes.iter().enumerate() {
            let p = Probe::points(
                format!("{}_{k}", inst.name),
                probe.clone(),
                clx::bornology::MemberKind::FiniteCloud,
            );
            for &eps in &grid {
                cells += 1;
                let hit = hit_type_borno_lower(&inst.limit, &inst.seq, &p, eps, opts).unwrap();
                let via_deficit =
                    borno_lower_deficit_verdict(&inst.limit, &inst.seq, &p, eps, opts).unwrap();
                assert_eq!(
                    hit.status, via_deficit.status,
                    "{}: status mismatch at eps={eps}",
                    inst.name
                );
                assert_eq!(hit.vacuous, via_deficit.vacuous);
                assert_eq!(hit.n0, via_deficit.n0, "{}: n0 mismatch", inst.name);
                for (a, b) in hit.deficit_trace.iter().zip(&via_deficit.deficit_trace) {
                    assert_eq!(a < &eps, b < &eps, "per-index cell mismatch");
                }
            }
        }
    }
    println!("ACCEPTANCE 04 hit-type-equivalence: PASS ({cells} cells, zero mismatches)");
}

/// Criterion 5: the quadrant-bend fixture at extent 400, n <= 40.
#[test]
fn criterion_05_quadrant_bend() {
    let start = Instant::now();
    let fx = quadrant_bend(40, 400.0).unwrap();
    let x_axis = fx
        .probes
        .iter()
        .find(|p| p.id == "x_axis")
        .and_then(|p| p.as_points())
        .unwrap()
        .clone();

    // (a) gap convergence on finite probes and the truncated anchor, tol 0.05
    let anchor = match &fx.bornology {
        Bornology::AnchorBase { anchor } => anchor.clone(),
        _ => panic!("quadrant_bend carries an anchor bornology"),
    };
    let gv = gap_check(&fx.limit, &fx.seq, "s0", &anchor, 0.05).unwrap();
    assert_eq!(gv.verdict.status, Status::ConfirmedAtHorizon, "gap on the anchor");
    assert!(gv.liminf_ok);
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for k in 0..5 {
        let rows: Vec<(f64, f64)> = (0..rng.gen_range(2..6))
            .map(|_| (rng.gen_range(0.0..20.0), rng.gen_range(0.0..20.0)))
            .collect();
        let f = GeoSet::cloud2(&rows);
        let gv = gap_check(&fx.limit, &fx.seq, &format!("fin{k}"), &f, 0.05).unwrap();
        assert_eq!(
            gv.verdict.status,
            Status::ConfirmedAtHorizon,
            "gap on finite probe {k}"
        );
        assert!(gv.liminf_ok);
    }

    // (b) lower left-excess convergence on the anchor truncated at 40
    let s40_rows: Vec<(f64, f64)> = (1..=40)
        .flat_map(|k| [(k as f64, 0.0), (0.0, k as f64)])
        .collect();
    let s40 = GeoSet::cloud2(&s40_rows);
    let v = le_lower_check(&fx.limit, &fx.seq, "s40", &s40, 29.0, 30.0, None).unwrap();
    assert_eq!(v.status, Status::ConfirmedAtHorizon, "le_lower on s40");
    assert!(!v.vacuous);

    // (c) the miss-type upper check with f = x/4, g = x/2 refutes, with the
    // witness family d((25n,0), An) = n
    let f = RadiusFunction::affine_coord(0, 0.25, 0.0);
    let g = RadiusFunction::affine_coord(0, 0.5, 0.0);
    let hint = AnalyticHint {
        mode: Mode::TauUpper,
        probe_id: "x_axis".into(),
        kind: HintKind::WitnessFamily {
            from_n: 1,
            to_n: 16,
            point_fn: Box::new(|n| Point::xy(25.0 * n as f64, 0.0)),
            note: "members meet the quarter-slope ball at (25n, 0)".into(),
        },
    };
    let v = upper_tau_miss_check(&fx.limit, &fx.seq, "x_axis", &x_axis, &f, &g, Some(&hint))
        .unwrap();
    assert_eq!(v.status, Status::Refuted, "miss check must refute");
    assert!(v.notes.iter().any(|n| n.contains("witness family")));
    for n in 1..=16usize {
        let nf = n as f64;
        let an = fx.seq.member(n);
        let d = distance(&Point::xy(25.0 * nf, 0.0), &an).unwrap();
        assert!((d - nf).abs() < 1e-9, "d((25n,0),An) = n at n={n}: {d}");
    }
    for m in 1..=400usize {
        let d = distance(&Point::xy(m as f64, 0.0), &fx.limit).unwrap();
        assert!(
            (d - m as f64 / SQRT2).abs() < 1e-9,
            "d((m,0),A) = m/sqrt(2) at m={m}"
        );
    }

    // (d) the lower deficit on the y-axis probe truncated at 8n is exactly
    // sqrt(2) n, witnessed at (0, 8n)
    for n in 1..=40usize {
        let nf = n as f64;
        let rows: Vec<(f64, f64)> = (1..=8 * n).map(|m| (0.0, m as f64)).collect();
        let probe = GeoSet::cloud2(&rows);
        let an = fx.seq.member(n);
        let (deficit, witness) = lower_tau_deficit(&fx.limit, &an, &probe).unwrap();
        assert!(
            (deficit - SQRT2 * nf).abs() < 1e-9,
            "lower tau deficit at n={n}: {deficit} vs {}",
            SQRT2 * nf
        );
        assert_eq!(witness, Point::xy(0.0, 8.0 * nf));
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "criterion 5 took {elapsed:?}");
    println!("ACCEPTANCE 05 quadrant-bend: PASS ({elapsed:?})");
}

/// Criterion 6: the strip-lines fixture at extent 200, n <= 40.
#[test]
fn criterion_06_strip_lines() {
    let fx = strip_lines(40, 200.0).unwrap();
    let opts = CheckOptions::default();

    // lower bornological convergence on strip boxes at the rate m/n
    for m in 1..=5usize {
        let mf = m as f64;
        let region = Region::bbox(vec![-mf, 0.0], vec![mf, 200.0]);
        let probe = ProbeSet::Region(region);
        for n in m..=40 {
            let an = fx.seq.member(n);
            let d = clx::convergence::lower_borno_deficit(&fx.limit, &an, &probe, opts.tol, 1e-3)
                .unwrap();
            assert!(
                d <= mf / n as f64 + 1e-9,
                "strip rate violated at m={m}, n={n}: {d}"
            );
        }
    }

    // the lower tau deficit is refuted by the oracle witness over the
    // y-axis probe, with deficit >= 0.3 n for n >= 4
    let y_axis = fx
        .probes
        .iter()
        .find(|p| p.id == "y_axis")
        .and_then(|p| p.as_points())
        .unwrap()
        .clone();
    for n in 4..=40usize {
        let an = fx.seq.member(n);
        let (deficit, _) = lower_tau_deficit(&fx.limit, &an, &y_axis).unwrap();
        assert!(
            deficit >= 0.3 * n as f64,
            "oracle deficit below the rate at n={n}: {deficit}"
        );
    }

    // classification: borno_lower confirmed, tau_lower refuted, and the
    // report notes record the printed-witness discrepancy
    let cfg = clx::convergence::ClassifyConfig {
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
    let report =
        clx::convergence::classify(&fx.limit, &fx.seq, &fx.bornology, &cfg).unwrap();
    assert_eq!(
        report.mode_summary["borno_lower"],
        Status::ConfirmedAtHorizon,
        "borno_lower must confirm: {:?}",
        report.mode_summary
    );
    assert_eq!(
        report.mode_summary["tau_lower"],
        Status::Refuted,
        "tau_lower must be refuted: {:?}",
        report.mode_summary
    );
    assert!(
        report.notes.iter().any(|n| n.contains("(0,2n)")),
        "report notes must record the printed-witness discrepancy"
    );
    println!("ACCEPTANCE 06 strip-lines: PASS");
}

/// Criterion 7: the sequence-space selection fixture at dimension 200.
#[test]
fn criterion_07_l2_selection() {
    let fx = l2_selection(200).unwrap();
    let targets: Vec<&Point> = fx.targets.points().collect();
    let space = fx.targets.space();

    // 100 sampled basis pairs at exactly sqrt(2)
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    for _ in 0..100 {
        let i = rng.gen_range(0..200);
        let mut j = rng.gen_range(0..200);
        if i == j {
            j = (j + 1) % 200;
        }
        let d = point_distance(space, targets[i], targets[j]).unwrap();
        assert_eq!(d, SQRT2, "basis separation must be exactly sqrt(2)");
    }

    // |a_n - e_n| < |a_n| + 1 < f(a_n) for every n <= 200
    let ks: Vec<&Point> = fx.k_set.points().collect();
    for n in 0..200 {
        let an = ks[n];
        let en = targets[n];
        let d = point_distance(space, an, en).unwrap();
        let norm = an.coords().unwrap().iter().map(|x| x * x).sum::<f64>().sqrt();
        let f_at = fx.radius.eval(an).unwrap();
        assert!(d < norm + 1.0 - 1e-12, "first inequality at n={}", n + 1);
        assert!(norm + 1.0 < f_at - 1e-12, "second inequality at n={}", n + 1);
    }

    // the basis set is a valid f-selection of K: pairwise valid for the
    // a_n -> e_n assignment (plus e_1 for the limit point), and the
    // selection operation itself succeeds on the target pool
    let sources = fx.k_set.clone();
    let mut assignment_rows: Vec<Vec<f64>> = targets
        .iter()
        .map(|p| p.coords().unwrap().to_vec())
        .collect();
    assignment_rows.push(targets[0].coords().unwrap().to_vec());
    let assignment = GeoSet::cloud(space.clone(), assignment_rows).unwrap();
    assert!(verify_selection_pairs(&sources, &assignment, &fx.radius).unwrap());
    let drawn = select(&fx.k_set, &fx.radius, &fx.targets, 7).unwrap();
    for y in drawn.points() {
        assert!(fx.targets.points().any(|t| t == y));
    }
    println!("ACCEPTANCE 07 l2-selection: PASS");
}

/// Criterion 8: the stability suite at 200 trials per checker.
#[test]
fn criterion_08_stability_suite() {
    let start = Instant::now();
    let space = Space::euclidean(2).unwrap();
    let eps_grid = [0.5, 1.0, 2.0, 4.0];
    let origin = GeoSet::cloud2(&[(0.0, 0.0)]);
    let fns = vec![
        RadiusFunction::constant(1.0).unwrap(),
        RadiusFunction::constant(2.5).unwrap(),
        RadiusFunction::affine_dist(origin.clone(), 0.5, 1.0).unwrap(),
        RadiusFunction::affine_dist(origin, 2.0, 0.1).unwrap(),
    ];
    let budget = ProbeBudget {
        count: 50,
        extent: 20.0,
        density: 1.0,
    };

    // bounded passes all four at 200 trials each
    let b = Bornology::Bounded;
    let probes = probe_family(&b, &space, budget, 808).unwrap();
    assert_eq!(probes.len(), 50);
    for rep in [
        check_stable_under_enlargement(&b, &probes, &eps_grid),
        check_stable_under_lipschitz_enlargement(&b, &probes, &fns),
        check_stable_under_constant_selection(&b, &probes, &eps_grid, &[], 1),
        check_stable_under_lip_selection(&b, &probes, &fns, &[], 1),
    ] {
        assert_eq!(rep.trials, 200, "{} trials", rep.property);
        assert!(rep.all_passed(), "{} must pass for bounded", rep.property);
    }

    // finite fails enlargement stability with a concrete witness
    let b = Bornology::Finite;
    let probes = probe_family(&b, &space, budget, 809).unwrap();
    let rep = check_stable_under_enlargement(&b, &probes, &eps_grid);
    assert!(rep.passed < rep.trials);
    let ce = rep.counterexample.expect("finite needs a counterexample");
    assert!(ce.produced.contains("segment"));

    // strips pass constant enlargements and fail Lipschitz enlargements
    // with a coordinate-radius witness
    let b = Bornology::StripBase { axis: 0 };
    let probes = probe_family(&b, &space, budget, 810).unwrap();
    let rep = check_stable_under_enlargement(&b, &probes, &eps_grid);
    assert!(rep.all_passed(), "strip constant enlargement must pass");
    let lip_fns = vec![RadiusFunction::affine_coord(1, 1.0, 1.0)];
    let rep = check_stable_under_lipschitz_enlargement(&b, &probes, &lip_fns);
    assert!(rep.passed < rep.trials);
    let ce = rep.counterexample.expect("strip needs a counterexample");
    assert!(ce.parameter.contains("x[1]"), "witness names the coordinate radius");

    // anchors fail constant selections with an explicit displaced selection
    let anchor_rows: Vec<(f64, f64)> = (1..=40)
        .flat_map(|k| [(k as f64, 0.0), (0.0, k as f64)])
        .collect();
    let b = Bornology::AnchorBase {
        anchor: GeoSet::cloud2(&anchor_rows),
    };
    let probes = probe_family(&b, &space, ProbeBudget { count: 8, extent: 40.0, density: 1.0 }, 811).unwrap();
    let rep = check_stable_under_constant_selection(&b, &probes, &eps_grid, &[], 2);
    assert!(rep.passed < rep.trials);
    let ce = rep.counterexample.expect("anchor needs a counterexample");
    assert!(ce.produced.contains("displacing"));

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "criterion 8 took {elapsed:?}");
    println!("ACCEPTANCE 08 stability-suite: PASS ({elapsed:?})");
}

/// Criterion 9: the canonical inclusion-directed net has deficit exactly
/// zero on every cell, at zero tolerance.
#[test]
fn criterion_09_canonical_net() {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    for trial in 0..20 {
        let a = cloud(&mut rng, 2, 10, 10.0);
        let chain: Vec<Region> = (1..=6)
            .map(|k| Region::ball(vec![0.0, 0.0], 2.0 * k as f64))
            .collect();
        let deficits = canonical_net_check(&a, &chain, 1e-9).unwrap();
        assert!(!deficits.is_empty());
        for d in deficits {
            assert_eq!(d, 0.0, "trial {trial}: canonical net deficit must be exactly zero");
        }
    }
    println!("ACCEPTANCE 09 canonical-net: PASS (zero tolerance)");
}

/// Criterion 10: identical scenario and seed produce byte-identical reports.
#[test]
fn criterion_10_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let d1 = dir.path().join("run1");
    let d2 = dir.path().join("run2");
    std::fs::create_dir_all(&d1).unwrap();
    std::fs::create_dir_all(&d2).unwrap();
    let scenario_text = "name = \"det\"\nseed = 11\neps_grid = [1.0, 0.5]\n\
                         fixture = \"quadrant_bend\"\nn_max = 12\nextent = 120.0\n\
                         probe_count = 5\nprobe_extent = 12.0\nprobe_density = 1.0\n\
                         out_report = \"report.json\"\nout_table = \"cells.csv\"\n";
    let sc: clx::scenario::Scenario = toml::from_str(scenario_text).unwrap();
    sc.validate().unwrap();
    clx::scenario::run_classify(&sc, &d1, &d1).unwrap();
    clx::scenario::run_classify(&sc, &d2, &d2).unwrap();
    let r1 = std::fs::read(d1.join("report.json")).unwrap();
    let r2 = std::fs::read(d2.join("report.json")).unwrap();
    assert_eq!(r1, r2, "reports must be byte-identical");
    let c1 = std::fs::read(d1.join("cells.csv")).unwrap();
    let c2 = std::fs::read(d2.join("cells.csv")).unwrap();
    assert_eq!(c1, c2, "cell tables must be byte-identical");
    println!("ACCEPTANCE 10 determinism: PASS (byte-identical reports)");
}
