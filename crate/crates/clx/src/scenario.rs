//! Scenario configs and the runner entry points behind the CLI.
//!
//! A scenario is a flat, typed key-value document (TOML). Unknown keys are
//! errors: silent defaults corrupt experiments. The exit code of a run
//! reflects tool health only; refuted cells are expected outputs for the
//! counterexample fixtures and live in the report files.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::bornology::{
    check_stable_under_constant_selection, check_stable_under_enlargement,
    check_stable_under_lip_selection, check_stable_under_lipschitz_enlargement, probe_family,
    Bornology, ProbeBudget,
};
use crate::convergence::{classify, ClassifyConfig, ClassifyReport, SetSequence};
use crate::error::{Error, Result};
use crate::fixtures::{quadrant_bend, strip_lines, Fixture};
use crate::functionals::{excess_default, gap, hausdorff, uniform_gap};
use crate::geoset::{GeoSet, Region};
use crate::radius::RadiusFunction;
use crate::report::{write_classify_report, write_stability_suite, StabilitySuite};
use crate::space::Space;

/// The scenario file schema. Either `fixture` (+ `n_max`, `extent`) or
/// `limit` + `members` describes the sequence.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub seed: u64,
    pub horizon: Option<usize>,
    /// Strictly decreasing positive thresholds.
    pub eps_grid: Vec<f64>,
    /// Bornology descriptor: finite | bounded | all | strip(<axis>) |
    /// anchor(<path>) | custom(<region>;...). Fixtures supply their own.
    pub bornology: Option<String>,
    pub fixture: Option<String>,
    pub n_max: Option<usize>,
    pub extent: Option<f64>,
    /// Paths to the limit set and explicit member files (alternative to a
    /// fixture).
    pub limit: Option<String>,
    pub members: Option<Vec<String>>,
    pub probe_count: usize,
    pub probe_extent: f64,
    pub probe_density: f64,
    pub out_report: String,
    pub out_table: String,
}

impl Scenario {
    pub fn from_path(path: &Path) -> Result<Scenario> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let sc: Scenario = toml::from_str(&text).map_err(|e| Error::Parse {
            path: path.display().to_string(),
            line: 0,
            msg: e.to_string(),
        })?;
        sc.validate()?;
        Ok(sc)
    }

    pub fn validate(&self) -> Result<()> {
        if self.eps_grid.is_empty() {
            return Err(Error::InvalidInput("eps_grid must be nonempty".into()));
        }
        for w in self.eps_grid.windows(2) {
            if !(w[1] < w[0]) {
                return Err(Error::InvalidInput(
                    "eps_grid must be strictly decreasing".into(),
                ));
            }
        }
        if self.eps_grid.iter().any(|&e| !(e > 0.0)) {
            return Err(Error::InvalidInput("eps_grid must be strictly positive".into()));
        }
        if let Some(h) = self.horizon {
            if h == 0 {
                return Err(Error::InvalidInput("horizon must be >= 1".into()));
            }
        }
        if self.fixture.is_none() && (self.limit.is_none() || self.members.is_none()) {
            return Err(Error::InvalidInput(
                "a scenario needs either a fixture or limit + members".into(),
            ));
        }
        if self.probe_count == 0 {
            return Err(Error::InvalidInput("probe_count must be >= 1".into()));
        }
        Ok(())
    }
}

/// Parses a bornology descriptor string.
pub fn parse_bornology(desc: &str, base_dir: &Path) -> Result<Bornology> {
    let d = desc.trim();
    if let Some(rest) = d.strip_prefix("strip(").and_then(|r| r.strip_suffix(')')) {
        let axis: usize = rest
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad strip axis {rest}")))?;
        return Ok(Bornology::StripBase { axis });
    }
    if let Some(rest) = d.strip_prefix("anchor(").and_then(|r| r.strip_suffix(')')) {
        let path = base_dir.join(rest.trim());
        let anchor = GeoSet::read_file(&path)?;
        anchor.require_point_cloud("anchor set")?;
        return Ok(Bornology::AnchorBase { anchor });
    }
    if let Some(rest) = d.strip_prefix("custom(").and_then(|r| r.strip_suffix(')')) {
        let mut regions = Vec::new();
        for part in rest.split(';') {
            let toks: Vec<&str> = part.split_whitespace().collect();
            match toks.split_first() {
                Some((&"ball", nums)) => {
                    let vals: Vec<f64> = nums
                        .iter()
                        .map(|t| {
                            t.parse::<f64>()
                                .map_err(|_| Error::InvalidInput(format!("bad number {t}")))
                        })
                        .collect::<Result<_>>()?;
                    if vals.len() < 2 {
                        return Err(Error::InvalidInput(
                            "ball needs center coordinates and a radius".into(),
                        ));
                    }
                    let (center, radius) = vals.split_at(vals.len() - 1);
                    regions.push(Region::ball(center.to_vec(), radius[0]));
                }
                Some((&"box", nums)) => {
                    let vals: Vec<f64> = nums
                        .iter()
                        .map(|t| {
                            t.parse::<f64>()
                                .map_err(|_| Error::InvalidInput(format!("bad number {t}")))
                        })
                        .collect::<Result<_>>()?;
                    if vals.is_empty() || !vals.len().is_multiple_of(2) {
                        return Err(Error::InvalidInput(
                            "box needs min and max corner coordinates".into(),
                        ));
                    }
                    let (min, max) = vals.split_at(vals.len() / 2);
                    regions.push(Region::bbox(min.to_vec(), max.to_vec()));
                }
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "unknown custom region `{part}`"
                    )))
                }
            }
        }
        if regions.is_empty() {
            return Err(Error::InvalidInput("custom bornology needs regions".into()));
        }
        return Ok(Bornology::CustomBase { regions });
    }
    match d {
        "finite" => Ok(Bornology::Finite),
        "bounded" => Ok(Bornology::Bounded),
        "all" => Ok(Bornology::All),
        _ => Err(Error::InvalidInput(format!(
            "unknown bornology descriptor `{desc}`"
        ))),
    }
}

pub fn build_fixture(name: &str, n_max: usize, extent: f64) -> Result<Fixture> {
    match name {
        "strip_lines" => strip_lines(n_max, extent),
        "quadrant_bend" => quadrant_bend(n_max, extent),
        _ => Err(Error::InvalidInput(format!(
            "unknown fixture `{name}` (expected strip_lines or quadrant_bend)"
        ))),
    }
}

/// Runs the classifier for a scenario and writes the report and the flat
/// table. Input paths resolve against `input_dir` (usually the scenario's
/// directory); report files land in `out_dir`. Returns the in-memory
/// report as well.
pub fn run_classify(
    scenario: &Scenario,
    input_dir: &Path,
    out_dir: &Path,
) -> Result<ClassifyReport> {
    scenario.validate()?;
    let (limit, seq, bornology, extra_probes, hints, mut notes) = match &scenario.fixture {
        Some(fname) => {
            let n_max = scenario
                .n_max
                .or(scenario.horizon)
                .ok_or_else(|| Error::InvalidInput("fixture scenarios need n_max".into()))?;
            let extent = scenario
                .extent
                .ok_or_else(|| Error::InvalidInput("fixture scenarios need extent".into()))?;
            let fx = build_fixture(fname, n_max, extent)?;
            (fx.limit, fx.seq, fx.bornology, fx.probes, fx.hints, fx.notes)
        }
        None => {
            let limit_path = input_dir.join(scenario.limit.as_ref().unwrap());
            let limit = GeoSet::read_file(&limit_path)?;
            let mut members = Vec::new();
            for m in scenario.members.as_ref().unwrap() {
                members.push(GeoSet::read_file(&input_dir.join(m))?);
            }
            let seq = SetSequence::from_members(limit.clone(), members)?;
            let bdesc = scenario.bornology.as_ref().ok_or_else(|| {
                Error::InvalidInput("file scenarios need a bornology descriptor".into())
            })?;
            let b = parse_bornology(bdesc, input_dir)?;
            (limit, seq, b, Vec::new(), Vec::new(), Vec::new())
        }
    };

    // a horizon override re-slices the sequence; it can only shorten it,
    // since fixture witness ranges are tied to their extent
    let seq = match scenario.horizon {
        Some(h) if h != seq.horizon() => {
            let members: Vec<GeoSet> = (1..=h.min(seq.horizon())).map(|n| seq.member(n)).collect();
            SetSequence::from_members(limit.clone(), members)?
        }
        _ => seq,
    };

    notes.push(format!("scenario {}", scenario.name));
    let cfg = ClassifyConfig {
        eps_grid: scenario.eps_grid.clone(),
        budget: ProbeBudget {
            count: scenario.probe_count,
            extent: scenario.probe_extent,
            density: scenario.probe_density,
        },
        seed: scenario.seed,
        extra_probes,
        hints,
        notes,
        ..Default::default()
    };
    let report = classify(&limit, &seq, &bornology, &cfg)?;
    write_classify_report(
        &report,
        &out_dir.join(&scenario.out_report),
        &out_dir.join(&scenario.out_table),
    )?;
    Ok(report)
}

/// Prints the functional table for two sets (and an optional probe cloud).
pub fn run_functionals(a: &GeoSet, b: &GeoSet, probe: Option<&GeoSet>) -> Result<String> {
    let mut out = String::new();
    let e_ab = excess_default(a, b)?;
    let e_ba = excess_default(b, a)?;
    out.push_str(&format!("gap          {}\n", gap(a, b)?));
    out.push_str(&format!(
        "excess(A,B)  {}  (error bound {})\n",
        e_ab.value, e_ab.error_bound
    ));
    out.push_str(&format!(
        "excess(B,A)  {}  (error bound {})\n",
        e_ba.value, e_ba.error_bound
    ));
    let step = if a.has_segments() || b.has_segments() {
        (a.max_segment_length().max(b.max_segment_length()) * 1e-3).max(f64::MIN_POSITIVE)
    } else {
        1.0
    };
    out.push_str(&format!("hausdorff    {}\n", hausdorff(a, b, step)?));
    if let Some(s) = probe {
        out.push_str(&format!("uniform_gap  {}\n", uniform_gap(a, b, s)?));
    }
    Ok(out)
}

/// Runs all four stability checkers for a bornology and writes the suite.
pub fn run_stability(
    bornology: &Bornology,
    space: &Space,
    budget: ProbeBudget,
    seed: u64,
    out: &Path,
) -> Result<StabilitySuite> {
    let probes = probe_family(bornology, space, budget, seed)?;
    let eps_grid: Vec<f64> = vec![0.5, 1.0, 2.0];
    let anchor0 = GeoSet::cloud(space.clone(), vec![vec![0.0; space.dimension().unwrap_or(1)]])?;
    let radius_fns = vec![
        RadiusFunction::constant(1.0)?,
        RadiusFunction::affine_dist(anchor0, 0.5, 1.0)?,
        RadiusFunction::affine_coord(1.min(space.dimension().unwrap_or(1) - 1), 1.0, 1.0),
    ];
    let reports = vec![
        check_stable_under_enlargement(bornology, &probes, &eps_grid),
        check_stable_under_lipschitz_enlargement(bornology, &probes, &radius_fns),
        check_stable_under_constant_selection(bornology, &probes, &eps_grid, &[], seed),
        check_stable_under_lip_selection(bornology, &probes, &radius_fns, &[], seed),
    ];
    let suite = StabilitySuite {
        bornology: bornology.describe(),
        seed,
        reports,
    };
    write_stability_suite(&suite, out)?;
    Ok(suite)
}

/// Writes fixture geosets plus a scenario config referencing them.
pub fn run_fixture_export(name: &str, n_max: usize, extent: f64, out_dir: &Path) -> Result<PathBuf> {
    let fx = build_fixture(name, n_max, extent)?;
    std::fs::create_dir_all(out_dir).map_err(|source| Error::Io {
        path: out_dir.display().to_string(),
        source,
    })?;
    fx.limit.write_file(&out_dir.join("limit.geoset"))?;
    let mut member_files = Vec::new();
    for n in 1..=fx.seq.horizon() {
        let fname = format!("member_{n:03}.geoset");
        fx.seq.member(n).write_file(&out_dir.join(&fname))?;
        member_files.push(fname);
    }
    let bornology_line = match &fx.bornology {
        Bornology::AnchorBase { anchor } => {
            anchor.write_file(&out_dir.join("s0.geoset"))?;
            "bornology = \"anchor(s0.geoset)\"".to_string()
        }
        Bornology::StripBase { axis } => format!("bornology = \"strip({axis})\""),
        other => format!("bornology = \"{}\"", other.describe()),
    };
    let members_list = member_files
        .iter()
        .map(|f| format!("\"{f}\""))
        .collect::<Vec<_>>()
        .join(", ");
    let scenario_text = format!(
        "name = \"{name}_export\"\n\
         seed = 0\n\
         eps_grid = [1.0, 0.5, 0.1]\n\
         {bornology_line}\n\
         limit = \"limit.geoset\"\n\
         members = [{members_list}]\n\
         probe_count = 6\n\
         probe_extent = {probe_extent}\n\
         probe_density = 1.0\n\
         out_report = \"report.json\"\n\
         out_table = \"cells.csv\"\n",
        probe_extent = (extent / 10.0).max(10.0),
    );
    let scenario_path = out_dir.join("scenario.toml");
    crate::report::write_atomic(&scenario_path, &scenario_text)?;
    Ok(scenario_path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_parsing() {
        let base = Path::new(".");
        assert_eq!(parse_bornology("finite", base).unwrap(), Bornology::Finite);
        assert_eq!(parse_bornology("bounded", base).unwrap(), Bornology::Bounded);
        assert_eq!(parse_bornology("all", base).unwrap(), Bornology::All);
        assert_eq!(
            parse_bornology("strip(0)", base).unwrap(),
            Bornology::StripBase { axis: 0 }
        );
        match parse_bornology("custom(ball 0 0 5; box 0 0 1 1)", base).unwrap() {
            Bornology::CustomBase { regions } => assert_eq!(regions.len(), 2),
            _ => panic!("expected custom"),
        }
        assert!(parse_bornology("nonsense", base).is_err());
    }

    #[test]
    fn scenario_rejects_unknown_keys() {
        let text = "name = \"x\"\nseed = 1\neps_grid = [1.0]\nfixture = \"strip_lines\"\n\
                    n_max = 4\nextent = 20.0\nprobe_count = 2\nprobe_extent = 20.0\n\
                    probe_density = 1.0\nout_report = \"r.json\"\nout_table = \"c.csv\"\n\
                    something_else = 5\n";
        let r: std::result::Result<Scenario, _> = toml::from_str(text);
        assert!(r.is_err());
    }

    #[test]
    fn scenario_rejects_nonmonotone_grid() {
        let text = "name = \"x\"\nseed = 1\neps_grid = [0.5, 1.0]\nfixture = \"strip_lines\"\n\
                    n_max = 4\nextent = 20.0\nprobe_count = 2\nprobe_extent = 20.0\n\
                    probe_density = 1.0\nout_report = \"r.json\"\nout_table = \"c.csv\"\n";
        let sc: Scenario = toml::from_str(text).unwrap();
        assert!(sc.validate().is_err());
    }
}
