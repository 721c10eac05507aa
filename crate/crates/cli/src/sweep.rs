//! Parameter grids from a JSON config, executed in parallel.
//!
//! ```json
//! {"command": "chars", "ell": [3, 5], "x1": ["1", "C2", "C4", "S3"]}
//! {"command": "am", "families": ["A"], "ell": [3], "levels": "1..4"}
//! {"command": "thev", "groups": ["S5", "A5"], "ell": [5]}
//! ```
//!
//! Commands: `chars` (grid `ell x x1 x e x case`; `e` defaults to the
//! divisors of `l - 1`, `case` to both), `thev` (`groups x ell`), `chartab`
//! (`groups`), and `awc`, `am`, `connectivity`, `mu` over `families x ell`
//! plus `presets` (the last three also over each level).

use std::path::{Path, PathBuf};

use ltoral::families::{family_a_spec, family_b_preset, FusionFamilySpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::args::{Case, Command, FamilyArgs, Format, Lemma};
use crate::commands::{chartab, execute};
use crate::error::{CliError, Result};
use crate::family::parse_levels;
use crate::Record;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub command: String,
    #[serde(default)]
    pub ell: Vec<u64>,
    #[serde(default)]
    pub x1: Vec<String>,
    #[serde(default)]
    pub e: Vec<u64>,
    #[serde(default)]
    pub case: Vec<Case>,
    #[serde(default)]
    pub groups: Vec<String>,
    #[serde(default)]
    pub families: Vec<String>,
    #[serde(default)]
    pub presets: Vec<String>,
    #[serde(default)]
    pub levels: Option<String>,
    #[serde(default)]
    pub budget: Option<usize>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
    /// The cell's hypotheses do not hold (e.g. `X1` has no quotient `C_e`,
    /// or is not an `l'`-group).
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellRecord {
    pub cell: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Box<ltoral::report::VerificationReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<crate::error::ErrorRecord>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub command: String,
    pub cells: usize,
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn ok(&self) -> bool {
        self.fail == 0 && self.error == 0
    }
}

#[derive(Debug, Clone)]
enum Cell {
    Chars { ell: u64, x1: String, e: u64, case: Case },
    Thev { group: String, ell: u64 },
    Chartab { group: String },
    Family { family: String, ell: Option<u64>, level: Option<u32> },
}

impl Cell {
    fn describe(&self) -> Value {
        match self {
            Cell::Chars { ell, x1, e, case } => {
                json!({"ell": ell, "x1": x1, "e": e, "case": format!("{case:?}").to_lowercase()})
            }
            Cell::Thev { group, ell } => json!({"group": group, "ell": ell}),
            Cell::Chartab { group } => json!({"group": group}),
            Cell::Family { family, ell, level } => {
                let mut v = json!({"family": family});
                if let Some(l) = ell {
                    v["ell"] = json!(l);
                }
                if let Some(n) = level {
                    v["level"] = json!(n);
                }
                v
            }
        }
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn need<T>(v: &[T], what: &str) -> Result<()> {
    if v.is_empty() {
        Err(CliError::Config(format!("empty grid: `{what}`")))
    } else {
        Ok(())
    }
}

pub fn validate(cfg: &SweepConfig) -> Result<()> {
    if cfg.budget == Some(0) {
        return Err(CliError::Config("budget must be positive".into()));
    }
    match cfg.command.as_str() {
        "chars" => {
            need(&cfg.ell, "ell")?;
            need(&cfg.x1, "x1")
        }
        "thev" => {
            need(&cfg.groups, "groups")?;
            need(&cfg.ell, "ell")
        }
        "chartab" => need(&cfg.groups, "groups"),
        "awc" | "am" | "connectivity" | "mu" => {
            if cfg.presets.is_empty() {
                need(&cfg.families, "families or presets")?;
            }
            if !cfg.families.is_empty() {
                need(&cfg.ell, "ell")?;
            }
            if let Some(l) = &cfg.levels {
                parse_levels(l)?;
            }
            Ok(())
        }
        c => Err(CliError::Config(format!("unknown sweep command `{c}`"))),
    }
}

fn cells(cfg: &SweepConfig) -> Result<Vec<Cell>> {
    validate(cfg)?;
    let mut out = Vec::new();
    match cfg.command.as_str() {
        "chars" => {
            let cases = if cfg.case.is_empty() { vec![Case::One, Case::Two] } else { cfg.case.clone() };
            for &ell in &cfg.ell {
                let es = if cfg.e.is_empty() { divisors(ell.saturating_sub(1)) } else { cfg.e.clone() };
                for x1 in &cfg.x1 {
                    for &e in &es {
                        for &case in &cases {
                            out.push(Cell::Chars { ell, x1: x1.clone(), e, case });
                        }
                    }
                }
            }
        }
        "thev" => {
            for g in &cfg.groups {
                for &ell in &cfg.ell {
                    out.push(Cell::Thev { group: g.clone(), ell });
                }
            }
        }
        "chartab" => out.extend(cfg.groups.iter().map(|g| Cell::Chartab { group: g.clone() })),
        cmd => {
            let levels: Vec<Option<u32>> = match (cmd, &cfg.levels) {
                ("awc", _) => vec![None],
                (_, Some(l)) => parse_levels(l)?.map(Some).collect(),
                (_, None) => vec![Some(1)],
            };
            let mut fams: Vec<(String, Option<u64>)> = Vec::new();
            for f in &cfg.families {
                fams.extend(cfg.ell.iter().map(|&l| (f.clone(), Some(l))));
            }
            fams.extend(cfg.presets.iter().map(|p| (p.clone(), None)));
            for (family, ell) in fams {
                for &level in &levels {
                    out.push(Cell::Family { family: family.clone(), ell, level });
                }
            }
        }
    }
    Ok(out)
}

fn family_spec(family: &str, ell: Option<u64>) -> Result<FusionFamilySpec> {
    match (family, ell) {
        ("A", Some(l)) => Ok(family_a_spec(l)?),
        (p, None) => Ok(family_b_preset(p)?),
        (f, _) => Err(CliError::Config(format!("unknown family `{f}`"))),
    }
}

fn run_cell(cmd: &str, cell: &Cell) -> Result<Vec<ltoral::report::VerificationReport>> {
    let fam = |family: &str, ell: Option<u64>| FamilyArgs {
        family: None,
        ell,
        preset: None,
        config: None,
        lattice: None,
        rank: None,
    }
    .clone_with(family);
    let command = match cell {
        Cell::Chars { ell, x1, e, case } => {
            Command::Lemma(Lemma::Chars { case: *case, x1: x1.clone(), e: *e, ell: *ell })
        }
        Cell::Thev { group, ell } => Command::Lemma(Lemma::Thev { spec: group.clone(), ell: *ell }),
        Cell::Chartab { group } => return Ok(vec![chartab(group, None)?]),
        Cell::Family { family, ell, level } => {
            // resolve early so unknown names surface as cell errors
            family_spec(family, *ell)?;
            let levels = level.map(|n| n.to_string()).unwrap_or_default();
            let family = fam(family, *ell);
            match cmd {
                "awc" => Command::Awc(family),
                "am" => Command::Am { family, levels },
                "connectivity" => Command::Connectivity { family, levels },
                _ => Command::Mu { family, levels },
            }
        }
    };
    execute(&command, false)?
        .into_iter()
        .map(|r| match r {
            Record::Report(r) => Ok(*r),
            _ => unreachable!("single commands emit reports"),
        })
        .collect()
}

impl FamilyArgs {
    fn clone_with(mut self, family: &str) -> Self {
        if family == "A" {
            self.family = Some(crate::args::FamilyName::A);
        } else {
            self.preset = Some(family.to_string());
        }
        self
    }
}

pub fn load_config(path: &Path) -> Result<SweepConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

pub fn run_sweep(path: &Path, timing: bool) -> Result<Vec<Record>> {
    let cfg = load_config(path)?;
    sweep(&cfg, timing)
}

pub fn sweep(cfg: &SweepConfig, timing: bool) -> Result<Vec<Record>> {
    if let Some(b) = cfg.budget {
        crate::set_budget(b)?;
    }
    let grid = cells(cfg)?;
    let results: Vec<(Cell, Result<Vec<ltoral::report::VerificationReport>>, u64)> = grid
        .into_par_iter()
        .map(|c| {
            let t0 = std::time::Instant::now();
            let r = run_cell(&cfg.command, &c);
            (c, r, t0.elapsed().as_millis() as u64)
        })
        .collect();
    let mut summary = Summary { command: cfg.command.clone(), ..Summary::default() };
    let mut out = Vec::new();
    for (cell, res, ms) in results {
        let describe = cell.describe();
        match res {
            Ok(reports) => {
                for mut r in reports {
                    if timing {
                        r.duration_ms = Some(ms);
                    }
                    let status = if r.pass { Status::Pass } else { Status::Fail };
                    out.push(CellRecord { cell: describe.clone(), status, report: Some(Box::new(r)), error: None });
                }
            }
            Err(e) => {
                let status = match e {
                    CliError::Core(ltoral::Error::NoSuchQuotient { .. } | ltoral::Error::HypothesisFailed(_)) => Status::Skipped,
                    _ => Status::Error,
                };
                out.push(CellRecord { cell: describe, status, report: None, error: Some(e.record()) });
            }
        }
    }
    for c in &out {
        summary.cells += 1;
        match c.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Error => summary.error += 1,
            Status::Skipped => summary.skipped += 1,
        }
    }
    let mut records: Vec<Record> = out.into_iter().map(|c| Record::Cell(Box::new(c))).collect();
    records.push(Record::Summary { summary });
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(v: Value) -> SweepConfig {
        serde_json::from_value(v).unwrap()
    }

    #[test]
    fn empty_grid_rejected() {
        assert!(matches!(sweep(&cfg(json!({"command": "chars", "ell": [], "x1": ["1"]})), false), Err(CliError::Config(_))));
        assert!(matches!(sweep(&cfg(json!({"command": "am"})), false), Err(CliError::Config(_))));
        assert!(matches!(sweep(&cfg(json!({"command": "nope", "ell": [3]})), false), Err(CliError::Config(_))));
    }

    #[test]
    fn chars_grid_records_in_order() {
        let recs = sweep(&cfg(json!({"command": "chars", "ell": [3], "x1": ["1", "C2"]})), false).unwrap();
        // e in {1, 2}, two cases: X1 = 1 has no C2 quotient
        let Record::Summary { summary } = recs.last().unwrap() else { panic!() };
        assert_eq!((summary.cells, summary.pass, summary.skipped), (8, 6, 2));
        let Record::Cell(first) = &recs[0] else { panic!() };
        assert_eq!(first.cell, json!({"ell": 3, "x1": "1", "e": 1, "case": "one"}));
    }

    #[test]
    fn per_cell_errors_do_not_abort() {
        let recs = sweep(&cfg(json!({"command": "awc", "presets": ["G2", "E8"]})), false).unwrap();
        let Record::Summary { summary } = recs.last().unwrap() else { panic!() };
        assert_eq!((summary.pass, summary.error), (1, 1));
    }
}
