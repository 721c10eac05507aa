//! Resolving a fusion-system family from flags or a JSON description.
//!
//! A family file is one of
//!
//! ```json
//! {"preset": "G2"}
//! {"family": "A", "ell": 5, "lattice": "coweight"}
//! {"ell": 3, "t": 0, "x1": "C2", "e": 2, "action": {"rank": 2, "generators": [...], "u": [0, 1]}}
//! ```
//!
//! The last form is a variant-B family; `x1` uses the group-spec grammar.

use std::path::Path;

use ltoral::families::{family_a_spec_on, family_b_custom, family_b_preset, ActionSpec, FusionFamilySpec, Lattice};
use serde::Deserialize;

use crate::args::{FamilyArgs, FamilyName, LatticeArg};
use crate::error::{CliError, Result};
use crate::grammar::parse_group_spec;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum FamilyFile {
    Preset {
        preset: String,
    },
    A {
        family: String,
        ell: u64,
        #[serde(default)]
        lattice: Option<Lattice>,
        #[serde(default)]
        rank: Option<usize>,
    },
    B {
        ell: u64,
        #[serde(default = "minus_one")]
        t: i32,
        #[serde(default = "trivial")]
        x1: String,
        #[serde(default = "one")]
        e: u64,
        action: ActionSpec,
    },
}

fn minus_one() -> i32 {
    -1
}

fn trivial() -> String {
    "1".into()
}

fn one() -> u64 {
    1
}

impl FamilyFile {
    pub fn resolve(&self, base: &Path) -> Result<FusionFamilySpec> {
        match self {
            FamilyFile::Preset { preset } => Ok(family_b_preset(preset)?),
            FamilyFile::A { family, ell, lattice, rank } => {
                if family != "A" {
                    return Err(CliError::Config(format!("unknown family `{family}`")));
                }
                Ok(family_a_spec_on(*ell, *rank, lattice.unwrap_or_default())?)
            }
            FamilyFile::B { ell, t, x1, e, action } => {
                let x1 = parse_group_spec(x1)?.to_spec(base)?;
                Ok(family_b_custom(*ell, *t, x1, *e, action.clone())?)
            }
        }
    }
}

pub fn read_family_file(path: &Path) -> Result<FusionFamilySpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let doc: FamilyFile =
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    doc.resolve(path.parent().unwrap_or(Path::new(".")))
}

pub fn resolve_family(a: &FamilyArgs) -> Result<FusionFamilySpec> {
    if let Some(path) = &a.config {
        return read_family_file(path);
    }
    if let Some(p) = &a.preset {
        return Ok(family_b_preset(p)?);
    }
    match a.family {
        Some(FamilyName::A) => {
            let ell = a.ell.ok_or_else(|| CliError::Args("--family A needs --ell".into()))?;
            let lattice = match a.lattice {
                Some(LatticeArg::Coweight) => Lattice::Coweight,
                _ => Lattice::Root,
            };
            Ok(family_a_spec_on(ell, a.rank, lattice)?)
        }
        None => Err(CliError::Args("one of --family, --preset or --config is required".into())),
    }
}

/// `a..b` or a single level.
pub fn parse_levels(s: &str) -> Result<std::ops::RangeInclusive<u32>> {
    let bad = || CliError::Args(format!("bad level range `{s}`"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if a > b {
        return Err(CliError::Config(format!("empty level range `{s}`")));
    }
    Ok(a..=b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_ranges() {
        assert_eq!(parse_levels("1..4").unwrap(), 1..=4);
        assert_eq!(parse_levels("2").unwrap(), 2..=2);
        assert!(parse_levels("3..1").is_err());
        assert!(parse_levels("a..b").is_err());
    }

    #[test]
    fn family_files() {
        let f: FamilyFile = serde_json::from_str(r#"{"preset": "G2"}"#).unwrap();
        assert_eq!(f.resolve(Path::new(".")).unwrap().name(), "G2");
        let f: FamilyFile = serde_json::from_str(r#"{"family": "A", "ell": 5}"#).unwrap();
        assert_eq!(f.resolve(Path::new(".")).unwrap().name(), "A(l=5)");
        let f: FamilyFile = serde_json::from_str(
            r#"{"ell": 3, "t": 0, "x1": "C2", "e": 2,
                "action": {"rank": 2, "generators": [[[-1, 3], [0, 1]], [[1, 0], [1, -1]]], "u": [0, 1, 0, 1]}}"#,
        )
        .unwrap();
        let spec = f.resolve(Path::new(".")).unwrap();
        assert_eq!(spec.action, family_b_preset("G2").unwrap().action);
    }
}
