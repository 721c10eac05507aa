use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use ltoral::character::{character_table, little_groups_count, verify_thev};
use ltoral::families::{check_or1_hypotheses, verify_awc, verify_chars, CharsCase, FusionFamilySpec};
use ltoral::group::{build_group, conjugacy_classes, is_normal, normal_subgroups, FiniteGroup, GroupSpec, Subgroup};
use ltoral::report::{Chain, VerificationReport};
use ltoral::tower::{connectivity_check, verify_am};

use crate::args::{Case, Command, FamilyArgs, Lemma};
use crate::error::{CliError, Result};
use crate::family::{parse_levels, resolve_family};
use crate::grammar::parse_group_spec;
use crate::sweep::run_sweep;
use crate::Record;

/// Tables of groups up to this order are also checked against the
/// permutation-character oracle.
pub const ORACLE_LIMIT: usize = 200;

pub fn group_from_text(text: &str) -> Result<(String, GroupSpec)> {
    let e = parse_group_spec(text)?;
    Ok((e.to_string(), e.to_spec(Path::new("."))?))
}

fn timed<F: FnOnce() -> Result<VerificationReport>>(timing: bool, f: F) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let mut r = f()?;
    if timing {
        r.duration_ms = Some(t0.elapsed().as_millis() as u64);
    }
    Ok(r)
}

pub fn execute(cmd: &Command, timing: bool) -> Result<Vec<Record>> {
    let one = |r: Result<VerificationReport>| r.map(|r| vec![Record::Report(Box::new(r))]);
    match cmd {
        Command::Chartab { spec, ell } => one(timed(timing, || chartab(spec, *ell))),
        Command::Lemma(l) => one(timed(timing, || lemma(l))),
        Command::Awc(f) => one(timed(timing, || Ok(verify_awc(&resolve_family(f)?)?))),
        Command::Am { family, levels } => {
            let spec = resolve_family(family)?;
            let levels = parse_levels(levels)?;
            one(timed(timing, || Ok(verify_am(&spec, levels)?)))
        }
        Command::Connectivity { family, levels } => per_level(family, levels, timing, |s, n| Ok(connectivity_check(s, n)?)),
        Command::Mu { family, levels } => per_level(family, levels, timing, |s, n| Ok(check_or1_hypotheses(s, n)?.report)),
        Command::Sweep { config } => run_sweep(config, timing),
    }
}

fn per_level<F>(family: &FamilyArgs, levels: &str, timing: bool, f: F) -> Result<Vec<Record>>
where
    F: Fn(&FusionFamilySpec, u32) -> Result<VerificationReport>,
{
    let spec = resolve_family(family)?;
    parse_levels(levels)?
        .map(|n| timed(timing, || f(&spec, n)).map(|r| Record::Report(Box::new(r))))
        .collect()
}

pub fn chartab(text: &str, ell: Option<u64>) -> Result<VerificationReport> {
    let (name, spec) = group_from_text(text)?;
    let g = build_group(&spec)?;
    let t = character_table(&g)?;
    let mut r = VerificationReport::new("chartab").input("group", &name);
    let classes = conjugacy_classes(&g).len() as i64;
    r.set("order", g.order() as i64);
    r.set("classes", classes);
    r.set("characters", t.len() as i64);
    r.set("basis_order", t.basis_order as i64);
    let sq: u64 = t.degrees.iter().map(|d| d * d).sum();
    r.push_chain(Chain::through("class count", &[("|Irr(G)|", t.len() as i64), ("k(G)", classes)]));
    r.push_chain(Chain::through("degree squares", &[("sum chi(1)^2", sq as i64), ("|G|", g.order() as i64)]));
    // character_table already rejects tables failing the exact orthogonality checks
    r.check("orthogonality", true);
    if g.order() <= ORACLE_LIMIT {
        let oracle = t.permutation_oracle(&g);
        if let Err(e) = &oracle {
            r.note(e.clone());
        }
        r.check("permutation oracle", oracle.is_ok());
    }
    if let Some(ell) = ell {
        let p = t.defect_profile(ell);
        r = r.input("ell", ell);
        r.set("group_valuation", p.group_valuation as i64);
        r.set("defect_zero", p.defect_zero() as i64);
        r.set("ell_prime_degree", p.ell_prime_degree() as i64);
    }
    r.data = Some(t.to_json());
    Ok(r)
}

fn lemma(l: &Lemma) -> Result<VerificationReport> {
    match l {
        Lemma::Thev { spec, ell } => {
            let (_, s) = group_from_text(spec)?;
            Ok(verify_thev(&build_group(&s)?, *ell)?)
        }
        Lemma::Little { spec, normal } => little(spec, normal),
        Lemma::Chars { case, x1, e, ell } => {
            let (_, x1) = group_from_text(x1)?;
            let case = match case {
                Case::One => CharsCase::One,
                Case::Two => CharsCase::Two,
            };
            Ok(verify_chars(case, &x1, *e, *ell)?)
        }
    }
}

/// Element-order multiset, used to match an abstract `N` against the normal
/// subgroups of `G` when the two do not share a representation.
fn order_profile(g: &FiniteGroup, members: impl Iterator<Item = usize>) -> Vec<u64> {
    let mut v: Vec<u64> = members.map(|x| g.element_order(x)).collect();
    v.sort_unstable();
    v
}

fn find_normal(g: &FiniteGroup, n: &FiniteGroup) -> Result<(Subgroup, bool)> {
    if let Ok(idx) = g.embed(n) {
        let sub = g.subgroup_from_members(idx);
        if sub.is_closed_in(g) && is_normal(g, &sub) {
            return Ok((sub, false));
        }
    }
    let want = order_profile(n, 0..n.order());
    let abelian = n.is_abelian();
    let matches: Vec<Subgroup> = normal_subgroups(g)
        .into_iter()
        .filter(|s| s.order() == n.order())
        .filter(|s| order_profile(g, s.members().iter().copied()) == want)
        .filter(|s| g.subgroup_group(s, "N").map(|h| h.is_abelian() == abelian).unwrap_or(false))
        .collect();
    let ambiguous = matches.len() > 1;
    matches.into_iter().next().map(|s| (s, ambiguous)).ok_or(CliError::Core(ltoral::Error::NotNormal))
}

fn little(spec: &str, normal: &str) -> Result<VerificationReport> {
    let (gname, gs) = group_from_text(spec)?;
    let (nname, ns) = group_from_text(normal)?;
    let g = Arc::new(build_group(&gs)?);
    let n = build_group(&ns)?;
    let (sub, ambiguous) = find_normal(&g, &n)?;
    let mut r = little_groups_count(&g, &sub)?.input("group", gname).input("normal", nname);
    if ambiguous {
        r.note("several normal subgroups match N; the first in index order was used");
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chartab_c3() {
        let r = chartab("C3", None).unwrap();
        assert!(r.pass);
        assert_eq!(r.get("characters"), Some(3));
        assert_eq!(r.get("classes"), Some(3));
    }

    #[test]
    fn little_by_abstract_normal() {
        let r = little("S3", "C3").unwrap();
        assert!(r.pass);
        assert_eq!(r.get("sum_irr_inertia_quotients"), Some(3));
        let r = little("Frob(5,4)", "C5").unwrap();
        assert_eq!(r.get("sum_irr_inertia_quotients"), Some(5));
        assert!(little("S3", "C2").is_err());
    }
}
