//! Both sides of the Alperin-McKay count at a level, and the sweep over
//! levels.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{build_s, stabilization_level, torus_level, TorusLevel};
use crate::character::{character_table, dual_orbit_pairs, irr0_count, DualAction};
use crate::families::FusionFamilySpec;
use crate::group::{quotient, FiniteGroup, Subgroup};
use crate::lattice::ModMatrix;
use crate::report::{Chain, VerificationReport};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelCounts {
    pub level: u32,
    /// `sum over psi in Irr(S^ab)/OutS of |Irr(C_OutS(psi))|`.
    pub m: u64,
    /// `sum over psi in Irr(T/[S,S])/N_W(U) of |Irr(C_N_W(U)(psi))|`.
    pub m_torus: u64,
    /// `sum over s in Z(S)/N_W(U) of |Irr_0(C_W(s))|`.
    pub r: u64,
    /// `sum over s in Z(S)/N_W(U) of |Irr(C_N_W(U)(s))|`.
    pub r_normalizer: u64,
    pub center_order: u64,
    pub abelianization: Vec<u64>,
    pub dual_pairing_preserved: bool,
    pub materialized_agrees: Option<bool>,
}

struct Normalizer {
    group: Arc<FiniteGroup>,
    u: Subgroup,
}

fn normalizer(t: &TorusLevel) -> Result<Normalizer> {
    let group = Arc::new(t.weyl.normalizer_group()?);
    let u = group.require(t.weyl.matrix(t.weyl.u))?;
    let u = group.closure(&[u]);
    Ok(Normalizer { group, u })
}

fn mat_of(t: &TorusLevel, g: &FiniteGroup, i: usize) -> ModMatrix {
    ModMatrix::from_flat(g.elem(i), t.rank, t.modulus)
}

/// `r` with `w u w^-1 = u^r` on `T_n`.
fn conj_exponent(t: &TorusLevel, w: &ModMatrix, w_inv: &ModMatrix) -> Result<u64> {
    let c = w.mul(&t.u).mul(w_inv);
    (1..t.ell)
        .find(|&r| t.u.pow(r) == c)
        .ok_or_else(|| Error::HypothesisFailed("element does not normalize <u>".into()))
}

/// `OutS = N_W(U)/U` acting on `T/(u-1)T + S/T`, through the induced map on
/// the cokernel and `x -> x^r`.
pub fn m_count(spec: &FusionFamilySpec, n: u32) -> Result<u64> {
    let t = torus_level(&spec.action, n)?;
    Ok(m_side(&t)?.0)
}

fn m_side(t: &TorusLevel) -> Result<(u64, u64, bool)> {
    let nw = normalizer(t)?;
    let out_s = Arc::new(quotient(&nw.group, &nw.u, "OutS")?);
    let reps = match out_s.law() {
        crate::group::Law::Quotient(d) => d.reps.clone(),
        _ => unreachable!(),
    };
    let coker = t.u_minus_1.cokernel_invariants();
    let k = coker.len();
    let mut moduli = coker.clone();
    moduli.push(t.ell);
    let mut mats = Vec::new();
    for &g in out_s.generators() {
        let code = out_s.elem(g)[0] as usize;
        let w_idx = reps[code] as usize;
        let w = mat_of(t, &nw.group, w_idx);
        let w_inv = mat_of(t, &nw.group, nw.group.inv(w_idx));
        let r = conj_exponent(t, &w, &w_inv)?;
        let induced = t.u_minus_1.induced_on_cokernel(&w);
        let mut m = vec![vec![0i64; k + 1]; k + 1];
        for i in 0..k {
            m[i][..k].copy_from_slice(&induced[i]);
        }
        m[k][k] = r as i64;
        mats.push(m);
    }
    let full = dual_orbit_pairs(&DualAction { moduli, gamma: Arc::clone(&out_s), generator_matrices: mats })?;

    let mats_t: Vec<Vec<Vec<i64>>> = nw
        .group
        .generators()
        .iter()
        .map(|&g| t.u_minus_1.induced_on_cokernel(&mat_of(t, &nw.group, g)))
        .collect();
    let torus = dual_orbit_pairs(&DualAction { moduli: coker, gamma: Arc::clone(&nw.group), generator_matrices: mats_t })?;
    Ok((full.total, torus.total, full.pairing_preserved && torus.pairing_preserved))
}

/// `N_W(U)`-orbits on `Z(S_n)`, each weighted by `|Irr_0(C_W(s))|`.
pub fn r_count(spec: &FusionFamilySpec, n: u32) -> Result<u64> {
    let t = torus_level(&spec.action, n)?;
    Ok(r_side(&t)?.0)
}

fn r_side(t: &TorusLevel) -> Result<(u64, u64)> {
    let w = &t.weyl.group;
    let w_mats: Vec<ModMatrix> = (0..w.order()).map(|i| t.w_matrix(i)).collect();
    let n_members = t.weyl.normalizer.members();
    let center = t.center();
    let pos = |v: &Vec<i64>| center.binary_search(v).expect("center is N_W(U)-stable");
    let mut seen = vec![false; center.len()];
    let mut r = 0u64;
    let mut r_n = 0u64;
    for (i, s) in center.iter().enumerate() {
        if seen[i] {
            continue;
        }
        for &g in n_members {
            seen[pos(&w_mats[g].apply(s))] = true;
        }
        let stab: Vec<usize> = (0..w.order()).filter(|&g| w_mats[g].apply(s) == *s).collect();
        let cw = w.subgroup_group(&w.subgroup_from_members(stab.clone()), "C_W(s)")?;
        r += irr0_count(&character_table(&cw)?, t.ell)? as u64;
        let cn_members: Vec<usize> = stab.into_iter().filter(|g| t.weyl.normalizer.contains(*g)).collect();
        let cn = w.subgroup_group(&w.subgroup_from_members(cn_members), "C_N(s)")?;
        r_n += character_table(&cn)?.len() as u64;
    }
    Ok((r, r_n))
}

fn level_counts(spec: &FusionFamilySpec, n: u32) -> Result<LevelCounts> {
    let lv = build_s(spec, n)?;
    let t = &lv.torus;
    let (m, m_torus, preserved) = m_side(t)?;
    let (r, r_normalizer) = r_side(t)?;
    Ok(LevelCounts {
        level: n,
        m,
        m_torus,
        r,
        r_normalizer,
        center_order: t.u_minus_1.kernel_order(),
        abelianization: t.abelianization_invariants(),
        dual_pairing_preserved: preserved,
        materialized_agrees: lv.cross_check.as_ref().map(|c| c.agrees),
    })
}

/// Per-level `(m, r)` with equality chains, levels computed in parallel.
pub fn verify_am(spec: &FusionFamilySpec, levels: std::ops::RangeInclusive<u32>) -> Result<VerificationReport> {
    if levels.is_empty() {
        return Err(Error::MalformedSpec("empty level range".into()));
    }
    let ns: Vec<u32> = levels.clone().collect();
    let per: Vec<LevelCounts> = ns.par_iter().map(|&n| level_counts(spec, n)).collect::<Result<_>>()?;
    let mut rep = VerificationReport::new("am")
        .input("family", spec.name())
        .input("ell", spec.ell)
        .input("levels", format!("{}..{}", levels.start(), levels.end()));
    for c in &per {
        let n = c.level;
        rep.set(&format!("n{n}.m_count"), c.m as i64);
        rep.set(&format!("n{n}.r_count"), c.r as i64);
        rep.set(&format!("n{n}.center_order"), c.center_order as i64);
        rep.push_chain(Chain::through(
            format!("level {n}"),
            &[
                ("|Irr(S^ab : OutS)|", c.m as i64),
                ("pairs over Irr(T/[S,S])", c.m_torus as i64),
                ("sum |Irr(C_N(s))|", c.r_normalizer as i64),
                ("sum |Irr_0(C_W(s))|", c.r as i64),
            ],
        ));
        rep.check(&format!("n{n}.dual_pairing_preserved"), c.dual_pairing_preserved);
        if let Some(ok) = c.materialized_agrees {
            rep.check(&format!("n{n}.materialized_agrees"), ok);
        }
    }
    let stab: Vec<(u32, u64, Vec<u64>)> =
        per.iter().map(|c| (c.level, c.center_order, c.abelianization.clone())).collect();
    if let Some(s) = stabilization_level(&stab) {
        rep.set("stabilization_level", s as i64);
    }
    rep.note("only the cardinalities of the two sides are compared; equivariance is not checked");
    rep.data = Some(serde_json::to_value(&per).expect("serializable"));
    Ok(rep)
}
