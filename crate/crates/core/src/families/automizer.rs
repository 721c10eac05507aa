//! Automizer models of `S`, `N_W(U)` and the centric radical `Q`, the
//! fiber-product character counts, and the weight count.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FusionFamilySpec, Variant, FAMILY_A_RANK_NOTE};
use crate::arith::is_prime;
use crate::character::{character_table, verify_thev, z_count};
use crate::group::{
    build_group, canonical_cyclic_quotient, conjugacy_classes, cyclic_group, fiber_product, is_normal,
    o_ellprime_residual, quotient, sylow, FiberProduct, FiniteGroup, GroupSpec,
};
use crate::report::{Chain, VerificationReport};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharsCase {
    /// `X2 = GL2(l)`, counting defect-zero characters.
    One,
    /// `X2 = N_GL2(l)(U)`, counting all characters.
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThetaKind {
    /// `SL2(l)` on `Q~ = C_l x C_l`.
    Natural,
    /// `SL2(l)` on `Q~ / Z(Q~)` for `Q~ = l^(1+2)_+`, fixing the center.
    Extraspecial,
}

/// The `SL2(l)` part of `Aut_F(Q)` as generator matrices on the basis
/// `(a, b)` of `Q~` (modulo its center in the extraspecial case).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaAction {
    pub ell: u64,
    pub kind: ThetaKind,
    pub sl2_generators: Vec<[i64; 4]>,
}

#[derive(Debug, Clone)]
pub struct AutomizerData {
    pub out_s: Arc<FiniteGroup>,
    pub nwu: Arc<FiniteGroup>,
    pub out_q: Arc<FiniteGroup>,
    pub out_s_description: String,
    pub theta: ThetaAction,
}

pub fn automizer_data(spec: &FusionFamilySpec) -> Result<AutomizerData> {
    let ell = spec.ell;
    let theta = ThetaAction {
        ell,
        kind: if spec.uses_h() { ThetaKind::Natural } else { ThetaKind::Extraspecial },
        sl2_generators: vec![[1, 1, 0, 1], [1, 0, 1, 1]],
    };
    match spec.variant {
        Variant::A => {
            let out_s = Arc::new(build_group(&GroupSpec::Cyclic(ell - 1))?);
            let nwu = Arc::new(build_group(&GroupSpec::Frobenius { ell, d: ell - 1 })?);
            let out_q = Arc::new(build_group(&GroupSpec::Sl2(ell))?);
            Ok(AutomizerData { out_s_description: out_s.name().to_string(), out_s, nwu, out_q, theta })
        }
        Variant::B => {
            let out_q = Arc::new(build_group(&GroupSpec::Fiber {
                left: Box::new(spec.x1.clone()),
                right: Box::new(GroupSpec::Gl2(ell)),
                e: spec.e,
            })?);
            let nwu = Arc::new(build_group(&GroupSpec::Fiber {
                left: Box::new(spec.x1.clone()),
                right: Box::new(GroupSpec::Ngl2u(ell)),
                e: spec.e,
            })?);
            let p = sylow(&nwu, ell);
            if !is_normal(&nwu, &p) {
                return Err(Error::HypothesisFailed("Sylow subgroup of the N_W(U) model is not normal".into()));
            }
            let desc = format!("{}/O_{ell}", nwu.name());
            let out_s = Arc::new(quotient(&nwu, &p, desc.clone())?);
            Ok(AutomizerData { out_s, nwu, out_q, out_s_description: desc, theta })
        }
    }
}

struct CharsFiber {
    fiber: FiberProduct,
    x1: Arc<FiniteGroup>,
    x2: Arc<FiniteGroup>,
}

fn chars_fiber(case: CharsCase, x1: &GroupSpec, e: u64, ell: u64) -> Result<CharsFiber> {
    if ell == 2 || !is_prime(ell) {
        return Err(Error::BadPrime(ell));
    }
    if e == 0 || !(ell - 1).is_multiple_of(e) {
        return Err(Error::HypothesisFailed(format!("e = {e} does not divide {}", ell - 1)));
    }
    let g1 = Arc::new(build_group(x1)?);
    if (g1.order() as u64).is_multiple_of(ell) {
        return Err(Error::HypothesisFailed(format!("X1 = {x1} is not an {ell}'-group")));
    }
    let x2_spec = match case {
        CharsCase::One => GroupSpec::Gl2(ell),
        CharsCase::Two => GroupSpec::Ngl2u(ell),
    };
    let g2 = Arc::new(build_group(&x2_spec)?);
    let c = Arc::new(cyclic_group(e));
    let phi1 = canonical_cyclic_quotient(&g1, &c)?;
    let phi2 = canonical_cyclic_quotient(&g2, &c)?;
    let fiber = fiber_product(&phi1, &phi2)?;
    Ok(CharsFiber { fiber, x1: g1, x2: g2 })
}

/// `{(a, b) in X1 x X2 : phi1(a) = phi2(b)}` with `O^{l'}` checked to be
/// `1 x SL2(l)` (case one) or `1 x U` (case two).
pub fn chars_group(case: CharsCase, x1: &GroupSpec, e: u64, ell: u64) -> Result<FiniteGroup> {
    let cf = chars_fiber(case, x1, e, ell)?;
    check_residual(case, &cf, ell)?;
    Ok(cf.fiber.group)
}

fn check_residual(case: CharsCase, cf: &CharsFiber, ell: u64) -> Result<()> {
    let h = &cf.fiber.group;
    let res = o_ellprime_residual(h, ell);
    let split = cf.x1.elem(cf.x1.identity()).len();
    let id1 = cf.x1.elem(cf.x1.identity());
    let p = ell as i64;
    let want = match case {
        CharsCase::One => ell * (ell * ell - 1),
        CharsCase::Two => ell,
    };
    let shape_ok = res.members().iter().all(|&m| {
        let c = h.elem(m);
        let (a, b) = c.split_at(split);
        let det = (b[0] * b[3] - b[1] * b[2]).rem_euclid(p);
        a == id1.as_slice()
            && det == 1
            && match case {
                CharsCase::One => true,
                CharsCase::Two => b[0] == 1 && b[2] == 0 && b[3] == 1,
            }
    });
    if res.order() as u64 != want || !shape_ok {
        return Err(Error::HypothesisFailed(format!(
            "O^{{{ell}'}} of the fiber product has order {} (expected {want})",
            res.order()
        )));
    }
    Ok(())
}

/// The two fiber-product character counts against `|Irr(X1)|(l-1)/e` and
/// `|Irr(X1)| l (l-1)/e`.
pub fn verify_chars(case: CharsCase, x1: &GroupSpec, e: u64, ell: u64) -> Result<VerificationReport> {
    let mut cf = chars_fiber(case, x1, e, ell)?;
    check_residual(case, &cf, ell)?;
    let cosets = cf.fiber.count_cosets(&cf.x1, &cf.x2)?;
    let h = &cf.fiber.group;
    let th = character_table(h)?;
    let irr_x1 = conjugacy_classes(&cf.x1).len() as i64;
    let mut r = VerificationReport::new("lemma chars")
        .input("case", case)
        .input("x1", x1.to_string())
        .input("e", e)
        .input("ell", ell);
    r.set("order_H", h.order() as i64);
    r.set("irr_X1", irr_x1);
    r.set("irr_H", th.len() as i64);
    r.set("z_H", z_count(&th, ell) as i64);
    r.set("index_by_cosets", cosets as i64);
    let (l, e_i) = (ell as i64, e as i64);
    match case {
        CharsCase::One => {
            r.push_chain(Chain::through(
                "fiber count",
                &[("z(kH)", z_count(&th, ell) as i64), ("|Irr(X1)|(l-1)/e", irr_x1 * (l - 1) / e_i)],
            ));
        }
        CharsCase::Two => {
            r.push_chain(Chain::through(
                "fiber count",
                &[("|Irr(H)|", th.len() as i64), ("|Irr(X1)|l(l-1)/e", irr_x1 * l * (l - 1) / e_i)],
            ));
        }
    }
    r.push_chain(Chain::through("fiber index", &[("cosets of H", cosets as i64), ("e", e_i)]));
    Ok(r)
}

/// `w(F)` from the centric radical automizers against `|Irr(W)|`.
pub fn verify_awc(spec: &FusionFamilySpec) -> Result<VerificationReport> {
    let ell = spec.ell;
    let data = automizer_data(spec)?;
    let weyl = spec.action.weyl()?;
    let tw = character_table(&weyl.group)?;
    let t_out_s = character_table(&data.out_s)?;
    let t_out_q = character_table(&data.out_q)?;
    let t_nwu_model = character_table(&data.nwu)?;
    let nwu = weyl.normalizer_group()?;
    let t_nwu = character_table(&nwu)?;

    let irr_w = tw.len() as i64;
    let z_w = z_count(&tw, ell) as i64;
    let irr_out_s = t_out_s.len() as i64;
    let z_out_s = z_count(&t_out_s, ell) as i64;
    let z_out_q = z_count(&t_out_q, ell) as i64;
    let irr_nwu = t_nwu.len() as i64;
    let w = match spec.variant {
        Variant::A => z_out_s + z_out_q,
        Variant::B => z_w + z_out_s + z_out_q,
    };

    let mut r = VerificationReport::new("awc").input("family", spec.name()).input("ell", ell);
    r.set("w", w);
    r.set("irr_W", irr_w);
    r.set("z_W", z_w);
    r.set("order_W", weyl.group.order() as i64);
    r.set("irr_OutS", irr_out_s);
    r.set("z_OutS", z_out_s);
    r.set("order_OutQ", data.out_q.order() as i64);
    r.set("z_OutQ", z_out_q);
    r.set("irr_N_W_U", irr_nwu);
    r.set("irr_NWU_model", t_nwu_model.len() as i64);
    let centric_radical = match (spec.variant, spec.uses_h()) {
        (Variant::A, _) => "S, H",
        (Variant::B, true) => "S, T, H",
        (Variant::B, false) => "S, T, B",
    };
    r.note(format!("centric radical classes: {centric_radical}; OutS = {}", data.out_s_description));
    let mut weight = Chain::new("weight count");
    weight = match spec.variant {
        Variant::A => weight.link("z(k OutS)+z(k OutQ)", w, "|Irr(W)|", irr_w),
        Variant::B => weight.link("z(kW)+z(k OutS)+z(k OutQ)", w, "|Irr(W)|", irr_w),
    };
    r.push_chain(weight);
    r.push_chain(Chain::through(
        "cancellation",
        &[("|Irr(W)|-w", irr_w - w), ("|Irr(N_W(U))|-|Irr(OutS)|-z(k OutQ)", irr_nwu - irr_out_s - z_out_q)],
    ));
    r.push_chain(Chain::through(
        "normalizer model",
        &[("|Irr(N_W(U))|", irr_nwu), ("|Irr(NWU model)|", t_nwu_model.len() as i64)],
    ));
    r.push_chain(Chain::through(
        "OutS order",
        &[("|N_W(U)/U|", (nwu.order() / weyl.u_subgroup.order()) as i64), ("|OutS|", data.out_s.order() as i64)],
    ));
    if spec.variant == Variant::A {
        r.note(FAMILY_A_RANK_NOTE);
    }
    let thev = verify_thev(&weyl.group, ell)?;
    r.absorb("W", &thev);
    Ok(r)
}
