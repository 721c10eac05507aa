//! Representatives of the `H` and `B` subgroup families at a level, their
//! `Z~ Q~` decompositions, and fusion of outer elements into the torus.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use super::{torus_level, TorusLevel};
use crate::arith::ipow;
use crate::families::{automizer_data, FusionFamilySpec, ThetaKind};
use crate::group::{center_series, conjugacy_classes, Code, FiniteGroup, Homomorphism, Subgroup};
use crate::report::{Chain, VerificationReport};
use crate::{Error, Result};

/// Outer elements are enumerated by brute force up to this `|S_n|`.
const ENUMERATE_LIMIT: u64 = 5_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupRep {
    /// `"H"` for `Z(S)<x>`, `"B"` for `Z_2(S)<x>`.
    pub family: String,
    /// Whether this family is the centric radical one for the spec.
    pub centric_radical: bool,
    pub q_order: usize,
    pub z_tilde_order: usize,
    pub q_tilde_order: usize,
    pub q_tilde_abelian: bool,
    pub q_tilde_exponent: u64,
    pub q_tilde_center_order: usize,
    /// `Q~ >= Q ∩ [S, S]`.
    pub contains_q_commutator: bool,
    pub decomposition_ok: bool,
    /// `S_n`-classes in the family, from `T / (P + (u-1)T)`.
    pub s_classes: u64,
    /// The same count by enumerating subgroups, on small levels.
    pub s_classes_enumerated: Option<u64>,
}

/// `Q = P<y>` with `P = Z(S)` (H) or `Z_2(S) ∩ T` (B), materialized with
/// generators `z~_1, ..., z~_k, a, b`.
struct LocalQ {
    q: Arc<FiniteGroup>,
    a: usize,
    b: usize,
    ztilde_gens: usize,
    ztilde: Subgroup,
    qtilde: Subgroup,
}

fn p_generators(t: &TorusLevel, h_case: bool) -> Vec<(Vec<i64>, u64)> {
    if h_case {
        t.u_minus_1.kernel_generators()
    } else {
        t.u_minus_1_sq.kernel_generators()
    }
}

fn is_central(t: &TorusLevel, v: &[i64]) -> bool {
    t.u.apply(v) == v.iter().map(|x| x.rem_euclid(t.modulus)).collect::<Vec<_>>()
}

fn local_q(t: &TorusLevel, h_case: bool, y: (&[i64], u64)) -> Result<LocalQ> {
    let law = t.affine_law();
    let budget = usize::MAX;
    let pg = p_generators(t, h_case);
    let mut gens: Vec<Code> = pg.iter().map(|(v, _)| t.affine(v, 0)).collect();
    let y_code = t.affine(y.0, y.1);
    gens.push(y_code.clone());
    let q0 = FiniteGroup::generate("Q", law.clone(), gens, budget)?;
    let parts: Vec<(Vec<i64>, u64)> = (0..q0.order()).map(|i| t.split(q0.elem(i))).collect();
    let ell = t.ell;
    let yi = q0.require(&y_code)?;
    let a = if q0.element_order(yi) == ell {
        yi
    } else {
        (0..q0.order())
            .find(|&i| {
                parts[i].1 == y.1 && q0.element_order(i) == ell && {
                    let d = q0.mul(yi, q0.inv(i));
                    parts[d].1 == 0 && is_central(t, &parts[d].0)
                }
            })
            .ok_or_else(|| Error::HypothesisFailed("no outer element of order l in Q".into()))?
    };
    let in_p = |i: usize| parts[i].1 == 0 && (!h_case || is_central(t, &parts[i].0));
    let candidates: Vec<usize> = (0..q0.order())
        .filter(|&i| in_p(i) && q0.element_order(i) == ell)
        .filter(|&i| h_case || !is_central(t, &parts[i].0))
        .collect();
    let b = candidates
        .iter()
        .copied()
        .find(|&i| t.in_commutator(&parts[i].0))
        .or_else(|| candidates.first().copied())
        .ok_or_else(|| Error::HypothesisFailed("no torus element of order l for Q~".into()))?;
    let qtilde0 = q0.closure(&[a, b]);
    let center: Vec<usize> = (0..q0.order()).filter(|&i| parts[i].1 == 0 && is_central(t, &parts[i].0)).collect();
    let mut zt_gens: Vec<usize> = Vec::new();
    let mut zt = q0.trivial_subgroup();
    if h_case {
        for &z in &center {
            if zt.order() * qtilde0.order() >= q0.order() {
                break;
            }
            if zt.contains(z) {
                continue;
            }
            let mut trial = zt_gens.clone();
            trial.push(z);
            let c = q0.closure(&trial);
            if c.members().iter().all(|&m| m == q0.identity() || !qtilde0.contains(m)) {
                zt_gens = trial;
                zt = c;
            }
        }
    } else {
        for &z in &center {
            if !zt.contains(z) {
                zt_gens.push(z);
                zt = q0.closure(&zt_gens);
            }
        }
    }
    let mut codes: Vec<Code> = zt_gens.iter().map(|&i| q0.elem(i).clone()).collect();
    codes.push(q0.elem(a).clone());
    codes.push(q0.elem(b).clone());
    let q = FiniteGroup::generate("Q", law, codes.clone(), budget)?;
    let ztilde_gens = zt_gens.len();
    if q.generators().len() != codes.len() {
        return Err(Error::HypothesisFailed("Q generators collapsed".into()));
    }
    let idx = |c: &Code| q.require(c);
    let a_q = idx(&codes[ztilde_gens])?;
    let b_q = idx(&codes[ztilde_gens + 1])?;
    let zt_q: Vec<usize> = codes[..ztilde_gens].iter().map(idx).collect::<Result<_>>()?;
    let ztilde = q.closure(&zt_q);
    let qtilde = q.closure(&[a_q, b_q]);
    Ok(LocalQ { q: Arc::new(q), a: a_q, b: b_q, ztilde_gens, ztilde, qtilde })
}

fn subgroup_exponent(g: &FiniteGroup, s: &Subgroup) -> u64 {
    s.members().iter().map(|&m| g.element_order(m)).max().unwrap_or(1)
}

fn describe(t: &TorusLevel, h_case: bool, lq: &LocalQ) -> Result<SubgroupRep> {
    let q = &lq.q;
    let ell = t.ell;
    let qt_group = q.subgroup_group(&lq.qtilde, "Q~")?;
    let q_tilde_center_order = center_series(&qt_group, 1).order();
    let q_tilde_abelian = qt_group.is_abelian();
    let q_tilde_exponent = subgroup_exponent(q, &lq.qtilde);
    let inter = lq.ztilde.members().iter().filter(|&&m| lq.qtilde.contains(m)).count();
    let product = lq.ztilde.order() * lq.qtilde.order() / inter;
    let shape = if h_case {
        lq.qtilde.order() as u64 == ell * ell && q_tilde_abelian && inter == 1
    } else {
        lq.qtilde.order() as u64 == ell * ell * ell && !q_tilde_abelian && q_tilde_center_order as u64 == ell
    };
    let contains_q_commutator = (0..q.order()).all(|i| {
        let (v, k) = t.split(q.elem(i));
        !(k == 0 && t.in_commutator(&v)) || lq.qtilde.contains(i)
    });
    let decomposition_ok = shape && q_tilde_exponent == ell && product == q.order();
    Ok(SubgroupRep {
        family: if h_case { "H" } else { "B" }.into(),
        centric_radical: false,
        q_order: q.order(),
        z_tilde_order: lq.ztilde.order(),
        q_tilde_order: lq.qtilde.order(),
        q_tilde_abelian,
        q_tilde_exponent,
        q_tilde_center_order,
        contains_q_commutator,
        decomposition_ok,
        s_classes: class_count_formula(t, h_case),
        s_classes_enumerated: None,
    })
}

/// `|T / (P + (u-1)T)|`; the whole of `S` when `x` lies in `Z_2(S)`.
fn class_count_formula(t: &TorusLevel, h_case: bool) -> u64 {
    if !h_case && t.x_in_second_center() {
        return 1;
    }
    let p = if h_case { t.center() } else { t.second_center_t() };
    let inter = p.iter().filter(|v| t.in_commutator(v)).count() as u64;
    t.u_minus_1.cokernel_order() * inter / p.len() as u64
}

/// Counts the subgroups `P<y>`, `y` outside `T`, up to `S`-conjugacy, in the
/// materialized `S`.
fn class_count_enumerated(t: &TorusLevel, s: &FiniteGroup, h_case: bool) -> u64 {
    let parts: Vec<(Vec<i64>, u64)> = (0..s.order()).map(|i| t.split(s.elem(i))).collect();
    let p_members: Vec<usize> = if !h_case && t.x_in_second_center() {
        (0..s.order()).collect()
    } else {
        let p = if h_case { t.center() } else { t.second_center_t() };
        p.iter().map(|v| s.require(&t.affine(v, 0)).expect("torus element")).collect()
    };
    let mut subgroups: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut list: Vec<Vec<usize>> = Vec::new();
    for y in 0..s.order() {
        if parts[y].1 == 0 {
            continue;
        }
        let mut members: HashSet<usize> = HashSet::new();
        let mut pw = s.identity();
        for _ in 0..t.ell * t.ell {
            for &m in &p_members {
                members.insert(s.mul(m, pw));
            }
            pw = s.mul(pw, y);
        }
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        if !subgroups.contains_key(&v) {
            subgroups.insert(v.clone(), list.len());
            list.push(v);
        }
    }
    let mut seen = vec![false; list.len()];
    let mut classes = 0;
    for start in 0..list.len() {
        if seen[start] {
            continue;
        }
        classes += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for &g in s.generators() {
                let mut img: Vec<usize> = list[i].iter().map(|&m| s.conj(m, g)).collect();
                img.sort_unstable();
                let j = subgroups[&img];
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    classes
}

/// Representatives of both families at level `n`, with the centric radical
/// one flagged.
pub fn subgroup_reps(spec: &FusionFamilySpec, n: u32) -> Result<Vec<SubgroupRep>> {
    let t = torus_level(&spec.action, n)?;
    let small = ipow(t.ell, t.t_log_order() + 1) <= ENUMERATE_LIMIT;
    let s = if small { Some(super::build_s(spec, n)?.group.expect("small level is materialized")) } else { None };
    let zero = vec![0; t.rank];
    let mut out = Vec::new();
    for h_case in [true, false] {
        let lq = local_q(&t, h_case, (&zero, 1))?;
        let mut rep = describe(&t, h_case, &lq)?;
        rep.centric_radical = h_case == spec.uses_h();
        rep.s_classes_enumerated = s.as_ref().map(|s| class_count_enumerated(&t, s, h_case));
        out.push(rep);
    }
    Ok(out)
}

/// Element permutations of `Q` generating `Theta Inn(Q)`.
fn theta_permutations(lq: &LocalQ, sl2: &[[i64; 4]]) -> Result<Vec<Vec<usize>>> {
    let q = &lq.q;
    let gens = q.generators().to_vec();
    let mut perms = Vec::new();
    for m in sl2 {
        let word = |i: i64, j: i64| q.mul(q.pow(lq.a, i.rem_euclid(q.order() as i64) as u64), q.pow(lq.b, j.rem_euclid(q.order() as i64) as u64));
        let mut images: Vec<usize> = gens[..lq.ztilde_gens].to_vec();
        images.push(word(m[0], m[2]));
        images.push(word(m[1], m[3]));
        let h = Homomorphism::from_generator_images(Arc::clone(q), Arc::clone(q), &images)?;
        if !h.is_surjective() {
            return Err(Error::HypothesisFailed("Theta generator is not an automorphism of Q".into()));
        }
        perms.push((0..q.order()).map(|x| h.apply(x)).collect());
    }
    for &g in &gens {
        perms.push((0..q.order()).map(|x| q.conj(x, g)).collect());
    }
    Ok(perms)
}

fn coker_elements(t: &TorusLevel) -> Vec<Vec<i64>> {
    let inv = t.u_minus_1.cokernel_invariants();
    let mut out = vec![Vec::new()];
    for &m in &inv {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m as i64).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// Every `S_n`-class outside `T_n` is represented by `(t, x^k)` with `t`
/// running over `T/(u-1)T`; each is followed along its `Theta`-orbit in
/// `Q = P<y>` until it lands in `T_n`.
pub fn connectivity_check(spec: &FusionFamilySpec, n: u32) -> Result<VerificationReport> {
    let t = torus_level(&spec.action, n)?;
    let data = automizer_data(spec)?;
    let h_case = data.theta.kind == ThetaKind::Natural;
    let mut outer = 0i64;
    let mut in_q = 0i64;
    let mut fused_t = 0i64;
    let mut fused_comm = 0i64;
    let mut orbit_sizes = Vec::new();
    for k in 1..t.ell {
        for c in coker_elements(&t) {
            let v = t.u_minus_1.cokernel_lift(&c);
            outer += 1;
            let lq = local_q(&t, h_case, (&v, k))?;
            let q = &lq.q;
            let y = q.require(&t.affine(&v, k))?;
            in_q += 1;
            let perms = theta_permutations(&lq, &data.theta.sl2_generators)?;
            let mut seen = vec![false; q.order()];
            seen[y] = true;
            let mut stack = vec![y];
            let mut orbit = Vec::new();
            while let Some(x) = stack.pop() {
                orbit.push(x);
                for p in &perms {
                    if !seen[p[x]] {
                        seen[p[x]] = true;
                        stack.push(p[x]);
                    }
                }
            }
            let parts: Vec<(Vec<i64>, u64)> = orbit.iter().map(|&x| t.split(q.elem(x))).collect();
            if parts.iter().any(|p| p.1 == 0) {
                fused_t += 1;
            }
            if parts.iter().any(|p| p.1 == 0 && t.in_commutator(&p.0)) {
                fused_comm += 1;
            }
            orbit_sizes.push(orbit.len());
        }
    }
    let mut r = VerificationReport::new("connectivity")
        .input("family", spec.name())
        .input("ell", spec.ell)
        .input("level", n);
    r.set("outer_classes", outer);
    r.set("in_some_Q", in_q);
    r.set("fused_into_T", fused_t);
    r.set("fused_into_Q_cap_commutator", fused_comm);
    r.push_chain(Chain::through("outer classes in Q", &[("outer classes", outer), ("in some Q", in_q)]));
    r.push_chain(Chain::through("fused into T", &[("outer classes", outer), ("fused into T", fused_t)]));
    if fused_comm != outer {
        r.note("some outer classes reach T only outside Q cap [S,S]");
    }
    if ipow(t.ell, t.t_log_order() + 1) <= ENUMERATE_LIMIT {
        let s = super::build_s(spec, n)?.group.expect("small level is materialized");
        let cls = conjugacy_classes(&s);
        let outer_by_group =
            (0..cls.len()).filter(|&c| t.split(s.elem(cls.rep(c))).1 != 0).count() as i64;
        r.set("outer_classes_by_group", outer_by_group);
        r.push_chain(Chain::through(
            "outer class count",
            &[("(l-1)|T/(u-1)T|", outer), ("classes of S_n outside T_n", outer_by_group)],
        ));
    }
    r.note(format!("subgroup family {}; elements of T_n are connected trivially", if h_case { "H" } else { "B" }));
    r.data = Some(serde_json::json!({ "orbit_sizes": orbit_sizes }));
    Ok(r)
}
