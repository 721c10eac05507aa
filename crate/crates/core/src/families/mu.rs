//! The pair `mu(alpha) = (r, s)` of an automorphism of `S_n` induced by an
//! element `w` of `N_W(U)`: `x -> x^r T` and `g -> g^s` on `Z(S) ∩ [S, S]`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{unit_power, FusionFamilySpec};
use crate::arith::gcd;
use crate::lattice::{snf, ModMatrix};
use crate::report::{Chain, VerificationReport};
use crate::tower::torus_level;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuPair {
    /// Index of the element in `W`.
    pub element: usize,
    pub r: u64,
    /// `None` when `Z(S) ∩ [S, S]` is trivial or not acted on by a scalar.
    pub s: Option<u64>,
    /// `[alpha, Z(S)] <= Z(S) ∩ [S, S]`.
    pub in_aut_vee: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MuReport {
    pub level: u32,
    pub ell: u64,
    pub omega1_rank: usize,
    pub pairs: Vec<MuPair>,
    /// `mu` of the elements acting as in `Aut^vee`, as a set of pairs.
    pub image: Vec<(u64, u64)>,
    /// `t` values in `{0, -1}` with `image >= Delta_t`.
    pub contains_delta: Vec<i32>,
    pub equals_delta_0: bool,
    /// `1` or `2` when the corresponding case holds for some `t`.
    pub cases: Vec<u8>,
    pub multiplicative: bool,
    pub well_defined: bool,
    pub report: VerificationReport,
}

/// `Delta_t = {(r, r^t)}`.
pub fn delta(ell: u64, t: i32) -> BTreeSet<(u64, u64)> {
    (1..ell).map(|r| (r, unit_power(r, t, ell))).collect()
}

pub fn check_or1_hypotheses(spec: &FusionFamilySpec, n: u32) -> Result<MuReport> {
    let t = torus_level(&spec.action, n)?;
    let ell = t.ell;
    let m = t.modulus;
    if !t.faithful() {
        return Err(Error::LevelTooSmall {
            n,
            reason: format!("W does not act faithfully on T_{n} (kernel of order {})", t.reduction_kernel_order),
        });
    }
    let scalar = ModMatrix::identity(t.rank, m).mul(&ModMatrix::from_rows(
        &(0..t.rank).map(|i| (0..t.rank).map(|j| if i == j { ell as i64 } else { 0 }).collect()).collect::<Vec<_>>(),
        m,
    ));
    let omega1_rank = snf(&scalar, ell, n).kernel_invariants().len();
    let center = t.center();
    let zc: Vec<Vec<i64>> = center.iter().filter(|v| t.in_commutator(v) && v.iter().any(|&x| x != 0)).cloned().collect();
    let w = &t.weyl.group;
    let mut pairs = Vec::new();
    let mut well_defined = true;
    for &g in t.weyl.normalizer.members() {
        let wm = t.w_matrix(g);
        let wi = t.w_matrix(w.inv(g));
        let conj = wm.mul(&t.u).mul(&wi);
        let r = (1..ell).find(|&r| t.u.pow(r) == conj).ok_or_else(|| Error::HypothesisFailed("N_W(U) element".into()))?;
        // every coset representative x^k must give the same r
        well_defined &= (1..ell).all(|k| wm.mul(&t.u.pow(k)).mul(&wi) == t.u.pow(r * k % ell));
        let s = if zc.is_empty() {
            None
        } else {
            (1..m as u64)
                .filter(|&s| gcd(s, ell) == 1)
                .find(|&s| {
                    zc.iter().all(|v| {
                        wm.apply(v) == v.iter().map(|x| (x * s as i64).rem_euclid(m)).collect::<Vec<_>>()
                    })
                })
                .map(|s| s % ell)
        };
        let in_aut_vee = center.iter().all(|z| {
            let d: Vec<i64> = wm.apply(z).iter().zip(z).map(|(a, b)| (a - b).rem_euclid(m)).collect();
            t.in_commutator(&d)
        });
        pairs.push(MuPair { element: g, r, s, in_aut_vee });
    }
    let image: BTreeSet<(u64, u64)> =
        pairs.iter().filter(|p| p.in_aut_vee).filter_map(|p| p.s.map(|s| (p.r, s))).collect();
    let by_elem: std::collections::HashMap<usize, &MuPair> = pairs.iter().map(|p| (p.element, p)).collect();
    let multiplicative = pairs.iter().all(|p| {
        pairs.iter().all(|q| {
            let pq = by_elem[&w.mul(p.element, q.element)];
            pq.r == p.r * q.r % ell
                && match (p.s, q.s, pq.s) {
                    (Some(a), Some(b), Some(c)) => c == a * b % ell,
                    (None, None, None) => true,
                    _ => false,
                }
        })
    });
    let contains_delta: Vec<i32> = [0, -1].into_iter().filter(|&tt| delta(ell, tt).is_subset(&image)).collect();
    let equals_delta_0 = image == delta(ell, 0);
    let mut cases = Vec::new();
    if omega1_rank as u64 == ell - 1 && !contains_delta.is_empty() {
        cases.push(1);
    }
    if omega1_rank as u64 >= ell && equals_delta_0 {
        cases.push(2);
    }

    let mut rep = VerificationReport::new("mu").input("family", spec.name()).input("ell", ell).input("level", n);
    rep.set("omega1_rank", omega1_rank as i64);
    rep.set("image_size", image.len() as i64);
    rep.set("aut_vee_elements", pairs.iter().filter(|p| p.in_aut_vee).count() as i64);
    rep.set("normalizer_order", pairs.len() as i64);
    rep.push_chain(Chain::through("torus rank", &[("dim Omega_1(T)", omega1_rank as i64), ("rank", t.rank as i64)]));
    rep.check("some case holds", !cases.is_empty());
    rep.check("multiplicative", multiplicative);
    rep.check("well defined", well_defined);
    rep.check("identity maps to (1,1)", pairs.iter().any(|p| p.element == w.identity() && p.r == 1 && p.s.is_none_or(|s| s == 1)));
    if !contains_delta.contains(&spec.t) {
        rep.note(format!("image does not contain Delta_{} for the spec's t", spec.t));
    }
    Ok(MuReport {
        level: n,
        ell,
        omega1_rank,
        pairs,
        image: image.into_iter().collect(),
        contains_delta,
        equals_delta_0,
        cases,
        multiplicative,
        well_defined,
        report: rep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{family_a_spec, family_b_preset};

    #[test]
    fn delta_sets() {
        assert_eq!(delta(5, 0), [(1, 1), (2, 1), (3, 1), (4, 1)].into_iter().collect());
        assert_eq!(delta(5, -1), [(1, 1), (2, 3), (3, 2), (4, 4)].into_iter().collect());
    }

    #[test]
    fn g2_level_two() {
        let r = check_or1_hypotheses(&family_b_preset("G2").unwrap(), 2).unwrap();
        assert_eq!(r.omega1_rank, 2);
        assert!(r.cases.contains(&1), "{r:?}");
        assert!(r.multiplicative && r.well_defined);
    }

    #[test]
    fn family_a_aut_vee() {
        let r = check_or1_hypotheses(&family_a_spec(3).unwrap(), 2).unwrap();
        assert!(r.pairs.iter().all(|p| p.in_aut_vee));
        assert!(r.report.pass);
    }
}
