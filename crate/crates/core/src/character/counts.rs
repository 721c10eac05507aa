//! Defect-zero and height-zero counts, the normalizer chain for a cyclic
//! Sylow subgroup of prime order, little-group counts and dual orbit sums.

use std::sync::Arc;

use serde::Serialize;

use super::{character_table, CharacterTable};
use crate::arith::{lcm, valuation};
use crate::group::{conjugacy_classes, find_complement, is_normal, normalizer, quotient, sylow, FiniteGroup, Subgroup};
use crate::report::{Chain, VerificationReport};
use crate::{Error, Result};

/// Number of defect-zero characters, i.e. `v_l(chi(1)) = v_l(|G|)`.
pub fn z_count(t: &CharacterTable, ell: u64) -> usize {
    t.defect_profile(ell).defect_zero()
}

/// Number of characters of degree prime to `l`. Only defined here when the
/// Sylow `l`-subgroup has order at most `l`.
pub fn irr0_count(t: &CharacterTable, ell: u64) -> Result<usize> {
    let v = valuation(t.group_order, ell);
    if v >= 2 {
        return Err(Error::UnsupportedValuation { ell, valuation: v });
    }
    Ok(t.defect_profile(ell).ell_prime_degree())
}

/// `|Irr(W)| - z(kW) = |Irr(N_W(U))| = |Irr_0(N_W(U))| = |Irr_0(W)|` for a
/// Sylow subgroup `U` of order `l`.
pub fn verify_thev(w: &FiniteGroup, ell: u64) -> Result<VerificationReport> {
    let v = valuation(w.order() as u64, ell);
    if v != 1 {
        return Err(Error::HypothesisFailed(format!("v_{ell}(|W|) = {v}, expected 1")));
    }
    let tw = character_table(w)?;
    let u = sylow(w, ell);
    let n = w.subgroup_group(&normalizer(w, &u), "N_W(U)")?;
    let tn = character_table(&n)?;
    let irr_w = tw.len() as i64;
    let z_w = z_count(&tw, ell) as i64;
    let irr_n = tn.len() as i64;
    let irr0_n = irr0_count(&tn, ell)? as i64;
    let irr0_w = irr0_count(&tw, ell)? as i64;
    let mut r = VerificationReport::new("lemma thev").input("group", w.name()).input("ell", ell);
    r.set("irr_W", irr_w);
    r.set("z_W", z_w);
    r.set("order_N_W_U", n.order() as i64);
    r.set("irr_N_W_U", irr_n);
    r.set("irr0_N_W_U", irr0_n);
    r.set("irr0_W", irr0_w);
    r.push_chain(Chain::through(
        "normalizer chain",
        &[("|Irr(W)|-z(kW)", irr_w - z_w), ("|Irr(N_W(U))|", irr_n), ("|Irr0(N_W(U))|", irr0_n), ("|Irr0(W)|", irr0_w)],
    ));
    Ok(r)
}

/// Clifford correspondence count: the sum over `G`-orbits of `theta` in
/// `Irr(N)` of `|Irr(I_G(theta)/N)|`, compared with `|Irr(G)|`.
pub fn little_groups_count(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<VerificationReport> {
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let ng = g.subgroup_group(n, "N")?;
    let tn = character_table(&ng)?;
    let ncls = conjugacy_classes(&ng);
    let r = tn.len();
    // class of g^-1 x g in N, for each class of N and each element g
    let embed = g.embed(&ng)?;
    let local: std::collections::HashMap<usize, usize> = embed.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let moved = |c: usize, s: usize| -> usize {
        let x = embed[ncls.rep(c)];
        ncls.class_of(local[&g.conj(x, s)])
    };
    // characters permuted by s: (theta^s)(x) = theta(s x s^-1); compare value vectors
    let act = |chi: usize, s: usize| -> usize {
        let si = g.inv(s);
        let vals: Vec<&Vec<i64>> = (0..r).map(|c| &tn.values[chi][moved(c, si)]).collect();
        (0..r)
            .find(|&psi| (0..r).all(|c| &tn.values[psi][c] == vals[c]))
            .expect("conjugate of a character is a character")
    };
    let n_abelian = ng.is_abelian();
    let mut seen = vec![false; r];
    let mut total = 0i64;
    let mut orbits = 0i64;
    let mut extension_verified = n_abelian;
    let mut orbit_data = Vec::new();
    for theta in 0..r {
        if seen[theta] {
            continue;
        }
        orbits += 1;
        let mut orbit = vec![theta];
        seen[theta] = true;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for &s in g.generators() {
                let y = act(x, s);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        let members: Vec<usize> = (0..g.order()).filter(|&s| act(theta, s) == theta).collect();
        let inertia = g.subgroup_from_members(members);
        let ig = Arc::new(g.subgroup_group(&inertia, "I")?);
        let n_in_i = ig.subgroup_from_members(ig.embed(&ng)?);
        if n_abelian && find_complement(&ig, &n_in_i, 50_000).is_none() {
            extension_verified = false;
        }
        let q = quotient(&ig, &n_in_i, "I/N")?;
        let irr_q = conjugacy_classes(&q).len() as i64;
        total += irr_q;
        orbit_data.push(serde_json::json!({
            "orbit_size": orbit.len(),
            "degree": tn.degrees[theta],
            "inertia_order": inertia.order(),
            "irr_inertia_quotient": irr_q,
        }));
    }
    let irr_g = conjugacy_classes(g).len() as i64;
    let mut rep = VerificationReport::new("lemma little").input("group", g.name()).input("normal_order", n.order());
    rep.set("orbits", orbits);
    rep.set("sum_irr_inertia_quotients", total);
    rep.set("irr_G", irr_g);
    rep.set("extension_verified", extension_verified as i64);
    if !extension_verified {
        rep.note("count-only mode: extension of inertia characters not verified");
    }
    rep.data = Some(serde_json::json!({ "orbits": orbit_data }));
    rep.push_chain(Chain::through("little groups", &[("sum |Irr(I/N)|", total), ("|Irr(G)|", irr_g)]));
    Ok(rep)
}

/// A finite group `gamma` acting on `A = Z/m_1 + ... + Z/m_k` through
/// integer matrices on column vectors, one per generator of `gamma`.
#[derive(Debug, Clone)]
pub struct DualAction {
    pub moduli: Vec<u64>,
    pub gamma: Arc<FiniteGroup>,
    pub generator_matrices: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualOrbitCount {
    /// Sum over orbits of `|Irr(stabilizer)|`.
    pub total: u64,
    pub orbits: u64,
    pub orbit_size_sum: u64,
    pub group_size: u64,
    /// `<g x, g xi> = <x, xi>` for all generators, points and characters.
    pub pairing_preserved: bool,
}

impl DualAction {
    fn size(&self) -> usize {
        self.moduli.iter().product::<u64>() as usize
    }

    fn decode(&self, mut i: usize) -> Vec<i64> {
        let mut v = vec![0; self.moduli.len()];
        for k in (0..self.moduli.len()).rev() {
            let m = self.moduli[k] as usize;
            v[k] = (i % m) as i64;
            i /= m;
        }
        v
    }

    fn encode(&self, v: &[i64]) -> usize {
        v.iter().zip(&self.moduli).fold(0usize, |acc, (&x, &m)| acc * m as usize + x.rem_euclid(m as i64) as usize)
    }

    fn apply(&self, mat: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
        mat.iter()
            .zip(&self.moduli)
            .map(|(row, &m)| row.iter().zip(v).map(|(a, b)| a * b).sum::<i64>().rem_euclid(m as i64))
            .collect()
    }

    fn pairing(&self, x: &[i64], xi: &[i64]) -> i64 {
        let l = self.moduli.iter().fold(1, |a, &m| lcm(a, m)) as i64;
        x.iter()
            .zip(xi)
            .zip(&self.moduli)
            .map(|((a, b), &m)| a * b * (l / m as i64))
            .sum::<i64>()
            .rem_euclid(l)
    }

    /// Matrix of every element of `gamma`, checked for consistency.
    fn element_matrices(&self) -> Result<Vec<Vec<Vec<i64>>>> {
        let g = &self.gamma;
        let k = self.moduli.len();
        if self.generator_matrices.len() != g.generators().len() {
            return Err(Error::MalformedSpec("one matrix per generator required".into()));
        }
        let id: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| (i == j) as i64).collect()).collect();
        let mut mats: Vec<Option<Vec<Vec<i64>>>> = vec![None; g.order()];
        mats[g.identity()] = Some(id);
        let mut queue = vec![g.identity()];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (gi, &s) in g.generators().iter().enumerate() {
                let y = g.mul(x, s);
                // x s acts as x after s: M_{xs} = M_x M_s
                let mx = mats[x].as_ref().expect("visited");
                let ms = &self.generator_matrices[gi];
                let prod: Vec<Vec<i64>> = (0..k)
                    .map(|i| {
                        (0..k)
                            .map(|j| (0..k).map(|l| mx[i][l] * ms[l][j]).sum::<i64>().rem_euclid(self.moduli[i] as i64))
                            .collect()
                    })
                    .collect();
                match &mats[y] {
                    None => {
                        mats[y] = Some(prod);
                        queue.push(y);
                    }
                    Some(old) => {
                        let same = (0..self.size()).all(|p| {
                            let v = self.decode(p);
                            self.apply(old, &v) == self.apply(&prod, &v)
                        });
                        if !same {
                            return Err(Error::MalformedSpec("matrices do not define an action".into()));
                        }
                    }
                }
            }
        }
        Ok(mats.into_iter().map(|m| m.expect("connected")).collect())
    }
}

/// `sum over psi in Irr(A)/gamma of |Irr(C_gamma(psi))|`, with `Irr(A)`
/// realized as the dual group under the inverse-transpose action.
pub fn dual_orbit_pairs(a: &DualAction) -> Result<DualOrbitCount> {
    let g = &a.gamma;
    let mats = a.element_matrices()?;
    let size = a.size();
    let points: Vec<Vec<i64>> = (0..size).map(|i| a.decode(i)).collect();
    // (s . xi)_j = xi(s^-1 e_j) / w_j
    let l = a.moduli.iter().fold(1, |acc, &m| lcm(acc, m)) as i64;
    let dual_perm: Vec<Vec<usize>> = (0..g.order())
        .map(|s| {
            let minv = &mats[g.inv(s)];
            points
                .iter()
                .map(|xi| {
                    let img: Vec<i64> = (0..a.moduli.len())
                        .map(|j| {
                            let mut ej = vec![0; a.moduli.len()];
                            ej[j] = 1;
                            let val = a.pairing(&a.apply(minv, &ej), xi);
                            let w = l / a.moduli[j] as i64;
                            debug_assert_eq!(val % w, 0);
                            val / w
                        })
                        .collect();
                    a.encode(&img)
                })
                .collect()
        })
        .collect();
    let pairing_preserved = g.generators().iter().all(|&s| {
        (0..size).all(|x| {
            let gx = a.apply(&mats[s], &points[x]);
            (0..size).all(|xi| a.pairing(&gx, &points[dual_perm[s][xi]]) == a.pairing(&points[x], &points[xi]))
        })
    });
    let mut seen = vec![false; size];
    let mut total = 0u64;
    let mut orbits = 0u64;
    let mut orbit_size_sum = 0u64;
    for xi in 0..size {
        if seen[xi] {
            continue;
        }
        orbits += 1;
        let mut orbit_len = 0u64;
        for s in 0..g.order() {
            let y = dual_perm[s][xi];
            if !seen[y] {
                seen[y] = true;
                orbit_len += 1;
            }
        }
        orbit_size_sum += orbit_len;
        let stab = g.subgroup_from_members((0..g.order()).filter(|&s| dual_perm[s][xi] == xi).collect());
        let sg = g.subgroup_group(&stab, "stab")?;
        total += conjugacy_classes(&sg).len() as u64;
    }
    Ok(DualOrbitCount { total, orbits, orbit_size_sum, group_size: size as u64, pairing_preserved })
}

/// The same count for an explicitly materialized abelian group `A`, with
/// `gamma` acting through element permutations of `A` (one per generator),
/// using the character table of `A` for `Irr(A)`.
pub fn dual_orbit_pairs_group(a: &FiniteGroup, gamma: &FiniteGroup, generator_perms: &[Vec<usize>]) -> Result<u64> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if generator_perms.len() != gamma.generators().len() {
        return Err(Error::MalformedSpec("one permutation per generator required".into()));
    }
    let t = character_table(a)?;
    let cls = conjugacy_classes(a);
    // per-element permutations of A
    let mut perms: Vec<Option<Vec<usize>>> = vec![None; gamma.order()];
    perms[gamma.identity()] = Some((0..a.order()).collect());
    let mut queue = vec![gamma.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (gi, &s) in gamma.generators().iter().enumerate() {
            let y = gamma.mul(x, s);
            let px = perms[x].as_ref().expect("visited");
            // xs acts as x after s
            let py: Vec<usize> = generator_perms[gi].iter().map(|&v| px[v]).collect();
            match &perms[y] {
                None => {
                    perms[y] = Some(py);
                    queue.push(y);
                }
                Some(old) if *old != py => return Err(Error::MalformedSpec("permutations do not define an action".into())),
                _ => {}
            }
        }
    }
    let perms: Vec<Vec<usize>> = perms.into_iter().map(|p| p.expect("connected")).collect();
    let r = t.len();
    let act = |chi: usize, s: usize| -> usize {
        let pinv = &perms[gamma.inv(s)];
        let vals: Vec<&Vec<i64>> = (0..r).map(|c| &t.values[chi][cls.class_of(pinv[t.class_reps[c]])]).collect();
        (0..r).find(|&psi| (0..r).all(|c| &t.values[psi][c] == vals[c])).expect("permuted character")
    };
    let mut seen = vec![false; r];
    let mut total = 0u64;
    for chi in 0..r {
        if seen[chi] {
            continue;
        }
        for s in 0..gamma.order() {
            seen[act(chi, s)] = true;
        }
        let stab = gamma.subgroup_from_members((0..gamma.order()).filter(|&s| act(chi, s) == chi).collect());
        total += conjugacy_classes(&gamma.subgroup_group(&stab, "stab")?).len() as u64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, cyclic_group, normal_subgroups, GroupSpec};

    fn grp(s: GroupSpec) -> Arc<FiniteGroup> {
        Arc::new(build_group(&s).unwrap())
    }

    #[test]
    fn defect_zero_counts() {
        let t = character_table(&grp(GroupSpec::Sl2(3))).unwrap();
        assert_eq!(z_count(&t, 3), 1);
        for p in [3u64, 5] {
            let t = character_table(&grp(GroupSpec::Gl2(p))).unwrap();
            assert_eq!(z_count(&t, p), (p - 1) as usize);
        }
        let t = character_table(&grp(GroupSpec::Cyclic(4))).unwrap();
        assert_eq!(z_count(&t, 3), 4);
    }

    #[test]
    fn height_zero_counts() {
        let t = character_table(&grp(GroupSpec::Symmetric(5))).unwrap();
        assert_eq!(irr0_count(&t, 5).unwrap(), 5);
        let t = character_table(&grp(GroupSpec::Symmetric(3))).unwrap();
        assert_eq!(irr0_count(&t, 3).unwrap(), 3);
        let t = character_table(&grp(GroupSpec::Symmetric(4))).unwrap();
        assert_eq!(irr0_count(&t, 2).unwrap_err(), Error::UnsupportedValuation { ell: 2, valuation: 3 });
    }

    #[test]
    fn normalizer_chain_examples() {
        let r = verify_thev(&grp(GroupSpec::Symmetric(5)), 5).unwrap();
        assert!(r.pass);
        assert_eq!((r.get("irr_W"), r.get("z_W"), r.get("irr_N_W_U")), (Some(7), Some(2), Some(5)));
        let r = verify_thev(&grp(GroupSpec::Sl2(5)), 5).unwrap();
        assert!(r.pass);
        assert_eq!(r.get("irr_N_W_U"), Some(8));
        let r = verify_thev(&grp(GroupSpec::Frobenius { ell: 5, d: 4 }), 5).unwrap();
        assert_eq!(r.get("irr_N_W_U"), Some(5));
        assert!(verify_thev(&grp(GroupSpec::Symmetric(3)), 2).is_ok());
        assert!(matches!(verify_thev(&grp(GroupSpec::Symmetric(6)), 3), Err(Error::HypothesisFailed(_))));
    }

    #[test]
    fn little_groups_examples() {
        let s3 = grp(GroupSpec::Symmetric(3));
        let c3 = normal_subgroups(&s3).into_iter().find(|n| n.order() == 3).unwrap();
        let r = little_groups_count(&s3, &c3).unwrap();
        assert!(r.pass);
        assert_eq!(r.get("sum_irr_inertia_quotients"), Some(3));
        assert_eq!(r.get("extension_verified"), Some(1));
        let f = grp(GroupSpec::Frobenius { ell: 5, d: 4 });
        let c5 = sylow(&f, 5);
        let r = little_groups_count(&f, &c5).unwrap();
        assert_eq!(r.get("sum_irr_inertia_quotients"), Some(5));
        let whole = s3.whole();
        assert!(little_groups_count(&s3, &whole).unwrap().pass);
        let not_normal = s3.closure(&[s3.index_of(&[1, 0, 2]).unwrap()]);
        assert_eq!(little_groups_count(&s3, &not_normal).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn dual_orbit_examples() {
        let c2 = Arc::new(cyclic_group(2));
        let neg = DualAction { moduli: vec![3, 3], gamma: Arc::clone(&c2), generator_matrices: vec![vec![vec![-1, 0], vec![0, -1]]] };
        let r = dual_orbit_pairs(&neg).unwrap();
        assert_eq!(r.total, 6);
        assert_eq!(r.orbit_size_sum, 9);
        assert!(r.pairing_preserved);
        let aut = DualAction { moduli: vec![3], gamma: Arc::clone(&c2), generator_matrices: vec![vec![vec![2]]] };
        assert_eq!(dual_orbit_pairs(&aut).unwrap().total, 3);
        let c1 = Arc::new(cyclic_group(1));
        let triv = DualAction { moduli: vec![4, 2], gamma: c1, generator_matrices: vec![] };
        assert_eq!(dual_orbit_pairs(&triv).unwrap().total, 8);
    }

    #[test]
    fn dual_action_on_mixed_moduli_matches_group_form() {
        // C2 swapping nothing but acting by x -> 3x on Z/4 + Z/2
        let c2 = Arc::new(cyclic_group(2));
        let act = DualAction { moduli: vec![4, 2], gamma: Arc::clone(&c2), generator_matrices: vec![vec![vec![3, 0], vec![2, 1]]] };
        let lattice = dual_orbit_pairs(&act).unwrap();
        assert!(lattice.pairing_preserved);
        let a = build_group(&GroupSpec::Direct(vec![GroupSpec::Cyclic(4), GroupSpec::Cyclic(2)])).unwrap();
        let perm: Vec<usize> = (0..a.order())
            .map(|i| {
                let v = a.elem(i);
                a.index_of(&[(3 * v[0]).rem_euclid(4), (2 * v[0] + v[1]).rem_euclid(2)]).unwrap()
            })
            .collect();
        assert_eq!(dual_orbit_pairs_group(&a, &c2, &[perm]).unwrap(), lattice.total);
        let s3 = grp(GroupSpec::Symmetric(3));
        assert_eq!(dual_orbit_pairs_group(&s3, &c2, &[(0..6).collect()]).unwrap_err(), Error::NotAbelian);
    }
}
