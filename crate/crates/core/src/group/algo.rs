//! Structural algorithms on materialized groups.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::law::QuotientData;
use super::{FiniteGroup, Homomorphism, Law, Subgroup};
use crate::arith::{ipow, prime_divisors, valuation};
use crate::Result;

/// Conjugacy classes ordered by (element order, minimal representative).
#[derive(Debug, Clone)]
pub struct ClassPartition {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<u32>,
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }
}

pub fn conjugacy_classes(g: &FiniteGroup) -> ClassPartition {
    let n = g.order();
    let mut class_of = vec![u32::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        class_of[x] = id;
        let mut members = vec![x];
        let mut head = 0;
        while head < members.len() {
            let y = members[head];
            head += 1;
            for &s in g.generators() {
                let z = g.conj(y, s);
                if class_of[z] == u32::MAX {
                    class_of[z] = id;
                    members.push(z);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    let orders = g.element_orders();
    classes.sort_by_key(|c| (orders[c[0]], c[0]));
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = i as u32;
        }
    }
    ClassPartition { classes, class_of }
}

pub fn centralizer(g: &FiniteGroup, s: usize) -> Subgroup {
    let members = (0..g.order()).filter(|&x| g.mul(x, s) == g.mul(s, x)).collect();
    g.subgroup_from_members(members)
}

pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let members = (0..g.order())
        .filter(|&x| h.generators().iter().all(|&y| h.contains(g.conj(y, x))))
        .collect();
    g.subgroup_from_members(members)
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    g.generators()
        .iter()
        .all(|&s| h.generators().iter().all(|&y| h.contains(g.conj(y, s))))
}

/// Smallest normal subgroup containing `set`.
pub fn normal_closure(g: &FiniteGroup, set: &[usize]) -> Subgroup {
    let mut gens: Vec<usize> = set.to_vec();
    let mut sub = g.closure(&gens);
    loop {
        let extra: Vec<usize> = sub
            .generators()
            .iter()
            .flat_map(|&y| g.generators().iter().map(move |&s| (y, s)))
            .map(|(y, s)| g.conj(y, s))
            .filter(|&z| !sub.contains(z))
            .collect();
        if extra.is_empty() {
            return sub;
        }
        gens.push(extra[0]);
        sub = g.closure(&gens);
    }
}

/// Upper central series term `Z_k(G)`; `k = 0` is trivial.
pub fn center_series(g: &FiniteGroup, k: usize) -> Subgroup {
    let mut z = g.trivial_subgroup();
    for _ in 0..k {
        let members = (0..g.order())
            .filter(|&x| g.generators().iter().all(|&s| z.contains(g.commutator(x, s))))
            .collect();
        z = g.subgroup_from_members(members);
    }
    z
}

/// A Sylow `ell`-subgroup, grown one `ell`-element of the normalizer at a
/// time with a deterministic element scan.
pub fn sylow(g: &FiniteGroup, ell: u64) -> Subgroup {
    let n = g.order() as u64;
    let target = if n.is_multiple_of(ell) { ipow(ell, valuation(n, ell)) } else { 1 };
    let orders = g.element_orders();
    let is_ell_elem = |x: usize| {
        let mut o = orders[x] as u64;
        while o.is_multiple_of(ell) {
            o /= ell;
        }
        o == 1
    };
    let mut p = g.trivial_subgroup();
    let mut gens: Vec<usize> = Vec::new();
    while (p.order() as u64) < target {
        let x = (0..g.order())
            .find(|&x| {
                !p.contains(x)
                    && is_ell_elem(x)
                    && p.generators().iter().all(|&y| p.contains(g.conj(y, x)))
            })
            .expect("an ell-element normalizes a non-Sylow ell-subgroup");
        gens.push(x);
        p = g.closure(&gens);
    }
    p
}

/// `O^{ell'}(G)`: the subgroup generated by all `ell`-elements.
pub fn o_ellprime_residual(g: &FiniteGroup, ell: u64) -> Subgroup {
    let orders = g.element_orders();
    let mut gens = Vec::new();
    let mut sub = g.trivial_subgroup();
    for x in 0..g.order() {
        let o = orders[x] as u64;
        if o > 1 && ipow(ell, valuation(o, ell)) == o && !sub.contains(x) {
            gens.push(x);
            sub = g.closure(&gens);
        }
    }
    sub
}

pub fn derived_subgroup(g: &FiniteGroup) -> Subgroup {
    let gens = g.generators();
    let comms: Vec<usize> = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
        .map(|(a, b)| g.commutator(a, b))
        .collect();
    normal_closure(g, &comms)
}

/// Quotient `G/N` together with the coset index of each element of `G`.
pub fn quotient(g: &Arc<FiniteGroup>, n: &Subgroup, name: impl Into<String>) -> Result<FiniteGroup> {
    let size = g.order();
    let mut coset_of = vec![u32::MAX; size];
    let mut reps = Vec::new();
    for x in 0..size {
        if coset_of[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x as u32);
        for &m in n.members() {
            coset_of[g.mul(x, m)] = id;
        }
    }
    let k = reps.len();
    let unit = coset_of[g.identity()] as usize;
    let gens: Vec<usize> = {
        let mut v: Vec<usize> = g.generators().iter().map(|&s| coset_of[s] as usize).filter(|&c| c != unit).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let data = Arc::new(QuotientData { parent: Arc::clone(g), coset_of, reps });
    let codes = (0..k as i64).map(|i| vec![i]).collect();
    FiniteGroup::from_sorted_codes(name, Law::Quotient(data), codes, Some(gens))
}

/// Invariant factors `d_1 | d_2 | ...` of an abelian group (trivial factors
/// omitted).
pub fn abelian_invariants(g: &FiniteGroup) -> Vec<u64> {
    let n = g.order() as u64;
    let orders = g.element_orders();
    let mut primary: Vec<Vec<u64>> = Vec::new();
    for p in prime_divisors(n) {
        // s_i = log_p #{x : x^(p^i) = 1}
        let e = valuation(n, p);
        let mut s = vec![0u32];
        for i in 1..=e {
            let pi = ipow(p, i);
            let count = orders.iter().filter(|&&o| pi.is_multiple_of(o as u64)).count() as u64;
            s.push(valuation(count, p));
        }
        // number of cyclic factors of order >= p^i
        let ge: Vec<u32> = (1..=e as usize).map(|i| s[i] - s[i - 1]).collect();
        let mut parts = Vec::new();
        for i in 0..ge.len() {
            let next = ge.get(i + 1).copied().unwrap_or(0);
            for _ in 0..ge[i] - next {
                parts.push(ipow(p, i as u32 + 1));
            }
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        primary.push(parts);
    }
    let count = primary.iter().map(Vec::len).max().unwrap_or(0);
    let mut inv: Vec<u64> = (0..count)
        .map(|i| primary.iter().map(|ps| ps.get(i).copied().unwrap_or(1)).product())
        .collect();
    inv.reverse();
    inv
}

#[derive(Debug)]
pub struct Abelianization {
    pub invariants: Vec<u64>,
    pub projection: Homomorphism,
}

pub fn abelianization(g: &Arc<FiniteGroup>) -> Result<Abelianization> {
    let d = derived_subgroup(g);
    let q = Arc::new(quotient(g, &d, format!("{}^ab", g.name()))?);
    let invariants = abelian_invariants(&q);
    let images: Vec<usize> = match q.law() {
        Law::Quotient(data) => g.generators().iter().map(|&s| data.coset_of[s] as usize).collect(),
        _ => unreachable!(),
    };
    let projection = Homomorphism::from_generator_images(Arc::clone(g), q, &images)?;
    Ok(Abelianization { invariants, projection })
}

/// Every normal subgroup, found as joins of normal closures of single
/// elements. Ordered by (order, members).
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let classes = conjugacy_classes(g);
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut basic = Vec::new();
    for c in 0..classes.len() {
        let s = normal_closure(g, &[classes.rep(c)]);
        if found.insert(s.members().to_vec()) {
            basic.push(s);
        }
    }
    let mut all: Vec<Subgroup> = basic.clone();
    let mut frontier = basic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for b in &basic {
                if b.is_subgroup_of(a) {
                    continue;
                }
                let gens: Vec<usize> = a.generators().iter().chain(b.generators()).copied().collect();
                let j = g.closure(&gens);
                if found.insert(j.members().to_vec()) {
                    next.push(j.clone());
                    all.push(j);
                }
            }
        }
        frontier = next;
    }
    all.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
    all
}

/// A complement to the normal subgroup `n` in `g`, searched over lifts of
/// a generating set of `g/n`. `None` when no complement exists or the search
/// space exceeds `max_tries`.
pub fn find_complement(g: &FiniteGroup, n: &Subgroup, max_tries: usize) -> Option<Subgroup> {
    let index = g.order() / n.order();
    if index == 1 {
        return Some(g.trivial_subgroup());
    }
    // coset representatives generating g modulo n
    let mut tops: Vec<usize> = Vec::new();
    let mut span = n.clone();
    for x in 0..g.order() {
        if span.order() == g.order() {
            break;
        }
        if !span.contains(x) {
            tops.push(x);
            let gens: Vec<usize> = n.generators().iter().chain(&tops).copied().collect();
            span = g.closure(&gens);
        }
    }
    let nm = n.members();
    let k = tops.len();
    let total = (nm.len() as u128).saturating_pow(k as u32);
    if total > max_tries as u128 {
        return None;
    }
    let mut choice = vec![0usize; k];
    loop {
        let lifts: Vec<usize> = (0..k).map(|i| g.mul(nm[choice[i]], tops[i])).collect();
        let c = g.closure(&lifts);
        if c.order() == index && c.members().iter().filter(|&&m| n.contains(m)).count() == 1 {
            return Some(c);
        }
        let mut i = 0;
        loop {
            if i == k {
                return None;
            }
            choice[i] += 1;
            if choice[i] < nm.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    fn grp(s: GroupSpec) -> Arc<FiniteGroup> {
        Arc::new(build_group(&s).unwrap())
    }

    #[test]
    fn class_counts() {
        assert_eq!(conjugacy_classes(&grp(GroupSpec::Cyclic(3))).len(), 3);
        assert_eq!(conjugacy_classes(&grp(GroupSpec::Symmetric(5))).len(), 7);
        assert_eq!(conjugacy_classes(&grp(GroupSpec::Sl2(5))).len(), 9);
    }

    #[test]
    fn class_sizes_sum_to_order() {
        let g = grp(GroupSpec::Gl2(3));
        let cp = conjugacy_classes(&g);
        assert_eq!(cp.classes.iter().map(Vec::len).sum::<usize>(), g.order());
        assert_eq!(cp.rep(0), g.identity());
    }

    #[test]
    fn normalizer_and_centralizer() {
        let s5 = grp(GroupSpec::Symmetric(5));
        let c5 = s5.closure(&[s5.index_of(&[1, 2, 3, 4, 0]).unwrap()]);
        assert_eq!(normalizer(&s5, &c5).order(), 20);
        let s3 = grp(GroupSpec::Symmetric(3));
        let c = s3.index_of(&[1, 2, 0]).unwrap();
        assert_eq!(centralizer(&s3, c).order(), 3);
        assert_eq!(normalizer(&s3, &s3.whole()).order(), 6);
    }

    #[test]
    fn sylow_orders() {
        assert_eq!(sylow(&grp(GroupSpec::Gl2(3)), 3).order(), 3);
        assert_eq!(sylow(&grp(GroupSpec::Symmetric(5)), 5).order(), 5);
        assert_eq!(sylow(&grp(GroupSpec::Symmetric(5)), 2).order(), 8);
        assert_eq!(sylow(&grp(GroupSpec::Cyclic(12)), 2).order(), 4);
        assert_eq!(sylow(&grp(GroupSpec::Cyclic(12)), 5).order(), 1);
    }

    #[test]
    fn residuals() {
        assert_eq!(o_ellprime_residual(&grp(GroupSpec::Gl2(3)), 3).order(), 24);
        assert_eq!(o_ellprime_residual(&grp(GroupSpec::Cyclic(4)), 3).order(), 1);
        let g = grp(GroupSpec::Direct(vec![GroupSpec::Cyclic(2), GroupSpec::Sl2(5)]));
        assert_eq!(o_ellprime_residual(&g, 5).order(), 120);
    }

    #[test]
    fn residual_is_minimal_among_normal_subgroups() {
        for (s, ell) in [(GroupSpec::Symmetric(4), 3u64), (GroupSpec::Gl2(3), 3), (GroupSpec::Frobenius { ell: 5, d: 4 }, 5)] {
            let g = grp(s);
            let r = o_ellprime_residual(&g, ell);
            assert!(is_normal(&g, &r));
            assert_eq!(valuation((g.order() / r.order()) as u64 * ell, ell), 1);
            for n in normal_subgroups(&g) {
                if !((g.order() / n.order()) as u64).is_multiple_of(ell) {
                    assert!(r.is_subgroup_of(&n));
                }
            }
        }
    }

    #[test]
    fn centers() {
        let c6 = grp(GroupSpec::Cyclic(6));
        assert_eq!(center_series(&c6, 1).order(), 6);
        let heis = grp(GroupSpec::Matrix {
            modulus: 3,
            generators: vec![
                vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]],
                vec![vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 1]],
            ],
        });
        assert_eq!(heis.order(), 27);
        assert_eq!(center_series(&heis, 1).order(), 3);
        assert_eq!(center_series(&heis, 2).order(), 27);
        let s4 = grp(GroupSpec::Symmetric(4));
        assert_eq!(center_series(&s4, 2).order(), 1);
    }

    #[test]
    fn abelianizations() {
        let sl = grp(GroupSpec::Sl2(3));
        assert_eq!(abelianization(&sl).unwrap().invariants, vec![3]);
        let ab = grp(GroupSpec::Direct(vec![GroupSpec::Cyclic(2), GroupSpec::Cyclic(6)]));
        assert_eq!(abelianization(&ab).unwrap().invariants, vec![2, 6]);
        let s4 = grp(GroupSpec::Symmetric(4));
        let a = abelianization(&s4).unwrap();
        assert_eq!(a.invariants, vec![2]);
        assert!(a.projection.is_surjective());
    }

    #[test]
    fn normal_subgroup_lattice_of_s4() {
        let s4 = grp(GroupSpec::Symmetric(4));
        let orders: Vec<usize> = normal_subgroups(&s4).iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }

    #[test]
    fn complements() {
        let s4 = grp(GroupSpec::Symmetric(4));
        let v4 = normal_subgroups(&s4).into_iter().find(|n| n.order() == 4).unwrap();
        let k = find_complement(&s4, &v4, 10_000).unwrap();
        assert_eq!(k.order(), 6);
        let q8 = grp(GroupSpec::Matrix {
            modulus: 3,
            generators: vec![vec![vec![0, 2], vec![1, 0]], vec![vec![1, 1], vec![1, 2]]],
        });
        assert_eq!(q8.order(), 8);
        let z = center_series(&q8, 1);
        assert!(find_complement(&q8, &z, 10_000).is_none());
    }
}
