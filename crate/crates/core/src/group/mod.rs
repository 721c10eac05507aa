//! Fully materialized finite groups.
//!
//! A [`FiniteGroup`] owns its element list in canonical (lexicographically
//! sorted) encoding order, so element indices are reproducible across runs.
//! All algorithms work on indices.

mod algo;
mod hom;
mod law;
mod spec;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

pub use algo::{
    abelian_invariants, abelianization, center_series, centralizer, conjugacy_classes,
    derived_subgroup, find_complement, is_normal, normal_closure, normal_subgroups, normalizer,
    o_ellprime_residual, quotient, sylow, Abelianization, ClassPartition,
};
pub use hom::{canonical_cyclic_quotient, cyclic_group, direct_product, fiber_product, FiberProduct, Homomorphism};
pub use law::{determinant, mat_mul, Code, Law, QuotientData, SemidirectData};
pub use spec::{build_group, build_group_with, BuildConfig, GroupSpec, Word, DEFAULT_BUDGET};

use crate::{Error, Result};

/// Groups up to this order cache a full multiplication table.
const TABLE_LIMIT: usize = 1024;

pub struct FiniteGroup {
    name: String,
    law: Law,
    elems: Vec<Code>,
    index: HashMap<Code, u32>,
    gens: Vec<usize>,
    identity: usize,
    inverse: Vec<u32>,
    table: Option<Vec<u32>>,
    orders: OnceLock<Vec<u32>>,
    spec: Option<GroupSpec>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order())
            .field("generators", &self.gens.len())
            .finish()
    }
}

impl FiniteGroup {
    /// Breadth-first closure of `generators` under `law`.
    pub fn generate(name: impl Into<String>, law: Law, generators: Vec<Code>, budget: usize) -> Result<Self> {
        for g in &generators {
            law.check_code(g)?;
        }
        let id = law.identity();
        let mut seen: HashMap<Code, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = law.mul(&x, g);
                if !seen.contains_key(&y) {
                    if let Law::Mat { modulus: 0, .. } = law {
                        law.check_code(&y)?;
                    }
                    if seen.len() >= budget {
                        return Err(Error::BudgetExceeded { budget });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let mut codes: Vec<Code> = seen.into_keys().collect();
        codes.sort();
        let index: HashMap<Code, u32> =
            codes.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect();
        let mut gens: Vec<usize> = generators.iter().map(|g| index[g] as usize).collect();
        let id_idx = index[&law.identity()] as usize;
        gens.retain(|&g| g != id_idx);
        gens.dedup();
        Self::assemble(name.into(), law, codes, index, gens)
    }

    /// Builds a group from an already closed, sorted list of encodings.
    /// When `gens` is `None` a generating set is chosen greedily.
    pub fn from_sorted_codes(
        name: impl Into<String>,
        law: Law,
        codes: Vec<Code>,
        gens: Option<Vec<usize>>,
    ) -> Result<Self> {
        debug_assert!(codes.windows(2).all(|w| w[0] < w[1]));
        let index: HashMap<Code, u32> =
            codes.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect();
        if !index.contains_key(&law.identity()) {
            return Err(Error::MalformedSpec("element list lacks the identity".into()));
        }
        let mut g = Self::assemble(name.into(), law, codes, index, gens.clone().unwrap_or_default())?;
        if gens.is_none() {
            let all: Vec<usize> = (0..g.order()).collect();
            g.gens = g.greedy_generators(&all);
        }
        Ok(g)
    }

    fn assemble(
        name: String,
        law: Law,
        elems: Vec<Code>,
        index: HashMap<Code, u32>,
        gens: Vec<usize>,
    ) -> Result<Self> {
        let identity = index[&law.identity()] as usize;
        let mut inverse = Vec::with_capacity(elems.len());
        for c in &elems {
            let ic = law.inv(c)?;
            let i = *index
                .get(&ic)
                .ok_or_else(|| Error::MalformedSpec("element list not closed under inversion".into()))?;
            inverse.push(i);
        }
        let mut g = FiniteGroup {
            name,
            law,
            elems,
            index,
            gens,
            identity,
            inverse,
            table: None,
            orders: OnceLock::new(),
            spec: None,
        };
        let n = g.order();
        if n <= TABLE_LIMIT {
            let mut table = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    let c = g.law.mul(&g.elems[a], &g.elems[b]);
                    let idx = *g
                        .index
                        .get(&c)
                        .ok_or_else(|| Error::MalformedSpec("element list not closed".into()))?;
                    table.push(idx);
                }
            }
            g.table = Some(table);
        }
        Ok(g)
    }

    pub(crate) fn set_spec(&mut self, spec: GroupSpec) {
        self.spec = Some(spec);
    }

    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rename(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn law(&self) -> &Law {
        &self.law
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn elem(&self, i: usize) -> &Code {
        &self.elems[i]
    }

    pub fn elements(&self) -> &[Code] {
        &self.elems
    }

    pub fn index_of(&self, code: &[i64]) -> Option<usize> {
        self.index.get(code).map(|&i| i as usize)
    }

    pub fn require(&self, code: &[i64]) -> Result<usize> {
        self.index_of(code).ok_or(Error::ElementNotInGroup)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elems.len() + b] as usize,
            None => {
                let c = self.law.mul(&self.elems[a], &self.elems[b]);
                self.index[&c] as usize
            }
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g^-1 x g`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `x^-1 y^-1 x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = self.identity;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_orders(&self) -> &[u32] {
        self.orders.get_or_init(|| {
            let n = self.order();
            let mut orders = vec![0u32; n];
            for a in 0..n {
                if orders[a] != 0 {
                    continue;
                }
                let mut cycle = vec![a];
                let mut x = a;
                while x != self.identity {
                    x = self.mul(x, a);
                    cycle.push(x);
                }
                let o = cycle.len() as u32;
                // a^k has order o / gcd(o, k)
                for (k, &y) in cycle.iter().enumerate() {
                    if orders[y] == 0 {
                        let k1 = k as u64 + 1;
                        orders[y] = (o as u64 / crate::arith::gcd(o as u64, k1)) as u32;
                    }
                }
            }
            orders
        })
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.element_orders()[a] as u64
    }

    pub fn exponent(&self) -> u64 {
        self.element_orders()
            .iter()
            .fold(1, |acc, &o| crate::arith::lcm(acc, o as u64))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gens;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let n = self.order();
        let mut mask = vec![false; n];
        mask[self.identity] = true;
        let mut members = vec![self.identity];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        let mut gens: Vec<usize> = gens.iter().copied().filter(|&g| g != self.identity).collect();
        gens.sort_unstable();
        gens.dedup();
        Subgroup { members, mask, gens }
    }

    /// Wraps a member set already known to be a subgroup.
    pub fn subgroup_from_members(&self, mut members: Vec<usize>) -> Subgroup {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; self.order()];
        for &m in &members {
            mask[m] = true;
        }
        let gens = self.greedy_generators(&members);
        Subgroup { members, mask, gens }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order()).collect(),
            mask: vec![true; self.order()],
            gens: self.gens.clone(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.closure(&[])
    }

    fn greedy_generators(&self, members: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.closure(&[]);
        for &m in members {
            if current.members.len() == members.len() {
                break;
            }
            if !current.contains(m) {
                gens.push(m);
                current = self.closure(&gens);
            }
        }
        gens
    }

    /// Materializes a subgroup as a group in its own right, sharing the law.
    pub fn subgroup_group(&self, sub: &Subgroup, name: impl Into<String>) -> Result<FiniteGroup> {
        let codes: Vec<Code> = sub.members.iter().map(|&i| self.elems[i].clone()).collect();
        let pos: HashMap<usize, usize> =
            sub.members.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let gens = sub.gens.iter().map(|g| pos[g]).collect();
        FiniteGroup::from_sorted_codes(name, self.law.clone(), codes, Some(gens))
    }

    /// Indices in `self` of the elements of a group sharing this law.
    pub fn embed(&self, other: &FiniteGroup) -> Result<Vec<usize>> {
        other.elems.iter().map(|c| self.require(c)).collect()
    }
}

/// A subgroup of some parent [`FiniteGroup`], stored as a sorted index set
/// into the parent plus a generating list. Operations that need the parent
/// take it as an argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
    gens: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// Re-checks closure under the parent law by a full scan.
    pub fn is_closed_in(&self, parent: &FiniteGroup) -> bool {
        self.contains(parent.identity())
            && self.members.iter().all(|&a| {
                self.contains(parent.inv(a))
                    && self.gens.iter().all(|&g| self.contains(parent.mul(a, g)))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_symmetric_generators() {
        let g = FiniteGroup::generate(
            "S4",
            Law::Perm(4),
            vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]],
            1000,
        )
        .unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.exponent(), 12);
        assert!(!g.is_abelian());
        let h = g.closure(&[g.index_of(&[1, 2, 3, 0]).unwrap()]);
        assert_eq!(h.order(), 4);
        assert!(h.is_closed_in(&g));
    }

    #[test]
    fn budget_guard() {
        let err = FiniteGroup::generate(
            "S6",
            Law::Perm(6),
            vec![vec![1, 0, 2, 3, 4, 5], vec![1, 2, 3, 4, 5, 0]],
            100,
        )
        .unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 100 });
    }

    #[test]
    fn infinite_integer_matrix_group_rejected() {
        let err = FiniteGroup::generate(
            "shear",
            Law::Mat { dim: 2, modulus: 0 },
            vec![vec![1, 1, 0, 1]],
            1 << 20,
        )
        .unwrap_err();
        assert!(matches!(err, Error::MalformedSpec(_) | Error::BudgetExceeded { .. }));
    }

    #[test]
    fn determinism_of_element_order() {
        let mk = || {
            FiniteGroup::generate(
                "S4",
                Law::Perm(4),
                vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]],
                1000,
            )
            .unwrap()
        };
        assert_eq!(mk().elements(), mk().elements());
    }
}
