//! Exact ordinary character tables and the counts derived from them.

mod counts;
mod dixon;

use serde_json::{json, Value};

use crate::arith::{gcd, is_prime, mod_pow, primitive_root, valuation};
use crate::cyclotomic::CyclotomicField;
use crate::group::{BuildConfig, FiniteGroup};
use crate::{Error, Result};

pub use counts::{
    dual_orbit_pairs, dual_orbit_pairs_group, irr0_count, little_groups_count, verify_thev, z_count, DualAction,
};

/// Values are stored as power-basis coordinates in `Q(zeta_e)` with
/// `e = basis_order`, the exponent of the group.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub group_order: u64,
    pub basis_order: u64,
    pub class_reps: Vec<usize>,
    pub class_sizes: Vec<u64>,
    pub class_orders: Vec<u64>,
    pub inverse_class: Vec<usize>,
    pub degrees: Vec<u64>,
    /// `values[chi][class]`.
    pub values: Vec<Vec<Vec<i64>>>,
    /// The prime whose residue field produced the split, `0` when the
    /// table was built directly from an abelian group.
    pub prime: u64,
    field: CyclotomicField,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectProfile {
    pub ell: u64,
    pub group_valuation: u32,
    pub degree_valuations: Vec<u32>,
    pub defects: Vec<u32>,
}

impl DefectProfile {
    pub fn defect_zero(&self) -> usize {
        self.defects.iter().filter(|&&d| d == 0).count()
    }

    pub fn ell_prime_degree(&self) -> usize {
        self.degree_valuations.iter().filter(|&&v| v == 0).count()
    }
}

/// Builds the table of `g`, rejecting groups above the configured budget.
pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable> {
    character_table_with(g, &BuildConfig::default())
}

pub fn character_table_with(g: &FiniteGroup, cfg: &BuildConfig) -> Result<CharacterTable> {
    if g.order() > cfg.budget {
        return Err(Error::BudgetExceeded { budget: cfg.budget });
    }
    let t = dixon::compute(g)?;
    t.check_invariants().map_err(Error::TableFailed)?;
    Ok(t)
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn value(&self, chi: usize, class: usize) -> &[i64] {
        &self.values[chi][class]
    }

    /// Degree ascending, then values descending, so the trivial character
    /// comes first.
    pub(crate) fn sort_characters(&mut self) {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| {
            self.degrees[a].cmp(&self.degrees[b]).then_with(|| self.values[b].cmp(&self.values[a]))
        });
        self.degrees = idx.iter().map(|&i| self.degrees[i]).collect();
        self.values = idx.iter().map(|&i| self.values[i].clone()).collect();
    }

    /// `sum_g chi(g) conj(psi(g))`, exactly.
    pub fn inner_product_times_order(&self, chi: usize, psi: usize) -> Vec<i64> {
        let f = &self.field;
        let mut acc = f.zero();
        for c in 0..self.class_reps.len() {
            let term = f.mul(&self.values[chi][c], &self.values[psi][self.inverse_class[c]]);
            acc = f.add(&acc, &f.scale(&term, self.class_sizes[c] as i64));
        }
        acc
    }

    /// Exact row and column orthogonality, degree sum of squares, degree
    /// divisibility, first column equal to the degrees.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let r = self.class_reps.len();
        let f = &self.field;
        if self.len() != r {
            return Err(format!("{} characters for {r} classes", self.len()));
        }
        if self.class_orders.first() != Some(&1) {
            return Err("first class is not the identity".into());
        }
        let sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sq != self.group_order {
            return Err(format!("sum of squared degrees {sq} != {}", self.group_order));
        }
        for (i, &d) in self.degrees.iter().enumerate() {
            if !self.group_order.is_multiple_of(d) {
                return Err(format!("degree {d} does not divide the order"));
            }
            if f.as_integer(&self.values[i][0]) != Some(d as i64) {
                return Err("first column differs from the degrees".into());
            }
        }
        match self.orthogonality_mod_p() {
            Some(res) => res,
            None => self.orthogonality_exact(),
        }
    }

    fn orthogonality_exact(&self) -> std::result::Result<(), String> {
        let r = self.class_reps.len();
        let f = &self.field;
        for a in 0..r {
            for b in a..r {
                let ip = self.inner_product_times_order(a, b);
                let want = if a == b { self.group_order as i64 } else { 0 };
                if f.as_integer(&ip) != Some(want) {
                    return Err(format!("row orthogonality fails for characters {a}, {b}"));
                }
            }
        }
        for c1 in 0..r {
            for c2 in c1..r {
                let mut acc = f.zero();
                for chi in 0..r {
                    acc = f.add(&acc, &f.mul(&self.values[chi][c1], &self.values[chi][self.inverse_class[c2]]));
                }
                let want = if c1 == c2 { (self.group_order / self.class_sizes[c1]) as i64 } else { 0 };
                if f.as_integer(&acc) != Some(want) {
                    return Err(format!("column orthogonality fails for classes {c1}, {c2}"));
                }
            }
        }
        Ok(())
    }

    /// Row and column orthogonality through the `phi(e)` embeddings of
    /// `Z[zeta]` into `F_p` for a prime `p = 1 mod e`. Exact: every sum checked
    /// has power-basis coefficients below `p/2` in absolute value, and
    /// `F_p[x]/Phi_e` is a product of copies of `F_p`, so a sum vanishes mod
    /// every embedding only if it is zero. `None` when no such `p` below
    /// `2^26` is available.
    fn orthogonality_mod_p(&self) -> Option<std::result::Result<(), String>> {
        let r = self.class_reps.len();
        let e = self.basis_order;
        let d = self.field.degree();
        let l1 = self.values.iter().flatten().map(|v| v.iter().map(|x| x.unsigned_abs()).sum::<u64>()).max()?;
        let m = self.field.power_bound().unsigned_abs();
        let terms = self.group_order.max(r as u64);
        let bound = terms.checked_mul(l1)?.checked_mul(l1)?.checked_mul(m.max(1))?.checked_add(self.group_order)?;
        let floor = (bound.checked_mul(2)? + 1).max(1 << 16);
        if floor >= 1 << 26 {
            return None;
        }
        let mut p = (floor / e + 1) * e + 1;
        while !is_prime(p) {
            p += e;
        }
        let z = mod_pow(primitive_root(p), (p - 1) / e, p);
        let points: Vec<u64> = (1..=e).filter(|&j| gcd(j, e) == 1).map(|j| mod_pow(z, j, p)).collect();
        debug_assert_eq!(points.len(), d);
        // pw[i][t] = points[t]^i
        let mut pw = vec![vec![1u64; d]; d];
        for i in 1..d {
            for t in 0..d {
                pw[i][t] = pw[i - 1][t] * points[t] % p;
            }
        }
        let ev: Vec<Vec<Vec<u64>>> = self
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        let mut out = vec![0u64; d];
                        for (i, &c) in v.iter().enumerate() {
                            if c != 0 {
                                let c = c.rem_euclid(p as i64) as u64;
                                for (o, &x) in out.iter_mut().zip(&pw[i]) {
                                    *o = (*o + c * x) % p;
                                }
                            }
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        // products stay below 2^52, so 2^11 of them fit in a u64 before reducing
        let dot = |xs: &mut dyn Iterator<Item = (u64, u64)>| -> u64 {
            let mut acc = 0u64;
            for (k, (x, y)) in xs.enumerate() {
                acc += x * y;
                if k % 2048 == 2047 {
                    acc %= p;
                }
            }
            acc % p
        };
        for a in 0..r {
            let weighted: Vec<Vec<u64>> =
                (0..r).map(|c| ev[a][c].iter().map(|&x| x * (self.class_sizes[c] % p) % p).collect()).collect();
            for b in a..r {
                let want = if a == b { self.group_order % p } else { 0 };
                for t in 0..d {
                    let got = dot(&mut (0..r).map(|c| (weighted[c][t], ev[b][self.inverse_class[c]][t])));
                    if got != want {
                        return Some(Err(format!("row orthogonality fails for characters {a}, {b}")));
                    }
                }
            }
        }
        for c1 in 0..r {
            for c2 in c1..r {
                let want = if c1 == c2 { self.group_order / self.class_sizes[c1] % p } else { 0 };
                let ic2 = self.inverse_class[c2];
                for t in 0..d {
                    if dot(&mut (0..r).map(|chi| (ev[chi][c1][t], ev[chi][ic2][t]))) != want {
                        return Some(Err(format!("column orthogonality fails for classes {c1}, {c2}")));
                    }
                }
            }
        }
        Some(Ok(()))
    }

    /// Multiplicities `|G| <f, chi>` of an integer-valued class function.
    pub fn decompose_times_order(&self, f_vals: &[i64]) -> Option<Vec<i64>> {
        let f = &self.field;
        (0..self.len())
            .map(|chi| {
                let mut acc = f.zero();
                for c in 0..self.class_reps.len() {
                    let term = f.scale(&self.values[chi][self.inverse_class[c]], f_vals[c] * self.class_sizes[c] as i64);
                    acc = f.add(&acc, &term);
                }
                f.as_integer(&acc)
            })
            .collect()
    }

    /// Cross-checks the table against two permutation characters computed
    /// from the elements of `g`: the regular one must contain each `chi`
    /// exactly `chi(1)` times, and the conjugation one must decompose into
    /// non-negative integers with the trivial character `k(G)` times.
    pub fn permutation_oracle(&self, g: &FiniteGroup) -> std::result::Result<(), String> {
        let order = self.group_order as i64;
        let regular: Vec<i64> =
            self.class_reps.iter().map(|&x| if x == g.identity() { order } else { 0 }).collect();
        let m = self.decompose_times_order(&regular).ok_or("regular character is not rational")?;
        for (chi, (&mult, &d)) in m.iter().zip(&self.degrees).enumerate() {
            if mult != order * d as i64 {
                return Err(format!("regular character contains character {chi} {} times", mult / order));
            }
        }
        let conj: Vec<i64> = self
            .class_reps
            .iter()
            .map(|&x| (0..g.order()).filter(|&y| g.mul(x, y) == g.mul(y, x)).count() as i64)
            .collect();
        let m = self.decompose_times_order(&conj).ok_or("conjugation character is not rational")?;
        if m.iter().any(|&v| v < 0 || v % order != 0) {
            return Err("conjugation character has a non-integral multiplicity".into());
        }
        if m[0] != order * self.len() as i64 {
            return Err("trivial multiplicity in the conjugation character is not the class count".into());
        }
        Ok(())
    }

    pub fn defect_profile(&self, ell: u64) -> DefectProfile {
        let gv = valuation(self.group_order, ell);
        let degree_valuations: Vec<u32> = self.degrees.iter().map(|&d| valuation(d, ell)).collect();
        let defects = degree_valuations.iter().map(|&v| gv - v).collect();
        DefectProfile { ell, group_valuation: gv, degree_valuations, defects }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.group_order,
            "basis_order": self.basis_order,
            "basis": "power basis 1, z, z^2, ... of Q(z), z = exp(2 pi i / basis_order)",
            "classes": (0..self.class_reps.len()).map(|c| json!({
                "size": self.class_sizes[c],
                "element_order": self.class_orders[c],
            })).collect::<Vec<_>>(),
            "degrees": self.degrees,
            "values": self.values,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    fn table(s: GroupSpec) -> CharacterTable {
        character_table(&build_group(&s).unwrap()).unwrap()
    }

    #[test]
    fn small_degree_lists() {
        assert_eq!(table(GroupSpec::Cyclic(3)).degrees, vec![1, 1, 1]);
        assert_eq!(table(GroupSpec::Symmetric(3)).degrees, vec![1, 1, 2]);
        assert_eq!(table(GroupSpec::Sl2(3)).degrees, vec![1, 1, 1, 2, 2, 2, 3]);
        assert_eq!(table(GroupSpec::Symmetric(5)).degrees, vec![1, 1, 4, 4, 5, 5, 6]);
        assert_eq!(table(GroupSpec::Alternating(5)).degrees, vec![1, 3, 3, 4, 5]);
    }

    #[test]
    fn trivial_character_first() {
        let t = table(GroupSpec::Symmetric(4));
        let f = t.field();
        assert!(t.values[0].iter().all(|v| f.as_integer(v) == Some(1)));
    }

    #[test]
    fn defect_profile_of_sl2_3() {
        let p = table(GroupSpec::Sl2(3)).defect_profile(3);
        assert_eq!(p.group_valuation, 1);
        assert_eq!(p.defect_zero(), 1);
        assert_eq!(p.ell_prime_degree(), 6);
    }

    #[test]
    fn permutation_oracle_agrees() {
        for s in [GroupSpec::Symmetric(4), GroupSpec::Dihedral(10), GroupSpec::Sl2(3), GroupSpec::Frobenius { ell: 7, d: 3 }] {
            let g = build_group(&s).unwrap();
            character_table(&g).unwrap().permutation_oracle(&g).unwrap();
        }
    }

    #[test]
    fn both_orthogonality_checks_agree() {
        for s in [GroupSpec::Sl2(5), GroupSpec::Cyclic(12), GroupSpec::Frobenius { ell: 7, d: 6 }] {
            let mut t = table(s);
            assert_eq!(t.orthogonality_mod_p(), Some(Ok(())));
            assert_eq!(t.orthogonality_exact(), Ok(()));
            // swap a value between two characters on a non-identity class
            let last = t.len() - 1;
            let tmp = t.values[1][1].clone();
            t.values[1][1] = t.values[last][1].clone();
            t.values[last][1] = tmp;
            if t.values[1][1] != t.values[last][1] {
                assert!(t.orthogonality_mod_p().unwrap().is_err());
                assert!(t.orthogonality_exact().is_err());
            }
        }
    }

    #[test]
    fn budget_respected() {
        let g = build_group(&GroupSpec::Symmetric(5)).unwrap();
        let err = character_table_with(&g, &BuildConfig { budget: 100 }).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 100 });
    }
}
