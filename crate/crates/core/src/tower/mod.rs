//! Finite levels `S_n = T_n x| <x>` of a discrete `l`-toral group, where
//! `T_n = (Z/l^n)^r` and `x` acts through `u`.
//!
//! Levels are always available in linear-algebra form. Small levels are
//! also materialized as groups of affine matrices `[[u^k, t], [0, 1]]` so
//! the linear-algebra answers can be cross-checked.

mod counts;
mod subgroups;

use std::sync::Arc;

use crate::arith::ipow;
use crate::families::{ActionSpec, FusionFamilySpec, WeylGroup};
use crate::group::{abelianization, center_series, BuildConfig, Code, FiniteGroup, Law};
use crate::lattice::{snf, ModMatrix, Snf};
use crate::{Error, Result};

pub use counts::{m_count, r_count, verify_am, LevelCounts};
pub use subgroups::{connectivity_check, subgroup_reps, SubgroupRep};

/// Levels whose `S_n` has at most this many elements are materialized.
pub const MATERIALIZE_LIMIT: usize = 20_000;

/// The torus part of a level.
#[derive(Debug, Clone)]
pub struct TorusLevel {
    pub n: u32,
    pub ell: u64,
    pub rank: usize,
    pub modulus: i64,
    pub weyl: WeylGroup,
    pub u: ModMatrix,
    pub w_generators: Vec<ModMatrix>,
    /// Order of the kernel of `W -> GL_r(Z/l^n)`.
    pub reduction_kernel_order: usize,
    /// Smith form of `u - 1`.
    pub u_minus_1: Snf,
    /// Smith form of `(u - 1)^2`.
    pub u_minus_1_sq: Snf,
}

impl TorusLevel {
    pub fn faithful(&self) -> bool {
        self.reduction_kernel_order == 1
    }

    /// `log_l |T_n|`.
    pub fn t_log_order(&self) -> u32 {
        self.rank as u32 * self.n
    }

    pub fn w_matrix(&self, w: usize) -> ModMatrix {
        self.weyl.matrix_mod(w, self.modulus)
    }

    /// `Z(S_n) = ker(u - 1)`.
    pub fn center(&self) -> Vec<Vec<i64>> {
        self.u_minus_1.kernel_elements()
    }

    /// `Z_2(S_n) ∩ T_n = ker((u - 1)^2)`.
    pub fn second_center_t(&self) -> Vec<Vec<i64>> {
        self.u_minus_1_sq.kernel_elements()
    }

    /// Whether `x` lies in `Z_2(S_n)`, i.e. `(u - 1)^2 = 0` on `T_n`.
    pub fn x_in_second_center(&self) -> bool {
        self.u_minus_1_sq.kernel_order() == ipow(self.ell, self.t_log_order())
    }

    pub fn second_center_order(&self) -> u64 {
        self.u_minus_1_sq.kernel_order() * if self.x_in_second_center() { self.ell } else { 1 }
    }

    /// Invariants of `S_n^ab = T_n/(u-1)T_n x C_l`, ascending.
    pub fn abelianization_invariants(&self) -> Vec<u64> {
        let mut v = self.u_minus_1.cokernel_invariants();
        v.push(self.ell);
        v.sort_unstable();
        v
    }

    pub fn in_commutator(&self, t: &[i64]) -> bool {
        self.u_minus_1.in_image(t)
    }

    /// Affine encoding of `(t, x^k)`.
    pub fn affine(&self, t: &[i64], k: u64) -> Code {
        let r = self.rank;
        let uk = self.u.pow(k % self.ell);
        let mut c = vec![0; (r + 1) * (r + 1)];
        for i in 0..r {
            for j in 0..r {
                c[i * (r + 1) + j] = uk.get(i, j);
            }
            c[i * (r + 1) + r] = t[i].rem_euclid(self.modulus);
        }
        c[r * (r + 1) + r] = 1;
        c
    }

    /// Inverse of [`TorusLevel::affine`].
    pub fn split(&self, c: &[i64]) -> (Vec<i64>, u64) {
        let r = self.rank;
        let t = (0..r).map(|i| c[i * (r + 1) + r]).collect();
        let mut p = ModMatrix::identity(r, self.modulus);
        for k in 0..self.ell {
            let same = (0..r).all(|i| (0..r).all(|j| p.get(i, j) == c[i * (r + 1) + j]));
            if same {
                return (t, k);
            }
            p = p.mul(&self.u);
        }
        panic!("not an element of S_n");
    }

    pub fn affine_law(&self) -> Law {
        Law::Mat { dim: self.rank + 1, modulus: self.modulus as u64 }
    }
}

pub fn torus_level(action: &ActionSpec, n: u32) -> Result<TorusLevel> {
    if n == 0 {
        return Err(Error::LevelTooSmall { n, reason: "levels start at 1".into() });
    }
    let weyl = action.weyl()?;
    let ell = action.ell;
    let m = ipow(ell, n);
    if m > (1 << 31) {
        return Err(Error::MalformedSpec(format!("modulus {ell}^{n} too large")));
    }
    let m = m as i64;
    let r = action.rank;
    let u = weyl.matrix_mod(weyl.u, m);
    let w_generators = weyl.group.generators().iter().map(|&g| weyl.matrix_mod(g, m)).collect();
    let reduction_kernel_order = (0..weyl.group.order()).filter(|&w| weyl.matrix_mod(w, m).is_identity()).count();
    let id = ModMatrix::identity(r, m);
    let um1 = u.sub(&id);
    let u_minus_1 = snf(&um1, ell, n);
    let u_minus_1_sq = snf(&um1.mul(&um1), ell, n);
    Ok(TorusLevel {
        n,
        ell,
        rank: r,
        modulus: m,
        weyl,
        u,
        w_generators,
        reduction_kernel_order,
        u_minus_1,
        u_minus_1_sq,
    })
}

/// Agreement of the linear-algebra answers with the materialized group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub center_order: usize,
    pub second_center_order: usize,
    pub abelianization: Vec<u64>,
    pub agrees: bool,
}

#[derive(Debug, Clone)]
pub struct TowerLevel {
    pub torus: TorusLevel,
    pub s_log_order: u32,
    pub group: Option<Arc<FiniteGroup>>,
    pub cross_check: Option<CrossCheck>,
}

impl TowerLevel {
    pub fn x(&self) -> Code {
        self.torus.affine(&vec![0; self.torus.rank], 1)
    }
}

/// `S_n` with linear-algebra invariants, materialized when
/// `l^(rn+1) <= min(MATERIALIZE_LIMIT, budget)`.
pub fn build_s(spec: &FusionFamilySpec, n: u32) -> Result<TowerLevel> {
    build_s_with(spec, n, &BuildConfig::default())
}

pub fn build_s_with(spec: &FusionFamilySpec, n: u32, cfg: &BuildConfig) -> Result<TowerLevel> {
    let torus = torus_level(&spec.action, n)?;
    let s_log_order = torus.t_log_order() + 1;
    let limit = MATERIALIZE_LIMIT.min(cfg.budget) as u64;
    let size = (spec.ell as f64).powi(s_log_order as i32);
    let (group, cross_check) = if size <= limit as f64 {
        let g = Arc::new(materialize(&torus, cfg.budget)?);
        let cc = cross_check(&torus, &g);
        (Some(g), Some(cc))
    } else {
        (None, None)
    };
    Ok(TowerLevel { torus, s_log_order, group, cross_check })
}

fn materialize(t: &TorusLevel, budget: usize) -> Result<FiniteGroup> {
    let r = t.rank;
    let mut gens: Vec<Code> = (0..r)
        .map(|i| {
            let mut e = vec![0; r];
            e[i] = 1;
            t.affine(&e, 0)
        })
        .collect();
    gens.push(t.affine(&vec![0; r], 1));
    FiniteGroup::generate(format!("S_{}", t.n), t.affine_law(), gens, budget)
}

fn cross_check(t: &TorusLevel, g: &Arc<FiniteGroup>) -> CrossCheck {
    let center_order = center_series(g, 1).order();
    let second_center_order = center_series(g, 2).order();
    // l-groups: the invariant factors are the primary parts
    let mut abelianization = abelianization(g).map(|a| a.invariants).unwrap_or_default();
    abelianization.sort_unstable();
    let agrees = center_order as u64 == t.u_minus_1.kernel_order()
        && second_center_order as u64 == t.second_center_order()
        && abelianization == t.abelianization_invariants();
    CrossCheck { center_order, second_center_order, abelianization, agrees }
}

/// Smallest level from which `|Z(S_n)|` and the `S_n^ab` invariants no
/// longer change, among the given levels (in increasing order).
pub fn stabilization_level(levels: &[(u32, u64, Vec<u64>)]) -> Option<u32> {
    let last = levels.last()?;
    let mut first = last.0;
    for w in levels.iter().rev() {
        if w.1 == last.1 && w.2 == last.2 {
            first = w.0;
        } else {
            break;
        }
    }
    Some(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{family_a_spec, family_b_preset};

    #[test]
    fn family_a_level_orders() {
        let spec = family_a_spec(3).unwrap();
        let t = torus_level(&spec.action, 2).unwrap();
        assert_eq!(ipow(3, t.t_log_order()), 81);
        for n in 1..=4 {
            let t = torus_level(&spec.action, n).unwrap();
            assert_eq!(t.center().len(), 3);
            assert_eq!(t.abelianization_invariants(), vec![3, 3]);
        }
        assert!(torus_level(&spec.action, 0).is_err());
    }

    #[test]
    fn materialized_levels_agree() {
        let spec = family_a_spec(3).unwrap();
        let lv = build_s(&spec, 1).unwrap();
        assert_eq!(lv.group.as_ref().unwrap().order(), 27);
        let cc = lv.cross_check.unwrap();
        assert!(cc.agrees, "{cc:?}");
        assert_eq!(cc.center_order, 3);
        let g2 = family_b_preset("G2").unwrap();
        for n in 1..=2 {
            let lv = build_s(&g2, n).unwrap();
            assert!(lv.cross_check.unwrap().agrees);
            assert!(lv.torus.faithful());
        }
    }

    #[test]
    fn affine_round_trip() {
        let spec = family_a_spec(5).unwrap();
        let t = torus_level(&spec.action, 1).unwrap();
        let v = vec![1, 2, 3, 4];
        assert_eq!(t.split(&t.affine(&v, 3)), (v, 3));
    }
}
