//! The two fusion-system families as parameter packages: an integral torus
//! action with its Weyl group, the automizer models of the centric radical
//! subgroups, and the checks built on them.

mod automizer;
mod mu;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, mod_pow, primitive_root, valuation};
use crate::group::{build_group, build_group_with, mat_mul, normalizer, BuildConfig, FiniteGroup, GroupSpec, Law, Subgroup, Word};
use crate::lattice::ModMatrix;
use crate::{Error, Result};

pub use automizer::{automizer_data, chars_group, verify_awc, verify_chars, AutomizerData, CharsCase, ThetaAction, ThetaKind};
pub use mu::{check_or1_hypotheses, delta, MuPair, MuReport};

/// Integral action of a finite group on `Z^rank`, given by generator
/// matrices acting on column vectors, with the designated element `u` of
/// order `l` written as a word in those generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSpec {
    #[serde(default)]
    pub ell: u64,
    pub rank: usize,
    pub generators: Vec<Vec<Vec<i64>>>,
    pub u: Word,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionFamilySpec {
    pub ell: u64,
    pub variant: Variant,
    #[serde(default = "default_t")]
    pub t: i32,
    #[serde(default = "trivial_spec")]
    pub x1: GroupSpec,
    #[serde(default = "one")]
    pub e: u64,
    pub action: ActionSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    /// Torus lattice of a variant-A spec; `None` means the root lattice.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<Lattice>,
}

/// Integral form of the family-A torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    /// Sum-zero sublattice of `Z^l`.
    #[default]
    Root,
    /// `Z^l / Z(1, ..., 1)`, the dual of the root lattice.
    Coweight,
}

fn default_t() -> i32 {
    -1
}

fn trivial_spec() -> GroupSpec {
    GroupSpec::Trivial
}

fn one() -> u64 {
    1
}

/// The integral Weyl group `W` with `U = <u>` and `N_W(U)`.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub ell: u64,
    pub rank: usize,
    pub group: Arc<FiniteGroup>,
    pub u: usize,
    pub u_subgroup: Subgroup,
    pub normalizer: Subgroup,
}

impl WeylGroup {
    /// Flat row-major integer matrix of element `i`.
    pub fn matrix(&self, i: usize) -> &[i64] {
        self.group.elem(i)
    }

    pub fn matrix_mod(&self, i: usize, modulus: i64) -> ModMatrix {
        ModMatrix::from_flat(self.matrix(i), self.rank, modulus)
    }

    pub fn normalizer_group(&self) -> Result<FiniteGroup> {
        self.group.subgroup_group(&self.normalizer, "N_W(U)")
    }

    /// `r` with `w u w^-1 = u^r`, for `w` in `N_W(U)`.
    pub fn conjugation_exponent(&self, w: usize) -> Option<u64> {
        let g = &self.group;
        let c = g.mul(g.mul(w, self.u), g.inv(w));
        (1..self.ell).find(|&r| g.pow(self.u, r) == c)
    }
}

impl ActionSpec {
    pub fn weyl(&self) -> Result<WeylGroup> {
        self.weyl_with(&BuildConfig::default())
    }

    pub fn weyl_with(&self, cfg: &BuildConfig) -> Result<WeylGroup> {
        let r = self.rank;
        if r == 0 || self.generators.is_empty() {
            return Err(Error::MalformedSpec("torus action needs a rank and generators".into()));
        }
        if !is_prime(self.ell) || self.ell == 2 {
            return Err(Error::BadPrime(self.ell));
        }
        for m in &self.generators {
            if m.len() != r || m.iter().any(|row| row.len() != r) {
                return Err(Error::MalformedSpec(format!("generator matrices must be {r}x{r}")));
            }
        }
        let spec = GroupSpec::Matrix { modulus: 0, generators: self.generators.clone() };
        let group = Arc::new(build_group_with(&spec, cfg)?.rename("W"));
        let mut u_code: Vec<i64> = Law::Mat { dim: r, modulus: 0 }.identity();
        for &i in &self.u {
            let g = self
                .generators
                .get(i)
                .ok_or_else(|| Error::MalformedSpec(format!("u refers to generator {i}")))?;
            let flat: Vec<i64> = g.iter().flatten().copied().collect();
            u_code = mat_mul(&u_code, &flat, r, 0);
        }
        let u = group.require(&u_code)?;
        if group.element_order(u) != self.ell {
            return Err(Error::HypothesisFailed(format!(
                "u has order {}, expected {}",
                group.element_order(u),
                self.ell
            )));
        }
        let v = valuation(group.order() as u64, self.ell);
        if v != 1 {
            return Err(Error::HypothesisFailed(format!("v_{}(|W|) = {v}, expected 1", self.ell)));
        }
        let u_subgroup = group.closure(&[u]);
        let normalizer = normalizer(&group, &u_subgroup);
        Ok(WeylGroup { ell: self.ell, rank: r, group, u, u_subgroup, normalizer })
    }
}

/// Matrix of a permutation of `0..l` on the sum-zero lattice in the basis
/// `b_i = e_i - e_(i+1)`, acting on column vectors.
fn root_lattice_matrix(perm: &[usize]) -> Vec<Vec<i64>> {
    let l = perm.len();
    let r = l - 1;
    let mut m = vec![vec![0i64; r]; r];
    for i in 0..r {
        // e_a - e_b = sum_{k=a}^{b-1} b_k when a < b
        let (a, b) = (perm[i], perm[i + 1]);
        let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        for k in lo..hi {
            m[k][i] += sign;
        }
    }
    m
}

/// Matrix of a permutation of `0..l` on `Z^l / Z(1, ..., 1)` in the basis
/// `e_0, ..., e_(l-2)`.
fn coweight_lattice_matrix(perm: &[usize]) -> Vec<Vec<i64>> {
    let r = perm.len() - 1;
    let mut m = vec![vec![0i64; r]; r];
    for i in 0..r {
        if perm[i] < r {
            m[perm[i]][i] = 1;
        } else {
            for row in m.iter_mut() {
                row[i] = -1;
            }
        }
    }
    m
}

/// `N_{S_l}(C_l)` acting on the root lattice `A_(l-1)`, with `u` the
/// `l`-cycle.
pub fn family_a_action(ell: u64) -> Result<ActionSpec> {
    family_a_action_on(ell, Lattice::Root)
}

pub fn family_a_action_on(ell: u64, lattice: Lattice) -> Result<ActionSpec> {
    if ell == 2 || !is_prime(ell) {
        return Err(Error::BadPrime(ell));
    }
    let l = ell as usize;
    let cycle: Vec<usize> = (0..l).map(|i| (i + 1) % l).collect();
    let g = primitive_root(ell) as usize;
    let mult: Vec<usize> = (0..l).map(|i| i * g % l).collect();
    let f = match lattice {
        Lattice::Root => root_lattice_matrix,
        Lattice::Coweight => coweight_lattice_matrix,
    };
    Ok(ActionSpec { ell, rank: l - 1, generators: vec![f(&cycle), f(&mult)], u: vec![0] })
}

pub const FAMILY_A_RANK_NOTE: &str = "family A uses the rank l-1 root lattice; an order-l automorphism acts \
faithfully only on lattices of rank at least l-1, so the rank l-2 torus is not realizable";

pub fn family_a_spec(ell: u64) -> Result<FusionFamilySpec> {
    family_a_spec_with_rank(ell, None)
}

/// Only rank `l - 1` carries a faithful action of the family-A Weyl group;
/// other ranks are rejected with the reason.
pub fn family_a_spec_with_rank(ell: u64, rank: Option<usize>) -> Result<FusionFamilySpec> {
    family_a_spec_on(ell, rank, Lattice::Root)
}

pub fn family_a_spec_on(ell: u64, rank: Option<usize>, lattice: Lattice) -> Result<FusionFamilySpec> {
    let action = family_a_action_on(ell, lattice)?;
    if let Some(r) = rank {
        if r != action.rank {
            return Err(Error::HypothesisFailed(format!(
                "no faithful action of C_{ell} x| C_{} on a rank-{r} torus is available (rank {} required)",
                ell - 1,
                action.rank
            )));
        }
    }
    let spec = FusionFamilySpec {
        ell,
        variant: Variant::A,
        t: -1,
        x1: GroupSpec::Trivial,
        e: ell - 1,
        action,
        preset: None,
        lattice: (lattice != Lattice::Root).then_some(lattice),
    };
    spec.validate()?;
    Ok(spec)
}

pub fn preset_names() -> &'static [&'static str] {
    &["G2"]
}

/// Built-in variant-B witnesses. `G2`: the Weyl group of type `G2`
/// (dihedral of order 12) on its root lattice at `l = 3`, `X1 = C2`, `e = 2`,
/// `t = 0`.
pub fn family_b_preset(name: &str) -> Result<FusionFamilySpec> {
    match name.to_ascii_uppercase().as_str() {
        "G2" => {
            let spec = FusionFamilySpec {
                ell: 3,
                variant: Variant::B,
                t: 0,
                x1: GroupSpec::Cyclic(2),
                e: 2,
                action: ActionSpec {
                    ell: 3,
                    rank: 2,
                    generators: vec![vec![vec![-1, 3], vec![0, 1]], vec![vec![1, 0], vec![1, -1]]],
                    u: vec![0, 1, 0, 1],
                },
                preset: Some("G2".into()),
                lattice: None,
            };
            spec.validate()?;
            Ok(spec)
        }
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

pub fn family_b_custom(ell: u64, t: i32, x1: GroupSpec, e: u64, mut action: ActionSpec) -> Result<FusionFamilySpec> {
    action.ell = ell;
    let spec = FusionFamilySpec { ell, variant: Variant::B, t, x1, e, action, preset: None, lattice: None };
    spec.validate()?;
    Ok(spec)
}

impl FusionFamilySpec {
    pub fn name(&self) -> String {
        match (&self.preset, self.variant) {
            (Some(p), _) => p.clone(),
            (None, Variant::A) => match self.lattice {
                Some(Lattice::Coweight) => format!("A(l={},coweight)", self.ell),
                _ => format!("A(l={})", self.ell),
            },
            (None, Variant::B) => format!("B(l={},t={},X1={},e={})", self.ell, self.t, self.x1, self.e),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ell = self.ell;
        if ell == 2 || !is_prime(ell) {
            return Err(Error::BadPrime(ell));
        }
        if self.action.ell != ell {
            return Err(Error::MalformedSpec("action prime differs from the family prime".into()));
        }
        match self.variant {
            Variant::A => {
                if self.x1 != GroupSpec::Trivial || self.e != ell - 1 {
                    return Err(Error::HypothesisFailed("variant A needs X1 = 1 and e = l - 1".into()));
                }
            }
            Variant::B => {
                if self.t != 0 && self.t != -1 {
                    return Err(Error::HypothesisFailed(format!("t = {} not in {{0, -1}}", self.t)));
                }
                if self.e == 0 || !(ell - 1).is_multiple_of(self.e) {
                    return Err(Error::HypothesisFailed(format!("e = {} does not divide {}", self.e, ell - 1)));
                }
                let x1 = build_group(&self.x1)?;
                if (x1.order() as u64).is_multiple_of(ell) {
                    return Err(Error::HypothesisFailed(format!("X1 = {} is not an {ell}'-group", self.x1)));
                }
            }
        }
        self.action.weyl()?;
        Ok(())
    }

    /// Whether the centric radical family is `H` (abelian `Q`) rather than
    /// `B` (extraspecial `Q~`).
    pub fn uses_h(&self) -> bool {
        self.variant == Variant::A || self.t == -1
    }
}

/// Catalog lookup by identifier and integer parameters.
pub fn standard_group(name: &str, params: &[u64]) -> Result<GroupSpec> {
    let one = |k: usize| -> Result<u64> {
        if params.len() == k {
            Ok(params[0])
        } else {
            Err(Error::MalformedSpec(format!("{name} takes {k} parameter(s)")))
        }
    };
    let spec = match name.to_ascii_uppercase().as_str() {
        "1" | "TRIVIAL" => GroupSpec::Trivial,
        "C" | "CYCLIC" => GroupSpec::Cyclic(one(1)?),
        "D" | "DIHEDRAL" => GroupSpec::Dihedral(one(1)?),
        "S" | "SYMMETRIC" => GroupSpec::Symmetric(one(1)? as usize),
        "A" | "ALTERNATING" => GroupSpec::Alternating(one(1)? as usize),
        "SL2" => GroupSpec::Sl2(one(1)?),
        "GL2" => GroupSpec::Gl2(one(1)?),
        "NGL2U" => GroupSpec::Ngl2u(one(1)?),
        "FROB" | "FROBENIUS" => {
            if params.len() != 2 {
                return Err(Error::MalformedSpec("Frob takes (l, d)".into()));
            }
            GroupSpec::Frobenius { ell: params[0], d: params[1] }
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(spec)
}

/// `r^i mod l` for `i` possibly negative.
pub(crate) fn unit_power(r: u64, i: i32, ell: u64) -> u64 {
    if i >= 0 {
        mod_pow(r, i as u64, ell)
    } else {
        let inv = crate::arith::mod_inv(r as i64, ell).expect("unit");
        mod_pow(inv, (-i) as u64, ell)
    }
}
