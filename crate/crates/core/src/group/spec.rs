//! Declarative group descriptors and their construction.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{canonical_cyclic_quotient, cyclic_group, direct_product, fiber_product, FiniteGroup, Law, SemidirectData};
use crate::arith::{is_prime, mod_pow, primitive_root};
use crate::{Error, Result};

pub const DEFAULT_BUDGET: usize = 100_000;

/// A word in the generators of a built group, as generator indices.
pub type Word = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "lowercase")]
pub enum GroupSpec {
    Trivial,
    Cyclic(u64),
    /// Dihedral group of the given order `2n`.
    Dihedral(u64),
    Symmetric(usize),
    Alternating(usize),
    Sl2(u64),
    Gl2(u64),
    /// Invertible upper-triangular 2x2 matrices over `F_l`.
    Ngl2u(u64),
    /// `C_l x| C_d` as affine maps `x -> a x + b` over `F_l`.
    Frobenius { ell: u64, d: u64 },
    Perm { generators: Vec<Vec<usize>> },
    /// Matrices over `Z/modulus` (`modulus == 0` means over `Z`).
    Matrix { modulus: u64, generators: Vec<Vec<Vec<i64>>> },
    Direct(Vec<GroupSpec>),
    /// `action[k][i]` is the image of normal generator `i` under top
    /// generator `k`, written as a word in the normal generators.
    Semidirect { normal: Box<GroupSpec>, top: Box<GroupSpec>, action: Vec<Vec<Word>> },
    /// Fiber product over the canonical surjections onto `C_e`.
    Fiber { left: Box<GroupSpec>, right: Box<GroupSpec>, e: u64 },
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Trivial => write!(f, "1"),
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Sl2(p) => write!(f, "SL2({p})"),
            GroupSpec::Gl2(p) => write!(f, "GL2({p})"),
            GroupSpec::Ngl2u(p) => write!(f, "NGL2U({p})"),
            GroupSpec::Frobenius { ell, d } => write!(f, "Frob({ell},{d})"),
            GroupSpec::Perm { generators } => write!(f, "perm{generators:?}"),
            GroupSpec::Matrix { modulus, generators } => write!(f, "mat{modulus}{generators:?}"),
            GroupSpec::Direct(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    if matches!(x, GroupSpec::Direct(_)) {
                        write!(f, "({x})")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                Ok(())
            }
            GroupSpec::Semidirect { normal, top, .. } => write!(f, "({normal}):({top})"),
            GroupSpec::Fiber { left, right, e } => write!(f, "fiber({left},{right},e={e})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildConfig {
    pub budget: usize,
}

impl Default for BuildConfig {
    /// Honors `LTORAL_BUDGET` when it parses as a positive integer.
    fn default() -> Self {
        let budget = std::env::var("LTORAL_BUDGET")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .filter(|&b| b > 0)
            .unwrap_or(DEFAULT_BUDGET);
        BuildConfig { budget }
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    build_group_with(spec, &BuildConfig::default())
}

pub fn build_group_with(spec: &GroupSpec, cfg: &BuildConfig) -> Result<FiniteGroup> {
    let mut g = build_inner(spec, cfg)?;
    g.set_spec(spec.clone());
    Ok(g.rename(spec.to_string()))
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::BadPrime(p))
    }
}

fn mat_gens(rows: &[[i64; 4]]) -> Vec<Vec<i64>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

fn build_inner(spec: &GroupSpec, cfg: &BuildConfig) -> Result<FiniteGroup> {
    let budget = cfg.budget;
    let name = spec.to_string();
    match spec {
        GroupSpec::Trivial => FiniteGroup::generate(name, Law::Cyclic(1), vec![], budget),
        GroupSpec::Cyclic(n) => {
            if *n == 0 {
                return Err(Error::MalformedSpec("cyclic group of order 0".into()));
            }
            if *n as usize > budget {
                return Err(Error::BudgetExceeded { budget });
            }
            Ok(cyclic_group(*n))
        }
        GroupSpec::Dihedral(order) => {
            if *order < 6 || order % 2 != 0 {
                return Err(Error::MalformedSpec(format!("dihedral order {order} must be even and at least 6")));
            }
            let n = (*order / 2) as usize;
            let rot = (0..n).map(|i| ((i + 1) % n) as i64).collect();
            let refl = (0..n).map(|i| ((n - i) % n) as i64).collect();
            FiniteGroup::generate(name, Law::Perm(n), vec![rot, refl], budget)
        }
        GroupSpec::Symmetric(n) => {
            let n = *n;
            if n == 0 {
                return Err(Error::MalformedSpec("S0".into()));
            }
            let mut gens = Vec::new();
            if n >= 2 {
                let mut t: Vec<i64> = (0..n as i64).collect();
                t.swap(0, 1);
                gens.push(t);
                gens.push((0..n).map(|i| ((i + 1) % n) as i64).collect());
            }
            FiniteGroup::generate(name, Law::Perm(n), gens, budget)
        }
        GroupSpec::Alternating(n) => {
            let n = *n;
            if n == 0 {
                return Err(Error::MalformedSpec("A0".into()));
            }
            // 3-cycles (0 1 i) generate A_n
            let gens = (2..n)
                .map(|i| {
                    let mut p: Vec<i64> = (0..n as i64).collect();
                    p[0] = 1;
                    p[1] = i as i64;
                    p[i] = 0;
                    p
                })
                .collect();
            FiniteGroup::generate(name, Law::Perm(n), gens, budget)
        }
        GroupSpec::Sl2(p) => {
            require_prime(*p)?;
            FiniteGroup::generate(name, Law::Mat { dim: 2, modulus: *p }, mat_gens(&[[1, 1, 0, 1], [1, 0, 1, 1]]), budget)
        }
        GroupSpec::Gl2(p) => {
            require_prime(*p)?;
            let g = primitive_root(*p) as i64;
            FiniteGroup::generate(
                name,
                Law::Mat { dim: 2, modulus: *p },
                mat_gens(&[[1, 1, 0, 1], [1, 0, 1, 1], [g, 0, 0, 1]]),
                budget,
            )
        }
        GroupSpec::Ngl2u(p) => {
            require_prime(*p)?;
            let g = primitive_root(*p) as i64;
            FiniteGroup::generate(
                name,
                Law::Mat { dim: 2, modulus: *p },
                mat_gens(&[[1, 1, 0, 1], [g, 0, 0, 1], [1, 0, 0, g]]),
                budget,
            )
        }
        GroupSpec::Frobenius { ell, d } => {
            require_prime(*ell)?;
            if *d == 0 || (ell - 1) % d != 0 {
                return Err(Error::MalformedSpec(format!("d = {d} does not divide {}", ell - 1)));
            }
            let a = mod_pow(primitive_root(*ell), (ell - 1) / d, *ell) as i64;
            FiniteGroup::generate(name, Law::Mat { dim: 2, modulus: *ell }, mat_gens(&[[1, 1, 0, 1], [a, 0, 0, 1]]), budget)
        }
        GroupSpec::Perm { generators } => {
            let degree = generators.first().map(Vec::len).unwrap_or(1);
            if generators.iter().any(|g| g.len() != degree) {
                return Err(Error::MalformedSpec("permutations of different degrees".into()));
            }
            let gens = generators.iter().map(|g| g.iter().map(|&x| x as i64).collect()).collect();
            FiniteGroup::generate(name, Law::Perm(degree), gens, budget)
        }
        GroupSpec::Matrix { modulus, generators } => {
            let dim = generators
                .first()
                .map(Vec::len)
                .ok_or_else(|| Error::MalformedSpec("matrix group without generators".into()))?;
            let mut gens = Vec::new();
            for m in generators {
                if m.len() != dim || m.iter().any(|row| row.len() != dim) {
                    return Err(Error::MalformedSpec("generator matrices must be square of equal size".into()));
                }
                let flat: Vec<i64> = m
                    .iter()
                    .flatten()
                    .map(|&x| if *modulus > 0 { x.rem_euclid(*modulus as i64) } else { x })
                    .collect();
                gens.push(flat);
            }
            FiniteGroup::generate(name, Law::Mat { dim, modulus: *modulus }, gens, budget)
        }
        GroupSpec::Direct(fs) => {
            let built = fs.iter().map(|f| build_group_with(f, cfg)).collect::<Result<Vec<_>>>()?;
            let total = built.iter().try_fold(1usize, |acc, g| acc.checked_mul(g.order()));
            if total.is_none_or(|t| t > budget) {
                return Err(Error::BudgetExceeded { budget });
            }
            let refs: Vec<&FiniteGroup> = built.iter().collect();
            direct_product(&refs)
        }
        GroupSpec::Semidirect { normal, top, action } => {
            let n = Arc::new(build_group_with(normal, cfg)?);
            let k = Arc::new(build_group_with(top, cfg)?);
            if n.order().checked_mul(k.order()).is_none_or(|t| t > budget) {
                return Err(Error::BudgetExceeded { budget });
            }
            build_semidirect(name, n, k, action)
        }
        GroupSpec::Fiber { left, right, e } => {
            let x1 = Arc::new(build_group_with(left, cfg)?);
            let x2 = Arc::new(build_group_with(right, cfg)?);
            if *e == 0 {
                return Err(Error::MalformedSpec("fiber product over C0".into()));
            }
            let c = Arc::new(cyclic_group(*e));
            let p1 = canonical_cyclic_quotient(&x1, &c)?;
            let p2 = canonical_cyclic_quotient(&x2, &c)?;
            Ok(fiber_product(&p1, &p2)?.group)
        }
    }
}

fn eval_word(g: &FiniteGroup, w: &[usize]) -> Result<usize> {
    let gens = g.generators();
    w.iter().try_fold(g.identity(), |acc, &i| {
        gens.get(i)
            .map(|&s| g.mul(acc, s))
            .ok_or_else(|| Error::MalformedSpec(format!("word refers to generator {i}")))
    })
}

fn build_semidirect(name: String, n: Arc<FiniteGroup>, k: Arc<FiniteGroup>, action: &[Vec<Word>]) -> Result<FiniteGroup> {
    if action.len() != k.generators().len() {
        return Err(Error::MalformedSpec("one action entry per top generator required".into()));
    }
    // automorphism of N for each top generator
    let mut gen_maps = Vec::new();
    for images in action {
        let imgs = images.iter().map(|w| eval_word(&n, w)).collect::<Result<Vec<_>>>()?;
        let h = super::Homomorphism::from_generator_images(Arc::clone(&n), Arc::clone(&n), &imgs)?;
        if !h.is_surjective() {
            return Err(Error::MalformedSpec("action generator is not an automorphism".into()));
        }
        gen_maps.push((0..n.order()).map(|x| h.apply(x) as u32).collect::<Vec<u32>>());
    }
    // extend k -> Aut(N) along the Cayley graph of K, with (kg)(x) = k(g(x))
    let mut maps: Vec<Option<Vec<u32>>> = vec![None; k.order()];
    maps[k.identity()] = Some((0..n.order() as u32).collect());
    let mut queue = vec![k.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (gi, &s) in k.generators().iter().enumerate() {
            let y = k.mul(x, s);
            let mx = maps[x].as_ref().expect("visited");
            let my: Vec<u32> = gen_maps[gi].iter().map(|&v| mx[v as usize]).collect();
            match &maps[y] {
                None => {
                    maps[y] = Some(my);
                    queue.push(y);
                }
                Some(old) if *old != my => {
                    return Err(Error::MalformedSpec("action is not a homomorphism".into()));
                }
                _ => {}
            }
        }
    }
    let action: Vec<Vec<u32>> = maps.into_iter().map(|m| m.expect("connected")).collect();
    let mut gens = Vec::new();
    for &s in n.generators() {
        gens.push(vec![s as i64, k.identity() as i64]);
    }
    for &s in k.generators() {
        gens.push(vec![n.identity() as i64, s as i64]);
    }
    let law = Law::Semidirect(Arc::new(SemidirectData { normal: n, top: k, action }));
    let mut codes = Vec::new();
    if let Law::Semidirect(d) = &law {
        for a in 0..d.normal.order() {
            for b in 0..d.top.order() {
                codes.push(vec![a as i64, b as i64]);
            }
        }
    }
    let g = FiniteGroup::from_sorted_codes(name, law, codes, None)?;
    let gen_idx = gens.iter().map(|c| g.require(c)).collect::<Result<Vec<_>>>()?;
    let mut g = g;
    g.gens = gen_idx.into_iter().filter(|&i| i != g.identity()).collect();
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::conjugacy_classes;

    fn order(s: GroupSpec) -> usize {
        build_group(&s).unwrap().order()
    }

    #[test]
    fn catalog_orders() {
        assert_eq!(order(GroupSpec::Trivial), 1);
        assert_eq!(order(GroupSpec::Cyclic(3)), 3);
        assert_eq!(order(GroupSpec::Dihedral(12)), 12);
        assert_eq!(order(GroupSpec::Symmetric(1)), 1);
        assert_eq!(order(GroupSpec::Symmetric(5)), 120);
        assert_eq!(order(GroupSpec::Alternating(5)), 60);
        assert_eq!(order(GroupSpec::Sl2(3)), 24);
        assert_eq!(order(GroupSpec::Gl2(5)), 480);
        assert_eq!(order(GroupSpec::Ngl2u(3)), 12);
        assert_eq!(order(GroupSpec::Ngl2u(5)), 80);
        assert_eq!(order(GroupSpec::Frobenius { ell: 5, d: 4 }), 20);
        assert_eq!(order(GroupSpec::Direct(vec![GroupSpec::Cyclic(2), GroupSpec::Sl2(5)])), 240);
        let fib = GroupSpec::Fiber { left: Box::new(GroupSpec::Cyclic(2)), right: Box::new(GroupSpec::Gl2(3)), e: 2 };
        assert_eq!(order(fib), 48);
    }

    #[test]
    fn semidirect_c3_by_c2_is_s3() {
        let spec = GroupSpec::Semidirect {
            normal: Box::new(GroupSpec::Cyclic(3)),
            top: Box::new(GroupSpec::Cyclic(2)),
            action: vec![vec![vec![0, 0]]],
        };
        let g = build_group(&spec).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(conjugacy_classes(&g).len(), 3);
        let bad = GroupSpec::Semidirect {
            normal: Box::new(GroupSpec::Cyclic(3)),
            top: Box::new(GroupSpec::Cyclic(3)),
            action: vec![vec![vec![0, 0]]],
        };
        assert!(build_group(&bad).is_err());
    }

    #[test]
    fn bad_parameters() {
        assert_eq!(build_group(&GroupSpec::Sl2(4)).unwrap_err(), Error::BadPrime(4));
        assert!(build_group(&GroupSpec::Frobenius { ell: 5, d: 3 }).is_err());
        assert!(build_group(&GroupSpec::Matrix { modulus: 3, generators: vec![vec![vec![1, 1], vec![1, 1]]] }).is_err());
        let err = build_group_with(&GroupSpec::Symmetric(7), &BuildConfig { budget: 1000 }).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 1000 });
    }

    #[test]
    fn serde_roundtrip() {
        let s = GroupSpec::Fiber { left: Box::new(GroupSpec::Cyclic(2)), right: Box::new(GroupSpec::Gl2(3)), e: 2 };
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<GroupSpec>(&text).unwrap(), s);
        assert_eq!(s.to_string(), "fiber(C2,GL2(3),e=2)");
    }
}
