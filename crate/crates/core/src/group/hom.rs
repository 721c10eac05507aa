//! Homomorphisms, direct products and fiber products.

use std::sync::Arc;

use super::{conjugacy_classes, Code, FiniteGroup, Law, Subgroup};
use crate::arith::{discrete_log, is_prime, primitive_root};
use crate::{Error, Result};

/// A homomorphism given by generator images and extended to a total map
/// along the Cayley graph of the source.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    gen_images: Vec<usize>,
    map: Vec<u32>,
}

impl Homomorphism {
    /// `images[i]` is the image of `source.generators()[i]`. Fails with
    /// `MalformedSpec` if the assignment does not extend to a homomorphism
    /// (every Cayley edge is checked, which is equivalent to full
    /// multiplicativity).
    pub fn from_generator_images(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: &[usize],
    ) -> Result<Self> {
        let gens = source.generators().to_vec();
        if gens.len() != images.len() {
            return Err(Error::MalformedSpec(format!(
                "{} generator images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        let n = source.order();
        let mut map = vec![u32::MAX; n];
        map[source.identity()] = target.identity() as u32;
        let mut queue = vec![source.identity()];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let fx = map[x] as usize;
            for (g, &img) in gens.iter().zip(images) {
                let y = source.mul(x, *g);
                let fy = target.mul(fx, img) as u32;
                if map[y] == u32::MAX {
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return Err(Error::MalformedSpec(
                        "generator images do not define a homomorphism".into(),
                    ));
                }
            }
        }
        Ok(Homomorphism { source, target, gen_images: images.to_vec(), map })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn generator_images(&self) -> &[usize] {
        &self.gen_images
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.map {
            hit[y as usize] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn kernel(&self) -> Subgroup {
        let e = self.target.identity() as u32;
        let members = (0..self.source.order()).filter(|&x| self.map[x] == e).collect();
        self.source.subgroup_from_members(members)
    }

    /// Exhaustive `f(ab) = f(a) f(b)` check over all pairs.
    pub fn verify_multiplicative(&self) -> bool {
        let s = &self.source;
        (0..s.order()).all(|a| {
            (0..s.order()).all(|b| self.apply(s.mul(a, b)) == self.target.mul(self.apply(a), self.apply(b)))
        })
    }
}

/// `Z/n` as a group whose element with index `k` is `k`.
pub fn cyclic_group(n: u64) -> FiniteGroup {
    let codes = (0..n as i64).map(|k| vec![k]).collect();
    let gens = if n > 1 { vec![1] } else { vec![] };
    FiniteGroup::from_sorted_codes(format!("C{n}"), Law::Cyclic(n), codes, Some(gens))
        .expect("cyclic group is well formed")
}

pub fn direct_product(factors: &[&FiniteGroup]) -> Result<FiniteGroup> {
    let law = Law::Direct(factors.iter().map(|f| f.law().clone()).collect());
    let mut codes: Vec<Code> = vec![Vec::new()];
    for f in factors {
        let mut next = Vec::with_capacity(codes.len() * f.order());
        for c in &codes {
            for e in f.elements() {
                let mut v = c.clone();
                v.extend_from_slice(e);
                next.push(v);
            }
        }
        codes = next;
    }
    let mut gen_codes = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for &g in f.generators() {
            let code: Code = factors
                .iter()
                .enumerate()
                .flat_map(|(j, h)| if i == j { f.elem(g).clone() } else { h.elem(h.identity()).clone() })
                .collect();
            gen_codes.push(code);
        }
    }
    let name = factors.iter().map(|f| f.name().to_string()).collect::<Vec<_>>().join(" x ");
    let index: std::collections::HashMap<&Code, usize> = codes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let gens = gen_codes.iter().map(|c| index[c]).collect();
    drop(index);
    FiniteGroup::from_sorted_codes(name, law, codes, Some(gens))
}

/// `{(a, b) : phi1(a) = phi2(b)}` together with its verified shape data.
#[derive(Debug)]
pub struct FiberProduct {
    pub group: FiniteGroup,
    pub e: u64,
    /// `|X1 x X2| / |H|` counted through explicit cosets.
    pub index_by_cosets: Option<usize>,
}

pub fn fiber_product(phi1: &Homomorphism, phi2: &Homomorphism) -> Result<FiberProduct> {
    let c = &phi1.target;
    if !Arc::ptr_eq(c, &phi2.target) && c.elements() != phi2.target.elements() {
        return Err(Error::NonMatchingTargets);
    }
    if !phi1.is_surjective() || !phi2.is_surjective() {
        return Err(Error::NonSurjective);
    }
    if !c.is_abelian() || conjugacy_classes(c).len() != c.order() {
        return Err(Error::NonMatchingTargets);
    }
    let (x1, x2) = (&phi1.source, &phi2.source);
    let e = c.order() as u64;
    let mut codes = Vec::with_capacity(x1.order() * x2.order() / e as usize);
    for a in 0..x1.order() {
        for b in 0..x2.order() {
            if phi1.apply(a) == phi2.apply(b) {
                let mut v = x1.elem(a).clone();
                v.extend_from_slice(x2.elem(b));
                codes.push(v);
            }
        }
    }
    let law = Law::Direct(vec![x1.law().clone(), x2.law().clone()]);
    let name = format!("fiber({},{},e={})", x1.name(), x2.name(), e);
    let group = FiniteGroup::from_sorted_codes(name, law, codes, None)?;
    if group.order() as u64 * e != (x1.order() * x2.order()) as u64 {
        return Err(Error::HypothesisFailed("fiber product has the wrong order".into()));
    }
    Ok(FiberProduct { group, e, index_by_cosets: None })
}

impl FiberProduct {
    /// Counts cosets of `H` in the materialized `X1 x X2`.
    pub fn count_cosets(&mut self, x1: &FiniteGroup, x2: &FiniteGroup) -> Result<usize> {
        let full = direct_product(&[x1, x2])?;
        let members: Vec<usize> = full.embed(&self.group)?;
        let h = full.subgroup_from_members(members);
        let mut seen = vec![false; full.order()];
        let mut cosets = 0;
        for x in 0..full.order() {
            if seen[x] {
                continue;
            }
            cosets += 1;
            for &m in h.members() {
                seen[full.mul(x, m)] = true;
            }
        }
        let normal = super::is_normal(&full, &h);
        if !normal {
            return Err(Error::NotNormal);
        }
        self.index_by_cosets = Some(cosets);
        Ok(cosets)
    }
}

/// The canonical surjection of `x` onto `C_e`. Two-by-two matrix groups over
/// a prime field use `det` followed by `F_l^* -> C_e` (discrete log to the
/// least primitive root); other groups use the lexicographically first
/// generator assignment that extends to a surjective homomorphism.
pub fn canonical_cyclic_quotient(x: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>) -> Result<Homomorphism> {
    let e = target.order() as u64;
    if let Law::Mat { dim: 2, modulus } = x.law() {
        let p = *modulus;
        if is_prime(p) && (p - 1) % e == 0 {
            let g = primitive_root(p);
            let images: Vec<usize> = x
                .generators()
                .iter()
                .map(|&s| {
                    let c = x.elem(s);
                    let det = (c[0] * c[3] - c[1] * c[2]).rem_euclid(p as i64) as u64;
                    (discrete_log(g, det, p).expect("unit determinant") % e) as usize
                })
                .collect();
            if let Ok(h) = Homomorphism::from_generator_images(Arc::clone(x), Arc::clone(target), &images) {
                if h.is_surjective() {
                    return Ok(h);
                }
            }
        }
    }
    let k = x.generators().len();
    let mut choice = vec![0usize; k];
    loop {
        if let Ok(h) = Homomorphism::from_generator_images(Arc::clone(x), Arc::clone(target), &choice) {
            if h.is_surjective() {
                return Ok(h);
            }
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Err(Error::NoSuchQuotient { e });
            }
            i -= 1;
            choice[i] += 1;
            if (choice[i] as u64) < e {
                break;
            }
            choice[i] = 0;
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
    fn sign_homomorphism() {
        let s4 = grp(GroupSpec::Symmetric(4));
        let c2 = Arc::new(cyclic_group(2));
        let sgn = canonical_cyclic_quotient(&s4, &c2).unwrap();
        assert!(sgn.verify_multiplicative());
        assert_eq!(sgn.kernel().order(), 12);
        assert!(canonical_cyclic_quotient(&s4, &Arc::new(cyclic_group(4))).is_err());
    }

    #[test]
    fn bad_images_rejected() {
        let c3 = grp(GroupSpec::Cyclic(3));
        let c2 = Arc::new(cyclic_group(2));
        assert!(Homomorphism::from_generator_images(c3, c2, &[1]).is_err());
    }

    #[test]
    fn fiber_products() {
        let trivial = grp(GroupSpec::Trivial);
        let gl5 = grp(GroupSpec::Gl2(5));
        let c4 = Arc::new(cyclic_group(4));
        let p1 = canonical_cyclic_quotient(&trivial, &Arc::new(cyclic_group(1))).unwrap();
        assert!(canonical_cyclic_quotient(&trivial, &c4).is_err());
        let d1 = canonical_cyclic_quotient(&gl5, &c4).unwrap();
        let t4 = Homomorphism::from_generator_images(Arc::clone(&trivial), Arc::clone(&c4), &[]).unwrap();
        assert!(matches!(fiber_product(&t4, &d1), Err(Error::NonSurjective)));
        let c1 = Arc::clone(&p1.target);
        let d_one = canonical_cyclic_quotient(&gl5, &c1).unwrap();
        assert_eq!(fiber_product(&p1, &d_one).unwrap().group.order(), 480);

        let c2g = grp(GroupSpec::Cyclic(2));
        let gl3 = grp(GroupSpec::Gl2(3));
        let c2 = Arc::new(cyclic_group(2));
        let a = canonical_cyclic_quotient(&c2g, &c2).unwrap();
        let b = canonical_cyclic_quotient(&gl3, &c2).unwrap();
        let mut fp = fiber_product(&a, &b).unwrap();
        assert_eq!(fp.group.order(), 48);
        assert_eq!(fp.count_cosets(&c2g, &gl3).unwrap(), 2);
    }

    #[test]
    fn determinant_fiber_is_sl2() {
        let trivial = grp(GroupSpec::Trivial);
        let gl5 = grp(GroupSpec::Gl2(5));
        let c4 = Arc::new(cyclic_group(4));
        let d = canonical_cyclic_quotient(&gl5, &c4).unwrap();
        assert_eq!(d.kernel().order(), 120);
        let _ = trivial;
    }
}
