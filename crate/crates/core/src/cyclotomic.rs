//! Exact arithmetic in `Z[zeta_e]` on power-basis coordinates.
//!
//! An element is a vector of `phi(e)` integers `c` standing for
//! `sum c_k zeta^k` with `zeta = exp(2 pi i / e)`. Reduction uses the monic
//! cyclotomic polynomial, so coordinates are canonical.

#[derive(Debug, Clone)]
pub struct CyclotomicField {
    order: u64,
    degree: usize,
    /// `zeta^k` reduced, for `0 <= k < 2 * order`.
    powers: Vec<Vec<i64>>,
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, constant term
/// first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    assert_eq!(den[dn], 1, "divisor must be monic");
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

impl CyclotomicField {
    pub fn new(order: u64) -> Self {
        assert!(order >= 1);
        let phi = cyclotomic_polynomial(order);
        let degree = phi.len() - 1;
        let mut powers: Vec<Vec<i64>> = Vec::with_capacity(2 * order as usize);
        for k in 0..2 * order as usize {
            if k < degree {
                let mut v = vec![0; degree];
                v[k] = 1;
                powers.push(v);
            } else {
                // x * x^(k-1), then replace x^degree by -(phi - x^degree)
                let prev = &powers[k - 1];
                let top = prev[degree - 1];
                let mut v = vec![0; degree];
                v[1..degree].copy_from_slice(&prev[..degree - 1]);
                for i in 0..degree {
                    v[i] -= top * phi[i];
                }
                powers.push(v);
            }
        }
        CyclotomicField { order, degree, powers }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Largest absolute coefficient among the reduced powers `zeta^k`.
    pub fn power_bound(&self) -> i64 {
        self.powers.iter().flatten().map(|x| x.abs()).max().unwrap_or(1)
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.degree]
    }

    pub fn from_int(&self, n: i64) -> Vec<i64> {
        let mut v = self.zero();
        v[0] = n;
        v
    }

    /// `zeta^k` for any integer `k`.
    pub fn root_power(&self, k: i64) -> Vec<i64> {
        self.powers[k.rem_euclid(self.order as i64) as usize].clone()
    }

    /// Reduces `sum m_k zeta^k` given as multiplicities indexed by `k mod e`.
    pub fn from_multiplicities(&self, mult: &[i64]) -> Vec<i64> {
        let mut v = self.zero();
        for (k, &m) in mult.iter().enumerate() {
            if m != 0 {
                for (a, &b) in v.iter_mut().zip(&self.powers[k % self.order as usize]) {
                    *a += m * b;
                }
            }
        }
        v
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let d = self.degree;
        let mut raw = vec![0i64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (r, &y) in raw[i..i + d].iter_mut().zip(b) {
                *r += x * y;
            }
        }
        let mut v = raw[..d].to_vec();
        for (k, &c) in raw.iter().enumerate().skip(d) {
            if c != 0 {
                for (acc, &p) in v.iter_mut().zip(&self.powers[k]) {
                    *acc += c * p;
                }
            }
        }
        v
    }

    pub fn scale(&self, a: &[i64], k: i64) -> Vec<i64> {
        a.iter().map(|x| x * k).collect()
    }

    /// Complex conjugation, `zeta -> zeta^-1`.
    pub fn conj(&self, a: &[i64]) -> Vec<i64> {
        let mut v = self.zero();
        for (k, &x) in a.iter().enumerate() {
            if x != 0 {
                for (acc, &c) in v.iter_mut().zip(&self.powers[(self.order as usize - k) % self.order as usize]) {
                    *acc += x * c;
                }
            }
        }
        v
    }

    /// The integer value if `a` is rational.
    pub fn as_integer(&self, a: &[i64]) -> Option<i64> {
        a[1..].iter().all(|&x| x == 0).then_some(a[0])
    }

    /// Image under `zeta -> z` in `F_p`, where `z` is a primitive `e`-th root
    /// of unity mod `p`.
    pub fn reduce_mod(&self, a: &[i64], z: u64, p: u64) -> u64 {
        let mut acc = 0u64;
        let mut zk = 1u64;
        for &x in a {
            acc = (acc + (x.rem_euclid(p as i64) as u64) * zk) % p;
            zk = zk * z % p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_sum_to_mobius() {
        // sum of primitive e-th roots of unity is mu(e)
        for (e, mu) in [(1u64, 1i64), (2, -1), (3, -1), (4, 0), (6, 1), (12, 0), (30, -1)] {
            let f = CyclotomicField::new(e);
            let mut s = f.zero();
            for k in 0..e {
                if crate::arith::gcd(k, e) == 1 {
                    s = f.add(&s, &f.root_power(k as i64));
                }
            }
            assert_eq!(f.as_integer(&s), Some(mu), "e = {e}");
        }
    }

    #[test]
    fn norm_of_root_is_one() {
        let f = CyclotomicField::new(7);
        let z = f.root_power(3);
        assert_eq!(f.as_integer(&f.mul(&z, &f.conj(&z))), Some(1));
        let s = f.add(&f.root_power(1), &f.root_power(2));
        let ss = f.mul(&s, &f.conj(&s));
        assert!(f.as_integer(&ss).is_none());
    }
}
