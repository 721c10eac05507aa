//! Matrices over `Z/l^n` and their Smith normal form.
//!
//! `Z/l^n` is a local ring, so elimination pivots on an entry of minimal
//! `l`-valuation; every other entry of the pivot row and column is then a
//! multiple of the pivot. The transforms are tracked together with their
//! inverses so that kernels, images and cokernels can be read off in
//! original coordinates.

use crate::arith::{ipow, mod_inv};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub modulus: i64,
    data: Vec<i64>,
}

impl ModMatrix {
    pub fn zero(rows: usize, cols: usize, modulus: i64) -> Self {
        ModMatrix { rows, cols, modulus, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, modulus: i64) -> Self {
        let mut m = Self::zero(n, n, modulus);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>], modulus: i64) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(r, c, modulus);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Row-major flat square matrix.
    pub fn from_flat(flat: &[i64], dim: usize, modulus: i64) -> Self {
        let rows: Vec<Vec<i64>> = flat.chunks(dim).map(<[i64]>::to_vec).collect();
        Self::from_rows(&rows, modulus)
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v.rem_euclid(self.modulus);
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).map(<[i64]>::to_vec).take(self.rows).collect()
    }

    pub fn to_flat(&self) -> Vec<i64> {
        self.data.clone()
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols, self.modulus);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(k, j)) % self.modulus;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &ModMatrix) -> ModMatrix {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = (*a - b).rem_euclid(self.modulus);
        }
        out
    }

    pub fn pow(&self, mut k: u64) -> ModMatrix {
        let mut acc = Self::identity(self.rows, self.modulus);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum::<i64>().rem_euclid(self.modulus))
            .collect()
    }

    pub fn transpose(&self) -> ModMatrix {
        let mut out = Self::zero(self.cols, self.rows, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as i64))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row_dst += f * row_src`.
    fn add_row(&mut self, dst: usize, src: usize, f: i64) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + f * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: i64) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + f * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn scale_row(&mut self, r: usize, f: i64) {
        for j in 0..self.cols {
            let v = self.get(r, j) * f;
            self.set(r, j, v);
        }
    }

    fn scale_col(&mut self, c: usize, f: i64) {
        for i in 0..self.rows {
            let v = self.get(i, c) * f;
            self.set(i, c, v);
        }
    }
}

/// `v_l(x)` in `Z/l^n`, with `v(0) = n`.
pub fn mod_valuation(x: i64, ell: u64, n: u32) -> u32 {
    let m = ipow(ell, n) as i64;
    let mut x = x.rem_euclid(m);
    if x == 0 {
        return n;
    }
    let mut v = 0;
    while x % ell as i64 == 0 {
        x /= ell as i64;
        v += 1;
    }
    v
}

/// `D = P A Q` with `D` diagonal, `D_ii = l^(k_i)`, `k_i` non-decreasing.
#[derive(Debug, Clone)]
pub struct Snf {
    pub ell: u64,
    pub n: u32,
    pub diag: Vec<u32>,
    pub p: ModMatrix,
    pub p_inv: ModMatrix,
    pub q: ModMatrix,
    pub q_inv: ModMatrix,
}

pub fn snf(a: &ModMatrix, ell: u64, n: u32) -> Snf {
    let m = ipow(ell, n) as i64;
    assert_eq!(a.modulus, m, "matrix modulus must be l^n");
    let mut d = a.clone();
    let mut p = ModMatrix::identity(a.rows, m);
    let mut p_inv = ModMatrix::identity(a.rows, m);
    let mut q = ModMatrix::identity(a.cols, m);
    let mut q_inv = ModMatrix::identity(a.cols, m);
    let k = a.rows.min(a.cols);
    let mut diag = Vec::with_capacity(k);
    for t in 0..k {
        let mut best: Option<(u32, usize, usize)> = None;
        for i in t..a.rows {
            for j in t..a.cols {
                let v = mod_valuation(d.get(i, j), ell, n);
                if v < n && best.is_none_or(|b| v < b.0) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((v, i, j)) = best else {
            diag.extend(std::iter::repeat_n(n, k - t));
            break;
        };
        if i != t {
            d.swap_rows(i, t);
            p.swap_rows(i, t);
            p_inv.swap_cols(i, t);
        }
        if j != t {
            d.swap_cols(j, t);
            q.swap_cols(j, t);
            q_inv.swap_rows(j, t);
        }
        let lv = ipow(ell, v) as i64;
        let unit = d.get(t, t) / lv;
        let uinv = mod_inv(unit, m as u64).expect("unit part is invertible") as i64;
        d.scale_row(t, uinv);
        p.scale_row(t, uinv);
        p_inv.scale_col(t, unit);
        for r in t + 1..a.rows {
            let x = d.get(r, t);
            if x != 0 {
                let f = (-(x / lv)).rem_euclid(m);
                d.add_row(r, t, f);
                p.add_row(r, t, f);
                p_inv.add_col(t, r, -f);
            }
        }
        for c in t + 1..a.cols {
            let x = d.get(t, c);
            if x != 0 {
                let f = (-(x / lv)).rem_euclid(m);
                d.add_col(c, t, f);
                q.add_col(c, t, f);
                q_inv.add_row(t, c, -f);
            }
        }
        diag.push(v);
    }
    Snf { ell, n, diag, p, p_inv, q, q_inv }
}

impl Snf {
    fn modulus(&self) -> i64 {
        ipow(self.ell, self.n) as i64
    }

    /// Exponent `k` with the `i`-th cokernel factor `Z/l^k`.
    fn coker_exp(&self, i: usize) -> u32 {
        self.diag.get(i).copied().unwrap_or(self.n)
    }

    /// Exponent `k` of the `i`-th kernel factor `Z/l^k` (in `Q`-coordinates).
    fn ker_exp(&self, i: usize) -> u32 {
        self.diag.get(i).copied().unwrap_or(self.n)
    }

    /// Orders of the nontrivial cyclic factors of the kernel.
    pub fn kernel_invariants(&self) -> Vec<u64> {
        (0..self.q.rows).map(|i| self.ker_exp(i)).filter(|&k| k > 0).map(|k| ipow(self.ell, k)).collect()
    }

    /// Generators of the kernel together with their orders.
    pub fn kernel_generators(&self) -> Vec<(Vec<i64>, u64)> {
        let m = self.modulus();
        (0..self.q.rows)
            .filter_map(|i| {
                let k = self.ker_exp(i);
                (k > 0).then(|| {
                    let mut y = vec![0; self.q.rows];
                    y[i] = ipow(self.ell, self.n - k) as i64 % m;
                    (self.q.apply(&y), ipow(self.ell, k))
                })
            })
            .collect()
    }

    pub fn kernel_elements(&self) -> Vec<Vec<i64>> {
        span_elements(&self.kernel_generators(), self.q.rows, self.modulus())
    }

    pub fn kernel_order(&self) -> u64 {
        self.kernel_invariants().iter().product()
    }

    /// Orders of the nontrivial cyclic factors of the cokernel.
    pub fn cokernel_invariants(&self) -> Vec<u64> {
        (0..self.p.rows).map(|i| self.coker_exp(i)).filter(|&k| k > 0).map(|k| ipow(self.ell, k)).collect()
    }

    pub fn cokernel_order(&self) -> u64 {
        self.cokernel_invariants().iter().product()
    }

    /// Rows of `P` that carry a nontrivial cokernel factor.
    pub fn cokernel_indices(&self) -> Vec<usize> {
        (0..self.p.rows).filter(|&i| self.coker_exp(i) > 0).collect()
    }

    /// Coordinates of `x + im(A)` in `Z/l^(k_1) + ...`, one per nontrivial factor.
    pub fn cokernel_coords(&self, x: &[i64]) -> Vec<i64> {
        let z = self.p.apply(x);
        self.cokernel_indices()
            .into_iter()
            .map(|i| z[i].rem_euclid(ipow(self.ell, self.coker_exp(i)) as i64))
            .collect()
    }

    /// A vector representing the given cokernel coordinates.
    pub fn cokernel_lift(&self, coords: &[i64]) -> Vec<i64> {
        let mut z = vec![0; self.p.rows];
        for (&i, &c) in self.cokernel_indices().iter().zip(coords) {
            z[i] = c;
        }
        self.p_inv.apply(&z)
    }

    pub fn in_image(&self, x: &[i64]) -> bool {
        self.cokernel_coords(x).iter().all(|&c| c == 0)
    }

    /// Matrix of the map induced by `w` on the cokernel, in cokernel
    /// coordinates. `w` must preserve the image.
    pub fn induced_on_cokernel(&self, w: &ModMatrix) -> Vec<Vec<i64>> {
        let idx = self.cokernel_indices();
        let conj = self.p.mul(w).mul(&self.p_inv);
        idx.iter()
            .map(|&i| {
                let mi = ipow(self.ell, self.coker_exp(i)) as i64;
                idx.iter().map(|&j| conj.get(i, j).rem_euclid(mi)).collect()
            })
            .collect()
    }
}

/// Every element of the subgroup of `(Z/m)^dim` generated by `gens`
/// (given with their orders), sorted.
pub fn span_elements(gens: &[(Vec<i64>, u64)], dim: usize, m: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![0; dim]];
    for (g, ord) in gens {
        let mut next = Vec::with_capacity(out.len() * *ord as usize);
        for v in &out {
            let mut cur = v.clone();
            for _ in 0..*ord {
                next.push(cur.clone());
                for (c, x) in cur.iter_mut().zip(g) {
                    *c = (*c + x).rem_euclid(m);
                }
            }
        }
        next.sort();
        next.dedup();
        out = next;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_decomposition(a: &ModMatrix, s: &Snf) {
        let d = s.p.mul(a).mul(&s.q);
        for i in 0..d.rows {
            for j in 0..d.cols {
                let want = if i == j && i < s.diag.len() { ipow(s.ell, s.diag[i]) as i64 % a.modulus } else { 0 };
                assert_eq!(d.get(i, j), want, "entry ({i},{j})");
            }
        }
        assert!(s.p.mul(&s.p_inv).is_identity());
        assert!(s.q.mul(&s.q_inv).is_identity());
    }

    #[test]
    fn a2_rotation_minus_one() {
        // u - 1 for u = [[0,-1],[1,-1]] has determinant 3
        for n in 1..=4 {
            let m = ipow(3, n) as i64;
            let a = ModMatrix::from_rows(&[vec![-1, -1], vec![1, -2]], m);
            let s = snf(&a, 3, n);
            check_decomposition(&a, &s);
            assert_eq!(s.kernel_order(), 3);
            assert_eq!(s.cokernel_order(), 3);
            for x in s.kernel_elements() {
                assert!(a.apply(&x).iter().all(|&c| c == 0));
            }
        }
    }

    #[test]
    fn cokernel_coordinates_detect_image() {
        let m = 27;
        let a = ModMatrix::from_rows(&[vec![3, 6], vec![9, 0]], m);
        let s = snf(&a, 3, 3);
        check_decomposition(&a, &s);
        let all: Vec<Vec<i64>> = span_elements(&[(vec![1, 0], 27), (vec![0, 1], 27)], 2, m);
        let image: std::collections::BTreeSet<Vec<i64>> = all.iter().map(|x| a.apply(x)).collect();
        for x in &all {
            assert_eq!(s.in_image(x), image.contains(x));
        }
        assert_eq!(s.cokernel_order() as usize * image.len(), 27 * 27);
        let c = s.cokernel_coords(&[1, 2]);
        assert_eq!(s.cokernel_coords(&s.cokernel_lift(&c)), c);
    }

    #[test]
    fn rectangular_and_zero() {
        let z = ModMatrix::zero(2, 3, 9);
        let s = snf(&z, 3, 2);
        assert_eq!(s.kernel_order(), 729);
        assert_eq!(s.cokernel_order(), 81);
        let a = ModMatrix::from_rows(&[vec![1, 2, 3]], 5);
        let s = snf(&a, 5, 1);
        check_decomposition(&a, &s);
        assert_eq!(s.kernel_order(), 25);
        assert_eq!(s.cokernel_order(), 1);
    }
}
