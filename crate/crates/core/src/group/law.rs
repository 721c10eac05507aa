//! Composition laws on canonical element encodings.
//!
//! Every element of every group is a flat `Vec<i64>`:
//! permutations are image arrays, matrices are row-major with entries
//! reduced into `[0, m)`, products are concatenations of their factors.

use std::sync::Arc;

use super::FiniteGroup;
use crate::arith::mod_inv;
use crate::{Error, Result};

pub type Code = Vec<i64>;

/// Entries of integer matrix groups larger than this mean the group is
/// not finite (or at least not at desk scale).
const INTEGER_ENTRY_BOUND: i64 = 1 << 40;

#[derive(Debug, Clone)]
pub enum Law {
    /// `Z/n` written additively; encoding `[k]`.
    Cyclic(u64),
    /// Permutations of `0..degree`; `x * y` applies `x` first.
    Perm(usize),
    /// Square matrices over `Z/modulus`, or over `Z` when `modulus == 0`.
    Mat { dim: usize, modulus: u64 },
    Direct(Vec<Law>),
    /// `N x| K` with `(n1, k1)(n2, k2) = (n1 * k1(n2), k1 k2)`.
    Semidirect(Arc<SemidirectData>),
    /// Cosets of a normal subgroup, encoded by coset index.
    Quotient(Arc<QuotientData>),
}

#[derive(Debug)]
pub struct SemidirectData {
    pub normal: Arc<FiniteGroup>,
    pub top: Arc<FiniteGroup>,
    /// `action[k][n]` is the index of `k(n)` in `normal`.
    pub action: Vec<Vec<u32>>,
}

#[derive(Debug)]
pub struct QuotientData {
    pub parent: Arc<FiniteGroup>,
    pub coset_of: Vec<u32>,
    pub reps: Vec<u32>,
}

impl Law {
    pub fn width(&self) -> usize {
        match self {
            Law::Cyclic(_) | Law::Quotient(_) => 1,
            Law::Perm(n) => *n,
            Law::Mat { dim, .. } => dim * dim,
            Law::Direct(fs) => fs.iter().map(Law::width).sum(),
            Law::Semidirect(_) => 2,
        }
    }

    pub fn identity(&self) -> Code {
        match self {
            Law::Cyclic(_) => vec![0],
            Law::Perm(n) => (0..*n as i64).collect(),
            Law::Mat { dim, .. } => {
                let mut c = vec![0; dim * dim];
                for i in 0..*dim {
                    c[i * dim + i] = 1;
                }
                c
            }
            Law::Direct(fs) => fs.iter().flat_map(Law::identity).collect(),
            Law::Semidirect(d) => vec![d.normal.identity() as i64, d.top.identity() as i64],
            Law::Quotient(q) => vec![q.coset_of[q.parent.identity()] as i64],
        }
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Code {
        match self {
            Law::Cyclic(n) => vec![(a[0] + b[0]).rem_euclid(*n as i64)],
            Law::Perm(_) => a.iter().map(|&i| b[i as usize]).collect(),
            Law::Mat { dim, modulus } => mat_mul(a, b, *dim, *modulus),
            Law::Direct(fs) => {
                let mut out = Vec::with_capacity(a.len());
                let mut off = 0;
                for f in fs {
                    let w = f.width();
                    out.extend(f.mul(&a[off..off + w], &b[off..off + w]));
                    off += w;
                }
                out
            }
            Law::Semidirect(d) => {
                let (n1, k1) = (a[0] as usize, a[1] as usize);
                let (n2, k2) = (b[0] as usize, b[1] as usize);
                let moved = d.action[k1][n2] as usize;
                vec![d.normal.mul(n1, moved) as i64, d.top.mul(k1, k2) as i64]
            }
            Law::Quotient(q) => {
                let x = q.reps[a[0] as usize] as usize;
                let y = q.reps[b[0] as usize] as usize;
                vec![q.coset_of[q.parent.mul(x, y)] as i64]
            }
        }
    }

    pub fn inv(&self, a: &[i64]) -> Result<Code> {
        Ok(match self {
            Law::Cyclic(n) => vec![(-a[0]).rem_euclid(*n as i64)],
            Law::Perm(_) => {
                let mut out = vec![0; a.len()];
                for (i, &j) in a.iter().enumerate() {
                    out[j as usize] = i as i64;
                }
                out
            }
            Law::Mat { dim, modulus } => mat_inv(a, *dim, *modulus)?,
            Law::Direct(fs) => {
                let mut out = Vec::with_capacity(a.len());
                let mut off = 0;
                for f in fs {
                    let w = f.width();
                    out.extend(f.inv(&a[off..off + w])?);
                    off += w;
                }
                out
            }
            Law::Semidirect(d) => {
                let (n, k) = (a[0] as usize, a[1] as usize);
                let kinv = d.top.inv(k);
                let ninv = d.normal.inv(n);
                vec![d.action[kinv][ninv] as i64, kinv as i64]
            }
            Law::Quotient(q) => {
                let x = q.reps[a[0] as usize] as usize;
                vec![q.coset_of[q.parent.inv(x)] as i64]
            }
        })
    }

    /// Rejects encodings that cannot belong to a finite group under this law.
    pub fn check_code(&self, a: &[i64]) -> Result<()> {
        if a.len() != self.width() {
            return Err(Error::MalformedSpec(format!(
                "encoding of length {} for a law of width {}",
                a.len(),
                self.width()
            )));
        }
        match self {
            Law::Perm(n) => {
                let mut seen = vec![false; *n];
                for &i in a {
                    if i < 0 || i as usize >= *n || seen[i as usize] {
                        return Err(Error::MalformedSpec("not a permutation".into()));
                    }
                    seen[i as usize] = true;
                }
            }
            Law::Mat { modulus: 0, .. } => {
                if a.iter().any(|x| x.abs() > INTEGER_ENTRY_BOUND) {
                    return Err(Error::MalformedSpec(
                        "integer matrix entries unbounded; group is not finite".into(),
                    ));
                }
            }
            Law::Mat { dim, modulus } => {
                let det = determinant(a, *dim);
                if mod_inv((det.rem_euclid(*modulus as i128)) as i64, *modulus).is_none() {
                    return Err(Error::MalformedSpec(format!(
                        "matrix is not invertible over Z/{modulus}"
                    )));
                }
            }
            Law::Direct(fs) => {
                let mut off = 0;
                for f in fs {
                    let w = f.width();
                    f.check_code(&a[off..off + w])?;
                    off += w;
                }
            }
            _ => {}
        }
        Ok(())
    }
}

pub fn mat_mul(a: &[i64], b: &[i64], dim: usize, modulus: u64) -> Code {
    let mut out = vec![0i64; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik == 0 {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] += aik * b[k * dim + j];
            }
        }
    }
    if modulus > 0 {
        let m = modulus as i64;
        for x in &mut out {
            *x = x.rem_euclid(m);
        }
    }
    out
}

/// Exact integer determinant by fraction-free elimination.
pub fn determinant(a: &[i64], dim: usize) -> i128 {
    if dim == 0 {
        return 1;
    }
    let mut m: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..dim {
        if m[k * dim + k] == 0 {
            match (k + 1..dim).find(|&i| m[i * dim + k] != 0) {
                Some(i) => {
                    for j in 0..dim {
                        m.swap(k * dim + j, i * dim + j);
                    }
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..dim {
            for j in k + 1..dim {
                m[i * dim + j] =
                    (m[i * dim + j] * m[k * dim + k] - m[i * dim + k] * m[k * dim + j]) / prev;
            }
        }
        prev = m[k * dim + k];
    }
    sign * m[dim * dim - 1]
}

fn minor(a: &[i64], dim: usize, row: usize, col: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity((dim - 1) * (dim - 1));
    for i in (0..dim).filter(|&i| i != row) {
        for j in (0..dim).filter(|&j| j != col) {
            out.push(a[i * dim + j]);
        }
    }
    out
}

fn mat_inv(a: &[i64], dim: usize, modulus: u64) -> Result<Code> {
    let det = determinant(a, dim);
    let det_inv: i128 = if modulus == 0 {
        match det {
            1 => 1,
            -1 => -1,
            _ => {
                return Err(Error::MalformedSpec(
                    "integer matrix is not unimodular".into(),
                ))
            }
        }
    } else {
        let d = det.rem_euclid(modulus as i128) as i64;
        mod_inv(d, modulus)
            .ok_or_else(|| Error::MalformedSpec(format!("matrix not invertible over Z/{modulus}")))?
            as i128
    };
    let mut out = vec![0i64; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let cof = if dim == 1 {
                1
            } else {
                determinant(&minor(a, dim, j, i), dim - 1)
            };
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            let v = sign * cof * det_inv;
            out[i * dim + j] = if modulus == 0 {
                v as i64
            } else {
                v.rem_euclid(modulus as i128) as i64
            };
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_inverse_roundtrip() {
        let law = Law::Mat { dim: 2, modulus: 5 };
        let a = vec![2, 1, 1, 1];
        let ai = law.inv(&a).unwrap();
        assert_eq!(law.mul(&a, &ai), law.identity());
        let z = Law::Mat { dim: 2, modulus: 0 };
        let u = vec![0, -1, 1, -1];
        let ui = z.inv(&u).unwrap();
        assert_eq!(z.mul(&u, &ui), z.identity());
    }

    #[test]
    fn determinant_exact() {
        assert_eq!(determinant(&[1, 2, 3, 4, 5, 6, 7, 8, 10], 3), -3);
        assert_eq!(determinant(&[0, 1, 1, 0], 2), -1);
    }

    #[test]
    fn singular_matrix_rejected() {
        let law = Law::Mat { dim: 2, modulus: 3 };
        assert!(law.check_code(&[1, 1, 1, 1]).is_err());
        assert!(law.check_code(&[1, 1, 0, 1]).is_ok());
    }
}
