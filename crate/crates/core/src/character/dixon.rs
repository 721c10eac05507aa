//! Class-algebra character tables: simultaneous eigenvectors of the class
//! multiplication matrices over `F_p`, lifted to exact cyclotomic values.

use crate::arith::{is_prime, isqrt, mod_inv, mod_pow, primitive_root};
use crate::cyclotomic::CyclotomicField;
use crate::group::{conjugacy_classes, ClassPartition, FiniteGroup};
use crate::{Error, Result};

use super::CharacterTable;

/// Number of primes tried before giving up on a split.
const PRIME_ATTEMPTS: usize = 8;

pub(super) fn compute(g: &FiniteGroup) -> Result<CharacterTable> {
    let classes = conjugacy_classes(g);
    if g.is_abelian() {
        if let Some(t) = abelian(g, &classes) {
            return Ok(t);
        }
    }
    class_algebra(g, &classes)
}

fn class_algebra(g: &FiniteGroup, classes: &ClassPartition) -> Result<CharacterTable> {
    let r = classes.len();
    let n = g.order() as u64;
    let e = g.exponent();
    let reps: Vec<usize> = (0..r).map(|c| classes.rep(c)).collect();
    let sizes: Vec<u64> = (0..r).map(|c| classes.size(c) as u64).collect();
    let orders: Vec<u64> = reps.iter().map(|&x| g.element_order(x)).collect();
    let inverse_class: Vec<usize> = reps.iter().map(|&x| classes.class_of(g.inv(x))).collect();
    // power_class[c][t] = class of rep_c^t, t < order
    let power_class: Vec<Vec<usize>> = reps
        .iter()
        .zip(&orders)
        .map(|(&x, &o)| {
            let mut y = g.identity();
            (0..o)
                .map(|_| {
                    let c = classes.class_of(y);
                    y = g.mul(y, x);
                    c
                })
                .collect()
        })
        .collect();
    // coeff[i][j][k] = #{x in K_i : x^-1 z_k in K_j}
    let mut coeff = vec![vec![vec![0u64; r]; r]; r];
    for i in 0..r {
        for &x in &classes.classes[i] {
            let xi = g.inv(x);
            for (k, &z) in reps.iter().enumerate() {
                coeff[i][classes.class_of(g.mul(xi, z))][k] += 1;
            }
        }
    }

    let field = CyclotomicField::new(e);
    let min = 2 * isqrt(n) + 2;
    let mut p = (min / e + 1) * e + 1;
    let mut last_err = String::new();
    for _ in 0..PRIME_ATTEMPTS {
        while !is_prime(p) {
            p += e;
        }
        match attempt(p, n, e, &coeff, &sizes, &orders, &inverse_class, &power_class, &field) {
            Ok((degrees, values)) => {
                let mut t = CharacterTable {
                    group_order: n,
                    basis_order: e,
                    class_reps: reps.clone(),
                    class_sizes: sizes.clone(),
                    class_orders: orders.clone(),
                    inverse_class: inverse_class.clone(),
                    degrees,
                    values,
                    prime: p,
                    field: field.clone(),
                };
                t.sort_characters();
                return Ok(t);
            }
            Err(msg) => last_err = msg,
        }
        p += e;
    }
    Err(Error::TableFailed(last_err))
}

/// Characters of an abelian group as homomorphisms to `mu_e`: tuples of
/// exponents on the generators that kill every relation found by a
/// breadth-first walk. `None` when the tuple space is much larger than `|G|`.
fn abelian(g: &FiniteGroup, classes: &ClassPartition) -> Option<CharacterTable> {
    let n = g.order();
    let e = g.exponent();
    let gens = g.generators().to_vec();
    let k = gens.len();
    let ords: Vec<u64> = gens.iter().map(|&x| g.element_order(x)).collect();
    ords.iter().try_fold(1u64, |acc, &o| acc.checked_mul(o).filter(|&p| p <= 64 * n as u64))?;
    // log[h] = exponent vector of a word for h; relations are vectors mapping to 1
    let mut log: Vec<Option<Vec<u64>>> = vec![None; n];
    log[g.identity()] = Some(vec![0; k]);
    let mut queue = std::collections::VecDeque::from([g.identity()]);
    let mut relations = Vec::new();
    while let Some(h) = queue.pop_front() {
        let lh = log[h].clone().expect("visited");
        for (i, &x) in gens.iter().enumerate() {
            let y = g.mul(h, x);
            let mut v = lh.clone();
            v[i] = (v[i] + 1) % ords[i];
            match &log[y] {
                None => {
                    log[y] = Some(v);
                    queue.push_back(y);
                }
                Some(w) if *w != v => {
                    relations.push(v.iter().zip(w).map(|(a, b)| *a as i64 - *b as i64).collect::<Vec<i64>>());
                }
                _ => {}
            }
        }
    }
    let field = CyclotomicField::new(e);
    let r = classes.len();
    let reps: Vec<usize> = (0..r).map(|c| classes.rep(c)).collect();
    let mut values = Vec::with_capacity(n);
    let mut a = vec![0u64; k];
    loop {
        // generator i goes to zeta^(a_i e / ord_i)
        let ex: Vec<i64> = (0..k).map(|i| (a[i] * (e / ords[i])) as i64).collect();
        let kills = relations.iter().all(|rel| rel.iter().zip(&ex).map(|(r, x)| r * x).sum::<i64>().rem_euclid(e as i64) == 0);
        if kills {
            let row = reps
                .iter()
                .map(|&h| {
                    let l = log[h].as_ref().expect("connected");
                    field.root_power(l.iter().zip(&ex).map(|(&li, x)| li as i64 * x).sum())
                })
                .collect();
            values.push(row);
        }
        let mut i = 0;
        while i < k {
            a[i] += 1;
            if a[i] < ords[i] {
                break;
            }
            a[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    if values.len() != n {
        return None;
    }
    let mut t = CharacterTable {
        group_order: n as u64,
        basis_order: e,
        class_reps: reps.clone(),
        class_sizes: vec![1; r],
        class_orders: reps.iter().map(|&x| g.element_order(x)).collect(),
        inverse_class: reps.iter().map(|&x| classes.class_of(g.inv(x))).collect(),
        degrees: vec![1; n],
        values,
        prime: 0,
        field,
    };
    t.sort_characters();
    Some(t)
}

type Lifted = (Vec<u64>, Vec<Vec<Vec<i64>>>);

#[allow(clippy::too_many_arguments)]
fn attempt(
    p: u64,
    n: u64,
    e: u64,
    coeff: &[Vec<Vec<u64>>],
    sizes: &[u64],
    orders: &[u64],
    inverse_class: &[usize],
    power_class: &[Vec<usize>],
    field: &CyclotomicField,
) -> std::result::Result<Lifted, String> {
    let r = sizes.len();
    // split F_p^r into common eigenspaces of all class matrices
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity_rows(r)];
    for (i, m) in coeff.iter().enumerate().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let parts = split_space(&space, m, p);
            let dim: usize = parts.iter().map(Vec::len).sum();
            if dim != space.len() {
                return Err(format!("class matrix {i} not diagonalizable over F_{p}"));
            }
            next.extend(parts);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) || spaces.len() != r {
        return Err(format!("incomplete split over F_{p}"));
    }
    let z = mod_pow(primitive_root(p), (p - 1) / e, p);
    let mut degrees = Vec::with_capacity(r);
    let mut values = Vec::with_capacity(r);
    for space in spaces {
        let w = &space[0];
        let inv0 = mod_inv(w[0] as i64, p).ok_or("eigenvector with zero identity coordinate")?;
        let omega: Vec<u64> = w.iter().map(|&x| x * inv0 % p).collect();
        // chi(1)^2 = |G| / sum_i omega_i omega_i* / |K_i|
        let mut s = 0u64;
        for i in 0..r {
            let t = omega[i] * omega[inverse_class[i]] % p * mod_inv(sizes[i] as i64, p).expect("p > |K_i|") % p;
            s = (s + t) % p;
        }
        let sinv = mod_inv(s as i64, p).ok_or("degenerate degree sum")?;
        let d2 = n % p * sinv % p;
        let d = (1..=isqrt(n))
            .find(|&d| d * d % p == d2 && n.is_multiple_of(d))
            .ok_or_else(|| format!("no degree over F_{p}"))?;
        let chi: Vec<u64> =
            (0..r).map(|i| omega[i] * d % p * mod_inv(sizes[i] as i64, p).expect("unit") % p).collect();
        let mut row = Vec::with_capacity(r);
        for i in 0..r {
            let o = orders[i];
            let step = e / o;
            let zo = mod_pow(z, step, p);
            let oinv = mod_inv(o as i64, p).expect("o | e < p");
            let mut mult = vec![0i64; e as usize];
            let mut total = 0u64;
            for s in 0..o {
                // m_s = (1/o) sum_t chi(g^t) zeta_o^(-s t)
                let zneg = mod_pow(zo, (o - s) % o, p);
                let mut acc = 0u64;
                let mut zt = 1u64;
                for t in 0..o as usize {
                    acc = (acc + chi[power_class[i][t]] * zt) % p;
                    zt = zt * zneg % p;
                }
                let m = acc * oinv % p;
                if m > d {
                    return Err(format!("eigenvalue multiplicity out of range over F_{p}"));
                }
                total += m;
                mult[(s * step) as usize] += m as i64;
            }
            if total != d {
                return Err(format!("multiplicities do not sum to the degree over F_{p}"));
            }
            row.push(field.from_multiplicities(&mult));
        }
        degrees.push(d);
        values.push(row);
    }
    Ok((degrees, values))
}

fn identity_rows(r: usize) -> Vec<Vec<u64>> {
    (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect()
}

/// Splits the invariant subspace spanned by `basis` (rows) into eigenspaces
/// of `m` acting on column vectors, `(m v)_j = sum_k m[j][k] v_k`.
fn split_space(basis: &[Vec<u64>], m: &[Vec<u64>], p: u64) -> Vec<Vec<Vec<u64>>> {
    let (b, pivots) = rref(basis.to_vec(), p);
    let d = b.len();
    let r = m.len();
    // restricted matrix x[k][j] = (m b_j)[pivot_k]
    let mut x = vec![vec![0u64; d]; d];
    for (j, bj) in b.iter().enumerate() {
        for (k, &pk) in pivots.iter().enumerate() {
            let mut acc = 0u64;
            for l in 0..r {
                if bj[l] != 0 {
                    acc = (acc + m[pk][l] % p * bj[l]) % p;
                }
            }
            x[k][j] = acc;
        }
    }
    let poly = charpoly(&x, p);
    let mut out = Vec::new();
    for lambda in 0..p {
        if eval(&poly, lambda, p) != 0 {
            continue;
        }
        let mut y = x.clone();
        for (i, row) in y.iter_mut().enumerate() {
            row[i] = (row[i] + p - lambda) % p;
        }
        let null = nullspace(y, p);
        let vecs: Vec<Vec<u64>> = null
            .into_iter()
            .map(|c| {
                let mut v = vec![0u64; r];
                for (k, &ck) in c.iter().enumerate() {
                    if ck != 0 {
                        for l in 0..r {
                            v[l] = (v[l] + ck * b[k][l]) % p;
                        }
                    }
                }
                v
            })
            .collect();
        out.push(vecs);
    }
    out
}

fn rref(mut a: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(piv) = (row..rows).find(|&i| a[i][col] != 0) else { continue };
        a.swap(row, piv);
        let inv = mod_inv(a[row][col] as i64, p).expect("nonzero pivot");
        for v in a[row].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows {
            if i != row && a[i][col] != 0 {
                let f = a[i][col];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + (p - f) * a[row][j]) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    a.truncate(row);
    (a, pivots)
}

/// Basis of `{c : y c = 0}`.
fn nullspace(y: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = y.first().map_or(0, Vec::len);
    let (red, pivots) = rref(y, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(x I - a)` mod `p` via Hessenberg reduction,
/// constant term first.
fn charpoly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = mod_inv(h[m][m - 1] as i64, p).expect("nonzero pivot");
        for i in m + 1..n {
            let u = h[i][m - 1] * inv % p;
            if u == 0 {
                continue;
            }
            for j in 0..n {
                h[i][j] = (h[i][j] + (p - u) * h[m][j]) % p;
            }
            for row in h.iter_mut() {
                row[m] = (row[m] + u * row[i]) % p;
            }
        }
    }
    // p_k(x) = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + (p - h[k][k]) * c) % p;
        }
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = prod * h[i + 1][i] % p;
            let coef = h[i][k] * prod % p;
            if coef != 0 {
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = (next[d] + (p - coef) * c) % p;
                }
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

fn eval(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    #[test]
    fn abelian_path_matches_class_algebra() {
        let c = |n| GroupSpec::Cyclic(n);
        for s in [c(12), GroupSpec::Direct(vec![c(2), c(6)]), GroupSpec::Direct(vec![c(3), c(3), c(3)])] {
            let g = build_group(&s).unwrap();
            let classes = conjugacy_classes(&g);
            let a = abelian(&g, &classes).unwrap();
            let b = class_algebra(&g, &classes).unwrap();
            assert_eq!(a.values, b.values, "{s}");
            assert_eq!(a.degrees, b.degrees);
        }
    }

    fn det_mod(a: &[Vec<u64>], p: u64) -> u64 {
        let n = a.len();
        let mut m = a.to_vec();
        let mut det = 1u64;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| m[i][c] != 0) else { return 0 };
            if piv != c {
                m.swap(piv, c);
                det = (p - det) % p;
            }
            det = det * m[c][c] % p;
            let inv = mod_inv(m[c][c] as i64, p).unwrap();
            for i in c + 1..n {
                let f = m[i][c] * inv % p;
                for j in c..n {
                    m[i][j] = (m[i][j] + (p - f) * m[c][j]) % p;
                }
            }
        }
        det
    }

    #[test]
    fn charpoly_matches_determinant() {
        let p = 101;
        let a = vec![vec![3, 1, 4, 1], vec![5, 9, 2, 6], vec![5, 3, 5, 8], vec![9, 7, 9, 3]];
        let poly = charpoly(&a, p);
        assert_eq!(poly.len(), 5);
        for lambda in [0u64, 1, 7, 50] {
            let shifted: Vec<Vec<u64>> = (0..4)
                .map(|i| (0..4).map(|j| ((if i == j { lambda } else { 0 }) + p - a[i][j] % p) % p).collect())
                .collect();
            assert_eq!(eval(&poly, lambda, p), det_mod(&shifted, p));
        }
    }

    #[test]
    fn nullspace_dimension() {
        let p = 7;
        let y = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = nullspace(y.clone(), p);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &y {
                assert_eq!(row.iter().zip(&v).map(|(a, b)| a * b).sum::<u64>() % p, 0);
            }
        }
    }
}
