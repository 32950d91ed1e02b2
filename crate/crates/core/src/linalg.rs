//! Exact linear algebra over finite rings.
//!
//! Homogeneous systems are solved over local chain rings (`Z/p^k` and finite
//! fields) by diagonalizing with pivots of minimal valuation; the solution
//! module is returned as a generating set.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rings::{FiniteRing, Ring};

/// `a = π^v · u` with `u` a unit; `None` for zero.
fn split_valuation(ring: &FiniteRing, a: u32) -> Option<(u32, u32)> {
    if a == ring.zero() {
        return None;
    }
    match ring.modulus() {
        Some(n) if !ring.is_field() => {
            let p = ring.uniformizer() as u64;
            let mut v = 0;
            let mut x = a as u64;
            while x % p == 0 {
                x /= p;
                v += 1;
            }
            Some((v, (x % n) as u32))
        }
        _ => Some((0, a)),
    }
}

/// `a / π^v` for an element of valuation at least `v`.
fn divide_uniformizer(ring: &FiniteRing, a: u32, v: u32) -> u32 {
    if v == 0 {
        return a;
    }
    let p = ring.uniformizer();
    a / p.pow(v)
}

fn require_local(ring: &FiniteRing) -> Result<()> {
    if ring.is_local() && (ring.is_field() || ring.modulus().is_some()) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{} is not a local chain ring", ring.name())))
    }
}

/// Generators of `{x : A x = 0}` for `A` given by rows of length `ncols`.
pub fn nullspace(ring: &FiniteRing, rows: &[Vec<u32>], ncols: usize) -> Result<Vec<Vec<u32>>> {
    require_local(ring)?;
    let mut a: Vec<Vec<u32>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let length = ring.chain_length();
    // column operations are tracked in q (ncols × ncols): x = q y
    let mut q = Matrix::identity(ring, ncols);
    let mut col_perm: Vec<usize> = (0..ncols).collect();
    let mut pivots: Vec<(usize, u32)> = Vec::new();
    let mut r = 0;
    while r < a.len() && r < ncols {
        // pivot of minimal valuation in the remaining block
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for (i, row) in a.iter().enumerate().skip(r) {
            for (pos, &c) in col_perm.iter().enumerate().skip(r) {
                if let Some((v, _)) = split_valuation(ring, row[c]) {
                    if best.is_none_or(|b| v < b.0) {
                        best = Some((v, i, pos));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((v, pi, ppos)) = best else { break };
        a.swap(r, pi);
        col_perm.swap(r, ppos);
        let pc = col_perm[r];
        let (_, u) = split_valuation(ring, a[r][pc]).unwrap();
        let uinv = ring.inverse(&u).expect("unit part");
        for x in a[r].iter_mut() {
            *x = ring.mul_raw(*x, uinv);
        }
        // clear the pivot column in other rows
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[pc] == 0 {
                continue;
            }
            let f = ring.neg_raw(divide_uniformizer(ring, row[pc], v));
            for (x, &y) in row.iter_mut().zip(&prow) {
                if y != 0 {
                    *x = ring.add_raw(*x, ring.mul_raw(f, y));
                }
            }
        }
        // clear the pivot row with column operations: col_j -= f col_pc
        for pos in r + 1..ncols {
            let c = col_perm[pos];
            let val = a[r][c];
            if val == 0 {
                continue;
            }
            let f = ring.neg_raw(divide_uniformizer(ring, val, v));
            for row in a.iter_mut() {
                let t = row[pc];
                if t != 0 {
                    row[c] = ring.add_raw(row[c], ring.mul_raw(f, t));
                }
            }
            for i in 0..ncols {
                let t = *q.get(i, pc);
                if t != 0 {
                    let cur = *q.get(i, c);
                    q.set(i, c, ring.add_raw(cur, ring.mul_raw(f, t)));
                }
            }
        }
        pivots.push((pc, v));
        r += 1;
        a.retain(|row| row.iter().any(|&x| x != 0));
        // rows above r are pivot rows and stay nonzero
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|p| p.0).collect();
    let mut gens = Vec::new();
    for c in 0..ncols {
        if !pivot_cols.contains(&c) {
            gens.push(q.column(c));
        }
    }
    for &(c, v) in &pivots {
        if v > 0 && v < length {
            let scale = ring.pow(&ring.uniformizer(), (length - v) as u64);
            gens.push(q.column(c).iter().map(|&x| ring.mul_raw(scale, x)).collect());
        }
    }
    Ok(gens)
}

/// Inverse over any finite ring; `None` if singular.
pub fn invert(ring: &FiniteRing, m: &Matrix<u32>) -> Option<Matrix<u32>> {
    if !m.is_square() {
        return None;
    }
    if ring.is_local() {
        return invert_local(ring, m);
    }
    let factors = ring.local_factors();
    let parts: Vec<Matrix<u32>> =
        factors.iter().map(|f| invert_local(&f.ring, &m.map(|&x| f.proj[x as usize]))).collect::<Option<Vec<_>>>()?;
    let n = m.rows;
    Some(Matrix::from_fn(n, n, |i, j| {
        let comps: Vec<u32> = parts.iter().map(|p| *p.get(i, j)).collect();
        ring.from_factors(&comps)
    }))
}

fn invert_local(ring: &FiniteRing, m: &Matrix<u32>) -> Option<Matrix<u32>> {
    let n = m.rows;
    let mut a = m.clone();
    let mut b = Matrix::identity(ring, n);
    for col in 0..n {
        let piv = (col..n).find(|&i| ring.is_unit(a.get(i, col)))?;
        if piv != col {
            for j in 0..n {
                let (x, y) = (*a.get(col, j), *a.get(piv, j));
                a.set(col, j, y);
                a.set(piv, j, x);
                let (x, y) = (*b.get(col, j), *b.get(piv, j));
                b.set(col, j, y);
                b.set(piv, j, x);
            }
        }
        let inv = ring.inverse(a.get(col, col)).unwrap();
        for j in 0..n {
            a.set(col, j, ring.mul_raw(*a.get(col, j), inv));
            b.set(col, j, ring.mul_raw(*b.get(col, j), inv));
        }
        for i in 0..n {
            let f = *a.get(i, col);
            if i == col || f == 0 {
                continue;
            }
            let f = ring.neg_raw(f);
            for j in 0..n {
                let (ac, bc) = (*a.get(col, j), *b.get(col, j));
                if ac != 0 {
                    a.set(i, j, ring.add_raw(*a.get(i, j), ring.mul_raw(f, ac)));
                }
                if bc != 0 {
                    b.set(i, j, ring.add_raw(*b.get(i, j), ring.mul_raw(f, bc)));
                }
            }
        }
    }
    Some(b)
}

fn as_square(v: &[u32], n: usize) -> Matrix<u32> {
    Matrix { rows: n, cols: n, data: v.to_vec() }
}

/// Scans generators, then pairwise sums, then seeded random combinations for
/// an element accepted by `accept` (typically: invertible and structure-preserving).
pub fn search_combinations<T>(
    ring: &FiniteRing,
    gens: &[Vec<u32>],
    n: usize,
    tries: usize,
    seed: u64,
    mut accept: impl FnMut(&Matrix<u32>) -> Option<T>,
) -> Option<T> {
    for g in gens {
        if let Some(t) = accept(&as_square(g, n)) {
            return Some(t);
        }
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len().min(i + 16) {
            let s: Vec<u32> = gens[i].iter().zip(&gens[j]).map(|(&a, &b)| ring.add_raw(a, b)).collect();
            if let Some(t) = accept(&as_square(&s, n)) {
                return Some(t);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tries {
        let mut acc = vec![0u32; n * n];
        for g in gens {
            let c = rng.gen_range(0..ring.size());
            if c == 0 {
                continue;
            }
            for (x, &y) in acc.iter_mut().zip(g) {
                *x = ring.add_raw(*x, ring.mul_raw(c, y));
            }
        }
        if let Some(t) = accept(&as_square(&acc, n)) {
            return Some(t);
        }
    }
    None
}

/// Rows of the system `Σ_k (A_k M − M B_k) = 0` in the unknown `n×n` matrix `M`
/// (row-major unknown index `i·n + j`), one block per pair `(A_k, B_k)`.
pub fn intertwining_rows(ring: &FiniteRing, pairs: &[(&Matrix<u32>, &Matrix<u32>)], n: usize) -> Vec<Vec<u32>> {
    let mut rows = Vec::new();
    for (a, b) in pairs {
        // (A M)_{ij} = Σ_k A_{ik} M_{kj};  (M B)_{ij} = Σ_k M_{ik} B_{kj}
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![0u32; n * n];
                for k in 0..n {
                    let x = *a.get(i, k);
                    if x != 0 {
                        row[k * n + j] = ring.add_raw(row[k * n + j], x);
                    }
                    let y = *b.get(k, j);
                    if y != 0 {
                        row[i * n + k] = ring.add_raw(row[i * n + k], ring.neg_raw(y));
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Solves `A x = y` if possible (local chain rings).
pub fn solve(ring: &FiniteRing, rows: &[Vec<u32>], rhs: &[u32]) -> Result<Option<Vec<u32>>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let aug: Vec<Vec<u32>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &y)| {
            let mut v = r.clone();
            v.push(ring.neg_raw(y));
            v
        })
        .collect();
    let gens = nullspace(ring, &aug, ncols + 1)?;
    Ok(gens.iter().find(|g| ring.is_unit(&g[ncols])).map(|g| {
        let inv = ring.inverse(&g[ncols]).unwrap();
        g[..ncols].iter().map(|&x| ring.mul_raw(x, inv)).collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_nullspace(ring: &FiniteRing, rows: &[Vec<u32>], ncols: usize) {
        let gens = nullspace(ring, rows, ncols).unwrap();
        for g in &gens {
            for row in rows {
                let dot = row.iter().zip(g).fold(0, |acc, (&a, &b)| ring.add_raw(acc, ring.mul_raw(a, b)));
                assert_eq!(dot, 0);
            }
        }
        // brute-force completeness for tiny systems
        let q = ring.size() as u64;
        if q.pow(ncols as u32) <= 4096 {
            let mut span = std::collections::HashSet::new();
            span.insert(vec![0u32; ncols]);
            loop {
                let mut grew = false;
                let cur: Vec<Vec<u32>> = span.iter().cloned().collect();
                for v in &cur {
                    for g in &gens {
                        for c in ring.elements() {
                            let w: Vec<u32> = v.iter().zip(g).map(|(&a, &b)| ring.add_raw(a, ring.mul_raw(c, b))).collect();
                            grew |= span.insert(w);
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            let mut all = 0;
            for idx in 0..q.pow(ncols as u32) {
                let mut x = idx;
                let v: Vec<u32> = (0..ncols).map(|_| { let d = (x % q) as u32; x /= q; d }).collect();
                let ok = rows.iter().all(|row| row.iter().zip(&v).fold(0, |acc, (&a, &b)| ring.add_raw(acc, ring.mul_raw(a, b))) == 0);
                if ok {
                    all += 1;
                    assert!(span.contains(&v), "missing solution {v:?}");
                }
            }
            assert_eq!(all, span.len());
        }
    }

    #[test]
    fn nullspace_over_chain_rings() {
        let z4 = FiniteRing::zmod(4);
        check_nullspace(&z4, &[vec![2, 0, 0], vec![0, 1, 2]], 3);
        check_nullspace(&z4, &[vec![2, 2, 0], vec![0, 2, 2]], 3);
        let z9 = FiniteRing::zmod(9);
        check_nullspace(&z9, &[vec![3, 6, 0], vec![0, 3, 1]], 3);
        let f4 = FiniteRing::parse("F4").unwrap();
        check_nullspace(&f4, &[vec![1, 2, 3], vec![2, 3, 1]], 3);
        let z8 = FiniteRing::zmod(8);
        check_nullspace(&z8, &[vec![4, 2, 6], vec![2, 4, 0]], 3);
        assert!(nullspace(&FiniteRing::zmod(6), &[vec![1]], 1).is_err());
    }

    #[test]
    fn inverses() {
        for name in ["Z/5", "Z/4", "Z/6", "F4", "Z/3xZ/3", "Z/12"] {
            let r = FiniteRing::parse(name).unwrap();
            let (o, z) = (r.one(), r.zero());
            let m = Matrix::from_rows(vec![vec![o, o, z], vec![z, o, o], vec![z, z, o]]).unwrap();
            let inv = invert(&r, &m).unwrap();
            assert!(m.mul(&r, &inv).is_identity(&r), "{name}");
        }
        let z4 = FiniteRing::zmod(4);
        let sing = Matrix::from_rows(vec![vec![2, 0], vec![0, 1]]).unwrap();
        assert!(invert(&z4, &sing).is_none());
    }

    #[test]
    fn solve_linear() {
        let z4 = FiniteRing::zmod(4);
        let x = solve(&z4, &[vec![2, 1], vec![0, 2]], &[3, 2]).unwrap().unwrap();
        assert_eq!((2 * x[0] + x[1]) % 4, 3);
        assert_eq!((2 * x[1]) % 4, 2);
        assert!(solve(&z4, &[vec![2]], &[1]).unwrap().is_none());
    }
}
