//! Chevalley basis of the simple Lie algebra of a root system and its adjoint
//! representation.
//!
//! Basis order: root vectors `x_α` in the root-system order, then `h_1..h_l`.
//! Signs of structure constants follow the extraspecial-pair convention:
//! `N_{α,β} = p + 1 > 0` on extraspecial pairs, everything else forced.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matrix::SparseInt;
use crate::roots::RootSystem;

/// A signed matrix unit `sign · E_{row,col}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixUnit {
    pub row: usize,
    pub col: usize,
    pub sign: i64,
}

#[derive(Debug, Clone)]
pub struct AdjointAlgebra {
    sys: RootSystem,
    /// `nconst[a * |Φ| + b]`, zero when `α + β ∉ Φ`.
    nconst: Vec<i64>,
    coroots: Vec<Vec<i64>>,
    ad: Vec<SparseInt>,
    /// `divided[a][k] = X_α^k / k!` for `k` below the nilpotency index (`k = 0` is the identity).
    divided: Vec<Vec<SparseInt>>,
}

struct ConstantBuilder<'a> {
    sys: &'a RootSystem,
    memo: HashMap<(usize, usize), i64>,
    extraspecial: HashMap<usize, (usize, usize)>,
}

impl<'a> ConstantBuilder<'a> {
    fn new(sys: &'a RootSystem) -> Self {
        let mut extraspecial = HashMap::new();
        // positive roots are even indices in height order; the first special pair found is extraspecial
        for a in sys.positive_roots() {
            for b in sys.positive_roots().filter(|&b| b > a) {
                if let Some(xi) = sys.sum(a, b) {
                    extraspecial.entry(xi).or_insert((a, b));
                }
            }
        }
        ConstantBuilder { sys, memo: HashMap::new(), extraspecial }
    }

    fn norm(&self, a: usize) -> i64 {
        self.sys.norm(a)
    }

    /// `N_{α,β}` for `α + β ∈ Φ`.
    fn get(&mut self, a: usize, b: usize) -> i64 {
        if let Some(&v) = self.memo.get(&(a, b)) {
            return v;
        }
        let sys = self.sys;
        let xi = sys.sum(a, b).expect("α+β must be a root");
        let (pa, pb) = (sys.is_positive(a), sys.is_positive(b));
        let v = match (pa, pb) {
            (true, true) if a > b => -self.get(b, a),
            (true, true) => {
                let (a1, b1) = self.extraspecial[&xi];
                if (a1, b1) == (a, b) {
                    sys.root_chain(b, a).expect("distinct roots").0 + 1
                } else {
                    let nxi = self.norm(xi);
                    // α + β − α1 − β1 = 0 with the pairs regrouped
                    let mut num = 0i64;
                    let mut den = 1i64;
                    let mut terms = Vec::new();
                    if let Some(g1) = sys.sum(b, sys.negate(a1)) {
                        let t = self.get(b, sys.negate(a1)) * self.get(a, sys.negate(b1));
                        terms.push((t, self.norm(g1)));
                    }
                    if let Some(g2) = sys.sum(a, sys.negate(a1)) {
                        let t = self.get(sys.negate(a1), a) * self.get(b, sys.negate(b1));
                        terms.push((t, self.norm(g2)));
                    }
                    for &(_, d) in &terms {
                        den *= d;
                    }
                    for &(t, d) in &terms {
                        num += t * (den / d);
                    }
                    let total = nxi * num;
                    let div = den * self.get(a1, b1);
                    assert_eq!(total % div, 0, "non-integral structure constant");
                    total / div
                }
            }
            (false, false) => -self.get(sys.negate(a), sys.negate(b)),
            _ => {
                let c = sys.negate(xi);
                if sys.is_positive(b) == sys.is_positive(c) {
                    let t = self.norm(c) * self.get(b, c);
                    assert_eq!(t % self.norm(a), 0);
                    t / self.norm(a)
                } else {
                    let t = self.norm(c) * self.get(c, a);
                    assert_eq!(t % self.norm(b), 0);
                    t / self.norm(b)
                }
            }
        };
        self.memo.insert((a, b), v);
        v
    }
}

impl AdjointAlgebra {
    pub fn build(sys: &RootSystem) -> AdjointAlgebra {
        let m = sys.num_roots();
        let l = sys.rank();
        let mut builder = ConstantBuilder::new(sys);
        let mut nconst = vec![0i64; m * m];
        for a in 0..m {
            for b in 0..m {
                if sys.sum(a, b).is_some() {
                    nconst[a * m + b] = builder.get(a, b);
                }
            }
        }
        let coroots = (0..m)
            .map(|a| {
                let na = sys.norm(a);
                (0..l)
                    .map(|i| {
                        let t = sys.root(a)[i] * sys.norm(sys.simple(i));
                        assert_eq!(t % na, 0);
                        t / na
                    })
                    .collect()
            })
            .collect();
        let mut alg = AdjointAlgebra { sys: sys.clone(), nconst, coroots, ad: Vec::new(), divided: Vec::new() };
        let n = alg.dim();
        alg.ad = (0..m)
            .map(|a| {
                let mut dense = vec![0i64; n * n];
                for j in 0..n {
                    for (i, v) in alg.basis_bracket(a, j) {
                        dense[i * n + j] = v;
                    }
                }
                SparseInt::from_dense(n, &dense)
            })
            .collect();
        alg.divided = alg
            .ad
            .iter()
            .map(|x| {
                let ident = SparseInt { n, entries: (0..n).map(|i| (i, i, 1)).collect() };
                let mut out = vec![ident, x.clone()];
                let mut k = 1i64;
                loop {
                    k += 1;
                    let next = out.last().unwrap().mul(x);
                    if next.is_zero() {
                        break;
                    }
                    out.push(next.div_exact(k).expect("divided powers are integral"));
                }
                out
            })
            .collect();
        alg
    }

    pub fn parse(name: &str) -> Result<AdjointAlgebra> {
        Ok(AdjointAlgebra::build(&RootSystem::parse(name)?))
    }

    pub fn sys(&self) -> &RootSystem {
        &self.sys
    }

    /// `N = |Φ| + l`.
    pub fn dim(&self) -> usize {
        self.sys.num_roots() + self.sys.rank()
    }

    /// Basis index of `h_i`.
    pub fn cartan_index(&self, i: usize) -> usize {
        self.sys.num_roots() + i
    }

    pub fn is_root_index(&self, j: usize) -> bool {
        j < self.sys.num_roots()
    }

    /// `N_{α,β}`; zero when `α + β ∉ Φ ∪ {0}`.
    pub fn structure_constant(&self, a: usize, b: usize) -> Result<i64> {
        let m = self.sys.num_roots();
        if a >= m || b >= m {
            return Err(Error::Precondition(format!("root index out of range: {a}, {b}")));
        }
        if b == self.sys.negate(a) {
            return Err(Error::Precondition("[x_α, x_−α] lies in the Cartan subalgebra; use the coroot".into()));
        }
        Ok(self.nconst[a * m + b])
    }

    #[inline]
    fn n_raw(&self, a: usize, b: usize) -> i64 {
        self.nconst[a * self.sys.num_roots() + b]
    }

    /// `h_α` as integer coordinates over `h_1..h_l`.
    pub fn coroot(&self, a: usize) -> &[i64] {
        &self.coroots[a]
    }

    /// `[e_i, e_j]` for basis indices, as sparse coordinates.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        let m = self.sys.num_roots();
        let l = self.sys.rank();
        match (i < m, j < m) {
            (true, true) => {
                if j == self.sys.negate(i) {
                    (0..l).filter(|&k| self.coroots[i][k] != 0).map(|k| (m + k, self.coroots[i][k])).collect()
                } else if let Some(s) = self.sys.sum(i, j) {
                    vec![(s, self.n_raw(i, j))]
                } else {
                    Vec::new()
                }
            }
            (true, false) => {
                let c = self.sys.pairing(i, self.sys.simple(j - m));
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(i, -c)]
                }
            }
            (false, true) => {
                let c = self.sys.pairing(j, self.sys.simple(i - m));
                if c == 0 {
                    Vec::new()
                } else {
                    vec![(j, c)]
                }
            }
            (false, false) => Vec::new(),
        }
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, u: &[i64], v: &[i64]) -> Vec<i64> {
        let n = self.dim();
        let mut out = vec![0i64; n];
        for (i, &a) in u.iter().enumerate().filter(|e| *e.1 != 0) {
            for (j, &b) in v.iter().enumerate().filter(|e| *e.1 != 0) {
                for (k, c) in self.basis_bracket(i, j) {
                    out[k] += a * b * c;
                }
            }
        }
        out
    }

    /// Jacobi identity on three basis vectors.
    pub fn jacobi_holds(&self, a: usize, b: usize, c: usize) -> bool {
        let n = self.dim();
        let unit = |i: usize| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        };
        let (ea, eb, ec) = (unit(a), unit(b), unit(c));
        let t1 = self.bracket(&self.bracket(&ea, &eb), &ec);
        let t2 = self.bracket(&self.bracket(&eb, &ec), &ea);
        let t3 = self.bracket(&self.bracket(&ec, &ea), &eb);
        (0..n).all(|k| t1[k] + t2[k] + t3[k] == 0)
    }

    /// `X_α = ad x_α`.
    pub fn adjoint_matrix(&self, a: usize) -> &SparseInt {
        &self.ad[a]
    }

    /// Matrix of `ad e_j` for any basis index.
    pub fn basis_ad(&self, j: usize) -> SparseInt {
        if j < self.sys.num_roots() {
            return self.ad[j].clone();
        }
        let n = self.dim();
        let mut dense = vec![0i64; n * n];
        for k in 0..n {
            for (i, v) in self.basis_bracket(j, k) {
                dense[i * n + k] = v;
            }
        }
        SparseInt::from_dense(n, &dense)
    }

    /// `X_α^k / k!` for `k = 0, 1, …` up to the last nonzero power.
    pub fn divided_powers(&self, a: usize) -> &[SparseInt] {
        &self.divided[a]
    }

    /// Smallest `k` with `X_α^k = 0`.
    pub fn nilpotency_index(&self, a: usize) -> usize {
        self.divided[a].len()
    }

    /// If `X_α²/2` is a signed matrix unit, return it. For simply-laced systems
    /// this is `−E_{α,−α}` in the built convention.
    pub fn square_half_unit(&self, a: usize) -> Option<MatrixUnit> {
        let d2 = self.divided[a].get(2)?;
        match d2.entries.as_slice() {
            [(r, c, v)] if v.abs() == 1 => Some(MatrixUnit { row: *r, col: *c, sign: *v }),
            _ => None,
        }
    }
}

/// A minuscule highest-weight representation with 0/1 action of simple root vectors.
#[derive(Debug, Clone)]
pub struct MinusculeRep {
    pub node: usize,
    /// Weights in Dynkin-label coordinates; index = basis vector.
    pub weights: Vec<Vec<i64>>,
    /// Image of each Lie algebra basis element (roots then Cartan).
    pub images: Vec<SparseInt>,
}

impl MinusculeRep {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }
}

fn commutator(a: &SparseInt, b: &SparseInt) -> SparseInt {
    let ab = a.mul(b).to_dense();
    let ba = b.mul(a).to_dense();
    let d: Vec<i64> = ab.iter().zip(&ba).map(|(x, y)| x - y).collect();
    SparseInt::from_dense(a.n, &d)
}

impl AdjointAlgebra {
    /// The representation with highest weight `ω_node`, if that weight is minuscule.
    pub fn minuscule_rep(&self, node: usize) -> Option<MinusculeRep> {
        let sys = &self.sys;
        let l = sys.rank();
        let cartan = sys.cartan();
        // labels of α_j: k ↦ ⟨α_j, α_k^∨⟩ = cartan[k][j]
        let alpha_labels = |j: usize| -> Vec<i64> { (0..l).map(|k| cartan[k][j]).collect() };
        let start: Vec<i64> = (0..l).map(|k| i64::from(k == node)).collect();
        let mut weights = vec![start.clone()];
        let mut index: HashMap<Vec<i64>, usize> = HashMap::from([(start, 0)]);
        let mut head = 0;
        while head < weights.len() {
            let w = weights[head].clone();
            head += 1;
            if w.iter().any(|&x| x.abs() > 1) || weights.len() > 4096 {
                return None;
            }
            for j in 0..l {
                if w[j] != 0 {
                    let aj = alpha_labels(j);
                    let s: Vec<i64> = w.iter().zip(&aj).map(|(x, a)| x - w[j] * a).collect();
                    if !index.contains_key(&s) {
                        index.insert(s.clone(), weights.len());
                        weights.push(s);
                    }
                }
            }
        }
        let d = weights.len();
        let m = sys.num_roots();
        let mut images: Vec<Option<SparseInt>> = vec![None; m + l];
        for j in 0..l {
            let aj = alpha_labels(j);
            let mut e = Vec::new();
            let mut f = Vec::new();
            for (v, w) in weights.iter().enumerate() {
                if w[j] == -1 {
                    let up: Vec<i64> = w.iter().zip(&aj).map(|(x, a)| x + a).collect();
                    e.push((index[&up], v, 1));
                }
                if w[j] == 1 {
                    let down: Vec<i64> = w.iter().zip(&aj).map(|(x, a)| x - a).collect();
                    f.push((index[&down], v, 1));
                }
            }
            let sort = |mut v: Vec<(usize, usize, i64)>| {
                v.sort_unstable();
                SparseInt { n: d, entries: v }
            };
            images[sys.simple(j)] = Some(sort(e));
            images[sys.negate(sys.simple(j))] = Some(sort(f));
            images[m + j] = Some(SparseInt { n: d, entries: (0..d).filter(|&v| weights[v][j] != 0).map(|v| (v, v, weights[v][j])).collect() });
        }
        // remaining root vectors by height, via x_ξ = [x_{α_i}, x_η] / N
        for xi in sys.positive_roots() {
            if images[xi].is_some() {
                continue;
            }
            let (ai, eta) = (0..l)
                .map(|i| sys.simple(i))
                .find_map(|a| {
                    let v: Vec<i64> = sys.root(xi).iter().zip(sys.root(a)).map(|(x, y)| x - y).collect();
                    sys.index_of(&v).map(|eta| (a, eta))
                })
                .expect("non-simple positive roots have a simple descent");
            for (a, b) in [(ai, eta), (sys.negate(ai), sys.negate(eta))] {
                let target = sys.sum(a, b).unwrap();
                let c = commutator(images[a].as_ref().unwrap(), images[b].as_ref().unwrap());
                images[target] = Some(c.div_exact(self.n_raw(a, b)).expect("integral minuscule action"));
            }
        }
        let images: Vec<SparseInt> = images.into_iter().map(|x| x.expect("every basis element assigned")).collect();
        let rep = MinusculeRep { node, weights, images };
        debug_assert!(self.is_representation(&rep));
        Some(rep)
    }

    /// Exhaustive check that `rep` preserves all basis brackets.
    pub fn is_representation(&self, rep: &MinusculeRep) -> bool {
        let n = self.dim();
        let d = rep.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = commutator(&rep.images[i], &rep.images[j]).to_dense();
                let mut rhs = vec![0i64; d * d];
                for (k, c) in self.basis_bracket(i, j) {
                    for &(r, s, v) in &rep.images[k].entries {
                        rhs[r * d + s] += c * v;
                    }
                }
                lhs == rhs
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(name: &str) -> AdjointAlgebra {
        AdjointAlgebra::parse(name).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(alg("A2").dim(), 8);
        assert_eq!(alg("B2").dim(), 10);
        assert_eq!(alg("A3").dim(), 15);
        assert_eq!(alg("G2").dim(), 14);
    }

    #[test]
    fn jacobi_exhaustive_small() {
        for name in ["A2", "B2", "G2", "A3", "C3", "B3"] {
            let a = alg(name);
            let n = a.dim();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        assert!(a.jacobi_holds(i, j, k), "{name}: ({i},{j},{k})");
                    }
                }
            }
        }
    }

    #[test]
    fn chain_magnitudes_and_antisymmetry() {
        for name in ["A2", "B2", "G2", "A3", "C3", "D4", "F4"] {
            let a = alg(name);
            let s = a.sys();
            for x in 0..s.num_roots() {
                for y in 0..s.num_roots() {
                    if y == s.negate(x) {
                        assert!(a.structure_constant(x, y).is_err());
                        continue;
                    }
                    let v = a.structure_constant(x, y).unwrap();
                    match s.sum(x, y) {
                        Some(_) => {
                            let (p, _) = s.root_chain(y, x).unwrap();
                            assert_eq!(v.abs(), p + 1, "{name}");
                            assert_eq!(v, -a.structure_constant(y, x).unwrap());
                            assert_eq!(a.structure_constant(s.negate(x), s.negate(y)).unwrap(), -v);
                        }
                        None => assert_eq!(v, 0),
                    }
                }
            }
        }
    }

    #[test]
    fn paper_chain_examples() {
        let a2 = alg("A2");
        assert_eq!(a2.structure_constant(a2.sys().simple(0), a2.sys().simple(1)).unwrap().abs(), 1);
        let g2 = alg("G2");
        let s = g2.sys();
        let a1a2 = s.index_of(&[1, 1]).unwrap();
        assert_eq!(g2.structure_constant(s.simple(0), a1a2).unwrap().abs(), 2);
    }

    #[test]
    fn nilpotency_and_squares() {
        let a2 = alg("A2");
        let s = a2.sys();
        let a1 = s.simple(0);
        // X² on x_{−α1} is −2 x_{α1}
        let x = a2.adjoint_matrix(a1);
        let sq = x.mul(x);
        assert_eq!(sq.get(a1, s.negate(a1)), -2);
        for name in ["A2", "A3", "D4"] {
            let a = alg(name);
            for r in 0..a.sys().num_roots() {
                assert_eq!(a.nilpotency_index(r), 3);
                let u = a.square_half_unit(r).unwrap();
                assert_eq!((u.row, u.col, u.sign), (r, a.sys().negate(r), -1));
            }
        }
        let g2 = alg("G2");
        assert_eq!(g2.nilpotency_index(g2.sys().simple(0)), 4);
        assert_eq!(g2.nilpotency_index(g2.sys().simple(1)), 3);
        let ad = |a: &AdjointAlgebra| (0..a.sys().num_roots()).map(|r| a.adjoint_matrix(r).to_dense()).collect::<Vec<_>>();
        let mats = ad(&g2);
        for i in 0..mats.len() {
            for j in 0..i {
                assert_ne!(mats[i], mats[j]);
            }
        }
    }

    #[test]
    fn minuscule_reps() {
        for (name, node, dim) in [("A2", 0, 3), ("A3", 2, 4), ("A3", 1, 6), ("D4", 0, 8), ("D4", 3, 8), ("D5", 4, 16), ("E6", 0, 27), ("C3", 0, 6)] {
            let a = alg(name);
            let rep = a.minuscule_rep(node).unwrap();
            assert_eq!(rep.dim(), dim, "{name} ω{}", node + 1);
            assert!(a.is_representation(&rep), "{name}");
        }
        assert!(alg("G2").minuscule_rep(0).is_none());
        assert!(alg("E6").minuscule_rep(1).is_none());
    }
}
