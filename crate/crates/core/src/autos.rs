//! Standard automorphisms of `E_ad(Φ, R)`: ring, inner, graph and central.

use crate::error::{Error, Result};
use crate::group::{ChevalleyGroup, GroupElement, Token};
use crate::liealg::AdjointAlgebra;
use crate::linalg;
use crate::matrix::{Matrix, SparseInt};
use crate::rings::{FiniteRing, IdempotentSystem, Ring, RingMap};
use crate::roots::DiagramSymmetry;

/// Signs `ε(α)` with `ε = 1` on simple roots such that `x_α ↦ ε(α) x_{δα}` is a
/// Lie algebra automorphism.
pub fn graph_signs(alg: &AdjointAlgebra, delta: &DiagramSymmetry) -> Result<Vec<i64>> {
    let sys = alg.sys();
    if delta.permutation.len() != sys.rank() || !sys.diagram_symmetries().contains(delta) {
        return Err(Error::Precondition(format!("{:?} is not a diagram symmetry of {}", delta.permutation, sys.name())));
    }
    let m = sys.num_roots();
    let mut eps = vec![0i64; m];
    for i in 0..sys.rank() {
        eps[sys.simple(i)] = 1;
        eps[sys.negate(sys.simple(i))] = 1;
    }
    for xi in sys.positive_roots() {
        if eps[xi] != 0 {
            continue;
        }
        let (a, b) = (0..sys.rank())
            .map(|i| sys.simple(i))
            .find_map(|a| {
                let v: Vec<i64> = sys.root(xi).iter().zip(sys.root(a)).map(|(x, y)| x - y).collect();
                sys.index_of(&v).map(|b| (a, b))
            })
            .expect("simple descent");
        let (da, db) = (delta.apply(sys, a), delta.apply(sys, b));
        let num = alg.structure_constant(da, db)?;
        let den = alg.structure_constant(a, b)?;
        eps[xi] = eps[a] * eps[b] * num / den;
        eps[sys.negate(xi)] = eps[xi];
    }
    Ok(eps)
}

/// The signed permutation `Λ_δ`: `e_β ↦ ε(β) e_{δβ}`, `h_i ↦ h_{δ(i)}`.
pub fn graph_matrix(alg: &AdjointAlgebra, delta: &DiagramSymmetry, signs: &[i64]) -> SparseInt {
    let sys = alg.sys();
    let m = sys.num_roots();
    let mut entries: Vec<(usize, usize, i64)> = (0..m).map(|b| (delta.apply(sys, b), b, signs[b])).collect();
    entries.extend((0..sys.rank()).map(|i| (m + delta.permutation[i], m + i, 1)));
    entries.sort_unstable();
    SparseInt { n: alg.dim(), entries }
}

/// One summand `ε_i Λ_i` of a graph automorphism.
#[derive(Debug, Clone)]
pub struct GraphTerm {
    pub symmetry: DiagramSymmetry,
    pub idempotent: u32,
    pub signs: Vec<i64>,
    pub matrix: SparseInt,
}

#[derive(Debug, Clone)]
pub struct GraphData {
    pub terms: Vec<GraphTerm>,
    pub lambda: Matrix<u32>,
    pub lambda_inv: Matrix<u32>,
}

fn transpose_sparse(s: &SparseInt) -> SparseInt {
    let mut entries: Vec<(usize, usize, i64)> = s.entries.iter().map(|&(i, j, v)| (j, i, v)).collect();
    entries.sort_unstable();
    SparseInt { n: s.n, entries }
}

/// `Λ = Σ ε_i Λ_i` from symmetry/idempotent pairs.
pub fn realize_graph(alg: &AdjointAlgebra, ring: &FiniteRing, data: &[(DiagramSymmetry, u32)]) -> Result<GraphData> {
    IdempotentSystem { elements: data.iter().map(|d| d.1).collect() }.validate(ring)?;
    let n = alg.dim();
    let mut terms = Vec::new();
    let mut lambda = Matrix::zero(ring, n, n);
    let mut lambda_inv = Matrix::zero(ring, n, n);
    for (delta, e) in data {
        let signs = graph_signs(alg, delta)?;
        let matrix = graph_matrix(alg, delta, &signs);
        // Λ_δ is a signed permutation, so its inverse is its transpose
        lambda = lambda.add(ring, &matrix.to_ring(ring).scale(ring, e));
        lambda_inv = lambda_inv.add(ring, &transpose_sparse(&matrix).to_ring(ring).scale(ring, e));
        terms.push(GraphTerm { symmetry: delta.clone(), idempotent: *e, signs, matrix });
    }
    if !lambda.mul(ring, &lambda_inv).is_identity(ring) {
        return Err(Error::NoIntertwiner("combined Λ is not invertible".into()));
    }
    Ok(GraphData { terms, lambda, lambda_inv })
}

impl GraphData {
    pub fn identity(alg: &AdjointAlgebra, ring: &FiniteRing) -> GraphData {
        realize_graph(alg, ring, &[(DiagramSymmetry::identity(alg.sys().rank()), ring.one())]).expect("identity graph")
    }

    pub fn is_identity(&self) -> bool {
        self.terms.iter().all(|t| t.symmetry.is_identity())
    }

    /// Image of `x_α(t)` as a generator word `Π_i x_{δ_i α}(ε_i ε(α) t)`.
    pub fn image_word(&self, ring: &FiniteRing, alg: &AdjointAlgebra, token: &Token<u32>) -> Vec<Token<u32>> {
        self.terms
            .iter()
            .map(|t| {
                let p = ring.mul_raw(t.idempotent, ring.mul_raw(ring.from_i64(t.signs[token.root]), token.param));
                Token { root: t.symmetry.apply(alg.sys(), token.root), param: p }
            })
            .filter(|t| t.param != ring.zero())
            .collect()
    }

    /// `(δ_i, ε_i)` pairs, e.g. for serialization.
    pub fn assignments(&self) -> Vec<(DiagramSymmetry, u32)> {
        self.terms.iter().map(|t| (t.symmetry.clone(), t.idempotent)).collect()
    }

    pub fn inverse(&self, alg: &AdjointAlgebra, ring: &FiniteRing) -> Result<GraphData> {
        realize_graph(alg, ring, &self.terms.iter().map(|t| (t.symmetry.inverse(), t.idempotent)).collect::<Vec<_>>())
    }
}

/// Whether `g · ad(L) · g⁻¹ ⊆ ad(L)` over `R`, checked factor by factor.
pub fn normalizes_lie_algebra(alg: &AdjointAlgebra, ring: &FiniteRing, g: &GroupElement<u32>) -> bool {
    let n = alg.dim();
    let basis: Vec<SparseInt> = (0..n).map(|b| alg.basis_ad(b)).collect();
    ring.local_factors().iter().all(|f| {
        let r = &f.ring;
        let proj = |m: &Matrix<u32>| m.map(|&x| f.proj[x as usize]);
        let mats: Vec<Matrix<u32>> = basis.iter().map(|b| b.to_ring(r)).collect();
        let rows: Vec<Vec<u32>> = (0..n * n).map(|k| mats.iter().map(|m| m.data[k]).collect()).collect();
        let (gm, gi) = (proj(&g.matrix), proj(&g.inverse));
        mats.iter().all(|m| {
            let y = gm.mul(r, m).mul(r, &gi);
            matches!(linalg::solve(r, &rows, &y.data), Ok(Some(_)))
        })
    })
}

#[derive(Debug, Clone)]
pub enum StandardAutomorphism {
    Ring(RingMap),
    Inner(GroupElement<u32>),
    Graph(GraphData),
    /// Central automorphisms act trivially on the elementary adjoint group.
    Central { note: String },
    /// Applied right to left: `[a, b]` is `a ∘ b`.
    Compose(Vec<StandardAutomorphism>),
}

impl StandardAutomorphism {
    pub fn ring(map: RingMap) -> Result<Self> {
        if map.source != map.target || !map.is_bijective() || !map.is_homomorphism() {
            return Err(Error::Precondition("ring map is not an automorphism".into()));
        }
        Ok(StandardAutomorphism::Ring(map))
    }

    /// Inner automorphism; rejects conjugators that do not normalize the Lie algebra image.
    pub fn inner(alg: &AdjointAlgebra, ring: &FiniteRing, g: GroupElement<u32>) -> Result<Self> {
        if !normalizes_lie_algebra(alg, ring, &g) {
            return Err(Error::NotNormalizing("conjugator does not normalize the elementary group".into()));
        }
        Ok(StandardAutomorphism::Inner(g))
    }

    pub fn central() -> Self {
        StandardAutomorphism::Central { note: Self::central_note().into() }
    }

    pub fn central_note() -> &'static str {
        "central automorphisms are trivial on the elementary adjoint group"
    }

    pub fn compose(a: StandardAutomorphism, b: StandardAutomorphism) -> Self {
        let mut parts = Vec::new();
        for x in [a, b] {
            match x {
                StandardAutomorphism::Compose(v) => parts.extend(v),
                other => parts.push(other),
            }
        }
        StandardAutomorphism::Compose(parts)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            StandardAutomorphism::Ring(_) => "ring",
            StandardAutomorphism::Inner(_) => "inner",
            StandardAutomorphism::Graph(_) => "graph",
            StandardAutomorphism::Central { .. } => "central",
            StandardAutomorphism::Compose(_) => "compose",
        }
    }

    pub fn apply(&self, grp: &ChevalleyGroup<'_, FiniteRing>, x: &GroupElement<u32>) -> GroupElement<u32> {
        let ring = &grp.ring;
        match self {
            StandardAutomorphism::Ring(map) => GroupElement {
                matrix: x.matrix.map(|&v| map.apply(v)),
                inverse: x.inverse.map(|&v| map.apply(v)),
                word: x.word.as_ref().map(|w| w.iter().map(|t| Token { root: t.root, param: map.apply(t.param) }).collect()),
            },
            StandardAutomorphism::Inner(g) => {
                let mut y = grp.conj(g, x);
                y.word = None;
                y
            }
            StandardAutomorphism::Graph(data) => GroupElement {
                matrix: data.lambda.mul(ring, &x.matrix).mul(ring, &data.lambda_inv),
                inverse: data.lambda.mul(ring, &x.inverse).mul(ring, &data.lambda_inv),
                word: x.word.as_ref().map(|w| w.iter().flat_map(|t| data.image_word(ring, grp.alg, t)).collect()),
            },
            StandardAutomorphism::Central { .. } => x.clone(),
            StandardAutomorphism::Compose(parts) => parts.iter().rev().fold(x.clone(), |acc, p| p.apply(grp, &acc)),
        }
    }
}

/// Writes `x_α(t)` as a product of commutators of root elements, if possible
/// within a small recursion depth. Each pair `(a, b)` stands for `[a, b]`.
pub fn commutator_expression(
    grp: &ChevalleyGroup<'_, FiniteRing>,
    alpha: usize,
    t: u32,
    depth: usize,
) -> Option<Vec<(GroupElement<u32>, GroupElement<u32>)>> {
    let ring = &grp.ring;
    if t == ring.zero() {
        return Some(Vec::new());
    }
    if depth == 0 {
        return None;
    }
    let sys = grp.alg.sys();
    for beta in 0..sys.num_roots() {
        let v: Vec<i64> = sys.root(alpha).iter().zip(sys.root(beta)).map(|(a, b)| a - b).collect();
        let Some(gamma) = sys.index_of(&v) else { continue };
        let Ok(terms) = crate::group::commutator_coefficients(grp.alg, beta, gamma) else { continue };
        let c11 = terms[0].coefficient;
        let Some(cinv) = ring.inverse(&ring.from_i64(c11)) else { continue };
        let s = ring.mul_raw(t, cinv);
        let mut out = vec![(grp.unipotent(beta, &s), grp.unipotent(gamma, &ring.one()))];
        // comm = x_α(t) · rest, so x_α(t) = comm · rest⁻¹ with rest⁻¹ reversed and negated
        let mut ok = true;
        for term in terms.iter().skip(1).rev() {
            let c = ring.mul_raw(ring.from_i64(-term.coefficient), ring.pow(&s, term.i as u64));
            match commutator_expression(grp, term.root, c, depth - 1) {
                Some(sub) => out.extend(sub),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Some(out);
        }
    }
    None
}
