//! Elements of the elementary adjoint Chevalley group `E_ad(Φ, R)` as `N×N`
//! matrices over a ring.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::liealg::AdjointAlgebra;
use crate::matrix::Matrix;
use num_bigint::BigInt;

use crate::rings::{FiniteRing, Integers, Ring, RingMap};

/// A generator token `x_α(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token<E> {
    pub root: usize,
    pub param: E,
}

/// An invertible matrix with a stored inverse and, optionally, a generator word.
#[derive(Debug, Clone)]
pub struct GroupElement<E> {
    pub matrix: Matrix<E>,
    pub inverse: Matrix<E>,
    pub word: Option<Vec<Token<E>>>,
}

impl<E: PartialEq> PartialEq for GroupElement<E> {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl<E: Eq> Eq for GroupElement<E> {}

/// A homomorphism from the root lattice to `R^*`, given on simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character<E> {
    pub values: Vec<E>,
}

impl<E: Clone> Character<E> {
    /// `χ_{α,u}: λ ↦ u^{⟨λ,α⟩}`.
    pub fn coroot<R: Ring<Elem = E>>(alg: &AdjointAlgebra, ring: &R, alpha: usize, u: &E) -> Result<Self> {
        let sys = alg.sys();
        let values = (0..sys.rank())
            .map(|i| ring.pow_signed(u, sys.pairing(sys.simple(i), alpha)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::NotInvertible("torus parameter".into()))?;
        Ok(Character { values })
    }

    pub fn trivial<R: Ring<Elem = E>>(alg: &AdjointAlgebra, ring: &R) -> Self {
        Character { values: vec![ring.one(); alg.sys().rank()] }
    }

    /// `χ(β) = Π χ(α_i)^{c_i}`; `None` if a needed inverse is missing.
    pub fn eval<R: Ring<Elem = E>>(&self, ring: &R, coeffs: &[i64]) -> Option<E> {
        let mut acc = ring.one();
        for (v, &c) in self.values.iter().zip(coeffs) {
            acc = ring.mul(&acc, &ring.pow_signed(v, c)?);
        }
        Some(acc)
    }
}

/// The group `E_ad(Φ, R)` with cached images of the divided powers.
pub struct ChevalleyGroup<'a, R: Ring> {
    pub alg: &'a AdjointAlgebra,
    pub ring: R,
    divided: Vec<OnceLock<Vec<Vec<(usize, usize, R::Elem)>>>>,
}

impl<'a, R: Ring> ChevalleyGroup<'a, R> {
    pub fn new(alg: &'a AdjointAlgebra, ring: R) -> Self {
        let m = alg.sys().num_roots();
        ChevalleyGroup { alg, ring, divided: (0..m).map(|_| OnceLock::new()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    fn divided(&self, a: usize) -> &[Vec<(usize, usize, R::Elem)>] {
        self.divided[a].get_or_init(|| {
            self.alg
                .divided_powers(a)
                .iter()
                .skip(1)
                .map(|d| {
                    d.entries
                        .iter()
                        .map(|&(i, j, v)| (i, j, self.ring.from_i64(v)))
                        .filter(|e| !self.ring.is_zero(&e.2))
                        .collect()
                })
                .collect()
        })
    }

    pub fn identity(&self) -> GroupElement<R::Elem> {
        let e = Matrix::identity(&self.ring, self.dim());
        GroupElement { matrix: e.clone(), inverse: e, word: Some(Vec::new()) }
    }

    /// Builds an element from a matrix and its claimed inverse, checking both products.
    pub fn from_matrix(&self, matrix: Matrix<R::Elem>, inverse: Matrix<R::Elem>) -> Result<GroupElement<R::Elem>> {
        let n = self.dim();
        if (matrix.rows, matrix.cols, inverse.rows, inverse.cols) != (n, n, n, n) {
            return Err(Error::Mismatch(format!("expected {n}×{n} matrices")));
        }
        if !matrix.mul(&self.ring, &inverse).is_identity(&self.ring) || !inverse.mul(&self.ring, &matrix).is_identity(&self.ring) {
            return Err(Error::NotInvertible("supplied inverse does not certify the matrix".into()));
        }
        Ok(GroupElement { matrix, inverse, word: None })
    }

    /// `Σ_k t^k X_α^k/k!` as a bare matrix.
    pub fn unipotent_matrix(&self, a: usize, t: &R::Elem) -> Matrix<R::Elem> {
        let r = &self.ring;
        let mut m = Matrix::identity(r, self.dim());
        let mut tk = r.one();
        for d in self.divided(a) {
            tk = r.mul(&tk, t);
            if r.is_zero(&tk) {
                break;
            }
            for (i, j, v) in d {
                let cur = m.get(*i, *j).clone();
                m.set(*i, *j, r.add(&cur, &r.mul(&tk, v)));
            }
        }
        m
    }

    /// `x_α(t)`.
    pub fn unipotent(&self, a: usize, t: &R::Elem) -> GroupElement<R::Elem> {
        GroupElement {
            matrix: self.unipotent_matrix(a, t),
            inverse: self.unipotent_matrix(a, &self.ring.neg(t)),
            word: Some(vec![Token { root: a, param: t.clone() }]),
        }
    }

    /// `w_α(t) = x_α(t) x_{−α}(−t⁻¹) x_α(t)`.
    pub fn weyl(&self, a: usize, t: &R::Elem) -> Result<GroupElement<R::Elem>> {
        let inv = self.ring.inverse(t).ok_or_else(|| Error::NotInvertible("Weyl parameter".into()))?;
        let na = self.alg.sys().negate(a);
        let x = self.unipotent(a, t);
        let y = self.unipotent(na, &self.ring.neg(&inv));
        Ok(self.mul(&self.mul(&x, &y), &x))
    }

    /// `h(χ)`: diagonal with `χ(β)` on root lines and 1 on the Cartan lines.
    pub fn torus(&self, chi: &Character<R::Elem>) -> Result<GroupElement<R::Elem>> {
        let sys = self.alg.sys();
        let r = &self.ring;
        let mut diag = Vec::with_capacity(self.dim());
        let mut inv = Vec::with_capacity(self.dim());
        for b in 0..sys.num_roots() {
            let v = chi.eval(r, sys.root(b)).ok_or_else(|| Error::NotInvertible("character value".into()))?;
            inv.push(r.inverse(&v).ok_or_else(|| Error::NotInvertible("character value".into()))?);
            diag.push(v);
        }
        diag.extend(std::iter::repeat(r.one()).take(sys.rank()));
        inv.extend(std::iter::repeat(r.one()).take(sys.rank()));
        Ok(GroupElement { matrix: Matrix::diagonal(r, &diag), inverse: Matrix::diagonal(r, &inv), word: None })
    }

    /// `h_α(u)`.
    pub fn torus_coroot(&self, a: usize, u: &R::Elem) -> Result<GroupElement<R::Elem>> {
        self.torus(&Character::coroot(self.alg, &self.ring, a, u)?)
    }

    pub fn mul(&self, a: &GroupElement<R::Elem>, b: &GroupElement<R::Elem>) -> GroupElement<R::Elem> {
        let word = match (&a.word, &b.word) {
            (Some(x), Some(y)) => Some(x.iter().chain(y).cloned().collect()),
            _ => None,
        };
        GroupElement { matrix: a.matrix.mul(&self.ring, &b.matrix), inverse: b.inverse.mul(&self.ring, &a.inverse), word }
    }

    pub fn inv(&self, a: &GroupElement<R::Elem>) -> GroupElement<R::Elem> {
        let word = a.word.as_ref().map(|w| {
            w.iter().rev().map(|t| Token { root: t.root, param: self.ring.neg(&t.param) }).collect()
        });
        GroupElement { matrix: a.inverse.clone(), inverse: a.matrix.clone(), word }
    }

    /// `g x g⁻¹`.
    pub fn conj(&self, g: &GroupElement<R::Elem>, x: &GroupElement<R::Elem>) -> GroupElement<R::Elem> {
        self.mul(&self.mul(g, x), &self.inv(g))
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: &GroupElement<R::Elem>, b: &GroupElement<R::Elem>) -> Result<GroupElement<R::Elem>> {
        if a.matrix.rows != b.matrix.rows {
            return Err(Error::Mismatch("commutator of elements of different groups".into()));
        }
        Ok(self.mul(&self.mul(a, b), &self.mul(&self.inv(a), &self.inv(b))))
    }

    pub fn evaluate_word(&self, word: &[Token<R::Elem>]) -> GroupElement<R::Elem> {
        word.iter().fold(self.identity(), |acc, t| self.mul(&acc, &self.unipotent(t.root, &t.param)))
    }

    /// Checks the stored inverse and, when present, the word.
    pub fn validate(&self, g: &GroupElement<R::Elem>) -> bool {
        let r = &self.ring;
        let ok = g.matrix.mul(r, &g.inverse).is_identity(r) && g.inverse.mul(r, &g.matrix).is_identity(r);
        ok && g.word.as_ref().is_none_or(|w| self.evaluate_word(w).matrix == g.matrix)
    }

    /// Finds `s` with `m = x_α(s)` by search over the ring; finite rings only.
    pub fn match_unipotent(&self, a: usize, m: &Matrix<R::Elem>, candidates: impl IntoIterator<Item = R::Elem>) -> Option<R::Elem> {
        candidates.into_iter().find(|s| self.unipotent_matrix(a, s) == *m)
    }
}

impl ChevalleyGroup<'_, FiniteRing> {
    /// Entrywise image under a ring homomorphism, into the group over the target ring.
    pub fn reduce(&self, g: &GroupElement<u32>, map: &RingMap) -> Result<GroupElement<u32>> {
        if map.source != self.ring {
            return Err(Error::Mismatch("reduction map from a different ring".into()));
        }
        let f = |x: &u32| map.apply(*x);
        Ok(GroupElement {
            matrix: g.matrix.map(f),
            inverse: g.inverse.map(f),
            word: g.word.as_ref().map(|w| w.iter().map(|t| Token { root: t.root, param: f(&t.param) }).collect()),
        })
    }

    /// Membership in the congruence kernel `N_I = ker λ_I`.
    pub fn in_congruence_kernel(&self, g: &GroupElement<u32>, map: &RingMap) -> Result<bool> {
        let red = self.reduce(g, map)?;
        Ok(red.matrix.is_identity(&map.target))
    }

    /// Membership in `C_I`: the image mod `I` commutes with `x_α(1)` and
    /// `x_α(t)` for every root and every additive generator `t` of `R/I`.
    pub fn in_center_preimage(&self, g: &GroupElement<u32>, map: &RingMap) -> Result<bool> {
        let red = self.reduce(g, map)?;
        let target = ChevalleyGroup::new(self.alg, map.target.clone());
        let params = map.target.spanning_parameters();
        Ok((0..self.alg.sys().num_roots()).all(|a| {
            params.iter().all(|t| {
                let x = target.unipotent_matrix(a, t);
                red.matrix.mul(&map.target, &x) == x.mul(&map.target, &red.matrix)
            })
        }))
    }
}

/// Integer data of the Chevalley commutator formula
/// `[x_α(t), x_β(u)] = Π x_{iα+jβ}(C_ij t^i u^j)`, product by increasing `i+j` then `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorTerm {
    pub i: i64,
    pub j: i64,
    pub root: usize,
    pub coefficient: i64,
}

/// The roots `iα + jβ` (`i, j > 0`) in product order.
pub fn commutator_roots(alg: &AdjointAlgebra, a: usize, b: usize) -> Vec<(i64, i64, usize)> {
    let sys = alg.sys();
    let mut out = Vec::new();
    for s in 2..=5 {
        for i in 1..s {
            if let Some(r) = sys.combo(i, a, s - i, b) {
                out.push((i, s - i, r));
            }
        }
    }
    out
}

/// Extracts the constants `C_ij` over ℤ by peeling factors off `[x_α(1), x_β(1)]`
/// in product order, then confirms them at several further parameter values.
///
/// After removing the earlier factors, the part of the remainder that shifts
/// weights by `γ_k` is exactly `C_k X_{γ_k}`: every other factor, and every
/// product of two or more of them, shifts by a root with larger `i + j`.
pub fn commutator_coefficients(alg: &AdjointAlgebra, a: usize, b: usize) -> Result<Vec<CommutatorTerm>> {
    let sys = alg.sys();
    if a == b || b == sys.negate(a) {
        return Err(Error::Precondition("commutator formula needs β ≠ ±α".into()));
    }
    let z = Integers;
    let g = ChevalleyGroup::new(alg, z);
    let roots = commutator_roots(alg, a, b);
    let comm = |t: i64, u: i64| g.commutator(&g.unipotent(a, &t.into()), &g.unipotent(b, &u.into())).map(|c| c.matrix);
    let product = |cs: &[i64], t: i64, u: i64| {
        roots.iter().zip(cs).fold(Matrix::identity(&z, g.dim()), |acc, (&(i, j, r), &c)| {
            acc.mul(&z, &g.unipotent_matrix(r, &(c * t.pow(i as u32) * u.pow(j as u32)).into()))
        })
    };
    let mut rest = comm(1, 1)?;
    let mut cs = Vec::with_capacity(roots.len());
    for &(_, _, r) in &roots {
        let &(i, j, x) = alg.adjoint_matrix(r).entries.first().expect("X_γ ≠ 0");
        let entry = rest.get(i, j).clone();
        let c = &entry / BigInt::from(x);
        if &c * BigInt::from(x) != entry {
            return Err(Error::Precondition("non-integral commutator coefficient".into()));
        }
        let c = i64::try_from(c).map_err(|_| Error::Precondition("commutator coefficient overflow".into()))?;
        rest = g.unipotent_matrix(r, &(-c).into()).mul(&z, &rest);
        cs.push(c);
    }
    if !rest.is_identity(&z) {
        return Err(Error::Precondition("commutator is not a product of the expected root elements".into()));
    }
    for (t, u) in [(2, 3), (-1, 2), (3, -2)] {
        if comm(t, u)? != product(&cs, t, u) {
            return Err(Error::Precondition("commutator coefficients depend on the parameters".into()));
        }
    }
    Ok(roots.iter().zip(&cs).map(|(&(i, j, root), &coefficient)| CommutatorTerm { i, j, root, coefficient }).collect())
}

/// Sign `c` with `w_α(1) x_β(u) w_α(1)⁻¹ = x_{s_α β}(c u)`, found over ℤ.
pub fn weyl_sign(alg: &AdjointAlgebra, a: usize, b: usize) -> Result<i64> {
    let z = Integers;
    let g = ChevalleyGroup::new(alg, z);
    let w = g.weyl(a, &1.into())?;
    let target = alg.sys().reflect(a, b);
    let img = g.conj(&w, &g.unipotent(b, &1.into()));
    [1i64, -1]
        .into_iter()
        .find(|&c| g.unipotent_matrix(target, &c.into()) == img.matrix)
        .ok_or_else(|| Error::Precondition("Weyl conjugate is not a root element".into()))
}
