//! Irreducible root systems of rank greater than one.
//!
//! Roots are integer coefficient vectors over the simple roots (Bourbaki
//! numbering). The enumeration order is fixed: positive roots sorted by
//! height, ties broken by descending lexicographic order of the coefficient
//! vector (so `α1` precedes `α2`), and each positive root is immediately
//! followed by its negative. Index `2k` is therefore always positive and
//! `2k + 1` its negative.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Series letter of an irreducible root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Kind {
    pub fn from_char(c: char) -> Option<Kind> {
        Some(match c.to_ascii_uppercase() {
            'A' => Kind::A,
            'B' => Kind::B,
            'C' => Kind::C,
            'D' => Kind::D,
            'E' => Kind::E,
            'F' => Kind::F,
            'G' => Kind::G,
            _ => return None,
        })
    }

    pub fn letter(self) -> char {
        match self {
            Kind::A => 'A',
            Kind::B => 'B',
            Kind::C => 'C',
            Kind::D => 'D',
            Kind::E => 'E',
            Kind::F => 'F',
            Kind::G => 'G',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Long,
    Short,
}

/// A permutation of the simple roots preserving the Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagramSymmetry {
    /// `permutation[i]` is the image of simple root `i`.
    pub permutation: Vec<usize>,
}

impl DiagramSymmetry {
    pub fn identity(rank: usize) -> Self {
        DiagramSymmetry { permutation: (0..rank).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &DiagramSymmetry) -> DiagramSymmetry {
        DiagramSymmetry { permutation: other.permutation.iter().map(|&j| self.permutation[j]).collect() }
    }

    pub fn inverse(&self) -> DiagramSymmetry {
        let mut inv = vec![0; self.permutation.len()];
        for (i, &j) in self.permutation.iter().enumerate() {
            inv[j] = i;
        }
        DiagramSymmetry { permutation: inv }
    }

    /// Image of a coefficient vector.
    pub fn apply_coeffs(&self, coeffs: &[i64]) -> Vec<i64> {
        let mut out = vec![0; coeffs.len()];
        for (i, &c) in coeffs.iter().enumerate() {
            out[self.permutation[i]] = c;
        }
        out
    }

    /// Image of a root given by index.
    pub fn apply(&self, sys: &RootSystem, root: usize) -> usize {
        sys.index_of(&self.apply_coeffs(sys.root(root))).expect("diagram symmetry preserves Φ")
    }
}

/// Enumerated root system with its bilinear form.
#[derive(Debug, Clone)]
pub struct RootSystem {
    kind: Kind,
    rank: usize,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    /// Symmetric form on simple roots, scaled so every entry is an integer.
    gram: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    length_class: Vec<LengthClass>,
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.rank)
    }
}

fn gram_matrix(kind: Kind, l: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; l]; l];
    let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match kind {
        Kind::A => {
            for i in 0..l {
                g[i][i] = 2;
                if i + 1 < l {
                    link(&mut g, i, i + 1, -1);
                }
            }
        }
        Kind::B => {
            for i in 0..l {
                g[i][i] = if i + 1 == l { 2 } else { 4 };
                if i + 1 < l {
                    link(&mut g, i, i + 1, -2);
                }
            }
        }
        Kind::C => {
            for i in 0..l {
                g[i][i] = if i + 1 == l { 4 } else { 2 };
                if i + 2 < l {
                    link(&mut g, i, i + 1, -1);
                } else if i + 1 < l {
                    link(&mut g, i, i + 1, -2);
                }
            }
        }
        Kind::D => {
            for i in 0..l {
                g[i][i] = 2;
            }
            for i in 0..l - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, l - 3, l - 1, -1);
        }
        Kind::E => {
            for i in 0..l {
                g[i][i] = 2;
            }
            // 1-3-4-5-6-7-8 with 2 attached to 4 (1-based)
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 2..l - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        Kind::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        Kind::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    g
}

fn validate(kind: Kind, rank: usize) -> std::result::Result<(), String> {
    let ok = match kind {
        Kind::A => (2..=10).contains(&rank),
        Kind::B => (2..=10).contains(&rank),
        Kind::C => (3..=10).contains(&rank),
        Kind::D => (4..=10).contains(&rank),
        Kind::E => (6..=8).contains(&rank),
        Kind::F => rank == 4,
        Kind::G => rank == 2,
    };
    if ok {
        Ok(())
    } else if rank < 2 {
        Err("rank must exceed one".into())
    } else {
        Err("no irreducible system of this type and rank (or rank above the supported bound)".into())
    }
}

impl RootSystem {
    /// Builds the system of type `kind` and rank `rank`.
    pub fn build(kind: char, rank: usize) -> Result<RootSystem> {
        let k = Kind::from_char(kind).ok_or_else(|| Error::InvalidSystem {
            kind,
            rank,
            reason: "unknown series letter".into(),
        })?;
        validate(k, rank).map_err(|reason| Error::InvalidSystem { kind, rank, reason })?;
        Ok(Self::from_gram(k, rank, gram_matrix(k, rank)))
    }

    /// Parses names like `"A2"`, `"G2"`, `"D4"`.
    pub fn parse(name: &str) -> Result<RootSystem> {
        let mut chars = name.trim().chars();
        let letter = chars.next().ok_or_else(|| Error::InvalidSystem {
            kind: '?',
            rank: 0,
            reason: "empty system name".into(),
        })?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::InvalidSystem {
            kind: letter,
            rank: 0,
            reason: format!("cannot parse rank in {name:?}"),
        })?;
        RootSystem::build(letter, rank)
    }

    fn from_gram(kind: Kind, rank: usize, gram: Vec<Vec<i64>>) -> RootSystem {
        let ip = |a: &[i64], b: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..rank {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..rank {
                    s += a[i] * b[j] * gram[i][j];
                }
            }
            s
        };
        let simple: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                v
            })
            .collect();

        let mut positive: Vec<Vec<i64>> = simple.clone();
        let mut known: HashSet<Vec<i64>> = simple.iter().cloned().collect();
        let mut layer = simple.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for (i, a) in simple.iter().enumerate() {
                    if beta == a {
                        continue;
                    }
                    let mut p = 0;
                    let mut cur = beta.clone();
                    loop {
                        cur[i] -= 1;
                        if known.contains(&cur) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing = 2 * ip(beta, a) / ip(a, a);
                    let q = p - pairing;
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if known.insert(up.clone()) {
                            next.push(up.clone());
                            positive.push(up);
                        }
                    }
                }
            }
            layer = next;
        }

        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let mut roots = Vec::with_capacity(2 * positive.len());
        for p in positive {
            let neg: Vec<i64> = p.iter().map(|c| -c).collect();
            roots.push(p);
            roots.push(neg);
        }
        let index = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let max_norm = (0..rank).map(|i| gram[i][i]).max().unwrap_or(2);
        let length_class = roots
            .iter()
            .map(|r| if ip(r, r) == max_norm { LengthClass::Long } else { LengthClass::Short })
            .collect();
        let cartan = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * gram[i][j] / gram[i][i]).collect())
            .collect();
        RootSystem { kind, rank, roots, index, gram, cartan, length_class }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        self.to_string()
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn index_of(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    pub fn require(&self, coeffs: &[i64]) -> Result<usize> {
        self.index_of(coeffs).ok_or_else(|| Error::UnknownRoot(coeffs.to_vec()))
    }

    /// Root index of the simple root `α_{i+1}`.
    pub fn simple(&self, i: usize) -> usize {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        self.index[&v]
    }

    pub fn simple_roots(&self) -> Vec<usize> {
        (0..self.rank).map(|i| self.simple(i)).collect()
    }

    pub fn negate(&self, i: usize) -> usize {
        i ^ 1
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i % 2 == 0
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).step_by(2)
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn length_class(&self, i: usize) -> LengthClass {
        self.length_class[i]
    }

    pub fn is_long(&self, i: usize) -> bool {
        self.length_class[i] == LengthClass::Long
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.kind, Kind::A | Kind::D | Kind::E)
    }

    /// Scaled inner product of two lattice vectors.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] * b[j] * self.gram[i][j];
            }
        }
        s
    }

    pub fn norm(&self, i: usize) -> i64 {
        self.inner(&self.roots[i], &self.roots[i])
    }

    /// `⟨λ, α⟩ = 2(λ, α)/(α, α)` for a lattice vector `λ`.
    pub fn pairing_vec(&self, lambda: &[i64], alpha: usize) -> i64 {
        let a = &self.roots[alpha];
        2 * self.inner(lambda, a) / self.inner(a, a)
    }

    /// `⟨β, α⟩` for roots given by index.
    pub fn pairing(&self, beta: usize, alpha: usize) -> i64 {
        self.pairing_vec(&self.roots[beta], alpha)
    }

    /// Index of `α + β` if it is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let v: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
        self.index_of(&v)
    }

    /// Index of `iα + jβ` if it is a root.
    pub fn combo(&self, i: i64, a: usize, j: i64, b: usize) -> Option<usize> {
        let v: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| i * x + j * y).collect();
        self.index_of(&v)
    }

    /// `s_α(β) = β − ⟨β,α⟩α`.
    pub fn reflect(&self, alpha: usize, beta: usize) -> usize {
        let c = self.pairing(beta, alpha);
        let v: Vec<i64> = self.roots[beta].iter().zip(&self.roots[alpha]).map(|(b, a)| b - c * a).collect();
        self.index_of(&v).expect("Φ is closed under reflections")
    }

    /// The `α`-string through `β`: maximal `(p, q)` with `β − pα, …, β + qα ∈ Φ`.
    pub fn root_chain(&self, beta: usize, alpha: usize) -> Result<(i64, i64)> {
        if beta == alpha || beta == self.negate(alpha) {
            return Err(Error::Precondition("root chain of ±α through α is undefined".into()));
        }
        let walk = |sign: i64| {
            let mut k = 0;
            loop {
                let v: Vec<i64> =
                    self.roots[beta].iter().zip(&self.roots[alpha]).map(|(b, a)| b + sign * (k + 1) * a).collect();
                if self.index.contains_key(&v) {
                    k += 1;
                } else {
                    return k;
                }
            }
        };
        Ok((walk(-1), walk(1)))
    }

    pub fn highest_root(&self) -> usize {
        self.roots.len() - 2
    }

    /// All Cartan-preserving permutations of the simple roots, identity first.
    pub fn diagram_symmetries(&self) -> Vec<DiagramSymmetry> {
        let l = self.rank;
        let mut out = Vec::new();
        let mut perm = Vec::with_capacity(l);
        let mut used = vec![false; l];
        self.extend_symmetry(&mut perm, &mut used, &mut out);
        out
    }

    fn extend_symmetry(&self, perm: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<DiagramSymmetry>) {
        let i = perm.len();
        if i == self.rank {
            out.push(DiagramSymmetry { permutation: perm.clone() });
            return;
        }
        for j in 0..self.rank {
            if used[j] || self.cartan[i][i] != self.cartan[j][j] {
                continue;
            }
            let consistent = (0..i).all(|k| {
                self.cartan[i][k] == self.cartan[j][perm[k]] && self.cartan[k][i] == self.cartan[perm[k]][j]
            });
            if !consistent {
                continue;
            }
            used[j] = true;
            perm.push(j);
            self.extend_symmetry(perm, used, out);
            perm.pop();
            used[j] = false;
        }
    }

    /// Simple roots moved by some diagram symmetry.
    pub fn moved_nodes(&self) -> Vec<usize> {
        let syms = self.diagram_symmetries();
        (0..self.rank).filter(|&i| syms.iter().any(|s| s.permutation[i] != i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euclid_b2(coeffs: &[i64]) -> [i64; 2] {
        // α1 = e1 − e2, α2 = e2
        [coeffs[0], coeffs[1] - coeffs[0]]
    }

    #[test]
    fn counts() {
        for (k, l, n) in [
            ('A', 2, 6),
            ('B', 2, 8),
            ('G', 2, 12),
            ('A', 3, 12),
            ('B', 3, 18),
            ('C', 3, 18),
            ('D', 4, 24),
            ('D', 5, 40),
            ('F', 4, 48),
            ('E', 6, 72),
            ('E', 7, 126),
            ('E', 8, 240),
        ] {
            assert_eq!(RootSystem::build(k, l).unwrap().num_roots(), n, "{k}{l}");
        }
    }

    #[test]
    fn invalid_pairs() {
        assert!(RootSystem::build('A', 1).is_err());
        assert!(RootSystem::build('G', 3).is_err());
        assert!(RootSystem::build('E', 5).is_err());
        assert!(RootSystem::build('X', 2).is_err());
        assert!(RootSystem::parse("D").is_err());
    }

    #[test]
    fn b2_roots_in_order() {
        let s = RootSystem::build('B', 2).unwrap();
        let pos: Vec<&[i64]> = s.positive_roots().map(|i| s.root(i)).collect();
        assert_eq!(pos, vec![&[1, 0][..], &[0, 1], &[1, 1], &[1, 2]]);
        let e: Vec<[i64; 2]> = s.positive_roots().map(|i| euclid_b2(s.root(i))).collect();
        assert_eq!(e, vec![[1, -1], [0, 1], [1, 0], [1, 1]]);
        assert_eq!(s.root(1), &[-1, 0]);
    }

    #[test]
    fn a2_and_g2_order() {
        let a2 = RootSystem::build('A', 2).unwrap();
        let r: Vec<&[i64]> = (0..6).map(|i| a2.root(i)).collect();
        assert_eq!(r, vec![&[1, 0][..], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1]]);
        let g2 = RootSystem::build('G', 2).unwrap();
        let pos: Vec<&[i64]> = g2.positive_roots().map(|i| g2.root(i)).collect();
        assert_eq!(pos, vec![&[1, 0][..], &[0, 1], &[1, 1], &[2, 1], &[3, 1], &[3, 2]]);
        assert!(!g2.is_long(g2.simple(0)));
        assert!(g2.is_long(g2.simple(1)));
    }

    #[test]
    fn pairings() {
        let a2 = RootSystem::build('A', 2).unwrap();
        let (a1, a2r) = (a2.simple(0), a2.simple(1));
        assert_eq!(a2.pairing(a1, a1), 2);
        assert_eq!(a2.pairing(a2r, a1), -1);
        // B2: ⟨α1+2α2, α1⟩ via e-coordinates: (e1+e2, e1−e2) = 0
        let b2 = RootSystem::build('B', 2).unwrap();
        let x = b2.index_of(&[1, 2]).unwrap();
        let e = euclid_b2(b2.root(x));
        let f = euclid_b2(b2.root(b2.simple(0)));
        assert_eq!(e[0] * f[0] + e[1] * f[1], 0);
        assert_eq!(b2.pairing(x, b2.simple(0)), 0);
    }

    #[test]
    fn chains() {
        let a2 = RootSystem::build('A', 2).unwrap();
        assert_eq!(a2.root_chain(a2.simple(1), a2.simple(0)).unwrap(), (0, 1));
        let g2 = RootSystem::build('G', 2).unwrap();
        assert_eq!(g2.root_chain(g2.simple(1), g2.simple(0)).unwrap(), (0, 3));
        let b2 = RootSystem::build('B', 2).unwrap();
        // e1+e2 and e1−e2 are orthogonal, neither sum nor difference is a root
        assert_eq!(b2.root_chain(b2.index_of(&[1, 2]).unwrap(), b2.simple(0)).unwrap(), (0, 0));
        assert!(a2.root_chain(0, 1).is_err());
    }

    #[test]
    fn chain_pairing_relation_and_closure() {
        for name in ["A2", "B2", "G2", "A3", "B3", "C3", "D4", "F4", "E6"] {
            let s = RootSystem::parse(name).unwrap();
            let n = s.num_roots();
            for a in 0..n {
                for b in 0..n {
                    let _ = s.reflect(a, b);
                    if b == a || b == s.negate(a) {
                        continue;
                    }
                    let (p, q) = s.root_chain(b, a).unwrap();
                    assert_eq!(p - q, s.pairing(b, a), "{name}");
                }
                let r = s.root(a);
                assert!(r.iter().all(|&c| c >= 0) || r.iter().all(|&c| c <= 0));
            }
            for i in 0..s.rank() {
                assert_eq!(s.cartan()[i][i], 2);
                for j in 0..s.rank() {
                    if i != j {
                        assert!(s.cartan()[i][j] <= 0);
                    }
                }
            }
        }
    }

    #[test]
    fn symmetry_counts() {
        let count = |n: &str| RootSystem::parse(n).unwrap().diagram_symmetries().len();
        assert_eq!(count("B2"), 1);
        assert_eq!(count("A2"), 2);
        assert_eq!(count("A3"), 2);
        assert_eq!(count("D4"), 6);
        assert_eq!(count("D5"), 2);
        assert_eq!(count("E6"), 2);
        for n in ["G2", "F4", "C3", "E7", "E8"] {
            assert_eq!(count(n), 1, "{n}");
        }
        assert!(RootSystem::parse("A2").unwrap().diagram_symmetries()[0].is_identity());
    }

    #[test]
    fn symmetries_form_a_group() {
        let s = RootSystem::parse("D4").unwrap();
        let syms = s.diagram_symmetries();
        for a in &syms {
            assert!(syms.contains(&a.inverse()));
            assert!(a.compose(&a.inverse()).is_identity());
            for b in &syms {
                assert!(syms.contains(&a.compose(b)));
            }
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(s.cartan()[a.permutation[i]][a.permutation[j]], s.cartan()[i][j]);
                }
            }
        }
    }
}
