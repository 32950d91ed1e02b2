//! Decomposition of automorphisms of `E_ad(Φ, R)` over finite rings into
//! `graph ∘ inner ∘ ring`, with exact replay of every supplied generator image.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::autos::{graph_matrix, graph_signs, realize_graph, GraphData, StandardAutomorphism};
use crate::group::{commutator_coefficients, ChevalleyGroup, CommutatorTerm, GroupElement, Token};
use crate::liealg::AdjointAlgebra;
use crate::linalg;
use crate::matrix::{Matrix, SparseInt};
use crate::recover::Recoverer;
use crate::rings::{ring_automorphisms, FiniteRing, Ring, RingMap};
use crate::roots::DiagramSymmetry;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Precheck,
    SplitLocal,
    Conjugator,
    Graph,
    RingMap,
    Replay,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Precheck => "precheck",
            Stage::SplitLocal => "split-local",
            Stage::Conjugator => "conjugator",
            Stage::Graph => "graph",
            Stage::RingMap => "ring-map",
            Stage::Replay => "replay",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A refusal, tagged with the stage that produced it.
#[derive(Debug, Clone, Error)]
#[error("{stage} stage: {message}")]
pub struct DecomposeError {
    pub stage: Stage,
    pub message: String,
    pub witness: Value,
}

fn fail<T>(stage: Stage, message: impl Into<String>, witness: Value) -> Result<T, DecomposeError> {
    Err(DecomposeError { stage, message: message.into(), witness })
}

/// A supplied generator image; the inverse is recomputed when absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecImage {
    pub matrix: Matrix<u32>,
    pub inverse: Option<Matrix<u32>>,
}

/// An automorphism `φ` given by the images of `x_α(t)` for every root and
/// every spanning parameter `t`.
#[derive(Debug, Clone)]
pub struct AutomorphismSpec {
    pub system: String,
    pub ring: FiniteRing,
    /// Keyed by `(root index, parameter)`.
    pub images: BTreeMap<(usize, u32), SpecImage>,
}

impl AutomorphismSpec {
    /// Images of `x_α(t)`, `t` over the spanning parameters, under `auto`.
    pub fn from_automorphism(grp: &ChevalleyGroup<'_, FiniteRing>, auto: &StandardAutomorphism) -> AutomorphismSpec {
        let ring = &grp.ring;
        let mut images = BTreeMap::new();
        for a in 0..grp.alg.sys().num_roots() {
            for t in ring.spanning_parameters() {
                let y = auto.apply(grp, &grp.unipotent(a, &t));
                images.insert((a, t), SpecImage { matrix: y.matrix, inverse: Some(y.inverse) });
            }
        }
        AutomorphismSpec { system: grp.alg.sys().name(), ring: ring.clone(), images }
    }
}

/// Output of the precheck: `table[α][t] = φ(x_α(t))` for every ring element `t`.
#[derive(Debug, Clone)]
pub struct ValidatedSpec {
    pub table: Vec<Vec<GroupElement<u32>>>,
}

/// The certificate `φ = graph(Λ) ∘ inner(g) ∘ ring(ρ)`.
#[derive(Debug, Clone)]
pub struct StandardCertificate {
    pub system: String,
    pub ring: FiniteRing,
    pub graph: GraphData,
    pub conjugator: GroupElement<u32>,
    pub ring_map: RingMap,
    pub factors: Vec<FactorReport>,
    /// `transport[i] = j`: generators of `N_{m_i}` land in `N_{m_j}`.
    pub transport: Vec<usize>,
    /// Number of supplied images reproduced exactly.
    pub replayed: usize,
}

impl StandardCertificate {
    pub fn automorphism(&self) -> StandardAutomorphism {
        StandardAutomorphism::Compose(vec![
            StandardAutomorphism::Graph(self.graph.clone()),
            StandardAutomorphism::Inner(self.conjugator.clone()),
            StandardAutomorphism::Ring(self.ring_map.clone()),
        ])
    }
}

/// What happened on one local factor.
#[derive(Debug, Clone)]
pub struct FactorReport {
    pub ring: String,
    pub symmetry: DiagramSymmetry,
    /// `recovered` when `X'_α` came from the recovery formulas, `group-level` otherwise.
    pub method: &'static str,
    /// `simple` when the equations on `±Δ` sufficed, `all` otherwise.
    pub equations: &'static str,
}

/// Per-factor data that does not depend on the spec.
struct FactorContext<'a> {
    ring: FiniteRing,
    proj: Vec<u32>,
    field: FiniteRing,
    to_field: Vec<u32>,
    recoverer: Option<Recoverer<'a, FiniteRing>>,
    /// `x_α(1) − E` and `X_α` over the factor.
    unit_minus_e: Vec<Matrix<u32>>,
    lie: Vec<Matrix<u32>>,
    /// `Λ_δ⁻¹` per symmetry.
    lambda_inv: Vec<Matrix<u32>>,
    /// Minuscule representations over the residue field, one image per basis element.
    reps: Vec<Vec<Matrix<u32>>>,
}

/// Reusable decomposition engine for one `(Φ, R)`.
pub struct Decomposer<'a> {
    alg: &'a AdjointAlgebra,
    grp: ChevalleyGroup<'a, FiniteRing>,
    commutators: HashMap<(usize, usize), Vec<CommutatorTerm>>,
    symmetries: Vec<DiagramSymmetry>,
    /// Entry `(i, j, ±1)` of `X_α` where every higher divided power vanishes.
    probes: Vec<(usize, usize, i64)>,
    factors: Vec<FactorContext<'a>>,
}

fn transpose_sparse(s: &SparseInt) -> SparseInt {
    let mut entries: Vec<(usize, usize, i64)> = s.entries.iter().map(|&(i, j, v)| (j, i, v)).collect();
    entries.sort_unstable();
    SparseInt { n: s.n, entries }
}

impl<'a> Decomposer<'a> {
    pub fn new(alg: &'a AdjointAlgebra, ring: &FiniteRing) -> crate::error::Result<Self> {
        let sys = alg.sys();
        let m = sys.num_roots();
        let grp = ChevalleyGroup::new(alg, ring.clone());
        let mut commutators = HashMap::new();
        for a in 0..m {
            for b in 0..m {
                if a != b && b != sys.negate(a) {
                    commutators.insert((a, b), commutator_coefficients(alg, a, b)?);
                }
            }
        }
        let symmetries = sys.diagram_symmetries();
        let probes = (0..m)
            .map(|a| {
                let d = alg.divided_powers(a);
                d[1].entries
                    .iter()
                    .copied()
                    .find(|&(i, j, v)| i != j && v.abs() == 1 && d[2..].iter().all(|dk| dk.get(i, j) == 0))
                    .ok_or_else(|| crate::error::Error::Unsupported(format!("no probe entry for root {:?}", sys.root(a))))
            })
            .collect::<crate::error::Result<Vec<_>>>()?;
        let nodes: Vec<usize> = sys.moved_nodes();
        let reps: Vec<_> = nodes.iter().filter_map(|&i| alg.minuscule_rep(i)).collect();
        let mut factors = Vec::new();
        for f in ring.local_factors() {
            let r = f.ring.clone();
            let (field, to_field) = r.residue_field()?;
            let e = Matrix::identity(&r, alg.dim());
            let unit_minus_e = (0..m).map(|a| ChevalleyGroup::new(alg, r.clone()).unipotent_matrix(a, &r.one()).sub(&r, &e)).collect();
            let lie = (0..m).map(|a| alg.adjoint_matrix(a).to_ring(&r)).collect();
            let lambda_inv = symmetries
                .iter()
                .map(|d| Ok(transpose_sparse(&graph_matrix(alg, d, &graph_signs(alg, d)?)).to_ring(&r)))
                .collect::<crate::error::Result<Vec<_>>>()?;
            let reps = reps.iter().map(|rep| rep.images.iter().map(|s| s.to_ring(&field)).collect()).collect();
            factors.push(FactorContext {
                recoverer: Recoverer::new(alg, r.clone()).ok(),
                ring: r,
                proj: f.proj.clone(),
                field,
                to_field,
                unit_minus_e,
                lie,
                lambda_inv,
                reps,
            });
        }
        Ok(Decomposer { alg, grp, commutators, symmetries, probes, factors })
    }

    pub fn group(&self) -> &ChevalleyGroup<'a, FiniteRing> {
        &self.grp
    }

    fn ring(&self) -> &FiniteRing {
        &self.grp.ring
    }

    fn root_json(&self, a: usize) -> Value {
        json!(self.alg.sys().root(a))
    }

    fn token_json(&self, a: usize, t: u32) -> Value {
        json!({ "root": self.root_json(a), "param": self.ring().encode(t) })
    }

    /// Checks invertibility, the one-parameter law, injectivity on parameters and
    /// the commutator relations on the supplied images.
    pub fn precheck(&self, spec: &AutomorphismSpec) -> Result<ValidatedSpec, DecomposeError> {
        let ring = self.ring();
        let sys = self.alg.sys();
        let n = self.alg.dim();
        let m = sys.num_roots();
        if spec.ring != *ring || spec.system != sys.name() {
            return fail(
                Stage::Precheck,
                format!("spec is over {} / {}, engine over {} / {}", spec.system, spec.ring.descriptor(), sys.name(), ring.descriptor()),
                Value::Null,
            );
        }
        // invertibility
        let mut images: BTreeMap<(usize, u32), GroupElement<u32>> = BTreeMap::new();
        for (&(a, t), img) in &spec.images {
            if a >= m || t >= ring.size() {
                return fail(Stage::Precheck, "image for an unknown token", json!({ "root": a, "param": t }));
            }
            if img.matrix.rows != n || img.matrix.cols != n {
                return fail(
                    Stage::Precheck,
                    format!("image is {}×{}, expected {n}×{n}", img.matrix.rows, img.matrix.cols),
                    self.token_json(a, t),
                );
            }
            let inverse = match &img.inverse {
                Some(inv) if inv.rows == n && inv.cols == n && img.matrix.mul(ring, inv).is_identity(ring) && inv.mul(ring, &img.matrix).is_identity(ring) => inv.clone(),
                Some(_) => return fail(Stage::Precheck, "supplied inverse is wrong", self.token_json(a, t)),
                None => match linalg::invert(ring, &img.matrix) {
                    Some(inv) => inv,
                    None => return fail(Stage::Precheck, "image is not invertible", self.token_json(a, t)),
                },
            };
            images.insert((a, t), GroupElement { matrix: img.matrix.clone(), inverse, word: None });
        }
        let basis = ring.additive_basis();
        let mut table = Vec::with_capacity(m);
        for a in 0..m {
            for t in ring.spanning_parameters() {
                if !images.contains_key(&(a, t)) {
                    return fail(Stage::Precheck, "missing image for a spanning parameter", self.token_json(a, t));
                }
            }
            // powers of generator images; the last one must be E
            let mut powers = Vec::new();
            for (&g, &ord) in basis.generators.iter().zip(&basis.orders) {
                let y = &images[&(a, g)];
                let mut p = vec![self.grp.identity()];
                for _ in 0..ord {
                    p.push(self.grp.mul(p.last().unwrap(), y));
                }
                if !p[ord as usize].matrix.is_identity(ring) {
                    return fail(
                        Stage::Precheck,
                        format!("one-parameter law: image of x_α(t) does not have order {ord}"),
                        self.token_json(a, g),
                    );
                }
                powers.push(p);
            }
            for (i, &g) in basis.generators.iter().enumerate() {
                for &h in &basis.generators[i + 1..] {
                    let c = self.grp.commutator(&images[&(a, g)], &images[&(a, h)]).expect("same dimension");
                    if !c.matrix.is_identity(ring) {
                        return fail(
                            Stage::Precheck,
                            "one-parameter law: images of x_α(s), x_α(t) do not commute",
                            json!([self.token_json(a, g), self.token_json(a, h)]),
                        );
                    }
                }
            }
            let row: Vec<GroupElement<u32>> = ring
                .elements()
                .map(|t| {
                    basis.coords[t as usize]
                        .iter()
                        .zip(&powers)
                        .fold(self.grp.identity(), |acc, (&c, p)| self.grp.mul(&acc, &p[c as usize]))
                })
                .collect();
            if let Some(t) = ring.elements().find(|&t| t != ring.zero() && row[t as usize].matrix.is_identity(ring)) {
                return fail(Stage::Precheck, "not bijective on parameters: a nonzero parameter maps to the identity", self.token_json(a, t));
            }
            table.push(row);
        }
        for (&(a, t), img) in &images {
            if table[a][t as usize] != *img {
                return fail(Stage::Precheck, "one-parameter law: image disagrees with the additive extension", self.token_json(a, t));
            }
        }
        // commutator relations on spanning parameters
        let params = ring.spanning_parameters();
        for a in 0..m {
            for b in 0..m {
                let Some(terms) = self.commutators.get(&(a, b)) else { continue };
                for &s in &params {
                    for &t in &params {
                        let lhs = self.grp.commutator(&table[a][s as usize], &table[b][t as usize]).expect("same dimension");
                        let rhs = terms.iter().fold(self.grp.identity(), |acc, term| {
                            let c = ring.mul(&ring.mul(&ring.from_i64(term.coefficient), &ring.pow(&s, term.i as u64)), &ring.pow(&t, term.j as u64));
                            self.grp.mul(&acc, &table[term.root][c as usize])
                        });
                        if lhs.matrix != rhs.matrix {
                            return fail(
                                Stage::Precheck,
                                "commutator relation [x_α(s), x_β(t)] is not preserved",
                                json!([self.token_json(a, s), self.token_json(b, t)]),
                            );
                        }
                    }
                }
            }
        }
        Ok(ValidatedSpec { table })
    }

    /// For each maximal ideal `m_i`, the first `m_j` such that every `φ(x_α(t))`,
    /// `t ∈ m_i`, reduces to the identity modulo `m_j`.
    pub fn split_local(&self, valid: &ValidatedSpec) -> Result<Vec<usize>, DecomposeError> {
        let ring = self.ring();
        let ideals = ring.maximal_ideals();
        let mut transport = Vec::new();
        for (ideal, _) in &ideals {
            let j = ideals.iter().position(|(_, map)| {
                let id = Matrix::identity(&map.target, self.alg.dim());
                valid.table.iter().all(|row| ideal.members.iter().all(|&t| row[t as usize].matrix.map(|&x| map.apply(x)) == id))
            });
            match j {
                Some(j) => transport.push(j),
                None => {
                    return fail(
                        Stage::SplitLocal,
                        "no maximal ideal receives the congruence generators of this one",
                        json!({ "ideal": ideal.label, "members": ideal.members.iter().map(|&t| ring.encode(t)).collect::<Vec<_>>() }),
                    )
                }
            }
        }
        Ok(transport)
    }

    /// Bracket-preserving `τ` over factor `k` with `τ x_α(1) τ⁻¹ = φ(x_α(1))`,
    /// together with the diagram symmetry `δ` such that `Λ_δ⁻¹ τ` is inner.
    fn match_factor(&self, k: usize, valid: &ValidatedSpec) -> Result<(Matrix<u32>, Matrix<u32>, usize, FactorReport), DecomposeError> {
        let fc = &self.factors[k];
        let r = &fc.ring;
        let sys = self.alg.sys();
        let n = self.alg.dim();
        let m = sys.num_roots();
        let e = Matrix::identity(r, n);
        let ys: Vec<Matrix<u32>> = (0..m).map(|a| valid.table[a][self.ring().one() as usize].matrix.map(|&x| fc.proj[x as usize])).collect();
        let recovered = fc.recoverer.as_ref().and_then(|rec| rec.recover_all(&ys).ok());
        let (method, lhs, rhs): (&'static str, Vec<Matrix<u32>>, &[Matrix<u32>]) = match recovered {
            Some(xs) => ("recovered", xs, &fc.lie),
            None => ("group-level", ys.iter().map(|y| y.sub(r, &e)).collect(), &fc.unit_minus_e),
        };
        let mut simple: Vec<usize> = sys.simple_roots();
        simple.extend(sys.simple_roots().iter().map(|&a| sys.negate(a)));
        let all: Vec<usize> = (0..m).collect();
        let mut saw_invertible = false;
        for (label, roots) in [("simple", &simple), ("all", &all)] {
            let pairs: Vec<(&Matrix<u32>, &Matrix<u32>)> = roots.iter().map(|&a| (&lhs[a], &rhs[a])).collect();
            let rows = linalg::intertwining_rows(r, &pairs, n);
            let gens = linalg::nullspace(r, &rows, n * n).map_err(|e| DecomposeError {
                stage: Stage::Conjugator,
                message: e.to_string(),
                witness: Value::Null,
            })?;
            let found = linalg::search_combinations(r, &gens, n, 96, 0x5eed + k as u64, |cand| {
                let inv = linalg::invert(r, cand)?;
                saw_invertible = true;
                if !(0..m).all(|a| lhs[a].mul(r, cand) == cand.mul(r, &rhs[a])) {
                    return None;
                }
                let c = self.bracket_scale(r, cand)?;
                let ci = r.inverse(&c)?;
                Some((cand.scale(r, &ci), inv.scale(r, &c)))
            });
            if let Some((tau, tau_inv)) = found {
                let delta = self.detect_symmetry(fc, &tau)?;
                let report = FactorReport { ring: r.descriptor().to_string(), symmetry: self.symmetries[delta].clone(), method, equations: label };
                return Ok((tau, tau_inv, delta, report));
            }
        }
        let witness = json!({ "factor": r.descriptor().to_string(), "method": method });
        if saw_invertible {
            fail(Stage::Conjugator, "no invertible intertwiner preserves the Lie bracket (conjugator does not normalize)", witness)
        } else {
            fail(Stage::Conjugator, "no invertible intertwiner", witness)
        }
    }

    /// The unit `c` with `[Mu, Mv] = c·M[u, v]` for all basis pairs, if any.
    fn bracket_scale(&self, r: &FiniteRing, mm: &Matrix<u32>) -> Option<u32> {
        let n = self.alg.dim();
        let cols: Vec<Vec<u32>> = (0..n).map(|j| mm.column(j)).collect();
        let bracket = |u: &[u32], v: &[u32]| -> Vec<u32> {
            let mut out = vec![r.zero(); n];
            for (a, &x) in u.iter().enumerate() {
                if x == r.zero() {
                    continue;
                }
                for (b, &y) in v.iter().enumerate() {
                    if y == r.zero() {
                        continue;
                    }
                    let xy = r.mul_raw(x, y);
                    for (k, c) in self.alg.basis_bracket(a, b) {
                        out[k] = r.add_raw(out[k], r.mul_raw(r.from_i64(c), xy));
                    }
                }
            }
            out
        };
        let mut scale: Option<u32> = None;
        for i in 0..n {
            for j in i + 1..n {
                let z = bracket(&cols[i], &cols[j]);
                let mut w = vec![r.zero(); n];
                for (k, c) in self.alg.basis_bracket(i, j) {
                    for (x, &y) in w.iter_mut().zip(&cols[k]) {
                        *x = r.add_raw(*x, r.mul_raw(r.from_i64(c), y));
                    }
                }
                if scale.is_none() {
                    if let Some(p) = w.iter().position(|x| r.is_unit(x)) {
                        scale = Some(r.mul_raw(z[p], r.inverse(&w[p]).unwrap()));
                    } else if w.iter().all(|&x| x == r.zero()) && z.iter().all(|&x| x == r.zero()) {
                        continue;
                    } else {
                        // only non-unit coordinates: fixed later by another pair
                        continue;
                    }
                }
                let c = scale.unwrap();
                if w.iter().zip(&z).any(|(&x, &y)| r.mul_raw(c, x) != y) {
                    return None;
                }
            }
        }
        scale.filter(|c| r.is_unit(c))
    }

    /// First symmetry `δ` (identity first) for which `Λ_δ⁻¹ τ` twists no moved
    /// minuscule representation into a non-isomorphic one over the residue field.
    fn detect_symmetry(&self, fc: &FactorContext<'_>, tau: &Matrix<u32>) -> Result<usize, DecomposeError> {
        if self.symmetries.len() == 1 {
            return Ok(0);
        }
        let sys = self.alg.sys();
        let k = &fc.field;
        let mut gens: Vec<usize> = sys.simple_roots();
        gens.extend(sys.simple_roots().iter().map(|&a| sys.negate(a)));
        for (idx, linv) in fc.lambda_inv.iter().enumerate() {
            let g = linv.mul(&fc.ring, tau).map(|&x| fc.to_field[x as usize]);
            let twisted_ok = fc.reps.iter().all(|rep| {
                let d = rep[0].rows;
                let twisted: Vec<Matrix<u32>> = gens
                    .iter()
                    .map(|&b| {
                        (0..self.alg.dim()).fold(Matrix::zero(k, d, d), |acc, c| {
                            let coef = *g.get(c, b);
                            if coef == k.zero() {
                                acc
                            } else {
                                acc.add(k, &rep[c].scale(k, &coef))
                            }
                        })
                    })
                    .collect();
                let pairs: Vec<(&Matrix<u32>, &Matrix<u32>)> = twisted.iter().zip(&gens).map(|(t, &b)| (t, &rep[b])).collect();
                let rows = linalg::intertwining_rows(k, &pairs, d);
                linalg::nullspace(k, &rows, d * d).is_ok_and(|ns| !ns.is_empty())
            });
            if twisted_ok {
                return Ok(idx);
            }
        }
        fail(
            Stage::Graph,
            "no diagram symmetry makes the conjugator inner over the residue field",
            json!({ "factor": fc.ring.descriptor().to_string() }),
        )
    }

    /// Reads `ρ` off the residual `ψ = inner(g⁻¹) ∘ graph⁻¹ ∘ φ`, which must send
    /// `x_α(t)` to `x_α(ρ(t))` with `ρ` independent of `α`.
    pub fn extract_ring_map(&self, spec: &AutomorphismSpec, graph: &GraphData, g: &GroupElement<u32>) -> Result<RingMap, DecomposeError> {
        let ring = self.ring();
        let left = g.inverse.mul(ring, &graph.lambda_inv);
        let right = graph.lambda.mul(ring, &g.matrix);
        let mut rho: BTreeMap<u32, u32> = BTreeMap::new();
        for (&(a, t), img) in &spec.images {
            let psi = left.mul(ring, &img.matrix).mul(ring, &right);
            let (i, j, v) = self.probes[a];
            let s = ring.mul_raw(*psi.get(i, j), ring.from_i64(v));
            if psi != self.grp.unipotent_matrix(a, &s) {
                let what = if t == ring.one() { "residual does not fix x_α(1)" } else { "residual image is not a root element of the same root" };
                return fail(Stage::RingMap, what, self.token_json(a, t));
            }
            if t == ring.one() && s != ring.one() {
                return fail(Stage::RingMap, "residual does not fix x_α(1)", self.token_json(a, t));
            }
            match rho.get(&t) {
                Some(&prev) if prev != s => {
                    return fail(
                        Stage::RingMap,
                        "residual parameter depends on the root",
                        json!({ "param": ring.encode(t), "values": [ring.encode(prev), ring.encode(s)], "root": self.root_json(a) }),
                    )
                }
                _ => {
                    rho.insert(t, s);
                }
            }
        }
        let basis = ring.additive_basis();
        let on_gens: Vec<u32> = basis.generators.iter().map(|g| rho[g]).collect();
        let table: Vec<u32> = ring
            .elements()
            .map(|x| {
                basis.coords[x as usize].iter().zip(&on_gens).fold(ring.zero(), |acc, (&c, &y)| ring.add_raw(acc, ring.mul_raw(ring.from_i64(c as i64), y)))
            })
            .collect();
        let map = RingMap { source: ring.clone(), target: ring.clone(), table };
        let witness = || json!({ "table": map.table.iter().map(|&x| ring.encode(x)).collect::<Vec<_>>() });
        if !map.is_bijective() {
            return fail(Stage::RingMap, "ρ is not bijective", witness());
        }
        if !map.is_homomorphism() {
            return fail(Stage::RingMap, "ρ is additive but not multiplicative", witness());
        }
        Ok(map)
    }

    /// The full pipeline; every emitted certificate replays exactly.
    pub fn certify(&self, spec: &AutomorphismSpec) -> Result<StandardCertificate, DecomposeError> {
        let ring = self.ring();
        let n = self.alg.dim();
        let valid = self.precheck(spec)?;
        let transport = self.split_local(&valid)?;
        let matched = (0..self.factors.len()).map(|k| self.match_factor(k, &valid)).collect::<Result<Vec<_>, _>>()?;
        // Λ = Σ e_J Λ_{δ_J}, merging factors with the same δ
        let idempotents = ring.crt_idempotents().elements;
        let mut assignment: Vec<(usize, u32)> = Vec::new();
        for ((_, _, delta, _), &e) in matched.iter().zip(&idempotents) {
            match assignment.iter_mut().find(|(d, _)| d == delta) {
                Some((_, acc)) => *acc = ring.add_raw(*acc, e),
                None => assignment.push((*delta, e)),
            }
        }
        let graph_terms: Vec<(DiagramSymmetry, u32)> = assignment.iter().map(|&(d, e)| (self.symmetries[d].clone(), e)).collect();
        let graph = realize_graph(self.alg, ring, &graph_terms).map_err(|e| DecomposeError { stage: Stage::Graph, message: e.to_string(), witness: Value::Null })?;
        // g_J = Λ_{δ_J}⁻¹ τ_J, glued entrywise
        let parts: Vec<(Matrix<u32>, Matrix<u32>)> = matched
            .iter()
            .zip(&self.factors)
            .map(|((tau, tau_inv, delta, _), fc)| {
                let linv = &fc.lambda_inv[*delta];
                (linv.mul(&fc.ring, tau), tau_inv.mul(&fc.ring, &linv.transpose()))
            })
            .collect();
        let glue = |pick: fn(&(Matrix<u32>, Matrix<u32>)) -> &Matrix<u32>| {
            Matrix::from_fn(n, n, |i, j| ring.from_factors(&parts.iter().map(|p| *pick(p).get(i, j)).collect::<Vec<_>>()))
        };
        let conjugator = GroupElement { matrix: glue(|p| &p.0), inverse: glue(|p| &p.1), word: None };
        let ring_map = self.extract_ring_map(spec, &graph, &conjugator)?;
        let cert = StandardCertificate {
            system: spec.system.clone(),
            ring: ring.clone(),
            graph,
            conjugator,
            ring_map,
            factors: matched.into_iter().map(|(_, _, _, r)| r).collect(),
            transport,
            replayed: 0,
        };
        let replayed = self.replay(&cert, spec)?;
        Ok(StandardCertificate { replayed, ..cert })
    }

    /// Applies the certificate to every supplied token and compares exactly.
    pub fn replay(&self, cert: &StandardCertificate, spec: &AutomorphismSpec) -> Result<usize, DecomposeError> {
        let auto = cert.automorphism();
        for (&(a, t), img) in &spec.images {
            let y = auto.apply(&self.grp, &self.grp.unipotent(a, &t));
            if y.matrix != img.matrix {
                return fail(Stage::Replay, "certificate does not reproduce the image", self.token_json(a, t));
            }
        }
        Ok(spec.images.len())
    }
}

/// A seeded random composition of one to four standard automorphisms (inner,
/// graph with an independent symmetry per local factor, ring), in random order.
pub fn forge_random(alg: &AdjointAlgebra, ring: &FiniteRing, seed: u64) -> crate::error::Result<(AutomorphismSpec, StandardAutomorphism)> {
    let grp = ChevalleyGroup::new(alg, ring.clone());
    let sys = alg.sys();
    let m = sys.num_roots();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let units: Vec<u32> = ring.elements().filter(|x| ring.is_unit(x)).collect();
    let symmetries = sys.diagram_symmetries();
    let ring_auts = ring_automorphisms(ring);
    let idempotents = ring.crt_idempotents().elements;
    let mut kinds = vec!["inner", "graph", "ring"];
    kinds.extend((0..rng.gen_range(0..=1)).map(|_| "inner"));
    kinds.shuffle(&mut rng);
    kinds.truncate(rng.gen_range(1..=kinds.len()));
    let mut pieces = Vec::new();
    for kind in kinds {
        let piece = match kind {
            "inner" => {
                let len = rng.gen_range(1..=6);
                let word: Vec<Token<u32>> =
                    (0..len).map(|_| Token { root: rng.gen_range(0..m), param: rng.gen_range(0..ring.size()) }).collect();
                let mut g = grp.evaluate_word(&word);
                if rng.gen_bool(0.5) {
                    let u = *units.choose(&mut rng).expect("1 is a unit");
                    g = grp.mul(&g, &grp.torus_coroot(rng.gen_range(0..m), &u)?);
                }
                StandardAutomorphism::inner(alg, ring, g)?
            }
            "graph" => {
                let mut terms: Vec<(DiagramSymmetry, u32)> = Vec::new();
                for &e in &idempotents {
                    let d = symmetries.choose(&mut rng).expect("identity symmetry").clone();
                    match terms.iter_mut().find(|(x, _)| *x == d) {
                        Some((_, acc)) => *acc = ring.add_raw(*acc, e),
                        None => terms.push((d, e)),
                    }
                }
                StandardAutomorphism::Graph(realize_graph(alg, ring, &terms)?)
            }
            _ => StandardAutomorphism::ring(ring_auts.choose(&mut rng).expect("identity automorphism").clone())?,
        };
        pieces.push(piece);
    }
    let auto = StandardAutomorphism::Compose(pieces);
    Ok((AutomorphismSpec::from_automorphism(&grp, &auto), auto))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(alg: &AdjointAlgebra, ring: &str) -> (Decomposer<'static>, FiniteRing) {
        let alg: &'static AdjointAlgebra = Box::leak(Box::new(alg.clone()));
        let r = FiniteRing::parse(ring).unwrap();
        (Decomposer::new(alg, &r).unwrap(), r)
    }

    fn round_trips(system: &str, ring: &str, seeds: std::ops::Range<u64>) {
        let alg = AdjointAlgebra::parse(system).unwrap();
        let (d, r) = engine(&alg, ring);
        for seed in seeds {
            let (spec, _) = forge_random(&alg, &r, seed).unwrap();
            let cert = d.certify(&spec).unwrap_or_else(|e| panic!("{system}/{ring} seed {seed}: {e} {}", e.witness));
            assert_eq!(cert.replayed, spec.images.len());
        }
    }

    #[test]
    fn round_trip_small_matrix() {
        round_trips("A2", "Z/5", 0..8);
        round_trips("A2", "F4", 0..8);
        round_trips("A2", "Z/6", 0..8);
        round_trips("B2", "Z/5", 0..4);
        round_trips("G2", "Z/7", 0..3);
        round_trips("A3", "Z/4", 0..3);
    }

    fn spec_of(d: &Decomposer<'_>, auto: &StandardAutomorphism) -> AutomorphismSpec {
        AutomorphismSpec::from_automorphism(d.group(), auto)
    }

    fn swap() -> DiagramSymmetry {
        DiagramSymmetry { permutation: vec![1, 0] }
    }

    #[test]
    fn identity_spec_gives_trivial_certificate() {
        let alg = AdjointAlgebra::parse("A2").unwrap();
        let (d, r) = engine(&alg, "Z/5");
        let cert = d.certify(&spec_of(&d, &StandardAutomorphism::Compose(vec![]))).unwrap();
        assert!(cert.graph.is_identity());
        assert!(cert.conjugator.matrix.is_identity(&r));
        assert!(cert.ring_map.is_identity());
    }

    #[test]
    fn inner_by_root_element_is_matched_by_action() {
        let alg = AdjointAlgebra::parse("A2").unwrap();
        let (d, r) = engine(&alg, "Z/5");
        let x = d.group().unipotent(alg.sys().simple(0), &r.one());
        let auto = StandardAutomorphism::inner(&alg, &r, x.clone()).unwrap();
        let cert = d.certify(&spec_of(&d, &auto)).unwrap();
        assert!(cert.factors[0].symmetry.is_identity());
        // conjugators agree up to the centre, which is trivial here
        let grp = d.group();
        for a in 0..alg.sys().num_roots() {
            let y = grp.unipotent(a, &2);
            assert_eq!(grp.conj(&cert.conjugator, &y), grp.conj(&x, &y));
        }
    }

    #[test]
    fn graph_swap_and_frobenius_over_f4() {
        let alg = AdjointAlgebra::parse("A2").unwrap();
        let (d, r) = engine(&alg, "F4");
        let graph = realize_graph(&alg, &r, &[(swap(), r.one())]).unwrap();
        let cert = d.certify(&spec_of(&d, &StandardAutomorphism::Graph(graph))).unwrap();
        assert_eq!(cert.factors[0].symmetry, swap());
        assert!(cert.ring_map.is_identity());

        let frob = RingMap { source: r.clone(), target: r.clone(), table: r.elements().map(|x| r.mul_raw(x, x)).collect() };
        let cert = d.certify(&spec_of(&d, &StandardAutomorphism::ring(frob.clone()).unwrap())).unwrap();
        assert_eq!(cert.ring_map.table, frob.table);
        assert!(cert.factors[0].symmetry.is_identity());
    }

    #[test]
    fn mixed_graph_over_z6_splits_per_factor() {
        let alg = AdjointAlgebra::parse("A2").unwrap();
        let (d, r) = engine(&alg, "Z/6");
        let e = r.crt_idempotents().elements;
        let graph = realize_graph(&alg, &r, &[(DiagramSymmetry::identity(2), e[0]), (swap(), e[1])]).unwrap();
        let cert = d.certify(&spec_of(&d, &StandardAutomorphism::Graph(graph))).unwrap();
        let syms: Vec<_> = cert.factors.iter().map(|f| f.symmetry.clone()).collect();
        assert_eq!(syms, vec![DiagramSymmetry::identity(2), swap()]);
        assert_eq!(cert.transport, vec![0, 1]);
        assert_eq!(cert.factors[0].method, "group-level");
        assert_eq!(cert.factors[1].method, "recovered");
    }

    #[test]
    fn local_rings_have_one_factor() {
        let alg = AdjointAlgebra::parse("A2").unwrap();
        for ring in ["Z/9", "F5"] {
            let (d, _) = engine(&alg, ring);
            let cert = d.certify(&spec_of(&d, &StandardAutomorphism::Compose(vec![]))).unwrap();
            assert_eq!(cert.transport, vec![0]);
            assert_eq!(cert.factors.len(), 1);
        }
    }

    #[test]
    fn inner_and_graph_over_z7_give_identity_ring_map() {
        let alg = AdjointAlgebra::parse("A2").unwrap();
        let (d, r) = engine(&alg, "Z/7");
        let g = d.group().mul(&d.group().unipotent(1, &3), &d.group().torus_coroot(0, &2).unwrap());
        let auto = StandardAutomorphism::compose(
            StandardAutomorphism::inner(&alg, &r, g).unwrap(),
            StandardAutomorphism::Graph(realize_graph(&alg, &r, &[(swap(), r.one())]).unwrap()),
        );
        let cert = d.certify(&spec_of(&d, &auto)).unwrap();
        assert!(cert.ring_map.is_identity());
        assert_eq!(cert.factors[0].symmetry, swap());
    }

    #[test]
    fn precheck_refusals_name_the_relation() {
        let alg = AdjointAlgebra::parse("A2").unwrap();
        let (d, r) = engine(&alg, "Z/5");
        let mut spec = spec_of(&d, &StandardAutomorphism::Compose(vec![]));
        let e = Matrix::identity(&r, alg.dim());
        spec.images.insert((0, 1), SpecImage { matrix: e.clone(), inverse: Some(e) });
        let err = d.certify(&spec).unwrap_err();
        assert_eq!(err.stage, Stage::Precheck);
        assert!(err.message.contains("bijective") || err.message.contains("law"), "{}", err.message);

        // t ↦ 2t on Z/4 is additive but not injective
        let (d4, r4) = engine(&alg, "Z/4");
        let mut spec = spec_of(&d4, &StandardAutomorphism::Compose(vec![]));
        for ((a, _), img) in spec.images.iter_mut() {
            let y = d4.group().unipotent(*a, &2);
            *img = SpecImage { matrix: y.matrix, inverse: Some(y.inverse) };
        }
        let _ = r4;
        let err = d4.certify(&spec).unwrap_err();
        assert_eq!(err.stage, Stage::Precheck);
        assert!(err.message.contains("not bijective on parameters"), "{}", err.message);
    }

    #[test]
    fn non_normalizing_conjugator_is_refused() {
        let alg = AdjointAlgebra::parse("A2").unwrap();
        let (d, r) = engine(&alg, "Z/5");
        // an elementary matrix mixing two Cartan lines with a root line
        let n = alg.dim();
        let mut m = Matrix::identity(&r, n);
        m.set(0, n - 1, 1);
        let mut inv = Matrix::identity(&r, n);
        inv.set(0, n - 1, 4);
        let g = GroupElement { matrix: m, inverse: inv, word: None };
        assert!(StandardAutomorphism::inner(&alg, &r, g.clone()).is_err());
        let spec = spec_of(&d, &StandardAutomorphism::Inner(g));
        let err = d.certify(&spec).unwrap_err();
        assert_eq!(err.stage, Stage::Conjugator, "{err}");
    }
}
