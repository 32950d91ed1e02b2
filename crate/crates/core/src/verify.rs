//! Invariant suites run by `chev verify` and by the acceptance harness.

use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{commutator_coefficients, weyl_sign, Character, ChevalleyGroup};
use crate::liealg::AdjointAlgebra;
use crate::matrix::Matrix;
use crate::recover::Recoverer;
use crate::rings::{FiniteRing, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Laws,
    Eq1,
    Weyl,
    Jacobi,
    Commutator,
    Recover,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Laws, Suite::Eq1, Suite::Weyl, Suite::Jacobi, Suite::Commutator, Suite::Recover];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Laws => "laws",
            Suite::Eq1 => "eq1",
            Suite::Weyl => "weyl",
            Suite::Jacobi => "jacobi",
            Suite::Commutator => "commutator",
            Suite::Recover => "recover",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown suite {s:?}; expected one of laws, eq1, weyl, jacobi, commutator, recover")))
    }
}

/// Cap on stored counterexamples per case; the count is always exact.
const KEEP: usize = 16;

#[derive(Debug, Clone)]
pub struct CaseReport {
    pub system: String,
    pub ring: String,
    pub checks: u64,
    pub failures: u64,
    /// Each carries the suite, system, ring and inputs needed to rerun it.
    pub counterexamples: Vec<Value>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: Vec<CaseReport>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.failures == 0)
    }

    pub fn checks(&self) -> u64 {
        self.cases.iter().map(|c| c.checks).sum()
    }

    /// Timing is left out unless asked for, so reports stay byte-identical across runs.
    pub fn to_json(&self, timing: bool) -> Value {
        let cases: Vec<Value> = self
            .cases
            .iter()
            .map(|c| {
                let mut v = json!({
                    "system": c.system,
                    "ring": c.ring,
                    "checks": c.checks,
                    "failures": c.failures,
                    "status": if c.failures == 0 { "pass" } else { "fail" },
                    "counterexamples": c.counterexamples,
                });
                if timing {
                    v["millis"] = json!(c.elapsed.as_millis() as u64);
                }
                v
            })
            .collect();
        let mut v = json!({
            "suite": self.suite.name(),
            "status": if self.passed() { "pass" } else { "fail" },
            "checks": self.checks(),
            "cases": cases,
        });
        if timing {
            v["millis"] = json!(self.elapsed.as_millis() as u64);
        }
        v
    }
}

/// Worker count from `CHEV_THREADS`, else the available parallelism.
pub fn threads_from_env() -> usize {
    std::env::var("CHEV_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Maps `f` over `items` on at most `threads` workers; results keep input order.
pub fn parallel_map<T: Sync, U: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<U>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..threads.clamp(1, items.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                let u = f(item);
                out.lock().expect("no worker panics while holding the lock")[i] = Some(u);
            });
        }
    });
    out.into_inner().expect("workers joined").into_iter().map(|u| u.expect("every item mapped")).collect()
}

struct Tally {
    suite: Suite,
    system: String,
    ring: String,
    checks: u64,
    failures: u64,
    examples: Vec<Value>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: &str, inputs: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < KEEP {
                self.examples.push(json!({
                    "suite": self.suite.name(),
                    "system": self.system,
                    "ring": self.ring,
                    "check": what,
                    "inputs": inputs(),
                }));
            }
        }
    }
}

/// Runs one suite on one `(system, ring)`; `seed` drives the sampled parts.
pub fn run_case(suite: Suite, system: &str, ring: &str, seed: u64) -> Result<CaseReport> {
    let start = Instant::now();
    let alg = AdjointAlgebra::parse(system)?;
    let mut tally = Tally { suite, system: alg.sys().name(), ring: ring.to_string(), checks: 0, failures: 0, examples: Vec::new() };
    if suite == Suite::Jacobi {
        jacobi(&alg, &mut tally, seed);
    } else {
        let r = FiniteRing::parse(ring)?;
        tally.ring = r.descriptor().to_string();
        match suite {
            Suite::Laws => laws(&alg, &r, &mut tally),
            Suite::Eq1 => eq1(&alg, &r, &mut tally, seed)?,
            Suite::Weyl => weyl(&alg, &r, &mut tally)?,
            Suite::Commutator => commutators(&alg, &r, &mut tally, seed)?,
            Suite::Recover => recover(&alg, &r, &mut tally)?,
            Suite::Jacobi => unreachable!(),
        }
    }
    Ok(CaseReport {
        system: tally.system,
        ring: tally.ring,
        checks: tally.checks,
        failures: tally.failures,
        counterexamples: tally.examples,
        elapsed: start.elapsed(),
    })
}

/// Runs `suite` over every `(system, ring)` pair on the work pool.
pub fn run_suite(suite: Suite, cases: &[(String, String)], threads: usize, seed: u64) -> Result<SuiteReport> {
    let start = Instant::now();
    let cases = parallel_map(cases, threads, |(s, r)| run_case(suite, s, r, seed)).into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport { suite, cases, elapsed: start.elapsed() })
}

fn laws(alg: &AdjointAlgebra, r: &FiniteRing, tally: &mut Tally) {
    let g = ChevalleyGroup::new(alg, r.clone());
    let sys = alg.sys();
    let e = Matrix::identity(r, alg.dim());
    for a in 0..sys.num_roots() {
        let xs: Vec<Matrix<u32>> = r.elements().map(|t| g.unipotent_matrix(a, &t)).collect();
        let root = || json!(sys.root(a));
        tally.check(xs[r.zero() as usize] == e, "x_α(0) = E", || json!({ "root": root() }));
        for s in r.elements() {
            for t in r.elements() {
                let ok = xs[s as usize].mul(r, &xs[t as usize]) == xs[r.add_raw(s, t) as usize];
                tally.check(ok, "x_α(s) x_α(t) = x_α(s+t)", || json!({ "root": root(), "s": r.encode(s), "t": r.encode(t) }));
            }
        }
    }
}

fn eq1(alg: &AdjointAlgebra, r: &FiniteRing, tally: &mut Tally, seed: u64) -> Result<()> {
    let g = ChevalleyGroup::new(alg, r.clone());
    let sys = alg.sys();
    let l = sys.rank();
    let units: Vec<u32> = r.elements().filter(|x| r.is_unit(x)).collect();
    let total = (units.len() as u64).checked_pow(l as u32).unwrap_or(u64::MAX);
    let characters: Vec<Vec<u32>> = if total <= 4096 {
        (0..total)
            .map(|mut k| {
                (0..l)
                    .map(|_| {
                        let u = units[(k % units.len() as u64) as usize];
                        k /= units.len() as u64;
                        u
                    })
                    .collect()
            })
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..4096).map(|_| (0..l).map(|_| units[rng.gen_range(0..units.len())]).collect()).collect()
    };
    for values in characters {
        let chi = Character { values };
        let h = g.torus(&chi)?;
        for b in 0..sys.num_roots() {
            let cb = chi.eval(r, sys.root(b)).ok_or_else(|| Error::NotInvertible("character value".into()))?;
            for xi in r.elements() {
                let lhs = g.conj(&h, &g.unipotent(b, &xi));
                let ok = lhs.matrix == g.unipotent_matrix(b, &r.mul_raw(cb, xi));
                tally.check(ok, "h(χ) x_β(ξ) h(χ)⁻¹ = x_β(χ(β) ξ)", || {
                    json!({ "character": chi.values.iter().map(|&v| r.encode(v)).collect::<Vec<_>>(), "root": sys.root(b), "xi": r.encode(xi) })
                });
            }
        }
    }
    Ok(())
}

fn weyl(alg: &AdjointAlgebra, r: &FiniteRing, tally: &mut Tally) -> Result<()> {
    let g = ChevalleyGroup::new(alg, r.clone());
    let sys = alg.sys();
    let m = sys.num_roots();
    for a in 0..m {
        let w = g.weyl(a, &r.one())?;
        let w4 = g.mul(&g.mul(&w, &w), &g.mul(&w, &w));
        for b in 0..m {
            let c = r.from_i64(weyl_sign(alg, a, b)?);
            let target = sys.reflect(a, b);
            for u in r.elements() {
                let x = g.unipotent(b, &u);
                let ok = g.conj(&w, &x).matrix == g.unipotent_matrix(target, &r.mul_raw(c, u));
                tally.check(ok, "w_α(1) x_β(u) w_α(1)⁻¹ = x_{s_α β}(c u)", || {
                    json!({ "alpha": sys.root(a), "beta": sys.root(b), "u": r.encode(u) })
                });
                if sys.is_simply_laced() {
                    let ok = g.conj(&w4, &x).matrix == x.matrix;
                    tally.check(ok, "w_α(1)⁴ centralizes x_β(u)", || json!({ "alpha": sys.root(a), "beta": sys.root(b), "u": r.encode(u) }));
                }
            }
        }
    }
    Ok(())
}

fn jacobi(alg: &AdjointAlgebra, tally: &mut Tally, seed: u64) {
    tally.ring = "Z".into();
    let sys = alg.sys();
    let n = alg.dim();
    let m = sys.num_roots();
    if n <= 15 {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    tally.check(alg.jacobi_holds(a, b, c), "Jacobi identity", || json!({ "basis": [a, b, c] }));
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100_000 {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            tally.check(alg.jacobi_holds(a, b, c), "Jacobi identity", || json!({ "basis": [a, b, c], "seed": seed }));
        }
    }
    for a in 0..m {
        for b in 0..m {
            if a == b || b == sys.negate(a) || sys.sum(a, b).is_none() {
                continue;
            }
            let (p, _) = sys.root_chain(b, a).expect("β ≠ ±α");
            let nab = alg.structure_constant(a, b).expect("β ≠ −α");
            tally.check(nab.abs() == p + 1, "|N_{α,β}| = p + 1", || json!({ "alpha": sys.root(a), "beta": sys.root(b), "n": nab, "p": p }));
        }
    }
    for a in 0..m {
        let d = alg.divided_powers(a);
        let x = &d[1];
        let mut ok = d.last().is_some_and(|last| !last.is_zero() && last.mul(x).is_zero());
        for k in 2..d.len() {
            let scaled: Vec<i64> = d[k].to_dense().iter().map(|v| v * k as i64).collect();
            ok &= scaled == d[k - 1].mul(x).to_dense();
        }
        tally.check(ok, "k · (X^k/k!) = (X^{k-1}/(k-1)!) · X with integral entries", || json!({ "root": sys.root(a) }));
    }
}

fn commutators(alg: &AdjointAlgebra, r: &FiniteRing, tally: &mut Tally, seed: u64) -> Result<()> {
    let g = ChevalleyGroup::new(alg, r.clone());
    let sys = alg.sys();
    let m = sys.num_roots();
    let q = r.size();
    let pairs: Vec<(u32, u32)> = if q * q <= 256 {
        r.elements().flat_map(|s| r.elements().map(move |t| (s, t))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..256).map(|_| (rng.gen_range(0..q), rng.gen_range(0..q))).collect()
    };
    for a in 0..m {
        for b in 0..m {
            if a == b || b == sys.negate(a) {
                continue;
            }
            let terms = commutator_coefficients(alg, a, b)?;
            for &(s, t) in &pairs {
                let lhs = g.commutator(&g.unipotent(a, &s), &g.unipotent(b, &t))?;
                let rhs = terms.iter().fold(Matrix::identity(r, alg.dim()), |acc, term| {
                    let c = r.mul(&r.mul(&r.from_i64(term.coefficient), &r.pow(&s, term.i as u64)), &r.pow(&t, term.j as u64));
                    acc.mul(r, &g.unipotent_matrix(term.root, &c))
                });
                tally.check(lhs.matrix == rhs, "[x_α(s), x_β(t)] = Π x_{iα+jβ}(C_ij s^i t^j)", || {
                    json!({ "alpha": sys.root(a), "beta": sys.root(b), "s": r.encode(s), "t": r.encode(t) })
                });
            }
        }
    }
    Ok(())
}

fn recover(alg: &AdjointAlgebra, r: &FiniteRing, tally: &mut Tally) -> Result<()> {
    let rec = Recoverer::new(alg, r.clone())?;
    let g = ChevalleyGroup::new(alg, r.clone());
    let sys = alg.sys();
    let family: Vec<Matrix<u32>> = (0..sys.num_roots()).map(|a| g.unipotent_matrix(a, &r.one())).collect();
    for a in 0..sys.num_roots() {
        let got = rec.recover(a, &family)?;
        let ok = got == alg.adjoint_matrix(a).to_ring(r);
        tally.check(ok, "recovered X_α equals the reduced adjoint matrix", || json!({ "root": sys.root(a), "regime": rec.regime(a).tag() }));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases_pass() {
        for suite in Suite::ALL {
            let rep = run_case(suite, "A2", "Z/5", 1).unwrap();
            assert_eq!(rep.failures, 0, "{}: {:?}", suite.name(), rep.counterexamples);
            assert!(rep.checks > 0);
        }
    }

    #[test]
    fn recover_refuses_b2_over_z2() {
        assert!(run_case(Suite::Recover, "B2", "Z/2", 0).is_err());
    }

    #[test]
    fn pool_keeps_order() {
        let v: Vec<u64> = (0..50).collect();
        assert_eq!(parallel_map(&v, 4, |x| x * x), v.iter().map(|x| x * x).collect::<Vec<_>>());
    }

    #[test]
    fn counterexamples_carry_inputs() {
        let mut t = Tally { suite: Suite::Laws, system: "A2".into(), ring: "Z/5".into(), checks: 0, failures: 0, examples: vec![] };
        t.check(false, "demo", || json!({ "s": 1 }));
        assert_eq!(t.examples[0]["system"], "A2");
        assert_eq!(t.examples[0]["inputs"]["s"], 1);
    }
}
