//! Reconstruction of the Lie algebra matrices `X_α` from unipotents `x_α(1)`
//! using ring operations only.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::ChevalleyGroup;
use crate::liealg::AdjointAlgebra;
use crate::matrix::Matrix;
use crate::rings::{Integers, Ring};
use crate::roots::Kind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecoveryRegime {
    /// `X = (x−E) − (x−E)²/2`.
    WithHalf,
    /// Short roots of G2, needs 1/2 and 1/3.
    G2ShortWithSixth,
    /// Simply-laced of rank ≥ 3, no units needed.
    SimplyLacedNoHalf,
}

impl RecoveryRegime {
    pub fn required_units(self) -> &'static [i64] {
        match self {
            RecoveryRegime::WithHalf => &[2],
            RecoveryRegime::G2ShortWithSixth => &[2, 3],
            RecoveryRegime::SimplyLacedNoHalf => &[],
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            RecoveryRegime::WithHalf => "with-half",
            RecoveryRegime::G2ShortWithSixth => "g2-short-with-sixth",
            RecoveryRegime::SimplyLacedNoHalf => "simply-laced-no-half",
        }
    }

    /// The regime used for `α` over `ring`, mirroring the theorem's hypotheses.
    pub fn select<R: Ring>(alg: &AdjointAlgebra, ring: &R, alpha: usize) -> Result<RecoveryRegime> {
        let sys = alg.sys();
        let regime = match sys.kind() {
            Kind::G => {
                if !ring.has_third() {
                    return Err(Error::Unsupported(format!("G2 recovery needs 1/2 and 1/3 in {}", ring.name())));
                }
                if sys.is_long(alpha) {
                    RecoveryRegime::WithHalf
                } else {
                    RecoveryRegime::G2ShortWithSixth
                }
            }
            _ if ring.has_half() => RecoveryRegime::WithHalf,
            _ if sys.is_simply_laced() && sys.rank() >= 3 => RecoveryRegime::SimplyLacedNoHalf,
            _ => {
                return Err(Error::Unsupported(format!("no recovery regime for {} over {}: 1/2 is required", sys.name(), ring.name())))
            }
        };
        if regime.required_units().iter().any(|&u| !ring.is_unit(&ring.from_i64(u))) {
            return Err(Error::Unsupported(format!("{} recovery needs units {:?} in {}", regime.tag(), regime.required_units(), ring.name())));
        }
        Ok(regime)
    }
}

fn minus_identity<R: Ring>(ring: &R, x: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    x.sub(ring, &Matrix::identity(ring, x.rows))
}

fn unit<R: Ring>(ring: &R, k: i64) -> Result<R::Elem> {
    ring.inverse(&ring.from_i64(k)).ok_or_else(|| Error::Unsupported(format!("{k} is not invertible in {}", ring.name())))
}

/// `X_α = (x − E) − (x − E)²/2` for `x = x_α(1)` with `X_α³ = 0`.
pub fn recover_with_half<R: Ring>(alg: &AdjointAlgebra, ring: &R, x: &Matrix<R::Elem>, alpha: usize) -> Result<Matrix<R::Elem>> {
    let half = unit(ring, 2)?;
    if alg.nilpotency_index(alpha) > 3 {
        return Err(Error::Precondition("with-half recovery needs X_α³ = 0".into()));
    }
    let y = minus_identity(ring, x);
    Ok(y.sub(ring, &y.mul(ring, &y).scale(ring, &half)))
}

/// G2 short roots: `X³ = (x−E)³`, `X²/2 = (x−E)²/2 − X³/2`, `X = (x−E) − X²/2 − X³/6`.
pub fn recover_g2_short<R: Ring>(alg: &AdjointAlgebra, ring: &R, x: &Matrix<R::Elem>, alpha: usize) -> Result<Matrix<R::Elem>> {
    let sys = alg.sys();
    if sys.kind() != Kind::G || sys.is_long(alpha) {
        return Err(Error::Precondition("g2-short recovery applies to short roots of G2 only".into()));
    }
    let half = unit(ring, 2)?;
    let sixth = ring.mul(&half, &unit(ring, 3)?);
    let y = minus_identity(ring, x);
    let y2 = y.mul(ring, &y);
    let x3 = y2.mul(ring, &y);
    let x2h = y2.scale(ring, &half).sub(ring, &x3.scale(ring, &half));
    Ok(y.sub(ring, &x2h).sub(ring, &x3.scale(ring, &sixth)))
}

/// A decomposition `α = γ + β` with `((x_γ−E)(x_β−E))² = sign · X_α²/2` over ℤ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoHalfWitness {
    pub gamma: usize,
    pub beta: usize,
    pub sign: i64,
    /// Position of the pair among all decompositions in enumeration order (0 = first).
    pub rank_in_order: usize,
}

/// Finds the first decomposition whose square identity holds over ℤ.
pub fn no_half_witness(alg: &AdjointAlgebra, alpha: usize) -> Result<NoHalfWitness> {
    let sys = alg.sys();
    if !sys.is_simply_laced() || sys.rank() < 3 {
        return Err(Error::Precondition(format!("no-half recovery needs a simply-laced system of rank ≥ 3, got {}", sys.name())));
    }
    let z = Integers;
    let g = ChevalleyGroup::new(alg, z);
    let one = BigInt::from(1);
    let d2 = alg.divided_powers(alpha)[2].to_ring(&z);
    let pairs: Vec<(usize, usize)> = (0..sys.num_roots())
        .filter_map(|gamma| {
            let v: Vec<i64> = sys.root(alpha).iter().zip(sys.root(gamma)).map(|(a, c)| a - c).collect();
            sys.index_of(&v).map(|beta| (gamma, beta))
        })
        .collect();
    if pairs.is_empty() {
        return Err(Error::Precondition("no decomposition α = γ + β".into()));
    }
    for (k, &(gamma, beta)) in pairs.iter().enumerate() {
        let p = square_term(&z, &g.unipotent_matrix(gamma, &one), &g.unipotent_matrix(beta, &one));
        for sign in [1i64, -1] {
            if p == d2.scale(&z, &BigInt::from(sign)) {
                return Ok(NoHalfWitness { gamma, beta, sign, rank_in_order: k });
            }
        }
    }
    Err(Error::Precondition("no decomposition satisfies the square identity".into()))
}

fn square_term<R: Ring>(ring: &R, xg: &Matrix<R::Elem>, xb: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let t = minus_identity(ring, xg).mul(ring, &minus_identity(ring, xb));
    t.mul(ring, &t)
}

/// `X_α = x_α(1) − E − sign·((x_γ−E)(x_β−E))²`.
pub fn recover_no_half<R: Ring>(
    ring: &R,
    witness: &NoHalfWitness,
    x_alpha: &Matrix<R::Elem>,
    x_gamma: &Matrix<R::Elem>,
    x_beta: &Matrix<R::Elem>,
) -> Matrix<R::Elem> {
    let p = square_term(ring, x_gamma, x_beta).scale(ring, &ring.from_i64(witness.sign));
    minus_identity(ring, x_alpha).sub(ring, &p)
}

/// Recovery of every `X_α` from a family of images of `x_α(1)`.
pub struct Recoverer<'a, R: Ring> {
    alg: &'a AdjointAlgebra,
    ring: R,
    regimes: Vec<RecoveryRegime>,
    witnesses: Vec<Option<NoHalfWitness>>,
}

impl<'a, R: Ring> Recoverer<'a, R> {
    pub fn new(alg: &'a AdjointAlgebra, ring: R) -> Result<Self> {
        let m = alg.sys().num_roots();
        let regimes = (0..m).map(|a| RecoveryRegime::select(alg, &ring, a)).collect::<Result<Vec<_>>>()?;
        let witnesses = (0..m)
            .map(|a| match regimes[a] {
                RecoveryRegime::SimplyLacedNoHalf => no_half_witness(alg, a).map(Some),
                _ => Ok(None),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Recoverer { alg, ring, regimes, witnesses })
    }

    pub fn regime(&self, alpha: usize) -> RecoveryRegime {
        self.regimes[alpha]
    }

    pub fn witness(&self, alpha: usize) -> Option<&NoHalfWitness> {
        self.witnesses[alpha].as_ref()
    }

    /// `family[β]` must be the image of `x_β(1)` for every root `β`.
    pub fn recover(&self, alpha: usize, family: &[Matrix<R::Elem>]) -> Result<Matrix<R::Elem>> {
        match self.regimes[alpha] {
            RecoveryRegime::WithHalf => recover_with_half(self.alg, &self.ring, &family[alpha], alpha),
            RecoveryRegime::G2ShortWithSixth => recover_g2_short(self.alg, &self.ring, &family[alpha], alpha),
            RecoveryRegime::SimplyLacedNoHalf => {
                let w = self.witnesses[alpha].as_ref().expect("witness computed for no-half roots");
                Ok(recover_no_half(&self.ring, w, &family[alpha], &family[w.gamma], &family[w.beta]))
            }
        }
    }

    pub fn recover_all(&self, family: &[Matrix<R::Elem>]) -> Result<Vec<Matrix<R::Elem>>> {
        (0..family.len()).map(|a| self.recover(a, family)).collect()
    }
}
