//! Commutative rings with identity.
//!
//! [`Integers`] is exact arbitrary-precision ℤ. Every finite ring is a
//! [`FiniteRing`] whose elements are canonical `u32` indices:
//!
//! * `Z/n`: the residue `0..n`;
//! * `Fq` with `q = p^k`: base-`p` digits of the polynomial representative
//!   (coefficient of `x^i` is digit `i`) modulo the first monic irreducible
//!   polynomial of degree `k` in lexicographic order;
//! * products: mixed radix, first factor least significant.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Operations every ring used by the library supports.
pub trait Ring: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn name(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inverse(a).is_some()
    }

    fn pow(&self, a: &Self::Elem, mut k: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// `a^k` for a possibly negative exponent; `None` if `a` is not a unit.
    fn pow_signed(&self, a: &Self::Elem, k: i64) -> Option<Self::Elem> {
        if k >= 0 {
            Some(self.pow(a, k as u64))
        } else {
            self.inverse(a).map(|inv| self.pow(&inv, k.unsigned_abs()))
        }
    }

    fn has_half(&self) -> bool {
        self.is_unit(&self.from_i64(2))
    }

    fn has_third(&self) -> bool {
        self.is_unit(&self.from_i64(3))
    }

    fn scale(&self, k: i64, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.from_i64(k), a)
    }

    /// Row-major `n×m` times `m×p` product.
    fn mat_mul(&self, n: usize, m: usize, p: usize, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        let zero = self.zero();
        let mut out = vec![zero.clone(); n * p];
        for i in 0..n {
            for k in 0..m {
                let aik = &a[i * m + k];
                if *aik == zero {
                    continue;
                }
                for j in 0..p {
                    let t = self.mul(aik, &b[k * p + j]);
                    out[i * p + j] = self.add(&out[i * p + j], &t);
                }
            }
        }
        out
    }
}

/// The ring ℤ.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn inverse(&self, a: &BigInt) -> Option<BigInt> {
        if a.abs().is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn name(&self) -> String {
        "Z".into()
    }
}

/// Structural description of a finite ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Descriptor {
    Zmod(u64),
    Field { p: u64, k: u32 },
    Product(Vec<Descriptor>),
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Zmod(n) => write!(f, "Z/{n}"),
            Descriptor::Field { p, k } => write!(f, "F{}", p.pow(*k)),
            Descriptor::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|d| d.to_string()).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}

impl Descriptor {
    /// Parses `"Z/6"`, `"F4"`, `"Z/3xZ/3"`. `"Z"` is not finite and is rejected here.
    pub fn parse(s: &str) -> Result<Descriptor> {
        let s = s.trim();
        let parts: Vec<&str> = s.split(['x', '×']).map(str::trim).collect();
        if parts.len() > 1 {
            return parts.iter().map(|p| Descriptor::parse_atom(p, s)).collect::<Result<Vec<_>>>().map(Descriptor::Product);
        }
        Descriptor::parse_atom(s, s)
    }

    fn parse_atom(a: &str, whole: &str) -> Result<Descriptor> {
        let bad = || Error::MalformedRing(whole.to_string());
        if let Some(n) = a.strip_prefix("Z/") {
            let n: u64 = n.parse().map_err(|_| bad())?;
            if n < 2 || n > u32::MAX as u64 {
                return Err(bad());
            }
            return Ok(Descriptor::Zmod(n));
        }
        if let Some(q) = a.strip_prefix('F') {
            let q: u64 = q.parse().map_err(|_| bad())?;
            let (p, k) = prime_power(q).ok_or_else(bad)?;
            if k > 1 && q > 16 {
                return Err(Error::MalformedRing(format!("{whole}: non-prime fields are limited to q ≤ 16")));
            }
            if q > u32::MAX as u64 {
                return Err(bad());
            }
            return Ok(Descriptor::Field { p, k });
        }
        Err(bad())
    }
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = factorize(q);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

#[derive(Debug)]
enum Arith {
    Zmod(u64),
    Table { add: Vec<u32>, mul: Vec<u32>, neg: Vec<u32>, inv: Vec<Option<u32>> },
}

#[derive(Debug)]
struct Inner {
    desc: Descriptor,
    size: u32,
    arith: Arith,
    /// Image of `k·1` for `k` in `0..characteristic`.
    multiples: Vec<u32>,
    /// Radices of the product encoding.
    radices: Vec<u32>,
    factors: Vec<FiniteRing>,
    local: OnceLock<LocalStructure>,
    additive: OnceLock<AdditiveBasis>,
}

/// A finite commutative ring with canonical integer encoding of elements.
#[derive(Clone)]
pub struct FiniteRing(Arc<Inner>);

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({})", self.0.desc)
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}

impl Eq for FiniteRing {}

/// One local factor of the CRT decomposition with its projection.
#[derive(Debug, Clone)]
pub struct LocalFactor {
    pub ring: FiniteRing,
    /// `proj[x]` is the image of `x` in the factor.
    pub proj: Vec<u32>,
}

#[derive(Debug)]
struct LocalStructure {
    factors: Vec<LocalFactor>,
    /// Mixed-radix index over factor elements → ring element.
    lift: Vec<u32>,
}

/// Additive generators with the coordinates of every element.
#[derive(Debug, Clone)]
pub struct AdditiveBasis {
    pub generators: Vec<u32>,
    pub orders: Vec<u64>,
    /// `coords[x][i]` is the multiplicity of generator `i` in `x`.
    pub coords: Vec<Vec<u64>>,
}

fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (t, &m) in modulus.iter().enumerate() {
            let idx = d - k + t;
            prod[idx] = (prod[idx] + p * p - c * m % p) % p;
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

fn poly_divides(g: &[u64], f: &[u64], p: u64) -> bool {
    // g monic
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if c != 0 {
            for (t, &gc) in g.iter().enumerate() {
                r[shift + t] = (r[shift + t] + p * p - c * gc % p) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

fn monic_polys(p: u64, deg: usize) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(deg as u32);
    (0..count).map(move |mut idx| {
        let mut v = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            v.push(idx % p);
            idx /= p;
        }
        v.push(1);
        v
    })
}

/// First monic irreducible polynomial of degree `k` over `F_p`, coefficients low to high.
pub fn irreducible_polynomial(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    monic_polys(p, k)
        .find(|f| (1..=k / 2).all(|d| monic_polys(p, d).all(|g| !poly_divides(&g, f, p))))
        .expect("irreducible polynomials exist in every degree")
}

fn digits(mut x: u64, p: u64, k: usize) -> Vec<u64> {
    let mut v = Vec::with_capacity(k);
    for _ in 0..k {
        v.push(x % p);
        x /= p;
    }
    v
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl FiniteRing {
    pub fn parse(s: &str) -> Result<FiniteRing> {
        FiniteRing::make(Descriptor::parse(s)?)
    }

    pub fn zmod(n: u64) -> FiniteRing {
        FiniteRing::make(Descriptor::Zmod(n)).expect("n ≥ 2")
    }

    pub fn make(desc: Descriptor) -> Result<FiniteRing> {
        match &desc {
            Descriptor::Zmod(n) if *n >= 2 => Ok(FiniteRing::build_zmod(desc.clone(), *n)),
            Descriptor::Field { p, k: 1 } => Ok(FiniteRing::build_zmod(desc.clone(), *p)),
            Descriptor::Field { p, k } => Ok(FiniteRing::build_field(desc.clone(), *p, *k)),
            Descriptor::Product(parts) if parts.len() >= 2 => {
                let factors = parts.iter().cloned().map(FiniteRing::make).collect::<Result<Vec<_>>>()?;
                FiniteRing::build_product(desc.clone(), factors)
            }
            _ => Err(Error::MalformedRing(desc.to_string())),
        }
    }

    fn finish(desc: Descriptor, size: u32, arith: Arith, radices: Vec<u32>, factors: Vec<FiniteRing>) -> FiniteRing {
        let (one, add): (u32, Box<dyn Fn(u32, u32) -> u32 + '_>) = match &arith {
            Arith::Zmod(n) => (1, Box::new(move |a, b| ((a as u64 + b as u64) % n) as u32)),
            Arith::Table { add, mul, .. } => {
                let one = (0..size).find(|&o| (0..size).all(|a| mul[(o * size + a) as usize] == a)).unwrap();
                (one, Box::new(move |a, b| add[(a * size + b) as usize]))
            }
        };
        let mut multiples = vec![0u32];
        let mut cur = one;
        while cur != 0 {
            multiples.push(cur);
            cur = add(cur, one);
        }
        drop(add);
        FiniteRing(Arc::new(Inner {
            desc,
            size,
            arith,
            multiples,
            radices,
            factors,
            local: OnceLock::new(),
            additive: OnceLock::new(),
        }))
    }

    fn build_zmod(desc: Descriptor, n: u64) -> FiniteRing {
        FiniteRing::finish(desc, n as u32, Arith::Zmod(n), vec![n as u32], Vec::new())
    }

    fn build_field(desc: Descriptor, p: u64, k: u32) -> FiniteRing {
        let modulus = irreducible_polynomial(p, k);
        let q = p.pow(k) as usize;
        let ku = k as usize;
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for a in 0..q {
            let da = digits(a as u64, p, ku);
            for b in 0..q {
                let db = digits(b as u64, p, ku);
                let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p) as u32;
                mul[a * q + b] = undigits(&poly_mulmod(&da, &db, &modulus, p), p) as u32;
            }
        }
        FiniteRing::from_tables(desc, q, add, mul, vec![q as u32], Vec::new())
    }

    fn build_product(desc: Descriptor, factors: Vec<FiniteRing>) -> Result<FiniteRing> {
        let size: u64 = factors.iter().map(|f| f.size() as u64).product();
        if size > 1024 {
            return Err(Error::MalformedRing(format!("{desc}: product rings are limited to 1024 elements")));
        }
        let q = size as usize;
        let radices: Vec<u32> = factors.iter().map(|f| f.size()).collect();
        let split = |mut x: usize| -> Vec<u32> {
            radices
                .iter()
                .map(|&r| {
                    let d = (x % r as usize) as u32;
                    x /= r as usize;
                    d
                })
                .collect()
        };
        let join = |v: &[u32]| -> u32 { v.iter().zip(&radices).rev().fold(0, |acc, (&d, &r)| acc * r + d) };
        let parts: Vec<Vec<u32>> = (0..q).map(split).collect();
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u32> = factors.iter().enumerate().map(|(i, f)| f.add_raw(parts[a][i], parts[b][i])).collect();
                let m: Vec<u32> = factors.iter().enumerate().map(|(i, f)| f.mul_raw(parts[a][i], parts[b][i])).collect();
                add[a * q + b] = join(&s);
                mul[a * q + b] = join(&m);
            }
        }
        Ok(FiniteRing::from_tables(desc, q, add, mul, radices.clone(), factors))
    }

    fn from_tables(desc: Descriptor, q: usize, add: Vec<u32>, mul: Vec<u32>, radices: Vec<u32>, factors: Vec<FiniteRing>) -> FiniteRing {
        let zero = (0..q).find(|&z| (0..q).all(|a| add[z * q + a] as usize == a)).unwrap() as u32;
        let one = (0..q).find(|&o| (0..q).all(|a| mul[o * q + a] as usize == a)).unwrap() as u32;
        let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == zero).unwrap() as u32).collect();
        let inv = (0..q).map(|a| (0..q).find(|&b| mul[a * q + b] == one).map(|b| b as u32)).collect();
        FiniteRing::finish(desc, q as u32, Arith::Table { add, mul, neg, inv }, radices, factors)
    }

    pub fn descriptor(&self) -> &Descriptor {
        &self.0.desc
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.0.size
    }

    /// Additive order of `1`.
    pub fn characteristic(&self) -> u64 {
        self.0.multiples.len() as u64
    }

    /// Component rings of an explicit product (empty otherwise).
    pub fn product_factors(&self) -> &[FiniteRing] {
        &self.0.factors
    }

    /// Splits a product-ring element into its components.
    pub fn components(&self, x: u32) -> Vec<u32> {
        let mut x = x;
        self.0
            .radices
            .iter()
            .map(|&r| {
                let d = x % r;
                x /= r;
                d
            })
            .collect()
    }

    pub fn from_components(&self, v: &[u32]) -> u32 {
        v.iter().zip(&self.0.radices).rev().fold(0, |acc, (&d, &r)| acc * r + d)
    }

    #[inline]
    pub fn add_raw(&self, a: u32, b: u32) -> u32 {
        match &self.0.arith {
            Arith::Zmod(n) => ((a as u64 + b as u64) % n) as u32,
            Arith::Table { add, .. } => add[(a * self.0.size + b) as usize],
        }
    }

    #[inline]
    pub fn mul_raw(&self, a: u32, b: u32) -> u32 {
        match &self.0.arith {
            Arith::Zmod(n) => ((a as u64 * b as u64) % n) as u32,
            Arith::Table { mul, .. } => mul[(a * self.0.size + b) as usize],
        }
    }

    #[inline]
    pub fn neg_raw(&self, a: u32) -> u32 {
        match &self.0.arith {
            Arith::Zmod(n) => ((n - a as u64) % n) as u32,
            Arith::Table { neg, .. } => neg[a as usize],
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match &self.0.arith {
            Arith::Zmod(n) => Some(*n),
            Arith::Table { .. } => None,
        }
    }

    pub fn is_field(&self) -> bool {
        self.elements().filter(|&x| x != self.zero()).all(|x| self.is_unit(&x))
    }

    /// Element encoding for JSON: integer, or an array for products.
    pub fn encode(&self, x: u32) -> Value {
        match &self.0.desc {
            Descriptor::Product(_) => {
                Value::Array(self.0.factors.iter().zip(self.components(x)).map(|(f, c)| f.encode(c)).collect())
            }
            _ => Value::from(x),
        }
    }

    pub fn decode(&self, v: &Value) -> Result<u32> {
        let bad = || Error::Json(format!("bad element {v} for ring {}", self.0.desc));
        match &self.0.desc {
            Descriptor::Product(_) => {
                let arr = v.as_array().ok_or_else(bad)?;
                if arr.len() != self.0.factors.len() {
                    return Err(bad());
                }
                let comps = self.0.factors.iter().zip(arr).map(|(f, c)| f.decode(c)).collect::<Result<Vec<_>>>()?;
                Ok(self.from_components(&comps))
            }
            Descriptor::Zmod(_) => {
                let i = v.as_i64().ok_or_else(bad)?;
                Ok(self.from_i64(i))
            }
            Descriptor::Field { .. } => {
                let i = v.as_u64().ok_or_else(bad)?;
                if i >= self.size() as u64 {
                    return Err(bad());
                }
                Ok(i as u32)
            }
        }
    }

    fn local_structure(&self) -> &LocalStructure {
        self.0.local.get_or_init(|| self.compute_local())
    }

    fn compute_local(&self) -> LocalStructure {
        let q = self.size();
        let factors: Vec<LocalFactor> = match &self.0.desc {
            Descriptor::Zmod(n) => {
                let f = factorize(*n);
                if f.len() == 1 {
                    vec![LocalFactor { ring: self.clone(), proj: (0..q).collect() }]
                } else {
                    f.iter()
                        .map(|&(p, k)| {
                            let m = p.pow(k);
                            LocalFactor { ring: FiniteRing::zmod(m), proj: (0..q).map(|x| (x as u64 % m) as u32).collect() }
                        })
                        .collect()
                }
            }
            Descriptor::Field { .. } => vec![LocalFactor { ring: self.clone(), proj: (0..q).collect() }],
            Descriptor::Product(_) => {
                let mut out = Vec::new();
                for (i, f) in self.0.factors.iter().enumerate() {
                    for lf in f.local_factors() {
                        let proj = (0..q).map(|x| lf.proj[self.components(x)[i] as usize]).collect();
                        out.push(LocalFactor { ring: lf.ring.clone(), proj });
                    }
                }
                out
            }
        };
        let radices: Vec<u64> = factors.iter().map(|f| f.ring.size() as u64).collect();
        let mut lift = vec![u32::MAX; q as usize];
        for x in 0..q {
            let idx = factors.iter().zip(&radices).rev().fold(0u64, |acc, (f, &r)| acc * r + f.proj[x as usize] as u64);
            lift[idx as usize] = x;
        }
        debug_assert!(lift.iter().all(|&x| x != u32::MAX));
        LocalStructure { factors, lift }
    }

    /// Local factors in CRT order (primes ascending for `Z/n`).
    pub fn local_factors(&self) -> &[LocalFactor] {
        &self.local_structure().factors
    }

    pub fn is_local(&self) -> bool {
        self.local_factors().len() == 1
    }

    pub fn to_factors(&self, x: u32) -> Vec<u32> {
        self.local_factors().iter().map(|f| f.proj[x as usize]).collect()
    }

    pub fn from_factors(&self, parts: &[u32]) -> u32 {
        let ls = self.local_structure();
        let idx = ls.factors.iter().zip(parts).rev().fold(0u64, |acc, (f, &p)| acc * f.ring.size() as u64 + p as u64);
        ls.lift[idx as usize]
    }

    /// Orthogonal idempotents of the CRT decomposition.
    pub fn crt_idempotents(&self) -> IdempotentSystem {
        let k = self.local_factors().len();
        let elems = (0..k)
            .map(|i| {
                let parts: Vec<u32> = self
                    .local_factors()
                    .iter()
                    .enumerate()
                    .map(|(j, f)| if i == j { f.ring.one() } else { f.ring.zero() })
                    .collect();
                self.from_factors(&parts)
            })
            .collect();
        IdempotentSystem { elements: elems }
    }

    /// For a local ring: the residue field and projection onto it.
    pub fn residue_field(&self) -> Result<(FiniteRing, Vec<u32>)> {
        if !self.is_local() {
            return Err(Error::Precondition(format!("{} is not local", self.0.desc)));
        }
        match &self.0.desc {
            Descriptor::Zmod(n) => {
                let p = factorize(*n)[0].0;
                if p == *n {
                    Ok((self.clone(), self.elements().collect()))
                } else {
                    Ok((FiniteRing::zmod(p), self.elements().map(|x| (x as u64 % p) as u32).collect()))
                }
            }
            Descriptor::Field { .. } => Ok((self.clone(), self.elements().collect())),
            Descriptor::Product(_) => Err(Error::Precondition("products are never local".into())),
        }
    }

    /// Valuation in a local chain ring: the largest `j` with `x ∈ m^j`.
    /// Zero gets the nilpotency length.
    pub fn valuation(&self, x: u32) -> u32 {
        match &self.0.desc {
            Descriptor::Zmod(n) => {
                let (p, k) = factorize(*n)[0];
                if x == 0 {
                    return k;
                }
                let mut v = 0;
                let mut y = x as u64;
                while y % p == 0 {
                    y /= p;
                    v += 1;
                }
                v
            }
            _ => u32::from(x == 0),
        }
    }

    /// Nilpotency length of the maximal ideal of a local chain ring (1 for fields).
    pub fn chain_length(&self) -> u32 {
        self.valuation(0)
    }

    /// A generator of the maximal ideal of a local chain ring.
    pub fn uniformizer(&self) -> u32 {
        match &self.0.desc {
            Descriptor::Zmod(n) => {
                let p = factorize(*n)[0].0;
                (p % n) as u32
            }
            _ => 0,
        }
    }

    /// An additive generating set together with coordinates of every element.
    pub fn additive_basis(&self) -> &AdditiveBasis {
        self.0.additive.get_or_init(|| self.compute_additive())
    }

    fn compute_additive(&self) -> AdditiveBasis {
        let q = self.size() as usize;
        match &self.0.desc {
            Descriptor::Zmod(n) => AdditiveBasis {
                generators: vec![1],
                orders: vec![*n],
                coords: (0..q as u64).map(|x| vec![x]).collect(),
            },
            Descriptor::Field { p, k } => {
                let k = *k as usize;
                AdditiveBasis {
                    generators: (0..k).map(|i| p.pow(i as u32) as u32).collect(),
                    orders: vec![*p; k],
                    coords: (0..q as u64).map(|x| digits(x, *p, k)).collect(),
                }
            }
            Descriptor::Product(_) => {
                let mut gens = Vec::new();
                let mut orders = Vec::new();
                let subs: Vec<&AdditiveBasis> = self.0.factors.iter().map(|f| f.additive_basis()).collect();
                for (i, (f, b)) in self.0.factors.iter().zip(&subs).enumerate() {
                    for (&g, &o) in b.generators.iter().zip(&b.orders) {
                        let mut comps: Vec<u32> = self.0.factors.iter().map(|h| h.zero()).collect();
                        comps[i] = g;
                        let _ = f;
                        gens.push(self.from_components(&comps));
                        orders.push(o);
                    }
                }
                let coords = (0..q as u32)
                    .map(|x| {
                        self.components(x).iter().zip(&subs).flat_map(|(&c, b)| b.coords[c as usize].clone()).collect()
                    })
                    .collect();
                AdditiveBasis { generators: gens, orders, coords }
            }
        }
    }

    /// Parameters supplied in automorphism specs: `1` followed by the additive generators.
    pub fn spanning_parameters(&self) -> Vec<u32> {
        let mut v = vec![self.one()];
        for &g in &self.additive_basis().generators {
            if !v.contains(&g) {
                v.push(g);
            }
        }
        v
    }

    /// Maximal ideals, one per local factor, with the map onto the residue field.
    pub fn maximal_ideals(&self) -> Vec<(Ideal, RingMap)> {
        self.local_factors()
            .iter()
            .enumerate()
            .map(|(j, lf)| {
                let (field, to_field) = lf.ring.residue_field().expect("local factor");
                let table: Vec<u32> = self.elements().map(|x| to_field[lf.proj[x as usize] as usize]).collect();
                let members: Vec<u32> = self.elements().filter(|&x| table[x as usize] == field.zero()).collect();
                let ideal = Ideal { ring: self.clone(), members, label: format!("m{j}") };
                (ideal, RingMap { source: self.clone(), target: field, table })
            })
            .collect()
    }

    /// The ideal generated by a single element.
    pub fn principal_ideal(&self, g: u32) -> Ideal {
        let mut members: Vec<u32> = self.elements().map(|x| self.mul_raw(g, x)).collect();
        members.sort_unstable();
        members.dedup();
        Ideal { ring: self.clone(), members, label: format!("({})", self.encode(g)) }
    }

    /// Ideal given by per-factor generators of an explicit product.
    pub fn product_ideal(&self, gens: &[u32]) -> Result<Ideal> {
        if gens.len() != self.0.factors.len() {
            return Err(Error::Precondition("one generator per product factor expected".into()));
        }
        let subs: Vec<Ideal> = self.0.factors.iter().zip(gens).map(|(f, &g)| f.principal_ideal(g)).collect();
        let members = self
            .elements()
            .filter(|&x| self.components(x).iter().zip(&subs).all(|(&c, i)| i.contains(c)))
            .collect();
        let label = subs.iter().map(|i| i.label.clone()).collect::<Vec<_>>().join("x");
        Ok(Ideal { ring: self.clone(), members, label })
    }

    fn mat_mul_fast(&self, n: usize, m: usize, p: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; n * p];
        match &self.0.arith {
            Arith::Zmod(modulus) => {
                let md = *modulus;
                let mut acc = vec![0u64; p];
                for i in 0..n {
                    acc.iter_mut().for_each(|x| *x = 0);
                    for k in 0..m {
                        let aik = a[i * m + k] as u64;
                        if aik == 0 {
                            continue;
                        }
                        for (x, &bkj) in acc.iter_mut().zip(&b[k * p..(k + 1) * p]) {
                            *x = (*x + aik * bkj as u64) % md;
                        }
                    }
                    for j in 0..p {
                        out[i * p + j] = acc[j] as u32;
                    }
                }
            }
            Arith::Table { .. } => {
                for i in 0..n {
                    for k in 0..m {
                        let aik = a[i * m + k];
                        if aik == 0 {
                            continue;
                        }
                        for j in 0..p {
                            let t = self.mul_raw(aik, b[k * p + j]);
                            out[i * p + j] = self.add_raw(out[i * p + j], t);
                        }
                    }
                }
            }
        }
        out
    }
}

impl Ring for FiniteRing {
    type Elem = u32;

    fn zero(&self) -> u32 {
        self.0.multiples[0]
    }
    fn one(&self) -> u32 {
        self.0.multiples[1 % self.0.multiples.len()]
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.add_raw(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.neg_raw(*a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul_raw(*a, *b)
    }
    fn from_i64(&self, v: i64) -> u32 {
        let c = self.0.multiples.len() as i64;
        self.0.multiples[v.rem_euclid(c) as usize]
    }
    fn inverse(&self, a: &u32) -> Option<u32> {
        match &self.0.arith {
            Arith::Zmod(n) => {
                let (g, x, _) = ext_gcd(*a as i64, *n as i64);
                if g == 1 {
                    Some(x.rem_euclid(*n as i64) as u32)
                } else {
                    None
                }
            }
            Arith::Table { inv, .. } => inv[*a as usize],
        }
    }
    fn name(&self) -> String {
        self.0.desc.to_string()
    }
    fn mat_mul(&self, n: usize, m: usize, p: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.mat_mul_fast(n, m, p, a, b)
    }
}

/// Orthogonal idempotents summing to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentSystem {
    pub elements: Vec<u32>,
}

impl IdempotentSystem {
    pub fn trivial(ring: &FiniteRing) -> Self {
        IdempotentSystem { elements: vec![ring.one()] }
    }

    /// Checks `e_i² = e_i`, `e_i e_j = 0` and `Σ e_i = 1`.
    pub fn validate(&self, ring: &FiniteRing) -> Result<()> {
        let e = &self.elements;
        let mut sum = ring.zero();
        for (i, &a) in e.iter().enumerate() {
            if ring.mul(&a, &a) != a {
                return Err(Error::Precondition(format!("ε{i} is not idempotent")));
            }
            for (j, &b) in e.iter().enumerate() {
                if i != j && ring.mul(&a, &b) != ring.zero() {
                    return Err(Error::Precondition(format!("ε{i}ε{j} ≠ 0")));
                }
            }
            sum = ring.add(&sum, &a);
        }
        if sum != ring.one() {
            return Err(Error::Precondition("idempotents do not sum to 1".into()));
        }
        Ok(())
    }
}

/// Result of splitting a finite ring into local factors.
#[derive(Debug, Clone)]
pub struct CrtSplit {
    pub ring: FiniteRing,
    pub factors: Vec<FiniteRing>,
    pub idempotents: IdempotentSystem,
}

impl CrtSplit {
    pub fn to_factors(&self, x: u32) -> Vec<u32> {
        self.ring.to_factors(x)
    }

    pub fn from_factors(&self, parts: &[u32]) -> u32 {
        self.ring.from_factors(parts)
    }
}

/// CRT decomposition into local rings.
pub fn crt_split(ring: &FiniteRing) -> CrtSplit {
    CrtSplit {
        ring: ring.clone(),
        factors: ring.local_factors().iter().map(|f| f.ring.clone()).collect(),
        idempotents: ring.crt_idempotents(),
    }
}

/// An ideal of a finite ring, stored by its members.
#[derive(Debug, Clone)]
pub struct Ideal {
    pub ring: FiniteRing,
    pub members: Vec<u32>,
    pub label: String,
}

impl Ideal {
    pub fn contains(&self, x: u32) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_proper(&self) -> bool {
        !self.contains(self.ring.one())
    }

    /// Maximal iff the quotient is a field.
    pub fn is_maximal(&self) -> bool {
        self.is_proper() && residue_map(&self.ring, self).map(|m| m.target.is_field()).unwrap_or(false)
    }
}

/// A ring homomorphism between finite rings given by its value table.
#[derive(Debug, Clone)]
pub struct RingMap {
    pub source: FiniteRing,
    pub target: FiniteRing,
    pub table: Vec<u32>,
}

impl RingMap {
    pub fn identity(ring: &FiniteRing) -> RingMap {
        RingMap { source: ring.clone(), target: ring.clone(), table: ring.elements().collect() }
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.table.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &RingMap) -> RingMap {
        RingMap {
            source: other.source.clone(),
            target: self.target.clone(),
            table: other.table.iter().map(|&x| self.table[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Option<RingMap> {
        let mut inv = vec![u32::MAX; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            if y as usize >= inv.len() || inv[y as usize] != u32::MAX {
                return None;
            }
            inv[y as usize] = x as u32;
        }
        Some(RingMap { source: self.target.clone(), target: self.source.clone(), table: inv })
    }

    /// Exhaustive check of `f(x+y)=f(x)+f(y)`, `f(xy)=f(x)f(y)`, `f(1)=1`.
    pub fn is_homomorphism(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        if self.apply(s.one()) != t.one() {
            return false;
        }
        s.elements().all(|x| {
            s.elements().all(|y| {
                self.apply(s.add_raw(x, y)) == t.add_raw(self.apply(x), self.apply(y))
                    && self.apply(s.mul_raw(x, y)) == t.mul_raw(self.apply(x), self.apply(y))
            })
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size() == self.target.size() && self.inverse().is_some()
    }
}

/// The quotient map `R → R/I`.
pub fn residue_map(ring: &FiniteRing, ideal: &Ideal) -> Result<RingMap> {
    if !ideal.is_proper() {
        return Err(Error::ImproperIdeal);
    }
    if ideal.members.len() == 1 {
        return Ok(RingMap::identity(ring));
    }
    // Z/n modulo (d): target Z/d with d = gcd of members and n.
    if let Descriptor::Zmod(n) = ring.descriptor() {
        let d = ideal.members.iter().fold(*n, |g, &m| gcd(g, m as u64));
        let target = FiniteRing::zmod(d);
        let table = ring.elements().map(|x| (x as u64 % d) as u32).collect();
        return Ok(RingMap { source: ring.clone(), target, table });
    }
    if let Descriptor::Field { .. } = ring.descriptor() {
        return Ok(RingMap::identity(ring));
    }
    // Products: quotient componentwise, dropping factors killed entirely.
    let factors = ring.product_factors();
    let mut maps = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        let mut members: Vec<u32> = ideal.members.iter().map(|&x| ring.components(x)[i]).collect();
        members.sort_unstable();
        members.dedup();
        let sub = Ideal { ring: f.clone(), members, label: String::new() };
        if sub.is_proper() {
            maps.push((i, residue_map(f, &sub)?));
        }
    }
    let target = if maps.len() == 1 {
        maps[0].1.target.clone()
    } else {
        FiniteRing::make(Descriptor::Product(maps.iter().map(|(_, m)| m.target.descriptor().clone()).collect()))?
    };
    let table = ring
        .elements()
        .map(|x| {
            let c = ring.components(x);
            let parts: Vec<u32> = maps.iter().map(|(i, m)| m.apply(c[*i])).collect();
            if maps.len() == 1 {
                parts[0]
            } else {
                target.from_components(&parts)
            }
        })
        .collect();
    Ok(RingMap { source: ring.clone(), target, table })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All ring automorphisms of a finite ring, identity first.
pub fn ring_automorphisms(ring: &FiniteRing) -> Vec<RingMap> {
    match ring.descriptor() {
        Descriptor::Zmod(_) => vec![RingMap::identity(ring)],
        Descriptor::Field { p, k } => (0..*k)
            .map(|i| {
                let e = p.pow(i);
                RingMap { source: ring.clone(), target: ring.clone(), table: ring.elements().map(|x| ring.pow(&x, e)).collect() }
            })
            .collect(),
        Descriptor::Product(descs) => {
            let factors = ring.product_factors();
            let m = factors.len();
            let per: Vec<Vec<RingMap>> = factors.iter().map(ring_automorphisms).collect();
            let mut out = Vec::new();
            for perm in permutations(m) {
                if (0..m).any(|i| descs[perm[i]] != descs[i]) {
                    continue;
                }
                // Component i of the image is σ_i applied to component perm[i].
                let mut choice = vec![0usize; m];
                loop {
                    let table = ring
                        .elements()
                        .map(|x| {
                            let c = ring.components(x);
                            let img: Vec<u32> = (0..m).map(|i| per[i][choice[i]].apply(c[perm[i]])).collect();
                            ring.from_components(&img)
                        })
                        .collect();
                    out.push(RingMap { source: ring.clone(), target: ring.clone(), table });
                    let mut i = 0;
                    while i < m {
                        choice[i] += 1;
                        if choice[i] < per[i].len() {
                            break;
                        }
                        choice[i] = 0;
                        i += 1;
                    }
                    if i == m {
                        break;
                    }
                }
            }
            out
        }
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Either ℤ or a finite ring, as named by a descriptor string.
#[derive(Debug, Clone)]
pub enum AnyRing {
    Integers,
    Finite(FiniteRing),
}

impl AnyRing {
    pub fn parse(s: &str) -> Result<AnyRing> {
        if s.trim() == "Z" {
            Ok(AnyRing::Integers)
        } else {
            FiniteRing::parse(s).map(AnyRing::Finite)
        }
    }

    pub fn finite(self) -> Result<FiniteRing> {
        match self {
            AnyRing::Finite(r) => Ok(r),
            AnyRing::Integers => Err(Error::Unsupported("enumeration unavailable for the infinite ring Z".into())),
        }
    }
}

/// Reduction `ℤ → ℤ/d`.
pub fn reduce_integer(ring: &FiniteRing, x: &BigInt) -> u32 {
    let c = BigInt::from(ring.characteristic());
    let r = ((x % &c) + &c) % &c;
    ring.from_i64(r.to_i64().expect("residue fits"))
}

/// Map from a descriptor-independent lookup of elements by encoding.
pub fn element_index(ring: &FiniteRing) -> HashMap<String, u32> {
    ring.elements().map(|x| (ring.encode(x).to_string(), x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axioms(r: &FiniteRing, sample: &[u32]) {
        for &a in sample {
            for &b in sample {
                assert_eq!(r.add_raw(a, b), r.add_raw(b, a));
                assert_eq!(r.mul_raw(a, b), r.mul_raw(b, a));
                for &c in sample {
                    assert_eq!(r.add_raw(r.add_raw(a, b), c), r.add_raw(a, r.add_raw(b, c)));
                    assert_eq!(r.mul_raw(r.mul_raw(a, b), c), r.mul_raw(a, r.mul_raw(b, c)));
                    assert_eq!(r.mul_raw(a, r.add_raw(b, c)), r.add_raw(r.mul_raw(a, b), r.mul_raw(a, c)));
                }
            }
            assert_eq!(r.add_raw(a, r.zero()), a);
            assert_eq!(r.mul_raw(a, r.one()), a);
            assert_eq!(r.add_raw(a, r.neg_raw(a)), r.zero());
        }
    }

    #[test]
    fn ring_axioms_small() {
        for d in ["Z/2", "Z/4", "Z/6", "Z/9", "Z/12", "F4", "F8", "F9", "F16", "F7", "Z/3xZ/3", "Z/2xF4"] {
            let r = FiniteRing::parse(d).unwrap();
            let all: Vec<u32> = r.elements().collect();
            axioms(&r, &all);
            for x in r.elements() {
                let brute = r.elements().any(|y| r.mul_raw(x, y) == r.one());
                assert_eq!(r.is_unit(&x), brute, "{d} {x}");
            }
        }
    }

    #[test]
    fn half_and_third_flags() {
        let z5 = FiniteRing::parse("Z/5").unwrap();
        assert!(z5.has_half());
        assert_eq!(z5.inverse(&2), Some(3));
        assert!(!FiniteRing::parse("Z/4").unwrap().has_half());
        let z6 = FiniteRing::parse("Z/6").unwrap();
        assert!(!z6.has_half() && !z6.has_third());
        assert!(FiniteRing::parse("F9").unwrap().has_half());
        assert!(!FiniteRing::parse("F9").unwrap().has_third());
    }

    #[test]
    fn descriptors() {
        for bad in ["Z/1", "Z/0", "F6", "F32", "Q", "Z/x", ""] {
            assert!(FiniteRing::parse(bad).is_err(), "{bad}");
        }
        assert_eq!(FiniteRing::parse("Z/3xZ/3").unwrap().name(), "Z/3xZ/3");
        assert!(matches!(AnyRing::parse("Z").unwrap(), AnyRing::Integers));
    }

    #[test]
    fn crt_of_six() {
        let r = FiniteRing::parse("Z/6").unwrap();
        let s = crt_split(&r);
        let names: Vec<String> = s.factors.iter().map(|f| f.name()).collect();
        assert_eq!(names, vec!["Z/2", "Z/3"]);
        // e ≡ 1 mod 2, 0 mod 3 → 3; e ≡ 0 mod 2, 1 mod 3 → 4
        assert_eq!(s.idempotents.elements, vec![3, 4]);
        s.idempotents.validate(&r).unwrap();
        let nine = crt_split(&FiniteRing::zmod(9));
        assert_eq!(nine.factors.len(), 1);
        assert_eq!(nine.idempotents.elements, vec![1]);
        assert_eq!(crt_split(&FiniteRing::zmod(2)).idempotents.elements, vec![1]);
    }

    #[test]
    fn crt_round_trip_exhaustive() {
        for n in 2..=1000u64 {
            let r = FiniteRing::zmod(n);
            for x in r.elements() {
                assert_eq!(r.from_factors(&r.to_factors(x)), x);
            }
            r.crt_idempotents().validate(&r).unwrap();
        }
    }

    #[test]
    fn residue_maps() {
        let z6 = FiniteRing::zmod(6);
        let m = residue_map(&z6, &z6.principal_ideal(3)).unwrap();
        assert_eq!(m.target.name(), "Z/3");
        assert_eq!(m.apply(1), 1);
        assert!(m.is_homomorphism());
        let z4 = FiniteRing::zmod(4);
        let m = residue_map(&z4, &z4.principal_ideal(2)).unwrap();
        assert_eq!(m.target.name(), "Z/2");
        let kernel: Vec<u32> = z4.elements().filter(|&x| m.apply(x) == 0).collect();
        assert_eq!(kernel, vec![0, 2]);
        let z9 = FiniteRing::zmod(9);
        let m = residue_map(&z9, &z9.principal_ideal(3)).unwrap();
        let kernel: Vec<u32> = z9.elements().filter(|&x| m.apply(x) == 0).collect();
        assert_eq!(kernel, vec![0, 3, 6]);
        assert!(m.target.is_field());
        assert!(matches!(residue_map(&z6, &z6.principal_ideal(5)), Err(Error::ImproperIdeal)));
        let p = FiniteRing::parse("Z/3xZ/3").unwrap();
        let i = p.product_ideal(&[0, 1]).unwrap();
        let m = residue_map(&p, &i).unwrap();
        assert_eq!(m.target.name(), "Z/3");
        assert!(m.is_homomorphism());
        assert!(i.is_maximal());
    }

    #[test]
    fn ideal_classification() {
        let z12 = FiniteRing::zmod(12);
        assert!(z12.principal_ideal(2).is_maximal());
        assert!(z12.principal_ideal(3).is_maximal());
        assert!(!z12.principal_ideal(4).is_maximal());
        assert!(!z12.principal_ideal(1).is_proper());
        assert_eq!(z12.maximal_ideals().len(), 2);
    }

    fn brute_automorphisms(r: &FiniteRing) -> usize {
        // determined by images of additive generators
        let b = r.additive_basis();
        let q = r.size();
        let mut count = 0;
        let k = b.generators.len();
        let mut choice = vec![0u32; k];
        loop {
            let table: Vec<u32> = r
                .elements()
                .map(|x| {
                    b.coords[x as usize].iter().zip(&choice).fold(r.zero(), |acc, (&c, &g)| {
                        r.add_raw(acc, r.mul_raw(r.from_i64(c as i64), g))
                    })
                })
                .collect();
            let m = RingMap { source: r.clone(), target: r.clone(), table };
            if m.is_homomorphism() && m.is_bijective() {
                count += 1;
            }
            let mut i = 0;
            while i < k {
                choice[i] += 1;
                if choice[i] < q {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
        count
    }

    #[test]
    fn automorphism_counts() {
        let z7 = FiniteRing::zmod(7);
        assert_eq!(ring_automorphisms(&z7).len(), 1);
        let f4 = FiniteRing::parse("F4").unwrap();
        let auts = ring_automorphisms(&f4);
        assert_eq!(auts.len(), 2);
        for x in f4.elements() {
            assert_eq!(auts[1].apply(x), f4.mul_raw(x, x));
        }
        assert!(auts.iter().all(|a| a.is_homomorphism() && a.is_bijective()));
        let p = FiniteRing::parse("Z/3xZ/3").unwrap();
        assert_eq!(ring_automorphisms(&p).len(), 2);
        for d in ["Z/3xZ/3", "F4", "F8", "F9", "Z/6", "Z/2xF4"] {
            let r = FiniteRing::parse(d).unwrap();
            assert_eq!(ring_automorphisms(&r).len(), brute_automorphisms(&r), "{d}");
        }
        assert!(AnyRing::parse("Z").unwrap().finite().is_err());
    }

    #[test]
    fn localization_oracle_matches_crt_factor() {
        // S^{-1}(Z/n) with S = Z/n \ (p), built from the fraction equivalence directly.
        for (n, p) in [(12u64, 2u64), (12, 3), (18, 3), (20, 5), (8, 2)] {
            let s: Vec<u64> = (0..n).filter(|x| x % p != 0).collect();
            let equiv = |(a, s1): (u64, u64), (b, t): (u64, u64)| s.iter().any(|&u| ((a * t + n * n - b * s1) % n) * u % n == 0);
            let mut reps: Vec<(u64, u64)> = Vec::new();
            for a in 0..n {
                for &t in &s {
                    if !reps.iter().any(|&r| equiv(r, (a, t))) {
                        reps.push((a, t));
                    }
                }
            }
            let r = FiniteRing::zmod(n);
            let factor = r.local_factors().iter().find(|f| f.ring.size() as u64 % p == 0).unwrap();
            assert_eq!(reps.len() as u32, factor.ring.size(), "n={n} p={p}");
            // a/1 ↦ class agrees with the CRT projection
            for a in 0..n {
                for b in 0..n {
                    let same_class = equiv((a, 1), (b, 1));
                    assert_eq!(same_class, factor.proj[a as usize] == factor.proj[b as usize]);
                }
            }
        }
    }

    #[test]
    fn additive_basis_coordinates() {
        for d in ["Z/6", "F4", "F9", "Z/3xZ/3", "Z/2xF4"] {
            let r = FiniteRing::parse(d).unwrap();
            let b = r.additive_basis();
            for x in r.elements() {
                let y = b.coords[x as usize].iter().zip(&b.generators).fold(r.zero(), |acc, (&c, &g)| {
                    (0..c).fold(acc, |a, _| r.add_raw(a, g))
                });
                assert_eq!(x, y, "{d}");
            }
        }
        assert_eq!(FiniteRing::zmod(5).spanning_parameters(), vec![1]);
        assert_eq!(FiniteRing::parse("F4").unwrap().spanning_parameters(), vec![1, 2]);
    }
}
