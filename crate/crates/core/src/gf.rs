//! Finite fields GF(p^m) backed by exponent, logarithm and Zech tables.
//!
//! Elements are stored as a log index with a zero marker, so multiplication
//! and inversion are exponent arithmetic and addition is a Zech lookup. The
//! polynomial-basis coefficient tuple of an element is only materialised for
//! I/O.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field order supported by the table representation.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Default cap on the number of points `poly_roots` is allowed to scan.
pub const DEFAULT_SCAN_CAP: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds the supported maximum {MAX_FIELD_ORDER}")]
    TooLarge { p: u32, m: u32 },
    #[error("modulus must be monic of degree {expected}, got {got:?}")]
    BadModulus { expected: u32, got: Vec<u32> },
    #[error("modulus {0:?} is reducible")]
    Reducible(Vec<u32>),
    #[error("element {0:?} is not a primitive element")]
    NotPrimitive(Vec<u32>),
    #[error("coefficient tuple {0:?} does not describe a field element")]
    BadElement(Vec<u32>),
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("field GF({p}^{m}) is not a quadratic extension GF(q^2)")]
    NotQuadratic { p: u32, m: u32 },
    #[error("element is not in the subfield GF(q)")]
    NotInSubfield,
    #[error("norm equation x^(q+1) = 0 has no nonzero solution")]
    ZeroNorm,
    #[error("root scan over {order} points exceeds the cap {cap}")]
    ScanCap { order: u64, cap: u64 },
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
}

pub type Result<T> = std::result::Result<T, GfError>;

/// A field element: `0` is zero, `i + 1` is `ω^i` for the field's primitive
/// element `ω`.
///
/// The derived ordering puts zero first and then sorts by log index, which is
/// the canonical element order used throughout the crate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf(u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Discrete logarithm to the base `ω`, `None` for zero.
    #[inline]
    pub fn log(self) -> Option<u32> {
        self.0.checked_sub(1)
    }

    /// Raw table index (zero marker or log + 1).
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    /// Inverse of [`Gf::index`]. The caller keeps the index below the field
    /// order; [`Field::contains`] checks it.
    #[inline]
    pub fn from_index(i: u32) -> Gf {
        Gf(i)
    }
}

/// Serializable description of a field: characteristic, degree, modulus and
/// generator, both as coefficient lists from low to high degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
    pub generator: Vec<u32>,
}

struct FieldTables {
    p: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    generator: Vec<u32>,
    /// log -> integer encoding `Σ c_i p^i`
    exp: Vec<u32>,
    /// integer encoding -> log (entry 0 unused)
    log: Vec<u32>,
    /// d -> Gf index of 1 + ω^d
    zech: Vec<u32>,
    neg_one_log: u32,
    /// q when the field is GF(q^2)
    sub_q: Option<u32>,
}

/// An immutable finite field GF(p^m). Cloning is cheap and clones compare
/// equal.
#[derive(Clone)]
pub struct Field(Arc<FieldTables>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.m == other.0.m
                && self.0.modulus == other.0.modulus
                && self.0.generator == other.0.generator)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}; modulus {:?}, generator {:?})",
            self.0.p, self.0.m, self.0.modulus, self.0.generator
        )
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^s` with `p` prime.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut s = 0;
    while rest % p == 0 {
        rest /= p;
        s += 1;
    }
    (rest == 1).then_some((p, s))
}

// Polynomials over the prime field GF(p), coefficients low to high.

fn poly_trim(a: &mut Vec<u32>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let shift = r.len() - 1 - db;
        let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let t = (c as u64 * bi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + ai as u64 * bj as u64) % p as u64) as u32;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(modulus.len() - 1, 0);
    r
}

fn decode(mut enc: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let c = enc % p;
            enc /= p;
            c
        })
        .collect()
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Monic polynomial of degree `deg` whose non-leading coefficients are the
/// base-p digits of `idx`.
fn monic_from_index(idx: u32, p: u32, deg: u32) -> Vec<u32> {
    let mut c = decode(idx, p, deg);
    c.push(1);
    c
}

/// Irreducibility by exhaustive trial division with every monic polynomial of
/// degree at most `deg / 2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() as u32 - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d) {
            let f = monic_from_index(idx, p, d);
            let r = poly_rem(poly, &f, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Powers of `g` modulo `modulus` as integer encodings, stopping at the first
/// return to 1. The element is primitive iff the returned cycle has length
/// `order - 1`.
fn power_cycle(g: &[u32], modulus: &[u32], p: u32, m: u32, order: u32) -> Vec<u32> {
    let mut cur = vec![0u32; m as usize];
    cur[0] = 1;
    let mut out = Vec::with_capacity(order as usize - 1);
    loop {
        out.push(encode(&cur, p));
        cur = poly_mulmod(&cur, g, modulus, p);
        if encode(&cur, p) == 1 || out.len() >= order as usize - 1 {
            break;
        }
    }
    if encode(&cur, p) != 1 {
        // not even a unit cycle (only possible for the zero element)
        out.clear();
    }
    out
}

impl Field {
    /// GF(p^m) with the smallest monic irreducible modulus and the smallest
    /// primitive element.
    pub fn new(p: u32, m: u32) -> Result<Field> {
        Self::with_params(p, m, None, None)
    }

    /// GF(q^2) for a prime power `q`.
    pub fn quadratic_over(q: u32) -> Result<Field> {
        let (p, s) = prime_power(q).ok_or(GfError::NotPrimePower(q))?;
        Field::new(p, 2 * s)
    }

    /// Builds GF(p^m). `modulus` is a monic coefficient list of length m + 1
    /// (low to high) and `generator` a coefficient tuple of length m; both
    /// default to the smallest valid choice.
    ///
    /// Moduli are ordered by the integer whose base-p digits are the
    /// non-leading coefficients; elements by the integer whose digits are
    /// their coefficients.
    pub fn with_params(
        p: u32,
        m: u32,
        modulus: Option<&[u32]>,
        generator: Option<&[u32]>,
    ) -> Result<Field> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if m == 0 {
            return Err(GfError::ZeroDegree);
        }
        let order64 = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if order64 > MAX_FIELD_ORDER {
            return Err(GfError::TooLarge { p, m });
        }
        let order = order64 as u32;

        let modulus = match modulus {
            Some(md) => {
                if md.len() != m as usize + 1 || md[m as usize] != 1 || md.iter().any(|&c| c >= p)
                {
                    return Err(GfError::BadModulus { expected: m, got: md.to_vec() });
                }
                if !is_irreducible(md, p) {
                    return Err(GfError::Reducible(md.to_vec()));
                }
                md.to_vec()
            }
            None => (0..p.pow(m))
                .map(|idx| monic_from_index(idx, p, m))
                .find(|f| is_irreducible(f, p))
                .expect("an irreducible polynomial of every degree exists"),
        };

        let (generator, exp) = match generator {
            Some(g) => {
                if g.len() != m as usize || g.iter().any(|&c| c >= p) {
                    return Err(GfError::BadElement(g.to_vec()));
                }
                let cycle = power_cycle(g, &modulus, p, m, order);
                if cycle.len() != order as usize - 1 || encode(g, p) == 0 {
                    return Err(GfError::NotPrimitive(g.to_vec()));
                }
                (g.to_vec(), cycle)
            }
            None => (1..order)
                .find_map(|enc| {
                    let g = decode(enc, p, m);
                    let cycle = power_cycle(&g, &modulus, p, m, order);
                    (cycle.len() == order as usize - 1).then_some((g, cycle))
                })
                .expect("the multiplicative group of a finite field is cyclic"),
        };

        let n = order - 1;
        let mut log = vec![0u32; order as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let zech = (0..n)
            .map(|d| {
                let enc = exp[d as usize];
                let c0 = enc % p;
                let bumped = enc - c0 + (c0 + 1) % p;
                if bumped == 0 {
                    0
                } else {
                    log[bumped as usize] + 1
                }
            })
            .collect();
        let neg_one_log = if p == 2 { 0 } else { n / 2 };
        let sub_q = (m % 2 == 0).then(|| p.pow(m / 2));

        Ok(Field(Arc::new(FieldTables {
            p,
            m,
            order,
            modulus,
            generator,
            exp,
            log,
            zech,
            neg_one_log,
            sub_q,
        })))
    }

    pub fn from_desc(desc: &FieldDesc) -> Result<Field> {
        Field::with_params(desc.p, desc.m, Some(&desc.modulus), Some(&desc.generator))
    }

    pub fn desc(&self) -> FieldDesc {
        FieldDesc {
            p: self.0.p,
            m: self.0.m,
            modulus: self.0.modulus.clone(),
            generator: self.0.generator.clone(),
        }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.m
    }

    /// Number of elements p^m.
    #[inline]
    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn generator_coeffs(&self) -> &[u32] {
        &self.0.generator
    }

    #[inline]
    fn group_order(&self) -> u32 {
        self.0.order - 1
    }

    #[inline]
    fn from_log(&self, l: u64) -> Gf {
        Gf((l % self.group_order() as u64) as u32 + 1)
    }

    #[inline]
    pub fn zero(&self) -> Gf {
        Gf::ZERO
    }

    #[inline]
    pub fn one(&self) -> Gf {
        Gf::ONE
    }

    /// The primitive element ω.
    pub fn primitive(&self) -> Gf {
        self.omega_pow(1)
    }

    /// ω^e for any integer exponent.
    pub fn omega_pow(&self, e: i64) -> Gf {
        let n = self.group_order() as i64;
        self.from_log(e.rem_euclid(n) as u64)
    }

    /// Whether `x` is a valid element of this field.
    pub fn contains(&self, x: Gf) -> bool {
        x.0 < self.0.order
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Gf {
        let c = v.rem_euclid(self.0.p as i64) as u32;
        self.from_encoding(c)
    }

    fn from_encoding(&self, enc: u32) -> Gf {
        if enc == 0 {
            Gf::ZERO
        } else {
            Gf(self.0.log[enc as usize] + 1)
        }
    }

    /// Element with the given polynomial-basis coefficients (low to high).
    /// Shorter tuples are zero-padded.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Gf> {
        if coeffs.len() > self.0.m as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(GfError::BadElement(coeffs.to_vec()));
        }
        Ok(self.from_encoding(encode(coeffs, self.0.p)))
    }

    pub fn to_coeffs(&self, x: Gf) -> Vec<u32> {
        decode(self.encoding(x), self.0.p, self.0.m)
    }

    /// The integer `Σ c_i p^i` of the coefficient tuple.
    pub fn encoding(&self, x: Gf) -> u32 {
        match x.log() {
            None => 0,
            Some(l) => self.0.exp[l as usize],
        }
    }

    /// All elements in canonical order: zero, then ω^0, ω^1, ...
    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.0.order).map(Gf)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Gf> {
        (1..self.0.order).map(Gf)
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        let (Some(i), Some(j)) = (a.log(), b.log()) else {
            return Gf(a.0 | b.0);
        };
        let n = self.group_order();
        let d = if j >= i { j - i } else { j + n - i };
        let z = self.0.zech[d as usize];
        if z == 0 {
            Gf::ZERO
        } else {
            self.from_log(i as u64 + (z - 1) as u64)
        }
    }

    #[inline]
    pub fn neg(&self, a: Gf) -> Gf {
        match a.log() {
            None => Gf::ZERO,
            Some(l) => self.from_log(l as u64 + self.0.neg_one_log as u64),
        }
    }

    #[inline]
    pub fn sub(&self, a: Gf, b: Gf) -> Gf {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        match (a.log(), b.log()) {
            (Some(i), Some(j)) => self.from_log(i as u64 + j as u64),
            _ => Gf::ZERO,
        }
    }

    pub fn inv(&self, a: Gf) -> Result<Gf> {
        let l = a.log().ok_or(GfError::ZeroInverse)?;
        Ok(self.from_log((self.group_order() - l) as u64))
    }

    pub fn div(&self, a: Gf, b: Gf) -> Result<Gf> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for a non-negative exponent; `0^0 = 1`.
    pub fn pow(&self, a: Gf, e: u64) -> Gf {
        match a.log() {
            None if e == 0 => Gf::ONE,
            None => Gf::ZERO,
            Some(l) => {
                let n = self.group_order() as u64;
                self.from_log((l as u64 % n) * (e % n) % n)
            }
        }
    }

    /// `a^e` for any integer exponent; negative exponents need `a ≠ 0`.
    pub fn pow_signed(&self, a: Gf, e: i64) -> Result<Gf> {
        if e >= 0 {
            return Ok(self.pow(a, e as u64));
        }
        Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Gf) -> Option<u32> {
        let l = a.log()?;
        let n = self.group_order();
        Some(n / gcd(l, n))
    }

    pub fn sum<I: IntoIterator<Item = Gf>>(&self, it: I) -> Gf {
        it.into_iter().fold(Gf::ZERO, |acc, x| self.add(acc, x))
    }

    pub fn product<I: IntoIterator<Item = Gf>>(&self, it: I) -> Gf {
        it.into_iter().fold(Gf::ONE, |acc, x| self.mul(acc, x))
    }

    /// Horner evaluation; coefficients low to high.
    pub fn poly_eval(&self, coeffs: &[Gf], x: Gf) -> Gf {
        coeffs.iter().rev().fold(Gf::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Root set of a nonzero polynomial by evaluation at every field element.
    pub fn poly_roots(&self, coeffs: &[Gf], scan_cap: u64) -> Result<Vec<Gf>> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(GfError::ZeroPolynomial);
        }
        if self.0.order as u64 > scan_cap {
            return Err(GfError::ScanCap { order: self.0.order as u64, cap: scan_cap });
        }
        Ok(self.elements().filter(|&x| self.poly_eval(coeffs, x).is_zero()).collect())
    }

    /// View of this field as GF(q^2) over GF(q).
    pub fn quadratic(&self) -> Result<Quadratic<'_>> {
        match self.0.sub_q {
            Some(q) => Ok(Quadratic { field: self, q }),
            None => Err(GfError::NotQuadratic { p: self.0.p, m: self.0.m }),
        }
    }

    pub fn is_quadratic(&self) -> bool {
        self.0.sub_q.is_some()
    }

    /// Human-readable form: `0`, or `w^i`.
    pub fn show(&self, x: Gf) -> String {
        match x.log() {
            None => "0".to_string(),
            Some(0) => "1".to_string(),
            Some(l) => format!("w^{l}"),
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// GF(q^2) seen as a quadratic extension of GF(q): Frobenius, norm, trace and
/// subfield operations.
#[derive(Clone, Copy)]
pub struct Quadratic<'a> {
    field: &'a Field,
    q: u32,
}

impl<'a> Quadratic<'a> {
    pub fn field(&self) -> &'a Field {
        self.field
    }

    /// Order of the subfield.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// `x^q`.
    #[inline]
    pub fn frobenius(&self, x: Gf) -> Gf {
        self.field.pow(x, self.q as u64)
    }

    /// `x^(q+1)`, always in GF(q).
    pub fn norm(&self, x: Gf) -> Gf {
        self.field.pow(x, self.q as u64 + 1)
    }

    /// `x^q + x`, always in GF(q).
    pub fn trace(&self, x: Gf) -> Gf {
        self.field.add(self.frobenius(x), x)
    }

    pub fn in_subfield(&self, x: Gf) -> bool {
        match x.log() {
            None => true,
            Some(l) => l % (self.q + 1) == 0,
        }
    }

    /// The q elements of GF(q): zero, then ascending log index.
    pub fn subfield_elements(&self) -> Vec<Gf> {
        let step = self.q + 1;
        std::iter::once(Gf::ZERO)
            .chain((0..self.q - 1).map(|j| self.field.from_log(j as u64 * step as u64)))
            .collect()
    }

    /// The ξ = ω^j with smallest `j ≥ 0` such that `ξ^(q+1) = c`.
    pub fn solve_norm(&self, c: Gf) -> Result<Gf> {
        let l = c.log().ok_or(GfError::ZeroNorm)?;
        if l % (self.q + 1) != 0 {
            return Err(GfError::NotInSubfield);
        }
        Ok(self.field.from_log((l / (self.q + 1)) as u64))
    }
}

/// Coefficient-tuple wrapper used by the JSON formats.
pub fn elements_to_coeffs(field: &Field, xs: &[Gf]) -> Vec<Vec<u32>> {
    xs.iter().map(|&x| field.to_coeffs(x)).collect()
}

pub fn elements_from_coeffs(field: &Field, cs: &[Vec<u32>]) -> Result<Vec<Gf>> {
    cs.iter().map(|c| field.from_coeffs(c)).collect()
}
