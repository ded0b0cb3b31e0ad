//! Table-driven arithmetic in GF(p^n).
//!
//! Elements are addressed by a canonical index in `[0, q)`. The base-p
//! digits of the index, least significant first, are the coordinates of
//! the element in the polynomial basis `1, t, t^2, ..., t^(n-1)` where `t`
//! is a root of the modulus. Index 0 is zero and index 1 is one.
//!
//! The modulus is the lexicographically smallest monic irreducible of
//! degree `n` over `F_p`, comparing coefficients from `x^(n-1)` down to the
//! constant term. For `n = 1` the modulus is `x` by convention and the
//! arithmetic is plain residues mod `p`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::set::ElementSet;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// Fields up to this size get a full addition table.
const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {p}^{n} exceeds the table cap of {MAX_FIELD_SIZE}")]
    SizeLimit { p: u64, n: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{d} does not divide q - 1 = {order}")]
    NonDivisor { d: u64, order: u64 },
    #[error("element index {index} out of range for q = {q}")]
    ElementOutOfRange { index: u64, q: u32 },
}

/// A field element, as its canonical index.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Wraps a raw index without range checking; see [`FieldContext::elem`].
    #[inline]
    pub const fn from_index(index: u32) -> Self {
        Elem(index)
    }

    #[inline]
    pub const fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for Elem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Serializable summary of a field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescription {
    pub p: u64,
    pub n: u32,
    pub q: u32,
    pub modulus: Vec<u32>,
    pub generator: u32,
}

/// A fully materialized GF(p^n).
///
/// Immutable after construction. Multiplication and inversion go through
/// the log/antilog tables of the canonical generator.
#[derive(Debug, Clone)]
pub struct FieldContext {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Elem,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    /// `antilog[i] = generator^i`, stored twice over so exponent sums need no reduction.
    antilog: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Splits `q` as `p^n` with `p` prime.
pub fn split_prime_power(q: u64) -> Result<(u64, u32), FieldError> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return Err(FieldError::NotPrimePower(q));
    }
    let p = factors[0];
    let mut n = 0;
    let mut rest = q;
    while rest > 1 {
        rest /= p;
        n += 1;
    }
    Ok((p, n))
}

/// Dense polynomials over `F_p`, coefficients constant term first.
mod fp_poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (i, &c) in m.iter().enumerate() {
                    let sub = (lead as u64 * c as u64 % p as u64) as u32;
                    r[shift + i] = (r[shift + i] + p - sub) % p;
                }
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem_monic(&mul(a, b, p), m, p)
    }

    pub fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut acc = rem_monic(&[1], m, p);
        let mut b = rem_monic(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        acc
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the base-p digits of `code`.
    pub fn monic_from_code(code: u64, deg: u32, p: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(deg as usize + 1);
        let mut c = code;
        for _ in 0..deg {
            out.push((c % p as u64) as u32);
            c /= p as u64;
        }
        out.push(1);
        out
    }

    /// Irreducibility by trial division with every monic polynomial of degree at most `deg / 2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = (f.len() - 1) as u32;
        if deg == 0 {
            return false;
        }
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d);
            for code in 0..count {
                let g = monic_from_code(code, d, p);
                if rem_monic(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Whether the monic polynomial `f` (constant term first) is irreducible over `F_p`.
pub fn is_irreducible_over_prime(f: &[u32], p: u32) -> bool {
    fp_poly::is_irreducible(f, p)
}

impl FieldContext {
    /// Builds GF(p^n) deterministically.
    pub fn new(p: u64, n: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::CompositeCharacteristic(p));
        }
        if n == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = p
            .checked_pow(n)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(FieldError::SizeLimit { p, n })?;
        let p32 = p as u32;
        let q32 = q as u32;

        let modulus = if n == 1 {
            vec![0, 1]
        } else {
            (0..p.pow(n))
                .map(|code| fp_poly::monic_from_code(code, n, p32))
                .find(|f| fp_poly::is_irreducible(f, p32))
                .expect("an irreducible polynomial of every degree exists")
        };

        let digits = |idx: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(n as usize);
            let mut x = idx;
            for _ in 0..n {
                v.push(x % p32);
                x /= p32;
            }
            fp_poly::trim(&mut v);
            v
        };
        let index_of = |poly: &[u32]| -> u32 { poly.iter().rev().fold(0, |acc, &c| acc * p32 + c) };

        let order = q - 1;
        let cofactors: Vec<u64> = prime_factors(order)
            .into_iter()
            .map(|r| order / r)
            .collect();
        let generator = (1..q32)
            .find(|&g| {
                let gp = digits(g);
                cofactors
                    .iter()
                    .all(|&e| fp_poly::powmod(&gp, e, &modulus, p32) != [1])
            })
            .expect("the multiplicative group of a finite field is cyclic");

        let gen_poly = digits(generator);
        let mut antilog = Vec::with_capacity(2 * order as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![1u32];
        for i in 0..order as u32 {
            let idx = index_of(&cur);
            antilog.push(idx);
            log[idx as usize] = i;
            cur = fp_poly::mulmod(&cur, &gen_poly, &modulus, p32);
        }
        antilog.extend_from_within(..);

        let neg = (0..q32)
            .map(|x| {
                let v: Vec<u32> = digits(x).iter().map(|&c| (p32 - c) % p32).collect();
                index_of(&v)
            })
            .collect();

        let mut ctx = FieldContext {
            p: p32,
            n,
            q: q32,
            modulus,
            generator: Elem(generator),
            log,
            antilog,
            neg,
            add_table: None,
        };
        if q32 <= ADD_TABLE_LIMIT {
            let mut table = Vec::with_capacity((q * q) as usize);
            for a in 0..q32 {
                for b in 0..q32 {
                    table.push(ctx.add_digits(a, b));
                }
            }
            ctx.add_table = Some(table);
        }
        Ok(ctx)
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<Self, FieldError> {
        if q > MAX_FIELD_SIZE {
            return Err(FieldError::SizeLimit {
                p: prime_factors(q).first().copied().unwrap_or(q),
                n: 0,
            });
        }
        let (p, n) = split_prime_power(q)?;
        Self::new(p, n)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first, leading 1 included.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn describe(&self) -> FieldDescription {
        FieldDescription {
            p: self.p as u64,
            n: self.n,
            q: self.q,
            modulus: self.modulus.clone(),
            generator: self.generator.0,
        }
    }

    /// Checked conversion from a canonical index.
    pub fn elem(&self, index: u64) -> Result<Elem, FieldError> {
        if index < self.q as u64 {
            Ok(Elem(index as u32))
        } else {
            Err(FieldError::ElementOutOfRange { index, q: self.q })
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q).map(Elem)
    }

    /// Polynomial-basis coordinates of `x`, constant term first.
    pub fn coordinates(&self, x: Elem) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.n as usize);
        let mut idx = x.0;
        for _ in 0..self.n {
            v.push(idx % self.p);
            idx /= self.p;
        }
        v
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.n == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.add_table {
            Some(t) => Elem(t[(a.0 * self.q + b.0) as usize]),
            None => Elem(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let e = self.log[a.0 as usize] + self.log[b.0 as usize];
        Elem(self.antilog[e as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.inv_nonzero(a))
    }

    /// Inverse of a value the caller knows to be nonzero.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: Elem) -> Elem {
        debug_assert!(a.0 != 0);
        let order = self.q - 1;
        let l = self.log[a.0 as usize];
        Elem(self.antilog[((order - l) % order) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        if b.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.div_nonzero(a, b))
    }

    #[inline]
    pub(crate) fn div_nonzero(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let order = self.q - 1;
        let e = self.log[a.0 as usize] + order - self.log[b.0 as usize];
        Elem(self.antilog[e as usize])
    }

    /// `a^e` with `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Elem(self.antilog[((l * (e % order)) % order) as usize])
    }

    /// Discrete log to the canonical generator.
    pub fn log(&self, a: Elem) -> Result<u32, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.log[a.0 as usize])
    }

    /// `generator^e`.
    pub fn antilog(&self, e: u64) -> Elem {
        Elem(self.antilog[(e % (self.q as u64 - 1)) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> Result<u64, FieldError> {
        let l = self.log(a)? as u64;
        let group = (self.q - 1) as u64;
        Ok(group / gcd(l, group))
    }

    /// The subgroup `M_d = {x^d : x != 0}` of index `d` in the multiplicative group.
    pub fn mult_subgroup(&self, d: u64) -> Result<ElementSet, FieldError> {
        let order = (self.q - 1) as u64;
        if d == 0 || !order.is_multiple_of(d) {
            return Err(FieldError::NonDivisor { d, order });
        }
        // x^d as x runs over F_q^* is generator^(d*i): the multiples of d in log space.
        Ok(ElementSet::from_iter(
            self.q,
            (0..order / d).map(|i| Elem(self.antilog[(i * d) as usize])),
        ))
    }

    /// Positive divisors of `q - 1`, increasing.
    pub fn group_divisors(&self) -> Vec<u64> {
        let order = (self.q - 1) as u64;
        (1..=order).filter(|d| order.is_multiple_of(*d)).collect()
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
