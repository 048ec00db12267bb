//! Finite fields GF(p^k) with a deterministic defining polynomial.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` where
//! `c_i` is the coefficient of `x^i` in the polynomial representation. Element
//! order everywhere in this crate (and therefore vertex order in every graph
//! built over a field) is the order of these integer codes.

use std::fmt;

use thiserror::Error;

/// Largest field order accepted by [`Field::new`].
pub const MAX_ORDER: u64 = 1 << 24;

/// Log/antilog tables are built when the order does not exceed this.
const TABLE_LIMIT: u32 = 1 << 16;

/// Dense addition tables are built when the order does not exceed this.
const ADD_TABLE_LIMIT: u32 = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field order {p}^{k} exceeds the cap 2^24")]
    TooLarge { p: u64, k: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element does not belong to GF({0})")]
    FieldMismatch(u32),
    #[error("{e} does not divide {order} - 1")]
    DoesNotDivide { e: u32, order: u32 },
    #[error("{d} does not divide the extension degree {k}")]
    NotDivisor { d: u32, k: u32 },
}

/// An element of a [`Field`], stored as its integer code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct LogTables {
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`, doubled to skip a modulo in `mul`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
}

/// The finite field GF(p^k).
pub struct Field {
    p: u32,
    k: u32,
    order: u32,
    /// Monic defining polynomial, low degree first, length `k + 1`.
    modulus: Vec<u32>,
    primitive: FieldElement,
    tables: Option<LogTables>,
    add_table: Option<Vec<u32>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `q = p^h` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut h = 0;
    let mut rest = q;
    while rest > 1 {
        rest /= p;
        h += 1;
    }
    Some((p, h))
}

// Polynomial helpers over GF(p); coefficient vectors are low degree first and
// kept trimmed (no trailing zeros).

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            let t = &mut r[shift + i];
            *t = (*t + p - c * mi % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = poly_rem(&[1], m, p);
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^i) mod m`.
fn frobenius_power_of_x(i: u32, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = poly_rem(&[0, 1], m, p);
    for _ in 0..i {
        acc = poly_powmod(&acc, p, m, p);
    }
    acc
}

/// Rabin's irreducibility test for a monic polynomial of degree `k >= 1`.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let k = (m.len() - 1) as u32;
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    let full = frobenius_power_of_x(k, m, p);
    if poly_sub(&full, &poly_rem(&x, m, p), p) != Vec::<u64>::new() {
        return false;
    }
    for r in prime_factors(k as u64) {
        let h = frobenius_power_of_x(k / r as u32, m, p);
        let diff = poly_sub(&h, &x, p);
        if poly_gcd(m, &diff, p).len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `k`,
/// comparing coefficient vectors from the constant term upward.
fn smallest_irreducible(p: u64, k: u32) -> Vec<u32> {
    let count = p.pow(k);
    for idx in 0..count {
        // c_0 is the most significant digit of idx.
        let mut coeffs = vec![0u64; k as usize + 1];
        let mut rest = idx;
        for i in (0..k as usize).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        coeffs[k as usize] = 1;
        if k > 1 && coeffs[0] == 0 {
            continue;
        }
        if is_irreducible(&coeffs, p) {
            return coeffs.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// Builds GF(p^k).
    pub fn new(p: u64, k: u32) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if k == 0 {
            return Err(GfError::DegreeZero);
        }
        let order = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(GfError::TooLarge { p, k })?;
        let modulus = smallest_irreducible(p, k);
        let mut field = Field {
            p: p as u32,
            k,
            order: order as u32,
            modulus,
            primitive: FieldElement::ONE,
            tables: None,
            add_table: None,
        };
        field.primitive = field.find_primitive();
        if field.order <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        if field.order <= ADD_TABLE_LIMIT && field.p != 2 {
            let q = field.order;
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add_table = Some(table);
        }
        Ok(field)
    }

    /// Prime field GF(p).
    pub fn prime(p: u64) -> Result<Field, GfError> {
        Field::new(p, 1)
    }

    /// GF(q) for a prime power `q`.
    pub fn with_order(q: u64) -> Result<Field, GfError> {
        let (p, k) = prime_power(q).ok_or(GfError::NotPrime(q))?;
        Field::new(p, k)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    pub fn element(&self, index: u32) -> Result<FieldElement, GfError> {
        if index < self.order {
            Ok(FieldElement(index))
        } else {
            Err(GfError::FieldMismatch(self.order))
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, GfError> {
        if coeffs.len() != self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(GfError::FieldMismatch(self.order));
        }
        let idx = coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c);
        Ok(FieldElement(idx))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        let mut rest = x.0;
        (0..self.k)
            .map(|_| {
                let c = rest % self.p;
                rest /= self.p;
                c
            })
            .collect()
    }

    /// Embeds an integer via the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.k {
            let d = (a % p + b % p) % p;
            out += d * place;
            place = place.wrapping_mul(p);
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.order && b.0 < self.order);
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if let Some(t) = &self.add_table {
            return FieldElement(t[(a.0 * self.order + b.0) as usize]);
        }
        FieldElement(self.add_digits(a.0, b.0))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let (mut rest, mut out, mut place) = (a.0, 0u32, 1u32);
        for _ in 0..self.k {
            let d = rest % p;
            out += ((p - d) % p) * place;
            place = place.wrapping_mul(p);
            rest /= p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    fn poly_of(&self, x: u32) -> Vec<u64> {
        let mut rest = x;
        let v = (0..self.k)
            .map(|_| {
                let c = rest % self.p;
                rest /= self.p;
                c as u64
            })
            .collect();
        trim(v)
    }

    fn index_of_poly(&self, poly: &[u64]) -> u32 {
        poly.iter()
            .rev()
            .fold(0u32, |acc, &c| acc * self.p + c as u32)
    }

    fn modulus_u64(&self) -> Vec<u64> {
        self.modulus.iter().map(|&c| c as u64).collect()
    }

    fn mul_poly(&self, a: u32, b: u32) -> u32 {
        let m = self.modulus_u64();
        let prod = poly_mulmod(&self.poly_of(a), &self.poly_of(b), &m, self.p as u64);
        self.index_of_poly(&prod)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => {
                FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
            }
            None => FieldElement(self.mul_poly(a.0, b.0)),
        }
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u64 * (e % (self.order as u64 - 1));
            return FieldElement(t.exp[(l % (self.order as u64 - 1)) as usize]);
        }
        let mut result = FieldElement::ONE;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        if a.0 == 0 {
            return Err(GfError::ZeroInverse);
        }
        if a.0 >= self.order {
            return Err(GfError::FieldMismatch(self.order));
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize];
            let n = self.order - 1;
            return Ok(FieldElement(t.exp[((n - l) % n) as usize]));
        }
        Ok(self.pow(a, self.order as u64 - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `x^(p^i)`; `i` is taken modulo the extension degree.
    pub fn frobenius(&self, x: FieldElement, i: u32) -> FieldElement {
        let i = i % self.k;
        self.pow(x, (self.p as u64).pow(i))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: FieldElement) -> Result<u64, GfError> {
        if x.0 == 0 {
            return Err(GfError::ZeroInverse);
        }
        let mut n = self.order as u64 - 1;
        for r in prime_factors(n) {
            while n % r == 0 && self.pow(x, n / r) == FieldElement::ONE {
                n /= r;
            }
        }
        Ok(n)
    }

    fn find_primitive(&self) -> FieldElement {
        let n = self.order as u64 - 1;
        let factors = prime_factors(n);
        for idx in 1..self.order {
            let x = FieldElement(idx);
            if factors
                .iter()
                .all(|&r| self.pow_slow(x, n / r) != FieldElement::ONE)
            {
                return x;
            }
        }
        // Only GF(2) reaches here: 1 generates the trivial group.
        FieldElement::ONE
    }

    fn pow_slow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut result = FieldElement::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = FieldElement(self.mul_poly(result.0, base.0));
            }
            base = FieldElement(self.mul_poly(base.0, base.0));
            e >>= 1;
        }
        result
    }

    fn build_tables(&self) -> LogTables {
        let n = (self.order - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; self.order as usize];
        let mut x = 1u32;
        for i in 0..n.max(1) {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = self.mul_poly(x, self.primitive.0);
        }
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }
        LogTables { exp, log }
    }

    /// The smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    /// Discrete log to the base [`Field::primitive_element`].
    pub fn log(&self, x: FieldElement) -> Result<u64, GfError> {
        if x.0 == 0 {
            return Err(GfError::ZeroInverse);
        }
        if let Some(t) = &self.tables {
            return Ok(t.log[x.0 as usize] as u64);
        }
        let mut acc = FieldElement::ONE;
        for i in 0..self.order as u64 - 1 {
            if acc == x {
                return Ok(i);
            }
            acc = self.mul(acc, self.primitive);
        }
        Err(GfError::FieldMismatch(self.order))
    }

    /// Partition of the nonzero elements into the `e` cosets `g^i S` of the
    /// subgroup `S` of `e`-th powers. Each class is sorted by element code.
    pub fn power_classes(&self, e: u32) -> Result<Vec<Vec<FieldElement>>, GfError> {
        let n = self.order - 1;
        if e == 0 || n % e != 0 {
            return Err(GfError::DoesNotDivide { e, order: self.order });
        }
        let g = self.primitive;
        let mut classes = vec![Vec::with_capacity((n / e) as usize); e as usize];
        let mut x = FieldElement::ONE;
        for i in 0..n {
            classes[(i % e) as usize].push(x);
            x = self.mul(x, g);
        }
        for c in &mut classes {
            c.sort_unstable();
        }
        Ok(classes)
    }

    /// Nonzero `e`-th powers.
    pub fn is_eth_power(&self, x: FieldElement, e: u32) -> bool {
        match self.log(x) {
            Ok(l) => l % e as u64 == 0,
            Err(_) => false,
        }
    }

    pub fn is_square(&self, x: FieldElement) -> bool {
        if self.p == 2 {
            return true;
        }
        x.0 == 0 || self.is_eth_power(x, 2)
    }

    /// The subfield of order `p^d`, sorted by element code.
    pub fn subfield_elements(&self, d: u32) -> Result<Vec<FieldElement>, GfError> {
        if d == 0 || self.k % d != 0 {
            return Err(GfError::NotDivisor { d, k: self.k });
        }
        let sub_order = (self.p as u64).pow(d);
        let step = (self.order as u64 - 1) / (sub_order - 1);
        let gen = self.pow(self.primitive, step);
        let mut out = Vec::with_capacity(sub_order as usize);
        out.push(FieldElement::ZERO);
        let mut x = FieldElement::ONE;
        for _ in 0..sub_order - 1 {
            out.push(x);
            x = self.mul(x, gen);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// The trace map down to the prime field.
    pub fn absolute_trace(&self, x: FieldElement) -> u32 {
        let mut acc = FieldElement::ZERO;
        for i in 0..self.k {
            acc = self.add(acc, self.frobenius(x, i));
        }
        acc.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Exhaustive factor check: no monic polynomial of degree 1..=k/2 divides `m`.
    fn irreducible_by_trial_division(m: &[u32], p: u64) -> bool {
        let m: Vec<u64> = m.iter().map(|&c| c as u64).collect();
        let k = m.len() - 1;
        for d in 1..=k / 2 {
            for idx in 0..p.pow(d as u32) {
                let mut f = vec![0u64; d + 1];
                let mut rest = idx;
                for c in f.iter_mut().take(d) {
                    *c = rest % p;
                    rest /= p;
                }
                f[d] = 1;
                if poly_rem(&m, &f, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn prime_field_has_modulus_x() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.order(), 3);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn gf4_modulus_and_x_squared() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let x = f.from_coeffs(&[0, 1]).unwrap();
        let x_plus_1 = f.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f.mul(x, x), x_plus_1);
    }

    #[test]
    fn gf243_modulus_is_irreducible() {
        let f = Field::new(3, 5).unwrap();
        assert_eq!(f.order(), 243);
        assert!(irreducible_by_trial_division(f.modulus(), 3));
    }

    #[test]
    fn moduli_are_smallest_irreducible() {
        for (p, k) in [(2u64, 3u32), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2), (2, 6)] {
            let f = Field::new(p, k).unwrap();
            assert!(irreducible_by_trial_division(f.modulus(), p));
            // Every candidate before it (constant term most significant) is reducible.
            let target: Vec<u64> = f.modulus().iter().map(|&c| c as u64).collect();
            for idx in 0..p.pow(k) {
                let mut cand = vec![0u32; k as usize + 1];
                let mut rest = idx;
                for i in (0..k as usize).rev() {
                    cand[i] = (rest % p) as u32;
                    rest /= p;
                }
                cand[k as usize] = 1;
                let cand64: Vec<u64> = cand.iter().map(|&c| c as u64).collect();
                if cand64 == target {
                    break;
                }
                assert!(!irreducible_by_trial_division(&cand, p), "{cand:?}");
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1).unwrap_err(), GfError::NotPrime(4));
        assert_eq!(Field::new(3, 0).unwrap_err(), GfError::DegreeZero);
        assert!(matches!(Field::new(2, 25), Err(GfError::TooLarge { .. })));
        assert!(Field::new(2, 24).is_ok());
    }

    #[test]
    fn determinism() {
        let a = Field::new(3, 4).unwrap();
        let b = Field::new(3, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.primitive_element(), b.primitive_element());
        let pa: Vec<_> = a.elements().map(|x| a.pow(x, 5)).collect();
        let pb: Vec<_> = b.elements().map(|x| b.pow(x, 5)).collect();
        assert_eq!(pa, pb);
    }

    #[test]
    fn gf9_nonzero_elements_have_order_dividing_8() {
        let f = Field::new(3, 2).unwrap();
        for x in f.elements().skip(1) {
            assert_eq!(f.pow(x, 8), FieldElement::ONE);
        }
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(Field::new(3, 1).unwrap().primitive_element().index(), 2);
        assert_eq!(Field::new(5, 1).unwrap().primitive_element().index(), 2);
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.coeffs(f4.primitive_element()), vec![0, 1]);
        for (p, k) in [(2u64, 5u32), (3, 3), (7, 2), (2, 8), (2, 17)] {
            let f = Field::new(p, k).unwrap();
            let g = f.primitive_element();
            assert_eq!(f.multiplicative_order(g).unwrap(), f.order() as u64 - 1);
        }
    }

    #[test]
    fn power_classes_partition() {
        let f9 = Field::new(3, 2).unwrap();
        let c = f9.power_classes(2).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|cls| cls.len() == 4));
        let g = f9.primitive_element();
        let mut squares: Vec<_> = (0..4).map(|j| f9.pow(g, 2 * j)).collect();
        squares.sort();
        assert_eq!(c[0], squares);

        let f16 = Field::new(2, 4).unwrap();
        let c = f16.power_classes(3).unwrap();
        assert!(c.iter().all(|cls| cls.len() == 5));
        let mut all: Vec<_> = c.concat();
        all.sort();
        assert_eq!(all, f16.elements().skip(1).collect::<Vec<_>>());

        let f13 = Field::new(13, 1).unwrap();
        let c = f13.power_classes(4).unwrap();
        let mut fourth: Vec<u32> = (1..13u32).map(|x| x.pow(4) % 13).collect();
        fourth.sort();
        fourth.dedup();
        assert_eq!(c[0].iter().map(|x| x.index()).collect::<Vec<_>>(), fourth);
        assert!(c.iter().all(|cls| cls.len() == 3));

        assert_eq!(
            f13.power_classes(5).unwrap_err(),
            GfError::DoesNotDivide { e: 5, order: 13 }
        );
    }

    #[test]
    fn subfields_are_frobenius_fixed_points() {
        for (p, k, d) in [(3u64, 2u32, 1u32), (2, 6, 3), (3, 4, 2), (2, 6, 2), (5, 2, 1)] {
            let f = Field::new(p, k).unwrap();
            let sub = f.subfield_elements(d).unwrap();
            let fixed: Vec<_> = f
                .elements()
                .filter(|&x| f.frobenius(x, d) == x)
                .collect();
            assert_eq!(sub, fixed);
            assert_eq!(sub.len() as u64, p.pow(d));
            for &a in &sub {
                for &b in &sub {
                    assert!(sub.binary_search(&f.sub(a, b)).is_ok());
                    assert!(sub.binary_search(&f.mul(a, b)).is_ok());
                }
            }
        }
        let f9 = Field::new(3, 2).unwrap();
        let idx: Vec<u32> = f9.subfield_elements(1).unwrap().iter().map(|x| x.index()).collect();
        assert_eq!(idx, vec![0, 1, 2]);
        assert_eq!(
            f9.subfield_elements(3).unwrap_err(),
            GfError::NotDivisor { d: 3, k: 2 }
        );
    }

    #[test]
    fn frobenius_maps() {
        let f8 = Field::new(2, 3).unwrap();
        for a in f8.elements() {
            assert_eq!(f8.frobenius(a, 3), a);
            for b in f8.elements() {
                assert_eq!(
                    f8.frobenius(f8.add(a, b), 1),
                    f8.add(f8.frobenius(a, 1), f8.frobenius(b, 1))
                );
            }
        }
        // GF(32): sigma = x^8 satisfies sigma(sigma(x)) = x^64 = x^2.
        let f32 = Field::new(2, 5).unwrap();
        for x in f32.elements() {
            let s = f32.frobenius(x, 3);
            assert_eq!(f32.frobenius(s, 3), f32.mul(x, x));
        }
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = Field::new(7, 1).unwrap();
        assert_eq!(f.inv(FieldElement::ZERO).unwrap_err(), GfError::ZeroInverse);
        assert_eq!(f.element(7).unwrap_err(), GfError::FieldMismatch(7));
    }

    #[test]
    fn large_field_without_tables() {
        let f = Field::new(2, 20).unwrap();
        let a = f.element(123_457).unwrap();
        let b = f.inv(a).unwrap();
        assert_eq!(f.mul(a, b), FieldElement::ONE);
    }

    proptest! {
        #[test]
        fn gf243_inverse(a in 1u32..243) {
            let f = Field::new(3, 5).unwrap();
            let x = f.element(a).unwrap();
            prop_assert_eq!(f.mul(f.inv(x).unwrap(), x), FieldElement::ONE);
        }

        #[test]
        fn gf125_distributive(a in 0u32..125, b in 0u32..125, c in 0u32..125) {
            let f = Field::new(5, 3).unwrap();
            let (a, b, c) = (f.element(a).unwrap(), f.element(b).unwrap(), f.element(c).unwrap());
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.sub(f.add(a, b), b), a);
        }
    }
}
