//! Exact spectral quantities of strongly regular graphs.
//!
//! All arithmetic happens in `Q[sqrt(D)]` via [`ExactScalar`]; nothing here
//! touches floating point except [`ExactScalar::to_f64`] for display.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::SrgParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("omega * alpha = {product} exceeds nu = {nu}; a witness is broken")]
    BoundViolated { product: u64, nu: u64 },
    #[error("omega and alpha must be positive")]
    NonPositive,
    #[error("cannot parse exact scalar {0:?}")]
    Parse(String),
}

/// A number `a + b sqrt(D)` with rational `a`, `b` and squarefree `D`.
///
/// `D = 0` exactly when `b = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    a: BigRational,
    b: BigRational,
    d: u64,
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Splits `n = f^2 * m` with `m` squarefree, by trial division.
fn square_part(n: u64) -> (u64, u64) {
    let mut f = 1;
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        while m % (d * d) == 0 {
            m /= d * d;
            f *= d;
        }
        d += 1;
    }
    (f, m)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ExactScalar {
    pub fn from_int(n: i64) -> Self {
        ExactScalar {
            a: rat(n),
            b: BigRational::zero(),
            d: 0,
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        ExactScalar {
            a: BigRational::new(BigInt::from(num), BigInt::from(den)),
            b: BigRational::zero(),
            d: 0,
        }
    }

    pub fn rational(a: BigRational) -> Self {
        ExactScalar {
            a,
            b: BigRational::zero(),
            d: 0,
        }
    }

    /// `a + b sqrt(radicand)`, normalising the radicand to its squarefree part.
    pub fn new(a: BigRational, b: BigRational, radicand: u64) -> Self {
        let (f, m) = square_part(radicand);
        let b = b * rat(f as i64);
        if m == 1 {
            return ExactScalar::rational(a + b);
        }
        if m == 0 || b.is_zero() {
            return ExactScalar::rational(a);
        }
        ExactScalar { a, b, d: m }
    }

    /// `sqrt(n)`.
    pub fn sqrt(n: u64) -> Self {
        ExactScalar::new(BigRational::zero(), BigRational::one(), n)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    pub fn to_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.a.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn conjugate(&self) -> Self {
        ExactScalar {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    fn common_radicand(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("mixed radicands sqrt({x}) and sqrt({y}) are not supported"),
        }
    }

    /// `a + b sqrt(D)` squared-norm `a^2 - b^2 D`.
    fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * rat(self.d as i64)
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: the larger magnitude wins. Equality is impossible
        // because D is not a perfect square.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * rat(self.d as i64);
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.a.floor().to_integer();
        }
        let approx = BigInt::from(self.to_f64().floor() as i64);
        let mut n = approx;
        while ExactScalar::rational(BigRational::from_integer(n.clone())) > *self {
            n -= 1;
        }
        while ExactScalar::rational(BigRational::from_integer(&n + 1)) <= *self {
            n += 1;
        }
        n
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum()
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: Self) -> Self {
        let d = self.common_radicand(&rhs);
        ExactScalar::new(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> Self {
        ExactScalar {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: Self) -> Self {
        let d = self.common_radicand(&rhs);
        let a = &self.a * &rhs.a + &self.b * &rhs.b * rat(d as i64);
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        ExactScalar::new(a, b, d)
    }
}

impl Div for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        let norm = rhs.norm();
        let num = self * rhs.conjugate();
        ExactScalar::new(num.a / norm.clone(), num.b / norm, num.d)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactScalar {
    /// `n/d` for rationals, `(a + b√D)` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({} {} {}√{})",
            fmt_rational(&self.a),
            sign,
            fmt_rational(&self.b.abs()),
            self.d
        )
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl FromStr for ExactScalar {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || BoundsError::Parse(s.to_string());
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
            let (a_str, sign, rest) = if let Some((a, r)) = inner.split_once(" + ") {
                (a, 1, r)
            } else if let Some((a, r)) = inner.split_once(" - ") {
                (a, -1, r)
            } else {
                return Err(err());
            };
            let (b_str, d_str) = rest.split_once('√').ok_or_else(err)?;
            let a = parse_rational(a_str).ok_or_else(err)?;
            let b = parse_rational(b_str).ok_or_else(err)? * rat(sign);
            let d: u64 = d_str.trim().parse().map_err(|_| err())?;
            let x = ExactScalar::new(a, b, d);
            if x.to_string() != t {
                return Err(err());
            }
            return Ok(x);
        }
        parse_rational(t).map(ExactScalar::rational).ok_or_else(err)
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The two restricted eigenvalues `r > s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigenvalues {
    pub r: ExactScalar,
    pub s: ExactScalar,
}

pub fn eigenvalues(p: &SrgParams) -> Eigenvalues {
    let diff = p.lambda as i64 - p.mu as i64;
    let disc = (diff * diff + 4 * (p.k as i64 - p.mu as i64)) as u64;
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let centre = rat(diff) * half.clone();
    let root = ExactScalar::new(BigRational::zero(), half, disc);
    Eigenvalues {
        r: ExactScalar::rational(centre.clone()) + root.clone(),
        s: ExactScalar::rational(centre) - root,
    }
}

/// `1 - k/s`.
pub fn delsarte_bound(p: &SrgParams) -> ExactScalar {
    let s = eigenvalues(p).s;
    ExactScalar::from_int(1) - ExactScalar::from_int(p.k as i64) / s
}

/// `nu s / (s - k)`.
pub fn hoffman_bound(p: &SrgParams) -> ExactScalar {
    let s = eigenvalues(p).s;
    let k = ExactScalar::from_int(p.k as i64);
    ExactScalar::from_int(p.nu as i64) * s.clone() / (s - k)
}

/// Spectrum and both bounds in one place.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub params: SrgParams,
    pub k: u64,
    pub r: ExactScalar,
    pub s: ExactScalar,
    pub delsarte: ExactScalar,
    pub hoffman: ExactScalar,
    pub delsarte_integral: bool,
    pub hoffman_integral: bool,
}

impl BoundReport {
    pub fn new(p: &SrgParams) -> Self {
        let Eigenvalues { r, s } = eigenvalues(p);
        let delsarte = delsarte_bound(p);
        let hoffman = hoffman_bound(p);
        BoundReport {
            params: *p,
            k: p.k,
            r,
            s,
            delsarte_integral: delsarte.is_integer(),
            hoffman_integral: hoffman.is_integer(),
            delsarte,
            hoffman,
        }
    }

    /// Largest clique size the Delsarte bound allows.
    pub fn clique_cap(&self) -> u64 {
        self.delsarte.floor().to_u64().unwrap_or(u64::MAX)
    }

    /// Largest coclique size the Hoffman bound allows.
    pub fn coclique_cap(&self) -> u64 {
        self.hoffman.floor().to_u64().unwrap_or(u64::MAX)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CliqueCoclique {
    Strict,
    Equal,
}

/// Compares `omega * alpha` against `nu`.
pub fn clique_coclique_check(omega: u64, alpha: u64, nu: u64) -> Result<CliqueCoclique, BoundsError> {
    if omega == 0 || alpha == 0 {
        return Err(BoundsError::NonPositive);
    }
    let product = omega * alpha;
    match product.cmp(&nu) {
        Ordering::Less => Ok(CliqueCoclique::Strict),
        Ordering::Equal => Ok(CliqueCoclique::Equal),
        Ordering::Greater => Err(BoundsError::BoundViolated { product, nu }),
    }
}

/// Which bound settled a fractional verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FractionalBound {
    Delsarte,
    Hoffman,
    /// Both bounds are irrational (conference graphs).
    Irrational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuickVerdict {
    SeparatingByFractionalBound(FractionalBound),
    NeedsSearch { clique_target: u64, coclique_target: u64 },
}

/// Separation decided from the parameters alone when a bound is not an integer.
pub fn quick_verdict(p: &SrgParams) -> QuickVerdict {
    let report = BoundReport::new(p);
    if !report.delsarte.is_rational() || !report.hoffman.is_rational() {
        QuickVerdict::SeparatingByFractionalBound(FractionalBound::Irrational)
    } else if !report.delsarte_integral {
        QuickVerdict::SeparatingByFractionalBound(FractionalBound::Delsarte)
    } else if !report.hoffman_integral {
        QuickVerdict::SeparatingByFractionalBound(FractionalBound::Hoffman)
    } else {
        QuickVerdict::NeedsSearch {
            clique_target: report.clique_cap(),
            coclique_target: report.coclique_cap(),
        }
    }
}

/// Multiplicities `(f, g)` of `r` and `s`, when they are nonnegative integers.
pub fn multiplicities(nu: u64, k: u64, lambda: u64, mu: u64) -> Option<(u64, u64)> {
    let diff = lambda as i64 - mu as i64;
    let disc = diff * diff + 4 * (k as i64 - mu as i64);
    if disc <= 0 {
        return None;
    }
    let n1 = nu as i64 - 1;
    let numer = 2 * k as i64 + n1 * diff;
    let root = isqrt(disc as u64) as i64;
    if root * root != disc {
        // Irrational eigenvalues force the conference case.
        return (numer == 0 && n1 % 2 == 0).then(|| ((n1 / 2) as u64, (n1 / 2) as u64));
    }
    if numer % root != 0 {
        return None;
    }
    let t = numer / root;
    let (twice_f, twice_g) = (n1 - t, n1 + t);
    if twice_f < 0 || twice_g < 0 || twice_f % 2 != 0 {
        return None;
    }
    Some(((twice_f / 2) as u64, (twice_g / 2) as u64))
}

/// Counting identity plus integral, nonnegative eigenvalue multiplicities.
pub fn feasibility(nu: u64, k: u64, lambda: u64, mu: u64) -> bool {
    SrgParams::new(nu, k, lambda, mu).is_ok() && multiplicities(nu, k, lambda, mu).is_some()
}

/// Recovers `(lambda, mu)` from `(nu, k, s)` and the eigenvalue relations
/// `lambda - mu = r + s`, `mu - k = rs`, solving the counting identity for `r`.
pub fn params_from_spectrum(nu: u64, k: u64, s: i64) -> Option<SrgParams> {
    let (nu_i, k_i) = (nu as i128, k as i128);
    let s = s as i128;
    let num = k_i * (nu_i - k_i + s);
    let den = -k_i * (s + 1) - (nu_i - k_i - 1) * s;
    if den == 0 || num % den != 0 {
        return None;
    }
    let r = num / den;
    params_from_eigenvalues(nu, k, r as i64, s as i64)
}

/// `(nu, k, r, s)` to `(nu, k, lambda, mu)`.
pub fn params_from_eigenvalues(nu: u64, k: u64, r: i64, s: i64) -> Option<SrgParams> {
    let mu = k as i64 + r * s;
    let lambda = mu + r + s;
    if mu < 0 || lambda < 0 {
        return None;
    }
    SrgParams::new(nu, k, lambda as u64, mu as u64).ok()
}

/// Integer ceiling helper for callers that compare against `floor` caps.
pub fn as_rational(n: i64, d: i64) -> BigRational {
    let g = n.gcd(&d);
    BigRational::new(BigInt::from(n / g), BigInt::from(d / g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(nu: u64, k: u64, l: u64, m: u64) -> SrgParams {
        SrgParams::new(nu, k, l, m).unwrap()
    }

    #[test]
    fn eigenvalues_from_table_rows() {
        let e = eigenvalues(&params(36, 14, 4, 6));
        assert_eq!((e.s.to_integer(), e.r.to_integer()), (Some(-4), Some(2)));
        let e = eigenvalues(&params(50, 7, 0, 1));
        assert_eq!((e.s.to_integer(), e.r.to_integer()), (Some(-3), Some(2)));
    }

    #[test]
    fn pentagon_eigenvalues_match_numeric_spectrum() {
        let e = eigenvalues(&params(5, 2, 0, 1));
        assert_eq!(e.s.to_string(), "(-1/2 - 1/2√5)");
        assert_eq!(e.r.to_string(), "(-1/2 + 1/2√5)");
        // Adjacency spectrum of C5 is 2cos(2 pi j / 5).
        let numeric: Vec<f64> = (0..5)
            .map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / 5.0).cos())
            .collect();
        for target in [e.r.to_f64(), e.s.to_f64()] {
            assert!(numeric.iter().any(|x| (x - target).abs() < 1e-12));
        }
    }

    #[test]
    fn delsarte_and_hoffman_values() {
        assert_eq!(delsarte_bound(&params(36, 14, 4, 6)), ExactScalar::from_ratio(9, 2));
        assert_eq!(hoffman_bound(&params(36, 14, 4, 6)), ExactScalar::from_int(8));
        assert_eq!(delsarte_bound(&params(100, 22, 0, 6)), ExactScalar::from_ratio(15, 4));
        assert_eq!(hoffman_bound(&params(100, 22, 0, 6)), ExactScalar::from_ratio(80, 3));
        assert_eq!(hoffman_bound(&params(243, 22, 1, 2)), ExactScalar::from_int(45));
        // 1 + 2 / ((1 + sqrt5)/2) = 1 + (sqrt5 - 1) = sqrt5.
        let c5 = delsarte_bound(&params(5, 2, 0, 1));
        assert_eq!(c5, ExactScalar::sqrt(5));
        assert!(ExactScalar::from_int(2) <= c5);
        assert_eq!(c5.floor(), BigInt::from(2));
    }

    #[test]
    fn clique_coclique_statuses() {
        assert_eq!(clique_coclique_check(5, 3, 15), Ok(CliqueCoclique::Equal));
        assert_eq!(clique_coclique_check(2, 5, 16), Ok(CliqueCoclique::Strict));
        assert_eq!(clique_coclique_check(3, 3, 9), Ok(CliqueCoclique::Equal));
        assert_eq!(
            clique_coclique_check(4, 5, 16),
            Err(BoundsError::BoundViolated { product: 20, nu: 16 })
        );
    }

    #[test]
    fn quick_verdicts() {
        assert_eq!(
            quick_verdict(&params(50, 7, 0, 1)),
            QuickVerdict::SeparatingByFractionalBound(FractionalBound::Delsarte)
        );
        assert_eq!(
            quick_verdict(&params(100, 36, 14, 12)),
            QuickVerdict::NeedsSearch { clique_target: 10, coclique_target: 10 }
        );
        assert_eq!(
            quick_verdict(&params(13, 6, 2, 3)),
            QuickVerdict::SeparatingByFractionalBound(FractionalBound::Irrational)
        );
    }

    #[test]
    fn feasibility_examples() {
        assert!(feasibility(36, 14, 4, 6));
        assert!(feasibility(50, 7, 0, 1));
        assert!(!feasibility(10, 4, 1, 1));
        assert!(feasibility(13, 6, 2, 3));
        assert_eq!(multiplicities(50, 7, 0, 1), Some((28, 21)));
        // Passes the counting identity, fails integrality of multiplicities.
        assert!(SrgParams::new(40, 9, 2, 2).is_err() || !feasibility(40, 9, 2, 2));
    }

    #[test]
    fn spectrum_inversion() {
        assert_eq!(params_from_spectrum(126, 45, -9), Some(params(126, 45, 12, 18)));
        assert_eq!(params_from_spectrum(36, 15, -3), Some(params(36, 15, 6, 6)));
        assert_eq!(params_from_eigenvalues(16, 5, 1, -3), Some(params(16, 5, 0, 2)));
    }

    #[test]
    fn display_and_parse() {
        for s in ["9/2", "-4", "(-1/2 - 1/2√5)", "(3 + 2√13)"] {
            let x: ExactScalar = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert!("(1 + 2√4)".parse::<ExactScalar>().is_err());
        assert!("1/0".parse::<ExactScalar>().is_err());
        let json = serde_json::to_string(&ExactScalar::from_ratio(80, 3)).unwrap();
        assert_eq!(json, "\"80/3\"");
    }

    fn srg_params_strategy() -> impl Strategy<Value = SrgParams> {
        // Every connected, non-complete parameter set with nu < 120 that
        // satisfies the counting identity.
        let mut all = Vec::new();
        for nu in 5..120u64 {
            for k in 2..nu - 1 {
                for mu in 1..=k {
                    for lambda in 0..k {
                        if let Ok(p) = SrgParams::new(nu, k, lambda, mu) {
                            all.push(p);
                        }
                    }
                }
            }
        }
        prop::sample::select(all)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bound_product_is_order(p in srg_params_strategy()) {
            let d = delsarte_bound(&p);
            let h = hoffman_bound(&p);
            prop_assert_eq!(d * h, ExactScalar::from_int(p.nu as i64));
        }

        #[test]
        fn eigenvalue_relations(p in srg_params_strategy()) {
            let Eigenvalues { r, s } = eigenvalues(&p);
            prop_assert_eq!(r.clone() * s.clone(), ExactScalar::from_int(p.mu as i64 - p.k as i64));
            prop_assert_eq!(r + s, ExactScalar::from_int(p.lambda as i64 - p.mu as i64));
        }

        #[test]
        fn irrational_bounds_never_need_search(p in srg_params_strategy()) {
            let report = BoundReport::new(&p);
            if !report.delsarte.is_rational() || !report.hoffman.is_rational() {
                let is_search = matches!(quick_verdict(&p), QuickVerdict::NeedsSearch { .. });
                prop_assert!(!is_search);
            }
        }
    }
}
