//! Exact rationals, quadratic surds and Bernoulli machinery.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: Int) -> Rat {
    Rat::from_integer(n)
}

pub fn sign<T: Signed>(x: &T) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Parse "p", "-p", "+p/q" into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let err = || Error::Parse(format!("malformed rational `{s}`"));
    let body = s.strip_prefix('+').unwrap_or(s);
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (body, "1"),
    };
    if n.is_empty() || d.is_empty() || d.starts_with(['-', '+']) {
        return Err(err());
    }
    let n = Int::from_str(n).map_err(|_| err())?;
    let d = Int::from_str(d).map_err(|_| err())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rat::new(n, d))
}

/// `p/q` rendering, with integers printed bare.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rendering used in JSON reports: always `p/q`.
pub fn rat_json(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn lcm_denoms<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> Int {
    xs.into_iter().fold(Int::one(), |l, x| l.lcm(x.denom()))
}

fn bernoulli_table() -> &'static Mutex<Vec<Rat>> {
    static TABLE: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![Rat::one()]))
}

/// B_j with B_1 = -1/2.
pub fn bernoulli_number(j: usize) -> Rat {
    let mut t = bernoulli_table().lock().unwrap();
    while t.len() <= j {
        let n = t.len();
        let mut acc = Rat::zero();
        for (k, b) in t.iter().enumerate() {
            acc += b * rat_int(binomial(int(n as i64 + 1), int(k as i64)));
        }
        t.push(-acc / rat(n as i64 + 1, 1));
    }
    t[j].clone()
}

/// Integer coefficients N_i and common denominator L with B_j(x) = Σ N_i x^i / L.
struct BernPoly {
    num: Vec<Int>,
    den: Int,
}

fn bernoulli_poly_table(j: usize) -> Arc<BernPoly> {
    static TABLE: OnceLock<Mutex<Vec<Arc<BernPoly>>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(Vec::new()));
    if let Some(p) = table.lock().unwrap().get(j) {
        return p.clone();
    }
    let mut t = table.lock().unwrap();
    while t.len() <= j {
        let n = t.len();
        let coeffs: Vec<Rat> = (0..=n)
            .map(|i| {
                rat_int(binomial(int(n as i64), int(i as i64))) * bernoulli_number(n - i)
            })
            .collect();
        let den = lcm_denoms(&coeffs);
        let num = coeffs
            .iter()
            .map(|c| (c * rat_int(den.clone())).to_integer())
            .collect();
        t.push(Arc::new(BernPoly { num, den }));
    }
    t[j].clone()
}

/// Bernoulli polynomial B_j(x), generic over the scalar field.
pub fn bernoulli_poly<T: Scalar>(j: usize, x: &T) -> T {
    let p = bernoulli_poly_table(j);
    let den = T::from_rat(&rat_int(p.den.clone()));
    let mut acc = T::zero();
    for c in p.num.iter().rev() {
        acc = acc * x.clone() + T::from_rat(&rat_int(c.clone()));
    }
    acc / den
}

/// Exact B_j(u/v) evaluated over a common denominator.
pub fn bernoulli_rat(j: usize, x: &Rat) -> Rat {
    let p = bernoulli_poly_table(j);
    let (u, v) = (x.numer(), x.denom());
    let mut acc = Int::zero();
    let mut vpow = Int::one();
    for c in p.num.iter().rev() {
        acc = acc * u + c * &vpow;
        vpow *= v;
    }
    // vpow = v^(j+1); the sum is homogeneous of degree j in (u, v).
    Rat::new(acc, &p.den * vpow / v)
}

/// B_j(x - floor x). B_1 at integers is -1/2.
pub fn periodic_bernoulli<T: Scalar>(j: usize, x: &T) -> T {
    bernoulli_poly(j, &x.frac())
}

/// Odd-sawtooth variant: identical except B_1(integer) = 0.
pub fn periodic_bernoulli_sym<T: Scalar>(j: usize, x: &T) -> T {
    let f = x.frac();
    if j == 1 && f.is_zero() {
        return T::zero();
    }
    bernoulli_poly(j, &f)
}

pub(crate) fn pb_rat(j: usize, x: &Rat) -> Rat {
    bernoulli_rat(j, &x.frac())
}

pub(crate) fn pb_sym_rat(j: usize, x: &Rat) -> Rat {
    let f = x.frac();
    if j == 1 && f.is_zero() {
        return Rat::zero();
    }
    bernoulli_rat(j, &f)
}

/// Finite sum Σ c_r √r over squarefree radicands r.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "BTreeMap<u64, String>", try_from = "BTreeMap<u64, String>")]
pub struct SqrtSum {
    terms: BTreeMap<u64, Rat>,
}

fn squarefree_split(mut n: u64) -> (u64, u64) {
    // n = s * k^2 with s squarefree; returns (s, k)
    let (mut s, mut k) = (1u64, 1u64);
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (s * n, k)
}

impl SqrtSum {
    pub fn rational(r: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(1, r);
        }
        SqrtSum { terms }
    }

    /// c·√r for a positive integer radicand.
    pub fn term(c: Rat, r: u64) -> Self {
        assert!(r > 0, "radicand must be positive");
        let (s, k) = squarefree_split(r);
        let mut terms = BTreeMap::new();
        let c = c * rat(k as i64, 1);
        if !c.is_zero() {
            terms.insert(s, c);
        }
        SqrtSum { terms }
    }

    /// √r for a nonnegative rational r.
    pub fn sqrt(r: &Rat) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::Parse(format!("square root of negative {r}")));
        }
        if r.is_zero() {
            return Ok(SqrtSum::zero());
        }
        let pq = r.numer() * r.denom();
        let pq = pq
            .to_u64()
            .ok_or_else(|| Error::RadicandTooLarge(fmt_rat(r)))?;
        Ok(SqrtSum::term(Rat::new(Int::one(), r.denom().clone()), pq))
    }

    /// r^(e/2) for a positive rational r.
    pub fn pow_half(r: &Rat, e: i64) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::NonPositiveDet(fmt_rat(r)));
        }
        let whole = num_traits::pow::Pow::pow(r, Integer::div_floor(&e, &2) as i32);
        if e.rem_euclid(2) == 0 {
            Ok(SqrtSum::rational(whole))
        } else {
            Ok(SqrtSum::sqrt(r)? * SqrtSum::rational(whole))
        }
    }

    pub fn terms(&self) -> &BTreeMap<u64, Rat> {
        &self.terms
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&k| k == 1)
    }

    pub fn rational_part(&self) -> Rat {
        self.terms.get(&1).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(r, c)| c.to_f64().unwrap_or(f64::NAN) * (*r as f64).sqrt())
            .sum()
    }

    fn add_term(&mut self, r: u64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(r).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&r);
        }
    }
}

impl fmt::Debug for SqrtSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SqrtSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(r, c)| {
                if *r == 1 {
                    fmt_rat(c)
                } else {
                    format!("{}*sqrt({r})", fmt_rat(c))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl From<SqrtSum> for BTreeMap<u64, String> {
    fn from(s: SqrtSum) -> Self {
        s.terms.iter().map(|(r, c)| (*r, rat_json(c))).collect()
    }
}

impl TryFrom<BTreeMap<u64, String>> for SqrtSum {
    type Error = Error;
    fn try_from(m: BTreeMap<u64, String>) -> Result<Self> {
        let mut out = SqrtSum::zero();
        for (r, c) in m {
            out = out + SqrtSum::term(parse_rat(&c)?, r);
        }
        Ok(out)
    }
}

impl From<Rat> for SqrtSum {
    fn from(r: Rat) -> Self {
        SqrtSum::rational(r)
    }
}

impl Zero for SqrtSum {
    fn zero() -> Self {
        SqrtSum::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SqrtSum {
    fn one() -> Self {
        SqrtSum::rational(Rat::one())
    }
}

impl Add for SqrtSum {
    type Output = SqrtSum;
    fn add(mut self, rhs: SqrtSum) -> SqrtSum {
        for (r, c) in rhs.terms {
            self.add_term(r, c);
        }
        self
    }
}

impl Neg for SqrtSum {
    type Output = SqrtSum;
    fn neg(mut self) -> SqrtSum {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Sub for SqrtSum {
    type Output = SqrtSum;
    fn sub(self, rhs: SqrtSum) -> SqrtSum {
        self + (-rhs)
    }
}

impl Mul for SqrtSum {
    type Output = SqrtSum;
    fn mul(self, rhs: SqrtSum) -> SqrtSum {
        let mut out = SqrtSum::zero();
        for (r1, c1) in &self.terms {
            for (r2, c2) in &rhs.terms {
                let g = r1.gcd(r2);
                out.add_term((r1 / g) * (r2 / g), c1 * c2 * rat(g as i64, 1));
            }
        }
        out
    }
}

impl Ring for SqrtSum {
    fn from_rat(r: &Rat) -> Self {
        SqrtSum::rational(r.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli_number(0), rat(1, 1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(4), rat(-1, 30));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
        assert!(bernoulli_number(7).is_zero());
    }

    #[test]
    fn bernoulli_polynomials() {
        assert_eq!(bernoulli_poly(1, &rat(1, 2)), rat(0, 1));
        assert_eq!(bernoulli_poly(2, &rat(0, 1)), rat(1, 6));
        assert_eq!(bernoulli_poly(4, &rat(1, 2)), rat(7, 240));
        for j in 0..12 {
            for x in [rat(3, 7), rat(-5, 2), rat(11, 3), rat(0, 1)] {
                assert_eq!(bernoulli_rat(j, &x), bernoulli_poly(j, &x));
            }
        }
        let f: f64 = bernoulli_poly(4, &0.5);
        assert!((f - 7.0 / 240.0).abs() < 1e-15);
    }

    #[test]
    fn periodic() {
        assert_eq!(periodic_bernoulli(1, &rat(7, 3)), rat(-1, 6));
        assert_eq!(periodic_bernoulli(2, &rat(-1, 2)), rat(-1, 12));
        assert_eq!(periodic_bernoulli(1, &rat(5, 1)), rat(-1, 2));
        assert_eq!(periodic_bernoulli_sym(1, &rat(5, 1)), rat(0, 1));
        assert_eq!(pb_rat(3, &rat(-2, 3)), periodic_bernoulli(3, &rat(-2, 3)));
    }

    #[test]
    fn parse() {
        assert_eq!(parse_rat("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("+5").unwrap(), rat(5, 1));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1/-2").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn surds() {
        let s2 = SqrtSum::sqrt(&rat(2, 1)).unwrap();
        assert_eq!(s2.clone() * s2.clone(), SqrtSum::rational(rat(2, 1)));
        let s6 = SqrtSum::sqrt(&rat(3, 2)).unwrap();
        assert_eq!(s6.terms().get(&6), Some(&rat(1, 2)));
        assert_eq!(SqrtSum::term(rat(1, 1), 12), SqrtSum::term(rat(2, 1), 3));
        let h = SqrtSum::pow_half(&rat(8, 1), -3).unwrap();
        assert_eq!(h, SqrtSum::term(rat(1, 32), 2));
        assert_eq!(h.clone() * SqrtSum::pow_half(&rat(8, 1), 3).unwrap(), SqrtSum::one());
    }
}
