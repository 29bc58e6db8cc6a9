//! Exact reals of the form Σ c·√rad·π^(pihalf/2) with rational c and squarefree rad.
//!
//! Distinct (rad, pihalf) keys are linearly independent over ℚ, so equality is
//! key-wise equality of the sorted term list.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Trial-division bound for squarefree certification.
const TRIAL_BOUND: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub rad: u64,
    pub pihalf: i32,
}

impl TermKey {
    pub const UNIT: TermKey = TermKey { rad: 1, pihalf: 0 };
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    terms: Vec<(TermKey, BigRational)>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(c: BigRational) -> Self {
        Self::from_parts(c, TermKey::UNIT)
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn bigint(n: BigInt) -> Self {
        Self::rational(BigRational::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn from_parts(c: BigRational, key: TermKey) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            ExactScalar {
                terms: vec![(key, c)],
            }
        }
    }

    /// c·√rad·π^(pihalf/2); rad must be squarefree and positive.
    pub fn term(c: BigRational, rad: u64, pihalf: i32) -> Result<Self> {
        if rad == 0 {
            return Err(Error::NotRepresentable("radicand must be positive".into()));
        }
        if !is_squarefree_u64(rad) {
            return Err(Error::NotRepresentable(format!("radicand {rad} is not squarefree")));
        }
        Ok(Self::from_parts(c, TermKey { rad, pihalf }))
    }

    /// π^e.
    pub fn pi_pow(e: i32) -> Self {
        Self::from_parts(BigRational::one(), TermKey { rad: 1, pihalf: 2 * e })
    }

    /// (2π)^e for any integer e.
    pub fn two_pi_pow(e: i32) -> Self {
        let two = BigRational::from_integer(BigInt::from(2));
        let c = if e >= 0 {
            two.pow(e)
        } else {
            two.pow(-e).recip()
        };
        Self::from_parts(c, TermKey { rad: 1, pihalf: 2 * e })
    }

    /// √n for a positive integer n, exact.
    pub fn sqrt_int(n: u64) -> Result<Self> {
        Self::int(n as i64).sqrt_term()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &BigRational)> {
        self.terms.iter().map(|(k, c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value when the scalar has no radical or π part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(k, c)] if *k == TermKey::UNIT => Some(c.clone()),
            _ => None,
        }
    }

    pub fn single_term(&self) -> Option<(&BigRational, TermKey)> {
        match self.terms.as_slice() {
            [(k, c)] => Some((c, *k)),
            _ => None,
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        ExactScalar {
            terms: self.terms.iter().map(|(k, c)| (*k, c * r)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse of a single-term scalar.
    pub fn inv(&self) -> Result<Self> {
        let (c, key) = self
            .single_term()
            .ok_or_else(|| Error::NotRepresentable("inverse needs a single nonzero term".into()))?;
        // 1/(c√r π^e) = √r/(c r) π^-e
        let r = BigRational::from_integer(BigInt::from(key.rad));
        Ok(Self::from_parts(
            (c * r).recip(),
            TermKey {
                rad: key.rad,
                pihalf: -key.pihalf,
            },
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Exact square root of a single positive term with rad = 1 and even π exponent.
    pub fn sqrt_term(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (c, key) = self
            .single_term()
            .ok_or_else(|| Error::NotRepresentable("square root of a multi-term scalar".into()))?;
        if !c.is_positive() {
            return Err(Error::NotRepresentable("square root of a non-positive mantissa".into()));
        }
        if key.rad != 1 || key.pihalf % 2 != 0 {
            return Err(Error::NotRepresentable(
                "square root would need a fourth root".into(),
            ));
        }
        // √(p/q) = √(pq)/q, pq = s²r
        let pq = (c.numer() * c.denom()).to_biguint().expect("positive");
        let (s, r) = squarefree_split(&pq)?;
        let rad = r
            .to_u64()
            .ok_or_else(|| Error::NotRepresentable("radicand exceeds 64 bits".into()))?;
        let mant = BigRational::new(BigInt::from_biguint(Sign::Plus, s), c.denom().clone());
        Ok(Self::from_parts(
            mant,
            TermKey {
                rad,
                pihalf: key.pihalf / 2,
            },
        ))
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| {
                let base = c.to_f64().unwrap_or(f64::NAN);
                base * (k.rad as f64).sqrt() * std::f64::consts::PI.powf(k.pihalf as f64 / 2.0)
            })
            .sum()
    }

    fn normalize(mut terms: Vec<(TermKey, BigRational)>) -> Self {
        terms.sort_by_key(|a| a.0);
        let mut out: Vec<(TermKey, BigRational)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => *lc += c,
                _ => out.push((k, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        ExactScalar { terms: out }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let sgn = |c: &BigRational| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, sgn(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(k, c)| (*k, sgn(c))));
        ExactScalar { terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let g = ka.rad.gcd(&kb.rad);
                let rad = (ka.rad / g)
                    .checked_mul(kb.rad / g)
                    .expect("radicand product exceeds 64 bits");
                let c = ca * cb * BigRational::from_integer(BigInt::from(g));
                terms.push((
                    TermKey {
                        rad,
                        pihalf: ka.pihalf + kb.pihalf,
                    },
                    c,
                ));
            }
        }
        if terms.len() == 1 {
            let (k, c) = terms.pop().expect("one term");
            return Self::from_parts(c, k);
        }
        Self::normalize(terms)
    }
}

fn is_squarefree_u64(n: u64) -> bool {
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// Writes n = s²·r with r squarefree.
pub fn squarefree_split(n: &BigUint) -> Result<(BigUint, BigUint)> {
    let mut m = n.clone();
    let mut s = BigUint::one();
    let mut r = BigUint::one();
    let mut p = 2u64;
    while p <= TRIAL_BOUND {
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0u32;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        if e > 0 {
            s *= pb.pow(e / 2);
            if e % 2 == 1 {
                r *= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        return Ok((s, r));
    }
    let b = BigUint::from(TRIAL_BOUND);
    if p <= TRIAL_BOUND || m < &b * &b {
        // cofactor is prime
        r *= m;
        return Ok((s, r));
    }
    if m < &b * &b * &b {
        // cofactor has at most two prime factors, both above the bound
        let root = m.sqrt();
        if &root * &root == m {
            s *= root;
        } else {
            r *= m;
        }
        return Ok((s, r));
    }
    Err(Error::NotRepresentable(
        "cannot certify squarefree part of a large cofactor".into(),
    ))
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        self.merge(rhs, false)
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self.merge(rhs, true)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        self.product(rhs)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

macro_rules! forward_by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_by_value!(Add, add);
forward_by_value!(Sub, sub);
forward_by_value!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::int(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(c: BigRational) -> Self {
        ExactScalar::rational(c)
    }
}

impl From<BigInt> for ExactScalar {
    fn from(n: BigInt) -> Self {
        ExactScalar::bigint(n)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            if k.rad != 1 {
                write!(f, "·√{}", k.rad)?;
            }
            match k.pihalf {
                0 => {}
                e if e % 2 == 0 => write!(f, "·π^{}", e / 2)?,
                e => write!(f, "·π^({e}/2)")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    num: String,
    rad: u64,
    pihalf: i32,
}

pub fn format_rational(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

impl ExactScalar {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("scalar serializes")
    }

    pub fn from_json(v: &serde_json::Value, path: &str) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::schema(path, "expected a list of scalar terms"))?;
        let mut acc = ExactScalar::zero();
        for (i, t) in arr.iter().enumerate() {
            let tp = format!("{path}[{i}]");
            let obj = t
                .as_object()
                .ok_or_else(|| Error::schema(&tp, "expected an object"))?;
            let num = obj
                .get("num")
                .and_then(|n| n.as_str())
                .ok_or_else(|| Error::schema(format!("{tp}.num"), "expected a \"p/q\" string"))?;
            let c = parse_rational(num)
                .ok_or_else(|| Error::schema(format!("{tp}.num"), "malformed rational"))?;
            let rad = obj
                .get("rad")
                .and_then(|r| r.as_u64())
                .ok_or_else(|| Error::schema(format!("{tp}.rad"), "expected a positive integer"))?;
            let pihalf = obj
                .get("pihalf")
                .and_then(|p| p.as_i64())
                .and_then(|p| i32::try_from(p).ok())
                .ok_or_else(|| Error::schema(format!("{tp}.pihalf"), "expected an integer"))?;
            let term = ExactScalar::term(c, rad, pihalf)
                .map_err(|e| Error::schema(format!("{tp}.rad"), e.to_string()))?;
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let reprs: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(k, c)| TermRepr {
                num: format_rational(c),
                rad: k.rad,
                pihalf: k.pihalf,
            })
            .collect();
        reprs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(deserializer)?;
        ExactScalar::from_json(&v, "scalar").map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::combinat::rat;

    #[test]
    fn sqrt_examples() {
        let two = ExactScalar::int(2).sqrt_term().unwrap();
        assert_eq!(two, ExactScalar::term(rat(1, 1), 2, 0).unwrap());
        let four_pi_sq = ExactScalar::int(4) * ExactScalar::pi_pow(2);
        assert_eq!(
            four_pi_sq.sqrt_term().unwrap(),
            ExactScalar::int(2) * ExactScalar::pi_pow(1)
        );
        let twelve_pi = ExactScalar::int(12) * ExactScalar::pi_pow(1);
        assert_eq!(
            twelve_pi.sqrt_term().unwrap(),
            ExactScalar::term(rat(2, 1), 3, 1).unwrap()
        );
    }

    #[test]
    fn sqrt_rejects() {
        let s = ExactScalar::int(2) + ExactScalar::pi_pow(1);
        assert!(s.sqrt_term().is_err());
        assert!(ExactScalar::int(-4).sqrt_term().is_err());
        assert!(ExactScalar::sqrt_int(2).unwrap().sqrt_term().is_err());
    }

    #[test]
    fn sqrt_of_fraction() {
        let s = ExactScalar::ratio(3, 8).sqrt_term().unwrap();
        assert_eq!(&s * &s, ExactScalar::ratio(3, 8));
    }

    #[test]
    fn radical_products_extract_squares() {
        let a = ExactScalar::sqrt_int(6).unwrap();
        let b = ExactScalar::sqrt_int(10).unwrap();
        // √60 = 2√15
        assert_eq!(&a * &b, ExactScalar::term(rat(2, 1), 15, 0).unwrap());
        assert_eq!(&a * &a, ExactScalar::int(6));
    }

    #[test]
    fn inverse_and_division() {
        let s = ExactScalar::term(rat(3, 2), 5, 3).unwrap();
        assert_eq!(&s * &s.inv().unwrap(), ExactScalar::one());
        assert!((ExactScalar::one() + ExactScalar::pi_pow(1)).inv().is_err());
        assert_eq!(
            ExactScalar::two_pi_pow(-2) * ExactScalar::two_pi_pow(2),
            ExactScalar::one()
        );
    }

    #[test]
    fn float_projection() {
        let s = ExactScalar::two_pi_pow(2) - ExactScalar::pi_pow(1).scale(&rat(2, 1));
        let expect = (2.0 * std::f64::consts::PI).powi(2) - 2.0 * std::f64::consts::PI;
        assert!((s.to_f64() - expect).abs() < 1e-12);
    }

    #[test]
    fn json_roundtrip() {
        let s = ExactScalar::term(rat(-3, 7), 6, -1).unwrap() + ExactScalar::int(2);
        let v = s.to_json();
        assert_eq!(ExactScalar::from_json(&v, "s").unwrap(), s);
        let bad = serde_json::json!([{"num": "1/2", "rad": 4, "pihalf": 0}]);
        let err = ExactScalar::from_json(&bad, "s").unwrap_err();
        assert!(err.to_string().contains("s[0].rad"));
    }

    #[test]
    fn squarefree_split_large_prime_cofactor() {
        let p = BigUint::from(1_000_003u64);
        let (s, r) = squarefree_split(&(&p * &p * BigUint::from(12u32))).unwrap();
        assert_eq!(s, &p * BigUint::from(2u32));
        assert_eq!(r, BigUint::from(3u32));
    }
}
