//! Polynomials in the real variables x0..x3 with quaternion coefficients, and the
//! operators D, D̄, Δ acting on them.
//!
//! Coefficients sit to the right of the real monomials. Imaginary units in D and D̄
//! multiply coefficients on the left.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::algebra::{ExactQuat, ExactScalar, FloatQuat, Quaternion};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial4(pub [u32; 4]);

impl Monomial4 {
    pub const ONE: Monomial4 = Monomial4([0; 4]);

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn var(axis: usize) -> Self {
        let mut e = [0; 4];
        e[axis] = 1;
        Monomial4(e)
    }

    pub fn times(&self, other: &Monomial4) -> Monomial4 {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial4(e)
    }
}

/// Graded lexicographic order.
impl Ord for Monomial4 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial4 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Monomial4, ExactQuat>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactQuat::one())
    }

    pub fn constant(c: ExactQuat) -> Self {
        Self::monomial(Monomial4::ONE, c)
    }

    pub fn monomial(m: Monomial4, c: ExactQuat) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(m, c);
        p
    }

    /// The coordinate x_axis with coefficient 1.
    pub fn var(axis: usize) -> Self {
        Self::monomial(Monomial4::var(axis), ExactQuat::one())
    }

    /// q = x0 + x1 i + x2 j + x3 k.
    pub fn q() -> Self {
        let mut p = NCPoly::zero();
        for axis in 0..4 {
            p.add_term(Monomial4::var(axis), ExactQuat::unit(axis));
        }
        p
    }

    /// q̄ = x0 − x1 i − x2 j − x3 k.
    pub fn qbar() -> Self {
        let mut p = NCPoly::zero();
        for axis in 0..4 {
            let u = ExactQuat::unit(axis);
            p.add_term(Monomial4::var(axis), if axis == 0 { u } else { -u });
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial4, &ExactQuat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial4) -> ExactQuat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Total degree; −1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|m| m.degree() as i64).max().unwrap_or(-1)
    }

    pub fn add_term(&mut self, m: Monomial4, c: ExactQuat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &NCPoly) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn neg(&self) -> NCPoly {
        self.map_coeffs(|c| -c)
    }

    pub fn map_coeffs(&self, f: impl Fn(&ExactQuat) -> ExactQuat) -> NCPoly {
        let mut out = NCPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    /// f·λ with λ on the right of every coefficient.
    pub fn mul_right(&self, lambda: &ExactQuat) -> NCPoly {
        self.map_coeffs(|c| c * lambda)
    }

    /// λ·f with λ on the left of every coefficient.
    pub fn mul_left(&self, lambda: &ExactQuat) -> NCPoly {
        self.map_coeffs(|c| lambda * c)
    }

    pub fn scale(&self, s: &ExactScalar) -> NCPoly {
        if s.is_zero() {
            return NCPoly::zero();
        }
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn scale_rational(&self, r: &BigRational) -> NCPoly {
        self.scale(&ExactScalar::rational(r.clone()))
    }

    pub fn scale_int(&self, n: impl Into<BigInt>) -> NCPoly {
        self.scale(&ExactScalar::bigint(n.into()))
    }

    /// x0^k · f.
    pub fn mul_x0_pow(&self, k: u32) -> NCPoly {
        let shift = Monomial4([k, 0, 0, 0]);
        NCPoly {
            terms: self.terms.iter().map(|(m, c)| (m.times(&shift), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }

    pub fn partial(&self, axis: usize) -> NCPoly {
        let mut out = NCPoly::zero();
        for (m, c) in &self.terms {
            let e = m.0[axis];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[axis] -= 1;
            out.add_term(dm, c.scale(&ExactScalar::int(e as i64)));
        }
        out
    }

    fn dirac(&self, sign: i64) -> NCPoly {
        let mut out = self.partial(0);
        for axis in 1..4 {
            let unit = ExactQuat::unit(axis);
            let unit = if sign < 0 { -unit } else { unit };
            out.add_assign_ref(&self.partial(axis).mul_left(&unit));
        }
        out
    }

    /// D = ∂0 + i∂1 + j∂2 + k∂3.
    pub fn fueter_d(&self) -> NCPoly {
        self.dirac(1)
    }

    /// D̄ = ∂0 − i∂1 − j∂2 − k∂3.
    pub fn fueter_dbar(&self) -> NCPoly {
        self.dirac(-1)
    }

    pub fn laplacian(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for axis in 0..4 {
            out.add_assign_ref(&self.partial(axis).partial(axis));
        }
        out
    }

    pub fn fueter_d_pow(&self, n: u32) -> NCPoly {
        (0..n).fold(self.clone(), |acc, _| acc.fueter_d())
    }

    pub fn fueter_dbar_pow(&self, n: u32) -> NCPoly {
        (0..n).fold(self.clone(), |acc, _| acc.fueter_dbar())
    }

    /// Substitutes the components of q into the monomials, coefficients projected to floats.
    pub fn evaluate(&self, q: &FloatQuat) -> Result<FloatQuat> {
        q.check_finite()?;
        let xs = q.to_array();
        let mut acc = FloatQuat::zero();
        for (m, c) in &self.terms {
            let mono: f64 = xs.iter().zip(m.0.iter()).map(|(x, e)| x.powi(*e as i32)).product();
            acc = &acc + &c.to_f64().scale(&mono);
        }
        acc.check_finite()?;
        Ok(acc)
    }

    /// Exact evaluation at a point with exact real coordinates.
    pub fn evaluate_exact(&self, xs: &[ExactScalar; 4]) -> ExactQuat {
        let mut acc = ExactQuat::zero();
        for (m, c) in &self.terms {
            let mono = xs
                .iter()
                .zip(m.0.iter())
                .fold(ExactScalar::one(), |p, (x, e)| &p * &x.pow(*e));
            acc = &acc + &c.scale(&mono);
        }
        acc
    }

    /// Largest componentwise float difference of coefficients.
    pub fn max_abs_coeff_diff(&self, other: &NCPoly) -> f64 {
        let diff = self - other;
        diff.terms
            .values()
            .flat_map(|c| c.to_f64().to_array())
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| json!({"mono": m.0, "coeff": c.to_json()}))
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(v: &Value, path: &str) -> Result<Self> {
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::schema(format!("{path}.terms"), "expected a list"))?;
        let mut out = NCPoly::zero();
        for (i, t) in terms.iter().enumerate() {
            let tp = format!("{path}.terms[{i}]");
            let mono = t
                .get("mono")
                .and_then(|m| m.as_array())
                .filter(|m| m.len() == 4)
                .ok_or_else(|| Error::schema(format!("{tp}.mono"), "expected four exponents"))?;
            let mut e = [0u32; 4];
            for (slot, val) in e.iter_mut().zip(mono) {
                *slot = val
                    .as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| Error::schema(format!("{tp}.mono"), "exponent must be a non-negative integer"))?;
            }
            let c = t
                .get("coeff")
                .ok_or_else(|| Error::schema(format!("{tp}.coeff"), "missing coefficient"))?;
            out.add_term(Monomial4(e), ExactQuat::from_json(c, &format!("{tp}.coeff"))?);
        }
        Ok(out)
    }
}

impl std::ops::Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl std::ops::Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl std::ops::Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        NCPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly::neg(self)
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                format!(
                    "x^{:?}·({} | {} | {} | {})",
                    m.0, c.w, c.x, c.y, c.z
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type PowerCache = Mutex<HashMap<(u32, u32), Arc<NCPoly>>>;

fn power_cache() -> &'static PowerCache {
    static CACHE: OnceLock<PowerCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Expanded q̄^k q^j, memoized.
pub fn expand_qbar_q(k: u32, j: u32) -> Arc<NCPoly> {
    if let Some(p) = power_cache().lock().expect("cache lock").get(&(k, j)) {
        return p.clone();
    }
    let p = if j > 0 {
        expand_qbar_q(k, j - 1).mul(&NCPoly::q())
    } else if k > 0 {
        expand_qbar_q(k - 1, 0).mul(&NCPoly::qbar())
    } else {
        NCPoly::one()
    };
    let p = Arc::new(p);
    power_cache()
        .lock()
        .expect("cache lock")
        .entry((k, j))
        .or_insert(p)
        .clone()
}

/// Evaluates q̄^k q^j at a float quaternion.
pub fn eval_qbar_q(q: &FloatQuat, k: u32, j: u32) -> FloatQuat {
    q.conj().pow(k).hamilton(&q.pow(j))
}

pub fn float_quat(w: f64, x: f64, y: f64, z: f64) -> FloatQuat {
    Quaternion::new(w, x, y, z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(axis: usize) -> NCPoly {
        NCPoly::var(axis)
    }

    #[test]
    fn product_examples() {
        assert_eq!(x(0).mul(&x(0)), NCPoly::monomial(Monomial4([2, 0, 0, 0]), ExactQuat::one()));
        let a = x(1).mul_right(&ExactQuat::i());
        let b = x(2).mul_right(&ExactQuat::j());
        assert_eq!(a.mul(&b), NCPoly::monomial(Monomial4([0, 1, 1, 0]), ExactQuat::k()));
        let f = NCPoly::q().mul(&NCPoly::qbar());
        assert_eq!(f.mul(&NCPoly::one()), f);
    }

    #[test]
    fn partial_examples() {
        let x0sq = NCPoly::monomial(Monomial4([2, 0, 0, 0]), ExactQuat::one());
        assert_eq!(x0sq.partial(0), x(0).scale_int(2));
        assert!(x(0).partial(1).is_zero());
        let f = NCPoly::monomial(Monomial4([1, 0, 2, 0]), ExactQuat::i());
        assert_eq!(f.partial(2), NCPoly::monomial(Monomial4([1, 0, 1, 0]), ExactQuat::i().scale(&2.into())));
    }

    #[test]
    fn dirac_examples() {
        assert_eq!(NCPoly::q().fueter_d(), NCPoly::one().scale_int(-2));
        assert_eq!(NCPoly::qbar().fueter_d(), NCPoly::one().scale_int(4));
        assert_eq!(NCPoly::q().fueter_dbar(), NCPoly::one().scale_int(4));
        assert_eq!(NCPoly::qbar().fueter_dbar(), NCPoly::one().scale_int(-2));
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(expand_qbar_q(0, 2).laplacian(), NCPoly::one().scale_int(-4));
        assert!(NCPoly::q().laplacian().is_zero());
        // Δq³ = −4(2q + q̄)
        let expect = (&NCPoly::q().scale_int(2) + &NCPoly::qbar()).scale_int(-4);
        assert_eq!(expand_qbar_q(0, 3).laplacian(), expect);
    }

    #[test]
    fn qbar_q_expansions() {
        assert_eq!(*expand_qbar_q(0, 1), NCPoly::q());
        let mut sq = NCPoly::zero();
        for a in 0..4 {
            let mut e = [0; 4];
            e[a] = 2;
            sq.add_term(Monomial4(e), ExactQuat::one());
        }
        assert_eq!(*expand_qbar_q(1, 1), sq);
        for deg in 0..6u32 {
            for k in 0..=deg {
                let j = deg - k;
                let other = expand_qbar_q(0, j).mul(&expand_qbar_q(k, 0));
                assert_eq!(*expand_qbar_q(k, j), other, "ordering at k={k}, j={j}");
            }
        }
    }

    #[test]
    fn evaluation_examples() {
        let at = float_quat(1.0, 1.0, 0.0, 0.0);
        assert!(NCPoly::q().evaluate(&at).unwrap().approx_eq(&at, 1e-15));
        let x0sq = NCPoly::monomial(Monomial4([2, 0, 0, 0]), ExactQuat::one());
        assert_eq!(x0sq.evaluate(&float_quat(0.0, 0.0, 1.0, 0.0)).unwrap(), FloatQuat::zero());
        assert!(NCPoly::q().evaluate(&float_quat(f64::NAN, 0.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn json_roundtrip_and_order() {
        let f = &expand_qbar_q(1, 2).mul_right(&ExactQuat::from_ints(1, 0, -2, 3)) + &NCPoly::one();
        let v = f.to_json();
        assert_eq!(NCPoly::from_json(&v, "p").unwrap(), f);
        let monos: Vec<Monomial4> = f.terms().map(|(m, _)| *m).collect();
        let mut sorted = monos.clone();
        sorted.sort();
        assert_eq!(monos, sorted);
        assert_eq!(NCPoly::zero().to_json(), json!({"terms": []}));
        assert_eq!(NCPoly::zero().degree(), -1);
    }
}
