//! Quaternions over an exact or floating scalar type with the Hamilton product.
//!
//! Exact and float quaternions are distinct types, so mixing modes is a type error.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use super::scalar::ExactScalar;
use crate::error::{Error, Result};

pub trait Scalar: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Scalar for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quaternion<S> {
    pub w: S,
    pub x: S,
    pub y: S,
    pub z: S,
}

pub type ExactQuat = Quaternion<ExactScalar>;
pub type FloatQuat = Quaternion<f64>;

impl<S: Scalar> Quaternion<S> {
    pub fn new(w: S, x: S, y: S, z: S) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn real(w: S) -> Self {
        Quaternion::new(w, S::zero(), S::zero(), S::zero())
    }

    pub fn zero() -> Self {
        Self::real(S::zero())
    }

    pub fn one() -> Self {
        Self::real(S::one())
    }

    /// The basis element 1, i, j or k for axis 0..3.
    pub fn unit(axis: usize) -> Self {
        let mut q = Self::zero();
        match axis {
            0 => q.w = S::one(),
            1 => q.x = S::one(),
            2 => q.y = S::one(),
            3 => q.z = S::one(),
            _ => panic!("axis {axis} out of range"),
        }
        q
    }

    pub fn i() -> Self {
        Self::unit(1)
    }
    pub fn j() -> Self {
        Self::unit(2)
    }
    pub fn k() -> Self {
        Self::unit(3)
    }

    pub fn components(&self) -> [&S; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(
            self.w.clone(),
            self.x.negated(),
            self.y.negated(),
            self.z.negated(),
        )
    }

    /// w² + x² + y² + z².
    pub fn norm_sq(&self) -> S {
        self.w
            .times(&self.w)
            .plus(&self.x.times(&self.x))
            .plus(&self.y.times(&self.y))
            .plus(&self.z.times(&self.z))
    }

    /// Component-wise multiplication by a real scalar.
    pub fn scale(&self, s: &S) -> Self {
        Quaternion::new(
            self.w.times(s),
            self.x.times(s),
            self.y.times(s),
            self.z.times(s),
        )
    }

    pub fn hamilton(&self, q: &Self) -> Self {
        let p = self;
        let w = p.w.times(&q.w).minus(&p.x.times(&q.x)).minus(&p.y.times(&q.y)).minus(&p.z.times(&q.z));
        let x = p.w.times(&q.x).plus(&p.x.times(&q.w)).plus(&p.y.times(&q.z)).minus(&p.z.times(&q.y));
        let y = p.w.times(&q.y).minus(&p.x.times(&q.z)).plus(&p.y.times(&q.w)).plus(&p.z.times(&q.x));
        let z = p.w.times(&q.z).plus(&p.x.times(&q.y)).minus(&p.y.times(&q.x)).plus(&p.z.times(&q.w));
        Quaternion::new(w, x, y, z)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.hamilton(self);
        }
        acc
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Quaternion<T> {
        Quaternion::new(f(&self.w), f(&self.x), f(&self.y), f(&self.z))
    }
}

impl<S: Scalar> Add for &Quaternion<S> {
    type Output = Quaternion<S>;
    fn add(self, q: &Quaternion<S>) -> Quaternion<S> {
        Quaternion::new(self.w.plus(&q.w), self.x.plus(&q.x), self.y.plus(&q.y), self.z.plus(&q.z))
    }
}

impl<S: Scalar> Sub for &Quaternion<S> {
    type Output = Quaternion<S>;
    fn sub(self, q: &Quaternion<S>) -> Quaternion<S> {
        Quaternion::new(
            self.w.minus(&q.w),
            self.x.minus(&q.x),
            self.y.minus(&q.y),
            self.z.minus(&q.z),
        )
    }
}

impl<S: Scalar> Mul for &Quaternion<S> {
    type Output = Quaternion<S>;
    fn mul(self, q: &Quaternion<S>) -> Quaternion<S> {
        self.hamilton(q)
    }
}

impl<S: Scalar> Neg for &Quaternion<S> {
    type Output = Quaternion<S>;
    fn neg(self) -> Quaternion<S> {
        Quaternion::new(self.w.negated(), self.x.negated(), self.y.negated(), self.z.negated())
    }
}

macro_rules! forward_quat {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for Quaternion<S> {
            type Output = Quaternion<S>;
            fn $m(self, rhs: Quaternion<S>) -> Quaternion<S> {
                (&self).$m(&rhs)
            }
        }
        impl<S: Scalar> $tr<&Quaternion<S>> for Quaternion<S> {
            type Output = Quaternion<S>;
            fn $m(self, rhs: &Quaternion<S>) -> Quaternion<S> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_quat!(Add, add);
forward_quat!(Sub, sub);
forward_quat!(Mul, mul);

impl<S: Scalar> Neg for Quaternion<S> {
    type Output = Quaternion<S>;
    fn neg(self) -> Quaternion<S> {
        -&self
    }
}

impl ExactQuat {
    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        Quaternion::new(w.into(), x.into(), y.into(), z.into())
    }

    pub fn to_f64(&self) -> FloatQuat {
        Quaternion::new(self.w.to_f64(), self.x.to_f64(), self.y.to_f64(), self.z.to_f64())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "w": self.w.to_json(),
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "z": self.z.to_json(),
        })
    }

    pub fn from_json(v: &Value, path: &str) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::schema(path, "expected a quaternion object {w,x,y,z}"))?;
        let comp = |name: &str| -> Result<ExactScalar> {
            let p = format!("{path}.{name}");
            let c = obj.get(name).ok_or_else(|| Error::schema(&p, "missing component"))?;
            ExactScalar::from_json(c, &p)
        };
        Ok(Quaternion::new(comp("w")?, comp("x")?, comp("y")?, comp("z")?))
    }
}

impl FloatQuat {
    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn abs(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    pub fn dist(&self, other: &Self) -> f64 {
        (self - other).abs()
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let d = self - other;
        d.to_array().iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn check_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::Numeric(format!("non-finite quaternion {self:?}")))
        }
    }
}

/// e^(a+v) = e^a (cos|v| + v/|v| sin|v|).
pub fn quat_exp(q: &FloatQuat) -> Result<FloatQuat> {
    q.check_finite()?;
    let vn = (q.x * q.x + q.y * q.y + q.z * q.z).sqrt();
    let ea = q.w.exp();
    // sin|v|/|v| → 1 as |v| → 0
    let sinc = if vn < 1e-8 { 1.0 - vn * vn / 6.0 } else { vn.sin() / vn };
    let out = Quaternion::new(ea * vn.cos(), ea * sinc * q.x, ea * sinc * q.y, ea * sinc * q.z);
    out.check_finite()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamilton_table() {
        let i = ExactQuat::i();
        let j = ExactQuat::j();
        let k = ExactQuat::k();
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&i * &i, -ExactQuat::one());
    }

    #[test]
    fn product_examples() {
        let p = ExactQuat::from_ints(1, 1, 0, 0);
        let q = ExactQuat::from_ints(1, 0, 1, 0);
        assert_eq!(&p * &q, ExactQuat::from_ints(1, 1, 1, 1));
        let r = ExactQuat::from_ints(3, -2, 5, 7);
        assert_eq!(&r * &ExactQuat::one(), r);
    }

    #[test]
    fn conj_examples() {
        assert_eq!(ExactQuat::i().conj(), -ExactQuat::i());
        assert_eq!(ExactQuat::from_ints(1, 1, 1, 1).conj(), ExactQuat::from_ints(1, -1, -1, -1));
        let p = ExactQuat::from_ints(1, 2, 0, 0);
        let q = ExactQuat::from_ints(3, 0, 0, 1);
        assert_eq!((&p * &q).conj(), &q.conj() * &p.conj());
        assert_eq!(ExactQuat::from_ints(1, 1, 1, 1).norm_sq(), ExactScalar::int(4));
        assert!(ExactQuat::zero().norm_sq().is_zero());
    }

    #[test]
    fn exp_examples() {
        let one = quat_exp(&FloatQuat::zero()).unwrap();
        assert!(one.approx_eq(&FloatQuat::one(), 1e-15));
        let m1 = quat_exp(&Quaternion::new(0.0, std::f64::consts::PI, 0.0, 0.0)).unwrap();
        assert!(m1.approx_eq(&Quaternion::real(-1.0), 1e-12));
        let two_i =
            quat_exp(&Quaternion::new(2f64.ln(), 0.0, std::f64::consts::FRAC_PI_2, 0.0)).unwrap();
        assert!(two_i.approx_eq(&Quaternion::new(0.0, 0.0, 2.0, 0.0), 1e-12));
        assert!(quat_exp(&Quaternion::new(f64::NAN, 0.0, 0.0, 0.0)).is_err());
    }
}
