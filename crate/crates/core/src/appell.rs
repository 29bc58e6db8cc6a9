//! Clifford–Appell polynomials Q_k and the generalized polynomials M_{k,s} = x0^k Q_s.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::combinat::{binomial, factorial, falling, rat};
use crate::algebra::{ExactQuat, ExactScalar};
use crate::error::{Error, Result};
use crate::ncpoly::{expand_qbar_q, NCPoly};
use crate::report::VerificationReport;
use crate::slicepoly::SliceCoeffMatrix;

/// T^k_j = 2(k−j+1)/((k+1)(k+2)).
pub fn t_coeff(k: u32, j: u32) -> Result<BigRational> {
    if j > k {
        return Err(Error::Index(format!("T^{k}_{j} needs j ≤ k")));
    }
    let (k, j) = (k as i64, j as i64);
    Ok(rat(2 * (k - j + 1), (k + 1) * (k + 2)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct AppellPoly {
    pub k: u32,
    pub poly: NCPoly,
    pub slice: SliceCoeffMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenAppellPoly {
    pub k: u32,
    pub s: u32,
    pub poly: NCPoly,
}

type QCache = Mutex<HashMap<u32, Arc<NCPoly>>>;

fn q_cache() -> &'static QCache {
    static CACHE: OnceLock<QCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Expanded Q_s, with Q_s = 0 for s < 0.
pub fn q_poly(s: i64) -> Arc<NCPoly> {
    if s < 0 {
        return Arc::new(NCPoly::zero());
    }
    let s = s as u32;
    if let Some(p) = q_cache().lock().expect("cache lock").get(&s) {
        return p.clone();
    }
    let mut p = NCPoly::zero();
    for j in 0..=s {
        let t = ExactScalar::rational(t_coeff(s, j).expect("j ≤ s"));
        p.add_assign_ref(&expand_qbar_q(j, s - j).scale(&t));
    }
    let p = Arc::new(p);
    q_cache().lock().expect("cache lock").entry(s).or_insert(p).clone()
}

/// Expanded M_{k,s} = x0^k Q_s, zero for s < 0.
pub fn m_poly(k: u32, s: i64) -> NCPoly {
    q_poly(s).mul_x0_pow(k)
}

/// Q_k in both expanded and coefficient form.
pub fn appell_q(k: u32) -> AppellPoly {
    let mut slice =
        SliceCoeffMatrix::zeros(k as usize + 1, k as usize).expect("order ≥ 1");
    for j in 0..=k {
        let t = ExactScalar::rational(t_coeff(k, j).expect("j ≤ k"));
        slice
            .set(j as usize, (k - j) as usize, ExactQuat::real(t))
            .expect("in range");
    }
    AppellPoly {
        k,
        poly: (*q_poly(k as i64)).clone(),
        slice,
    }
}

pub fn gen_appell_m(k: u32, s: u32) -> GenAppellPoly {
    GenAppellPoly {
        k,
        s,
        poly: m_poly(k, s as i64),
    }
}

pub fn check_t_sum(k: u32) -> VerificationReport {
    let sum = (0..=k).fold(BigRational::zero(), |acc, j| acc + t_coeff(k, j).expect("j ≤ k"));
    let r = VerificationReport::exact("appell_T_sum").param("k", k);
    if sum.is_one() {
        r
    } else {
        r.fail(1.0, format!("ΣT = {sum}"))
    }
}

/// (D̄/2)Q_k = k Q_{k−1}.
pub fn check_appell_property(k: u32) -> Result<VerificationReport> {
    if k == 0 {
        return Err(Error::Domain("the Appell property needs k ≥ 1".into()));
    }
    let lhs = q_poly(k as i64).fueter_dbar().scale_rational(&rat(1, 2));
    let rhs = q_poly(k as i64 - 1).scale_int(k);
    Ok(VerificationReport::exact("appell_property")
        .param("k", k)
        .compare_polys(&lhs, &rhs))
}

/// D Q_k = 0.
pub fn check_fueter_regular(k: u32) -> VerificationReport {
    VerificationReport::exact("appell_fueter_regular")
        .param("k", k)
        .compare_polys(&q_poly(k as i64).fueter_d(), &NCPoly::zero())
}

/// D̄^j Q_s = 2^j s!/(s−j)! Q_{s−j}.
pub fn check_dbar_power(j: u32, s: u32) -> Result<VerificationReport> {
    if s < j {
        return Err(Error::Domain(format!("D̄^{j} Q_{s} needs s ≥ j")));
    }
    let lhs = q_poly(s as i64).fueter_dbar_pow(j);
    let c = BigInt::from(2).pow(j) * falling(s as u64, j as u64);
    let rhs = q_poly((s - j) as i64).scale_int(c);
    Ok(VerificationReport::exact("dbar_power")
        .param("j", j)
        .param("s", s)
        .compare_polys(&lhs, &rhs))
}

/// Right-hand side Σ_{j=1}^{k+1} 2^j C(k+1,j) k! s!/((j−1)!(s−j)!) M_{j−1,s−j}.
pub fn poly_appell_rhs(k: u32, s: u32) -> NCPoly {
    let mut rhs = NCPoly::zero();
    for j in 1..=(k + 1) {
        let num = BigInt::from(2).pow(j)
            * binomial(k as u64 + 1, j as u64)
            * factorial(k as u64)
            * falling(s as u64, j as u64);
        let c = BigRational::new(num, factorial(j as u64 - 1));
        rhs.add_assign_ref(&m_poly(j - 1, s as i64 - j as i64).scale_rational(&c));
    }
    rhs
}

/// D̄^{k+1} M_{k,s} against the Leibniz expansion.
pub fn check_poly_appell(k: u32, s: u32) -> Result<VerificationReport> {
    if s <= k {
        return Err(Error::Domain(format!("poly-Appell identity needs s ≥ k+1 (k={k}, s={s})")));
    }
    let lhs = m_poly(k, s as i64).fueter_dbar_pow(k + 1);
    Ok(VerificationReport::exact("poly_appell")
        .param("k", k)
        .param("s", s)
        .compare_polys(&lhs, &poly_appell_rhs(k, s)))
}

/// D^{k+1} M_{k,s} = 0.
pub fn check_m_polyanalytic(k: u32, s: u32) -> VerificationReport {
    VerificationReport::exact("gen_appell_polyanalytic")
        .param("k", k)
        .param("s", s)
        .compare_polys(&m_poly(k, s as i64).fueter_d_pow(k + 1), &NCPoly::zero())
}

/// Q_k(t) = t^k at a few rational real points.
pub fn check_real_axis(k: u32) -> VerificationReport {
    let r = VerificationReport::exact("appell_real_axis").param("k", k);
    let q = q_poly(k as i64);
    for (p, d) in [(1i64, 1i64), (-3, 2), (5, 7)] {
        let t = ExactScalar::ratio(p, d);
        let zero = ExactScalar::zero();
        let val = q.evaluate_exact(&[t.clone(), zero.clone(), zero.clone(), zero]);
        if val != ExactQuat::real(t.pow(k)) {
            return r.fail(1.0, format!("Q_{k}({p}/{d}) ≠ ({p}/{d})^{k}"));
        }
    }
    r
}

/// Σ_j T q^{k−j} q̄^j built with q̄ on the right agrees with the stored q̄-left form.
pub fn check_ordering(k: u32) -> VerificationReport {
    let mut other = NCPoly::zero();
    for j in 0..=k {
        let t = ExactScalar::rational(t_coeff(k, j).expect("j ≤ k"));
        let p = expand_qbar_q(0, k - j).mul(&expand_qbar_q(j, 0));
        other.add_assign_ref(&p.scale(&t));
    }
    VerificationReport::exact("appell_ordering")
        .param("k", k)
        .compare_polys(&q_poly(k as i64), &other)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::float_quat;

    #[test]
    fn t_examples() {
        assert_eq!(t_coeff(0, 0).unwrap(), rat(1, 1));
        assert_eq!(t_coeff(1, 0).unwrap(), rat(2, 3));
        assert_eq!(t_coeff(1, 1).unwrap(), rat(1, 3));
        assert!(t_coeff(2, 3).is_err());
        assert!(check_t_sum(5).passed());
    }

    #[test]
    fn q_examples() {
        assert_eq!(*q_poly(0), NCPoly::one());
        let q1 = (&NCPoly::q().scale_int(2) + &NCPoly::qbar()).scale_rational(&rat(1, 3));
        assert_eq!(*q_poly(1), q1);
        let q2 = &(&expand_qbar_q(0, 2).scale_int(3) + &expand_qbar_q(1, 1).scale_int(2))
            + &expand_qbar_q(2, 0);
        assert_eq!(*q_poly(2), q2.scale_rational(&rat(1, 6)));
        assert!(q_poly(-1).is_zero());
        assert_eq!(appell_q(3).slice.to_ncpoly(), *q_poly(3));
    }

    #[test]
    fn q1_at_i() {
        let v = q_poly(1).evaluate(&float_quat(0.0, 1.0, 0.0, 0.0)).unwrap();
        assert!(v.approx_eq(&float_quat(0.0, 1.0 / 3.0, 0.0, 0.0), 1e-15));
    }

    #[test]
    fn m_examples() {
        assert_eq!(gen_appell_m(0, 4).poly, *q_poly(4));
        assert_eq!(gen_appell_m(1, 0).poly, NCPoly::var(0));
        assert_eq!(gen_appell_m(2, 1).poly, q_poly(1).mul_x0_pow(2));
    }

    #[test]
    fn identity_checks() {
        assert!(check_appell_property(1).unwrap().passed());
        assert!(check_appell_property(5).unwrap().passed());
        assert!(check_appell_property(0).is_err());
        assert!(check_dbar_power(1, 1).unwrap().passed());
        assert!(check_dbar_power(2, 3).unwrap().passed());
        assert!(check_dbar_power(0, 4).unwrap().passed());
        assert!(check_dbar_power(3, 2).is_err());
        for (k, s) in [(0, 1), (1, 2), (2, 3)] {
            assert!(check_poly_appell(k, s).unwrap().passed());
        }
        assert!(check_poly_appell(2, 2).is_err());
        assert!(check_fueter_regular(2).passed());
        assert!(check_m_polyanalytic(2, 3).passed());
        assert!(check_real_axis(4).passed());
        assert!(check_ordering(4).passed());
    }

    #[test]
    fn dbar_squared_q3_is_24_q1() {
        assert_eq!(q_poly(3).fueter_dbar_pow(2), q_poly(1).scale_int(24));
    }
}
