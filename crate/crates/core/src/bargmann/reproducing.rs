//! The order-two reproducing kernel K_2(q,r) as a truncated two-variable series, and
//! its images under C_2 and τ_2 acting on q.

use std::collections::BTreeMap;

use crate::algebra::combinat::factorial;
use crate::algebra::{ExactScalar, FloatQuat};
use crate::appell::m_poly;
use crate::error::{Error, Result};
use crate::fueter_maps::c_action_closed;
use crate::ncpoly::{eval_qbar_q, NCPoly};
use crate::report::VerificationReport;

/// Key (kbar, jq, ar, br) for q̄^kbar q^jq · c · r^ar r̄^br.
pub type QRKey = (u32, u32, u32, u32);

#[derive(Clone, Debug, Default, PartialEq)]
pub struct QRKernelSeries {
    pub terms: BTreeMap<QRKey, ExactScalar>,
}

/// A q-polynomial image attached to each r-monomial r^ar r̄^br.
pub type RImage = BTreeMap<(u32, u32), NCPoly>;

impl QRKernelSeries {
    fn add(&mut self, key: QRKey, c: ExactScalar) {
        let e = self.terms.entry(key).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn evaluate(&self, q: &FloatQuat, r: &FloatQuat) -> FloatQuat {
        let mut acc = FloatQuat::zero();
        for (&(kb, jq, ar, br), c) in &self.terms {
            let left = eval_qbar_q(q, kb, jq).scale(&c.to_f64());
            let right = &r.pow(ar) * &r.conj().pow(br);
            acc = &acc + &(&left * &right);
        }
        acc
    }

    /// Applies a q-map given on the basis q̄^kbar q^jq; the r-part is carried along.
    fn map_q(&self, f: impl Fn(u32, u32) -> NCPoly) -> RImage {
        let mut out = RImage::new();
        for (&(kb, jq, ar, br), c) in &self.terms {
            let img = f(kb, jq);
            if img.is_zero() {
                continue;
            }
            let e = out.entry((ar, br)).or_default();
            e.add_assign_ref(&img.scale(c));
        }
        out.retain(|_, p| !p.is_zero());
        out
    }
}

fn tp(e: i32) -> ExactScalar {
    ExactScalar::two_pi_pow(e)
}

fn inv_fact(m: u32) -> ExactScalar {
    ExactScalar::bigint(factorial(m as u64)).inv().expect("nonzero")
}

/// K_2 = 2e_* − 4π e_*|r|² + 4π q e_* r̄ + q̄(4π e_* r − 4π q e_*) with
/// e_* = Σ_{m≤J} (2π)^m q^m r̄^m/m!.
pub fn k2_kernel(trunc: u32) -> Result<QRKernelSeries> {
    if trunc < 2 {
        return Err(Error::Truncation(format!("K_2 needs truncation ≥ 2, got {trunc}")));
    }
    let mut k = QRKernelSeries::default();
    let four_pi = ExactScalar::int(2) * tp(1);
    for m in 0..=trunc {
        let e = tp(m as i32) * inv_fact(m);
        let fe = &four_pi * &e;
        k.add((0, m, 0, m), ExactScalar::int(2) * e.clone());
        k.add((0, m, 1, m + 1), -fe.clone());
        k.add((0, m + 1, 0, m + 1), fe.clone());
        k.add((1, m, 1, m), fe.clone());
        k.add((1, m + 1, 0, m), -fe);
    }
    Ok(k)
}

/// C_2 on q: q̄^k q^j ↦ x0^k Δ q^j.
pub fn c2_of_k2(k2: &QRKernelSeries) -> RImage {
    k2.map_q(c_action_closed)
}

/// τ_2 on q: q̄ q^j ↦ 2Δq^j, q^j ↦ 0.
pub fn tau2_of_k2(k2: &QRKernelSeries) -> RImage {
    k2.map_q(|kb, jq| if kb == 1 { c_action_closed(0, jq).scale_int(2) } else { NCPoly::zero() })
}

/// conj(H_{1,p}(r)) = (2π)^{p+1} r r̄^p − (2π)^p p r̄^{p−1} as r-monomial coefficients.
fn conj_h1(p: u32) -> Vec<((u32, u32), ExactScalar)> {
    let mut v = vec![((1, p), tp(p as i32 + 1))];
    if p >= 1 {
        v.push(((0, p - 1), ExactScalar::int(-(p as i64)) * tp(p as i32)));
    }
    v
}

fn push(out: &mut RImage, key: (u32, u32), p: NCPoly) {
    out.entry(key).or_default().add_assign_ref(&p);
}

/// −8[Σ_{h≤H} M_{1,h} conj(H_{1,h+2})/h! − Σ_{h≤H} M_{0,h} conj(H_{1,h+3})/((2π)h!)].
pub fn c2_stated_rhs(h_max: u32) -> RImage {
    let mut out = RImage::new();
    for h in 0..=h_max {
        let m1 = m_poly(1, h as i64).scale(&(ExactScalar::int(-8) * inv_fact(h)));
        for (key, c) in conj_h1(h + 2) {
            push(&mut out, key, m1.scale(&c));
        }
        let m0 = m_poly(0, h as i64).scale(&(ExactScalar::int(8) * inv_fact(h) * tp(-1)));
        for (key, c) in conj_h1(h + 3) {
            push(&mut out, key, m0.scale(&c));
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// −8 Σ_{k≤H} Q_k conj(H_{1,k+2})/k!.
pub fn tau2_stated_rhs(h_max: u32) -> RImage {
    let mut out = RImage::new();
    for k in 0..=h_max {
        let q = m_poly(0, k as i64).scale(&(ExactScalar::int(-8) * inv_fact(k)));
        for (key, c) in conj_h1(k + 2) {
            push(&mut out, key, q.scale(&c));
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// Restriction to r̄-degrees ≤ b_max, where both truncations are complete.
fn restrict(img: &RImage, b_max: u32) -> RImage {
    img.iter()
        .filter(|((_, br), _)| *br <= b_max)
        .map(|(k, p)| (*k, p.clone()))
        .collect()
}

fn image_diff(a: &RImage, b: &RImage) -> f64 {
    let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).collect();
    let zero = NCPoly::zero();
    keys.into_iter()
        .map(|k| a.get(k).unwrap_or(&zero).max_abs_coeff_diff(b.get(k).unwrap_or(&zero)))
        .fold(0.0, f64::max)
}

fn scale_image(img: &RImage, s: &ExactScalar) -> RImage {
    img.iter().map(|(k, p)| (*k, p.scale(s))).collect()
}

/// Images of K_2 truncated at J = H+1, compared on r̄-degrees ≤ min(J, H+1).
pub struct K2Images {
    pub h_max: u32,
    pub b_max: u32,
    pub c2: RImage,
    pub tau2: RImage,
}

pub fn k2_images(h_max: u32) -> Result<K2Images> {
    let trunc = h_max + 1;
    let k2 = k2_kernel(trunc)?;
    let b_max = trunc.min(h_max + 1);
    Ok(K2Images {
        h_max,
        b_max,
        c2: restrict(&c2_of_k2(&k2), b_max),
        tau2: restrict(&tau2_of_k2(&k2), b_max),
    })
}

pub fn check_tau2_of_k2(h_max: u32) -> Result<VerificationReport> {
    let im = k2_images(h_max)?;
    let rhs = restrict(&tau2_stated_rhs(h_max), im.b_max);
    let r = VerificationReport::exact("K2_tau2").param("h_max", h_max);
    Ok(if im.tau2 == rhs {
        r
    } else {
        r.fail(image_diff(&im.tau2, &rhs), "τ_2(K_2) differs from the stated series")
    })
}

/// C_2(K_2) against the stated series; an exact factor ½ is flagged.
pub fn check_c2_of_k2(h_max: u32) -> Result<VerificationReport> {
    let im = k2_images(h_max)?;
    let rhs = restrict(&c2_stated_rhs(h_max), im.b_max);
    let r = VerificationReport::exact("K2_C2").param("h_max", h_max);
    if im.c2 == rhs {
        return Ok(r);
    }
    if im.c2 == scale_image(&rhs, &ExactScalar::ratio(1, 2)) {
        return Ok(r.flag("C_2(K_2) is exactly one half of the stated series (−4 in place of −8)"));
    }
    Ok(r.fail(image_diff(&im.c2, &rhs), "C_2(K_2) is not proportional to the stated series"))
}

/// D C_2(K_2) = ½ τ_2(K_2) on every r-monomial.
pub fn check_k2_r1(h_max: u32) -> Result<VerificationReport> {
    let im = k2_images(h_max)?;
    let lhs: RImage = im
        .c2
        .iter()
        .map(|(k, p)| (*k, p.fueter_d()))
        .filter(|(_, p)| !p.is_zero())
        .collect();
    let rhs = scale_image(&im.tau2, &ExactScalar::ratio(1, 2));
    let r = VerificationReport::exact("K2_relation_R1").param("h_max", h_max);
    Ok(if lhs == rhs {
        r
    } else {
        r.fail(image_diff(&lhs, &rhs), "D C_2(K_2) ≠ ½ τ_2(K_2)")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::float_quat;
    use crate::report::Status;

    #[test]
    fn kernel_shape() {
        let k = k2_kernel(2).unwrap();
        assert_eq!(k.terms[&(0, 0, 0, 0)], ExactScalar::int(2));
        assert!(k2_kernel(1).is_err());
        let v = k.evaluate(&FloatQuat::zero(), &FloatQuat::zero());
        assert!((v.w - 2.0).abs() < 1e-15);
        let v = k.evaluate(&float_quat(0.1, 0.2, 0.0, 0.0), &float_quat(0.0, 0.1, 0.3, 0.0));
        assert!(v.is_finite());
    }

    #[test]
    fn images() {
        let im = k2_images(3).unwrap();
        assert!(im.c2.values().all(|p| !p.is_zero()));
        let q0 = &im.tau2[&(1, 2)];
        assert_eq!(*q0, NCPoly::one().scale(&(ExactScalar::int(-8) * tp(3))));
    }

    #[test]
    fn stated_identities() {
        assert!(check_tau2_of_k2(6).unwrap().passed());
        assert_eq!(check_c2_of_k2(6).unwrap().status, Status::Flagged);
        assert!(check_k2_r1(6).unwrap().passed());
    }
}
