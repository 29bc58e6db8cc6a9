//! Coefficient-level inner products for the ranges of the Fueter maps on the true
//! polyanalytic Fock spaces, and their block direct sums.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::combinat::factorial;
use crate::algebra::{ExactQuat, ExactScalar, Quaternion};
use crate::appell::{m_poly, q_poly};
use crate::error::{Error, Result};
use crate::fueter_maps::{map_c, map_tau};
use crate::hermite::assemble_fock_series;
use crate::ncpoly::NCPoly;
use crate::report::VerificationReport;

/// Σ_h Σ_{s≤n} M_{n−s,h+n−s} β_{h,s}.
#[derive(Clone, Debug, PartialEq)]
pub struct ASpaceElement {
    pub n: usize,
    /// `beta[h][s]`, each row of length n+1.
    pub beta: Vec<Vec<ExactQuat>>,
}

/// Σ_h Q_{h+n} β_h.
#[derive(Clone, Debug, PartialEq)]
pub struct ATildeElement {
    pub n: usize,
    pub beta: Vec<ExactQuat>,
}

fn fact(n: usize) -> ExactScalar {
    ExactScalar::bigint(factorial(n as u64))
}

fn quat_list_json(v: &[ExactQuat]) -> Value {
    Value::Array(v.iter().map(|q| q.to_json()).collect())
}

fn parse_n(v: &Value) -> Result<usize> {
    v.get("n")
        .and_then(Value::as_u64)
        .map(|n| n as usize)
        .ok_or_else(|| Error::schema("n", "expected a non-negative integer"))
}

impl ASpaceElement {
    pub fn new(n: usize, beta: Vec<Vec<ExactQuat>>) -> Result<Self> {
        if let Some(h) = beta.iter().position(|row| row.len() != n + 1) {
            return Err(Error::schema(format!("beta[{h}]"), format!("expected {} entries", n + 1)));
        }
        Ok(ASpaceElement { n, beta })
    }

    pub fn zeros(n: usize, h_len: usize) -> Self {
        ASpaceElement {
            n,
            beta: vec![vec![ExactQuat::zero(); n + 1]; h_len],
        }
    }

    pub fn get(&self, h: usize, s: usize) -> ExactQuat {
        self.beta.get(h).and_then(|r| r.get(s)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.beta.iter().flatten().all(|b| b.is_zero())
    }

    pub fn to_ncpoly(&self) -> NCPoly {
        let n = self.n as u32;
        let mut out = NCPoly::zero();
        for (h, row) in self.beta.iter().enumerate() {
            for (s, b) in row.iter().enumerate() {
                if !b.is_zero() {
                    let s = s as u32;
                    out.add_assign_ref(&m_poly(n - s, (h as u32 + n - s) as i64).mul_right(b));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "beta": self.beta.iter().map(|r| quat_list_json(r)).collect::<Vec<_>>()})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = parse_n(v)?;
        let rows = v
            .get("beta")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::schema("beta", "expected an array of rows"))?;
        let mut beta = Vec::with_capacity(rows.len());
        for (h, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| Error::schema(format!("beta[{h}]"), "expected an array"))?;
            let parsed = row
                .iter()
                .enumerate()
                .map(|(s, q)| ExactQuat::from_json(q, &format!("beta[{h}][{s}]")))
                .collect::<Result<Vec<_>>>()?;
            beta.push(parsed);
        }
        Self::new(n, beta)
    }
}

impl ATildeElement {
    pub fn new(n: usize, beta: Vec<ExactQuat>) -> Self {
        ATildeElement { n, beta }
    }

    pub fn is_zero(&self) -> bool {
        self.beta.iter().all(|b| b.is_zero())
    }

    pub fn to_ncpoly(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (h, b) in self.beta.iter().enumerate() {
            if !b.is_zero() {
                out.add_assign_ref(&q_poly((h + self.n) as i64).mul_right(b));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "beta": quat_list_json(&self.beta)})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = parse_n(v)?;
        let list = v
            .get("beta")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::schema("beta", "expected an array"))?;
        let beta = list
            .iter()
            .enumerate()
            .map(|(h, q)| ExactQuat::from_json(q, &format!("beta[{h}]")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(n, beta))
    }
}

/// [(h+n−s)!]²(s!)²[(n−s)!]² / ((2π)^{h+n+2−2s}(h+n+2)!).
pub fn a_weight(n: usize, h: usize, s: usize) -> ExactScalar {
    let num = fact(h + n - s).pow(2) * fact(s).pow(2) * fact(n - s).pow(2);
    let e = (h + n + 2) as i32 - 2 * s as i32;
    num * ExactScalar::two_pi_pow(-e) * fact(h + n + 2).inv().expect("nonzero")
}

/// The weight with a bare square (h+n−s)² in place of [(h+n−s)!]².
pub fn a_weight_bracket(n: usize, h: usize, s: usize) -> ExactScalar {
    let m = (h + n - s) as i64;
    let num = ExactScalar::int(m * m) * fact(s).pow(2) * fact(n - s).pow(2);
    let e = (h + n + 2) as i32 - 2 * s as i32;
    num * ExactScalar::two_pi_pow(-e) * fact(h + n + 2).inv().expect("nonzero")
}

/// (k+n)! / ((k+n+1)(k+n+2)(2π)^k).
pub fn atilde_weight(n: usize, k: usize) -> ExactScalar {
    let d = ((k + n + 1) * (k + n + 2)) as i64;
    fact(k + n) * ExactScalar::ratio(1, d) * ExactScalar::two_pi_pow(-(k as i32))
}

/// Σ w(h,s) conj(β^g_{h,s}) β^f_{h,s}.
pub fn inner_a(f: &ASpaceElement, g: &ASpaceElement) -> Result<ExactQuat> {
    if f.n != g.n {
        return Err(Error::OrderMismatch {
            left: f.n + 1,
            right: g.n + 1,
        });
    }
    let mut acc = ExactQuat::zero();
    for h in 0..f.beta.len().min(g.beta.len()) {
        for s in 0..=f.n {
            let (a, b) = (&f.beta[h][s], &g.beta[h][s]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc = &acc + &(&b.conj() * a).scale(&a_weight(f.n, h, s));
        }
    }
    Ok(acc)
}

pub fn inner_atilde(f: &ATildeElement, g: &ATildeElement) -> Result<ExactQuat> {
    if f.n != g.n {
        return Err(Error::OrderMismatch {
            left: f.n + 1,
            right: g.n + 1,
        });
    }
    let mut acc = ExactQuat::zero();
    for (k, (a, b)) in f.beta.iter().zip(&g.beta).enumerate() {
        if !a.is_zero() && !b.is_zero() {
            acc = &acc + &(&b.conj() * a).scale(&atilde_weight(f.n, k));
        }
    }
    Ok(acc)
}

/// Σ_{j≥n+2} (2π)^j j! |α_j|².
pub fn fock_tail_sum(n: usize, alpha: &[ExactQuat]) -> ExactScalar {
    let mut sum = ExactScalar::zero();
    for (j, a) in alpha.iter().enumerate().skip(n + 2) {
        sum = &sum + &(ExactScalar::two_pi_pow(j as i32) * fact(j) * a.norm_sq());
    }
    sum
}

fn tail(n: usize, alpha: &[ExactQuat]) -> Vec<ExactQuat> {
    alpha
        .iter()
        .enumerate()
        .map(|(j, a)| if j >= n + 2 { a.clone() } else { ExactQuat::zero() })
        .collect()
}

/// β_{h,s} = −2n!(2π)^{h+n+2}(−1)^s(h+n+2)!(2π)^{n−s}/(s!(n−s)!(h+n−s)!) α_{h+n+2}.
pub fn range_c_beta(n: usize, alpha: &[ExactQuat]) -> ASpaceElement {
    let h_len = alpha.len().saturating_sub(n + 2);
    let mut out = ASpaceElement::zeros(n, h_len);
    for h in 0..h_len {
        let a = &alpha[h + n + 2];
        for s in 0..=n {
            let sign = if s % 2 == 0 { -2 } else { 2 };
            let num = ExactScalar::int(sign) * fact(n) * fact(h + n + 2);
            let den = fact(s) * fact(n - s) * fact(h + n - s);
            let c = num
                * ExactScalar::two_pi_pow((h + 2 * n + 2 - s) as i32)
                * den.inv().expect("nonzero");
            out.beta[h][s] = a.scale(&c);
        }
    }
    out
}

/// β_h = −2^{n+1}(2π)^{2(n+1)} n! (h+n+2)(h+n+1)(2π)^h α_{h+n+2}.
pub fn range_tau_beta(n: usize, alpha: &[ExactQuat]) -> ATildeElement {
    let h_len = alpha.len().saturating_sub(n + 2);
    let beta = (0..h_len)
        .map(|h| {
            let c = ExactScalar::bigint(
                -BigInt::from(2).pow(n as u32 + 1) * factorial(n as u64) * BigInt::from((h + n + 2) * (h + n + 1)),
            ) * ExactScalar::two_pi_pow((2 * n + 2 + h) as i32);
            alpha[h + n + 2].scale(&c)
        })
        .collect();
    ATildeElement::new(n, beta)
}

/// 4 n! (n+1)! (2π)^{2n}.
pub fn range_c_norm_constant(n: usize) -> ExactScalar {
    ExactScalar::int(4) * fact(n) * fact(n + 1) * ExactScalar::two_pi_pow(2 * n as i32)
}

/// 4^{n+1} (2π)^{3n+2} (n!)².
pub fn range_tau_norm_constant(n: usize) -> ExactScalar {
    ExactScalar::bigint(BigInt::from(4).pow(n as u32 + 1))
        * ExactScalar::two_pi_pow(3 * n as i32 + 2)
        * fact(n).pow(2)
}

fn params(r: VerificationReport, n: usize, alpha: &[ExactQuat]) -> VerificationReport {
    r.param("n", n).param("len", alpha.len())
}

fn scalar_err(a: &ExactScalar, b: &ExactScalar) -> f64 {
    (a.to_f64() - b.to_f64()).abs()
}

/// The range-of-C coefficients expand C_{n+1}(Σ_{j≥n+2} H_{n,j}α_j), and their factorial-weight
/// norm equals 4n!(n+1)!(2π)^{2n} times the Fock tail sum.
pub fn check_range_c_norm(n: usize, alpha: &[ExactQuat]) -> VerificationReport {
    let r = params(VerificationReport::exact("range_C_norm"), n, alpha);
    let beta = range_c_beta(n, alpha);
    let image = map_c(&assemble_fock_series(&tail(n, alpha), n as u32));
    if beta.to_ncpoly() != image {
        return r.fail(beta.to_ncpoly().max_abs_coeff_diff(&image), "β expansion differs from the C image");
    }
    let lhs = inner_a(&beta, &beta).expect("same n");
    let rhs = Quaternion::real(&range_c_norm_constant(n) * &fock_tail_sum(n, alpha));
    if lhs != rhs {
        return r.fail(scalar_err(&lhs.w, &rhs.w), "weighted β-sum differs from constant × tail sum");
    }
    r.note("weight uses [(h+n−s)!]²")
}

/// The weighted sum is asserted to equal ‖f‖² itself; it equals a multiple of the tail only.
pub fn check_range_c_norm_literal(n: usize, alpha: &[ExactQuat]) -> VerificationReport {
    let r = params(VerificationReport::exact("range_C_norm_literal"), n, alpha);
    let beta = range_c_beta(n, alpha);
    let lhs = inner_a(&beta, &beta).expect("same n").w;
    let full: ExactScalar = alpha
        .iter()
        .enumerate()
        .fold(ExactScalar::zero(), |acc, (j, a)| {
            &acc + &(ExactScalar::two_pi_pow(j as i32) * fact(j) * a.norm_sq())
        });
    if lhs == full {
        r
    } else {
        r.flag(format!(
            "weighted sum is {} × Σ_{{j≥n+2}}(2π)^j j!|α_j|², not ‖f‖²",
            range_c_norm_constant(n)
        ))
    }
}

/// The bare-square bracket weight (h+n−s)² against the constant × tail chain.
pub fn check_a_weight_bracket(n: usize, alpha: &[ExactQuat]) -> VerificationReport {
    let r = params(VerificationReport::exact("A_weight_bracket_reading"), n, alpha);
    let beta = range_c_beta(n, alpha);
    let mut lhs = ExactScalar::zero();
    for (h, row) in beta.beta.iter().enumerate() {
        for (s, b) in row.iter().enumerate() {
            lhs = &lhs + &(a_weight_bracket(n, h, s) * b.norm_sq());
        }
    }
    let rhs = &range_c_norm_constant(n) * &fock_tail_sum(n, alpha);
    if lhs == rhs {
        r
    } else {
        r.flag("bare-square weight (h+n−s)² does not reach the stated constant; the factorial reading does")
    }
}

/// Range-of-τ coefficients expand τ_{n+1}(Σ_{j≥n+2} H_{n,j}α_j), with norm 4^{n+1}(2π)^{3n+2}(n!)² × tail.
pub fn check_range_tau_norm(n: usize, alpha: &[ExactQuat]) -> VerificationReport {
    let r = params(VerificationReport::exact("range_tau_norm"), n, alpha);
    let beta = range_tau_beta(n, alpha);
    let image = map_tau(&assemble_fock_series(&tail(n, alpha), n as u32));
    if beta.to_ncpoly() != image {
        return r.fail(beta.to_ncpoly().max_abs_coeff_diff(&image), "β expansion differs from the τ image");
    }
    let lhs = inner_atilde(&beta, &beta).expect("same n");
    let rhs = Quaternion::real(&range_tau_norm_constant(n) * &fock_tail_sum(n, alpha));
    if lhs != rhs {
        return r.fail(scalar_err(&lhs.w, &rhs.w), "weighted β-sum differs from constant × tail sum");
    }
    r
}

/// The n = 0 weight against the (h!)²/((2π)^h(h+2)!) weight of the regular-case space.
pub fn check_a1_regular_weight(h: usize) -> VerificationReport {
    let r = VerificationReport::exact("A1_regular_weight").param("h", h);
    let regular = fact(h).pow(2) * ExactScalar::two_pi_pow(-(h as i32)) * fact(h + 2).inv().expect("nonzero");
    let ours = a_weight(0, h, 0);
    if ours == regular {
        r
    } else {
        let ratio = ours.checked_div(&regular).map(|q| q.to_string()).unwrap_or_default();
        r.flag(format!("n = 0 weight is {ratio} times the regular-case weight"))
    }
}

fn check_blocks<T>(f: &[T], g: &[T], n_of: impl Fn(&T) -> usize) -> Result<()> {
    if f.len() != g.len() {
        return Err(Error::OrderMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    for (i, b) in f.iter().chain(g).enumerate() {
        let n = i % f.len().max(1);
        if n_of(b) != n {
            return Err(Error::Index(format!("block {n} has order parameter {}", n_of(b))));
        }
    }
    Ok(())
}

/// (n+1)!(2π)^n.
pub fn frak_a_normalizer(n: usize) -> ExactScalar {
    fact(n + 1) * ExactScalar::two_pi_pow(n as i32)
}

/// 4^n (2π)^n n!.
pub fn frak_atilde_normalizer(n: usize) -> ExactScalar {
    ExactScalar::bigint(BigInt::from(4).pow(n as u32)) * ExactScalar::two_pi_pow(n as i32) * fact(n)
}

/// Σ_n ⟨f_n, g_n⟩_A / ((n+1)!(2π)^n); block n must have order parameter n.
pub fn inner_frak_a(f: &[ASpaceElement], g: &[ASpaceElement]) -> Result<ExactQuat> {
    check_blocks(f, g, |b| b.n)?;
    let mut acc = ExactQuat::zero();
    for (n, (a, b)) in f.iter().zip(g).enumerate() {
        let v = inner_a(a, b)?;
        acc = &acc + &v.scale(&frak_a_normalizer(n).inv().expect("nonzero"));
    }
    Ok(acc)
}

/// Σ_n ⟨f_n, g_n⟩_Ã / (4^n (2π)^n n!).
pub fn inner_frak_atilde(f: &[ATildeElement], g: &[ATildeElement]) -> Result<ExactQuat> {
    check_blocks(f, g, |b| b.n)?;
    let mut acc = ExactQuat::zero();
    for (n, (a, b)) in f.iter().zip(g).enumerate() {
        let v = inner_atilde(a, b)?;
        acc = &acc + &v.scale(&frak_atilde_normalizer(n).inv().expect("nonzero"));
    }
    Ok(acc)
}

/// The block inner product is the sum of its single-block restrictions.
pub fn check_direct_sum(f: &[ASpaceElement], g: &[ASpaceElement]) -> Result<VerificationReport> {
    let whole = inner_frak_a(f, g)?;
    let mut parts = ExactQuat::zero();
    for n in 0..f.len() {
        let iso = |v: &[ASpaceElement]| -> Vec<ASpaceElement> {
            v.iter()
                .enumerate()
                .map(|(m, b)| if m == n { b.clone() } else { ASpaceElement::zeros(m, 0) })
                .collect()
        };
        parts = &parts + &inner_frak_a(&iso(f), &iso(g))?;
    }
    let r = VerificationReport::exact("frak_A_direct_sum").param("N", f.len().saturating_sub(1));
    Ok(if whole == parts {
        r
    } else {
        r.fail(whole.to_f64().max_abs_diff(&parts.to_f64()), "block sum is not additive")
    })
}

/// Ratio of an inner product to a real scalar, when the quotient is a single real term.
pub fn real_ratio(v: &ExactQuat, d: &ExactScalar) -> Option<ExactScalar> {
    if !(v.x.is_zero() && v.y.is_zero() && v.z.is_zero()) {
        return None;
    }
    v.w.checked_div(d).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn unit_at(len: usize, j: usize, q: ExactQuat) -> Vec<ExactQuat> {
        let mut v = vec![ExactQuat::zero(); len];
        v[j] = q;
        v
    }

    #[test]
    fn weight_examples() {
        let f = ASpaceElement::new(0, vec![vec![ExactQuat::one()]]).unwrap();
        let v = inner_a(&f, &f).unwrap();
        assert_eq!(v, Quaternion::real(ExactScalar::ratio(1, 2) * ExactScalar::two_pi_pow(-2)));
        assert_eq!(atilde_weight(0, 0), ExactScalar::ratio(1, 2));
        assert_eq!(atilde_weight(1, 0), ExactScalar::ratio(1, 6));
        let g = ASpaceElement::new(0, vec![vec![ExactQuat::zero()], vec![ExactQuat::one()]]).unwrap();
        assert!(inner_a(&f, &g).unwrap().is_zero());
        assert!(inner_a(&f, &ASpaceElement::zeros(1, 1)).is_err());
        assert!(ASpaceElement::new(1, vec![vec![ExactQuat::one()]]).is_err());
    }

    #[test]
    fn range_norms() {
        for n in 0..=2 {
            assert!(check_range_c_norm(n, &unit_at(n + 1, 0, ExactQuat::one())).passed());
            let a = unit_at(n + 4, n + 2, ExactQuat::from_ints(1, 2, 0, -1));
            assert!(check_range_c_norm(n, &a).passed());
            assert!(check_range_tau_norm(n, &a).passed());
            assert_eq!(check_range_c_norm_literal(n, &a).status, Status::Flagged);
            assert_eq!(check_a_weight_bracket(n, &a).status, Status::Flagged);
        }
        let a = unit_at(6, 5, ExactQuat::i());
        assert!(check_range_tau_norm(2, &a).passed());
        let beta = range_c_beta(0, &unit_at(3, 2, ExactQuat::one()));
        let v = inner_a(&beta, &beta).unwrap();
        assert_eq!(v.w, ExactScalar::int(8) * ExactScalar::two_pi_pow(2));
    }

    #[test]
    fn regular_weight_is_flagged() {
        let r = check_a1_regular_weight(3);
        assert_eq!(r.status, Status::Flagged);
    }

    #[test]
    fn block_products() {
        let f0 = ASpaceElement::new(0, vec![vec![ExactQuat::one()]]).unwrap();
        let f1 = ASpaceElement::new(1, vec![vec![ExactQuat::i(), ExactQuat::one()]]).unwrap();
        let single = inner_frak_a(std::slice::from_ref(&f0), std::slice::from_ref(&f0)).unwrap();
        assert_eq!(single, inner_a(&f0, &f0).unwrap());
        let blocks = vec![f0, f1];
        assert!(check_direct_sum(&blocks, &blocks).unwrap().passed());
        let t2 = ATildeElement::new(2, vec![ExactQuat::one()]);
        let z = |n| ATildeElement::new(n, vec![]);
        let v = inner_frak_atilde(&[z(0), z(1), t2.clone()], &[z(0), z(1), t2.clone()]).unwrap();
        let per = inner_atilde(&t2, &t2).unwrap();
        let d = ExactScalar::int(32) * ExactScalar::two_pi_pow(2);
        assert_eq!(v, per.scale(&d.inv().unwrap()));
        assert!(inner_frak_a(&blocks, &blocks[..1]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let f = ASpaceElement::new(1, vec![vec![ExactQuat::i(), ExactQuat::from_ints(1, 0, 0, 3)]]).unwrap();
        assert_eq!(ASpaceElement::from_json(&f.to_json()).unwrap(), f);
        let t = ATildeElement::new(2, vec![ExactQuat::j()]);
        assert_eq!(ATildeElement::from_json(&t.to_json()).unwrap(), t);
        let err = ASpaceElement::from_json(&json!({"n": 1, "beta": [[1]]})).unwrap_err();
        assert!(format!("{err:?}").contains("beta[0]"));
    }
}
