//! The polyanalytic Fueter maps C_{n+1} and τ_{n+1} and their identity checks.
//!
//! Laplacians are always taken on the full expansion; closed forms serve only as
//! independent comparisons.

use num_bigint::BigInt;

use crate::algebra::combinat::factorial;
use crate::algebra::{ExactQuat, ExactScalar};
use crate::appell::{m_poly, q_poly};
use crate::error::{Error, Result};
use crate::ncpoly::NCPoly;
use crate::report::VerificationReport;
use crate::slicepoly::SliceCoeffMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapTag {
    C,
    Tau,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FueterMapResult {
    pub input: SliceCoeffMatrix,
    pub output: NCPoly,
    pub map_tag: MapTag,
    pub order: usize,
}

/// C_{n+1} f = Σ_k x0^k Δ f_k.
pub fn map_c(f: &SliceCoeffMatrix) -> NCPoly {
    let mut out = NCPoly::zero();
    for k in 0..f.order() {
        let row = f.row(k);
        if row.is_zero() {
            continue;
        }
        out.add_assign_ref(&row.to_ncpoly().laplacian().mul_x0_pow(k as u32));
    }
    out
}

/// τ_{n+1} f = Δ V^n f with V^n f = 2^n n! f_n.
pub fn map_tau(f: &SliceCoeffMatrix) -> NCPoly {
    f.global_v_power().to_ncpoly().laplacian()
}

fn two_pow_fact(n: usize) -> BigInt {
    BigInt::from(2).pow(n as u32) * factorial(n as u64)
}

/// 2^n n! Δ(Σ_k f_k): τ applied to every basis term q̄^k q^j as if each were top-row.
pub fn map_tau_termwise(f: &SliceCoeffMatrix) -> NCPoly {
    let mut sum = NCPoly::zero();
    for k in 0..f.order() {
        sum.add_assign_ref(&f.row(k).to_ncpoly());
    }
    sum.laplacian().scale_int(two_pow_fact(f.n()))
}

pub fn apply_map(tag: MapTag, f: &SliceCoeffMatrix) -> FueterMapResult {
    let output = match tag {
        MapTag::C => map_c(f),
        MapTag::Tau => map_tau(f),
    };
    FueterMapResult {
        input: f.clone(),
        output,
        map_tag: tag,
        order: f.order(),
    }
}

/// −2(j−1)j M_{k,j−2}, zero for j < 2.
pub fn c_action_closed(k: u32, j: u32) -> NCPoly {
    if j < 2 {
        return NCPoly::zero();
    }
    m_poly(k, j as i64 - 2).scale_int(-2 * (j as i64 - 1) * j as i64)
}

/// −2^{n+1} n! j(j−1) Q_{j−2}, zero for j < 2.
pub fn tau_action_closed(n: u32, j: u32) -> NCPoly {
    if j < 2 {
        return NCPoly::zero();
    }
    let c = -BigInt::from(2) * two_pow_fact(n as usize) * BigInt::from(j as i64 * (j as i64 - 1));
    q_poly(j as i64 - 2).scale_int(c)
}

fn basis(n: u32, k: u32, j: u32) -> Result<SliceCoeffMatrix> {
    if k > n {
        return Err(Error::Domain(format!("row {k} exceeds n = {n}")));
    }
    SliceCoeffMatrix::monomial(n as usize + 1, k as usize, j as usize, ExactQuat::one())
}

pub fn check_c_action(n: u32, k: u32, j: u32) -> Result<VerificationReport> {
    let f = basis(n, k, j)?;
    Ok(VerificationReport::exact("C_action")
        .param("n", n)
        .param("k", k)
        .param("j", j)
        .compare_polys(&map_c(&f), &c_action_closed(k, j)))
}

/// τ_{n+1}(q̄^k q^j) against the k-independent closed form.
///
/// Under V^n only the row k = n survives; for k < n and j ≥ 2 the closed form is the
/// term-by-term reading, which is checked and the discrepancy flagged.
pub fn check_tau_action(n: u32, k: u32, j: u32) -> Result<VerificationReport> {
    let f = basis(n, k, j)?;
    let r = VerificationReport::exact("tau_action")
        .param("n", n)
        .param("k", k)
        .param("j", j);
    let closed = tau_action_closed(n, j);
    if k == n || j < 2 {
        return Ok(r.compare_polys(&map_tau(&f), &closed));
    }
    let termwise = map_tau_termwise(&f);
    if termwise != closed {
        return Ok(r.fail(termwise.max_abs_coeff_diff(&closed), "term-by-term image differs from the closed form"));
    }
    if !map_tau(&f).is_zero() {
        return Ok(r.fail(1.0, "V^n image of a row below n is not zero"));
    }
    Ok(r.flag("V^n annihilates rows k < n, so τ(q̄^k q^j) = 0; the k-independent closed form holds only term by term"))
}

/// D^n C_{n+1} f = 2^{−n} τ_{n+1} f.
pub fn check_relation_r1(f: &SliceCoeffMatrix) -> VerificationReport {
    let n = f.n();
    let lhs = map_c(f).fueter_d_pow(n as u32);
    let rhs = map_tau(f).scale(&ExactScalar::rational(num_rational::BigRational::new(
        BigInt::from(1),
        BigInt::from(2).pow(n as u32),
    )));
    VerificationReport::exact("relation_R1")
        .param("n", n)
        .param("trunc", f.trunc())
        .compare_polys(&lhs, &rhs)
}

/// D^n M_{k,j−2} = n! Q_{j−2} if k = n, else 0.
pub fn check_dn_m(n: u32, k: u32, j: u32) -> Result<VerificationReport> {
    if j < 2 {
        return Err(Error::Domain("D^n M_{k,j−2} needs j ≥ 2".into()));
    }
    if k > n {
        return Err(Error::Domain(format!("k = {k} exceeds n = {n}")));
    }
    let lhs = m_poly(k, j as i64 - 2).fueter_d_pow(n);
    let rhs = if k == n {
        q_poly(j as i64 - 2).scale_int(factorial(n as u64))
    } else {
        NCPoly::zero()
    };
    Ok(VerificationReport::exact("Dn_M")
        .param("n", n)
        .param("k", k)
        .param("j", j)
        .compare_polys(&lhs, &rhs))
}

/// β_{k,s} = −2(s+1)(s+2) α_{k,s+2}.
pub fn range_c_series_coeffs(f: &SliceCoeffMatrix) -> Vec<Vec<ExactQuat>> {
    f.rows()
        .iter()
        .map(|row| {
            (0..row.len().saturating_sub(2))
                .map(|s| row[s + 2].scale(&ExactScalar::int(-2 * (s as i64 + 1) * (s as i64 + 2))))
                .collect()
        })
        .collect()
}

/// Σ_{k,s} M_{k,s} β_{k,s}.
pub fn m_series(beta: &[Vec<ExactQuat>]) -> NCPoly {
    let mut out = NCPoly::zero();
    for (k, row) in beta.iter().enumerate() {
        for (s, b) in row.iter().enumerate() {
            if !b.is_zero() {
                out.add_assign_ref(&m_poly(k as u32, s as i64).mul_right(b));
            }
        }
    }
    out
}

/// Σ_s Q_{s+shift} β_s.
pub fn q_series(beta: &[ExactQuat], shift: usize) -> NCPoly {
    let mut out = NCPoly::zero();
    for (s, b) in beta.iter().enumerate() {
        if !b.is_zero() {
            out.add_assign_ref(&q_poly((s + shift) as i64).mul_right(b));
        }
    }
    out
}

pub fn check_range_c_series(f: &SliceCoeffMatrix) -> VerificationReport {
    VerificationReport::exact("range_C_series")
        .param("n", f.n())
        .param("trunc", f.trunc())
        .compare_polys(&m_series(&range_c_series_coeffs(f)), &map_c(f))
}

/// The two readings of the τ range coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TauRangeCoeffs {
    /// β_s = −2^{n+1} n! (s+2)(s+1) α_{n,s+2}.
    pub top_row: Vec<ExactQuat>,
    /// β_s = −2^{n+1} n! (s+2)(s+1) Σ_k α_{k,s+2}.
    pub termwise: Vec<ExactQuat>,
}

pub fn range_tau_series_coeffs(f: &SliceCoeffMatrix) -> TauRangeCoeffs {
    let n = f.n();
    let len = (f.trunc() + 1).saturating_sub(2);
    let c = |s: usize| {
        ExactScalar::bigint(-BigInt::from(2) * two_pow_fact(n) * BigInt::from((s + 2) * (s + 1)))
    };
    let top_row = (0..len).map(|s| f.get(n, s + 2).scale(&c(s))).collect();
    let termwise = (0..len)
        .map(|s| {
            let sum = (0..f.order()).fold(ExactQuat::zero(), |acc, k| &acc + &f.get(k, s + 2));
            sum.scale(&c(s))
        })
        .collect();
    TauRangeCoeffs { top_row, termwise }
}

/// Both readings against direct expansion, plus a flag when they disagree.
pub fn check_range_tau_series(f: &SliceCoeffMatrix) -> Vec<VerificationReport> {
    let coeffs = range_tau_series_coeffs(f);
    let top = VerificationReport::exact("range_tau_series_top_row")
        .param("n", f.n())
        .param("trunc", f.trunc())
        .compare_polys(&q_series(&coeffs.top_row, 0), &map_tau(f));
    let termwise = VerificationReport::exact("range_tau_series_termwise")
        .param("n", f.n())
        .param("trunc", f.trunc())
        .compare_polys(&q_series(&coeffs.termwise, 0), &map_tau_termwise(f));
    let mut out = vec![top, termwise];
    if coeffs.top_row != coeffs.termwise {
        out.push(
            VerificationReport::exact("range_tau_series_readings")
                .param("n", f.n())
                .param("trunc", f.trunc())
                .flag("summing β over all rows disagrees with the V^n image, which keeps only row n"),
        );
    }
    out
}

/// C and τ are right-linear: map(f + gλ) = map(f) + map(g)λ.
pub fn check_linearity(f: &SliceCoeffMatrix, g: &SliceCoeffMatrix, lambda: &ExactQuat) -> Result<VerificationReport> {
    if f.order() != g.order() {
        return Err(Error::OrderMismatch {
            left: f.order(),
            right: g.order(),
        });
    }
    let h = f.add_scaled(g, lambda)?;
    let r = VerificationReport::exact("map_linearity").param("n", f.n());
    let c_ok = map_c(&h) == &map_c(f) + &map_c(g).mul_right(lambda);
    let t_ok = map_tau(&h) == &map_tau(f) + &map_tau(g).mul_right(lambda);
    Ok(match (c_ok, t_ok) {
        (true, true) => r,
        (false, _) => r.fail(1.0, "C is not right-linear"),
        (_, false) => r.fail(1.0, "τ is not right-linear"),
    })
}

/// D^{n+1}(C f) = 0 and D(τ f) = 0.
pub fn check_range_membership(f: &SliceCoeffMatrix) -> VerificationReport {
    let n = f.n() as u32;
    let r = VerificationReport::exact("range_membership").param("n", n).param("trunc", f.trunc());
    if !map_c(f).fueter_d_pow(n + 1).is_zero() {
        return r.fail(1.0, "C image is not polyanalytic of order n+1");
    }
    if !map_tau(f).fueter_d().is_zero() {
        return r.fail(1.0, "τ image is not Fueter regular");
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn unit(order: usize, k: usize, j: usize) -> SliceCoeffMatrix {
        SliceCoeffMatrix::monomial(order, k, j, ExactQuat::one()).unwrap()
    }

    #[test]
    fn map_c_examples() {
        assert!(map_c(&unit(2, 1, 1)).is_zero());
        assert!(map_c(&unit(3, 2, 0)).is_zero());
        assert_eq!(map_c(&unit(2, 1, 2)), NCPoly::var(0).scale_int(-4));
        assert_eq!(map_c(&unit(1, 0, 3)), q_poly(1).scale_int(-12));
    }

    #[test]
    fn map_tau_examples() {
        assert!(map_tau(&unit(3, 1, 1)).is_zero());
        assert_eq!(map_tau(&unit(2, 1, 2)), NCPoly::one().scale_int(-8));
        assert!(map_tau(&unit(3, 1, 5)).is_zero());
    }

    #[test]
    fn action_checks() {
        assert!(check_c_action(2, 1, 4).unwrap().passed());
        assert_eq!(c_action_closed(1, 4), m_poly(1, 2).scale_int(-24));
        assert!(check_c_action(0, 0, 2).unwrap().passed());
        assert!(check_c_action(1, 2, 2).is_err());
        assert!(check_tau_action(1, 1, 3).unwrap().passed());
        assert_eq!(tau_action_closed(1, 3), q_poly(1).scale_int(-24));
        assert_eq!(check_tau_action(1, 0, 3).unwrap().status, Status::Flagged);
        assert!(check_tau_action(1, 0, 1).unwrap().passed());
        assert!(check_tau_action(0, 0, 5).unwrap().passed());
    }

    #[test]
    fn r1_and_dn_m() {
        assert!(check_relation_r1(&unit(2, 1, 3)).passed());
        assert!(check_relation_r1(&unit(1, 0, 4)).passed());
        assert!(check_dn_m(1, 0, 4).unwrap().passed());
        assert!(check_dn_m(2, 2, 4).unwrap().passed());
        assert!(check_dn_m(3, 1, 5).unwrap().passed());
        assert!(check_dn_m(1, 0, 1).is_err());
    }

    #[test]
    fn range_coefficients() {
        let b = range_c_series_coeffs(&unit(1, 0, 2));
        assert_eq!(b[0][0], ExactQuat::from_ints(-4, 0, 0, 0));
        let f = SliceCoeffMatrix::monomial(2, 1, 3, ExactQuat::i()).unwrap();
        assert_eq!(range_c_series_coeffs(&f)[1][1], ExactQuat::from_ints(0, -12, 0, 0));
        assert!(check_range_c_series(&f).passed());
        let t = range_tau_series_coeffs(&unit(2, 1, 2));
        assert_eq!(t.top_row[0], ExactQuat::from_ints(-8, 0, 0, 0));
        let mut g = unit(2, 1, 2);
        g.set(0, 2, ExactQuat::one()).unwrap();
        let t = range_tau_series_coeffs(&g);
        assert_eq!(t.top_row[0], ExactQuat::from_ints(-8, 0, 0, 0));
        assert_eq!(t.termwise[0], ExactQuat::from_ints(-16, 0, 0, 0));
        let reports = check_range_tau_series(&g);
        assert!(reports[0].passed() && reports[1].passed());
        assert_eq!(reports[2].status, Status::Flagged);
    }

    #[test]
    fn linearity_and_membership() {
        let mut f = unit(3, 2, 5);
        f.set(1, 3, ExactQuat::from_ints(1, -1, 2, 0)).unwrap();
        let g = SliceCoeffMatrix::monomial(3, 0, 5, ExactQuat::j()).unwrap();
        assert!(check_linearity(&f, &g, &ExactQuat::from_ints(2, 0, 1, 1)).unwrap().passed());
        assert!(check_range_membership(&f).passed());
    }
}
