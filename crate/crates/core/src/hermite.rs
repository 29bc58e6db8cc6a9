//! Weighted Hermite functions, the quaternionic Hermite polynomials H_{m,p}, the exact
//! slice Gaussian moments and the true polyanalytic Fock norm.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::algebra::combinat::{factorial, neg_one_pow};
use crate::algebra::{ExactQuat, ExactScalar, Quaternion};
use crate::error::{Error, Result};
use crate::ncpoly::NCPoly;
use crate::numeric::gauss_legendre;
use crate::report::VerificationReport;
use crate::slicepoly::SliceCoeffMatrix;

/// Univariate polynomial Σ c_i x^i with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<ExactScalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: ExactScalar) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ExactScalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn scale(&self, s: &ExactScalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul_x(&self) -> UniPoly {
        if self.coeffs.is_empty() {
            return UniPoly::default();
        }
        let mut c = vec![ExactScalar::zero()];
        c.extend(self.coeffs.iter().cloned());
        UniPoly::new(c)
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return UniPoly::default();
        }
        let mut c = vec![ExactScalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UniPoly::new(c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &ExactScalar::int(i as i64))
                .collect(),
        )
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }
}

/// P(x)·e^{−νx²/2} when `hermite_function`, otherwise the bare polynomial P.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianPoly1D {
    pub poly: UniPoly,
    pub gauss_rate: ExactScalar,
    pub hermite_function: bool,
}

fn check_rate(nu: &ExactScalar) -> Result<()> {
    match nu.single_term() {
        Some((c, _)) if c.is_positive() => Ok(()),
        _ => Err(Error::Domain("Gaussian rate must be a single positive term".into())),
    }
}

fn two_pi() -> ExactScalar {
    ExactScalar::two_pi_pow(1)
}

/// Polynomial part of h_k^ν = (−1)^k e^{νx²/2} d^k/dx^k e^{−νx²}, via P_{k+1} = 2νxP_k − P_k'.
pub fn hermite_h(k: u32, nu: &ExactScalar) -> Result<GaussianPoly1D> {
    check_rate(nu)?;
    let two_nu = nu * &ExactScalar::int(2);
    let mut p = UniPoly::constant(ExactScalar::one());
    for _ in 0..k {
        p = p.mul_x().scale(&two_nu).sub(&p.derivative());
    }
    Ok(GaussianPoly1D {
        poly: p,
        gauss_rate: nu.clone(),
        hermite_function: true,
    })
}

/// ‖h_k^ν‖² = 2^k ν^k k! (π/ν)^{1/2}.
pub fn hermite_norm_sq(k: u32, nu: &ExactScalar) -> Result<ExactScalar> {
    check_rate(nu)?;
    let root = (ExactScalar::pi_pow(1) * nu.inv()?).sqrt_term()?;
    let c = ExactScalar::bigint(BigInt::from(2).pow(k) * factorial(k as u64));
    Ok(&(&c * &nu.pow(k)) * &root)
}

/// ∫ x^m e^{−νx²} dx = (m−1)!!/(2ν)^{m/2} (π/ν)^{1/2} for even m, 0 for odd m.
pub fn gaussian_moment_1d(m: u32, nu: &ExactScalar) -> Result<ExactScalar> {
    check_rate(nu)?;
    if m % 2 == 1 {
        return Ok(ExactScalar::zero());
    }
    let half = m / 2;
    let double_fact: BigInt = (1..=half as u64).map(|i| BigInt::from(2 * i - 1)).product();
    let two_nu_pow = (nu * &ExactScalar::int(2)).pow(half);
    let root = (ExactScalar::pi_pow(1) * nu.inv()?).sqrt_term()?;
    Ok(&ExactScalar::bigint(double_fact) * &(&two_nu_pow.inv()? * &root))
}

/// ∫ P_k(x)² e^{−νx²} dx computed from 1D moments.
pub fn hermite_norm_sq_by_moments(k: u32, nu: &ExactScalar) -> Result<ExactScalar> {
    let p = hermite_h(k, nu)?.poly;
    let sq = p.mul(&p);
    let mut acc = ExactScalar::zero();
    for (i, c) in sq.coeffs().iter().enumerate() {
        acc = &acc + &(c * &gaussian_moment_1d(i as u32, nu)?);
    }
    Ok(acc)
}

/// H_n^{2π}(y) = (−1)^n e^{2πy²} dⁿ/dyⁿ e^{−2πy²} = n! Σ_j (−1)^j (2π)^j (4πy)^{n−2j}/(j!(n−2j)!).
pub fn hermite_h2pi(n: u32) -> UniPoly {
    let mut c = vec![ExactScalar::zero(); n as usize + 1];
    for j in 0..=(n / 2) {
        let r = BigRational::new(
            factorial(n as u64),
            factorial(j as u64) * factorial((n - 2 * j) as u64),
        ) * neg_one_pow(j as u64);
        let s = ExactScalar::rational(r)
            * ExactScalar::two_pi_pow(j as i32)
            * ExactScalar::two_pi_pow((n - 2 * j) as i32)
            * ExactScalar::int(2).pow(n - 2 * j);
        c[(n - 2 * j) as usize] = s;
    }
    UniPoly::new(c)
}

/// The sum n! Σ_j (−1)^j (4πy)^{n−2j}/(j!(n−2j)!) without the (2π)^j factor.
pub fn hermite_h2pi_without_rate(n: u32) -> UniPoly {
    let mut c = vec![ExactScalar::zero(); n as usize + 1];
    for j in 0..=(n / 2) {
        let r = BigRational::new(
            factorial(n as u64),
            factorial(j as u64) * factorial((n - 2 * j) as u64),
        ) * neg_one_pow(j as u64);
        c[(n - 2 * j) as usize] = ExactScalar::rational(r)
            * ExactScalar::two_pi_pow((n - 2 * j) as i32)
            * ExactScalar::int(2).pow(n - 2 * j);
    }
    UniPoly::new(c)
}

pub fn check_h2pi_rodrigues(n: u32) -> VerificationReport {
    let r = VerificationReport::exact("hermite_H2pi_rodrigues").param("n", n);
    let rod = hermite_h(n, &two_pi()).expect("2π is a valid rate").poly;
    if rod == hermite_h2pi(n) {
        r
    } else {
        r.fail(1.0, "explicit sum differs from the Rodrigues polynomial")
    }
}

/// The explicit sum without (2π)^j agrees with the Rodrigues polynomial only for n ≤ 1.
pub fn check_h2pi_explicit_sum(n: u32) -> VerificationReport {
    let r = VerificationReport::exact("hermite_H2pi_explicit_sum").param("n", n);
    let rod = hermite_h(n, &two_pi()).expect("2π is a valid rate").poly;
    if rod == hermite_h2pi_without_rate(n) {
        r
    } else {
        r.flag("the stated explicit sum omits the factor (2π)^j; the Rodrigues definition is used")
    }
}

/// P_{k+1} = 2νxP_k − 2νkP_{k−1}, independent of the derivative recursion.
pub fn check_hermite_three_term(k: u32) -> VerificationReport {
    let nu = two_pi();
    let r = VerificationReport::exact("hermite_three_term").param("k", k);
    let pk = hermite_h(k, &nu).expect("valid").poly;
    let pk1 = hermite_h(k + 1, &nu).expect("valid").poly;
    let two_nu = &nu * &ExactScalar::int(2);
    let mut rhs = pk.mul_x().scale(&two_nu);
    if k > 0 {
        let pkm1 = hermite_h(k - 1, &nu).expect("valid").poly;
        rhs = rhs.sub(&pkm1.scale(&(&two_nu * &ExactScalar::int(k as i64))));
    }
    if pk1 == rhs {
        r
    } else {
        r.fail(1.0, "three-term recurrence violated")
    }
}

pub fn check_hermite_norm(k: u32) -> VerificationReport {
    let nu = two_pi();
    let r = VerificationReport::exact("hermite_norm").param("k", k);
    let a = hermite_norm_sq(k, &nu).expect("valid");
    let b = hermite_norm_sq_by_moments(k, &nu).expect("valid");
    if a == b {
        r
    } else {
        r.fail((a.to_f64() - b.to_f64()).abs(), "closed-form norm differs from the moment oracle")
    }
}

/// Polynomial in z̄, z on a slice: key (zbar exponent, z exponent).
pub type BivarPoly = BTreeMap<(u32, u32), ExactScalar>;

fn bivar_add(p: &mut BivarPoly, key: (u32, u32), c: ExactScalar) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(key).or_default();
    *e = &*e + &c;
    if e.is_zero() {
        p.remove(&key);
    }
}

/// (2π)^p (−1)^m e^{2πzz̄} ∂_z^m (z^p e^{−2πzz̄}) using ∂_z(P·G) = (∂_zP − 2πz̄P)·G.
pub fn qhermite_rodrigues_slice(m: u32, p: u32) -> BivarPoly {
    let tp = two_pi();
    let mut poly = BivarPoly::new();
    poly.insert((0, p), ExactScalar::one());
    for _ in 0..m {
        let mut next = BivarPoly::new();
        for (&(a, b), c) in &poly {
            if b > 0 {
                bivar_add(&mut next, (a, b - 1), c * &ExactScalar::int(b as i64));
            }
            bivar_add(&mut next, (a + 1, b), -(c * &tp));
        }
        poly = next;
    }
    let pre = ExactScalar::two_pi_pow(p as i32) * ExactScalar::rational(neg_one_pow(m as u64));
    poly.into_iter().map(|(k, c)| (k, &c * &pre)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct QHermitePoly {
    pub m: u32,
    pub p: u32,
    pub slice: SliceCoeffMatrix,
}

impl QHermitePoly {
    pub fn to_ncpoly(&self) -> NCPoly {
        self.slice.to_ncpoly()
    }

    pub fn to_bivar(&self) -> BivarPoly {
        let mut out = BivarPoly::new();
        for (k, row) in self.slice.rows().iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.insert((k as u32, j as u32), c.w.clone());
                }
            }
        }
        out
    }
}

/// Coefficient of q̄^{m−s} q^{p−s} in H_{m,p}.
pub fn qhermite_coeff(m: u32, p: u32, s: u32) -> ExactScalar {
    let r = BigRational::new(
        factorial(m as u64) * factorial(p as u64),
        factorial(s as u64) * factorial((m - s) as u64) * factorial((p - s) as u64),
    ) * neg_one_pow(s as u64);
    ExactScalar::rational(r) * ExactScalar::two_pi_pow((p + m - s) as i32)
}

/// H_{m,p} = (2π)^p m! Σ_{s ≤ min(m,p)} (−1)^s p!(2π)^{m−s}/(s!(m−s)!(p−s)!) q̄^{m−s} q^{p−s}.
pub fn qhermite(m: u32, p: u32) -> QHermitePoly {
    let mut slice = SliceCoeffMatrix::zeros(m as usize + 1, p as usize).expect("order ≥ 1");
    for s in 0..=m.min(p) {
        slice
            .set((m - s) as usize, (p - s) as usize, ExactQuat::real(qhermite_coeff(m, p, s)))
            .expect("in range");
    }
    QHermitePoly { m, p, slice }
}

pub fn check_qhermite_rodrigues(m: u32, p: u32) -> VerificationReport {
    let r = VerificationReport::exact("qhermite_rodrigues").param("m", m).param("p", p);
    if qhermite(m, p).to_bivar() == qhermite_rodrigues_slice(m, p) {
        r
    } else {
        r.fail(1.0, "closed form differs from the slice Rodrigues oracle")
    }
}

/// The stated closed form of H_{1,p}: (2π)^{p+1} q̄ q^p − (2π)^p p q^p.
pub fn check_h1p_closed_form(p: u32) -> VerificationReport {
    let r = VerificationReport::exact("qhermite_H1p_closed_form").param("p", p);
    let mut stated = BivarPoly::new();
    bivar_add(&mut stated, (1, p), ExactScalar::two_pi_pow(p as i32 + 1));
    bivar_add(
        &mut stated,
        (0, p),
        -(ExactScalar::two_pi_pow(p as i32) * ExactScalar::int(p as i64)),
    );
    if stated == qhermite(1, p).to_bivar() {
        r
    } else {
        r.flag("displayed second term −(2π)^p p q^p should be −(2π)^p p q^{p−1}")
    }
}

/// ∫_{C_I} z^a z̄^b e^{−2π|z|²} dλ = δ_ab a!/(2(2π)^a).
pub fn gaussian_moment(a: u32, b: u32) -> ExactScalar {
    if a != b {
        return ExactScalar::zero();
    }
    ExactScalar::rational(BigRational::new(factorial(a as u64), BigInt::from(2)))
        * ExactScalar::two_pi_pow(-(a as i32))
}

/// Polar quadrature of the slice moment: Gauss–Legendre in r on [0, 6], trapezoid in θ.
pub fn gaussian_moment_numeric(a: u32, b: u32) -> (f64, f64) {
    let (x, w) = gauss_legendre(80);
    let r_max = 6.0;
    let n_theta = 64;
    let mut re = 0.0;
    let mut im = 0.0;
    let d = a as f64 - b as f64;
    let (mut ang_re, mut ang_im) = (0.0, 0.0);
    for t in 0..n_theta {
        let th = 2.0 * PI * t as f64 / n_theta as f64;
        ang_re += (d * th).cos();
        ang_im += (d * th).sin();
    }
    ang_re *= 2.0 * PI / n_theta as f64;
    ang_im *= 2.0 * PI / n_theta as f64;
    for (xi, wi) in x.iter().zip(&w) {
        let r = (xi + 1.0) * r_max / 2.0;
        let radial = wi * r_max / 2.0 * r.powi((a + b) as i32) * (-2.0 * PI * r * r).exp() * r;
        re += radial * ang_re;
        im += radial * ang_im;
    }
    (re, im)
}

pub fn check_gaussian_moment_numeric(a: u32, b: u32, tol: f64) -> VerificationReport {
    let exact = gaussian_moment(a, b).to_f64();
    let (re, im) = gaussian_moment_numeric(a, b);
    let err = (re - exact).abs().max(im.abs());
    VerificationReport::float("gaussian_moment_numeric")
        .param("a", a)
        .param("b", b)
        .compare_float(err, tol)
}

/// ⟨f, g⟩ = ∫_{C_I} conj(g) f e^{−2π|z|²} dλ for slice coefficient matrices.
pub fn slice_gaussian_inner(f: &SliceCoeffMatrix, g: &SliceCoeffMatrix) -> ExactQuat {
    let mut acc = ExactQuat::zero();
    for (k, frow) in f.rows().iter().enumerate() {
        for (j, a) in frow.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k2, grow) in g.rows().iter().enumerate() {
                for (j2, b) in grow.iter().enumerate() {
                    // conj(z̄^{k2} z^{j2}) z̄^k z^j = z^{k2+j} z̄^{j2+k}
                    if b.is_zero() || k2 + j != j2 + k {
                        continue;
                    }
                    let mom = gaussian_moment((k2 + j) as u32, (j2 + k) as u32);
                    acc = &acc + &(&b.conj() * a).scale(&mom);
                }
            }
        }
    }
    acc
}

/// (n!(2π)^n/2) Σ_j (2π)^j j! |α_j|².
pub fn fock_t_norm_sq(alpha: &[ExactQuat], n: u32) -> ExactScalar {
    let mut sum = ExactScalar::zero();
    for (j, a) in alpha.iter().enumerate() {
        let w = ExactScalar::two_pi_pow(j as i32) * ExactScalar::bigint(factorial(j as u64));
        sum = &sum + &(&w * &a.norm_sq());
    }
    let pre = ExactScalar::bigint(factorial(n as u64))
        * ExactScalar::two_pi_pow(n as i32)
        * ExactScalar::ratio(1, 2);
    &pre * &sum
}

/// Σ_j H_{n,j} α_j as a coefficient matrix.
pub fn assemble_fock_series(alpha: &[ExactQuat], n: u32) -> SliceCoeffMatrix {
    let trunc = alpha.len().saturating_sub(1);
    let mut out = SliceCoeffMatrix::zeros(n as usize + 1, trunc).expect("order ≥ 1");
    for (j, a) in alpha.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let h = qhermite(n, j as u32).slice;
        out = out.add_scaled(&h, a).expect("same order");
    }
    out
}

pub fn check_orthogonality(m: u32, p: u32, m2: u32, p2: u32) -> VerificationReport {
    let r = VerificationReport::exact("qhermite_orthogonality")
        .param("m", m)
        .param("p", p)
        .param("m2", m2)
        .param("p2", p2);
    let f = qhermite(m, p).slice;
    let g = qhermite(m2, p2).slice;
    let order = f.order().max(g.order());
    let trunc = f.trunc().max(g.trunc());
    let val = slice_gaussian_inner(
        &f.embed(order, trunc).expect("grow"),
        &g.embed(order, trunc).expect("grow"),
    );
    let expect = if m == m2 && p == p2 {
        ExactScalar::rational(BigRational::new(
            factorial(m as u64) * factorial(p as u64),
            BigInt::from(2),
        )) * ExactScalar::two_pi_pow((m + p) as i32)
    } else {
        ExactScalar::zero()
    };
    let expect = Quaternion::real(expect);
    if val == expect {
        r
    } else {
        r.fail(val.to_f64().max_abs_diff(&expect.to_f64()), "inner product differs")
    }
}

/// Coefficient-level Fock norm against the assembled slice integral.
pub fn check_prop1_norm(n: u32, alpha: &[ExactQuat]) -> VerificationReport {
    let r = VerificationReport::exact("fock_T_norm").param("n", n).param("len", alpha.len());
    let f = assemble_fock_series(alpha, n);
    let direct = slice_gaussian_inner(&f, &f);
    let expect = Quaternion::real(fock_t_norm_sq(alpha, n));
    if direct == expect {
        r
    } else {
        r.fail(direct.to_f64().max_abs_diff(&expect.to_f64()), "norm mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::combinat::rat;

    #[test]
    fn hermite_h_examples() {
        let nu = two_pi();
        assert_eq!(hermite_h(0, &nu).unwrap().poly, UniPoly::constant(ExactScalar::one()));
        let two_nu = &nu * &ExactScalar::int(2);
        assert_eq!(
            hermite_h(1, &nu).unwrap().poly,
            UniPoly::new(vec![ExactScalar::zero(), two_nu.clone()])
        );
        assert_eq!(
            hermite_h(2, &nu).unwrap().poly,
            UniPoly::new(vec![-two_nu.clone(), ExactScalar::zero(), &two_nu * &two_nu])
        );
        assert!(hermite_h(1, &ExactScalar::int(-1)).is_err());
    }

    #[test]
    fn norm_examples() {
        let nu = two_pi();
        assert_eq!(hermite_norm_sq(0, &nu).unwrap(), ExactScalar::sqrt_int(2).unwrap().scale(&rat(1, 2)));
        assert_eq!(
            hermite_norm_sq(1, &nu).unwrap(),
            ExactScalar::term(rat(2, 1), 2, 2).unwrap()
        );
        assert_eq!(hermite_norm_sq(0, &ExactScalar::pi_pow(1)).unwrap(), ExactScalar::one());
        for k in 0..6 {
            assert!(check_hermite_norm(k).passed());
            assert!(check_hermite_three_term(k).passed());
        }
    }

    #[test]
    fn h2pi_examples() {
        assert_eq!(hermite_h2pi(0), UniPoly::constant(ExactScalar::one()));
        assert_eq!(
            hermite_h2pi(1),
            UniPoly::new(vec![ExactScalar::zero(), ExactScalar::pi_pow(1).scale(&rat(4, 1))])
        );
        let h2 = UniPoly::new(vec![
            ExactScalar::pi_pow(1).scale(&rat(-4, 1)),
            ExactScalar::zero(),
            ExactScalar::pi_pow(2).scale(&rat(16, 1)),
        ]);
        assert_eq!(hermite_h2pi(2), h2);
        assert!(check_h2pi_explicit_sum(1).passed());
        assert!(!check_h2pi_explicit_sum(2).passed());
        for n in 0..8 {
            assert!(check_h2pi_rodrigues(n).passed());
        }
    }

    #[test]
    fn qhermite_examples() {
        let h03 = qhermite(0, 3).to_bivar();
        assert_eq!(h03.len(), 1);
        assert_eq!(h03[&(0, 3)], ExactScalar::two_pi_pow(3));
        let h11 = qhermite(1, 1).to_bivar();
        assert_eq!(h11[&(1, 1)], ExactScalar::two_pi_pow(2));
        assert_eq!(h11[&(0, 0)], -ExactScalar::two_pi_pow(1));
        let h10 = qhermite(1, 0).to_bivar();
        assert_eq!(h10[&(1, 0)], ExactScalar::two_pi_pow(1));
        let r20 = qhermite_rodrigues_slice(2, 0);
        assert_eq!(r20[&(2, 0)], ExactScalar::two_pi_pow(2));
        assert_eq!(r20.len(), 1);
    }

    #[test]
    fn moment_examples() {
        assert_eq!(gaussian_moment(0, 0), ExactScalar::ratio(1, 2));
        assert!(gaussian_moment(1, 0).is_zero());
        assert_eq!(gaussian_moment(1, 1), ExactScalar::pi_pow(-1).scale(&rat(1, 4)));
        assert!(check_gaussian_moment_numeric(3, 3, 1e-10).passed());
        assert!(check_gaussian_moment_numeric(2, 5, 1e-10).passed());
    }

    #[test]
    fn inner_examples() {
        let h11 = qhermite(1, 1).slice;
        assert_eq!(
            slice_gaussian_inner(&h11, &h11),
            ExactQuat::real(ExactScalar::two_pi_pow(2).scale(&rat(1, 2)))
        );
        assert!(check_orthogonality(0, 1, 0, 2).passed());
        let one = SliceCoeffMatrix::monomial(1, 0, 0, ExactQuat::one()).unwrap();
        assert_eq!(slice_gaussian_inner(&one, &one), ExactQuat::real(ExactScalar::ratio(1, 2)));
    }

    #[test]
    fn fock_norm_examples() {
        assert_eq!(fock_t_norm_sq(&[ExactQuat::one()], 0), ExactScalar::ratio(1, 2));
        assert_eq!(
            fock_t_norm_sq(&[ExactQuat::one()], 3),
            ExactScalar::int(3) * ExactScalar::two_pi_pow(3)
        );
        assert!(fock_t_norm_sq(&[], 2).is_zero());
        let alpha = vec![ExactQuat::from_ints(1, 2, 0, -1), ExactQuat::zero(), ExactQuat::from_ints(0, 0, 3, 1)];
        assert!(check_prop1_norm(2, &alpha).passed());
    }

    #[test]
    fn h1p_closed_form_flags() {
        assert!(check_h1p_closed_form(0).passed());
        assert!(!check_h1p_closed_form(2).passed());
    }
}
