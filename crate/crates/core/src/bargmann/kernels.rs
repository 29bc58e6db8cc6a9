//! The transform kernels K, Φ and Θ: float evaluation as Hermite-function expansions
//! with log-space coefficients, the closed form of K, and exact symbolic Φ/Θ series.

use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI, SQRT_2};

use num_bigint::BigInt;

use crate::algebra::combinat::factorial;
use crate::algebra::{quat_exp, ExactScalar, FloatQuat, Quaternion};
use crate::appell::{m_poly, q_poly, t_coeff};
use crate::error::{Error, Result};
use crate::hermite::hermite_h2pi;
use crate::ncpoly::NCPoly;
use crate::numeric::{hermite_functions, ln_factorial_table};
use crate::report::VerificationReport;

const NU: f64 = 2.0 * PI;
const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// a + b·I on the slice of q.
#[derive(Clone, Copy, Debug)]
struct Cx(f64, f64);

impl Cx {
    fn mul(self, o: Cx) -> Cx {
        Cx(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn add(self, o: Cx) -> Cx {
        Cx(self.0 + o.0, self.1 + o.1)
    }
    fn scale(self, s: f64) -> Cx {
        Cx(self.0 * s, self.1 * s)
    }
}

/// q = w + rI with r ≥ 0 and I a unit imaginary (i when q is real).
#[derive(Clone, Copy, Debug)]
struct SliceOf {
    z: Cx,
    unit: [f64; 3],
}

impl SliceOf {
    fn new(q: &FloatQuat) -> Self {
        let r = (q.x * q.x + q.y * q.y + q.z * q.z).sqrt();
        let unit = if r > 0.0 { [q.x / r, q.y / r, q.z / r] } else { [1.0, 0.0, 0.0] };
        SliceOf { z: Cx(q.w, r), unit }
    }

    fn lift(&self, c: Cx) -> FloatQuat {
        Quaternion::new(c.0, c.1 * self.unit[0], c.1 * self.unit[1], c.1 * self.unit[2])
    }

    fn powers(&self, max: usize) -> (Vec<Cx>, Vec<Cx>) {
        let zb = Cx(self.z.0, -self.z.1);
        let mut pz = vec![Cx(1.0, 0.0)];
        let mut pzb = vec![Cx(1.0, 0.0)];
        for a in 1..=max {
            pz.push(pz[a - 1].mul(self.z));
            pzb.push(pzb[a - 1].mul(zb));
        }
        (pz, pzb)
    }
}

fn check_input(q: &FloatQuat, x: f64, trunc: usize) -> Result<()> {
    q.check_finite()?;
    if !x.is_finite() {
        return Err(Error::Numeric(format!("non-finite x = {x}")));
    }
    if trunc < 1 {
        return Err(Error::Domain("kernel truncation must be at least 1".into()));
    }
    Ok(())
}

/// Q_0(q), …, Q_{s_max}(q) in float arithmetic on the slice of q.
pub fn q_values(s_max: usize, q: &FloatQuat) -> Vec<FloatQuat> {
    let sl = SliceOf::new(q);
    let (pz, pzb) = sl.powers(s_max);
    (0..=s_max)
        .map(|s| {
            let mut acc = Cx(0.0, 0.0);
            for j in 0..=s {
                let t = t_coeff(s as u32, j as u32).expect("j ≤ s");
                let t = num_traits::ToPrimitive::to_f64(&t).expect("finite");
                acc = acc.add(pzb[j].mul(pz[s - j]).scale(t));
            }
            sl.lift(acc)
        })
        .collect()
}

/// H_{n,k}(q)/‖H_{n,k}‖ for k = 0..=k_max, with ‖H_{n,k}‖² = n! k! (2π)^{n+k}/2.
pub fn normalized_qhermite_values(n: usize, k_max: usize, q: &FloatQuat) -> Vec<FloatQuat> {
    let sl = SliceOf::new(q);
    let (pz, pzb) = sl.powers(n + k_max);
    let lf = ln_factorial_table(n + k_max);
    (0..=k_max)
        .map(|k| {
            let ln_norm = 0.5 * (lf[n] + lf[k] + (n + k) as f64 * LN_2PI - LN_2);
            let mut acc = Cx(0.0, 0.0);
            for s in 0..=n.min(k) {
                let ln_c = lf[n] + lf[k] + (n + k - s) as f64 * LN_2PI - lf[s] - lf[n - s] - lf[k - s];
                let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
                acc = acc.add(pzb[n - s].mul(pz[k - s]).scale(sign * (ln_c - ln_norm).exp()));
            }
            sl.lift(acc)
        })
        .collect()
}

/// ln ‖h_m‖ with ‖h_m‖² = 2^m (2π)^m m! 2^{−1/2}.
fn ln_h_norm(m: usize, lf: &[f64]) -> f64 {
    0.5 * (m as f64 * LN_2 + m as f64 * LN_2PI + lf[m] - 0.5 * LN_2)
}

/// A kernel written as Σ_m c_m ψ_m(x) in the normalized Hermite functions of rate 2π.
#[derive(Clone, Debug)]
pub struct HermiteExpansion {
    pub coeffs: Vec<FloatQuat>,
}

impl HermiteExpansion {
    pub fn evaluate(&self, x: f64) -> FloatQuat {
        let psi = hermite_functions(self.coeffs.len().saturating_sub(1), NU, x);
        self.coeffs
            .iter()
            .zip(&psi)
            .fold(FloatQuat::zero(), |acc, (c, p)| &acc + &c.scale(p))
    }
}

pub fn k_expansion(n: usize, q: &FloatQuat, trunc: usize) -> HermiteExpansion {
    HermiteExpansion {
        coeffs: normalized_qhermite_values(n, trunc, q),
    }
}

/// Coefficients of Φ: m = l+n+2, l ≤ trunc.
pub fn phi_expansion(n: usize, q: &FloatQuat, trunc: usize) -> HermiteExpansion {
    let top = trunc + n + 2;
    let lf = ln_factorial_table(top);
    let qs = q_values(trunc + n, q);
    let x0 = q.w;
    let ln_pre = 0.5 * lf[n] + 0.5 * n as f64 * LN_2PI + 0.75 * LN_2;
    let mut coeffs = vec![FloatQuat::zero(); top + 1];
    for l in 0..=trunc {
        let m = l + n + 2;
        let mut acc = FloatQuat::zero();
        for j in 0..=n {
            let ln_c = ln_pre + ln_h_norm(m, &lf)
                - 0.5 * (l + n) as f64 * LN_2
                - j as f64 * LN_2PI
                - lf[j]
                - lf[l + n - j]
                - lf[n - j];
            let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
            let mval = qs[l + n - j].scale(&x0.powi((n - j) as i32));
            acc = &acc + &mval.scale(&(sign * ln_c.exp()));
        }
        coeffs[m] = acc;
    }
    HermiteExpansion { coeffs }
}

/// Coefficients of Θ: m = k+n+2, k ≤ trunc.
pub fn theta_expansion(n: usize, q: &FloatQuat, trunc: usize) -> HermiteExpansion {
    let top = trunc + n + 2;
    let lf = ln_factorial_table(top);
    let qs = q_values(trunc + n, q);
    let ln_pre = 0.5 * lf[n] + 0.5 * n as f64 * PI.ln() + 0.75 * LN_2;
    let mut coeffs = vec![FloatQuat::zero(); top + 1];
    for k in 0..=trunc {
        let m = k + n + 2;
        let ln_c = ln_pre + ln_h_norm(m, &lf) - 0.5 * k as f64 * LN_2 - lf[k + n];
        coeffs[m] = qs[k + n].scale(&(-ln_c.exp()));
    }
    HermiteExpansion { coeffs }
}

/// K(q,x) by its series and by its closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelPair {
    pub series: FloatQuat,
    pub closed: FloatQuat,
}

/// 2^{3/4}(2^n n!(2π)^n)^{−1/2} e^{−π(q²+x²)+2π√2 qx} H_n^{2π}((q+q̄)/√2 − x).
pub fn kernel_k_closed(n: usize, q: &FloatQuat, x: f64) -> Result<FloatQuat> {
    check_input(q, x, 1)?;
    let lf = ln_factorial_table(n);
    let pre = (0.75 * LN_2 - 0.5 * (n as f64 * LN_2 + lf[n] + n as f64 * LN_2PI)).exp();
    let q2 = q * q;
    let arg = &(&q2 + &FloatQuat::real(x * x)).scale(&-PI) + &q.scale(&(2.0 * PI * SQRT_2 * x));
    let e = quat_exp(&arg)?;
    let h = hermite_h2pi(n as u32).eval_f64(2.0 * q.w / SQRT_2 - x);
    Ok(e.scale(&(pre * h)))
}

pub fn kernel_k(n: usize, q: &FloatQuat, x: f64, trunc: usize) -> Result<KernelPair> {
    check_input(q, x, trunc)?;
    let series = k_expansion(n, q, trunc).evaluate(x);
    series.check_finite()?;
    Ok(KernelPair {
        series,
        closed: kernel_k_closed(n, q, x)?,
    })
}

pub fn kernel_phi(n: usize, q: &FloatQuat, x: f64, trunc: usize) -> Result<FloatQuat> {
    check_input(q, x, trunc)?;
    let v = phi_expansion(n, q, trunc).evaluate(x);
    v.check_finite()?;
    Ok(v)
}

pub fn kernel_theta(n: usize, q: &FloatQuat, x: f64, trunc: usize) -> Result<FloatQuat> {
    check_input(q, x, trunc)?;
    let v = theta_expansion(n, q, trunc).evaluate(x);
    v.check_finite()?;
    Ok(v)
}

pub fn check_kernel_k_agreement(n: usize, q: &FloatQuat, x: f64, trunc: usize, tol: f64) -> Result<VerificationReport> {
    let p = kernel_k(n, q, x, trunc)?;
    Ok(VerificationReport::float("kernel_K_series_closed")
        .param("n", n)
        .param("trunc", trunc)
        .compare_float(p.series.max_abs_diff(&p.closed), tol)
        .note(format!("q = {:?}, x = {x}", q.to_array())))
}

/// Symbolic kernel: coefficient polynomial of each h_m(x), without the common 2^{3/4}.
pub type SymbolicKernel = BTreeMap<u32, NCPoly>;

fn sqrt_of(s: ExactScalar) -> ExactScalar {
    s.sqrt_term().expect("single-term square")
}

fn fact(n: u32) -> ExactScalar {
    ExactScalar::bigint(factorial(n as u64))
}

/// −√(n!)(2π)^{n/2} Σ_{l≤l_max} Σ_j (−1)^j M_{n−j,l+n−j}/(2^{(l+n)/2}(2π)^j j!(l+n−j)!(n−j)!) at h_{l+n+2}.
pub fn phi_symbolic(n: u32, l_max: u32) -> SymbolicKernel {
    let pre = sqrt_of(fact(n) * ExactScalar::two_pi_pow(n as i32));
    (0..=l_max)
        .map(|l| {
            let half = sqrt_of(ExactScalar::bigint(BigInt::from(2).pow(l + n))).inv().expect("nonzero");
            let mut acc = NCPoly::zero();
            for j in 0..=n {
                let sign = if j % 2 == 0 { -1 } else { 1 };
                let c = ExactScalar::int(sign)
                    * ExactScalar::two_pi_pow(-(j as i32))
                    * (fact(j) * fact(l + n - j) * fact(n - j)).inv().expect("nonzero");
                acc.add_assign_ref(&m_poly(n - j, (l + n - j) as i64).scale(&c));
            }
            (l + n + 2, acc.scale(&(&pre * &half)))
        })
        .collect()
}

/// −√(n!)π^{n/2} Σ_{k≤k_max} Q_{k+n}/(2^{k/2}(k+n)!) at h_{k+n+2}.
pub fn theta_symbolic(n: u32, k_max: u32) -> SymbolicKernel {
    let pre = sqrt_of(fact(n) * ExactScalar::pi_pow(n as i32));
    (0..=k_max)
        .map(|k| {
            let half = sqrt_of(ExactScalar::bigint(BigInt::from(2).pow(k))).inv().expect("nonzero");
            let c = ExactScalar::int(-1) * &pre * half * fact(k + n).inv().expect("nonzero");
            (k + n + 2, q_poly((k + n) as i64).scale(&c))
        })
        .collect()
}

fn map_kernel(k: &SymbolicKernel, f: impl Fn(&NCPoly) -> NCPoly) -> SymbolicKernel {
    k.iter().map(|(m, p)| (*m, f(p))).collect()
}

/// D^n applied termwise to Φ reproduces Θ.
pub fn check_theta_dn_phi(n: u32, l_max: u32) -> VerificationReport {
    let r = VerificationReport::exact("kernel_Theta_Dn_Phi").param("n", n).param("trunc", l_max);
    let lhs = map_kernel(&phi_symbolic(n, l_max), |p| p.fueter_d_pow(n));
    if lhs == theta_symbolic(n, l_max) {
        r
    } else {
        r.fail(1.0, "D^n Φ differs from Θ termwise")
    }
}

/// The relation 2^n D^n Φ = Θ; it holds without the 2^n.
pub fn check_theta_2n_relation(n: u32, l_max: u32) -> VerificationReport {
    let r = VerificationReport::exact("kernel_Theta_2n_relation").param("n", n).param("trunc", l_max);
    let two_n = BigInt::from(2).pow(n);
    let lhs = map_kernel(&phi_symbolic(n, l_max), |p| p.fueter_d_pow(n).scale_int(two_n.clone()));
    let theta = theta_symbolic(n, l_max);
    if lhs == theta {
        r
    } else if map_kernel(&lhs, |p| p.scale(&ExactScalar::bigint(two_n.clone()).inv().expect("nonzero"))) == theta {
        r.flag(format!("2^n D^n Φ = {two_n}·Θ; D^n Φ = Θ exactly"))
    } else {
        r.fail(1.0, "2^n D^n Φ is not a multiple of Θ")
    }
}

/// At n = 0 the Θ and Φ series coincide.
pub fn check_theta_phi_n0(l_max: u32) -> VerificationReport {
    let r = VerificationReport::exact("kernel_Theta_Phi_n0").param("trunc", l_max);
    if phi_symbolic(0, l_max) == theta_symbolic(0, l_max) {
        r
    } else {
        r.fail(1.0, "n = 0 kernels differ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::float_quat;
    use crate::report::Status;

    #[test]
    fn q_values_match_exact() {
        let q = float_quat(0.3, -0.2, 0.5, 0.1);
        let v = q_values(6, &q);
        for (s, val) in v.iter().enumerate() {
            let exact = q_poly(s as i64).evaluate(&q).unwrap();
            assert!(val.approx_eq(&exact, 1e-13), "s = {s}");
        }
        let w = normalized_qhermite_values(2, 5, &q);
        for (k, val) in w.iter().enumerate() {
            let b = super::super::bargmann_basis_action(2, k as u32);
            assert!(val.approx_eq(&b.evaluate(&q).unwrap(), 1e-10), "k = {k}");
        }
    }

    #[test]
    fn kernel_k_origin() {
        let p = kernel_k(0, &FloatQuat::zero(), 0.0, 32).unwrap();
        assert!((p.closed.w - 2f64.powf(0.75)).abs() < 1e-14);
        assert!(p.series.approx_eq(&p.closed, 1e-12));
    }

    #[test]
    fn kernel_k_agreement() {
        let q = float_quat(0.3, 0.2, 0.0, 0.0);
        for n in 0..=2 {
            let p = kernel_k(n, &q, 0.5, 64).unwrap();
            assert!(p.series.approx_eq(&p.closed, 1e-8), "n = {n}: {p:?}");
        }
        let far = kernel_k(1, &q, 9.0, 64).unwrap();
        assert!(far.closed.abs() < 1e-20 && far.series.abs() < 1e-20);
        assert!(kernel_k(0, &q, f64::NAN, 8).is_err());
        assert!(kernel_k(0, &q, 0.0, 0).is_err());
    }

    #[test]
    fn phi_real_on_real_axis() {
        let v = kernel_phi(1, &float_quat(0.4, 0.0, 0.0, 0.0), 0.3, 32).unwrap();
        assert!(v.x.abs() + v.y.abs() + v.z.abs() < 1e-15);
        let t = kernel_theta(1, &FloatQuat::zero(), 0.3, 32).unwrap();
        assert!(t.abs() < 1e-15);
    }

    #[test]
    fn symbolic_relations() {
        for n in 0..=2 {
            assert!(check_theta_dn_phi(n, 4).passed());
            let r = check_theta_2n_relation(n, 4);
            assert_eq!(r.status == Status::Flagged, n > 0);
            assert!(!r.is_fail());
        }
        assert!(check_theta_phi_n0(5).passed());
    }
}
