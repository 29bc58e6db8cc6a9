//! Gauss–Hermite evaluation of ∫ kernel(q,x) φ(x) dx.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use super::kernels::{kernel_k_closed, phi_expansion, theta_expansion, HermiteExpansion};
use super::{bargmann_basis_action, bargmann_c_basis, bargmann_tau_basis};
use crate::algebra::FloatQuat;
use crate::error::{Error, Result};
use crate::numeric::{hermite_functions, GaussHermite};
use crate::report::VerificationReport;

pub const DEFAULT_NODES: usize = 128;
pub const MAX_NODES: usize = 1024;
pub const CONVERGENCE_TOL: f64 = 1e-9;
pub const DEFAULT_TRUNC: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelTag {
    K,
    Phi,
    Theta,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: FloatQuat,
    pub nodes_used: usize,
    pub converged: bool,
    pub warning: Option<String>,
}

type RuleCache = Mutex<HashMap<usize, Arc<GaussHermite>>>;

/// Node tables are built once per size and shared.
pub fn gauss_hermite_rule(nodes: usize) -> Arc<GaussHermite> {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().expect("rule cache").get(&nodes) {
        return r.clone();
    }
    let rule = Arc::new(GaussHermite::new(nodes));
    cache.lock().expect("rule cache").entry(nodes).or_insert(rule).clone()
}

enum Kernel {
    Closed { n: usize, q: FloatQuat },
    Expansion(HermiteExpansion),
}

impl Kernel {
    fn eval(&self, x: f64) -> Result<FloatQuat> {
        match self {
            Kernel::Closed { n, q } => kernel_k_closed(*n, q, x),
            Kernel::Expansion(e) => Ok(e.evaluate(x)),
        }
    }
}

/// Σ w̃_i kernel(x_i) φ(x_i)/√(2π) with x_i = t_i/√(2π), so e^{−2πx²} is absorbed into the weights.
fn apply_rule(kernel: &Kernel, phi: &dyn Fn(f64) -> FloatQuat, nodes: usize) -> Result<(FloatQuat, Option<String>)> {
    let rule = gauss_hermite_rule(nodes);
    let s = (2.0 * PI).sqrt();
    let mut acc = FloatQuat::zero();
    let mut max_phi = 0.0f64;
    let mut edge_phi = 0.0f64;
    let last = rule.len() - 1;
    for (i, (t, w)) in rule.nodes.iter().zip(&rule.scaled_weights).enumerate() {
        let x = t / s;
        let p = phi(x);
        p.check_finite()?;
        max_phi = max_phi.max(p.abs());
        if i == 0 || i == last {
            edge_phi = edge_phi.max(p.abs());
        }
        acc = &acc + &(&kernel.eval(x)? * &p).scale(&(w / s));
    }
    let warning = (edge_phi > 1e-8 * max_phi).then(|| {
        format!("φ has not decayed at the outermost node ({edge_phi:.3e} vs max {max_phi:.3e}); accuracy may suffer")
    });
    acc.check_finite()?;
    Ok((acc, warning))
}

/// ∫ kernel(q,x) φ(x) dx, doubling the rule from `nodes` until successive values agree to 1e-9.
pub fn transform_quadrature(
    tag: KernelTag,
    n: usize,
    phi: &dyn Fn(f64) -> FloatQuat,
    q: &FloatQuat,
    nodes: usize,
    trunc: usize,
) -> Result<QuadratureResult> {
    if nodes < 16 {
        return Err(Error::Domain(format!("quadrature needs at least 16 nodes, got {nodes}")));
    }
    if trunc < 1 {
        return Err(Error::Domain("kernel truncation must be at least 1".into()));
    }
    q.check_finite()?;
    let kernel = match tag {
        KernelTag::K => Kernel::Closed { n, q: q.clone() },
        KernelTag::Phi => Kernel::Expansion(phi_expansion(n, q, trunc)),
        KernelTag::Theta => Kernel::Expansion(theta_expansion(n, q, trunc)),
    };
    let mut used = nodes.min(MAX_NODES);
    let (mut value, mut warning) = apply_rule(&kernel, phi, used)?;
    let mut converged = false;
    while used * 2 <= MAX_NODES {
        let (next, w) = apply_rule(&kernel, phi, used * 2)?;
        used *= 2;
        let delta = next.max_abs_diff(&value);
        value = next;
        warning = w;
        if delta < CONVERGENCE_TOL {
            converged = true;
            break;
        }
    }
    Ok(QuadratureResult {
        value,
        nodes_used: used,
        converged,
        warning,
    })
}

/// The normalized Hermite function ψ_k of rate 2π as a quaternion-valued input.
pub fn psi(k: usize) -> impl Fn(f64) -> FloatQuat {
    move |x| FloatQuat::real(hermite_functions(k, 2.0 * PI, x)[k])
}

fn quad_report(name: &str, n: usize, k: usize, res: &QuadratureResult, expect: &FloatQuat, tol: f64) -> VerificationReport {
    let mut r = VerificationReport::float(name)
        .param("n", n)
        .param("k", k)
        .param("nodes", res.nodes_used)
        .compare_float(res.value.max_abs_diff(expect), tol);
    if let Some(w) = &res.warning {
        r = r.note(w);
    }
    r
}

/// ∫K(q,x)ψ_k(x)dx against B^{n+1}ψ_k(q).
pub fn check_quadrature_k(n: usize, k: usize, q: &FloatQuat, tol: f64) -> Result<VerificationReport> {
    let res = transform_quadrature(KernelTag::K, n, &psi(k), q, DEFAULT_NODES, DEFAULT_TRUNC)?;
    let expect = bargmann_basis_action(n as u32, k as u32).evaluate(q)?;
    Ok(quad_report("quadrature_K_basis", n, k, &res, &expect, tol))
}

/// ∫Φ(q,x)ψ_k(x)dx against the stated C-basis action, zero for k < n+2.
pub fn check_quadrature_phi(n: usize, k: usize, q: &FloatQuat, tol: f64) -> Result<VerificationReport> {
    let res = transform_quadrature(KernelTag::Phi, n, &psi(k), q, DEFAULT_NODES, DEFAULT_TRUNC)?;
    let expect = bargmann_c_basis(n as u32, k as u32).evaluate(q)?;
    Ok(quad_report("quadrature_Phi_basis", n, k, &res, &expect, tol))
}

/// ∫Θ(q,x)ψ_k(x)dx equals 2^{−n}B_τψ_k(q); flagged against the stated B_τψ_k = ∫Θψ_k for n ≥ 1.
pub fn check_quadrature_theta(n: usize, k: usize, q: &FloatQuat, tol: f64) -> Result<VerificationReport> {
    let res = transform_quadrature(KernelTag::Theta, n, &psi(k), q, DEFAULT_NODES, DEFAULT_TRUNC)?;
    let tau = bargmann_tau_basis(n as u32, k as u32).evaluate(q)?;
    let expect = tau.scale(&0.5f64.powi(n as i32));
    let r = quad_report("quadrature_Theta_basis", n, k, &res, &expect, tol);
    if r.is_fail() || n == 0 || tau.abs() == 0.0 {
        return Ok(r);
    }
    Ok(r.flag(format!("∫Θψ_k = 2^-{n}·B_τψ_k; the stated transform identity omits this factor")))
}
