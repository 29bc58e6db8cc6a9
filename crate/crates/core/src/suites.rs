//! Verification suites over a parameter grid, run on a work pool with order-stable output.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{ExactQuat, ExactScalar, FloatQuat, Quaternion};
use crate::bargmann::kernels::{check_kernel_k_agreement, check_theta_2n_relation, check_theta_dn_phi, check_theta_phi_n0};
use crate::bargmann::quadrature::{check_quadrature_k, check_quadrature_phi, check_quadrature_theta};
use crate::bargmann::reproducing::{check_c2_of_k2, check_k2_r1, check_tau2_of_k2};
use crate::bargmann::{
    check_basis_c_coherence, check_basis_r1_chain, check_basis_tau_coherence, check_c_of_qhermite,
    check_full_transform_basis, check_isometry_c_bound, check_tau_of_qhermite, check_tau_ratio_constancy,
    frak_c_isometry, frak_tau_isometry, isometry_c_check, isometry_tau_check,
};
use crate::error::{Error, Result};
use crate::fock_spaces::{
    check_a1_regular_weight, check_a_weight_bracket, check_direct_sum, check_range_c_norm, check_range_c_norm_literal,
    check_range_tau_norm, ASpaceElement,
};
use crate::fueter_maps::{
    check_c_action, check_dn_m, check_linearity, check_range_c_series, check_range_membership, check_range_tau_series,
    check_relation_r1, check_tau_action,
};
use crate::hermite::{
    check_gaussian_moment_numeric, check_h2pi_explicit_sum, check_h2pi_rodrigues, check_hermite_norm,
    check_hermite_three_term, check_orthogonality, check_prop1_norm, check_qhermite_rodrigues, check_h1p_closed_form,
};
use crate::ncpoly::float_quat;
use crate::report::{sort_reports, VerificationReport};
use crate::slicepoly::SliceCoeffMatrix;
use crate::appell;

pub const MAX_N: u32 = 4;
pub const MAX_DEG: u32 = 12;
pub const THREADS_ENV: &str = "FUETERLAB_THREADS";

/// Random R1 inputs per order.
pub const R1_SAMPLES: usize = 20;
/// Kernel series-vs-closed sample points per order.
pub const KERNEL_POINTS: usize = 24;
/// Tolerance of the moment oracle against numeric integration.
pub const MOMENT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Appell,
    Fueter,
    Hermite,
    Fock,
    Bargmann,
    Kernel,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = ["appell", "fueter", "hermite", "fock", "bargmann", "kernel", "all"];

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Appell,
                Suite::Fueter,
                Suite::Hermite,
                Suite::Fock,
                Suite::Bargmann,
                Suite::Kernel,
            ],
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "appell" => Suite::Appell,
            "fueter" => Suite::Fueter,
            "hermite" => Suite::Hermite,
            "fock" => Suite::Fock,
            "bargmann" => Suite::Bargmann,
            "kernel" => Suite::Kernel,
            "all" => Suite::All,
            _ => return Err(Error::Domain(format!("unknown suite `{s}`; expected one of {}", Suite::NAMES.join(", ")))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(Suite::NAMES[*self as usize])
    }
}

/// Grid bounds: orders n ≤ n_max, degrees ≤ deg_max, kernel truncation, float tolerance, RNG seed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteConfig {
    pub n_max: u32,
    pub deg_max: u32,
    pub trunc: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_max: 3,
            deg_max: 8,
            trunc: 64,
            tol: 1e-8,
            seed: 0,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_max > MAX_N {
            return Err(Error::Domain(format!("n_max = {} exceeds the limit {MAX_N}", self.n_max)));
        }
        if self.deg_max > MAX_DEG {
            return Err(Error::Domain(format!("deg_max = {} exceeds the limit {MAX_DEG}", self.deg_max)));
        }
        if self.trunc < 1 {
            return Err(Error::Domain("trunc must be at least 1".into()));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::Domain(format!("tol must be a positive number, got {}", self.tol)));
        }
        Ok(())
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

type Task = Box<dyn Fn() -> Vec<VerificationReport> + Send + Sync>;

fn one(f: impl Fn() -> VerificationReport + Send + Sync + 'static) -> Task {
    Box::new(move || vec![f()])
}

fn fallible(name: &'static str, f: impl Fn() -> Result<VerificationReport> + Send + Sync + 'static) -> Task {
    Box::new(move || vec![settle(name, f())])
}

/// An engine error inside a check is a failure of that check.
fn settle(name: &str, r: Result<VerificationReport>) -> VerificationReport {
    r.unwrap_or_else(|e| VerificationReport::exact(name).fail(f64::INFINITY, format!("engine error: {e}")))
}

fn rand_scalar(rng: &mut ChaCha8Rng) -> ExactScalar {
    ExactScalar::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn rand_quat(rng: &mut ChaCha8Rng) -> ExactQuat {
    Quaternion::new(rand_scalar(rng), rand_scalar(rng), rand_scalar(rng), rand_scalar(rng))
}

/// Half-dense random rational matrix of the given order and truncation.
pub fn rand_matrix(rng: &mut ChaCha8Rng, order: usize, trunc: usize) -> SliceCoeffMatrix {
    let mut m = SliceCoeffMatrix::zeros(order, trunc).expect("order ≥ 1");
    for k in 0..order {
        for j in 0..=trunc {
            if rng.gen_bool(0.5) {
                m.set(k, j, rand_quat(rng)).expect("in range");
            }
        }
    }
    m
}

pub fn rand_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<ExactQuat> {
    (0..len).map(|_| rand_quat(rng)).collect()
}

/// Random coefficients a_0..a_deg vanishing below n+2.
pub fn rand_tail(rng: &mut ChaCha8Rng, n: u32, deg: u32) -> Vec<ExactQuat> {
    (0..=deg)
        .map(|k| if k < n + 2 { ExactQuat::zero() } else { rand_quat(rng) })
        .collect()
}

/// A point of the closed unit ball and x ∈ [−2, 2].
pub fn rand_point(rng: &mut ChaCha8Rng) -> (FloatQuat, f64) {
    let q = loop {
        let c: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
        if c.iter().map(|v| v * v).sum::<f64>() <= 1.0 {
            break float_quat(c[0], c[1], c[2], c[3]);
        }
    };
    (q, rng.gen_range(-2.0..=2.0))
}

fn appell_tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let d = cfg.deg_max;
    let mut t: Vec<Task> = Vec::new();
    for k in 0..=d {
        t.push(one(move || appell::check_t_sum(k)));
        t.push(one(move || appell::check_fueter_regular(k)));
        t.push(one(move || appell::check_real_axis(k)));
        t.push(one(move || appell::check_ordering(k)));
        if k >= 1 {
            t.push(fallible("appell_property", move || appell::check_appell_property(k)));
        }
        for j in 0..=k {
            t.push(fallible("Dbar_power", move || appell::check_dbar_power(j, k)));
        }
    }
    for k in 0..=cfg.n_max {
        for s in 0..=d {
            t.push(one(move || appell::check_m_polyanalytic(k, s)));
            if s > k {
                t.push(fallible("poly_appell", move || appell::check_poly_appell(k, s)));
            }
        }
    }
    t
}

fn fueter_tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let d = cfg.deg_max;
    let mut t: Vec<Task> = Vec::new();
    for n in 0..=cfg.n_max {
        for k in 0..=n {
            for j in 0..=d {
                t.push(fallible("C_action", move || check_c_action(n, k, j)));
                t.push(fallible("tau_action", move || check_tau_action(n, k, j)));
                if j >= 2 {
                    t.push(fallible("Dn_M", move || check_dn_m(n, k, j)));
                }
            }
        }
        let mut rng = cfg.rng(0x100 + n as u64);
        for i in 0..R1_SAMPLES {
            let f = rand_matrix(&mut rng, n as usize + 1, d as usize);
            let g = rand_matrix(&mut rng, n as usize + 1, d as usize);
            let lambda = rand_quat(&mut rng);
            t.push(Box::new(move || {
                let tag = |r: VerificationReport| r.param("sample", i);
                let mut out = vec![tag(check_relation_r1(&f))];
                if i == 0 {
                    out.push(tag(check_range_c_series(&f)));
                    out.extend(check_range_tau_series(&f).into_iter().map(tag));
                    out.push(tag(check_range_membership(&f)));
                    out.push(tag(settle("map_linearity", check_linearity(&f, &g, &lambda))));
                }
                out
            }));
        }
    }
    t
}

fn hermite_tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let (nm, d) = (cfg.n_max, cfg.deg_max);
    let mut t: Vec<Task> = Vec::new();
    for k in 0..=d {
        t.push(one(move || check_h2pi_rodrigues(k)));
        t.push(one(move || check_h2pi_explicit_sum(k)));
        t.push(one(move || check_hermite_three_term(k)));
        t.push(one(move || check_hermite_norm(k)));
        t.push(one(move || check_h1p_closed_form(k)));
    }
    for m in 0..=nm {
        for p in 0..=d {
            t.push(one(move || check_qhermite_rodrigues(m, p)));
        }
    }
    let p_orth = d.min(4);
    for m in 0..=nm {
        for p in 0..=p_orth {
            t.push(Box::new(move || {
                let mut out = Vec::new();
                for m2 in 0..=nm {
                    for p2 in 0..=p_orth {
                        out.push(check_orthogonality(m, p, m2, p2));
                    }
                }
                out
            }));
        }
    }
    for a in 0..=d.min(6) {
        for b in 0..=d.min(6) {
            t.push(one(move || check_gaussian_moment_numeric(a, b, MOMENT_TOL)));
        }
    }
    t
}

fn fock_tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let d = cfg.deg_max as usize;
    let mut t: Vec<Task> = Vec::new();
    let mut rng = cfg.rng(0x200);
    for n in 0..=cfg.n_max {
        for len in 1..=(d + 1).min(6) {
            let alpha = rand_vec(&mut rng, len);
            t.push(one(move || check_prop1_norm(n, &alpha).param("len", len)));
        }
        let nu = n as usize;
        let alpha = rand_vec(&mut rng, d + 1);
        t.push(Box::new(move || {
            vec![
                check_range_c_norm(nu, &alpha),
                check_range_c_norm_literal(nu, &alpha),
                check_a_weight_bracket(nu, &alpha),
                check_range_tau_norm(nu, &alpha),
            ]
        }));
    }
    for h in 0..=d {
        t.push(one(move || check_a1_regular_weight(h)));
    }
    let h_len = d + 1;
    let blocks = |rng: &mut ChaCha8Rng| -> Vec<ASpaceElement> {
        (0..=cfg.n_max as usize)
            .map(|n| {
                let beta = (0..h_len).map(|_| rand_vec(rng, n + 1)).collect();
                ASpaceElement::new(n, beta).expect("row lengths n+1")
            })
            .collect()
    };
    let (f, g) = (blocks(&mut rng), blocks(&mut rng));
    t.push(fallible("frak_A_direct_sum", move || check_direct_sum(&f, &g)));
    t
}

fn bargmann_tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let (nm, d) = (cfg.n_max, cfg.deg_max);
    let mut t: Vec<Task> = Vec::new();
    for n in 0..=nm {
        for k in 0..=d {
            t.push(Box::new(move || {
                vec![
                    check_c_of_qhermite(n, k),
                    check_tau_of_qhermite(n, k),
                    check_basis_c_coherence(n, k),
                    check_basis_r1_chain(n, k),
                    check_basis_tau_coherence(n, k),
                ]
            }));
        }
    }
    for big_n in 0..=nm {
        for n in 0..=big_n {
            for k in 0..=d {
                t.push(fallible("full_transform_basis", move || check_full_transform_basis(big_n, n, k)));
            }
        }
    }
    let mut rng = cfg.rng(0x300);
    for n in 0..=nm {
        let free = rand_vec(&mut rng, d as usize + 1);
        t.push(one(move || check_isometry_c_bound(n, &free)));
        if d < n + 2 {
            continue;
        }
        let mut supports: Vec<Vec<ExactQuat>> = (n + 2..=d)
            .map(|k| {
                let mut a = vec![ExactQuat::zero(); d as usize + 1];
                a[k as usize] = ExactQuat::one();
                a
            })
            .collect();
        supports.push(rand_tail(&mut rng, n, d));
        for a in supports.clone() {
            t.push(Box::new(move || {
                vec![
                    settle("isometry_C", isometry_c_check(n, &a)),
                    settle("isometry_tau", isometry_tau_check(n, &a)),
                ]
            }));
        }
        t.push(fallible("isometry_tau_constancy", move || check_tau_ratio_constancy(n, &supports)));
    }
    let blocks: Vec<Vec<ExactQuat>> = (0..=nm).map(|n| rand_tail(&mut rng, n, d)).collect();
    let b2 = blocks.clone();
    t.push(fallible("frak_B_C_isometry", move || frak_c_isometry(&blocks)));
    t.push(fallible("frak_B_tau_isometry", move || frak_tau_isometry(&b2)));
    let h = d.clamp(1, 6);
    t.push(fallible("K2_tau2", move || check_tau2_of_k2(h)));
    t.push(fallible("K2_C2", move || check_c2_of_k2(h)));
    t.push(fallible("K2_relation_R1", move || check_k2_r1(h)));
    t
}

fn kernel_tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let (trunc, tol) = (cfg.trunc, cfg.tol);
    let n_top = cfg.n_max.min(2) as usize;
    let mut t: Vec<Task> = Vec::new();
    let mut rng = cfg.rng(0x400);
    for n in 0..=n_top {
        for i in 0..KERNEL_POINTS {
            let (q, x) = rand_point(&mut rng);
            t.push(one(move || {
                settle("kernel_K_series_closed", check_kernel_k_agreement(n, &q, x, trunc, tol)).param("sample", i)
            }));
        }
    }
    let (q, _) = rand_point(&mut rng);
    for n in 0..=n_top {
        for k in 0..=(cfg.deg_max as usize).min(6) {
            let q = q.clone();
            t.push(Box::new(move || {
                vec![
                    settle("quadrature_K_basis", check_quadrature_k(n, k, &q, tol)),
                    settle("quadrature_Phi_basis", check_quadrature_phi(n, k, &q, tol)),
                    settle("quadrature_Theta_basis", check_quadrature_theta(n, k, &q, tol)),
                ]
            }));
        }
    }
    let l = cfg.deg_max;
    for n in 0..=cfg.n_max {
        t.push(one(move || check_theta_dn_phi(n, l)));
        t.push(one(move || check_theta_2n_relation(n, l)));
    }
    t.push(one(move || check_theta_phi_n0(l)));
    t
}

fn tasks(suite: Suite, cfg: &SuiteConfig) -> Vec<Task> {
    match suite {
        Suite::Appell => appell_tasks(cfg),
        Suite::Fueter => fueter_tasks(cfg),
        Suite::Hermite => hermite_tasks(cfg),
        Suite::Fock => fock_tasks(cfg),
        Suite::Bargmann => bargmann_tasks(cfg),
        Suite::Kernel => kernel_tasks(cfg),
        Suite::All => unreachable!("expanded by parts()"),
    }
}

/// Pool size from FUETERLAB_THREADS; unset means the rayon default.
pub fn thread_count() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) | Err(_) => Err(Error::Domain(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
            Ok(n) => Ok(Some(n)),
        },
    }
}

/// Runs every check of the suite; the result is sorted by check name then params.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    cfg.validate()?;
    let all: Vec<Task> = suite.parts().into_iter().flat_map(|s| tasks(s, cfg)).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count()? {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    let mut reports: Vec<VerificationReport> = pool.install(|| all.par_iter().flat_map_iter(|task| task()).collect());
    sort_reports(&mut reports);
    Ok(reports)
}
