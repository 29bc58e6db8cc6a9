//! Quadrature rules and float special-function helpers.

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            pp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Gauss–Hermite rule for weight e^{−t²}, with the weight folded out.
///
/// Returns nodes t_i and scaled weights w_i e^{t_i²}, so that
/// ∫ g(t) dt ≈ Σ w̃_i g(t_i) for g decaying like a Gaussian.
#[derive(Clone, Debug)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub scaled_weights: Vec<f64>,
}

const RESCALE: f64 = 1e100;

/// Orthonormal Hermite polynomials p̃_n(t), p̃_{n−1}(t) with a shared power-of-RESCALE exponent.
fn orthonormal_pair(n: usize, t: f64) -> (f64, f64, i32) {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25);
    let mut scale = 0i32;
    for k in 0..n {
        let next = (2.0 / (k + 1) as f64).sqrt() * t * cur - (k as f64 / (k + 1) as f64).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            scale += 1;
        }
    }
    (cur, prev, scale)
}

/// Eigenvalues of the symmetric tridiagonal matrix with zero diagonal and off-diagonal `e`
/// (implicit QL with Wilkinson shifts).
fn tridiagonal_eigenvalues(offdiag: &[f64]) -> Vec<f64> {
    let n = offdiag.len() + 1;
    let mut d = vec![0.0f64; n];
    let mut e = offdiag.to_vec();
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter < 100, "QL iteration did not converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    d
}

impl GaussHermite {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "at least one node");
        let nf = n as f64;
        let offdiag: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
        let mut nodes = tridiagonal_eigenvalues(&offdiag);
        let mut scaled_weights = vec![0.0; n];
        for (t, w) in nodes.iter_mut().zip(scaled_weights.iter_mut()) {
            for _ in 0..3 {
                let (p, q, _) = orthonormal_pair(n, *t);
                if q == 0.0 {
                    break;
                }
                *t -= p / ((2.0 * nf).sqrt() * q);
            }
            let (_, q, scale) = orthonormal_pair(n, *t);
            // w e^{t²} = e^{t²}/(n p̃_{n−1}²)
            let ln_q = q.abs().ln() + scale as f64 * RESCALE.ln();
            *w = (*t * *t - nf.ln() - 2.0 * ln_q).exp();
        }
        for i in 0..n / 2 {
            let t = (nodes[n - 1 - i] - nodes[i]) / 2.0;
            let w = (scaled_weights[i] + scaled_weights[n - 1 - i]) / 2.0;
            nodes[i] = -t;
            nodes[n - 1 - i] = t;
            scaled_weights[i] = w;
            scaled_weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussHermite {
            nodes,
            scaled_weights,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// ln k! for k = 0..=n.
pub fn ln_factorial_table(n: usize) -> Vec<f64> {
    let mut t = vec![0.0; n + 1];
    for k in 1..=n {
        t[k] = t[k - 1] + (k as f64).ln();
    }
    t
}

/// Normalized Hermite functions ψ_k(x) for weight e^{−νx²/2}, k = 0..=k_max.
pub fn hermite_functions(k_max: usize, nu: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(k_max + 1);
    let psi0 = (-nu * x * x / 2.0).exp() / (PI / nu).powf(0.25);
    out.push(psi0);
    if k_max >= 1 {
        out.push((2.0 * nu).sqrt() * x * psi0);
    }
    for k in 1..k_max {
        let kf = k as f64;
        let next = (2.0 * nu / (kf + 1.0)).sqrt() * x * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}
