//! Acceptance criteria: one PASS / FLAGGED / FAIL line per criterion.
//!
//! FLAGGED means every check holds except known discrepancies in the source formulas,
//! each of which is listed in the criterion's expected flag set. Any failure, any
//! unexpected flag, a missing expected flag, or a blown time budget is FAIL.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fueterlab::algebra::ExactQuat;
use fueterlab::appell;
use fueterlab::bargmann::kernels::check_kernel_k_agreement;
use fueterlab::bargmann::quadrature::{check_quadrature_k, check_quadrature_phi};
use fueterlab::bargmann::reproducing::{check_c2_of_k2, check_k2_r1, check_tau2_of_k2};
use fueterlab::bargmann::{
    check_basis_c_coherence, check_basis_r1_chain, check_basis_tau_coherence, check_c_of_qhermite, check_tau_of_qhermite,
    check_tau_ratio_constancy, frak_c_isometry, frak_tau_isometry, isometry_c_check, isometry_tau_check,
};
use fueterlab::fock_spaces::{check_range_c_norm, check_range_tau_norm};
use fueterlab::fueter_maps::{check_c_action, check_range_c_series, check_range_tau_series, check_relation_r1, check_tau_action};
use fueterlab::hermite::{check_gaussian_moment_numeric, check_orthogonality, check_prop1_norm, check_qhermite_rodrigues};
use fueterlab::report::{reports_to_json, Status, VerificationReport};
use fueterlab::slicepoly::SliceCoeffMatrix;
use fueterlab::suites::{rand_matrix, rand_point, rand_tail, rand_vec, run_suite, Suite, SuiteConfig};

const SEED: u64 = 20_240_917;
const MOMENT_TOL: f64 = 1e-10;
const KERNEL_TOL: f64 = 1e-8;
const QUADRATURE_TOL: f64 = 1e-6;
const KERNEL_TRUNC: usize = 64;
const KERNEL_POINTS: usize = 20;
const R1_SAMPLES: usize = 20;
const K2_DEGREE: u32 = 6;

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ stream)
}

fn ok<T>(r: fueterlab::Result<T>) -> T {
    r.unwrap_or_else(|e| panic!("engine error: {e}"))
}

/// Runs a criterion, prints its line, and panics unless it is PASS or FLAGGED as expected.
fn criterion(id: u32, title: &str, budget: Duration, expected_flags: &[&str], run: impl FnOnce() -> Vec<VerificationReport>) {
    let start = Instant::now();
    let reports = run();
    let elapsed = start.elapsed();
    let fails: Vec<&VerificationReport> = reports.iter().filter(|r| r.status == Status::Fail).collect();
    let flagged: BTreeSet<&str> = reports
        .iter()
        .filter(|r| r.status == Status::Flagged)
        .map(|r| r.check_name.as_str())
        .collect();
    let expected: BTreeSet<&str> = expected_flags.iter().copied().collect();
    let n_flagged = reports.iter().filter(|r| r.status == Status::Flagged).count();
    let mut problems = Vec::new();
    if !fails.is_empty() {
        problems.push(format!("{} failing checks, first {:?}", fails.len(), fails[0]));
    }
    if flagged != expected {
        problems.push(format!("flagged {flagged:?}, expected {expected:?}"));
    }
    if elapsed > budget {
        problems.push(format!("took {elapsed:.2?}, budget {budget:.0?}"));
    }
    let status = match (problems.is_empty(), n_flagged) {
        (false, _) => "FAIL",
        (true, 0) => "PASS",
        (true, _) => "FLAGGED",
    };
    println!(
        "criterion {id} {title}: {status} ({} checks, {n_flagged} flagged [{}], {elapsed:.2?} of {budget:.0?})",
        reports.len(),
        flagged.into_iter().collect::<Vec<_>>().join(", ")
    );
    assert!(problems.is_empty(), "criterion {id}: {}", problems.join("; "));
}

#[test]
fn criterion_1_appell() {
    criterion(1, "appell", Duration::from_secs(10), &[], || {
        let mut out = Vec::new();
        for k in 0..=12 {
            out.push(appell::check_fueter_regular(k));
            if k >= 1 {
                out.push(ok(appell::check_appell_property(k)));
            }
        }
        for s in 0..=10 {
            for j in 0..=s {
                out.push(ok(appell::check_dbar_power(j, s)));
            }
        }
        for k in 0..=3 {
            for s in k + 1..=8 {
                out.push(ok(appell::check_poly_appell(k, s)));
            }
        }
        out
    });
}

#[test]
fn criterion_2_fueter_maps() {
    criterion(2, "fueter maps", Duration::from_secs(20), &["range_tau_series_readings", "tau_action"], || {
        let mut out = Vec::new();
        for n in 0..=3u32 {
            for k in 0..=n {
                for j in 0..=8 {
                    out.push(ok(check_c_action(n, k, j)));
                    out.push(ok(check_tau_action(n, k, j)));
                    let f = ok(SliceCoeffMatrix::monomial(n as usize + 1, k as usize, j as usize, ExactQuat::one()));
                    out.push(check_range_c_series(&f));
                    out.extend(check_range_tau_series(&f));
                }
            }
            let mut g = rng(0x20 + n as u64);
            for i in 0..R1_SAMPLES {
                let f = rand_matrix(&mut g, n as usize + 1, 8);
                out.push(check_relation_r1(&f).param("sample", i));
            }
        }
        out
    });
}

#[test]
fn criterion_3_hermite() {
    criterion(3, "hermite", Duration::from_secs(10), &[], || {
        let mut out = Vec::new();
        for m in 0..=5 {
            for p in 0..=5 {
                out.push(check_qhermite_rodrigues(m, p));
            }
        }
        for m in 0..=4 {
            for p in 0..=4 {
                for m2 in 0..=4 {
                    for p2 in 0..=4 {
                        out.push(check_orthogonality(m, p, m2, p2));
                    }
                }
            }
        }
        for a in 0..=6 {
            for b in 0..=6 {
                out.push(check_gaussian_moment_numeric(a, b, MOMENT_TOL));
            }
        }
        out
    });
}

#[test]
fn criterion_4_fock() {
    criterion(4, "fock", Duration::from_secs(15), &[], || {
        let mut out = Vec::new();
        let mut g = rng(0x40);
        for n in 0..=3u32 {
            for len in 1..=6 {
                for sample in 0..3 {
                    let alpha = rand_vec(&mut g, len);
                    out.push(check_prop1_norm(n, &alpha).param("len", len).param("sample", sample));
                }
            }
            for len in [n as usize + 3, 9] {
                let alpha = rand_vec(&mut g, len);
                out.push(check_range_c_norm(n as usize, &alpha));
                out.push(check_range_tau_norm(n as usize, &alpha));
            }
        }
        out
    });
}

#[test]
fn criterion_5_bargmann_exact() {
    let flags = [
        "C_of_qhermite",
        "basis_C_coherence",
        "basis_R1_chain",
        "basis_tau_coherence",
        "frak_B_tau_isometry",
        "isometry_tau",
        "tau_of_qhermite",
    ];
    criterion(5, "bargmann exact", Duration::from_secs(20), &flags, || {
        let mut out = Vec::new();
        let mut g = rng(0x50);
        for n in 0..=3u32 {
            for k in 0..=10 {
                out.push(check_c_of_qhermite(n, k));
                out.push(check_tau_of_qhermite(n, k));
                out.push(check_basis_c_coherence(n, k));
                out.push(check_basis_r1_chain(n, k));
                out.push(check_basis_tau_coherence(n, k));
            }
            let mut supports: Vec<Vec<ExactQuat>> = (n + 2..=10)
                .map(|k| {
                    let mut a = vec![ExactQuat::zero(); 11];
                    a[k as usize] = ExactQuat::one();
                    a
                })
                .collect();
            supports.push(rand_tail(&mut g, n, 10));
            supports.push(rand_tail(&mut g, n, 7));
            for a in &supports {
                out.push(ok(isometry_c_check(n, a)));
                out.push(ok(isometry_tau_check(n, a)));
            }
            out.push(ok(check_tau_ratio_constancy(n, &supports)));
        }
        for big_n in 0..=3u32 {
            let blocks: Vec<Vec<ExactQuat>> = (0..=big_n).map(|n| rand_tail(&mut g, n, 8)).collect();
            out.push(ok(frak_c_isometry(&blocks)));
            out.push(ok(frak_tau_isometry(&blocks)));
        }
        out
    });
}

#[test]
fn criterion_6_kernel_numeric() {
    criterion(6, "kernel numeric", Duration::from_secs(60), &[], || {
        let mut out = Vec::new();
        let mut g = rng(0x60);
        for n in 0..=2 {
            for i in 0..KERNEL_POINTS {
                let (q, x) = rand_point(&mut g);
                assert!(q.abs() <= 1.0 && x.abs() <= 2.0);
                out.push(ok(check_kernel_k_agreement(n, &q, x, KERNEL_TRUNC, KERNEL_TOL)).param("sample", i));
            }
        }
        for point in 0..2 {
            let (q, _) = rand_point(&mut g);
            for n in 0..=2 {
                for k in 0..=6 {
                    out.push(ok(check_quadrature_k(n, k, &q, QUADRATURE_TOL)).param("point", point));
                    out.push(ok(check_quadrature_phi(n, k, &q, QUADRATURE_TOL)).param("point", point));
                }
            }
        }
        out
    });
}

#[test]
fn criterion_7_reproducing_kernel() {
    criterion(7, "reproducing kernel n=1", Duration::from_secs(15), &["K2_C2"], || {
        vec![
            ok(check_tau2_of_k2(K2_DEGREE)),
            ok(check_c2_of_k2(K2_DEGREE)),
            ok(check_k2_r1(K2_DEGREE)),
        ]
    });
}

#[test]
fn criterion_8_determinism() {
    let cfg = SuiteConfig { seed: SEED, ..SuiteConfig::default() };
    let start = Instant::now();
    let a = reports_to_json(&ok(run_suite(Suite::All, &cfg)));
    let b = reports_to_json(&ok(run_suite(Suite::All, &cfg)));
    let other = reports_to_json(&ok(run_suite(Suite::All, &SuiteConfig { seed: SEED + 1, ..cfg })));
    let same = a == b;
    println!(
        "criterion 8 determinism: {} ({} bytes, {:.2?})",
        if same { "PASS" } else { "FAIL" },
        a.len(),
        start.elapsed()
    );
    assert!(same, "two runs with one seed differ");
    assert_ne!(a, other, "the seed does not reach the random inputs");
}
