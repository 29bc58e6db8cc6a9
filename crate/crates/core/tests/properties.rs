//! Algebraic invariants on randomized exact inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::collection::vec;
use proptest::prelude::*;

use fueterlab::algebra::{ExactQuat, ExactScalar, FloatQuat, Quaternion};
use fueterlab::fock_spaces::{inner_a, ASpaceElement};
use fueterlab::fueter_maps::{map_c, map_tau};
use fueterlab::ncpoly::{float_quat, Monomial4, NCPoly};
use fueterlab::report::format_f64;
use fueterlab::slicepoly::{SliceCoeffMatrix, SliceSeries};

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn rational_scalar() -> impl Strategy<Value = ExactScalar> {
    rational().prop_map(ExactScalar::rational)
}

/// Sums of up to three terms c·√rad·π^{pihalf/2}.
fn scalar() -> impl Strategy<Value = ExactScalar> {
    vec((rational(), prop::sample::select(vec![1u64, 2, 3, 6]), -2i32..=4), 1..=3).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(c, rad, ph)| ExactScalar::term(c, rad, ph).expect("squarefree radicand"))
            .fold(ExactScalar::zero(), |acc, t| &acc + &t)
    })
}

fn quat_with<S: Strategy<Value = ExactScalar>>(s: fn() -> S) -> impl Strategy<Value = ExactQuat> {
    (s(), s(), s(), s()).prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

fn rquat() -> impl Strategy<Value = ExactQuat> {
    quat_with(rational_scalar)
}

/// Up to five terms of total degree ≤ 8 with rational quaternion coefficients.
fn ncpoly() -> impl Strategy<Value = NCPoly> {
    vec((prop::array::uniform4(0u32..=2), rquat()), 1..=5).prop_map(|terms| {
        let mut p = NCPoly::zero();
        for (e, c) in terms {
            p.add_term(Monomial4(e), c);
        }
        p
    })
}

fn real_ncpoly() -> impl Strategy<Value = NCPoly> {
    vec((prop::array::uniform4(0u32..=2), rational_scalar()), 1..=4).prop_map(|terms| {
        let mut p = NCPoly::zero();
        for (e, c) in terms {
            p.add_term(Monomial4(e), Quaternion::real(c));
        }
        p
    })
}

fn matrix(order: usize, trunc: usize) -> impl Strategy<Value = SliceCoeffMatrix> {
    vec(vec(rquat(), trunc + 1), order)
        .prop_map(move |rows| SliceCoeffMatrix::from_rows(order, trunc, rows).expect("shape"))
}

fn series(max_len: usize) -> impl Strategy<Value = SliceSeries> {
    vec(rquat(), 1..=max_len).prop_map(SliceSeries::new)
}

fn point() -> impl Strategy<Value = FloatQuat> {
    prop::array::uniform4(-1.0f64..1.0).prop_map(|c| float_quat(c[0], c[1], c[2], c[3]))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn conjugation_reverses_products(p in quat_with(scalar), q in quat_with(scalar)) {
        prop_assert_eq!((&p * &q).conj(), &q.conj() * &p.conj());
        prop_assert_eq!((&p * &q).norm_sq(), &p.norm_sq() * &q.norm_sq());
    }

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        let float = a.to_f64() * b.to_f64() + c.to_f64();
        let exact = (&(&a * &b) + &c).to_f64();
        prop_assert!((exact - float).abs() <= 1e-12 * (1.0 + a.to_f64().abs() * b.to_f64().abs() + c.to_f64().abs()));
    }

    #[test]
    fn sqrt_term_squares_back(p in 1i64..400, q in 1i64..60, e in -3i32..=3) {
        let s = ExactScalar::ratio(p, q) * ExactScalar::two_pi_pow(2 * e);
        let r = s.sqrt_term().unwrap();
        prop_assert_eq!(&r * &r, s);
    }

    #[test]
    fn fueter_operators_factor_the_laplacian(f in ncpoly()) {
        let lap = f.laplacian();
        prop_assert_eq!(f.fueter_d().fueter_dbar(), lap.clone());
        prop_assert_eq!(f.fueter_dbar().fueter_d(), lap);
    }

    #[test]
    fn partials_commute(f in ncpoly(), i in 0usize..4, j in 0usize..4) {
        prop_assert_eq!(f.partial(i).partial(j), f.partial(j).partial(i));
    }

    #[test]
    fn evaluation_is_multiplicative_for_real_left_factor(f in real_ncpoly(), g in ncpoly(), q in point()) {
        let lhs = f.mul(&g).evaluate(&q).unwrap();
        let rhs = &f.evaluate(&q).unwrap() * &g.evaluate(&q).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-9 * (1.0 + rhs.abs()));
    }

    #[test]
    fn to_ncpoly_is_right_linear(f in matrix(3, 4), g in matrix(3, 4), l in rquat()) {
        let h = f.add_scaled(&g, &l).unwrap();
        prop_assert_eq!(h.to_ncpoly(), &f.to_ncpoly() + &g.to_ncpoly().mul_right(&l));
    }

    #[test]
    fn star_product_is_associative(a in series(4), b in series(4), c in series(4)) {
        prop_assert_eq!(a.star_product(&b).star_product(&c), a.star_product(&b.star_product(&c)));
    }

    #[test]
    fn star_product_of_real_series_is_pointwise(
        a in vec(rational_scalar(), 1..=4),
        b in vec(rational_scalar(), 1..=4),
    ) {
        let a = SliceSeries::new(a.into_iter().map(Quaternion::real).collect());
        let b = SliceSeries::new(b.into_iter().map(Quaternion::real).collect());
        prop_assert_eq!(a.star_product(&b).to_ncpoly(), a.to_ncpoly().mul(&b.to_ncpoly()));
    }

    #[test]
    fn order_one_v_power_is_identity(f in matrix(1, 5)) {
        prop_assert_eq!(f.global_v_power(), f.row(0));
    }

    #[test]
    fn fueter_maps_are_right_linear_and_land_in_range(
        (f, g) in (0usize..=2).prop_flat_map(|n| (matrix(n + 1, 5), matrix(n + 1, 5))),
        l in rquat(),
    ) {
        let n = f.n() as u32;
        let h = f.add_scaled(&g, &l).unwrap();
        prop_assert_eq!(map_c(&h), &map_c(&f) + &map_c(&g).mul_right(&l));
        prop_assert_eq!(map_tau(&h), &map_tau(&f) + &map_tau(&g).mul_right(&l));
        prop_assert!(map_c(&f).fueter_d_pow(n + 1).is_zero());
        prop_assert!(map_tau(&f).fueter_d().is_zero());
    }

    #[test]
    fn a_inner_product_is_hermitian_and_positive(
        (f, g, h) in (0usize..=3).prop_flat_map(|n| {
            let el = move || vec(vec(rquat(), n + 1), 3).prop_map(move |b| ASpaceElement::new(n, b).unwrap());
            (el(), el(), el())
        }),
    ) {
        let sum = ASpaceElement::new(
            f.n,
            f.beta.iter().zip(&g.beta).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect(),
        ).unwrap();
        prop_assert_eq!(inner_a(&sum, &h).unwrap(), &inner_a(&f, &h).unwrap() + &inner_a(&g, &h).unwrap());
        prop_assert_eq!(inner_a(&g, &f).unwrap(), inner_a(&f, &g).unwrap().conj());
        let ff = inner_a(&f, &f).unwrap();
        prop_assert!(ff.x.is_zero() && ff.y.is_zero() && ff.z.is_zero());
        prop_assert_eq!(ff.w.to_f64() > 0.0, !f.is_zero());
    }

    #[test]
    fn matrix_json_round_trips(f in matrix(2, 3)) {
        prop_assert_eq!(SliceCoeffMatrix::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn report_floats_round_trip(v in any::<f64>().prop_filter("finite", |v| v.is_finite())) {
        prop_assert_eq!(format_f64(v).parse::<f64>().unwrap(), v);
    }
}
