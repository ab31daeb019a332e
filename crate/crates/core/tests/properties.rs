use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use sextic::cmfield::{classify, deuring_type, prime_bound};
use sextic::curves::{normalize_cover, rh_genus, zeta_classify, CoverSpec, Curve};
use sextic::exactmath::arith::{is_prime, parse_rational, rat, ratio, rational_sqrt};
use sextic::exactmath::{isolate_real_roots, sqrt_in_field};
use sextic::quaternion::{
    build_algebra, lift_t, mat3_dagger, maximal_order, reduced_diagonal_trace, to_m12q, to_m4q,
};
use sextic::{CMFieldSpec, CubicFieldSpec, CubicNum, QMatrix, QMatrix3, Quaternion, UniPoly};

const PRIMES: [u64; 8] = [2, 3, 5, 7, 13, 17, 101, 1009];

fn small() -> impl Strategy<Value = i64> {
    -6i64..=6
}

fn quat() -> impl Strategy<Value = Quaternion> {
    [small(), small(), small(), small()].prop_map(Quaternion::from_i64s)
}

fn mat3() -> impl Strategy<Value = QMatrix3> {
    proptest::collection::vec(quat(), 9).prop_map(|v| QMatrix3::from_fn(|i, j| v[3 * i + j].clone()))
}

fn cubic() -> impl Strategy<Value = CubicNum> {
    [small(), small(), small()].prop_map(CubicNum::from_i64s)
}

fn zeta7_base() -> CubicFieldSpec {
    CubicFieldSpec::from_i64s([-1, -2, 1, 1]).unwrap()
}

fn fixtures() -> Vec<CMFieldSpec> {
    vec![
        CMFieldSpec::from_i64s([-1, -2, 1, 1], [-4, 0, 1], false).unwrap(),
        CMFieldSpec::from_i64s([-3, 12, -7, 1], [-3, 0, 0], true).unwrap(),
        CMFieldSpec::from_i64s([-7, 14, -7, 1], [1, -6, 1], false).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_are_reduced(n in -10_000i64..10_000, d in 1i64..10_000) {
        let q = parse_rational(&format!("{n}/{d}")).unwrap();
        prop_assert!(q.denom().is_positive());
        prop_assert!(q.numer().gcd(q.denom()) == BigInt::from(1) || q.numer().is_zero());
        prop_assert_eq!(q.clone(), ratio(n, d));
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn rational_sqrt_of_square(n in -500i64..500, d in 1i64..500) {
        let q = ratio(n, d);
        prop_assert_eq!(rational_sqrt(&(&q * &q)), Some(q.abs()));
    }

    #[test]
    fn nonsquares_have_no_rational_sqrt(n in 1i64..10_000) {
        let r = (n as f64).sqrt() as i64;
        prop_assume!(r * r != n && (r + 1) * (r + 1) != n);
        prop_assert_eq!(rational_sqrt(&rat(n)), None);
    }

    #[test]
    fn cayley_hamilton(v in proptest::collection::vec(small(), 16), t in small()) {
        let rows: Vec<Vec<_>> = v.chunks(4).map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        let a = QMatrix::from_rows(rows);
        let c = a.charpoly();
        prop_assert!(a.eval_poly(&c).is_zero());
        // c(t) = det(t I - A)
        let tia = &QMatrix::identity(4).scale(&rat(t)) - &a;
        prop_assert_eq!(c.eval(&rat(t)), tia.det());
    }

    #[test]
    fn cubic_trace_additive_norm_multiplicative(x in cubic(), y in cubic()) {
        let k = zeta7_base();
        prop_assert_eq!(k.trace(&x.add(&y)), k.trace(&x) + k.trace(&y));
        prop_assert_eq!(k.norm(&k.mul(&x, &y)), k.norm(&x) * k.norm(&y));
    }

    #[test]
    fn cubic_sqrt_of_square(x in cubic()) {
        prop_assume!(!x.is_zero());
        let k = zeta7_base();
        let s = sqrt_in_field(&k.square(&x), &k).expect("a square has a root");
        prop_assert!(s == x || s == x.neg());
    }

    #[test]
    fn sturm_counts_constructed_roots(
        roots in proptest::collection::btree_set(-20i64..20, 0..5),
        c in 1i64..30,
        with_quadratic in any::<bool>(),
    ) {
        let mut f = UniPoly::one();
        for &r in &roots {
            f = &f * &UniPoly::linear(rat(r));
        }
        if with_quadratic {
            f = &f * &UniPoly::from_i64s(&[c, 0, 1]);
        }
        prop_assume!(f.degree().unwrap_or(0) > 0);
        prop_assert_eq!(isolate_real_roots(&f).unwrap().len(), roots.len());
    }

    #[test]
    fn classification_survives_square_rescaling(k in 0usize..3, s in cubic()) {
        prop_assume!(!s.is_zero());
        let f = &fixtures()[k];
        let g = f.rescaled(&s).unwrap();
        prop_assert_eq!(classify(&g).unwrap(), classify(f).unwrap());
    }

    #[test]
    fn bound_scales_as_twelfth_power(k in prop_oneof![Just(0usize), Just(2usize)], n in 1i64..6, d in 1i64..6) {
        let f = &fixtures()[k];
        let c = ratio(n, d);
        let g = f.rescaled(&CubicNum::from_rational(c.clone())).unwrap();
        let b = prime_bound(f).unwrap().bound;
        prop_assert_eq!(prime_bound(&g).unwrap().bound, b * num_traits::pow(c, 12));
    }

    #[test]
    fn deuring_depends_on_residue(d in prop::sample::select(vec![-1i64, -2, -3, -5, -7, -11, -19, -43]), p0 in 5u64..3000) {
        let m = 4 * d.unsigned_abs();
        let p = (p0..).find(|&p| is_prime(p) && m % p != 0).unwrap();
        let q = (p + 1..).find(|&q| is_prime(q) && q % m == p % m).unwrap();
        prop_assert_eq!(deuring_type(d, p).unwrap(), deuring_type(d, q).unwrap());
    }

    #[test]
    fn nrd_multiplicative_and_m4_homomorphic(pi in 0usize..PRIMES.len(), x in quat(), y in quat()) {
        let alg = build_algebra(PRIMES[pi]).unwrap();
        let xy = alg.mul(&x, &y);
        prop_assert_eq!(alg.nrd(&xy), alg.nrd(&x) * alg.nrd(&y));
        prop_assert_eq!(alg.mul(&x, &x.conj()), Quaternion::scalar(alg.nrd(&x)));
        prop_assert_eq!(to_m4q(&alg, &xy), &to_m4q(&alg, &x) * &to_m4q(&alg, &y));
        let n = alg.nrd(&x);
        prop_assert_eq!(to_m4q(&alg, &x).det(), &n * &n);
    }

    #[test]
    fn dagger_reverses_products(pi in 0usize..PRIMES.len(), x in mat3(), y in mat3()) {
        let alg = build_algebra(PRIMES[pi]).unwrap();
        let lhs = mat3_dagger(&alg.mat3_mul(&x, &y));
        let rhs = alg.mat3_mul(&mat3_dagger(&y), &mat3_dagger(&x));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(mat3_dagger(&mat3_dagger(&x)), x);
    }

    #[test]
    fn m12_trace_of_lifted_square(c in proptest::collection::vec([small(), small(), small(), small()], 6)) {
        let alg = build_algebra(3).unwrap();
        let ord = maximal_order(&alg).unwrap();
        let el = |k: usize| ord.element(&c[k]);
        let (s, t) = (el(3), el(4));
        prop_assume!(!s.is_zero() && !t.is_zero());
        let mut q = QMatrix3::zero();
        for i in 0..3 {
            let d = el(i);
            q.e[i][i] = d.sub(&d.conj());
        }
        for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            q.e[i][j] = el(3 + k);
            q.e[j][i] = el(3 + k).conj().neg();
        }
        let d2 = alg.nrd(&s).to_i64().unwrap();
        let d3 = alg.nrd(&t).to_i64().unwrap();
        let lifted = lift_t(&alg, &q, d2, d3).unwrap().t;
        let t2 = alg.mat3_mul(&lifted, &lifted);
        let scalar_sum = (0..3).fold(rat(0), |a, i| a + t2.e[i][i].c[0].clone());
        let tr_u = to_m12q(&alg, &t2).trace();
        prop_assert_eq!(tr_u.clone(), rat(4) * scalar_sum);
        prop_assert_eq!(tr_u, rat(2) * reduced_diagonal_trace(&t2));
    }

    #[test]
    fn cover_normal_form_is_idempotent(n in 3u64..=12, a1 in 1u64..12, a2 in 1u64..12) {
        let Ok(c) = CoverSpec::new(n, a1 % n, a2 % n) else { return Ok(()) };
        let f = normalize_cover(&c);
        let c2 = CoverSpec::new(f[0], f[1], f[2]).unwrap();
        prop_assert_eq!(normalize_cover(&c2), f);
        prop_assert_eq!(rh_genus(&c2).unwrap(), rh_genus(&c).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn l_polynomial_has_degree_twice_genus(
        t in prop::sample::select(vec![(9u64, 1u64, 3u64), (7, 1, 2), (7, 1, 1), (5, 1, 1), (8, 1, 4)]),
        p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]),
    ) {
        let curve = Curve::Cover(CoverSpec::new(t.0, t.1, t.2).unwrap());
        prop_assume!(curve.check_good(p).is_ok());
        let z = zeta_classify(&curve, p).unwrap();
        let g = z.genus as usize;
        prop_assert_eq!(z.l.len(), 2 * g + 1);
        prop_assert_eq!(z.l[0], 1);
        prop_assert_eq!(z.l[2 * g], (p as i64).pow(g as u32));
    }
}
