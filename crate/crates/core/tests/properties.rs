use num_bigint::BigInt;
use num_rational::BigRational as Q;
use num_traits::{One, Zero};
use proptest::prelude::*;

use localfield::haar::{integrate, Cylinder, MultiPoly, PolyDensity};
use localfield::interval::RationalInterval;
use localfield::padic::PAdicApprox;
use localfield::parse::parse_poly;
use localfield::places::newton_polygon;
use localfield::poly::IntPolynomial;
use localfield::primes::Prime;
use localfield::projaut::{projective_order, QMatrix};

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

fn nonzero_rational() -> impl Strategy<Value = Q> {
    (-500i64..500, 1i64..500).prop_filter_map("zero", |(n, d)| (n != 0).then(|| q(n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cylinder_children_partition(p in small_prime(), n in 1usize..=2, depth in 0u32..4, c in prop::collection::vec(0i64..1000, 2)) {
        let cyl = Cylinder::from_ints(Prime::new(p).unwrap(), &c[..n], depth).unwrap();
        let kids = cyl.children();
        prop_assert_eq!(kids.len() as u64, p.pow(n as u32));
        let total: Q = kids.iter().map(Cylinder::measure).sum();
        prop_assert_eq!(total, cyl.measure());
        for (i, a) in kids.iter().enumerate() {
            prop_assert!(cyl.contains(a));
            for b in &kids[i + 1..] {
                prop_assert!(a.is_disjoint(b));
            }
        }
    }

    #[test]
    fn integrals_nest_as_depth_grows(p in prop::sample::select(vec![2u64, 3]), coeffs in prop::collection::vec(-6i64..=6, 2..4), m in 1u32..=2) {
        let terms = coeffs.iter().enumerate().map(|(k, &c)| (vec![k as u32], Q::from_integer(c.into())));
        let f = MultiPoly::from_terms(1, terms);
        prop_assume!(!f.is_zero());
        let d = PolyDensity::new(f, m).unwrap();
        let region = Cylinder::unit(Prime::new(p).unwrap(), 1);
        let mut prev: Option<RationalInterval> = None;
        for depth in 1..=5 {
            let iv = integrate(&d, &region, depth).unwrap();
            prop_assert!(iv.lo() >= &Q::zero() && iv.hi() <= &Q::one());
            if let Some(prev) = &prev {
                prop_assert!(prev.contains_interval(&iv), "{} not inside {}", iv, prev);
            }
            prev = Some(iv);
        }
    }

    #[test]
    fn padic_arithmetic_matches_rationals(p in small_prime(), a in nonzero_rational(), b in nonzero_rational()) {
        let prime = Prime::new(p).unwrap();
        let x = PAdicApprox::from_rational(&a, prime, 20).unwrap();
        let y = PAdicApprox::from_rational(&b, prime, 20).unwrap();
        prop_assert!(x.represents(&a));
        prop_assert!(x.mul(&y).unwrap().represents(&(&a * &b)));
        prop_assert!(x.inv().unwrap().represents(&a.recip()));
        // addition may lose all digits to cancellation; when it succeeds it must agree
        if let Ok(s) = x.add(&y) {
            prop_assert!(s.represents(&(&a + &b)));
        }
        prop_assert_eq!(x.norm().mul(&y.norm()), x.mul(&y).unwrap().norm());
    }

    #[test]
    fn poly_print_parse_round_trip(coeffs in prop::collection::vec(-50i64..=50, 1..8)) {
        let f = IntPolynomial::from_i64(&coeffs);
        prop_assume!(!f.is_zero());
        // parsing normalizes to the primitive part
        let g = f.primitive_part();
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), g.clone());
        prop_assert_eq!(parse_poly(&f.to_bracket_string()).unwrap(), g);
    }

    #[test]
    fn newton_slopes_give_root_valuations(p in small_prime(), roots in prop::collection::vec((-3i64..=3, 1i64..30, 1i64..30), 1..5)) {
        // f = prod (b x - a) with root a/b of prescribed valuation
        let mut f = IntPolynomial::one();
        let mut expected = Vec::new();
        for (k, u, w) in roots {
            prop_assume!(u % p as i64 != 0 && w % p as i64 != 0);
            let pk = BigInt::from(p).pow(k.unsigned_abs() as u32);
            let (a, b) = if k >= 0 { (pk * u, BigInt::from(w)) } else { (BigInt::from(u), pk * w) };
            let lin = IntPolynomial::new(vec![-a, b]);
            f = IntPolynomial::from_rationals(&localfield::poly::mul_q(&f.to_rationals(), &lin.to_rationals()));
            expected.push(Q::from_integer(k.into()));
        }
        let np = newton_polygon(&f, Prime::new(p).unwrap()).unwrap();
        let mut got: Vec<Q> = np.root_valuations().into_iter().flat_map(|(v, n)| std::iter::repeat(v).take(n)).collect();
        got.sort();
        expected.sort();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn interval_scaling_preserves_containment(lo in -100i64..100, w in 0i64..100, t in 0i64..=100, c in (1i64..500, 1i64..500).prop_map(|(n, d)| q(n, d))) {
        let iv = RationalInterval::new(q(lo, 7), q(lo + w, 7)).unwrap();
        let x = q(lo, 7) + q(w * t, 700);
        prop_assert!(iv.contains(&x));
        prop_assert!(iv.scale(&c).contains(&(&x * &c)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn projective_order_ignores_scalars(a in nonzero_rational(), b in nonzero_rational(), c in nonzero_rational()) {
        let m = QMatrix::diagonal(&[a, b]);
        let base = projective_order(&m).unwrap().order();
        prop_assert_eq!(projective_order(&m.scale(&c)).unwrap().order(), base);
    }
}
