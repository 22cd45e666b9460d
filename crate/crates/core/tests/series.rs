use num_traits::{One, Zero};
use proptest::prelude::*;
use riordan::fps::{factorial, rat, ratio, solve_fixpoint, Rat, Series, SeriesError, Valuation};

const N: usize = 8;

fn series_with(order: usize, lead: std::ops::Range<i64>) -> impl Strategy<Value = Series> {
    (lead, proptest::collection::vec(-4i64..=4, order)).prop_map(|(c0, rest)| {
        let mut v = vec![c0];
        v.extend(rest);
        Series::from_ints(&v)
    })
}

fn any_series() -> impl Strategy<Value = Series> {
    series_with(N, -4..5)
}

fn unit_series() -> impl Strategy<Value = Series> {
    proptest::collection::vec(-4i64..=4, N).prop_map(|rest| {
        let mut v = vec![1];
        v.extend(rest);
        Series::from_ints(&v)
    })
}

fn valuation_one() -> impl Strategy<Value = Series> {
    (prop_oneof![-3i64..=-1, 1i64..=3], proptest::collection::vec(-3i64..=3, N - 1)).prop_map(|(a1, rest)| {
        let mut v = vec![0, a1];
        v.extend(rest);
        Series::from_ints(&v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(a in any_series(), b in any_series(), c in any_series()) {
        prop_assert_eq!(a.mul_series(&b).mul_series(&c), a.mul_series(&b.mul_series(&c)));
    }

    #[test]
    fn multiplication_distributes(a in any_series(), b in any_series(), c in any_series()) {
        prop_assert_eq!(a.mul_series(&(&b + &c)), &a.mul_series(&b) + &a.mul_series(&c));
    }

    #[test]
    fn addition_is_associative_and_commutative(a in any_series(), b in any_series(), c in any_series()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn mixed_orders_truncate_to_the_shorter(a in series_with(5, -4..5), b in any_series()) {
        prop_assert_eq!((&a + &b).order(), 5);
        prop_assert_eq!(a.mul_series(&b).order(), 5);
    }

    #[test]
    fn division_inverts_multiplication(a in any_series(), b in unit_series()) {
        let q = a.mul_series(&b).div(&b).unwrap();
        prop_assert_eq!(q, a);
    }

    #[test]
    fn inverse_is_two_sided(f in valuation_one()) {
        let inv = f.comp_inverse().unwrap();
        prop_assert!(inv.compose(&f).unwrap().agrees_with(&Series::z(N)));
        prop_assert!(f.compose(&inv).unwrap().agrees_with(&Series::z(N)));
    }

    #[test]
    fn composition_is_associative(a in any_series(), f in valuation_one(), g in valuation_one()) {
        let left = a.compose(&f).unwrap().compose(&g).unwrap();
        let right = a.compose(&f.compose(&g).unwrap()).unwrap();
        prop_assert!(left.agrees_with(&right));
    }

    #[test]
    fn rational_power_raised_to_denominator(a in unit_series(), p in -3i64..=3, q in 2i64..=4) {
        let root = a.pow_rational(&ratio(p, q)).unwrap();
        let lhs = root.pow_int(q).unwrap();
        let rhs = a.pow_rational(&rat(p)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_undoes_log(a in unit_series()) {
        prop_assert_eq!(a.log().unwrap().exp().unwrap(), a);
    }

    #[test]
    fn log_undoes_exp(a in series_with(N, 0..1)) {
        prop_assert_eq!(a.exp().unwrap().log().unwrap(), a);
    }

    #[test]
    fn sqrt_squares_back(a in unit_series()) {
        let sq = a.mul_series(&a);
        prop_assert_eq!(sq.sqrt().unwrap(), a.clone());
        let r = a.sqrt().unwrap();
        prop_assert_eq!(r.mul_series(&r), a);
    }

    #[test]
    fn fixpoint_leaves_no_residual(p in -2i64..=2, q in 1i64..=3, r in -2i64..=2) {
        let update = |g: &Series| {
            let n = g.order();
            let poly = Series::from_ints(&[p, q, r]).extend_with_zeros(n);
            Ok(&Series::one(n) + &poly.compose(&(g - &Series::one(n)))?.shift_up(1).truncate(n))
        };
        let g = solve_fixpoint(update, &Series::one(0), 12).unwrap();
        prop_assert_eq!(g.order(), 12);
        prop_assert_eq!(update(&g).unwrap(), g);
    }

    #[test]
    fn aerate_then_section_is_identity(a in any_series(), q in 1usize..=4) {
        prop_assert_eq!(a.aerate(q).extract_section(q, 0).truncate(N), a);
    }

    #[test]
    fn egf_count_conversion_round_trips(a in any_series()) {
        prop_assert_eq!(a.egf_to_counts().counts_to_egf(), a);
    }
}

#[test]
fn exp_of_z_has_factorial_reciprocals() {
    let e = Series::z(10).exp().unwrap();
    for n in 0..=10 {
        assert_eq!(*e.coeff(n), Rat::new(1.into(), factorial(n)));
    }
}

#[test]
fn log_of_one_plus_z() {
    let l = Series::from_ints(&[1, 1]).extend_with_zeros(9).log().unwrap();
    for n in 1..=9 {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        assert_eq!(*l.coeff(n), ratio(sign, n as i64));
    }
}

#[test]
fn sqrt_of_one_minus_four_z_gives_catalan() {
    let s = Series::from_ints(&[1, -4]).extend_with_zeros(12).sqrt().unwrap();
    let c = (&Series::one(12) - &s).shift_down(1).unwrap().scale(&ratio(1, 2));
    let expected = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
    for (i, e) in expected.iter().enumerate() {
        assert_eq!(*c.coeff(i), rat(*e));
    }
}

#[test]
fn sqrt_takes_positive_leading_branch() {
    let s = Series::from_ints(&[0, 0, 9, 6, 1]).sqrt().unwrap();
    assert_eq!(s.coeffs()[..3], [rat(0), rat(3), rat(1)]);
    assert!(matches!(
        Series::from_ints(&[2, 1]).sqrt(),
        Err(SeriesError::NonSquareLeadingCoefficient(_))
    ));
    assert!(matches!(Series::from_ints(&[0, 1, 1]).sqrt(), Err(SeriesError::OddValuation(1))));
}

#[test]
fn composition_needs_positive_inner_valuation() {
    let a = Series::from_ints(&[1, 1, 1]);
    assert_eq!(
        a.compose(&Series::from_ints(&[1, 1, 0])),
        Err(SeriesError::NonpositiveInnerValuation)
    );
}

#[test]
fn composition_order_with_higher_valuation_inner() {
    let a = Series::from_ints(&[1, 1, 1, 1]);
    let inner = Series::monomial(Rat::one(), 2, 20);
    let c = a.compose(&inner).unwrap();
    assert_eq!(c.order(), 7);
    assert_eq!(c, Series::from_ints(&[1, 0, 1, 0, 1, 0, 1, 0]));
}

#[test]
fn division_with_common_valuation() {
    let num = Series::from_ints(&[0, 0, 2, 2, 0]);
    let den = Series::from_ints(&[0, 1, 1, 0, 0]);
    let q = num.div(&den).unwrap();
    assert_eq!(q, Series::from_ints(&[0, 2, 0, 0]));
    assert!(matches!(
        den.div(&num),
        Err(SeriesError::DivisionByHigherValuation { .. })
    ));
}

#[test]
fn comp_inverse_rejects_bad_input() {
    assert_eq!(Series::from_ints(&[1, 1]).comp_inverse(), Err(SeriesError::NotInvertible));
    assert_eq!(Series::from_ints(&[0, 0, 1]).comp_inverse(), Err(SeriesError::NotInvertible));
}

#[test]
fn fractional_power_needs_unit_constant() {
    assert!(matches!(
        Series::from_ints(&[2, 1]).pow_rational(&ratio(1, 2)),
        Err(SeriesError::NonUnitConstantTerm(_))
    ));
    assert_eq!(Series::from_ints(&[0, 1]).pow_int(-1), Err(SeriesError::NotInvertible));
}

#[test]
fn negative_integer_power_of_one_minus_z() {
    let p = Series::from_ints(&[1, -1]).extend_with_zeros(8).pow_int(-3).unwrap();
    for n in 0..=8i64 {
        assert_eq!(*p.coeff(n as usize), rat((n + 1) * (n + 2) / 2));
    }
}

#[test]
fn valuation_and_zero() {
    assert_eq!(Series::zero(5).valuation(), Valuation::AllZero);
    assert_eq!(Series::from_ints(&[0, 0, 3]).valuation(), Valuation::Finite(2));
    assert!(Series::from_ints(&[0, 0, 0]).is_zero());
}

#[test]
fn shift_down_requires_vanishing_prefix() {
    assert!(Series::from_ints(&[1, 2]).shift_down(1).is_err());
    assert_eq!(Series::from_ints(&[0, 2, 3]).shift_down(1).unwrap(), Series::from_ints(&[2, 3]));
}

#[test]
fn fixpoint_rejects_non_contracting_update() {
    let err = solve_fixpoint(|g| Ok(g.scale(&rat(2))), &Series::one(0), 4).unwrap_err();
    assert!(matches!(err, SeriesError::NotContracting { .. }));
}

#[test]
fn negate_and_scale_variable() {
    let a = Series::from_ints(&[1, 2, 3, 4]);
    assert_eq!(a.negate_variable(), Series::from_ints(&[1, -2, 3, -4]));
    assert_eq!(a.scale_variable(&rat(2)), Series::from_ints(&[1, 4, 12, 32]));
    assert!(Series::from_ints(&[0, 1]).derivative().coeff(0).is_one());
    assert!(Series::zero(3).coeff(2).is_zero());
}
