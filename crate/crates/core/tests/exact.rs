use std::str::FromStr;

use critical_fock::exact::{laurent_arith, laurent_derivative, rref_span, LaurentOp};
use critical_fock::{HalfInt, LaurentData, LinComb, ParseScalarError, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn same(s: &Scalar, b: &BigRational) -> bool {
    s.to_string() == b.to_string()
}

fn num() -> impl Strategy<Value = i64> {
    prop_oneof![-50i64..=50, any::<i64>().prop_filter("not min", |x| *x != i64::MIN)]
}

fn den() -> impl Strategy<Value = i64> {
    prop_oneof![1i64..=30, 1i64..=i64::MAX]
}

proptest! {
    #[test]
    fn arithmetic_matches_bigrational(a in num(), b in den(), c in num(), d in den()) {
        let (x, y) = (Scalar::frac(a, b), Scalar::frac(c, d));
        let (bx, by) = (big(a, b), big(c, d));
        prop_assert!(same(&(&x + &y), &(&bx + &by)));
        prop_assert!(same(&(&x - &y), &(&bx - &by)));
        prop_assert!(same(&(&x * &y), &(&bx * &by)));
        if c != 0 {
            prop_assert!(same(&(&x / &y), &(&bx / &by)));
            prop_assert_eq!(&(&x / &y) * &y, x.clone());
        }
        prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
        prop_assert_eq!(Scalar::from_str(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn leibniz_rule(
        a in prop::collection::vec((-2i64..=3, -5i64..=5), 0..4),
        b in prop::collection::vec((-2i64..=3, -5i64..=5), 0..4),
    ) {
        let a = LaurentData::from_pairs(a.into_iter().map(|(k, c)| (k, Scalar::from_int(c))));
        let b = LaurentData::from_pairs(b.into_iter().map(|(k, c)| (k, Scalar::from_int(c))));
        let lhs = laurent_derivative(&a.mul(&b));
        let rhs = laurent_derivative(&a).mul(&b).add(&a.mul(&laurent_derivative(&b)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rref_is_idempotent(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..6)) {
        let vecs: Vec<LinComb<usize>> = rows
            .iter()
            .map(|r| r.iter().enumerate().map(|(i, c)| (i, Scalar::from_int(*c))).collect())
            .collect();
        let span = rref_span(&vecs);
        let again = rref_span(&span.rows().cloned().collect::<Vec<_>>());
        prop_assert_eq!(span.rows().collect::<Vec<_>>(), again.rows().collect::<Vec<_>>());
        for v in &vecs {
            prop_assert!(span.contains(v));
        }
    }
}

#[test]
fn parsing() {
    assert_eq!(Scalar::from_str("3/4").unwrap(), Scalar::frac(3, 4));
    assert_eq!(Scalar::from_str("-6/8").unwrap(), Scalar::frac(-3, 4));
    assert_eq!(Scalar::from_str("7").unwrap(), Scalar::from_int(7));
    assert!(matches!(
        Scalar::from_str("1/0"),
        Err(ParseScalarError::ZeroDenominator(_))
    ));
    assert!(matches!(Scalar::from_str("x"), Err(ParseScalarError::Malformed(_))));
    let huge = "123456789012345678901234567891/2";
    assert_eq!(Scalar::from_str(huge).unwrap().to_string(), huge);
}

#[test]
fn laurent_examples() {
    let (l, m) = (Scalar::frac(1, 2), Scalar::frac(1, 3));
    let prod = laurent_arith(
        LaurentOp::Mul,
        &LaurentData::simple_pole(l.clone()),
        &LaurentData::simple_pole(m.clone()),
    );
    assert_eq!(prod, LaurentData::monomial(1, &l * &m));
    let z2 = LaurentData::monomial(1, Scalar::one());
    assert_eq!(z2.mul(&z2), LaurentData::monomial(3, Scalar::one()));
    assert_eq!(z2.add(&LaurentData::zero()), z2);
    assert_eq!(
        laurent_derivative(&LaurentData::simple_pole(Scalar::one())),
        LaurentData::monomial(1, -Scalar::one())
    );
    assert!(laurent_derivative(&LaurentData::monomial(-1, Scalar::one())).is_zero());
    assert_eq!(laurent_derivative(&z2), LaurentData::monomial(2, Scalar::from_int(-2)));
    assert_eq!(LaurentData::monomial(2, Scalar::one()).pole_index(), 2);
    assert_eq!(LaurentData::monomial(-3, Scalar::one()).pole_index(), 0);
}

#[test]
fn span_examples() {
    let v = |a: i64, b: i64| -> LinComb<u8> {
        [(0u8, Scalar::from_int(a)), (1u8, Scalar::from_int(b))]
            .into_iter()
            .collect()
    };
    let s = rref_span(&[v(1, 0), v(0, 1)]);
    assert_eq!(s.dimension(), 2);
    assert!(s.contains(&v(3, -5)));
    assert_eq!(rref_span(&[v(1, 1), v(2, 2)]).dimension(), 1);
    let empty = rref_span::<u8>(&[]);
    assert_eq!(empty.dimension(), 0);
    assert!(empty.contains(&LinComb::zero()));
    assert!(!empty.contains(&v(1, 0)));
}

#[test]
fn half_integers() {
    let h = HalfInt::from_twice(-3);
    assert_eq!(h.to_string(), "-3/2");
    assert!(h.is_half_odd());
    assert_eq!(h + HalfInt::HALF, HalfInt::int(-1));
    assert_eq!(h.to_scalar(), Scalar::frac(-3, 2));
}
