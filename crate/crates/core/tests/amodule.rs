use critical_fock::amodule::{a_apply, a_relation_check, scalar_fields, AGenerator, ModuleSpec};
use critical_fock::fock::{psi_apply, FermionMonomial, FockVector};
use critical_fock::{HalfInt, LaurentData, Scalar, Sign};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

fn vac() -> FockVector {
    FockVector::basis(FermionMonomial::vacuum())
}

fn g(sign: Sign, twice: i64) -> AGenerator {
    AGenerator::g(sign, HalfInt::from_twice(twice))
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::frac(n, d))
}

#[test]
fn action_examples() {
    let lambda = q(1, 2);
    let spec = ModuleSpec::full_simple(lambda.clone(), q(1, 3));
    let out = a_apply(g(Sign::Plus, -3), &spec, &vac()).unwrap();
    let expected = psi_apply(Sign::Plus, HalfInt::from_twice(-3), &vac()).scaled(&(&lambda + &Scalar::one()));
    assert_eq!(out, expected);

    let chi0 = q(2, 7);
    let spec = ModuleSpec::full_simple(lambda, chi0.clone());
    let two = a_apply(
        g(Sign::Minus, -3),
        &spec,
        &a_apply(g(Sign::Minus, -1), &spec, &vac()).unwrap(),
    )
    .unwrap();
    let word = psi_apply(
        Sign::Minus,
        HalfInt::from_twice(-3),
        &psi_apply(Sign::Minus, HalfInt::from_twice(-1), &vac()),
    );
    assert_eq!(two, word.scaled(&(&chi0 * &(&chi0 + &Scalar::one()))));

    let tilde = ModuleSpec::Tilde {
        chi: LaurentData::simple_pole(q(1, 3)),
    };
    assert!(a_apply(g(Sign::Plus, -1), &tilde, &vac()).unwrap().is_zero());
}

#[test]
fn carrier_is_enforced() {
    let tilde = ModuleSpec::Tilde {
        chi: LaurentData::zero(),
    };
    let bad = FockVector::basis(FermionMonomial::from_twice(vec![1], vec![]).unwrap());
    assert!(a_apply(g(Sign::Minus, -1), &tilde, &bad).is_err());
    let bar = ModuleSpec::Bar { m: 1, n: 2 };
    let bad = FockVector::basis(FermionMonomial::from_twice(vec![], vec![5]).unwrap());
    assert!(a_apply(g(Sign::Plus, -1), &bar, &bad).is_err());
}

#[test]
fn scalar_field_examples() {
    let zero = scalar_fields(&ModuleSpec::full_simple(Scalar::zero(), Scalar::zero()));
    for n in -3..=3 {
        assert!(zero.s(n).is_zero() && zero.t(n).is_zero());
    }
    let lambda = q(3, 5);
    let tilde = scalar_fields(&ModuleSpec::Tilde {
        chi: LaurentData::simple_pole(-lambda.clone()),
    });
    assert_eq!(tilde.t(0), &lambda / &Scalar::from_int(2));
}

#[test]
fn bar_matches_its_closed_form() {
    for (m, n) in [(0u32, 0u32), (1, 2), (2, 1), (0, 3)] {
        let spec = ModuleSpec::Bar { m, n };
        let carrier = spec.carrier();
        for mono in carrier.basis(HalfInt::int(4), None) {
            let v = FockVector::basis(mono);
            for i in -4..=4 {
                let r = HalfInt::from_twice(2 * i - 1);
                for (sign, shift) in [(Sign::Plus, m), (Sign::Minus, n)] {
                    let general = a_apply(AGenerator::g(sign, r), &spec, &v).unwrap();
                    let closed = psi_apply(sign, r, &v).scaled(&Scalar::from_int(-(i + shift as i64)));
                    assert_eq!(general, closed, "Bar({m},{n}) G{}({r}) on {v}", sign.symbol());
                    assert!(carrier.contains_vector(&general));
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn simple_pole_scalars(lambda in rational(), mu in rational()) {
        let f = scalar_fields(&ModuleSpec::full_simple(lambda.clone(), mu.clone()));
        prop_assert_eq!(f.t(0), (&lambda - &mu) / Scalar::from_int(2));
        let s0 = &(&(&Scalar::from_int(2) * &(&lambda * &mu)) - &lambda) - &mu;
        prop_assert_eq!(f.s(0), s0 / Scalar::from_int(4));
    }

    #[test]
    fn half_anticommutator_on_vacuum(lambda in rational(), mu in rational()) {
        // {G⁺(½), G⁻(-½)}𝟙 = μ(λ-1)𝟙
        let spec = ModuleSpec::full_simple(lambda.clone(), mu.clone());
        let a = a_apply(g(Sign::Plus, 1), &spec, &a_apply(g(Sign::Minus, -1), &spec, &vac()).unwrap()).unwrap();
        let b = a_apply(g(Sign::Minus, -1), &spec, &a_apply(g(Sign::Plus, 1), &spec, &vac()).unwrap()).unwrap();
        prop_assert_eq!(a + b, vac().scaled(&(&mu * &(&lambda - &Scalar::one()))));
    }

    #[test]
    fn relations_for_random_twists(
        plus in prop::collection::vec((0i64..=2, rational()), 0..3),
        minus in prop::collection::vec((0i64..=2, rational()), 0..3),
    ) {
        let spec = ModuleSpec::Full {
            chi_plus: LaurentData::from_pairs(plus),
            chi_minus: LaurentData::from_pairs(minus),
        };
        let report = a_relation_check(&spec, HalfInt::from_twice(5), HalfInt::int(2));
        prop_assert!(report.passed(), "{:?}", report.violations.first());
    }

    #[test]
    fn generators_shift_grades(lambda in rational(), i in -3i64..=3, sign in prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]) {
        let spec = ModuleSpec::full_simple(lambda, Scalar::frac(1, 3));
        let r = HalfInt::from_twice(2 * i - 1);
        for mono in spec.carrier().basis(HalfInt::int(3), None) {
            let out = a_apply(AGenerator::g(sign, r), &spec, &FockVector::basis(mono.clone())).unwrap();
            for k in out.keys() {
                prop_assert_eq!(k.charge(), mono.charge() + sign.value());
                prop_assert_eq!(k.weight(), mono.weight() - r);
            }
        }
    }
}

#[test]
fn relation_suite_small() {
    for spec in [
        ModuleSpec::full_simple(Scalar::zero(), Scalar::zero()),
        ModuleSpec::Tilde {
            chi: LaurentData::from_pairs([(1, Scalar::one())]),
        },
        ModuleSpec::Bar { m: 0, n: 1 },
    ] {
        let report = a_relation_check(&spec, HalfInt::from_twice(5), HalfInt::int(3));
        assert!(report.passed(), "{spec}: {:?}", report.violations.first());
        assert!(report.checked > 0);
    }
}
