use std::collections::BTreeMap;

use critical_fock::affine::{sl2_relation_check_on, Sl2Gen, TensorMonomial, TensorVector};
use critical_fock::fock::FermionMonomial;
use critical_fock::lattice::LatticeMonomial;
use critical_fock::weyl::{
    intertwiner_check, realize, realize_monomial, realized_weyl_apply, tensor_vacuum, wakimoto_apply, weyl_apply,
    weyl_basis, weyl_relation_check, WakimotoAction, WeylGen, WeylMonomial, WeylVector,
};
use critical_fock::{LaurentData, Scalar};
use proptest::prelude::*;

fn vac() -> WeylVector {
    WeylVector::basis(WeylMonomial::vacuum())
}

fn mono(a: Vec<i64>, s: Vec<i64>) -> WeylVector {
    WeylVector::basis(WeylMonomial::new(a, s).unwrap())
}

fn weyl_monomial() -> impl Strategy<Value = WeylMonomial> {
    (
        prop::collection::vec(1i64..=3, 0..3),
        prop::collection::vec(0i64..=2, 0..3),
    )
        .prop_map(|(a, s)| WeylMonomial::new(a, s).unwrap())
}

fn weyl_gen() -> impl Strategy<Value = WeylGen> {
    prop_oneof![Just(WeylGen::A), Just(WeylGen::AStar)]
}

#[test]
fn weyl_examples() {
    assert!(weyl_apply(WeylGen::A, 0, &vac()).is_zero());
    let star = weyl_apply(WeylGen::AStar, 0, &vac());
    assert_eq!(star, mono(vec![], vec![0]));
    assert_eq!(weyl_apply(WeylGen::A, 0, &star), vac());
    assert!(WeylMonomial::new(vec![0], vec![]).is_err());
    assert_eq!(WeylMonomial::new(vec![1], vec![0]).unwrap().to_string(), "a(-1)a*(0)𝟙");
}

#[test]
fn wakimoto_on_vacuum() {
    let chi = LaurentData::from_pairs([(0, Scalar::frac(2, 3)), (1, Scalar::one())]);
    let chi0 = Scalar::frac(2, 3);
    assert_eq!(wakimoto_apply(Sl2Gen::H, 0, &chi, &vac()), vac().scaled(&-chi0.clone()));
    assert_eq!(wakimoto_apply(Sl2Gen::E, -1, &chi, &vac()), mono(vec![1], vec![]));
    // f(0)𝟙 = -Σ χ_k a*(-k)𝟙
    let f = mono(vec![], vec![0]).scaled(&-chi0) - mono(vec![], vec![1]);
    assert_eq!(wakimoto_apply(Sl2Gen::F, 0, &chi, &vac()), f);
}

#[test]
fn realized_examples() {
    let one = tensor_vacuum();
    let a = realized_weyl_apply(WeylGen::A, -1, &one).unwrap();
    let expected = TensorVector::basis(TensorMonomial::new(
        FermionMonomial::from_twice(vec![3], vec![]).unwrap(),
        LatticeMonomial::exp(1),
    ));
    assert_eq!(a, expected);
    assert!(realized_weyl_apply(WeylGen::A, 0, &one).unwrap().is_zero());
    let ab = realized_weyl_apply(WeylGen::A, 1, &realized_weyl_apply(WeylGen::AStar, -1, &one).unwrap()).unwrap();
    let ba = realized_weyl_apply(WeylGen::AStar, -1, &realized_weyl_apply(WeylGen::A, 1, &one).unwrap()).unwrap();
    assert_eq!(ab - ba, one);
    let outside = TensorVector::basis(TensorMonomial::new(
        FermionMonomial::from_twice(vec![1], vec![]).unwrap(),
        LatticeMonomial::vacuum(),
    ));
    assert!(realized_weyl_apply(WeylGen::A, 0, &outside).is_err());
}

/// `∏_{n≥1} (1 - x qⁿ)⁻¹ ∏_{n≥0} (1 - x⁻¹ qⁿ)⁻¹` restricted to `|x-degree| ≤ q`,
/// expanded one geometric factor at a time.
fn weyl_product(max_degree: i64, max_charge: i64) -> BTreeMap<(i64, i64), u64> {
    // Track charges in a wider band, since a*(0) lowers the charge at no cost.
    let band = max_charge + max_degree + 2;
    let mut poly: BTreeMap<(i64, i64), u64> = BTreeMap::from([((0, 0), 1)]);
    let mut factors: Vec<(i64, i64)> = (1..=max_degree).map(|n| (1, n)).collect();
    factors.extend((0..=max_degree).map(|n| (-1, n)));
    for (dx, dq) in factors {
        let mut next = BTreeMap::new();
        for (&(c, d), &k) in &poly {
            let mut j = 0;
            loop {
                let (c2, d2) = (c + j * dx, d + j * dq);
                if d2 > max_degree || c2.abs() > band {
                    break;
                }
                *next.entry((c2, d2)).or_default() += k;
                j += 1;
            }
        }
        poly = next;
    }
    poly.retain(|(c, _), _| c.abs() <= max_charge);
    poly
}

#[test]
fn basis_counts_match_generating_function() {
    let mut counted: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    for m in weyl_basis(5, 2) {
        *counted.entry((m.charge(), m.degree())).or_default() += 1;
    }
    assert_eq!(counted, weyl_product(5, 2));
}

#[test]
fn small_suites() {
    assert!(weyl_relation_check(2, 3, 1).passed());
    let chi = LaurentData::simple_pole(Scalar::frac(1, 3));
    let wak = WakimotoAction::new(chi.clone());
    let report = sl2_relation_check_on(&wak, &weyl_basis(2, 1), 2);
    assert!(report.passed(), "{:?}", report.violations.first());
    let ir = intertwiner_check(&chi, 2, 1);
    assert!(ir.passed(), "{ir:?}");
}

#[test]
fn intertwiner_examples() {
    let chi = LaurentData::monomial(1, Scalar::one());
    let w = mono(vec![1], vec![]);
    let lhs = realize(&wakimoto_apply(Sl2Gen::E, -1, &chi, &w));
    let rhs = realized_weyl_apply(WeylGen::A, -1, &realize(&w)).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(realize_monomial(&WeylMonomial::vacuum()), tensor_vacuum());
}

proptest! {
    #[test]
    fn canonical_commutation(m in weyl_monomial(), n in -3i64..=3, k in -3i64..=3, g in weyl_gen(), h in weyl_gen()) {
        let v = WeylVector::basis(m);
        let lhs = weyl_apply(g, n, &weyl_apply(h, k, &v)) - weyl_apply(h, k, &weyl_apply(g, n, &v));
        let expected = match (g, h) {
            (WeylGen::A, WeylGen::AStar) if n + k == 0 => v.clone(),
            (WeylGen::AStar, WeylGen::A) if n + k == 0 => v.scaled(&-Scalar::one()),
            _ => WeylVector::zero(),
        };
        prop_assert_eq!(lhs, expected);
    }

    #[test]
    fn realization_is_a_homomorphism(m in weyl_monomial(), n in -3i64..=3, g in weyl_gen()) {
        let v = WeylVector::basis(m);
        let lhs = realize(&weyl_apply(g, n, &v));
        let rhs = realized_weyl_apply(g, n, &realize(&v)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wakimoto_h_is_charge_grading(m in weyl_monomial(), c in -3i64..=3) {
        // h(0) acts by 2(#a - #a*) - χ₀
        let chi = LaurentData::simple_pole(Scalar::from_int(c));
        let v = WeylVector::basis(m.clone());
        let got = wakimoto_apply(Sl2Gen::H, 0, &chi, &v);
        let eigen = Scalar::from_int(2 * m.charge() - c);
        prop_assert_eq!(got, v.scaled(&eigen));
    }

    #[test]
    fn realized_vectors_live_in_sector_zero(m in weyl_monomial()) {
        for t in realize_monomial(&m).keys() {
            prop_assert_eq!(t.h0(), 0);
        }
    }
}
