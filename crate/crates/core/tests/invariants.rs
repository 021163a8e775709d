//! Property tests for algebraic invariants across the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use qbgg::cartan::{CartanType, ParabolicData, RootSystem, Weight};
use qbgg::qfield::{LaurentInt, RatFunc};
use qbgg::qsphere::{CqElement, CqSL2};
use qbgg::reps::quotient_weights;
use qbgg::uqalg::tangent::Side;
use qbgg::uqalg::{Letter, Uq};
use qbgg::weyl::WeylGroup;

fn laurent() -> impl Strategy<Value = LaurentInt> {
    prop::collection::vec((-3i32..=3, -4i64..=4), 0..4)
        .prop_map(|ts| LaurentInt::from_terms(ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (laurent(), laurent()).prop_filter_map("nonzero denominator", |(n, d)| {
        (!d.is_zero()).then(|| RatFunc::new(n, d))
    })
}

/// Evaluation at a rational point is a ring homomorphism wherever it is defined,
/// so BigRational arithmetic serves as an independent check.
fn eval(x: &RatFunc, q: &BigRational) -> Option<BigRational> {
    x.eval(q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_field_operations_match_evaluation(a in ratfunc(), b in ratfunc(), qn in 2i64..7, qd in 1i64..4) {
        let q = BigRational::new(qn.into(), qd.into());
        if let (Some(x), Some(y)) = (eval(&a, &q), eval(&b, &q)) {
            prop_assert_eq!(eval(&(&a + &b), &q), Some(&x + &y));
            prop_assert_eq!(eval(&(&a * &b), &q), Some(&x * &y));
            prop_assert_eq!(eval(&(&a - &b), &q), Some(&x - &y));
            if !b.is_zero() && y != BigRational::from_integer(0.into()) {
                prop_assert_eq!(eval(&(&a / &b), &q), Some(&x / &y));
            }
        }
    }

    #[test]
    fn ratfunc_ring_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(a.bar().bar(), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }
}

fn letters(rank: u8, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    let letter = prop_oneof![
        (0..rank).prop_map(Letter::E),
        (0..rank).prop_map(Letter::F),
        (0..rank, prop_oneof![Just(-1i32), Just(1)]).prop_map(|(i, k)| Letter::K(i, k)),
    ];
    prop::collection::vec(letter, 0..=max_len)
}

fn uq(t: &str) -> Uq {
    Uq::new(&RootSystem::from_str_type(t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplication_is_associative(x in letters(2, 3), y in letters(2, 3), z in letters(2, 3)) {
        let u = uq("B2");
        let (x, y, z) = (u.from_letters(&x), u.from_letters(&y), u.from_letters(&z));
        prop_assert_eq!(u.mul(&u.mul(&x, &y), &z), u.mul(&x, &u.mul(&y, &z)));
    }

    #[test]
    fn coproduct_and_counit_are_algebra_maps(x in letters(2, 3), y in letters(2, 3)) {
        let u = uq("A2");
        let (x, y) = (u.from_letters(&x), u.from_letters(&y));
        let xy = u.mul(&x, &y);
        prop_assert_eq!(u.coproduct(&xy), u.tensor_mul(&u.coproduct(&x), &u.coproduct(&y)));
        prop_assert_eq!(u.counit(&xy), &u.counit(&x) * &u.counit(&y));
    }

    #[test]
    fn antipode_reverses_products_and_eta_preserves_them(x in letters(2, 2), y in letters(2, 2)) {
        let u = uq("G2");
        let (x, y) = (u.from_letters(&x), u.from_letters(&y));
        let xy = u.mul(&x, &y);
        prop_assert_eq!(u.antipode(&xy), u.mul(&u.antipode(&y), &u.antipode(&x)));
        prop_assert_eq!(u.eta(&xy), u.mul(&u.eta(&x), &u.eta(&y)));
        prop_assert_eq!(u.eta(&u.eta(&x)), x);
    }

    #[test]
    fn canonical_form_is_idempotent(x in letters(2, 5)) {
        let u = uq("A2");
        let x = u.from_letters(&x);
        let c = u.canonical(&x).unwrap();
        prop_assert_eq!(u.canonical(&c).unwrap(), c);
    }
}

fn small_types() -> Vec<RootSystem> {
    CartanType::all_up_to(3).into_iter().map(RootSystem::new).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weyl_group_lengths_and_inverses(t in 0usize..8, pick in any::<prop::sample::Index>(), i in 0usize..3, lam in prop::collection::vec(-3i64..=3, 3)) {
        let types = small_types();
        let rs = &types[t % types.len()];
        let g = WeylGroup::generate(rs, 100_000).unwrap();
        let k = pick.index(g.len());
        let i = i % rs.rank();
        let l = g.element(k).length as i64;
        let l2 = g.element(g.left_mul(i, k)).length as i64;
        prop_assert_eq!((l - l2).abs(), 1);
        prop_assert_eq!(g.element(k).length, g.inversions(k));
        prop_assert_eq!(g.mul(k, g.inverse(k)), g.identity());
        let lam = Weight(lam[..rs.rank()].to_vec());
        prop_assert_eq!(g.shifted_act(g.inverse(k), &g.shifted_act(k, &lam)), lam);
    }
}

#[test]
fn tangent_weights_match_quotient_weights() {
    for t in CartanType::all_up_to(3) {
        let rs = RootSystem::new(t);
        let u = Uq::new(&rs);
        for s in rs.cartan_type.cominuscule_nodes() {
            let p = ParabolicData::maximal(&rs, s).unwrap();
            let lower = u.tangent_space(&p, Side::Lower).unwrap();
            let mut got: Vec<Weight> = lower.weights.iter().map(|b| rs.root_to_weight(b)).collect();
            let mut want: Vec<Weight> = quotient_weights(&rs, &p)
                .entries
                .iter()
                .flat_map(|(w, &m)| std::iter::repeat(w.clone()).take(m as usize))
                .collect();
            got.sort();
            want.sort();
            assert_eq!(got, want, "{} s={}", rs.cartan_type, s + 1);
            let upper = u.tangent_space(&p, Side::Upper).unwrap();
            assert_eq!(upper.dim(), lower.dim());
        }
    }
}

fn cq_word() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..4, 0..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn coordinate_ring_is_associative_with_multiplicative_counit(x in cq_word(), y in cq_word(), z in cq_word()) {
        let a = CqSL2::new().unwrap();
        let (x, y, z) = (a.normalize(&x), a.normalize(&y), a.normalize(&z));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
        prop_assert_eq!(a.mul(&x, &y).counit(), &x.counit() * &y.counit());
        prop_assert_eq!(a.mul(&x, &CqElement::one()), x);
    }
}
