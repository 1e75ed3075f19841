use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use prodseq_core::analysis::AnalysisConfig;
use prodseq_core::concrete::PadicInt;
use prodseq_core::construct::families::{boolean_combination, in_s, triple_violation};
use prodseq_core::construct::{
    build_a_n, build_f_cauchy_set, cantor_scheme, family_s, family_t, make_nested_basis, reshuffle_bound_check,
    IndependentFamily, KpWindow,
};
use prodseq_core::sequences::CircleGeometric;
use prodseq_core::{BoundFunction, GroupDescriptor, Value};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn padic_sets_absorb_their_powers(p in prop::sample::select(vec![2u64, 3, 5, 7]), bounds in prop::collection::vec(0u64..30, 8)) {
        let g = GroupDescriptor::padic(p, 16).unwrap();
        let basis = make_nested_basis(&g, 10).unwrap();
        let f = BoundFunction::new(bounds.iter().map(|&b| prodseq_core::ExtNat::Fin(b)).collect(), prodseq_core::BoundTail::Constant(1)).unwrap();
        let set = build_f_cauchy_set(&basis, &f, 8, 1000).unwrap();
        for (m, a) in set.iter().enumerate() {
            for z in -(bounds[m] as i64)..=bounds[m] as i64 {
                let Value::Padic(x) = g.pow(a, z).unwrap() else { unreachable!() };
                prop_assert!(x.valuation().finite().is_none_or(|v| v >= m));
            }
        }
    }

    #[test]
    fn reshuffled_products_stay_in_the_coarser_level(phi in prop::sample::subsequence((1usize..30).collect::<Vec<_>>(), 1..12), seed in any::<u64>()) {
        for g in [GroupDescriptor::padic(5, 30).unwrap(), GroupDescriptor::BoundedIntSeq { depth: 30 }, GroupDescriptor::cyclic_power(3, 30)] {
            let basis = make_nested_basis(&g, 30).unwrap();
            let mut phi = phi.clone();
            phi.reverse();
            prop_assert!(reshuffle_bound_check(&basis, &phi, 3, seed).unwrap().is_holds());
        }
    }

    #[test]
    fn generator_entries_follow_the_three_cases(n in 0usize..12, i in 0usize..16, j in 0usize..16) {
        let a = build_a_n(n, 16).unwrap();
        let w = KpWindow::new(16).unwrap();
        let entry = &a.as_product().unwrap()[w.coord(i, j)];
        let expected = if !in_s(n, i) {
            0
        } else if IndependentFamily::PrimeResidues.contains(n, j) {
            1
        } else {
            2
        };
        prop_assert_eq!(entry, &Value::Cyclic(expected));
    }
}

#[test]
fn padic_powers_are_the_canonical_choice() {
    let g = GroupDescriptor::padic(3, 12).unwrap();
    let basis = make_nested_basis(&g, 8).unwrap();
    let set = build_f_cauchy_set(&basis, &BoundFunction::identity_plus(1), 6, 1000).unwrap();
    let expected: Vec<Value> =
        (0..6).map(|n| Value::Padic(PadicInt::from_bigint(&BigInt::from(3).pow(n), 3, 12).unwrap())).collect();
    assert_eq!(set, expected);
}

#[test]
fn cantor_schemes_for_other_bases() {
    for base in [3u64, 4, 5] {
        let s = CircleGeometric::new(1, base).unwrap();
        let cfg = AnalysisConfig::new(BigRational::new(1.into(), 1024.into()), 48).with_trials(3);
        let t = cantor_scheme(&s, 5, &cfg).unwrap();
        assert!(t.checks.all(), "base {base}: {:?}", t.checks);
        assert_eq!(t.leaves().len(), 32);
    }
}

#[test]
fn families_are_exact_in_windows() {
    let s = family_s(20, 2000);
    assert_eq!(triple_violation(&s), None);
    assert!(s.iter().all(|set| set.count_ones(..) > 0));
    let t = family_t(IndependentFamily::BinaryDigits, 3, 64);
    let c = boolean_combination(&t, &[0, 2], &[1], 64);
    assert_eq!(c.ones().collect::<Vec<_>>(), (0..64).filter(|m| m % 8 == 5).collect::<Vec<_>>());
}
