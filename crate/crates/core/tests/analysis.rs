use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use prodseq_core::analysis::{
    abelian_fstar_equiv_test, check_cauchy_productive, check_f_productive_set, check_productive, AnalysisConfig,
    Flavor, MixedSampler,
};
use prodseq_core::concrete::{PadicInt, Permutation};
use prodseq_core::number_theory::{crt_multiple, padic_approx_solve};
use prodseq_core::sequences::{CircleGeometric, PadicPowers, Reordered, SymTranspositions};
use prodseq_core::{BoundFunction, Factors, GroupDescriptor, Sequence, Status, Value};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_agrees_with_brute_force(p in prop::sample::select(vec![2u64, 3, 5, 7]), k in 1usize..5, t in 0usize..3, u in 1u64..10_000, w in 0u64..10_000) {
        prop_assume!(t < k && u % p != 0);
        let depth = k + 3;
        let m = p.pow(depth as u32);
        let alpha = p.pow(t as u32) * u % m;
        let eta = p.pow(t as u32) * w % m;
        let z = padic_approx_solve(
            &PadicInt::from_i64(eta as i64, p, depth).unwrap(),
            &PadicInt::from_i64(alpha as i64, p, depth).unwrap(),
            k,
        ).unwrap().to_u64().unwrap();
        let pk = p.pow(k as u32);
        let least = (0..pk).find(|&z| (eta + pk * pk - z * alpha % pk) % pk == 0);
        prop_assert_eq!(Some(z), least);
    }

    #[test]
    fn crt_agrees_with_brute_force(g in prop::collection::vec(1u64..1000, 3), t in prop::collection::vec(0u64..1000, 3)) {
        let moduli = vec![7u64, 11, 13];
        let gv = Value::Product(g.iter().zip(&moduli).map(|(x, p)| Value::Cyclic(x % p)).collect());
        prop_assume!(g.iter().zip(&moduli).all(|(x, p)| x % p != 0));
        let targets: Vec<u64> = t.iter().zip(&moduli).map(|(x, p)| x % p).collect();
        let group = GroupDescriptor::Product(Factors::Cyclic(moduli.clone()));
        let z = crt_multiple(&group, &gv, &[0, 1, 2], &targets).unwrap().to_u64().unwrap();
        let hit = |z: u64| (0..3).all(|c| z * (g[c] % moduli[c]) % moduli[c] == targets[c]);
        prop_assert_eq!(Some(z), (0..1001).find(|&z| hit(z)));
    }

    #[test]
    fn abelian_reorderings_keep_the_sum(swaps in prop::collection::vec((0usize..12, 0usize..12), 0..6)) {
        let mut images: Vec<usize> = (0..12).collect();
        for (a, b) in swaps {
            images.swap(a, b);
        }
        let phi = Permutation::from_images(images).unwrap();
        let s = CircleGeometric::new(1, 2).unwrap();
        let cfg = AnalysisConfig::new(q(1, 1 << 20), 40);
        let base = check_productive(&s, &cfg).unwrap();
        let moved = check_productive(&Reordered::new(&s, phi), &cfg).unwrap();
        prop_assert_eq!(base.limit, moved.limit);
        prop_assert_eq!(moved.verdict.status, Status::Holds);
    }

    #[test]
    fn decomposition_is_consistent_for_any_seed(seed in any::<u64>(), c in 0u64..8) {
        let s = PadicPowers::new(3, 30, 1, 0).unwrap();
        let cfg = AnalysisConfig::new(AnalysisConfig::power_tolerance(3, 6), 20).with_trials(5).with_seed(seed);
        let r = abelian_fstar_equiv_test(&s, &BoundFunction::constant(c), &cfg).unwrap();
        prop_assert!(r.verdict.is_holds());
    }
}

#[test]
fn geometric_limits_are_exact() {
    for base in 2..6u64 {
        let s = CircleGeometric::new(1, base).unwrap();
        let cfg = AnalysisConfig::new(q(1, 1 << 16), 48);
        let r = check_productive(&s, &cfg).unwrap();
        assert!(r.verdict.is_holds());
        // Σ_{n ≥ 0} base^-(n+1) = 1/(base-1), truncated at the horizon
        let partial: BigRational = (0..=48u32).map(|n| BigRational::new(1.into(), BigInt::from(base).pow(n + 1))).sum();
        let expected = &partial - partial.floor();
        assert_eq!(r.limit.unwrap().as_circle().unwrap().value(), &expected);
    }
}

#[test]
fn transpositions_settle_at_every_scale() {
    for k in [2usize, 7, 12] {
        let cfg = AnalysisConfig::new(q(1, 1 << k), 64);
        let r = check_cauchy_productive(&SymTranspositions, &cfg).unwrap();
        assert!(r.verdict.is_holds());
        assert!(r.trace.iter().skip(k).all(|row| row.distance < cfg.tolerance));
    }
}

#[test]
fn seeded_checks_are_reproducible() {
    let s = PadicPowers::new(3, 40, 1, 0).unwrap();
    let f = BoundFunction::identity_plus(1);
    let cfg = AnalysisConfig::new(AnalysisConfig::power_tolerance(3, 6), 32).with_trials(6).with_seed(11);
    let a = check_f_productive_set(&s, &f, &cfg, &MixedSampler, Flavor::Plain).unwrap();
    let b = check_f_productive_set(&s, &f, &cfg, &MixedSampler, Flavor::Plain).unwrap();
    assert_eq!(a, b);
    let other = check_f_productive_set(&s, &f, &cfg.clone().with_seed(12), &MixedSampler, Flavor::Plain).unwrap();
    assert_eq!(other.verdict.status, a.verdict.status);
    assert_eq!(s.terms(3).len(), 3);
}
