use alloc::vec::Vec;

use super::{AnalysisConfig, MetricView, ProductiveReport, Profile};
use crate::group::partial_products_of;
use crate::{Result, Sequence, Verdict};

/// Left-Cauchy test on the sequence itself: `d(a_k⁻¹a_l, e)` for
/// `k < l ≤ H`, or the two-sided variant if the config asks for it.
pub fn check_left_cauchy(seq: &dyn Sequence, cfg: &AnalysisConfig) -> Result<Verdict> {
    cfg.validate()?;
    let view = MetricView::new(seq.group(), seq.terms(cfg.horizon + 1))?;
    let profile = Profile::pairwise(cfg.horizon, |l, m| view.by(cfg.uniformity, l, m))?;
    Ok(profile.verdict(cfg))
}

/// The segment criterion: `b_{l+1} ⋯ b_m` must approach `e` as `l` grows.
pub fn check_cauchy_productive(seq: &dyn Sequence, cfg: &AnalysisConfig) -> Result<ProductiveReport> {
    cfg.validate()?;
    let g = seq.group();
    let terms = seq.terms(cfg.horizon + 1);
    let profile = Profile::segments(g, &terms)?;
    let mut report = ProductiveReport::from_profile(profile, cfg);
    report.limit = partial_products_of(g, &terms)?.pop();
    Ok(report)
}

/// Convergence of the partial products in the two-sided uniformity, with
/// the last partial product as the limit approximant.
pub fn check_productive(seq: &dyn Sequence, cfg: &AnalysisConfig) -> Result<ProductiveReport> {
    cfg.validate()?;
    let g = seq.group();
    let partials = partial_products_of(g, &seq.terms(cfg.horizon + 1))?;
    let limit = partials.last().cloned();
    let profile = if g.is_abelian() {
        let view = MetricView::new(g, partials)?;
        Profile::pairwise(cfg.horizon, |l, m| view.left(l, m))?
    } else {
        let inverses: Vec<_> = partials.iter().map(|p| g.inverse(p)).collect::<Result<_>>()?;
        Profile::pairwise(cfg.horizon, |l, m| {
            let left = g.norm(&g.op(&inverses[l], &partials[m])?)?;
            let right = g.norm(&g.op(&partials[l], &inverses[m])?)?;
            Ok(if right > left { right } else { left })
        })?
    };
    let mut report = ProductiveReport::from_profile(profile, cfg);
    report.limit = limit;
    report.limit_exact = seq.exact_limit();
    Ok(report)
}

/// Whether `a_n → e`: the profile is `d(a_n, e)` itself.
pub fn check_null_sequence(seq: &dyn Sequence, cfg: &AnalysisConfig) -> Result<Verdict> {
    cfg.validate()?;
    let g = seq.group();
    let distances = seq.terms(cfg.horizon + 1).iter().map(|a| g.norm(a)).collect::<Result<Vec<_>>>()?;
    Ok(Profile::single(distances).verdict(cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{Alternating, CircleGeometric, Constant, PartialProducts, SymTranspositions};
    use crate::{GroupDescriptor, Status, Value, Witness};
    use num_rational::BigRational;

    fn cfg(k: usize, h: usize) -> AnalysisConfig {
        AnalysisConfig::new(BigRational::new(1.into(), num_bigint::BigInt::from(1) << k), h)
    }

    #[test]
    fn transpositions_are_cauchy_productive() {
        for k in [1usize, 4, 9] {
            let r = check_cauchy_productive(&SymTranspositions, &cfg(k, 40)).unwrap();
            assert_eq!(r.verdict.witness, Some(Witness::Settle { index: k }));
        }
    }

    #[test]
    fn transpositions_are_not_productive() {
        let r = check_productive(&SymTranspositions, &cfg(4, 40)).unwrap();
        assert_eq!(r.verdict.status, Status::Fails);
        let pp = PartialProducts::new(SymTranspositions);
        assert!(check_left_cauchy(&pp, &cfg(4, 40)).unwrap().is_holds());
        let two = cfg(4, 40).with_uniformity(super::super::Uniformity::TwoSided);
        assert!(check_left_cauchy(&pp, &two).unwrap().is_fails());
    }

    #[test]
    fn geometric_sums_converge_to_zero() {
        let s = CircleGeometric::new(1, 2).unwrap();
        let r = check_productive(&s, &cfg(10, 40)).unwrap();
        assert!(r.verdict.is_holds());
        assert_eq!(r.limit_exact, Some(Value::circle(0, 1)));
        assert!(check_cauchy_productive(&s, &cfg(10, 40)).unwrap().verdict.is_holds());
    }

    #[test]
    fn constant_and_alternating_fail() {
        let c = Constant::new(GroupDescriptor::Circle, Value::circle(1, 3)).unwrap();
        let r = check_cauchy_productive(&c, &cfg(4, 16)).unwrap();
        assert!(r.verdict.is_fails());
        assert!(matches!(r.verdict.witness, Some(Witness::Pair { l, m, .. }) if m == l + 1));
        let a = Alternating::new(GroupDescriptor::Circle, Value::circle(0, 1), Value::circle(1, 2)).unwrap();
        assert!(check_left_cauchy(&a, &cfg(4, 16)).unwrap().is_fails());
        let e = Constant::identity(GroupDescriptor::SymFin);
        assert!(check_left_cauchy(&e, &cfg(4, 16)).unwrap().is_holds());
        let r = check_productive(&e, &cfg(4, 16)).unwrap();
        assert!(r.verdict.is_holds() && r.limit.unwrap().is_identity());
    }
}
