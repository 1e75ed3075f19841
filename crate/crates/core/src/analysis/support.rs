use alloc::format;
use alloc::vec::Vec;

use super::{check_f_cauchy_productive, AnalysisConfig};
use crate::sequences::Explicit;
use crate::{BoundFunction, GroupDescriptor, GroupError, Result, Status, Value, Verdict, Witness};

/// Per-coordinate support counts of a family in a product of finite groups,
/// cross-checked against the direct `f_ω` test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportReport {
    pub verdict: Verdict,
    /// `#{n : a_n(t) ≠ e}` for every coordinate `t`.
    pub counts: Vec<usize>,
    pub direct: Verdict,
    /// The two verdicts agree, or the direct one is inconclusive.
    pub consistent: bool,
}

/// Holds when every coordinate is non-trivial in at most `cutoff` members.
pub fn product_support_criterion(
    group: &GroupDescriptor,
    family: &[Value],
    cutoff: usize,
    cfg: &AnalysisConfig,
) -> Result<SupportReport> {
    let GroupDescriptor::Product(factors) = group else {
        return Err(GroupError::Unsupported(format!("support criterion in {}", group.kind_name())));
    };
    for i in 0..factors.len() {
        if !matches!(factors.factor(i).as_ref(), GroupDescriptor::Cyclic { .. }) {
            return Err(GroupError::Unsupported(format!("factor {i} is not a finite cyclic group")));
        }
    }
    let mut counts = alloc::vec![0usize; factors.len()];
    for a in family {
        group.check(a)?;
        for (t, c) in a.as_product().expect("checked").iter().enumerate() {
            if !c.is_identity() {
                counts[t] += 1;
            }
        }
    }
    let tol = cfg.tolerance.clone();
    let verdict = match counts.iter().position(|&c| c > cutoff) {
        Some(t) => Verdict::fails(Witness::Coordinate(t), family.len(), tol),
        None => Verdict::holds(None, family.len(), tol),
    };
    let seq = Explicit::new(group.clone(), family.to_vec())?;
    let direct = check_f_cauchy_productive(&seq, &BoundFunction::omega(), cfg)?.verdict;
    let consistent = direct.status == Status::Inconclusive || direct.status == verdict.status;
    Ok(SupportReport { verdict, counts, direct, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::UnitVectors;
    use crate::Sequence;
    use alloc::vec;
    use num_rational::BigRational;

    #[test]
    fn unit_vectors_versus_constant_coordinate() {
        let g = GroupDescriptor::cyclic_power(3, 24);
        let cfg = AnalysisConfig::new(BigRational::new(1.into(), 1024.into()), 24).with_trials(4);
        let units = UnitVectors::new(g.clone()).unwrap().terms(24);
        let r = product_support_criterion(&g, &units, 1, &cfg).unwrap();
        assert!(r.verdict.is_holds() && r.direct.is_holds() && r.consistent);

        let mut first = g.identity();
        if let Value::Product(c) = &mut first {
            c[0] = Value::Cyclic(1);
        }
        let fam = vec![first; 24];
        let r = product_support_criterion(&g, &fam, 1, &cfg).unwrap();
        assert_eq!(r.verdict.witness, Some(Witness::Coordinate(0)));
        assert!(r.direct.is_fails() && r.consistent);
    }
}
