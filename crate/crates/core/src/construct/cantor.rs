use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::analysis::{check_weighted, AnalysisConfig, Flavor, WeightSign};
use crate::group::dyadic;
use crate::{BoundFunction, Distance, GroupError, Result, Sequence, Status, Value};

/// A node `U_f` of the scheme: a ball around `b_{f,n} = Π a_{μ_f(i)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CantorNode {
    /// The binary word `f ∈ 2^n`.
    pub path: String,
    pub center: Value,
    /// `None` for the root, which is the whole group.
    pub radius: Option<Distance>,
    /// The order-preserving injection `μ_f`.
    pub mu: Vec<usize>,
}

impl CantorNode {
    pub fn level(&self) -> usize {
        self.path.len()
    }
}

/// Results of re-checking the scheme's properties exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CantorChecks {
    pub products: bool,
    pub siblings_disjoint: bool,
    pub injections_extend: bool,
    pub nested: bool,
    pub diameters: bool,
    pub leaves_distinct: bool,
}

impl CantorChecks {
    pub fn all(&self) -> bool {
        self.products
            && self.siblings_disjoint
            && self.injections_extend
            && self.nested
            && self.diameters
            && self.leaves_distinct
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CantorTree {
    /// `levels[n]` holds the `2^n` nodes of length `n`, in path order.
    pub levels: Vec<Vec<CantorNode>>,
    pub checks: CantorChecks,
}

impl CantorTree {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// The leaf approximants `x_f ≈ b_{f,depth}`.
    pub fn leaves(&self) -> Vec<Value> {
        self.levels.last().expect("root level").iter().map(|n| n.center.clone()).collect()
    }
}

fn min3(a: Option<Distance>, b: Distance, c: Distance) -> Distance {
    let m = if b < c { b } else { c };
    match a {
        Some(a) if a < m => a,
        _ => m,
    }
}

/// Builds the binary tree of balls of depth `depth` from the terms of `seq`
/// up to `cfg.horizon`.
///
/// Each node picks the first two unused indices `m_0 < m_1` after `max μ_f`
/// with `b·a_{m_l}` inside `U_f` at distinct points, and shrinks child radii
/// to `min(slack/2, separation/4, 2^{-(n+2)})`.
pub fn cantor_scheme(seq: &dyn Sequence, depth: usize, cfg: &AnalysisConfig) -> Result<CantorTree> {
    let probe = check_weighted(seq, &BoundFunction::one(), cfg, Flavor::Cauchy, WeightSign::Star)?;
    if probe.verdict.status == Status::Fails {
        return Err(GroupError::Domain("the sequence is not f₁★-Cauchy productive".into()));
    }
    let g = seq.group();
    let terms = seq.terms(cfg.horizon + 1);
    let root = CantorNode { path: String::new(), center: g.identity(), radius: None, mu: Vec::new() };
    let mut levels = alloc::vec![alloc::vec![root]];
    for n in 0..depth {
        let mut next = Vec::with_capacity(2 * levels[n].len());
        for node in &levels[n] {
            let start = node.mu.last().map_or(0, |&m| m + 1);
            let mut picked: Vec<(usize, Value, Option<Distance>)> = Vec::with_capacity(2);
            for (m, a) in terms.iter().enumerate().skip(start) {
                let c = g.op(&node.center, a)?;
                let slack = match &node.radius {
                    None => None,
                    Some(r) => {
                        let d = g.distance(&node.center, &c)?;
                        if d >= *r {
                            continue;
                        }
                        Some(r - d)
                    }
                };
                if picked.first().is_some_and(|p| p.1 == c) {
                    continue;
                }
                picked.push((m, c, slack));
                if picked.len() == 2 {
                    break;
                }
            }
            if picked.len() < 2 {
                return Err(GroupError::DepthExhausted(format!(
                    "node '{}' cannot be split within horizon {}",
                    node.path, cfg.horizon
                )));
            }
            let sep = g.distance(&picked[0].1, &picked[1].1)? / BigInt::from(4);
            for (bit, (m, c, slack)) in picked.into_iter().enumerate() {
                let r = min3(slack.map(|s| s / BigInt::from(2)), sep.clone(), dyadic(n + 2));
                let mut mu = node.mu.clone();
                mu.push(m);
                let path = format!("{}{}", node.path, bit);
                next.push(CantorNode { path, center: c, radius: Some(r), mu });
            }
        }
        levels.push(next);
    }
    let checks = verify(seq, &levels)?;
    Ok(CantorTree { levels, checks })
}

fn verify(seq: &dyn Sequence, levels: &[Vec<CantorNode>]) -> Result<CantorChecks> {
    let g = seq.group();
    let max_index = levels.iter().flatten().filter_map(|n| n.mu.last()).max().map_or(0, |&m| m + 1);
    let terms = seq.terms(max_index);
    let mut ck = CantorChecks {
        products: true,
        siblings_disjoint: true,
        injections_extend: true,
        nested: true,
        diameters: true,
        leaves_distinct: true,
    };
    for (n, level) in levels.iter().enumerate() {
        for (idx, node) in level.iter().enumerate() {
            let factors: Vec<Value> = node.mu.iter().map(|&m| terms[m].clone()).collect();
            ck.products &= g.product_of(&factors)? == node.center;
            ck.injections_extend &= node.mu.windows(2).all(|w| w[0] < w[1]);
            if let Some(r) = &node.radius {
                ck.diameters &= r * BigInt::from(2) <= dyadic(n);
            }
            if n == 0 {
                continue;
            }
            let parent = &levels[n - 1][idx / 2];
            ck.injections_extend &= node.mu[..n - 1] == parent.mu[..] && node.path.starts_with(&parent.path);
            if let (Some(r), Some(rp)) = (&node.radius, &parent.radius) {
                ck.nested &= g.distance(&parent.center, &node.center)? + r < *rp;
            }
            if idx % 2 == 0 {
                let sib = &level[idx + 1];
                let (r0, r1) = (node.radius.clone().unwrap_or_default(), sib.radius.clone().unwrap_or_default());
                ck.siblings_disjoint &= g.distance(&node.center, &sib.center)? > r0 + r1;
            }
        }
    }
    let leaves = &levels.last().expect("root level")[..];
    'outer: for (i, a) in leaves.iter().enumerate() {
        for b in &leaves[i + 1..] {
            if a.center == b.center {
                ck.leaves_distinct = false;
                break 'outer;
            }
        }
    }
    Ok(ck)
}

/// The largest radius at level `n`, for diameter reports.
pub fn level_radius(tree: &CantorTree, n: usize) -> Option<BigRational> {
    tree.levels.get(n)?.iter().filter_map(|node| node.radius.clone()).max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{CircleGeometric, Constant};
    use crate::GroupDescriptor;

    fn cfg() -> AnalysisConfig {
        AnalysisConfig::new(BigRational::new(1.into(), 1024.into()), 64).with_trials(4)
    }

    #[test]
    fn depth_zero_is_the_root() {
        let s = CircleGeometric::new(1, 3).unwrap();
        let t = cantor_scheme(&s, 0, &cfg()).unwrap();
        assert_eq!(t.leaves(), alloc::vec![Value::circle(0, 1)]);
        assert!(t.checks.all());
    }

    #[test]
    fn ternary_scheme_depth_six() {
        let s = CircleGeometric::new(1, 3).unwrap();
        let t = cantor_scheme(&s, 6, &cfg()).unwrap();
        assert_eq!(t.leaves().len(), 64);
        assert!(t.checks.all(), "{:?}", t.checks);
        let one = cantor_scheme(&s, 1, &cfg()).unwrap();
        assert_eq!(one.leaves(), alloc::vec![Value::circle(1, 3), Value::circle(1, 9)]);
        assert!(level_radius(&t, 3).unwrap() <= BigRational::new(1.into(), 16.into()));
    }

    #[test]
    fn constant_sequence_is_rejected() {
        let c = Constant::new(GroupDescriptor::Circle, Value::circle(1, 3)).unwrap();
        assert!(matches!(cantor_scheme(&c, 2, &cfg()), Err(GroupError::Domain(_))));
    }
}
