use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::trial_rng;
use crate::concrete::{PadicInt, Permutation, Valuation};
use crate::group::{dyadic, inverse_power};
use crate::{Distance, Factors, GroupDescriptor, GroupError, Result, Value, Verdict, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// `U_j` is an open subgroup; `U_{j+1}³ ⊆ U_j` holds exactly.
    SubgroupChain,
    /// `U_j` is the open ball of radius `r_0·3^{-j}`.
    MetricBall,
}

/// One level of a nested basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Level {
    /// The `j`-th subgroup of the chain.
    Subgroup(usize),
    Ball(BigRational),
}

/// A decreasing neighbourhood basis `U_0 ⊇ U_1 ⊇ …` at the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedBasis {
    group: GroupDescriptor,
    count: usize,
    kind: BasisKind,
    radius0: BigRational,
}

/// `U_j` for `j < count`: subgroup chains where the group has one, balls of
/// radius `(1/4)·3^{-j}` on the circle.
pub fn make_nested_basis(group: &GroupDescriptor, count: usize) -> Result<NestedBasis> {
    group.validate()?;
    if count == 0 {
        return Err(GroupError::Argument("a basis needs at least one level".into()));
    }
    let kind = match group {
        GroupDescriptor::Padic { .. }
        | GroupDescriptor::IntTauP { .. }
        | GroupDescriptor::SymFin
        | GroupDescriptor::BoundedIntSeq { .. } => BasisKind::SubgroupChain,
        GroupDescriptor::Product(f)
            if (0..f.len()).all(|i| matches!(f.factor(i).as_ref(), GroupDescriptor::Cyclic { .. })) =>
        {
            BasisKind::SubgroupChain
        }
        GroupDescriptor::Circle => BasisKind::MetricBall,
        other => return Err(GroupError::Unsupported(format!("nested basis for {}", other.kind_name()))),
    };
    Ok(NestedBasis { group: group.clone(), count, kind, radius0: BigRational::new(1.into(), 4.into()) })
}

impl NestedBasis {
    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn level(&self, j: usize) -> Level {
        match self.kind {
            BasisKind::SubgroupChain => Level::Subgroup(j),
            BasisKind::MetricBall => Level::Ball(self.ball_radius(j)),
        }
    }

    pub fn levels(&self) -> Vec<Level> {
        (0..self.count).map(|j| self.level(j)).collect()
    }

    fn ball_radius(&self, j: usize) -> BigRational {
        &self.radius0 / BigInt::from(3).pow(j as u32)
    }

    /// A radius `r` with `U_j` the set of elements of norm `< r` (subgroup
    /// chains) or exactly the ball radius.
    pub fn radius(&self, j: usize) -> Distance {
        match (&self.kind, &self.group) {
            (BasisKind::MetricBall, _) => self.ball_radius(j),
            (_, GroupDescriptor::Padic { p, .. } | GroupDescriptor::IntTauP { p }) => {
                if j == 0 {
                    Distance::from_integer(2.into())
                } else {
                    inverse_power(*p, j - 1)
                }
            }
            _ => {
                if j == 0 {
                    Distance::from_integer(2.into())
                } else {
                    dyadic(j - 1)
                }
            }
        }
    }

    /// Exact membership `x ∈ U_j`.
    pub fn contains(&self, j: usize, x: &Value) -> Result<bool> {
        self.group.check(x)?;
        Ok(match (&self.group, x) {
            (GroupDescriptor::Circle, _) => self.group.norm(x)? < self.ball_radius(j),
            (_, Value::Padic(a)) => match a.valuation() {
                Valuation::Infinity => true,
                Valuation::Finite(v) => v >= j,
            },
            (GroupDescriptor::IntTauP { p }, Value::Int(n)) => {
                n.is_zero() || (n % BigInt::from(*p).pow(j as u32)).is_zero()
            }
            (_, Value::Perm(s)) => s.least_moved_point().is_none_or(|m| m >= j),
            (_, Value::Product(c)) => c.iter().take(j).all(Value::is_identity),
            (_, Value::Bounded(s)) => s.entries().iter().take(j).all(|&e| e == 0),
            _ => false,
        })
    }

    /// A random element of `U_j`.
    pub fn sample(&self, j: usize, rng: &mut ChaCha8Rng) -> Result<Value> {
        Ok(match &self.group {
            GroupDescriptor::Circle => {
                let u: i64 = rng.gen_range(-1023..=1023);
                let x = self.ball_radius(j) * BigRational::new(u.into(), 1024.into());
                Value::Circle(crate::concrete::CirclePoint::new(x))
            }
            GroupDescriptor::Padic { p, depth } => {
                let digits = (0..*depth).map(|i| if i < j { 0 } else { rng.gen_range(0..*p as u32) }).collect();
                Value::Padic(PadicInt::from_digits(*p, digits)?)
            }
            GroupDescriptor::IntTauP { p } => {
                let u: i64 = rng.gen_range(-1000..=1000);
                Value::Int(BigInt::from(*p).pow(j as u32) * u)
            }
            GroupDescriptor::SymFin => {
                let mut pts: Vec<usize> = (j..j + 5).collect();
                let moved = pts.clone();
                pts.shuffle(rng);
                Value::Perm(Permutation::from_pairs(&moved.into_iter().zip(pts).collect::<Vec<_>>())?)
            }
            GroupDescriptor::Product(Factors::Cyclic(m)) => Value::Product(
                m.iter()
                    .enumerate()
                    .map(|(i, &n)| Value::Cyclic(if i < j { 0 } else { rng.gen_range(0..n) }))
                    .collect(),
            ),
            GroupDescriptor::Product(f) => Value::Product(
                (0..f.len())
                    .map(|i| match f.factor(i).as_ref() {
                        GroupDescriptor::Cyclic { n } if i >= j => Value::Cyclic(rng.gen_range(0..*n)),
                        g => g.identity(),
                    })
                    .collect(),
            ),
            GroupDescriptor::BoundedIntSeq { depth } => Value::Bounded(crate::concrete::BoundedSeq::new(
                (0..*depth).map(|i| if i < j { 0 } else { rng.gen_range(-3..=3) }).collect(),
            )),
            other => return Err(GroupError::Unsupported(format!("sampling in {}", other.kind_name()))),
        })
    }
}

/// Samples `x_j ∈ U_{φ(j)}` and checks `x_0 x_1 ⋯ x_n ∈ U_{k-1}` with
/// `k = min φ`, exactly.
pub fn reshuffle_bound_check(basis: &NestedBasis, phi: &[usize], samples: usize, seed: u64) -> Result<Verdict> {
    let Some(&k) = phi.iter().min() else {
        return Err(GroupError::Argument("empty injection".into()));
    };
    if k == 0 {
        return Err(GroupError::Argument("the injection must avoid 0".into()));
    }
    if let Some(&big) = phi.iter().find(|&&j| j >= basis.count) {
        return Err(GroupError::Argument(format!("level {big} outside a basis of {} levels", basis.count)));
    }
    for (i, a) in phi.iter().enumerate() {
        if phi[..i].contains(a) {
            return Err(GroupError::Argument(format!("φ repeats the value {a}")));
        }
    }
    let g = &basis.group;
    let tol = basis.radius(k - 1);
    for s in 0..samples {
        let mut rng = trial_rng(seed, s);
        let xs = phi.iter().map(|&j| basis.sample(j, &mut rng)).collect::<Result<Vec<_>>>()?;
        let prod = g.product_of(&xs)?;
        if !basis.contains(k - 1, &prod)? {
            let detail = format!("product {prod} escapes U_{}", k - 1);
            return Ok(Verdict::fails(Witness::Trial { trial: s, detail }, phi.len(), tol));
        }
    }
    Ok(Verdict::holds(None, phi.len(), tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn padic_chain_and_circle_balls() {
        let zp = make_nested_basis(&GroupDescriptor::padic(3, 12).unwrap(), 8).unwrap();
        assert_eq!(zp.kind(), BasisKind::SubgroupChain);
        let x = Value::Padic(PadicInt::from_i64(27, 3, 12).unwrap());
        assert!(zp.contains(3, &x).unwrap() && !zp.contains(4, &x).unwrap());
        let c = make_nested_basis(&GroupDescriptor::Circle, 3).unwrap();
        assert_eq!(c.levels()[2], Level::Ball(BigRational::new(1.into(), 36.into())));
        assert_eq!(c.radius(1) * BigInt::from(3), c.radius(0));
        assert_eq!(make_nested_basis(&GroupDescriptor::Circle, 1).unwrap().levels().len(), 1);
        assert!(matches!(make_nested_basis(&GroupDescriptor::Cyclic { n: 5 }, 3), Err(GroupError::Unsupported(_))));
    }

    #[test]
    fn samples_lie_in_their_level() {
        let groups = [
            GroupDescriptor::padic(5, 10).unwrap(),
            GroupDescriptor::int_tau_p(2).unwrap(),
            GroupDescriptor::Circle,
            GroupDescriptor::SymFin,
            GroupDescriptor::cyclic_power(3, 9),
            GroupDescriptor::BoundedIntSeq { depth: 9 },
        ];
        for g in groups {
            let b = make_nested_basis(&g, 9).unwrap();
            let mut rng = trial_rng(1, 0);
            for j in 0..9 {
                let x = b.sample(j, &mut rng).unwrap();
                assert!(b.contains(j, &x).unwrap(), "{g} level {j}: {x}");
            }
        }
    }

    #[test]
    fn reshuffle_in_zp_and_circle() {
        let zp = make_nested_basis(&GroupDescriptor::padic(3, 20).unwrap(), 20).unwrap();
        let v = reshuffle_bound_check(&zp, &[5, 3, 9, 4], 50, 2).unwrap();
        assert!(v.is_holds());
        assert!(reshuffle_bound_check(&zp, &[7], 10, 2).unwrap().is_holds());
        let c = make_nested_basis(&GroupDescriptor::Circle, 40).unwrap();
        let mut rng = trial_rng(3, 0);
        for _ in 0..20 {
            let mut phi: Vec<usize> = (1..30).collect();
            phi.shuffle(&mut rng);
            phi.truncate(rng.gen_range(1..=20));
            assert!(reshuffle_bound_check(&c, &phi, 10, 4).unwrap().is_holds());
        }
    }

    #[test]
    fn reshuffle_rejects_bad_injections() {
        let c = make_nested_basis(&GroupDescriptor::Circle, 10).unwrap();
        assert!(reshuffle_bound_check(&c, &[2, 2], 1, 0).is_err());
        assert!(reshuffle_bound_check(&c, &[0, 2], 1, 0).is_err());
        assert!(reshuffle_bound_check(&c, &[], 1, 0).is_err());
    }
}
