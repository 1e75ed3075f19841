//! The uniform group interface: descriptors, values, the group law, the
//! left-invariant metric and partial products of sequences.

use alloc::borrow::Cow;
use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::concrete::{check_prime, BoundedSeq, CirclePoint, PadicInt, Permutation, Valuation};
use crate::{GroupError, Result};

/// Exact nonnegative distance.
pub type Distance = BigRational;

pub(crate) fn dyadic(m: usize) -> Distance {
    BigRational::new(BigInt::one(), BigInt::one() << m)
}

pub(crate) fn inverse_power(p: u64, v: usize) -> Distance {
    BigRational::new(BigInt::one(), BigInt::from(p).pow(v as u32))
}

fn valuation_distance(p: u64, v: Valuation) -> Distance {
    match v {
        Valuation::Finite(v) => inverse_power(p, v),
        Valuation::Infinity => Distance::zero(),
    }
}

fn int_valuation(n: &BigInt, p: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinity;
    }
    let pb = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    while m.is_multiple_of(&pb) {
        m /= &pb;
        v += 1;
    }
    Valuation::Finite(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Valuation,
    ArcLength,
    PermutationPointwise,
    ProductSupWeighted,
    SubgroupChain,
}

/// Factor list of a truncated countable product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Factors {
    /// `ℤ(n_0) × ℤ(n_1) × …`, one modulus per coordinate.
    Cyclic(Vec<u64>),
    /// `len` copies of one factor.
    Power {
        factor: Box<GroupDescriptor>,
        len: usize,
    },
    Mixed(Vec<GroupDescriptor>),
}

impl Factors {
    pub fn len(&self) -> usize {
        match self {
            Factors::Cyclic(m) => m.len(),
            Factors::Power { len, .. } => *len,
            Factors::Mixed(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn factor(&self, i: usize) -> Cow<'_, GroupDescriptor> {
        match self {
            Factors::Cyclic(m) => Cow::Owned(GroupDescriptor::Cyclic { n: m[i] }),
            Factors::Power { factor, .. } => Cow::Borrowed(factor),
            Factors::Mixed(f) => Cow::Borrowed(&f[i]),
        }
    }
}

/// A concrete computable group with its exact arithmetic and metric.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    /// `ℤ_p` modulo `p^depth`.
    Padic {
        p: u64,
        depth: usize,
    },
    /// Rational points of `𝕋 = ℝ/ℤ`.
    Circle,
    /// `ℤ` with the `p`-adic topology.
    IntTauP {
        p: u64,
    },
    Cyclic {
        n: u64,
    },
    /// Finitary permutations of `ℕ` with the pointwise topology.
    SymFin,
    Product(Factors),
    /// The bounded subgroup of `ℤ^ℕ`, first `depth` coordinates.
    BoundedIntSeq {
        depth: usize,
    },
}

impl GroupDescriptor {
    pub fn padic(p: u64, depth: usize) -> Result<Self> {
        let g = GroupDescriptor::Padic { p, depth };
        g.validate()?;
        Ok(g)
    }

    pub fn int_tau_p(p: u64) -> Result<Self> {
        let g = GroupDescriptor::IntTauP { p };
        g.validate()?;
        Ok(g)
    }

    pub fn cyclic_power(n: u64, len: usize) -> Self {
        GroupDescriptor::Product(Factors::Power { factor: Box::new(GroupDescriptor::Cyclic { n }), len })
    }

    pub fn circle_power(len: usize) -> Self {
        GroupDescriptor::Product(Factors::Power { factor: Box::new(GroupDescriptor::Circle), len })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GroupDescriptor::Padic { p, depth } => {
                check_prime(*p)?;
                if *depth == 0 {
                    return Err(GroupError::InvalidParameter("p-adic depth must be at least 1".into()));
                }
                Ok(())
            }
            GroupDescriptor::IntTauP { p } => check_prime(*p),
            GroupDescriptor::Cyclic { n } if *n == 0 => {
                Err(GroupError::InvalidParameter("cyclic modulus must be at least 1".into()))
            }
            GroupDescriptor::BoundedIntSeq { depth } if *depth == 0 => {
                Err(GroupError::InvalidParameter("sequence depth must be at least 1".into()))
            }
            GroupDescriptor::Product(f) => {
                if f.is_empty() {
                    return Err(GroupError::InvalidParameter("product needs at least one factor".into()));
                }
                let check = |g: &GroupDescriptor| match g {
                    GroupDescriptor::SymFin | GroupDescriptor::Product(_) | GroupDescriptor::BoundedIntSeq { .. } => {
                        Err(GroupError::InvalidParameter(format!("unsupported product factor {}", g.kind_name())))
                    }
                    g => g.validate(),
                };
                match f {
                    Factors::Cyclic(m) => m.iter().try_for_each(|&n| check(&GroupDescriptor::Cyclic { n })),
                    Factors::Power { factor, .. } => check(factor),
                    Factors::Mixed(v) => v.iter().try_for_each(check),
                }
            }
            _ => Ok(()),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            GroupDescriptor::Padic { .. } => "padic",
            GroupDescriptor::Circle => "circle",
            GroupDescriptor::IntTauP { .. } => "int-padic-topology",
            GroupDescriptor::Cyclic { .. } => "cyclic",
            GroupDescriptor::SymFin => "sym-fin",
            GroupDescriptor::Product(_) => "product",
            GroupDescriptor::BoundedIntSeq { .. } => "bounded-int-seq",
        }
    }

    pub fn is_abelian(&self) -> bool {
        !matches!(self, GroupDescriptor::SymFin)
    }

    pub fn metric_kind(&self) -> MetricKind {
        match self {
            GroupDescriptor::Padic { .. } | GroupDescriptor::IntTauP { .. } => MetricKind::Valuation,
            GroupDescriptor::Circle => MetricKind::ArcLength,
            GroupDescriptor::SymFin => MetricKind::PermutationPointwise,
            GroupDescriptor::Product(_) => MetricKind::ProductSupWeighted,
            GroupDescriptor::Cyclic { .. } | GroupDescriptor::BoundedIntSeq { .. } => MetricKind::SubgroupChain,
        }
    }

    /// Whether the identity has a basis of open subgroups.
    pub fn is_linear(&self) -> bool {
        match self {
            GroupDescriptor::Circle => false,
            GroupDescriptor::Product(f) => (0..f.len()).all(|i| f.factor(i).is_linear()),
            _ => true,
        }
    }

    pub fn identity(&self) -> Value {
        match self {
            GroupDescriptor::Padic { p, depth } => Value::Padic(PadicInt::zero(*p, *depth)),
            GroupDescriptor::Circle => Value::Circle(CirclePoint::zero()),
            GroupDescriptor::IntTauP { .. } => Value::Int(BigInt::zero()),
            GroupDescriptor::Cyclic { .. } => Value::Cyclic(0),
            GroupDescriptor::SymFin => Value::Perm(Permutation::identity()),
            GroupDescriptor::Product(f) => Value::Product((0..f.len()).map(|i| f.factor(i).identity()).collect()),
            GroupDescriptor::BoundedIntSeq { depth } => Value::Bounded(BoundedSeq::zero(*depth)),
        }
    }

    pub fn contains(&self, v: &Value) -> bool {
        match (self, v) {
            (GroupDescriptor::Padic { p, depth }, Value::Padic(x)) => x.p() == *p && x.depth() == *depth,
            (GroupDescriptor::Circle, Value::Circle(_)) => true,
            (GroupDescriptor::IntTauP { .. }, Value::Int(_)) => true,
            (GroupDescriptor::Cyclic { n }, Value::Cyclic(a)) => a < n,
            (GroupDescriptor::SymFin, Value::Perm(_)) => true,
            (GroupDescriptor::Product(f), Value::Product(c)) => {
                c.len() == f.len() && c.iter().enumerate().all(|(i, x)| f.factor(i).contains(x))
            }
            (GroupDescriptor::BoundedIntSeq { depth }, Value::Bounded(s)) => s.depth() == *depth,
            _ => false,
        }
    }

    pub fn check(&self, v: &Value) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GroupError::DescriptorMismatch(format!("{v} is not an element of {}", self.kind_name())))
        }
    }

    fn op_unchecked(&self, a: &Value, b: &Value) -> Result<Value> {
        Ok(match (self, a, b) {
            (_, Value::Padic(x), Value::Padic(y)) => Value::Padic(x.add(y)),
            (_, Value::Circle(x), Value::Circle(y)) => Value::Circle(x.add(y)),
            (_, Value::Int(x), Value::Int(y)) => Value::Int(x + y),
            (GroupDescriptor::Cyclic { n }, Value::Cyclic(x), Value::Cyclic(y)) => {
                Value::Cyclic(((*x as u128 + *y as u128) % *n as u128) as u64)
            }
            (_, Value::Perm(x), Value::Perm(y)) => Value::Perm(x.compose(y)),
            (GroupDescriptor::Product(f), Value::Product(x), Value::Product(y)) => Value::Product(
                x.iter()
                    .zip(y)
                    .enumerate()
                    .map(|(i, (s, t))| f.factor(i).op_unchecked(s, t))
                    .collect::<Result<Vec<_>>>()?,
            ),
            (_, Value::Bounded(x), Value::Bounded(y)) => Value::Bounded(x.add(y)?),
            _ => return Err(GroupError::DescriptorMismatch(format!("cannot combine {a} and {b}"))),
        })
    }

    /// The group law `a · b`.
    pub fn op(&self, a: &Value, b: &Value) -> Result<Value> {
        self.check(a)?;
        self.check(b)?;
        self.op_unchecked(a, b)
    }

    fn inverse_unchecked(&self, a: &Value) -> Value {
        match (self, a) {
            (_, Value::Padic(x)) => Value::Padic(x.neg()),
            (_, Value::Circle(x)) => Value::Circle(x.neg()),
            (_, Value::Int(x)) => Value::Int(-x),
            (GroupDescriptor::Cyclic { n }, Value::Cyclic(x)) => Value::Cyclic((n - x) % n),
            (_, Value::Perm(x)) => Value::Perm(x.inverse()),
            (GroupDescriptor::Product(f), Value::Product(x)) => {
                Value::Product(x.iter().enumerate().map(|(i, s)| f.factor(i).inverse_unchecked(s)).collect())
            }
            (_, Value::Bounded(x)) => Value::Bounded(x.neg()),
            (_, v) => v.clone(),
        }
    }

    pub fn inverse(&self, a: &Value) -> Result<Value> {
        self.check(a)?;
        Ok(self.inverse_unchecked(a))
    }

    fn pow_unchecked(&self, a: &Value, z: i64) -> Result<Value> {
        Ok(match (self, a) {
            (_, Value::Padic(x)) => Value::Padic(x.mul_int(z)),
            (_, Value::Circle(x)) => Value::Circle(x.scale(z)),
            (_, Value::Int(x)) => Value::Int(x * z),
            (GroupDescriptor::Cyclic { n }, Value::Cyclic(x)) => {
                Value::Cyclic((*x as i128 * z as i128).rem_euclid(*n as i128) as u64)
            }
            (GroupDescriptor::Product(f), Value::Product(x)) => Value::Product(
                x.iter().enumerate().map(|(i, s)| f.factor(i).pow_unchecked(s, z)).collect::<Result<Vec<_>>>()?,
            ),
            (_, Value::Bounded(x)) => Value::Bounded(x.scale(z)?),
            (_, Value::Perm(x)) => {
                let mut base = if z < 0 { x.inverse() } else { x.clone() };
                let mut k = z.unsigned_abs();
                let mut acc = Permutation::identity();
                while k > 0 {
                    if k & 1 == 1 {
                        acc = acc.compose(&base);
                    }
                    base = base.compose(&base);
                    k >>= 1;
                }
                Value::Perm(acc)
            }
            (_, v) => return Err(GroupError::DescriptorMismatch(format!("cannot raise {v} to a power"))),
        })
    }

    /// `a^z`; written `z·a` in the abelian groups.
    pub fn pow(&self, a: &Value, z: i64) -> Result<Value> {
        self.check(a)?;
        self.pow_unchecked(a, z)
    }

    /// `d(e, a)`, the length of `a`.
    pub fn norm(&self, a: &Value) -> Result<Distance> {
        self.check(a)?;
        Ok(self.norm_unchecked(a))
    }

    fn norm_unchecked(&self, a: &Value) -> Distance {
        match (self, a) {
            (GroupDescriptor::Padic { p, .. }, Value::Padic(x)) => valuation_distance(*p, x.valuation()),
            (_, Value::Circle(x)) => x.norm(),
            (GroupDescriptor::IntTauP { p }, Value::Int(x)) => valuation_distance(*p, int_valuation(x, *p)),
            (_, Value::Cyclic(x)) => {
                if *x == 0 {
                    Distance::zero()
                } else {
                    Distance::one()
                }
            }
            (_, Value::Perm(x)) => x.least_moved_point().map_or_else(Distance::zero, dyadic),
            (GroupDescriptor::Product(f), Value::Product(x)) => {
                let mut best = Distance::zero();
                for (c, coord) in x.iter().enumerate() {
                    let weight = dyadic(c);
                    // factor distances are at most 1
                    if weight <= best {
                        break;
                    }
                    let d = f.factor(c).norm_unchecked(coord) * weight;
                    if d > best {
                        best = d;
                    }
                }
                best
            }
            (_, Value::Bounded(x)) => x.entries().iter().position(|&e| e != 0).map_or_else(Distance::zero, dyadic),
            _ => Distance::zero(),
        }
    }

    /// Left-invariant distance `d(a, b) = |a⁻¹b|`.
    pub fn distance(&self, a: &Value, b: &Value) -> Result<Distance> {
        self.check(a)?;
        self.check(b)?;
        self.distance_unchecked(a, b)
    }

    fn distance_unchecked(&self, a: &Value, b: &Value) -> Result<Distance> {
        Ok(match (self, a, b) {
            (GroupDescriptor::Product(f), Value::Product(x), Value::Product(y)) => {
                let mut best = Distance::zero();
                for (c, (s, t)) in x.iter().zip(y).enumerate() {
                    if s == t {
                        continue;
                    }
                    let weight = dyadic(c);
                    if weight <= best {
                        break;
                    }
                    let d = f.factor(c).distance_unchecked(s, t)? * weight;
                    if d > best {
                        best = d;
                    }
                }
                best
            }
            (GroupDescriptor::Padic { p, .. }, Value::Padic(x), Value::Padic(y)) => {
                valuation_distance(*p, x.valuation_of_difference(y))
            }
            (_, Value::Perm(x), Value::Perm(y)) => x.first_difference(y).map_or_else(Distance::zero, dyadic),
            (_, Value::Bounded(x), Value::Bounded(y)) => x.first_difference(y).map_or_else(Distance::zero, dyadic),
            _ => self.norm_unchecked(&self.op_unchecked(&self.inverse_unchecked(a), b)?),
        })
    }

    /// `max(|a⁻¹b|, |ab⁻¹|)`, the distance of the two-sided uniformity.
    pub fn two_sided_distance(&self, a: &Value, b: &Value) -> Result<Distance> {
        let left = self.distance(a, b)?;
        if self.is_abelian() {
            return Ok(left);
        }
        let right = self.norm_unchecked(&self.op_unchecked(a, &self.inverse_unchecked(b))?);
        Ok(if right > left { right } else { left })
    }

    /// Exponents worth trying when looking for `z` with `d(a^z, e)` large.
    pub fn extremal_exponents(&self, a: &Value) -> Vec<BigInt> {
        match (self, a) {
            (_, Value::Circle(x)) => x.extremal_exponent().into_iter().collect(),
            (GroupDescriptor::Product(f), Value::Product(x)) => {
                // the heaviest non-trivial coordinate dominates the weighted sup
                match x.iter().position(|c| !c.is_identity()) {
                    Some(c) => f.factor(c).extremal_exponents(&x[c]),
                    None => Vec::new(),
                }
            }
            (GroupDescriptor::Cyclic { n }, Value::Cyclic(x)) if *x != 0 => {
                let order = n / num_integer::gcd(*n, *x);
                alloc::vec![BigInt::from(order / 2)]
            }
            _ => Vec::new(),
        }
    }

    /// `a_0 · a_1 · … · a_{n-1}` for a finite list.
    pub fn product_of(&self, values: &[Value]) -> Result<Value> {
        let mut acc = self.identity();
        for v in values {
            acc = self.op(&acc, v)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Padic { p, depth } => write!(f, "Z_{p} mod {p}^{depth}"),
            GroupDescriptor::Circle => write!(f, "T"),
            GroupDescriptor::IntTauP { p } => write!(f, "(Z, tau_{p})"),
            GroupDescriptor::Cyclic { n } => write!(f, "Z({n})"),
            GroupDescriptor::SymFin => write!(f, "S_fin(N)"),
            GroupDescriptor::Product(fs) => write!(f, "product of {} factors", fs.len()),
            GroupDescriptor::BoundedIntSeq { depth } => write!(f, "bounded Z^N, depth {depth}"),
        }
    }
}

/// An element of one of the concrete groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Padic(PadicInt),
    Circle(CirclePoint),
    /// An element of `(ℤ, τ_p)`.
    Int(BigInt),
    Cyclic(u64),
    Perm(Permutation),
    Product(Vec<Value>),
    Bounded(BoundedSeq),
}

impl Value {
    pub fn is_identity(&self) -> bool {
        match self {
            Value::Padic(x) => x.is_zero(),
            Value::Circle(x) => x.is_zero(),
            Value::Int(x) => x.is_zero(),
            Value::Cyclic(x) => *x == 0,
            Value::Perm(x) => x.is_identity(),
            Value::Product(c) => c.iter().all(Value::is_identity),
            Value::Bounded(s) => s.entries().iter().all(|&e| e == 0),
        }
    }

    pub fn circle(num: i64, den: i64) -> Value {
        Value::Circle(CirclePoint::from_ratio(num, den))
    }

    pub fn as_perm(&self) -> Option<&Permutation> {
        match self {
            Value::Perm(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_circle(&self) -> Option<&CirclePoint> {
        match self {
            Value::Circle(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_product(&self) -> Option<&[Value]> {
        match self {
            Value::Product(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Padic(x) => write!(f, "{:?}", x.digits()),
            Value::Circle(x) => write!(f, "{x}"),
            Value::Int(x) => write!(f, "{x}"),
            Value::Cyclic(x) => write!(f, "{x}"),
            Value::Perm(x) => write!(f, "{x}"),
            Value::Product(c) => {
                write!(f, "(")?;
                for (i, v) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
            Value::Bounded(s) => write!(f, "{:?}", s.entries()),
        }
    }
}

/// A rule-generated sequence in a fixed group; any index is evaluable.
pub trait Sequence {
    fn group(&self) -> &GroupDescriptor;

    fn term(&self, n: usize) -> Value;

    /// Terms `0..count`.
    fn terms(&self, count: usize) -> Vec<Value> {
        (0..count).map(|n| self.term(n)).collect()
    }

    /// The exact limit of the partial products, when the rule knows it.
    fn exact_limit(&self) -> Option<Value> {
        None
    }

    fn describe(&self) -> String;
}

/// `π_k = b_0 · b_1 · … · b_k` for every `k ≤ n`, multiplied left to right.
pub fn partial_products(seq: &dyn Sequence, n: usize) -> Result<Vec<Value>> {
    partial_products_of(seq.group(), &seq.terms(n + 1))
}

pub fn partial_products_of(g: &GroupDescriptor, terms: &[Value]) -> Result<Vec<Value>> {
    let mut out = Vec::with_capacity(terms.len());
    let mut acc = g.identity();
    for t in terms {
        acc = g.op(&acc, t)?;
        out.push(acc.clone());
    }
    Ok(out)
}

/// `b_{l+1} · … · b_m`.
pub fn segment_product(seq: &dyn Sequence, l: usize, m: usize) -> Result<Value> {
    if l >= m {
        return Err(GroupError::Argument(format!("segment ({l}, {m}] is empty")));
    }
    let g = seq.group();
    let mut acc = g.identity();
    for i in l + 1..=m {
        acc = g.op(&acc, &seq.term(i))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concrete::Permutation;
    use alloc::vec;
    use proptest::prelude::*;

    struct Transpositions;
    impl Sequence for Transpositions {
        fn group(&self) -> &GroupDescriptor {
            &GroupDescriptor::SymFin
        }
        fn term(&self, n: usize) -> Value {
            Value::Perm(Permutation::transposition(n, n + 1))
        }
        fn describe(&self) -> String {
            "transpositions".into()
        }
    }

    struct Halves;
    impl Sequence for Halves {
        fn group(&self) -> &GroupDescriptor {
            &GroupDescriptor::Circle
        }
        fn term(&self, n: usize) -> Value {
            Value::Circle(CirclePoint::new(dyadic(n + 1)))
        }
        fn describe(&self) -> String {
            "halves".into()
        }
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn documented_group_laws() {
        let c = GroupDescriptor::Circle;
        assert!(c.op(&Value::circle(1, 3), &Value::circle(2, 3)).unwrap().is_identity());
        assert_eq!(c.inverse(&Value::circle(1, 4)).unwrap(), Value::circle(3, 4));
        assert_eq!(c.distance(&Value::circle(0, 1), &Value::circle(3, 4)).unwrap(), q(1, 4));

        let p5 = GroupDescriptor::padic(5, 3).unwrap();
        let one = Value::Padic(PadicInt::from_digits(5, vec![1, 0, 0]).unwrap());
        assert_eq!(p5.inverse(&one).unwrap(), Value::Padic(PadicInt::from_digits(5, vec![4, 4, 4]).unwrap()));

        let s = GroupDescriptor::SymFin;
        let t01 = Value::Perm(Permutation::transposition(0, 1));
        assert_eq!(s.distance(&t01, &s.identity()).unwrap(), q(1, 1));
    }

    #[test]
    fn padic_distance_from_valuation() {
        let g = GroupDescriptor::padic(3, 6).unwrap();
        let x = Value::Padic(PadicInt::from_i64(20, 3, 6).unwrap());
        let y = Value::Padic(PadicInt::from_i64(2, 3, 6).unwrap());
        assert_eq!(g.distance(&x, &y).unwrap(), q(1, 9));
    }

    #[test]
    fn int_tau_p_distances() {
        let g = GroupDescriptor::int_tau_p(3).unwrap();
        let d = |a: i64, b: i64| g.distance(&Value::Int(a.into()), &Value::Int(b.into())).unwrap();
        assert_eq!(d(0, 9), q(1, 9));
        assert_eq!(d(7, 7), q(0, 1));
        assert_eq!(d(0, 1), q(1, 1));
    }

    #[test]
    fn mismatched_owner_is_rejected() {
        let g = GroupDescriptor::padic(3, 4).unwrap();
        let err = g.op(&Value::circle(1, 2), &g.identity()).unwrap_err();
        assert!(matches!(err, GroupError::DescriptorMismatch(_)));
        let h = GroupDescriptor::padic(3, 5).unwrap();
        assert!(g.op(&h.identity(), &g.identity()).is_err());
        assert!(GroupDescriptor::padic(6, 3).is_err());
        assert!(GroupDescriptor::Cyclic { n: 0 }.validate().is_err());
    }

    #[test]
    fn partial_products_of_transpositions_are_cycles() {
        let pp = partial_products(&Transpositions, 2).unwrap();
        assert_eq!(pp[2], Value::Perm(Permutation::cycle(&[0, 1, 2, 3]).unwrap()));
        let seg = segment_product(&Transpositions, 2, 5).unwrap();
        let seg = seg.as_perm().unwrap();
        assert!((0..=2).all(|i| seg.apply(i) == i));
        assert_eq!(segment_product(&Transpositions, 3, 4).unwrap(), Transpositions.term(4));
        assert!(matches!(segment_product(&Transpositions, 4, 4), Err(GroupError::Argument(_))));
    }

    #[test]
    fn geometric_partial_sums() {
        let pp = partial_products(&Halves, 2).unwrap();
        assert_eq!(pp, vec![Value::circle(1, 2), Value::circle(3, 4), Value::circle(7, 8)]);
        assert_eq!(segment_product(&Halves, 1, 3).unwrap(), Value::circle(3, 16));
    }

    #[test]
    fn product_metric_weights_coordinates() {
        let g = GroupDescriptor::cyclic_power(3, 4);
        let x = Value::Product(vec![Value::Cyclic(0), Value::Cyclic(0), Value::Cyclic(2), Value::Cyclic(1)]);
        assert_eq!(g.norm(&x).unwrap(), q(1, 4));
        let c = GroupDescriptor::circle_power(3);
        let y = Value::Product(vec![Value::circle(1, 64), Value::circle(1, 2), Value::circle(0, 1)]);
        assert_eq!(c.norm(&y).unwrap(), q(1, 4));
    }

    #[test]
    fn permutation_powers_by_squaring() {
        let s = GroupDescriptor::SymFin;
        let c = Value::Perm(Permutation::cycle(&[0, 1, 2, 3, 4]).unwrap());
        assert!(s.pow(&c, 5).unwrap().is_identity());
        assert_eq!(s.pow(&c, -1).unwrap(), s.inverse(&c).unwrap());
        assert_eq!(s.pow(&c, 7).unwrap(), s.pow(&c, 2).unwrap());
    }

    fn groups() -> Vec<GroupDescriptor> {
        vec![
            GroupDescriptor::padic(3, 8).unwrap(),
            GroupDescriptor::Circle,
            GroupDescriptor::int_tau_p(5).unwrap(),
            GroupDescriptor::Cyclic { n: 12 },
            GroupDescriptor::SymFin,
            GroupDescriptor::cyclic_power(5, 6),
            GroupDescriptor::circle_power(4),
            GroupDescriptor::BoundedIntSeq { depth: 6 },
        ]
    }

    fn sample(g: &GroupDescriptor, seed: &[i64]) -> Value {
        let s = |i: usize| seed[i % seed.len()];
        match g {
            GroupDescriptor::Padic { p, depth } => Value::Padic(PadicInt::from_i64(s(0), *p, *depth).unwrap()),
            GroupDescriptor::Circle => Value::circle(s(0), 1 + s(1).rem_euclid(40)),
            GroupDescriptor::IntTauP { .. } => Value::Int(s(0).into()),
            GroupDescriptor::Cyclic { n } => Value::Cyclic(s(0).rem_euclid(*n as i64) as u64),
            GroupDescriptor::SymFin => {
                let mut images: Vec<usize> = (0..7).collect();
                for i in 0..7 {
                    images.swap(i, s(i).rem_euclid(7) as usize);
                }
                Value::Perm(Permutation::from_images(images).unwrap())
            }
            GroupDescriptor::Product(f) => {
                Value::Product((0..f.len()).map(|i| sample(&f.factor(i), &seed[i % seed.len()..])).collect())
            }
            GroupDescriptor::BoundedIntSeq { depth } => {
                Value::Bounded(BoundedSeq::new((0..*depth).map(|i| s(i) % 50).collect()))
            }
        }
    }

    proptest! {
        #[test]
        fn group_axioms_and_left_invariance(
            a in proptest::collection::vec(-500i64..500, 8),
            b in proptest::collection::vec(-500i64..500, 8),
            c in proptest::collection::vec(-500i64..500, 8),
        ) {
            for g in groups() {
                let (x, y, z) = (sample(&g, &a), sample(&g, &b), sample(&g, &c));
                let e = g.identity();
                prop_assert_eq!(g.op(&g.op(&x, &y).unwrap(), &z).unwrap(), g.op(&x, &g.op(&y, &z).unwrap()).unwrap());
                prop_assert_eq!(&g.op(&x, &e).unwrap(), &x);
                prop_assert_eq!(&g.op(&e, &x).unwrap(), &x);
                prop_assert!(g.op(&x, &g.inverse(&x).unwrap()).unwrap().is_identity());
                let zx = g.op(&z, &x).unwrap();
                let zy = g.op(&z, &y).unwrap();
                prop_assert_eq!(g.distance(&zx, &zy).unwrap(), g.distance(&x, &y).unwrap());
                prop_assert_eq!(g.distance(&x, &y).unwrap().is_zero(), x == y);
                if g.is_abelian() {
                    prop_assert_eq!(g.op(&x, &y).unwrap(), g.op(&y, &x).unwrap());
                }
                let k = a[0] % 20;
                let mut direct = e.clone();
                for _ in 0..k.unsigned_abs() {
                    direct = g.op(&direct, &x).unwrap();
                }
                if k < 0 {
                    direct = g.inverse(&direct).unwrap();
                }
                prop_assert_eq!(g.pow(&x, k).unwrap(), direct);
            }
        }

        #[test]
        fn segment_identity(l in 0usize..20, len in 1usize..20) {
            let m = l + len;
            let pp = partial_products(&Transpositions, m).unwrap();
            let g = GroupDescriptor::SymFin;
            let lhs = g.op(&g.inverse(&pp[l]).unwrap(), &pp[m]).unwrap();
            prop_assert_eq!(lhs, segment_product(&Transpositions, l, m).unwrap());
        }
    }
}
