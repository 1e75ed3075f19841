//! Closed-form sequence rules and adaptors.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::concrete::{BoundedSeq, CirclePoint, PadicInt, Permutation};
use crate::group::{dyadic, partial_products_of};
use crate::{Factors, GroupDescriptor, GroupError, IntWeightSeq, Result, Sequence, Value};

impl<S: Sequence + ?Sized> Sequence for &S {
    fn group(&self) -> &GroupDescriptor {
        (**self).group()
    }
    fn term(&self, n: usize) -> Value {
        (**self).term(n)
    }
    fn terms(&self, count: usize) -> Vec<Value> {
        (**self).terms(count)
    }
    fn exact_limit(&self) -> Option<Value> {
        (**self).exact_limit()
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
}

impl<S: Sequence + ?Sized> Sequence for Box<S> {
    fn group(&self) -> &GroupDescriptor {
        (**self).group()
    }
    fn term(&self, n: usize) -> Value {
        (**self).term(n)
    }
    fn terms(&self, count: usize) -> Vec<Value> {
        (**self).terms(count)
    }
    fn exact_limit(&self) -> Option<Value> {
        (**self).exact_limit()
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
}

/// `b_n = (n, n+1)` in the finitary symmetric group.
#[derive(Debug, Clone, Copy, Default)]
pub struct SymTranspositions;

impl Sequence for SymTranspositions {
    fn group(&self) -> &GroupDescriptor {
        &GroupDescriptor::SymFin
    }
    fn term(&self, n: usize) -> Value {
        Value::Perm(Permutation::transposition(n, n + 1))
    }
    fn describe(&self) -> String {
        "transpositions (n n+1)".into()
    }
}

/// `b_n = num / base^(n+1)` on the circle.
#[derive(Debug, Clone)]
pub struct CircleGeometric {
    num: i64,
    base: u64,
}

impl CircleGeometric {
    pub fn new(num: i64, base: u64) -> Result<Self> {
        if base < 2 {
            return Err(GroupError::InvalidParameter(format!("geometric base {base} must be at least 2")));
        }
        Ok(CircleGeometric { num, base })
    }
}

impl Sequence for CircleGeometric {
    fn group(&self) -> &GroupDescriptor {
        &GroupDescriptor::Circle
    }
    fn term(&self, n: usize) -> Value {
        let den = BigInt::from(self.base).pow(n as u32 + 1);
        Value::Circle(CirclePoint::new(BigRational::new(BigInt::from(self.num), den)))
    }
    fn exact_limit(&self) -> Option<Value> {
        Some(Value::Circle(CirclePoint::new(BigRational::new(BigInt::from(self.num), BigInt::from(self.base - 1)))))
    }
    fn describe(&self) -> String {
        format!("{}/{}^(n+1)", self.num, self.base)
    }
}

/// `a_n = coeff · p^(n + offset)` in `ℤ_p`.
#[derive(Debug, Clone)]
pub struct PadicPowers {
    group: GroupDescriptor,
    coeff: i64,
    offset: usize,
}

impl PadicPowers {
    pub fn new(p: u64, depth: usize, coeff: i64, offset: usize) -> Result<Self> {
        Ok(PadicPowers { group: GroupDescriptor::padic(p, depth)?, coeff, offset })
    }

    fn pd(&self) -> (u64, usize) {
        match self.group {
            GroupDescriptor::Padic { p, depth } => (p, depth),
            _ => unreachable!(),
        }
    }
}

impl Sequence for PadicPowers {
    fn group(&self) -> &GroupDescriptor {
        &self.group
    }
    fn term(&self, n: usize) -> Value {
        let (p, depth) = self.pd();
        let k = n + self.offset;
        if k >= depth {
            return self.group.identity();
        }
        let v = BigInt::from(self.coeff) * BigInt::from(p).pow(k as u32);
        Value::Padic(PadicInt::from_bigint(&v, p, depth).expect("validated prime"))
    }
    fn exact_limit(&self) -> Option<Value> {
        // terms vanish at depth beyond index depth - offset
        let (_, depth) = self.pd();
        let count = depth.saturating_sub(self.offset);
        self.group.product_of(&self.terms(count)).ok()
    }
    fn describe(&self) -> String {
        let (p, depth) = self.pd();
        format!("{}*{p}^(n+{}) in Z_{p} mod {p}^{depth}", self.coeff, self.offset)
    }
}

/// `a_n = coeff · p^n` in `(ℤ, τ_p)`.
#[derive(Debug, Clone)]
pub struct IntPowers {
    group: GroupDescriptor,
    coeff: i64,
}

impl IntPowers {
    pub fn new(p: u64, coeff: i64) -> Result<Self> {
        Ok(IntPowers { group: GroupDescriptor::int_tau_p(p)?, coeff })
    }
}

impl Sequence for IntPowers {
    fn group(&self) -> &GroupDescriptor {
        &self.group
    }
    fn term(&self, n: usize) -> Value {
        let p = match self.group {
            GroupDescriptor::IntTauP { p } => p,
            _ => unreachable!(),
        };
        Value::Int(BigInt::from(self.coeff) * BigInt::from(p).pow(n as u32))
    }
    fn describe(&self) -> String {
        format!("{}*p^n in (Z, tau_p)", self.coeff)
    }
}

#[derive(Debug, Clone)]
pub struct Constant {
    group: GroupDescriptor,
    value: Value,
}

impl Constant {
    pub fn new(group: GroupDescriptor, value: Value) -> Result<Self> {
        group.check(&value)?;
        Ok(Constant { group, value })
    }

    pub fn identity(group: GroupDescriptor) -> Self {
        let value = group.identity();
        Constant { group, value }
    }
}

impl Sequence for Constant {
    fn group(&self) -> &GroupDescriptor {
        &self.group
    }
    fn term(&self, _n: usize) -> Value {
        self.value.clone()
    }
    fn exact_limit(&self) -> Option<Value> {
        self.value.is_identity().then(|| self.value.clone())
    }
    fn describe(&self) -> String {
        format!("constant {}", self.value)
    }
}

/// `a, b, a, b, …`
#[derive(Debug, Clone)]
pub struct Alternating {
    group: GroupDescriptor,
    even: Value,
    odd: Value,
}

impl Alternating {
    pub fn new(group: GroupDescriptor, even: Value, odd: Value) -> Result<Self> {
        group.check(&even)?;
        group.check(&odd)?;
        Ok(Alternating { group, even, odd })
    }
}

impl Sequence for Alternating {
    fn group(&self) -> &GroupDescriptor {
        &self.group
    }
    fn term(&self, n: usize) -> Value {
        if n.is_multiple_of(2) {
            self.even.clone()
        } else {
            self.odd.clone()
        }
    }
    fn describe(&self) -> String {
        format!("alternating {}, {}", self.even, self.odd)
    }
}

/// The indicator `e_n` of coordinate `n` in a cyclic product or in the
/// bounded subgroup of `ℤ^ℕ`; the identity once `n` leaves the window.
#[derive(Debug, Clone)]
pub struct UnitVectors {
    group: GroupDescriptor,
}

impl UnitVectors {
    pub fn new(group: GroupDescriptor) -> Result<Self> {
        match &group {
            GroupDescriptor::BoundedIntSeq { .. } => {}
            GroupDescriptor::Product(f)
                if (0..f.len()).all(|i| matches!(f.factor(i).as_ref(), GroupDescriptor::Cyclic { n } if *n > 1)) => {}
            g => return Err(GroupError::Unsupported(format!("unit vectors in {}", g.kind_name()))),
        }
        Ok(UnitVectors { group })
    }
}

impl Sequence for UnitVectors {
    fn group(&self) -> &GroupDescriptor {
        &self.group
    }
    fn term(&self, n: usize) -> Value {
        match &self.group {
            GroupDescriptor::BoundedIntSeq { depth } => Value::Bounded(BoundedSeq::unit(n, *depth)),
            g => {
                let mut v = g.identity();
                if let Value::Product(c) = &mut v {
                    if n < c.len() {
                        c[n] = Value::Cyclic(1);
                    }
                }
                v
            }
        }
    }
    fn exact_limit(&self) -> Option<Value> {
        match &self.group {
            GroupDescriptor::BoundedIntSeq { depth } => Some(Value::Bounded(BoundedSeq::new(alloc::vec![1; *depth]))),
            g => {
                let len = match g {
                    GroupDescriptor::Product(f) => f.len(),
                    _ => 0,
                };
                g.product_of(&self.terms(len)).ok()
            }
        }
    }
    fn describe(&self) -> String {
        "unit vectors e_n".into()
    }
}

/// A finite list of terms followed by the identity.
#[derive(Debug, Clone)]
pub struct Explicit {
    group: GroupDescriptor,
    values: Vec<Value>,
    label: String,
}

impl Explicit {
    pub fn new(group: GroupDescriptor, values: Vec<Value>) -> Result<Self> {
        values.iter().try_for_each(|v| group.check(v))?;
        Ok(Explicit { group, values, label: "explicit terms".into() })
    }

    pub fn labelled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }
}

impl Sequence for Explicit {
    fn group(&self) -> &GroupDescriptor {
        &self.group
    }
    fn term(&self, n: usize) -> Value {
        self.values.get(n).cloned().unwrap_or_else(|| self.group.identity())
    }
    fn exact_limit(&self) -> Option<Value> {
        self.group.product_of(&self.values).ok()
    }
    fn describe(&self) -> String {
        format!("{} ({} terms)", self.label, self.values.len())
    }
}

/// The sequence `π_n = b_0 ⋯ b_n` of partial products.
#[derive(Debug, Clone)]
pub struct PartialProducts<S> {
    inner: S,
}

impl<S: Sequence> PartialProducts<S> {
    pub fn new(inner: S) -> Self {
        PartialProducts { inner }
    }
}

impl<S: Sequence> Sequence for PartialProducts<S> {
    fn group(&self) -> &GroupDescriptor {
        self.inner.group()
    }
    fn term(&self, n: usize) -> Value {
        self.terms(n + 1).pop().expect("n + 1 terms")
    }
    fn terms(&self, count: usize) -> Vec<Value> {
        partial_products_of(self.inner.group(), &self.inner.terms(count)).expect("inner terms belong to the group")
    }
    fn describe(&self) -> String {
        format!("partial products of {}", self.inner.describe())
    }
}

/// `b_n = a_{φ(n)}` for a finitary bijection `φ`.
#[derive(Debug, Clone)]
pub struct Reordered<S> {
    inner: S,
    perm: Permutation,
}

impl<S: Sequence> Reordered<S> {
    pub fn new(inner: S, perm: Permutation) -> Self {
        Reordered { inner, perm }
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }
}

impl<S: Sequence> Sequence for Reordered<S> {
    fn group(&self) -> &GroupDescriptor {
        self.inner.group()
    }
    fn term(&self, n: usize) -> Value {
        self.inner.term(self.perm.apply(n))
    }
    fn terms(&self, count: usize) -> Vec<Value> {
        let need = (0..count).map(|n| self.perm.apply(n) + 1).max().unwrap_or(0);
        let base = self.inner.terms(need);
        (0..count).map(|n| base[self.perm.apply(n)].clone()).collect()
    }
    fn exact_limit(&self) -> Option<Value> {
        if self.group().is_abelian() {
            self.inner.exact_limit()
        } else {
            None
        }
    }
    fn describe(&self) -> String {
        format!("{} reordered by {}", self.inner.describe(), self.perm)
    }
}

/// `a_n^{z(n)}`.
#[derive(Debug, Clone)]
pub struct Powered<S> {
    inner: S,
    weights: IntWeightSeq,
}

impl<S: Sequence> Powered<S> {
    pub fn new(inner: S, weights: IntWeightSeq) -> Self {
        Powered { inner, weights }
    }
}

impl<S: Sequence> Sequence for Powered<S> {
    fn group(&self) -> &GroupDescriptor {
        self.inner.group()
    }
    fn term(&self, n: usize) -> Value {
        self.group().pow(&self.inner.term(n), self.weights.eval(n)).expect("inner terms belong to the group")
    }
    fn terms(&self, count: usize) -> Vec<Value> {
        let g = self.group();
        self.inner
            .terms(count)
            .iter()
            .enumerate()
            .map(|(n, a)| g.pow(a, self.weights.eval(n)).expect("inner terms belong to the group"))
            .collect()
    }
    fn describe(&self) -> String {
        format!("{} powered by z", self.inner.describe())
    }
}

/// The interleaved family on a product of `len` circle coordinates:
/// `g_{2i}` is `1/2` at coordinate `i+1`, `g_{2i+1}` is `1/2^(i+1)` at
/// coordinate `0`.
#[derive(Debug, Clone)]
pub struct InterleavedExample {
    group: GroupDescriptor,
}

impl InterleavedExample {
    pub fn new(len: usize) -> Result<Self> {
        if len < 2 {
            return Err(GroupError::InvalidParameter("need at least two coordinates".into()));
        }
        Ok(InterleavedExample {
            group: GroupDescriptor::Product(Factors::Power { factor: Box::new(GroupDescriptor::Circle), len }),
        })
    }
}

impl Sequence for InterleavedExample {
    fn group(&self) -> &GroupDescriptor {
        &self.group
    }
    fn term(&self, n: usize) -> Value {
        let mut v = self.group.identity();
        let Value::Product(c) = &mut v else { unreachable!() };
        let i = n / 2;
        if n.is_multiple_of(2) {
            if i + 1 < c.len() {
                c[i + 1] = Value::circle(1, 2);
            }
        } else {
            c[0] = Value::Circle(CirclePoint::new(dyadic(i + 1)));
        }
        v
    }
    fn describe(&self) -> String {
        "interleaved unit halves and dyadic tail".into()
    }
}
