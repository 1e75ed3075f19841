//! Bound functions `f: ℕ → ω+1` and integer weight sequences `z: ℕ → ℤ`.

use alloc::vec::Vec;
use core::fmt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::verdict::{Verdict, Witness};

/// An extended natural number: a finite value or the sentinel `ω`.
///
/// `ω` is a tag, not a large integer, so `Fin(n) < Omega` for every `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(u64),
    Omega,
}

impl ExtNat {
    pub fn is_omega(self) -> bool {
        matches!(self, ExtNat::Omega)
    }

    /// Finite value, with `ω` replaced by `cap`.
    pub fn capped(self, cap: u64) -> u64 {
        match self {
            ExtNat::Fin(v) => v,
            ExtNat::Omega => cap,
        }
    }

    /// Does `|v| ≤ self` hold?
    pub fn admits(self, v: i64) -> bool {
        match self {
            ExtNat::Omega => true,
            ExtNat::Fin(b) => v.unsigned_abs() <= b,
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(v) => write!(f, "{v}"),
            ExtNat::Omega => f.write_str("ω"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundTail {
    Constant(u64),
    Omega,
    /// `n ↦ max(0, n + offset)`.
    IdentityPlus(i64),
    /// `n ↦ values[(n - prefix_len) mod len]`.
    Periodic(Vec<ExtNat>),
}

/// A bound function given by an explicit prefix and a closed-form tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundFunction {
    pub prefix: Vec<ExtNat>,
    pub tail: BoundTail,
}

impl BoundFunction {
    pub fn new(prefix: Vec<ExtNat>, tail: BoundTail) -> crate::Result<Self> {
        if let BoundTail::Periodic(p) = &tail {
            if p.is_empty() {
                return Err(crate::GroupError::InvalidParameter("periodic tail must be non-empty".into()));
            }
        }
        Ok(BoundFunction { prefix, tail })
    }

    /// `f_ω`: the constant-`ω` function.
    pub fn omega() -> Self {
        BoundFunction { prefix: Vec::new(), tail: BoundTail::Omega }
    }

    /// `f₁`: the constant-1 function.
    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: u64) -> Self {
        BoundFunction { prefix: Vec::new(), tail: BoundTail::Constant(c) }
    }

    /// `n ↦ max(0, n + offset)`.
    pub fn identity_plus(offset: i64) -> Self {
        BoundFunction { prefix: Vec::new(), tail: BoundTail::IdentityPlus(offset) }
    }

    pub fn eval(&self, n: usize) -> ExtNat {
        if let Some(v) = self.prefix.get(n) {
            return *v;
        }
        match &self.tail {
            BoundTail::Constant(c) => ExtNat::Fin(*c),
            BoundTail::Omega => ExtNat::Omega,
            BoundTail::IdentityPlus(off) => {
                let v = n as i64 + off;
                ExtNat::Fin(if v < 0 { 0 } else { v as u64 })
            }
            BoundTail::Periodic(vals) => vals[(n - self.prefix.len()) % vals.len()],
        }
    }

    /// True when the tail rule keeps values bounded forever.
    pub fn is_bounded(&self) -> bool {
        let prefix_ok = !self.prefix.iter().any(|v| v.is_omega());
        prefix_ok
            && match &self.tail {
                BoundTail::Constant(_) => true,
                BoundTail::Omega | BoundTail::IdentityPlus(_) => false,
                BoundTail::Periodic(v) => !v.iter().any(|x| x.is_omega()),
            }
    }

    /// Largest finite value on `[0, horizon]`, `None` if `ω` occurs there.
    pub fn max_on(&self, horizon: usize) -> Option<u64> {
        let mut best = 0;
        for n in 0..=horizon {
            match self.eval(n) {
                ExtNat::Fin(v) => best = best.max(v),
                ExtNat::Omega => return None,
            }
        }
        Some(best)
    }
}

/// Compare `f ≤ g` (pointwise) or `f ≤* g` (eventually) on `[0, horizon]`.
///
/// Pointwise: fails at the first violation. Eventual: holds when the last
/// violation lies in the first half of the horizon (the witness is the index
/// from which the inequality holds), fails when violations keep occurring in
/// both quarters of the second half, and is inconclusive otherwise.
pub fn bound_le(f: &BoundFunction, g: &BoundFunction, eventual: bool, horizon: usize) -> Verdict {
    let tol = BigRational::zero();
    let violations: Vec<usize> = (0..=horizon).filter(|&n| f.eval(n) > g.eval(n)).collect();
    if !eventual {
        return match violations.first() {
            None => Verdict::holds(None, horizon, tol),
            Some(&n) => Verdict::fails(Witness::Index(n), horizon, tol),
        };
    }
    let half = horizon / 2;
    let three_q = (3 * horizon) / 4;
    match violations.last() {
        None => Verdict::holds(Some(Witness::Settle { index: 0 }), horizon, tol),
        Some(&last) if last < half => Verdict::holds(Some(Witness::Settle { index: last + 1 }), horizon, tol),
        Some(&last) => {
            let in_third = violations.iter().any(|&n| n >= half && n < three_q);
            if last >= three_q && in_third {
                Verdict::fails(Witness::Index(last), horizon, tol)
            } else {
                Verdict::inconclusive(Some(Witness::Index(last)), horizon, tol)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightTail {
    Zero,
    Constant(i64),
    Periodic(Vec<i64>),
}

/// Integer weights `z: ℕ → ℤ` with a finite description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntWeightSeq {
    pub prefix: Vec<i64>,
    pub tail: WeightTail,
}

impl IntWeightSeq {
    /// Weights given by `prefix`, zero afterwards.
    pub fn finite(prefix: Vec<i64>) -> Self {
        IntWeightSeq { prefix, tail: WeightTail::Zero }
    }

    pub fn constant(c: i64) -> Self {
        IntWeightSeq { prefix: Vec::new(), tail: WeightTail::Constant(c) }
    }

    pub fn zero() -> Self {
        Self::finite(Vec::new())
    }

    pub fn eval(&self, n: usize) -> i64 {
        if let Some(v) = self.prefix.get(n) {
            return *v;
        }
        match &self.tail {
            WeightTail::Zero => 0,
            WeightTail::Constant(c) => *c,
            WeightTail::Periodic(v) if v.is_empty() => 0,
            WeightTail::Periodic(v) => v[(n - self.prefix.len()) % v.len()],
        }
    }

    pub fn map(&self, f: impl Fn(i64) -> i64) -> Self {
        let prefix = self.prefix.iter().map(|&v| f(v)).collect();
        let tail = match &self.tail {
            WeightTail::Zero => {
                if f(0) == 0 {
                    WeightTail::Zero
                } else {
                    WeightTail::Constant(f(0))
                }
            }
            WeightTail::Constant(c) => WeightTail::Constant(f(*c)),
            WeightTail::Periodic(v) => WeightTail::Periodic(v.iter().map(|&x| f(x)).collect()),
        };
        IntWeightSeq { prefix, tail }
    }

    /// `|z|` pointwise.
    pub fn abs(&self) -> Self {
        self.map(|v| v.abs())
    }

    /// Indices `< limit` where the weight is non-zero.
    pub fn support_below(&self, limit: usize) -> Vec<usize> {
        (0..limit).filter(|&n| self.eval(n) != 0).collect()
    }

    /// Does `|z| ≤ f` hold on `[0, horizon]`?
    pub fn bounded_by(&self, f: &BoundFunction, horizon: usize) -> bool {
        (0..=horizon).all(|n| f.eval(n).admits(self.eval(n)))
    }
}

/// Split `z` into `z₊ = max(0, z)` and `z₋ = min(0, z)`, so `z = z₊ + z₋`.
pub fn decompose_weights(z: &IntWeightSeq) -> (IntWeightSeq, IntWeightSeq) {
    (z.map(|v| v.max(0)), z.map(|v| v.min(0)))
}
