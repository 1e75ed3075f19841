use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{BasisKind, NestedBasis};
use crate::concrete::{BoundedSeq, CirclePoint, PadicInt, Permutation};
use crate::{BoundFunction, ExtNat, GroupDescriptor, GroupError, Result, Value};

/// The canonical least element of `V_n = {x : x^z ∈ U_n for |z| ≤ f(n)}`
/// for the supported chains, or a smaller circle point if that one repeats.
fn candidate(basis: &NestedBasis, n: usize, c: u64) -> Result<Value> {
    let exhausted = || GroupError::DepthExhausted(format!("V_{n} has no representable element"));
    Ok(match basis.group() {
        GroupDescriptor::Padic { p, depth } => {
            if n >= *depth {
                return Err(exhausted());
            }
            Value::Padic(PadicInt::from_bigint(&BigInt::from(*p).pow(n as u32), *p, *depth)?)
        }
        GroupDescriptor::IntTauP { p } => Value::Int(BigInt::from(*p).pow(n as u32)),
        GroupDescriptor::SymFin => Value::Perm(Permutation::transposition(n, n + 1)),
        GroupDescriptor::BoundedIntSeq { depth } => {
            if n >= *depth {
                return Err(exhausted());
            }
            Value::Bounded(BoundedSeq::unit(n, *depth))
        }
        GroupDescriptor::Product(f) => {
            if n >= f.len() {
                return Err(exhausted());
            }
            let mut coords: Vec<Value> = (0..f.len()).map(|i| f.factor(i).identity()).collect();
            coords[n] = Value::Cyclic(1);
            Value::Product(coords)
        }
        GroupDescriptor::Circle => {
            let r = basis.radius(n) / BigInt::from(2 * c.max(1));
            Value::Circle(CirclePoint::new(r))
        }
        other => return Err(GroupError::Unsupported(format!("builder in {}", other.kind_name()))),
    })
}

/// A faithfully indexed `a_0, …, a_{count-1}` with `a_m^z ∈ U_m` whenever
/// `|z| ≤ f(m)` (`ω` read as `omega_cap`), verified exactly.
pub fn build_f_cauchy_set(basis: &NestedBasis, f: &BoundFunction, count: usize, omega_cap: u64) -> Result<Vec<Value>> {
    if count > basis.count() {
        return Err(GroupError::Argument(format!("{count} terms from a basis of {} levels", basis.count())));
    }
    let g = basis.group();
    let mut out: Vec<Value> = Vec::with_capacity(count);
    for n in 0..count {
        let c = match f.eval(n) {
            ExtNat::Fin(c) => c,
            ExtNat::Omega => omega_cap,
        };
        let mut a = candidate(basis, n, c)?;
        while out.contains(&a) {
            match &a {
                Value::Circle(x) => a = Value::Circle(CirclePoint::new(x.value() / BigInt::from(2))),
                _ => return Err(GroupError::DepthExhausted(format!("V_{n} repeats an earlier term"))),
            }
        }
        let ok = match basis.kind() {
            // subgroups are closed under powers
            BasisKind::SubgroupChain => basis.contains(n, &a)?,
            BasisKind::MetricBall => {
                let mut ok = true;
                for z in 1..=c.min(i64::MAX as u64) as i64 {
                    if !basis.contains(n, &g.pow(&a, z)?)? || !basis.contains(n, &g.pow(&a, -z)?)? {
                        ok = false;
                        break;
                    }
                }
                ok
            }
        };
        if !ok {
            return Err(GroupError::DepthExhausted(format!("candidate for V_{n} leaves U_{n}")));
        }
        out.push(a);
    }
    Ok(out)
}

/// Radius of the ball used for `V_n` on the circle, for reporting.
pub fn circle_step(basis: &NestedBasis, n: usize, c: u64) -> BigRational {
    basis.radius(n) / BigInt::from(2 * c.max(1))
}
