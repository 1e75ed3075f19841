//! p-adic approximation and Chinese remaindering.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::concrete::primes::is_prime as is_prime_modulus;
use crate::concrete::PadicInt;
pub use crate::concrete::Valuation;
use crate::{Factors, GroupDescriptor, GroupError, Result, Value};

/// `v_p(x)` at the stored depth.
pub fn valuation(x: &PadicInt) -> Valuation {
    x.valuation()
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// The least `z ≥ 0` with `v_p(η − zα) ≥ k`.
///
/// With `t = v_p(α)`, this is `(η/p^t)·(α/p^t)⁻¹ mod p^(k−t)`.
pub fn padic_approx_solve(eta: &PadicInt, alpha: &PadicInt, k: usize) -> Result<BigInt> {
    if !eta.compatible(alpha) {
        return Err(GroupError::DescriptorMismatch("η and α live in different truncations".into()));
    }
    let t = alpha.valuation().finite().ok_or_else(|| GroupError::Degenerate("α = 0".into()))?;
    if let Some(v) = eta.valuation().finite() {
        if v < t {
            return Err(GroupError::Domain(format!("v_p(η) = {v} < v_p(α) = {t}")));
        }
    }
    if k <= t || k > alpha.depth() {
        return Err(GroupError::Domain(format!("need v_p(α) = {t} < k = {k} ≤ depth = {}", alpha.depth())));
    }
    let modulus = BigInt::from(alpha.p()).pow((k - t) as u32);
    let a = BigInt::from(alpha.shift_down(t).to_residue()) % &modulus;
    let e = BigInt::from(eta.shift_down(t).to_residue()) % &modulus;
    let inv = inverse_mod(&a, &modulus).expect("α/p^t is a unit");
    Ok((e * inv).mod_floor(&modulus))
}

/// Coefficients `z_0, …, z_n` with `v_p(η − Σ_{i≤k} z_i α_i) ≥ v_p(α_{k+1})`,
/// the last remainder vanishing at depth.
pub fn iterated_approx(eta: &PadicInt, alphas: &[PadicInt]) -> Result<Vec<BigInt>> {
    let depth = eta.depth();
    let mut vals = Vec::with_capacity(alphas.len());
    for a in alphas {
        if !eta.compatible(a) {
            return Err(GroupError::DescriptorMismatch("α list mixes truncations".into()));
        }
        match a.valuation().finite() {
            Some(v) if v < depth => vals.push(v),
            _ => return Err(GroupError::Domain("every α must be nonzero at depth".into())),
        }
    }
    if vals.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GroupError::Domain(format!("valuations {vals:?} are not strictly increasing")));
    }
    let mut remainder = eta.clone();
    let mut out = Vec::with_capacity(alphas.len());
    for (k, alpha) in alphas.iter().enumerate() {
        let target = vals.get(k + 1).copied().unwrap_or(depth);
        let z = padic_approx_solve(&remainder, alpha, target)?;
        let za = alpha.mul(&PadicInt::from_bigint(&z, eta.p(), depth)?);
        remainder = remainder.sub(&za);
        out.push(z);
    }
    Ok(out)
}

/// The least `z ≥ 0` with `(z·g)(c) = targets[c]` for every listed coordinate.
///
/// `g` must be an element of a product of cyclic groups whose moduli are
/// distinct primes on `coords`, and every listed coordinate must lie in the
/// support of `g`.
pub fn crt_multiple(group: &GroupDescriptor, g: &Value, coords: &[usize], targets: &[u64]) -> Result<BigUint> {
    group.check(g)?;
    let factors = match group {
        GroupDescriptor::Product(f) => f,
        _ => return Err(GroupError::DescriptorMismatch("CRT needs a product group".into())),
    };
    if coords.len() != targets.len() {
        return Err(GroupError::Argument("one target per coordinate".into()));
    }
    let entries = g.as_product().expect("checked against a product descriptor");
    let mut moduli: Vec<u64> = Vec::with_capacity(coords.len());
    let mut residues: Vec<BigInt> = Vec::with_capacity(coords.len());
    for (&c, &t) in coords.iter().zip(targets) {
        if c >= factors.len() {
            return Err(GroupError::Argument(format!("coordinate {c} outside the product")));
        }
        let n = match factors.factor(c).as_ref() {
            GroupDescriptor::Cyclic { n } => *n,
            other => return Err(GroupError::Unsupported(format!("factor {c} is {}", other.kind_name()))),
        };
        let gc = match entries[c] {
            Value::Cyclic(x) => x,
            _ => unreachable!("cyclic factor holds a cyclic value"),
        };
        if gc == 0 {
            return Err(GroupError::Domain(format!("coordinate {c} is not in the support")));
        }
        if !is_prime_modulus(n) || moduli.contains(&n) {
            return Err(GroupError::Unsupported(format!("modulus {n} at coordinate {c} is not a fresh prime")));
        }
        if t >= n {
            return Err(GroupError::Argument(format!("target {t} out of range for Z({n})")));
        }
        let m = BigInt::from(n);
        let inv = inverse_mod(&BigInt::from(gc), &m).expect("nonzero mod a prime");
        residues.push((BigInt::from(t) * inv).mod_floor(&m));
        moduli.push(n);
    }
    let mut z = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, &n) in residues.iter().zip(&moduli) {
        let m = BigInt::from(n);
        // z' = z + modulus·s with z' ≡ r (mod m)
        let inv = inverse_mod(&(&modulus % &m), &m).expect("distinct primes");
        let s = ((r - &z) * inv).mod_floor(&m);
        z += &modulus * s;
        modulus *= m;
    }
    Ok(z.to_biguint().expect("nonnegative"))
}

/// Convenience: the cyclic moduli of a product descriptor, if it has them.
pub fn cyclic_moduli(group: &GroupDescriptor) -> Option<Vec<u64>> {
    match group {
        GroupDescriptor::Product(Factors::Cyclic(m)) => Some(m.clone()),
        GroupDescriptor::Product(f) => (0..f.len())
            .map(|i| match f.factor(i).as_ref() {
                GroupDescriptor::Cyclic { n } => Some(*n),
                _ => None,
            })
            .collect(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn padic(n: i64, p: u64, depth: usize) -> PadicInt {
        PadicInt::from_i64(n, p, depth).unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&PadicInt::from_digits(3, vec![0, 0, 2, 1]).unwrap()), Valuation::Finite(2));
        assert_eq!(valuation(&PadicInt::zero(3, 5)), Valuation::Infinity);
        assert_eq!(valuation(&PadicInt::from_digits(3, vec![1, 2]).unwrap()), Valuation::Finite(0));
    }

    #[test]
    fn solver_examples() {
        assert_eq!(padic_approx_solve(&padic(6, 3, 5), &padic(3, 3, 5), 3).unwrap(), BigInt::from(2));
        assert_eq!(padic_approx_solve(&padic(7, 5, 4), &padic(1, 5, 4), 2).unwrap(), BigInt::from(7));
        assert_eq!(padic_approx_solve(&padic(12, 2, 6), &padic(12, 2, 6), 5).unwrap(), BigInt::from(1));
    }

    #[test]
    fn solver_errors() {
        let z = PadicInt::zero(3, 5);
        assert!(matches!(padic_approx_solve(&padic(1, 3, 5), &z, 2), Err(GroupError::Degenerate(_))));
        assert!(matches!(padic_approx_solve(&padic(1, 3, 5), &padic(3, 3, 5), 3), Err(GroupError::Domain(_))));
        assert!(matches!(padic_approx_solve(&padic(9, 3, 5), &padic(3, 3, 5), 1), Err(GroupError::Domain(_))));
        assert!(matches!(padic_approx_solve(&padic(9, 3, 5), &padic(3, 3, 5), 6), Err(GroupError::Domain(_))));
    }

    #[test]
    fn iterated_binary_digits() {
        let alphas: Vec<_> = [1, 2, 4, 8].iter().map(|&a| padic(a, 2, 4)).collect();
        let zs = iterated_approx(&padic(13, 2, 4), &alphas).unwrap();
        assert_eq!(zs, vec![1.into(), 0.into(), 1.into(), 1.into()]);
        let zs = iterated_approx(&PadicInt::zero(2, 4), &alphas).unwrap();
        assert!(zs.iter().all(Zero::is_zero));
        let bad: Vec<_> = [2, 1].iter().map(|&a| padic(a, 2, 4)).collect();
        assert!(matches!(iterated_approx(&padic(13, 2, 4), &bad), Err(GroupError::Domain(_))));
    }

    fn product35() -> GroupDescriptor {
        GroupDescriptor::Product(Factors::Cyclic(vec![3, 5]))
    }

    #[test]
    fn crt_examples() {
        let g = Value::Product(vec![Value::Cyclic(1), Value::Cyclic(1)]);
        assert_eq!(crt_multiple(&product35(), &g, &[0, 1], &[2, 3]).unwrap(), BigUint::from(8u8));
        assert_eq!(crt_multiple(&product35(), &g, &[0, 1], &[0, 0]).unwrap(), BigUint::zero());
        let g = Value::Product(vec![Value::Cyclic(2), Value::Cyclic(1)]);
        assert_eq!(crt_multiple(&product35(), &g, &[0, 1], &[1, 4]).unwrap(), BigUint::from(14u8));
    }

    #[test]
    fn crt_errors() {
        let g = Value::Product(vec![Value::Cyclic(0), Value::Cyclic(1)]);
        assert!(matches!(crt_multiple(&product35(), &g, &[0, 1], &[1, 1]), Err(GroupError::Domain(_))));
        let rep = GroupDescriptor::Product(Factors::Cyclic(vec![3, 3]));
        let g = Value::Product(vec![Value::Cyclic(1), Value::Cyclic(1)]);
        assert!(matches!(crt_multiple(&rep, &g, &[0, 1], &[1, 1]), Err(GroupError::Unsupported(_))));
    }

    proptest! {
        #[test]
        fn iterated_remainder_vanishes(eta in 0i64..100_000, shifts in proptest::collection::vec(1i64..50, 1..5)) {
            let p = 3u64;
            let depth = 12;
            let mut v = 0u32;
            let mut alphas = Vec::new();
            for s in shifts {
                if v as usize >= depth { break; }
                // unit times p^v
                let unit = if s % 3 == 0 { s + 1 } else { s };
                alphas.push(padic(unit * 3i64.pow(v), p, depth));
                v += 1 + (s as u32 % 2);
            }
            let eta = padic(eta, p, depth);
            let zs = iterated_approx(&eta, &alphas).unwrap();
            let mut x = PadicInt::zero(p, depth);
            for (z, a) in zs.iter().zip(&alphas) {
                x = x.add(&a.mul(&PadicInt::from_bigint(z, p, depth).unwrap()));
            }
            prop_assert!(eta.sub(&x).is_zero());
        }
    }
}
