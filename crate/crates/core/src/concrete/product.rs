use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::{GroupError, Result, Value};

/// Coordinates of `g` that are not the identity of their factor.
pub fn support(g: &Value) -> Result<Vec<usize>> {
    match g {
        Value::Product(coords) => {
            Ok(coords.iter().enumerate().filter(|(_, c)| !c.is_identity()).map(|(i, _)| i).collect())
        }
        other => Err(GroupError::DescriptorMismatch(alloc::format!("support of non-product value {other}"))),
    }
}

/// Cantor pairing `ℕ² → ℕ`.
pub fn cantor_pair(i: usize, j: usize) -> usize {
    (i + j) * (i + j + 1) / 2 + j
}

pub fn cantor_unpair(k: usize) -> (usize, usize) {
    let mut w = num_integer::Roots::sqrt(&(2 * k));
    while w * (w + 1) / 2 > k {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= k {
        w += 1;
    }
    let j = k - w * (w + 1) / 2;
    (w - j, j)
}

/// The integer `n` as an element of `(ℤ, τ_p)`.
pub fn embed_int_tau_p(n: &BigInt) -> Value {
    Value::Int(n.clone())
}
