use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A rational point of `ℝ/ℤ`, kept reduced in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirclePoint(BigRational);

impl CirclePoint {
    pub fn new(q: BigRational) -> Self {
        let floor = q.floor();
        CirclePoint(q - floor)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        CirclePoint(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn add(&self, other: &CirclePoint) -> CirclePoint {
        Self::new(&self.0 + &other.0)
    }

    pub fn neg(&self) -> CirclePoint {
        Self::new(-&self.0)
    }

    pub fn scale(&self, z: i64) -> CirclePoint {
        Self::new(&self.0 * BigInt::from(z))
    }

    /// Distance to the nearest integer, in `[0, 1/2]`.
    pub fn norm(&self) -> BigRational {
        let other = BigRational::one() - &self.0;
        if other < self.0 {
            other
        } else {
            self.0.clone()
        }
    }

    /// An exponent `z ∈ [0, q)` for which `z·x` lies nearest to `1/2`.
    pub fn extremal_exponent(&self) -> Option<BigInt> {
        let (p, q) = (self.0.numer(), self.0.denom());
        if p.is_zero() {
            return None;
        }
        let inv = p.extended_gcd(q).x.mod_floor(q);
        Some(((q / BigInt::from(2u8)) * inv).mod_floor(q))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverse_pair_sums_to_zero() {
        let a = CirclePoint::from_ratio(1, 3);
        let b = CirclePoint::from_ratio(2, 3);
        assert!(a.add(&b).is_zero());
        assert_eq!(CirclePoint::from_ratio(1, 4).neg(), CirclePoint::from_ratio(3, 4));
    }

    #[test]
    fn norm_is_arc_length() {
        assert_eq!(CirclePoint::from_ratio(3, 4).norm(), BigRational::new(1.into(), 4.into()));
        assert_eq!(CirclePoint::from_ratio(-7, 5), CirclePoint::from_ratio(3, 5));
    }

    #[test]
    fn extremal_exponent_of_dyadic() {
        // x = 1/2^5: the best exponent is 2^4, giving 1/2.
        let x = CirclePoint::from_ratio(1, 32);
        assert_eq!(x.extremal_exponent(), Some(BigInt::from(16)));
        let y = CirclePoint::from_ratio(2, 7);
        let z = y.extremal_exponent().unwrap();
        let z: i64 = z.try_into().unwrap();
        assert_eq!(y.scale(z), CirclePoint::from_ratio(3, 7));
    }

    proptest! {
        #[test]
        fn extremal_exponent_maximizes_norm(p in 1i64..500, q in 2i64..500) {
            let x = CirclePoint::from_ratio(p, q);
            if let Some(z) = x.extremal_exponent() {
                let z: i64 = z.try_into().unwrap();
                let best = x.scale(z).norm();
                let q = x.value().denom().clone();
                let q: i64 = q.try_into().unwrap();
                for w in 0..q {
                    prop_assert!(x.scale(w).norm() <= best);
                }
            }
        }
    }
}
