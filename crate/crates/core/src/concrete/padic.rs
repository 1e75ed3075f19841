use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};

use super::primes::is_prime;
use crate::{GroupError, Result};

/// `v_p(x)`: a finite exponent, or `∞` for zero at the stored depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(usize),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<usize> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

/// A p-adic integer known modulo `p^depth`, stored as base-`p` digits
/// (least significant first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PadicInt {
    p: u64,
    digits: Vec<u32>,
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if p > u32::MAX as u64 || !is_prime(p) {
        return Err(GroupError::InvalidParameter(format!("{p} is not a supported prime")));
    }
    Ok(())
}

impl PadicInt {
    pub fn zero(p: u64, depth: usize) -> Self {
        PadicInt { p, digits: vec![0; depth] }
    }

    pub fn one(p: u64, depth: usize) -> Self {
        let mut z = Self::zero(p, depth);
        if depth > 0 {
            z.digits[0] = 1;
        }
        z
    }

    /// Build from digits, validating the prime and every digit.
    pub fn from_digits(p: u64, digits: Vec<u32>) -> Result<Self> {
        check_prime(p)?;
        if let Some(d) = digits.iter().find(|&&d| d as u64 >= p) {
            return Err(GroupError::InvalidParameter(format!("digit {d} out of range for p = {p}")));
        }
        Ok(PadicInt { p, digits })
    }

    /// The residue of `n` modulo `p^depth` as a p-adic integer.
    pub fn from_bigint(n: &BigInt, p: u64, depth: usize) -> Result<Self> {
        check_prime(p)?;
        let modulus = BigInt::from(p).pow(depth as u32);
        let mut r = n % &modulus;
        if r.sign() == Sign::Minus {
            r += &modulus;
        }
        let mut digits = vec![0u32; depth];
        let pb = BigInt::from(p);
        for d in digits.iter_mut() {
            if r.is_zero() {
                break;
            }
            let q = &r / &pb;
            *d = (&r - &q * &pb).to_u32().unwrap_or(0);
            r = q;
        }
        Ok(PadicInt { p, digits })
    }

    pub fn from_i64(n: i64, p: u64, depth: usize) -> Result<Self> {
        Self::from_bigint(&BigInt::from(n), p, depth)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn depth(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    /// Index of the first non-zero digit.
    pub fn valuation(&self) -> Valuation {
        match self.digits.iter().position(|&d| d != 0) {
            Some(i) => Valuation::Finite(i),
            None => Valuation::Infinity,
        }
    }

    /// `v_p(self - other)`, which is the first index where the digits differ.
    pub fn valuation_of_difference(&self, other: &PadicInt) -> Valuation {
        match self.digits.iter().zip(&other.digits).position(|(a, b)| a != b) {
            Some(i) => Valuation::Finite(i),
            None => Valuation::Infinity,
        }
    }

    pub fn compatible(&self, other: &PadicInt) -> bool {
        self.p == other.p && self.depth() == other.depth()
    }

    pub fn add(&self, other: &PadicInt) -> PadicInt {
        debug_assert!(self.compatible(other));
        let mut carry = 0u64;
        let digits = self
            .digits
            .iter()
            .zip(&other.digits)
            .map(|(&a, &b)| {
                let s = a as u64 + b as u64 + carry;
                carry = s / self.p;
                (s % self.p) as u32
            })
            .collect();
        PadicInt { p: self.p, digits }
    }

    pub fn neg(&self) -> PadicInt {
        // p^D - x: complement every digit against p-1, then add one.
        let mut digits: Vec<u32> = self.digits.iter().map(|&d| (self.p - 1) as u32 - d).collect();
        for d in digits.iter_mut() {
            if (*d as u64) + 1 == self.p {
                *d = 0;
            } else {
                *d += 1;
                break;
            }
        }
        PadicInt { p: self.p, digits }
    }

    pub fn sub(&self, other: &PadicInt) -> PadicInt {
        self.add(&other.neg())
    }

    /// `z · self` for a machine integer `z`.
    pub fn mul_int(&self, z: i64) -> PadicInt {
        let k = z.unsigned_abs() as u128;
        let p = self.p as u128;
        let mut carry = 0u128;
        let digits = self
            .digits
            .iter()
            .map(|&d| {
                let s = d as u128 * k + carry;
                carry = s / p;
                (s % p) as u32
            })
            .collect();
        let r = PadicInt { p: self.p, digits };
        if z < 0 {
            r.neg()
        } else {
            r
        }
    }

    /// Ring product, truncated to the common depth.
    pub fn mul(&self, other: &PadicInt) -> PadicInt {
        let m = BigUint::from(self.p).pow(self.depth() as u32);
        let r = (self.to_residue() * other.to_residue()) % m;
        Self::from_bigint(&BigInt::from(r), self.p, self.depth()).expect("prime already validated")
    }

    /// The residue in `[0, p^depth)`.
    pub fn to_residue(&self) -> BigUint {
        let pb = BigUint::from(self.p);
        self.digits.iter().rev().fold(BigUint::zero(), |acc, &d| acc * &pb + BigUint::from(d))
    }

    /// `self / p^t` known modulo `p^(depth - t)`; requires `v_p(self) ≥ t`.
    pub fn shift_down(&self, t: usize) -> PadicInt {
        PadicInt { p: self.p, digits: self.digits[t.min(self.depth())..].to_vec() }
    }

    /// Keep the first `depth` digits.
    pub fn truncate(&self, depth: usize) -> PadicInt {
        PadicInt { p: self.p, digits: self.digits[..depth.min(self.depth())].to_vec() }
    }
}

/// `n ↦ n mod p^depth` as a p-adic integer; non-prime `p` is rejected.
pub fn int_to_padic(n: &BigInt, p: u64, depth: usize) -> Result<PadicInt> {
    PadicInt::from_bigint(n, p, depth)
}

/// The residue of `x` in `[0, p^depth)`.
pub fn padic_to_residue(x: &PadicInt) -> BigUint {
    x.to_residue()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn digits_of_small_integers() {
        assert_eq!(PadicInt::from_i64(10, 3, 3).unwrap().digits(), &[1, 0, 1]);
        assert_eq!(PadicInt::from_i64(0, 7, 4).unwrap().digits(), &[0, 0, 0, 0]);
        assert_eq!(PadicInt::from_i64(-1, 2, 4).unwrap().digits(), &[1, 1, 1, 1]);
    }

    #[test]
    fn non_prime_rejected() {
        assert!(matches!(PadicInt::from_i64(1, 4, 3), Err(GroupError::InvalidParameter(_))));
        assert!(PadicInt::from_digits(3, vec![3]).is_err());
    }

    #[test]
    fn wraparound_addition() {
        // 80 + 1 ≡ 0 mod 81
        let a = PadicInt::from_digits(3, vec![2, 2, 2, 2]).unwrap();
        let b = PadicInt::from_digits(3, vec![1, 0, 0, 0]).unwrap();
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn negation_of_one_base_five() {
        let one = PadicInt::from_digits(5, vec![1, 0, 0]).unwrap();
        assert_eq!(one.neg().digits(), &[4, 4, 4]);
    }

    #[test]
    fn valuation_reads_first_nonzero_digit() {
        let x = PadicInt::from_digits(3, vec![0, 0, 2, 1]).unwrap();
        assert_eq!(x.valuation(), Valuation::Finite(2));
        assert_eq!(PadicInt::zero(3, 5).valuation(), Valuation::Infinity);
    }

    proptest! {
        #[test]
        fn arithmetic_matches_residues(a in -100_000i64..100_000, b in -100_000i64..100_000, z in -1000i64..1000, pi in 0usize..3, depth in 1usize..12) {
            let p = [2u64, 3, 5][pi];
            let m = BigInt::from(p).pow(depth as u32);
            let norm = |v: BigInt| { let r = v % &m; if r.sign() == Sign::Minus { r + &m } else { r } };
            let x = PadicInt::from_i64(a, p, depth).unwrap();
            let y = PadicInt::from_i64(b, p, depth).unwrap();
            prop_assert_eq!(BigInt::from(x.add(&y).to_residue()), norm(BigInt::from(a) + b));
            prop_assert_eq!(BigInt::from(x.sub(&y).to_residue()), norm(BigInt::from(a) - b));
            prop_assert_eq!(BigInt::from(x.mul_int(z).to_residue()), norm(BigInt::from(a) * z));
            prop_assert_eq!(BigInt::from(x.mul(&y).to_residue()), norm(BigInt::from(a) * b));
            prop_assert_eq!(BigInt::from(x.to_residue()), norm(BigInt::from(a)));
        }

        #[test]
        fn difference_valuation_is_digit_agreement(a in 0i64..1_000_000, b in 0i64..1_000_000) {
            let x = PadicInt::from_i64(a, 3, 14).unwrap();
            let y = PadicInt::from_i64(b, 3, 14).unwrap();
            prop_assert_eq!(x.valuation_of_difference(&y), x.sub(&y).valuation());
        }
    }
}
