use alloc::format;
use alloc::vec::Vec;

use crate::{GroupError, Result};

/// A depth-`D` truncation of an element of `{g ∈ ℤ^ℕ : ∃k |g| ≤ k}`.
///
/// `bound` witnesses membership. Values built here keep it tight, equal to
/// `max |entry|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundedSeq {
    entries: Vec<i64>,
    bound: u64,
}

fn overflow() -> GroupError {
    GroupError::Unsupported("bounded sequence entry overflows i64".into())
}

impl BoundedSeq {
    pub fn new(entries: Vec<i64>) -> Self {
        let bound = entries.iter().map(|e| e.unsigned_abs()).max().unwrap_or(0);
        BoundedSeq { entries, bound }
    }

    /// Attach a declared witness, which must dominate every entry.
    pub fn with_bound(entries: Vec<i64>, bound: u64) -> Result<Self> {
        if let Some(e) = entries.iter().find(|e| e.unsigned_abs() > bound) {
            return Err(GroupError::InvalidParameter(format!("entry {e} exceeds bound {bound}")));
        }
        Ok(BoundedSeq { entries, bound })
    }

    pub fn zero(depth: usize) -> Self {
        BoundedSeq { entries: alloc::vec![0; depth], bound: 0 }
    }

    /// The indicator `e_n` of coordinate `n`.
    pub fn unit(n: usize, depth: usize) -> Self {
        let mut s = Self::zero(depth);
        if n < depth {
            s.entries[n] = 1;
            s.bound = 1;
        }
        s
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn depth(&self) -> usize {
        self.entries.len()
    }

    pub fn add(&self, other: &BoundedSeq) -> Result<BoundedSeq> {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(*b).ok_or_else(overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(entries))
    }

    pub fn neg(&self) -> BoundedSeq {
        BoundedSeq { entries: self.entries.iter().map(|a| -a).collect(), bound: self.bound }
    }

    pub fn scale(&self, z: i64) -> Result<BoundedSeq> {
        let entries = self.entries.iter().map(|a| a.checked_mul(z).ok_or_else(overflow)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(entries))
    }

    pub fn first_difference(&self, other: &BoundedSeq) -> Option<usize> {
        self.entries.iter().zip(&other.entries).position(|(a, b)| a != b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unit_vector_has_witness_one() {
        let e = BoundedSeq::unit(2, 5);
        assert_eq!(e.entries(), &[0, 0, 1, 0, 0]);
        assert_eq!(e.bound(), 1);
        assert!(BoundedSeq::with_bound(alloc::vec![3, -4], 3).is_err());
    }

    proptest! {
        #[test]
        fn witness_is_subadditive(a in proptest::collection::vec(-1000i64..1000, 8), b in proptest::collection::vec(-1000i64..1000, 8)) {
            let x = BoundedSeq::new(a);
            let y = BoundedSeq::new(b);
            let s = x.add(&y).unwrap();
            prop_assert!(s.bound() <= x.bound() + y.bound());
        }
    }
}
