use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::{GroupError, Result};

/// A finitely supported bijection of `ℕ`.
///
/// Stored as the image list `σ(0), σ(1), …` up to the largest moved point;
/// everything beyond is fixed. Composition is `(στ)(x) = σ(τ(x))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation { images: Vec::new() }
    }

    fn trimmed(mut images: Vec<usize>) -> Self {
        while let Some(&last) = images.last() {
            if last + 1 == images.len() {
                images.pop();
            } else {
                break;
            }
        }
        Permutation { images }
    }

    /// Build from an explicit image list, which must be a bijection of `[0, len)`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = alloc::vec![false; images.len()];
        for &y in &images {
            if y >= images.len() || seen[y] {
                return Err(GroupError::InvalidParameter(format!("image list {images:?} is not a bijection")));
            }
            seen[y] = true;
        }
        Ok(Self::trimmed(images))
    }

    /// Build from `(x, σ(x))` pairs; unlisted points are fixed.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        let len = pairs.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        let mut images: Vec<Option<usize>> = alloc::vec![None; len];
        for &(x, y) in pairs {
            if images[x].is_some_and(|old| old != y) {
                return Err(GroupError::InvalidParameter(format!("point {x} mapped twice")));
            }
            images[x] = Some(y);
        }
        let full: Vec<usize> = images.iter().enumerate().map(|(i, y)| y.unwrap_or(i)).collect();
        Self::from_images(full)
    }

    pub fn transposition(a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..=a.max(b)).collect();
        images.swap(a, b);
        Self::trimmed(images)
    }

    /// The cycle `c[0] → c[1] → … → c[last] → c[0]`.
    pub fn cycle(points: &[usize]) -> Result<Self> {
        let pairs: Vec<(usize, usize)> =
            points.iter().enumerate().map(|(i, &x)| (x, points[(i + 1) % points.len()])).collect();
        Self::from_pairs(&pairs)
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images.get(x).copied().unwrap_or(x)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Moved points as `(x, σ(x))`, in increasing `x`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.images.iter().enumerate().filter(|(i, y)| *i != **y).map(|(i, &y)| (i, y)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.is_empty()
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        let len = self.images.len().max(other.images.len());
        Self::trimmed((0..len).map(|x| self.apply(other.apply(x))).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    pub fn least_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &y)| i != y)
    }

    /// Least `x` with `σ(x) ≠ τ(x)`.
    pub fn first_difference(&self, other: &Permutation) -> Option<usize> {
        let len = self.images.len().max(other.images.len());
        (0..len).find(|&x| self.apply(x) != other.apply(x))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (x, y)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}->{y}")?;
        }
        write!(f, "]")
    }
}
