use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::concrete::primes::nth_prime;

/// Colex rank of the pair `{a, b}`, `a < b`.
pub fn pair_rank(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    b * (b - 1) / 2 + a
}

pub fn pair_unrank(r: usize) -> (usize, usize) {
    let mut b = num_integer::Roots::sqrt(&(2 * r)) + 1;
    while b * (b - 1) / 2 > r {
        b -= 1;
    }
    while (b + 1) * b / 2 <= r {
        b += 1;
    }
    (r - b * (b - 1) / 2, b)
}

/// The surjection `ℕ → [ℕ]²`: writing `k + 1 = 4^e·m` with `4 ∤ m`, `k` is
/// sent to the pair of rank `m - ⌊m/4⌋ - 1`, once for every `e`.
pub fn surjection(k: usize) -> (usize, usize) {
    let mut m = k + 1;
    while m.is_multiple_of(4) {
        m /= 4;
    }
    pair_unrank(m - m / 4 - 1)
}

/// The least `k` with `f(k) = {a, b}`.
pub fn first_preimage(a: usize, b: usize) -> usize {
    let t = pair_rank(a, b) + 1;
    t + (t - 1) / 3 - 1
}

/// `k ∈ S_n` iff `n ∈ f(k)`.
pub fn in_s(n: usize, k: usize) -> bool {
    let (a, b) = surjection(k);
    a == n || b == n
}

/// Concrete countable independent families on `ℕ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum IndependentFamily {
    /// `T_n = {j : bit n of j is 1}`.
    BinaryDigits,
    /// `T_n = {j : 2·(j mod q_n) < q_n}` with `q_n` the `n`-th prime.
    #[default]
    PrimeResidues,
}

impl IndependentFamily {
    pub fn contains(self, n: usize, j: usize) -> bool {
        match self {
            IndependentFamily::BinaryDigits => n < usize::BITS as usize && (j >> n) & 1 == 1,
            IndependentFamily::PrimeResidues => {
                let q = nth_prime(n) as usize;
                2 * (j % q) < q
            }
        }
    }

    /// Like [`contains`](Self::contains) with the moduli precomputed.
    fn window(self, n: usize, window: usize) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(window);
        match self {
            IndependentFamily::BinaryDigits => (0..window).filter(|&j| self.contains(n, j)).for_each(|j| b.insert(j)),
            IndependentFamily::PrimeResidues => {
                let q = nth_prime(n) as usize;
                (0..window).filter(|&j| 2 * (j % q) < q).for_each(|j| b.insert(j));
            }
        }
        b
    }
}

/// `S_0, …, S_{count-1}` restricted to `[0, window)`.
pub fn family_s(count: usize, window: usize) -> Vec<FixedBitSet> {
    let mut sets: Vec<FixedBitSet> = (0..count).map(|_| FixedBitSet::with_capacity(window)).collect();
    for k in 0..window {
        let (a, b) = surjection(k);
        for n in [a, b] {
            if n < count {
                sets[n].insert(k);
            }
        }
    }
    sets
}

pub fn family_t(kind: IndependentFamily, count: usize, window: usize) -> Vec<FixedBitSet> {
    (0..count).map(|n| kind.window(n, window)).collect()
}

/// Windows of the two families used for `K_P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPair {
    pub s: Vec<FixedBitSet>,
    pub t: Vec<FixedBitSet>,
    pub kind: IndependentFamily,
}

impl FamilyPair {
    pub fn new(count: usize, window: usize, kind: IndependentFamily) -> Self {
        FamilyPair { s: family_s(count, window), t: family_t(kind, count, window), kind }
    }
}

/// Some `k` in the window with `f(k) = {a, b}`, found by scanning.
pub fn linked_witness(sets: &[FixedBitSet], a: usize, b: usize) -> Option<usize> {
    sets[a].intersection(&sets[b]).next()
}

/// A common point of three pairwise distinct members, if any.
pub fn triple_violation(sets: &[FixedBitSet]) -> Option<(usize, usize, usize, usize)> {
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            let ab: FixedBitSet = sets[a].intersection(&sets[b]).collect();
            for (c, sc) in sets.iter().enumerate().skip(b + 1) {
                if let Some(k) = ab.intersection(sc).next() {
                    return Some((a, b, c, k));
                }
            }
        }
    }
    None
}

/// `⋂ T_i ∩ ⋂ (ℕ∖T'_j)` within the window.
pub fn boolean_combination(sets: &[FixedBitSet], pos: &[usize], neg: &[usize], window: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(window);
    out.insert_range(..);
    for &i in pos {
        out.intersect_with(&sets[i]);
    }
    for &j in neg {
        out.difference_with(&sets[j]);
    }
    out
}
