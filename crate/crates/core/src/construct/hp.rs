use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::Rng;

use super::families::{surjection, IndependentFamily};
use crate::analysis::trial_rng;
use crate::concrete::cantor_pair;
use crate::concrete::primes::odd_primes;
use crate::number_theory::crt_multiple;
use crate::{Factors, GroupDescriptor, GroupError, IntWeightSeq, Result, Status, Value, Verdict, Witness};

/// The coordinate window `[0, depth)²` of `K_P = Π ℤ(p_{i,j})`, with
/// `p_{i,j}` the `cantor(i, j)`-th odd prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KpWindow {
    depth: usize,
    primes: Vec<u64>,
    /// `f(i)` for every row.
    rows: Vec<(usize, usize)>,
    t: Vec<Vec<bool>>,
}

/// The set `E(k,l,m,n,q,r)` within a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ESet {
    pub cells: Vec<(usize, usize)>,
    /// `Holds` when nonempty; an empty window is only `Inconclusive`.
    pub status: Status,
}

/// How `support_overlap_check` found its witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapCase {
    /// Both weights are supported on the same single index.
    SingleIndex { q: usize },
    /// Distinct `q`, `r` with `z(q) ≠ 0 ≠ z'(r)`.
    TwoIndices { q: usize, r: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlap {
    pub verdict: Verdict,
    pub case: OverlapCase,
}

/// A multiple of a segment sum matching targets on finitely many cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityMatch {
    /// `g = a_l + ⋯ + a_{m-1}`.
    pub segment: (usize, usize),
    pub multiplier: BigUint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityReport {
    pub trials: usize,
    pub matched: usize,
}

impl KpWindow {
    pub fn new(depth: usize) -> Result<Self> {
        Self::with_family(depth, IndependentFamily::default())
    }

    pub fn with_family(depth: usize, kind: IndependentFamily) -> Result<Self> {
        if depth == 0 {
            return Err(GroupError::Argument("empty window".into()));
        }
        let all = odd_primes(cantor_pair(depth - 1, depth - 1) + 1);
        let mut primes = Vec::with_capacity(depth * depth);
        for i in 0..depth {
            for j in 0..depth {
                primes.push(all[cantor_pair(i, j)]);
            }
        }
        let rows: Vec<(usize, usize)> = (0..depth).map(surjection).collect();
        let max_n = rows.iter().map(|&(_, b)| b).max().unwrap_or(0);
        let t = (0..=max_n).map(|n| (0..depth).map(|j| kind.contains(n, j)).collect()).collect();
        Ok(KpWindow { depth, primes, rows, t })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn group(&self) -> GroupDescriptor {
        GroupDescriptor::Product(Factors::Cyclic(self.primes.clone()))
    }

    pub fn prime(&self, i: usize, j: usize) -> u64 {
        self.primes[self.coord(i, j)]
    }

    pub fn coord(&self, i: usize, j: usize) -> usize {
        i * self.depth + j
    }

    pub fn cell(&self, c: usize) -> (usize, usize) {
        (c / self.depth, c % self.depth)
    }

    /// One past the largest `n` whose support meets the window.
    pub fn active_terms(&self) -> usize {
        self.rows.iter().map(|&(_, b)| b + 1).max().unwrap_or(0)
    }

    /// `a_n(i, j)`: `0` off `S_n`, then `1` on `T_n` and `2` off it.
    pub fn a_entry(&self, n: usize, i: usize, j: usize) -> u64 {
        let (x, y) = self.rows[i];
        if n != x && n != y {
            0
        } else if self.t[n][j] {
            1
        } else {
            2
        }
    }

    pub fn a(&self, n: usize) -> Value {
        Value::Product(
            (0..self.depth * self.depth)
                .map(|c| {
                    let (i, j) = self.cell(c);
                    Value::Cyclic(self.a_entry(n, i, j))
                })
                .collect(),
        )
    }

    /// `E(k,l,m,n,q,r) = s(k a_q + l a_r) ∩ s(m a_q + n a_r) ∩ s(a_q) ∩ s(a_r)`.
    #[allow(clippy::too_many_arguments)]
    pub fn e_set(&self, k: i64, l: i64, m: i64, n: i64, q: usize, r: usize) -> Result<ESet> {
        if k == 0 || n == 0 {
            return Err(GroupError::Domain("E(k,l,m,n,q,r) needs k ≠ 0 ≠ n".into()));
        }
        if q == r {
            return Err(GroupError::Domain("E(k,l,m,n,q,r) needs q ≠ r".into()));
        }
        let mut cells = Vec::new();
        for i in 0..self.depth {
            for j in 0..self.depth {
                let (x, y) = (self.a_entry(q, i, j) as i64, self.a_entry(r, i, j) as i64);
                if x == 0 || y == 0 {
                    continue;
                }
                let p = self.prime(i, j) as i64;
                if (k * x + l * y).mod_floor(&p) != 0 && (m * x + n * y).mod_floor(&p) != 0 {
                    cells.push((i, j));
                }
            }
        }
        let status = if cells.is_empty() { Status::Inconclusive } else { Status::Holds };
        Ok(ESet { cells, status })
    }

    /// `g_z(i, j)`, using that at most the two indices in `f(i)` contribute.
    fn gz_entry(&self, z: &IntWeightSeq, terms: usize, i: usize, j: usize) -> u64 {
        let (x, y) = self.rows[i];
        let p = self.prime(i, j) as i128;
        let mut s: i128 = 0;
        for n in [x, y] {
            if n < terms {
                s += z.eval(n) as i128 * self.a_entry(n, i, j) as i128;
            }
        }
        s.mod_floor(&p) as u64
    }

    /// `Σ_{n < terms} z(n)·a_n` on the window.
    pub fn g_z(&self, z: &IntWeightSeq, terms: usize) -> Value {
        Value::Product(
            (0..self.depth * self.depth)
                .map(|c| {
                    let (i, j) = self.cell(c);
                    Value::Cyclic(self.gz_entry(z, terms, i, j))
                })
                .collect(),
        )
    }

    /// A common support cell of `g_z` and `g_{z'}`, located through the two
    /// cases of the argument and confirmed by direct evaluation.
    pub fn support_overlap_check(&self, z: &IntWeightSeq, zp: &IntWeightSeq, terms: usize) -> Result<Overlap> {
        let sz = z.support_below(terms);
        let szp = zp.support_below(terms);
        let gz = self.g_z(z, terms);
        let gzp = self.g_z(zp, terms);
        if sz.is_empty() || szp.is_empty() || gz.is_identity() || gzp.is_identity() {
            return Err(GroupError::Domain("overlap check needs g_z ≠ 0 ≠ g_z'".into()));
        }
        let tol = BigRational::zero();
        let h = self.depth;
        let (case, candidates) = if sz.len() == 1 && sz == szp {
            let q = sz[0];
            let cells: Vec<(usize, usize)> =
                (0..h).flat_map(|i| (0..h).map(move |j| (i, j))).filter(|&(i, j)| self.a_entry(q, i, j) != 0).collect();
            (OverlapCase::SingleIndex { q }, cells)
        } else {
            let (q, r) = sz
                .iter()
                .find_map(|&q| szp.iter().find(|&&r| r != q).map(|&r| (q, r)))
                .expect("supports other than a common singleton offer q ≠ r");
            let e = self.e_set(z.eval(q), z.eval(r), zp.eval(q), zp.eval(r), q, r)?;
            (OverlapCase::TwoIndices { q, r }, e.cells)
        };
        let both = |&(i, j): &(usize, usize)| self.gz_entry(z, terms, i, j) != 0 && self.gz_entry(zp, terms, i, j) != 0;
        let verdict = match candidates.iter().find(|c| both(c)) {
            Some(&(row, col)) => Verdict::holds(Some(Witness::Cell { row, col }), h, tol),
            None if candidates.is_empty() => Verdict::inconclusive(None, h, tol),
            None => {
                let (row, col) = candidates[0];
                Verdict::fails(Witness::Cell { row, col }, h, tol)
            }
        };
        Ok(Overlap { verdict, case })
    }

    /// `Holds` (the product embeds) iff `s(g) ∩ s(g')` is empty in the window.
    pub fn split_test(&self, g: &Value, gp: &Value) -> Result<Verdict> {
        let grp = self.group();
        grp.check(g)?;
        grp.check(gp)?;
        if g.is_identity() || gp.is_identity() {
            return Err(GroupError::Domain("split test needs nonzero elements".into()));
        }
        let (a, b) = (g.as_product().expect("checked"), gp.as_product().expect("checked"));
        let tol = BigRational::zero();
        Ok(match (0..a.len()).find(|&c| !a[c].is_identity() && !b[c].is_identity()) {
            Some(c) => {
                let (row, col) = self.cell(c);
                Verdict::fails(Witness::Cell { row, col }, self.depth, tol)
            }
            None => Verdict::holds(None, self.depth, tol),
        })
    }

    /// Finds `c·(a_l + ⋯ + a_{m-1})` equal to `targets` on `cells`.
    pub fn match_targets(&self, cells: &[(usize, usize)], targets: &[u64]) -> Result<DensityMatch> {
        let grp = self.group();
        let coords: Vec<usize> = cells.iter().map(|&(i, j)| self.coord(i, j)).collect();
        let top = self.active_terms();
        for l in 0..top {
            for m in l + 1..=top {
                let seg = IntWeightSeq::finite((0..m).map(|n| i64::from(n >= l)).collect());
                if cells.iter().any(|&(i, j)| self.gz_entry(&seg, m, i, j) == 0) {
                    continue;
                }
                let g = self.g_z(&seg, m);
                let c = crt_multiple(&grp, &g, &coords, targets)?;
                for (&(i, j), &t) in cells.iter().zip(targets) {
                    let p = self.prime(i, j);
                    let got = (&c % p).to_u64().expect("below p") * self.gz_entry(&seg, m, i, j) % p;
                    if got != t {
                        return Err(GroupError::Domain(format!("CRT multiple misses cell ({i}, {j})")));
                    }
                }
                return Ok(DensityMatch { segment: (l, m), multiplier: c });
            }
        }
        Err(GroupError::DepthExhausted("no segment sum is nonzero on every cell".into()))
    }

    /// Random targets on random sets of at most `max_cells` cells, each
    /// matched by a multiple of a segment sum.
    pub fn density_probe(&self, trials: usize, max_cells: usize, seed: u64) -> Result<DensityReport> {
        let area = self.depth * self.depth;
        let mut matched = 0;
        for t in 0..trials {
            let mut rng = trial_rng(seed, t);
            let size = rng.gen_range(1..=max_cells.clamp(1, area));
            let cells: Vec<(usize, usize)> = sample(&mut rng, area, size).iter().map(|c| self.cell(c)).collect();
            let targets: Vec<u64> = cells.iter().map(|&(i, j)| rng.gen_range(0..self.prime(i, j))).collect();
            if self.match_targets(&cells, &targets).is_ok() {
                matched += 1;
            }
        }
        Ok(DensityReport { trials, matched })
    }
}

pub fn build_a_n(n: usize, depth: usize) -> Result<Value> {
    Ok(KpWindow::new(depth)?.a(n))
}

#[allow(clippy::too_many_arguments)]
pub fn e_set(k: i64, l: i64, m: i64, n: i64, q: usize, r: usize, depth: usize) -> Result<ESet> {
    KpWindow::new(depth)?.e_set(k, l, m, n, q, r)
}

pub fn g_z(z: &IntWeightSeq, depth: usize, terms: usize) -> Result<Value> {
    Ok(KpWindow::new(depth)?.g_z(z, terms))
}

pub fn support_overlap_check(z: &IntWeightSeq, zp: &IntWeightSeq, depth: usize, terms: usize) -> Result<Overlap> {
    KpWindow::new(depth)?.support_overlap_check(z, zp, terms)
}

pub fn split_test(g: &Value, gp: &Value, depth: usize) -> Result<Verdict> {
    KpWindow::new(depth)?.split_test(g, gp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concrete::support;
    use crate::construct::families::in_s;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn a_n_follows_the_three_cases() {
        let w = KpWindow::new(16).unwrap();
        let kind = IndependentFamily::default();
        for n in 0..6 {
            let a = w.a(n);
            for c in support(&a).unwrap() {
                let (i, _) = w.cell(c);
                assert!(in_s(n, i));
            }
            for i in 0..16 {
                for j in 0..16 {
                    let e = w.a_entry(n, i, j);
                    let want = if !in_s(n, i) {
                        0
                    } else if kind.contains(n, j) {
                        1
                    } else {
                        2
                    };
                    assert_eq!(e, want);
                }
            }
        }
        assert_eq!(w.prime(0, 0), 3);
        assert_eq!(w.prime(0, 1), 7);
    }

    #[test]
    fn g_z_agrees_with_group_sums() {
        let w = KpWindow::new(12).unwrap();
        let g = w.group();
        let z = IntWeightSeq::finite(vec![3, -1, 0, 7, 2]);
        let direct = g.product_of(&(0..5).map(|n| g.pow(&w.a(n), z.eval(n)).unwrap()).collect::<Vec<_>>()).unwrap();
        assert_eq!(w.g_z(&z, 5), direct);
        assert_eq!(w.g_z(&z, 40), direct);
        assert_eq!(w.g_z(&IntWeightSeq::finite(vec![1]), 9), w.a(0));
        assert!(w.g_z(&IntWeightSeq::zero(), 9).is_identity());
    }

    #[test]
    fn e_sets_and_overlaps() {
        let w = KpWindow::new(64).unwrap();
        let e = w.e_set(1, 1, 1, -1, 0, 1).unwrap();
        assert_eq!(e.status, Status::Holds);
        assert!(matches!(w.e_set(0, 1, 1, 1, 0, 1), Err(GroupError::Domain(_))));
        let tiny = KpWindow::new(1).unwrap();
        assert_eq!(tiny.e_set(1, 0, 0, 1, 3, 4).unwrap().status, Status::Inconclusive);
        let z = IntWeightSeq::finite(vec![0, 0, 4]);
        let o = w.support_overlap_check(&z, &IntWeightSeq::finite(vec![0, 0, -9]), 20).unwrap();
        assert!(o.verdict.is_holds());
        assert_eq!(o.case, OverlapCase::SingleIndex { q: 2 });
        let o = w.support_overlap_check(&IntWeightSeq::finite(vec![1]), &IntWeightSeq::finite(vec![0, 1]), 20).unwrap();
        assert!(o.verdict.is_holds());
        assert_eq!(o.case, OverlapCase::TwoIndices { q: 0, r: 1 });
    }

    #[test]
    fn split_of_disjoint_rows() {
        let w = KpWindow::new(8).unwrap();
        let a0 = w.a(0);
        let part = |parity: usize| {
            Value::Product(
                a0.as_product()
                    .unwrap()
                    .iter()
                    .enumerate()
                    .map(|(c, v)| if w.cell(c).0 % 2 == parity { v.clone() } else { Value::Cyclic(0) })
                    .collect(),
            )
        };
        assert!(w.split_test(&part(0), &part(1)).unwrap().is_holds());
        assert!(w.split_test(&a0, &a0).unwrap().is_fails());
    }

    #[test]
    fn density_on_a_small_window() {
        let w = KpWindow::new(16).unwrap();
        let r = w.density_probe(30, 5, 11).unwrap();
        assert_eq!(r.matched, 30);
    }

    proptest! {
        #[test]
        fn g_z_is_stable_past_the_support(z in proptest::collection::vec(-20i64..20, 1..8), extra in 0usize..30) {
            let w = KpWindow::new(10).unwrap();
            let z = IntWeightSeq::finite(z);
            prop_assert_eq!(w.g_z(&z, 8), w.g_z(&z, 8 + extra));
        }
    }
}
