//! Horizon-bounded convergence analyses.
//!
//! Every check reduces to a distance profile: for each index `l < H` the
//! largest distance `S(l)` to a later index, and its suffix maximum `D(n)`.
//! The verdict reads the profile against the tolerance:
//!
//! * `Holds` when `D(n) < tol` from some `n ≤ H/2` on (witness: that `n`);
//! * `Fails` when `D` stays `≥ tol` and does not decrease between `H/2` and
//!   `3H/4` (witness: the last violating pair);
//! * `Inconclusive` otherwise.

mod cauchy;
mod support;
mod weighted;

pub(crate) use weighted::trial_rng;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::concrete::PadicInt;
use crate::{Distance, GroupDescriptor, GroupError, Result, Status, Value, Verdict, Witness};

pub use cauchy::{check_cauchy_productive, check_left_cauchy, check_null_sequence, check_productive};
pub use support::{product_support_criterion, SupportReport};
pub use weighted::{
    abelian_fstar_equiv_test, bounded_subgroup_probe, check_f_cauchy_productive, check_f_productive,
    check_f_productive_set, check_weighted, BoundedProbe, EquivReport, FixedSampler, Flavor, IdentitySampler,
    MixedSampler, PermutationSampler, WeightSign,
};

/// Which uniformity the left-Cauchy test uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Uniformity {
    /// Compare `a_k⁻¹a_l` with the identity.
    #[default]
    Left,
    /// Compare both `a_k⁻¹a_l` and `a_k a_l⁻¹`.
    TwoSided,
}

/// How a weight bound follows a reordering `φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum WeightAlignment {
    /// Position `n` carries the bound `f(φ(n))` of the element placed there.
    #[default]
    Reindexed,
    /// Position `n` carries `f(n)` whatever element lands there.
    Positional,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub tolerance: BigRational,
    pub horizon: usize,
    pub trials: usize,
    pub seed: u64,
    /// Enumerate every weight function when there are at most this many.
    pub exhaustive_threshold: u64,
    /// Stand-in for `ω` when drawing weights.
    pub omega_cap: i64,
    pub uniformity: Uniformity,
    pub alignment: WeightAlignment,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            tolerance: BigRational::new(1.into(), 1024.into()),
            horizon: 64,
            trials: 20,
            seed: 0,
            exhaustive_threshold: 4096,
            omega_cap: 1000,
            uniformity: Uniformity::Left,
            alignment: WeightAlignment::Reindexed,
        }
    }
}

impl AnalysisConfig {
    pub fn new(tolerance: BigRational, horizon: usize) -> Self {
        AnalysisConfig { tolerance, horizon, ..Self::default() }
    }

    /// Tolerance `p^(-k)`.
    pub fn power_tolerance(p: u64, k: u32) -> BigRational {
        BigRational::new(1.into(), BigInt::from(p).pow(k))
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_omega_cap(mut self, cap: i64) -> Self {
        self.omega_cap = cap;
        self
    }

    pub fn with_uniformity(mut self, u: Uniformity) -> Self {
        self.uniformity = u;
        self
    }

    pub fn with_alignment(mut self, a: WeightAlignment) -> Self {
        self.alignment = a;
        self
    }

    pub fn with_exhaustive_threshold(mut self, t: u64) -> Self {
        self.exhaustive_threshold = t;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon < 2 {
            return Err(GroupError::InvalidParameter(format!("horizon {} must be at least 2", self.horizon)));
        }
        if !self.tolerance.is_positive() {
            return Err(GroupError::InvalidParameter("tolerance must be positive".into()));
        }
        if self.trials == 0 {
            return Err(GroupError::InvalidParameter("need at least one trial".into()));
        }
        if self.omega_cap < 0 {
            return Err(GroupError::InvalidParameter("omega cap must be nonnegative".into()));
        }
        Ok(())
    }
}

/// One profile row: the largest distance from `l` to a later index `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRow {
    pub index: usize,
    pub l: usize,
    pub m: usize,
    pub distance: Distance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Direct,
    Exhaustive { assignments: u64 },
    Randomized { trials: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductiveReport {
    pub verdict: Verdict,
    pub trace: Vec<TraceRow>,
    /// The largest row with `l ≥ H/2`.
    pub worst_segment: Option<TraceRow>,
    pub weights_used: Option<String>,
    pub reordering_used: Option<String>,
    /// Last partial product at the horizon.
    pub limit: Option<Value>,
    pub limit_exact: Option<Value>,
    pub mode: SearchMode,
    /// Trial that produced the reported verdict.
    pub worst_trial: Option<usize>,
    pub omega_cap: Option<i64>,
}

impl ProductiveReport {
    pub(crate) fn from_profile(profile: Profile, cfg: &AnalysisConfig) -> Self {
        let verdict = profile.verdict(cfg);
        let worst_segment = profile.worst_segment();
        ProductiveReport {
            verdict,
            trace: profile.rows,
            worst_segment,
            weights_used: None,
            reordering_used: None,
            limit: None,
            limit_exact: None,
            mode: SearchMode::Direct,
            worst_trial: None,
            omega_cap: None,
        }
    }

    pub fn status(&self) -> Status {
        self.verdict.status
    }
}

/// Distance profile over a finite horizon.
#[derive(Debug, Clone)]
pub(crate) struct Profile {
    rows: Vec<TraceRow>,
    horizon: usize,
}

impl Profile {
    /// Rows for every `l < H`, with `dist(l, m)` evaluated for `l < m ≤ H`.
    pub(crate) fn pairwise(horizon: usize, mut dist: impl FnMut(usize, usize) -> Result<Distance>) -> Result<Self> {
        let mut rows = Vec::with_capacity(horizon);
        for l in 0..horizon {
            let mut best = (l + 1, Distance::zero());
            let mut first = true;
            for m in l + 1..=horizon {
                let d = dist(l, m)?;
                if first || d > best.1 {
                    best = (m, d);
                    first = false;
                }
            }
            rows.push(TraceRow { index: l, l, m: best.0, distance: best.1 });
        }
        Ok(Profile { rows, horizon })
    }

    /// Pairwise profile built from segment products `b_{l+1} ⋯ b_m`.
    pub(crate) fn segments(g: &GroupDescriptor, terms: &[Value]) -> Result<Self> {
        let horizon = terms.len() - 1;
        let mut rows = Vec::with_capacity(horizon);
        for l in 0..horizon {
            let mut acc = g.identity();
            let mut best: Option<(usize, Distance)> = None;
            for (m, b) in terms.iter().enumerate().skip(l + 1) {
                acc = g.op(&acc, b)?;
                let d = g.norm(&acc)?;
                if best.as_ref().is_none_or(|(_, bd)| d > *bd) {
                    best = Some((m, d));
                }
            }
            let (m, distance) = best.expect("at least one m");
            rows.push(TraceRow { index: l, l, m, distance });
        }
        Ok(Profile { rows, horizon })
    }

    /// One row per index with the given distance (`l = m = n`).
    pub(crate) fn single(distances: Vec<Distance>) -> Self {
        let horizon = distances.len().saturating_sub(1);
        let rows = distances
            .into_iter()
            .enumerate()
            .map(|(n, distance)| TraceRow { index: n, l: n, m: n, distance })
            .collect();
        Profile { rows, horizon }
    }

    /// `D(n)` for `n = 0..=rows.len()`, the final entry zero.
    fn suffix_max(&self) -> Vec<Distance> {
        let mut out = alloc::vec![Distance::zero(); self.rows.len() + 1];
        for i in (0..self.rows.len()).rev() {
            out[i] =
                if self.rows[i].distance > out[i + 1] { self.rows[i].distance.clone() } else { out[i + 1].clone() };
        }
        out
    }

    pub(crate) fn verdict(&self, cfg: &AnalysisConfig) -> Verdict {
        let tol = &cfg.tolerance;
        let h = self.horizon;
        let d = self.suffix_max();
        let settle = d.iter().position(|x| x < tol).expect("D ends at zero");
        if settle <= h / 2 {
            return Verdict::holds(Some(Witness::Settle { index: settle }), h, tol.clone());
        }
        let last = self.rows.iter().rposition(|r| r.distance >= *tol).expect("some row violates");
        let row = &self.rows[last];
        let witness = Witness::Pair { l: row.l, m: row.m, distance: row.distance.clone() };
        let (half, three_q) = ((h / 2).min(self.rows.len()), ((3 * h) / 4).min(self.rows.len()));
        if d[three_q] >= *tol && d[three_q] == d[half] {
            Verdict::fails(witness, h, tol.clone())
        } else {
            Verdict::inconclusive(Some(witness), h, tol.clone())
        }
    }

    fn worst_segment(&self) -> Option<TraceRow> {
        let mut best: Option<&TraceRow> = None;
        for r in self.rows.iter().filter(|r| r.l >= self.horizon / 2) {
            if best.is_none_or(|b| r.distance > b.distance) {
                best = Some(r);
            }
        }
        best.cloned()
    }
}

/// Values re-encoded so that pairwise distances are cheap to evaluate.
///
/// Integers under `τ_p` become `p`-adic digit strings long enough to tell any
/// two of them apart; every other group is left as it is.
pub(crate) struct MetricView {
    group: GroupDescriptor,
    values: Vec<Value>,
}

impl MetricView {
    pub(crate) fn new(g: &GroupDescriptor, values: Vec<Value>) -> Result<Self> {
        if let GroupDescriptor::IntTauP { p } = g {
            let bits = values
                .iter()
                .map(|v| match v {
                    Value::Int(x) => x.bits(),
                    _ => 0,
                })
                .max()
                .unwrap_or(0) as usize;
            let log = (64 - p.leading_zeros() - 1) as usize;
            let depth = (bits + 2) / log.max(1) + 2;
            let view = GroupDescriptor::Padic { p: *p, depth };
            let values = values
                .iter()
                .map(|v| match v {
                    Value::Int(x) => PadicInt::from_bigint(x, *p, depth).map(Value::Padic),
                    other => Err(GroupError::DescriptorMismatch(format!("{other} is not an integer"))),
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(MetricView { group: view, values });
        }
        values.iter().try_for_each(|v| g.check(v))?;
        Ok(MetricView { group: g.clone(), values })
    }

    pub(crate) fn left(&self, l: usize, m: usize) -> Result<Distance> {
        self.group.distance(&self.values[l], &self.values[m])
    }

    pub(crate) fn two_sided(&self, l: usize, m: usize) -> Result<Distance> {
        self.group.two_sided_distance(&self.values[l], &self.values[m])
    }

    pub(crate) fn by(&self, u: Uniformity, l: usize, m: usize) -> Result<Distance> {
        match u {
            Uniformity::Left => self.left(l, m),
            Uniformity::TwoSided => self.two_sided(l, m),
        }
    }
}
