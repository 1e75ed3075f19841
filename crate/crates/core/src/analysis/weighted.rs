use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AnalysisConfig, MetricView, ProductiveReport, Profile, SearchMode, WeightAlignment};
use crate::concrete::Permutation;
use crate::group::partial_products_of;
use crate::sequences::UnitVectors;
use crate::{
    weights::decompose_weights, BoundFunction, ExtNat, GroupDescriptor, GroupError, IntWeightSeq, Result, Sequence,
    Status, Value, Verdict, Witness,
};

/// Convergence of the partial products or only the Cauchy property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `f`-Cauchy productive: left-Cauchy partial products (per config uniformity).
    Cauchy,
    /// `f`-productive: two-sided convergence with a limit approximant.
    Plain,
}

/// Signed weights `|z| ≤ f`, or the `f★` variant `0 ≤ z ≤ f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum WeightSign {
    #[default]
    Signed,
    Star,
}

pub(crate) fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Source of finitary bijections of `ℕ` for the reordering tests.
pub trait PermutationSampler {
    fn sample(&self, trial: usize, horizon: usize, rng: &mut ChaCha8Rng) -> Permutation;
    fn describe(&self) -> String;
}

/// Uniform shuffles of the first half, block reversals and riffles, in turn.
#[derive(Debug, Clone, Copy, Default)]
pub struct MixedSampler;

impl PermutationSampler for MixedSampler {
    fn sample(&self, trial: usize, horizon: usize, rng: &mut ChaCha8Rng) -> Permutation {
        let n = horizon + 1;
        let max_block = (n / 8).max(2);
        let mut images: Vec<usize> = (0..n).collect();
        match trial % 3 {
            0 => images[..(n / 2).max(2).min(n)].shuffle(rng),
            1 => {
                let b = rng.gen_range(2..=max_block);
                for chunk in images.chunks_exact_mut(b) {
                    chunk.reverse();
                }
            }
            _ => {
                let b = rng.gen_range(1..=max_block);
                for chunk in images.chunks_exact_mut(2 * b) {
                    let (lo, hi) = chunk.split_at(b);
                    let mixed: Vec<usize> = lo.iter().zip(hi).flat_map(|(&x, &y)| [x, y]).collect();
                    chunk.copy_from_slice(&mixed);
                }
            }
        }
        Permutation::from_images(images).expect("rearranged identity is a bijection")
    }

    fn describe(&self) -> String {
        "shuffle / block-reversal / riffle".into()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IdentitySampler;

impl PermutationSampler for IdentitySampler {
    fn sample(&self, _trial: usize, _horizon: usize, _rng: &mut ChaCha8Rng) -> Permutation {
        Permutation::identity()
    }

    fn describe(&self) -> String {
        "identity".into()
    }
}

/// Cycles through a fixed list of bijections.
#[derive(Debug, Clone)]
pub struct FixedSampler(pub Vec<Permutation>);

impl PermutationSampler for FixedSampler {
    fn sample(&self, trial: usize, _horizon: usize, _rng: &mut ChaCha8Rng) -> Permutation {
        self.0.get(trial % self.0.len().max(1)).cloned().unwrap_or_default()
    }

    fn describe(&self) -> String {
        format!("{} fixed bijections", self.0.len())
    }
}

fn cap_bound(v: ExtNat, cap: i64) -> i64 {
    match v {
        ExtNat::Omega => cap,
        ExtNat::Fin(b) => b.min(i64::MAX as u64) as i64,
    }
}

fn uniform(bound: i64, sign: WeightSign, rng: &mut ChaCha8Rng) -> i64 {
    match sign {
        WeightSign::Signed => rng.gen_range(-bound..=bound),
        WeightSign::Star => rng.gen_range(0..=bound),
    }
}

/// The admissible exponent making `a^z` farthest from `e` among a few
/// candidates: extremal powers, `±bound`, `±1`, and optionally a random one.
fn adversarial(
    g: &GroupDescriptor,
    a: &Value,
    bound: i64,
    sign: WeightSign,
    rng: Option<&mut ChaCha8Rng>,
) -> Result<i64> {
    let mut cands: Vec<i64> = Vec::new();
    for e in g.extremal_exponents(a) {
        if let Ok(e) = i64::try_from(&e) {
            cands.extend([e, -e]);
        }
    }
    cands.extend([1, -1, bound, -bound]);
    if let Some(rng) = rng {
        cands.push(uniform(bound, sign, rng));
    }
    let mut best = (0i64, None::<BigRational>);
    for z in cands {
        if z.unsigned_abs() > bound as u64 || (sign == WeightSign::Star && z < 0) {
            continue;
        }
        let d = g.norm(&g.pow(a, z)?)?;
        if best.1.as_ref().is_none_or(|b| d > *b) {
            best = (z, Some(d));
        }
    }
    Ok(best.0)
}

fn draw_weights(
    trial: usize,
    g: &GroupDescriptor,
    terms: &[Value],
    bounds: &[i64],
    sign: WeightSign,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<i64>> {
    terms
        .iter()
        .zip(bounds)
        .map(|(a, &b)| {
            if trial == 0 {
                adversarial(g, a, b, sign, None)
            } else if trial % 2 == 1 {
                Ok(uniform(b, sign, rng))
            } else if rng.gen_bool(0.5) {
                adversarial(g, a, b, sign, Some(rng))
            } else {
                Ok(uniform(b, sign, rng))
            }
        })
        .collect()
}

fn describe_weights(z: &[i64]) -> String {
    format!("z = {z:?}")
}

/// Run one weight assignment through the chosen analysis.
fn evaluate(
    g: &GroupDescriptor,
    terms: &[Value],
    z: &[i64],
    flavor: Flavor,
    cfg: &AnalysisConfig,
) -> Result<ProductiveReport> {
    let powered = terms.iter().zip(z).map(|(a, &k)| g.pow(a, k)).collect::<Result<Vec<_>>>()?;
    let partials = partial_products_of(g, &powered)?;
    let limit = partials.last().cloned();
    let view = MetricView::new(g, partials)?;
    let profile = match flavor {
        Flavor::Cauchy => Profile::pairwise(cfg.horizon, |l, m| view.by(cfg.uniformity, l, m))?,
        Flavor::Plain => Profile::pairwise(cfg.horizon, |l, m| view.two_sided(l, m))?,
    };
    let mut report = ProductiveReport::from_profile(profile, cfg);
    report.limit = limit;
    report.weights_used = Some(describe_weights(z));
    Ok(report)
}

/// Keeps the first report with the worst status.
#[derive(Default)]
struct Worst {
    best: Option<ProductiveReport>,
}

impl Worst {
    fn offer(&mut self, trial: usize, mut r: ProductiveReport) {
        let worse = self.best.as_ref().is_none_or(|b| r.verdict.status > b.verdict.status);
        if worse {
            r.worst_trial = Some(trial);
            self.best = Some(r);
        }
    }

    fn status(&self) -> Option<Status> {
        self.best.as_ref().map(|b| b.verdict.status)
    }
}

fn search_space(bounds: &[i64], sign: WeightSign) -> Option<u64> {
    bounds.iter().try_fold(1u64, |acc, &b| {
        let choices = match sign {
            WeightSign::Signed => (b as u64).checked_mul(2)?.checked_add(1)?,
            WeightSign::Star => (b as u64).checked_add(1)?,
        };
        acc.checked_mul(choices)
    })
}

/// Every weight function with `|z| ≤ bounds`, in odometer order.
fn exhaustive(
    g: &GroupDescriptor,
    terms: &[Value],
    bounds: &[i64],
    sign: WeightSign,
    flavor: Flavor,
    cfg: &AnalysisConfig,
    worst: &mut Worst,
) -> Result<u64> {
    let lo = |b: i64| if sign == WeightSign::Star { 0 } else { -b };
    let mut z: Vec<i64> = bounds.iter().map(|&b| lo(b)).collect();
    let mut count = 0u64;
    loop {
        worst.offer(count as usize, evaluate(g, terms, &z, flavor, cfg)?);
        count += 1;
        if worst.status() == Some(Status::Fails) {
            return Ok(count);
        }
        let mut i = 0;
        loop {
            if i == z.len() {
                return Ok(count);
            }
            if z[i] < bounds[i] {
                z[i] += 1;
                break;
            }
            z[i] = lo(bounds[i]);
            i += 1;
        }
    }
}

fn uses_omega(f: &BoundFunction, horizon: usize) -> bool {
    (0..=horizon).any(|n| f.eval(n).is_omega())
}

/// The weighted check behind the `f`- and `f★`-variants.
///
/// When the whole space of weight functions on `[0, H]` has at most
/// `exhaustive_threshold` members it is enumerated; otherwise trial 0 uses
/// adversarial weights, odd trials uniform weights and later even trials a
/// mixture. The report keeps the worst trial.
pub fn check_weighted(
    seq: &dyn Sequence,
    f: &BoundFunction,
    cfg: &AnalysisConfig,
    flavor: Flavor,
    sign: WeightSign,
) -> Result<ProductiveReport> {
    cfg.validate()?;
    let g = seq.group();
    let terms = seq.terms(cfg.horizon + 1);
    let bounds: Vec<i64> = (0..=cfg.horizon).map(|n| cap_bound(f.eval(n), cfg.omega_cap)).collect();
    let mut worst = Worst::default();
    let mode = match search_space(&bounds, sign) {
        Some(space) if space <= cfg.exhaustive_threshold => {
            SearchMode::Exhaustive { assignments: exhaustive(g, &terms, &bounds, sign, flavor, cfg, &mut worst)? }
        }
        _ => {
            for t in 0..cfg.trials {
                let mut rng = trial_rng(cfg.seed, t);
                let z = draw_weights(t, g, &terms, &bounds, sign, &mut rng)?;
                worst.offer(t, evaluate(g, &terms, &z, flavor, cfg)?);
            }
            SearchMode::Randomized { trials: cfg.trials }
        }
    };
    let mut report = worst.best.expect("at least one evaluation");
    report.mode = mode;
    report.omega_cap = uses_omega(f, cfg.horizon).then_some(cfg.omega_cap);
    Ok(report)
}

/// `a_n^{z(n)}` is Cauchy productive for the sampled `|z| ≤ f`.
pub fn check_f_cauchy_productive(
    seq: &dyn Sequence,
    f: &BoundFunction,
    cfg: &AnalysisConfig,
) -> Result<ProductiveReport> {
    check_weighted(seq, f, cfg, Flavor::Cauchy, WeightSign::Signed)
}

/// `a_n^{z(n)}` is productive for the sampled `|z| ≤ f`.
pub fn check_f_productive(seq: &dyn Sequence, f: &BoundFunction, cfg: &AnalysisConfig) -> Result<ProductiveReport> {
    check_weighted(seq, f, cfg, Flavor::Plain, WeightSign::Signed)
}

/// The weighted check repeated over sampled reorderings `a_{φ(n)}`.
///
/// Under [`WeightAlignment::Reindexed`] position `n` is bounded by `f(φ(n))`;
/// under [`WeightAlignment::Positional`] by `f(n)`.
pub fn check_f_productive_set(
    seq: &dyn Sequence,
    f: &BoundFunction,
    cfg: &AnalysisConfig,
    sampler: &dyn PermutationSampler,
    flavor: Flavor,
) -> Result<ProductiveReport> {
    cfg.validate()?;
    let g = seq.group();
    let h = cfg.horizon;
    let mut worst = Worst::default();
    let mut base: Vec<Value> = seq.terms(h + 1);
    let mut omega = false;
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let phi = sampler.sample(t, h, &mut rng);
        let need = (0..=h).map(|n| phi.apply(n) + 1).max().unwrap_or(0);
        if need > base.len() {
            base = seq.terms(need);
        }
        let terms: Vec<Value> = (0..=h).map(|n| base[phi.apply(n)].clone()).collect();
        let bound_at = |n: usize| match cfg.alignment {
            WeightAlignment::Reindexed => f.eval(phi.apply(n)),
            WeightAlignment::Positional => f.eval(n),
        };
        omega |= (0..=h).any(|n| bound_at(n).is_omega());
        let bounds: Vec<i64> = (0..=h).map(|n| cap_bound(bound_at(n), cfg.omega_cap)).collect();
        let mut report = match search_space(&bounds, WeightSign::Signed) {
            Some(space) if space <= cfg.exhaustive_threshold => {
                let mut inner = Worst::default();
                exhaustive(g, &terms, &bounds, WeightSign::Signed, flavor, cfg, &mut inner)?;
                inner.best.expect("at least one evaluation")
            }
            _ => {
                let z = draw_weights(t, g, &terms, &bounds, WeightSign::Signed, &mut rng)?;
                evaluate(g, &terms, &z, flavor, cfg)?
            }
        };
        report.reordering_used = Some(format!("{phi}"));
        worst.offer(t, report);
    }
    let mut report = worst.best.expect("at least one trial");
    report.mode = SearchMode::Randomized { trials: cfg.trials };
    report.omega_cap = omega.then_some(cfg.omega_cap);
    Ok(report)
}

/// Outcome of the abelian decomposition test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivReport {
    pub verdict: Verdict,
    pub trials: usize,
    /// Trials where `z`, `z₊` and `z₋` all held.
    pub all_hold: usize,
    pub weights: Vec<Vec<i64>>,
    /// `Π_{n ≤ H} a_n^{z(n)}` per trial.
    pub sums: Vec<Value>,
}

/// In an abelian group, checks `Σ z a = Σ z₊ a + Σ z₋ a` term by term and that
/// `z₊` and `z₋` holding (at half the tolerance) forces `z` to hold.
pub fn abelian_fstar_equiv_test(seq: &dyn Sequence, f: &BoundFunction, cfg: &AnalysisConfig) -> Result<EquivReport> {
    cfg.validate()?;
    let g = seq.group();
    if !g.is_abelian() {
        return Err(GroupError::Domain(format!("{} is not abelian", g.kind_name())));
    }
    let h = cfg.horizon;
    let terms = seq.terms(h + 1);
    let bounds: Vec<i64> = (0..=h).map(|n| cap_bound(f.eval(n), cfg.omega_cap)).collect();
    let half = AnalysisConfig { tolerance: &cfg.tolerance / BigInt::from(2), ..cfg.clone() };
    let mut out = EquivReport {
        verdict: Verdict::holds(None, h, cfg.tolerance.clone()),
        trials: cfg.trials,
        all_hold: 0,
        weights: Vec::new(),
        sums: Vec::new(),
    };
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let z = draw_weights(t, g, &terms, &bounds, WeightSign::Signed, &mut rng)?;
        let (zp, zm) = decompose_weights(&IntWeightSeq::finite(z.clone()));
        let zp: Vec<i64> = (0..=h).map(|n| zp.eval(n)).collect();
        let zm: Vec<i64> = (0..=h).map(|n| zm.eval(n)).collect();
        let full = evaluate(g, &terms, &z, Flavor::Cauchy, cfg)?;
        let plus = evaluate(g, &terms, &zp, Flavor::Cauchy, &half)?;
        let minus = evaluate(g, &terms, &zm, Flavor::Cauchy, &half)?;
        let sum = full.limit.clone().expect("horizon ≥ 2");
        let split = g.op(plus.limit.as_ref().expect("limit"), minus.limit.as_ref().expect("limit"))?;
        let mut bug = None;
        if sum != split {
            bug = Some(format!("sum {sum} differs from {split}"));
        } else if plus.verdict.is_holds() && minus.verdict.is_holds() && !full.verdict.is_holds() {
            bug = Some(format!("z+ and z- hold but z is {}", full.verdict.status.as_str()));
        }
        if let Some(detail) = bug {
            if out.verdict.is_holds() {
                out.verdict = Verdict::fails(Witness::Trial { trial: t, detail }, h, cfg.tolerance.clone());
            }
        }
        if full.verdict.is_holds() && plus.verdict.is_holds() && minus.verdict.is_holds() {
            out.all_hold += 1;
        }
        out.weights.push(z);
        out.sums.push(sum);
    }
    Ok(out)
}

/// Result of probing the bounded subgroup of `ℤ^ℕ` with `e_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedProbe {
    pub verdict: Verdict,
    /// Bound witness of the limit approximant (bounded `f`).
    pub limit_bound: Option<u64>,
    /// `(K, c)`: the partial sums exceed `K` at coordinate `c` (unbounded `f`).
    pub escapes: Vec<(u64, usize)>,
}

/// For bounded `f`, `e_n` with `|z| ≤ f` sums to an element of bound
/// `≤ max f`. For unbounded `f`, `z = f` sums out of every ball of radius
/// `K ≤ max_bound`.
pub fn bounded_subgroup_probe(f: &BoundFunction, cfg: &AnalysisConfig, max_bound: u64) -> Result<BoundedProbe> {
    cfg.validate()?;
    let h = cfg.horizon;
    let g = GroupDescriptor::BoundedIntSeq { depth: h + 1 };
    let seq = UnitVectors::new(g.clone())?;
    let tol = cfg.tolerance.clone();
    if f.is_bounded() {
        let k = f.max_on(h).expect("bounded");
        let report = check_f_productive(&seq, f, cfg)?;
        // z = f itself sums to the element of largest bound
        let extreme: Vec<Value> =
            (0..=h).map(|n| g.pow(&seq.term(n), cap_bound(f.eval(n), cfg.omega_cap))).collect::<Result<_>>()?;
        let limit_bound = match (&report.limit, partial_products_of(&g, &extreme)?.pop()) {
            (Some(Value::Bounded(a)), Some(Value::Bounded(b))) => Some(a.bound().max(b.bound())),
            _ => None,
        };
        let verdict = match limit_bound {
            Some(b) if b > k => Verdict::fails(Witness::Escape { bound: k, coordinate: h }, h, tol),
            _ => report.verdict,
        };
        return Ok(BoundedProbe { verdict, limit_bound, escapes: Vec::new() });
    }
    let z: Vec<i64> = (0..=h).map(|n| cap_bound(f.eval(n), cfg.omega_cap)).collect();
    let terms = seq.terms(h + 1);
    let powered = terms.iter().zip(&z).map(|(a, &k)| g.pow(a, k)).collect::<Result<Vec<_>>>()?;
    let last = partial_products_of(&g, &powered)?.pop().expect("horizon ≥ 2");
    let Value::Bounded(sum) = last else { unreachable!() };
    let escapes: Vec<(u64, usize)> = (1..=max_bound)
        .filter_map(|k| sum.entries().iter().position(|e| e.unsigned_abs() > k).map(|c| (k, c)))
        .collect();
    let verdict = match escapes.last() {
        Some(&(k, c)) if escapes.len() as u64 == max_bound => {
            Verdict::fails(Witness::Escape { bound: k, coordinate: c }, h, tol)
        }
        _ => Verdict::inconclusive(None, h, tol),
    };
    Ok(BoundedProbe { verdict, limit_bound: None, escapes })
}
