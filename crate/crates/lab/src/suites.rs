//! Named verification suites with their expected-verdict tables.
//!
//! Every item records the verdict it observed and the one it expects; a
//! suite passes when they agree everywhere, so expected failures count as
//! successes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use prodseq_core::analysis::{
    abelian_fstar_equiv_test, bounded_subgroup_probe, check_cauchy_productive, check_f_cauchy_productive,
    check_f_productive, check_f_productive_set, check_null_sequence, check_productive, product_support_criterion,
    AnalysisConfig, Flavor, MixedSampler, WeightAlignment,
};
use prodseq_core::concrete::primes::odd_primes;
use prodseq_core::concrete::{PadicInt, Permutation};
use prodseq_core::construct::families::{family_s, in_s, linked_witness, triple_violation};
use prodseq_core::construct::{build_f_cauchy_set, level_radius, make_nested_basis, reshuffle_bound_check, KpWindow};
use prodseq_core::number_theory::{crt_multiple, iterated_approx, padic_approx_solve};
use prodseq_core::sequences::{CircleGeometric, Explicit, InterleavedExample, PadicPowers, SymTranspositions};
use prodseq_core::{
    BoundFunction, BoundTail, ExtNat, Factors, GroupDescriptor, IntWeightSeq, Sequence, Status, Value, Verdict,
};

use crate::artifacts::circle_cantor_tree;
use crate::json::{rational_to_json, value_to_json, witness_to_json};
use crate::LabError;

pub const SUITES: [&str; 11] = [
    "symmetric-group",
    "padic",
    "crt",
    "reshuffle",
    "builder",
    "cantor",
    "hp-example",
    "abelian-equiv",
    "bounded-znn",
    "linear-groups",
    "all",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Item {
    pub name: String,
    pub verdict: Status,
    pub witness: Option<Json>,
    pub expected: Status,
    pub detail: Json,
}

impl Item {
    pub fn pass(&self) -> bool {
        self.verdict == self.expected
    }

    fn from_verdict(name: impl Into<String>, v: &Verdict, expected: Status, detail: Json) -> Self {
        Item {
            name: name.into(),
            verdict: v.status,
            witness: v.witness.as_ref().map(witness_to_json),
            expected,
            detail,
        }
    }

    /// An exact check: `Holds` when `ok`, expected to hold.
    fn check(name: impl Into<String>, ok: bool, detail: Json) -> Self {
        let verdict = if ok { Status::Holds } else { Status::Fails };
        Item { name: name.into(), verdict, witness: None, expected: Status::Holds, detail }
    }

    fn to_json(&self) -> Json {
        json!({
            "name": self.name,
            "verdict": self.verdict.as_str(),
            "witness": self.witness,
            "expected": self.expected.as_str(),
            "pass": self.pass(),
            "detail": self.detail,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub horizon: usize,
    pub items: Vec<Item>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(Item::pass)
    }

    pub fn to_json(&self) -> Json {
        json!({
            "suite": self.suite,
            "seed": self.seed,
            "horizon": self.horizon,
            "pass": self.all_pass(),
            "items": self.items.iter().map(Item::to_json).collect::<Vec<_>>(),
        })
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn pow_tol(p: u64, k: u32) -> BigRational {
    AnalysisConfig::power_tolerance(p, k)
}

/// Runs one suite; `all` runs every other suite concurrently and
/// concatenates their items in the listed order.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport, LabError> {
    let (horizon, items) = match name {
        "symmetric-group" => (512, symmetric_group(seed)?),
        "padic" => (0, padic(seed)?),
        "crt" => (0, crt(seed)?),
        "reshuffle" => (20, reshuffle(seed)?),
        "builder" => (200, builder(seed)?),
        "cantor" => (64, cantor(seed)?),
        "hp-example" => (64, hp_example(seed)?),
        "abelian-equiv" => (32, abelian_equiv(seed)?),
        "bounded-znn" => (70, bounded_znn(seed)?),
        "linear-groups" => (64, linear_groups(seed)?),
        "all" => return run_all(seed),
        other => return Err(LabError::UnknownSuite(other.into())),
    };
    Ok(SuiteReport { suite: name.into(), seed, horizon, items })
}

fn run_all(seed: u64) -> Result<SuiteReport, LabError> {
    let names = &SUITES[..SUITES.len() - 1];
    let reports: Vec<Result<SuiteReport, LabError>> = std::thread::scope(|s| {
        let handles: Vec<_> = names.iter().map(|n| s.spawn(move || run_suite(n, seed))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let mut items = Vec::new();
    let mut horizon = 0;
    for r in reports {
        let r = r?;
        horizon = horizon.max(r.horizon);
        items.extend(r.items.into_iter().map(|mut it| {
            it.name = format!("{}/{}", r.suite, it.name);
            it
        }));
    }
    Ok(SuiteReport { suite: "all".into(), seed, horizon, items })
}

fn symmetric_group(seed: u64) -> Result<Vec<Item>, LabError> {
    const H: usize = 512;
    let mut items = Vec::new();
    let terms = SymTranspositions.terms(H + 1);
    // least point moved by any segment b_l ⋯ b_m with l ≥ n
    let mut least_from = vec![usize::MAX; H + 2];
    for l in (1..=H).rev() {
        let mut acc = Permutation::identity();
        let mut least = usize::MAX;
        for b in &terms[l..] {
            acc = acc.compose(b.as_perm().expect("transpositions"));
            least = least.min(acc.least_moved_point().unwrap_or(usize::MAX));
        }
        least_from[l] = least.min(least_from[l + 1]);
    }
    for k in 1..=16u32 {
        let cfg = AnalysisConfig::new(pow_tol(2, k), H).with_seed(seed);
        let r = check_cauchy_productive(&SymTranspositions, &cfg)?;
        let criterion = match r.verdict.witness {
            Some(prodseq_core::Witness::Settle { index }) => Some(index + 1),
            _ => None,
        };
        let fixes = least_from[k as usize + 1] > k as usize;
        let mut item = Item::from_verdict(
            format!("cauchy-productive-2^-{k}"),
            &r.verdict,
            Status::Holds,
            json!({"criterion-index": criterion, "segments-fix-points-up-to-k": fixes}),
        );
        if criterion != Some(k as usize + 1) || !fixes {
            item.verdict = Status::Fails;
        }
        items.push(item);
    }
    let cfg = AnalysisConfig::new(pow_tol(2, 4), H).with_seed(seed);
    let r = check_productive(&SymTranspositions, &cfg)?;
    items.push(Item::from_verdict("productive", &r.verdict, Status::Fails, json!({})));
    let mut partial = Vec::with_capacity(H + 1);
    let mut acc = Permutation::identity();
    for b in &terms {
        acc = acc.compose(b.as_perm().expect("transpositions"));
        partial.push(acc.clone());
    }
    let back_to_zero: Vec<usize> = partial.iter().map(|p| p.inverse().apply(0)).collect();
    let mut bad = None;
    'outer: for (m, &back) in back_to_zero.iter().enumerate().skip(1) {
        for (n, pn) in partial.iter().enumerate().take(m) {
            if pn.apply(back) != m + 1 {
                bad = Some(json!({"n": n, "m": m}));
                break 'outer;
            }
        }
    }
    let stays_far = bad.is_none();
    items.push(Item::check(
        "right-witness-(pi_n pi_m^-1)(0)=m+1",
        stays_far,
        json!({"pairs": H * (H + 1) / 2, "counterexample": bad}),
    ));
    Ok(items)
}

fn padic(seed: u64) -> Result<Vec<Item>, LabError> {
    let mut items = Vec::new();
    for (s, p) in [2u64, 3, 5].into_iter().enumerate() {
        let mut rng = stream_rng(seed, s as u64);
        let (mut cases, mut mismatches, mut first_bad) = (0usize, 0usize, None);
        for k in 1..=6usize {
            let depth = k + 2;
            let pk = p.pow(k as u32);
            for trial in 0..200 {
                let t = rng.gen_range(0..k);
                let unit = loop {
                    let u = rng.gen_range(1..p.pow((depth - t) as u32));
                    if u % p != 0 {
                        break u;
                    }
                };
                let alpha_int = p.pow(t as u32) * unit;
                let eta_int = p.pow(t as u32) * rng.gen_range(0..p.pow((depth - t) as u32));
                let alpha = PadicInt::from_i64(alpha_int as i64, p, depth)?;
                let eta = PadicInt::from_i64(eta_int as i64, p, depth)?;
                let z = padic_approx_solve(&eta, &alpha, k)?;
                let solutions: Vec<u64> =
                    (0..pk).filter(|&z| (eta_int % pk + pk * pk - (z * (alpha_int % pk)) % pk) % pk == 0).collect();
                cases += 1;
                let ok = z.to_u64().is_some_and(|z| solutions.first() == Some(&z));
                if !ok {
                    mismatches += 1;
                    first_bad.get_or_insert(json!({"k": k, "trial": trial, "eta": eta_int, "alpha": alpha_int}));
                }
            }
        }
        items.push(Item::check(
            format!("approx-solver-p{p}"),
            mismatches == 0,
            json!({"cases": cases, "mismatches": mismatches, "first-mismatch": first_bad}),
        ));
    }
    let mut rng = stream_rng(seed, 10);
    let mut bad = 0;
    let depth = 12;
    for _ in 0..50 {
        let alphas: Vec<PadicInt> = [0u32, 2, 5]
            .iter()
            .map(|&v| PadicInt::from_i64(3i64.pow(v) * [1i64, 2, 4, 5][rng.gen_range(0..4)], 3, depth))
            .collect::<Result<_, _>>()?;
        let eta = PadicInt::from_i64(rng.gen_range(0..3i64.pow(depth as u32)), 3, depth)?;
        let zs = iterated_approx(&eta, &alphas)?;
        let mut rem = BigInt::from(eta.to_residue());
        for (z, a) in zs.iter().zip(&alphas) {
            rem -= z * BigInt::from(a.to_residue());
        }
        if !(rem % BigInt::from(3u64.pow(depth as u32))).is_zero() {
            bad += 1;
        }
    }
    items.push(Item::check("iterated-approx-exhausts-depth", bad == 0, json!({"cases": 50, "mismatches": bad})));
    Ok(items)
}

fn crt(seed: u64) -> Result<Vec<Item>, LabError> {
    let mut rng = stream_rng(seed, 0);
    let pool = odd_primes(25);
    let (mut mismatches, mut first_bad) = (0usize, None);
    for trial in 0..200 {
        let (chosen, product) = loop {
            let r = rng.gen_range(1..=5);
            let c: Vec<u64> = pool.choose_multiple(&mut rng, r).copied().collect();
            let prod: u64 = c.iter().product();
            if prod <= 100_000 {
                break (c, prod);
            }
        };
        let extra: Vec<u64> = pool.iter().copied().filter(|p| !chosen.contains(p)).take(2).collect();
        let mut moduli = chosen.clone();
        moduli.extend(&extra);
        moduli.shuffle(&mut rng);
        let coords: Vec<usize> = chosen.iter().map(|p| moduli.iter().position(|q| q == p).expect("present")).collect();
        let g: Vec<u64> = moduli
            .iter()
            .map(|&p| if chosen.contains(&p) { rng.gen_range(1..p) } else { rng.gen_range(0..p) })
            .collect();
        let targets: Vec<u64> = chosen.iter().map(|&p| rng.gen_range(0..p)).collect();
        let group = GroupDescriptor::Product(Factors::Cyclic(moduli.clone()));
        let gv = Value::Product(g.iter().map(|&x| Value::Cyclic(x)).collect());
        let z = crt_multiple(&group, &gv, &coords, &targets)?.to_u64();
        let hits = |z: u64| coords.iter().zip(&targets).all(|(&c, &t)| z % moduli[c] * g[c] % moduli[c] == t);
        let least = (0..product).find(|&z| hits(z));
        if z.is_none() || z != least || !hits(z.unwrap_or(0)) {
            mismatches += 1;
            first_bad.get_or_insert(json!({"trial": trial, "moduli": moduli, "got": z, "least": least}));
        }
    }
    Ok(vec![Item::check(
        "crt-multiple-least",
        mismatches == 0,
        json!({"cases": 200, "mismatches": mismatches, "first-mismatch": first_bad}),
    )])
}

fn reshuffle(seed: u64) -> Result<Vec<Item>, LabError> {
    let mut items = Vec::new();
    let zp = make_nested_basis(&GroupDescriptor::padic(3, 40)?, 40)?;
    let mut rng = stream_rng(seed, 0);
    let mut violations = Vec::new();
    for i in 0..1000u64 {
        let len = rng.gen_range(1..=20);
        let phi: Vec<usize> = rand::seq::index::sample(&mut rng, 39, len).iter().map(|j| j + 1).collect();
        if !reshuffle_bound_check(&zp, &phi, 1, seed.wrapping_add(i))?.is_holds() {
            violations.push(i);
        }
    }
    items.push(Item::check(
        "padic-subgroup-chain",
        violations.is_empty(),
        json!({"injections": 1000, "violations": violations}),
    ));
    let circle = make_nested_basis(&GroupDescriptor::Circle, 24)?;
    let mut rng = stream_rng(seed, 1);
    let mut violations = Vec::new();
    for i in 0..100u64 {
        let len = rng.gen_range(1..=20);
        let phi: Vec<usize> = rand::seq::index::sample(&mut rng, 23, len).iter().map(|j| j + 1).collect();
        if !reshuffle_bound_check(&circle, &phi, 10, seed.wrapping_add(i))?.is_holds() {
            violations.push(i);
        }
    }
    items.push(Item::check(
        "circle-ball-chain",
        violations.is_empty(),
        json!({"products": 1000, "violations": violations}),
    ));
    let base = reshuffle_bound_check(&zp, &[3], 1, seed)?;
    items.push(Item::from_verdict("single-level", &base, Status::Holds, json!({"phi": [3]})));
    Ok(items)
}

fn builder(seed: u64) -> Result<Vec<Item>, LabError> {
    const H: usize = 200;
    let mut items = Vec::new();
    let f = BoundFunction::identity_plus(1);
    for (name, g, p) in [
        ("z3-f(n)=n+1", GroupDescriptor::padic(3, H + 12)?, 3u64),
        ("int-tau5-f(n)=n+1", GroupDescriptor::int_tau_p(5)?, 5),
    ] {
        let basis = make_nested_basis(&g, H + 2)?;
        let set = build_f_cauchy_set(&basis, &f, H + 1, 1000)?;
        let seq = Explicit::new(g, set)?;
        let cfg = AnalysisConfig::new(pow_tol(p, 10), H).with_trials(100).with_seed(seed);
        let r = check_f_productive_set(&seq, &f, &cfg, &MixedSampler, Flavor::Plain)?;
        items.push(Item::from_verdict(
            format!("{name}-productive-set"),
            &r.verdict,
            Status::Holds,
            json!({"trials": cfg.trials, "worst-trial": r.worst_trial}),
        ));
    }
    let c = 3;
    let basis = make_nested_basis(&GroupDescriptor::Circle, 41)?;
    let set = build_f_cauchy_set(&basis, &BoundFunction::constant(c), 41, 1000)?;
    let seq = Explicit::new(GroupDescriptor::Circle, set)?;
    let cfg = AnalysisConfig::new(pow_tol(2, 10), 40).with_seed(seed);
    let r = check_f_cauchy_productive(&seq, &BoundFunction::constant(c), &cfg)?;
    items.push(Item::from_verdict("circle-constant-3", &r.verdict, Status::Holds, json!({})));

    let s = InterleavedExample::new(40)?;
    let fe = BoundFunction::new(vec![], BoundTail::Periodic(vec![ExtNat::Omega, ExtNat::Fin(1)]))?;
    let cfg = AnalysisConfig::new(pow_tol(2, 10), 64).with_trials(6).with_omega_cap(1 << 62).with_seed(seed);
    let r = check_f_productive(&s, &fe, &cfg)?;
    items.push(Item::from_verdict("interleaved-sequence", &r.verdict, Status::Holds, json!({})));
    let positional = cfg.clone().with_alignment(WeightAlignment::Positional);
    let r = check_f_productive_set(&s, &fe, &positional, &MixedSampler, Flavor::Plain)?;
    items.push(Item::from_verdict(
        "interleaved-set-positional",
        &r.verdict,
        Status::Fails,
        json!({"reordering": r.reordering_used}),
    ));
    let r = check_f_productive_set(&s, &fe, &cfg, &MixedSampler, Flavor::Plain)?;
    items.push(Item::from_verdict("interleaved-set-reindexed", &r.verdict, Status::Holds, json!({})));
    Ok(items)
}

fn cantor(seed: u64) -> Result<Vec<Item>, LabError> {
    let tree = circle_cantor_tree(10, seed)?;
    let leaves = tree.leaves();
    let distinct: BTreeSet<BigRational> =
        leaves.iter().map(|v| v.as_circle().expect("circle leaves").value().clone()).collect();
    let diam = (0..=tree.depth()).all(|n| {
        level_radius(&tree, n).is_none_or(|r| r * BigInt::from(2) <= BigRational::new(1.into(), BigInt::from(1) << n))
    });
    let ck = tree.checks;
    let mut items = vec![
        Item::check(
            "leaves-distinct",
            leaves.len() == 1024 && distinct.len() == 1024 && ck.leaves_distinct,
            json!({"leaves": leaves.len(), "distinct": distinct.len()}),
        ),
        Item::check("siblings-disjoint", ck.siblings_disjoint, json!({})),
        Item::check("nested-closures", ck.nested, json!({})),
        Item::check(
            "diameters",
            diam && ck.diameters,
            json!({"level-10-radius": level_radius(&tree, 10).as_ref().map(rational_to_json)}),
        ),
        Item::check("products-and-injections", ck.products && ck.injections_extend, json!({})),
    ];
    let small = circle_cantor_tree(1, seed)?;
    items.push(Item::check(
        "depth-1",
        small.leaves() == vec![Value::circle(1, 3), Value::circle(1, 9)],
        json!({"leaves": small.leaves().iter().map(value_to_json).collect::<Vec<_>>()}),
    ));
    Ok(items)
}

fn random_support(rng: &mut ChaCha8Rng) -> IntWeightSeq {
    let size = rng.gen_range(1..=3);
    let idx = rand::seq::index::sample(rng, 10, size);
    let mut prefix = vec![0i64; 10];
    for i in idx.iter() {
        prefix[i] = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    IntWeightSeq::finite(prefix)
}

fn hp_example(seed: u64) -> Result<Vec<Item>, LabError> {
    let w = KpWindow::new(64)?;
    let mut items = Vec::new();
    let s = family_s(32, 4096);
    let triple = triple_violation(&s);
    items.push(Item::check(
        "s-triple-disjoint",
        triple.is_none(),
        json!({"sets": 32, "window": 4096, "violation": triple}),
    ));
    let mut missing = Vec::new();
    let mut latest = 0;
    for a in 0..32 {
        for b in a + 1..32 {
            match linked_witness(&s, a, b) {
                Some(k) if in_s(a, k) && in_s(b, k) => latest = latest.max(k),
                _ => missing.push((a, b)),
            }
        }
    }
    items.push(Item::check(
        "s-two-linked",
        missing.is_empty(),
        json!({"pairs": 496, "largest-witness": latest, "missing": missing}),
    ));

    let mut rng = stream_rng(seed, 0);
    let mut empty = Vec::new();
    for t in 0..100 {
        let nz = |rng: &mut ChaCha8Rng| rng.gen_range(1..=5i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let (k, n) = (nz(&mut rng), nz(&mut rng));
        let (l, m) = (rng.gen_range(-5..=5i64), rng.gen_range(-5..=5i64));
        let q = rng.gen_range(0..=8usize);
        let r = loop {
            let r = rng.gen_range(0..=8usize);
            if r != q {
                break r;
            }
        };
        let e = w.e_set(k, l, m, n, q, r)?;
        let confirmed = e.cells.first().is_some_and(|&(i, j)| {
            let p = w.prime(i, j) as i64;
            let (x, y) = (w.a_entry(q, i, j) as i64, w.a_entry(r, i, j) as i64);
            x != 0 && y != 0 && (k * x + l * y).rem_euclid(p) != 0 && (m * x + n * y).rem_euclid(p) != 0
        });
        if e.status != Status::Holds || !confirmed {
            empty.push(json!([t, k, l, m, n, q, r]));
        }
    }
    items.push(Item::check("e-sets-nonempty", empty.is_empty(), json!({"tuples": 100, "empty": empty})));

    let mut rng = stream_rng(seed, 1);
    let terms = w.active_terms();
    let mut worst: Option<Verdict> = None;
    let mut cases = [0usize; 2];
    for _ in 0..100 {
        let (z, zp) = (random_support(&mut rng), random_support(&mut rng));
        let o = w.support_overlap_check(&z, &zp, terms)?;
        cases[matches!(o.case, prodseq_core::construct::hp::OverlapCase::TwoIndices { .. }) as usize] += 1;
        if worst.as_ref().is_none_or(|v| o.verdict.status > v.status) {
            worst = Some(o.verdict);
        }
    }
    let worst = worst.expect("100 pairs");
    items.push(Item::from_verdict(
        "support-overlap",
        &worst,
        Status::Holds,
        json!({"pairs": 100, "single-index": cases[0], "two-indices": cases[1]}),
    ));

    let d = w.density_probe(100, 5, seed)?;
    items.push(Item::check("density-probe", d.matched == d.trials, json!({"trials": d.trials, "matched": d.matched})));

    let grp = w.group();
    let a0 = w.a(0);
    let restrict = |parity: usize| {
        let c = a0.as_product().expect("product");
        Value::Product(
            (0..c.len()).map(|x| if w.cell(x).0 % 2 == parity { c[x].clone() } else { Value::Cyclic(0) }).collect(),
        )
    };
    let (even, odd) = (restrict(0), restrict(1));
    grp.check(&even)?;
    items.push(Item::from_verdict("split-even-odd-rows", &w.split_test(&even, &odd)?, Status::Holds, json!({})));
    let z = IntWeightSeq::finite(vec![1, 0, 2]);
    let zp = IntWeightSeq::finite(vec![0, 1, 0, 3]);
    let (gz, gzp) = (w.g_z(&z, terms), w.g_z(&zp, terms));
    items.push(Item::from_verdict("split-g_z-g_z'", &w.split_test(&gz, &gzp)?, Status::Fails, json!({})));
    items.push(Item::from_verdict("split-g-with-itself", &w.split_test(&gz, &gz)?, Status::Fails, json!({})));

    let family: Vec<Value> = (0..terms).map(|n| w.a(n)).collect();
    let cfg = AnalysisConfig::new(pow_tol(2, 10), terms - 1).with_trials(4).with_seed(seed);
    let r = product_support_criterion(&grp, &family, 2, &cfg)?;
    items.push(Item::from_verdict(
        "support-criterion-generators",
        &r.verdict,
        Status::Holds,
        json!({"max-count": r.counts.iter().max(), "direct": r.direct.status.as_str(), "consistent": r.consistent}),
    ));
    Ok(items)
}

fn abelian_equiv(seed: u64) -> Result<Vec<Item>, LabError> {
    const H: usize = 32;
    let mut items = Vec::new();
    let zp = PadicPowers::new(3, 40, 1, 0)?;
    let circle = CircleGeometric::new(1, 3)?;
    for (fname, f) in [("f1", BoundFunction::one()), ("constant-5", BoundFunction::constant(5))] {
        let cfg = AnalysisConfig::new(pow_tol(3, 8), H).with_trials(200).with_seed(seed);
        let r = abelian_fstar_equiv_test(&zp, &f, &cfg)?;
        items.push(Item::from_verdict(
            format!("z3-{fname}"),
            &r.verdict,
            Status::Holds,
            json!({"trials": r.trials, "all-hold": r.all_hold}),
        ));

        let cfg = AnalysisConfig::new(pow_tol(2, 10), H).with_trials(200).with_seed(seed);
        let r = abelian_fstar_equiv_test(&circle, &f, &cfg)?;
        items.push(Item::from_verdict(
            format!("circle-{fname}"),
            &r.verdict,
            Status::Holds,
            json!({"trials": r.trials, "all-hold": r.all_hold}),
        ));
        let mut off = Vec::new();
        for (t, (z, sum)) in r.weights.iter().zip(&r.sums).enumerate() {
            let mut exact = BigRational::zero();
            for (n, &zn) in z.iter().enumerate() {
                exact += BigRational::new(BigInt::from(zn), BigInt::from(3).pow(n as u32 + 1));
            }
            let exact = &exact - exact.floor();
            if sum.as_circle().map(|c| c.value()) != Some(&exact)
                || z.iter().any(|zn| zn.unsigned_abs() > f.max_on(H).unwrap_or(0))
            {
                off.push(t);
            }
        }
        items.push(Item::check(
            format!("circle-{fname}-sums-oracle"),
            off.is_empty(),
            json!({"trials": r.sums.len(), "mismatches": off}),
        ));
    }
    Ok(items)
}

fn bounded_znn(seed: u64) -> Result<Vec<Item>, LabError> {
    let cfg = AnalysisConfig::new(pow_tol(2, 10), 70).with_seed(seed);
    let mut items = Vec::new();
    for k in [1u64, 5, 10] {
        let r = bounded_subgroup_probe(&BoundFunction::constant(k), &cfg, 64)?;
        let mut item = Item::from_verdict(
            format!("constant-{k}"),
            &r.verdict,
            Status::Holds,
            json!({"limit-bound": r.limit_bound}),
        );
        if r.limit_bound.is_none_or(|b| b > k) {
            item.verdict = Status::Fails;
        }
        items.push(item);
    }
    let r = bounded_subgroup_probe(&BoundFunction::identity_plus(0), &cfg, 64)?;
    let covered = (1..=64).all(|k| r.escapes.iter().any(|&(b, c)| b == k && c > k as usize));
    let mut item =
        Item::from_verdict("identity-escapes", &r.verdict, Status::Fails, json!({"escapes": r.escapes.len()}));
    if !covered {
        item.verdict = Status::Inconclusive;
    }
    items.push(item);
    Ok(items)
}

/// Valuation profiles: at least 7 from `H/2` on (null) or with recurring zeros.
fn valuation_profile(rng: &mut ChaCha8Rng, h: usize, null: bool) -> Vec<usize> {
    let r = rng.gen_range(1..=4);
    let mut v: Vec<usize> = (0..=h).map(|n| n / r + rng.gen_range(0..=2)).collect();
    if !null {
        let period = rng.gen_range(2..=8);
        let phase = rng.gen_range(0..period);
        for (n, x) in v.iter_mut().enumerate() {
            if n % period == phase {
                *x = 0;
            }
        }
    }
    v
}

fn linear_groups(seed: u64) -> Result<Vec<Item>, LabError> {
    const H: usize = 64;
    const DEPTH: usize = 24;
    let mut rng = stream_rng(seed, 0);
    let labels = ["int-tau-p", "padic", "cyclic3-power"];
    let mut agree = [0usize; 3];
    let mut total = [0usize; 3];
    let mut seen: [std::collections::BTreeMap<String, usize>; 3] = Default::default();
    let mut disagreements = Vec::new();
    for case in 0..100 {
        let null = case < 50;
        let kind = case % 3;
        let v = valuation_profile(&mut rng, H, null);
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let unit = |rng: &mut ChaCha8Rng, p: u64| loop {
            let u = rng.gen_range(1..p.pow(4)) as i64;
            if !(u as u64).is_multiple_of(p) {
                break if rng.gen_bool(0.5) { u } else { -u };
            }
        };
        let (g, tol, values): (GroupDescriptor, BigRational, Vec<Value>) = match kind {
            0 => {
                let vals = v.iter().map(|&e| Value::Int(BigInt::from(p).pow(e as u32) * unit(&mut rng, p))).collect();
                (GroupDescriptor::int_tau_p(p)?, pow_tol(p, 6), vals)
            }
            1 => {
                let vals = v
                    .iter()
                    .map(|&e| {
                        let x = BigInt::from(p).pow(e as u32) * unit(&mut rng, p);
                        PadicInt::from_bigint(&x, p, DEPTH).map(Value::Padic)
                    })
                    .collect::<Result<_, _>>()?;
                (GroupDescriptor::padic(p, DEPTH)?, pow_tol(p, 6), vals)
            }
            _ => {
                let vals = v
                    .iter()
                    .map(|&e| {
                        Value::Product(
                            (0..DEPTH)
                                .map(|c| {
                                    Value::Cyclic(if c < e {
                                        0
                                    } else if c == e {
                                        rng.gen_range(1..3)
                                    } else {
                                        rng.gen_range(0..3)
                                    })
                                })
                                .collect(),
                        )
                    })
                    .collect();
                (GroupDescriptor::cyclic_power(3, DEPTH), pow_tol(2, 6), vals)
            }
        };
        let seq = Explicit::new(g, values)?;
        let cfg = AnalysisConfig::new(tol, H).with_omega_cap(1000).with_seed(seed.wrapping_add(case as u64));
        let cauchy = check_f_cauchy_productive(&seq, &BoundFunction::omega(), &cfg)?.verdict.status;
        let nullv = check_null_sequence(&seq, &cfg)?.status;
        total[kind] += 1;
        *seen[kind].entry(format!("{}/{}", cauchy.as_str(), nullv.as_str())).or_default() += 1;
        if cauchy == nullv {
            agree[kind] += 1;
        } else {
            disagreements
                .push(json!({"case": case, "group": labels[kind], "cauchy": cauchy.as_str(), "null": nullv.as_str()}));
        }
    }
    let mut items: Vec<Item> = (0..3)
        .map(|k| {
            Item::check(
                format!("{}-omega-cauchy-equals-null", labels[k]),
                agree[k] == total[k],
                json!({"cases": total[k], "agree": agree[k], "outcomes": seen[k]}),
            )
        })
        .collect();
    items.push(Item::check("disagreements", disagreements.is_empty(), json!({"cases": 100, "list": disagreements})));
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(run_suite("nope", 0), Err(LabError::UnknownSuite(_))));
    }

    #[test]
    fn items_pass_when_verdicts_match() {
        let it = Item::check("x", false, json!({}));
        assert!(!it.pass());
        let v = Verdict::fails(prodseq_core::Witness::Index(3), 4, BigRational::zero());
        assert!(Item::from_verdict("y", &v, Status::Fails, json!({})).pass());
    }
}
