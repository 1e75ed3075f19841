//! Config-driven analyses: a JSON file names a group, a sequence rule, the
//! analysis to run and its parameters.

use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value as Json};

use prodseq_core::analysis::{
    abelian_fstar_equiv_test, bounded_subgroup_probe, check_cauchy_productive, check_f_productive_set,
    check_left_cauchy, check_null_sequence, check_productive, check_weighted, product_support_criterion,
    AnalysisConfig, Flavor, IdentitySampler, MixedSampler, PermutationSampler, ProductiveReport, TraceRow, WeightSign,
};
use prodseq_core::concrete::Permutation;
use prodseq_core::construct::KpWindow;
use prodseq_core::sequences::{
    Alternating, CircleGeometric, Constant, Explicit, IntPowers, InterleavedExample, PadicPowers, PartialProducts,
    Powered, Reordered, SymTranspositions, UnitVectors,
};
use prodseq_core::{BoundFunction, GroupDescriptor, Sequence, Status, Verdict};

use crate::json::{
    group_to_json, mode_to_json, rational_to_json, trace_row_to_json, value_from_json, value_to_json, verdict_to_json,
    BoundFunctionJson, CfgJson, GroupJson, IntWeightSeqJson,
};
use crate::LabError;

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SequenceJson {
    SymTranspositions,
    CircleGeometric {
        #[serde(default = "one")]
        num: i64,
        base: u64,
    },
    PadicPowers {
        p: u64,
        depth: usize,
        #[serde(default = "one")]
        coeff: i64,
        #[serde(default)]
        offset: usize,
    },
    IntPowers {
        p: u64,
        #[serde(default = "one")]
        coeff: i64,
    },
    Constant {
        value: Json,
    },
    Alternating {
        even: Json,
        odd: Json,
    },
    UnitVectors,
    Explicit {
        values: Vec<Json>,
    },
    InterleavedExample {
        len: usize,
    },
    /// The generators `a_n` of the grid-indexed prime product.
    HpGenerators {
        depth: usize,
    },
}

fn one() -> i64 {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum TransformJson {
    PartialProducts,
    Reordered { images: Vec<usize> },
    Powered(IntWeightSeqJson),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnalysisName {
    LeftCauchy,
    NullSequence,
    CauchyProductive,
    Productive,
    FCauchyProductive,
    FProductive,
    FStarCauchyProductive,
    FStarProductive,
    FProductiveSet,
    FCauchyProductiveSet,
    FstarEquiv,
    SupportCriterion,
    BoundedProbe,
}

impl AnalysisName {
    fn needs_f(self) -> bool {
        !matches!(
            self,
            AnalysisName::LeftCauchy
                | AnalysisName::NullSequence
                | AnalysisName::CauchyProductive
                | AnalysisName::Productive
                | AnalysisName::SupportCriterion
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AnalysisName::LeftCauchy => "left-cauchy",
            AnalysisName::NullSequence => "null-sequence",
            AnalysisName::CauchyProductive => "cauchy-productive",
            AnalysisName::Productive => "productive",
            AnalysisName::FCauchyProductive => "f-cauchy-productive",
            AnalysisName::FProductive => "f-productive",
            AnalysisName::FStarCauchyProductive => "f-star-cauchy-productive",
            AnalysisName::FStarProductive => "f-star-productive",
            AnalysisName::FProductiveSet => "f-productive-set",
            AnalysisName::FCauchyProductiveSet => "f-cauchy-productive-set",
            AnalysisName::FstarEquiv => "fstar-equiv",
            AnalysisName::SupportCriterion => "support-criterion",
            AnalysisName::BoundedProbe => "bounded-probe",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerJson {
    #[default]
    Mixed,
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatusJson {
    Holds,
    Fails,
    Inconclusive,
}

impl From<StatusJson> for Status {
    fn from(s: StatusJson) -> Self {
        match s {
            StatusJson::Holds => Status::Holds,
            StatusJson::Fails => Status::Fails,
            StatusJson::Inconclusive => Status::Inconclusive,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub group: Option<GroupJson>,
    #[serde(default)]
    pub sequence: Option<SequenceJson>,
    #[serde(default)]
    pub transforms: Vec<TransformJson>,
    pub analysis: AnalysisName,
    #[serde(default)]
    pub f: Option<BoundFunctionJson>,
    pub cfg: CfgJson,
    /// Report files are written to `<output>.report.json` and `<output>.trace.csv`.
    #[serde(default)]
    pub output: Option<String>,
    #[serde(default)]
    pub cutoff: Option<usize>,
    #[serde(default)]
    pub max_bound: Option<u64>,
    #[serde(default)]
    pub sampler: SamplerJson,
    #[serde(default)]
    pub expected: Option<StatusJson>,
}

/// Parses a config, reporting schema violations with their field path and
/// source position.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, LabError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        LabError::Schema(format!("{path}: {inner}"))
    })
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig, LabError> {
    let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
    parse_config(&text)
}

/// The report of one analysis run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: Json,
    pub trace: Vec<TraceRow>,
    pub status: Status,
    /// `None` when the config states no expectation.
    pub pass: Option<bool>,
}

fn need_group(cfg: &ExperimentConfig, rule: &str) -> Result<GroupDescriptor, LabError> {
    cfg.group
        .as_ref()
        .ok_or_else(|| LabError::Schema(format!("group: required by sequence rule '{rule}'")))?
        .to_descriptor()
}

pub fn build_sequence(cfg: &ExperimentConfig) -> Result<Box<dyn Sequence>, LabError> {
    let rule = cfg.sequence.as_ref().ok_or_else(|| LabError::Schema("sequence: missing".into()))?;
    let mut seq: Box<dyn Sequence> = match rule {
        SequenceJson::SymTranspositions => Box::new(SymTranspositions),
        SequenceJson::CircleGeometric { num, base } => Box::new(CircleGeometric::new(*num, *base)?),
        SequenceJson::PadicPowers { p, depth, coeff, offset } => {
            Box::new(PadicPowers::new(*p, *depth, *coeff, *offset)?)
        }
        SequenceJson::IntPowers { p, coeff } => Box::new(IntPowers::new(*p, *coeff)?),
        SequenceJson::Constant { value } => {
            let g = need_group(cfg, "constant")?;
            let v = value_from_json(&g, value, "sequence.value")?;
            Box::new(Constant::new(g, v)?)
        }
        SequenceJson::Alternating { even, odd } => {
            let g = need_group(cfg, "alternating")?;
            let e = value_from_json(&g, even, "sequence.even")?;
            let o = value_from_json(&g, odd, "sequence.odd")?;
            Box::new(Alternating::new(g, e, o)?)
        }
        SequenceJson::UnitVectors => Box::new(UnitVectors::new(need_group(cfg, "unit-vectors")?)?),
        SequenceJson::Explicit { values } => {
            let g = need_group(cfg, "explicit")?;
            let vals = values
                .iter()
                .enumerate()
                .map(|(i, v)| value_from_json(&g, v, &format!("sequence.values[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Box::new(Explicit::new(g, vals)?)
        }
        SequenceJson::InterleavedExample { len } => Box::new(InterleavedExample::new(*len)?),
        SequenceJson::HpGenerators { depth } => {
            let w = KpWindow::new(*depth)?;
            let vals = (0..w.active_terms()).map(|n| w.a(n)).collect();
            Box::new(Explicit::new(w.group(), vals)?.labelled("generators a_n"))
        }
    };
    for (i, t) in cfg.transforms.iter().enumerate() {
        seq = match t {
            TransformJson::PartialProducts => Box::new(PartialProducts::new(seq)),
            TransformJson::Reordered { images } => {
                let perm = Permutation::from_images(images.clone())
                    .map_err(|e| LabError::Schema(format!("transforms[{i}].reordered.images: {e}")))?;
                Box::new(Reordered::new(seq, perm))
            }
            TransformJson::Powered(w) => Box::new(Powered::new(seq, w.to_weights()?)),
        };
    }
    Ok(seq)
}

fn productive_json(r: &ProductiveReport) -> Json {
    json!({
        "mode": mode_to_json(&r.mode),
        "worst-segment": r.worst_segment.as_ref().map(trace_row_to_json),
        "weights-used": r.weights_used,
        "reordering-used": r.reordering_used,
        "limit": r.limit.as_ref().map(value_to_json),
        "limit-exact": r.limit_exact.as_ref().map(value_to_json),
        "worst-trial": r.worst_trial,
        "omega-cap": r.omega_cap,
    })
}

fn cfg_json(c: &AnalysisConfig) -> Json {
    json!({
        "tolerance": rational_to_json(&c.tolerance),
        "horizon": c.horizon,
        "trials": c.trials,
        "seed": c.seed,
        "exhaustive-threshold": c.exhaustive_threshold,
        "omega-cap": c.omega_cap,
        "uniformity": format!("{:?}", c.uniformity),
        "alignment": format!("{:?}", c.alignment),
    })
}

/// Runs the configured analysis. `fallback_seed` fills in a missing `cfg.seed`.
pub fn run_config(cfg: &ExperimentConfig, fallback_seed: Option<u64>) -> Result<RunOutcome, LabError> {
    let ac = cfg.cfg.to_config(fallback_seed)?;
    let f: Option<BoundFunction> = cfg.f.as_ref().map(BoundFunctionJson::to_bound).transpose()?;
    let name = cfg.analysis;
    let f = match (name.needs_f(), f) {
        (true, None) => return Err(LabError::Schema(format!("f: required by analysis '{}'", name.as_str()))),
        (_, f) => f.unwrap_or_else(BoundFunction::one),
    };
    let mut trace = Vec::new();
    let (verdict, group, sequence, details): (Verdict, Option<Json>, Option<String>, Json) = if name
        == AnalysisName::BoundedProbe
    {
        let max_bound = cfg.max_bound.unwrap_or(64);
        let probe = bounded_subgroup_probe(&f, &ac, max_bound)?;
        let details = json!({
            "limit-bound": probe.limit_bound,
            "escapes": probe.escapes.iter().map(|&(k, c)| json!({"bound": k, "coordinate": c})).collect::<Vec<_>>(),
        });
        let g = GroupDescriptor::BoundedIntSeq { depth: ac.horizon + 1 };
        (probe.verdict, Some(group_to_json(&g)), Some("unit vectors e_n".into()), details)
    } else {
        let seq = build_sequence(cfg)?;
        let g = seq.group().clone();
        let sampler: Box<dyn PermutationSampler> = match cfg.sampler {
            SamplerJson::Mixed => Box::new(MixedSampler),
            SamplerJson::Identity => Box::new(IdentitySampler),
        };
        let mut productive = |r: ProductiveReport| {
            let d = productive_json(&r);
            trace = r.trace;
            (r.verdict, d)
        };
        let (verdict, details) = match name {
            AnalysisName::LeftCauchy => (check_left_cauchy(&*seq, &ac)?, json!({})),
            AnalysisName::NullSequence => (check_null_sequence(&*seq, &ac)?, json!({})),
            AnalysisName::CauchyProductive => productive(check_cauchy_productive(&*seq, &ac)?),
            AnalysisName::Productive => productive(check_productive(&*seq, &ac)?),
            AnalysisName::FCauchyProductive => {
                productive(check_weighted(&*seq, &f, &ac, Flavor::Cauchy, WeightSign::Signed)?)
            }
            AnalysisName::FProductive => productive(check_weighted(&*seq, &f, &ac, Flavor::Plain, WeightSign::Signed)?),
            AnalysisName::FStarCauchyProductive => {
                productive(check_weighted(&*seq, &f, &ac, Flavor::Cauchy, WeightSign::Star)?)
            }
            AnalysisName::FStarProductive => {
                productive(check_weighted(&*seq, &f, &ac, Flavor::Plain, WeightSign::Star)?)
            }
            AnalysisName::FProductiveSet => {
                productive(check_f_productive_set(&*seq, &f, &ac, &*sampler, Flavor::Plain)?)
            }
            AnalysisName::FCauchyProductiveSet => {
                productive(check_f_productive_set(&*seq, &f, &ac, &*sampler, Flavor::Cauchy)?)
            }
            AnalysisName::FstarEquiv => {
                let r = abelian_fstar_equiv_test(&*seq, &f, &ac)?;
                let d = json!({
                    "trials": r.trials,
                    "all-hold": r.all_hold,
                    "weights": r.weights,
                    "sums": r.sums.iter().map(value_to_json).collect::<Vec<_>>(),
                });
                (r.verdict, d)
            }
            AnalysisName::SupportCriterion => {
                let cutoff = cfg.cutoff.unwrap_or(2);
                let family = seq.terms(ac.horizon + 1);
                let r = product_support_criterion(&g, &family, cutoff, &ac)?;
                let max = r.counts.iter().copied().max().unwrap_or(0);
                let d = json!({
                    "cutoff": cutoff,
                    "max-count": max,
                    "direct": verdict_to_json(&r.direct),
                    "consistent": r.consistent,
                });
                (r.verdict, d)
            }
            AnalysisName::BoundedProbe => unreachable!("handled above"),
        };
        (verdict, Some(group_to_json(&g)), Some(seq.describe()), details)
    };
    let status = verdict.status;
    let expected: Option<Status> = cfg.expected.map(Into::into);
    let pass = expected.map(|e| e == status);
    let report = json!({
        "analysis": name.as_str(),
        "group": group,
        "sequence": sequence,
        "cfg": cfg_json(&ac),
        "verdict": verdict_to_json(&verdict),
        "expected": expected.map(Status::as_str),
        "pass": pass,
        "details": details,
    });
    Ok(RunOutcome { report, trace, status, pass })
}
