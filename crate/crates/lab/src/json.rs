//! JSON schemas for descriptors, values, bound functions, weights,
//! configurations and verdicts.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use prodseq_core::analysis::{AnalysisConfig, SearchMode, TraceRow, Uniformity, WeightAlignment};
use prodseq_core::concrete::{BoundedSeq, CirclePoint, PadicInt, Permutation};
use prodseq_core::{
    BoundFunction, BoundTail, ExtNat, Factors, GroupDescriptor, IntWeightSeq, Value, Verdict, WeightTail, Witness,
};

use crate::LabError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GroupJson {
    Padic { p: u64, depth: usize },
    Circle,
    IntPadicTopology { p: u64 },
    Cyclic { n: u64 },
    SymFin,
    Product { factors: FactorsJson },
    BoundedIntSeq { depth: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum FactorsJson {
    Cyclic(Vec<u64>),
    Power { factor: Box<GroupJson>, len: usize },
    Mixed(Vec<GroupJson>),
}

impl GroupJson {
    pub fn to_descriptor(&self) -> Result<GroupDescriptor, LabError> {
        let g = match self {
            GroupJson::Padic { p, depth } => GroupDescriptor::Padic { p: *p, depth: *depth },
            GroupJson::Circle => GroupDescriptor::Circle,
            GroupJson::IntPadicTopology { p } => GroupDescriptor::IntTauP { p: *p },
            GroupJson::Cyclic { n } => GroupDescriptor::Cyclic { n: *n },
            GroupJson::SymFin => GroupDescriptor::SymFin,
            GroupJson::Product { factors } => GroupDescriptor::Product(match factors {
                FactorsJson::Cyclic(m) => Factors::Cyclic(m.clone()),
                FactorsJson::Power { factor, len } => {
                    Factors::Power { factor: Box::new(factor.to_descriptor()?), len: *len }
                }
                FactorsJson::Mixed(f) => {
                    Factors::Mixed(f.iter().map(GroupJson::to_descriptor).collect::<Result<_, _>>()?)
                }
            }),
            GroupJson::BoundedIntSeq { depth } => GroupDescriptor::BoundedIntSeq { depth: *depth },
        };
        g.validate()?;
        Ok(g)
    }

    pub fn from_descriptor(g: &GroupDescriptor) -> Self {
        match g {
            GroupDescriptor::Padic { p, depth } => GroupJson::Padic { p: *p, depth: *depth },
            GroupDescriptor::Circle => GroupJson::Circle,
            GroupDescriptor::IntTauP { p } => GroupJson::IntPadicTopology { p: *p },
            GroupDescriptor::Cyclic { n } => GroupJson::Cyclic { n: *n },
            GroupDescriptor::SymFin => GroupJson::SymFin,
            GroupDescriptor::Product(f) => GroupJson::Product {
                factors: match f {
                    Factors::Cyclic(m) => FactorsJson::Cyclic(m.clone()),
                    Factors::Power { factor, len } => {
                        FactorsJson::Power { factor: Box::new(GroupJson::from_descriptor(factor)), len: *len }
                    }
                    Factors::Mixed(v) => FactorsJson::Mixed(v.iter().map(GroupJson::from_descriptor).collect()),
                },
            },
            GroupDescriptor::BoundedIntSeq { depth } => GroupJson::BoundedIntSeq { depth: *depth },
        }
    }
}

/// The descriptor with its derived `abelian` and `metric-kind` fields.
pub fn group_to_json(g: &GroupDescriptor) -> Json {
    let mut v = serde_json::to_value(GroupJson::from_descriptor(g)).expect("plain data");
    v["abelian"] = json!(g.is_abelian());
    v["metric-kind"] = json!(format!("{:?}", g.metric_kind()));
    v
}

pub fn rational_to_json(q: &BigRational) -> Json {
    json!(format!("{}/{}", q.numer(), q.denom()))
}

pub fn parse_rational(s: &str) -> Result<BigRational, LabError> {
    let q = if s.contains('/') {
        BigRational::from_str(s).ok()
    } else {
        BigInt::from_str(s).ok().map(BigRational::from_integer)
    };
    q.ok_or_else(|| LabError::Schema(format!("'{s}' is not a rational 'num/den'")))
}

pub fn value_to_json(v: &Value) -> Json {
    match v {
        Value::Padic(x) => json!(x.digits()),
        Value::Circle(x) => rational_to_json(x.value()),
        Value::Int(n) => json!(n.to_string()),
        Value::Cyclic(x) => json!(x),
        Value::Perm(p) => json!(p.pairs()),
        Value::Product(c) => Json::Array(c.iter().map(value_to_json).collect()),
        Value::Bounded(s) => json!(s.entries()),
    }
}

fn schema(path: &str, what: impl std::fmt::Display) -> LabError {
    LabError::Schema(format!("{path}: {what}"))
}

fn as_u64(j: &Json, path: &str) -> Result<u64, LabError> {
    j.as_u64().ok_or_else(|| schema(path, "expected a nonnegative integer"))
}

/// Reads a value of group `g` at `path` (used in error messages).
pub fn value_from_json(g: &GroupDescriptor, j: &Json, path: &str) -> Result<Value, LabError> {
    let arr = |j: &Json| j.as_array().cloned().ok_or_else(|| schema(path, "expected an array"));
    let v = match g {
        GroupDescriptor::Padic { p, depth } => {
            let digits = arr(j)?
                .iter()
                .enumerate()
                .map(|(i, d)| as_u64(d, &format!("{path}[{i}]")).map(|d| d as u32))
                .collect::<Result<Vec<_>, _>>()?;
            if digits.len() != *depth {
                return Err(schema(path, format!("expected {depth} digits, found {}", digits.len())));
            }
            Value::Padic(PadicInt::from_digits(*p, digits)?)
        }
        GroupDescriptor::Circle => {
            let s = j.as_str().ok_or_else(|| schema(path, "expected a rational string 'num/den'"))?;
            Value::Circle(CirclePoint::new(parse_rational(s).map_err(|e| schema(path, e))?))
        }
        GroupDescriptor::IntTauP { .. } => {
            let n = match j {
                Json::String(s) => BigInt::from_str(s).map_err(|_| schema(path, "expected an integer"))?,
                Json::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| schema(path, "expected an integer"))?,
                _ => return Err(schema(path, "expected an integer")),
            };
            Value::Int(n)
        }
        GroupDescriptor::Cyclic { .. } => Value::Cyclic(as_u64(j, path)?),
        GroupDescriptor::SymFin => {
            let pairs = arr(j)?
                .iter()
                .enumerate()
                .map(|(i, pr)| {
                    let p = format!("{path}[{i}]");
                    match pr.as_array().map(Vec::as_slice) {
                        Some([x, y]) => Ok((as_u64(x, &p)? as usize, as_u64(y, &p)? as usize)),
                        _ => Err(schema(&p, "expected a pair [x, y]")),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            Value::Perm(Permutation::from_pairs(&pairs)?)
        }
        GroupDescriptor::Product(f) => {
            let coords = arr(j)?;
            if coords.len() != f.len() {
                return Err(schema(path, format!("expected {} coordinates, found {}", f.len(), coords.len())));
            }
            Value::Product(
                coords
                    .iter()
                    .enumerate()
                    .map(|(i, c)| value_from_json(&f.factor(i), c, &format!("{path}[{i}]")))
                    .collect::<Result<_, _>>()?,
            )
        }
        GroupDescriptor::BoundedIntSeq { depth } => {
            let entries = arr(j)?
                .iter()
                .enumerate()
                .map(|(i, e)| e.as_i64().ok_or_else(|| schema(&format!("{path}[{i}]"), "expected an integer")))
                .collect::<Result<Vec<_>, _>>()?;
            if entries.len() != *depth {
                return Err(schema(path, format!("expected {depth} entries, found {}", entries.len())));
            }
            Value::Bounded(BoundedSeq::new(entries))
        }
    };
    g.check(&v)?;
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OmegaTag {
    Omega,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExtNatJson {
    Fin(u64),
    Omega(OmegaTag),
}

impl From<ExtNatJson> for ExtNat {
    fn from(e: ExtNatJson) -> Self {
        match e {
            ExtNatJson::Fin(n) => ExtNat::Fin(n),
            ExtNatJson::Omega(_) => ExtNat::Omega,
        }
    }
}

impl From<ExtNat> for ExtNatJson {
    fn from(e: ExtNat) -> Self {
        match e {
            ExtNat::Fin(n) => ExtNatJson::Fin(n),
            ExtNat::Omega => ExtNatJson::Omega(OmegaTag::Omega),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum TailRuleJson {
    Constant(u64),
    Omega,
    IdentityPlus(i64),
    Periodic(Vec<ExtNatJson>),
    /// Explicit values followed by a declared default.
    Table {
        values: Vec<ExtNatJson>,
        default: ExtNatJson,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct BoundFunctionJson {
    #[serde(default)]
    pub prefix: Vec<ExtNatJson>,
    pub tail_rule: TailRuleJson,
}

impl BoundFunctionJson {
    pub fn to_bound(&self) -> Result<BoundFunction, LabError> {
        let mut prefix: Vec<ExtNat> = self.prefix.iter().map(|&e| e.into()).collect();
        let tail = match &self.tail_rule {
            TailRuleJson::Constant(c) => BoundTail::Constant(*c),
            TailRuleJson::Omega => BoundTail::Omega,
            TailRuleJson::IdentityPlus(c) => BoundTail::IdentityPlus(*c),
            TailRuleJson::Periodic(p) => BoundTail::Periodic(p.iter().map(|&e| e.into()).collect()),
            TailRuleJson::Table { values, default } => {
                prefix.extend(values.iter().map(|&e| ExtNat::from(e)));
                match ExtNat::from(*default) {
                    ExtNat::Fin(c) => BoundTail::Constant(c),
                    ExtNat::Omega => BoundTail::Omega,
                }
            }
        };
        Ok(BoundFunction::new(prefix, tail)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum WeightTailJson {
    #[default]
    Zero,
    Constant(i64),
    Periodic(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct IntWeightSeqJson {
    #[serde(default)]
    pub prefix: Vec<i64>,
    #[serde(default)]
    pub tail: WeightTailJson,
}

impl IntWeightSeqJson {
    pub fn to_weights(&self) -> Result<IntWeightSeq, LabError> {
        let tail = match &self.tail {
            WeightTailJson::Zero => WeightTail::Zero,
            WeightTailJson::Constant(c) => WeightTail::Constant(*c),
            WeightTailJson::Periodic(p) => WeightTail::Periodic(p.clone()),
        };
        Ok(IntWeightSeq { prefix: self.prefix.clone(), tail })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct PPowerJson {
    pub p: u64,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ToleranceJson {
    Rational(String),
    PPower {
        #[serde(rename = "p-power")]
        p_power: PPowerJson,
    },
}

impl ToleranceJson {
    pub fn to_rational(&self) -> Result<BigRational, LabError> {
        match self {
            ToleranceJson::Rational(s) => parse_rational(s),
            ToleranceJson::PPower { p_power } => Ok(AnalysisConfig::power_tolerance(p_power.p, p_power.k)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum UniformityJson {
    #[default]
    Left,
    TwoSided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum AlignmentJson {
    #[default]
    Reindexed,
    Positional,
}

fn default_trials() -> usize {
    20
}
fn default_threshold() -> u64 {
    4096
}
fn default_cap() -> i64 {
    1000
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct CfgJson {
    pub tolerance: ToleranceJson,
    pub horizon: usize,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default = "default_threshold")]
    pub exhaustive_threshold: u64,
    #[serde(default = "default_cap")]
    pub omega_cap: i64,
    #[serde(default)]
    pub uniformity: UniformityJson,
    #[serde(default)]
    pub alignment: AlignmentJson,
}

impl CfgJson {
    /// `fallback_seed` is used when the file carries none.
    pub fn to_config(&self, fallback_seed: Option<u64>) -> Result<AnalysisConfig, LabError> {
        let seed = self.seed.or(fallback_seed).ok_or_else(|| {
            LabError::Schema("cfg.seed: missing (set it in the file or via --seed / PRODSEQ_SEED)".into())
        })?;
        let cfg = AnalysisConfig {
            tolerance: self.tolerance.to_rational()?,
            horizon: self.horizon,
            trials: self.trials,
            seed,
            exhaustive_threshold: self.exhaustive_threshold,
            omega_cap: self.omega_cap,
            uniformity: match self.uniformity {
                UniformityJson::Left => Uniformity::Left,
                UniformityJson::TwoSided => Uniformity::TwoSided,
            },
            alignment: match self.alignment {
                AlignmentJson::Reindexed => WeightAlignment::Reindexed,
                AlignmentJson::Positional => WeightAlignment::Positional,
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

pub fn witness_to_json(w: &Witness) -> Json {
    match w {
        Witness::Settle { index } => json!({"type": "settle", "index": index}),
        Witness::Pair { l, m, distance } => {
            json!({"type": "pair", "l": l, "m": m, "distance": rational_to_json(distance)})
        }
        Witness::Index(n) => json!({"type": "index", "index": n}),
        Witness::Coordinate(c) => json!({"type": "coordinate", "coordinate": c}),
        Witness::Cell { row, col } => json!({"type": "cell", "row": row, "col": col}),
        Witness::Escape { bound, coordinate } => json!({"type": "escape", "bound": bound, "coordinate": coordinate}),
        Witness::Trial { trial, detail } => json!({"type": "trial", "trial": trial, "detail": detail}),
    }
}

pub fn verdict_to_json(v: &Verdict) -> Json {
    json!({
        "status": v.status.as_str(),
        "witness": v.witness.as_ref().map(witness_to_json),
        "horizon": v.horizon,
        "tolerance": rational_to_json(&v.tolerance),
    })
}

pub fn trace_row_to_json(r: &TraceRow) -> Json {
    json!({"index": r.index, "l": r.l, "m": r.m, "distance": rational_to_json(&r.distance)})
}

pub fn mode_to_json(m: &SearchMode) -> Json {
    match m {
        SearchMode::Direct => json!({"type": "direct"}),
        SearchMode::Exhaustive { assignments } => json!({"type": "exhaustive", "assignments": assignments}),
        SearchMode::Randomized { trials } => json!({"type": "randomized", "trials": trials}),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse<T: serde::de::DeserializeOwned>(s: &str) -> Result<T, String> {
        let de = &mut serde_json::Deserializer::from_str(s);
        serde_path_to_error::deserialize(de).map_err(|e| e.path().to_string())
    }

    #[test]
    fn groups_round_trip() {
        let groups = [
            GroupDescriptor::padic(3, 5).unwrap(),
            GroupDescriptor::Circle,
            GroupDescriptor::int_tau_p(5).unwrap(),
            GroupDescriptor::SymFin,
            GroupDescriptor::cyclic_power(3, 4),
            GroupDescriptor::Product(Factors::Cyclic(vec![3, 5, 7])),
            GroupDescriptor::BoundedIntSeq { depth: 3 },
        ];
        for g in groups {
            let text = serde_json::to_string(&GroupJson::from_descriptor(&g)).unwrap();
            let back: GroupJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_descriptor().unwrap(), g);
        }
        let bad: GroupJson = serde_json::from_str(r#"{"kind":"padic","p":4,"depth":3}"#).unwrap();
        assert!(bad.to_descriptor().is_err());
    }

    #[test]
    fn values_round_trip() {
        let cases = [
            (GroupDescriptor::padic(3, 4).unwrap(), json!([2, 2, 2, 2])),
            (GroupDescriptor::Circle, json!("3/4")),
            (GroupDescriptor::int_tau_p(3).unwrap(), json!("-81")),
            (GroupDescriptor::SymFin, json!([[0, 1], [1, 2], [2, 0]])),
            (GroupDescriptor::cyclic_power(5, 3), json!([1, 0, 4])),
            (GroupDescriptor::BoundedIntSeq { depth: 3 }, json!([1, -3, 0])),
        ];
        for (g, j) in cases {
            let v = value_from_json(&g, &j, "v").unwrap();
            assert_eq!(value_to_json(&v), j);
        }
        assert!(value_from_json(&GroupDescriptor::padic(3, 4).unwrap(), &json!([1, 3, 0, 0]), "v").is_err());
        assert!(value_from_json(&GroupDescriptor::SymFin, &json!([[0, 1]]), "v").is_err());
    }

    #[test]
    fn bound_functions_and_paths() {
        let f: BoundFunctionJson = parse(r#"{"prefix":[1,"omega"],"tail-rule":{"identity-plus":2}}"#).unwrap();
        let f = f.to_bound().unwrap();
        assert_eq!(f.eval(1), ExtNat::Omega);
        assert_eq!(f.eval(5), ExtNat::Fin(7));
        let t: BoundFunctionJson = parse(r#"{"tail-rule":{"table":{"values":[3,4],"default":"omega"}}}"#).unwrap();
        assert_eq!(t.to_bound().unwrap().eval(1), ExtNat::Fin(4));
        assert_eq!(t.to_bound().unwrap().eval(2), ExtNat::Omega);
        let err = parse::<BoundFunctionJson>(r#"{"tail-rule":{"bogus":1}}"#).unwrap_err();
        assert_eq!(err, "tail-rule");
    }

    #[test]
    fn tolerances() {
        let t: ToleranceJson = parse(r#""1/1024""#).unwrap();
        assert_eq!(t.to_rational().unwrap(), BigRational::new(1.into(), 1024.into()));
        let t: ToleranceJson = parse(r#"{"p-power":{"p":3,"k":2}}"#).unwrap();
        assert_eq!(t.to_rational().unwrap(), BigRational::new(1.into(), 9.into()));
    }
}
