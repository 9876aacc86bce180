//! Scenario files: a JSON description of a geometric object (builder
//! invocation, explicit fan, ray relation, or cyclic quotient) plus a list
//! of checks against the engine's canonical serializations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::builders;
use crate::divisor::{cartier_test, class_group, picard_group, CartierResult, DivisorClass,
    ToricDivisor};
use crate::error::{Result, ToricError};
use crate::fan::Fan;
use crate::flip::{analyze_flip, contracted_locus, LocusLabel, ReidRelation, Side};
use crate::nef::{fano_status, mori_cone, nef_cone, positivity};
use crate::report::{CheckOutcome, Report};
use crate::singularity::{classify, q_gorenstein_data, quotient_class_as_singularity, reid_tai,
    CyclicQuotient};

pub const SCENARIO_SCHEMA: &str = "toric-scenario/1";

/// Largest integer emitted as a bare JSON number; larger values become
/// decimal strings so consumers cannot lose precision.
const MAX_SAFE: i64 = 9_007_199_254_740_991;

#[derive(Debug, Clone)]
pub enum BuilderSpec {
    ProjectiveSpace { n: usize },
    Product { factors: Vec<BuilderSpec> },
    WeightedProjective { weights: Vec<u64> },
    BlowupLinearSubspace { n: usize, k: usize },
    SplitBundleProjectivization { base_dim: usize, twists: Vec<i64> },
    CyclicQuotientCone { order: u64, weights: Vec<u64> },
}

impl BuilderSpec {
    pub fn build(&self) -> Result<Fan> {
        match self {
            BuilderSpec::ProjectiveSpace { n } => builders::projective_space(*n),
            BuilderSpec::Product { factors } => {
                if factors.len() < 2 {
                    return Err(ToricError::Scenario(
                        "product needs at least two factors".into(),
                    ));
                }
                let mut fan = factors[0].build()?;
                for f in &factors[1..] {
                    fan = builders::product(&fan, &f.build()?)?;
                }
                Ok(fan)
            }
            BuilderSpec::WeightedProjective { weights } => {
                Ok(builders::weighted_projective(weights)?.fan)
            }
            BuilderSpec::BlowupLinearSubspace { n, k } => {
                builders::blowup_linear_subspace(*n, *k)
            }
            BuilderSpec::SplitBundleProjectivization { base_dim, twists } => {
                builders::split_bundle_projectivization(*base_dim, twists)
            }
            BuilderSpec::CyclicQuotientCone { order, weights } => {
                let q = CyclicQuotient::new(*order, weights)?;
                builders::cyclic_quotient_cone(&q)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub enum Source {
    Builder(BuilderSpec),
    ExplicitFan {
        ambient_rank: usize,
        rays: Vec<Vec<BigInt>>,
        max_cones: Vec<Vec<usize>>,
    },
    Relation {
        positive: Vec<(Option<Vec<BigInt>>, u64)>,
        negative: Vec<(Option<Vec<BigInt>>, u64)>,
        ambient_rank: Option<usize>,
    },
    Quotient { order: u64, weights: Vec<u64> },
}

impl Source {
    pub fn fan(&self) -> Result<Fan> {
        match self {
            Source::Builder(spec) => spec.build(),
            Source::ExplicitFan { ambient_rank, rays, max_cones } => {
                Fan::new(*ambient_rank, rays.clone(), max_cones.clone())
            }
            Source::Quotient { order, weights } => {
                let q = CyclicQuotient::new(*order, weights)?;
                builders::cyclic_quotient_cone(&q)
            }
            Source::Relation { .. } => Err(ToricError::Scenario(
                "this operation needs a fan; ray relations support the flip operations".into(),
            )),
        }
    }

    pub fn relation(&self) -> Result<ReidRelation> {
        match self {
            Source::Relation { positive, negative, ambient_rank } => {
                let explicit = positive.iter().chain(negative).any(|(r, _)| r.is_some());
                if explicit {
                    if positive.iter().chain(negative).any(|(r, _)| r.is_none()) {
                        return Err(ToricError::Scenario(
                            "give rays for either all relation entries or none".into(),
                        ));
                    }
                    let rank = ambient_rank.ok_or_else(|| {
                        ToricError::Scenario("explicit relation rays need ambient_rank".into())
                    })?;
                    let pos = positive
                        .iter()
                        .map(|(r, w)| (r.clone().unwrap(), BigInt::from(*w)))
                        .collect();
                    let neg = negative
                        .iter()
                        .map(|(r, w)| (r.clone().unwrap(), BigInt::from(*w)))
                        .collect();
                    ReidRelation::new(rank, pos, neg)
                } else {
                    let pos: Vec<u64> = positive.iter().map(|(_, w)| *w).collect();
                    let neg: Vec<u64> = negative.iter().map(|(_, w)| *w).collect();
                    ReidRelation::from_weights(&pos, &neg)
                }
            }
            _ => Err(ToricError::Scenario(
                "this operation needs a ray relation source".into(),
            )),
        }
    }

    pub fn quotient(&self) -> Result<CyclicQuotient> {
        match self {
            Source::Quotient { order, weights } => CyclicQuotient::new(*order, weights),
            _ => Err(ToricError::Scenario(
                "this operation needs a cyclic quotient source".into(),
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub id: String,
    pub op: String,
    pub args: Value,
    pub path: Option<String>,
    pub expected: Value,
    pub anchor: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub tags: Vec<String>,
    pub source: Source,
    pub checks: Vec<Check>,
}

// ---------------------------------------------------------------------------
// JSON helpers
// ---------------------------------------------------------------------------

pub fn big_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if (-MAX_SAFE..=MAX_SAFE).contains(&v) => json!(v),
        _ => json!(x.to_string()),
    }
}

pub fn bigs_to_json(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(big_to_json).collect())
}

pub fn rational_to_json(q: &BigRational) -> Value {
    if q.denom().is_one() {
        big_to_json(q.numer())
    } else {
        json!(format!("{}/{}", q.numer(), q.denom()))
    }
}

fn json_to_big(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| ToricError::Scenario(format!("not an integer: {n}"))),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| ToricError::Scenario(format!("not an integer string: {s}"))),
        _ => Err(ToricError::Scenario(format!("expected integer, got {v}"))),
    }
}

fn field<'a>(map: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    map.get(key)
        .ok_or_else(|| ToricError::Scenario(format!("missing field `{key}`")))
}

fn as_object(v: &Value, what: &str) -> Result<Map<String, Value>> {
    v.as_object()
        .cloned()
        .ok_or_else(|| ToricError::Scenario(format!("{what} must be an object")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| ToricError::Scenario(format!("{what} must be a nonnegative integer")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| ToricError::Scenario(format!("{what} must be a nonnegative integer")))
}

fn as_int_vec(v: &Value, what: &str) -> Result<Vec<BigInt>> {
    let arr = v
        .as_array()
        .ok_or_else(|| ToricError::Scenario(format!("{what} must be an array")))?;
    arr.iter().map(json_to_big).collect()
}

fn as_u64_vec(v: &Value, what: &str) -> Result<Vec<u64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| ToricError::Scenario(format!("{what} must be an array")))?;
    arr.iter().map(|x| as_u64(x, what)).collect()
}

fn as_usize_vec(v: &Value, what: &str) -> Result<Vec<usize>> {
    let arr = v
        .as_array()
        .ok_or_else(|| ToricError::Scenario(format!("{what} must be an array")))?;
    arr.iter().map(|x| as_usize(x, what)).collect()
}

fn as_ray_list(v: &Value, what: &str) -> Result<Vec<Vec<BigInt>>> {
    let arr = v
        .as_array()
        .ok_or_else(|| ToricError::Scenario(format!("{what} must be an array of rays")))?;
    arr.iter().map(|r| as_int_vec(r, what)).collect()
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

pub fn parse_builder(v: &Value) -> Result<BuilderSpec> {
    let map = as_object(v, "builder")?;
    let name = field(&map, "name")?
        .as_str()
        .ok_or_else(|| ToricError::Scenario("builder name must be a string".into()))?;
    match name {
        "projective_space" => Ok(BuilderSpec::ProjectiveSpace {
            n: as_usize(field(&map, "n")?, "n")?,
        }),
        "product" => {
            let factors = field(&map, "factors")?
                .as_array()
                .ok_or_else(|| ToricError::Scenario("factors must be an array".into()))?
                .iter()
                .map(parse_builder)
                .collect::<Result<Vec<_>>>()?;
            Ok(BuilderSpec::Product { factors })
        }
        "weighted_projective" => Ok(BuilderSpec::WeightedProjective {
            weights: as_u64_vec(field(&map, "weights")?, "weights")?,
        }),
        "blowup_linear_subspace" => Ok(BuilderSpec::BlowupLinearSubspace {
            n: as_usize(field(&map, "n")?, "n")?,
            k: as_usize(field(&map, "k")?, "k")?,
        }),
        "split_bundle_projectivization" => {
            let twists = field(&map, "twists")?
                .as_array()
                .ok_or_else(|| ToricError::Scenario("twists must be an array".into()))?
                .iter()
                .map(|x| {
                    x.as_i64()
                        .ok_or_else(|| ToricError::Scenario("twists must be integers".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(BuilderSpec::SplitBundleProjectivization {
                base_dim: as_usize(field(&map, "base_dim")?, "base_dim")?,
                twists,
            })
        }
        "cyclic_quotient_cone" => Ok(BuilderSpec::CyclicQuotientCone {
            order: as_u64(field(&map, "order")?, "order")?,
            weights: as_u64_vec(field(&map, "weights")?, "weights")?,
        }),
        other => Err(ToricError::Scenario(format!("unknown builder `{other}`"))),
    }
}

fn parse_relation_side(v: &Value, what: &str) -> Result<Vec<(Option<Vec<BigInt>>, u64)>> {
    let arr = v
        .as_array()
        .ok_or_else(|| ToricError::Scenario(format!("{what} must be an array")))?;
    let mut out = Vec::with_capacity(arr.len());
    for item in arr {
        match item {
            Value::Number(_) => out.push((None, as_u64(item, what)?)),
            Value::Object(map) => {
                let weight = as_u64(field(map, "weight")?, "weight")?;
                let ray = match map.get("ray") {
                    Some(r) => Some(as_int_vec(r, "ray")?),
                    None => None,
                };
                out.push((ray, weight));
            }
            _ => {
                return Err(ToricError::Scenario(format!(
                    "{what} entries must be weights or {{ray, weight}} objects"
                )))
            }
        }
    }
    Ok(out)
}

pub fn parse_source(v: &Value) -> Result<Source> {
    let map = as_object(v, "source")?;
    if let Some(b) = map.get("builder") {
        return Ok(Source::Builder(parse_builder(b)?));
    }
    if let Some(f) = map.get("fan") {
        let fmap = as_object(f, "fan")?;
        return Ok(Source::ExplicitFan {
            ambient_rank: as_usize(field(&fmap, "ambient_rank")?, "ambient_rank")?,
            rays: as_ray_list(field(&fmap, "rays")?, "rays")?,
            max_cones: {
                let arr = field(&fmap, "max_cones")?
                    .as_array()
                    .ok_or_else(|| ToricError::Scenario("max_cones must be an array".into()))?;
                arr.iter()
                    .map(|c| as_usize_vec(c, "max_cones"))
                    .collect::<Result<Vec<_>>>()?
            },
        });
    }
    if let Some(r) = map.get("reid_relation") {
        let rmap = as_object(r, "reid_relation")?;
        let positive = match rmap.get("positive") {
            Some(p) => parse_relation_side(p, "positive")?,
            None => parse_relation_side(field(&rmap, "positive_weights")?, "positive_weights")?,
        };
        let negative = match rmap.get("negative") {
            Some(p) => parse_relation_side(p, "negative")?,
            None => parse_relation_side(field(&rmap, "negative_weights")?, "negative_weights")?,
        };
        let ambient_rank = match rmap.get("ambient_rank") {
            Some(v) => Some(as_usize(v, "ambient_rank")?),
            None => None,
        };
        return Ok(Source::Relation { positive, negative, ambient_rank });
    }
    if let Some(q) = map.get("cyclic_quotient") {
        let qmap = as_object(q, "cyclic_quotient")?;
        return Ok(Source::Quotient {
            order: as_u64(field(&qmap, "order")?, "order")?,
            weights: as_u64_vec(field(&qmap, "weights")?, "weights")?,
        });
    }
    Err(ToricError::Scenario(
        "source must contain one of: builder, fan, reid_relation, cyclic_quotient".into(),
    ))
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| ToricError::Scenario(format!("malformed JSON: {e}")))?;
    let map = as_object(&v, "scenario")?;
    if let Some(schema) = map.get("schema") {
        if schema.as_str() != Some(SCENARIO_SCHEMA) {
            return Err(ToricError::Scenario(format!(
                "unsupported schema {schema}; this engine reads {SCENARIO_SCHEMA}"
            )));
        }
    }
    let name = field(&map, "name")?
        .as_str()
        .ok_or_else(|| ToricError::Scenario("name must be a string".into()))?
        .to_string();
    let tags = match map.get("tags") {
        Some(t) => t
            .as_array()
            .ok_or_else(|| ToricError::Scenario("tags must be an array".into()))?
            .iter()
            .map(|s| {
                s.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| ToricError::Scenario("tags must be strings".into()))
            })
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let source = parse_source(field(&map, "source")?)?;
    let mut checks = Vec::new();
    if let Some(arr) = map.get("checks") {
        let arr = arr
            .as_array()
            .ok_or_else(|| ToricError::Scenario("checks must be an array".into()))?;
        for (i, c) in arr.iter().enumerate() {
            let cmap = as_object(c, "check")?;
            let op = field(&cmap, "op")?
                .as_str()
                .ok_or_else(|| ToricError::Scenario("check op must be a string".into()))?
                .to_string();
            let id = match cmap.get("id") {
                Some(v) => v
                    .as_str()
                    .ok_or_else(|| ToricError::Scenario("check id must be a string".into()))?
                    .to_string(),
                None => format!("check-{i:03}"),
            };
            checks.push(Check {
                id,
                op,
                args: cmap.get("args").cloned().unwrap_or(Value::Null),
                path: cmap.get("path").and_then(|p| p.as_str()).map(str::to_string),
                expected: field(&cmap, "expected")?.clone(),
                anchor: cmap.get("anchor").and_then(|a| a.as_str()).map(str::to_string),
            });
        }
    }
    Ok(Scenario { name, tags, source, checks })
}

// ---------------------------------------------------------------------------
// Operation dispatch
// ---------------------------------------------------------------------------

fn divisor_from_args(fan: &Fan, args: &Value) -> Result<ToricDivisor> {
    let map = as_object(args, "args")?;
    let coeffs = as_int_vec(field(&map, "divisor")?, "divisor")?;
    ToricDivisor::new(fan, coeffs)
}

fn class_to_json(c: &DivisorClass) -> Value {
    json!({ "free": bigs_to_json(&c.free), "torsion": bigs_to_json(&c.torsion) })
}

fn locus_to_json(l: &LocusLabel) -> Value {
    json!({
        "raw_weights": bigs_to_json(&l.raw_weights),
        "weights": bigs_to_json(&l.weights),
        "label": l.display(),
        "dim": l.dim,
    })
}

fn singularity_to_json(s: &crate::singularity::SingularityClass) -> Value {
    json!({
        "class": s.class.name(),
        "gorenstein_index": big_to_json(&s.gorenstein_index),
        "q_factorial": s.q_factorial,
    })
}

fn wall_to_json(w: &crate::fan::Wall) -> Value {
    json!({ "cones": [w.cone_a, w.cone_b], "rays": w.face_rays })
}

/// All check operations, by name. Every name resolves to exactly one
/// engine operation.
pub const OPERATIONS: &[&str] = &[
    "validate_fan",
    "fan_info",
    "is_complete",
    "regularity_profile",
    "walls",
    "classify",
    "q_gorenstein",
    "class_group",
    "picard_group",
    "cartier_test",
    "positivity",
    "fano_status",
    "mori_cone",
    "nef_cone",
    "modification_type",
    "contracted_locus",
    "analyze_flip",
    "reid_tai",
    "quotient_agreement",
];

/// Run one operation against a source and serialize the result canonically.
pub fn run_operation(source: &Source, op: &str, args: &Value) -> Result<Value> {
    match op {
        "validate_fan" => {
            let violations = match source {
                Source::ExplicitFan { ambient_rank, rays, max_cones } => {
                    Fan::validate(*ambient_rank, rays.clone(), max_cones.clone())
                }
                _ => {
                    let fan = source.fan()?;
                    Fan::validate(
                        fan.ambient_rank(),
                        fan.rays().to_vec(),
                        fan.max_cones().to_vec(),
                    )
                }
            };
            Ok(json!({ "ok": violations.is_empty(), "violations": violations }))
        }
        "fan_info" => {
            let fan = source.fan()?;
            Ok(json!({
                "ambient_rank": fan.ambient_rank(),
                "ray_count": fan.ray_count(),
                "max_cone_count": fan.max_cones().len(),
                "rays": Value::Array(fan.rays().iter().map(|r| bigs_to_json(r)).collect()),
                "max_cones": fan.max_cones(),
                "simplicial": fan.is_simplicial(),
                "complete": fan.is_complete(),
            }))
        }
        "is_complete" => Ok(json!(source.fan()?.is_complete())),
        "regularity_profile" => {
            let fan = source.fan()?;
            let prof = fan.regularity_profile();
            let n = fan.ambient_rank();
            Ok(json!({
                "dims": prof.dims.iter().map(|d| json!({
                    "dim": d.dim,
                    "all_smooth": d.all_smooth,
                    "all_simplicial": d.all_simplicial,
                })).collect::<Vec<_>>(),
                "smooth_in_codim": (1..=n).map(|k| prof.smooth_in_codim(k)).collect::<Vec<_>>(),
                "qfactorial_in_codim": (1..=n).map(|k| prof.qfactorial_in_codim(k)).collect::<Vec<_>>(),
            }))
        }
        "walls" => {
            let fan = source.fan()?;
            let walls = fan.walls()?;
            Ok(json!({
                "count": walls.len(),
                "walls": walls.iter().map(wall_to_json).collect::<Vec<_>>(),
            }))
        }
        "classify" => {
            let fan = source.fan()?;
            Ok(singularity_to_json(&classify(&fan)?))
        }
        "q_gorenstein" => {
            let fan = source.fan()?;
            let data = q_gorenstein_data(&fan)?;
            Ok(json!({
                "gorenstein_index": big_to_json(&data.gorenstein_index),
                "cone_indices": data.cones.iter().map(|c| big_to_json(&c.index)).collect::<Vec<_>>(),
                "level_covectors": data.cones.iter().map(|c| {
                    Value::Array(c.level_covector.iter().map(rational_to_json).collect())
                }).collect::<Vec<_>>(),
            }))
        }
        "class_group" => {
            let fan = source.fan()?;
            let cl = class_group(&fan)?;
            Ok(json!({
                "group": cl.structure().to_string(),
                "free_rank": cl.structure().free_rank,
                "torsion": bigs_to_json(&cl.structure().torsion),
                "ray_classes": cl.ray_classes().iter().map(class_to_json).collect::<Vec<_>>(),
            }))
        }
        "picard_group" => {
            let fan = source.fan()?;
            let pic = picard_group(&fan)?;
            Ok(json!({
                "group": pic.structure.to_string(),
                "free_rank": pic.structure.free_rank,
                "torsion": bigs_to_json(&pic.structure.torsion),
            }))
        }
        "cartier_test" => {
            let fan = source.fan()?;
            let d = divisor_from_args(&fan, args)?;
            Ok(match cartier_test(&fan, &d) {
                CartierResult::Cartier => json!({ "result": "Cartier", "index": 1 }),
                CartierResult::QCartierOfIndex(m) => {
                    json!({ "result": "QCartier", "index": big_to_json(&m) })
                }
                CartierResult::NotQCartier { cone } => {
                    json!({ "result": "NotQCartier", "witness_cone": cone })
                }
            })
        }
        "positivity" => {
            let fan = source.fan()?;
            let d = divisor_from_args(&fan, args)?;
            let rep = positivity(&fan, &d)?;
            let mut out = Map::new();
            out.insert("verdict".into(), json!(rep.verdict.name()));
            if let Some((wall, value)) = rep.witness {
                out.insert("witness_wall".into(), wall_to_json(&wall));
                out.insert("witness_value".into(), big_to_json(&value));
            }
            Ok(Value::Object(out))
        }
        "fano_status" => {
            let fan = source.fan()?;
            let rep = fano_status(&fan)?;
            Ok(json!({
                "status": rep.status.name(),
                "polytope_vertex_count": rep.polytope_vertices.len(),
                "polytope_vertices": rep.polytope_vertices.iter().map(|v| {
                    Value::Array(v.iter().map(rational_to_json).collect())
                }).collect::<Vec<_>>(),
            }))
        }
        "mori_cone" => {
            let fan = source.fan()?;
            let mori = mori_cone(&fan)?;
            Ok(json!({
                "extremal_ray_count": mori.cone.rays().len(),
                "extremal_rays": mori.cone.rays().iter().map(|r| bigs_to_json(r)).collect::<Vec<_>>(),
                "wall_class_count": mori.classes.len(),
            }))
        }
        "nef_cone" => {
            let fan = source.fan()?;
            let nef = nef_cone(&fan)?;
            Ok(json!({
                "generator_count": nef.cone.rays().len(),
                "generators": nef.cone.rays().iter().map(|r| bigs_to_json(r)).collect::<Vec<_>>(),
                "generator_divisors": nef.generator_divisors.iter().map(|d| bigs_to_json(d)).collect::<Vec<_>>(),
            }))
        }
        "modification_type" => {
            let rel = source.relation()?;
            Ok(json!({ "type": rel.modification_type().name() }))
        }
        "contracted_locus" => {
            let rel = source.relation()?;
            Ok(json!({
                "x": locus_to_json(&contracted_locus(&rel, Side::X)?),
                "y": locus_to_json(&contracted_locus(&rel, Side::Y)?),
            }))
        }
        "analyze_flip" => {
            let rel = source.relation()?;
            let rep = analyze_flip(&rel)?;
            let regs = |list: &[crate::cone::ConeRegularity]| -> Value {
                Value::Array(
                    list.iter()
                        .map(|r| match r {
                            crate::cone::ConeRegularity::Smooth => json!(1),
                            crate::cone::ConeRegularity::SimplicialOfIndex(i) => big_to_json(i),
                            crate::cone::ConeRegularity::NonSimplicial => json!("non-simplicial"),
                        })
                        .collect(),
                )
            };
            let mut out = Map::new();
            out.insert("type".into(), json!(rep.modification.name()));
            out.insert("k_degree".into(), big_to_json(&rep.k_degree));
            out.insert("x_locus".into(), locus_to_json(&rep.x_locus));
            out.insert("y_locus".into(), locus_to_json(&rep.y_locus));
            out.insert("x_class".into(), singularity_to_json(&rep.x_class));
            out.insert("y_class".into(), singularity_to_json(&rep.y_class));
            out.insert("x_cone_multiplicities".into(), regs(&rep.x_cone_regularities));
            out.insert("y_cone_multiplicities".into(), regs(&rep.y_cone_regularities));
            out.insert("certificate_found".into(), json!(rep.certificate.is_some()));
            if let Some(cert) = &rep.certificate {
                out.insert(
                    "certificate".into(),
                    json!({
                        "divisor": bigs_to_json(&cert.divisor),
                        "x_wall_values": bigs_to_json(&cert.x_wall_values),
                        "y_wall_values": bigs_to_json(&cert.y_wall_values),
                    }),
                );
            }
            Ok(Value::Object(out))
        }
        "reid_tai" => {
            let q = source.quotient()?;
            let res = reid_tai(&q);
            let mut out = Map::new();
            out.insert("class".into(), json!(res.class.name()));
            out.insert("gorenstein".into(), json!(res.gorenstein));
            if let Some((num, den)) = &res.min_age {
                out.insert(
                    "min_age".into(),
                    rational_to_json(&BigRational::new(num.clone(), den.clone())),
                );
            }
            Ok(Value::Object(out))
        }
        "quotient_agreement" => {
            let q = source.quotient()?;
            let rt = reid_tai(&q);
            let fan = builders::cyclic_quotient_cone(&q)?;
            let cone_class = classify(&fan)?;
            let agree = quotient_class_as_singularity(rt.class) == cone_class.class
                || (cone_class.class == crate::singularity::SingularityType::Smooth
                    && rt.class == crate::singularity::QuotientClass::Terminal);
            Ok(json!({
                "reid_tai": rt.class.name(),
                "cone_classify": cone_class.class.name(),
                "agree": agree,
            }))
        }
        other => Err(ToricError::UnknownOperation(other.to_string())),
    }
}

/// Execute every check of a scenario.
pub fn run_scenario(scenario: &Scenario) -> Report {
    let mut outcomes = Vec::with_capacity(scenario.checks.len());
    for check in &scenario.checks {
        let computed_full = match run_operation(&scenario.source, &check.op, &check.args) {
            Ok(v) => v,
            Err(e) => json!({ "error": e.to_string() }),
        };
        let computed = match &check.path {
            Some(p) => computed_full.pointer(p).cloned().unwrap_or(Value::Null),
            None => computed_full,
        };
        let pass = computed == check.expected;
        outcomes.push(CheckOutcome {
            scenario: scenario.name.clone(),
            id: check.id.clone(),
            op: check.op.clone(),
            anchor: check.anchor.clone(),
            path: check.path.clone(),
            expected: check.expected.clone(),
            computed,
            pass,
        });
    }
    Report::new(&scenario.name, outcomes)
}
