//! JSON input schema and report types for the command-line surface.
//!
//! Input schema for a polyhedral divisor:
//!
//! ```json
//! {
//!   "rank": 2,
//!   "tail": { "rays": [[1, 0], [0, 1]] },
//!   "base": { "kind": "proj_line" },
//!   "coeffs": [ { "at": "inf", "vertices": [[1, 1]] } ]
//! }
//! ```
//!
//! Numbers are JSON integers or `"p/q"` strings; divisor points are strings
//! (a rational number, `"inf"`, or `"label:<name>"`). Reports mirror the
//! schema, carry a `"schema": 1 field`, and serialize deterministically:
//! struct fields in declaration order, vectors sorted by construction, all
//! rationals as strings.


use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{format_rat, parse_rat, primitive_from_rat, Int, Rat};
use crate::cone::Cone;
use crate::curve::{Base, DimReport, DivisorPoint, QDivisor, TriState};
use crate::divisor::{
    Element, GeneratorReport, GradedPiece, HomogeneousElement, PolyhedralDivisor, ProperReport,
};
use crate::error::{Error, Result};
use crate::invariants::{FmlReport, MlReport};
use crate::lattice::Space;
use crate::lnd::{ClassReport, KernelReport, PhiSpace};
use crate::polyhedron::TailedPolyhedron;


pub const SCHEMA_VERSION: u32 = 1;

/// A rational number carried as a JSON integer or `"p/q"` string; always
/// serialized as a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Num(pub Rat);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(&self.0))
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let r = match &v {
            serde_json::Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| D::Error::custom(format!("not an integer: {n}")))?;
                Rat::from_integer(Int::from(i))
            }
            serde_json::Value::String(s) => {
                parse_rat(s).map_err(|e| D::Error::custom(e.to_string()))?
            }
            other => return Err(D::Error::custom(format!("expected a number, got {other}"))),
        };
        Ok(Num(r))
    }
}

fn int_to_i64(x: &Int) -> Result<i64> {
    i64::try_from(x.clone()).map_err(|_| Error::InvalidInput("integer out of range".into()))
}

pub fn int_vec_json(v: &[Int]) -> Vec<i64> {
    v.iter()
        .map(|x| int_to_i64(x).expect("desk-scale lattice vector"))
        .collect()
}

pub fn i64_vec_int(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn rat_vec_json(v: &[Rat]) -> Vec<Num> {
    v.iter().map(|x| Num(x.clone())).collect()
}

// ---------------------------------------------------------------------------
// Input schema
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailJson {
    pub rays: Vec<Vec<Num>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub at: String,
    pub vertices: Vec<Vec<Num>>,
}

/// The polyhedral-divisor input document (also emitted by the example
/// builder, with the schema marker set).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub rank: usize,
    pub tail: TailJson,
    pub base: BaseJson,
    #[serde(default)]
    pub coeffs: Vec<CoeffJson>,
}

impl BaseJson {
    pub fn to_base(&self) -> Result<Base> {
        match (self.kind.as_str(), self.genus) {
            ("point", None) => Ok(Base::Point),
            ("affine_line", None) => Ok(Base::AffineLine),
            ("proj_line", None) => Ok(Base::ProjLine),
            ("abstract_curve", Some(genus)) => Ok(Base::AbstractCurve { genus }),
            ("abstract_curve", None) => Err(Error::InvalidInput(
                "base.kind abstract_curve needs base.genus".into(),
            )),
            (kind, Some(_)) if kind != "abstract_curve" => Err(Error::InvalidInput(format!(
                "base.kind {kind:?} does not take a genus"
            ))),
            (kind, _) => Err(Error::InvalidInput(format!(
                "unknown base.kind {kind:?} (expected point, affine_line, proj_line, or abstract_curve)"
            ))),
        }
    }

    pub fn from_base(base: Base) -> BaseJson {
        match base {
            Base::Point => BaseJson { kind: "point".into(), genus: None },
            Base::AffineLine => BaseJson { kind: "affine_line".into(), genus: None },
            Base::ProjLine => BaseJson { kind: "proj_line".into(), genus: None },
            Base::AbstractCurve { genus } => {
                BaseJson { kind: "abstract_curve".into(), genus: Some(genus) }
            }
        }
    }
}

impl DivisorJson {
    pub fn to_divisor(&self) -> Result<PolyhedralDivisor> {
        if self.rank == 0 {
            return Err(Error::InvalidInput("rank must be positive".into()));
        }
        let base = self.base.to_base()?;
        let mut rays = Vec::new();
        for (i, ray) in self.tail.rays.iter().enumerate() {
            if ray.len() != self.rank {
                return Err(Error::InvalidInput(format!(
                    "tail.rays[{i}] has {} coordinates, expected {}",
                    ray.len(),
                    self.rank
                )));
            }
            let coords: Vec<Rat> = ray.iter().map(|n| n.0.clone()).collect();
            rays.push(primitive_from_rat(&coords));
        }
        let tail = Cone::from_generators(Space::N, self.rank, &rays)?;
        if !tail.is_pointed() {
            return Err(Error::InvalidInput("tail cone must be pointed".into()));
        }
        let mut coeffs = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let at = DivisorPoint::parse(&c.at)?;
            if c.vertices.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "coeffs[{i}] needs at least one vertex"
                )));
            }
            let mut vertices = Vec::new();
            for v in &c.vertices {
                if v.len() != self.rank {
                    return Err(Error::InvalidInput(format!(
                        "coeffs[{i}] vertex has {} coordinates, expected {}",
                        v.len(),
                        self.rank
                    )));
                }
                vertices.push(v.iter().map(|n| n.0.clone()).collect());
            }
            coeffs.push((at, TailedPolyhedron::new(tail.clone(), vertices)?));
        }
        PolyhedralDivisor::new(base, tail, coeffs)
    }

    pub fn from_divisor(dd: &PolyhedralDivisor) -> DivisorJson {
        DivisorJson {
            schema: Some(SCHEMA_VERSION),
            rank: dd.rank(),
            tail: TailJson {
                rays: dd
                    .tail()
                    .generator_vectors()
                    .iter()
                    .map(|r| rat_vec_json(&crate::arith::int_to_rat_vec(r)))
                    .collect(),
            },
            base: BaseJson::from_base(dd.base()),
            coeffs: dd
                .coeffs()
                .iter()
                .map(|(p, delta)| CoeffJson {
                    at: p.to_string(),
                    vertices: delta.vertices().iter().map(|v| rat_vec_json(v)).collect(),
                })
                .collect(),
        }
    }
}

pub fn parse_divisor(text: &str) -> Result<PolyhedralDivisor> {
    let doc: DivisorJson = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))?;
    doc.to_divisor()
}

// ---------------------------------------------------------------------------
// Report building blocks
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeJson {
    pub rays: Vec<Vec<i64>>,
    pub inequalities: Vec<Vec<i64>>,
}

impl ConeJson {
    pub fn from_cone(c: &Cone) -> ConeJson {
        ConeJson {
            rays: c.generator_vectors().iter().map(|v| int_vec_json(v)).collect(),
            inequalities: c.inequality_vectors().iter().map(|v| int_vec_json(v)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorEntryJson {
    pub at: String,
    pub coeff: Num,
}

pub fn qdivisor_json(d: &QDivisor) -> Vec<DivisorEntryJson> {
    d.coeffs()
        .iter()
        .map(|(p, c)| DivisorEntryJson { at: p.to_string(), coeff: Num(c.clone()) })
        .collect()
}

fn tri(t: TriState) -> String {
    t.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DimJson {
    #[serde(rename = "finite")]
    Finite { dim: usize },
    #[serde(rename = "infinite_rank_1")]
    InfiniteRankOne,
    #[serde(rename = "unknown")]
    Unknown,
}

impl DimJson {
    pub fn from_report(d: &DimReport) -> DimJson {
        match d {
            DimReport::Finite(n) => DimJson::Finite { dim: *n },
            DimReport::InfiniteRankOne => DimJson::InfiniteRankOne,
            DimReport::Unknown => DimJson::Unknown,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub section: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<Vec<i64>>,
}

impl ElementJson {
    pub fn from_element(e: &Element) -> ElementJson {
        match e {
            Element::Zero => ElementJson { zero: true, section: None, degree: None },
            Element::Term(t) => ElementJson {
                zero: false,
                section: Some(t.section.to_string()),
                degree: Some(int_vec_json(&t.degree)),
            },
        }
    }

    pub fn from_term(t: &HomogeneousElement) -> ElementJson {
        ElementJson {
            zero: false,
            section: Some(t.section.to_string()),
            degree: Some(int_vec_json(&t.degree)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsJson {
    pub complete_up_to: u32,
    pub elements: Vec<ElementJson>,
}

impl GeneratorsJson {
    pub fn from_report(r: &GeneratorReport) -> GeneratorsJson {
        GeneratorsJson {
            complete_up_to: r.complete_up_to,
            elements: r.generators.iter().map(ElementJson::from_term).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Per-subcommand reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualReport {
    pub schema: u32,
    pub tail: ConeJson,
    pub dual: ConeJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub test: String,
    pub point: Vec<i64>,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProperJson {
    pub schema: u32,
    pub proper: String,
    pub q_cartier: bool,
    pub witnesses: Vec<WitnessJson>,
}

impl ProperJson {
    pub fn from_report(r: &ProperReport) -> ProperJson {
        ProperJson {
            schema: SCHEMA_VERSION,
            proper: tri(r.proper),
            q_cartier: r.q_cartier,
            witnesses: r
                .witnesses
                .iter()
                .map(|w| WitnessJson {
                    test: w.test.to_string(),
                    point: int_vec_json(&w.point),
                    verdict: tri(w.verdict),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalReport {
    pub schema: u32,
    pub m: Vec<i64>,
    pub divisor: Vec<DivisorEntryJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceAtPoint {
    pub at: String,
    pub vertex: Vec<Num>,
    pub value: Num,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceReport {
    pub schema: u32,
    pub m: Vec<i64>,
    pub pieces: Vec<PieceAtPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPieceReport {
    pub schema: u32,
    pub m: Vec<i64>,
    pub dim: DimJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
}

impl GradedPieceReport {
    pub fn from_piece(p: &GradedPiece) -> GradedPieceReport {
        GradedPieceReport {
            schema: SCHEMA_VERSION,
            m: int_vec_json(&p.degree),
            dim: DimJson::from_report(&p.dim),
            basis: p
                .basis
                .as_ref()
                .map(|b| b.iter().map(|s| s.to_string()).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassWitnessJson {
    pub e: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub ray: Vec<i64>,
    pub exists: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ClassWitnessJson>,
}

impl ClassJson {
    pub fn from_report(c: &ClassReport) -> ClassJson {
        ClassJson {
            ray: int_vec_json(&c.ray),
            exists: tri(c.exists),
            witness: c.witness.as_ref().map(|w| ClassWitnessJson {
                e: int_vec_json(&w.e),
                phi: w.phi.as_ref().map(|s| s.to_string()),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassesReport {
    pub schema: u32,
    pub bound: u32,
    pub classes: Vec<ClassJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrhoReport {
    pub schema: u32,
    pub ray: Vec<i64>,
    pub bound: u32,
    pub degrees: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeReport {
    pub schema: u32,
    pub ray: Vec<i64>,
    pub e: Vec<i64>,
    pub divisor: Vec<DivisorEntryJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhieReport {
    pub schema: u32,
    pub ray: Vec<i64>,
    pub e: Vec<i64>,
    pub d_e: Vec<DivisorEntryJson>,
    pub dim: DimJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
}

impl PhieReport {
    pub fn from_space(ray: &[Int], phi: &PhiSpace) -> PhieReport {
        PhieReport {
            schema: SCHEMA_VERSION,
            ray: int_vec_json(ray),
            e: int_vec_json(&phi.e),
            d_e: qdivisor_json(&phi.divisor),
            dim: DimJson::from_report(&phi.dim),
            basis: phi
                .basis
                .as_ref()
                .map(|b| b.iter().map(|s| s.to_string()).collect()),
        }
    }
}

/// Serialized derivation: `{ "ray": [...], "e": [...], "phi": "<section>" }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LndReport {
    pub schema: u32,
    pub ray: Vec<i64>,
    pub e: Vec<i64>,
    pub phi: String,
    pub kernel_monoid: ConeJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApplyReport {
    pub schema: u32,
    pub ray: Vec<i64>,
    pub e: Vec<i64>,
    pub phi: String,
    pub input: ElementJson,
    pub output: ElementJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub schema: u32,
    pub ray: Vec<i64>,
    pub e: Vec<i64>,
    pub phi: String,
    pub time: Num,
    pub input: ElementJson,
    pub terms: Vec<ElementJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelJson {
    pub weight_monoid: ConeJson,
    pub generators: GeneratorsJson,
}

impl KernelJson {
    pub fn from_report(k: &KernelReport) -> KernelJson {
        KernelJson {
            weight_monoid: ConeJson::from_cone(&k.weight_monoid),
            generators: GeneratorsJson::from_report(&k.generators),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlReportJson {
    pub schema: u32,
    pub qualifying_rays: Vec<Vec<i64>>,
    pub classes: Vec<ClassJson>,
    pub weight_monoid: ConeJson,
    pub monoid_generators: Vec<Vec<i64>>,
    pub degree_zero: String,
    pub trivial: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring_generators: Option<GeneratorsJson>,
    pub ml: String,
    pub ml_h: String,
    pub inclusions: String,
}

impl MlReportJson {
    pub fn from_report(r: &MlReport) -> MlReportJson {
        MlReportJson {
            schema: SCHEMA_VERSION,
            qualifying_rays: r.qualifying_rays.iter().map(|v| int_vec_json(v)).collect(),
            classes: r.classes.iter().map(ClassJson::from_report).collect(),
            weight_monoid: ConeJson::from_cone(&r.weight_monoid),
            monoid_generators: r.monoid_generators.iter().map(|v| int_vec_json(v)).collect(),
            degree_zero: r.degree_zero.describe().to_string(),
            trivial: tri(r.trivial),
            ring_generators: r.ring_generators.as_ref().map(GeneratorsJson::from_report),
            ml: "not computable by this tool (requires horizontal-type derivations)".into(),
            ml_h: "not computable by this tool (requires horizontal-type derivations)".into(),
            inclusions: "ML ⊆ ML_h ⊆ ML_fib".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FmlReportJson {
    pub schema: u32,
    pub contains_base_function_field: bool,
    pub base_function_field: String,
    pub reason: String,
    pub lower_bound_monoid: ConeJson,
    pub monoid_generators: Vec<Vec<i64>>,
    pub note: String,
}

impl FmlReportJson {
    pub fn from_report(r: &FmlReport) -> FmlReportJson {
        FmlReportJson {
            schema: SCHEMA_VERSION,
            contains_base_function_field: r.contains_base_function_field,
            base_function_field: r.base_function_field.clone(),
            reason: r.reason.to_string(),
            lower_bound_monoid: ConeJson::from_cone(&r.lower_bound_monoid),
            monoid_generators: r.monoid_generators.iter().map(|v| int_vec_json(v)).collect(),
            note: "lower bound only; equality with FML_fib is not claimed".into(),
        }
    }
}

/// Canonical rendering used by the CLI: pretty JSON with a trailing newline.
pub fn render<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

/// Parses a comma-separated integer vector such as `-1,2`.
pub fn parse_int_vec(s: &str) -> Result<Vec<Int>> {
    s.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse()
                .map_err(|_| Error::InvalidInput(format!("not an integer: {part:?}")))
        })
        .collect()
}
