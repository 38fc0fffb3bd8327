//! JSON documents read and written by the CLI. Rationals travel as "p/q"
//! strings so nothing is lost to floating point.

use nagell::families::{EulerInstance, KlmInstance};
use nagell::transport::PipelineTrace;
use nagell::weierstrass::StepMap;
use nagell::algebra::parse_rational;
use nagell::{Point2, Point3, QuadricForm, Rational, StepRecord, TernaryCubic, WeierstrassCurve};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub type Matrix4 = [[String; 4]; 4];
pub type Matrix3 = [[String; 3]; 3];

/// What to transform: an explicit quadric pair or one of the two families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InstanceDocument {
    Quadrics(QuadricsInstance),
    Family(FamilyInstance),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadricsInstance {
    pub quadrics: [Matrix4; 2],
    pub point: [String; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
pub enum FamilyInstance {
    Euler {
        #[serde(rename = "M")]
        m: i64,
        #[serde(rename = "N")]
        n: i64,
    },
    Klm {
        k: i64,
        l: i64,
        m: i64,
    },
}

fn rational(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).ok_or_else(|| CliError::Parse(format!("not a rational number: {s:?}")))
}

fn matrix(m: &Matrix4) -> Result<QuadricForm, CliError> {
    let mut out: [[Rational; 4]; 4] = Default::default();
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            out[i][j] = rational(e)?;
        }
    }
    QuadricForm::new(out).map_err(|e| CliError::Parse(e.to_string()))
}

fn strings<const N: usize>(v: &[Rational; N]) -> [String; N] {
    std::array::from_fn(|i| v[i].to_string())
}

fn matrix_strings<const N: usize>(m: &[[Rational; N]; N]) -> [[String; N]; N] {
    std::array::from_fn(|i| strings(&m[i]))
}

impl InstanceDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("instance document: {e}")))
    }

    /// The quadric pair and base point, validated.
    pub fn resolve(&self) -> Result<(QuadricForm, QuadricForm, Point3), CliError> {
        let invalid = |e: nagell::Error| CliError::Parse(e.to_string());
        match self {
            InstanceDocument::Quadrics(q) => {
                let a = matrix(&q.quadrics[0])?;
                let b = matrix(&q.quadrics[1])?;
                let mut raw: [Rational; 4] = Default::default();
                for (slot, s) in raw.iter_mut().zip(&q.point) {
                    *slot = rational(s)?;
                }
                Ok((a, b, Point3::new(&raw).map_err(invalid)?))
            }
            InstanceDocument::Family(FamilyInstance::Euler { m, n }) => {
                Ok(EulerInstance::new(*m, *n).map_err(invalid)?.quadrics())
            }
            InstanceDocument::Family(FamilyInstance::Klm { k, l, m }) => {
                Ok(KlmInstance::new(*k, *l, *m).map_err(invalid)?.quadrics())
            }
        }
    }
}

/// A Γ table both as stored and in canonical integer form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaDoc {
    /// Coefficients of X³, X²Y, X²Z, XY², XYZ, XZ², Y³, Y²Z, YZ², Z³.
    pub normalized: [String; 10],
    pub exact: [String; 10],
    pub equation: String,
}

impl GammaDoc {
    fn new(c: &TernaryCubic) -> Self {
        let n = c.normalized_ints();
        GammaDoc {
            normalized: std::array::from_fn(|i| n[i].to_string()),
            exact: strings(c.gamma()),
            equation: format!("{} = 0", c.normalized()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricStageDoc {
    /// Original coordinates to the translated ones.
    pub translation: Matrix4,
    pub gamma: GammaDoc,
    pub point: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepFlags {
    pub yz_swap: bool,
    pub inflection_shortcut: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MapDoc {
    Linear { forward: Matrix3, inverse: Matrix3 },
    Quadratic { forward: [String; 3], inverse: [String; 3] },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub step: String,
    /// Index r of the cubic C_(r) this step produces, if any.
    pub stage: Option<u8>,
    pub flags: StepFlags,
    pub map: MapDoc,
    pub multiplier: Option<String>,
    pub params: Vec<(String, Vec<String>)>,
    pub gamma: GammaDoc,
    pub point: String,
}

impl StepDoc {
    fn new(s: &StepRecord) -> Self {
        use nagell::StepKind::*;
        let map = match &s.map {
            StepMap::Linear { forward, inverse } => MapDoc::Linear {
                forward: matrix_strings(forward.matrix()),
                inverse: matrix_strings(inverse.matrix()),
            },
            StepMap::Quadratic(_) => MapDoc::Quadratic {
                forward: ["XZ", "XY", "Z^2"].map(String::from),
                inverse: ["X^2", "YZ", "XZ"].map(String::from),
            },
        };
        StepDoc {
            step: s.kind.name().to_string(),
            stage: s.kind.stage(),
            flags: StepFlags { yz_swap: s.kind == SwapYZ, inflection_shortcut: s.kind == ExchangeXY },
            map,
            multiplier: s.multiplier.as_ref().map(|m| m.to_string()),
            params: s
                .params
                .iter()
                .map(|(k, v)| (k.to_string(), v.iter().map(|b| b.to_string()).collect()))
                .collect(),
            gamma: GammaDoc::new(&s.cubic_after),
            point: s.point_after.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDoc {
    pub a2: String,
    pub a4: String,
    pub a6: String,
    pub equation: String,
    pub factored: Option<String>,
    pub roots: Vec<String>,
}

impl CurveDoc {
    fn new(w: &WeierstrassCurve) -> Self {
        CurveDoc {
            a2: w.a2.to_string(),
            a4: w.a4.to_string(),
            a6: w.a6.to_string(),
            equation: w.to_string(),
            factored: w.factored(),
            roots: w.rational_roots().iter().map(|r| r.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub instance: InstanceDocument,
    pub initial: QuadricStageDoc,
    pub steps: Vec<StepDoc>,
    pub yz_swap: bool,
    pub inflection_shortcut: bool,
    pub weierstrass: CurveDoc,
    pub root_shift: String,
    #[serde(rename = "final")]
    pub final_curve: CurveDoc,
}

impl TraceDocument {
    pub fn new(instance: InstanceDocument, t: &PipelineTrace) -> Self {
        let steps: Vec<StepDoc> = t.cubic.steps.iter().map(StepDoc::new).collect();
        TraceDocument {
            instance,
            initial: QuadricStageDoc {
                translation: matrix_strings(t.quadric.map.matrix()),
                gamma: GammaDoc::new(&t.quadric.cubic),
                point: t.quadric.z.to_string(),
            },
            yz_swap: steps.iter().any(|s| s.flags.yz_swap),
            inflection_shortcut: steps.iter().any(|s| s.flags.inflection_shortcut),
            steps,
            weierstrass: CurveDoc::new(t.weierstrass()),
            root_shift: t.cubic.step8.name().to_string(),
            final_curve: CurveDoc::new(t.final_curve()),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    #[cfg(test)]
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("trace document: {e}")))
    }

    /// Human-readable summary, one line per cubic.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("C(0): {}   point {}\n", self.initial.gamma.equation, self.initial.point));
        for s in &self.steps {
            let label = match s.stage {
                Some(r) => format!("C({r})"),
                None => "    ".to_string(),
            };
            out.push_str(&format!("{label}: {}   point {}   [{}]\n", s.gamma.equation, s.point, s.step));
        }
        out.push_str(&format!("weierstrass: {}\n", self.weierstrass.equation));
        let fin = self.final_curve.factored.as_deref().unwrap_or(&self.final_curve.equation);
        out.push_str(&format!("final: {fin}\n"));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDocument {
    pub direction: String,
    pub stage: Option<u8>,
    pub input: String,
    pub output: String,
}

pub fn parse_point2(s: &str) -> Result<Point2, CliError> {
    s.parse().map_err(|e: nagell::Error| CliError::Parse(e.to_string()))
}

pub fn parse_point3(s: &str) -> Result<Point3, CliError> {
    s.parse().map_err(|e: nagell::Error| CliError::Parse(e.to_string()))
}
