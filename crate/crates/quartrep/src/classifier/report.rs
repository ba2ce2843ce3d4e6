use serde_json::{json, Map, Value};

use crate::exact::bipoly::{BiPoly, Normalization};
use crate::exact::rat::{rat_to_canon, Int, Rat};
use crate::exact::unipoly::UniPoly;

pub const REPORT_FORMAT: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DensityClass {
    Sqrt,
    PowerOneOverD(u32),
    LandauLogHalf,
    PowerOneMinusLambda(Rat),
    HomogeneousEmpirical,
}

impl DensityClass {
    pub fn name(&self) -> &'static str {
        match self {
            DensityClass::Sqrt => "Sqrt",
            DensityClass::PowerOneOverD(_) => "PowerOneOverD",
            DensityClass::LandauLogHalf => "LandauLogHalf",
            DensityClass::PowerOneMinusLambda(_) => "PowerOneMinusLambda",
            DensityClass::HomogeneousEmpirical => "HomogeneousEmpirical",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("class".into(), json!(self.name()));
        match self {
            DensityClass::PowerOneOverD(d) => {
                m.insert("d".into(), json!(d));
            }
            DensityClass::PowerOneMinusLambda(l) => {
                m.insert("lambda".into(), json!(rat_to_canon(l)));
            }
            _ => {}
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    UnboundedBelow,
    SparseValues(DensityClass),
    Composition,
    ReducibleGap(String),
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::UnboundedBelow => "UnboundedBelow",
            Verdict::SparseValues(_) => "SparseValues",
            Verdict::Composition => "Composition",
            Verdict::ReducibleGap(_) => "ReducibleGap",
        }
    }

    /// Tag plus density class or subcase, e.g. `SparseValues(Sqrt)`.
    pub fn label(&self) -> String {
        match self {
            Verdict::SparseValues(c) => format!("SparseValues({})", c.name()),
            Verdict::ReducibleGap(s) => format!("ReducibleGap({s})"),
            v => v.tag().to_string(),
        }
    }

    fn reason(&self) -> &'static str {
        match self {
            Verdict::UnboundedBelow => "F takes arbitrarily negative values",
            Verdict::SparseValues(_) => "F(Z^2) has density zero in the integers",
            Verdict::Composition => "F is a polynomial of degree at least 2 in a quadratic polynomial",
            Verdict::ReducibleGap(_) => "F is reducible and represents few multiples of primes",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("tag".into(), json!(self.tag()));
        m.insert("label".into(), json!(self.label()));
        m.insert("consequence".into(), json!(format!("F(Z^2) != (CZ)_{{>=D}} for all C, D: {}", self.reason())));
        match self {
            Verdict::SparseValues(c) => {
                m.insert("density".into(), c.to_json());
            }
            Verdict::ReducibleGap(s) => {
                m.insert("subcase".into(), json!(s));
            }
            _ => {}
        }
        Value::Object(m)
    }
}

/// Exact points with strictly decreasing values under the input polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct UnboundedCert {
    pub points: Vec<(Int, Int, Rat)>,
    pub target: Rat,
    pub recipe: Value,
}

/// Distinct positive values `≤ N` over the box `max(|x|,|y|) ≤ box_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub box_bound: u64,
    pub rows: Vec<(u64, u64)>,
    pub exhaustive: bool,
}

impl CountTable {
    pub fn to_json(&self) -> Value {
        json!({
            "box": self.box_bound,
            "exhaustive": self.exhaustive,
            "rows": self.rows.iter().map(|(n, c)| json!({"N": n, "count": c})).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SparseCert {
    pub table: CountTable,
    pub details: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompositionCert {
    pub outer: UniPoly,
    pub inner: BiPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GapCert {
    pub factors: Vec<BiPoly>,
    pub analysis: Value,
    pub theory_backed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    Unbounded(UnboundedCert),
    Sparse(SparseCert),
    Composition(CompositionCert),
    ReducibleGap(GapCert),
}

pub fn uni_to_json(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| json!(rat_to_canon(c))).collect())
}

pub fn uni_from_json(v: &Value) -> Option<UniPoly> {
    let cs = v.as_array()?.iter().map(|c| c.as_str().and_then(crate::exact::rat::parse_rat)).collect::<Option<Vec<_>>>()?;
    Some(UniPoly::new(cs))
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        match self {
            Certificate::Unbounded(c) => json!({
                "kind": "unbounded",
                "target": rat_to_canon(&c.target),
                "points": c.points.iter().map(|(x, y, v)| json!({"x": x.to_string(), "y": y.to_string(), "value": rat_to_canon(v)})).collect::<Vec<_>>(),
                "recipe": c.recipe,
            }),
            Certificate::Sparse(c) => json!({"kind": "sparse", "counts": c.table.to_json(), "details": c.details}),
            Certificate::Composition(c) => json!({"kind": "composition", "outer": uni_to_json(&c.outer), "inner": c.inner.to_json()}),
            Certificate::ReducibleGap(c) => json!({
                "kind": "reducible_gap",
                "factors": c.factors.iter().map(|f| f.to_json()).collect::<Vec<_>>(),
                "analysis": c.analysis,
                "theory_backed": c.theory_backed,
            }),
        }
    }
}

/// One node of the decision path with the quantities computed there.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub node: &'static str,
    pub data: Value,
}

impl TraceStep {
    pub fn new(node: &'static str, data: Value) -> Self {
        TraceStep { node, data }
    }

    pub fn to_json(&self) -> Value {
        json!({"node": self.node, "data": self.data})
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub input: BiPoly,
    pub input_text: Option<String>,
    pub normalized: BiPoly,
    pub normalization: Normalization,
    pub trace: Vec<TraceStep>,
    pub verdict: Verdict,
    pub certificate: Certificate,
    /// Algebraic identities recorded along the way (square completions, maps).
    pub completions: Vec<Value>,
}

impl Report {
    pub fn leaf(&self) -> &'static str {
        self.trace.last().map(|s| s.node).unwrap_or("")
    }

    pub fn to_json(&self) -> Value {
        let mut cert = self.certificate.to_json();
        if let Value::Object(m) = &mut cert {
            m.insert("square_completion".into(), Value::Array(self.completions.clone()));
        }
        json!({
            "input": {
                "text": self.input_text,
                "poly": self.input.to_json(),
                "display": self.input.to_string(),
            },
            "normalization": {
                "scale": self.normalization.scale.to_string(),
                "shift": rat_to_canon(&self.normalization.shift),
                "poly": self.normalized.to_json(),
            },
            "trace": self.trace.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            "verdict": self.verdict.to_json(),
            "certificate": cert,
            "versions": {"quartrep": env!("CARGO_PKG_VERSION"), "report_format": REPORT_FORMAT},
        })
    }

    /// Canonical pretty-printed JSON; byte-stable for a fixed input.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serializes")
    }
}
