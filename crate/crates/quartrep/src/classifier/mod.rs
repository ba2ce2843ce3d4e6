//! Decision tree routing a normalized polynomial of degree ≤ 4 to a verdict with a certificate.

pub mod completion;
pub mod composed;
pub mod composition;
pub mod curves;
pub mod family;
pub mod prime;
pub mod quadratic;
pub mod quartic;
pub mod report;
pub mod tree;

use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::bipoly::BiPoly;
use crate::exact::rat::{rat_to_canon, Int, Rat};
use crate::exact::unipoly::UniPoly;
use crate::forms::binary::BinaryForm;
use crate::forms::definite::small_directions;

use family::{chain_json, line_family, Chain};
use report::{Certificate, CompositionCert, DensityClass, GapCert, Report, SparseCert, TraceStep, UnboundedCert, Verdict};

pub use composition::detect_composition;
pub use curves::{cubic_curve_analysis, mobius_integer_points, CurveClass};
pub use quadratic::complete_square_quadratic;

/// Default target for unbounded-below witnesses.
pub const DEFAULT_TARGET: i64 = -1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("unsupported total degree {0}; expected 1 to 4")]
    Unsupported(u32),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// Mutable state threaded through the tree.
pub(crate) struct Ctx {
    pub f: BiPoly,
    /// Target for the normalized polynomial.
    pub target: Rat,
    pub trace: Vec<TraceStep>,
    pub completions: Vec<Value>,
}

/// Outcome of a leaf, before certificates are tied back to the input polynomial.
pub(crate) enum Leaf {
    Unbounded { chain: Chain, recipe: Value },
    Sparse { class: DensityClass, details: Value },
    Composition { outer: UniPoly, inner: BiPoly },
    Gap { subcase: String, factors: Vec<BiPoly>, analysis: Value, theory_backed: bool },
}

/// Runs the classifier with the default target `−10⁶`.
pub fn analyze(f: &BiPoly) -> Result<Report, ClassifyError> {
    analyze_with_target(f, &Rat::from_integer(Int::from(DEFAULT_TARGET)))
}

/// Parses and classifies; the input text is kept in the report.
pub fn analyze_text(text: &str, target: &Rat) -> Result<Report, AnalyzeTextError> {
    let f = crate::exact::parse::parse_poly(text)?;
    let mut r = analyze_with_target(&f, target)?;
    r.input_text = Some(text.to_string());
    Ok(r)
}

#[derive(Debug, Error)]
pub enum AnalyzeTextError {
    #[error("{0}")]
    Parse(#[from] crate::exact::parse::ParseError),
    #[error("{0}")]
    Classify(#[from] ClassifyError),
}

pub fn analyze_with_target(input: &BiPoly, target: &Rat) -> Result<Report, ClassifyError> {
    let deg = input.total_degree();
    if deg == 0 || deg > 4 {
        return Err(ClassifyError::Unsupported(deg));
    }
    let (f, norm) = input.normalize();
    let scale = Rat::from_integer(norm.scale.clone());
    let target_norm = (target - &norm.shift) * &scale;
    let mut ctx = Ctx { f: f.clone(), target: target_norm, trace: Vec::new(), completions: Vec::new() };
    ctx.step("input", json!({"degree": deg, "scale": norm.scale.to_string(), "shift": rat_to_canon(&norm.shift)}));
    let leaf = match deg {
        1 | 3 => odd_degree(&mut ctx)?,
        2 => quadratic::classify_quadratic(&mut ctx)?,
        _ => quartic::classify_quartic(&mut ctx)?,
    };
    let back = |v: &Rat| v / &scale + &norm.shift;
    let (verdict, certificate) = match leaf {
        Leaf::Unbounded { chain, recipe } => {
            let points = chain.iter().map(|(x, y, v)| (x.clone(), y.clone(), back(v))).collect();
            let recipe = json!({"family": recipe, "normalized_values": chain_json(&chain)});
            (Verdict::UnboundedBelow, Certificate::Unbounded(UnboundedCert { points, target: target.clone(), recipe }))
        }
        Leaf::Sparse { class, details } => {
            let table = crate::oracle::values::count_table(&f, &sparse_ns(&f))
                .map_err(|e| ClassifyError::Budget(e.to_string()))?;
            let mut details = details;
            if table.exhaustive {
                let n = table.rows.last().map(|r| r.0).unwrap_or(0);
                let mv = crate::oracle::values::missing_value_search(&f, 1, 0, n).map_err(|e| ClassifyError::Budget(e.to_string()))?;
                details["missing_value"] = mv.to_json();
            }
            (Verdict::SparseValues(class), Certificate::Sparse(SparseCert { table, details }))
        }
        Leaf::Composition { outer, inner } => {
            // 𝔉 for the input: F = f/scale + shift
            let outer_in = &outer.scale(&(Rat::one() / &scale)) + &UniPoly::constant(norm.shift.clone());
            (Verdict::Composition, Certificate::Composition(CompositionCert { outer: outer_in, inner }))
        }
        Leaf::Gap { subcase, factors, analysis, theory_backed } => {
            (Verdict::ReducibleGap(subcase), Certificate::ReducibleGap(GapCert { factors, analysis, theory_backed }))
        }
    };
    let report = Report {
        input: input.clone(),
        input_text: None,
        normalized: f,
        normalization: norm,
        trace: ctx.trace,
        verdict,
        certificate,
        completions: ctx.completions,
    };
    crate::oracle::verify::verify_report(&report.to_json()).map_err(|e| ClassifyError::Inconsistent(format!("self-verification failed: {e}")))?;
    Ok(report)
}

/// Ranges used for the count table of a sparse verdict.
fn sparse_ns(f: &BiPoly) -> Vec<u64> {
    if crate::oracle::values::rigorous_box(f, 100_000).is_some_and(|b| b <= 2_000) {
        vec![1_000, 10_000, 100_000]
    } else {
        vec![1_000, 10_000]
    }
}

/// Degree 1 or 3: a line along which the odd top form does not vanish.
fn odd_degree(ctx: &mut Ctx) -> Result<Leaf, ClassifyError> {
    let d = ctx.f.total_degree();
    let top = BinaryForm::from_bipoly(&ctx.f, d);
    let (sx, sy) = small_directions(3)
        .into_iter()
        .find(|&(x, y)| !top.eval_i64(x, y).is_zero())
        .ok_or_else(|| ClassifyError::Inconsistent("odd top form vanishes on all small directions".into()))?;
    let (sx, sy) = (Int::from(sx), Int::from(sy));
    let value = top.eval_int(&sx, &sy);
    let (chain, recipe) = line_family(&ctx.f, (&Int::zero(), &Int::zero()), (&sx, &sy), &ctx.target, "line", json!({"top_value": rat_to_canon(&value)}))?;
    ctx.step("odd_degree", json!({"direction": [sx.to_string(), sy.to_string()], "top_value": rat_to_canon(&value)}));
    Ok(Leaf::Unbounded { chain, recipe })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly;

    fn leaf_of(s: &str) -> (String, &'static str) {
        let r = analyze(&parse_poly(s).unwrap()).unwrap();
        (r.verdict.label(), r.leaf())
    }

    #[test]
    fn degree_gates() {
        assert_eq!(analyze(&parse_poly("x^5").unwrap()).unwrap_err(), ClassifyError::Unsupported(5));
        assert_eq!(analyze(&parse_poly("7").unwrap()).unwrap_err(), ClassifyError::Unsupported(0));
        assert_eq!(leaf_of("x^3 + y^2").1, "odd_degree");
        assert_eq!(leaf_of("2*x + 1").1, "odd_degree");
    }

    #[test]
    fn quadratic_examples() {
        assert_eq!(leaf_of("x^2 + y^2 + 2*x + 4*y + 1"), ("SparseValues(LandauLogHalf)".into(), "quadratic_definite"));
        assert_eq!(leaf_of("x^2 - y^2").1, "quadratic_indefinite");
        assert_eq!(leaf_of("x^2 + 3*x + y").1, "quadratic_square_line");
        assert_eq!(leaf_of("x^2 + 2*x*y + y^2 + x + y"), ("SparseValues(Sqrt)".into(), "quadratic_square_single"));
    }

    #[test]
    fn shifted_target_uses_input_values() {
        let f = parse_poly("x^3/2 + 5").unwrap();
        let r = analyze_with_target(&f, &Rat::from_integer(Int::from(-100))).unwrap();
        let Certificate::Unbounded(c) = &r.certificate else { panic!() };
        for (x, y, v) in &c.points {
            assert_eq!(&f.eval_int(x, y), v);
        }
        assert!(c.points.last().unwrap().2 <= Rat::from_integer(Int::from(-100)));
    }
}
