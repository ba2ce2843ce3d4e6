//! Independent re-check of a serialized report.

use serde_json::Value;
use thiserror::Error;

use crate::classifier::completion;
use crate::classifier::composition::compose_outer;
use crate::classifier::family::descending_sign;
use crate::classifier::prime::line_restriction;
use crate::classifier::report::uni_from_json;
use crate::classifier::tree::check_path;
use crate::exact::bipoly::BiPoly;
use crate::exact::rat::{parse_rat, Int, Rat};
use crate::forms::binary::BinaryForm;

use super::density::counts_in_box;
use super::values::{missing_value_search, rigorous_box};

/// First violated clause of a certificate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{clause}: {detail}")]
pub struct VerifyError {
    pub clause: &'static str,
    pub detail: String,
}

fn fail<T>(clause: &'static str, detail: impl Into<String>) -> Result<T, VerifyError> {
    Err(VerifyError { clause, detail: detail.into() })
}

fn field<'a>(v: &'a Value, path: &[&str]) -> Result<&'a Value, VerifyError> {
    let mut cur = v;
    for k in path {
        cur = match cur.get(k) {
            Some(x) => x,
            None => return fail("malformed report", format!("missing field {}", path.join("."))),
        };
    }
    Ok(cur)
}

fn str_field<'a>(v: &'a Value, path: &[&str]) -> Result<&'a str, VerifyError> {
    field(v, path)?.as_str().ok_or_else(|| VerifyError { clause: "malformed report", detail: format!("{} is not a string", path.join(".")) })
}

fn rat_field(v: &Value, path: &[&str]) -> Result<Rat, VerifyError> {
    let s = str_field(v, path)?;
    parse_rat(s).ok_or_else(|| VerifyError { clause: "malformed report", detail: format!("bad rational {s}") })
}

fn int_str(v: &Value) -> Result<Int, VerifyError> {
    v.as_str().and_then(|s| s.parse().ok()).ok_or_else(|| VerifyError { clause: "malformed report", detail: format!("bad integer {v}") })
}

fn poly_field(v: &Value, path: &[&str]) -> Result<BiPoly, VerifyError> {
    BiPoly::from_json(field(v, path)?).ok_or_else(|| VerifyError { clause: "malformed report", detail: format!("bad polynomial at {}", path.join(".")) })
}

fn u64_field(v: &Value, path: &[&str]) -> Result<u64, VerifyError> {
    field(v, path)?.as_u64().ok_or_else(|| VerifyError { clause: "malformed report", detail: format!("{} is not an integer", path.join(".")) })
}

/// Checks normalization, trace path, recorded identities and the certificate; returns the first failure.
pub fn verify_report(report: &Value) -> Result<(), VerifyError> {
    let input = poly_field(report, &["input", "poly"])?;
    let f = poly_field(report, &["normalization", "poly"])?;
    let scale = Rat::from_integer(int_str(field(report, &["normalization", "scale"])?)?);
    let shift = rat_field(report, &["normalization", "shift"])?;
    if &(&input - &BiPoly::constant(shift.clone())).scale(&scale) != &f || !f.is_integral() {
        return fail("normalization", "normalized polynomial differs from scale·(F − shift)");
    }
    let trace = field(report, &["trace"])?.as_array().ok_or_else(|| VerifyError { clause: "malformed report", detail: "trace".into() })?;
    let nodes: Vec<&str> = trace.iter().map(|s| s.get("node").and_then(|n| n.as_str()).unwrap_or("")).collect();
    let tag = str_field(report, &["verdict", "tag"])?;
    check_path(&nodes, tag).map_err(|e| VerifyError { clause: "trace", detail: e })?;
    let cert = field(report, &["certificate"])?;
    if let Some(cs) = cert.get("square_completion").and_then(|c| c.as_array()) {
        for c in cs {
            completion::check(&f, c).map_err(|e| VerifyError { clause: "square completion", detail: e })?;
        }
    }
    let kind = str_field(cert, &["kind"])?;
    let expected = match tag {
        "UnboundedBelow" => "unbounded",
        "SparseValues" => "sparse",
        "Composition" => "composition",
        "ReducibleGap" => "reducible_gap",
        other => return fail("verdict", format!("unknown verdict {other}")),
    };
    if kind != expected {
        return fail("verdict", format!("certificate kind {kind} under verdict {tag}"));
    }
    match kind {
        "unbounded" => verify_unbounded(&input, cert),
        "sparse" => verify_sparse(&f, cert),
        "composition" => verify_composition(&input, cert),
        _ => verify_gap(&f, cert),
    }
}

fn verify_unbounded(input: &BiPoly, cert: &Value) -> Result<(), VerifyError> {
    let target = rat_field(cert, &["target"])?;
    let pts = field(cert, &["points"])?.as_array().ok_or_else(|| VerifyError { clause: "malformed report", detail: "points".into() })?;
    if pts.len() < 3 {
        return fail("too few points", format!("{} points", pts.len()));
    }
    let mut prev: Option<Rat> = None;
    for p in pts {
        let (x, y) = (int_str(field(p, &["x"])?)?, int_str(field(p, &["y"])?)?);
        let v = rat_field(p, &["value"])?;
        let actual = input.eval_int(&x, &y);
        if actual != v {
            return fail("evaluation", format!("F({x}, {y}) = {actual}, recorded {v}"));
        }
        if prev.as_ref().is_some_and(|q| &v >= q) {
            return fail("strict decrease", format!("value {v} at ({x}, {y}) does not decrease"));
        }
        prev = Some(v);
    }
    if prev.is_some_and(|v| v > target) {
        return fail("target", "last value is above the target");
    }
    Ok(())
}

fn verify_sparse(f: &BiPoly, cert: &Value) -> Result<(), VerifyError> {
    let b = u64_field(cert, &["counts", "box"])?;
    let exhaustive = field(cert, &["counts", "exhaustive"])?.as_bool().unwrap_or(false);
    let rows = field(cert, &["counts", "rows"])?.as_array().ok_or_else(|| VerifyError { clause: "malformed report", detail: "rows".into() })?;
    let recorded: Vec<(u64, u64)> = rows.iter().map(|r| Ok((u64_field(r, &["N"])?, u64_field(r, &["count"])?))).collect::<Result<_, VerifyError>>()?;
    let ns: Vec<u64> = recorded.iter().map(|r| r.0).collect();
    let nmax = ns.iter().copied().max().unwrap_or(0);
    if nmax == 0 {
        return fail("count mismatch", "empty count table");
    }
    let again = counts_in_box(f, b, &ns).map_err(|e| VerifyError { clause: "count mismatch", detail: e.to_string() })?;
    if again != recorded {
        return fail("count mismatch", format!("recorded {recorded:?}, recomputed {again:?}"));
    }
    if exhaustive != rigorous_box(f, nmax).is_some_and(|rb| rb <= b) {
        return fail("count mismatch", "exhaustive flag disagrees with the box bound");
    }
    if let Some(mv) = cert.get("details").and_then(|d| d.get("missing_value")) {
        let c = u64_field(mv, &["C"])?;
        let d = field(mv, &["D"])?.as_i64().unwrap_or(0);
        let to = u64_field(mv, &["searched_to"])?;
        let again = missing_value_search(f, c, d, to).map_err(|e| VerifyError { clause: "missing value", detail: e.to_string() })?;
        if &again.to_json() != mv {
            return fail("missing value", "recorded search differs from a fresh search");
        }
    }
    Ok(())
}

fn verify_composition(input: &BiPoly, cert: &Value) -> Result<(), VerifyError> {
    let outer = uni_from_json(field(cert, &["outer"])?).ok_or_else(|| VerifyError { clause: "malformed report", detail: "outer".into() })?;
    let inner = poly_field(cert, &["inner"])?;
    if outer.degree() < 2 || inner.total_degree() != 2 {
        return fail("expansion mismatch", "outer must have degree ≥ 2 and inner degree 2");
    }
    if &compose_outer(&outer, &inner) != input {
        return fail("expansion mismatch", "outer(inner) differs from F");
    }
    Ok(())
}

fn verify_gap(f: &BiPoly, cert: &Value) -> Result<(), VerifyError> {
    let factors = field(cert, &["factors"])?.as_array().ok_or_else(|| VerifyError { clause: "malformed report", detail: "factors".into() })?;
    let mut prod = BiPoly::constant(Rat::from_integer(Int::from(1)));
    for fac in factors {
        let p = BiPoly::from_json(fac).ok_or_else(|| VerifyError { clause: "malformed report", detail: "factor".into() })?;
        if p.total_degree() == 0 {
            return fail("factor product", "constant factor");
        }
        prod = &prod * &p;
    }
    if factors.len() < 2 || &prod != f {
        return fail("factor product", "factors do not multiply to the normalized polynomial");
    }
    let lines = field(cert, &["analysis"])?.get("lines").and_then(|l| l.as_array()).cloned().unwrap_or_default();
    for l in &lines {
        let form = BinaryForm::from_json(field(l, &["form"])?).ok_or_else(|| VerifyError { clause: "malformed report", detail: "line form".into() })?;
        let d = int_str(field(l, &["d"])?)?;
        let rec = uni_from_json(field(l, &["restriction"])?).ok_or_else(|| VerifyError { clause: "malformed report", detail: "restriction".into() })?;
        let (_, p) = line_restriction(f, &form, &d).map_err(|e| VerifyError { clause: "line restriction", detail: e })?;
        if p != rec || descending_sign(&p).is_some() {
            return fail("line restriction", format!("line {} = {d} is misrecorded or descending", form.to_json()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::analyze;
    use crate::exact::parse::parse_poly;

    fn report(s: &str) -> Value {
        analyze(&parse_poly(s).unwrap()).unwrap().to_json()
    }

    #[test]
    fn tampered_value_breaks_decrease() {
        let mut r = report("(x^2 - 2*y^2)^2 + x");
        assert_eq!(verify_report(&r), Ok(()));
        let pts = r["certificate"]["points"].as_array_mut().unwrap();
        pts[1]["value"] = pts[0]["value"].clone();
        pts[1]["x"] = pts[0]["x"].clone();
        pts[1]["y"] = pts[0]["y"].clone();
        assert_eq!(verify_report(&r).unwrap_err().clause, "strict decrease");
    }

    #[test]
    fn tampered_value_breaks_evaluation() {
        let mut r = report("x^4 - y^4 + x");
        r["certificate"]["points"][0]["value"] = Value::from("12345");
        assert_eq!(verify_report(&r).unwrap_err().clause, "evaluation");
    }

    #[test]
    fn wrong_inner_breaks_expansion() {
        let mut r = report("(x^2 - 2*y^2)^2 + (x^2 - 2*y^2)");
        assert_eq!(r["verdict"]["tag"], "Composition");
        r["certificate"]["inner"] = parse_poly("x^2 - 3*y^2").unwrap().to_json();
        assert_eq!(verify_report(&r).unwrap_err().clause, "expansion mismatch");
    }

    #[test]
    fn other_clauses() {
        let mut r = report("x^4 + y^4 + x");
        r["certificate"]["counts"]["rows"][0]["count"] = Value::from(1);
        assert_eq!(verify_report(&r).unwrap_err().clause, "count mismatch");
        let mut r = report("x*y*(x*y + 1)");
        r["certificate"]["factors"][1] = parse_poly("x*y + 2").unwrap().to_json();
        assert_eq!(verify_report(&r).unwrap_err().clause, "factor product");
        let mut r = report("x^2 + y^2");
        r["trace"].as_array_mut().unwrap().remove(0);
        assert_eq!(verify_report(&r).unwrap_err().clause, "trace");
        let mut r = report("x^2 + y^2 + 1");
        r["normalization"]["shift"] = Value::from("2");
        assert_eq!(verify_report(&r).unwrap_err().clause, "normalization");
    }
}
