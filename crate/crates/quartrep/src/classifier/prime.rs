//! Semidefinite quartics whose lower parts share a factor with the zero locus of the top form.

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::exact::bipoly::BiPoly;
use crate::exact::factor::rational_roots;
use crate::exact::rat::{rat_to_canon, Int, Rat};
use crate::exact::resultant::resultant_y;
use crate::exact::unimodular::{apply_unimodular, unimodular_from_linear, UnimodularMap};
use crate::exact::unipoly::UniPoly;
use crate::forms::binary::{factor_form, BinaryForm};
use crate::forms::definite::has_real_zero;

use super::composed;
use super::composition::detect_composition;
use super::curves::{cubic_curve_analysis, integral_points_scan};
use super::family::{curve_family, descending_sign, Chain};
use super::quartic::Parts;
use super::report::{uni_to_json, DensityClass};
use super::{ClassifyError, Ctx, Leaf};

/// Range scanned for integral points on the cubic level curves.
pub const LEVEL_SCAN: i64 = 10_000;

fn err(e: impl std::fmt::Display) -> ClassifyError {
    ClassifyError::Inconsistent(e.to_string())
}

/// Restriction of `F` to the line `L = d`, in the second coordinate of the map completing `L`.
pub fn line_restriction(f: &BiPoly, l: &BinaryForm, d: &Int) -> Result<(UnimodularMap, UniPoly), String> {
    let lc = l.int_coeffs();
    let a = unimodular_from_linear(&lc[0], &lc[1]).map_err(|e| e.to_string())?;
    let g = apply_unimodular(f, &a);
    Ok((a, g.specialize_x(&Rat::from_integer(d.clone()))))
}

/// Lines `L = d` checked for a descending restriction.
struct LineSearch {
    hit: Option<(Int, UnimodularMap)>,
    checked: Vec<Value>,
}

fn search_lines(f: &BiPoly, l: &BinaryForm) -> Result<LineSearch, ClassifyError> {
    let lc = l.int_coeffs();
    let a = unimodular_from_linear(&lc[0], &lc[1]).map_err(err)?;
    let rows = apply_unimodular(f, &a).coeffs_in_y();
    let mut cands: Vec<Int> = (1..=10).flat_map(|k| [Int::from(k), Int::from(-k)]).collect();
    for c in rows.iter().skip(2).filter(|c| !c.is_zero()) {
        for r in rational_roots(c) {
            if r.is_integer() && !r.is_zero() && !cands.contains(&r.to_integer()) {
                cands.push(r.to_integer());
            }
        }
    }
    let mut checked = Vec::new();
    for d in cands {
        let (_, p) = line_restriction(f, l, &d).map_err(err)?;
        if descending_sign(&p).is_some() {
            return Ok(LineSearch { hit: Some((d, a)), checked });
        }
        checked.push(json!({"form": l.to_json(), "d": d.to_string(), "restriction": uni_to_json(&p)}));
    }
    Ok(LineSearch { hit: None, checked })
}

fn line_leaf(ctx: &mut Ctx, node: &'static str, l: &BinaryForm, d: &Int, a: &UnimodularMap) -> Result<Leaf, ClassifyError> {
    let px = UniPoly::from_bigints(&[d.clone()]);
    let py = UniPoly::from_ints(&[0, 1]);
    let (chain, recipe): (Chain, Value) =
        curve_family(&ctx.f, &px, &py, Some(&a.inverse()), &ctx.target, "factor_line", json!({"form": l.to_json(), "d": d.to_string()}))?;
    ctx.step(node, json!({"form": l.to_json(), "d": d.to_string()}));
    Ok(Leaf::Unbounded { chain, recipe })
}

pub(crate) fn common_factor(ctx: &mut Ctx, p: &Parts, g4: &BinaryForm) -> Result<Leaf, ClassifyError> {
    let f = ctx.f.clone();
    let homogeneous = p.f3.is_zero() && p.f2.is_zero() && p.f1.is_zero();
    ctx.step("common_factor", json!({"gcd": g4.to_json(), "degree": g4.degree(), "homogeneous": homogeneous}));
    if homogeneous {
        let fac = factor_form(&p.f4);
        let comp = detect_composition(&f);
        if fac.factors.len() == 1 {
            if let Some((outer, inner)) = comp {
                ctx.step("homogeneous_single", json!({"outer": uni_to_json(&outer), "inner": inner.to_json()}));
                return Ok(Leaf::Composition { outer, inner });
            }
        }
        let note = comp.map(|(o, i)| json!({"outer": uni_to_json(&o), "inner": i.to_json()}));
        ctx.step("homogeneous_empirical", json!({"factors": fac.factors.len(), "composition": note}));
        return Ok(Leaf::Sparse {
            class: DensityClass::HomogeneousEmpirical,
            details: json!({"reason": "homogeneous quartic with several irreducible factors", "composition": note}),
        });
    }
    let fac = factor_form(g4);
    let linear: Vec<BinaryForm> = fac.factors.iter().filter(|(h, _)| h.degree() == 1).map(|(h, _)| h.clone()).collect();
    if g4.degree() == 2 {
        if linear.is_empty() {
            if has_real_zero(g4) {
                return composed::prop_last(ctx, g4);
            }
            return Err(ClassifyError::Inconsistent("separated pair: definite common factor of the lower parts".into()));
        }
        let mut checked = Vec::new();
        for l in &linear {
            let s = search_lines(&f, l)?;
            if let Some((d, a)) = s.hit {
                return line_leaf(ctx, "linear_pair_line", l, &d, &a);
            }
            checked.extend(s.checked);
        }
        let h = g4.to_bipoly();
        let k = f.div_exact(&h).ok_or_else(|| err("common factor does not divide F"))?;
        ctx.step("linear_pair_gap", json!({"H": h.to_json(), "K": k.to_json()}));
        return Ok(Leaf::Gap {
            subcase: "linear pair".into(),
            factors: vec![h, k],
            analysis: json!({"lines": checked, "note": "no line L = d is descending; density of values not decided"}),
            theory_backed: false,
        });
    }
    let l = linear.first().ok_or_else(|| err("odd-degree common factor without a linear factor"))?.clone();
    let s = search_lines(&f, &l)?;
    if let Some((d, a)) = s.hit {
        return line_leaf(ctx, "linear_factor_line", &l, &d, &a);
    }
    let lb = l.to_bipoly();
    let k = f.div_exact(&lb).ok_or_else(|| err("linear factor does not divide F"))?;
    let levels = level_curves(&k)?;
    ctx.step("linear_factor_gap", json!({"L": lb.to_json(), "K": k.to_json()}));
    Ok(Leaf::Gap {
        subcase: "linear factor".into(),
        factors: vec![lb, k],
        analysis: json!({"lines": s.checked, "levels": levels}),
        theory_backed: true,
    })
}

/// Critical values of `K` together with `±1, 2`.
fn critical_values(k: &BiPoly) -> Vec<Rat> {
    let (kx, ky) = (k.dx(), k.dy());
    let mut out: Vec<Rat> = Vec::new();
    let res = resultant_y(&kx, &ky);
    let xs = if res.is_zero() { vec![] } else { rational_roots(&res) };
    for x0 in xs {
        let a = kx.specialize_x(&x0);
        let b = ky.specialize_x(&x0);
        let g = a.gcd(&b);
        if g.is_zero() || g.degree() == 0 {
            continue;
        }
        for y0 in rational_roots(&g) {
            let c = k.eval(&x0, &y0);
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    for c in [1i64, -1, 2] {
        let c = Rat::from_integer(Int::from(c));
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Cubic level curves `K = c` with their class and a scan of integral points.
fn level_curves(k: &BiPoly) -> Result<Vec<Value>, ClassifyError> {
    if k.total_degree() != 3 {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    for c in critical_values(k) {
        let curve = k - &BiPoly::constant(c.clone());
        let class = cubic_curve_analysis(&curve).map_err(err)?;
        let integral = curve.terms().values().all(|v| v.is_integer() && v.abs() < Rat::from_integer(Int::from(1_000_000_000i64)));
        let scan = integral.then(|| integral_points_scan(&curve, LEVEL_SCAN).to_json());
        out.push(json!({"c": rat_to_canon(&c), "curve": class.to_json(), "scan": scan}));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::analyze;
    use crate::exact::parse::parse_poly;

    fn leaf(s: &str) -> &'static str {
        analyze(&parse_poly(s).unwrap()).unwrap().leaf()
    }

    #[test]
    fn routes() {
        assert_eq!(leaf("x*y*(x*y + 1)"), "linear_pair_gap");
        assert_eq!(leaf("x^4 + x^2*y^2 + x"), "linear_factor_gap");
        assert_eq!(leaf("x^2*y^2"), "homogeneous_empirical");
        assert_eq!(leaf("x^4"), "homogeneous_single");
        assert_eq!(leaf("x^4 + x^2*y^2 - 2*x*y^2"), "linear_factor_line");
    }

    #[test]
    fn restriction_along_a_line() {
        let f = parse_poly("x^4 + x^2*y^2 + x").unwrap();
        let (_, p) = line_restriction(&f, &BinaryForm::x(), &Int::from(2)).unwrap();
        assert_eq!(p.degree(), 2);
        assert!(descending_sign(&p).is_none());
    }
}
