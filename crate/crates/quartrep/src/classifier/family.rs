use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::exact::bipoly::BiPoly;
use crate::exact::rat::{rat_to_canon, Int, Rat};
use crate::exact::unimodular::UnimodularMap;
use crate::exact::unipoly::UniPoly;

use super::report::uni_to_json;
use super::ClassifyError;

/// Doublings tried along a polynomial family before giving up.
pub const DOUBLING_BUDGET: u32 = 400;

/// Points with strictly decreasing values, at least three, the last one `≤ target`.
pub type Chain = Vec<(Int, Int, Rat)>;

/// Running-minimum chain over `pts`.
pub fn chain_from_points(f: &BiPoly, pts: impl IntoIterator<Item = (Int, Int)>, target: &Rat) -> Option<Chain> {
    let mut out: Chain = Vec::new();
    for (x, y) in pts {
        let v = f.eval_int(&x, &y);
        if out.last().is_none_or(|l| v < l.2) {
            out.push((x, y, v));
            if out.len() >= 3 && &out.last().unwrap().2 <= target {
                return Some(out);
            }
        }
    }
    None
}

/// `F(x(t), y(t))` for integral polynomial curves.
pub fn restrict(f: &BiPoly, px: &UniPoly, py: &UniPoly) -> UniPoly {
    f.substitute(&BiPoly::from_uni_x(px), &BiPoly::from_uni_x(py)).specialize_y(&Rat::zero())
}

/// Sign `σ` with `P(σ t) → −∞`, if any.
pub fn descending_sign(p: &UniPoly) -> Option<i32> {
    if p.degree() == 0 {
        return None;
    }
    let lc = p.lc();
    let d = p.degree();
    if lc.is_negative() {
        Some(1)
    } else if d % 2 == 1 {
        Some(-1)
    } else {
        None
    }
}

fn eval_uni_int(p: &UniPoly, t: &Int) -> Int {
    let v = p.eval_int(t);
    assert!(v.is_integer(), "non-integral family polynomial");
    v.to_integer()
}

/// Family `t ↦ (x(t), y(t))` with `t = σ 2^j`, optionally mapped back through `back`.
pub fn curve_family(
    f: &BiPoly,
    px: &UniPoly,
    py: &UniPoly,
    back: Option<&UnimodularMap>,
    target: &Rat,
    kind: &str,
    extra: Value,
) -> Result<(Chain, Value), ClassifyError> {
    if px.int_coeffs().is_none() || py.int_coeffs().is_none() {
        return Err(ClassifyError::Inconsistent(format!("{kind}: family is not integral")));
    }
    let (fx, fy) = match back {
        Some(a) => {
            let (bx, by) = (BiPoly::from_uni_x(px), BiPoly::from_uni_x(py));
            let mx = &bx.scale(&Rat::from_integer(a.a.clone())) + &by.scale(&Rat::from_integer(a.b.clone()));
            let my = &bx.scale(&Rat::from_integer(a.c.clone())) + &by.scale(&Rat::from_integer(a.d.clone()));
            (mx.specialize_y(&Rat::zero()), my.specialize_y(&Rat::zero()))
        }
        None => (px.clone(), py.clone()),
    };
    let p = restrict(f, &fx, &fy);
    let sigma = descending_sign(&p).ok_or_else(|| ClassifyError::Inconsistent(format!("{kind}: restriction {p} is bounded below")))?;
    let pts = (0..DOUBLING_BUDGET).map(|j| {
        let t = (Int::one() << j) * Int::from(sigma);
        (eval_uni_int(&fx, &t), eval_uni_int(&fy, &t))
    });
    let chain = chain_from_points(f, pts, target).ok_or_else(|| ClassifyError::Budget(format!("{kind}: doubling budget exhausted")))?;
    let recipe = json!({
        "kind": kind,
        "x": uni_to_json(&fx),
        "y": uni_to_json(&fy),
        "restriction": uni_to_json(&p),
        "parameter": format!("t = {}2^j", if sigma < 0 { "-" } else { "" }),
        "extra": extra,
    });
    Ok((chain, recipe))
}

/// Line `base + t·step`.
pub fn line_family(f: &BiPoly, base: (&Int, &Int), step: (&Int, &Int), target: &Rat, kind: &str, extra: Value) -> Result<(Chain, Value), ClassifyError> {
    let px = UniPoly::from_bigints(&[base.0.clone(), step.0.clone()]);
    let py = UniPoly::from_bigints(&[base.1.clone(), step.1.clone()]);
    curve_family(f, &px, &py, None, target, kind, extra)
}

/// Explicit candidate sequence.
pub fn sequence_family(f: &BiPoly, pts: Vec<(Int, Int)>, target: &Rat, recipe: Value) -> Result<(Chain, Value), ClassifyError> {
    let kind = recipe.get("kind").and_then(|k| k.as_str()).unwrap_or("sequence").to_string();
    let chain = chain_from_points(f, pts, target).ok_or_else(|| ClassifyError::Budget(format!("{kind}: candidate sequence exhausted")))?;
    Ok((chain, recipe))
}

/// Small line search: lines `base + t·step` with small base and step whose restriction is unbounded below.
pub fn grid_line_search(f: &BiPoly, radius: i64) -> Option<((Int, Int), (Int, Int))> {
    let steps = crate::forms::definite::small_directions(3);
    for r in 0..=radius {
        for bx in -r..=r {
            for by in -r..=r {
                if bx.abs().max(by.abs()) != r {
                    continue;
                }
                for &(sx, sy) in &steps {
                    let base = (Int::from(bx), Int::from(by));
                    let step = (Int::from(sx), Int::from(sy));
                    let px = UniPoly::from_bigints(&[base.0.clone(), step.0.clone()]);
                    let py = UniPoly::from_bigints(&[base.1.clone(), step.1.clone()]);
                    if descending_sign(&restrict(f, &px, &py)).is_some() {
                        return Some((base, step));
                    }
                }
            }
        }
    }
    None
}

pub fn chain_json(chain: &Chain) -> Value {
    Value::Array(chain.iter().map(|(x, y, v)| json!([x.to_string(), y.to_string(), rat_to_canon(v)])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly;
    use crate::exact::rat::{int, rat};

    #[test]
    fn line_family_descends() {
        let f = parse_poly("x^4 - y^4 + x").unwrap();
        let (chain, recipe) = line_family(&f, (&int(0), &int(0)), (&int(0), &int(1)), &rat(-1_000_000), "line", Value::Null).unwrap();
        assert!(chain.len() >= 3);
        assert!(chain.windows(2).all(|w| w[1].2 < w[0].2));
        assert!(chain.last().unwrap().2 <= rat(-1_000_000));
        assert_eq!(recipe["kind"], "line");
        let g = parse_poly("x^2 + y^2").unwrap();
        assert!(line_family(&g, (&int(0), &int(0)), (&int(1), &int(0)), &rat(-1), "line", Value::Null).is_err());
    }

    #[test]
    fn grid_search_finds_axis_line() {
        let f = parse_poly("x^2*y^2 + x^3 + x^2 + y").unwrap();
        let (base, step) = grid_line_search(&f, 1).unwrap();
        let px = UniPoly::from_bigints(&[base.0, step.0]);
        let py = UniPoly::from_bigints(&[base.1, step.1]);
        assert!(descending_sign(&restrict(&f, &px, &py)).is_some());
        assert!(grid_line_search(&parse_poly("x^4 + y^4").unwrap(), 2).is_none());
    }
}
