//! Quadratically composed shapes: `F = H^{2r} G4 + H^r G3 + F2 + F1` with `H` linear (r = 1, 2)
//! or an indefinite irreducible quadratic.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::dioph::cf::{cf_expand_quad, convergents};
use crate::dioph::witness::{dirlem_pairs, CONVERGENT_BUDGET};
use crate::exact::bipoly::BiPoly;
use crate::exact::factor::rational_roots;
use crate::exact::rat::{ceil_rat, floor_rat, lcm_all, rat_to_canon, sign_i, Int, Rat};
use crate::exact::sturm::{isolate_real_roots, root_bound};
use crate::exact::unimodular::{apply_unimodular, unimodular_from_linear, UnimodularMap};
use crate::exact::unipoly::UniPoly;
use crate::forms::binary::BinaryForm;
use crate::forms::direction::{directions_of_irreducible, sign_at_direction, DirKind};

use super::completion;
use super::composition::detect_composition;
use super::family::{curve_family, sequence_family, Chain};
use super::quadratic::complete_square_quadratic;
use super::report::{uni_to_json, DensityClass};
use super::{ClassifyError, Ctx, Leaf};

fn err(e: impl std::fmt::Display) -> ClassifyError {
    ClassifyError::Inconsistent(e.to_string())
}

fn r(v: &Rat) -> Value {
    json!(rat_to_canon(v))
}

/// Map with `u = H` and the coefficients of `F ∘ A⁻¹` in powers of `v`.
fn v_rows(f: &BiPoly, h: &BinaryForm) -> Result<(UnimodularMap, Vec<UniPoly>), ClassifyError> {
    let hc = h.int_coeffs();
    let a = unimodular_from_linear(&hc[0], &hc[1]).map_err(err)?;
    let g = apply_unimodular(f, &a);
    let mut rows = g.coeffs_in_y();
    if rows.len() > 3 {
        return Err(ClassifyError::Shape(format!("F∘A⁻¹ has degree {} in v", rows.len() - 1)));
    }
    rows.resize(3, UniPoly::zero());
    Ok((a, rows))
}

/// An integer `w` with `g(w) < 0`, if one exists.
fn negative_integer_value(g: &UniPoly) -> Option<Int> {
    if g.is_zero() {
        return None;
    }
    let neg = |w: &Int| g.eval_int(w).is_negative();
    if g.degree() == 0 {
        return neg(&Int::zero()).then(Int::zero);
    }
    if g.lc().is_negative() || g.degree() % 2 == 1 {
        let b = ceil_rat(&root_bound(g)) + Int::one();
        return [b.clone(), -b].into_iter().find(neg);
    }
    let roots = isolate_real_roots(g);
    let (lo, hi) = (floor_rat(&roots.first()?.lo), ceil_rat(&roots.last()?.hi));
    let mut w = lo;
    let mut steps = 0;
    while w <= hi && steps < 1_000_000 {
        if neg(&w) {
            return Some(w);
        }
        w += 1;
        steps += 1;
    }
    None
}

fn integer_roots(g: &UniPoly) -> Vec<Int> {
    if g.is_zero() {
        return vec![];
    }
    rational_roots(g).into_iter().filter(|x| x.is_integer()).map(|x| x.to_integer()).collect()
}

/// Outcome of the linear-square analysis at one direction.
pub(crate) enum LinearSquare {
    Unbounded { node: &'static str, chain: Chain, recipe: Value, data: Value },
    Sector { data: Value },
}

/// `H` linear with `r = s = 1`: `F ∘ A⁻¹ = g2(u) v² + g1(u) v + g0(u)`.
pub(crate) fn prop_first(ctx: &mut Ctx, h: &BinaryForm) -> Result<LinearSquare, ClassifyError> {
    let (a, rows) = v_rows(&ctx.f, h)?;
    let (g0, g1, g2) = (&rows[0], &rows[1], &rows[2]);
    if g2.is_zero() {
        return Err(ClassifyError::Shape("g2 vanishes identically".into()));
    }
    let two_g2 = g2.scale(&Rat::from_integer(2.into()));
    let (q, hrem) = g1.div_rem(&two_g2);
    ctx.completions.push(completion::v_quadratic(&a, [g0, g1, g2], Some((&q, &hrem))));
    let disc = &(g1 * g1) - &(&(g0 * g2) * &UniPoly::constant(Rat::from_integer(4.into())));
    let back = a.inverse();
    let mut data = json!({
        "form": h.to_json(),
        "map": a.to_json(),
        "g2": uni_to_json(g2), "g1": uni_to_json(g1), "g0": uni_to_json(g0),
        "q": uni_to_json(&q), "h": uni_to_json(&hrem),
        "D": uni_to_json(&disc),
        "exceptional_lines": integer_roots(g2).iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    });
    if let Some(w) = negative_integer_value(g2) {
        let px = UniPoly::from_bigints(&[w.clone()]);
        let py = UniPoly::from_ints(&[0, 1]);
        let (chain, recipe) = curve_family(&ctx.f, &px, &py, Some(&back), &ctx.target, "mapped_line", json!({"u": w.to_string()}))?;
        data["outcome"] = json!("negative g2 value");
        return Ok(LinearSquare::Unbounded { node: "linear_square_line", chain, recipe, data });
    }
    if disc.is_zero() || disc.degree() <= 2 {
        data["outcome"] = json!("bounded discriminant");
        return Ok(LinearSquare::Sector { data });
    }
    let d = disc.degree();
    let lc = sign_i(&disc.lc());
    // 𝔇 = D/(4 g2) with g2 > 0 at both ends
    let grows: Vec<i64> = [1i64, -1].into_iter().filter(|&s| lc * if d % 2 == 1 { s as i32 } else { 1 } > 0).collect();
    if grows.is_empty() {
        data["outcome"] = json!("discriminant tends to -infinity");
        return Ok(LinearSquare::Sector { data });
    }
    let neg_q = q.scale(&-Rat::one());
    if neg_q.int_coeffs().is_some() {
        let (chain, recipe) = curve_family(&ctx.f, &UniPoly::from_ints(&[0, 1]), &neg_q, Some(&back), &ctx.target, "drift_curve", Value::Null)?;
        data["outcome"] = json!("drift along v = -q(u)");
        return Ok(LinearSquare::Unbounded { node: "linear_square_drift", chain, recipe, data });
    }
    let m = lcm_all(q.coeffs().iter().map(|c| c.denom()));
    let mut u0 = Int::zero();
    while u0 < m {
        let px = UniPoly::from_bigints(&[u0.clone(), m.clone()]);
        let py = neg_q.compose(&px);
        if py.int_coeffs().is_some() {
            if let Ok((chain, recipe)) = curve_family(&ctx.f, &px, &py, Some(&back), &ctx.target, "drift_progression", json!({"modulus": m.to_string(), "residue": u0.to_string()})) {
                data["outcome"] = json!("drift along an integral progression");
                return Ok(LinearSquare::Unbounded { node: "linear_square_drift", chain, recipe, data });
            }
        }
        u0 += 1;
    }
    for &s in &grows {
        let pts: Vec<(Int, Int)> = (0..200u32)
            .map(|j| {
                let u = (Int::one() << j) * Int::from(s);
                let vr = g1.eval_int(&u) / two_g2.eval_int(&u);
                let v = -floor_rat(&(vr + Rat::new(Int::one(), Int::from(2))));
                back.map_point(&u, &v)
            })
            .collect();
        let recipe = json!({"kind": "rounded_drift", "map": back.to_json(), "u": format!("{s}*2^j"), "v": "-round(g1(u)/(2 g2(u)))"});
        if let Ok((chain, recipe)) = sequence_family(&ctx.f, pts, &ctx.target, recipe) {
            data["outcome"] = json!("rounded drift");
            return Ok(LinearSquare::Unbounded { node: "linear_square_drift", chain, recipe, data });
        }
    }
    data["outcome"] = json!("fractional_shift");
    Ok(LinearSquare::Sector { data })
}

/// `H` linear with `r = s = 2`: `F ∘ A⁻¹ = b v² + v g1(u) + g0(u)`.
pub(crate) fn prop_second(ctx: &mut Ctx, h: &BinaryForm) -> Result<Leaf, ClassifyError> {
    let (a, rows) = v_rows(&ctx.f, h)?;
    let (g0, g1) = (&rows[0], &rows[1]);
    if rows[2].degree() > 0 {
        return Err(ClassifyError::Shape("v² coefficient is not constant".into()));
    }
    let b = rows[2].coeff(0);
    ctx.completions.push(completion::v_quadratic(&a, [g0, g1, &rows[2]], None));
    let four = Rat::from_integer(4.into());
    let disc = &(g1 * g1) - &g0.scale(&(&four * &b));
    let back = a.inverse();
    let mut data = json!({
        "form": h.to_json(),
        "map": a.to_json(),
        "b": r(&b), "g1": uni_to_json(g1), "g0": uni_to_json(g0),
        "D": uni_to_json(&disc),
    });
    if !b.is_positive() {
        let u0 = if b.is_negative() {
            Int::zero()
        } else {
            (0..8i64).map(Int::from).find(|w| !g1.eval_int(w).is_zero()).ok_or_else(|| ClassifyError::Inconsistent("g1 vanishes on 0..8".into()))?
        };
        let (chain, recipe) =
            curve_family(&ctx.f, &UniPoly::from_bigints(&[u0.clone()]), &UniPoly::from_ints(&[0, 1]), Some(&back), &ctx.target, "mapped_line", json!({"u": u0.to_string()}))?;
        ctx.step("composed_linear_fourth", data);
        ctx.step("linear_fourth_line", json!({"u": u0.to_string()}));
        return Ok(Leaf::Unbounded { chain, recipe });
    }
    let d = if disc.is_zero() { 0 } else { disc.degree() };
    let lc = if disc.is_zero() { 0 } else { sign_i(&disc.lc()) };
    data["D_degree"] = json!(d);
    if d == 0 {
        let (outer, inner) = detect_composition(&ctx.f).ok_or_else(|| ClassifyError::Inconsistent("constant discriminant without composition".into()))?;
        ctx.step("composed_linear_fourth", data);
        ctx.step("linear_fourth_single", json!({"outer": uni_to_json(&outer), "inner": inner.to_json()}));
        return Ok(Leaf::Composition { outer, inner });
    }
    if d % 2 == 1 || lc > 0 {
        let s: i64 = if d % 2 == 1 && lc < 0 { -1 } else { 1 };
        let two_b = &b * Rat::from_integer(2.into());
        let pts: Vec<(Int, Int)> = (0..200u32)
            .map(|j| {
                let u = (Int::one() << j) * Int::from(s);
                let v = -floor_rat(&(g1.eval_int(&u) / &two_b));
                back.map_point(&u, &v)
            })
            .collect();
        let recipe = json!({"kind": "floor_drift", "map": back.to_json(), "u": format!("{s}*2^j"), "v": "-floor(g1(u)/(2b))"});
        let (chain, recipe) = sequence_family(&ctx.f, pts, &ctx.target, recipe)?;
        ctx.step("composed_linear_fourth", data);
        ctx.step("linear_fourth_drift", json!({"orientation": s}));
        return Ok(Leaf::Unbounded { chain, recipe });
    }
    match d {
        2 => {
            let (e, ff, g) = (disc.coeff(2), disc.coeff(1), disc.coeff(0));
            let c0 = (&ff * &ff - &four * &e * &g) / (Rat::from_integer(16.into()) * &b * &e);
            ctx.completions.push(completion::landau_reduction(&a, &b, g1, &e, &ff, &c0));
            ctx.step("composed_linear_fourth", data);
            ctx.step("linear_fourth_landau", json!({"e": r(&e), "f": r(&ff), "c0": r(&c0)}));
            Ok(Leaf::Sparse { class: DensityClass::LandauLogHalf, details: json!({"reduction": "positive definite binary quadratic", "e": r(&e), "c0": r(&c0)}) })
        }
        4 => {
            let lambda = Rat::new(Int::one(), Int::from(8));
            ctx.step("composed_linear_fourth", data);
            ctx.step("linear_fourth_sector", json!({"lambda": r(&lambda)}));
            Ok(Leaf::Sparse {
                class: DensityClass::PowerOneMinusLambda(lambda.clone()),
                details: json!({"lambda": r(&lambda), "sector_constant": "1", "directions": [{"form": h.to_json(), "r": 2}]}),
            })
        }
        _ => Err(ClassifyError::Shape(format!("discriminant of degree {d}"))),
    }
}

/// Index (1-based) of the convergent producing `(x, y)`, if any.
fn convergent_index(slope: &crate::forms::surd::QuadIrr, x: &Int, y: &Int) -> Option<usize> {
    let cf = cf_expand_quad(slope);
    convergents(&cf, CONVERGENT_BUDGET).iter().position(|(p, q)| q.abs() == x.abs() && p.abs() == y.abs()).map(|i| i + 1)
}

/// `H` an indefinite irreducible quadratic: `F = a4 (H(x+q1, y+q2) + q3)² + Q`.
pub(crate) fn prop_last(ctx: &mut Ctx, h: &BinaryForm) -> Result<Leaf, ClassifyError> {
    let f = ctx.f.clone();
    let f4 = BinaryForm::from_bipoly(&f, 4);
    let f3 = BinaryForm::from_bipoly(&f, 3);
    let a4f = f4.div_exact(&h.mul(h)).filter(|q| q.degree() == 0).ok_or_else(|| ClassifyError::Shape("F4 is not a multiple of H²".into()))?;
    let a4 = a4f.coeff(0);
    let l = if f3.is_zero() { BinaryForm::zero() } else { f3.div_exact(h).ok_or_else(|| ClassifyError::Shape("H does not divide F3".into()))? };
    let two_a4 = &a4 * Rat::from_integer(2.into());
    let k = &h.to_bipoly() + &l.to_bipoly().scale(&(Rat::one() / &two_a4));
    let (q1, q2, q3) = complete_square_quadratic(&k)?;
    let q = &f - &k.pow(2).scale(&a4);
    if q.total_degree() > 2 {
        return Err(ClassifyError::Inconsistent("remainder Q has degree above 2".into()));
    }
    ctx.completions.push(completion::shifted_power(&a4, &h.to_bipoly(), [&q1, &q2, &q3], 2, &q));
    let dirs = directions_of_irreducible(h);
    let qq2 = BinaryForm::from_bipoly(&q, 2);
    let mut data = json!({
        "form": h.to_json(),
        "a4": r(&a4), "L": l.to_json(),
        "q1": r(&q1), "q2": r(&q2), "q3": r(&q3),
        "Q": q.to_json(),
        "directions": dirs.iter().map(|d| d.to_json()).collect::<Vec<_>>(),
    });
    if !qq2.is_zero() && !h.divides(&qq2) {
        let signs: Vec<i32> = dirs.iter().map(|xi| sign_at_direction(&qq2, xi, None)).collect::<Result<_, _>>().map_err(err)?;
        data["q2_signs"] = json!(signs);
        ctx.step("composed_quadratic", data);
        if let Some(i) = signs.iter().position(|&s| s < 0) {
            let (chain, recipe) = dirlem_family(ctx, h, &dirs[i].kind, 1, [&q1, &q2])?;
            ctx.step("quadratic_pell", json!({"direction": dirs[i].to_json()}));
            return Ok(Leaf::Unbounded { chain, recipe });
        }
        let lambda = Rat::new(Int::one(), Int::from(4));
        ctx.step("quadratic_sector", json!({"lambda": r(&lambda)}));
        return Ok(Leaf::Sparse {
            class: DensityClass::PowerOneMinusLambda(lambda.clone()),
            details: json!({"lambda": r(&lambda), "sector_constant": "1", "directions": dirs.iter().map(|d| json!({"direction": d.to_json(), "r": 1})).collect::<Vec<_>>()}),
        });
    }
    // Q2 = q0 H: F = a4 (K + q0/(2 a4))² + M + c
    let q0 = if qq2.is_zero() { Rat::zero() } else { qq2.div_exact(h).expect("checked").coeff(0) };
    let rest = &q - &k.scale(&q0);
    let m = BinaryForm::from_bipoly(&rest, 1);
    data["q0"] = r(&q0);
    data["M"] = m.to_json();
    ctx.step("composed_quadratic", data);
    if !m.is_zero() {
        let xi = &dirs[0];
        let s = sign_at_direction(&m, xi, Some(1)).map_err(err)?;
        let orientation = if s > 0 { -1 } else { 1 };
        let (chain, recipe) = dirlem_family(ctx, h, &xi.kind, orientation, [&q1, &q2])?;
        ctx.step("quadratic_linear_drift", json!({"direction": xi.to_json(), "orientation": orientation}));
        return Ok(Leaf::Unbounded { chain, recipe });
    }
    let (outer, inner) = detect_composition(&f).ok_or_else(|| ClassifyError::Inconsistent("Q without linear part but no composition".into()))?;
    ctx.step("quadratic_single", json!({"outer": uni_to_json(&outer), "inner": inner.to_json()}));
    Ok(Leaf::Composition { outer, inner })
}

/// Points with `H(x + q1, y + q2)` bounded heading to `orientation·(1, m)`.
fn dirlem_family(ctx: &Ctx, h: &BinaryForm, kind: &DirKind, orientation: i32, q: [&Rat; 2]) -> Result<(Chain, Value), ClassifyError> {
    let DirKind::Quadratic { slope } = kind else {
        return Err(ClassifyError::Inconsistent("indefinite irreducible form with a rational zero".into()));
    };
    let d = q[0].denom().lcm(q[1].denom());
    let m1 = (q[0] * Rat::from_integer(d.clone())).to_integer();
    let m2 = (q[1] * Rat::from_integer(d.clone())).to_integer();
    let pts: Vec<(Int, Int)> = dirlem_pairs(h, slope, orientation, &d, &m1, &m2, 80).into_iter().map(|w| (w.u, w.v)).collect();
    let recipe = json!({
        "kind": "dirlem",
        "form": h.to_json(),
        "slope": slope.to_json(),
        "orientation": orientation,
        "d": d.to_string(), "m1": m1.to_string(), "m2": m2.to_string(),
    });
    let (chain, mut recipe) = sequence_family(&ctx.f, pts, &ctx.target, recipe)?;
    let (x, y, _) = chain.last().expect("nonempty chain");
    let idx = convergent_index(slope, &(&d * x + &m1), &(&d * y + &m2));
    recipe["convergents_used"] = json!(idx);
    Ok((chain, recipe))
}

#[cfg(test)]
mod tests {
    use super::super::analyze;
    use super::super::report::Certificate;
    use super::*;
    use crate::exact::parse::parse_poly;

    fn run(s: &str) -> (String, &'static str) {
        let r = analyze(&parse_poly(s).unwrap()).unwrap();
        (r.verdict.label(), r.leaf())
    }

    #[test]
    fn negative_values_of_quadratics() {
        assert_eq!(negative_integer_value(&UniPoly::from_ints(&[2, 0, 1])), None);
        let w = negative_integer_value(&UniPoly::from_ints(&[-3, 0, 1])).unwrap();
        assert!(w.abs() <= Int::from(1));
        assert!(negative_integer_value(&UniPoly::from_ints(&[5, 1])).is_some());
        // 4u² − 4u + 1 − ε has no integer with negative value
        assert_eq!(negative_integer_value(&UniPoly::from_ints(&[1, -4, 4])), None);
    }

    #[test]
    fn linear_square_examples() {
        assert_eq!(run("x^2*(x^2+y^2) + x*y^2 + y^2"), ("SparseValues(PowerOneMinusLambda)".into(), "linear_square_sector"));
    }

    #[test]
    fn linear_fourth_examples() {
        assert_eq!(run("x^4 + 2*x^2*y + y^2 + x^2"), ("SparseValues(LandauLogHalf)".into(), "linear_fourth_landau"));
        assert_eq!(run("x^4 + x^2*y + y^2"), ("SparseValues(PowerOneMinusLambda)".into(), "linear_fourth_sector"));
        assert_eq!(run("x^4 + x^2*y - y^2").0, "UnboundedBelow");
        assert_eq!(run("x^4 + 2*x^2*y + y^2 + x"), ("UnboundedBelow".into(), "linear_fourth_drift"));
        assert_eq!(run("(x^2 + y)^2 + 3*(x^2 + y)"), ("Composition".into(), "linear_fourth_single"));
    }

    #[test]
    fn quadratic_h_examples() {
        let r = analyze(&parse_poly("(x^2-2*y^2)^2 + x").unwrap()).unwrap();
        assert_eq!(r.leaf(), "quadratic_linear_drift");
        let Certificate::Unbounded(c) = &r.certificate else { panic!() };
        assert!(c.points.iter().any(|(x, y, v)| x == &Int::from(-239) && y == &Int::from(169) && v == &Rat::from_integer(Int::from(-238))));
        assert!(c.recipe["family"]["convergents_used"].as_u64().unwrap() <= 40);
        assert_eq!(run("(x^2-2*y^2)^2 + x^2"), ("SparseValues(PowerOneMinusLambda)".into(), "quadratic_sector"));
        assert_eq!(run("(x^2-2*y^2)^2 + (x^2-2*y^2)"), ("Composition".into(), "quadratic_single"));
        assert_eq!(run("(x^2-2*y^2)^2 - y^2"), ("UnboundedBelow".into(), "quadratic_pell"));
        assert_eq!(run("(x^2-2*y^2+x)^2 + 3*y"), ("UnboundedBelow".into(), "quadratic_linear_drift"));
    }
}
