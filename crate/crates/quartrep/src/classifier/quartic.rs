use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::dioph::witness::{cont2_points, dirichlet_pairs};
use crate::exact::bipoly::BiPoly;
use crate::exact::rat::{rat_to_canon, Int, Rat};
use crate::forms::binary::{form_gcd, multiplicity, BinaryForm};
use crate::forms::definite::{definiteness, split_p0, DefTag, SplitP0};
use crate::forms::direction::{real_zero_directions, sign_at_direction, DirKind, Direction};

use super::composed::{self, LinearSquare};
use super::family::{grid_line_search, line_family, sequence_family, Chain};
use super::report::DensityClass;
use super::{prime, ClassifyError, Ctx, Leaf};

/// Homogeneous parts `F4, F3, F2, F1` of a normalized quartic.
#[derive(Clone, Debug)]
pub(crate) struct Parts {
    pub f4: BinaryForm,
    pub f3: BinaryForm,
    pub f2: BinaryForm,
    pub f1: BinaryForm,
}

impl Parts {
    pub fn of(f: &BiPoly) -> Self {
        let p = |k| BinaryForm::from_bipoly(f, k);
        Parts { f4: p(4), f3: p(3), f2: p(2), f1: p(1) }
    }
}

fn dir_err(e: impl std::fmt::Display) -> ClassifyError {
    ClassifyError::Inconsistent(e.to_string())
}

pub(crate) fn classify_quartic(ctx: &mut Ctx) -> Result<Leaf, ClassifyError> {
    let p = Parts::of(&ctx.f);
    let def = definiteness(&p.f4);
    ctx.step("quartic_leading", json!({"f4": p.f4.to_json(), "definiteness": def.to_json()}));
    match def.tag {
        DefTag::PositiveDefinite => {
            let bound = crate::oracle::values::rigorous_box(&ctx.f, 100_000);
            ctx.step("definite_leading", json!({"box_at_1e5": bound}));
            Ok(Leaf::Sparse {
                class: DensityClass::Sqrt,
                details: json!({"reason": "positive definite leading form bounds the search box", "rigorous_box": true}),
            })
        }
        DefTag::NegativeSemiOrDefinite | DefTag::Indefinite => {
            let (x0, y0) = def.witness_neg.clone().ok_or_else(|| ClassifyError::Inconsistent("no negative direction".into()))?;
            let v = p.f4.eval_int(&x0, &y0);
            let (chain, recipe) =
                line_family(&ctx.f, (&Int::zero(), &Int::zero()), (&x0, &y0), &ctx.target, "line", json!({"f4_value": rat_to_canon(&v)}))?;
            ctx.step("negative_leading", json!({"direction": [x0.to_string(), y0.to_string()], "f4_value": rat_to_canon(&v)}));
            Ok(Leaf::Unbounded { chain, recipe })
        }
        DefTag::PositiveSemiNotDefinite => semidefinite(ctx, &p),
    }
}

fn dirs_json(ds: &[Direction]) -> Value {
    Value::Array(ds.iter().map(|d| d.to_json()).collect())
}

fn semidefinite(ctx: &mut Ctx, p: &Parts) -> Result<Leaf, ClassifyError> {
    let sp = split_p0(&p.f4).map_err(dir_err)?;
    let ft = sp.f4_tilde.clone();
    let dirs = real_zero_directions(&ft);
    let gcd_ft_f3 = form_gcd(&[ft.clone(), p.f3.clone()]).expect("nonzero");
    let gcd3 = form_gcd(&[ft.clone(), p.f3.clone(), p.f2.clone()]).expect("nonzero");
    let gcd4 = form_gcd(&[ft.clone(), p.f3.clone(), p.f2.clone(), p.f1.clone()]).expect("nonzero");
    let mut data = json!({
        "split": sp.to_json(),
        "directions": dirs_json(&dirs),
        "gcd_f4t_f3": gcd_ft_f3.to_json(),
        "gcd_f4t_f3_f2": gcd3.to_json(),
        "gcd_f4t_f3_f2_f1": gcd4.to_json(),
    });
    if let [(h, 2)] = sp.real_factors.as_slice() {
        if h.degree() == 2 && (p.f3.is_zero() || h.divides(&p.f3)) {
            data["route"] = json!("composed_quadratic");
            ctx.step("semidefinite", data);
            return composed::prop_last(ctx, h);
        }
    }
    if gcd_ft_f3.degree() == 0 {
        data["route"] = json!("free_zero");
        ctx.step("semidefinite", data);
        let xi = dirs.first().ok_or_else(|| ClassifyError::Inconsistent("semidefinite form without real zero".into()))?;
        return free_zero(ctx, p, xi);
    }
    if gcd3.degree() == 0 {
        data["route"] = json!("linked");
        ctx.step("semidefinite", data);
        return linked(ctx, p, &sp, &dirs);
    }
    if gcd4.degree() == 0 {
        data["route"] = json!("common_zero_line");
        ctx.step("semidefinite", data);
        return common_zero_line(ctx, &gcd3);
    }
    data["route"] = json!("common_factor");
    ctx.step("semidefinite", data);
    prime::common_factor(ctx, p, &gcd4)
}

/// Integer points approaching `ξ`; for quadratic `ξ` the orientation makes `odd` negative.
pub(crate) fn direction_witness(ctx: &Ctx, xi: &Direction, odd: Option<&BinaryForm>, kind: &str) -> Result<(Chain, Value), ClassifyError> {
    match &xi.kind {
        DirKind::Rational { x0, y0 } => {
            line_family(&ctx.f, (&Int::zero(), &Int::zero()), (x0, y0), &ctx.target, kind, json!({"direction": xi.to_json()}))
        }
        DirKind::Quadratic { .. } => {
            let sigma = match odd {
                Some(g) => {
                    let s = sign_at_direction(g, xi, Some(1)).map_err(dir_err)?;
                    if s > 0 {
                        -1
                    } else {
                        1
                    }
                }
                None => 1,
            };
            let o = Int::from(sigma);
            let pts: Vec<(Int, Int)> = dirichlet_pairs(xi, 80).into_iter().map(|w| (&w.u * &o, &w.v * &o)).collect();
            let recipe = json!({"kind": kind, "source": "convergents", "direction": xi.to_json(), "orientation": sigma});
            sequence_family(&ctx.f, pts, &ctx.target, recipe)
        }
        DirKind::Algebraic { .. } => Err(ClassifyError::Inconsistent(format!("{kind}: direction of degree ≥ 3"))),
    }
}

fn free_zero(ctx: &mut Ctx, p: &Parts, xi: &Direction) -> Result<Leaf, ClassifyError> {
    let (chain, recipe) = direction_witness(ctx, xi, Some(&p.f3), "free_zero")?;
    let s3 = sign_at_direction(&p.f3, xi, Some(1)).map_err(dir_err)?;
    ctx.step("free_zero", json!({"direction": xi.to_json(), "f3_sign_positive_orientation": s3}));
    Ok(Leaf::Unbounded { chain, recipe })
}

/// Common zero of `F̃4, F3, F2` with `F1` nonzero there: a line on which `F` is linear.
fn common_zero_line(ctx: &mut Ctx, gcd3: &BinaryForm) -> Result<Leaf, ClassifyError> {
    if let Some((base, step)) = grid_line_search(&ctx.f, 2) {
        let (chain, recipe) = line_family(&ctx.f, (&base.0, &base.1), (&step.0, &step.1), &ctx.target, "grid_line", Value::Null)?;
        ctx.step("common_zero_line", json!({"method": "grid", "base": [base.0.to_string(), base.1.to_string()], "step": [step.0.to_string(), step.1.to_string()]}));
        return Ok(Leaf::Unbounded { chain, recipe });
    }
    for xi in real_zero_directions(gcd3) {
        if let DirKind::Rational { x0, y0 } = &xi.kind {
            let (chain, recipe) = line_family(&ctx.f, (&Int::zero(), &Int::zero()), (x0, y0), &ctx.target, "common_zero", json!({"direction": xi.to_json()}))?;
            ctx.step("common_zero_line", json!({"method": "common_zero", "direction": xi.to_json()}));
            return Ok(Leaf::Unbounded { chain, recipe });
        }
    }
    Err(ClassifyError::Inconsistent("common zero of F4~, F3, F2 without a rational line".into()))
}

struct Local {
    xi: Direction,
    r: usize,
    /// `None` when `F3 ≡ 0`.
    s: Option<usize>,
    f2_sign: i32,
}

fn linked(ctx: &mut Ctx, p: &Parts, sp: &SplitP0, dirs: &[Direction]) -> Result<Leaf, ClassifyError> {
    let mut locs = Vec::new();
    for xi in dirs {
        let h = &xi.minimal_form;
        let r = multiplicity(h, &sp.f4_tilde) / 2;
        let s = (!p.f3.is_zero()).then(|| multiplicity(h, &p.f3));
        let f2_sign = sign_at_direction(&p.f2, xi, None).map_err(dir_err)?;
        locs.push(Local { xi: xi.clone(), r, s, f2_sign });
    }
    let big_r = locs.iter().map(|l| l.r).max().unwrap_or(1).max(1);
    let lambda = Rat::new(Int::one(), Int::from(4 * big_r));
    let table: Vec<Value> = locs
        .iter()
        .map(|l| json!({"direction": l.xi.to_json(), "r": l.r, "s": l.s, "f2_sign": l.f2_sign}))
        .collect();
    ctx.step("linked", json!({"per_direction": table, "R": big_r}));

    if let Some(l) = locs.iter().find(|l| l.s == Some(0)) {
        return free_zero(ctx, p, &l.xi.clone());
    }
    if let Some(l) = locs.iter().find(|l| l.f2_sign < 0) {
        let (chain, recipe) = direction_witness(ctx, &l.xi, None, "negative_quadratic")?;
        ctx.step("negative_quadratic", json!({"direction": l.xi.to_json()}));
        return Ok(Leaf::Unbounded { chain, recipe });
    }
    if p.f3.is_zero() {
        ctx.step("vanishing_cubic", json!({"lambda": rat_to_canon(&lambda)}));
        return Ok(Leaf::Sparse { class: DensityClass::PowerOneMinusLambda(lambda.clone()), details: sector_details(&locs, &lambda) });
    }
    for l in locs.iter().filter(|l| l.s.is_some_and(|s| l.r > s)) {
        let s = l.s.unwrap() as u32;
        for sigma in [1i64, -1] {
            let o = Int::from(sigma);
            let pts: Vec<(Int, Int)> = cont2_points(&l.xi, s, 48, &Int::from(2)).into_iter().map(|(x, y)| (&x * &o, &y * &o)).collect();
            let recipe = json!({"kind": "scaled_points", "direction": l.xi.to_json(), "s": s, "orientation": sigma});
            if let Ok((chain, recipe)) = sequence_family(&ctx.f, pts, &ctx.target, recipe) {
                ctx.step("quartic_dominates", json!({"direction": l.xi.to_json(), "r": l.r, "s": s, "orientation": sigma}));
                return Ok(Leaf::Unbounded { chain, recipe });
            }
        }
        return Err(ClassifyError::Budget("scaled points along a direction with r > s".into()));
    }
    let equal: Vec<&Local> = locs.iter().filter(|l| l.s == Some(l.r)).collect();
    if let Some(first) = equal.first() {
        if !first.xi.is_rational() {
            return Err(ClassifyError::Inconsistent("quadratic direction reached the linked composed handler".into()));
        }
        if first.r == 2 {
            return composed::prop_second(ctx, &first.xi.minimal_form);
        }
        let mut analyses = Vec::new();
        let mut found = None;
        for l in &equal {
            match composed::prop_first(ctx, &l.xi.minimal_form)? {
                LinearSquare::Unbounded { node, chain, recipe, data } => {
                    analyses.push(data);
                    found = Some((node, chain, recipe));
                    break;
                }
                LinearSquare::Sector { data } => analyses.push(data),
            }
        }
        ctx.step("composed_linear_square", json!({"analyses": analyses}));
        if let Some((node, chain, recipe)) = found {
            ctx.step(node, Value::Null);
            return Ok(Leaf::Unbounded { chain, recipe });
        }
        ctx.step("linear_square_sector", json!({"lambda": rat_to_canon(&lambda)}));
        return Ok(Leaf::Sparse { class: DensityClass::PowerOneMinusLambda(lambda.clone()), details: sector_details(&locs, &lambda) });
    }
    ctx.step("cubic_dominates", json!({"lambda": rat_to_canon(&lambda)}));
    Ok(Leaf::Sparse { class: DensityClass::PowerOneMinusLambda(lambda.clone()), details: sector_details(&locs, &lambda) })
}

fn sector_details(locs: &[Local], lambda: &Rat) -> Value {
    json!({
        "lambda": rat_to_canon(lambda),
        "sector_constant": "1",
        "directions": locs.iter().map(|l| json!({"direction": l.xi.to_json(), "r": l.r})).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::analyze;
    use crate::exact::parse::parse_poly;

    fn run(s: &str) -> (String, Vec<&'static str>) {
        let r = analyze(&parse_poly(s).unwrap()).unwrap();
        (r.verdict.label(), r.trace.iter().map(|t| t.node).collect())
    }

    #[test]
    fn leading_gate() {
        assert_eq!(run("x^4 - y^4 + x").1.last(), Some(&"negative_leading"));
        assert_eq!(run("x^4 + y^4 + x").0, "SparseValues(Sqrt)");
    }

    #[test]
    fn semidefinite_routes() {
        assert_eq!(run("(x^2-2*y^2)^2 + y^3").1.last(), Some(&"free_zero"));
        assert_eq!(run("x^2*y^2 + x^3 + x^2 + y").1.last(), Some(&"common_zero_line"));
        let (v, t) = run("x^2*(x^2+y^2) + x^3 + y^2");
        assert_eq!((v.as_str(), *t.last().unwrap()), ("SparseValues(PowerOneMinusLambda)", "cubic_dominates"));
        assert_eq!(run("x^4 + x*y^2 + y^2").1.last(), Some(&"quartic_dominates"));
        assert_eq!(run("x^4 + x^2*y^2").1.last(), Some(&"homogeneous_empirical"));
    }
}
