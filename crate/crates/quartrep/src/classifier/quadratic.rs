use num_traits::{Signed, Zero};
use serde_json::json;

use crate::exact::bipoly::BiPoly;
use crate::exact::rat::{rat_to_canon, Int, Rat};
use crate::exact::unimodular::{apply_unimodular, unimodular_from_linear};
use crate::exact::unipoly::UniPoly;
use crate::forms::binary::{factor_form, BinaryForm};
use crate::forms::definite::{definiteness, DefTag};

use super::completion;
use super::family::{curve_family, line_family};
use super::report::{DensityClass, TraceStep};
use super::{ClassifyError, Ctx, Leaf};

/// `(q1, q2, q3)` with `Q(x, y) = Q2(x + q1, y + q2) + q3`.
pub fn complete_square_quadratic(q: &BiPoly) -> Result<(Rat, Rat, Rat), ClassifyError> {
    if q.total_degree() != 2 {
        return Err(ClassifyError::Shape("complete_square_quadratic needs a quadratic".into()));
    }
    let (a, b, c) = (q.coeff(2, 0), q.coeff(1, 1), q.coeff(0, 2));
    let (d, e, f) = (q.coeff(1, 0), q.coeff(0, 1), q.coeff(0, 0));
    let two = Rat::from_integer(2.into());
    let disc = &b * &b - Rat::from_integer(4.into()) * &a * &c;
    if disc.is_zero() {
        return Err(ClassifyError::Shape("quadratic part has zero discriminant".into()));
    }
    let q1 = -(&two * &c * &d - &b * &e) / &disc;
    let q2 = -(-(&b * &d) + &two * &a * &e) / &disc;
    let q3 = &f - (&a * &q1 * &q1 + &b * &q1 * &q2 + &c * &q2 * &q2);
    let check = completion::shifted(&q.homogeneous_part(2), &q1, &q2, &q3);
    if &check != q {
        return Err(ClassifyError::Inconsistent("square completion identity failed".into()));
    }
    Ok((q1, q2, q3))
}

pub(crate) fn classify_quadratic(ctx: &mut Ctx) -> Result<Leaf, ClassifyError> {
    let f = ctx.f.clone();
    let q2 = BinaryForm::from_bipoly(&f, 2);
    let def = definiteness(&q2);
    ctx.step("quadratic", json!({"q2": q2.to_json(), "definiteness": def.to_json()}));
    match def.tag {
        DefTag::NegativeSemiOrDefinite | DefTag::Indefinite => {
            let (x0, y0) = def.witness_neg.clone().ok_or_else(|| ClassifyError::Inconsistent("no negative direction".into()))?;
            let (chain, recipe) = line_family(&f, (&Int::zero(), &Int::zero()), (&x0, &y0), &ctx.target, "line", json!({"q2_value": rat_to_canon(&q2.eval_int(&x0, &y0))}))?;
            ctx.step("quadratic_indefinite", json!({"direction": [x0.to_string(), y0.to_string()]}));
            Ok(Leaf::Unbounded { chain, recipe })
        }
        DefTag::PositiveSemiNotDefinite => {
            let ff = factor_form(&q2);
            let (l, _) = ff.factors.first().cloned().ok_or_else(|| ClassifyError::Inconsistent("rank-one form without factor".into()))?;
            let lc = l.int_coeffs();
            let a_map = unimodular_from_linear(&lc[0], &lc[1]).map_err(|e| ClassifyError::Inconsistent(e.to_string()))?;
            let g = apply_unimodular(&f, &a_map);
            let e = g.coeff(0, 1);
            ctx.completions.push(completion::mapped(&a_map, &g, "a X^2 + d X + e Y"));
            if !e.is_zero() {
                let sign = if e.is_positive() { -1 } else { 1 };
                let py = UniPoly::from_ints(&[0, sign]);
                let (chain, recipe) = curve_family(&f, &UniPoly::zero(), &py, Some(&a_map.inverse()), &ctx.target, "mapped_line", json!({"e": rat_to_canon(&e)}))?;
                ctx.step("quadratic_square_line", json!({"linear_form": l.to_json(), "e": rat_to_canon(&e)}));
                Ok(Leaf::Unbounded { chain, recipe })
            } else {
                ctx.step("quadratic_square_single", json!({"linear_form": l.to_json(), "a": rat_to_canon(&g.coeff(2, 0)), "d": rat_to_canon(&g.coeff(1, 0))}));
                Ok(Leaf::Sparse { class: DensityClass::Sqrt, details: json!({"reason": "values of a univariate quadratic"}) })
            }
        }
        DefTag::PositiveDefinite => {
            let (q1, q2c, q3) = complete_square_quadratic(&f)?;
            let one = Rat::from_integer(1.into());
            ctx.completions.push(completion::shifted_power(&one, &f.homogeneous_part(2), [&q1, &q2c, &q3], 1, &BiPoly::zero()));
            ctx.step("quadratic_definite", json!({"q1": rat_to_canon(&q1), "q2": rat_to_canon(&q2c), "q3": rat_to_canon(&q3)}));
            Ok(Leaf::Sparse { class: DensityClass::LandauLogHalf, details: json!({"completion": [rat_to_canon(&q1), rat_to_canon(&q2c), rat_to_canon(&q3)]}) })
        }
    }
}

impl Ctx {
    pub(crate) fn step(&mut self, node: &'static str, data: serde_json::Value) {
        self.trace.push(TraceStep::new(node, data));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly;
    use crate::exact::rat::rat;

    #[test]
    fn completion_examples() {
        let q = parse_poly("x^2 + y^2 + 2*x + 4*y + 1").unwrap();
        assert_eq!(complete_square_quadratic(&q).unwrap(), (rat(1), rat(2), rat(-4)));
        // -2(y - 1)^2 = -2y^2 + 4y - 2
        let q = parse_poly("x^2 - 2*y^2 + 4*y").unwrap();
        assert_eq!(complete_square_quadratic(&q).unwrap(), (rat(0), rat(-1), rat(2)));
        let q = parse_poly("x*y + x").unwrap();
        assert_eq!(complete_square_quadratic(&q).unwrap(), (rat(0), rat(1), rat(0)));
        assert!(complete_square_quadratic(&parse_poly("x^2 + 2*x*y + y^2 + x").unwrap()).is_err());
        assert!(complete_square_quadratic(&parse_poly("x^3 + y").unwrap()).is_err());
    }
}
