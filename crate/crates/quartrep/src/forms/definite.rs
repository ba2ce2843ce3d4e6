use num_traits::{One, Signed};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::rat::{sign_i, Int, Rat};
use crate::exact::sturm::{isolate_real_roots, real_root_count};

use super::binary::{factor_form, BinaryForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DefTag {
    PositiveDefinite,
    PositiveSemiNotDefinite,
    NegativeSemiOrDefinite,
    Indefinite,
}

impl DefTag {
    pub fn name(self) -> &'static str {
        match self {
            DefTag::PositiveDefinite => "PositiveDefinite",
            DefTag::PositiveSemiNotDefinite => "PositiveSemiNotDefinite",
            DefTag::NegativeSemiOrDefinite => "NegativeSemiOrDefinite",
            DefTag::Indefinite => "Indefinite",
        }
    }

    pub fn allows_negative(self) -> bool {
        matches!(self, DefTag::NegativeSemiOrDefinite | DefTag::Indefinite)
    }

    pub fn is_psd(self) -> bool {
        matches!(self, DefTag::PositiveDefinite | DefTag::PositiveSemiNotDefinite)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definiteness {
    pub tag: DefTag,
    pub witness_pos: Option<(Int, Int)>,
    pub witness_neg: Option<(Int, Int)>,
}

impl Definiteness {
    pub fn to_json(&self) -> Value {
        let w = |p: &Option<(Int, Int)>| match p {
            Some((a, b)) => json!([a.to_string(), b.to_string()]),
            None => Value::Null,
        };
        json!({"tag": self.tag.name(), "witness_pos": w(&self.witness_pos), "witness_neg": w(&self.witness_neg)})
    }
}

/// Small primitive directions in a fixed order: (1,0), (0,1), (1,1), (1,-1), (2,1), ...
pub fn small_directions(limit: i64) -> Vec<(i64, i64)> {
    let mut out = vec![(1, 0), (0, 1)];
    for s in 2..=limit {
        for a in 1..s {
            let b = s - a;
            if num_integer::gcd(a, b) == 1 {
                out.push((a, b));
                out.push((a, -b));
            }
        }
    }
    out
}

fn find_sign(g: &BinaryForm, want: i32) -> Option<(Int, Int)> {
    for (a, b) in small_directions(12) {
        if sign_i(&g.eval_i64(a, b)) == want {
            return Some((Int::from(a), Int::from(b)));
        }
        if g.degree() % 2 == 1 && sign_i(&g.eval_i64(-a, -b)) == want {
            return Some((Int::from(-a), Int::from(-b)));
        }
    }
    // Exact fallback: sample slopes between and beyond the real roots of G(1, m).
    let dg = g.dehomogenize();
    if dg.degree() == 0 {
        return None;
    }
    let roots = isolate_real_roots(&dg);
    let mut samples: Vec<Rat> = Vec::new();
    if let Some(first) = roots.first() {
        samples.push(&first.lo - Rat::one());
        samples.push(&roots.last().unwrap().hi + Rat::one());
    }
    for w in roots.windows(2) {
        samples.push((&w[0].hi + &w[1].lo) / Rat::from_integer(2.into()));
    }
    for iv in &roots {
        if !iv.is_exact() {
            samples.push(iv.lo.clone());
            samples.push(iv.hi.clone());
        }
    }
    for m in samples {
        let (x, y) = (m.denom().clone(), m.numer().clone());
        for s in [1i64, -1] {
            let (xs, ys) = (&x * Int::from(s), &y * Int::from(s));
            if sign_i(&g.eval_int(&xs, &ys)) == want {
                return Some((xs, ys));
            }
        }
    }
    None
}

/// Non-negativity of `G(1, m)` on ℝ together with `G(0, 1) ≥ 0`.
fn is_psd(g: &BinaryForm) -> bool {
    let dg = g.dehomogenize();
    if g.coeff(g.degree()).is_negative() {
        return false;
    }
    if g.x_multiplicity() % 2 == 1 {
        return false;
    }
    if dg.lc().is_negative() {
        return false;
    }
    dg.squarefree_decomposition().iter().all(|(f, m)| m % 2 == 0 || real_root_count(f, None) == 0)
}

pub fn definiteness(g: &BinaryForm) -> Definiteness {
    assert!(!g.is_zero(), "definiteness of the zero form");
    let tag = if g.degree() % 2 == 1 {
        DefTag::Indefinite
    } else if is_psd(g) {
        let dg = g.dehomogenize();
        if g.x_multiplicity() == 0 && (dg.degree() == 0 || real_root_count(&dg, None) == 0) {
            DefTag::PositiveDefinite
        } else {
            DefTag::PositiveSemiNotDefinite
        }
    } else if is_psd(&g.scale(&-Rat::one())) {
        DefTag::NegativeSemiOrDefinite
    } else {
        DefTag::Indefinite
    };
    let witness_pos = if tag == DefTag::NegativeSemiOrDefinite { None } else { find_sign(g, 1) };
    let witness_neg = if tag.allows_negative() { find_sign(g, -1) } else { None };
    Definiteness { tag, witness_pos, witness_neg }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("form is not positive semi-definite")]
pub struct NotPsd;

/// Splitting of a PSD form into a definite part and the real-rooted part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitP0 {
    pub p0: BinaryForm,
    pub f4_tilde: BinaryForm,
    /// Irreducible real-rooted factors of `f4_tilde` with their multiplicities.
    pub real_factors: Vec<(BinaryForm, usize)>,
    pub definite: bool,
}

impl SplitP0 {
    pub fn to_json(&self) -> Value {
        json!({
            "p0": self.p0.to_json(),
            "f4_tilde": self.f4_tilde.to_json(),
            "definite": self.definite,
            "real_factors": self.real_factors.iter().map(|(h, m)| json!({"factor": h.to_json(), "mult": m})).collect::<Vec<_>>(),
        })
    }
}

pub fn has_real_zero(h: &BinaryForm) -> bool {
    h.degree() > 0 && (h.x_multiplicity() > 0 || real_root_count(&h.dehomogenize(), None) > 0)
}

pub fn split_p0(f4: &BinaryForm) -> Result<SplitP0, NotPsd> {
    if f4.is_zero() || !definiteness(f4).tag.is_psd() {
        return Err(NotPsd);
    }
    let ff = factor_form(f4);
    let mut p0 = BinaryForm::constant(ff.content.clone());
    let mut tilde = BinaryForm::one();
    let mut real_factors = Vec::new();
    for (h, m) in ff.factors {
        if has_real_zero(&h) {
            debug_assert!(m % 2 == 0);
            tilde = tilde.mul(&h.pow(m as u32));
            real_factors.push((h, m));
        } else {
            p0 = p0.mul(&h.pow(m as u32));
        }
    }
    let definite = real_factors.is_empty();
    Ok(SplitP0 { p0, f4_tilde: tilde, real_factors, definite })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(cs: &[i64]) -> BinaryForm {
        BinaryForm::from_ints(cs)
    }

    #[test]
    fn definiteness_examples() {
        assert_eq!(definiteness(&f(&[1, 0, 0, 0, 1])).tag, DefTag::PositiveDefinite);
        assert_eq!(definiteness(&f(&[0, 0, 1, 0, 0])).tag, DefTag::PositiveSemiNotDefinite);
        let d = definiteness(&f(&[1, 0, 0, 0, -1]));
        assert_eq!(d.tag, DefTag::Indefinite);
        assert_eq!(d.witness_neg, Some((Int::from(0), Int::from(1))));
        assert_eq!(definiteness(&f(&[-1, 0, -1])).tag, DefTag::NegativeSemiOrDefinite);
        // x^4 + 2 x y^3 takes the value -1 at (1, -1)
        let d = definiteness(&f(&[1, 0, 0, 2, 0]));
        assert_eq!(d.tag, DefTag::Indefinite);
        let (a, b) = d.witness_neg.unwrap();
        assert!(f(&[1, 0, 0, 2, 0]).eval_int(&a, &b).is_negative());
    }

    #[test]
    fn split_examples() {
        let s = split_p0(&f(&[1, 0, 1, 0, 0])).unwrap();
        assert_eq!(s.p0, f(&[1, 0, 1]));
        assert_eq!(s.f4_tilde, f(&[1, 0, 0]));
        let s = split_p0(&f(&[1, 0, -4, 0, 4])).unwrap();
        assert_eq!(s.p0, BinaryForm::one());
        assert_eq!(s.f4_tilde, f(&[1, 0, -4, 0, 4]));
        let s = split_p0(&f(&[1, 0, 2, 0, 1])).unwrap();
        assert!(s.definite);
        assert_eq!(s.f4_tilde, BinaryForm::one());
        assert!(split_p0(&f(&[1, 0, 0, 0, -1])).is_err());
    }
}
