use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::exact::bipoly::BiPoly;
use crate::exact::factor::uni_factor;
use crate::exact::rat::{lcm_all, parse_rat, rat_to_canon, Int, Rat};
use crate::exact::unipoly::UniPoly;

/// Homogeneous form of degree `d`; `coeffs[k]` multiplies `x^(d-k) y^k`.
/// The zero form is stored with degree 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<Rat>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty());
        if coeffs.iter().all(|c| c.is_zero()) {
            return Self::zero();
        }
        BinaryForm { degree: coeffs.len() - 1, coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Rat::from_integer(Int::from(c))).collect())
    }

    pub fn zero() -> Self {
        BinaryForm { degree: 0, coeffs: vec![Rat::zero()] }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_ints(&[1, 0])
    }

    pub fn y() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// Degree-`d` homogeneous part of `f`, as a form.
    pub fn from_bipoly(f: &BiPoly, d: u32) -> Self {
        let cs = (0..=d).map(|k| f.coeff(d - k, k)).collect();
        Self::new(cs)
    }

    pub fn to_bipoly(&self) -> BiPoly {
        let d = self.degree as u32;
        BiPoly::from_terms(self.coeffs.iter().enumerate().map(|(k, c)| ((d - k as u32, k as u32), c.clone())))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0
    }

    /// `g(m) = G(1, m)`.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(self.coeffs.clone())
    }

    /// `x^d g(y/x)`, requiring `deg g ≤ d`.
    pub fn homogenize(g: &UniPoly, d: usize) -> Self {
        if g.is_zero() {
            return Self::zero();
        }
        assert!(g.degree() <= d, "homogenizing above the target degree");
        Self::new((0..=d).map(|k| g.coeff(k)).collect())
    }

    /// Multiplicity of the factor `x`.
    pub fn x_multiplicity(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        self.degree - self.dehomogenize().degree()
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            acc += c * num_traits::pow(x.clone(), self.degree - k) * num_traits::pow(y.clone(), k);
        }
        acc
    }

    pub fn eval_int(&self, x: &Int, y: &Int) -> Rat {
        self.eval(&Rat::from_integer(x.clone()), &Rat::from_integer(y.clone()))
    }

    pub fn eval_i64(&self, x: i64, y: i64) -> Rat {
        self.eval_int(&Int::from(x), &Int::from(y))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        BinaryForm { degree: self.degree, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn mul(&self, o: &BinaryForm) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut cs = vec![Rat::zero(); self.degree + o.degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                cs[i + j] += a * b;
            }
        }
        Self::new(cs)
    }

    pub fn add(&self, o: &BinaryForm) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, o.degree, "adding forms of different degrees");
        Self::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &BinaryForm) -> Self {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact quotient `self / h`, if `h` divides `self`.
    pub fn div_exact(&self, h: &BinaryForm) -> Option<BinaryForm> {
        assert!(!h.is_zero(), "division by the zero form");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if h.degree > self.degree {
            return None;
        }
        let q = self.dehomogenize().exact_div(&h.dehomogenize())?;
        let d = self.degree - h.degree;
        (q.degree() <= d).then(|| Self::homogenize(&q, d))
    }

    pub fn divides(&self, g: &BinaryForm) -> bool {
        g.div_exact(self).is_some()
    }

    /// `(content, primitive)` with integral primitive part whose first nonzero coefficient is positive.
    pub fn content_primitive(&self) -> (Rat, BinaryForm) {
        if self.is_zero() {
            return (Rat::zero(), Self::zero());
        }
        let den = lcm_all(self.coeffs.iter().map(|c| c.denom()));
        let ints: Vec<Int> = self.coeffs.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(Int::zero(), |acc, c| acc.gcd(c));
        if ints.iter().find(|c| !c.is_zero()).unwrap().is_negative() {
            g = -g;
        }
        let prim = BinaryForm {
            degree: self.degree,
            coeffs: ints.iter().map(|c| Rat::from_integer(c / &g)).collect(),
        };
        (Rat::new(g, den), prim)
    }

    pub fn primitive(&self) -> BinaryForm {
        self.content_primitive().1
    }

    pub fn int_coeffs(&self) -> Vec<Int> {
        self.coeffs.iter().map(|c| c.to_integer()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Discriminant `b² − 4ac` of a quadratic form.
    pub fn discriminant2(&self) -> Rat {
        assert_eq!(self.degree, 2);
        let (a, b, c) = (&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]);
        b * b - Rat::from_integer(4.into()) * a * c
    }

    pub fn canonical_cmp(&self, o: &BinaryForm) -> std::cmp::Ordering {
        self.degree.cmp(&o.degree).then_with(|| self.coeffs.cmp(&o.coeffs))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "coeffs": self.coeffs.iter().map(rat_to_canon).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let d = v.get("degree")?.as_u64()? as usize;
        let cs: Option<Vec<Rat>> = v.get("coeffs")?.as_array()?.iter().map(|c| c.as_str().and_then(parse_rat)).collect();
        let cs = cs?;
        if cs.len() != d + 1 {
            return None;
        }
        Some(Self::new(cs))
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bipoly())
    }
}

/// Factorization of a form into irreducible primitive forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormFactorization {
    pub content: Rat,
    pub factors: Vec<(BinaryForm, usize)>,
}

impl FormFactorization {
    pub fn expand(&self) -> BinaryForm {
        let mut out = BinaryForm::constant(self.content.clone());
        for (h, m) in &self.factors {
            out = out.mul(&h.pow(*m as u32));
        }
        out
    }
}

pub fn factor_form(g: &BinaryForm) -> FormFactorization {
    assert!(!g.is_zero(), "factoring the zero form");
    let mut factors: Vec<(BinaryForm, usize)> = Vec::new();
    let xm = g.x_multiplicity();
    if xm > 0 {
        factors.push((BinaryForm::x(), xm));
    }
    let dg = g.dehomogenize();
    if dg.degree() > 0 {
        for (f, m) in uni_factor(&dg).factors {
            let h = BinaryForm::homogenize(&f, f.degree()).primitive();
            factors.push((h, m));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    let mut prod = BinaryForm::one();
    for (h, m) in &factors {
        prod = prod.mul(&h.pow(*m as u32));
    }
    let k = (0..=g.degree()).find(|&k| !prod.coeff(k).is_zero()).unwrap();
    let content = g.coeff(k) / prod.coeff(k);
    let out = FormFactorization { content, factors };
    debug_assert_eq!(out.expand(), *g);
    out
}

fn gcd2(a: &BinaryForm, b: &BinaryForm) -> BinaryForm {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let xm = a.x_multiplicity().min(b.x_multiplicity());
    let g = a.dehomogenize().gcd(&b.dehomogenize());
    BinaryForm::x().pow(xm as u32).mul(&BinaryForm::homogenize(&g, g.degree())).primitive()
}

/// Primitive gcd of the inputs, with `gcd(G, 0) = G`.
pub fn form_gcd(forms: &[BinaryForm]) -> Option<BinaryForm> {
    let nonzero: Vec<&BinaryForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    let first = nonzero.first()?;
    Some(nonzero[1..].iter().fold(first.primitive(), |acc, f| gcd2(&acc, f)))
}

/// Largest `n` with `h^n | g`.
pub fn multiplicity(h: &BinaryForm, g: &BinaryForm) -> usize {
    assert!(h.degree() > 0, "multiplicity of a constant");
    assert!(!g.is_zero());
    let mut n = 0;
    let mut rest = g.clone();
    while let Some(q) = rest.div_exact(h) {
        n += 1;
        rest = q;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn f(cs: &[i64]) -> BinaryForm {
        BinaryForm::from_ints(cs)
    }

    #[test]
    fn factor_examples() {
        let ff = factor_form(&f(&[1, 0, -4, 0, 4]));
        assert_eq!(ff.factors, vec![(f(&[1, 0, -2]), 2)]);
        assert_eq!(ff.content, rat(1));
        let ff = factor_form(&f(&[0, 0, 1, 0, 0]));
        assert_eq!(ff.factors, vec![(f(&[0, 1]), 2), (f(&[1, 0]), 2)]);
        let ff = factor_form(&f(&[1, 0, 0, 0, 1]));
        assert_eq!(ff.factors, vec![(f(&[1, 0, 0, 0, 1]), 1)]);
        let ff = factor_form(&f(&[-2, 0, 2]));
        assert_eq!(ff.expand(), f(&[-2, 0, 2]));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(form_gcd(&[f(&[0, 0, 1, 0, 0]), f(&[1, 0, 0, 0])]), Some(f(&[1, 0, 0])));
        assert_eq!(form_gcd(&[f(&[1, 0, 0]), f(&[0, 0, 0, 1])]), Some(BinaryForm::one()));
        assert_eq!(form_gcd(&[f(&[1, 0, -2]), BinaryForm::zero()]), Some(f(&[1, 0, -2])));
        assert_eq!(form_gcd(&[BinaryForm::zero()]), None);
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity(&BinaryForm::x(), &f(&[0, 0, 1, 0, 0])), 2);
        assert_eq!(multiplicity(&f(&[1, 0, -2]), &f(&[1, 0, -4, 0, 4])), 2);
        assert_eq!(multiplicity(&BinaryForm::x(), &f(&[0, 0, 0, 0, 1])), 0);
    }

    #[test]
    fn division_respects_degree() {
        // y^2 / x is not a form
        assert!(f(&[0, 0, 1]).div_exact(&BinaryForm::x()).is_none());
        assert_eq!(f(&[1, 1, 0]).div_exact(&BinaryForm::x()), Some(f(&[1, 1])));
    }
}
