use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use super::rat::{lcm_all, parse_rat, rat_to_canon, rat_to_string, Int, Rat};
use super::unipoly::UniPoly;

/// Sparse polynomial in `x`, `y` keyed by `(deg_x, deg_y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

/// Records how a polynomial was brought to integral form with zero constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub scale: Int,
    pub shift: Rat,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rat, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rat::one(), 0, 1)
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), Rat)>) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in it {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn from_int_terms(ts: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(ts.iter().map(|&(i, j, c)| ((i, j), Rat::from_integer(Int::from(c)))))
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rat> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(0, 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut ds = self.terms.keys().map(|(i, j)| i + j);
        match ds.next() {
            None => true,
            Some(d) => ds.all(|e| e == d),
        }
    }

    /// Degree-`k` homogeneous part.
    pub fn homogeneous_part(&self, k: u32) -> BiPoly {
        Self::from_terms(self.terms.iter().filter(|((i, j), _)| i + j == k).map(|(k, c)| (*k, c.clone())))
    }

    pub fn scale(&self, k: &Rat) -> BiPoly {
        Self::from_terms(self.terms.iter().map(|(key, c)| (*key, c * k)))
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut out = Self::constant(Rat::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact quotient `self / d` by lexicographic division, if `d` divides `self`.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        let (&(di, dj), dc) = d.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        while let Some((&(i, j), c)) = rem.terms.iter().next_back() {
            if i < di || j < dj {
                return None;
            }
            let t = BiPoly::monomial(c / dc, i - di, j - dj);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for ((i, j), c) in &self.terms {
            acc += c * num_traits::pow(x.clone(), *i as usize) * num_traits::pow(y.clone(), *j as usize);
        }
        acc
    }

    pub fn eval_int(&self, x: &Int, y: &Int) -> Rat {
        let mut acc = Rat::zero();
        for ((i, j), c) in &self.terms {
            let m = num_traits::pow(x.clone(), *i as usize) * num_traits::pow(y.clone(), *j as usize);
            acc += c * Rat::from_integer(m);
        }
        acc
    }

    pub fn eval_i64(&self, x: i64, y: i64) -> Rat {
        self.eval_int(&Int::from(x), &Int::from(y))
    }

    /// Substitutes `x -> px`, `y -> py`.
    pub fn substitute(&self, px: &BiPoly, py: &BiPoly) -> BiPoly {
        let maxi = self.deg_x() as usize;
        let maxj = self.deg_y() as usize;
        let mut xp = vec![Self::constant(Rat::one())];
        for k in 0..maxi {
            let next = &xp[k] * px;
            xp.push(next);
        }
        let mut yp = vec![Self::constant(Rat::one())];
        for k in 0..maxj {
            let next = &yp[k] * py;
            yp.push(next);
        }
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            let t = (&xp[*i as usize] * &yp[*j as usize]).scale(c);
            out = &out + &t;
        }
        out
    }

    pub fn dx(&self) -> BiPoly {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|((i, j), c)| ((i - 1, *j), c * Rat::from_integer(Int::from(*i)))),
        )
    }

    pub fn dy(&self) -> BiPoly {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|((i, j), c)| ((*i, j - 1), c * Rat::from_integer(Int::from(*j)))),
        )
    }

    /// Fixes `x = a`, leaving a polynomial in `y`.
    pub fn specialize_x(&self, a: &Rat) -> UniPoly {
        let mut cs = vec![Rat::zero(); self.deg_y() as usize + 1];
        for ((i, j), c) in &self.terms {
            cs[*j as usize] += c * num_traits::pow(a.clone(), *i as usize);
        }
        UniPoly::new(cs)
    }

    /// Fixes `y = b`, leaving a polynomial in `x`.
    pub fn specialize_y(&self, b: &Rat) -> UniPoly {
        let mut cs = vec![Rat::zero(); self.deg_x() as usize + 1];
        for ((i, j), c) in &self.terms {
            cs[*i as usize] += c * num_traits::pow(b.clone(), *j as usize);
        }
        cs.shrink_to_fit();
        UniPoly::new(cs)
    }

    /// Coefficients with respect to `y`: entry `k` is the coefficient of `y^k`, a polynomial in `x`.
    pub fn coeffs_in_y(&self) -> Vec<UniPoly> {
        let dy = self.deg_y() as usize;
        let dx = self.deg_x() as usize;
        let mut rows = vec![vec![Rat::zero(); dx + 1]; dy + 1];
        for ((i, j), c) in &self.terms {
            rows[*j as usize][*i as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::new).collect()
    }

    /// Coefficients with respect to `x`, each a polynomial in `y`.
    pub fn coeffs_in_x(&self) -> Vec<UniPoly> {
        self.swap_xy().coeffs_in_y()
    }

    pub fn swap_xy(&self) -> BiPoly {
        Self::from_terms(self.terms.iter().map(|((i, j), c)| ((*j, *i), c.clone())))
    }

    /// Rebuilds a polynomial from its `y`-coefficients.
    pub fn from_coeffs_in_y(rows: &[UniPoly]) -> BiPoly {
        let mut out = Self::zero();
        for (j, row) in rows.iter().enumerate() {
            for (i, c) in row.coeffs().iter().enumerate() {
                out.add_term(i as u32, j as u32, c.clone());
            }
        }
        out
    }

    /// Embeds a univariate polynomial as a polynomial in `x`.
    pub fn from_uni_x(p: &UniPoly) -> BiPoly {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| ((i as u32, 0), c.clone())))
    }

    pub fn from_uni_y(p: &UniPoly) -> BiPoly {
        Self::from_uni_x(p).swap_xy()
    }

    /// Restriction to the line `t -> (x0 + t*dx, y0 + t*dy)`.
    pub fn along_line(&self, x0: &Rat, y0: &Rat, dxv: &Rat, dyv: &Rat) -> UniPoly {
        let lx = UniPoly::new(vec![x0.clone(), dxv.clone()]);
        let ly = UniPoly::new(vec![y0.clone(), dyv.clone()]);
        let mut out = UniPoly::zero();
        for ((i, j), c) in &self.terms {
            let t = &lx.pow(*i) * &ly.pow(*j);
            out = &out + &t.scale(c);
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn content_lcm(&self) -> Int {
        lcm_all(self.terms.values().map(|c| c.denom()))
    }

    /// `scale * (F - F(0,0))` with the minimal positive integer scale.
    pub fn normalize(&self) -> (BiPoly, Normalization) {
        let shift = self.constant_term();
        let mut g = self.clone();
        g.terms.remove(&(0, 0));
        let scale = g.content_lcm();
        let out = g.scale(&Rat::from_integer(scale.clone()));
        (out, Normalization { scale, shift })
    }

    /// gcd of the integer coefficients; requires an integral polynomial.
    pub fn int_content(&self) -> Int {
        self.terms.values().fold(Int::zero(), |acc, c| acc.gcd(&c.to_integer()))
    }

    /// Monomials in canonical order: by total degree descending, then by x-degree descending.
    pub fn canonical_terms(&self) -> Vec<(u32, u32, Rat)> {
        let mut v: Vec<_> = self.terms.iter().map(|((i, j), c)| (*i, *j, c.clone())).collect();
        v.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        v
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.canonical_terms()
                .into_iter()
                .map(|(i, j, c)| Value::Array(vec![Value::from(i), Value::from(j), Value::from(rat_to_canon(&c))]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Option<BiPoly> {
        let mut out = Self::zero();
        for t in v.as_array()? {
            let t = t.as_array()?;
            if t.len() != 3 {
                return None;
            }
            let i = u32::try_from(t[0].as_u64()?).ok()?;
            let j = u32::try_from(t[1].as_u64()?).ok()?;
            let c = parse_rat(t[2].as_str()?)?;
            out.add_term(i, j, c);
        }
        Some(out)
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((i, j), c) in &o.terms {
            out.add_term(*i, *j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for ((i, j), c) in &o.terms {
            out.add_term(*i, *j, -c.clone());
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &o.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-Rat::one())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, i: u32, j: u32) -> fmt::Result {
    let mut parts = Vec::new();
    if i == 1 {
        parts.push("x".to_string());
    } else if i > 1 {
        parts.push(format!("x^{}", i));
    }
    if j == 1 {
        parts.push("y".to_string());
    } else if j > 1 {
        parts.push(format!("y^{}", j));
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (i, j, c)) in self.canonical_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let constant = i + j == 0;
            if constant {
                write!(f, "{}", rat_to_string(&a))?;
            } else if a.is_one() {
                write_monomial(f, i, j)?;
            } else {
                write!(f, "{}*", rat_to_string(&a))?;
                write_monomial(f, i, j)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{rat, ratio};

    #[test]
    fn exact_division() {
        let a = crate::exact::parse::parse_poly("x^2 + y^2 + y").unwrap();
        let b = crate::exact::parse::parse_poly("x - 2*y + 3").unwrap();
        assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        assert_eq!(a.div_exact(&b), None);
        assert_eq!(BiPoly::zero().div_exact(&b), Some(BiPoly::zero()));
    }

    #[test]
    fn normalize_examples() {
        let f = BiPoly::from_terms([((2, 0), ratio(1, 2)), ((0, 0), rat(1))]);
        let (g, n) = f.normalize();
        assert_eq!(g, BiPoly::from_int_terms(&[(2, 0, 1)]));
        assert_eq!(n.scale, Int::from(2));
        assert_eq!(n.shift, rat(1));

        let f = BiPoly::from_terms([((1, 0), ratio(1, 3)), ((0, 1), ratio(1, 6))]);
        let (g, n) = f.normalize();
        assert_eq!(g, BiPoly::from_int_terms(&[(1, 0, 2), (0, 1, 1)]));
        assert_eq!(n.scale, Int::from(6));
        assert_eq!(g.normalize().0, g);
    }

    #[test]
    fn parts_and_degree() {
        let f = BiPoly::from_int_terms(&[(4, 0, 1), (2, 2, 1), (3, 0, 1), (0, 2, 1)]);
        assert_eq!(f.total_degree(), 4);
        assert_eq!(f.homogeneous_part(3), BiPoly::from_int_terms(&[(3, 0, 1)]));
        assert!(f.homogeneous_part(1).is_zero());
    }

    #[test]
    fn json_round_trip_and_order() {
        let f = BiPoly::from_int_terms(&[(4, 0, 1), (2, 2, -4), (0, 4, 4), (1, 0, 1)]);
        let j = f.to_json();
        assert_eq!(j.to_string(), r#"[[4,0,"1/1"],[2,2,"-4/1"],[0,4,"4/1"],[1,0,"1/1"]]"#);
        assert_eq!(BiPoly::from_json(&j), Some(f));
    }

    #[test]
    fn display_form() {
        let f = BiPoly::from_terms([((1, 1), ratio(1, 2)), ((0, 0), rat(-3))]);
        assert_eq!(f.to_string(), "1/2*x*y - 3");
    }

    #[test]
    fn substitution_and_lines() {
        let f = BiPoly::from_int_terms(&[(2, 0, 1), (0, 2, 1)]);
        let g = f.substitute(&(&BiPoly::x() + &BiPoly::y()), &BiPoly::y());
        assert_eq!(g, BiPoly::from_int_terms(&[(2, 0, 1), (1, 1, 2), (0, 2, 2)]));
        let l = f.along_line(&rat(1), &rat(0), &rat(0), &rat(1));
        assert_eq!(l, UniPoly::from_ints(&[1, 0, 1]));
    }
}
