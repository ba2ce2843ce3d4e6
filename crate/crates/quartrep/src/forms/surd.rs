use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::exact::rat::{is_square, isqrt, rat_of, Int, Rat};
use crate::exact::unipoly::UniPoly;

/// Element `(p + q√Δ)/r` of ℚ(√Δ), with `r > 0`, `gcd(p, q, r) = 1` and `Δ` squarefree, `Δ > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadIrr {
    pub p: Int,
    pub q: Int,
    pub r: Int,
    pub delta: Int,
}

fn sign_of_sum(p: &Int, q: &Int, delta: &Int) -> i32 {
    // sign of p + q√Δ
    let sp = if p.is_positive() { 1 } else if p.is_negative() { -1 } else { 0 };
    let sq = if q.is_positive() { 1 } else if q.is_negative() { -1 } else { 0 };
    if sq == 0 {
        return sp;
    }
    if sp == 0 || sp == sq {
        return sq;
    }
    let lhs = p * p;
    let rhs = q * q * delta;
    match lhs.cmp(&rhs) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => 0,
    }
}

impl QuadIrr {
    pub fn new(p: Int, q: Int, r: Int, delta: Int) -> Self {
        assert!(!r.is_zero(), "zero denominator");
        assert!(delta > Int::one() && !is_square(&delta), "Δ must be a positive non-square");
        let mut s = QuadIrr { p, q, r, delta };
        s.canonicalize();
        s
    }

    pub fn from_rat(v: &Rat, delta: &Int) -> Self {
        Self::new(v.numer().clone(), Int::zero(), v.denom().clone(), delta.clone())
    }

    /// `√Δ` itself.
    pub fn sqrt(delta: &Int) -> Self {
        Self::new(Int::zero(), Int::one(), Int::one(), delta.clone())
    }

    fn canonicalize(&mut self) {
        // pull square factors of Δ into q
        let (f, core) = crate::exact::rat::squarefree_split(&self.delta);
        if !f.is_one() {
            self.q *= f;
            self.delta = core;
        }
        if self.r.is_negative() {
            self.p = -&self.p;
            self.q = -&self.q;
            self.r = -&self.r;
        }
        let g = self.p.gcd(&self.q).gcd(&self.r);
        if !g.is_one() && !g.is_zero() {
            self.p /= &g;
            self.q /= &g;
            self.r /= &g;
        }
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn rational_part(&self) -> Rat {
        Rat::new(self.p.clone(), self.r.clone())
    }

    pub fn irrational_coeff(&self) -> Rat {
        Rat::new(self.q.clone(), self.r.clone())
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.p.clone(), -&self.q, self.r.clone(), self.delta.clone())
    }

    pub fn sign(&self) -> i32 {
        sign_of_sum(&self.p, &self.q, &self.delta)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    fn same_field(&self, o: &Self) {
        assert_eq!(self.delta, o.delta, "mixing different quadratic fields");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_field(o);
        Self::new(&self.p * &o.r + &o.p * &self.r, &self.q * &o.r + &o.q * &self.r, &self.r * &o.r, self.delta.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.p, -&self.q, self.r.clone(), self.delta.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_field(o);
        let p = &self.p * &o.p + &self.q * &o.q * &self.delta;
        let q = &self.p * &o.q + &self.q * &o.p;
        Self::new(p, q, &self.r * &o.r, self.delta.clone())
    }

    pub fn add_rat(&self, v: &Rat) -> Self {
        self.add(&Self::from_rat(v, &self.delta))
    }

    pub fn mul_rat(&self, v: &Rat) -> Self {
        Self::new(&self.p * v.numer(), &self.q * v.numer(), &self.r * v.denom(), self.delta.clone())
    }

    /// Field norm `(p² − q²Δ)/r²`.
    pub fn norm(&self) -> Rat {
        Rat::new(&self.p * &self.p - &self.q * &self.q * &self.delta, &self.r * &self.r)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        // 1/((p + q√Δ)/r) = r (p − q√Δ)/(p² − q²Δ)
        let n = &self.p * &self.p - &self.q * &self.q * &self.delta;
        Self::new(&self.r * &self.p, -(&self.r * &self.q), n, self.delta.clone())
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::from_rat(&Rat::one(), &self.delta);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn cmp_rat(&self, v: &Rat) -> Ordering {
        match self.sub(&Self::from_rat(v, &self.delta)).sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }

    pub fn floor(&self) -> Int {
        // floor((p + q√Δ)/r) with r > 0: bracket q√Δ by integer square roots
        let qq = &self.q * &self.q * &self.delta;
        let s = isqrt(&qq);
        let base = if self.q.is_negative() {
            // q√Δ = -√(qq) lies in [-(s+1), -s]
            if &s * &s == qq {
                -s.clone()
            } else {
                -(s.clone() + 1u32)
            }
        } else {
            s.clone()
        };
        // base ≤ q√Δ < base + 1
        let mut f = (&self.p + &base).div_floor(&self.r);
        // correct by at most one step
        while self.cmp_rat(&rat_of(&(&f + 1u32))) != Ordering::Less {
            f += 1u32;
        }
        while self.cmp_rat(&rat_of(&f)) == Ordering::Less {
            f -= 1u32;
        }
        f
    }

    /// Rational bounds `lo ≤ self ≤ hi` with `hi − lo ≤ 1/2^bits`-ish precision.
    pub fn bounds(&self, bits: u32) -> (Rat, Rat) {
        let scale = num_traits::pow(Int::from(2u32), bits as usize);
        let qq = &self.q * &self.q * &self.delta * &scale * &scale;
        let s = isqrt(&qq);
        let (lo_s, hi_s) = if &s * &s == qq { (s.clone(), s) } else { (s.clone(), s + 1u32) };
        let (lo_t, hi_t) = if self.q.is_negative() { (-hi_s, -lo_s) } else { (lo_s, hi_s) };
        let den = &self.r * &scale;
        let pn = &self.p * &scale;
        (Rat::new(&pn + lo_t, den.clone()), Rat::new(&pn + hi_t, den))
    }

    pub fn approx(&self) -> f64 {
        let (lo, hi) = self.bounds(60);
        crate::exact::rat::rat_to_f64(&((lo + hi) / Rat::from_integer(2.into())))
    }

    /// Evaluates a rational polynomial at this surd.
    pub fn eval_poly(&self, f: &UniPoly) -> Self {
        let mut acc = Self::from_rat(&Rat::zero(), &self.delta);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self).add_rat(c);
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        json!([self.p.to_string(), self.q.to_string(), self.r.to_string(), self.delta.to_string()])
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let a = v.as_array()?;
        if a.len() != 4 {
            return None;
        }
        let g = |k: usize| a[k].as_str().and_then(|s| s.parse::<Int>().ok());
        let (p, q, r, d) = (g(0)?, g(1)?, g(2)?, g(3)?);
        if r.is_zero() || d <= Int::one() || is_square(&d) {
            return None;
        }
        Some(Self::new(p, q, r, d))
    }
}

impl fmt::Display for QuadIrr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt({}))/{}", self.p, self.q, self.delta, self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{int, rat, ratio};

    fn s(p: i64, q: i64, r: i64, d: i64) -> QuadIrr {
        QuadIrr::new(int(p), int(q), int(r), int(d))
    }

    #[test]
    fn canonical_form() {
        assert_eq!(s(2, 4, -6, 2), s(-1, -2, 3, 2));
        assert_eq!(s(0, 1, 1, 8), s(0, 2, 1, 2));
    }

    #[test]
    fn arithmetic() {
        let r2 = QuadIrr::sqrt(&int(2));
        assert_eq!(r2.mul(&r2), QuadIrr::from_rat(&rat(2), &int(2)));
        let a = s(1, 1, 1, 2);
        assert_eq!(a.mul(&a.inv()), QuadIrr::from_rat(&rat(1), &int(2)));
        assert_eq!(a.norm(), rat(-1));
    }

    #[test]
    fn signs_and_floors() {
        assert_eq!(s(-1, 1, 1, 2).sign(), 1);
        assert_eq!(s(-2, 1, 1, 2).sign(), -1);
        assert_eq!(QuadIrr::sqrt(&int(2)).floor(), int(1));
        assert_eq!(s(0, -1, 1, 2).floor(), int(-2));
        assert_eq!(s(1, 1, 2, 5).floor(), int(1));
        let (lo, hi) = QuadIrr::sqrt(&int(2)).bounds(20);
        assert!(lo < ratio(141422, 100000) && hi > ratio(141421, 100000));
    }

    #[test]
    fn poly_evaluation() {
        let a = QuadIrr::sqrt(&int(2));
        let f = UniPoly::from_ints(&[-2, 0, 1]);
        assert!(a.eval_poly(&f).is_zero());
    }
}
