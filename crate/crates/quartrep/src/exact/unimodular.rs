use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use super::bipoly::BiPoly;
use super::rat::{Int, Rat};

/// Integer matrix `[[a, b], [c, d]]` with determinant ±1, acting by
/// `(x, y) -> (a x + b y, c x + d y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularMap {
    pub a: Int,
    pub b: Int,
    pub c: Int,
    pub d: Int,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UnimodularError {
    #[error("determinant is {0}, expected +1 or -1")]
    BadDeterminant(Int),
    #[error("linear form {0}*x + {1}*y is not primitive")]
    NotPrimitive(Int, Int),
}

impl UnimodularMap {
    pub fn new(a: Int, b: Int, c: Int, d: Int) -> Result<Self, UnimodularError> {
        let m = UnimodularMap { a, b, c, d };
        let det = m.det();
        if det.abs() != Int::one() {
            return Err(UnimodularError::BadDeterminant(det));
        }
        Ok(m)
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self, UnimodularError> {
        Self::new(Int::from(a), Int::from(b), Int::from(c), Int::from(d))
    }

    pub fn identity() -> Self {
        UnimodularMap { a: Int::one(), b: Int::zero(), c: Int::zero(), d: Int::one() }
    }

    pub fn det(&self) -> Int {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        UnimodularMap {
            a: &self.d * &det,
            b: -&self.b * &det,
            c: -&self.c * &det,
            d: &self.a * &det,
        }
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, o: &UnimodularMap) -> Self {
        UnimodularMap {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn map_point(&self, x: &Int, y: &Int) -> (Int, Int) {
        (&self.a * x + &self.b * y, &self.c * x + &self.d * y)
    }

    /// `F ∘ A`: substitutes `x -> a x + b y`, `y -> c x + d y`.
    pub fn pullback(&self, f: &BiPoly) -> BiPoly {
        let r = |v: &Int| Rat::from_integer(v.clone());
        let px = BiPoly::from_terms([((1, 0), r(&self.a)), ((0, 1), r(&self.b))]);
        let py = BiPoly::from_terms([((1, 0), r(&self.c)), ((0, 1), r(&self.d))]);
        f.substitute(&px, &py)
    }

    pub fn to_json(&self) -> Value {
        json!([[self.a.to_string(), self.b.to_string()], [self.c.to_string(), self.d.to_string()]])
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let rows = v.as_array()?;
        if rows.len() != 2 {
            return None;
        }
        let mut e = Vec::new();
        for r in rows {
            let r = r.as_array()?;
            if r.len() != 2 {
                return None;
            }
            for c in r {
                e.push(c.as_str()?.parse::<Int>().ok()?);
            }
        }
        Self::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()).ok()
    }
}

/// `G = F ∘ A⁻¹`, so that `G(A(x, y)) = F(x, y)` and both have the same integer values.
pub fn apply_unimodular(f: &BiPoly, a: &UnimodularMap) -> BiPoly {
    a.inverse().pullback(f)
}

/// Completes the primitive form `a x + b y` to a determinant-one matrix with first row `(a, b)`.
pub fn unimodular_from_linear(a: &Int, b: &Int) -> Result<UnimodularMap, UnimodularError> {
    let eg = a.extended_gcd(b);
    if eg.gcd.abs() != Int::one() {
        return Err(UnimodularError::NotPrimitive(a.clone(), b.clone()));
    }
    let (s, t) = if eg.gcd.is_negative() { (-eg.x, -eg.y) } else { (eg.x, eg.y) };
    // s a + t b = 1, so [[a, b], [-t, s]] has determinant 1.
    UnimodularMap::new(a.clone(), b.clone(), -t, s)
}
