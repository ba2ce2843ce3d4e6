//! Reducible specializations `Y(x, t₀)` for integers `|t₀| ≤ B`.

use serde_json::{json, Value};

use crate::exact::bipoly::BiPoly;
use crate::exact::factor::uni_factor;
use crate::exact::rat::{Int, Rat};

use super::OracleError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationCount {
    pub bound: u64,
    /// Parameters where `Y(x, t₀)` factors over ℚ.
    pub reducible: Vec<i64>,
    /// Parameters where the degree in `x` drops to 0.
    pub degenerate: Vec<i64>,
}

impl SpecializationCount {
    /// Reducible plus degenerate specializations.
    pub fn count(&self) -> u64 {
        (self.reducible.len() + self.degenerate.len()) as u64
    }

    pub fn to_json(&self) -> Value {
        json!({
            "B": self.bound,
            "count": self.count(),
            "reducible": self.reducible.len(),
            "degenerate": self.degenerate,
            "sample": self.reducible.iter().take(20).collect::<Vec<_>>(),
        })
    }
}

/// Rejects `Y = x·Q(t) − R(t)` with `gcd(Q, R) ≠ 1`, which is reducible outright.
fn check_irreducible_shape(y: &BiPoly) -> Result<(), OracleError> {
    if y.deg_x() != 1 {
        return Ok(());
    }
    // rows in x: Y = R0(t) + x·Q(t), read through the swap t ↔ x
    let rows = y.swap_xy().coeffs_in_y();
    let g = rows[0].gcd(&rows[1]);
    if !rows[0].is_zero() && g.degree() > 0 {
        return Err(OracleError::Invalid("Y = x·Q(t) − R(t) with a common factor of Q and R".into()));
    }
    Ok(())
}

/// `#{t₀ ∈ [−B, B]: Y(x, t₀) reducible over ℚ}`, counting degree drops to a constant as reducible.
pub fn reducible_specialization_count(y: &BiPoly, b: u64) -> Result<SpecializationCount, OracleError> {
    if y.deg_x() == 0 {
        return Err(OracleError::Invalid("Y must involve x".into()));
    }
    check_irreducible_shape(y)?;
    let bi = b as i64;
    let mut reducible = Vec::new();
    let mut degenerate = Vec::new();
    for t in -bi..=bi {
        // Y(x, t0) as a polynomial in x
        let p = y.specialize_y(&Rat::from_integer(Int::from(t)));
        if p.is_zero() || p.degree() == 0 {
            degenerate.push(t);
            continue;
        }
        if p.degree() >= 2 && !uni_factor(&p).is_irreducible() {
            reducible.push(t);
        }
    }
    Ok(SpecializationCount { bound: b, reducible, degenerate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly;

    #[test]
    fn examples() {
        let c = reducible_specialization_count(&parse_poly("x*y - 1").unwrap(), 50).unwrap();
        assert_eq!((c.count(), c.degenerate.clone()), (1, vec![0]));
        // x² − t reducible exactly at squares t = 0, 1, 4, …, 100²
        let c = reducible_specialization_count(&parse_poly("x^2 - y").unwrap(), 10_000).unwrap();
        assert_eq!(c.count(), 101);
        let c = reducible_specialization_count(&parse_poly("x^2 - y^2 - 1").unwrap(), 10_000).unwrap();
        assert_eq!(c.reducible, vec![0]);
        assert!(reducible_specialization_count(&parse_poly("x*y^2 - y").unwrap(), 5).is_err());
        assert!(reducible_specialization_count(&parse_poly("y^2").unwrap(), 5).is_err());
    }
}
