use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::rat::{rat_to_f64, sign_i, Int, Rat};
use crate::exact::sturm::{isolate_real_roots, sign_at_root, RootInterval};
use crate::exact::unipoly::UniPoly;

use super::binary::{factor_form, BinaryForm};
use super::surd::QuadIrr;

/// A real projective zero of a form, identified with its antipode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DirKind {
    /// Primitive vector `(x0, y0)` with `x0 > 0`, or `(0, 1)` for the vertical line.
    Rational { x0: Int, y0: Int },
    /// Irrational quadratic slope `m = y/x`.
    Quadratic { slope: QuadIrr },
    /// Slope that is a root of an irreducible polynomial of degree ≥ 3.
    Algebraic { poly: UniPoly, interval: RootInterval },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    pub kind: DirKind,
    pub minimal_form: BinaryForm,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DirectionError {
    #[error("odd-degree form needs an orientation")]
    NeedsOrientation,
}

impl Direction {
    pub fn rational(x0: Int, y0: Int) -> Self {
        let g = x0.gcd(&y0);
        let (mut x0, mut y0) = (x0 / &g, y0 / &g);
        if x0.is_negative() || (x0.is_zero() && y0.is_negative()) {
            x0 = -x0;
            y0 = -y0;
        }
        // the form y0 x − x0 y vanishes along (x0, y0)
        let minimal_form = BinaryForm::new(vec![Rat::from_integer(y0.clone()), Rat::from_integer(-x0.clone())]).primitive();
        Direction { kind: DirKind::Rational { x0, y0 }, minimal_form }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.kind, DirKind::Rational { .. })
    }

    pub fn is_vertical(&self) -> bool {
        matches!(&self.kind, DirKind::Rational { x0, .. } if x0.is_zero())
    }

    /// Approximate unit-free slope `y/x` (infinite for the vertical direction).
    pub fn approx_slope(&self) -> f64 {
        match &self.kind {
            DirKind::Rational { x0, y0 } => {
                if x0.is_zero() {
                    f64::INFINITY
                } else {
                    rat_to_f64(&Rat::new(y0.clone(), x0.clone()))
                }
            }
            DirKind::Quadratic { slope } => slope.approx(),
            DirKind::Algebraic { interval, .. } => interval.approx(),
        }
    }

    /// Approximate unit vector for the orientation with positive `x` (or positive `y` if vertical).
    pub fn approx_unit(&self) -> (f64, f64) {
        let m = self.approx_slope();
        if m.is_infinite() {
            return (0.0, 1.0);
        }
        let n = (1.0 + m * m).sqrt();
        (1.0 / n, m / n)
    }

    pub fn cmp_slope(&self, o: &Direction) -> Ordering {
        self.approx_slope().partial_cmp(&o.approx_slope()).unwrap_or(Ordering::Equal)
    }

    pub fn to_json(&self) -> Value {
        match &self.kind {
            DirKind::Rational { x0, y0 } => json!({"slope": format!("{}/{}", y0, x0)}),
            DirKind::Quadratic { slope } => json!({"quad": slope.to_json(), "vertical": false}),
            DirKind::Algebraic { poly, interval } => json!({
                "algebraic": poly.coeffs().iter().map(crate::exact::rat::rat_to_canon).collect::<Vec<_>>(),
                "interval": [crate::exact::rat::rat_to_canon(&interval.lo), crate::exact::rat::rat_to_canon(&interval.hi)],
            }),
        }
    }

    pub fn from_json(v: &Value) -> Option<Direction> {
        if let Some(s) = v.get("slope").and_then(|s| s.as_str()) {
            let (n, d) = s.split_once('/')?;
            return Some(Direction::rational(d.trim().parse().ok()?, n.trim().parse().ok()?));
        }
        if let Some(q) = v.get("quad") {
            return Some(quadratic_direction(QuadIrr::from_json(q)?));
        }
        None
    }
}

/// Direction for an irrational quadratic slope; the minimal form is recovered from the slope.
pub fn quadratic_direction(slope: QuadIrr) -> Direction {
    // m = (p + q√Δ)/r satisfies r² m² − 2pr m + p² − q²Δ = 0
    let a = &slope.r * &slope.r;
    let b = -(Int::from(2) * &slope.p * &slope.r);
    let c = &slope.p * &slope.p - &slope.q * &slope.q * &slope.delta;
    // G(1, m) = c + b m + a m²
    let minimal_form = BinaryForm::new(vec![Rat::from_integer(c), Rat::from_integer(b), Rat::from_integer(a)]).primitive();
    Direction { kind: DirKind::Quadratic { slope }, minimal_form }
}

/// Real zero directions of one irreducible primitive form.
pub fn directions_of_irreducible(h: &BinaryForm) -> Vec<Direction> {
    let dh = h.dehomogenize();
    if h.x_multiplicity() > 0 {
        return vec![Direction::rational(Int::zero(), Int::one())];
    }
    match dh.degree() {
        0 => vec![],
        1 => {
            // c0 + c1 m = 0
            let m = -(dh.coeff(0) / dh.coeff(1));
            vec![Direction::rational(m.denom().clone(), m.numer().clone())]
        }
        2 => {
            let disc = h.discriminant2();
            if !disc.is_positive() {
                return vec![];
            }
            let ints = h.int_coeffs();
            let (b, c) = (&ints[1], &ints[2]);
            let d = b * b - Int::from(4) * &ints[0] * c;
            let mut out: Vec<Direction> = [1i64, -1]
                .iter()
                .map(|&s| {
                    let slope = QuadIrr::new(-b.clone(), Int::from(s), Int::from(2) * c, d.clone());
                    Direction { kind: DirKind::Quadratic { slope }, minimal_form: h.primitive() }
                })
                .collect();
            out.sort_by(|a, b| a.cmp_slope(b));
            out
        }
        _ => isolate_real_roots(&dh)
            .into_iter()
            .map(|iv| Direction {
                kind: DirKind::Algebraic { poly: dh.clone(), interval: iv },
                minimal_form: h.primitive(),
            })
            .collect(),
    }
}

/// One direction per real slope of each irreducible factor, sorted by slope (vertical last).
pub fn real_zero_directions(g: &BinaryForm) -> Vec<Direction> {
    if g.is_zero() || g.degree() == 0 {
        return vec![];
    }
    let mut out: Vec<Direction> = factor_form(g).factors.iter().flat_map(|(h, _)| directions_of_irreducible(h)).collect();
    out.sort_by(|a, b| a.cmp_slope(b));
    out
}

/// Exact sign of `G` along `ξ`. For odd degree the orientation selects `±(1, m)`
/// (or `±(0, 1)` for the vertical direction).
pub fn sign_at_direction(g: &BinaryForm, xi: &Direction, orientation: Option<i32>) -> Result<i32, DirectionError> {
    if g.is_zero() {
        return Ok(0);
    }
    let base = match &xi.kind {
        DirKind::Rational { x0, y0 } => sign_i(&g.eval_int(x0, y0)),
        DirKind::Quadratic { slope } => slope.eval_poly(&g.dehomogenize()).sign(),
        DirKind::Algebraic { poly, interval } => sign_at_root(poly, interval, &g.dehomogenize()),
    };
    if g.degree() % 2 == 0 || base == 0 {
        return Ok(base);
    }
    match orientation {
        Some(s) => Ok(if s < 0 { -base } else { base }),
        None => Err(DirectionError::NeedsOrientation),
    }
}

/// Exact value `G(1, m)` at a quadratic slope.
pub fn value_at_quadratic(g: &BinaryForm, slope: &QuadIrr) -> QuadIrr {
    slope.eval_poly(&g.dehomogenize())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(cs: &[i64]) -> BinaryForm {
        BinaryForm::from_ints(cs)
    }

    #[test]
    fn directions_examples() {
        let ds = real_zero_directions(&f(&[1, 0, -2]));
        assert_eq!(ds.len(), 2);
        assert!((ds[0].approx_slope() + 1.0 / 2f64.sqrt()).abs() < 1e-12);
        assert!(real_zero_directions(&f(&[1, 0, 1])).is_empty());
        let ds = real_zero_directions(&f(&[0, 1, 0]));
        assert_eq!(ds.len(), 2);
        assert!(ds.iter().any(|d| d.is_vertical()));
        assert!(ds.iter().any(|d| d.kind == DirKind::Rational { x0: Int::one(), y0: Int::zero() }));
    }

    #[test]
    fn signs_examples() {
        let ds = real_zero_directions(&f(&[1, 0, -2]));
        assert_eq!(sign_at_direction(&f(&[1, 0, 0]), &ds[1], None), Ok(1));
        assert_eq!(sign_at_direction(&f(&[1, 0, -3]), &ds[0], None), Ok(-1));
        assert_eq!(sign_at_direction(&f(&[1, 0, -2]), &ds[0], None), Ok(0));
        let xaxis = Direction::rational(Int::one(), Int::zero());
        assert_eq!(sign_at_direction(&f(&[0, 0, 1]), &xaxis, None), Ok(0));
        assert_eq!(sign_at_direction(&f(&[1, 0, 0, 0]), &xaxis, None), Err(DirectionError::NeedsOrientation));
        assert_eq!(sign_at_direction(&f(&[1, 0, 0, 0]), &xaxis, Some(-1)), Ok(-1));
    }

    #[test]
    fn minimal_forms_vanish() {
        for d in real_zero_directions(&f(&[1, 1, -3, 0, 0])) {
            assert_eq!(sign_at_direction(&d.minimal_form, &d, Some(1)), Ok(0));
        }
        let q = quadratic_direction(QuadIrr::new(Int::zero(), Int::one(), Int::from(2), Int::from(2)));
        assert_eq!(q.minimal_form, f(&[1, 0, -2]));
    }
}
