use num_traits::{One, Zero};

use crate::exact::bipoly::BiPoly;
use crate::exact::rat::{gcd_all, lcm_all, Int, Rat};
use crate::exact::unipoly::UniPoly;
use crate::forms::binary::{factor_form, BinaryForm};

/// `𝔉(G)` by Horner's rule.
pub fn compose_outer(outer: &UniPoly, inner: &BiPoly) -> BiPoly {
    let mut out = BiPoly::zero();
    for c in outer.coeffs().iter().rev() {
        out = &(&out * inner) + &BiPoly::constant(c.clone());
    }
    out
}

/// Square root of a form up to a rational factor: `g = α S²` with `S` primitive.
fn form_sqrt(g: &BinaryForm) -> Option<(Rat, BinaryForm)> {
    if g.is_zero() {
        return None;
    }
    let ff = factor_form(g);
    let mut s = BinaryForm::one();
    for (h, m) in &ff.factors {
        if m % 2 != 0 {
            return None;
        }
        s = s.mul(&h.pow((*m / 2) as u32));
    }
    Some((ff.content, s))
}

/// Writes a quartic `F` with `F(0,0) = 0` as `𝔉(G)` with `deg 𝔉 = 2` and `G` a primitive integral
/// quadratic with `G(0,0) = 0`; the identity is checked by expansion.
pub fn detect_composition(f: &BiPoly) -> Option<(UniPoly, BiPoly)> {
    if f.total_degree() != 4 {
        return None;
    }
    let part = |k: u32| BinaryForm::from_bipoly(f, k);
    let (alpha, s) = form_sqrt(&part(4))?;
    let two_alpha_s = s.scale(&(Rat::from_integer(2.into()) * &alpha));
    let f3 = part(3);
    let g1 = if f3.is_zero() { BinaryForm::zero() } else { f3.div_exact(&two_alpha_s)? };
    let rest = part(2).sub(&g1.mul(&g1).scale(&alpha));
    let beta = if rest.is_zero() {
        Rat::zero()
    } else {
        let q = rest.div_exact(&s)?;
        if q.degree() != 0 {
            return None;
        }
        q.coeff(0)
    };
    let inner = &s.to_bipoly() + &g1.to_bipoly();
    // clear denominators of the linear part, then remove the integer content
    let m = lcm_all(inner.terms().values().map(|c| c.denom()));
    let scaled = inner.scale(&Rat::from_integer(m.clone()));
    let cont: Int = gcd_all(scaled.terms().values().map(|c| c.numer()));
    let k = Rat::new(cont.clone(), m.clone());
    let g = scaled.scale(&Rat::new(Int::one(), cont));
    let outer = UniPoly::new(vec![f.constant_term(), &beta * &k, &alpha * &k * &k]);
    if &compose_outer(&outer, &g) != f {
        return None;
    }
    Some((outer, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly;

    #[test]
    fn composition_examples() {
        let (o, g) = detect_composition(&parse_poly("(x^2-2*y^2)^2 + (x^2-2*y^2)").unwrap()).unwrap();
        assert_eq!(o, UniPoly::from_ints(&[0, 1, 1]));
        assert_eq!(g, parse_poly("x^2 - 2*y^2").unwrap());
        assert!(detect_composition(&parse_poly("x^4 + y^4").unwrap()).is_none());
        let (o, g) = detect_composition(&parse_poly("x^4 + 2*x^2*y + y^2").unwrap()).unwrap();
        assert_eq!(o, UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!(g, parse_poly("x^2 + y").unwrap());
        let (o, g) = detect_composition(&parse_poly("4*x^4 + 4*x^3 + x^2 + 6*x^2 + 3*x").unwrap()).unwrap();
        assert_eq!(compose_outer(&o, &g), parse_poly("(2*x^2 + x)^2 + 3*(2*x^2 + x)").unwrap());
        assert!(detect_composition(&parse_poly("x^4 + x^2*y + y^2").unwrap()).is_none());
    }
}
