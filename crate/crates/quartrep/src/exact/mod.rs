//! Exact arithmetic over ℚ: rationals, polynomials in one and two variables,
//! parsing, unimodular substitutions, real roots and factorization.

pub mod bipoly;
pub mod factor;
pub mod parse;
pub mod rat;
pub mod resultant;
pub mod sturm;
pub mod unimodular;
pub mod unipoly;

pub use bipoly::{BiPoly, Normalization};
pub use factor::{rational_roots, uni_factor, Factorization};
pub use parse::{parse_poly, ParseError};
pub use rat::{Int, Rat};
pub use resultant::{resultant, resultant_y};
pub use sturm::{isolate_real_roots, real_root_count, RootInterval};
pub use unimodular::{apply_unimodular, unimodular_from_linear, UnimodularMap};
pub use unipoly::UniPoly;

/// Homogeneous parts `[F_0, F_1, .., F_4]`, zero parts included.
pub fn homogeneous_parts(f: &BiPoly) -> Vec<BiPoly> {
    let d = f.total_degree().max(4);
    (0..=d).map(|k| f.homogeneous_part(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parts_of_examples() {
        let p = homogeneous_parts(&parse_poly("x^4 + x*y").unwrap());
        assert_eq!(p[4], parse_poly("x^4").unwrap());
        assert_eq!(p[2], parse_poly("x*y").unwrap());
        assert!(p[3].is_zero() && p[1].is_zero());
        let p = homogeneous_parts(&parse_poly("x^2*(x^2+y^2) + x^3 + y^2").unwrap());
        assert_eq!(p[4], parse_poly("x^4 + x^2*y^2").unwrap());
        assert_eq!(p[3], parse_poly("x^3").unwrap());
        assert_eq!(p[2], parse_poly("y^2").unwrap());
        assert!(homogeneous_parts(&BiPoly::zero()).iter().all(|q| q.is_zero()));
    }
}
