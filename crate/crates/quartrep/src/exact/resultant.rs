use num_traits::{One, Zero};

use super::bipoly::BiPoly;
use super::rat::Rat;
use super::unipoly::UniPoly;

/// Sylvester matrix with the rows of `p` first, coefficients highest degree first.
fn sylvester<T: Clone>(p: &[T], q: &[T], zero: T) -> Vec<Vec<T>> {
    // p, q given highest degree first
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![zero.clone(); size];
        for (k, c) in p.iter().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![zero.clone(); size];
        for (k, c) in q.iter().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    rows
}

fn det_rat(mut a: Vec<Vec<Rat>>) -> Rat {
    let n = a.len();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Resultant as the Sylvester determinant, rows of `p` first.
pub fn resultant(p: &UniPoly, q: &UniPoly) -> Rat {
    assert!(!p.is_zero() && !q.is_zero(), "resultant of the zero polynomial");
    if p.degree() == 0 && q.degree() == 0 {
        return Rat::one();
    }
    let pc: Vec<Rat> = p.coeffs().iter().rev().cloned().collect();
    let qc: Vec<Rat> = q.coeffs().iter().rev().cloned().collect();
    det_rat(sylvester(&pc, &qc, Rat::zero()))
}

fn det_poly(a: &[Vec<UniPoly>]) -> UniPoly {
    let n = a.len();
    if n == 0 {
        return UniPoly::one();
    }
    if n == 1 {
        return a[0][0].clone();
    }
    let mut acc = UniPoly::zero();
    for (j, entry) in a[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<UniPoly>> = a[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = entry * &det_poly(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Resultant with respect to `y`, a polynomial in `x`.
pub fn resultant_y(f: &BiPoly, g: &BiPoly) -> UniPoly {
    let fc: Vec<UniPoly> = f.coeffs_in_y().into_iter().rev().collect();
    let gc: Vec<UniPoly> = g.coeffs_in_y().into_iter().rev().collect();
    if fc.len() == 1 && gc.len() == 1 {
        return UniPoly::one();
    }
    det_poly(&sylvester(&fc, &gc, UniPoly::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly;
    use crate::exact::rat::rat;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(cs)
    }

    #[test]
    fn small_resultants() {
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[0, 1])), rat(1));
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[1, 1])), rat(2));
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-2, 0, 1])), rat(0));
    }

    #[test]
    fn bivariate_elimination() {
        // circle and line y = x meet where 2x^2 = 1
        let f = parse_poly("x^2 + y^2 - 1").unwrap();
        let g = parse_poly("y - x").unwrap();
        let r = resultant_y(&f, &g);
        assert_eq!(r.monic(), p(&[-1, 0, 2]).monic());
    }
}
