use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{ceil_rat, divisors, floor_rat, Int, Rat};
use super::sturm::{isolate_real_roots, refine};
use super::unipoly::UniPoly;

/// `content * Π factor^mult`, each factor irreducible over ℚ, integral, primitive,
/// with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: Rat,
    pub factors: Vec<(UniPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> UniPoly {
        let mut out = UniPoly::constant(self.content.clone());
        for (f, m) in &self.factors {
            out = &out * &f.pow(*m as u32);
        }
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Irreducible factors with multiplicities, sorted by degree then coefficients.
    pub fn sorted(mut self) -> Self {
        self.factors.sort_by(|a, b| {
            a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
        });
        self
    }
}

fn primitive(p: &UniPoly) -> UniPoly {
    p.content_primitive().1
}

/// Factors `p` over ℚ. Supports the degrees that occur here (up to about 8).
pub fn uni_factor(p: &UniPoly) -> Factorization {
    assert!(!p.is_zero(), "factoring the zero polynomial");
    let (content, prim) = p.content_primitive();
    let mut factors = Vec::new();
    for (sq, m) in prim.squarefree_decomposition() {
        for f in factor_squarefree(&primitive(&sq)) {
            factors.push((f, m));
        }
    }
    let out = Factorization { content, factors }.sorted();
    debug_assert_eq!(out.expand(), *p);
    out
}

/// Rational roots of a nonzero polynomial, ascending.
pub fn rational_roots(p: &UniPoly) -> Vec<Rat> {
    if p.degree() == 0 {
        return vec![];
    }
    let prim = primitive(&p.squarefree_part());
    let lc = prim.lc().to_integer().abs();
    let tol = Rat::new(Int::one(), &lc * &lc * Int::from(2));
    let dens = divisors(&lc);
    let mut out = Vec::new();
    for iv in isolate_real_roots(&prim) {
        let iv = refine(&prim, &iv, &tol);
        if iv.is_exact() {
            out.push(iv.lo);
            continue;
        }
        'search: for q in &dens {
            let qr = Rat::from_integer(q.clone());
            let lo = ceil_rat(&(&iv.lo * &qr));
            let hi = floor_rat(&(&iv.hi * &qr));
            let mut n = lo;
            while n <= hi {
                let cand = Rat::new(n.clone(), q.clone());
                if prim.eval(&cand).is_zero() {
                    out.push(cand);
                    break 'search;
                }
                n += 1;
            }
        }
    }
    out
}

fn factor_squarefree(g: &UniPoly) -> Vec<UniPoly> {
    let mut out = Vec::new();
    let mut rest = g.clone();
    for r in rational_roots(g) {
        let lin = primitive(&UniPoly::linear_root(&r));
        rest = rest.exact_div(&lin).expect("rational root divides");
        out.push(lin);
    }
    let rest = primitive(&rest);
    if rest.degree() > 0 {
        split_no_linear(&rest, &mut out);
    }
    out
}

fn split_no_linear(g: &UniPoly, out: &mut Vec<UniPoly>) {
    let d = g.degree();
    for k in 2..=d / 2 {
        if let Some(h) = kronecker_factor(g, k) {
            let q = primitive(&g.exact_div(&h).expect("found factor divides"));
            out.push(h);
            split_no_linear(&q, out);
            return;
        }
    }
    out.push(g.clone());
}

fn sample_points(g: &UniPoly, k: usize) -> Vec<(Int, Int)> {
    // Candidate integer points 0, 1, -1, 2, -2, ...; keep the k+1 with the fewest divisors.
    let mut cands = Vec::new();
    let mut t = 0i64;
    while cands.len() < 2 * k + 4 {
        let ti = Int::from(t);
        let v = g.eval_int(&ti).to_integer();
        if !v.is_zero() {
            let nd = divisors(&v).len();
            cands.push((nd, ti, v));
        }
        t = if t > 0 { -t } else { -t + 1 };
    }
    cands.sort_by(|a, b| a.0.cmp(&b.0));
    cands.into_iter().take(k + 1).map(|(_, t, v)| (t, v)).collect()
}

/// Lagrange interpolation through integer points; returns `None` if not integral.
fn interpolate(points: &[(Int, Int)]) -> Option<UniPoly> {
    let mut acc = UniPoly::zero();
    for (i, (ti, vi)) in points.iter().enumerate() {
        let mut basis = UniPoly::one();
        let mut den = Int::one();
        for (j, (tj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &UniPoly::from_bigints(&[-tj.clone(), Int::one()]);
                den *= ti - tj;
            }
        }
        acc = &acc + &basis.scale(&Rat::new(vi.clone(), den));
    }
    acc.int_coeffs().map(|_| acc)
}

/// Searches for a factor of exact degree `k` by interpolating divisor choices.
fn kronecker_factor(g: &UniPoly, k: usize) -> Option<UniPoly> {
    let pts = sample_points(g, k);
    let lc = g.lc().to_integer();
    let choices: Vec<Vec<Int>> = pts
        .iter()
        .map(|(_, v)| {
            let ds = divisors(v);
            ds.iter().cloned().chain(ds.iter().map(|d| -d.clone())).collect()
        })
        .collect();
    let mut idx = vec![0usize; k + 1];
    loop {
        let vals: Vec<(Int, Int)> = pts
            .iter()
            .enumerate()
            .map(|(n, (t, _))| (t.clone(), choices[n][idx[n]].clone()))
            .collect();
        if let Some(h) = interpolate(&vals) {
            let hl = h.lc();
            if h.degree() == k && hl.is_positive() && lc.is_multiple_of(&hl.to_integer()) && h.divides(g) {
                return Some(h);
            }
        }
        let mut n = 0;
        loop {
            if n == idx.len() {
                return None;
            }
            idx[n] += 1;
            if idx[n] < choices[n].len() {
                break;
            }
            idx[n] = 0;
            n += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{rat, ratio};

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(cs)
    }

    #[test]
    fn quartic_splits_into_quadratics() {
        let f = uni_factor(&p(&[-4, 0, 0, 0, 1]));
        assert_eq!(f.content, rat(1));
        assert_eq!(f.factors, vec![(p(&[-2, 0, 1]), 1), (p(&[2, 0, 1]), 1)]);
    }

    #[test]
    fn irreducible_and_content() {
        assert!(uni_factor(&p(&[1, 0, 1])).is_irreducible());
        let f = uni_factor(&p(&[-2, 0, 2]));
        assert_eq!(f.content, rat(2));
        assert_eq!(f.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
    }

    #[test]
    fn rational_roots_with_denominators() {
        // (2t - 1)(3t + 2)(t^2 + 1)
        let f = &(&p(&[-1, 2]) * &p(&[2, 3])) * &p(&[1, 0, 1]);
        assert_eq!(rational_roots(&f), vec![ratio(-2, 3), ratio(1, 2)]);
        assert_eq!(uni_factor(&f).expand(), f);
    }

    #[test]
    fn sextic_cubic_split() {
        // (t^3 - 2)(t^3 + t + 1)
        let f = &p(&[-2, 0, 0, 1]) * &p(&[1, 1, 0, 1]);
        let fac = uni_factor(&f);
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn repeated_factors() {
        let f = &p(&[-2, 0, 1]).pow(2) * &p(&[0, 1]);
        let fac = uni_factor(&f);
        assert_eq!(fac.factors, vec![(p(&[0, 1]), 1), (p(&[-2, 0, 1]), 2)]);
    }
}
