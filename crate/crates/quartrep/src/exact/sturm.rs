use num_traits::{One, Signed, Zero};

use super::rat::{rat_to_f64, sign_i, Rat};
use super::unipoly::UniPoly;

/// Sturm chain of the square-free part of `p`.
pub fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let p0 = p.squarefree_part();
    let mut chain = vec![p0.clone(), p0.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].div_rem(&chain[n - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn var_at(chain: &[UniPoly], t: &Rat) -> usize {
    variations(chain.iter().map(|q| sign_i(&q.eval(t))))
}

fn var_pos_inf(chain: &[UniPoly]) -> usize {
    variations(chain.iter().map(|q| sign_i(&q.lc())))
}

fn var_neg_inf(chain: &[UniPoly]) -> usize {
    variations(chain.iter().map(|q| {
        let s = sign_i(&q.lc());
        if q.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }))
}

/// Distinct real roots in the half-open interval `(a, b]`.
pub fn count_half_open(chain: &[UniPoly], a: &Rat, b: &Rat) -> usize {
    if a >= b {
        return 0;
    }
    var_at(chain, a) - var_at(chain, b)
}

/// Number of distinct real roots of `p`, optionally restricted to the closed interval `[a, b]`.
pub fn real_root_count(p: &UniPoly, interval: Option<(&Rat, &Rat)>) -> usize {
    assert!(!p.is_zero(), "root count of the zero polynomial");
    if p.degree() == 0 {
        return 0;
    }
    let chain = sturm_chain(p);
    match interval {
        None => var_neg_inf(&chain) - var_pos_inf(&chain),
        Some((a, b)) => {
            if a > b {
                return 0;
            }
            let at_a = usize::from(p.eval(a).is_zero());
            count_half_open(&chain, a, b) + at_a
        }
    }
}

/// Number of distinct real roots strictly greater than `a`.
pub fn count_above(p: &UniPoly, a: &Rat) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let chain = sturm_chain(p);
    var_at(&chain, a) - var_pos_inf(&chain)
}

/// Cauchy bound: every real root lies in `(-M, M)`.
pub fn root_bound(p: &UniPoly) -> Rat {
    let lc = p.lc().abs();
    let m = p.coeffs()[..p.degree()].iter().map(|c| c.abs() / &lc).max().unwrap_or_else(Rat::zero);
    m + Rat::one()
}

/// An isolating interval: either an exact rational root (`lo == hi`) or an open
/// interval `(lo, hi)` containing exactly one root, with nonzero values at both ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn approx(&self) -> f64 {
        rat_to_f64(&self.midpoint())
    }
}

/// Isolates all distinct real roots of `p`, in increasing order.
pub fn isolate_real_roots(p: &UniPoly) -> Vec<RootInterval> {
    assert!(!p.is_zero());
    let sf = p.squarefree_part();
    if sf.degree() == 0 {
        return vec![];
    }
    let chain = sturm_chain(&sf);
    let m = root_bound(&sf);
    let mut out = Vec::new();
    let mut stack = vec![(-m.clone(), m)];
    while let Some((a, b)) = stack.pop() {
        let n = count_half_open(&chain, &a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            if sf.eval(&b).is_zero() {
                out.push(RootInterval { lo: b.clone(), hi: b });
            } else if sf.eval(&a).is_zero() {
                // `a` belongs to the neighbouring interval; shrink away from it.
                let mid = (&a + &b) / Rat::from_integer(2.into());
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            } else {
                out.push(RootInterval { lo: a, hi: b });
            }
            continue;
        }
        let mid = (&a + &b) / Rat::from_integer(2.into());
        stack.push((mid.clone(), b));
        stack.push((a, mid));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Halves an isolating interval of a root of `p` until its width is at most `w`.
pub fn refine(p: &UniPoly, iv: &RootInterval, w: &Rat) -> RootInterval {
    let sf = p.squarefree_part();
    let mut iv = iv.clone();
    while !iv.is_exact() && iv.width() > *w {
        let mid = iv.midpoint();
        let sm = sign_i(&sf.eval(&mid));
        if sm == 0 {
            return RootInterval { lo: mid.clone(), hi: mid };
        }
        if sm == sign_i(&sf.eval(&iv.lo)) {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }
    iv
}

/// Sign of `q` at the root of `p` isolated by `iv`.
pub fn sign_at_root(p: &UniPoly, iv: &RootInterval, q: &UniPoly) -> i32 {
    if iv.is_exact() {
        return sign_i(&q.eval(&iv.lo));
    }
    if q.is_zero() {
        return 0;
    }
    let g = p.gcd(q);
    if g.degree() > 0 && real_root_count(&g, Some((&iv.lo, &iv.hi))) > 0 {
        return 0;
    }
    let sf = p.squarefree_part();
    let mut iv = iv.clone();
    loop {
        if iv.is_exact() {
            return sign_i(&q.eval(&iv.lo));
        }
        let inside = real_root_count(q, Some((&iv.lo, &iv.hi)));
        if inside == 0 {
            return sign_i(&q.eval(&iv.midpoint()));
        }
        let mid = iv.midpoint();
        let sm = sign_i(&sf.eval(&mid));
        if sm == 0 {
            return sign_i(&q.eval(&mid));
        }
        if sm == sign_i(&sf.eval(&iv.lo)) {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }
}
