use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::exact::rat::{isqrt, Int, Rat};
use crate::forms::surd::QuadIrr;

/// Continued fraction `[a0; a1, ..]`; `period` is empty for rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub preperiod: Vec<Int>,
    pub period: Vec<Int>,
}

impl ContinuedFraction {
    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// Partial quotient `a_i`, if it exists.
    pub fn quotient(&self, i: usize) -> Option<Int> {
        if i < self.preperiod.len() {
            return Some(self.preperiod[i].clone());
        }
        if self.period.is_empty() {
            return None;
        }
        let k = (i - self.preperiod.len()) % self.period.len();
        Some(self.period[k].clone())
    }

    /// Largest partial quotient after `a0`.
    pub fn max_tail_quotient(&self) -> Int {
        self.preperiod.iter().skip(1).chain(self.period.iter()).cloned().max().unwrap_or_else(Int::zero)
    }

    pub fn to_json(&self) -> Value {
        let s = |v: &Vec<Int>| v.iter().map(|a| a.to_string()).collect::<Vec<_>>();
        json!({"preperiod": s(&self.preperiod), "period": s(&self.period)})
    }
}

pub fn cf_expand_rat(v: &Rat) -> ContinuedFraction {
    let mut n = v.numer().clone();
    let mut d = v.denom().clone();
    let mut out = Vec::new();
    while !d.is_zero() {
        let (q, r) = n.div_mod_floor(&d);
        out.push(q);
        n = d;
        d = r;
    }
    ContinuedFraction { preperiod: out, period: vec![] }
}

/// Expansion of `(P + √D)/Q` with `Q | D − P²`.
fn expand_pqd(mut p: Int, mut q: Int, d: Int) -> ContinuedFraction {
    let s = isqrt(&d);
    let mut seen: HashMap<(Int, Int), usize> = HashMap::new();
    let mut quotients = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            let period = quotients.split_off(start);
            return ContinuedFraction { preperiod: quotients, period };
        }
        seen.insert((p.clone(), q.clone()), quotients.len());
        let a = if q.is_positive() { (&p + &s).div_floor(&q) } else { (&p + &s + 1u32).div_floor(&q) };
        let p2 = &a * &q - &p;
        let q2 = (&d - &p2 * &p2) / &q;
        quotients.push(a);
        p = p2;
        q = q2;
    }
}

pub fn cf_expand_quad(alpha: &QuadIrr) -> ContinuedFraction {
    assert!(!alpha.q.is_zero(), "rational value passed as a surd");
    // α = (P + √D)/Q with D = q²Δ and the sign of q moved into P and Q
    let sg = if alpha.q.is_negative() { -Int::one() } else { Int::one() };
    let mut p = &alpha.p * &sg;
    let mut q = &alpha.r * &sg;
    let mut d = &alpha.q * &alpha.q * &alpha.delta;
    if !((&d - &p * &p) % &q).is_zero() {
        let aq = q.abs();
        p *= &aq;
        d = d * &q * &q;
        q *= aq;
    }
    expand_pqd(p, q, d)
}

/// Convergents `p/q` as integer pairs `(p, q)`, at most `k` of them.
pub fn convergents(cf: &ContinuedFraction, k: usize) -> Vec<(Int, Int)> {
    let mut out = Vec::with_capacity(k);
    let (mut p0, mut q0) = (Int::one(), Int::zero());
    let (mut p1, mut q1) = (Int::zero(), Int::one());
    for i in 0..k {
        let Some(a) = cf.quotient(i) else { break };
        let p = &a * &p0 + &p1;
        let q = &a * &q0 + &q1;
        p1 = std::mem::replace(&mut p0, p.clone());
        q1 = std::mem::replace(&mut q0, q.clone());
        out.push((p, q));
    }
    out
}

/// Exact check of `|α − p/q| < 1/q²`.
pub fn certify_convergent(alpha: &QuadIrr, p: &Int, q: &Int) -> bool {
    let err = alpha.add_rat(&-Rat::new(p.clone(), q.clone()));
    let bound = Rat::new(Int::one(), q * q);
    let e = if err.sign() < 0 { err.neg() } else { err };
    e.cmp_rat(&bound) == std::cmp::Ordering::Less
}

/// `c` with `|α − p/q| > c/q²` for every rational `p/q`.
pub fn badly_approximable_bound(alpha: &QuadIrr) -> Rat {
    let cf = cf_expand_quad(alpha);
    Rat::new(Int::one(), cf.max_tail_quotient() + Int::from(2))
}

/// Fundamental solution of `p² − D q² = 1` for non-square `D > 1`.
pub fn pell_fundamental(d: &Int) -> (Int, Int) {
    let cf = expand_pqd(Int::zero(), Int::one(), d.clone());
    let mut n = 8;
    loop {
        for (p, q) in convergents(&cf, n) {
            if &p * &p - d * &q * &q == Int::one() {
                return (p, q);
            }
        }
        n *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{int, ratio};

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn rational_expansion() {
        let cf = cf_expand_rat(&ratio(7, 5));
        assert_eq!(cf.preperiod, ints(&[1, 2, 2]));
        let c = convergents(&cf, 10);
        assert_eq!(c.last().unwrap(), &(int(7), int(5)));
    }

    #[test]
    fn sqrt2_expansions() {
        let r2 = QuadIrr::sqrt(&int(2));
        let cf = cf_expand_quad(&r2);
        assert_eq!(cf.preperiod, ints(&[1]));
        assert_eq!(cf.period, ints(&[2]));
        let c = convergents(&cf, 5);
        let want: Vec<(Int, Int)> = [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29)].iter().map(|&(a, b)| (int(a), int(b))).collect();
        assert_eq!(c, want);
        let half = QuadIrr::new(int(0), int(1), int(2), int(2));
        let cf = cf_expand_quad(&half);
        assert_eq!(cf.preperiod, ints(&[0, 1]));
        assert_eq!(cf.period, ints(&[2]));
        assert!(convergents(&cf, 12).contains(&(int(169), int(239))));
        for (p, q) in convergents(&cf, 30) {
            assert!(certify_convergent(&half, &p, &q));
        }
    }

    #[test]
    fn bounds_for_classic_surds() {
        assert_eq!(badly_approximable_bound(&QuadIrr::sqrt(&int(2))), ratio(1, 4));
        assert_eq!(badly_approximable_bound(&QuadIrr::new(int(1), int(1), int(2), int(5))), ratio(1, 3));
        assert_eq!(badly_approximable_bound(&QuadIrr::sqrt(&int(3))), ratio(1, 4));
    }

    #[test]
    fn negative_and_shifted_surds() {
        let a = QuadIrr::new(int(0), int(-1), int(2), int(2));
        let cf = cf_expand_quad(&a);
        assert_eq!(cf.preperiod, ints(&[-1, 3]));
        assert_eq!(cf.period, ints(&[2]));
        assert_eq!(pell_fundamental(&int(2)), (int(3), int(2)));
        assert_eq!(pell_fundamental(&int(8)), (int(3), int(1)));
    }
}
