use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_of(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

/// Canonical `num/den` rendering used in JSON payloads.
pub fn rat_to_canon(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Human rendering: integers without a denominator.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<Int>().ok().map(Rat::from_integer),
    }
}

pub fn floor_rat(r: &Rat) -> Int {
    r.numer().div_floor(r.denom())
}

pub fn ceil_rat(r: &Rat) -> Int {
    -((-r.numer()).div_floor(r.denom()))
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &Int) -> Int {
    assert!(!n.is_negative(), "isqrt of negative");
    n.sqrt()
}

pub fn is_square(n: &Int) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &s * &s == *n
}

/// Floor of the k-th root of a non-negative integer.
pub fn iroot(n: &Int, k: u32) -> Int {
    assert!(!n.is_negative());
    n.nth_root(k)
}

pub fn lcm_all<'a>(it: impl IntoIterator<Item = &'a Int>) -> Int {
    it.into_iter().fold(Int::one(), |acc, d| acc.lcm(d))
}

pub fn gcd_all<'a>(it: impl IntoIterator<Item = &'a Int>) -> Int {
    it.into_iter().fold(Int::zero(), |acc, d| acc.gcd(d))
}

/// Write `n = f^2 * core` with `core` squarefree; returns `(f, core)`.
pub fn squarefree_split(n: &Int) -> (Int, Int) {
    assert!(n.is_positive());
    let mut rest = n.clone();
    let mut f = Int::one();
    let mut core = Int::one();
    let mut p = Int::from(2u32);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            f *= &p;
        }
        if e % 2 == 1 {
            core *= &p;
        }
        p += if p == Int::from(2u32) { 1u32 } else { 2u32 };
    }
    if rest > Int::one() {
        if is_square(&rest) {
            f *= isqrt(&rest);
        } else {
            core *= rest;
        }
    }
    (f, core)
}

/// Positive divisors of a nonzero integer, ascending.
pub fn divisors(n: &Int) -> Vec<Int> {
    let n = n.abs();
    assert!(!n.is_zero(), "divisors of zero");
    if let Some(v) = n.to_u64() {
        let mut small = Vec::new();
        let mut large = Vec::new();
        let mut d = 1u64;
        while d.saturating_mul(d) <= v {
            if v % d == 0 {
                small.push(d);
                if d != v / d {
                    large.push(v / d);
                }
            }
            d += 1;
        }
        small.extend(large.into_iter().rev());
        return small.into_iter().map(Int::from).collect();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = Int::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1u32;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn sign_i(r: &Rat) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn pow_rat(r: &Rat, e: u32) -> Rat {
    let mut out = Rat::one();
    for _ in 0..e {
        out *= r;
    }
    out
}

pub fn pow_int(r: &Int, e: u32) -> Int {
    num_traits::pow(r.clone(), e as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canon_and_parse_round_trip() {
        let r = ratio(-6, 4);
        assert_eq!(rat_to_canon(&r), "-3/2");
        assert_eq!(parse_rat("-3/2"), Some(r));
        assert_eq!(parse_rat("7"), Some(rat(7)));
        assert_eq!(parse_rat("1/0"), None);
    }

    #[test]
    fn floors_and_ceils() {
        assert_eq!(floor_rat(&ratio(-7, 2)), int(-4));
        assert_eq!(ceil_rat(&ratio(-7, 2)), int(-3));
        assert_eq!(floor_rat(&ratio(7, 2)), int(3));
        assert_eq!(ceil_rat(&rat(5)), int(5));
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_split(&int(8)), (int(2), int(2)));
        assert_eq!(squarefree_split(&int(12)), (int(2), int(3)));
        assert_eq!(squarefree_split(&int(49)), (int(7), int(1)));
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(&int(12)), vec![int(1), int(2), int(3), int(4), int(6), int(12)]);
        assert_eq!(divisors(&int(-7)), vec![int(1), int(7)]);
    }
}
