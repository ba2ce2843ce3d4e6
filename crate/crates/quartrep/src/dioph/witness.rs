use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::exact::rat::{iroot, isqrt, pow_int, rat_to_canon, Int, Rat};
use crate::forms::binary::BinaryForm;
use crate::forms::direction::{DirKind, Direction};
use crate::forms::surd::QuadIrr;

use super::cf::{cf_expand_quad, convergents, pell_fundamental};

/// Convergents scanned per construction before switching to the automorph orbit.
pub const CONVERGENT_BUDGET: usize = 60;

/// An integer pair with an exact bound attached.
///
/// For Dirichlet pairs `quality` bounds the normalized linear form `|sin ξ·u − cos ξ·v|`;
/// for congruence pairs it is the exact value `|H(d u + m1, d v + m2)|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPoint {
    pub u: Int,
    pub v: Int,
    pub quality: Rat,
    pub tag: &'static str,
}

impl WitnessPoint {
    pub fn to_json(&self) -> Value {
        json!({"tag": self.tag, "u": self.u.to_string(), "v": self.v.to_string(), "quality": rat_to_canon(&self.quality)})
    }
}

/// Upper bound for `√x`, `x ≥ 0` rational.
pub fn sqrt_upper(x: &Rat) -> Rat {
    let s = Int::one() << 40;
    let n = x.numer() * x.denom() * &s * &s;
    Rat::new(isqrt(&n) + 1u32, x.denom() * &s)
}

/// Lower bound for `√x`, `x ≥ 0` rational.
pub fn sqrt_lower(x: &Rat) -> Rat {
    let s = Int::one() << 40;
    let n = x.numer() * x.denom() * &s * &s;
    Rat::new(isqrt(&n), x.denom() * &s)
}

/// Upper bound of `|m u − v| / √(1 + m²)`.
pub fn linear_form_bound(m: &QuadIrr, u: &Int, v: &Int) -> Rat {
    let e = m.mul_rat(&Rat::from_integer(u.clone())).add_rat(&-Rat::from_integer(v.clone()));
    let one_plus = m.mul(m).add_rat(&Rat::one());
    let sq = e.mul(&e).div(&one_plus);
    let (_, hi) = sq.bounds(80);
    sqrt_upper(&hi.max(Rat::zero()))
}

/// Primitive pairs `(u, v)` approaching the direction, with `(u² + v²)·quality² ≤ 4`.
pub fn dirichlet_pairs(xi: &Direction, k: usize) -> Vec<WitnessPoint> {
    match &xi.kind {
        DirKind::Rational { x0, y0 } => (1..=k as i64)
            .map(|j| WitnessPoint { u: x0 * Int::from(j), v: y0 * Int::from(j), quality: Rat::zero(), tag: "dirichlet" })
            .collect(),
        DirKind::Quadratic { slope } => {
            let cf = cf_expand_quad(slope);
            let mut out = Vec::new();
            for (p, q) in convergents(&cf, 4 * k + 8) {
                let quality = linear_form_bound(slope, &q, &p);
                let n2 = Rat::from_integer(&q * &q + &p * &p);
                if n2 * &quality * &quality <= Rat::from_integer(4.into()) {
                    out.push(WitnessPoint { u: q, v: p, quality, tag: "dirichlet" });
                }
                if out.len() == k {
                    break;
                }
            }
            out
        }
        DirKind::Algebraic { .. } => vec![],
    }
}

/// Rational upper bound on `|c|·2d²(|α − α'| + 2d²)` for `H = a x² + b xy + c y²`.
pub fn dirlem_constant(h: &BinaryForm, d: &Int) -> Rat {
    let cs = h.int_coeffs();
    let disc = &cs[1] * &cs[1] - Int::from(4) * &cs[0] * &cs[2];
    // |α − α'| = √disc / |c|
    let c = cs[2].abs();
    let gap = sqrt_upper(&Rat::from_integer(disc)) / Rat::from_integer(c.clone());
    let dd = Rat::from_integer(Int::from(2) * d * d);
    Rat::from_integer(c) * &dd * (gap + &dd)
}

type Mat = [[Int; 2]; 2];

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    [
        [&a[0][0] * &b[0][0] + &a[0][1] * &b[1][0], &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1]],
        [&a[1][0] * &b[0][0] + &a[1][1] * &b[1][0], &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1]],
    ]
}

fn mat_apply(a: &Mat, x: &Int, y: &Int) -> (Int, Int) {
    (&a[0][0] * x + &a[0][1] * y, &a[1][0] * x + &a[1][1] * y)
}

/// Proper automorph of `H` with eigenvalue `(t + u√D)/2 > 1`; its expanding
/// eigenvector has slope `(−b − √D)/(2c)`.
fn automorph(h: &BinaryForm) -> Mat {
    let cs = h.int_coeffs();
    let (a, b, c) = (&cs[0], &cs[1], &cs[2]);
    let disc = b * b - Int::from(4) * a * c;
    let (p, q) = pell_fundamental(&disc);
    let (t, u) = (Int::from(2) * p, Int::from(2) * q);
    [
        [(&t - b * &u) / Int::from(2), -(c * &u)],
        [a * &u, (&t + b * &u) / Int::from(2)],
    ]
}

fn inverse(m: &Mat) -> Mat {
    [[m[1][1].clone(), -m[0][1].clone()], [-m[1][0].clone(), m[0][0].clone()]]
}

fn is_identity_mod(m: &Mat, d: &Int) -> bool {
    m[0][0].mod_floor(d) == Int::one() % d
        && m[1][1].mod_floor(d) == Int::one() % d
        && m[0][1].mod_floor(d).is_zero()
        && m[1][0].mod_floor(d).is_zero()
}

/// Sign of the component of `(x, y)` along `(1, m_exp)` in the basis `(1, m_exp), (1, m_con)`.
fn expanding_component_sign(x: &Int, y: &Int, m_exp: &QuadIrr, m_con: &QuadIrr) -> i32 {
    let cross = m_con.mul_rat(&Rat::from_integer(x.clone())).add_rat(&-Rat::from_integer(y.clone()));
    let den = m_con.sub(m_exp);
    cross.sign() * den.sign()
}

/// Pairs `(x, y)` heading to `orientation·(1, m)` (with `m` a zero slope of `H`) with
/// `|H(d x + m1, d y + m2)| ≤ c_H`, listed with growing size.
pub fn dirlem_pairs(h: &BinaryForm, slope: &QuadIrr, orientation: i32, d: &Int, m1: &Int, m2: &Int, k: usize) -> Vec<WitnessPoint> {
    let c_h = dirlem_constant(h, d);
    let hv = |x: &Int, y: &Int| h.eval_int(x, y).abs();
    let mut out: Vec<WitnessPoint> = Vec::new();
    let o = Int::from(orientation.signum());

    // Convergents of the slope placed in the residue class.
    let cf = cf_expand_quad(slope);
    for (p, q) in convergents(&cf, CONVERGENT_BUDGET) {
        let (xx, yy) = (&q * &o, &p * &o);
        if (&xx - m1).mod_floor(d).is_zero() && (&yy - m2).mod_floor(d).is_zero() {
            let val = hv(&xx, &yy);
            if val <= c_h && out.last().is_none_or(|w| xx.abs() > (&w.u * d + m1).abs()) {
                out.push(WitnessPoint { u: (&xx - m1) / d, v: (&yy - m2) / d, quality: val, tag: "dirlem" });
                if out.len() == k {
                    return out;
                }
            }
        }
    }

    // Orbit of a small base point under an automorph that fixes the residue class.
    let cs = h.int_coeffs();
    let disc = &cs[1] * &cs[1] - Int::from(4) * &cs[0] * &cs[2];
    let two_c = Int::from(2) * &cs[2];
    let m_plus = QuadIrr::new(-cs[1].clone(), -Int::one(), two_c.clone(), disc.clone());
    let m_minus = QuadIrr::new(-cs[1].clone(), Int::one(), two_c, disc);
    let mut gamma = automorph(h);
    let (m_exp, m_con) = if *slope == m_plus {
        (m_plus, m_minus)
    } else {
        gamma = inverse(&gamma);
        (m_minus, m_plus)
    };
    let mut step = gamma.clone();
    while !is_identity_mod(&step, d) {
        step = mat_mul(&step, &gamma);
    }
    let mut best: Option<(Rat, Int, Int)> = None;
    let r = 3i64;
    for i in -r..=r {
        for j in -r..=r {
            let x = m1 + d * Int::from(i);
            let y = m2 + d * Int::from(j);
            if x.is_zero() && y.is_zero() {
                continue;
            }
            if expanding_component_sign(&x, &y, &m_exp, &m_con) != orientation.signum() {
                continue;
            }
            let val = hv(&x, &y);
            if best.as_ref().is_none_or(|b| val < b.0) {
                best = Some((val, x, y));
            }
        }
    }
    let Some((_, mut x, mut y)) = best else { return out };
    let start = out.last().map(|w| (&w.u * d + m1).abs()).unwrap_or_else(Int::zero);
    let mut guard = 0;
    while out.len() < k && guard < 10_000 {
        guard += 1;
        let (nx, ny) = mat_apply(&step, &x, &y);
        x = nx;
        y = ny;
        if x.abs() <= start {
            continue;
        }
        let val = hv(&x, &y);
        out.push(WitnessPoint { u: (&x - m1) / d, v: (&y - m2) / d, quality: val, tag: "dirlem-orbit" });
    }
    out
}

/// The exponent window for scaled points: `(B²)^(9(2s+1)−20) < 𝔏²^(10(2s+1)) < (B²)^(11(2s+1)−20)`,
/// where `𝔏²` is the squared normalized linear form and `B² = x² + y²`.
pub fn in_window(l2_lo: &Rat, l2_hi: &Rat, b2: &Int, s: u32) -> bool {
    let e = 10 * (2 * s + 1);
    let lo_exp = 9 * (2 * s + 1) as i64 - 20;
    let hi_exp = 11 * (2 * s + 1) as i64 - 20;
    let powr = |r: &Rat, n: u32| crate::exact::rat::pow_rat(r, n);
    let bpow = |n: i64| -> Rat {
        if n >= 0 {
            Rat::from_integer(pow_int(b2, n as u32))
        } else {
            Rat::new(Int::one(), pow_int(b2, (-n) as u32))
        }
    };
    powr(l2_lo, e) > bpow(lo_exp) && powr(l2_hi, e) < bpow(hi_exp)
}

/// Exact bounds on the squared normalized linear form `(sin ξ·x − cos ξ·y)²`.
pub fn normalized_l2(xi: &Direction, x: &Int, y: &Int) -> (Rat, Rat) {
    match &xi.kind {
        DirKind::Rational { x0, y0 } => {
            let l = y0 * x - x0 * y;
            let v = Rat::new(&l * &l, x0 * x0 + y0 * y0);
            (v.clone(), v)
        }
        DirKind::Quadratic { slope } => {
            let e = slope.mul_rat(&Rat::from_integer(x.clone())).add_rat(&-Rat::from_integer(y.clone()));
            let sq = e.mul(&e).div(&slope.mul(slope).add_rat(&Rat::one()));
            let (lo, hi) = sq.bounds(200);
            (lo.max(Rat::zero()), hi)
        }
        DirKind::Algebraic { .. } => (Rat::zero(), Rat::zero()),
    }
}

/// Scaled points for a zero direction with exponent `s`, in the positive orientation.
pub fn cont2_points(xi: &Direction, s: u32, k: usize, base: &Int) -> Vec<(Int, Int)> {
    let mut out = Vec::new();
    match &xi.kind {
        DirKind::Rational { x0, y0 } => {
            let growth = pow_int(&Int::from(2), 2 * s + 1);
            let mut m = base.clone();
            for _ in 0..k {
                // ⌊M^((2s−1)/(2s+1))⌋
                let shift = iroot(&pow_int(&m, 2 * s - 1), 2 * s + 1);
                let pt = if y0.is_zero() {
                    (&m * x0, &m * y0 + &shift)
                } else {
                    (&m * x0 + &shift, &m * y0)
                };
                out.push(pt);
                m *= &growth;
            }
        }
        DirKind::Quadratic { slope } => {
            let cf = cf_expand_quad(slope);
            let min_r2 = base * base;
            for (p, q) in convergents(&cf, 400) {
                let r2 = &q * &q + &p * &p;
                if r2 < min_r2 {
                    continue;
                }
                let m = pow_int(&r2, s);
                let (x, y) = (&m * &q, &m * &p);
                let (lo, hi) = normalized_l2(xi, &x, &y);
                if in_window(&lo, &hi, &(&x * &x + &y * &y), s) {
                    out.push((x, y));
                }
                if out.len() == k {
                    break;
                }
            }
        }
        DirKind::Algebraic { .. } => {}
    }
    out
}
