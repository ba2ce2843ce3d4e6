//! Lattice points in an annular sector `T ≤ |p| ≤ 2T`, `|arg p − ξ| ≤ φ`, with `tan φ = c·T^{−1/(2R)}`.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::exact::rat::{iroot, Int, Rat};
use crate::forms::direction::{DirKind, Direction};

use super::OracleError;

/// Largest annulus scanned point by point when the window is too wide for column intervals.
const BRUTE_LIMIT: u64 = 1_500;

/// `ξ = (x0 + x1√Δ, y0 + y1√Δ)` with the tangent bound `tn/td`.
#[derive(Clone, Copy, Debug)]
struct Cone {
    x0: i128,
    x1: i128,
    y0: i128,
    y1: i128,
    delta: i128,
    tn: i128,
    td: i128,
}

/// Sign of `a + b√Δ`.
fn sign_surd(a: i128, b: i128, delta: i128) -> Option<i32> {
    let (sa, sb) = (a.signum() as i32, b.signum() as i32);
    if sb == 0 || delta == 0 {
        return Some(sa);
    }
    if sa == 0 || sa == sb {
        return Some(sb);
    }
    let lhs = a.checked_mul(a)?;
    let rhs = b.checked_mul(b)?.checked_mul(delta)?;
    Some(match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => sa,
        std::cmp::Ordering::Less => sb,
        std::cmp::Ordering::Equal => 0,
    })
}

impl Cone {
    fn contains(&self, x: i128, y: i128) -> Option<bool> {
        let da = x.checked_mul(self.x0)?.checked_add(y.checked_mul(self.y0)?)?;
        let db = x.checked_mul(self.x1)?.checked_add(y.checked_mul(self.y1)?)?;
        if sign_surd(da, db, self.delta)? <= 0 {
            return Some(false);
        }
        let ca = self.x0.checked_mul(y)?.checked_sub(self.y0.checked_mul(x)?)?;
        let cb = self.x1.checked_mul(y)?.checked_sub(self.y1.checked_mul(x)?)?;
        let (ta, tb) = (self.tn.checked_mul(da)?, self.tn.checked_mul(db)?);
        let (ua, ub) = (self.td.checked_mul(ca)?, self.td.checked_mul(cb)?);
        let s1 = sign_surd(ta.checked_sub(ua)?, tb.checked_sub(ub)?, self.delta)?;
        let s2 = sign_surd(ta.checked_add(ua)?, tb.checked_add(ub)?, self.delta)?;
        Some(s1 >= 0 && s2 >= 0)
    }
}

/// Rational `τ ≥ c·T^{−1/(2R)}` to about 32 bits, as `(numerator, denominator)`.
pub fn tangent_bound(c: &Rat, t: u64, r: u32) -> (Int, Int) {
    let k = 2 * r;
    // s ≈ T^{1/k}·2^32 from below, so c·2^32/s bounds the tangent from above
    let s = iroot(&(Int::from(t) << (32 * k as usize)), k);
    let num = c.numer() << 32usize;
    let den = c.denom() * s;
    let g = num.gcd(&den);
    if g.is_zero() {
        return (Int::zero(), Int::from(1));
    }
    (num / &g, den / g)
}

fn cone_of(xi: &Direction, tn: &Int, td: &Int) -> Result<Cone, OracleError> {
    let big = |v: &Int| v.to_i128().ok_or(OracleError::Overflow);
    let (tn, td) = (big(tn)?, big(td)?);
    match &xi.kind {
        DirKind::Rational { x0, y0 } => Ok(Cone { x0: big(x0)?, x1: 0, y0: big(y0)?, y1: 0, delta: 0, tn, td }),
        DirKind::Quadratic { slope } => {
            Ok(Cone { x0: big(&slope.r)?, x1: 0, y0: big(&slope.p)?, y1: big(&slope.q)?, delta: big(&slope.delta)?, tn, td })
        }
        DirKind::Algebraic { .. } => Err(OracleError::Invalid("sector counts need a rational or quadratic direction".into())),
    }
}

/// Count of lattice points in one column of a convex set, given an approximate section `[lo, hi]`.
fn column_count(lo: f64, hi: f64, member: &dyn Fn(i64) -> Result<bool, OracleError>) -> Result<u64, OracleError> {
    let (mut l, mut h) = (lo.floor() as i64 - 2, hi.ceil() as i64 + 2);
    while member(l)? {
        l -= 1;
    }
    while member(h)? {
        h += 1;
    }
    if h - l <= 10 {
        let mut n = 0;
        for b in l + 1..h {
            n += member(b)? as u64;
        }
        return Ok(n);
    }
    let mut first = l + 1;
    while first < h && !member(first)? {
        first += 1;
    }
    if first == h {
        return Ok(0);
    }
    let mut last = h - 1;
    while !member(last)? {
        last -= 1;
    }
    Ok((last - first + 1) as u64)
}

/// Points of the cone in the disk `x² + y² ≤ rad2` (or `< rad2`).
fn cone_disk_count(cone: &Cone, swap: bool, theta: f64, phi: f64, rad2: i128, closed: bool) -> Result<u64, OracleError> {
    let member = |a: i64, b: i64| -> Result<bool, OracleError> {
        let (x, y) = if swap { (b as i128, a as i128) } else { (a as i128, b as i128) };
        let n2 = x * x + y * y;
        if (closed && n2 > rad2) || (!closed && n2 >= rad2) {
            return Ok(false);
        }
        cone.contains(x, y).ok_or(OracleError::Overflow)
    };
    let rad = (rad2 as f64).sqrt().ceil() as i64;
    let (t1, t2) = ((theta - phi).tan(), (theta + phi).tan());
    let forward = theta.cos() > 0.0;
    let mut total = 0;
    for a in -rad..=rad {
        if a == 0 || (a > 0) != forward {
            continue;
        }
        let rem = rad2 as f64 - (a as f64) * (a as f64);
        if rem < -1.0 {
            continue;
        }
        let w = rem.max(0.0).sqrt();
        let (c1, c2) = (a as f64 * t1, a as f64 * t2);
        let lo = c1.min(c2).max(-w);
        let hi = c1.max(c2).min(w);
        let (lo, hi) = if lo > hi { (lo, lo) } else { (lo, hi) };
        total += column_count(lo, hi, &|b| member(a, b))?;
    }
    Ok(total)
}

/// Lattice points with `T ≤ √(x² + y²) ≤ 2T` within the window around the oriented direction `ξ`.
pub fn sector_count(xi: &Direction, r: u32, c: &Rat, t: u64) -> Result<u64, OracleError> {
    if t < 2 || r == 0 || c < &Rat::zero() {
        return Err(OracleError::Invalid("sector counts need T ≥ 2, R ≥ 1 and c ≥ 0".into()));
    }
    let (tn, td) = tangent_bound(c, t, r);
    let cone = cone_of(xi, &tn, &td)?;
    let tau = tn.to_f64().unwrap_or(f64::INFINITY) / td.to_f64().unwrap_or(1.0);
    let t2 = (t as i128) * (t as i128);
    if tau >= 0.5 {
        if t > BRUTE_LIMIT {
            return Err(OracleError::Invalid("angular window too wide for this T".into()));
        }
        let b = 2 * t as i64;
        let mut n = 0;
        for x in -b..=b {
            for y in -b..=b {
                let n2 = (x * x + y * y) as i128;
                if t2 <= n2 && n2 <= 4 * t2 && cone.contains(x as i128, y as i128).ok_or(OracleError::Overflow)? {
                    n += 1;
                }
            }
        }
        return Ok(n);
    }
    let (ux, uy) = xi.approx_unit();
    let swap = uy.abs() > ux.abs();
    let theta = if swap { ux.atan2(uy) } else { uy.atan2(ux) };
    let phi = tau.atan();
    let outer = cone_disk_count(&cone, swap, theta, phi, 4 * t2, true)?;
    let inner = cone_disk_count(&cone, swap, theta, phi, t2, false)?;
    Ok(outer - inner)
}

/// Least-squares slope of `log count` against `log T`.
pub fn loglog_slope(rows: &[(u64, u64)]) -> f64 {
    let pts: Vec<(f64, f64)> = rows.iter().map(|(t, c)| ((*t as f64).ln(), (*c as f64).ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

pub fn sector_json(xi: &Direction, r: u32, c: &Rat, rows: &[(u64, u64)]) -> Value {
    json!({
        "direction": xi.to_json(),
        "R": r,
        "c": crate::exact::rat::rat_to_canon(c),
        "rows": rows.iter().map(|(t, n)| json!({"T": t, "count": n})).collect::<Vec<_>>(),
        "slope": if rows.len() > 1 { json!(format!("{:.4}", loglog_slope(rows))) } else { Value::Null },
    })
}
