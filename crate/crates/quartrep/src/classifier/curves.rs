//! Plane cubic curves: rational factors, singular points, genus, and integral points.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::exact::bipoly::BiPoly;
use crate::exact::factor::rational_roots;
use crate::exact::rat::{ceil_rat, lcm_all, rat_to_canon, Int, Rat};
use crate::exact::resultant::resultant_y;
use crate::exact::sturm::root_bound;
use crate::exact::unimodular::{apply_unimodular, unimodular_from_linear};
use crate::exact::unipoly::UniPoly;
use crate::forms::binary::{factor_form, BinaryForm};

use super::report::uni_to_json;

/// `x = x_num/x_den`, `y = y_num/y_den` in a parameter `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalParam {
    pub x_num: UniPoly,
    pub x_den: UniPoly,
    pub y_num: UniPoly,
    pub y_den: UniPoly,
}

impl RationalParam {
    /// `P(x(t), y(t))·x_den³·y_den³`, a polynomial that vanishes iff the curve is parametrized.
    pub fn residual(&self, p: &BiPoly) -> UniPoly {
        let d = p.total_degree();
        let mut acc = UniPoly::zero();
        for ((i, j), c) in p.terms() {
            let t = &(&self.x_num.pow(*i) * &self.x_den.pow(d - i)) * &(&self.y_num.pow(*j) * &self.y_den.pow(d - j));
            acc = &acc + &t.scale(c);
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        json!({
            "x_num": uni_to_json(&self.x_num), "x_den": uni_to_json(&self.x_den),
            "y_num": uni_to_json(&self.y_num), "y_den": uni_to_json(&self.y_den),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularPoint {
    Affine(Rat, Rat),
    /// The point at infinity where the linear form vanishes.
    AtInfinity(BinaryForm),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveClass {
    ReducibleOverQ { factors: Vec<BiPoly> },
    QbarReducible { singular_points: usize },
    Genus1,
    Genus0 { singular: SingularPoint, param: RationalParam },
}

impl CurveClass {
    pub fn name(&self) -> &'static str {
        match self {
            CurveClass::ReducibleOverQ { .. } => "ReducibleOverQ",
            CurveClass::QbarReducible { .. } => "QbarReducible",
            CurveClass::Genus1 => "Genus1",
            CurveClass::Genus0 { .. } => "Genus0",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CurveClass::ReducibleOverQ { factors } => {
                json!({"class": self.name(), "factors": factors.iter().map(|f| f.to_json()).collect::<Vec<_>>()})
            }
            CurveClass::QbarReducible { singular_points } => json!({"class": self.name(), "singular_points": singular_points}),
            CurveClass::Genus1 => json!({"class": self.name(), "theory": "finitely many integral points (Siegel)"}),
            CurveClass::Genus0 { singular, param } => {
                let sp = match singular {
                    SingularPoint::Affine(x, y) => json!({"affine": [rat_to_canon(x), rat_to_canon(y)]}),
                    SingularPoint::AtInfinity(l) => json!({"infinity": l.to_json()}),
                };
                json!({"class": self.name(), "singular_point": sp, "param": param.to_json()})
            }
        }
    }
}

/// `p(x + s y, y)`.
fn shear(p: &BiPoly, s: i64) -> BiPoly {
    let px = &BiPoly::x() + &BiPoly::y().scale(&Rat::from_integer(Int::from(s)));
    p.substitute(&px, &BiPoly::y())
}

/// `Σ c_j(x) (−a0)^j a1^(k−j)`: the numerator of `q(x, −a0/a1)` over `a1^k`.
fn substitute_ratio(q: &BiPoly, a0: &UniPoly, a1: &UniPoly, k: usize) -> UniPoly {
    let neg_a0 = -a0;
    let mut acc = UniPoly::zero();
    for (j, c) in q.coeffs_in_y().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = &acc + &(&(c * &neg_a0.pow(j as u32)) * &a1.pow((k - j) as u32));
    }
    acc
}

/// Remainder of `p` modulo `d` as polynomials in `y`, `d` with constant leading coefficient.
fn rem_in_y(p: &BiPoly, d: &BiPoly) -> Option<Vec<UniPoly>> {
    let mut rows = p.coeffs_in_y();
    let drows = d.coeffs_in_y();
    let dd = drows.len() - 1;
    let lc = drows[dd].clone();
    if lc.degree() != 0 || lc.is_zero() {
        return None;
    }
    let inv = Rat::one() / lc.coeff(0);
    while rows.len() > dd {
        let top = rows.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = rows.len() - dd;
        let f = top.scale(&inv);
        for (k, dr) in drows[..dd].iter().enumerate() {
            rows[shift + k] = &rows[shift + k] - &(&f * dr);
        }
    }
    rows.resize(dd, UniPoly::zero());
    Some(rows)
}

/// Affine singular points: the count over ℂ (up to shear degeneracy) and the rational ones.
fn affine_singular(p: &BiPoly) -> (usize, Vec<(Rat, Rat)>) {
    let mut best: Option<(usize, Vec<(Rat, Rat)>)> = None;
    for s in [0i64, 1, 2, 3, 5, 7, -1, -2] {
        let ps = shear(p, s);
        if ps.coeff(0, 3).is_zero() {
            continue;
        }
        let (px, py) = (ps.dx(), ps.dy());
        let Some(rem) = rem_in_y(&ps, &py) else { continue };
        let (a0, a1) = (rem[0].clone(), rem[1].clone());
        if a1.is_zero() {
            // P ≡ A0(x) mod P_y: singular abscissae are common roots of A0 and Res_y(P_x, P_y)
            if a0.is_zero() {
                continue;
            }
            let r = resultant_y(&px, &py);
            let g = if r.is_zero() { a0.clone() } else { a0.gcd(&r) };
            let count = if g.degree() == 0 { 0 } else { g.squarefree_part().degree() };
            let mut pts = Vec::new();
            for xs in rational_roots(&g) {
                let yg = py.specialize_x(&xs).gcd(&px.specialize_x(&xs));
                for y0 in rational_roots(&yg) {
                    if ps.eval(&xs, &y0).is_zero() {
                        pts.push((&xs + Rat::from_integer(Int::from(s)) * &y0, y0));
                    }
                }
            }
            if best.as_ref().is_none_or(|b| count > b.0) {
                best = Some((count, pts));
            }
            continue;
        }
        if a0.gcd(&a1).degree() > 0 {
            continue;
        }
        let m1 = substitute_ratio(&py, &a0, &a1, 2);
        let m2 = substitute_ratio(&px, &a0, &a1, 2);
        let mut g = if m1.is_zero() && m2.is_zero() { continue } else { m1.gcd(&m2) };
        loop {
            let c = g.gcd(&a1);
            if c.degree() == 0 {
                break;
            }
            g = g.exact_div(&c).expect("gcd divides");
        }
        let count = if g.degree() == 0 { 0 } else { g.squarefree_part().degree() };
        let pts: Vec<(Rat, Rat)> = rational_roots(&g)
            .into_iter()
            .map(|xs| {
                let y0 = -(a0.eval(&xs) / a1.eval(&xs));
                (&xs + Rat::from_integer(Int::from(s)) * &y0, y0)
            })
            .collect();
        if best.as_ref().is_none_or(|b| count > b.0) {
            best = Some((count, pts));
        }
    }
    best.unwrap_or((0, vec![]))
}

/// Singular points at infinity: repeated linear factors of `P3` that divide `P2`.
fn singular_at_infinity(p: &BiPoly) -> Vec<BinaryForm> {
    let p3 = BinaryForm::from_bipoly(p, 3);
    let p2 = BinaryForm::from_bipoly(p, 2);
    factor_form(&p3).factors.into_iter().filter(|(l, m)| *m >= 2 && l.degree() == 1 && (p2.is_zero() || l.divides(&p2))).map(|(l, _)| l).collect()
}

/// A factor `L − γ` of `p` with `L` a rational linear factor of the top form.
fn rational_linear_factor(p: &BiPoly) -> Option<BiPoly> {
    let top = BinaryForm::from_bipoly(p, p.total_degree());
    for (l, _) in factor_form(&top).factors {
        if l.degree() != 1 {
            continue;
        }
        let lc = l.int_coeffs();
        let a = unimodular_from_linear(&lc[0], &lc[1]).ok()?;
        let g = apply_unimodular(p, &a);
        let common = g.coeffs_in_y().iter().filter(|c| !c.is_zero()).fold(UniPoly::zero(), |acc, c| acc.gcd(c));
        if let Some(gamma) = rational_roots(&common).first() {
            let factor = &l.to_bipoly() - &BiPoly::constant(gamma.clone());
            if p.div_exact(&factor).is_some() {
                return Some(factor);
            }
        }
    }
    None
}

fn node_param(p: &BiPoly, x0: &Rat, y0: &Rat) -> RationalParam {
    let tx = &BiPoly::x() + &BiPoly::constant(x0.clone());
    let ty = &BiPoly::y() + &BiPoly::constant(y0.clone());
    let t = p.substitute(&tx, &ty);
    let one = Rat::one();
    let a2 = t.homogeneous_part(2).specialize_x(&one);
    let a3 = t.homogeneous_part(3).specialize_x(&one);
    let tt = UniPoly::from_ints(&[0, 1]);
    RationalParam {
        x_num: &a3.scale(x0) - &a2,
        x_den: a3.clone(),
        y_num: &a3.scale(y0) - &(&tt * &a2),
        y_den: a3,
    }
}

fn infinity_param(p: &BiPoly, l: &BinaryForm) -> Option<RationalParam> {
    let lc = l.int_coeffs();
    let a = unimodular_from_linear(&lc[0], &lc[1]).ok()?;
    let rows = apply_unimodular(p, &a).coeffs_in_y();
    if rows.len() != 2 || rows[1].is_zero() {
        return None;
    }
    let (c0, c1) = (&rows[0], &rows[1]);
    // u = t, v = −c0/c1, then (x, y) = A⁻¹(u, v)
    let b = a.inverse();
    let k = |n: &Int| Rat::from_integer(n.clone());
    let tt = UniPoly::from_ints(&[0, 1]);
    let u_num = &tt * c1;
    let v_num = -c0;
    Some(RationalParam {
        x_num: &u_num.scale(&k(&b.a)) + &v_num.scale(&k(&b.b)),
        x_den: c1.clone(),
        y_num: &u_num.scale(&k(&b.c)) + &v_num.scale(&k(&b.d)),
        y_den: c1.clone(),
    })
}

fn is_triple_point(p: &BiPoly, x0: &Rat, y0: &Rat) -> bool {
    let tx = &BiPoly::x() + &BiPoly::constant(x0.clone());
    let ty = &BiPoly::y() + &BiPoly::constant(y0.clone());
    p.substitute(&tx, &ty).homogeneous_part(2).is_zero()
}

/// Classifies a plane cubic `P` by its rational factors and singular points.
pub fn cubic_curve_analysis(p: &BiPoly) -> Result<CurveClass, String> {
    if p.total_degree() != 3 {
        return Err(format!("expected a cubic, got degree {}", p.total_degree()));
    }
    if let Some(l) = rational_linear_factor(p) {
        let rest = p.div_exact(&l).ok_or("factor does not divide")?;
        return Ok(CurveClass::ReducibleOverQ { factors: vec![l, rest] });
    }
    let (n_aff, rational) = affine_singular(p);
    let at_inf = singular_at_infinity(p);
    let total = n_aff + at_inf.len();
    match total {
        0 => Ok(CurveClass::Genus1),
        1 => {
            let (singular, param) = if let Some((x0, y0)) = rational.first() {
                if is_triple_point(p, x0, y0) {
                    return Ok(CurveClass::QbarReducible { singular_points: 1 });
                }
                (SingularPoint::Affine(x0.clone(), y0.clone()), node_param(p, x0, y0))
            } else if let Some(l) = at_inf.first() {
                match infinity_param(p, l) {
                    Some(param) => (SingularPoint::AtInfinity(l.clone()), param),
                    None => return Ok(CurveClass::QbarReducible { singular_points: 1 }),
                }
            } else {
                return Err("single singular point is not rational".into());
            };
            if !param.residual(p).is_zero() {
                return Err("parametrization identity fails".into());
            }
            Ok(CurveClass::Genus0 { singular, param })
        }
        n => Ok(CurveClass::QbarReducible { singular_points: n }),
    }
}

/// `(g, s, t)` with `s a + t b = g`, `g` monic.
fn ext_gcd(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
    let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = Rat::one() / r0.lc();
    (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
}

fn to_integral(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
    let m = lcm_all(a.coeffs().iter().chain(b.coeffs()).map(|c| c.denom()));
    let k = Rat::from_integer(m);
    (a.scale(&k), b.scale(&k))
}

/// Integral points `(x, y)` on a curve `x = R1/Q1`, `y = R2/Q2` with `R1/Q1` a Möbius map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MobiusPoints {
    Finite { points: Vec<(Int, Int)>, bound: Int },
    /// `y` is integral exactly on these residue classes of `x`, so integral points are unbounded in both signs.
    Unbounded { modulus: Int, residues: Vec<Int> },
}

impl MobiusPoints {
    pub fn to_json(&self) -> Value {
        match self {
            MobiusPoints::Finite { points, bound } => json!({
                "kind": "finite",
                "divisor_bound": bound.to_string(),
                "points": points.iter().map(|(x, y)| [x.to_string(), y.to_string()]).collect::<Vec<_>>(),
            }),
            MobiusPoints::Unbounded { modulus, residues } => json!({
                "kind": "unbounded",
                "modulus": modulus.to_string(),
                "residues": residues.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            }),
        }
    }
}

/// `y = R̃2(x)/Q̃2(x)` after inverting `x = (r t + s)/(u t + v)` as `t = (s − v x)/(u x − r)`.
pub fn mobius_reduce(r1: &UniPoly, q1: &UniPoly, r2: &UniPoly, q2: &UniPoly) -> Result<(UniPoly, UniPoly), String> {
    if r1.degree() > 1 || q1.degree() > 1 || q1.is_zero() || q2.is_zero() {
        return Err("x-parametrization is not a Möbius map".into());
    }
    let (r, s) = (r1.coeff(1), r1.coeff(0));
    let (u, v) = (q1.coeff(1), q1.coeff(0));
    if (&r * &v - &s * &u).is_zero() {
        return Err("degenerate Möbius map".into());
    }
    let num = UniPoly::new(vec![s.clone(), -v.clone()]);
    let den = UniPoly::new(vec![-r.clone(), u.clone()]);
    let n = r2.degree().max(q2.degree());
    let hom = |p: &UniPoly| {
        let mut acc = UniPoly::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            acc = &acc + &(&num.pow(k as u32) * &den.pow((n - k) as u32)).scale(c);
        }
        acc
    };
    let (rt, qt) = (hom(r2), hom(q2));
    let g = rt.gcd(&qt);
    let (rt, qt) = if g.degree() > 0 { (rt.exact_div(&g).unwrap(), qt.exact_div(&g).unwrap()) } else { (rt, qt) };
    Ok(to_integral(&rt, &qt))
}

/// Integral points on the curve, via the divisor bound `Q̃2(x) | D` from `A R̃2 + B Q̃2 = D`.
pub fn mobius_integer_points(r1: &UniPoly, q1: &UniPoly, r2: &UniPoly, q2: &UniPoly) -> Result<MobiusPoints, String> {
    let (rt, qt) = mobius_reduce(r1, q1, r2, q2)?;
    if qt.degree() == 0 {
        let q = qt.coeff(0).to_integer();
        let m = q.abs();
        let residues: Vec<Int> = num_iter(&m).filter(|x| rt.eval_int(x).to_integer().mod_floor(&m).is_zero()).collect();
        if residues.is_empty() {
            return Ok(MobiusPoints::Finite { points: vec![], bound: Int::zero() });
        }
        return Ok(MobiusPoints::Unbounded { modulus: m, residues });
    }
    let (_, a, b) = ext_gcd(&rt, &qt);
    let d = lcm_all(a.coeffs().iter().chain(b.coeffs()).map(|c| c.denom()));
    let dr = Rat::from_integer(d.clone());
    let x_max = [&qt - &UniPoly::constant(dr.clone()), &qt + &UniPoly::constant(dr)]
        .iter()
        .map(|p| ceil_rat(&root_bound(p)))
        .max()
        .unwrap()
        + Int::one();
    if x_max > Int::from(10_000_000) {
        return Err("divisor bound too large to scan".into());
    }
    let mut points = Vec::new();
    let mut x = -x_max.clone();
    while x <= x_max {
        let qv = qt.eval_int(&x).to_integer();
        if !qv.is_zero() && d.mod_floor(&qv).is_zero() {
            let rv = rt.eval_int(&x).to_integer();
            if rv.mod_floor(&qv).is_zero() {
                points.push((x.clone(), rv / qv));
            }
        }
        x += 1;
    }
    Ok(MobiusPoints::Finite { points, bound: d })
}

fn num_iter(m: &Int) -> impl Iterator<Item = Int> + '_ {
    let mut i = Int::zero();
    std::iter::from_fn(move || {
        if &i < m {
            let out = i.clone();
            i += 1;
            Some(out)
        } else {
            None
        }
    })
}

/// Real roots of `Σ c_k y^k` in floating point, for locating integer candidates.
pub fn real_roots_f64(c: &[f64]) -> Vec<f64> {
    let mut c = c.to_vec();
    while c.last().is_some_and(|v| *v == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![-c[0] / c[1]];
    }
    let eval = |t: f64| c.iter().rev().fold(0.0, |acc, k| acc * t + k);
    let deriv: Vec<f64> = c.iter().enumerate().skip(1).map(|(k, v)| v * k as f64).collect();
    let bound = 1.0 + c[..n].iter().map(|v| (v / c[n]).abs()).fold(0.0, f64::max);
    let mut pts = vec![-bound];
    pts.extend(real_roots_f64(&deriv).into_iter().filter(|t| t.abs() < bound));
    pts.push(bound);
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<f64> = Vec::new();
    for w in pts.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (fa, fb) = (eval(a), eval(b));
        if fa == 0.0 {
            out.push(a);
            continue;
        }
        if fa.signum() == fb.signum() {
            // touching root at a critical point
            if eval(b).abs() < 1e-9 * (1.0 + b.abs()) {
                out.push(b);
            }
            continue;
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if eval(m).signum() == fa.signum() {
                a = m;
            } else {
                b = m;
            }
        }
        out.push(0.5 * (a + b));
    }
    out.push(pts[pts.len() - 1]);
    out.retain(|t| eval(*t).abs() < 1e-6 * (1.0 + c.iter().map(|v| v.abs()).sum::<f64>() * t.abs().max(1.0).powi(n as i32)));
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    out
}

/// Integral points on `p = 0` with `|x| ≤ x_max`, located numerically and checked exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointScan {
    pub x_max: i64,
    pub count: usize,
    pub sample: Vec<(i64, i64)>,
    pub vertical_lines: Vec<i64>,
}

impl PointScan {
    pub fn to_json(&self) -> Value {
        json!({"x_max": self.x_max, "count": self.count, "sample": self.sample, "vertical_lines": self.vertical_lines})
    }
}

pub fn integral_points_scan(p: &BiPoly, x_max: i64) -> PointScan {
    let m = lcm_all(p.terms().values().map(|c| c.denom()));
    let pi = p.scale(&Rat::from_integer(m));
    let terms: Vec<(u32, u32, i128)> = pi.terms().iter().map(|((i, j), c)| (*i, *j, c.to_integer().to_i128().expect("small coefficients"))).collect();
    let dy = pi.deg_y() as usize;
    let mut count = 0;
    let mut sample = Vec::new();
    let mut vertical = Vec::new();
    for x in -x_max..=x_max {
        let mut row = vec![0i128; dy + 1];
        for &(i, j, c) in &terms {
            row[j as usize] += c * (x as i128).pow(i);
        }
        if row.iter().all(|v| *v == 0) {
            vertical.push(x);
            continue;
        }
        let rf: Vec<f64> = row.iter().map(|v| *v as f64).collect();
        let mut ys: Vec<i64> = Vec::new();
        for root in real_roots_f64(&rf) {
            if root.abs() > 1e15 {
                continue;
            }
            let base = root.round() as i64;
            for y in base - 1..=base + 1 {
                let val = row.iter().rev().fold(0i128, |acc, k| acc.saturating_mul(y as i128).saturating_add(*k));
                if val == 0 && !ys.contains(&y) {
                    ys.push(y);
                }
            }
        }
        ys.sort_unstable();
        for y in ys {
            count += 1;
            if sample.len() < 20 {
                sample.push((x, y));
            }
        }
    }
    PointScan { x_max, count, sample, vertical_lines: vertical }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly;

    fn up(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(cs)
    }

    #[test]
    fn nodal_cubic_is_genus_zero() {
        let p = parse_poly("y^2 - x^3 - x^2").unwrap();
        let CurveClass::Genus0 { singular, param } = cubic_curve_analysis(&p).unwrap() else { panic!() };
        assert_eq!(singular, SingularPoint::Affine(Rat::zero(), Rat::zero()));
        assert!(param.residual(&p).is_zero());
        // x = t² − 1, y = t(t² − 1)
        assert_eq!(param.x_den.degree(), 0);
        let k = Rat::one() / param.x_den.coeff(0);
        assert_eq!(param.x_num.scale(&k), up(&[-1, 0, 1]));
        assert_eq!(param.y_num.scale(&k), up(&[0, -1, 0, 1]));
    }

    #[test]
    fn smooth_and_reducible_cubics() {
        assert_eq!(cubic_curve_analysis(&parse_poly("y^2 - x^3 + 2").unwrap()).unwrap(), CurveClass::Genus1);
        assert_eq!(cubic_curve_analysis(&parse_poly("x^3 + 2*y^3 + 1").unwrap()).unwrap(), CurveClass::Genus1);
        let CurveClass::ReducibleOverQ { factors } = cubic_curve_analysis(&parse_poly("(x+y)*(x^2+y^2+1)").unwrap()).unwrap() else { panic!() };
        assert_eq!(&factors[0] * &factors[1], parse_poly("(x+y)*(x^2+y^2+1)").unwrap());
        // three concurrent conjugate lines
        assert_eq!(cubic_curve_analysis(&parse_poly("x^3 - 2*y^3").unwrap()).unwrap(), CurveClass::QbarReducible { singular_points: 1 });
        // cusp
        assert!(matches!(cubic_curve_analysis(&parse_poly("y^2 - x^3").unwrap()).unwrap(), CurveClass::Genus0 { .. }));
        // node at infinity: x y² + x + 1 has a double point at [1:0:0]
        let p = parse_poly("x*y^2 + x + 1").unwrap();
        let c = cubic_curve_analysis(&p).unwrap();
        let CurveClass::Genus0 { param, .. } = c else { panic!("{c:?}") };
        assert!(param.residual(&p).is_zero());
        assert!(cubic_curve_analysis(&parse_poly("x^2 + y").unwrap()).is_err());
    }

    #[test]
    fn mobius_examples() {
        let t = up(&[0, 1]);
        let one = up(&[1]);
        let got = mobius_integer_points(&t, &one, &up(&[1, 0, 1]), &t).unwrap();
        let MobiusPoints::Finite { points, .. } = got else { panic!() };
        assert_eq!(points, vec![(Int::from(-1), Int::from(-2)), (Int::from(1), Int::from(2))]);
        let got = mobius_integer_points(&t, &one, &up(&[3, 2]), &one).unwrap();
        assert!(matches!(got, MobiusPoints::Unbounded { .. }));
        let got = mobius_integer_points(&t, &one, &up(&[6]), &up(&[0, 1, 1])).unwrap();
        let MobiusPoints::Finite { points, bound } = got else { panic!() };
        assert_eq!(bound, Int::from(6));
        let xs: Vec<i64> = points.iter().map(|p| p.0.to_i64().unwrap()).collect();
        assert_eq!(xs, vec![-3, -2, 1, 2]);
        assert!(mobius_integer_points(&up(&[0, 0, 1]), &one, &t, &one).is_err());
    }

    #[test]
    fn point_scan_on_a_circle() {
        let s = integral_points_scan(&parse_poly("x^2 + y^2 - 25").unwrap(), 10);
        assert_eq!(s.count, 12);
        let s = integral_points_scan(&parse_poly("x*y - x").unwrap(), 3);
        assert_eq!(s.vertical_lines, vec![0]);
        assert_eq!(s.count, 6);
    }
}
