//! Algebraic identities attached to reports, each re-checkable by expansion.

use serde_json::{json, Value};

use crate::exact::bipoly::BiPoly;
use crate::exact::rat::{parse_rat, rat_to_canon, Rat};
use crate::exact::unimodular::{apply_unimodular, UnimodularMap};
use crate::exact::unipoly::UniPoly;

use super::report::{uni_from_json, uni_to_json};

fn r(v: &Rat) -> Value {
    json!(rat_to_canon(v))
}

fn get_rat(v: &Value, k: &str) -> Result<Rat, String> {
    v.get(k).and_then(|x| x.as_str()).and_then(parse_rat).ok_or_else(|| format!("missing rational field {k}"))
}

fn get_poly(v: &Value, k: &str) -> Result<BiPoly, String> {
    v.get(k).and_then(BiPoly::from_json).ok_or_else(|| format!("missing polynomial field {k}"))
}

fn get_uni(v: &Value, k: &str) -> Result<UniPoly, String> {
    v.get(k).and_then(uni_from_json).ok_or_else(|| format!("missing univariate field {k}"))
}

fn get_map(v: &Value) -> Result<UnimodularMap, String> {
    v.get("map").and_then(UnimodularMap::from_json).ok_or_else(|| "missing map".to_string())
}

/// `H(x + q1, y + q2) + q3`.
pub fn shifted(h: &BiPoly, q1: &Rat, q2: &Rat, q3: &Rat) -> BiPoly {
    let px = &BiPoly::x() + &BiPoly::constant(q1.clone());
    let py = &BiPoly::y() + &BiPoly::constant(q2.clone());
    &h.substitute(&px, &py) + &BiPoly::constant(q3.clone())
}

/// `F = c·(H(x + q1, y + q2) + q3)^p + R`.
pub fn shifted_power(c: &Rat, h: &BiPoly, q: [&Rat; 3], p: u32, rem: &BiPoly) -> Value {
    json!({
        "kind": "shifted_power",
        "coeff": r(c),
        "form": h.to_json(),
        "q1": r(q[0]), "q2": r(q[1]), "q3": r(q[2]),
        "power": p,
        "remainder": rem.to_json(),
    })
}

/// `F ∘ A⁻¹ = Σ v^k g_k(u)`, with optionally `g1 = 2 g2 q + h`.
pub fn v_quadratic(a: &UnimodularMap, g: [&UniPoly; 3], split: Option<(&UniPoly, &UniPoly)>) -> Value {
    let mut v = json!({
        "kind": "v_quadratic",
        "map": a.to_json(),
        "g0": uni_to_json(g[0]), "g1": uni_to_json(g[1]), "g2": uni_to_json(g[2]),
    });
    if let Some((q, h)) = split {
        v["q"] = uni_to_json(q);
        v["h"] = uni_to_json(h);
    }
    v
}

/// `F ∘ A⁻¹ = (|e|(4b y + 2 g1(x))² + (2e x + f)²)/(16 b |e|) + c0`.
pub fn landau_reduction(a: &UnimodularMap, b: &Rat, g1: &UniPoly, e: &Rat, f: &Rat, c0: &Rat) -> Value {
    json!({"kind": "landau_reduction", "map": a.to_json(), "b": r(b), "g1": uni_to_json(g1), "e": r(e), "f": r(f), "c0": r(c0)})
}

/// `F ∘ A⁻¹ = poly`.
pub fn mapped(a: &UnimodularMap, poly: &BiPoly, note: &str) -> Value {
    json!({"kind": "mapped", "map": a.to_json(), "poly": poly.to_json(), "note": note})
}

fn uni_in(p: &UniPoly, var: &BiPoly) -> BiPoly {
    let mut out = BiPoly::zero();
    let mut pw = BiPoly::constant(Rat::from_integer(1.into()));
    for c in p.coeffs() {
        out = &out + &pw.scale(c);
        pw = &pw * var;
    }
    out
}

/// Re-checks one identity against the normalized polynomial `f`.
pub fn check(f: &BiPoly, v: &Value) -> Result<(), String> {
    let kind = v.get("kind").and_then(|k| k.as_str()).ok_or("completion without kind")?;
    match kind {
        "shifted_power" => {
            let c = get_rat(v, "coeff")?;
            let h = get_poly(v, "form")?;
            let (q1, q2, q3) = (get_rat(v, "q1")?, get_rat(v, "q2")?, get_rat(v, "q3")?);
            let p = v.get("power").and_then(|p| p.as_u64()).ok_or("missing power")? as u32;
            let rem = get_poly(v, "remainder")?;
            let rebuilt = &shifted(&h, &q1, &q2, &q3).pow(p).scale(&c) + &rem;
            if &rebuilt != f {
                return Err("square completion mismatch".into());
            }
        }
        "v_quadratic" => {
            let a = get_map(v)?;
            let g: Vec<UniPoly> = ["g0", "g1", "g2"].iter().map(|k| get_uni(v, k)).collect::<Result<_, _>>()?;
            let (u, w) = (BiPoly::x(), BiPoly::y());
            let rebuilt = &(&uni_in(&g[0], &u) + &(&uni_in(&g[1], &u) * &w)) + &(&uni_in(&g[2], &u) * &w.pow(2));
            if rebuilt != apply_unimodular(f, &a) {
                return Err("quadratic-in-v identity mismatch".into());
            }
            if v.get("q").is_some() {
                let (q, h) = (get_uni(v, "q")?, get_uni(v, "h")?);
                let two = UniPoly::constant(Rat::from_integer(2.into()));
                if &(&(&two * &g[2]) * &q) + &h != g[1] || h.degree() > 1 {
                    return Err("division identity g1 = 2 g2 q + h fails".into());
                }
            }
        }
        "landau_reduction" => {
            let a = get_map(v)?;
            let (b, e, ff, c0) = (get_rat(v, "b")?, get_rat(v, "e")?, get_rat(v, "f")?, get_rat(v, "c0")?);
            let g1 = get_uni(v, "g1")?;
            let ae = if e < Rat::from_integer(0.into()) { -e.clone() } else { e.clone() };
            let k = |n: i64| Rat::from_integer(n.into());
            let s1 = &BiPoly::y().scale(&(k(4) * &b)) + &uni_in(&g1, &BiPoly::x()).scale(&k(2));
            let s2 = &BiPoly::x().scale(&(k(2) * &e)) + &BiPoly::constant(ff);
            let num = &s1.pow(2).scale(&ae) + &s2.pow(2);
            let rebuilt = &num.scale(&(Rat::from_integer(1.into()) / (k(16) * &b * &ae))) + &BiPoly::constant(c0);
            if rebuilt != apply_unimodular(f, &a) {
                return Err("landau reduction mismatch".into());
            }
        }
        "mapped" => {
            let a = get_map(v)?;
            if get_poly(v, "poly")? != apply_unimodular(f, &a) {
                return Err("mapped polynomial mismatch".into());
            }
        }
        other => return Err(format!("unknown completion kind {other}")),
    }
    Ok(())
}
