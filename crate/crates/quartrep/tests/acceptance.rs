//! Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.

mod common;

use common::{poly, CORPUS};
use quartrep::classifier::curves::{cubic_curve_analysis, CurveClass};
use quartrep::classifier::report::Certificate;
use quartrep::classifier::{analyze, analyze_with_target};
use quartrep::exact::bipoly::BiPoly;
use quartrep::exact::rat::{Int, Rat};
use quartrep::exact::unimodular::{apply_unimodular, UnimodularMap};
use quartrep::forms::direction::Direction;
use quartrep::oracle::hilbert::reducible_specialization_count;
use quartrep::oracle::sector::{loglog_slope, sector_count};
use quartrep::oracle::values::{count_table, missing_value_search};
use quartrep::oracle::verify::verify_report;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const MIN_CORPUS: usize = 14;
const PELL_TARGET: i64 = -1_000_000;
const PELL_MAX_CONVERGENTS: u64 = 40;
const LANDAU_NS: [u64; 3] = [10_000, 100_000, 1_000_000];
const LANDAU_BAND: (f64, f64) = (0.65, 0.95);
/// Counts of sums of two squares in `[1, N]`, tabulated independently.
const LANDAU_FROZEN: [u64; 3] = [2_749, 24_028, 216_341];
const PD_FACTOR: f64 = 3.0;
const SECTOR_TS: [u64; 5] = [1 << 10, 1 << 11, 1 << 12, 1 << 13, 1 << 14];
const SECTOR_TOL: f64 = 0.1;
const HILBERT_B: u64 = 10_000;
const HILBERT_SQUARE_FACTOR: f64 = 2.0;
const HILBERT_GENERIC_FACTOR: f64 = 5.0;
const INVARIANCE_MAPS: usize = 20;
const INVARIANCE_SEED: u64 = 0x5eed_0004;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn criterion_corpus() -> Outcome {
    let mut bad = Vec::new();
    for (text, leaf, tag) in CORPUS {
        match analyze(&poly(text)) {
            Ok(r) => {
                if r.leaf() != *leaf || r.verdict.tag() != *tag {
                    bad.push(format!("{text} -> {} {}", r.leaf(), r.verdict.tag()));
                } else if let Err(e) = verify_report(&r.to_json()) {
                    bad.push(format!("{text}: {e}"));
                }
            }
            Err(e) => bad.push(format!("{text}: {e}")),
        }
    }
    let ok = bad.is_empty() && CORPUS.len() >= MIN_CORPUS;
    outcome(ok, format!("{}/{} items routed and verified {}", CORPUS.len() - bad.len(), CORPUS.len(), bad.join("; ")))
}

fn criterion_pell() -> Outcome {
    let f = poly("(x^2 - 2*y^2)^2 + x");
    let target = Rat::from_integer(Int::from(PELL_TARGET));
    let r = match analyze_with_target(&f, &target) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let Certificate::Unbounded(c) = &r.certificate else {
        return outcome(false, format!("verdict {}", r.verdict.label()));
    };
    let last = &c.points.last().expect("points").2;
    let used = c.recipe["family"]["convergents_used"].as_u64().unwrap_or(u64::MAX);
    let shallow = c.recipe["normalized_values"].as_array().is_some_and(|v| v.iter().any(|p| p[0] == "-239" && p[1] == "169"));
    let at = f.eval_int(&Int::from(-239), &Int::from(169));
    let ok = last < &target && used <= PELL_MAX_CONVERGENTS && shallow && at == Rat::from_integer(Int::from(-238));
    outcome(ok, format!("last value {last}, {used} convergents, F(-239, 169) = {at}, in family: {shallow}"))
}

/// Distinct values of `x² + y²` in `[1, n]`, by a plain double loop.
fn naive_sum_of_squares(n: u64) -> u64 {
    let mut seen = vec![false; n as usize + 1];
    let mut x = 0u64;
    while x * x <= n {
        let mut y = 0u64;
        while x * x + y * y <= n {
            seen[(x * x + y * y) as usize] = true;
            y += 1;
        }
        x += 1;
    }
    seen[1..].iter().filter(|s| **s).count() as u64
}

fn criterion_landau() -> Outcome {
    let f = poly("x^2 + y^2");
    let r = match analyze(&f) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let table = match count_table(&f, &LANDAU_NS) {
        Ok(t) => t,
        Err(e) => return outcome(false, e.to_string()),
    };
    let counts: Vec<u64> = table.rows.iter().map(|r| r.1).collect();
    let naive: Vec<u64> = LANDAU_NS.iter().map(|n| naive_sum_of_squares(*n)).collect();
    let ratios: Vec<f64> = LANDAU_NS.iter().zip(&counts).map(|(n, c)| *c as f64 * (*n as f64).ln().sqrt() / *n as f64).collect();
    let in_band = ratios.iter().all(|q| (LANDAU_BAND.0..=LANDAU_BAND.1).contains(q));
    let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
    let ok = r.verdict.label() == "SparseValues(LandauLogHalf)"
        && table.exhaustive
        && counts == naive
        && counts == LANDAU_FROZEN
        && in_band
        && decreasing;
    outcome(ok, format!("counts {counts:?}, naive {naive:?}, ratios {ratios:.4?}, exhaustive {}", table.exhaustive))
}

fn criterion_pd() -> Outcome {
    let f = poly("x^4 + y^4 + x");
    let table = match count_table(&f, &LANDAU_NS) {
        Ok(t) => t,
        Err(e) => return outcome(false, e.to_string()),
    };
    let bounded = table.rows.iter().all(|(n, c)| (*c as f64) <= PD_FACTOR * (*n as f64).sqrt());
    let mv = match missing_value_search(&f, 1, 0, LANDAU_NS[0]) {
        Ok(m) => m,
        Err(e) => return outcome(false, e.to_string()),
    };
    let ok = table.exhaustive && bounded && mv.rigorous && mv.value.is_some();
    outcome(ok, format!("counts {:?}, exhaustive {}, missing value {:?} rigorous {}", table.rows, table.exhaustive, mv.value, mv.rigorous))
}

fn criterion_sector() -> Outcome {
    let r = match analyze(&poly("x^2*(x^2 + y^2) + x^3 + y^2")) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let Certificate::Sparse(c) = &r.certificate else {
        return outcome(false, format!("verdict {}", r.verdict.label()));
    };
    let entry = &c.details["directions"][0];
    let (Some(xi), Some(rr)) = (Direction::from_json(&entry["direction"]), entry["r"].as_u64()) else {
        return outcome(false, "no sector direction in the certificate");
    };
    let cc: Rat = c.details["sector_constant"].as_str().and_then(quartrep::exact::rat::parse_rat).unwrap_or_default();
    let mut rows = Vec::new();
    for t in SECTOR_TS {
        match sector_count(&xi, rr as u32, &cc, t) {
            Ok(n) => rows.push((t, n)),
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    let slope = loglog_slope(&rows);
    let expected = 2.0 - 1.0 / (2.0 * rr as f64);
    outcome(rr == 1 && (slope - expected).abs() <= SECTOR_TOL, format!("R = {rr}, c = {cc}, counts {rows:?}, slope {slope:.4} vs {expected}"))
}

fn criterion_hilbert() -> Outcome {
    let b = HILBERT_B as f64;
    let square = match reducible_specialization_count(&poly("x^2 - y"), HILBERT_B) {
        Ok(c) => c.count() as f64,
        Err(e) => return outcome(false, e.to_string()),
    };
    let square_ok = square >= b.sqrt() / HILBERT_SQUARE_FACTOR && square <= b.sqrt() * HILBERT_SQUARE_FACTOR;
    let cap = HILBERT_GENERIC_FACTOR * b.sqrt() * b.ln();
    let mut generic = Vec::new();
    for y in ["x^2 - y^2 - 1", "x^3 + x*y + 1", "x^2 - y^3 - 2"] {
        match reducible_specialization_count(&poly(y), HILBERT_B) {
            Ok(c) => generic.push((y, c.count())),
            Err(e) => return outcome(false, format!("{y}: {e}")),
        }
    }
    let generic_ok = generic.iter().all(|(_, n)| (*n as f64) <= cap);
    outcome(square_ok && generic_ok, format!("x^2 - t: {square} vs sqrt(B) = {}; generic {generic:?} vs cap {cap:.0}", b.sqrt()))
}

fn criterion_nodal() -> Outcome {
    let nodal = poly("y^2 - x^3 - x^2");
    let a = cubic_curve_analysis(&nodal);
    let b = cubic_curve_analysis(&poly("y^2 - x^3 + 2"));
    let genus0 = matches!(&a, Ok(CurveClass::Genus0 { param, .. }) if param.residual(&nodal).is_zero());
    let genus1 = matches!(b, Ok(CurveClass::Genus1));
    let name = |c: &Result<CurveClass, String>| c.as_ref().map(|c| c.name().to_string()).unwrap_or_else(|e| e.clone());
    outcome(genus0 && genus1, format!("nodal: {} (zero residual {genus0}), smooth: {}", name(&a), name(&b)))
}

/// Product of random elementary shears, a swap and a sign change.
fn random_unimodular(rng: &mut StdRng) -> UnimodularMap {
    let mut m = UnimodularMap::identity();
    for _ in 0..3 {
        let k = rng.gen_range(-2i64..=2);
        let e = if rng.gen_bool(0.5) { UnimodularMap::from_i64(1, k, 0, 1) } else { UnimodularMap::from_i64(1, 0, k, 1) };
        m = m.compose(&e.expect("shear"));
    }
    if rng.gen_bool(0.5) {
        m = m.compose(&UnimodularMap::from_i64(0, 1, 1, 0).expect("swap"));
    }
    if rng.gen_bool(0.5) {
        m = m.compose(&UnimodularMap::from_i64(-1, 0, 0, 1).expect("reflection"));
    }
    m
}

fn criterion_closed_loop() -> Outcome {
    let mut rng = StdRng::seed_from_u64(INVARIANCE_SEED);
    let mut bad = Vec::new();
    let mut checked = 0;
    for (text, _, tag) in CORPUS {
        let f = poly(text);
        let r1 = analyze(&f);
        let r2 = analyze(&f);
        match (&r1, &r2) {
            (Ok(a), Ok(b)) => {
                if a.to_json_string() != b.to_json_string() {
                    bad.push(format!("{text}: output differs between runs"));
                }
                if let Err(e) = verify_report(&a.to_json()) {
                    bad.push(format!("{text}: {e}"));
                }
            }
            _ => bad.push(format!("{text}: analyze failed")),
        }
        for _ in 0..INVARIANCE_MAPS {
            let m = random_unimodular(&mut rng);
            let g: BiPoly = apply_unimodular(&f, &m);
            checked += 1;
            match analyze(&g) {
                Ok(r) if r.verdict.tag() == *tag => {}
                Ok(r) => bad.push(format!("{text} under {m:?}: {}", r.verdict.tag())),
                Err(e) => bad.push(format!("{text} under {m:?}: {e}")),
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} transformed items, {} problems {}", bad.len(), bad.iter().take(5).cloned().collect::<Vec<_>>().join("; ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("corpus routing", criterion_corpus),
        ("pell witness depth", criterion_pell),
        ("landau class", criterion_landau),
        ("definite sparsity", criterion_pd),
        ("sector law", criterion_sector),
        ("hilbert bound", criterion_hilbert),
        ("nodal cubic", criterion_nodal),
        ("closed loop and invariance", criterion_closed_loop),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("{} {} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
        if !o.pass {
            failed.push(*name);
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
