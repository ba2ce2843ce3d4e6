//! Property tests for exact arithmetic, unimodular maps, the value oracle and the closed loop.

use proptest::prelude::*;
use quartrep::classifier::analyze;
use quartrep::exact::bipoly::BiPoly;
use quartrep::exact::parse::parse_poly;
use quartrep::exact::rat::{Int, Rat};
use quartrep::exact::unimodular::{apply_unimodular, UnimodularMap};
use quartrep::oracle::values::{enumerate_values, enumerate_values_naive};
use quartrep::oracle::verify::verify_report;

/// Integer polynomial of total degree at most `deg` with small coefficients and no constant term.
fn arb_poly(deg: u32, coeff: i64) -> impl Strategy<Value = BiPoly> {
    let monos: Vec<(u32, u32)> = (0..=deg).flat_map(|t| (0..=t).map(move |j| (t - j, j))).filter(|m| *m != (0, 0)).collect();
    let n = monos.len();
    prop::collection::vec(-coeff..=coeff, n).prop_map(move |cs| {
        let terms: Vec<(u32, u32, i64)> = monos.iter().zip(cs).map(|(&(i, j), c)| (i, j, c)).collect();
        BiPoly::from_int_terms(&terms)
    })
}

fn arb_unimodular() -> impl Strategy<Value = UnimodularMap> {
    prop::collection::vec((any::<bool>(), -3i64..=3), 1..4).prop_map(|steps| {
        steps.into_iter().fold(UnimodularMap::identity(), |m, (upper, k)| {
            let e = if upper { UnimodularMap::from_i64(1, k, 0, 1) } else { UnimodularMap::from_i64(1, 0, k, 1) };
            m.compose(&e.unwrap())
        })
    })
}

fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parallel_enumeration_matches_naive(f in arb_poly(4, 3), b in 1u64..=200, n in 1u64..=2_000) {
        prop_assume!(!f.is_zero());
        let t = enumerate_values(&f, b, n).unwrap();
        prop_assert_eq!(t.values, enumerate_values_naive(&f, b, n));
    }

    #[test]
    fn unimodular_maps_preserve_values(f in arb_poly(4, 5), m in arb_unimodular(), x in -20i64..=20, y in -20i64..=20) {
        let g = apply_unimodular(&f, &m);
        let (x, y) = (Int::from(x), Int::from(y));
        let ax = &m.a * &x + &m.b * &y;
        let ay = &m.c * &x + &m.d * &y;
        prop_assert_eq!(g.eval_int(&ax, &ay), f.eval_int(&x, &y));
        prop_assert_eq!(apply_unimodular(&g, &m.inverse()), f);
    }

    #[test]
    fn ring_laws(f in arb_poly(3, 9), g in arb_poly(3, 9), h in arb_poly(2, 9), x in -50i64..=50, y in -50i64..=50) {
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!((&f * &g).eval_i64(x, y), f.eval_i64(x, y) * g.eval_i64(x, y));
        prop_assert_eq!(&(&f - &g) + &g, f.clone());
        if !g.is_zero() {
            prop_assert_eq!((&f * &g).div_exact(&g), Some(f.clone()));
        }
    }

    #[test]
    fn display_round_trips(f in arb_poly(4, 20)) {
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn substitution_matches_evaluation(f in arb_poly(4, 5), x in -9i64..=9, y in -9i64..=9) {
        let px = &BiPoly::x() + &BiPoly::constant(rat(x));
        let py = &BiPoly::y() + &BiPoly::constant(rat(y));
        prop_assert_eq!(f.substitute(&px, &py).eval_i64(0, 0), f.eval_i64(x, y));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_reports_verify(f in arb_poly(4, 2)) {
        prop_assume!(f.total_degree() >= 1);
        let r = analyze(&f).unwrap();
        prop_assert_eq!(verify_report(&r.to_json()), Ok(()));
    }

    #[test]
    fn tags_invariant_under_maps(f in arb_poly(4, 2), m in arb_unimodular()) {
        prop_assume!(f.total_degree() >= 1);
        let a = analyze(&f).unwrap();
        let b = analyze(&apply_unimodular(&f, &m)).unwrap();
        prop_assert_eq!(a.verdict.tag(), b.verdict.tag());
    }
}
