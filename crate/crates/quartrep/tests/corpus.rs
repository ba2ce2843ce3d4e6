//! Every corpus item reaches its leaf and its report survives a JSON round trip through the verifier.

mod common;

use common::{poly, CORPUS};
use quartrep::classifier::analyze;
use quartrep::oracle::verify::verify_report;

#[test]
fn corpus_leaves() {
    for (text, leaf, tag) in CORPUS {
        let r = analyze(&poly(text)).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert_eq!((r.leaf(), r.verdict.tag()), (*leaf, *tag), "{text}");
    }
}

#[test]
fn corpus_reports_verify_after_reparse() {
    for (text, _, _) in CORPUS {
        let r = analyze(&poly(text)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json_string()).unwrap();
        assert_eq!(verify_report(&v), Ok(()), "{text}");
    }
}

#[test]
fn constants_and_scaling_do_not_change_the_verdict() {
    for (text, leaf, _) in CORPUS {
        let shifted = poly(&format!("3*({text}) - 7/2"));
        let r = analyze(&shifted).unwrap();
        assert_eq!(r.leaf(), *leaf, "{text}");
        assert_eq!(verify_report(&r.to_json()), Ok(()), "{text}");
    }
}
