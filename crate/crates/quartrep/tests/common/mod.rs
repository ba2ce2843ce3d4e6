//! Routing corpus shared by the integration tests.

#![allow(dead_code)]

use quartrep::exact::bipoly::BiPoly;
use quartrep::exact::parse::parse_poly;

/// `(polynomial, expected leaf, expected verdict tag)`; leaves were fixed by routing each item by hand.
pub const CORPUS: &[(&str, &str, &str)] = &[
    ("x^4 - y^4 + x", "negative_leading", "UnboundedBelow"),
    ("x^4 + y^4 + x", "definite_leading", "SparseValues"),
    ("(x^2 - 2*y^2)^2 + y^3", "free_zero", "UnboundedBelow"),
    ("x^2*y^2 + x^3 + x^2 + y", "common_zero_line", "UnboundedBelow"),
    ("x^2*(x^2 + y^2) + x^3 + y^2", "cubic_dominates", "SparseValues"),
    ("x^4 + x*y^2 + y^2", "quartic_dominates", "UnboundedBelow"),
    ("x^2*(x^2 + y^2) + x*y^2 + y^2", "linear_square_sector", "SparseValues"),
    ("x^4 + x^2*y + y^2", "linear_fourth_sector", "SparseValues"),
    ("(x^2 + y)^2 + x^2", "linear_fourth_landau", "SparseValues"),
    ("x^4 + x^2*y - y^2", "negative_quadratic", "UnboundedBelow"),
    ("(x^2 - 2*y^2)^2 + x", "quadratic_linear_drift", "UnboundedBelow"),
    ("(x^2 - 2*y^2)^2 + x^2", "quadratic_sector", "SparseValues"),
    ("(x^2 - 2*y^2)^2 + (x^2 - 2*y^2)", "quadratic_single", "Composition"),
    ("x*y*(x*y + 1)", "linear_pair_gap", "ReducibleGap"),
    ("x*(x^3 + 2*y^3 + 1)", "negative_leading", "UnboundedBelow"),
    ("x^2*y^2", "homogeneous_empirical", "SparseValues"),
    ("x^4 + x^2*y^2 + x", "linear_factor_gap", "ReducibleGap"),
];

pub fn poly(s: &str) -> BiPoly {
    parse_poly(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}
