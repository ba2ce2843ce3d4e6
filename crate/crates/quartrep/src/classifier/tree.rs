use serde_json::{json, Value};

pub const ROOT: &str = "input";

/// Internal nodes with their children.
pub const EDGES: &[(&str, &[&str])] = &[
    ("input", &["odd_degree", "quadratic", "quartic_leading"]),
    ("quadratic", &["quadratic_indefinite", "quadratic_square_line", "quadratic_square_single", "quadratic_definite"]),
    ("quartic_leading", &["definite_leading", "negative_leading", "semidefinite"]),
    ("semidefinite", &["composed_quadratic", "free_zero", "common_zero_line", "linked", "common_factor"]),
    (
        "linked",
        &[
            "free_zero",
            "negative_quadratic",
            "vanishing_cubic",
            "cubic_dominates",
            "quartic_dominates",
            "composed_linear_square",
            "composed_linear_fourth",
            "composed_quadratic",
        ],
    ),
    ("composed_linear_square", &["linear_square_line", "linear_square_drift", "linear_square_sector"]),
    (
        "composed_linear_fourth",
        &["linear_fourth_line", "linear_fourth_single", "linear_fourth_drift", "linear_fourth_landau", "linear_fourth_sector"],
    ),
    ("composed_quadratic", &["quadratic_sector", "quadratic_pell", "quadratic_linear_drift", "quadratic_single"]),
    (
        "common_factor",
        &[
            "homogeneous_single",
            "homogeneous_empirical",
            "composed_quadratic",
            "separated_pair",
            "linear_pair_line",
            "linear_pair_gap",
            "linear_factor_line",
            "linear_factor_gap",
        ],
    ),
];

/// Leaves with the verdict tag they carry.
pub const LEAVES: &[(&str, &str)] = &[
    ("odd_degree", "UnboundedBelow"),
    ("quadratic_indefinite", "UnboundedBelow"),
    ("quadratic_square_line", "UnboundedBelow"),
    ("quadratic_square_single", "SparseValues"),
    ("quadratic_definite", "SparseValues"),
    ("definite_leading", "SparseValues"),
    ("negative_leading", "UnboundedBelow"),
    ("free_zero", "UnboundedBelow"),
    ("common_zero_line", "UnboundedBelow"),
    ("negative_quadratic", "UnboundedBelow"),
    ("vanishing_cubic", "SparseValues"),
    ("cubic_dominates", "SparseValues"),
    ("quartic_dominates", "UnboundedBelow"),
    ("linear_square_line", "UnboundedBelow"),
    ("linear_square_drift", "UnboundedBelow"),
    ("linear_square_sector", "SparseValues"),
    ("linear_fourth_line", "UnboundedBelow"),
    ("linear_fourth_single", "Composition"),
    ("linear_fourth_drift", "UnboundedBelow"),
    ("linear_fourth_landau", "SparseValues"),
    ("linear_fourth_sector", "SparseValues"),
    ("quadratic_sector", "SparseValues"),
    ("quadratic_pell", "UnboundedBelow"),
    ("quadratic_linear_drift", "UnboundedBelow"),
    ("quadratic_single", "Composition"),
    ("homogeneous_single", "Composition"),
    ("homogeneous_empirical", "SparseValues"),
    ("linear_pair_line", "UnboundedBelow"),
    ("linear_pair_gap", "ReducibleGap"),
    ("linear_factor_line", "UnboundedBelow"),
    ("linear_factor_gap", "ReducibleGap"),
];

pub fn children(node: &str) -> &'static [&'static str] {
    EDGES.iter().find(|(n, _)| *n == node).map(|(_, c)| *c).unwrap_or(&[])
}

pub fn leaf_tag(node: &str) -> Option<&'static str> {
    LEAVES.iter().find(|(n, _)| *n == node).map(|(_, t)| *t)
}

/// Checks that `path` starts at the root, follows edges and ends at a leaf carrying `verdict_tag`.
pub fn check_path(path: &[&str], verdict_tag: &str) -> Result<(), String> {
    let Some(first) = path.first() else { return Err("empty trace".into()) };
    if *first != ROOT {
        return Err(format!("trace starts at {first}"));
    }
    for w in path.windows(2) {
        if !children(w[0]).contains(&w[1]) {
            return Err(format!("no edge {} -> {}", w[0], w[1]));
        }
    }
    let last = path.last().unwrap();
    match leaf_tag(last) {
        Some(t) if t == verdict_tag => Ok(()),
        Some(t) => Err(format!("leaf {last} carries {t}, verdict is {verdict_tag}")),
        None => Err(format!("trace ends at non-leaf {last}")),
    }
}

/// Machine-readable adjacency of the decision tree.
pub fn tree_json() -> Value {
    json!({
        "root": ROOT,
        "edges": EDGES.iter().map(|(n, c)| json!({"from": n, "to": c})).collect::<Vec<_>>(),
        "leaves": LEAVES.iter().map(|(n, t)| json!({"node": n, "verdict": t})).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn every_node_is_reachable_and_leaves_are_terminal() {
        let mut seen = HashSet::new();
        let mut stack = vec![ROOT];
        while let Some(n) = stack.pop() {
            if seen.insert(n) {
                stack.extend(children(n).iter().copied());
            }
        }
        for (leaf, _) in LEAVES {
            assert!(seen.contains(leaf), "{leaf}");
            assert!(children(leaf).is_empty(), "{leaf}");
        }
        for (n, cs) in EDGES {
            for c in *cs {
                assert!(children(c).len() + usize::from(leaf_tag(c).is_some()) > 0 || *c == "separated_pair", "{n} -> {c}");
            }
        }
    }

    #[test]
    fn path_checks() {
        assert!(check_path(&["input", "odd_degree"], "UnboundedBelow").is_ok());
        assert!(check_path(&["input", "odd_degree"], "Composition").is_err());
        assert!(check_path(&["input", "quadratic"], "SparseValues").is_err());
        assert!(check_path(&["quadratic", "quadratic_definite"], "SparseValues").is_err());
        assert!(check_path(&["input", "quartic_leading", "semidefinite", "linked", "composed_quadratic", "quadratic_sector"], "SparseValues").is_ok());
    }
}
