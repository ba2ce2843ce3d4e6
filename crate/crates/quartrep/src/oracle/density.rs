//! Count tables over several ranges and a log-scale fit against the candidate density shapes.

use serde_json::{json, Value};

use crate::exact::bipoly::BiPoly;

use super::values::{count_table, enumerate_values, rigorous_box};
use super::OracleError;

/// Candidate shapes `count ≈ C·shape(N)`.
pub const CANDIDATES: &[&str] = &["Sqrt", "PowerOneOverD", "LandauLogHalf", "PowerOneMinusLambda(1/8)", "PowerOneMinusLambda(1/4)", "Linear"];

/// Residuals closer than this count as a tie.
const TIE: f64 = 1e-9;

fn shape(name: &str, n: f64) -> f64 {
    match name {
        "Sqrt" => n.sqrt(),
        "PowerOneOverD" => n.powf(0.25),
        "LandauLogHalf" => n / n.ln().sqrt(),
        "PowerOneMinusLambda(1/8)" => n.powf(0.875),
        "PowerOneMinusLambda(1/4)" => n.powf(0.75),
        "Linear" => n,
        _ => unreachable!("unknown shape {name}"),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityRow {
    pub n: u64,
    pub count: u64,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityFit {
    pub box_bound: u64,
    pub rows: Vec<DensityRow>,
    pub class: String,
    /// Root-mean-square deviation of `log count − log shape` from its mean, per candidate.
    pub residuals: Vec<(String, f64)>,
    pub tie: bool,
}

impl DensityFit {
    pub fn to_json(&self) -> Value {
        json!({
            "box": self.box_bound,
            "rows": self.rows.iter().map(|r| json!({"N": r.n, "count": r.count, "exhaustive": r.exhaustive})).collect::<Vec<_>>(),
            "class": self.class,
            "tie": self.tie,
            "residuals": self.residuals.iter().map(|(c, r)| json!({"class": c, "residual": format!("{r:.6e}")})).collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("N,count,exhaustive\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{}\n", r.n, r.count, r.exhaustive));
        }
        s
    }

    /// `count·√ln N / N` per row.
    pub fn landau_ratios(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.count as f64 * (r.n as f64).ln().sqrt() / r.n as f64).collect()
    }
}

/// Least-squares class among the candidates; ties go to `predicted`, then to candidate order.
pub fn fit_class(rows: &[(u64, u64)], predicted: Option<&str>) -> (String, Vec<(String, f64)>, bool) {
    let pts: Vec<(f64, f64)> = rows.iter().filter(|(n, c)| *n > 1 && *c > 0).map(|(n, c)| (*n as f64, *c as f64)).collect();
    let residuals: Vec<(String, f64)> = CANDIDATES
        .iter()
        .map(|name| {
            let d: Vec<f64> = pts.iter().map(|(n, c)| c.ln() - shape(name, *n).ln()).collect();
            if d.is_empty() {
                return (name.to_string(), 0.0);
            }
            let mean = d.iter().sum::<f64>() / d.len() as f64;
            let var = d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / d.len() as f64;
            (name.to_string(), var.sqrt())
        })
        .collect();
    let best = residuals.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let winners: Vec<&String> = residuals.iter().filter(|r| r.1 <= best + TIE).map(|r| &r.0).collect();
    let tie = winners.len() > 1;
    let class = predicted
        .and_then(|p| winners.iter().find(|w| w.as_str() == p || w.starts_with(p)))
        .copied()
        .unwrap_or(winners[0])
        .clone();
    (class, residuals, tie)
}

/// Counts `#{values in [1, N]}` for each `N` and the fitted class.
pub fn density_table(f: &BiPoly, ns: &[u64], predicted: Option<&str>) -> Result<DensityFit, OracleError> {
    if ns.is_empty() {
        return Err(OracleError::Invalid("empty range list".into()));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(OracleError::Invalid("ranges must be strictly increasing".into()));
    }
    let table = count_table(f, ns)?;
    let nmax = *ns.last().unwrap();
    let rows: Vec<DensityRow> = table
        .rows
        .iter()
        .map(|&(n, count)| DensityRow { n, count, exhaustive: rigorous_box(f, n).is_some_and(|b| b <= table.box_bound) })
        .collect();
    debug_assert!(rows.last().is_none_or(|r| r.n == nmax));
    let (class, residuals, tie) = fit_class(&table.rows, predicted);
    Ok(DensityFit { box_bound: table.box_bound, rows, class, residuals, tie })
}

/// Counts from a fixed box, for reproducing a recorded table.
pub fn counts_in_box(f: &BiPoly, b: u64, ns: &[u64]) -> Result<Vec<(u64, u64)>, OracleError> {
    let nmax = *ns.iter().max().ok_or_else(|| OracleError::Invalid("empty range list".into()))?;
    let t = enumerate_values(f, b, nmax)?;
    Ok(ns.iter().map(|&n| (n, t.count_between(1, n as i64))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly;

    #[test]
    fn landau_class_for_sums_of_two_squares() {
        let f = parse_poly("x^2 + y^2").unwrap();
        let fit = density_table(&f, &[1_000, 10_000], None).unwrap();
        assert_eq!(fit.class, "LandauLogHalf");
        assert!(fit.rows.iter().all(|r| r.exhaustive));
        assert_eq!(fit.rows[1].count, 2749);
        assert!(fit.to_csv().starts_with("N,count,exhaustive\n1000,"));
    }

    #[test]
    fn single_row_ties_go_to_the_prediction() {
        let f = parse_poly("x^4 + y^4").unwrap();
        let fit = density_table(&f, &[10_000], Some("Sqrt")).unwrap();
        assert!(fit.tie);
        assert_eq!(fit.class, "Sqrt");
        assert!(fit.rows[0].count as f64 <= 3.0 * 100.0);
    }

    #[test]
    fn rejects_bad_lists() {
        let f = parse_poly("x^2 + y^2").unwrap();
        assert!(density_table(&f, &[], None).is_err());
        assert!(density_table(&f, &[100, 10], None).is_err());
    }
}
