//! Exact value sets over boxes, with a rigorous box bound for positive definite top forms.

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::classifier::report::CountTable;
use crate::exact::bipoly::BiPoly;
use crate::exact::rat::{ceil_rat, iroot, Int, Rat};
use crate::exact::unipoly::UniPoly;
use crate::forms::binary::BinaryForm;
use crate::forms::definite::{definiteness, DefTag};

use super::OracleError;

/// Largest number of lattice pairs one enumeration may visit.
pub const PAIR_LIMIT: u128 = 100_000_000;
/// Rows per parallel band.
const BAND: i64 = 64;
/// Largest box used when no rigorous bound is available.
pub const HEURISTIC_BOX: u64 = 3_000;

/// Integer coefficients `rows[j][i]` of `x^i y^j`.
#[derive(Clone, Debug)]
pub struct Compiled {
    rows: Vec<Vec<i128>>,
}

impl Compiled {
    /// Compiles an integral polynomial, checking that values over the box fit comfortably in `i128`.
    pub fn new(f: &BiPoly, b: u64) -> Result<Self, OracleError> {
        if !f.is_integral() {
            return Err(OracleError::NotIntegral);
        }
        let mut bound = Int::zero();
        let bb = Int::from(b.max(1));
        let mut rows = vec![vec![0i128; f.deg_x() as usize + 1]; f.deg_y() as usize + 1];
        for ((i, j), c) in f.terms() {
            let ci = c.to_integer();
            bound += ci.abs() * num_traits::pow(bb.clone(), (i + j) as usize);
            rows[*j as usize][*i as usize] = ci.to_i128().ok_or(OracleError::Overflow)?;
        }
        if bound.bits() > 120 {
            return Err(OracleError::Overflow);
        }
        Ok(Compiled { rows })
    }

    /// Coefficients in `y` at a fixed `x`.
    pub fn row(&self, x: i64) -> Vec<i128> {
        let x = x as i128;
        self.rows.iter().map(|r| r.iter().rev().fold(0i128, |acc, c| acc * x + c)).collect()
    }

    pub fn eval_row(row: &[i128], y: i64) -> i128 {
        let y = y as i128;
        row.iter().rev().fold(0i128, |acc, c| acc * y + c)
    }

    pub fn eval(&self, x: i64, y: i64) -> i128 {
        Self::eval_row(&self.row(x), y)
    }
}

/// Distinct values of `F` over `max(|x|, |y|) ≤ B` lying in `[−N, N]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueTable {
    pub box_bound: u64,
    pub range: u64,
    pub values: Vec<i64>,
    /// Whether the box provably holds every representation of every value in range.
    pub exhaustive: bool,
}

impl ValueTable {
    /// Number of attained values in `[lo, hi]`.
    pub fn count_between(&self, lo: i64, hi: i64) -> u64 {
        let a = self.values.partition_point(|v| *v < lo);
        let b = self.values.partition_point(|v| *v <= hi);
        b.saturating_sub(a) as u64
    }

    pub fn contains(&self, v: i64) -> bool {
        self.values.binary_search(&v).is_ok()
    }

    pub fn to_json(&self) -> Value {
        let shown = self.values.len() <= 10_000;
        json!({
            "box": self.box_bound,
            "range": self.range,
            "exhaustive": self.exhaustive,
            "distinct": self.values.len(),
            "positive": self.count_between(1, self.range as i64),
            "values": if shown { json!(self.values) } else { Value::Null },
            "truncated": !shown,
        })
    }
}

fn pair_count(b: u64) -> u128 {
    let side = 2 * b as u128 + 1;
    side * side
}

/// Exact distinct values in `[−N, N]` over the box, enumerated in parallel row bands.
pub fn enumerate_values(f: &BiPoly, b: u64, n: u64) -> Result<ValueTable, OracleError> {
    if b == 0 || n == 0 {
        return Err(OracleError::Invalid("box bound and range must be positive".into()));
    }
    if pair_count(b) > PAIR_LIMIT {
        return Err(OracleError::TooManyPairs(b));
    }
    let comp = Compiled::new(f, b)?;
    let bi = b as i64;
    let lim = n as i128;
    let bands: Vec<i64> = (-bi..=bi).step_by(BAND as usize).collect();
    let parts: Vec<Vec<i64>> = bands
        .par_iter()
        .map(|&x0| {
            let mut out = Vec::new();
            for x in x0..(x0 + BAND).min(bi + 1) {
                let row = comp.row(x);
                for y in -bi..=bi {
                    let v = Compiled::eval_row(&row, y);
                    if -lim <= v && v <= lim {
                        out.push(v as i64);
                    }
                }
            }
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect();
    let mut values: Vec<i64> = parts.into_iter().flatten().collect();
    values.sort_unstable();
    values.dedup();
    let exhaustive = rigorous_box(f, n).is_some_and(|rb| rb <= b);
    Ok(ValueTable { box_bound: b, range: n, values, exhaustive })
}

/// Plain double loop, for cross-checks.
pub fn enumerate_values_naive(f: &BiPoly, b: u64, n: u64) -> Vec<i64> {
    let bi = b as i64;
    let mut set = std::collections::BTreeSet::new();
    for x in -bi..=bi {
        for y in -bi..=bi {
            let v = f.eval_i64(x, y);
            if v.abs() <= Rat::from_integer(Int::from(n)) {
                set.insert(v.to_integer().to_i64().expect("in range"));
            }
        }
    }
    set.into_iter().collect()
}

/// Rigorous positive lower bound of `g` on `[−1, 1]`, by subdivision with a Lipschitz bound.
fn interval_lower_bound(g: &UniPoly) -> Option<Rat> {
    let lip: Rat = g.coeffs().iter().enumerate().map(|(k, c)| c.abs() * Rat::from_integer(Int::from(k))).sum();
    let mut m = 16i64;
    while m <= 1 << 14 {
        let h = Rat::new(Int::from(2), Int::from(m));
        let slack = &lip * &h / Rat::from_integer(Int::from(2));
        let mut lo: Option<Rat> = None;
        for k in 0..m {
            let mid = Rat::from_integer(Int::from(-1)) + &h * Rat::from_integer(Int::from(k)) + &h / Rat::from_integer(Int::from(2));
            let v = g.eval(&mid) - &slack;
            if lo.as_ref().is_none_or(|l| v < *l) {
                lo = Some(v);
            }
        }
        let lo = lo.expect("nonempty");
        // stop once the slack costs at most 1/32 of the bound
        if lo.is_positive() && &slack * Rat::from_integer(Int::from(32)) <= lo {
            return Some(lo);
        }
        if m == 1 << 14 && lo.is_positive() {
            return Some(lo);
        }
        m *= 2;
    }
    None
}

/// Rigorous lower bound `c` of the top form on the max-norm unit square boundary.
pub fn top_form_floor(f: &BiPoly) -> Option<Rat> {
    let d = f.total_degree();
    if d == 0 || d % 2 == 1 {
        return None;
    }
    let top = BinaryForm::from_bipoly(f, d);
    if definiteness(&top).tag != DefTag::PositiveDefinite {
        return None;
    }
    // by F(−x, −y) = F(x, y) the edges x = 1 and y = 1 suffice
    let e1 = top.dehomogenize();
    let e2 = UniPoly::new(top.coeffs().iter().rev().cloned().collect());
    let c1 = interval_lower_bound(&e1)?;
    let c2 = interval_lower_bound(&e2)?;
    Some(if c1 < c2 { c1 } else { c2 })
}

/// Box `B` with `F > N` whenever `max(|x|, |y|) > B`, for a positive definite top form.
pub fn rigorous_box(f: &BiPoly, n: u64) -> Option<u64> {
    let d = f.total_degree();
    let c = top_form_floor(f)?;
    let s: Rat = f.terms().iter().filter(|((i, j), _)| i + j < d).map(|(_, v)| v.abs()).sum();
    let two = Rat::from_integer(Int::from(2));
    let b1 = ceil_rat(&(&two * &s / &c));
    let k = ceil_rat(&(&two * Rat::from_integer(Int::from(n)) / &c));
    let mut b2 = iroot(&k, d);
    if num_traits::pow(b2.clone(), d as usize) < k {
        b2 += Int::one();
    }
    let b = if b1 > b2 { b1 } else { b2 };
    b.max(Int::one()).to_u64()
}

/// Count table of positive values `≤ N`, exhaustive when a rigorous box fits the memory guard.
pub fn count_table(f: &BiPoly, ns: &[u64]) -> Result<CountTable, OracleError> {
    let nmax = *ns.iter().max().ok_or_else(|| OracleError::Invalid("empty range list".into()))?;
    let b = match rigorous_box(f, nmax) {
        Some(b) if pair_count(b) <= PAIR_LIMIT => b,
        _ => (iroot(&Int::from(nmax), 2).to_u64().unwrap_or(1)).clamp(8, HEURISTIC_BOX),
    };
    let table = enumerate_values(f, b, nmax)?;
    count_table_from(&table, ns)
}

/// Rows `(N, #values in [1, N])` read from one table.
pub fn count_table_from(table: &ValueTable, ns: &[u64]) -> Result<CountTable, OracleError> {
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    if ns.last().is_some_and(|n| *n > table.range) {
        return Err(OracleError::Invalid("range exceeds the table".into()));
    }
    let rows = ns.iter().map(|&n| (n, table.count_between(1, n as i64))).collect();
    Ok(CountTable { box_bound: table.box_bound, rows, exhaustive: table.exhaustive })
}

/// Smallest element of `(Cℤ)_{≥D}` up to the budget that is not attained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MissingValue {
    pub modulus: u64,
    pub lower: i64,
    pub value: Option<i64>,
    pub box_bound: u64,
    pub searched_to: u64,
    pub rigorous: bool,
}

impl MissingValue {
    pub fn to_json(&self) -> Value {
        json!({
            "C": self.modulus,
            "D": self.lower,
            "value": self.value,
            "box": self.box_bound,
            "searched_to": self.searched_to,
            "rigorous": self.rigorous && self.value.is_some(),
            "status": if self.value.is_some() { "missing" } else { "inconclusive" },
        })
    }
}

pub fn missing_value_search(f: &BiPoly, c: u64, d: i64, budget: u64) -> Result<MissingValue, OracleError> {
    if c == 0 {
        return Err(OracleError::Invalid("modulus C must be at least 1".into()));
    }
    let range = budget.max(d.unsigned_abs()).max(1);
    let b = match rigorous_box(f, range) {
        Some(b) if pair_count(b) <= PAIR_LIMIT => b,
        _ => (iroot(&Int::from(range), 2).to_u64().unwrap_or(1)).clamp(8, HEURISTIC_BOX),
    };
    let table = enumerate_values(f, b, range)?;
    let ci = c as i64;
    let mut m = d.div_euclid(ci) * ci;
    if m < d {
        m += ci;
    }
    let mut value = None;
    while m <= budget as i64 {
        if !table.contains(m) {
            value = Some(m);
            break;
        }
        m += ci;
    }
    Ok(MissingValue { modulus: c, lower: d, value, box_bound: b, searched_to: budget, rigorous: table.exhaustive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse::parse_poly;

    #[test]
    fn sums_of_two_squares() {
        let f = parse_poly("x^2 + y^2").unwrap();
        let t = enumerate_values(&f, 50, 100).unwrap();
        assert!(t.exhaustive);
        assert_eq!(t.values, enumerate_values_naive(&f, 50, 100));
        let expect: Vec<i64> = vec![0, 1, 2, 4, 5, 8, 9, 10, 13, 16, 17, 18, 20, 25, 26, 29, 32, 34, 36, 37, 40, 41, 45, 49, 50];
        assert_eq!(&t.values[..25], &expect[..]);
        let mv = missing_value_search(&f, 1, 0, 100).unwrap();
        assert_eq!((mv.value, mv.rigorous), (Some(3), true));
    }

    #[test]
    fn fourth_powers_are_exhaustive() {
        let f = parse_poly("x^4 + y^4").unwrap();
        let t = enumerate_values(&f, 40, 1_000_000).unwrap();
        assert!(t.exhaustive);
        assert!(rigorous_box(&f, 1_000_000).unwrap() <= 40);
        assert_eq!(missing_value_search(&f, 1, 0, 1000).unwrap().value, Some(3));
        let g = parse_poly("(x^2 - 2*y^2)^2 + x").unwrap();
        assert!(!enumerate_values(&g, 30, 1000).unwrap().exhaustive);
        assert!(!missing_value_search(&g, 1, 0, 1000).unwrap().rigorous);
    }

    #[test]
    fn box_bound_is_rigorous() {
        let f = parse_poly("x^4 + y^4 + x").unwrap();
        let b = rigorous_box(&f, 10_000).unwrap() as i64;
        for x in -3 * b..=3 * b {
            for y in -3 * b..=3 * b {
                if x.abs().max(y.abs()) > b {
                    assert!(f.eval_i64(x, y) > Rat::from_integer(Int::from(10_000)));
                }
            }
        }
        assert_eq!(rigorous_box(&parse_poly("x^4 - y^4").unwrap(), 10), None);
        assert_eq!(rigorous_box(&parse_poly("x^2*y^2 + x").unwrap(), 10), None);
    }

    #[test]
    fn guards() {
        let f = parse_poly("x^2 + y^2").unwrap();
        assert_eq!(enumerate_values(&f, 10_000, 10).unwrap_err(), OracleError::TooManyPairs(10_000));
        assert_eq!(enumerate_values(&parse_poly("x/2").unwrap(), 3, 3).unwrap_err(), OracleError::NotIntegral);
        let ct = count_table(&f, &[10, 100]).unwrap();
        assert_eq!(ct.rows, vec![(10, 7), (100, 43)]);
        assert!(count_table(&f, &[]).is_err());
        assert!(missing_value_search(&f, 0, 0, 10).is_err());
    }
}
