//! Command-line front end with stable exit codes.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::classifier::report::{Certificate, DensityClass, Report, Verdict};
use crate::classifier::{analyze_with_target, ClassifyError, DEFAULT_TARGET};
use crate::exact::bipoly::BiPoly;
use crate::exact::parse::parse_poly;
use crate::exact::rat::{parse_rat, rat_to_canon, rat_to_string, Int, Rat};
use crate::oracle::density::density_table;
use crate::oracle::values::{enumerate_values, missing_value_search};
use crate::oracle::verify::verify_report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "quartrep", version, about = "Classify the integer value set of a bivariate polynomial of degree at most 4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Route a polynomial to a verdict and print its certificate summary.
    Analyze {
        poly: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Search for points with F below a target.
    Witness {
        poly: String,
        #[arg(long, default_value_t = DEFAULT_TARGET.to_string(), allow_hyphen_values = true)]
        below: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Enumerate distinct values over a box.
    Oracle {
        poly: String,
        #[arg(long = "box")]
        box_bound: u64,
        #[arg(long)]
        range: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Count values in [1, N] for each N and fit a density class.
    Density {
        poly: String,
        #[arg(long = "N", value_delimiter = ',', num_args = 0..)]
        ns: Vec<u64>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Re-check a JSON report.
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// Failure carrying its exit code.
struct Exit(i32, String);

fn usage(msg: impl Into<String>) -> Exit {
    Exit(EXIT_USAGE, msg.into())
}

fn internal(msg: impl Into<String>) -> Exit {
    Exit(EXIT_INTERNAL, msg.into())
}

fn classify_exit(e: ClassifyError) -> Exit {
    match e {
        ClassifyError::Unsupported(_) => Exit(EXIT_UNSUPPORTED, e.to_string()),
        _ => internal(e.to_string()),
    }
}

fn parse_input(text: &str) -> Result<BiPoly, Exit> {
    let f = parse_poly(text).map_err(|e| usage(format!("parse error: {e}")))?;
    let d = f.total_degree();
    if d == 0 || d > 4 {
        return Err(Exit(EXIT_UNSUPPORTED, ClassifyError::Unsupported(d).to_string()));
    }
    Ok(f)
}

fn write_json(path: &Option<PathBuf>, v: &Value) -> Result<(), Exit> {
    if let Some(p) = path {
        let mut s = serde_json::to_string_pretty(v).expect("serializes");
        s.push('\n');
        std::fs::write(p, s).map_err(|e| internal(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn analyze_input(text: &str, target: &Rat) -> Result<Report, Exit> {
    let f = parse_input(text)?;
    let mut r = analyze_with_target(&f, target).map_err(classify_exit)?;
    r.input_text = Some(text.to_string());
    verify_report(&r.to_json()).map_err(|e| internal(format!("self-verification failed: {e}")))?;
    Ok(r)
}

fn summary(r: &Report) -> String {
    let mut s = format!("verdict: {}\nleaf: {}\npath: ", r.verdict.label(), r.leaf());
    s.push_str(&r.trace.iter().map(|t| t.node).collect::<Vec<_>>().join(" -> "));
    s.push('\n');
    match &r.certificate {
        Certificate::Unbounded(c) => {
            let (x, y, v) = c.points.last().expect("nonempty chain");
            s.push_str(&format!("witness: F({x}, {y}) = {} <= {}\n", rat_to_string(v), rat_to_string(&c.target)));
        }
        Certificate::Sparse(c) => {
            for (n, k) in &c.table.rows {
                s.push_str(&format!("count[1, {n}] = {k}\n"));
            }
            s.push_str(&format!("box: {} (exhaustive: {})\n", c.table.box_bound, c.table.exhaustive));
        }
        Certificate::Composition(c) => {
            s.push_str(&format!("inner: {}\nouter degree: {}\n", c.inner, c.outer.degree()));
        }
        Certificate::ReducibleGap(c) => {
            let fs: Vec<String> = c.factors.iter().map(|f| format!("({f})")).collect();
            s.push_str(&format!("factors: {}\ntheory_backed: {}\n", fs.join(" * "), c.theory_backed));
        }
    }
    s
}

fn run_command(cmd: Command) -> Result<(), Exit> {
    match cmd {
        Command::Analyze { poly, json } => {
            let r = analyze_input(&poly, &Rat::from_integer(Int::from(DEFAULT_TARGET)))?;
            print!("{}", summary(&r));
            write_json(&json, &r.to_json())
        }
        Command::Witness { poly, below, json } => {
            let target = parse_rat(&below).ok_or_else(|| usage(format!("bad target {below}")))?;
            let r = analyze_input(&poly, &target)?;
            let Certificate::Unbounded(c) = &r.certificate else {
                println!("no witness: verdict is {}", r.verdict.label());
                return write_json(&json, &json!({"verdict": r.verdict.to_json(), "witness": Value::Null}));
            };
            debug_assert_eq!(r.verdict, Verdict::UnboundedBelow);
            for (x, y, v) in &c.points {
                println!("F({x}, {y}) = {}", rat_to_string(v));
            }
            if let Some(k) = c.recipe.get("family").and_then(|f| f.get("convergents_used")) {
                println!("convergents used: {k}");
            }
            let cert = r.certificate.to_json();
            write_json(&json, &json!({"verdict": r.verdict.to_json(), "target": rat_to_canon(&target), "witness": cert}))
        }
        Command::Oracle { poly, box_bound, range, json } => {
            let f = parse_input(&poly)?;
            let (g, _) = f.normalize();
            if g != f {
                return Err(usage("oracle expects an integral polynomial with zero constant term"));
            }
            let t = enumerate_values(&f, box_bound, range).map_err(|e| internal(e.to_string()))?;
            let mv = missing_value_search(&f, 1, 0, range).map_err(|e| internal(e.to_string()))?;
            println!("box: {box_bound}\nrange: {range}\nexhaustive: {}", t.exhaustive);
            println!("distinct values in [-{range}, {range}]: {}", t.values.len());
            println!("positive values in [1, {range}]: {}", t.count_between(1, range as i64));
            match mv.value {
                Some(v) => println!("smallest missing value >= 0: {v} (rigorous: {})", mv.rigorous),
                None => println!("no missing value found up to {range}"),
            }
            write_json(&json, &json!({"table": t.to_json(), "missing_value": mv.to_json()}))
        }
        Command::Density { poly, ns, json } => {
            if ns.is_empty() {
                return Err(usage("the N list is empty"));
            }
            let f = parse_input(&poly)?;
            let r = analyze_with_target(&f, &Rat::from_integer(Int::from(DEFAULT_TARGET))).ok();
            let predicted = r.as_ref().and_then(|r| match &r.verdict {
                Verdict::SparseValues(DensityClass::PowerOneMinusLambda(l)) => Some(format!("PowerOneMinusLambda({})", rat_to_canon(l))),
                Verdict::SparseValues(c) => Some(c.name().to_string()),
                _ => None,
            });
            let (g, _) = f.normalize();
            let fit = density_table(&g, &ns, predicted.as_deref()).map_err(|e| match e {
                crate::oracle::OracleError::Invalid(m) => usage(m),
                e => internal(e.to_string()),
            })?;
            print!("{}", fit.to_csv());
            println!("class: {}", fit.class);
            write_json(&json, &fit.to_json())
        }
        Command::Verify { file, json } => {
            let text = std::fs::read_to_string(&file).map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("malformed JSON: {e}")))?;
            let res = verify_report(&v);
            write_json(&json, &json!({"file": file.display().to_string(), "pass": res.is_ok(), "reason": res.as_ref().err().map(|e| e.to_string())}))?;
            match res {
                Ok(()) => {
                    println!("PASS");
                    Ok(())
                }
                Err(e) => Err(internal(format!("FAIL: {e}"))),
            }
        }
    }
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run_command(cli.command) {
        Ok(()) => EXIT_OK,
        Err(Exit(code, msg)) => {
            eprintln!("quartrep: {msg}");
            code
        }
    }
}
