//! Command-line front end for the CoHa library.
//!
//! Verbs: info, multiply, hn-types, count-sst, count-bf, series, dt,
//! kernel-dims, hilb-dims, check. Exit codes: 0 ok, 1 check failure,
//! 2 usage error, 3 data error.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use coha::acceptance;
use coha::counting::{brute_force_framed_stable_count, brute_force_sst_count, SstCounter};
use coha::dt::{coha_series, dt_extract, efimov_check, graded_dims_series};
use coha::engine::{build_sign_twist, coha_mul, hn_kernel_dims, twisted_mul, CohaElement};
use coha::framed::{hilb_module_dims, FramingDatum};
use coha::poly::{format_poly, parse_poly, SymPoly};
use coha::quiver::{
    dim_label, dimvector_from_json, dimvector_to_json, hn_types, quiver_from_json,
    stability_from_json, DimVector, Quiver, Stability,
};
use coha::rational::format_q;
use coha::series::TSeries;

const USAGE: &str = "usage: coha <verb> [options]

verbs:
  info <quiver.json>                      vertex/arrow/symmetry summary
  multiply   --quiver Q --dim-left D --left P --dim-right D --right P [--twisted]
  hn-types   --quiver Q --theta T --dim D
  count-sst  --quiver Q --theta T --dim D [--prime p]
  count-bf   --quiver Q --theta T --dim D --prime p [--framing N]
  series     --quiver Q -D n -N n [--from-dims]
  dt         --quiver Q -D n -K n [-N n] [--check-efimov]
  kernel-dims --quiver Q --theta T --dim D --maxdeg k
  hilb-dims  --quiver Q --framing N --dim D --maxdeg k
  check      [--seed S]

common options:
  --output plain|json|csv   (csv for dt and series only; default plain)
  --threads n               worker cap, also read from COHA_THREADS
  --seed n                  seed for randomized checks (default fixed)

JSON arguments (--dim, --theta, --framing) accept inline JSON or a file
path; polynomial arguments (--left, --right) accept literal text or
@path.";

enum CliError {
    Usage(String),
    Data(String),
}

impl From<coha::CohaError> for CliError {
    fn from(e: coha::CohaError) -> Self {
        CliError::Data(e.to_string())
    }
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => std::process::exit(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {}", msg);
            eprintln!("{}", USAGE);
            std::process::exit(2);
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {}", msg);
            std::process::exit(3);
        }
    }
}

struct Parsed {
    positional: Vec<String>,
    values: BTreeMap<String, String>,
    switches: BTreeSet<String>,
}

const SWITCHES: &[&str] = &["--check-efimov", "--from-dims", "--twisted"];

fn parse_args(args: &[String]) -> Result<Parsed, CliError> {
    let mut out = Parsed {
        positional: Vec::new(),
        values: BTreeMap::new(),
        switches: BTreeSet::new(),
    };
    let mut it = args.iter().peekable();
    while let Some(arg) = it.next() {
        if SWITCHES.contains(&arg.as_str()) {
            out.switches.insert(arg.clone());
        } else if arg.starts_with('-') && arg.len() > 1 {
            let value = it
                .next()
                .ok_or_else(|| CliError::Usage(format!("missing value for {}", arg)))?;
            out.values.insert(arg.clone(), value.clone());
        } else {
            out.positional.push(arg.clone());
        }
    }
    Ok(out)
}

impl Parsed {
    fn value(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|s| s.as_str())
    }

    fn require(&self, key: &str) -> Result<&str, CliError> {
        self.value(key)
            .ok_or_else(|| CliError::Usage(format!("missing required option {}", key)))
    }

    fn output_mode(&self) -> Result<&str, CliError> {
        let mode = self.value("--output").unwrap_or("plain");
        match mode {
            "plain" | "json" | "csv" => Ok(mode),
            other => Err(CliError::Usage(format!(
                "unknown output mode {:?} (expected plain, json, or csv)",
                other
            ))),
        }
    }

    fn parse_number<T: std::str::FromStr>(&self, key: &str) -> Result<T, CliError> {
        let raw = self.require(key)?;
        raw.parse()
            .map_err(|_| CliError::Usage(format!("option {} expects a number, got {:?}", key, raw)))
    }

    fn parse_number_or<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        match self.value(key) {
            None => Ok(default),
            Some(raw) => raw.parse().map_err(|_| {
                CliError::Usage(format!("option {} expects a number, got {:?}", key, raw))
            }),
        }
    }
}

/// Inline JSON (starts with '{') or the contents of a file.
fn load_source(value: &str) -> Result<String, CliError> {
    if value.trim_start().starts_with('{') {
        Ok(value.to_string())
    } else {
        std::fs::read_to_string(value)
            .map_err(|e| CliError::Data(format!("cannot read {:?}: {}", value, e)))
    }
}

/// Literal polynomial text or the contents of an @-prefixed file.
fn load_poly_source(value: &str) -> Result<String, CliError> {
    match value.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Data(format!("cannot read {:?}: {}", path, e))),
        None => Ok(value.to_string()),
    }
}

fn load_quiver(parsed: &Parsed) -> Result<Quiver, CliError> {
    let source = load_source(parsed.require("--quiver")?)?;
    Ok(quiver_from_json(&source)?)
}

fn load_dim(parsed: &Parsed, key: &str, q: &Quiver) -> Result<DimVector, CliError> {
    let source = load_source(parsed.require(key)?)?;
    Ok(dimvector_from_json(q, &source)?)
}

fn load_theta(parsed: &Parsed, q: &Quiver) -> Result<Stability, CliError> {
    let source = load_source(parsed.require("--theta")?)?;
    Ok(stability_from_json(q, &source)?)
}

fn validate_threads(parsed: &Parsed) -> Result<(), CliError> {
    let raw = match parsed.value("--threads") {
        Some(v) => Some(v.to_string()),
        None => std::env::var("COHA_THREADS").ok(),
    };
    if let Some(raw) = raw {
        let n: usize = raw.parse().map_err(|_| {
            CliError::Usage(format!("--threads expects a positive integer, got {:?}", raw))
        })?;
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
    }
    Ok(())
}

fn run(args: &[String]) -> Result<i32, CliError> {
    if args.is_empty() {
        return Err(CliError::Usage("no verb given".into()));
    }
    let verb = args[0].as_str();
    let parsed = parse_args(&args[1..])?;
    validate_threads(&parsed)?;
    match verb {
        "info" => cmd_info(&parsed),
        "multiply" => cmd_multiply(&parsed),
        "hn-types" => cmd_hn_types(&parsed),
        "count-sst" => cmd_count_sst(&parsed),
        "count-bf" => cmd_count_bf(&parsed),
        "series" => cmd_series(&parsed),
        "dt" => cmd_dt(&parsed),
        "kernel-dims" => cmd_kernel_dims(&parsed),
        "hilb-dims" => cmd_hilb_dims(&parsed),
        "check" => cmd_check(&parsed),
        other => Err(CliError::Usage(format!("unknown verb {:?}", other))),
    }
}

fn cmd_info(parsed: &Parsed) -> Result<i32, CliError> {
    let source = match parsed.value("--quiver") {
        Some(v) => load_source(v)?,
        None => {
            let path = parsed
                .positional
                .first()
                .ok_or_else(|| CliError::Usage("info needs a quiver file".into()))?;
            load_source(path)?
        }
    };
    let q = quiver_from_json(&source)?;
    match parsed.output_mode()? {
        "json" => {
            let value = serde_json::json!({
                "vertices": q.vertex_count(),
                "arrows": q.arrow_count(),
                "symmetric": q.is_symmetric(),
                "names": q.vertex_names(),
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        _ => {
            println!("vertices: {}", q.vertex_count());
            println!("arrows: {}", q.arrow_count());
            println!("symmetric: {}", q.is_symmetric());
        }
    }
    Ok(0)
}

fn cmd_multiply(parsed: &Parsed) -> Result<i32, CliError> {
    let q = load_quiver(parsed)?;
    let d_left = load_dim(parsed, "--dim-left", &q)?;
    let d_right = load_dim(parsed, "--dim-right", &q)?;
    let left_raw = parse_poly(&q, &d_left, &load_poly_source(parsed.require("--left")?)?)?;
    let right_raw = parse_poly(&q, &d_right, &load_poly_source(parsed.require("--right")?)?)?;
    let left = CohaElement::new(q.clone(), d_left, SymPoly::from_raw(&left_raw)?)?;
    let right = CohaElement::new(q.clone(), d_right, SymPoly::from_raw(&right_raw)?)?;
    let product = if parsed.switches.contains("--twisted") {
        let twist = build_sign_twist(&q)?;
        twisted_mul(&left, &right, &twist)?
    } else {
        coha_mul(&left, &right)?
    };
    let text = format_poly(&q, &product.body().to_raw());
    match parsed.output_mode()? {
        "json" => {
            let value = serde_json::json!({
                "dim": dimvector_to_json(&q, product.dim()),
                "poly": text,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        _ => {
            println!("dim: {}", dim_label(&q, product.dim()));
            println!("{}", text);
        }
    }
    Ok(0)
}

fn cmd_hn_types(parsed: &Parsed) -> Result<i32, CliError> {
    let q = load_quiver(parsed)?;
    let theta = load_theta(parsed, &q)?;
    let d = load_dim(parsed, "--dim", &q)?;
    let types = hn_types(&theta, &d)?;
    match parsed.output_mode()? {
        "json" => {
            let value: Vec<Vec<serde_json::Value>> = types
                .iter()
                .map(|t| t.parts.iter().map(|p| dimvector_to_json(&q, p)).collect())
                .collect();
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        _ => {
            for t in &types {
                let row: Vec<String> = t.parts.iter().map(|p| dim_label(&q, p)).collect();
                println!("{}", row.join(" | "));
            }
        }
    }
    Ok(0)
}

fn cmd_count_sst(parsed: &Parsed) -> Result<i32, CliError> {
    let q = load_quiver(parsed)?;
    let theta = load_theta(parsed, &q)?;
    let d = load_dim(parsed, "--dim", &q)?;
    let mut counter = SstCounter::new(q.clone(), theta)?;
    let value = counter.sst_coeff(&d)?;
    let at_prime = match parsed.value("--prime") {
        None => None,
        Some(raw) => {
            let p: i64 = raw.parse().map_err(|_| {
                CliError::Usage(format!("--prime expects an integer, got {:?}", raw))
            })?;
            let count = counter.sst_point_count(&d)?;
            if !count.is_even_in_s() {
                return Err(CliError::Data(
                    "point count is not even in s; cannot substitute q".into(),
                ));
            }
            Some((p, count.eval_at_q(&coha::rational::q_int(p))?))
        }
    };
    match parsed.output_mode()? {
        "json" => {
            let mut value_map = serde_json::Map::new();
            value_map.insert("d".into(), dimvector_to_json(&q, &d));
            value_map.insert("value".into(), serde_json::json!(value.to_string()));
            if let Some((p, count)) = &at_prime {
                value_map.insert("prime".into(), serde_json::json!(p));
                value_map.insert("count".into(), serde_json::json!(format_q(count)));
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::Value::Object(value_map)).unwrap()
            );
        }
        _ => {
            print!("{}\t{}", dim_label(&q, &d), value);
            if let Some((p, count)) = &at_prime {
                print!("\t#R^sst(F_{}) = {}", p, format_q(count));
            }
            println!();
        }
    }
    Ok(0)
}

fn cmd_count_bf(parsed: &Parsed) -> Result<i32, CliError> {
    let q = load_quiver(parsed)?;
    let d = load_dim(parsed, "--dim", &q)?;
    let p: u8 = parsed.parse_number("--prime")?;
    let (label, count) = match parsed.value("--framing") {
        Some(_) => {
            let framing = load_dim(parsed, "--framing", &q)?;
            (
                "framed-stable",
                brute_force_framed_stable_count(&q, &framing, &d, p)?,
            )
        }
        None => {
            let theta = load_theta(parsed, &q)?;
            ("semi-stable", brute_force_sst_count(&q, &theta, &d, p)?)
        }
    };
    match parsed.output_mode()? {
        "json" => {
            let value = serde_json::json!({
                "d": dimvector_to_json(&q, &d),
                "prime": p,
                "kind": label,
                "count": count,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        _ => println!("{}\t{}\t{}", dim_label(&q, &d), label, count),
    }
    Ok(0)
}

fn series_rows(q: &Quiver, series: &TSeries<coha::series::LaurentTrunc>) -> Vec<(String, i64, String)> {
    let mut rows = Vec::new();
    for (d, coeff) in series.coeffs() {
        for (&k, c) in coeff.coeffs() {
            rows.push((dim_label(q, d), k, format_q(c)));
        }
    }
    rows
}

fn cmd_series(parsed: &Parsed) -> Result<i32, CliError> {
    let q = load_quiver(parsed)?;
    let d_bound: u32 = parsed.parse_number("-D")?;
    let n_order: i64 = parsed.parse_number("-N")?;
    let series = if parsed.switches.contains("--from-dims") {
        graded_dims_series(&q, d_bound, n_order)?
    } else {
        coha_series(&q, d_bound, n_order)?
    };
    let rows = series_rows(&q, &series);
    match parsed.output_mode()? {
        "json" => {
            let value: Vec<serde_json::Value> = rows
                .iter()
                .map(|(d, k, c)| serde_json::json!({"d": d, "s": k, "value": c}))
                .collect();
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        "csv" => {
            println!("d,s,value");
            for (d, k, c) in rows {
                println!("\"{}\",{},{}", d, k, c);
            }
        }
        _ => {
            for (d, k, c) in rows {
                println!("{}\t{}\t{}", d, k, c);
            }
        }
    }
    Ok(0)
}

fn cmd_dt(parsed: &Parsed) -> Result<i32, CliError> {
    let q = load_quiver(parsed)?;
    let d_bound: u32 = parsed.parse_number("-D")?;
    let k_bound: i64 = parsed.parse_number("-K")?;
    // default truncation with head room for the geometric expansions
    let n_order: i64 = parsed.parse_number_or("-N", k_bound + 8 * d_bound as i64)?;
    let series = coha_series(&q, d_bound, n_order)?;
    let table = dt_extract(&series, d_bound, k_bound)?;
    let mut rows: Vec<(String, i64, String)> = Vec::new();
    for ((d, k), c) in table.entries() {
        rows.push((dim_label(&q, d), *k, format_q(c)));
    }
    let efimov = if parsed.switches.contains("--check-efimov") {
        Some(efimov_check(&table))
    } else {
        None
    };
    match parsed.output_mode()? {
        "json" => {
            let mut value = serde_json::Map::new();
            value.insert(
                "entries".into(),
                serde_json::Value::Array(
                    rows.iter()
                        .map(|(d, k, c)| serde_json::json!({"d": d, "k": k, "value": c}))
                        .collect(),
                ),
            );
            if let Some(report) = &efimov {
                value.insert("efimov_pass".into(), serde_json::json!(report.is_empty()));
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::Value::Object(value)).unwrap()
            );
        }
        "csv" => {
            println!("d,k,value");
            for (d, k, c) in &rows {
                println!("\"{}\",{},{}", d, k, c);
            }
            if let Some(report) = &efimov {
                // keep the CSV stream clean
                eprintln!(
                    "efimov: {}",
                    if report.is_empty() { "pass" } else { "FAIL" }
                );
            }
        }
        _ => {
            for (d, k, c) in &rows {
                println!("{}\t{}\t{}", d, k, c);
            }
            if let Some(report) = &efimov {
                if report.is_empty() {
                    println!("efimov: pass");
                } else {
                    for v in report {
                        println!(
                            "efimov: FAIL at d={:?} k={} value={} ({})",
                            v.d.entries(),
                            v.k,
                            format_q(&v.value),
                            v.reason
                        );
                    }
                }
            }
        }
    }
    if let Some(report) = efimov {
        if !report.is_empty() {
            return Ok(1);
        }
    }
    Ok(0)
}

fn cmd_kernel_dims(parsed: &Parsed) -> Result<i32, CliError> {
    let q = load_quiver(parsed)?;
    let theta = load_theta(parsed, &q)?;
    let d = load_dim(parsed, "--dim", &q)?;
    let maxdeg: usize = parsed.parse_number("--maxdeg")?;
    let dims = hn_kernel_dims(&q, &theta, &d, maxdeg)?;
    print_dim_table(parsed, dims.into_iter().collect())
}

fn cmd_hilb_dims(parsed: &Parsed) -> Result<i32, CliError> {
    let q = load_quiver(parsed)?;
    let framing = FramingDatum(load_dim(parsed, "--framing", &q)?);
    let d = load_dim(parsed, "--dim", &q)?;
    let maxdeg: usize = parsed.parse_number("--maxdeg")?;
    let dims = hilb_module_dims(&q, &framing, &d, maxdeg)?;
    print_dim_table(parsed, dims.iter().collect())
}

fn print_dim_table(parsed: &Parsed, rows: Vec<(usize, usize)>) -> Result<i32, CliError> {
    let total: usize = rows.iter().map(|&(_, dim)| dim).sum();
    match parsed.output_mode()? {
        "json" => {
            let value = serde_json::json!({
                "dims": rows
                    .iter()
                    .map(|&(k, dim)| serde_json::json!({"degree": k, "dim": dim}))
                    .collect::<Vec<_>>(),
                "total": total,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        _ => {
            let mut out = String::new();
            for (k, dim) in &rows {
                writeln!(out, "{}\t{}", k, dim).unwrap();
            }
            write!(out, "total\t{}", total).unwrap();
            println!("{}", out);
        }
    }
    Ok(0)
}

fn cmd_check(parsed: &Parsed) -> Result<i32, CliError> {
    let seed: u64 = parsed.parse_number_or("--seed", acceptance::DEFAULT_SEED)?;
    let mut failures = 0usize;
    for (id, name, outcome) in acceptance::run_all(seed) {
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS - {}", id, name),
            Err(msg) => {
                println!("criterion {:>2} FAIL - {}: {}", id, name, msg);
                failures += 1;
            }
        }
    }
    if failures > 0 {
        println!("{} criterion(s) failed", failures);
        Ok(1)
    } else {
        println!("all criteria passed");
        Ok(0)
    }
}
