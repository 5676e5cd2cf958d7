use std::path::Path;

use heron_rhombus::exact::Rational;
use heron_rhombus::family::{construct, FamilyError, FamilyParameter};
use heron_rhombus::isosceles::sextic_scan;
use heron_rhombus::oracle::{cross_validate, search_pairs, SearchOptions};
use heron_rhombus::record::{verify_record, PairRecord};
use heron_rhombus::shapes::ShapeError;
use heron_rhombus::{minimal_integral_scale, run_with_threads, scale_pair};
use serde::Serialize;
use serde_json::Value;

use crate::output::{emit, json_line, read_input, render_pairs, PairLine, Witness};
use crate::{Command, Failure, Format};

pub fn run(command: Command, threads: Option<usize>) -> Result<(), Failure> {
    match command {
        Command::Generate {
            u,
            max_height,
            integral,
            scale,
            format,
        } => {
            let scaling = match scale {
                Some(factor) if !factor.is_positive() => {
                    return Err(Failure::usage(format!("--scale {factor} must be positive")))
                }
                Some(factor) => Scaling::Factor(factor),
                None if integral => Scaling::MinimalIntegral,
                None => Scaling::None,
            };
            generate(u, max_height, scaling, &format)
        }
        Command::Verify { file } => verify(&file),
        Command::Search {
            max_perimeter,
            filter,
            rational_side,
            format,
        } => {
            let options = SearchOptions {
                filter: filter.into(),
                rational_side,
            };
            search(max_perimeter, options, threads, &format)
        }
        Command::SexticScan { height, output } => scan(height, threads, output.as_deref()),
        Command::CrossValidate {
            u,
            max_perimeter,
            output,
        } => cross(u, max_perimeter, threads, output.as_deref()),
    }
}

fn parameters_up_to(height: u64) -> Vec<Rational> {
    let mut values: Vec<Rational> = (1..=height)
        .flat_map(|m| (1..=height).map(move |n| (m, n)))
        .filter(|&(m, n)| num_integer::gcd(m, n) == 1)
        .filter_map(|(m, n)| Rational::new(m, n).ok())
        .collect();
    values.sort();
    values
}

fn skip_reason(e: &FamilyError) -> String {
    match e {
        FamilyError::OutOfRange(_) => "u² ≤ 1/3".to_string(),
        FamilyError::NonPositiveParameter => "u ≤ 0".to_string(),
        other => other.to_string(),
    }
}

enum Scaling {
    None,
    MinimalIntegral,
    Factor(Rational),
}

fn generate(
    explicit: Vec<Rational>,
    max_height: Option<u64>,
    scaling: Scaling,
    format: &Format,
) -> Result<(), Failure> {
    let mut candidates = explicit;
    if let Some(h) = max_height {
        candidates.extend(
            parameters_up_to(h)
                .into_iter()
                .filter(|u| u.square() * Rational::from(3) > Rational::one()),
        );
    }
    let mut lines = Vec::new();
    for u in candidates {
        let param = match FamilyParameter::new(u.clone()) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("skipped u={u}: {}", skip_reason(&e));
                continue;
            }
        };
        let w = construct(&param)
            .map_err(|e| Failure::invariant(format!("construction failed at u={u}: {e}")))?;
        let scale_failed =
            |e: ShapeError| Failure::invariant(format!("scaling failed at u={u}: {e}"));
        let (pair, lambda) = match &scaling {
            Scaling::None => (w.pair, None),
            Scaling::MinimalIntegral => {
                let scaled = minimal_integral_scale(&w.pair).map_err(scale_failed)?;
                (scaled.pair, Some(scaled.factor))
            }
            Scaling::Factor(f) => (
                scale_pair(&w.pair, f).map_err(scale_failed)?,
                Some(f.clone()),
            ),
        };
        let record = PairRecord::from_pair(&pair).with_heron_claim(&pair);
        let witness = Witness {
            t1: w.point.t,
            s1: w.point.s,
            v: w.v,
            lambda,
        };
        lines.push(PairLine::new(
            "family",
            Some(u),
            record,
            Some(witness),
            format.decimal,
        ));
    }
    if lines.is_empty() {
        return Err(Failure::usage("no valid u supplied"));
    }
    emit(
        &render_pairs(&lines, format.csv, format.decimal)?,
        format.output.as_deref(),
    )
}

#[derive(Serialize)]
struct SearchSummary {
    kind: &'static str,
    max_perimeter: u64,
    filter: &'static str,
    rational_side: bool,
    triangles_tested: u64,
    pairs_found: usize,
    elapsed_ms: u128,
}

fn search(
    bound: u64,
    options: SearchOptions,
    threads: Option<usize>,
    format: &Format,
) -> Result<(), Failure> {
    let report = run_with_threads(threads, || search_pairs(bound, options))
        .map_err(|e| Failure::usage(format!("thread pool: {e}")))?
        .map_err(|e| Failure::invariant(e.to_string()))?;
    let lines: Vec<PairLine> = report
        .pairs_found
        .iter()
        .map(|pair| {
            let record = PairRecord::from_pair(pair).with_heron_claim(pair);
            PairLine::new("search", None, record, None, format.decimal)
        })
        .collect();
    let summary = SearchSummary {
        kind: "summary",
        max_perimeter: bound,
        filter: options.filter.as_str(),
        rational_side: options.rational_side,
        triangles_tested: report.triangles_tested,
        pairs_found: report.pairs_found.len(),
        elapsed_ms: report.elapsed.as_millis(),
    };
    let mut out = render_pairs(&lines, format.csv, format.decimal)?;
    if format.csv {
        eprint!("{}", json_line(&summary)?);
    } else {
        out.push_str(&json_line(&summary)?);
    }
    emit(&out, format.output.as_deref())
}

#[derive(Serialize)]
struct PointLine {
    kind: &'static str,
    #[serde(rename = "U")]
    u: Rational,
    #[serde(rename = "W")]
    w: Rational,
}

#[derive(Serialize)]
struct ScanSummary {
    kind: &'static str,
    height: u64,
    candidates_tested: u64,
    points_found: usize,
    elapsed_ms: u128,
}

fn scan(height: u64, threads: Option<usize>, output: Option<&Path>) -> Result<(), Failure> {
    let result = run_with_threads(threads, || sextic_scan(height))
        .map_err(|e| Failure::usage(format!("thread pool: {e}")))?
        .map_err(|e| Failure::usage(e.to_string()))?;
    let mut out = String::new();
    for p in &result.points {
        out.push_str(&json_line(&PointLine {
            kind: "point",
            u: p.x().clone(),
            w: p.y().clone(),
        })?);
    }
    out.push_str(&json_line(&ScanSummary {
        kind: "scan",
        height,
        candidates_tested: result.candidates_tested,
        points_found: result.points.len(),
        elapsed_ms: result.elapsed.as_millis(),
    })?);
    emit(&out, output)
}

#[derive(Serialize)]
struct ConfirmedEntry {
    u: Rational,
    #[serde(flatten)]
    record: PairRecord,
}

#[derive(Serialize)]
struct SkippedEntry {
    u: Rational,
    perimeter: Rational,
}

#[derive(Serialize)]
struct CrossReport {
    kind: &'static str,
    max_perimeter: u64,
    passed: bool,
    confirmed: Vec<ConfirmedEntry>,
    skipped: Vec<SkippedEntry>,
    missed: Vec<ConfirmedEntry>,
    oracle_only: Vec<PairRecord>,
}

fn cross(
    us: Vec<Rational>,
    bound: u64,
    threads: Option<usize>,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let params = us
        .into_iter()
        .map(|u| {
            FamilyParameter::new(u.clone())
                .map_err(|e| Failure::usage(format!("u={u}: {}", skip_reason(&e))))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cv = run_with_threads(threads, || cross_validate(&params, bound))
        .map_err(|e| Failure::usage(format!("thread pool: {e}")))?
        .map_err(|e| Failure::invariant(e.to_string()))?;
    let entry = |(u, pair): &(Rational, heron_rhombus::Pair)| ConfirmedEntry {
        u: u.clone(),
        record: PairRecord::from_pair(pair).with_heron_claim(pair),
    };
    let report = CrossReport {
        kind: "cross_validation",
        max_perimeter: bound,
        passed: cv.passed(),
        confirmed: cv.confirmed.iter().map(entry).collect(),
        skipped: cv
            .skipped
            .iter()
            .map(|(u, p)| SkippedEntry {
                u: u.clone(),
                perimeter: p.clone(),
            })
            .collect(),
        missed: cv.missed.iter().map(entry).collect(),
        oracle_only: cv
            .oracle_only
            .iter()
            .map(|p| PairRecord::from_pair(p).with_heron_claim(p))
            .collect(),
    };
    emit(&json_line(&report)?, output)?;
    if cv.passed() {
        Ok(())
    } else {
        Err(Failure::invariant(format!(
            "{} family witness(es) missed by the search",
            cv.missed.len()
        )))
    }
}

fn parse_records(text: &str) -> Result<Vec<PairRecord>, Failure> {
    let first = text.trim_start().chars().next();
    match first {
        None => Ok(Vec::new()),
        Some('{') => parse_json_lines(text),
        Some(_) => parse_csv(text),
    }
}

fn parse_json_lines(text: &str) -> Result<Vec<PairRecord>, Failure> {
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(line)
            .map_err(|e| Failure::usage(format!("line {}: {e}", i + 1)))?;
        match value.get("kind").and_then(Value::as_str) {
            None | Some("pair") => {}
            Some(_) => continue,
        }
        let record: PairRecord = serde_json::from_value(value)
            .map_err(|e| Failure::usage(format!("line {}: {e}", i + 1)))?;
        records.push(record);
    }
    Ok(records)
}

fn parse_csv(text: &str) -> Result<Vec<PairRecord>, Failure> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Failure::usage(format!("csv header: {e}")))?
        .clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Failure::usage(format!("csv is missing column {name:?}")))
    };
    let names = [
        "a",
        "b",
        "c",
        "rhombus_side",
        "angle_param",
        "sin_theta",
        "cos_theta",
        "perimeter",
        "area",
    ];
    let idx = names
        .iter()
        .map(|n| column(n))
        .collect::<Result<Vec<_>, _>>()?;
    let heron_idx = headers.iter().position(|h| h == "heron");
    let mut records = Vec::new();
    for (row_no, row) in reader.records().enumerate() {
        let row = row.map_err(|e| Failure::usage(format!("csv row {}: {e}", row_no + 1)))?;
        let field = |k: usize| -> Result<Rational, Failure> {
            let raw = row.get(idx[k]).unwrap_or("");
            raw.parse().map_err(|e| {
                Failure::usage(format!("csv row {} column {}: {e}", row_no + 1, names[k]))
            })
        };
        let heron = match heron_idx.and_then(|i| row.get(i)) {
            None | Some("") => None,
            Some("true") => Some(true),
            Some("false") => Some(false),
            Some(other) => {
                return Err(Failure::usage(format!(
                    "csv row {}: heron {other:?}",
                    row_no + 1
                )))
            }
        };
        records.push(PairRecord {
            triangle: [field(0)?, field(1)?, field(2)?],
            rhombus_side: field(3)?,
            angle_param: field(4)?,
            sin_theta: field(5)?,
            cos_theta: field(6)?,
            perimeter: field(7)?,
            area: field(8)?,
            heron,
        });
    }
    Ok(records)
}

#[derive(Serialize)]
struct VerifySummary {
    kind: &'static str,
    records: usize,
    failures: usize,
}

fn verify(path: &Path) -> Result<(), Failure> {
    let text = read_input(path)?;
    let records = parse_records(&text)?;
    if records.is_empty() {
        eprintln!("warning: no records to verify in {}", path.display());
    }
    let mut failures = 0;
    for (i, record) in records.iter().enumerate() {
        if let Err(v) = verify_record(record) {
            failures += 1;
            eprintln!("record {}: {v}", i + 1);
        }
    }
    emit(
        &json_line(&VerifySummary {
            kind: "verify",
            records: records.len(),
            failures,
        })?,
        None,
    )?;
    if failures == 0 {
        Ok(())
    } else {
        Err(Failure::invariant(format!(
            "{failures} of {} record(s) failed verification",
            records.len()
        )))
    }
}
