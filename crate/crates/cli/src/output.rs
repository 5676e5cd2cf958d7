use std::fs;
use std::io::{self, Write};
use std::path::Path;

use heron_rhombus::record::PairRecord;
use heron_rhombus::Rational;
use serde::Serialize;

use crate::Failure;

/// Intermediate values of one family construction.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub t1: Rational,
    pub s1: Rational,
    pub v: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Rational>,
}

/// Float views of a record. Display only.
#[derive(Debug, Clone, Serialize)]
pub struct DecimalApprox {
    pub sin_theta: f64,
    pub theta_degrees: f64,
    pub perimeter: f64,
    pub area: f64,
}

impl DecimalApprox {
    fn of(record: &PairRecord) -> Self {
        let sin = record.sin_theta.to_f64_lossy();
        DecimalApprox {
            sin_theta: sin,
            theta_degrees: sin.asin().to_degrees(),
            perimeter: record.perimeter.to_f64_lossy(),
            area: record.area.to_f64_lossy(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairLine {
    pub kind: &'static str,
    pub source: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<Rational>,
    #[serde(flatten)]
    pub record: PairRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decimal_approx: Option<DecimalApprox>,
}

impl PairLine {
    pub fn new(
        source: &'static str,
        u: Option<Rational>,
        record: PairRecord,
        witness: Option<Witness>,
        decimal: bool,
    ) -> Self {
        let decimal_approx = decimal.then(|| DecimalApprox::of(&record));
        PairLine {
            kind: "pair",
            source,
            u,
            record,
            witness,
            decimal_approx,
        }
    }
}

pub const CSV_HEADER: [&str; 16] = [
    "source",
    "u",
    "a",
    "b",
    "c",
    "rhombus_side",
    "angle_param",
    "sin_theta",
    "cos_theta",
    "perimeter",
    "area",
    "heron",
    "t1",
    "s1",
    "v",
    "lambda",
];

const CSV_DECIMAL_HEADER: [&str; 4] = [
    "sin_theta_approx",
    "theta_degrees_approx",
    "perimeter_approx",
    "area_approx",
];

fn opt<T: ToString>(value: &Option<T>) -> String {
    value.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn csv_row(line: &PairLine) -> Vec<String> {
    let r = &line.record;
    let w = line.witness.as_ref();
    let mut row = vec![
        line.source.to_string(),
        opt(&line.u),
        r.triangle[0].to_string(),
        r.triangle[1].to_string(),
        r.triangle[2].to_string(),
        r.rhombus_side.to_string(),
        r.angle_param.to_string(),
        r.sin_theta.to_string(),
        r.cos_theta.to_string(),
        r.perimeter.to_string(),
        r.area.to_string(),
        opt(&r.heron),
        opt(&w.map(|w| w.t1.clone())),
        opt(&w.map(|w| w.s1.clone())),
        opt(&w.map(|w| w.v.clone())),
        opt(&w.and_then(|w| w.lambda.clone())),
    ];
    if let Some(d) = &line.decimal_approx {
        row.extend([d.sin_theta, d.theta_degrees, d.perimeter, d.area].map(|x| x.to_string()));
    }
    row
}

/// Renders pair lines as NDJSON or CSV.
pub fn render_pairs(lines: &[PairLine], csv: bool, decimal: bool) -> Result<String, Failure> {
    if !csv {
        let mut out = String::new();
        for line in lines {
            out.push_str(&json_line(line)?);
        }
        return Ok(out);
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = CSV_HEADER.to_vec();
    if decimal {
        header.extend(CSV_DECIMAL_HEADER);
    }
    writer.write_record(&header).map_err(internal)?;
    for line in lines {
        writer.write_record(csv_row(line)).map_err(internal)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Failure::invariant(e.to_string()))?;
    String::from_utf8(bytes).map_err(internal)
}

pub fn json_line<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string(value).map_err(internal)?;
    s.push('\n');
    Ok(s)
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::invariant(format!("output encoding failed: {e}"))
}

/// Writes the finished output in one go; a file target is replaced atomically.
pub fn emit(content: &str, target: Option<&Path>) -> Result<(), Failure> {
    match target {
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::invariant(format!("writing standard output: {e}")))
        }
        Some(path) => {
            let dir = path
                .parent()
                .filter(|p| !p.as_os_str().is_empty())
                .unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir)
                .map_err(|e| Failure::usage(format!("cannot write into {}: {e}", dir.display())))?;
            tmp.write_all(content.as_bytes())
                .map_err(|e| Failure::invariant(format!("writing {}: {e}", path.display())))?;
            tmp.persist(path)
                .map_err(|e| Failure::invariant(format!("writing {}: {e}", path.display())))?;
            Ok(())
        }
    }
}

/// Reads a whole file, `-` meaning standard input.
pub fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::Read::read_to_string(&mut io::stdin(), &mut s)
            .map_err(|e| Failure::usage(format!("reading standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("reading {}: {e}", path.display())))
}
