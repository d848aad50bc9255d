//! Suite records and their json / csv / text renderings.

use std::fmt;
use std::io::Write;
use std::time::Duration;

use num_rational::Rational64;
use serde::{Serialize, Serializer};
use serde_json::{Map, Value};

use super::config::OutputFormat;
use crate::classno::format_rational;
use crate::error::{Error, Result};
use crate::hyper::{format_gauss, GaussInt, HyperValue};

/// An exact value on one side of a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Int(i64),
    Gauss(GaussInt),
    Rational(Rational64),
    Missing,
}

impl Quantity {
    pub fn gauss(z: GaussInt) -> Self {
        if z.im == 0 {
            Quantity::Int(z.re)
        } else {
            Quantity::Gauss(z)
        }
    }

    pub fn rational(r: Rational64) -> Self {
        if r.is_integer() {
            Quantity::Int(r.to_integer())
        } else {
            Quantity::Rational(r)
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Int(n) => write!(f, "{n}"),
            Quantity::Gauss(z) => f.write_str(&format_gauss(*z)),
            Quantity::Rational(r) => f.write_str(&format_rational(*r)),
            Quantity::Missing => Ok(()),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Quantity::Int(n) => s.serialize_i64(*n),
            Quantity::Missing => s.serialize_none(),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unavailable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub suite: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub residual: f64,
    pub pass: bool,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Record {
    fn new(suite: &'static str, p: Option<u64>, lhs: Quantity, rhs: Quantity, residual: f64, pass: bool) -> Self {
        let status = if pass { Status::Pass } else { Status::Fail };
        Record { suite, p, case: None, lhs, rhs, residual, pass, status, detail: None }
    }

    /// Exact comparison.
    pub fn exact(suite: &'static str, p: Option<u64>, lhs: Quantity, rhs: Quantity) -> Self {
        Record::new(suite, p, lhs, rhs, 0.0, lhs == rhs)
    }

    /// A character sum against an exact value.
    pub fn hyper(suite: &'static str, p: Option<u64>, lhs: &HyperValue, rhs: Quantity, tol: f64) -> Self {
        let lq = Quantity::gauss(lhs.rounded);
        Record::new(suite, p, lq, rhs, lhs.residual, lq == rhs && lhs.residual < tol)
    }

    /// Rounded values plus an explicit residual.
    pub fn approx(suite: &'static str, p: Option<u64>, lhs: Quantity, rhs: Quantity, residual: f64, tol: f64) -> Self {
        Record::new(suite, p, lhs, rhs, residual, lhs == rhs && residual < tol)
    }

    pub fn unavailable(suite: &'static str, p: Option<u64>, lhs: Quantity, rhs: Quantity, why: String) -> Self {
        Record {
            suite,
            p,
            case: None,
            lhs,
            rhs,
            residual: 0.0,
            pass: false,
            status: Status::Unavailable,
            detail: Some(why),
        }
    }

    pub fn error(suite: &'static str, p: Option<u64>, err: &Error) -> Self {
        let mut r = Record::new(suite, p, Quantity::Missing, Quantity::Missing, 0.0, false);
        r.detail = Some(err.to_string());
        r
    }

    pub fn case(mut self, case: impl Into<String>) -> Self {
        self.case = Some(case.into());
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub unavailable: usize,
    pub max_residual: f64,
    pub pass: bool,
    /// Left out of json so reports stay byte-identical across runs.
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn new(suite: &'static str, records: Vec<Record>, wall_time: Duration) -> Self {
        let unavailable = records.iter().filter(|r| r.status == Status::Unavailable).count();
        let passed = records.iter().filter(|r| r.status == Status::Pass).count();
        let failed = records.iter().filter(|r| r.status == Status::Fail).count();
        let max_residual =
            records.iter().filter(|r| r.status != Status::Unavailable).map(|r| r.residual).fold(0.0, f64::max);
        let summary = Summary {
            checked: passed + failed,
            passed,
            failed,
            unavailable,
            max_residual,
            pass: failed == 0,
            wall_time,
        };
        SuiteReport { suite, records, summary }
    }

    pub fn passed(&self) -> bool {
        self.summary.pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }
}

pub const RECORD_COLUMNS: &[&str] = &["suite", "p", "case", "lhs", "rhs", "residual", "pass", "status", "detail"];

fn to_row<T: Serialize>(value: &T) -> Map<String, Value> {
    match serde_json::to_value(value) {
        Ok(Value::Object(m)) => m,
        _ => unreachable!("rows serialize to objects"),
    }
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

fn write_text_row<W: Write>(out: &mut W, row: &Map<String, Value>) -> Result<()> {
    let parts: Vec<String> =
        row.iter().filter(|(_, v)| !v.is_null()).map(|(k, v)| format!("{k}={}", cell(Some(v)))).collect();
    writeln!(out, "{}", parts.join(" "))?;
    Ok(())
}

/// Writes rows as json lines, csv with the given header, or `key=value` text.
pub fn write_rows<W: Write>(
    out: &mut W,
    format: OutputFormat,
    columns: &[&str],
    rows: &[Map<String, Value>],
) -> Result<()> {
    match format {
        OutputFormat::Json => {
            for row in rows {
                serde_json::to_writer(&mut *out, row).map_err(|e| Error::Io(e.to_string()))?;
                writeln!(out)?;
            }
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(columns)?;
            for row in rows {
                w.write_record(columns.iter().map(|c| cell(row.get(*c))))?;
            }
            w.flush()?;
        }
        OutputFormat::Text => {
            for row in rows {
                write_text_row(out, row)?;
            }
        }
    }
    Ok(())
}

/// Renders several reports; csv shares one header across suites.
pub fn write_reports<W: Write>(out: &mut W, format: OutputFormat, reports: &[SuiteReport]) -> Result<()> {
    match format {
        OutputFormat::Json => {
            for rep in reports {
                let rows: Vec<_> = rep.records.iter().map(to_row).collect();
                write_rows(out, format, RECORD_COLUMNS, &rows)?;
                let mut m = Map::new();
                m.insert("suite".into(), Value::from(rep.suite));
                m.insert("summary".into(), Value::Object(to_row(&rep.summary)));
                serde_json::to_writer(&mut *out, &m).map_err(|e| Error::Io(e.to_string()))?;
                writeln!(out)?;
            }
        }
        OutputFormat::Csv => {
            let mut rows = Vec::new();
            for rep in reports {
                rows.extend(rep.records.iter().map(to_row));
                rows.push(summary_row(rep));
            }
            write_rows(out, format, RECORD_COLUMNS, &rows)?;
        }
        OutputFormat::Text => {
            for rep in reports {
                for r in &rep.records {
                    write_text_row(out, &to_row(r))?;
                }
                let s = &rep.summary;
                writeln!(
                    out,
                    "== {}: {} ({}/{} passed, {} unavailable, max residual {:.3e}, {:.2?})",
                    rep.suite,
                    if s.pass { "PASS" } else { "FAIL" },
                    s.passed,
                    s.checked,
                    s.unavailable,
                    s.max_residual,
                    s.wall_time
                )?;
            }
        }
    }
    Ok(())
}

fn summary_row(rep: &SuiteReport) -> Map<String, Value> {
    let s = &rep.summary;
    let mut m = Map::new();
    m.insert("suite".into(), Value::from(rep.suite));
    m.insert("case".into(), Value::from("summary"));
    m.insert("lhs".into(), Value::from(s.passed));
    m.insert("rhs".into(), Value::from(s.checked));
    m.insert("residual".into(), Value::from(s.max_residual));
    m.insert("pass".into(), Value::from(s.pass));
    m.insert("status".into(), Value::from(if s.pass { "pass" } else { "fail" }));
    m.insert("detail".into(), Value::from(format!("{} unavailable", s.unavailable)));
    m
}

/// Row view of any serializable struct, for table output.
pub fn row_of<T: Serialize>(value: &T) -> Map<String, Value> {
    to_row(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn quantity_normalization() {
        assert_eq!(Quantity::gauss(GaussInt::new(3, 0)), Quantity::Int(3));
        assert_eq!(Quantity::rational(Rational64::new(4, 2)), Quantity::Int(2));
        assert_eq!(serde_json::to_string(&Quantity::Gauss(GaussInt::new(0, 4))).unwrap(), "\"4i\"");
        assert_eq!(serde_json::to_string(&Quantity::Rational(Rational64::new(3, 2))).unwrap(), "\"3/2\"");
    }

    #[test]
    fn pass_needs_equality_and_small_residual() {
        let v = HyperValue::from_raw(Complex64::new(-84.0 + 1e-9, 0.0));
        assert!(Record::hyper("t", Some(13), &v, Quantity::Int(-84), 1e-6).pass);
        assert!(!Record::hyper("t", Some(13), &v, Quantity::Int(84), 1e-6).pass);
        let loose = HyperValue::from_raw(Complex64::new(-84.01, 0.0));
        assert!(!Record::hyper("t", Some(13), &loose, Quantity::Int(-84), 1e-6).pass);
    }

    #[test]
    fn summary_counts() {
        let recs = vec![
            Record::exact("t", Some(3), Quantity::Int(1), Quantity::Int(1)),
            Record::exact("t", Some(5), Quantity::Int(1), Quantity::Int(2)),
            Record::unavailable("t", Some(19), Quantity::Missing, Quantity::Int(0), "no b".into()),
        ];
        let rep = SuiteReport::new("t", recs, Duration::ZERO);
        assert_eq!((rep.summary.checked, rep.summary.passed, rep.summary.unavailable), (2, 1, 1));
        assert!(!rep.passed());
    }

    #[test]
    fn renderings() {
        let rep = SuiteReport::new(
            "t",
            vec![Record::exact("t", Some(3), Quantity::Int(-1), Quantity::Int(-1)).case("a,b")],
            Duration::from_millis(5),
        );
        let mut buf = Vec::new();
        write_reports(&mut buf, OutputFormat::Json, std::slice::from_ref(&rep)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("{\"suite\":\"t\",\"p\":3,\"case\":\"a,b\",\"lhs\":-1"));
        assert!(!text.contains("wall"));

        let mut buf = Vec::new();
        write_reports(&mut buf, OutputFormat::Csv, std::slice::from_ref(&rep)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("suite,p,case,lhs,rhs,residual,pass,status,detail\nt,3,\"a,b\",-1,-1,0.0,true,pass,"));

        let mut buf = Vec::new();
        write_reports(&mut buf, OutputFormat::Text, std::slice::from_ref(&rep)).unwrap();
        assert!(String::from_utf8(buf).unwrap().contains("== t: PASS (1/1 passed"));
    }
}
