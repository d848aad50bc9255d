//! Reference tables: class numbers, trace-formula values, newform coefficients.

use serde::Serialize;
use serde_json::{Map, Value};

use super::report::row_of;
use crate::classno::{class_data, is_discriminant};
use crate::error::{Error, Result};
use crate::fieldcore::{is_prime, odd_primes_upto};
use crate::hyper::format_gauss;
use crate::qseries::{b_coeff, Newforms};
use crate::traceform::{trace16, trace32, trace32_new};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    ClassNumbers,
    Traces,
    Newforms,
}

impl std::str::FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "class-numbers" => Ok(TableKind::ClassNumbers),
            "traces" => Ok(TableKind::Traces),
            "newforms" => Ok(TableKind::Newforms),
            other => Err(Error::InvalidArgument(format!("unknown table `{other}` (class-numbers, traces, newforms)"))),
        }
    }
}

pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Map<String, Value>>,
}

/// Every discriminant `D` with `dmin <= D < 0`, descending from -3.
pub fn class_number_table(dmin: i64) -> Result<Table> {
    if dmin > -3 {
        return Err(Error::InvalidArgument(format!("dmin = {dmin} must be at most -3")));
    }
    let rows = (dmin..0)
        .rev()
        .filter(|&d| is_discriminant(d))
        .map(|d| class_data(d).map(|c| row_of(&c)))
        .collect::<Result<_>>()?;
    Ok(Table { columns: &["d", "h", "omega", "hstar", "h_agg", "hstar_agg"], rows })
}

#[derive(Serialize)]
struct TraceRow {
    p: u64,
    trace16: i64,
    trace32: i64,
    trace32_new: i64,
}

pub fn trace_table(pmax: u64) -> Result<Table> {
    let rows = odd_primes_upto(pmax)
        .into_iter()
        .map(|p| Ok(row_of(&TraceRow { p, trace16: trace16(p)?, trace32: trace32(p)?, trace32_new: trace32_new(p)? })))
        .collect::<Result<_>>()?;
    Ok(Table { columns: &["p", "trace16", "trace32", "trace32_new"], rows })
}

/// `n, a(n), c(n), d(n), b(n)`; `b` only at 1 and at primes where it is known.
pub fn newform_table(nmax: usize) -> Result<Table> {
    let nf = Newforms::new(nmax)?;
    let mut rows = Vec::with_capacity(nmax);
    for n in 1..=nmax as u64 {
        let b = if n == 1 {
            Value::from("1")
        } else if n % 2 == 1 && is_prime(n) {
            b_coeff(n).map_or(Value::Null, |z| Value::from(format_gauss(z)))
        } else {
            Value::Null
        };
        let mut m = Map::new();
        m.insert("n".into(), Value::from(n));
        m.insert("a".into(), Value::from(nf.a(n)?));
        m.insert("c".into(), Value::from(nf.c(n)?));
        m.insert("d".into(), Value::from(nf.d(n)?));
        m.insert("b".into(), b);
        rows.push(m);
    }
    Ok(Table { columns: &["n", "a", "c", "d", "b"], rows })
}
