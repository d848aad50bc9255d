//! Traces of `T(p)` on weight-3 cusp forms with character `(-4/.)` at
//! levels 16 and 32 (full space and new subspace), as class-number sums
//! over Frobenius traces `s`.
//!
//! For `p = 1 mod 4` each trace is
//! `const - sum_s s * sum_{f | t} h*((s^2-4p)/f^2) * c(s, f)`, where `s` runs over
//! `0 < |s| < 2 sqrt(p)` with `s = p + 1 mod 16`, `s^2 - 4p = t^2 D` with `D`
//! fundamental, and `c` is looked up by `ord2(t) - ord2(f)` and the class of `D`
//! mod 8. All three traces vanish for `p = 3 mod 4`.

use num_rational::Rational64;
use serde::Serialize;

use crate::classno::{class_number, format_rational, fund_decompose};
use crate::error::{Error, Result};
use crate::fieldcore::{is_prime, ord2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CTableId {
    C1,
    C2,
    C3,
}

/// Column of a c-table: the fundamental discriminant's class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DClass {
    Even,
    OneMod8,
    FiveMod8,
}

impl DClass {
    pub fn of(d: i64) -> Self {
        match d.rem_euclid(8) {
            1 => DClass::OneMod8,
            5 => DClass::FiveMod8,
            _ => DClass::Even,
        }
    }

    fn column(self) -> usize {
        match self {
            DClass::Even => 0,
            DClass::OneMod8 => 1,
            DClass::FiveMod8 => 2,
        }
    }
}

// rows: a-b = 0, 1, 2, >=3; columns: D even, 1 mod 8, 5 mod 8
const C1: [[i64; 3]; 4] = [[0, 2, 0], [0, 6, 0], [6, 8, 4], [6, 6, 6]];
const C2: [[i64; 3]; 4] = [[0, 2, 0], [0, 6, 0], [4, 12, 0], [8, 8, 8]];
const C3: [[i64; 3]; 4] = [[0, -2, 0], [0, -6, 0], [-8, -4, -8], [-4, -4, -4]];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CTable {
    pub which: CTableId,
    pub entries: [[i64; 3]; 4],
}

impl CTable {
    pub const fn new(which: CTableId) -> Self {
        let entries = match which {
            CTableId::C1 => C1,
            CTableId::C2 => C2,
            CTableId::C3 => C3,
        };
        CTable { which, entries }
    }

    /// Entry for `a - b = diff` (every `diff >= 3` shares the last row).
    pub fn lookup(&self, diff: u32, class: DClass) -> i64 {
        self.entries[diff.min(3) as usize][class.column()]
    }

    /// Constant term of the associated trace.
    pub fn constant(&self) -> i64 {
        match self.which {
            CTableId::C1 => -6,
            CTableId::C2 => -8,
            CTableId::C3 => 4,
        }
    }
}

/// One `(s, f)` summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceTerm {
    pub s: i64,
    pub t: i64,
    pub d: i64,
    pub f: i64,
    pub a: u32,
    pub b: u32,
    pub hstar: Rational64,
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::InvalidModulus { p, reason: "trace formulas need an odd prime" });
    }
    Ok(())
}

/// `s` with `0 < |s| < 2 sqrt(p)` and `s = p + 1 mod 16`, ascending.
pub fn admissible_traces(p: u64) -> Vec<i64> {
    let p = p as i64;
    let mut out = Vec::new();
    let mut s = 1i64;
    while s * s < 4 * p {
        s += 1;
    }
    for s in -(s - 1)..s {
        if s != 0 && (s - (p + 1)).rem_euclid(16) == 0 {
            out.push(s);
        }
    }
    out
}

/// Every summand of the trace sums at `p`.
pub fn trace_terms(p: u64) -> Result<Vec<TraceTerm>> {
    check_odd_prime(p)?;
    let mut terms = Vec::new();
    for s in admissible_traces(p) {
        let m = s * s - 4 * p as i64;
        let dec = fund_decompose(m)?;
        let a = ord2(dec.t);
        for f in (1..=dec.t).filter(|f| dec.t % f == 0) {
            let hstar = class_number(m / (f * f))?.hstar;
            terms.push(TraceTerm { s, t: dec.t, d: dec.d, f, a, b: ord2(f), hstar });
        }
    }
    Ok(terms)
}

fn trace_with(p: u64, table: &CTable) -> Result<i64> {
    check_odd_prime(p)?;
    if p % 4 == 3 {
        return Ok(0);
    }
    let mut sum = Rational64::from_integer(0);
    for term in trace_terms(p)? {
        let c = table.lookup(term.a - term.b, DClass::of(term.d));
        sum += term.hstar * Rational64::from_integer(term.s * c);
    }
    let total = Rational64::from_integer(table.constant()) - sum;
    if !total.is_integer() {
        return Err(Error::NonIntegralTrace { p, value: format_rational(total) });
    }
    Ok(total.to_integer())
}

/// Trace on the level-16 space.
pub fn trace16(p: u64) -> Result<i64> {
    trace_with(p, &CTable::new(CTableId::C1))
}

/// Trace on the full level-32 space.
pub fn trace32(p: u64) -> Result<i64> {
    trace_with(p, &CTable::new(CTableId::C2))
}

/// Trace on the level-32 new subspace.
pub fn trace32_new(p: u64) -> Result<i64> {
    trace_with(p, &CTable::new(CTableId::C3))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Prop31Record {
    pub p: u64,
    pub s: i64,
    pub t: i64,
    pub d: i64,
    pub a: u32,
    pub d_odd: bool,
    /// `Some(true/false)` when one of the three implications applies.
    pub consistent: Option<bool>,
}

/// Checks the 2-adic trichotomy for `s = p + 1 mod 8`, `s^2 < 4p`:
/// `p = 1 mod 8, D odd => a > 2`; `p = 5 mod 8, D odd => a = 2`;
/// `p = 5 mod 8, D even => a < 2`.
pub fn prop31_classify(p: u64, s: i64) -> Result<Prop31Record> {
    check_odd_prime(p)?;
    let pi = p as i64;
    if (s - (pi + 1)).rem_euclid(8) != 0 {
        return Err(Error::Precondition(format!("s = {s} is not p + 1 mod 8 for p = {p}")));
    }
    if s * s >= 4 * pi {
        return Err(Error::Precondition(format!("s^2 = {} is not below 4p = {}", s * s, 4 * pi)));
    }
    let dec = fund_decompose(s * s - 4 * pi)?;
    let a = ord2(dec.t);
    let d_odd = dec.d % 2 != 0;
    let consistent = match (p % 8, d_odd) {
        (1, true) => Some(a > 2),
        (5, true) => Some(a == 2),
        (5, false) => Some(a < 2),
        _ => None,
    };
    Ok(Prop31Record { p, s, t: dec.t, d: dec.d, a, d_odd, consistent })
}

/// All `s` admissible for [`prop31_classify`] at `p`.
pub fn prop31_traces(p: u64) -> Vec<i64> {
    let pi = p as i64;
    let mut bound = 0i64;
    while bound * bound < 4 * pi {
        bound += 1;
    }
    (-(bound - 1)..bound).filter(|s| (s - (pi + 1)).rem_euclid(8) == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldcore::odd_primes_upto;

    #[test]
    fn tables_are_exact() {
        assert_eq!(CTable::new(CTableId::C1).entries, [[0, 2, 0], [0, 6, 0], [6, 8, 4], [6, 6, 6]]);
        assert_eq!(CTable::new(CTableId::C2).entries, [[0, 2, 0], [0, 6, 0], [4, 12, 0], [8, 8, 8]]);
        assert_eq!(CTable::new(CTableId::C3).entries, [[0, -2, 0], [0, -6, 0], [-8, -4, -8], [-4, -4, -4]]);
        for r in 0..4 {
            for c in 0..3 {
                assert_eq!(C3[r][c], C2[r][c] - 2 * C1[r][c]);
            }
        }
        assert_eq!(CTable::new(CTableId::C3).constant(), -8 - 2 * -6);
        assert_eq!(CTable::new(CTableId::C1).lookup(7, DClass::OneMod8), 6);
    }

    #[test]
    fn d_classes() {
        assert_eq!(DClass::of(-3), DClass::FiveMod8);
        assert_eq!(DClass::of(-7), DClass::OneMod8);
        assert_eq!(DClass::of(-4), DClass::Even);
        assert_eq!(DClass::of(-8), DClass::Even);
    }

    #[test]
    fn admissible_s() {
        assert!(admissible_traces(5).is_empty());
        assert_eq!(admissible_traces(13), vec![-2]);
        assert_eq!(admissible_traces(17), vec![2]);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace16(7).unwrap(), 0);
        assert_eq!(trace16(13).unwrap(), 10);
        assert_eq!(trace16(5).unwrap(), -6);
        assert_eq!(trace32(7).unwrap(), 0);
        assert_eq!(trace32(13).unwrap(), -8);
        assert_eq!(trace32(5).unwrap(), -8);
        assert_eq!(trace32_new(13).unwrap(), -28);
        assert_eq!(trace32_new(5).unwrap(), 4);
        assert_eq!(trace32_new(17).unwrap(), 36);
        assert!(trace16(2).is_err());
        assert!(trace16(15).is_err());
    }

    #[test]
    fn p13_single_term() {
        let terms = trace_terms(13).unwrap();
        assert_eq!(terms.len(), 3);
        let first = terms[0];
        assert_eq!((first.s, first.t, first.d, first.f, first.a, first.b), (-2, 4, -3, 1, 2, 0));
        assert_eq!(first.hstar, Rational64::from_integer(2));
    }

    #[test]
    fn new_trace_is_difference() {
        for p in odd_primes_upto(500) {
            assert_eq!(trace32_new(p).unwrap(), trace32(p).unwrap() - 2 * trace16(p).unwrap(), "p={p}");
        }
    }

    #[test]
    fn prop31_examples() {
        let r = prop31_classify(13, -2).unwrap();
        assert_eq!((r.d, r.a, r.d_odd, r.consistent), (-3, 2, true, Some(true)));
        let r = prop31_classify(17, 2).unwrap();
        assert_eq!((r.t, r.d, r.d_odd, r.consistent), (4, -4, false, None));
        assert!(prop31_classify(13, 2).is_err());
        assert!(prop31_classify(13, 14).is_err());
    }

    #[test]
    fn prop31_no_violations() {
        for p in odd_primes_upto(500) {
            for s in prop31_traces(p) {
                let r = prop31_classify(p, s).unwrap();
                assert_ne!(r.consistent, Some(false), "p={p} s={s}");
            }
        }
    }
}
