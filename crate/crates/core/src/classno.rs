//! Class numbers of imaginary quadratic orders.
//!
//! `h(D)` counts primitive reduced forms `(a, b, c)` of discriminant `D`;
//! `omega(D)` is half the number of units; `h*(D) = h(D)/omega(D)`. The
//! aggregates `H(D)` and `H*(D)` sum `h` and `h*` over every order between
//! `O(D)` and the maximal order. All arithmetic here is exact.

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fieldcore::{kronecker, prime_factors};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassNumber {
    pub d: i64,
    pub h: u64,
    pub omega: u64,
    #[serde(serialize_with = "ser_rational")]
    pub hstar: Rational64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassData {
    pub d: i64,
    pub h: u64,
    pub omega: u64,
    #[serde(serialize_with = "ser_rational")]
    pub hstar: Rational64,
    /// `H(D)`
    #[serde(serialize_with = "ser_rational")]
    pub h_agg: Rational64,
    /// `H*(D)`
    #[serde(serialize_with = "ser_rational")]
    pub hstar_agg: Rational64,
}

/// `m = t^2 * d` with `d` fundamental.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FundDecomp {
    pub m: i64,
    pub t: i64,
    pub d: i64,
}

fn ser_rational<S: serde::Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(*r))
}

pub fn format_rational(r: Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_discriminant(d: i64) -> bool {
    d < 0 && matches!(d.rem_euclid(4), 0 | 1)
}

fn require_discriminant(d: i64) -> Result<()> {
    if is_discriminant(d) {
        Ok(())
    } else {
        Err(Error::NotDiscriminant(d))
    }
}

fn is_squarefree(n: i64) -> bool {
    let n = n.unsigned_abs();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d * d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Negative fundamental discriminant test.
pub fn is_fundamental(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d),
        0 => {
            let k = d / 4;
            matches!(k.rem_euclid(4), 2 | 3) && is_squarefree(k)
        }
        _ => false,
    }
}

pub fn omega(d: i64) -> u64 {
    match d {
        -3 => 3,
        -4 => 2,
        _ => 1,
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Primitive reduced forms of discriminant `d`, in lexicographic `(a, b)` order.
pub fn reduced_forms(d: i64) -> Result<Vec<(i64, i64, i64)>> {
    require_discriminant(d)?;
    let mut forms = Vec::new();
    let mut a = 1i64;
    // reduced forms have 3a^2 <= |D|
    while 3 * a * a <= -d {
        for b in -a..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue;
            }
            if gcd(gcd(a, b), c) != 1 {
                continue;
            }
            forms.push((a, b, c));
        }
        a += 1;
    }
    Ok(forms)
}

pub fn class_number(d: i64) -> Result<ClassNumber> {
    let h = reduced_forms(d)?.len() as u64;
    let omega = omega(d);
    Ok(ClassNumber { d, h, omega, hstar: Rational64::new(h as i64, omega as i64) })
}

/// `d = t^2 * D` with `D` fundamental.
pub fn fund_decompose(m: i64) -> Result<FundDecomp> {
    require_discriminant(m)?;
    let mut t = 1i64;
    let mut best = None;
    while t * t <= -m {
        if m % (t * t) == 0 && is_fundamental(m / (t * t)) {
            best = Some(FundDecomp { m, t, d: m / (t * t) });
        }
        t += 1;
    }
    best.ok_or(Error::NotDiscriminant(m))
}

fn divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|k| n % k == 0).collect()
}

/// `(H(D), H*(D))` by enumerating every intermediate order.
pub fn aggregate_h(d: i64) -> Result<(Rational64, Rational64)> {
    let FundDecomp { t, d: dfund, .. } = fund_decompose(d)?;
    let mut h_agg = Rational64::from_integer(0);
    let mut hstar_agg = Rational64::from_integer(0);
    for f in divisors(t) {
        let cn = class_number(f * f * dfund)?;
        h_agg += Rational64::from_integer(cn.h as i64);
        hstar_agg += cn.hstar;
    }
    Ok((h_agg, hstar_agg))
}

pub fn class_data(d: i64) -> Result<ClassData> {
    let cn = class_number(d)?;
    let (h_agg, hstar_agg) = aggregate_h(d)?;
    Ok(ClassData { d, h: cn.h, omega: cn.omega, hstar: cn.hstar, h_agg, hstar_agg })
}

/// `h*(f^2 D) = h*(D) * f * prod_{l | f} (1 - (D/l)/l)` for fundamental `D`.
pub fn hstar_by_conductor(d_fund: i64, f: i64) -> Result<Rational64> {
    if !is_fundamental(d_fund) {
        return Err(Error::InvalidArgument(format!("{d_fund} is not a fundamental discriminant")));
    }
    if f < 1 {
        return Err(Error::InvalidArgument(format!("conductor {f} must be positive")));
    }
    let mut acc = class_number(d_fund)?.hstar * Rational64::from_integer(f);
    for l in prime_factors(f as u64) {
        let l = l as i64;
        acc *= Rational64::new(l - kronecker(d_fund, l as u64) as i64, l);
    }
    Ok(acc)
}

/// `H*(D)` assembled from the conductor formula instead of form enumeration.
pub fn hstar_agg_by_conductor(d: i64) -> Result<Rational64> {
    let FundDecomp { t, d: dfund, .. } = fund_decompose(d)?;
    divisors(t).into_iter().map(|f| hstar_by_conductor(dfund, f)).sum()
}

/// `H(D) - H*(D)`: 1/2 over `Z[i]`, 2/3 over the Eisenstein integers, else 0.
pub fn exceptional_gap(d_fund: i64) -> Rational64 {
    match d_fund {
        -4 => Rational64::new(1, 2),
        -3 => Rational64::new(2, 3),
        _ => Rational64::from_integer(0),
    }
}
